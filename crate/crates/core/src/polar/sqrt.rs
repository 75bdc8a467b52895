//! Symmetric symplectic square roots of `X^T X` without any eigenvalue
//! computation: one scalar quadratic and one 2x2 linear solve.

use crate::error::{Error, Result};
use crate::hh_rep::{matrix_of_tensor, rep_of_matrix};
use crate::mat4::Mat4;
use crate::quat::{PureQuaternion, Quaternion};
use crate::symplectic::{is_pd_symplectic, symplectic_residual, SymSymplecticRep};

/// Quaternion coefficients `b 1(x)1 + c(x)i + d(x)j + e(x)k` of a positive
/// definite symmetric symplectic matrix (typically `X^T X`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GramRep {
    pub b: f64,
    pub c: PureQuaternion,
    pub d: PureQuaternion,
    pub e: PureQuaternion,
}

impl GramRep {
    /// Extracts and validates the coefficients of `y`.
    ///
    /// Requires `b > 0`, a vanishing skew part, `b^2 + d.d - c.c - e.e = 1`
    /// and `c.d = e.d = 0`, each to `tol` scaled by the size of `y`.
    pub fn from_matrix(y: &Mat4, tol: f64) -> Result<Self> {
        let rep = rep_of_matrix(y);
        let gram = GramRep {
            b: rep.a,
            c: rep.p,
            d: rep.q,
            e: rep.r,
        };
        if !(gram.b > 0.0) {
            return Err(Error::NotPositiveDefinite {
                reason: "trace is not positive",
            });
        }
        let scale = 1.0 + rep.max_abs();
        if rep.skew_max_abs() > tol * scale {
            return Err(Error::NotPositiveDefinite {
                reason: "matrix is not symmetric",
            });
        }
        let (b, c, d, e) = (gram.b, gram.c, gram.d, gram.e);
        let norm = (b * b + d.dot(d) - c.dot(c) - e.dot(e) - 1.0).abs();
        let orth = c.dot(d).abs().max(e.dot(d).abs());
        if norm.max(orth) > tol * scale * scale {
            return Err(Error::NotPositiveDefinite {
                reason: "matrix is not symplectic",
            });
        }
        Ok(gram)
    }

    /// Threshold below which `|d|` is treated as zero: `1e-11 (1 + b)`.
    ///
    /// The two cases differ by `q = d / 4a`, which is first order in `|d|`,
    /// so the threshold has to sit well below the residual tolerances.
    pub fn d_threshold(&self) -> f64 {
        1e-11 * (1.0 + self.b)
    }
}

/// Roots of `x^2 - ((b+1)/2) x + dd/16 = 0`, larger first.
///
/// The larger root is formed without cancellation and the smaller one from
/// the product of the roots. A discriminant within `1e-12 (b+1)^2` below zero
/// is clamped.
pub fn solve_a_quadratic(b: f64, dd: f64) -> Result<(f64, f64)> {
    if !(b > 0.0) {
        return Err(Error::NotPositiveDefinite {
            reason: "trace is not positive",
        });
    }
    let bp1 = b + 1.0;
    let disc = 0.25 * bp1 * bp1 - 0.25 * dd;
    let tau = 1e-12 * bp1 * bp1;
    if disc < -tau {
        return Err(Error::NegativeDiscriminant { discriminant: disc });
    }
    let hi = 0.25 * bp1 + 0.5 * disc.max(0.0).sqrt();
    let lo = (dd / 16.0) / hi;
    Ok((hi, lo))
}

/// Solves for `p` and `r` once `a` and `q = d / 4a` are known.
///
/// The scalars `p.p`, `r.r`, `p.r` follow from the Gram coefficients, after
/// which `c = alpha p + beta r`, `e = beta p + gamma r` is a 2x2 system with
/// determinant at least `4a^2`.
pub fn recover_pr(
    a: f64,
    q: PureQuaternion,
    gram: &GramRep,
) -> Result<(PureQuaternion, PureQuaternion)> {
    let (b, c, e) = (gram.b, gram.c, gram.e);
    let qq = q.dot(q);
    let gap = a * a - qq;
    if !(a > 0.0) || gap.abs() <= 1e-12 * (1.0 + a * a + qq) {
        return Err(Error::SingularGuard { value: gap });
    }

    let pp_minus_rr = (c.dot(c) - e.dot(e)) / (4.0 * gap);
    let pp_plus_rr = 0.5 * (b - 1.0);
    let pp = 0.5 * (pp_plus_rr + pp_minus_rr);
    let rr = 0.5 * (pp_plus_rr - pp_minus_rr);
    let pr = c.dot(e) / (4.0 * gap);

    let alpha = 2.0 * a + 2.0 * rr / a;
    let beta = -2.0 * pr / a;
    let gamma = 2.0 * a + 2.0 * pp / a;
    let det = alpha * gamma - beta * beta;
    if !(det > 0.0) {
        return Err(Error::SingularGuard { value: det });
    }
    let p = (c.scale(gamma) - e.scale(beta)).scale(1.0 / det);
    let r = (e.scale(alpha) - c.scale(beta)).scale(1.0 / det);
    Ok((p, r))
}

/// Which root of the quadratic for `a^2` produced a candidate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RootChoice {
    Larger,
    Smaller,
}

/// Which case of the construction was taken.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SqrtBranch {
    /// `|d|` below threshold: `q = 0`, `p = c / 2a`, `r = e / 2a`.
    DZero,
    /// General case through the quadratic and the 2x2 solve.
    DNonzero,
}

/// Quantities reported alongside a computed square root.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SqrtDiagnostics {
    pub b: f64,
    pub d_norm: f64,
    pub branch: SqrtBranch,
    pub root_hi: f64,
    pub root_lo: f64,
    pub chosen: RootChoice,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SqrtOutcome {
    pub rep: SymSymplecticRep,
    pub diagnostics: SqrtDiagnostics,
}

/// The symmetric symplectic square root with positive `a` built from the
/// chosen root, using the general (`d != 0`) formulas.
pub fn sqrt_candidate(gram: &GramRep, choice: RootChoice) -> Result<SymSymplecticRep> {
    let (hi, lo) = solve_a_quadratic(gram.b, gram.d.dot(gram.d))?;
    let root = match choice {
        RootChoice::Larger => hi,
        RootChoice::Smaller => lo,
    };
    let a = root.sqrt();
    if !(a > 0.0) {
        return Err(Error::SingularGuard { value: root });
    }
    let q = gram.d.scale(0.25 / a);
    let (p, r) = recover_pr(a, q, gram)?;
    Ok(SymSymplecticRep::new(a, p, q, r))
}

fn d_zero_root(gram: &GramRep) -> SymSymplecticRep {
    let a = (0.5 * (gram.b + 1.0)).sqrt();
    let inv = 0.5 / a;
    SymSymplecticRep::new(
        a,
        gram.c.scale(inv),
        PureQuaternion::ZERO,
        gram.e.scale(inv),
    )
}

/// The unique positive definite symplectic square root of `y`, with the
/// intermediate quantities of the construction.
pub fn sqrt_pd_symplectic_detailed(y: &Mat4, tol: f64) -> Result<SqrtOutcome> {
    let gram = GramRep::from_matrix(y, tol)?;
    let dd = gram.d.dot(gram.d);
    let d_norm = dd.sqrt();
    let (root_hi, root_lo) = solve_a_quadratic(gram.b, dd)?;
    let mut diagnostics = SqrtDiagnostics {
        b: gram.b,
        d_norm,
        branch: SqrtBranch::DNonzero,
        root_hi,
        root_lo,
        chosen: RootChoice::Larger,
    };

    if d_norm <= gram.d_threshold() {
        diagnostics.branch = SqrtBranch::DZero;
        let rep = d_zero_root(&gram);
        return Ok(SqrtOutcome { rep, diagnostics });
    }

    let rep = sqrt_candidate(&gram, RootChoice::Larger)?;
    if is_pd_symplectic(&rep) {
        return Ok(SqrtOutcome { rep, diagnostics });
    }
    let rep = sqrt_candidate(&gram, RootChoice::Smaller)?;
    if is_pd_symplectic(&rep) {
        diagnostics.chosen = RootChoice::Smaller;
        return Ok(SqrtOutcome { rep, diagnostics });
    }
    Err(Error::NotPositiveDefinite {
        reason: "neither square-root candidate is positive definite",
    })
}

pub fn sqrt_pd_symplectic(y: &Mat4, tol: f64) -> Result<SymSymplecticRep> {
    sqrt_pd_symplectic_detailed(y, tol).map(|o| o.rep)
}

/// One symmetric symplectic square root of `y`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SqrtCandidate {
    pub rep: SymSymplecticRep,
    pub matrix: Mat4,
    pub positive_trace: bool,
    /// `max |H^2 - y|`.
    pub residual: f64,
}

/// Every symmetric symplectic square root of `y` with non-zero trace.
///
/// For `d != 0` these are `+-H` and `+-H M[q^ (x) j]` with `q^ = q / |q|`;
/// for `d = 0` only `+-H`. Positive-trace candidates come first. Each
/// candidate is checked to be symmetric, symplectic and to square to `y`.
pub fn enumerate_sym_symplectic_sqrts(y: &Mat4, tol: f64) -> Result<Vec<SqrtCandidate>> {
    let outcome = sqrt_pd_symplectic_detailed(y, tol)?;
    let h = outcome.rep.matrix();
    let mut matrices = vec![h];
    if outcome.diagnostics.branch == SqrtBranch::DNonzero {
        let qhat = Quaternion::from(outcome.rep.q).normalize()?;
        matrices.push(h * matrix_of_tensor(qhat, Quaternion::J));
    }
    let negated: Vec<Mat4> = matrices.iter().map(|m| -*m).collect();
    matrices.extend(negated);

    let scale_y = 1.0 + y.max_abs();
    let mut out = Vec::with_capacity(matrices.len());
    for m in matrices {
        let scale_m = 1.0 + m.max_abs();
        let skew = m.skew_part().max_abs();
        if skew > tol * scale_m {
            return Err(Error::CandidateRejected {
                check: "symmetric",
                residual: skew,
            });
        }
        let sym = symplectic_residual(&m);
        if sym > tol * scale_m * scale_m {
            return Err(Error::CandidateRejected {
                check: "symplectic",
                residual: sym,
            });
        }
        let residual = (m * m - *y).max_abs();
        if residual > tol * scale_y {
            return Err(Error::CandidateRejected {
                check: "squares to input",
                residual,
            });
        }
        let rep = SymSymplecticRep::from_tensor_rep(&rep_of_matrix(&m));
        out.push(SqrtCandidate {
            rep,
            matrix: m,
            positive_trace: rep.a > 0.0,
            residual,
        });
    }
    out.sort_by_key(|c| !c.positive_trace);
    Ok(out)
}
