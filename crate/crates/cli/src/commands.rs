//! One function per subcommand, each mapping a matrix to a serializable report.

use serde::Serialize;
use sp4quat::hh_rep::rep_of_matrix;
use sp4quat::polar::{
    enumerate_sym_symplectic_sqrts, euler_cartan, polar_decompose, sqrt_pd_symplectic_detailed,
    DiagonalizationMethod, RootChoice, SqrtBranch, SqrtDiagnostics,
};
use sp4quat::symplectic::{
    charpoly_oracle, charpoly_symplectic, check_sym_symplectic, hamiltonian_residual,
    pd_certificate, symplectic_residual, SymSymplecticRep,
};
use sp4quat::testkit::{Generator, GeneratorConfig};
use sp4quat::{Error, Mat4};

use crate::document::MatrixDocument;
use crate::Status;

type Rows = [[f64; 4]; 4];

/// A report plus whether its residuals came in under tolerance.
pub struct Outcome<T> {
    pub report: T,
    pub status: Status,
}

impl<T> Outcome<T> {
    fn ok(report: T) -> Self {
        Self {
            report,
            status: Status::Success,
        }
    }

    fn checked(report: T, within_tolerance: bool) -> Self {
        let status = if within_tolerance {
            Status::Success
        } else {
            Status::Numeric
        };
        Self { report, status }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SymRepReport {
    pub a: f64,
    pub p: [f64; 3],
    pub q: [f64; 3],
    pub r: [f64; 3],
}

impl From<&SymSymplecticRep> for SymRepReport {
    fn from(rep: &SymSymplecticRep) -> Self {
        Self {
            a: rep.a,
            p: rep.p.to_array(),
            q: rep.q.to_array(),
            r: rep.r.to_array(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReprReport {
    pub a: f64,
    pub p: [f64; 3],
    pub q: [f64; 3],
    pub r: [f64; 3],
    pub s: [f64; 3],
    pub t: [f64; 3],
    /// `max |(M - M^T)/2|`: zero iff the input is symmetric.
    pub symmetric_residual: f64,
    /// `max |(M + M^T)/2|`: zero iff the input is skew.
    pub skew_residual: f64,
}

pub fn repr(x: &Mat4) -> Outcome<ReprReport> {
    let rep = rep_of_matrix(x);
    Outcome::ok(ReprReport {
        a: rep.a,
        p: rep.p.to_array(),
        q: rep.q.to_array(),
        r: rep.r.to_array(),
        s: rep.s.to_array(),
        t: rep.t.to_array(),
        symmetric_residual: x.skew_part().max_abs(),
        skew_residual: x.symmetric_part().max_abs(),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QuaternionParams {
    pub u: [f64; 4],
    pub v0: f64,
    pub v2: f64,
    pub a: f64,
    pub p: [f64; 3],
    pub q: [f64; 3],
    pub r: [f64; 3],
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PolarResiduals {
    /// `max |U H - X|`.
    pub reconstruction: f64,
    /// `max |H^2 - X^T X|`.
    pub square: f64,
    /// `max |U^T U - I|`.
    pub orthogonality: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RootDiagnostics {
    pub b: f64,
    pub d_norm: f64,
    pub branch: &'static str,
    pub root_hi: f64,
    pub root_lo: f64,
    pub chosen_root: &'static str,
}

impl From<&SqrtDiagnostics> for RootDiagnostics {
    fn from(d: &SqrtDiagnostics) -> Self {
        Self {
            b: d.b,
            d_norm: d.d_norm,
            branch: branch_name(d.branch),
            root_hi: d.root_hi,
            root_lo: d.root_lo,
            chosen_root: match d.chosen {
                RootChoice::Larger => "larger",
                RootChoice::Smaller => "smaller",
            },
        }
    }
}

fn branch_name(branch: SqrtBranch) -> &'static str {
    match branch {
        SqrtBranch::DZero => "d_zero",
        SqrtBranch::DNonzero => "d_nonzero",
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PolarReport {
    pub u_matrix: Rows,
    pub h_matrix: Rows,
    pub params: QuaternionParams,
    pub residuals: PolarResiduals,
    pub diagnostics: RootDiagnostics,
}

pub fn polar(x: &Mat4, tol: f64) -> Result<Outcome<PolarReport>, Error> {
    let f = polar_decompose(x, tol)?;
    let gram = x.transpose_mul(x);
    let residuals = PolarResiduals {
        reconstruction: (f.u * f.h - *x).max_abs(),
        square: (f.h * f.h - gram).max_abs(),
        orthogonality: (f.u.transpose_mul(&f.u) - Mat4::IDENTITY).max_abs(),
    };
    let scale = 1.0 + x.max_abs();
    let within = residuals.reconstruction <= tol * scale
        && residuals.square <= tol * scale * scale
        && residuals.orthogonality <= tol;
    let report = PolarReport {
        u_matrix: f.u.rows(),
        h_matrix: f.h.rows(),
        params: QuaternionParams {
            u: f.ortho.u.to_array(),
            v0: f.ortho.v0,
            v2: f.ortho.v2,
            a: f.sym.a,
            p: f.sym.p.to_array(),
            q: f.sym.q.to_array(),
            r: f.sym.r.to_array(),
        },
        residuals,
        diagnostics: RootDiagnostics::from(&f.diagnostics),
    };
    Ok(Outcome::checked(report, within))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CharpolyReport {
    /// Descending powers, from the quaternion parameters.
    pub coefficients: [f64; 5],
    /// Descending powers, from the Faddeev-LeVerrier recursion on the matrix.
    pub oracle: [f64; 5],
    pub residual: f64,
}

pub fn charpoly(x: &Mat4, tol: f64) -> Result<Outcome<CharpolyReport>, Error> {
    let form = polar_decompose(x, tol)?.form();
    // adding zero maps -0.0 to 0.0
    let coefficients = charpoly_symplectic(&form, tol)?
        .coefficients()
        .map(|c| c + 0.0);
    let oracle = charpoly_oracle(x).map(|c| c + 0.0);
    let residual = coefficients
        .iter()
        .zip(&oracle)
        .fold(0.0_f64, |m, (c, o)| m.max((c - o).abs()));
    let scale = 1.0 + oracle.iter().fold(0.0_f64, |m, c| m.max(c.abs()));
    let report = CharpolyReport {
        coefficients,
        oracle,
        residual,
    };
    Ok(Outcome::checked(report, residual <= tol * scale))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Predicate {
    pub value: bool,
    pub residual: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PdPredicate {
    pub value: bool,
    pub trace_margin: f64,
    pub quadratic_margin: f64,
    pub boundary: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckReport {
    pub symplectic: Predicate,
    pub hamiltonian: Predicate,
    pub symmetric_symplectic: Predicate,
    pub pd_symplectic: PdPredicate,
}

/// Structural certificate. Always succeeds: a `false` entry is an answer,
/// not a failure.
pub fn check(x: &Mat4, tol: f64) -> Outcome<CheckReport> {
    let scale = 1.0 + x.max_abs();
    let sym_res = symplectic_residual(x);
    let ham_res = hamiltonian_residual(x);
    let rep = rep_of_matrix(x);
    let sym_rep = SymSymplecticRep::from_tensor_rep(&rep);
    let c = sym_rep.constraint_residuals();
    let asymmetry = x.skew_part().max_abs();
    let symmetric_symplectic = asymmetry <= tol * scale && check_sym_symplectic(&sym_rep, tol);
    let cert = pd_certificate(&sym_rep);
    Outcome::ok(CheckReport {
        symplectic: Predicate {
            value: sym_res <= tol * scale * scale,
            residual: sym_res,
        },
        hamiltonian: Predicate {
            value: ham_res <= tol * scale,
            residual: ham_res,
        },
        symmetric_symplectic: Predicate {
            value: symmetric_symplectic,
            residual: asymmetry.max(c.cross).max(c.norm),
        },
        pd_symplectic: PdPredicate {
            value: symmetric_symplectic && cert.positive_definite,
            trace_margin: cert.trace_margin,
            quadratic_margin: cert.quadratic_margin,
            boundary: cert.boundary,
        },
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SqrtEntry {
    pub matrix: Rows,
    pub rep: SymRepReport,
    pub positive_trace: bool,
    pub positive_definite: bool,
    pub residual: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SqrtsReport {
    pub gram: Rows,
    pub branch: &'static str,
    pub candidates: Vec<SqrtEntry>,
}

/// Symmetric symplectic square roots of `x^T x`, or of `x` itself when
/// `is_gram` is set.
pub fn sqrts(x: &Mat4, tol: f64, is_gram: bool) -> Result<Outcome<SqrtsReport>, Error> {
    let y = if is_gram {
        *x
    } else {
        if !sp4quat::is_symplectic(x, tol) {
            return Err(Error::NotSymplectic {
                residual: symplectic_residual(x),
            });
        }
        x.transpose_mul(x)
    };
    let branch = sqrt_pd_symplectic_detailed(&y, tol)?.diagnostics.branch;
    let candidates = enumerate_sym_symplectic_sqrts(&y, tol)?
        .into_iter()
        .map(|c| SqrtEntry {
            matrix: c.matrix.rows(),
            rep: SymRepReport::from(&c.rep),
            positive_trace: c.positive_trace,
            positive_definite: sp4quat::is_pd_symplectic(&c.rep),
            residual: c.residual,
        })
        .collect();
    Ok(Outcome::ok(SqrtsReport {
        gram: y.rows(),
        branch: branch_name(branch),
        candidates,
    }))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CartanReport {
    pub u1: Rows,
    pub d: [f64; 4],
    pub u2: Rows,
    pub degenerate: bool,
    pub method: &'static str,
    /// `max |U1 D U2 - X|`.
    pub residual: f64,
}

pub fn cartan(x: &Mat4, tol: f64) -> Result<Outcome<CartanReport>, Error> {
    let f = euler_cartan(x, tol)?;
    let residual = (f.reassemble() - *x).max_abs();
    let report = CartanReport {
        u1: f.u1.rows(),
        d: f.d,
        u2: f.u2.rows(),
        degenerate: f.degenerate,
        method: match f.method {
            DiagonalizationMethod::QuaternionReduction => "quaternion_reduction",
            DiagonalizationMethod::JacobiPairing => "jacobi_pairing",
        },
        residual,
    };
    Ok(Outcome::checked(
        report,
        residual <= tol * (1.0 + x.max_abs()),
    ))
}

pub fn generate(config: &GeneratorConfig) -> Vec<MatrixDocument> {
    let mut gen = Generator::new(config.seed);
    (0..config.count)
        .map(|k| {
            let x = gen.random_symplectic(config.spread);
            MatrixDocument::new(x, Some(format!("seed{}-{k}", config.seed)))
        })
        .collect()
}
