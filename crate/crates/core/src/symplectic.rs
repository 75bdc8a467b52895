//! Symplectic predicates, cheap inverses, the symmetric-symplectic
//! characterization and determinant-free characteristic polynomials.

use crate::error::{Error, Result};
use crate::hh_rep::{matrix_of_rep, TensorRep};
use crate::mat4::Mat4;
use crate::polar::QuaternionForm;
use crate::quat::PureQuaternion;

/// Default relative tolerance for membership tests.
pub const DEFAULT_TOL: f64 = 1e-9;

/// Width of the band around the positive-definiteness boundary inside which
/// the certificate refuses to answer `true`.
pub const PD_BOUNDARY_BAND: f64 = 1e-10;

/// `max |m^T J m - J|`.
pub fn symplectic_residual(m: &Mat4) -> f64 {
    (m.transpose_mul(&(Mat4::J4 * *m)) - Mat4::J4).max_abs()
}

/// True iff `|m^T J m - J|_max <= tol (1 + |m|_max^2)`.
pub fn is_symplectic(m: &Mat4, tol: f64) -> bool {
    symplectic_residual(m) <= tol * (1.0 + m.max_abs().powi(2))
}

/// `max |m^T J + J m|`.
pub fn hamiltonian_residual(m: &Mat4) -> f64 {
    (m.transpose_mul(&Mat4::J4) + Mat4::J4 * *m).max_abs()
}

pub fn is_hamiltonian(m: &Mat4, tol: f64) -> bool {
    hamiltonian_residual(m) <= tol * (1.0 + m.max_abs())
}

/// `-J m^T J` written out blockwise: for `m = [[A, B], [C, D]]` this is
/// `[[D^T, -B^T], [-C^T, A^T]]`. No check is made that `m` is symplectic.
pub fn block_inverse(m: &Mat4) -> Mat4 {
    let mut out = Mat4::ZERO;
    for i in 0..2 {
        for j in 0..2 {
            out[(i, j)] = m[(j + 2, i + 2)];
            out[(i, j + 2)] = -m[(j, i + 2)];
            out[(i + 2, j)] = -m[(j + 2, i)];
            out[(i + 2, j + 2)] = m[(j, i)];
        }
    }
    out
}

/// Inverse of a symplectic matrix by block transposition.
pub fn symplectic_inverse(m: &Mat4) -> Result<Mat4> {
    if !is_symplectic(m, DEFAULT_TOL) {
        return Err(Error::NotSymplectic {
            residual: symplectic_residual(m),
        });
    }
    Ok(block_inverse(m))
}

/// Symmetric part `a 1(x)1 + p(x)i + q(x)j + r(x)k` of a representation,
/// used for symmetric symplectic matrices.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct SymSymplecticRep {
    pub a: f64,
    pub p: PureQuaternion,
    pub q: PureQuaternion,
    pub r: PureQuaternion,
}

/// How far a [`SymSymplecticRep`] is from satisfying its three constraints.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConstraintResiduals {
    /// `|a q - r x p|_max`
    pub cross: f64,
    /// `|a^2 - p.p + q.q - r.r - 1|`
    pub norm: f64,
    /// `max(|p.q|, |r.q|)`
    pub orthogonality: f64,
}

impl SymSymplecticRep {
    pub const IDENTITY: SymSymplecticRep = SymSymplecticRep {
        a: 1.0,
        p: PureQuaternion::ZERO,
        q: PureQuaternion::ZERO,
        r: PureQuaternion::ZERO,
    };

    pub fn new(a: f64, p: PureQuaternion, q: PureQuaternion, r: PureQuaternion) -> Self {
        Self { a, p, q, r }
    }

    /// Drops the skew part of `rep`.
    pub fn from_tensor_rep(rep: &TensorRep) -> Self {
        Self::new(rep.a, rep.p, rep.q, rep.r)
    }

    pub fn to_tensor_rep(&self) -> TensorRep {
        TensorRep {
            a: self.a,
            p: self.p,
            q: self.q,
            r: self.r,
            ..TensorRep::default()
        }
    }

    pub fn matrix(&self) -> Mat4 {
        matrix_of_rep(&self.to_tensor_rep())
    }

    pub fn negate(&self) -> Self {
        Self::new(-self.a, -self.p, -self.q, -self.r)
    }

    pub fn max_abs(&self) -> f64 {
        self.a
            .abs()
            .max(self.p.max_abs())
            .max(self.q.max_abs())
            .max(self.r.max_abs())
    }

    pub fn constraint_residuals(&self) -> ConstraintResiduals {
        let (a, p, q, r) = (self.a, self.p, self.q, self.r);
        ConstraintResiduals {
            cross: (q.scale(a) - r.cross(p)).max_abs(),
            norm: (a * a - p.dot(p) + q.dot(q) - r.dot(r) - 1.0).abs(),
            orthogonality: p.dot(q).abs().max(r.dot(q).abs()),
        }
    }
}

/// Symplecticity test for a symmetric matrix given by its `(a, p, q, r)`.
///
/// When `|a|` is clear of zero the two conditions `a q = r x p` and
/// `a^2 - p.p + q.q - r.r = 1` suffice. Near `a = 0` the orthogonality
/// conditions `p.q = r.q = 0` are checked as well.
pub fn check_sym_symplectic(rep: &SymSymplecticRep, tol: f64) -> bool {
    let scale = 1.0 + rep.max_abs();
    let bound = tol * scale * scale;
    let res = rep.constraint_residuals();
    let reduced = res.cross <= bound && res.norm <= bound;
    if rep.a.abs() > 1e-10 * scale {
        reduced
    } else {
        reduced && res.orthogonality <= bound
    }
}

/// Outcome of the positive-definiteness test for a symmetric symplectic rep.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PdCertificate {
    pub positive_definite: bool,
    /// `a`, a quarter of the trace.
    pub trace_margin: f64,
    /// `2a^2 - 2q.q + 1`.
    pub quadratic_margin: f64,
    /// Set when either margin lies within rounding of zero; such inputs are
    /// reported as not positive definite.
    pub boundary: bool,
}

pub fn pd_certificate(rep: &SymSymplecticRep) -> PdCertificate {
    let a = rep.a;
    let qq = rep.q.dot(rep.q);
    let quadratic_margin = 2.0 * a * a - 2.0 * qq + 1.0;
    let boundary = a.abs() <= PD_BOUNDARY_BAND * (1.0 + rep.max_abs())
        || quadratic_margin.abs() <= PD_BOUNDARY_BAND * (1.0 + 2.0 * a * a + 2.0 * qq);
    PdCertificate {
        positive_definite: !boundary && a > 0.0 && quadratic_margin > 0.0,
        trace_margin: a,
        quadratic_margin,
        boundary,
    }
}

/// A symmetric symplectic matrix is positive definite iff `a > 0` and
/// `2a^2 - 2q.q + 1 > 0`.
pub fn is_pd_symplectic(rep: &SymSymplecticRep) -> bool {
    pd_certificate(rep).positive_definite
}

/// Monic palindromic quartic `x^4 + c3 x^3 + c2 x^2 + c3 x + 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CharPoly {
    pub c3: f64,
    pub c2: f64,
}

impl CharPoly {
    /// Coefficients by descending power.
    pub fn coefficients(&self) -> [f64; 5] {
        [1.0, self.c3, self.c2, self.c3, 1.0]
    }
}

pub fn charpoly_sym_symplectic(rep: &SymSymplecticRep) -> CharPoly {
    let a = rep.a;
    CharPoly {
        c3: -4.0 * a,
        c2: 4.0 * a * a - 4.0 * rep.q.dot(rep.q) + 2.0,
    }
}

/// Characteristic polynomial of `[u (x) (v0 + v2 j)] [a + p(x)i + q(x)j + r(x)k]`
/// computed from the quaternion parameters alone.
pub fn charpoly_symplectic(form: &QuaternionForm, tol: f64) -> Result<CharPoly> {
    form.validate(tol)?;
    let u = form.ortho.u;
    let (v0, v2) = (form.ortho.v0, form.ortho.v2);
    let SymSymplecticRep { a, p, q, r } = form.sym;
    let u0 = u.w;
    let iu = u.imag();
    let uq = iu.dot(q);
    let up = iu.dot(p);
    let ur = iu.dot(r);

    let alpha = a * u0 * v0 + uq * v2;
    let bracket = q.dot(q) + (u0 * u0 - iu.norm_sqr()) * a * a - 2.0 * uq * uq;
    let c2 = 8.0 * a * a * u0 * u0 * v0 * v0
        + 8.0 * v2 * v2 * uq * uq
        + 2.0 * (v2 * v2 - v0 * v0) * bracket
        - 2.0 * (p.dot(p) + r.dot(r))
        + 4.0 * (up * up + ur * ur);
    Ok(CharPoly {
        c3: -4.0 * alpha,
        c2,
    })
}

/// Characteristic polynomial `det(xI - m)` by the Faddeev-LeVerrier trace
/// recursion, coefficients by descending power. No structure is assumed.
pub fn charpoly_oracle(m: &Mat4) -> [f64; 5] {
    let mut coeffs = [0.0; 5];
    coeffs[0] = 1.0;
    let mut mk = Mat4::ZERO;
    for k in 1..=4 {
        mk = *m * mk + Mat4::IDENTITY.scale(coeffs[k - 1]);
        coeffs[k] = -(*m * mk).trace() / k as f64;
    }
    coeffs
}
