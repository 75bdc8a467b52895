//! Polar decomposition of `X` in Sp(4,R) and the quaternion form
//! `X = [u (x) (v0 + v2 j)] [a 1(x)1 + p(x)i + q(x)j + r(x)k]`.
//!
//! The positive factor `H` is the symmetric symplectic square root of
//! `X^T X` with the larger root of a scalar quadratic; the orthogonal factor
//! is `X H^{-1}` with `H^{-1}` written down by block transposition.

mod cartan;
mod ortho;
mod sqrt;

pub use cartan::{
    diagonalize_by_jacobi, diagonalize_by_quaternions, diagonalize_pd_symplectic, euler_cartan,
    CartanFactors, Diagonalization, DiagonalizationMethod,
};
pub use ortho::{rank_one_factor, so4_to_quaternion_pair};
pub use sqrt::{
    enumerate_sym_symplectic_sqrts, recover_pr, solve_a_quadratic, sqrt_candidate,
    sqrt_pd_symplectic, sqrt_pd_symplectic_detailed, GramRep, RootChoice, SqrtBranch,
    SqrtCandidate, SqrtDiagnostics, SqrtOutcome,
};

use crate::error::{Error, Result};
use crate::hh_rep::matrix_of_tensor;
use crate::mat4::Mat4;
use crate::quat::Quaternion;
use crate::symplectic::{
    block_inverse, is_symplectic, pd_certificate, symplectic_residual, SymSymplecticRep,
};

/// An orthogonal symplectic matrix `M[u (x) (v0 + v2 j)]` with `|u| = 1` and
/// `v0^2 + v2^2 = 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OrthoSymplecticQuat {
    pub u: Quaternion,
    pub v0: f64,
    pub v2: f64,
}

impl OrthoSymplecticQuat {
    pub const IDENTITY: OrthoSymplecticQuat = OrthoSymplecticQuat {
        u: Quaternion::ONE,
        v0: 1.0,
        v2: 0.0,
    };

    pub fn v(&self) -> Quaternion {
        Quaternion::new(self.v0, 0.0, self.v2, 0.0)
    }

    pub fn matrix(&self) -> Mat4 {
        matrix_of_tensor(self.u, self.v())
    }
}

/// The ten-parameter quaternion form of a symplectic matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuaternionForm {
    pub ortho: OrthoSymplecticQuat,
    pub sym: SymSymplecticRep,
}

impl QuaternionForm {
    pub fn matrix(&self) -> Mat4 {
        self.ortho.matrix() * self.sym.matrix()
    }

    /// Checks `|u| = 1`, `v0^2 + v2^2 = 1`, `a > 0`, `2a^2 - 2q.q + 1 > 0`,
    /// `a^2 - p.p + q.q - r.r = 1` and `a q = r x p`.
    pub fn validate(&self, tol: f64) -> Result<()> {
        let invalid = |constraint, residual| {
            Err(Error::InvalidForm {
                constraint,
                residual,
            })
        };
        let unit_u = (self.ortho.u.norm_sqr() - 1.0).abs();
        if unit_u > tol {
            return invalid("|u| = 1", unit_u);
        }
        let unit_v = (self.ortho.v0.powi(2) + self.ortho.v2.powi(2) - 1.0).abs();
        if unit_v > tol {
            return invalid("v0^2 + v2^2 = 1", unit_v);
        }
        let cert = pd_certificate(&self.sym);
        if !(cert.trace_margin > 0.0) {
            return invalid("a > 0", cert.trace_margin);
        }
        if !(cert.quadratic_margin > 0.0) {
            return invalid("2a^2 - 2q.q + 1 > 0", cert.quadratic_margin);
        }
        let scale = (1.0 + self.sym.max_abs()).powi(2);
        let res = self.sym.constraint_residuals();
        if res.norm > tol * scale {
            return invalid("a^2 - p.p + q.q - r.r = 1", res.norm);
        }
        if res.cross > tol * scale {
            return invalid("a q = r x p", res.cross);
        }
        Ok(())
    }
}

/// `X = U H` with `U` orthogonal symplectic and `H` positive definite
/// symplectic, in both quaternion and matrix form.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolarFactors {
    pub ortho: OrthoSymplecticQuat,
    pub sym: SymSymplecticRep,
    pub u: Mat4,
    pub h: Mat4,
    pub diagnostics: SqrtDiagnostics,
}

impl PolarFactors {
    pub fn form(&self) -> QuaternionForm {
        QuaternionForm {
            ortho: self.ortho,
            sym: self.sym,
        }
    }
}

pub fn polar_decompose(x: &Mat4, tol: f64) -> Result<PolarFactors> {
    if !is_symplectic(x, tol) {
        return Err(Error::NotSymplectic {
            residual: symplectic_residual(x),
        });
    }
    let gram = x.transpose_mul(x);
    let outcome = sqrt_pd_symplectic_detailed(&gram, tol)?;
    let h = outcome.rep.matrix();
    let u = *x * block_inverse(&h);
    let ortho = so4_to_quaternion_pair(&u, tol)?;
    Ok(PolarFactors {
        ortho,
        sym: outcome.rep,
        u,
        h,
        diagnostics: outcome.diagnostics,
    })
}

/// The quaternion parameters of `x`, with every constraint checked.
pub fn full_quaternion_form(x: &Mat4, tol: f64) -> Result<QuaternionForm> {
    let form = polar_decompose(x, tol)?.form();
    form.validate(tol)?;
    Ok(form)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quat::PureQuaternion;
    use crate::symplectic::is_pd_symplectic;
    use crate::testkit::Generator;

    const TOL: f64 = 1e-9;

    fn shear() -> Mat4 {
        Mat4::from_rows([
            [1.0, 0.0, 1.0, 0.0],
            [0.0, 1.0, 0.0, 0.0],
            [0.0, 0.0, 1.0, 0.0],
            [0.0, 0.0, 0.0, 1.0],
        ])
    }

    #[test]
    fn identity() {
        let f = polar_decompose(&Mat4::IDENTITY, TOL).unwrap();
        assert_eq!(f.u, Mat4::IDENTITY);
        assert_eq!(f.h, Mat4::IDENTITY);
        assert_eq!(f.ortho, OrthoSymplecticQuat::IDENTITY);
        assert_eq!(f.sym, SymSymplecticRep::IDENTITY);
    }

    #[test]
    fn j4_is_its_own_orthogonal_factor() {
        let form = full_quaternion_form(&Mat4::J4, TOL).unwrap();
        assert_eq!(form.ortho.u, Quaternion::ONE);
        assert!(form.ortho.v0.abs() < 1e-15 && (form.ortho.v2 - 1.0).abs() < 1e-15);
        assert_eq!(form.sym, SymSymplecticRep::IDENTITY);
        let f = polar_decompose(&Mat4::J4, TOL).unwrap();
        assert!((f.u - Mat4::J4).max_abs() < 1e-15);
        assert_eq!(f.h, Mat4::IDENTITY);
    }

    #[test]
    fn shear_example() {
        let x = shear();
        let f = polar_decompose(&x, TOL).unwrap();
        let r5 = 5.0_f64.sqrt();
        let h = Mat4::from_rows([
            [2.0 / r5, 0.0, 1.0 / r5, 0.0],
            [0.0, 1.0, 0.0, 0.0],
            [1.0 / r5, 0.0, 3.0 / r5, 0.0],
            [0.0, 0.0, 0.0, 1.0],
        ]);
        assert!((f.h - h).max_abs() < 1e-15);
        // inverse of the 2x2 block [[2,1],[1,3]]/sqrt5 is [[3,-1],[-1,2]]/sqrt5
        let h_inv = Mat4::from_rows([
            [3.0 / r5, 0.0, -1.0 / r5, 0.0],
            [0.0, 1.0, 0.0, 0.0],
            [-1.0 / r5, 0.0, 2.0 / r5, 0.0],
            [0.0, 0.0, 0.0, 1.0],
        ]);
        assert!((f.u - x * h_inv).max_abs() < 1e-15);
        assert!((f.u.transpose_mul(&f.u) - Mat4::IDENTITY).max_abs() < 1e-15);
        assert!((f.form().matrix() - x).max_abs() < 1e-15);
    }

    #[test]
    fn recovers_generator_factors() {
        let mut gen = Generator::new(31);
        for _ in 0..500 {
            let sample = gen.random_symplectic_sample(3.0);
            let f = polar_decompose(&sample.x, TOL).unwrap();
            let scale = 1.0 + sample.x.max_abs();
            assert!((f.u - sample.u).max_abs() <= 1e-9 * scale);
            assert!((f.h - sample.p).max_abs() <= 1e-9 * scale);
            assert!((f.u * f.h - sample.x).max_abs() <= 1e-9 * scale);
            assert!((f.ortho.matrix() - f.u).max_abs() <= 1e-9);
            assert!(is_symplectic(&f.u, TOL) && is_symplectic(&f.h, TOL));
            assert!(is_pd_symplectic(&f.sym));
        }
    }

    #[test]
    fn full_form_round_trips() {
        let mut gen = Generator::new(32);
        for _ in 0..500 {
            let x = gen.random_symplectic(2.0);
            let form = full_quaternion_form(&x, TOL).unwrap();
            let back = matrix_of_tensor(form.ortho.u, form.ortho.v())
                * crate::hh_rep::matrix_of_rep(&form.sym.to_tensor_rep());
            assert!((back - x).max_abs() <= 1e-9 * (1.0 + x.max_abs()));
        }
    }

    #[test]
    fn rejects_non_symplectic_input() {
        let x = Mat4::from_diagonal([2.0, 1.0, 1.0, 1.0]);
        assert!(matches!(
            polar_decompose(&x, TOL),
            Err(Error::NotSymplectic { .. })
        ));
    }

    #[test]
    fn validate_flags_each_constraint() {
        let good = full_quaternion_form(&shear(), TOL).unwrap();
        assert!(good.validate(TOL).is_ok());
        let mut bad = good;
        bad.ortho.v0 *= 1.1;
        assert!(matches!(
            bad.validate(TOL),
            Err(Error::InvalidForm {
                constraint: "v0^2 + v2^2 = 1",
                ..
            })
        ));
        let mut bad = good;
        bad.sym = bad.sym.negate();
        assert!(matches!(
            bad.validate(TOL),
            Err(Error::InvalidForm {
                constraint: "a > 0",
                ..
            })
        ));
        let mut bad = good;
        bad.sym.a += 1e-3;
        assert!(bad.validate(TOL).is_err());
    }

    #[test]
    fn single_parameter_perturbation_breaks_symplecticity() {
        let mut gen = Generator::new(33);
        let h = 1e-3;
        for _ in 0..50 {
            let x = gen.random_symplectic(1.5);
            let form = full_quaternion_form(&x, TOL).unwrap();
            let mut params = [0.0; 16];
            let u = form.ortho.u.to_array();
            params[..4].copy_from_slice(&u);
            params[4] = form.ortho.v0;
            params[5] = form.ortho.v2;
            params[6] = form.sym.a;
            params[7..10].copy_from_slice(&form.sym.p.to_array());
            params[10..13].copy_from_slice(&form.sym.q.to_array());
            params[13..16].copy_from_slice(&form.sym.r.to_array());
            let rebuild = |v: &[f64; 16]| {
                let pure = |o: usize| PureQuaternion::new(v[o], v[o + 1], v[o + 2]);
                let ortho = OrthoSymplecticQuat {
                    u: Quaternion::new(v[0], v[1], v[2], v[3]),
                    v0: v[4],
                    v2: v[5],
                };
                let sym = SymSymplecticRep::new(v[6], pure(7), pure(10), pure(13));
                QuaternionForm { ortho, sym }.matrix()
            };
            assert!(is_symplectic(&rebuild(&params), TOL));
            for k in 0..16 {
                let mut moved = params;
                moved[k] += h;
                let m = rebuild(&moved);
                assert!(
                    !is_symplectic(&m, TOL),
                    "parameter {k} kept the matrix symplectic"
                );
            }
        }
    }
}
