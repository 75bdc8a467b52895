//! Seeded generators of structured test matrices and brute-force oracles.
//!
//! All randomness comes from `Xoshiro256PlusPlus` seeded with
//! `seed_from_u64`, so a given [`GeneratorConfig`] reproduces the same
//! matrix stream on every run.
//!
//! * orthogonal symplectic: `M[u (x) (cos t + sin t j)]` with `u` uniform on
//!   the unit 3-sphere and `t` uniform on `[0, 2 pi)`;
//! * positive definite symplectic: `exp(S)` for a symmetric Hamiltonian
//!   `S = [[A, B], [B, -A]]` (`A`, `B` symmetric 2x2 with standard normal
//!   entries), rescaled so `|S|_F = sqrt(2) * spread * rho` with `rho`
//!   uniform on `[0, 1)`. The largest eigenvalue of `S` is then at most
//!   `spread`;
//! * symplectic: the product of the two.
//!
//! Draws whose condition number exceeds [`CONDITION_CAP`] are rejected.

mod expm;

pub use expm::expm;

use rand::{Rng, SeedableRng};
use rand_distr::StandardNormal;
use rand_xoshiro::Xoshiro256PlusPlus;

use crate::error::{Error, Result};
use crate::hh_rep::matrix_of_tensor;
use crate::jacobi::{condition_number, symmetric_eigen};
use crate::mat4::Mat4;
use crate::quat::Quaternion;
use crate::symplectic::{is_symplectic, symplectic_residual};

/// Largest accepted condition number of a generated symplectic matrix.
pub const CONDITION_CAP: f64 = 1e6;

/// Structural tolerance every generated matrix is checked against.
pub const GENERATOR_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeneratorConfig {
    pub seed: u64,
    pub spread: f64,
    pub count: usize,
}

impl Default for GeneratorConfig {
    fn default() -> Self {
        Self {
            seed: 42,
            spread: 1.0,
            count: 10,
        }
    }
}

/// A generated symplectic matrix together with its known polar factors.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SymplecticSample {
    pub x: Mat4,
    pub u: Mat4,
    pub p: Mat4,
}

/// Deterministic stream of structured random matrices.
#[derive(Debug, Clone)]
pub struct Generator {
    rng: Xoshiro256PlusPlus,
}

impl Generator {
    pub fn new(seed: u64) -> Self {
        Self {
            rng: Xoshiro256PlusPlus::seed_from_u64(seed),
        }
    }

    fn normal(&mut self) -> f64 {
        self.rng.sample(StandardNormal)
    }

    pub fn uniform(&mut self) -> f64 {
        self.rng.gen::<f64>()
    }

    pub fn unit_quaternion(&mut self) -> Quaternion {
        loop {
            let q = Quaternion::new(self.normal(), self.normal(), self.normal(), self.normal());
            if let Ok(u) = q.normalize() {
                return u;
            }
        }
    }

    pub fn random_ortho_symplectic(&mut self) -> Mat4 {
        let u = self.unit_quaternion();
        let theta = std::f64::consts::TAU * self.uniform();
        let m = ortho_symplectic_from(u, theta);
        debug_assert!(symplectic_residual(&m) <= GENERATOR_TOL);
        m
    }

    /// A random symmetric Hamiltonian `[[A, B], [B, -A]]` normalized to
    /// `|S|_F = sqrt(2)`, so its eigenvalues `+-l1, +-l2` have `l1^2 + l2^2 = 1`.
    pub fn unit_symmetric_hamiltonian(&mut self) -> Mat4 {
        loop {
            let (a00, a01, a11) = (self.normal(), self.normal(), self.normal());
            let (b00, b01, b11) = (self.normal(), self.normal(), self.normal());
            let s = Mat4::from_rows([
                [a00, a01, b00, b01],
                [a01, a11, b01, b11],
                [b00, b01, -a00, -a01],
                [b01, b11, -a01, -a11],
            ]);
            let norm = s.frobenius_norm();
            if norm > 1e-8 {
                return s.scale(std::f64::consts::SQRT_2 / norm);
            }
        }
    }

    pub fn random_pd_symplectic(&mut self, spread: f64) -> Mat4 {
        loop {
            let s = self.unit_symmetric_hamiltonian();
            let rho = self.uniform();
            let p = expm(&s.scale(spread * rho)).symmetric_part();
            if condition_number(&p) <= CONDITION_CAP && is_symplectic(&p, GENERATOR_TOL) {
                return p;
            }
        }
    }

    pub fn random_symplectic_sample(&mut self, spread: f64) -> SymplecticSample {
        loop {
            let u = self.random_ortho_symplectic();
            let p = self.random_pd_symplectic(spread);
            let x = u * p;
            if is_symplectic(&x, GENERATOR_TOL) {
                return SymplecticSample { x, u, p };
            }
        }
    }

    pub fn random_symplectic(&mut self, spread: f64) -> Mat4 {
        self.random_symplectic_sample(spread).x
    }
}

/// `M[u (x) (cos t + sin t j)]`.
pub fn ortho_symplectic_from(u: Quaternion, theta: f64) -> Mat4 {
    matrix_of_tensor(u, Quaternion::new(theta.cos(), 0.0, theta.sin(), 0.0))
}

/// `config.count` symplectic matrices from the stream seeded by `config.seed`.
pub fn generate(config: &GeneratorConfig) -> Vec<Mat4> {
    let mut gen = Generator::new(config.seed);
    (0..config.count)
        .map(|_| gen.random_symplectic(config.spread))
        .collect()
}

/// Positive definite square root `V D^(1/2) V^T` from a Jacobi
/// eigendecomposition.
pub fn jacobi_sqrt_oracle(y: &Mat4) -> Result<Mat4> {
    let eig = symmetric_eigen(y);
    let smallest = eig.values[3];
    if !(smallest > 0.0) {
        return Err(Error::NotPd {
            eigenvalue: smallest,
        });
    }
    Ok(eig.reassemble(f64::sqrt))
}
