//! Cyclic Jacobi eigensolver for symmetric 4x4 matrices.
//!
//! Used as an independent oracle in tests and as the fallback diagonalizer in
//! the Euler-Cartan factorization. None of the closed-form routines call it.

use crate::mat4::Mat4;

const MAX_SWEEPS: usize = 64;

/// Eigenvalues sorted in descending order, with matching eigenvectors stored
/// as the columns of `vectors`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SymmetricEigen {
    pub values: [f64; 4],
    pub vectors: Mat4,
}

impl SymmetricEigen {
    pub fn vector(&self, k: usize) -> [f64; 4] {
        self.vectors.column(k)
    }

    /// `V f(D) V^T`.
    pub fn reassemble(&self, f: impl Fn(f64) -> f64) -> Mat4 {
        let v = &self.vectors;
        let mut out = Mat4::ZERO;
        for k in 0..4 {
            let fk = f(self.values[k]);
            for i in 0..4 {
                for j in 0..4 {
                    out[(i, j)] += v[(i, k)] * fk * v[(j, k)];
                }
            }
        }
        out
    }
}

fn off_diagonal_norm(a: &Mat4) -> f64 {
    let mut s = 0.0;
    for i in 0..4 {
        for j in 0..4 {
            if i != j {
                s += a[(i, j)] * a[(i, j)];
            }
        }
    }
    s.sqrt()
}

/// Diagonalizes the symmetric part of `m` by cyclic Jacobi rotations until
/// the off-diagonal Frobenius norm falls below `1e-13` of the full norm.
pub fn symmetric_eigen(m: &Mat4) -> SymmetricEigen {
    let mut a = m.symmetric_part();
    let mut v = Mat4::IDENTITY;
    let target = 1e-13 * a.frobenius_norm();

    for _ in 0..MAX_SWEEPS {
        if off_diagonal_norm(&a) <= target {
            break;
        }
        for p in 0..3 {
            for q in p + 1..4 {
                let apq = a[(p, q)];
                if apq == 0.0 {
                    continue;
                }
                let theta = (a[(q, q)] - a[(p, p)]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;

                for k in 0..4 {
                    let akp = a[(k, p)];
                    let akq = a[(k, q)];
                    a[(k, p)] = c * akp - s * akq;
                    a[(k, q)] = s * akp + c * akq;
                }
                for k in 0..4 {
                    let apk = a[(p, k)];
                    let aqk = a[(q, k)];
                    a[(p, k)] = c * apk - s * aqk;
                    a[(q, k)] = s * apk + c * aqk;
                }
                for k in 0..4 {
                    let vkp = v[(k, p)];
                    let vkq = v[(k, q)];
                    v[(k, p)] = c * vkp - s * vkq;
                    v[(k, q)] = s * vkp + c * vkq;
                }
            }
        }
    }

    let diag = a.diagonal();
    let mut order = [0usize, 1, 2, 3];
    order.sort_by(|&i, &j| diag[j].total_cmp(&diag[i]));
    let values = order.map(|k| diag[k]);
    let mut vectors = Mat4::ZERO;
    for (dst, &src) in order.iter().enumerate() {
        vectors.set_column(dst, v.column(src));
    }
    SymmetricEigen { values, vectors }
}

/// Ratio of largest to smallest eigenvalue magnitude of a symmetric matrix.
pub fn condition_number(m: &Mat4) -> f64 {
    let eig = symmetric_eigen(m);
    let mags = eig.values.map(f64::abs);
    let max = mags.iter().cloned().fold(0.0, f64::max);
    let min = mags.iter().cloned().fold(f64::INFINITY, f64::min);
    max / min
}
