//! The algebra isomorphism between H (x) H and real 4x4 matrices.
//!
//! The product tensor `p (x) q` is sent to the matrix of `x -> p x conj(q)`
//! acting on H = R^4 in the basis `{1, i, j, k}`. The sixteen matrices
//! `M[e_x (x) e_y]` are signed permutation matrices, pairwise orthogonal in
//! the Frobenius inner product with squared norm 4, so the coefficients of any
//! matrix are a quarter of its inner products with them.

use std::sync::OnceLock;

use crate::mat4::Mat4;
use crate::quat::{PureQuaternion, Quaternion};

/// Coefficient of `e_x (x) e_y`, indexed `[x][y]` over the basis `1, i, j, k`.
pub type TensorCoefficients = [[f64; 4]; 4];

/// Canonical expansion `a 1(x)1 + p(x)i + q(x)j + r(x)k + s(x)1 + 1(x)t`.
///
/// The `(a, p, q, r)` summand is the symmetric part of the represented matrix
/// and `(s, t)` the skew-symmetric part. `4a` is the trace.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct TensorRep {
    pub a: f64,
    pub p: PureQuaternion,
    pub q: PureQuaternion,
    pub r: PureQuaternion,
    pub s: PureQuaternion,
    pub t: PureQuaternion,
}

impl TensorRep {
    pub fn from_coefficients(c: &TensorCoefficients) -> Self {
        let column = |y: usize| PureQuaternion::new(c[1][y], c[2][y], c[3][y]);
        Self {
            a: c[0][0],
            p: column(1),
            q: column(2),
            r: column(3),
            s: column(0),
            t: PureQuaternion::new(c[0][1], c[0][2], c[0][3]),
        }
    }

    pub fn coefficients(&self) -> TensorCoefficients {
        let mut c = [[0.0; 4]; 4];
        c[0][0] = self.a;
        for (y, v) in [(0, self.s), (1, self.p), (2, self.q), (3, self.r)] {
            let v = v.to_array();
            for x in 1..4 {
                c[x][y] = v[x - 1];
            }
        }
        let t = self.t.to_array();
        c[0][1..4].copy_from_slice(&t);
        c
    }

    /// The `(a, p, q, r)` summand alone.
    pub fn symmetric_part(&self) -> Self {
        Self {
            s: PureQuaternion::ZERO,
            t: PureQuaternion::ZERO,
            ..*self
        }
    }

    /// The `(s, t)` summand alone.
    pub fn skew_part(&self) -> Self {
        Self {
            s: self.s,
            t: self.t,
            ..Self::default()
        }
    }

    /// Largest absolute coefficient.
    pub fn max_abs(&self) -> f64 {
        [self.p, self.q, self.r, self.s, self.t]
            .iter()
            .fold(self.a.abs(), |m, v| m.max(v.max_abs()))
    }

    pub fn skew_max_abs(&self) -> f64 {
        self.s.max_abs().max(self.t.max_abs())
    }
}

/// Matrix of `x -> p x conj(q)` in the basis `{1, i, j, k}`.
pub fn matrix_of_tensor(p: Quaternion, q: Quaternion) -> Mat4 {
    let qc = q.conj();
    let mut m = Mat4::ZERO;
    for c in 0..4 {
        m.set_column(c, (p * Quaternion::basis(c) * qc).to_array());
    }
    m
}

fn basis_table() -> &'static [[Mat4; 4]; 4] {
    static TABLE: OnceLock<[[Mat4; 4]; 4]> = OnceLock::new();
    TABLE.get_or_init(|| {
        std::array::from_fn(|x| {
            std::array::from_fn(|y| matrix_of_tensor(Quaternion::basis(x), Quaternion::basis(y)))
        })
    })
}

/// `M[e_x (x) e_y]` for basis indices `x, y` in `0..4` (order `1, i, j, k`).
pub fn basis_matrix(x: usize, y: usize) -> Mat4 {
    basis_table()[x][y]
}

pub fn coefficients_of_matrix(m: &Mat4) -> TensorCoefficients {
    let table = basis_table();
    std::array::from_fn(|x| std::array::from_fn(|y| 0.25 * table[x][y].frobenius_inner(m)))
}

pub fn matrix_of_coefficients(c: &TensorCoefficients) -> Mat4 {
    let table = basis_table();
    let mut m = Mat4::ZERO;
    for x in 0..4 {
        for y in 0..4 {
            if c[x][y] != 0.0 {
                m = m + table[x][y].scale(c[x][y]);
            }
        }
    }
    m
}

pub fn rep_of_matrix(m: &Mat4) -> TensorRep {
    TensorRep::from_coefficients(&coefficients_of_matrix(m))
}

pub fn matrix_of_rep(rep: &TensorRep) -> Mat4 {
    matrix_of_coefficients(&rep.coefficients())
}

/// Representation of the transposed matrix: conjugation negates `s` and `t`.
pub fn transpose_rep(rep: &TensorRep) -> TensorRep {
    TensorRep {
        s: -rep.s,
        t: -rep.t,
        ..*rep
    }
}
