//! Dense real 4x4 matrices stored row-major.

use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

/// A real 4x4 matrix with entries stored row-major.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat4 {
    data: [f64; 16],
}

impl Default for Mat4 {
    fn default() -> Self {
        Self::ZERO
    }
}

impl Mat4 {
    pub const ZERO: Mat4 = Mat4 { data: [0.0; 16] };

    pub const IDENTITY: Mat4 = Mat4 {
        data: [
            1.0, 0.0, 0.0, 0.0, //
            0.0, 1.0, 0.0, 0.0, //
            0.0, 0.0, 1.0, 0.0, //
            0.0, 0.0, 0.0, 1.0,
        ],
    };

    /// The standard symplectic form `[[0, I], [-I, 0]]`.
    pub const J4: Mat4 = Mat4 {
        data: [
            0.0, 0.0, 1.0, 0.0, //
            0.0, 0.0, 0.0, 1.0, //
            -1.0, 0.0, 0.0, 0.0, //
            0.0, -1.0, 0.0, 0.0,
        ],
    };

    pub const fn from_row_major(data: [f64; 16]) -> Self {
        Self { data }
    }

    pub fn from_rows(rows: [[f64; 4]; 4]) -> Self {
        let mut m = Self::ZERO;
        for (i, row) in rows.iter().enumerate() {
            m.data[4 * i..4 * i + 4].copy_from_slice(row);
        }
        m
    }

    pub fn from_columns(cols: [[f64; 4]; 4]) -> Self {
        Self::from_rows(cols).transpose()
    }

    pub fn from_diagonal(d: [f64; 4]) -> Self {
        let mut m = Self::ZERO;
        for (i, v) in d.iter().enumerate() {
            m[(i, i)] = *v;
        }
        m
    }

    pub fn as_row_major(&self) -> &[f64; 16] {
        &self.data
    }

    pub fn rows(&self) -> [[f64; 4]; 4] {
        std::array::from_fn(|i| self.row(i))
    }

    pub fn row(&self, i: usize) -> [f64; 4] {
        std::array::from_fn(|j| self[(i, j)])
    }

    pub fn column(&self, j: usize) -> [f64; 4] {
        std::array::from_fn(|i| self[(i, j)])
    }

    pub fn set_column(&mut self, j: usize, col: [f64; 4]) {
        for (i, v) in col.iter().enumerate() {
            self[(i, j)] = *v;
        }
    }

    pub fn diagonal(&self) -> [f64; 4] {
        std::array::from_fn(|i| self[(i, i)])
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::ZERO;
        for i in 0..4 {
            for j in 0..4 {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    pub fn trace(&self) -> f64 {
        self[(0, 0)] + self[(1, 1)] + self[(2, 2)] + self[(3, 3)]
    }

    pub fn scale(&self, s: f64) -> Self {
        Self {
            data: self.data.map(|v| v * s),
        }
    }

    /// Largest absolute entry.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0_f64, |m, v| m.max(v.abs()))
    }

    pub fn frobenius_inner(&self, other: &Mat4) -> f64 {
        self.data
            .iter()
            .zip(other.data.iter())
            .map(|(a, b)| a * b)
            .sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.frobenius_inner(self).sqrt()
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|v| v.is_finite())
    }

    pub fn symmetric_part(&self) -> Self {
        (*self + self.transpose()).scale(0.5)
    }

    pub fn skew_part(&self) -> Self {
        (*self - self.transpose()).scale(0.5)
    }

    /// `self^T * other` without materializing the transpose.
    pub fn transpose_mul(&self, other: &Mat4) -> Self {
        let mut out = Self::ZERO;
        for i in 0..4 {
            for j in 0..4 {
                out[(i, j)] = (0..4).map(|k| self[(k, i)] * other[(k, j)]).sum();
            }
        }
        out
    }

    pub fn mul_vec(&self, v: [f64; 4]) -> [f64; 4] {
        std::array::from_fn(|i| (0..4).map(|k| self[(i, k)] * v[k]).sum())
    }

    /// Determinant by cofactor expansion along 2x2 minors.
    pub fn determinant(&self) -> f64 {
        let m = |i: usize, j: usize| self[(i, j)];
        let s0 = m(0, 0) * m(1, 1) - m(1, 0) * m(0, 1);
        let s1 = m(0, 0) * m(1, 2) - m(1, 0) * m(0, 2);
        let s2 = m(0, 0) * m(1, 3) - m(1, 0) * m(0, 3);
        let s3 = m(0, 1) * m(1, 2) - m(1, 1) * m(0, 2);
        let s4 = m(0, 1) * m(1, 3) - m(1, 1) * m(0, 3);
        let s5 = m(0, 2) * m(1, 3) - m(1, 2) * m(0, 3);
        let c5 = m(2, 2) * m(3, 3) - m(3, 2) * m(2, 3);
        let c4 = m(2, 1) * m(3, 3) - m(3, 1) * m(2, 3);
        let c3 = m(2, 1) * m(3, 2) - m(3, 1) * m(2, 2);
        let c2 = m(2, 0) * m(3, 3) - m(3, 0) * m(2, 3);
        let c1 = m(2, 0) * m(3, 2) - m(3, 0) * m(2, 2);
        let c0 = m(2, 0) * m(3, 1) - m(3, 0) * m(2, 1);
        s0 * c5 - s1 * c4 + s2 * c3 + s3 * c2 - s4 * c1 + s5 * c0
    }
}

impl Index<(usize, usize)> for Mat4 {
    type Output = f64;

    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.data[4 * i + j]
    }
}

impl IndexMut<(usize, usize)> for Mat4 {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut f64 {
        &mut self.data[4 * i + j]
    }
}

impl Mul for Mat4 {
    type Output = Mat4;

    fn mul(self, rhs: Mat4) -> Mat4 {
        let mut out = Mat4::ZERO;
        for i in 0..4 {
            for j in 0..4 {
                out[(i, j)] = (0..4).map(|k| self[(i, k)] * rhs[(k, j)]).sum();
            }
        }
        out
    }
}

impl Mul<f64> for Mat4 {
    type Output = Mat4;

    fn mul(self, s: f64) -> Mat4 {
        self.scale(s)
    }
}

impl Add for Mat4 {
    type Output = Mat4;

    fn add(self, rhs: Mat4) -> Mat4 {
        Mat4 {
            data: std::array::from_fn(|k| self.data[k] + rhs.data[k]),
        }
    }
}

impl Sub for Mat4 {
    type Output = Mat4;

    fn sub(self, rhs: Mat4) -> Mat4 {
        Mat4 {
            data: std::array::from_fn(|k| self.data[k] - rhs.data[k]),
        }
    }
}

impl Neg for Mat4 {
    type Output = Mat4;

    fn neg(self) -> Mat4 {
        self.scale(-1.0)
    }
}
