//! Euler-Cartan factorization `X = U1 D U2` built on the polar decomposition.
//!
//! A positive definite symplectic `H = a + sum Z[x][y] e_x(x)e_y` is
//! conjugated to diagonal form by `M[u (x) v]` once `Z = R_u S R_v^T` is a
//! signed SVD. Symplecticity makes the Gram matrix of the columns `p, q, r`
//! block diagonal, so `R_v` is a rotation about the j axis found from a 2x2
//! problem, which keeps `v` in span{1, j} and `M[u (x) v]` symplectic.

use crate::error::{Error, Result};
use crate::hh_rep::matrix_of_tensor;
use crate::jacobi::symmetric_eigen;
use crate::mat4::Mat4;
use crate::quat::{PureQuaternion, Quaternion};
use crate::symplectic::{symplectic_residual, SymSymplecticRep};

use super::polar_decompose;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DiagonalizationMethod {
    /// Closed form through the 2x2 reduction of the `(p, r)` Gram matrix.
    QuaternionReduction,
    /// Jacobi eigenvectors paired as `w, -J w`.
    JacobiPairing,
}

/// `V^T H V = diag(d)` with `V` orthogonal symplectic and
/// `d = (l1, l2, 1/l1, 1/l2)`, `l1 >= l2 >= 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Diagonalization {
    pub v: Mat4,
    pub d: [f64; 4],
    pub method: DiagonalizationMethod,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CartanFactors {
    pub u1: Mat4,
    pub d: [f64; 4],
    pub u2: Mat4,
    /// `l1` and `l2` coincide, so the diagonalizing `V` is not unique.
    pub degenerate: bool,
    pub method: DiagonalizationMethod,
}

impl CartanFactors {
    pub fn d_matrix(&self) -> Mat4 {
        Mat4::from_diagonal(self.d)
    }

    pub fn reassemble(&self) -> Mat4 {
        self.u1 * self.d_matrix() * self.u2
    }
}

fn rotation_of(u: Quaternion) -> [PureQuaternion; 3] {
    [Quaternion::I, Quaternion::J, Quaternion::K].map(|e| (u * e * u.conj()).imag())
}

/// Unit quaternion `u` with `u e_k conj(u) = cols[k]` for a proper rotation
/// given by its columns.
fn quaternion_of_rotation(cols: &[PureQuaternion; 3]) -> Quaternion {
    let r = |i: usize, j: usize| cols[j].to_array()[i];
    let trace = r(0, 0) + r(1, 1) + r(2, 2);
    let q = if trace > r(0, 0).max(r(1, 1)).max(r(2, 2)) {
        let s = 2.0 * (1.0 + trace).sqrt();
        Quaternion::new(
            0.25 * s,
            (r(2, 1) - r(1, 2)) / s,
            (r(0, 2) - r(2, 0)) / s,
            (r(1, 0) - r(0, 1)) / s,
        )
    } else if r(0, 0) >= r(1, 1) && r(0, 0) >= r(2, 2) {
        let s = 2.0 * (1.0 + r(0, 0) - r(1, 1) - r(2, 2)).sqrt();
        Quaternion::new(
            (r(2, 1) - r(1, 2)) / s,
            0.25 * s,
            (r(0, 1) + r(1, 0)) / s,
            (r(0, 2) + r(2, 0)) / s,
        )
    } else if r(1, 1) >= r(2, 2) {
        let s = 2.0 * (1.0 - r(0, 0) + r(1, 1) - r(2, 2)).sqrt();
        Quaternion::new(
            (r(0, 2) - r(2, 0)) / s,
            (r(0, 1) + r(1, 0)) / s,
            0.25 * s,
            (r(1, 2) + r(2, 1)) / s,
        )
    } else {
        let s = 2.0 * (1.0 - r(0, 0) - r(1, 1) + r(2, 2)).sqrt();
        Quaternion::new(
            (r(1, 0) - r(0, 1)) / s,
            (r(0, 2) + r(2, 0)) / s,
            (r(1, 2) + r(2, 1)) / s,
            0.25 * s,
        )
    };
    q.normalize().unwrap_or(Quaternion::ONE)
}

/// Some unit vector orthogonal to `n`.
fn any_orthogonal(n: PureQuaternion) -> PureQuaternion {
    let a = n.to_array().map(f64::abs);
    let axis = if a[0] <= a[1] && a[0] <= a[2] {
        PureQuaternion::new(1.0, 0.0, 0.0)
    } else if a[1] <= a[2] {
        PureQuaternion::new(0.0, 1.0, 0.0)
    } else {
        PureQuaternion::new(0.0, 0.0, 1.0)
    };
    let w = n.cross(axis);
    w.scale(1.0 / w.norm())
}

/// Right-handed orthonormal frame `b` with `b[k]` parallel to `cols[k]`
/// wherever that column is not negligible. The columns must be mutually
/// orthogonal.
fn frame_from_orthogonal_columns(cols: &[PureQuaternion; 3], tiny: f64) -> [PureQuaternion; 3] {
    let norms = cols.map(|c| c.norm());
    let mut order = [0usize, 1, 2];
    order.sort_by(|&i, &j| norms[j].total_cmp(&norms[i]));
    let [i0, i1, i2] = order;

    let mut b = [
        PureQuaternion::new(1.0, 0.0, 0.0),
        PureQuaternion::new(0.0, 1.0, 0.0),
        PureQuaternion::new(0.0, 0.0, 1.0),
    ];
    if norms[i0] <= tiny {
        return b;
    }
    b[i0] = cols[i0].scale(1.0 / norms[i0]);
    let w = cols[i1] - b[i0].scale(cols[i1].dot(b[i0]));
    let wn = w.norm();
    b[i1] = if wn > tiny {
        w.scale(1.0 / wn)
    } else {
        any_orthogonal(b[i0])
    };
    b[i2] = b[(i2 + 1) % 3].cross(b[(i2 + 2) % 3]);
    b
}

/// `V = M[u (x) v]` from the 2x2 reduction; not yet sorted or verified.
fn quaternion_frame(rep: &SymSymplecticRep) -> Mat4 {
    let (p, q, r) = (rep.p, rep.q, rep.r);
    let (pp, rr, pr) = (p.dot(p), r.dot(r), p.dot(r));
    let phi = 0.5 * (-2.0 * pr).atan2(pp - rr);
    let v = Quaternion::new((0.5 * phi).cos(), 0.0, (0.5 * phi).sin(), 0.0);
    let rv = rotation_of(v);

    // columns of Z R_v, where Z = [p q r]
    let z = [p, q, r];
    let cols = rv.map(|axis| {
        let a = axis.to_array();
        z[0].scale(a[0]) + z[1].scale(a[1]) + z[2].scale(a[2])
    });
    let scale = 1.0 + rep.max_abs();
    let frame = frame_from_orthogonal_columns(&cols, 1e-14 * scale);
    let u = quaternion_of_rotation(&frame);
    matrix_of_tensor(u, v)
}

/// `V = [w1, w2, -J w1, -J w2]` from Jacobi eigenvectors; not yet sorted or verified.
fn jacobi_frame(h: &Mat4) -> Mat4 {
    let eig = symmetric_eigen(h);
    let w1 = eig.vector(0);
    let jw1 = Mat4::J4.mul_vec(w1);
    let dot = |a: [f64; 4], b: [f64; 4]| -> f64 { (0..4).map(|i| a[i] * b[i]).sum() };
    let mut w2 = eig.vector(1);
    for k in 1..4 {
        let cand = eig.vector(k);
        let (c1, c2) = (dot(cand, w1), dot(cand, jw1));
        let proj: [f64; 4] = std::array::from_fn(|i| cand[i] - c1 * w1[i] - c2 * jw1[i]);
        let n = dot(proj, proj).sqrt();
        if n > 0.5 {
            w2 = proj.map(|x| x / n);
            break;
        }
    }
    let jw2 = Mat4::J4.mul_vec(w2);
    Mat4::from_columns([w1, w2, jw1.map(|x| -x), jw2.map(|x| -x)])
}

/// Sorts `V^T H V` into `(l1, l2, 1/l1, 1/l2)`, `l1 >= l2 >= 1`, by
/// symplectic orthogonal column moves, and verifies the result.
fn finish(h: &Mat4, mut v: Mat4, method: DiagonalizationMethod) -> Option<Diagonalization> {
    let scale = 1.0 + h.max_abs();
    let orth = (v.transpose_mul(&v) - Mat4::IDENTITY).max_abs();
    if orth > 1e-12 || symplectic_residual(&v) > 1e-12 {
        return None;
    }
    let dm = v.transpose_mul(&(*h * v));
    let mut off = 0.0_f64;
    for i in 0..4 {
        for j in 0..4 {
            if i != j {
                off = off.max(dm[(i, j)].abs());
            }
        }
    }
    if off > 1e-10 * scale {
        return None;
    }
    let mut d = dm.diagonal();
    for k in 0..2 {
        if d[k] < d[k + 2] {
            let (ck, ck2) = (v.column(k), v.column(k + 2));
            v.set_column(k, ck2);
            v.set_column(k + 2, ck.map(|x| -x));
            d.swap(k, k + 2);
        }
    }
    if d[1] > d[0] {
        let cols = [v.column(1), v.column(0), v.column(3), v.column(2)];
        v = Mat4::from_columns(cols);
        d = [d[1], d[0], d[3], d[2]];
    }
    Some(Diagonalization { v, d, method })
}

/// Closed-form diagonalization; `None` if the reduction does not verify.
pub fn diagonalize_by_quaternions(rep: &SymSymplecticRep) -> Option<Diagonalization> {
    finish(
        &rep.matrix(),
        quaternion_frame(rep),
        DiagonalizationMethod::QuaternionReduction,
    )
}

pub fn diagonalize_by_jacobi(h: &Mat4) -> Option<Diagonalization> {
    finish(h, jacobi_frame(h), DiagonalizationMethod::JacobiPairing)
}

/// Diagonalizes a positive definite symplectic `H` by an orthogonal
/// symplectic `V`, falling back to Jacobi when the closed form does not
/// verify.
pub fn diagonalize_pd_symplectic(rep: &SymSymplecticRep) -> Result<Diagonalization> {
    if let Some(d) = diagonalize_by_quaternions(rep) {
        return Ok(d);
    }
    let h = rep.matrix();
    diagonalize_by_jacobi(&h).ok_or(Error::DiagonalizationFailed)
}

pub fn euler_cartan(x: &Mat4, tol: f64) -> Result<CartanFactors> {
    let polar = polar_decompose(x, tol)?;
    let diag = diagonalize_pd_symplectic(&polar.sym)?;
    let [l1, l2, ..] = diag.d;
    Ok(CartanFactors {
        u1: polar.u * diag.v,
        d: diag.d,
        u2: diag.v.transpose(),
        degenerate: (l1 - l2).abs() <= 1e-8 * l1,
        method: diag.method,
    })
}
