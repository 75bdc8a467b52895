//! Recovering `(u, v)` from a special orthogonal matrix `M[u (x) v]`.
//!
//! The tensor coefficients of a decomposable `u (x) v` form the outer product
//! of the component vectors of `u` and `v`, so the pair is read off as a
//! rank-1 factorization and the residual certifies decomposability.

use crate::error::{Error, Result};
use crate::hh_rep::coefficients_of_matrix;
use crate::mat4::Mat4;
use crate::quat::Quaternion;

use super::OrthoSymplecticQuat;

fn unit(v: [f64; 4]) -> Option<[f64; 4]> {
    let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    (n > 0.0).then(|| v.map(|x| x / n))
}

/// Best rank-1 factorization `C ~ u v^T` of a coefficient matrix with unit
/// `u`, `v`, seeded from the largest entry and refined by one alternating
/// step. Returns `(u, v, max |u v^T - C|)`.
pub fn rank_one_factor(c: &[[f64; 4]; 4]) -> Option<([f64; 4], [f64; 4], f64)> {
    let (mut bx, mut by, mut best) = (0, 0, 0.0);
    for (x, row) in c.iter().enumerate() {
        for (y, v) in row.iter().enumerate() {
            if v.abs() > best {
                (bx, by, best) = (x, y, v.abs());
            }
        }
    }
    if best == 0.0 {
        return None;
    }
    let v0 = unit(c[bx])?.map(|x| x * c[bx][by].signum());
    let u = unit(std::array::from_fn(|x| {
        (0..4).map(|y| c[x][y] * v0[y]).sum()
    }))?;
    let v = unit(std::array::from_fn(|y| {
        (0..4).map(|x| c[x][y] * u[x]).sum()
    }))?;
    let mut residual = 0.0_f64;
    for x in 0..4 {
        for y in 0..4 {
            residual = residual.max((u[x] * v[y] - c[x][y]).abs());
        }
    }
    Some((u, v, residual))
}

/// `(u, v0, v2)` with `M[u (x) (v0 + v2 j)] = m`.
///
/// The sign of the pair is fixed so the first component of `u` larger than
/// `1e-10` in magnitude is positive.
pub fn so4_to_quaternion_pair(m: &Mat4, tol: f64) -> Result<OrthoSymplecticQuat> {
    let c = coefficients_of_matrix(m);
    let Some((mut u, mut v, residual)) = rank_one_factor(&c) else {
        return Err(Error::NotDecomposable { residual: 0.0 });
    };
    if residual > tol {
        return Err(Error::NotDecomposable { residual });
    }
    if let Some(lead) = u.iter().find(|x| x.abs() > 1e-10) {
        if *lead < 0.0 {
            u = u.map(|x| -x);
            v = v.map(|x| -x);
        }
    }
    let off = v[1].abs().max(v[3].abs());
    if off > tol {
        return Err(Error::NotSymplecticOrthogonal { residual: off });
    }
    let n = v[0].hypot(v[2]);
    Ok(OrthoSymplecticQuat {
        u: Quaternion::from_array(u),
        v0: v[0] / n,
        v2: v[2] / n,
    })
}
