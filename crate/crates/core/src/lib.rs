//! Quaternion parametrization of the real symplectic group Sp(4,R).
//!
//! Every real 4x4 matrix is a linear combination of the sixteen maps
//! `x -> p x conj(q)` on the quaternions; this crate uses that tensor
//! description to characterize symmetric, positive definite and orthogonal
//! symplectic matrices, and to compute polar and Euler-Cartan factorizations
//! in closed form.

// `!(x > 0.0)` is used on purpose so that NaN fails positivity checks.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod hh_rep;
pub mod jacobi;
pub mod mat4;
pub mod polar;
pub mod quat;
pub mod symplectic;
pub mod testkit;

pub use error::{Error, Result};
pub use hh_rep::{matrix_of_tensor, rep_of_matrix, TensorRep};
pub use mat4::Mat4;
pub use polar::{
    euler_cartan, full_quaternion_form, polar_decompose, sqrt_pd_symplectic, CartanFactors,
    OrthoSymplecticQuat, PolarFactors, QuaternionForm,
};
pub use quat::{PureQuaternion, Quaternion};
pub use symplectic::{
    charpoly_sym_symplectic, charpoly_symplectic, is_pd_symplectic, is_symplectic, CharPoly,
    SymSymplecticRep, DEFAULT_TOL,
};
