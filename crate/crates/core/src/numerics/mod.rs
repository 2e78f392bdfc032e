//! Dense complex linear algebra, quadrature, special functions and
//! finite-difference derivatives used by every other module.
//!
//! All functions here are pure; concurrent use on independent data is safe.

mod derivative;
mod eig;
mod matrix;
mod quad;
mod special;

pub use derivative::sampled_derivative;
pub use eig::{hermitian_eig, trace_norm, HermitianEigenResult, HERMITICITY_TOL};
pub use matrix::{kron, partial_trace, pauli_x, pauli_y, pauli_z, ComplexMatrix};
pub use quad::adaptive_quad;
pub use special::gamma_fn;
