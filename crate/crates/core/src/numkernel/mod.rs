//! Dense complex linear algebra for the small (2, 4, 8, 16) dimensions used here.

mod eig;
mod matrix;
mod ops;
pub mod pauli;

pub use eig::{hermitian_eig, psd_sqrt, HermitianEigen, HERMITIAN_TOL};
pub use matrix::{ComplexMatrix, ComplexVector};
pub use num_complex::Complex64;
pub use ops::{commutator_max_abs, kron, kron_all, partial_trace, validate_density};
