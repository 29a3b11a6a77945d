//! Single-qubit Pauli matrices. |0⟩ is the +1 eigenstate of σ³.

use num_complex::Complex64;

use super::matrix::ComplexMatrix;

fn m2(entries: [Complex64; 4]) -> ComplexMatrix {
    ComplexMatrix::new(2, 2, entries.to_vec()).expect("2x2 literal")
}

const O: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);
const I: Complex64 = Complex64::new(0.0, 1.0);

/// Identity.
pub fn sigma0() -> ComplexMatrix {
    m2([ONE, O, O, ONE])
}

/// σ_x
pub fn sigma1() -> ComplexMatrix {
    m2([O, ONE, ONE, O])
}

/// σ_y
pub fn sigma2() -> ComplexMatrix {
    m2([O, -I, I, O])
}

/// σ_z
pub fn sigma3() -> ComplexMatrix {
    m2([ONE, O, O, -ONE])
}
