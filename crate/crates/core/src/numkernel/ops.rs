use num_complex::Complex64;

use super::eig::hermitian_eig;
use super::matrix::ComplexMatrix;
use crate::error::{Error, Result};

/// Kronecker product `a ⊗ b`.
pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    let (ar, ac, br, bc) = (a.rows(), a.cols(), b.rows(), b.cols());
    let mut out = ComplexMatrix::zeros(ar * br, ac * bc);
    for i in 0..ar {
        for j in 0..ac {
            let s = a[(i, j)];
            for k in 0..br {
                for l in 0..bc {
                    out[(i * br + k, j * bc + l)] = s * b[(k, l)];
                }
            }
        }
    }
    out
}

/// Left fold of [`kron`]: `((m0 ⊗ m1) ⊗ m2) ⊗ ...`. Panics on an empty slice.
pub fn kron_all(factors: &[&ComplexMatrix]) -> ComplexMatrix {
    let (first, rest) = factors.split_first().expect("kron_all needs at least one factor");
    rest.iter().fold((*first).clone(), |acc, m| kron(&acc, m))
}

/// Reduced operator on the subsystems listed in `keep`.
///
/// Subsystem 0 is the most significant factor of the row index. The kept
/// subsystems appear in the output in their original order, whatever the
/// order of `keep`.
pub fn partial_trace(rho: &ComplexMatrix, dims: &[usize], keep: &[usize]) -> Result<ComplexMatrix> {
    let total: usize = dims.iter().product();
    if !rho.is_square() || rho.rows() != total || dims.contains(&0) {
        return Err(Error::invalid(format!(
            "partial trace: {}x{} operator does not match subsystem dims {:?}",
            rho.rows(),
            rho.cols(),
            dims
        )));
    }
    let mut kept = vec![false; dims.len()];
    for &k in keep {
        if k >= dims.len() || kept[k] {
            return Err(Error::invalid(format!("partial trace: bad keep set {keep:?}")));
        }
        kept[k] = true;
    }

    let kept_dims: Vec<usize> = (0..dims.len()).filter(|&k| kept[k]).map(|k| dims[k]).collect();
    let traced_dims: Vec<usize> = (0..dims.len()).filter(|&k| !kept[k]).map(|k| dims[k]).collect();
    let out_dim: usize = kept_dims.iter().product();
    let traced_dim: usize = traced_dims.iter().product();

    // Row-major strides of each subsystem in the full index.
    let mut strides = vec![1usize; dims.len()];
    for k in (0..dims.len().saturating_sub(1)).rev() {
        strides[k] = strides[k + 1] * dims[k + 1];
    }
    let kept_strides: Vec<usize> = (0..dims.len()).filter(|&k| kept[k]).map(|k| strides[k]).collect();
    let traced_strides: Vec<usize> = (0..dims.len()).filter(|&k| !kept[k]).map(|k| strides[k]).collect();

    let offset = |mut idx: usize, sub_dims: &[usize], sub_strides: &[usize]| -> usize {
        let mut off = 0;
        for k in (0..sub_dims.len()).rev() {
            off += (idx % sub_dims[k]) * sub_strides[k];
            idx /= sub_dims[k];
        }
        off
    };

    let kept_offsets: Vec<usize> = (0..out_dim).map(|i| offset(i, &kept_dims, &kept_strides)).collect();
    let traced_offsets: Vec<usize> = (0..traced_dim).map(|t| offset(t, &traced_dims, &traced_strides)).collect();

    let mut out = ComplexMatrix::zeros(out_dim, out_dim);
    for i in 0..out_dim {
        for j in 0..out_dim {
            let mut acc = Complex64::new(0.0, 0.0);
            for &t in &traced_offsets {
                acc += rho[(kept_offsets[i] + t, kept_offsets[j] + t)];
            }
            out[(i, j)] = acc;
        }
    }
    Ok(out)
}

/// True when `rho` is Hermitian, unit-trace and positive semidefinite, each within `tol`.
pub fn validate_density(rho: &ComplexMatrix, tol: f64) -> bool {
    if !rho.is_square() {
        return false;
    }
    if rho.max_abs_diff(&rho.dagger()) > tol {
        return false;
    }
    let tr = rho.trace();
    if (tr.re - 1.0).abs() > tol || tr.im.abs() > tol {
        return false;
    }
    match hermitian_eig(&rho.hermitian_part()) {
        Ok(eig) => eig.values.last().is_some_and(|&min| min >= -tol),
        Err(_) => false,
    }
}

/// Commutator norm helper: max |(ab − ba)_{ij}|.
pub fn commutator_max_abs(a: &ComplexMatrix, b: &ComplexMatrix) -> f64 {
    (a * b).max_abs_diff(&(b * a))
}
