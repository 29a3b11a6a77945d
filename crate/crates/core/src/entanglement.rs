//! Pairwise concurrence: the Wootters construction for arbitrary two-qubit
//! states and closed forms for the thermal ring.

use crate::error::{Error, Result};
use crate::expo;
use crate::numkernel::{hermitian_eig, kron, pauli, psd_sqrt, validate_density, ComplexMatrix};
use crate::ring::{is_tie, RingParams};

/// Tolerance used to accept a two-qubit density operator.
pub const DENSITY_TOL: f64 = 1e-8;

/// Eigenvalue noise below this is clamped to zero before use.
const CLAMP_TOL: f64 = 1e-10;

/// The four λ_k, non-increasing and non-negative.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SpinFlipEigenvalues([f64; 4]);

impl SpinFlipEigenvalues {
    /// Sorts (stable) and clamps noise in `[-1e-10, 0)` to zero.
    pub fn new(mut lambdas: [f64; 4]) -> Result<Self> {
        for l in &mut lambdas {
            if !l.is_finite() || *l < -CLAMP_TOL {
                return Err(Error::invalid(format!("spin-flip eigenvalue {l} is negative or not finite")));
            }
            *l = l.max(0.0);
        }
        lambdas.sort_by(|a, b| b.total_cmp(a));
        Ok(Self(lambdas))
    }

    pub fn values(&self) -> [f64; 4] {
        self.0
    }

    /// max{λ₁ − λ₂ − λ₃ − λ₄, 0}
    pub fn concurrence(&self) -> f64 {
        let [l1, l2, l3, l4] = self.0;
        (l1 - l2 - l3 - l4).max(0.0)
    }
}

fn sigma_yy() -> ComplexMatrix {
    kron(&pauli::sigma2(), &pauli::sigma2())
}

/// Square roots of the eigenvalues of R = ρ(σ²⊗σ²)ρ*(σ²⊗σ²).
///
/// R is not Hermitian, but its eigenvalues are the squared singular values of
/// M = √ρ (σ²⊗σ²) √ρ*. The singular values are read off as the non-negative
/// eigenvalues of the Hermitian block matrix [[0, M], [M†, 0]], which keeps
/// full absolute accuracy for nearly rank-deficient ρ.
pub fn spin_flip_eigenvalues(rho: &ComplexMatrix) -> Result<SpinFlipEigenvalues> {
    if rho.rows() != 4 || !rho.is_square() {
        return Err(Error::invalid(format!("expected a 4x4 two-qubit state, got {}x{}", rho.rows(), rho.cols())));
    }
    if !validate_density(rho, DENSITY_TOL) {
        return Err(Error::invalid("input is not a valid density operator"));
    }
    let sqrt_rho = psd_sqrt(&rho.hermitian_part())?;
    let m = &(&sqrt_rho * &sigma_yy()) * &sqrt_rho.conj();

    let mut block = ComplexMatrix::zeros(8, 8);
    let m_dag = m.dagger();
    for i in 0..4 {
        for j in 0..4 {
            block[(i, j + 4)] = m[(i, j)];
            block[(i + 4, j)] = m_dag[(i, j)];
        }
    }
    let eig = hermitian_eig(&block)?;
    // Eigenvalues come in ± pairs; the top four are the singular values.
    let top: [f64; 4] = [eig.values[0], eig.values[1], eig.values[2], eig.values[3]];
    SpinFlipEigenvalues::new(top)
}

/// Wootters concurrence of a two-qubit density operator.
pub fn wootters_concurrence(rho: &ComplexMatrix) -> Result<f64> {
    Ok(spin_flip_eigenvalues(rho)?.concurrence().min(1.0))
}

/// λ₁..λ₄ of the thermal pair state as printed in closed form, before
/// division by Z. λ₁ and λ₂ are not ordered: λ₂ > λ₁ whenever J > 0.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ClosedFormLambdas {
    pub lambda1: f64,
    pub lambda2: f64,
    pub lambda3: f64,
    pub lambda4: f64,
}

impl ClosedFormLambdas {
    pub fn as_array(&self) -> [f64; 4] {
        [self.lambda1, self.lambda2, self.lambda3, self.lambda4]
    }

    /// Sorted values on the same (unnormalized) scale.
    pub fn sorted(&self) -> Result<SpinFlipEigenvalues> {
        SpinFlipEigenvalues::new(self.as_array())
    }

    /// Divide by the partition function, giving the λ's of ρ_AB itself.
    pub fn normalized(&self, partition_function: f64) -> Result<SpinFlipEigenvalues> {
        SpinFlipEigenvalues::new(self.as_array().map(|l| l / partition_function))
    }
}

pub fn closed_form_lambdas(p: &RingParams) -> Result<ClosedFormLambdas> {
    let beta = p.finite_beta()?;
    let (j, b) = (p.coupling(), p.field());
    let e_m2 = expo::exp(-2.0 * beta * j)?;
    let e_1 = expo::exp(beta * j)?;
    let ch_half = expo::cosh(0.5 * beta * b)?;
    let ch = expo::cosh(beta * b)?;
    let a = e_m2 + 2.0 * e_1;
    let lambda1 = 2.0 / 3.0 * (2.0 * e_m2 + e_1) * ch_half;
    let lambda2 = 2.0 * e_1 * ch_half;
    let lambda3 = ((a / 3.0).powi(2) + 2.0 / 3.0 * a * ch + 1.0).sqrt();
    for (v, name) in [(lambda1, "lambda1"), (lambda2, "lambda2"), (lambda3, "lambda3")] {
        expo::finite(v, name)?;
    }
    Ok(ClosedFormLambdas { lambda1, lambda2, lambda3, lambda4: lambda3 })
}

/// Closed-form pairwise concurrence of the thermal ring.
pub fn thermal_concurrence(p: &RingParams) -> Result<f64> {
    Ok(thermal_concurrence_unclamped(p)?.max(0.0))
}

/// The closed-form concurrence expression before taking max{·, 0}.
pub fn thermal_concurrence_unclamped(p: &RingParams) -> Result<f64> {
    let beta = p.finite_beta()?;
    let (j, b) = (p.coupling(), p.field());
    let e_m2 = expo::exp(-2.0 * beta * j)?;
    let e_1 = expo::exp(beta * j)?;
    let ch_half = expo::cosh(0.5 * beta * b)?;
    let ch = expo::cosh(beta * b)?;
    let ch_3half = expo::cosh(1.5 * beta * b)?;
    let a = e_m2 + 2.0 * e_1;
    let numerator = 2.0 * (e_m2 - e_1).abs() * ch_half - (a * a + 6.0 * a * ch + 9.0).sqrt();
    let denominator = 3.0 * (ch_3half + e_m2 * ch_half + 2.0 * e_1 * ch_half);
    expo::finite(numerator / denominator, "thermal concurrence")
}

/// Exact T → 0 concurrence, piecewise in B_m (B_m ≥ 0).
///
/// J > 0: 0 at B_m = 0, 1/3 below B_m = J, 2/9 at B_m = J, 0 above.
/// J < 0: 1/3 at B_m = 0, 2/3 below B_m = −2J, 1/3 at B_m = −2J, 0 above.
pub fn concurrence_zero_temperature(coupling: f64, field: f64) -> Result<f64> {
    if !coupling.is_finite() || !field.is_finite() {
        return Err(Error::invalid("coupling and field must be finite"));
    }
    if coupling == 0.0 {
        return Err(Error::invalid("zero-temperature concurrence requires J != 0"));
    }
    if field < 0.0 {
        return Err(Error::invalid("zero-temperature concurrence requires B_m >= 0"));
    }
    let scale = coupling.abs().max(field);
    let value = if coupling > 0.0 {
        let edge = coupling;
        if field == 0.0 {
            0.0
        } else if is_tie(field, edge, scale) {
            2.0 / 9.0
        } else if field < edge {
            1.0 / 3.0
        } else {
            0.0
        }
    } else {
        let edge = -2.0 * coupling;
        if field == 0.0 || is_tie(field, edge, scale) {
            1.0 / 3.0
        } else if field < edge {
            2.0 / 3.0
        } else {
            0.0
        }
    };
    Ok(value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numkernel::ComplexVector;
    use crate::ring::{reduced_pair_state, thermal_state, LevelLabel};
    use std::f64::consts::FRAC_1_SQRT_2;

    fn params(j: f64, b: f64, beta: f64) -> RingParams {
        RingParams::new(j, b, beta).unwrap()
    }

    #[test]
    fn bell_state_is_maximally_entangled() {
        let phi = ComplexVector::from_real(&[FRAC_1_SQRT_2, 0.0, 0.0, FRAC_1_SQRT_2]);
        let c = wootters_concurrence(&ComplexMatrix::projector(&phi)).unwrap();
        assert!((c - 1.0).abs() < 1e-12);
    }

    #[test]
    fn maximally_mixed_is_separable() {
        let c = wootters_concurrence(&ComplexMatrix::identity(4).scale_real(0.25)).unwrap();
        assert!(c.abs() < 1e-14);
    }

    #[test]
    fn w4_pair_concurrence() {
        let rho = reduced_pair_state(&LevelLabel::W4.projector()).unwrap();
        let c = wootters_concurrence(&rho).unwrap();
        assert!((c - 2.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn rejects_invalid_states() {
        assert!(wootters_concurrence(&ComplexMatrix::identity(4)).is_err());
        assert!(wootters_concurrence(&ComplexMatrix::identity(2).scale_real(0.5)).is_err());
    }

    #[test]
    fn spin_flip_eigenvalues_sort_and_clamp() {
        let s = SpinFlipEigenvalues::new([0.1, 0.5, -1e-12, 0.2]).unwrap();
        assert_eq!(s.values(), [0.5, 0.2, 0.1, 0.0]);
        assert!(SpinFlipEigenvalues::new([0.1, -1e-6, 0.0, 0.0]).is_err());
    }

    #[test]
    fn closed_form_lambdas_at_infinite_temperature() {
        let l = closed_form_lambdas(&params(0.7, -0.4, 1e-12)).unwrap();
        for v in l.as_array() {
            assert!((v - 2.0).abs() < 1e-9);
        }
    }

    #[test]
    fn closed_form_lambda_one_value() {
        let l = closed_form_lambdas(&params(1.0, 0.0, 1.0)).unwrap();
        let expected = 2.0 / 3.0 * (2.0 * (-2.0f64).exp() + 1f64.exp());
        assert!((l.lambda1 - expected).abs() < 1e-14);
        assert!((l.lambda1 - 1.992_634_929_954_85).abs() < 1e-12);
        assert_eq!(l.lambda3, l.lambda4);
    }

    #[test]
    fn closed_form_lambdas_match_wootters_after_normalization() {
        for (j, b, beta) in [(1.0, 0.3, 1.0), (-1.0, 0.5, 2.0), (0.5, 2.0, 5.0)] {
            let p = params(j, b, beta);
            let z = crate::ring::partition_function(&p).unwrap();
            let closed = closed_form_lambdas(&p).unwrap().normalized(z).unwrap().values();
            let numeric =
                spin_flip_eigenvalues(&reduced_pair_state(&thermal_state(&p).unwrap()).unwrap()).unwrap().values();
            for (a, b) in closed.iter().zip(numeric) {
                assert!((a - b).abs() < 1e-12, "{closed:?} vs {numeric:?}");
            }
        }
    }

    #[test]
    fn antiferromagnet_without_field_is_unentangled() {
        for beta in [0.1, 1.0, 10.0, 100.0] {
            assert_eq!(thermal_concurrence(&params(1.0, 0.0, beta)).unwrap(), 0.0);
        }
    }

    #[test]
    fn low_temperature_ferromagnet() {
        let c = thermal_concurrence(&params(-1.0, 0.0, 50.0)).unwrap();
        assert!((c - 1.0 / 3.0).abs() < 1e-6);
        let c = thermal_concurrence(&params(-1.0, 1.0, 50.0)).unwrap();
        assert!((c - 2.0 / 3.0).abs() < 1e-6);
    }

    #[test]
    fn zero_temperature_table() {
        let cases = [
            (2.0, 1.0, 1.0 / 3.0),
            (2.0, 2.0, 2.0 / 9.0),
            (2.0, 0.0, 0.0),
            (2.0, 3.0, 0.0),
            (-1.0, 0.0, 1.0 / 3.0),
            (-1.0, 1.0, 2.0 / 3.0),
            (-1.0, 2.0, 1.0 / 3.0),
            (-1.0, 4.0, 0.0),
        ];
        for (j, b, c) in cases {
            assert_eq!(concurrence_zero_temperature(j, b).unwrap(), c, "J={j} B={b}");
        }
        assert!(concurrence_zero_temperature(0.0, 1.0).is_err());
        assert!(concurrence_zero_temperature(1.0, -1.0).is_err());
    }

    #[test]
    fn zero_temperature_values_match_ground_state_wootters() {
        for (j, b) in [
            (1.0, 0.0),
            (1.0, 0.5),
            (1.0, 1.0),
            (1.0, 1.5),
            (1.0, 3.0),
            (-1.0, 0.0),
            (-1.0, 1.0),
            (-1.0, 2.0),
            (-1.0, 3.0),
            (-1.0, 4.0),
        ] {
            let chi = crate::ring::ground_state_limit(j, b).unwrap();
            let numeric = wootters_concurrence(&reduced_pair_state(&chi).unwrap()).unwrap();
            let exact = concurrence_zero_temperature(j, b).unwrap();
            assert!((numeric - exact).abs() < 1e-12, "J={j} B={b}: {numeric} vs {exact}");
        }
    }

    #[test]
    fn field_reversal_symmetry_is_exact() {
        for (j, b, beta) in [(1.0, 2.0, 1.0), (-1.0, 0.7, 3.0), (0.5, 4.0, 0.2)] {
            let plus = thermal_concurrence(&params(j, b, beta)).unwrap();
            let minus = thermal_concurrence(&params(j, -b, beta)).unwrap();
            assert_eq!(plus.to_bits(), minus.to_bits());
        }
    }

    #[test]
    fn coupling_sign_matters() {
        let afm = thermal_concurrence(&params(1.0, 0.0, 5.0)).unwrap();
        let fm = thermal_concurrence(&params(-1.0, 0.0, 5.0)).unwrap();
        assert_eq!(afm, 0.0);
        assert!(fm > 0.3);
    }

    #[test]
    fn range_error_propagates() {
        assert!(matches!(thermal_concurrence(&params(-1.0, 0.0, 400.0)), Err(Error::Range(_))));
    }
}
