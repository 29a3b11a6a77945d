//! One-sender, two-receiver teleportation through the ring.
//!
//! The sender holds the input qubit S and ring site A; the receivers hold B
//! and C. The sender measures (S, A) in the Bell basis and broadcasts the
//! outcome j; both receivers apply the same Pauli correction U^j. The joint
//! register is ordered S, A, B, C with S the most significant qubit.

use std::f64::consts::{FRAC_1_SQRT_2, PI};
use std::fmt;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::expo;
use crate::numkernel::{kron, partial_trace, pauli, validate_density, ComplexMatrix, ComplexVector};
use crate::quadrature::GaussLegendre;
use crate::ring::{is_tie, partition_function, thermal_state, RingParams};

/// Branches with probability at or below this are treated as impossible.
pub const MIN_BRANCH_PROBABILITY: f64 = 1e-12;

/// Gauss–Legendre order in cos θ for the Bloch-sphere average.
pub const QUADRATURE_ORDER: usize = 64;

/// Number of equally spaced azimuths averaged at each polar node.
pub const AZIMUTH_SAMPLES: usize = 4;

/// Best average fidelity attainable without entanglement.
pub const CLASSICAL_LIMIT: f64 = 2.0 / 3.0;

/// Pure input state cos(θ/2)|0⟩ + e^{iφ} sin(θ/2)|1⟩.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct InputState {
    theta: f64,
    phi: f64,
}

impl InputState {
    /// θ ∈ [0, π], φ ∈ [0, 2π].
    pub fn new(theta: f64, phi: f64) -> Result<Self> {
        if !(0.0..=PI).contains(&theta) {
            return Err(Error::invalid(format!("polar angle {theta} outside [0, π]")));
        }
        if !(0.0..=2.0 * PI).contains(&phi) {
            return Err(Error::invalid(format!("azimuth {phi} outside [0, 2π]")));
        }
        Ok(Self { theta, phi })
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    pub fn vector(&self) -> ComplexVector {
        let half = 0.5 * self.theta;
        ComplexVector::new(vec![Complex64::new(half.cos(), 0.0), Complex64::from_polar(half.sin(), self.phi)])
    }

    pub fn density(&self) -> ComplexMatrix {
        ComplexMatrix::projector(&self.vector())
    }
}

/// π_S = |ψ⟩⟨ψ| for the given Bloch angles.
pub fn input_state(theta: f64, phi: f64) -> Result<ComplexMatrix> {
    Ok(InputState::new(theta, phi)?.density())
}

/// Bell-measurement outcomes, numbered j = 1..4 in this order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BellOutcome {
    PhiPlus,
    PhiMinus,
    PsiPlus,
    PsiMinus,
}

impl BellOutcome {
    pub const ALL: [BellOutcome; 4] =
        [BellOutcome::PhiPlus, BellOutcome::PhiMinus, BellOutcome::PsiPlus, BellOutcome::PsiMinus];

    /// 1-based outcome index j.
    pub fn index(self) -> usize {
        match self {
            BellOutcome::PhiPlus => 1,
            BellOutcome::PhiMinus => 2,
            BellOutcome::PsiPlus => 3,
            BellOutcome::PsiMinus => 4,
        }
    }

    pub fn from_index(j: usize) -> Result<Self> {
        match j {
            1..=4 => Ok(Self::ALL[j - 1]),
            _ => Err(Error::invalid(format!("Bell outcome index {j} outside 1..=4"))),
        }
    }

    /// Bell vector in the (S, A) basis, index 2 q_S + q_A.
    pub fn state(self) -> ComplexVector {
        let s = FRAC_1_SQRT_2;
        let amps = match self {
            BellOutcome::PhiPlus => [s, 0.0, 0.0, s],
            BellOutcome::PhiMinus => [s, 0.0, 0.0, -s],
            BellOutcome::PsiPlus => [0.0, s, s, 0.0],
            BellOutcome::PsiMinus => [0.0, s, -s, 0.0],
        };
        ComplexVector::from_real(&amps)
    }

    pub fn projector(self) -> ComplexMatrix {
        ComplexMatrix::projector(&self.state())
    }

    /// Correction applied by each receiver: σ_x, σ_y, I, σ_z for j = 1..4.
    pub fn correction(self) -> ComplexMatrix {
        match self {
            BellOutcome::PhiPlus => pauli::sigma1(),
            BellOutcome::PhiMinus => pauli::sigma2(),
            BellOutcome::PsiPlus => pauli::sigma0(),
            BellOutcome::PsiMinus => pauli::sigma3(),
        }
    }

    /// Whether the closed forms use the `+ g cos θ` branch (j = 1, 2).
    fn is_phi(self) -> bool {
        matches!(self, BellOutcome::PhiPlus | BellOutcome::PhiMinus)
    }
}

impl fmt::Display for BellOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            BellOutcome::PhiPlus => "Phi+",
            BellOutcome::PhiMinus => "Phi-",
            BellOutcome::PsiPlus => "Psi+",
            BellOutcome::PsiMinus => "Psi-",
        };
        f.write_str(s)
    }
}

/// The four Bell projectors Π^1..Π^4.
pub fn bell_projectors() -> [ComplexMatrix; 4] {
    BellOutcome::ALL.map(BellOutcome::projector)
}

/// Result of projecting (S, A) onto one Bell state.
#[derive(Clone, Debug)]
pub struct Branch {
    pub probability: f64,
    /// ρ^j_BC, or `None` when the branch probability is ≤ 1e−12.
    pub conditioned_pair: Option<ComplexMatrix>,
}

/// Tolerance for accepting π_S and χ in the public protocol entry points.
const INPUT_DENSITY_TOL: f64 = 1e-9;

fn check_inputs(pi_s: &ComplexMatrix, chi: &ComplexMatrix) -> Result<()> {
    if pi_s.rows() != 2 || !validate_density(pi_s, INPUT_DENSITY_TOL) {
        return Err(Error::invalid("input qubit state is not a valid 2x2 density operator"));
    }
    if chi.rows() != 8 || !validate_density(chi, INPUT_DENSITY_TOL) {
        return Err(Error::invalid("resource is not a valid 8x8 density operator"));
    }
    Ok(())
}

/// p_j = tr[(Π^j ⊗ I)(π_S ⊗ χ)] and ρ^j_BC = tr_SA[(Π^j ⊗ I)(π_S ⊗ χ)] / p_j.
pub fn measure_branch(pi_s: &ComplexMatrix, chi: &ComplexMatrix, outcome: BellOutcome) -> Result<Branch> {
    check_inputs(pi_s, chi)?;
    measure_branch_unchecked(&kron(pi_s, chi), outcome)
}

fn measure_branch_unchecked(joint: &ComplexMatrix, outcome: BellOutcome) -> Result<Branch> {
    let measured = &kron(&outcome.projector(), &ComplexMatrix::identity(4)) * joint;
    let unnormalized = partial_trace(&measured, &[2, 2, 2, 2], &[2, 3])?.hermitian_part();
    let probability = unnormalized.trace().re;
    let conditioned_pair = (probability > MIN_BRANCH_PROBABILITY).then(|| unnormalized.scale_real(1.0 / probability));
    Ok(Branch { probability, conditioned_pair })
}

/// Applies U^j ⊗ U^j to ρ_BC and returns the single-qubit outputs (τ_B, τ_C).
pub fn apply_correction(rho_bc: &ComplexMatrix, outcome: BellOutcome) -> Result<(ComplexMatrix, ComplexMatrix)> {
    if rho_bc.rows() != 4 || !rho_bc.is_square() {
        return Err(Error::invalid("conditioned receiver state must be 4x4"));
    }
    let u = outcome.correction();
    let uu = kron(&u, &u);
    let corrected = &(&uu * rho_bc) * &uu.dagger();
    let tau_b = partial_trace(&corrected, &[2, 2], &[0])?.hermitian_part();
    let tau_c = partial_trace(&corrected, &[2, 2], &[1])?.hermitian_part();
    Ok((tau_b, tau_c))
}

/// F = tr(τ π_in)
pub fn branch_fidelity(tau: &ComplexMatrix, pi_in: &ComplexMatrix) -> f64 {
    (tau * pi_in).trace().re
}

/// One branch of the protocol after correction.
#[derive(Clone, Debug)]
pub struct TeleportOutcome {
    pub outcome: BellOutcome,
    pub probability: f64,
    pub conditioned_pair: Option<ComplexMatrix>,
    /// (τ_B, τ_C); `None` for impossible branches.
    pub outputs: Option<(ComplexMatrix, ComplexMatrix)>,
}

impl TeleportOutcome {
    pub fn j(&self) -> usize {
        self.outcome.index()
    }

    /// Bob's output τ^j_B.
    pub fn output(&self) -> Option<&ComplexMatrix> {
        self.outputs.as_ref().map(|(b, _)| b)
    }
}

/// Runs all four measurement branches for input `pi_s` and resource `chi`.
pub fn run_protocol(pi_s: &ComplexMatrix, chi: &ComplexMatrix) -> Result<Vec<TeleportOutcome>> {
    check_inputs(pi_s, chi)?;
    run_protocol_unchecked(pi_s, chi)
}

fn run_protocol_unchecked(pi_s: &ComplexMatrix, chi: &ComplexMatrix) -> Result<Vec<TeleportOutcome>> {
    let joint = kron(pi_s, chi);
    BellOutcome::ALL
        .iter()
        .map(|&outcome| {
            let branch = measure_branch_unchecked(&joint, outcome)?;
            let outputs = match &branch.conditioned_pair {
                Some(rho) => Some(apply_correction(rho, outcome)?),
                None => None,
            };
            Ok(TeleportOutcome {
                outcome,
                probability: branch.probability,
                conditioned_pair: branch.conditioned_pair,
                outputs,
            })
        })
        .collect()
}

/// Σ_j p_j F^j for one input, using Bob's output. Impossible branches contribute 0.
pub fn expected_fidelity(pi_s: &ComplexMatrix, chi: &ComplexMatrix) -> Result<f64> {
    check_inputs(pi_s, chi)?;
    expected_fidelity_unchecked(pi_s, chi)
}

fn expected_fidelity_unchecked(pi_s: &ComplexMatrix, chi: &ComplexMatrix) -> Result<f64> {
    Ok(run_protocol_unchecked(pi_s, chi)?
        .iter()
        .filter_map(|o| o.output().map(|tau| o.probability * branch_fidelity(tau, pi_s)))
        .sum())
}

/// Bloch-sphere average of the simulated protocol.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadratureReport {
    pub average_fidelity: f64,
    /// Largest spread of Σ_j p_j F^j across the sampled azimuths at any polar node.
    pub max_azimuth_spread: f64,
}

/// ⟨F⟩ = (1/4π) ∫ sinθ dθ dφ Σ_j p_j F^j for an arbitrary three-qubit resource.
///
/// Polar angles use a 64-point Gauss–Legendre rule in u = cos θ; azimuths are
/// averaged over 4 equally spaced samples. Nodes are evaluated in parallel and
/// summed in node order.
pub fn average_fidelity_of_resource(chi: &ComplexMatrix) -> Result<QuadratureReport> {
    if chi.rows() != 8 || !validate_density(chi, INPUT_DENSITY_TOL) {
        return Err(Error::invalid("resource is not a valid 8x8 density operator"));
    }
    let rule = GaussLegendre::new(QUADRATURE_ORDER);
    let per_node: Vec<(f64, f64)> = rule
        .nodes
        .par_iter()
        .map(|&u| -> Result<(f64, f64)> {
            let theta = u.clamp(-1.0, 1.0).acos();
            let mut samples = [0.0; AZIMUTH_SAMPLES];
            for (k, s) in samples.iter_mut().enumerate() {
                let phi = 2.0 * PI * k as f64 / AZIMUTH_SAMPLES as f64;
                let pi_s = InputState::new(theta, phi)?.density();
                *s = expected_fidelity_unchecked(&pi_s, chi)?;
            }
            let mean = samples.iter().sum::<f64>() / AZIMUTH_SAMPLES as f64;
            let spread = samples.iter().fold(f64::NEG_INFINITY, |a, &b| a.max(b))
                - samples.iter().fold(f64::INFINITY, |a, &b| a.min(b));
            Ok((mean, spread))
        })
        .collect::<Result<_>>()?;

    let mut integral = 0.0;
    let mut max_spread: f64 = 0.0;
    for (&w, &(mean, spread)) in rule.weights.iter().zip(&per_node) {
        integral += w * mean;
        max_spread = max_spread.max(spread);
    }
    Ok(QuadratureReport { average_fidelity: 0.5 * integral, max_azimuth_spread: max_spread })
}

/// Simulated average fidelity with the thermal resource.
pub fn average_fidelity_quadrature(p: &RingParams) -> Result<f64> {
    Ok(average_fidelity_of_resource(&thermal_state(p)?)?.average_fidelity)
}

/// The auxiliary sums f, g, h₁, h₂ of the closed-form branch probabilities and fidelities.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ProtocolCoefficients {
    pub f: f64,
    pub g: f64,
    pub h1: f64,
    pub h2: f64,
    /// e^{−2β(B_m+J)} / (12 Z)
    pub prefactor: f64,
}

impl ProtocolCoefficients {
    pub fn new(p: &RingParams) -> Result<Self> {
        let beta = p.finite_beta()?;
        let (j, b) = (p.coupling(), p.field());
        let e_3half_b = expo::exp(1.5 * beta * b)?;
        let e_half_b = expo::exp(0.5 * beta * b)?;
        let e_b = expo::exp(beta * b)?;
        let e_3b = expo::exp(3.0 * beta * b)?;
        let e_3j = expo::exp(3.0 * beta * j)?;
        let e_2j = expo::exp(2.0 * beta * j)?;

        let f = 3.0 * e_3half_b * (1.0 + e_b) * (1.0 + 2.0 * e_3j) + 3.0 * e_half_b * (1.0 + e_3b) * e_2j;
        let g = e_3half_b * (1.0 - e_b) * (1.0 + 2.0 * e_3j) + 3.0 * e_half_b * (1.0 - e_3b) * e_2j;
        let h1 = 3.0 * e_3half_b * (1.0 + e_b) * (3.0 + 4.0 * e_3j) + 3.0 * e_half_b * (1.0 + e_3b) * e_2j;
        let h2 = -e_3half_b * (1.0 + e_b) * (1.0 - 4.0 * e_3j) - 3.0 * e_half_b * (1.0 + e_3b) * e_2j;
        let prefactor = expo::exp(-2.0 * beta * (b + j))? / (12.0 * partition_function(p)?);
        for (v, name) in [(f, "f"), (g, "g"), (h1, "h1"), (h2, "h2"), (prefactor, "prefactor")] {
            expo::finite(v, name)?;
        }
        Ok(Self { f, g, h1, h2, prefactor })
    }
}

/// Closed-form (p₁, p₂, p₃, p₄) for polar angle θ.
pub fn outcome_probabilities_closed(p: &RingParams, theta: f64) -> Result<[f64; 4]> {
    let c = ProtocolCoefficients::new(p)?;
    let plus = c.prefactor * (c.f + c.g * theta.cos());
    let minus = c.prefactor * (c.f - c.g * theta.cos());
    Ok([plus, plus, minus, minus])
}

/// Closed-form F^j for polar angle θ (independent of the azimuth).
pub fn branch_fidelity_closed(p: &RingParams, theta: f64, outcome: BellOutcome) -> Result<f64> {
    let c = ProtocolCoefficients::new(p)?;
    let sign = if outcome.is_phi() { 1.0 } else { -1.0 };
    let value = (c.h1 + c.h2 * (2.0 * theta).cos()) / (4.0 * (c.f + sign * c.g * theta.cos()));
    expo::finite(value, "branch fidelity")
}

/// ⟨F⟩ = 1/3 + (2/9)(2 + e^{3βJ})cosh(βB/2) / [(1 + 2e^{3βJ})cosh(βB/2) + e^{2βJ}cosh(3βB/2)]
pub fn average_fidelity_closed(p: &RingParams) -> Result<f64> {
    let beta = p.finite_beta()?;
    let (j, b) = (p.coupling(), p.field());
    let e_3j = expo::exp(3.0 * beta * j)?;
    let e_2j = expo::exp(2.0 * beta * j)?;
    let ch_half = expo::cosh(0.5 * beta * b)?;
    let ch_3half = expo::cosh(1.5 * beta * b)?;
    let ratio = (2.0 + e_3j) * ch_half / ((1.0 + 2.0 * e_3j) * ch_half + e_2j * ch_3half);
    expo::finite(1.0 / 3.0 + 2.0 / 9.0 * ratio, "average fidelity")
}

/// True iff (e^{−2βJ} − 4e^{βJ})/3 > cosh(3βB/2)/cosh(βB/2), i.e. ⟨F⟩ > 2/3.
pub fn quantum_advantage(p: &RingParams) -> Result<bool> {
    let beta = p.finite_beta()?;
    let (j, b) = (p.coupling(), p.field());
    let lhs = (expo::exp(-2.0 * beta * j)? - 4.0 * expo::exp(beta * j)?) / 3.0;
    let rhs = expo::cosh(1.5 * beta * b)? / expo::cosh(0.5 * beta * b)?;
    Ok(expo::finite(lhs, "advantage criterion")? > expo::finite(rhs, "advantage criterion")?)
}

/// Exact T → 0 limit of the closed-form average fidelity (B_m ≥ 0).
///
/// J < 0: 7/9 for B_m < −2J, 5/9 at B_m = −2J, 1/3 above.
/// J > 0: 4/9 for B_m < J, 11/27 at B_m = J, 1/3 above.
pub fn average_fidelity_zero_temperature(coupling: f64, field: f64) -> Result<f64> {
    if !coupling.is_finite() || !field.is_finite() {
        return Err(Error::invalid("coupling and field must be finite"));
    }
    if coupling == 0.0 {
        return Err(Error::invalid("zero-temperature fidelity requires J != 0"));
    }
    if field < 0.0 {
        return Err(Error::invalid("zero-temperature fidelity requires B_m >= 0"));
    }
    let scale = coupling.abs().max(field);
    let (edge, below, at, above) = if coupling < 0.0 {
        (-2.0 * coupling, 7.0 / 9.0, 5.0 / 9.0, 1.0 / 3.0)
    } else {
        (coupling, 4.0 / 9.0, 11.0 / 27.0, 1.0 / 3.0)
    };
    Ok(if is_tie(field, edge, scale) {
        at
    } else if field < edge {
        below
    } else {
        above
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{ground_state_limit, LevelLabel};

    fn params(j: f64, b: f64, beta: f64) -> RingParams {
        RingParams::new(j, b, beta).unwrap()
    }

    fn basis_density(dim: usize, i: usize) -> ComplexMatrix {
        ComplexMatrix::projector(&ComplexVector::basis(dim, i))
    }

    #[test]
    fn input_state_poles_and_equator() {
        assert!(input_state(0.0, 1.3).unwrap().max_abs_diff(&basis_density(2, 0)) < 1e-15);
        assert!(input_state(PI, 0.4).unwrap().max_abs_diff(&basis_density(2, 1)) < 1e-15);
        let plus_x = (&pauli::sigma0() + &pauli::sigma1()).scale_real(0.5);
        assert!(input_state(PI / 2.0, 0.0).unwrap().max_abs_diff(&plus_x) < 1e-15);
        assert!(input_state(-0.1, 0.0).is_err());
        assert!(input_state(0.1, 7.0).is_err());
        let v = InputState::new(1.1, 4.0).unwrap().vector();
        assert!((v.inner(&v).re - 1.0).abs() < 1e-15);
    }

    #[test]
    fn bell_projectors_are_complete_and_orthogonal() {
        let pis = bell_projectors();
        let sum = pis.iter().fold(ComplexMatrix::zeros(4, 4), |acc, p| &acc + p);
        assert!(sum.max_abs_diff(&ComplexMatrix::identity(4)) < 1e-15);
        for (a, pa) in pis.iter().enumerate() {
            for (b, pb) in pis.iter().enumerate() {
                let prod = pa * pb;
                let expected = if a == b { pa.clone() } else { ComplexMatrix::zeros(4, 4) };
                assert!(prod.max_abs_diff(&expected) < 1e-15);
            }
        }
        let overlap = (&pis[0] * &basis_density(4, 0)).trace().re;
        assert!((overlap - 0.5).abs() < 1e-15);
    }

    #[test]
    fn outcome_indexing() {
        for (k, o) in BellOutcome::ALL.iter().enumerate() {
            assert_eq!(o.index(), k + 1);
            assert_eq!(BellOutcome::from_index(k + 1).unwrap(), *o);
        }
        assert!(BellOutcome::from_index(0).is_err());
        assert!(BellOutcome::from_index(5).is_err());
    }

    #[test]
    fn product_resource_branches() {
        let pi = basis_density(2, 0);
        let chi = basis_density(8, 0);
        let b1 = measure_branch(&pi, &chi, BellOutcome::PhiPlus).unwrap();
        assert!((b1.probability - 0.5).abs() < 1e-15);
        assert!(b1.conditioned_pair.unwrap().max_abs_diff(&basis_density(4, 0)) < 1e-15);
        for o in [BellOutcome::PsiPlus, BellOutcome::PsiMinus] {
            let b = measure_branch(&pi, &chi, o).unwrap();
            assert!(b.probability.abs() < 1e-15);
            assert!(b.conditioned_pair.is_none());
        }
    }

    #[test]
    fn measure_branch_rejects_invalid_inputs() {
        let chi = basis_density(8, 0);
        assert!(measure_branch(&pauli::sigma1(), &chi, BellOutcome::PhiPlus).is_err());
        assert!(measure_branch(&basis_density(2, 0), &ComplexMatrix::identity(8), BellOutcome::PhiPlus).is_err());
    }

    #[test]
    fn corrections() {
        let (b, c) = apply_correction(&basis_density(4, 0), BellOutcome::PsiPlus).unwrap();
        assert_eq!(b, basis_density(2, 0));
        assert_eq!(c, basis_density(2, 0));

        let (b, c) = apply_correction(&basis_density(4, 3), BellOutcome::PhiPlus).unwrap();
        assert!(b.max_abs_diff(&basis_density(2, 0)) < 1e-15);
        assert!(c.max_abs_diff(&basis_density(2, 0)) < 1e-15);

        let s = FRAC_1_SQRT_2;
        let psi_plus = ComplexMatrix::projector(&ComplexVector::from_real(&[0.0, s, s, 0.0]));
        let half = ComplexMatrix::identity(2).scale_real(0.5);
        let (b, c) = apply_correction(&psi_plus, BellOutcome::PsiMinus).unwrap();
        assert!(b.max_abs_diff(&half) < 1e-15);
        assert!(c.max_abs_diff(&half) < 1e-15);
    }

    #[test]
    fn branch_fidelity_bounds() {
        let pi = input_state(1.0, 2.0).unwrap();
        assert!((branch_fidelity(&pi, &pi) - 1.0).abs() < 1e-15);
        assert!((branch_fidelity(&ComplexMatrix::identity(2).scale_real(0.5), &pi) - 0.5).abs() < 1e-15);
        assert!(branch_fidelity(&basis_density(2, 1), &basis_density(2, 0)).abs() < 1e-15);
    }

    #[test]
    fn equatorial_inputs_give_uniform_outcomes() {
        let p = params(-1.0, 0.5, 2.0);
        let chi = thermal_state(&p).unwrap();
        let pi = input_state(PI / 2.0, 0.7).unwrap();
        for o in run_protocol(&pi, &chi).unwrap() {
            assert!((o.probability - 0.25).abs() < 1e-12);
        }
        for v in outcome_probabilities_closed(&p, PI / 2.0).unwrap() {
            assert!((v - 0.25).abs() < 1e-12);
        }
    }

    #[test]
    fn simulated_probabilities_match_closed_form() {
        let p = params(-1.0, 0.5, 2.0);
        let (theta, phi) = (PI / 3.0, 1.0);
        let chi = thermal_state(&p).unwrap();
        let pi = input_state(theta, phi).unwrap();
        let closed = outcome_probabilities_closed(&p, theta).unwrap();
        for (o, c) in run_protocol(&pi, &chi).unwrap().iter().zip(closed) {
            assert!((o.probability - c).abs() < 1e-10, "{} {} vs {}", o.outcome, o.probability, c);
        }
    }

    #[test]
    fn infinite_temperature_branch_fidelity() {
        let p = params(0.8, 1.2, 1e-12);
        for o in BellOutcome::ALL {
            let f = branch_fidelity_closed(&p, 0.0, o).unwrap();
            assert!((f - 0.5).abs() < 1e-9);
        }
    }

    #[test]
    fn closed_average_fidelity_limits() {
        assert!((average_fidelity_closed(&params(1.3, -0.7, 1e-12)).unwrap() - 0.5).abs() < 1e-9);
        assert!((average_fidelity_closed(&params(-1.0, 0.0, 50.0)).unwrap() - 7.0 / 9.0).abs() < 1e-6);
        assert!((average_fidelity_closed(&params(-1.0, 2.0, 50.0)).unwrap() - 5.0 / 9.0).abs() < 1e-6);
    }

    #[test]
    fn advantage_examples() {
        assert!(quantum_advantage(&params(-1.0, 0.0, 1.0)).unwrap());
        assert!(!quantum_advantage(&params(-1.0, 0.0, 1.0 / 1.5)).unwrap());
        for (b, beta) in [(0.0, 1.0), (0.5, 10.0), (3.0, 0.3)] {
            assert!(!quantum_advantage(&params(1.0, b, beta)).unwrap());
        }
    }

    #[test]
    fn zero_temperature_fidelity_table() {
        assert_eq!(average_fidelity_zero_temperature(-1.0, 0.0).unwrap(), 7.0 / 9.0);
        assert_eq!(average_fidelity_zero_temperature(-1.0, 1.0).unwrap(), 7.0 / 9.0);
        assert_eq!(average_fidelity_zero_temperature(-1.0, 2.0).unwrap(), 5.0 / 9.0);
        assert_eq!(average_fidelity_zero_temperature(-1.0, 3.0).unwrap(), 1.0 / 3.0);
        assert_eq!(average_fidelity_zero_temperature(1.0, 0.5).unwrap(), 4.0 / 9.0);
        assert_eq!(average_fidelity_zero_temperature(1.0, 1.0).unwrap(), 11.0 / 27.0);
        assert_eq!(average_fidelity_zero_temperature(1.0, 1.5).unwrap(), 1.0 / 3.0);
        assert!(average_fidelity_zero_temperature(0.0, 1.0).is_err());
        assert!(average_fidelity_zero_temperature(-1.0, -1.0).is_err());
    }

    #[test]
    fn zero_temperature_fidelity_matches_simulation_on_ground_states() {
        for (j, b) in
            [(-1.0, 0.0), (-1.0, 1.0), (-1.0, 2.0), (-1.0, 3.0), (1.0, 0.0), (1.0, 0.5), (1.0, 1.0), (1.0, 2.5)]
        {
            let chi = ground_state_limit(j, b).unwrap();
            let sim = average_fidelity_of_resource(&chi).unwrap().average_fidelity;
            let exact = average_fidelity_zero_temperature(j, b).unwrap();
            assert!((sim - exact).abs() < 1e-10, "J={j} B={b}: {sim} vs {exact}");
        }
    }

    #[test]
    fn w4_resource_teleports_at_seven_ninths() {
        let report = average_fidelity_of_resource(&LevelLabel::W4.projector()).unwrap();
        assert!((report.average_fidelity - 7.0 / 9.0).abs() < 1e-8);
        assert!(report.max_azimuth_spread < 1e-10);
    }

    #[test]
    fn maximally_mixed_resource_gives_one_half() {
        let f = average_fidelity_quadrature(&params(0.9, 0.4, 1e-12)).unwrap();
        assert!((f - 0.5).abs() < 1e-8);
    }

    #[test]
    fn quadrature_matches_closed_form() {
        let p = params(-1.0, 0.0, 2.0);
        let q = average_fidelity_quadrature(&p).unwrap();
        let c = average_fidelity_closed(&p).unwrap();
        assert!((q - c).abs() < 1e-8);
    }

    #[test]
    fn receivers_get_identical_outputs() {
        let chi = thermal_state(&params(0.6, 1.4, 0.9)).unwrap();
        let pi = input_state(0.8, 2.5).unwrap();
        for o in run_protocol(&pi, &chi).unwrap() {
            let (b, c) = o.outputs.unwrap();
            assert!(b.max_abs_diff(&c) < 1e-12);
            assert!(validate_density(&b, 1e-9));
            assert!(validate_density(o.conditioned_pair.as_ref().unwrap(), 1e-9));
        }
    }
}
