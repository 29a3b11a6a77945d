//! The three-qubit XX ring in a longitudinal field: Hamiltonian, analytic
//! spectrum, Gibbs state and its zero-temperature limits.
//!
//! Basis ordering is |q_A q_B q_C⟩ with A the most significant bit, so the
//! basis index is `4 q_A + 2 q_B + q_C`. Boltzmann's constant is 1.

use std::f64::consts::PI;
use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::expo;
use crate::numkernel::{hermitian_eig, kron_all, partial_trace, pauli, ComplexMatrix, ComplexVector};

/// Inverse temperature β = 1/T, or the zero-temperature limit.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum InverseTemperature {
    Finite(f64),
    /// β → ∞. Only the dedicated zero-temperature operations accept it.
    Infinite,
}

/// Physical parameters of the ring.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RingParams {
    coupling: f64,
    field: f64,
    beta: InverseTemperature,
}

impl RingParams {
    /// `coupling` is J (J > 0 antiferromagnetic), `field` is B_m, `beta` is 1/T.
    pub fn new(coupling: f64, field: f64, beta: f64) -> Result<Self> {
        check_finite(coupling, field)?;
        if beta.is_nan() || beta <= 0.0 || !beta.is_finite() {
            return Err(Error::invalid(format!("inverse temperature must be positive and finite, got {beta}")));
        }
        Ok(Self { coupling, field, beta: InverseTemperature::Finite(beta) })
    }

    pub fn from_temperature(coupling: f64, field: f64, temperature: f64) -> Result<Self> {
        if temperature.is_nan() || temperature <= 0.0 || !temperature.is_finite() {
            return Err(Error::invalid(format!("temperature must be positive and finite, got {temperature}")));
        }
        Self::new(coupling, field, 1.0 / temperature)
    }

    pub fn zero_temperature(coupling: f64, field: f64) -> Result<Self> {
        check_finite(coupling, field)?;
        Ok(Self { coupling, field, beta: InverseTemperature::Infinite })
    }

    pub fn coupling(&self) -> f64 {
        self.coupling
    }

    pub fn field(&self) -> f64 {
        self.field
    }

    pub fn inverse_temperature(&self) -> InverseTemperature {
        self.beta
    }

    /// β for operations defined only at finite temperature.
    pub fn finite_beta(&self) -> Result<f64> {
        match self.beta {
            InverseTemperature::Finite(b) => Ok(b),
            InverseTemperature::Infinite => {
                Err(Error::invalid("operation needs a finite temperature; use the zero-temperature variant"))
            }
        }
    }

    /// T = 1/β, with 0 for the zero-temperature limit.
    pub fn temperature(&self) -> f64 {
        match self.beta {
            InverseTemperature::Finite(b) => 1.0 / b,
            InverseTemperature::Infinite => 0.0,
        }
    }

    /// Same parameters with the field reversed.
    pub fn with_field(&self, field: f64) -> Self {
        Self { field, ..*self }
    }
}

fn check_finite(coupling: f64, field: f64) -> Result<()> {
    if !coupling.is_finite() || !field.is_finite() {
        return Err(Error::invalid("coupling and field must be finite"));
    }
    Ok(())
}

/// Names of the eight analytic eigenstates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LevelLabel {
    AllUp,
    W1,
    W2,
    W3,
    W4,
    W5,
    W6,
    AllDown,
}

impl LevelLabel {
    pub const ALL: [LevelLabel; 8] = [
        LevelLabel::AllUp,
        LevelLabel::W1,
        LevelLabel::W2,
        LevelLabel::W3,
        LevelLabel::W4,
        LevelLabel::W5,
        LevelLabel::W6,
        LevelLabel::AllDown,
    ];

    /// Energy of this level for coupling `j` and field `b`.
    pub fn energy(self, j: f64, b: f64) -> f64 {
        match self {
            LevelLabel::AllUp => 1.5 * b,
            LevelLabel::W1 => 0.5 * (b + 4.0 * j),
            LevelLabel::W2 | LevelLabel::W3 => 0.5 * (b - 2.0 * j),
            LevelLabel::W4 => -0.5 * (b - 4.0 * j),
            LevelLabel::W5 | LevelLabel::W6 => -0.5 * (b + 2.0 * j),
            LevelLabel::AllDown => -1.5 * b,
        }
    }

    /// The eigenvector. W states spread one (W1–W3) or two (W4–W6)
    /// excitations with phase windings 1, q, q² where q = e^{2πi/3}.
    pub fn state(self) -> ComplexVector {
        let q = Complex64::from_polar(1.0, 2.0 * PI / 3.0);
        let one = Complex64::new(1.0, 0.0);
        let w = |indices: [usize; 3], phases: [Complex64; 3]| {
            let mut data = vec![Complex64::new(0.0, 0.0); 8];
            let norm = 1.0 / 3f64.sqrt();
            for (i, p) in indices.into_iter().zip(phases) {
                data[i] = p * norm;
            }
            ComplexVector::new(data)
        };
        // |001⟩, |010⟩, |100⟩ and |011⟩, |101⟩, |110⟩
        const ONE_EXC: [usize; 3] = [1, 2, 4];
        const TWO_EXC: [usize; 3] = [3, 5, 6];
        match self {
            LevelLabel::AllUp => ComplexVector::basis(8, 0),
            LevelLabel::W1 => w(ONE_EXC, [one, one, one]),
            LevelLabel::W2 => w(ONE_EXC, [one, q, q * q]),
            LevelLabel::W3 => w(ONE_EXC, [one, q * q, q]),
            LevelLabel::W4 => w(TWO_EXC, [one, one, one]),
            LevelLabel::W5 => w(TWO_EXC, [one, q, q * q]),
            LevelLabel::W6 => w(TWO_EXC, [one, q * q, q]),
            LevelLabel::AllDown => ComplexVector::basis(8, 7),
        }
    }

    pub fn projector(self) -> ComplexMatrix {
        ComplexMatrix::projector(&self.state())
    }
}

impl fmt::Display for LevelLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            LevelLabel::AllUp => "000",
            LevelLabel::W1 => "W1",
            LevelLabel::W2 => "W2",
            LevelLabel::W3 => "W3",
            LevelLabel::W4 => "W4",
            LevelLabel::W5 => "W5",
            LevelLabel::W6 => "W6",
            LevelLabel::AllDown => "111",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug)]
pub struct Level {
    pub label: LevelLabel,
    pub energy: f64,
    pub vector: ComplexVector,
}

/// The eight labeled eigenpairs, in the order 000, W1..W6, 111.
#[derive(Clone, Debug)]
pub struct Spectrum {
    pub levels: Vec<Level>,
}

impl Spectrum {
    /// Levels sorted by ascending energy (stable in label order).
    pub fn ascending(&self) -> Vec<&Level> {
        let mut v: Vec<&Level> = self.levels.iter().collect();
        v.sort_by(|a, b| a.energy.total_cmp(&b.energy));
        v
    }
}

/// H = (J/2) Σ_ring (σ¹σ¹ + σ²σ²) + (B_m/2) Σ_sites σ³
pub fn build_hamiltonian(coupling: f64, field: f64) -> ComplexMatrix {
    let (s0, s1, s2, s3) = (pauli::sigma0(), pauli::sigma1(), pauli::sigma2(), pauli::sigma3());
    let bonds = [
        kron_all(&[&s1, &s1, &s0]),
        kron_all(&[&s0, &s1, &s1]),
        kron_all(&[&s1, &s0, &s1]),
        kron_all(&[&s2, &s2, &s0]),
        kron_all(&[&s0, &s2, &s2]),
        kron_all(&[&s2, &s0, &s2]),
    ];
    let zeeman = [kron_all(&[&s3, &s0, &s0]), kron_all(&[&s0, &s3, &s0]), kron_all(&[&s0, &s0, &s3])];
    let mut h = ComplexMatrix::zeros(8, 8);
    for b in &bonds {
        h = &h + &b.scale_real(0.5 * coupling);
    }
    for z in &zeeman {
        h = &h + &z.scale_real(0.5 * field);
    }
    h
}

pub fn analytic_spectrum(coupling: f64, field: f64) -> Spectrum {
    Spectrum {
        levels: LevelLabel::ALL
            .iter()
            .map(|&label| Level { label, energy: label.energy(coupling, field), vector: label.state() })
            .collect(),
    }
}

/// Z = 2cosh(3βB/2) + 2e^{−2βJ}cosh(βB/2) + 4e^{βJ}cosh(βB/2)
pub fn partition_function(p: &RingParams) -> Result<f64> {
    let beta = p.finite_beta()?;
    let (j, b) = (p.coupling, p.field);
    let ch_half = expo::cosh(0.5 * beta * b)?;
    let z = 2.0 * expo::cosh(1.5 * beta * b)?
        + 2.0 * expo::exp(-2.0 * beta * j)? * ch_half
        + 4.0 * expo::exp(beta * j)? * ch_half;
    expo::finite(z, "partition function")
}

fn check_boltzmann_range(beta: f64, energies: impl IntoIterator<Item = f64>) -> Result<()> {
    for e in energies {
        if (beta * e).abs() > expo::MAX_EXPONENT {
            return Err(Error::Range(format!("Boltzmann exponent {:e} outside ±{}", beta * e, expo::MAX_EXPONENT)));
        }
    }
    Ok(())
}

/// Gibbs state assembled from the analytic eigenprojectors.
pub fn thermal_state(p: &RingParams) -> Result<ComplexMatrix> {
    let beta = p.finite_beta()?;
    let spectrum = analytic_spectrum(p.coupling, p.field);
    check_boltzmann_range(beta, spectrum.levels.iter().map(|l| l.energy))?;
    let ground = spectrum.levels.iter().map(|l| l.energy).fold(f64::INFINITY, f64::min);
    let weights: Vec<f64> = spectrum.levels.iter().map(|l| (-beta * (l.energy - ground)).exp()).collect();
    let norm: f64 = weights.iter().sum();
    let mut chi = ComplexMatrix::zeros(8, 8);
    for (level, w) in spectrum.levels.iter().zip(weights) {
        chi = &chi + &ComplexMatrix::projector(&level.vector).scale_real(w / norm);
    }
    Ok(chi)
}

/// e^{−βH}/tr e^{−βH} by numerical diagonalization of H. Shares no code
/// with [`analytic_spectrum`].
pub fn thermal_state_oracle(p: &RingParams) -> Result<ComplexMatrix> {
    let beta = p.finite_beta()?;
    let eig = hermitian_eig(&build_hamiltonian(p.coupling, p.field))?;
    check_boltzmann_range(beta, eig.values.iter().copied())?;
    let ground = *eig.values.last().expect("8 eigenvalues");
    let unnormalized = eig.reconstruct_with(|e| (-beta * (e - ground)).exp());
    let tr = unnormalized.trace().re;
    Ok(unnormalized.scale_real(1.0 / tr))
}

/// Relative tolerance for deciding that two levels are degenerate.
const TIE_REL_TOL: f64 = 1e-12;

/// Levels whose energy ties with the minimum (equal weight in the T → 0 limit).
pub fn ground_levels(coupling: f64, field: f64) -> Vec<LevelLabel> {
    let scale = coupling.abs().max(field.abs()).max(f64::MIN_POSITIVE);
    let energies: Vec<(LevelLabel, f64)> = LevelLabel::ALL.iter().map(|&l| (l, l.energy(coupling, field))).collect();
    let min = energies.iter().map(|&(_, e)| e).fold(f64::INFINITY, f64::min);
    energies.into_iter().filter(|&(_, e)| e - min <= TIE_REL_TOL * scale).map(|(l, _)| l).collect()
}

pub(crate) fn is_tie(a: f64, b: f64, scale: f64) -> bool {
    (a - b).abs() <= TIE_REL_TOL * scale.max(f64::MIN_POSITIVE)
}

/// T → 0 limit of the Gibbs state: equal mixture over the degenerate ground space.
///
/// For J > 0 the entangled phase ends at B_m = J; for J < 0 at B_m = −2J.
/// At those points the limits are (W5 + W6 + 111)/3 and (W4 + 111)/2. The
/// point B_m = −4J (J < 0) sits on the edge between the two large-field
/// ferromagnetic regimes but |111⟩ is the unique ground state there, so the
/// limit is |111⟩⟨111| either way.
pub fn ground_state_limit(coupling: f64, field: f64) -> Result<ComplexMatrix> {
    check_finite(coupling, field)?;
    if coupling == 0.0 {
        return Err(Error::invalid("zero-temperature limit requires J != 0"));
    }
    if field < 0.0 {
        return Err(Error::invalid("zero-temperature limit requires B_m >= 0"));
    }
    Ok(equal_mixture(&ground_levels(coupling, field)))
}

/// (1/n) Σ |l⟩⟨l| over the given levels.
pub fn equal_mixture(levels: &[LevelLabel]) -> ComplexMatrix {
    let w = 1.0 / levels.len() as f64;
    levels.iter().fold(ComplexMatrix::zeros(8, 8), |acc, l| &acc + &l.projector().scale_real(w))
}

/// ρ_AB = tr_C χ. The cyclic symmetry of the ring makes every pair reduction equal.
pub fn reduced_pair_state(chi: &ComplexMatrix) -> Result<ComplexMatrix> {
    partial_trace(chi, &[2, 2, 2], &[0, 1])
}

/// σ¹⊗σ¹⊗σ¹, which maps the spectrum at B_m onto the spectrum at −B_m.
pub fn global_spin_flip() -> ComplexMatrix {
    let x = pauli::sigma1();
    kron_all(&[&x, &x, &x])
}
