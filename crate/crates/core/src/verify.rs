//! Cross-validation of closed forms against independent numerical routes.
//!
//! Three pairs are checked on a (J, B, β) grid:
//! analytic Gibbs state vs eigendecomposition of H, closed-form concurrence vs
//! the Wootters pipeline, and closed-form average fidelity vs the simulated
//! protocol integrated over the Bloch sphere.

use rayon::prelude::*;

use crate::entanglement::{thermal_concurrence, wootters_concurrence};
use crate::error::Result;
use crate::ring::{reduced_pair_state, thermal_state, thermal_state_oracle, RingParams};
use crate::teleport::{average_fidelity_closed, average_fidelity_of_resource};

pub const THERMAL_STATE_TOL: f64 = 1e-10;
pub const CONCURRENCE_TOL: f64 = 1e-9;
pub const FIDELITY_TOL: f64 = 1e-8;

pub const STANDARD_COUPLINGS: [f64; 6] = [-2.0, -1.0, -0.5, 0.5, 1.0, 2.0];
pub const STANDARD_FIELDS: [f64; 5] = [0.0, 0.5, 1.0, 2.0, 4.0];
pub const STANDARD_BETAS: [f64; 4] = [0.2, 1.0, 5.0, 20.0];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Grid {
    /// 3 × 3 × 3 points.
    Small,
    Standard,
}

impl Grid {
    /// (J, B, β) triples in J-major order.
    pub fn points(self) -> Vec<(f64, f64, f64)> {
        let (js, bs, betas): (&[f64], &[f64], &[f64]) = match self {
            Grid::Small => (&[-1.0, -0.5, 1.0], &[0.0, 1.0, 2.0], &[0.2, 1.0, 5.0]),
            Grid::Standard => (&STANDARD_COUPLINGS, &STANDARD_FIELDS, &STANDARD_BETAS),
        };
        let mut out = Vec::with_capacity(js.len() * bs.len() * betas.len());
        for &j in js {
            for &b in bs {
                for &beta in betas {
                    out.push((j, b, beta));
                }
            }
        }
        out
    }
}

/// Largest deviation of one closed-form/oracle pair over a grid.
#[derive(Clone, Debug, PartialEq)]
pub struct OracleCheck {
    pub name: &'static str,
    pub tolerance: f64,
    pub max_deviation: f64,
    /// (J, B, β) where the largest deviation occurred.
    pub worst_point: (f64, f64, f64),
}

impl OracleCheck {
    pub fn passed(&self) -> bool {
        self.max_deviation <= self.tolerance
    }
}

struct PointDeviations {
    thermal: f64,
    concurrence: f64,
    fidelity: f64,
}

fn deviations_at(j: f64, b: f64, beta: f64, perturb: f64) -> Result<PointDeviations> {
    let p = RingParams::new(j, b, beta)?;
    let chi = thermal_state(&p)?;
    let thermal = chi.max_abs_diff(&thermal_state_oracle(&p)?);
    let concurrence = (thermal_concurrence(&p)? - wootters_concurrence(&reduced_pair_state(&chi)?)?).abs();
    let closed = average_fidelity_closed(&p)? + perturb;
    let fidelity = (closed - average_fidelity_of_resource(&chi)?.average_fidelity).abs();
    Ok(PointDeviations { thermal, concurrence, fidelity })
}

/// Runs the three suites. `perturb` is added to the closed-form average
/// fidelity to confirm the harness detects small faults.
pub fn run_oracle_suites(grid: Grid, perturb: f64) -> Result<Vec<OracleCheck>> {
    let points = grid.points();
    let devs: Vec<PointDeviations> =
        points.par_iter().map(|&(j, b, beta)| deviations_at(j, b, beta, perturb)).collect::<Result<_>>()?;

    let summarize = |name, tolerance, pick: fn(&PointDeviations) -> f64| {
        let (idx, max_deviation) =
            devs.iter()
                .map(pick)
                .enumerate()
                .fold((0, f64::NEG_INFINITY), |best, (i, d)| if d > best.1 { (i, d) } else { best });
        OracleCheck { name, tolerance, max_deviation, worst_point: points[idx] }
    };
    Ok(vec![
        summarize("thermal state vs eigendecomposition", THERMAL_STATE_TOL, |d| d.thermal),
        summarize("closed-form vs Wootters concurrence", CONCURRENCE_TOL, |d| d.concurrence),
        summarize("closed-form vs simulated average fidelity", FIDELITY_TOL, |d| d.fidelity),
    ])
}
