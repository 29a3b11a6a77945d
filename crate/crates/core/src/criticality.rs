//! Critical temperatures.
//!
//! T₁ is where the pairwise thermal concurrence vanishes and T₂ is where the
//! average teleportation fidelity drops to the classical 2/3. All solvers work
//! in units of |J|: the coupling is normalized to ±1 and the field to B/|J|
//! before root finding, and reported temperatures are T/|J|.
//!
//! η follows the table convention B = η|J| for both signs of J.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::ring::is_tie;

/// Default relative tolerance for temperature roots.
pub const ROOT_TOL: f64 = 1e-10;

/// Temperature window scanned for sign changes, in units of |J|.
pub const SCAN_HIGH: f64 = 10.0;
pub const SCAN_LOW: f64 = 1e-6;

/// Scan points per decade of temperature.
const SCAN_DENSITY: usize = 64;

const MAX_ITERATIONS: usize = 400;

/// A located root.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CriticalResult {
    /// Root location; a temperature in units of |J| for the physical solvers.
    pub value: f64,
    /// Defining function at `value`.
    pub residual: f64,
    /// Final bracket, containing `value`.
    pub bracket: (f64, f64),
    pub iterations: usize,
    /// |J| used to normalize the problem (1 for plain root finding).
    pub coupling_scale: f64,
}

impl CriticalResult {
    /// Root in the caller's absolute temperature units.
    pub fn absolute(&self) -> f64 {
        self.value * self.coupling_scale
    }
}

/// Bisection interleaved with secant steps that stay inside the bracket.
///
/// Stops when the bracket width is at most `tol · max(1, |value|)`, when an
/// exact zero is hit, or when the bracket can no longer be split in floating
/// point.
pub fn root_find(f: impl Fn(f64) -> f64, low: f64, high: f64, tol: f64) -> Result<CriticalResult> {
    if !(low.is_finite() && high.is_finite() && low < high) {
        return Err(Error::invalid(format!("invalid bracket [{low}, {high}]")));
    }
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::invalid(format!("tolerance must be positive, got {tol}")));
    }
    let eval = |x: f64| -> Result<f64> {
        let y = f(x);
        if y.is_finite() {
            Ok(y)
        } else {
            Err(Error::Evaluation(format!("non-finite function value at {x}")))
        }
    };
    let (mut lo, mut hi) = (low, high);
    let (mut flo, mut fhi) = (eval(lo)?, eval(hi)?);
    let done = |value, residual, lo, hi, iterations| {
        Ok(CriticalResult { value, residual, bracket: (lo, hi), iterations, coupling_scale: 1.0 })
    };
    if flo == 0.0 {
        return done(lo, 0.0, lo, hi, 0);
    }
    if fhi == 0.0 {
        return done(hi, 0.0, lo, hi, 0);
    }
    if flo.signum() == fhi.signum() {
        return Err(Error::Bracket { low, high });
    }

    let mut iterations = 0;
    while iterations < MAX_ITERATIONS {
        iterations += 1;
        let secant = hi - fhi * (hi - lo) / (fhi - flo);
        let x = if iterations % 2 == 1 && secant > lo && secant < hi { secant } else { 0.5 * (lo + hi) };
        if x <= lo || x >= hi {
            break;
        }
        let fx = eval(x)?;
        if fx == 0.0 {
            return done(x, 0.0, x, x, iterations);
        }
        if fx.signum() == flo.signum() {
            lo = x;
            flo = fx;
        } else {
            hi = x;
            fhi = fx;
        }
        let mid = 0.5 * (lo + hi);
        if hi - lo <= tol * mid.abs().max(1.0) {
            break;
        }
    }
    let (value, residual) = if flo.abs() <= fhi.abs() { (lo, flo) } else { (hi, fhi) };
    done(value, residual, lo, hi, iterations)
}

/// Splits e^{x} into powers sharing a common scale: returns e^{x − shift}.
fn scaled_exp(x: f64, shift: f64) -> f64 {
    (x - shift).exp()
}

/// Concurrence numerator
/// 2|e^{−2βJ} − e^{βJ}| cosh(βB/2) − √(a² + 6a cosh βB + 9), a = e^{−2βJ} + 2e^{βJ},
/// divided by its largest exponential so it is finite for any β.
/// Returns (value, magnitude of the larger term after scaling).
pub fn t1_defining_function(coupling: f64, field: f64, beta: f64) -> (f64, f64) {
    let (x, y) = (beta * coupling, beta * field.abs());
    let m = (-2.0 * x).max(x);
    let e1 = m + 0.5 * y;
    let e2 = 0.5 * (2.0 * m).max(m + y).max(0.0);
    let e = e1.max(e2);

    let gap = (scaled_exp(-2.0 * x, m) - scaled_exp(x, m)).abs();
    let first = gap * (1.0 + (-y).exp()) * scaled_exp(e1, e);

    let a = scaled_exp(-2.0 * x, m) + 2.0 * scaled_exp(x, m);
    let inside = a * a * scaled_exp(2.0 * m, 2.0 * e2)
        + 3.0 * a * (scaled_exp(m + y, 2.0 * e2) + scaled_exp(m - y, 2.0 * e2))
        + 9.0 * scaled_exp(0.0, 2.0 * e2);
    let second = inside.sqrt() * scaled_exp(e2, e);
    (first - second, first.max(second))
}

/// Advantage margin (e^{−2βJ} − 4e^{βJ}) cosh(βB/2) − 3 cosh(3βB/2), scaled like
/// [`t1_defining_function`]. Positive iff the average fidelity exceeds 2/3.
pub fn t2_defining_function(coupling: f64, field: f64, beta: f64) -> (f64, f64) {
    let (x, y) = (beta * coupling, beta * field.abs());
    let m = (-2.0 * x).max(x);
    let e1 = m + 0.5 * y;
    let e2 = 1.5 * y;
    let e = e1.max(e2);
    let first = (scaled_exp(-2.0 * x, m) - 4.0 * scaled_exp(x, m)) * 0.5 * (1.0 + (-y).exp()) * scaled_exp(e1, e);
    let second = 1.5 * (1.0 + (-3.0 * y).exp()) * scaled_exp(e2, e);
    (first - second, first.abs().max(second))
}

fn check_inputs(coupling: f64, field: f64) -> Result<()> {
    if !coupling.is_finite() || !field.is_finite() {
        return Err(Error::invalid("coupling and field must be finite"));
    }
    if coupling == 0.0 {
        return Err(Error::invalid("critical temperatures require J != 0"));
    }
    Ok(())
}

/// Finds the highest temperature in [SCAN_LOW, SCAN_HIGH] where `g(T)` turns
/// positive when cooling, then refines it.
fn highest_crossing(g: impl Fn(f64) -> f64, tol: f64, what: &str) -> Result<CriticalResult> {
    let decades = (SCAN_HIGH / SCAN_LOW).log10();
    let steps = (decades * SCAN_DENSITY as f64).ceil() as usize;
    let ratio = (SCAN_LOW / SCAN_HIGH).powf(1.0 / steps as f64);
    let mut t_hi = SCAN_HIGH;
    let g_hi = g(t_hi);
    if !g_hi.is_finite() {
        return Err(Error::Evaluation(format!("{what} defining function is not finite at T = {t_hi}")));
    }
    if g_hi > 0.0 {
        return Err(Error::NoTransition(format!("{what}: positive margin persists at T = {SCAN_HIGH}|J|")));
    }
    for k in 1..=steps {
        let t_lo = if k == steps { SCAN_LOW } else { SCAN_HIGH * ratio.powi(k as i32) };
        let g_lo = g(t_lo);
        if !g_lo.is_finite() {
            return Err(Error::Evaluation(format!("{what} defining function is not finite at T = {t_lo}")));
        }
        if g_lo > 0.0 {
            return root_find(&g, t_lo, t_hi, tol);
        }
        t_hi = t_lo;
    }
    Err(Error::NoTransition(format!("{what}: no sign change for T in [{SCAN_LOW}, {SCAN_HIGH}]|J|")))
}

fn normalized(coupling: f64, field: f64) -> (f64, f64, f64) {
    let scale = coupling.abs();
    (coupling.signum(), field / scale, scale)
}

/// T₁/|J|, the temperature above which the pairwise concurrence is zero.
///
/// Any field is accepted; when the concurrence vanishes at every temperature
/// (e.g. J > 0 with B = 0) the result is `Error::NoTransition`.
pub fn solve_t1(coupling: f64, field: f64) -> Result<CriticalResult> {
    solve_t1_with_tol(coupling, field, ROOT_TOL)
}

/// [`solve_t1`] with an explicit relative tolerance.
pub fn solve_t1_with_tol(coupling: f64, field: f64, tol: f64) -> Result<CriticalResult> {
    check_inputs(coupling, field)?;
    let (j, b, scale) = normalized(coupling, field);
    let mut r = highest_crossing(|t| t1_defining_function(j, b, 1.0 / t).0, tol, "T1")?;
    r.coupling_scale = scale;
    Ok(r)
}

/// T₂/|J|, the temperature above which the average fidelity is at most 2/3.
///
/// Requires J < 0. At B = −2J the crossing sits at T = 0 and the result has
/// value 0; above that field there is no transition.
pub fn solve_t2(coupling: f64, field: f64) -> Result<CriticalResult> {
    solve_t2_with_tol(coupling, field, ROOT_TOL)
}

/// [`solve_t2`] with an explicit relative tolerance.
pub fn solve_t2_with_tol(coupling: f64, field: f64, tol: f64) -> Result<CriticalResult> {
    check_inputs(coupling, field)?;
    if coupling > 0.0 {
        return Err(Error::invalid("T2 exists only for J < 0; the fidelity never exceeds 2/3 for J > 0"));
    }
    let (j, b, scale) = normalized(coupling, field);
    let b = b.abs();
    if is_tie(b, 2.0, 2.0) {
        return Ok(CriticalResult {
            value: 0.0,
            residual: 0.0,
            bracket: (0.0, 0.0),
            iterations: 0,
            coupling_scale: scale,
        });
    }
    if b > 2.0 {
        return Err(Error::NoTransition(format!("no quantum advantage at any temperature for B/|J| = {b} > 2")));
    }
    let mut r = highest_crossing(|t| t2_defining_function(j, b, 1.0 / t).0, tol, "T2")?;
    r.coupling_scale = scale;
    Ok(r)
}

/// x⁶ − 6x⁵ − 2x³ − 3x² + 1; its root x = e^{J/T} > 1 fixes the strong-field T₁ for J > 0.
pub fn antiferro_polynomial(x: f64) -> f64 {
    ((((x - 6.0) * x * x - 2.0) * x - 3.0) * x) * x + 1.0
}

/// y⁶ − 3y⁴ − 2y³ − 6y + 1; its root y = e^{−J/T} > 1 fixes the strong-field T₁ for J < 0.
pub fn ferro_polynomial(y: f64) -> f64 {
    (((y * y - 3.0) * y - 2.0) * y * y - 6.0) * y + 1.0
}

/// Unique root above 1, located by a sign scan over [1.01, 10].
fn unique_root_above_one(p: fn(f64) -> f64) -> f64 {
    const N: usize = 4000;
    let (a, b) = (1.01, 10.0);
    let grid: Vec<f64> = (0..=N).map(|k| a + (b - a) * k as f64 / N as f64).collect();
    let changes: Vec<(f64, f64)> =
        grid.windows(2).filter(|w| p(w[0]).signum() != p(w[1]).signum()).map(|w| (w[0], w[1])).collect();
    assert_eq!(changes.len(), 1, "expected exactly one root in [1.01, 10]");
    let (lo, hi) = changes[0];
    root_find(p, lo, hi, 1e-16).expect("bracket verified by scan").value
}

/// Large-field limit of T₁/J for J > 0 (≈ 0.554641).
pub fn asymptotic_t1_antiferro() -> f64 {
    1.0 / unique_root_above_one(antiferro_polynomial).ln()
}

/// Large-field limit of T₁/|J| for J < 0 (≈ 1.32639).
pub fn asymptotic_t1_ferro() -> f64 {
    1.0 / unique_root_above_one(ferro_polynomial).ln()
}

/// Low-temperature estimate of T₂ for B = η|J|, J < 0: (2 − η)|J| / ln 3.
pub fn t2_small_temperature_approx(eta: f64, coupling: f64) -> Result<f64> {
    if coupling.is_nan() || coupling >= 0.0 {
        return Err(Error::invalid("T2 approximation requires J < 0"));
    }
    if !(eta > 0.0 && eta <= 2.0) {
        return Err(Error::invalid(format!("eta must lie in (0, 2], got {eta}")));
    }
    Ok(-(2.0 - eta) * coupling / 3f64.ln())
}

/// Outcome of a critical-temperature solve in a phase scan.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Transition {
    At(CriticalResult),
    /// Crossing at exactly T = 0.
    Zero,
    Absent,
}

impl Transition {
    /// Temperature in units of |J|, if a crossing exists.
    pub fn temperature(&self) -> Option<f64> {
        match self {
            Transition::At(r) => Some(r.value),
            Transition::Zero => Some(0.0),
            Transition::Absent => None,
        }
    }

    fn from_result(r: Result<CriticalResult>) -> Result<Self> {
        match r {
            Ok(r) if r.value == 0.0 => Ok(Transition::Zero),
            Ok(r) => Ok(Transition::At(r)),
            Err(Error::NoTransition(_)) => Ok(Transition::Absent),
            Err(e) => Err(e),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PhaseRow {
    pub eta: f64,
    pub t1: Transition,
    /// Only computed for J < 0.
    pub t2: Option<Transition>,
}

/// T₁ (and T₂ for J < 0) for each B = η|J|, in input order.
pub fn phase_scan(coupling: f64, etas: &[f64]) -> Result<Vec<PhaseRow>> {
    check_inputs(coupling, 0.0)?;
    etas.par_iter()
        .map(|&eta| {
            let field = eta * coupling.abs();
            let t1 = Transition::from_result(solve_t1(coupling, field))?;
            let t2 = if coupling < 0.0 { Some(Transition::from_result(solve_t2(coupling, field))?) } else { None };
            Ok(PhaseRow { eta, t1, t2 })
        })
        .collect()
}

/// Published (η, T₁/J) pairs for J > 0.
pub const REFERENCE_T1_ANTIFERRO: [(f64, f64); 10] = [
    (0.1, 0.234194),
    (0.3, 0.332167),
    (0.6, 0.414045),
    (1.0, 0.476533),
    (1.3, 0.504831),
    (2.0, 0.538225),
    (7.0, 0.554639),
    (9.0, 0.554641),
    (10.0, 0.554641),
    (100.0, 0.554641),
];

/// Published (η, T₁/|J|, T₂/|J|) rows for J < 0; `None` marks rows without a T₂.
pub const REFERENCE_FERRO: [(f64, f64, Option<f64>); 14] = [
    (0.0, 1.27136, Some(1.27136)),
    (0.6, 1.27457, Some(1.17224)),
    (0.8, 1.27686, Some(1.08726)),
    (1.0, 1.27959, Some(0.965516)),
    (1.2, 1.28263, Some(0.795176)),
    (1.4, 1.28585, Some(0.578739)),
    (1.6, 1.28916, Some(0.368014)),
    (1.8, 1.29246, Some(0.182056)),
    (1.9, 1.29408, Some(0.0910239)),
    (2.0, 1.29567, Some(0.0)),
    (10.0, 1.32628, None),
    (15.0, 1.32639, None),
    (16.0, 1.32639, None),
    (100.0, 1.32639, None),
];

/// Published strong-field limits of T₁/|J| for J > 0 and J < 0.
pub const REFERENCE_T1_STAR: f64 = 0.554641;
pub const REFERENCE_T1_DOUBLE_STAR: f64 = 1.32639;
