//! Acceptance criteria. Each test prints one PASS/FAIL line before asserting.
//!
//! Run with `cargo test -p xxring --test acceptance -- --nocapture --test-threads 1`
//! to see the report lines in order.

use std::f64::consts::{FRAC_PI_2, PI};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use xxring::criticality::{
    asymptotic_t1_antiferro, asymptotic_t1_ferro, solve_t1, solve_t2, REFERENCE_FERRO, REFERENCE_T1_ANTIFERRO,
    REFERENCE_T1_DOUBLE_STAR, REFERENCE_T1_STAR,
};
use xxring::entanglement::{concurrence_zero_temperature, thermal_concurrence, wootters_concurrence};
use xxring::ring::{equal_mixture, reduced_pair_state, thermal_state, LevelLabel};
use xxring::teleport::{
    average_fidelity_closed, average_fidelity_of_resource, average_fidelity_zero_temperature, input_state,
    outcome_probabilities_closed, quantum_advantage, run_protocol, CLASSICAL_LIMIT,
};
use xxring::verify::{run_oracle_suites, Grid};
use xxring::RingParams;

fn report(id: u32, title: &str, ok: bool, detail: &str) {
    let status = if ok { "PASS" } else { "FAIL" };
    println!("[{status}] criterion {id:>2}: {title} ({detail})");
}

fn params(j: f64, b: f64, beta: f64) -> RingParams {
    RingParams::new(j, b, beta).unwrap()
}

#[test]
fn c01_table_one_reproduction() {
    let mut worst: f64 = 0.0;
    for &(eta, published) in &REFERENCE_T1_ANTIFERRO {
        let t1 = solve_t1(1.0, eta).expect("T1 exists for every tabulated field").value;
        worst = worst.max((t1 - published).abs());
    }
    let ok = worst <= 1e-4;
    report(1, "T1 table for J > 0", ok, &format!("max |diff| = {worst:.2e}"));
    assert!(ok);
}

#[test]
fn c02_table_two_reproduction() {
    let mut worst: f64 = 0.0;
    let mut ok = true;
    for &(eta, t1_pub, t2_pub) in &REFERENCE_FERRO {
        let t1 = solve_t1(-1.0, eta).unwrap().value;
        worst = worst.max((t1 - t1_pub).abs());
        match (solve_t2(-1.0, eta), t2_pub) {
            (Ok(r), Some(published)) => worst = worst.max((r.value - published).abs()),
            (Err(xxring::Error::NoTransition(_)), None) => {}
            _ => ok = false,
        }
    }
    let t1_zero = solve_t1(-1.0, 0.0).unwrap().value;
    let t2_zero = solve_t2(-1.0, 0.0).unwrap().value;
    ok &= (t1_zero - 1.27136).abs() <= 1e-4 && (t2_zero - 1.27136).abs() <= 1e-4;
    ok &= solve_t2(-1.0, 2.0).unwrap().value == 0.0;
    ok &= worst <= 1e-4;
    report(
        2,
        "T1 and T2 table for J < 0",
        ok,
        &format!("max |diff| = {worst:.2e}, eta=0: T1={t1_zero:.6} T2={t2_zero:.6}"),
    );
    assert!(ok);
}

#[test]
fn c03_asymptotic_constants() {
    let t_star = asymptotic_t1_antiferro();
    let t_double = asymptotic_t1_ferro();
    let ok = (t_star - REFERENCE_T1_STAR).abs() <= 1e-5 && (t_double - REFERENCE_T1_DOUBLE_STAR).abs() <= 1e-5;
    report(3, "strong-field T1 limits", ok, &format!("{t_star:.8}, {t_double:.8}"));
    assert!(ok);
}

#[test]
fn c04_zero_temperature_concurrence() {
    let cases = [
        (1.0, 0.0, 0.0),
        (1.0, 0.5, 1.0 / 3.0),
        (1.0, 1.0, 2.0 / 9.0),
        (1.0, 2.0, 0.0),
        (-1.0, 0.0, 1.0 / 3.0),
        (-1.0, 1.0, 2.0 / 3.0),
        (-1.0, 2.0, 1.0 / 3.0),
        (-1.0, 3.0, 0.0),
    ];
    let mut ok = true;
    let mut worst: f64 = 0.0;
    for (j, b, expected) in cases {
        let exact = concurrence_zero_temperature(j, b).unwrap();
        ok &= (exact - expected).abs() <= 1e-15;
        let cold = thermal_concurrence(&params(j, b, 50.0)).unwrap();
        worst = worst.max((cold - exact).abs());
    }
    ok &= worst <= 1e-5;
    report(4, "zero-temperature concurrence", ok, &format!("max |beta=50 - exact| = {worst:.2e}"));
    assert!(ok);
}

#[test]
fn c05_zero_temperature_fidelity() {
    let cases = [(0.0, 7.0 / 9.0), (1.0, 7.0 / 9.0), (2.0, 5.0 / 9.0), (3.0, 1.0 / 3.0)];
    let mut ok = true;
    let mut worst: f64 = 0.0;
    for (b, expected) in cases {
        let exact = average_fidelity_zero_temperature(-1.0, b).unwrap();
        ok &= exact == expected;
        let cold = average_fidelity_closed(&params(-1.0, b, 50.0)).unwrap();
        worst = worst.max((cold - exact).abs());
    }
    ok &= worst <= 1e-5;
    report(5, "zero-temperature average fidelity", ok, &format!("max |beta=50 - exact| = {worst:.2e}"));
    assert!(ok);
}

#[test]
fn c06_oracle_equivalence() {
    let checks = run_oracle_suites(Grid::Standard, 0.0).unwrap();
    let ok = checks.iter().all(|c| c.passed());
    let detail = checks
        .iter()
        .map(|c| format!("{}: {:.1e} <= {:.0e}", c.name, c.max_deviation, c.tolerance))
        .collect::<Vec<_>>()
        .join("; ");
    report(6, "oracle suites on the standard grid", ok, &detail);
    assert!(ok);
}

#[test]
fn c07_advantage_criterion_consistency() {
    let mut ok = true;
    let mut points = 0;
    for (j, b, beta) in Grid::Standard.points() {
        let p = params(j, b, beta);
        let advantage = quantum_advantage(&p).unwrap();
        ok &= advantage == (average_fidelity_closed(&p).unwrap() > CLASSICAL_LIMIT);
        if j > 0.0 {
            ok &= !advantage;
        }
        points += 1;
    }
    report(7, "advantage criterion matches fidelity > 2/3", ok, &format!("{points} grid points"));
    assert!(ok);
}

#[test]
fn c08_probability_normalization() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut worst: f64 = 0.0;
    for _ in 0..100 {
        let j = rng.gen_range(-2.0..2.0);
        let b = rng.gen_range(-4.0..4.0);
        let beta = rng.gen_range(0.05..10.0);
        let theta = rng.gen_range(0.0..PI);
        let phi = rng.gen_range(0.0..2.0 * PI);
        let p = params(j, b, beta);
        let sim: f64 = run_protocol(&input_state(theta, phi).unwrap(), &thermal_state(&p).unwrap())
            .unwrap()
            .iter()
            .map(|o| o.probability)
            .sum();
        let closed: f64 = outcome_probabilities_closed(&p, theta).unwrap().iter().sum();
        worst = worst.max((sim - 1.0).abs()).max((closed - 1.0).abs());
    }
    let mut equator: f64 = 0.0;
    let p = params(-1.0, 0.7, 3.0);
    for o in run_protocol(&input_state(FRAC_PI_2, 1.2).unwrap(), &thermal_state(&p).unwrap()).unwrap() {
        equator = equator.max((o.probability - 0.25).abs());
    }
    for v in outcome_probabilities_closed(&p, FRAC_PI_2).unwrap() {
        equator = equator.max((v - 0.25).abs());
    }
    let ok = worst <= 1e-10 && equator <= 1e-12;
    report(
        8,
        "outcome probabilities",
        ok,
        &format!("max |sum - 1| = {worst:.1e}, equator max |p - 1/4| = {equator:.1e}"),
    );
    assert!(ok);
}

#[test]
fn c09_entanglement_fidelity_dissociation() {
    let teleporting = equal_mixture(&[LevelLabel::W1, LevelLabel::W4]);
    let classical = equal_mixture(&[LevelLabel::W5, LevelLabel::W6]);
    let c_tel = wootters_concurrence(&reduced_pair_state(&teleporting).unwrap()).unwrap();
    let c_cls = wootters_concurrence(&reduced_pair_state(&classical).unwrap()).unwrap();
    let f_tel = average_fidelity_of_resource(&teleporting).unwrap().average_fidelity;
    let f_cls = average_fidelity_of_resource(&classical).unwrap().average_fidelity;
    let ok = (c_tel - 1.0 / 3.0).abs() <= 1e-9
        && (c_cls - 1.0 / 3.0).abs() <= 1e-9
        && (f_tel - 7.0 / 9.0).abs() <= 1e-6
        && f_cls <= CLASSICAL_LIMIT;
    report(
        9,
        "equal concurrence, different teleportation",
        ok,
        &format!("C = {c_tel:.10} / {c_cls:.10}, <F> = {f_tel:.10} / {f_cls:.10}"),
    );
    assert!(ok);
}

#[test]
fn c10_field_symmetry() {
    let mut exact = true;
    let mut numeric: f64 = 0.0;
    for (j, b, beta) in Grid::Standard.points() {
        let plus = thermal_concurrence(&params(j, b, beta)).unwrap();
        let minus = thermal_concurrence(&params(j, -b, beta)).unwrap();
        exact &= plus == minus;
        let w_plus =
            wootters_concurrence(&reduced_pair_state(&thermal_state(&params(j, b, beta)).unwrap()).unwrap()).unwrap();
        let w_minus =
            wootters_concurrence(&reduced_pair_state(&thermal_state(&params(j, -b, beta)).unwrap()).unwrap()).unwrap();
        numeric = numeric.max((w_plus - w_minus).abs());
    }
    let anti = thermal_concurrence(&params(1.0, 0.0, 5.0)).unwrap();
    let ferro = thermal_concurrence(&params(-1.0, 0.0, 5.0)).unwrap();
    let ok = exact && numeric <= 1e-10 && anti != ferro;
    report(
        10,
        "B -> -B symmetry, J -> -J asymmetry",
        ok,
        &format!("numeric max diff {numeric:.1e}; C(J=1,B=0,beta=5) = {anti:.6}, C(J=-1,B=0,beta=5) = {ferro:.6}"),
    );
    assert!(ok);
}
