use std::collections::BTreeMap;
use std::fs;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::Deserialize;
use serde_json::{json, Value};
use xxring::criticality::{
    phase_scan, solve_t1_with_tol, solve_t2_with_tol, CriticalResult, Transition, REFERENCE_FERRO,
    REFERENCE_T1_ANTIFERRO,
};
use xxring::entanglement::{concurrence_zero_temperature, thermal_concurrence, wootters_concurrence};
use xxring::numkernel::ComplexMatrix;
use xxring::ring::{analytic_spectrum, ground_state_limit, reduced_pair_state, thermal_state};
use xxring::teleport::{
    average_fidelity_closed, average_fidelity_of_resource, average_fidelity_zero_temperature, input_state,
    outcome_probabilities_closed, quantum_advantage, run_protocol, CLASSICAL_LIMIT,
};
use xxring::verify::{self, run_oracle_suites, Grid};
use xxring::RingParams;

use crate::args::{
    Cli, Command, CriticalArgs, Format, GridRange, GridSize, PointArgs, Quantity, SpectrumArgs, SweepArgs, TablesArgs,
    Units, VerifyArgs,
};
use crate::error::CliError;
use crate::output::{Cell, RunManifest, Table};

/// |computed − published| allowed by `tables`.
pub const TABLE_TOL: f64 = 1e-4;

/// Tolerance on outcome probabilities for `point --verify`.
const PROBABILITY_TOL: f64 = 1e-10;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Success,
    Failure,
}

pub fn run(cli: &Cli, out: &mut dyn Write) -> Result<Status, CliError> {
    match &cli.command {
        Command::Spectrum(a) => spectrum(a, out),
        Command::Point(a) => point(a, out),
        Command::Tables(a) => tables(a, out),
        Command::Sweep(a) => sweep(a, cli.units, out),
        Command::Critical(a) => critical(a, cli.units, out),
        Command::Verify(a) => verify_cmd(a, out),
    }
}

/// `x` rounded to `digits` significant digits, printed in shortest form.
pub fn significant(x: f64, digits: usize) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    let rounded: f64 = format!("{:.*e}", digits.saturating_sub(1), x).parse().expect("formatted float parses");
    format!("{rounded}")
}

fn finite(name: &str, x: f64) -> Result<f64, CliError> {
    if x.is_finite() {
        Ok(x)
    } else {
        Err(CliError::Usage(format!("{name} must be finite, got {x}")))
    }
}

fn spectrum(a: &SpectrumArgs, out: &mut dyn Write) -> Result<Status, CliError> {
    let (j, b) = (finite("J", a.j)?, finite("B", a.b)?);
    let spectrum = analytic_spectrum(j, b);
    let levels = spectrum.ascending();
    match a.format {
        Format::Text => {
            writeln!(out, "{:<6} {:>20}", "level", "energy")?;
            for l in levels {
                writeln!(out, "{:<6} {:>20}", l.label.to_string(), significant(l.energy, 12))?;
            }
        }
        Format::Csv => {
            writeln!(out, "level,energy")?;
            for l in levels {
                writeln!(out, "{},{:.16e}", l.label, l.energy)?;
            }
        }
        Format::Json => {
            let rows: Vec<Value> =
                levels.iter().map(|l| json!({ "level": l.label.to_string(), "energy": l.energy })).collect();
            writeln!(out, "{}", serde_json::to_string_pretty(&json!({ "J": j, "B": b, "levels": rows })).unwrap())?;
        }
    }
    Ok(Status::Success)
}

fn columns_for(quantities: &[Quantity]) -> Vec<String> {
    quantities.iter().flat_map(|q| q.columns().iter().map(|c| c.to_string())).collect()
}

fn dedup(quantities: &[Quantity]) -> Vec<Quantity> {
    let mut seen = Vec::new();
    for &q in quantities {
        if !seen.contains(&q) {
            seen.push(q);
        }
    }
    seen
}

fn check_temperature(j: f64, b: f64, t: f64) -> Result<(), CliError> {
    if !t.is_finite() || t < 0.0 {
        return Err(CliError::Usage(format!("temperature must be finite and non-negative, got {t}")));
    }
    if t == 0.0 && (j == 0.0 || b < 0.0) {
        return Err(CliError::Usage("T = 0 needs J != 0 and B >= 0".into()));
    }
    Ok(())
}

fn probabilities_of(theta: f64, chi: &ComplexMatrix) -> Result<[f64; 4], CliError> {
    let outcomes = run_protocol(&input_state(theta, 0.0)?, chi)?;
    let mut p = [0.0; 4];
    for (slot, o) in p.iter_mut().zip(&outcomes) {
        *slot = o.probability;
    }
    Ok(p)
}

/// Closed-form values at one point; T = 0 uses the exact ground-state limits.
pub fn evaluate_point(j: f64, b: f64, t: f64, theta: f64, quantities: &[Quantity]) -> Result<Vec<Cell>, CliError> {
    check_temperature(j, b, t)?;
    let mut cells = Vec::new();
    if t == 0.0 {
        for &q in quantities {
            match q {
                Quantity::Concurrence => cells.push(concurrence_zero_temperature(j, b)?.into()),
                Quantity::AvgFidelity => cells.push(average_fidelity_zero_temperature(j, b)?.into()),
                Quantity::Advantage => cells.push((average_fidelity_zero_temperature(j, b)? > CLASSICAL_LIMIT).into()),
                Quantity::Probabilities => {
                    cells.extend(probabilities_of(theta, &ground_state_limit(j, b)?)?.map(Cell::from))
                }
            }
        }
        return Ok(cells);
    }
    let p = RingParams::from_temperature(j, b, t)?;
    for &q in quantities {
        match q {
            Quantity::Concurrence => cells.push(thermal_concurrence(&p)?.into()),
            Quantity::AvgFidelity => cells.push(average_fidelity_closed(&p)?.into()),
            Quantity::Advantage => cells.push(quantum_advantage(&p)?.into()),
            Quantity::Probabilities => cells.extend(outcome_probabilities_closed(&p, theta)?.map(Cell::from)),
        }
    }
    Ok(cells)
}

/// Values from the numerical route: Wootters pipeline, simulated protocol.
pub fn evaluate_point_oracle(
    j: f64,
    b: f64,
    t: f64,
    theta: f64,
    quantities: &[Quantity],
) -> Result<Vec<Cell>, CliError> {
    check_temperature(j, b, t)?;
    let chi =
        if t == 0.0 { ground_state_limit(j, b)? } else { thermal_state(&RingParams::from_temperature(j, b, t)?)? };
    let needs_fidelity = quantities.iter().any(|q| matches!(q, Quantity::AvgFidelity | Quantity::Advantage));
    let fidelity = if needs_fidelity { Some(average_fidelity_of_resource(&chi)?.average_fidelity) } else { None };
    let mut cells = Vec::new();
    for &q in quantities {
        match q {
            Quantity::Concurrence => cells.push(wootters_concurrence(&reduced_pair_state(&chi)?)?.into()),
            Quantity::AvgFidelity => cells.push(fidelity.into()),
            Quantity::Advantage => cells.push(fidelity.map_or(Cell::Missing, |f| (f > CLASSICAL_LIMIT).into())),
            Quantity::Probabilities => cells.extend(probabilities_of(theta, &chi)?.map(Cell::from)),
        }
    }
    Ok(cells)
}

fn cell_text(c: &Cell) -> String {
    match c {
        Cell::Missing => "—".into(),
        Cell::Flag(b) => b.to_string(),
        Cell::Number(x) => significant(*x, 12),
    }
}

fn column_tolerance(column: &str) -> f64 {
    match column {
        "concurrence" => verify::CONCURRENCE_TOL,
        "avg_fidelity" => verify::FIDELITY_TOL,
        _ => PROBABILITY_TOL,
    }
}

fn point(a: &PointArgs, out: &mut dyn Write) -> Result<Status, CliError> {
    let (j, b) = (finite("J", a.j)?, finite("B", a.b)?);
    let quantities = dedup(&a.q);
    let columns = columns_for(&quantities);
    let closed = evaluate_point(j, b, a.t, a.theta, &quantities)?;
    let oracle = if a.verify { Some(evaluate_point_oracle(j, b, a.t, a.theta, &quantities)?) } else { None };

    let mut status = Status::Success;
    let mut diffs = Vec::new();
    if let Some(oracle) = &oracle {
        for ((name, c), o) in columns.iter().zip(&closed).zip(oracle) {
            let diff = match (c, o) {
                (Cell::Number(x), Cell::Number(y)) => {
                    let d = (x - y).abs();
                    if d > column_tolerance(name) {
                        status = Status::Failure;
                    }
                    Cell::Number(d)
                }
                (Cell::Flag(x), Cell::Flag(y)) => {
                    if x != y {
                        status = Status::Failure;
                    }
                    Cell::Flag(x == y)
                }
                _ => Cell::Missing,
            };
            diffs.push(diff);
        }
    }

    match a.format {
        Format::Text => {
            writeln!(out, "J = {}, B = {}, T = {}", significant(j, 12), significant(b, 12), significant(a.t, 12))?;
            if let Some(oracle) = &oracle {
                writeln!(out, "{:<14} {:>20} {:>20} {:>12}", "quantity", "closed", "oracle", "difference")?;
                for (((name, c), o), d) in columns.iter().zip(&closed).zip(oracle).zip(&diffs) {
                    let d = match d {
                        Cell::Number(x) => format!("{x:.2e}"),
                        Cell::Flag(true) => "agree".into(),
                        Cell::Flag(false) => "DISAGREE".into(),
                        Cell::Missing => "—".into(),
                    };
                    writeln!(out, "{:<14} {:>20} {:>20} {:>12}", name, cell_text(c), cell_text(o), d)?;
                }
            } else {
                for (name, c) in columns.iter().zip(&closed) {
                    writeln!(out, "{:<14} {}", name, cell_text(c))?;
                }
            }
        }
        Format::Csv | Format::Json => {
            let mut cols: Vec<String> = ["J", "B", "T"].iter().map(|s| s.to_string()).collect();
            cols.extend(columns.iter().cloned());
            let mut row = vec![Cell::Number(j), Cell::Number(b), Cell::Number(a.t)];
            row.extend(closed);
            if let Some(oracle) = oracle {
                cols.extend(columns.iter().map(|c| format!("{c}_oracle")));
                cols.extend(columns.iter().map(|c| format!("{c}_difference")));
                row.extend(oracle);
                row.extend(diffs);
            }
            let params = BTreeMap::from([
                ("J".to_string(), json!(j)),
                ("B".to_string(), json!(b)),
                ("T".to_string(), json!(a.t)),
                ("theta".to_string(), json!(a.theta)),
                ("quantities".to_string(), json!(quantities)),
            ]);
            let table = Table { manifest: RunManifest::new("point", params), columns: cols, rows: vec![row] };
            write_table(&table, a.format, out)?;
        }
    }
    Ok(status)
}

fn write_table(table: &Table, format: Format, out: &mut dyn Write) -> Result<(), CliError> {
    match format {
        Format::Json => table.write_json(out),
        _ => table.write_csv(out),
    }
}

/// Sweep settings read from a TOML file.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    #[serde(rename = "J")]
    pub j: Option<f64>,
    #[serde(rename = "B_range")]
    pub b_range: Option<(f64, f64, usize)>,
    #[serde(rename = "T_range")]
    pub t_range: Option<(f64, f64, usize)>,
    pub quantities: Option<Vec<Quantity>>,
    pub format: Option<Format>,
    pub out: Option<PathBuf>,
    pub theta: Option<f64>,
}

/// Fully resolved sweep request.
#[derive(Clone, Debug, PartialEq)]
pub struct SweepPlan {
    pub j: f64,
    pub b_range: GridRange,
    pub t_range: GridRange,
    pub quantities: Vec<Quantity>,
    pub format: Format,
    pub out: Option<PathBuf>,
    pub theta: f64,
}

impl SweepPlan {
    /// Merges flags over the optional config file.
    pub fn resolve(a: &SweepArgs) -> Result<Self, CliError> {
        let config = match &a.config {
            Some(path) => {
                let text = fs::read_to_string(path)?;
                toml::from_str::<SweepConfig>(&text)
                    .map_err(|e| CliError::Usage(format!("config {}: {e}", path.display())))?
            }
            None => SweepConfig::default(),
        };
        let range = |flag: Option<GridRange>, file: Option<(f64, f64, usize)>, name: &str| {
            flag.map(Ok)
                .or_else(|| file.map(|(s, e, n)| GridRange::new(s, e, n).map_err(CliError::Usage)))
                .unwrap_or_else(|| Err(CliError::Usage(format!("missing {name} (START:STOP:COUNT)"))))
        };
        let j = a.j.or(config.j).ok_or_else(|| CliError::Usage("missing J".into()))?;
        let plan = SweepPlan {
            j: finite("J", j)?,
            b_range: range(a.b_range, config.b_range, "B range")?,
            t_range: range(a.t_range, config.t_range, "T range")?,
            quantities: dedup(
                &a.q.clone()
                    .or(config.quantities)
                    .unwrap_or_else(|| vec![Quantity::Concurrence, Quantity::AvgFidelity, Quantity::Advantage]),
            ),
            format: a.format.or(config.format).unwrap_or(Format::Csv),
            out: a.out.clone().or(config.out),
            theta: a.theta.or(config.theta).unwrap_or(0.0),
        };
        if plan.quantities.is_empty() {
            return Err(CliError::Usage("at least one quantity is required".into()));
        }
        if plan.format == Format::Text {
            return Err(CliError::Usage("sweep output format must be csv or json".into()));
        }
        if plan.t_range.start < 0.0 {
            return Err(CliError::Usage("temperatures must be non-negative".into()));
        }
        Ok(plan)
    }

    fn parameters(&self, units: Units) -> BTreeMap<String, Value> {
        BTreeMap::from([
            ("J".to_string(), json!(self.j)),
            ("B_range".to_string(), json!(self.b_range)),
            ("T_range".to_string(), json!(self.t_range)),
            ("quantities".to_string(), json!(self.quantities)),
            ("theta".to_string(), json!(self.theta)),
            ("units".to_string(), json!(units_name(units))),
        ])
    }
}

fn units_name(units: Units) -> &'static str {
    match units {
        Units::J => "J",
        Units::Absolute => "absolute",
    }
}

fn unit_scale(j: f64, units: Units) -> Result<f64, CliError> {
    match units {
        Units::Absolute => Ok(1.0),
        Units::J if j != 0.0 => Ok(j.abs()),
        Units::J => Err(CliError::Usage("units of |J| need J != 0; pass --units absolute".into())),
    }
}

/// Evaluates a sweep. Rows are ordered by field index, then temperature index.
pub fn sweep_table(plan: &SweepPlan, units: Units) -> Result<Table, CliError> {
    let scale = unit_scale(plan.j, units)?;
    let grid: Vec<(f64, f64)> = plan
        .b_range
        .values()
        .into_iter()
        .flat_map(|b| plan.t_range.values().into_iter().map(move |t| (b, t)))
        .collect();
    let rows = grid
        .par_iter()
        .map(|&(b, t)| {
            let mut row = vec![Cell::Number(plan.j / scale), Cell::Number(b / scale), Cell::Number(t / scale)];
            row.extend(evaluate_point(plan.j, b, t, plan.theta, &plan.quantities)?);
            Ok(row)
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    let mut columns: Vec<String> = ["J", "B", "T"].iter().map(|s| s.to_string()).collect();
    columns.extend(columns_for(&plan.quantities));
    Ok(Table { manifest: RunManifest::new("sweep", plan.parameters(units)), columns, rows })
}

fn sweep(a: &SweepArgs, units: Units, out: &mut dyn Write) -> Result<Status, CliError> {
    let plan = SweepPlan::resolve(a)?;
    let table = sweep_table(&plan, units)?;
    match &plan.out {
        Some(path) => write_file(path, |w| write_table(&table, plan.format, w))?,
        None => write_table(&table, plan.format, out)?,
    }
    Ok(Status::Success)
}

fn write_file(path: &Path, body: impl FnOnce(&mut dyn Write) -> Result<(), CliError>) -> Result<(), CliError> {
    let file = fs::File::create(path)
        .map_err(|e| CliError::Io(std::io::Error::new(e.kind(), format!("{}: {e}", path.display()))))?;
    let mut w = BufWriter::new(file);
    body(&mut w)?;
    w.flush()?;
    Ok(())
}

fn transition_cell(t: &Transition) -> Cell {
    t.temperature().into()
}

fn fmt_temperature(t: Option<f64>) -> String {
    t.map_or_else(|| "—".into(), |v| format!("{v:.10}"))
}

fn tables(a: &TablesArgs, out: &mut dyn Write) -> Result<Status, CliError> {
    let anti_etas: Vec<f64> = REFERENCE_T1_ANTIFERRO.iter().map(|r| r.0).collect();
    let ferro_etas: Vec<f64> = REFERENCE_FERRO.iter().map(|r| r.0).collect();
    let anti = phase_scan(1.0, &anti_etas)?;
    let ferro = phase_scan(-1.0, &ferro_etas)?;

    let compare = |computed: Option<f64>, published: Option<f64>| -> (Option<f64>, bool) {
        match (computed, published) {
            (Some(c), Some(p)) => {
                let d = (c - p).abs();
                (Some(d), d <= TABLE_TOL)
            }
            (None, None) => (None, true),
            _ => (None, false),
        }
    };

    let mut all_pass = true;
    let mut rows = Vec::new();
    let mut text = String::new();
    text.push_str("J > 0: T1 in units of J\n");
    text.push_str(&format!("{:>6} {:>14} {:>10} {:>9} {:>6}\n", "eta", "T1", "published", "|diff|", ""));
    for (row, &(eta, published)) in anti.iter().zip(&REFERENCE_T1_ANTIFERRO) {
        let t1 = row.t1.temperature();
        let (diff, ok) = compare(t1, Some(published));
        all_pass &= ok;
        text.push_str(&format!(
            "{:>6} {:>14} {:>10} {:>9} {:>6}\n",
            eta,
            fmt_temperature(t1),
            published,
            diff.map_or("—".into(), |d| format!("{d:.1e}")),
            if ok { "ok" } else { "FAIL" }
        ));
        rows.push(vec![
            Cell::Number(1.0),
            Cell::Number(eta),
            transition_cell(&row.t1),
            Cell::Number(published),
            diff.into(),
            Cell::Missing,
            Cell::Missing,
            Cell::Missing,
            Cell::Flag(ok),
        ]);
    }

    text.push_str("\nJ < 0: T1 and T2 in units of |J|\n");
    text.push_str(&format!(
        "{:>6} {:>14} {:>10} {:>9} {:>14} {:>10} {:>9} {:>6}\n",
        "eta", "T1", "published", "|diff|", "T2", "published", "|diff|", ""
    ));
    for (row, &(eta, t1_pub, t2_pub)) in ferro.iter().zip(&REFERENCE_FERRO) {
        let t1 = row.t1.temperature();
        let t2 = row.t2.and_then(|t| t.temperature());
        let (d1, ok1) = compare(t1, Some(t1_pub));
        let (d2, ok2) = compare(t2, t2_pub);
        let ok = ok1 && ok2;
        all_pass &= ok;
        let diff_text = |d: Option<f64>| d.map_or("—".to_string(), |d| format!("{d:.1e}"));
        text.push_str(&format!(
            "{:>6} {:>14} {:>10} {:>9} {:>14} {:>10} {:>9} {:>6}\n",
            eta,
            fmt_temperature(t1),
            t1_pub,
            diff_text(d1),
            fmt_temperature(t2),
            t2_pub.map_or("—".to_string(), |v| v.to_string()),
            diff_text(d2),
            if ok { "ok" } else { "FAIL" }
        ));
        rows.push(vec![
            Cell::Number(2.0),
            Cell::Number(eta),
            t1.into(),
            Cell::Number(t1_pub),
            d1.into(),
            t2.into(),
            t2_pub.into(),
            d2.into(),
            Cell::Flag(ok),
        ]);
    }
    text.push_str(&format!("\n{}\n", if all_pass { "PASS" } else { "FAIL" }));

    match a.format {
        Format::Text => out.write_all(text.as_bytes())?,
        format => {
            let columns = ["table", "eta", "t1", "t1_published", "t1_diff", "t2", "t2_published", "t2_diff", "pass"]
                .iter()
                .map(|s| s.to_string())
                .collect();
            let params = BTreeMap::from([("tolerance".to_string(), json!(TABLE_TOL))]);
            write_table(&Table { manifest: RunManifest::new("tables", params), columns, rows }, format, out)?;
        }
    }
    Ok(if all_pass { Status::Success } else { Status::Failure })
}

fn critical(a: &CriticalArgs, units: Units, out: &mut dyn Write) -> Result<Status, CliError> {
    let j = finite("J", a.j)?;
    if j == 0.0 {
        return Err(CliError::Usage("critical temperatures need J != 0".into()));
    }
    let b = match (a.b, a.eta) {
        (Some(b), _) => finite("B", b)?,
        (None, Some(eta)) => finite("eta", eta)? * j.abs(),
        (None, None) => return Err(CliError::Usage("pass --B or --eta".into())),
    };
    if a.tol.is_nan() || a.tol <= 0.0 {
        return Err(CliError::Usage(format!("--tol must be positive, got {}", a.tol)));
    }
    let scale = match units {
        Units::J => 1.0,
        Units::Absolute => j.abs(),
    };
    let solve = |r: xxring::Result<CriticalResult>| -> Result<Option<CriticalResult>, CliError> {
        match r {
            Ok(r) => Ok(Some(r)),
            Err(xxring::Error::NoTransition(_)) => Ok(None),
            Err(e) => Err(e.into()),
        }
    };
    let t1 = solve(solve_t1_with_tol(j, b, a.tol))?;
    let t2 = if j < 0.0 { Some(solve(solve_t2_with_tol(j, b, a.tol))?) } else { None };
    let unit_label = match units {
        Units::J => " |J|",
        Units::Absolute => "",
    };

    match a.format {
        Format::Text => {
            writeln!(
                out,
                "J = {}, B = {} (eta = {})",
                significant(j, 12),
                significant(b, 12),
                significant(b / j.abs(), 12)
            )?;
            let line = |name: &str, r: &Option<CriticalResult>| match r {
                Some(r) => format!(
                    "{name} = {:.10}{unit_label}  (residual {:.1e}, bracket [{:.12}, {:.12}], {} iterations)",
                    r.value * scale,
                    r.residual,
                    r.bracket.0 * scale,
                    r.bracket.1 * scale,
                    r.iterations
                ),
                None => format!("{name}: no transition"),
            };
            writeln!(out, "{}", line("T1", &t1))?;
            match &t2 {
                Some(t2) => writeln!(out, "{}", line("T2", t2))?,
                None => writeln!(out, "T2: not defined for J > 0 (no teleportation advantage)")?,
            }
        }
        format => {
            let value = |r: &Option<CriticalResult>| Cell::from(r.map(|r| r.value * scale));
            let residual = |r: &Option<CriticalResult>| Cell::from(r.map(|r| r.residual));
            let t2 = t2.flatten();
            let columns = ["J", "B", "T1", "T1_residual", "T2", "T2_residual"].iter().map(|s| s.to_string()).collect();
            let row = vec![Cell::Number(j), Cell::Number(b), value(&t1), residual(&t1), value(&t2), residual(&t2)];
            let params = BTreeMap::from([
                ("J".to_string(), json!(j)),
                ("B".to_string(), json!(b)),
                ("tol".to_string(), json!(a.tol)),
                ("units".to_string(), json!(units_name(units))),
            ]);
            write_table(
                &Table { manifest: RunManifest::new("critical", params), columns, rows: vec![row] },
                format,
                out,
            )?;
        }
    }
    Ok(Status::Success)
}

fn verify_cmd(a: &VerifyArgs, out: &mut dyn Write) -> Result<Status, CliError> {
    let grid = match a.grid {
        GridSize::Small => Grid::Small,
        GridSize::Standard => Grid::Standard,
    };
    let perturb = finite("perturb", a.perturb)?;
    let checks = run_oracle_suites(grid, perturb)?;
    writeln!(out, "{:<44} {:>10} {:>10} {:>6}", "check", "max dev", "tolerance", "")?;
    let mut all = true;
    for c in &checks {
        let ok = c.passed();
        all &= ok;
        writeln!(
            out,
            "{:<44} {:>10.2e} {:>10.0e} {:>6}",
            c.name,
            c.max_deviation,
            c.tolerance,
            if ok { "PASS" } else { "FAIL" }
        )?;
        if !ok {
            let (j, b, beta) = c.worst_point;
            writeln!(out, "    worst at J = {j}, B = {b}, beta = {beta}")?;
        }
    }
    writeln!(out, "{}", if all { "PASS" } else { "FAIL" })?;
    Ok(if all { Status::Success } else { Status::Failure })
}
