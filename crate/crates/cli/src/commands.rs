//! The six subcommands: condition checks, matrix/tensor construction,
//! classification, simulation, and sweeps.
//!
//! All JSON output is built from plain structs with fixed field order, so a
//! given config and seed reproduce byte-identical documents.

use serde::Serialize;
use serde_json::Value;

use lao_core::{
    build_compound, build_matrix, check_conditions, check_conditions_multi, classify,
    compound_exact_error, compound_monte_carlo_error, exact_error, fit_exponent_series,
    monte_carlo_error, ConditionReport, DecisionRegions, ErrorEstimate, ExponentEstimate,
    ExtReal, Sample,
};

use crate::config::Experiment;
use crate::{CliError, OutputFormat};

/// Rendered command output plus whether the run counts as a success.
pub struct CmdResult {
    pub body: String,
    pub ok: bool,
}

fn to_json<T: Serialize>(value: &T) -> Result<String, CliError> {
    let mut body = serde_json::to_string_pretty(value)
        .map_err(|e| CliError::numerical(format!("serialization failed: {e}")))?;
    body.push('\n');
    Ok(body)
}

// --- check -----------------------------------------------------------------

#[derive(Serialize)]
struct ViolationView {
    hypothesis: usize,
    kind: lao_core::ViolationKind,
    value: f64,
    bound: f64,
}

#[derive(Serialize)]
struct CheckView {
    ok: bool,
    violations: Vec<ViolationView>,
}

#[derive(Serialize)]
struct ObjectCheckView {
    object: usize,
    ok: bool,
    violations: Vec<ViolationView>,
}

#[derive(Serialize)]
struct MultiCheckView {
    ok: bool,
    objects: Vec<ObjectCheckView>,
}

fn violation_views(report: &ConditionReport) -> Vec<ViolationView> {
    report
        .violations
        .iter()
        .map(|v| ViolationView {
            hypothesis: v.hypothesis + 1,
            kind: v.kind,
            value: v.value,
            bound: v.bound,
        })
        .collect()
}

pub fn cmd_check(exp: &Experiment) -> Result<CmdResult, CliError> {
    if exp.objects == 1 {
        let report = check_conditions(&exp.hypotheses, &exp.per_object_given[0])
            .map_err(CliError::from_core)?;
        let view = CheckView {
            ok: report.ok(),
            violations: violation_views(&report),
        };
        return Ok(CmdResult {
            body: to_json(&view)?,
            ok: report.ok(),
        });
    }
    let spec = exp.multi_spec()?;
    let report = check_conditions_multi(&spec).map_err(CliError::from_core)?;
    let view = MultiCheckView {
        ok: report.ok(),
        objects: report
            .per_object
            .iter()
            .enumerate()
            .map(|(i, r)| ObjectCheckView {
                object: i + 1,
                ok: r.ok(),
                violations: violation_views(r),
            })
            .collect(),
    };
    Ok(CmdResult {
        body: to_json(&view)?,
        ok: report.ok(),
    })
}

// --- matrix ------------------------------------------------------------------

#[derive(Serialize)]
struct MatrixView {
    log_base: f64,
    alphabet_size: usize,
    hypotheses: usize,
    given: Vec<f64>,
    conditions_ok: bool,
    forced: bool,
    /// Rows indexed by the true hypothesis, columns by the accepted one;
    /// infinite exponents appear as the string "inf".
    entries: Vec<Vec<ExtReal>>,
}

/// Refuses to build under violated conditions unless forced; prescribed
/// exact zeros (the Stein regime) are always allowed.
fn gate_conditions(
    what: &str,
    ok: bool,
    stein_only: bool,
    force: bool,
    detail: String,
) -> Result<(), CliError> {
    if ok || stein_only || force {
        return Ok(());
    }
    Err(CliError::violation(format!(
        "{what}: feasibility conditions violated (rerun `check` for details, or pass --force): {detail}"
    )))
}

pub fn cmd_matrix(exp: &Experiment, force: bool) -> Result<CmdResult, CliError> {
    if exp.objects != 1 {
        return Err(CliError::config(
            "matrix is the single-object surface; use tensor for objects >= 2",
        ));
    }
    let given = &exp.per_object_given[0];
    let report = check_conditions(&exp.hypotheses, given).map_err(CliError::from_core)?;
    gate_conditions(
        "matrix",
        report.ok(),
        report.stein_only(),
        force,
        format!("{} violation(s)", report.violations.len()),
    )?;
    let matrix = build_matrix(&exp.hypotheses, given).map_err(CliError::from_core)?;
    let view = MatrixView {
        log_base: exp.hypotheses.log_base().base(),
        alphabet_size: exp.hypotheses.alphabet_size(),
        hypotheses: exp.hypotheses.size(),
        given: given.diag().to_vec(),
        conditions_ok: report.ok(),
        forced: force,
        entries: matrix.entries().to_vec(),
    };
    Ok(CmdResult {
        body: to_json(&view)?,
        ok: true,
    })
}

// --- tensor ------------------------------------------------------------------

#[derive(Serialize)]
struct SummandView {
    object: usize,
    #[serde(rename = "true")]
    true_hypothesis: usize,
    accepted: usize,
    value: ExtReal,
}

#[derive(Serialize)]
struct TensorEntryView {
    #[serde(rename = "true")]
    true_tuple: Vec<usize>,
    accepted: Vec<usize>,
    value: ExtReal,
    /// Additive decomposition over the differing coordinates; empty for
    /// tuple diagonals (those are minima over alternatives, not sums).
    summands: Vec<SummandView>,
}

#[derive(Serialize)]
struct TensorView {
    log_base: f64,
    objects: usize,
    hypotheses: usize,
    conditions_ok: bool,
    forced: bool,
    entries: Vec<TensorEntryView>,
}

pub fn cmd_tensor(
    exp: &Experiment,
    force: bool,
    format: OutputFormat,
) -> Result<CmdResult, CliError> {
    if exp.objects < 2 {
        return Err(CliError::config("tensor requires objects >= 2"));
    }
    let spec = exp.multi_spec()?;
    let report = check_conditions_multi(&spec).map_err(CliError::from_core)?;
    gate_conditions(
        "tensor",
        report.ok(),
        report.stein_only(),
        force,
        format!(
            "objects violating: {:?}",
            report
                .per_object
                .iter()
                .enumerate()
                .filter(|(_, r)| !r.ok())
                .map(|(i, _)| i + 1)
                .collect::<Vec<_>>()
        ),
    )?;
    let tensor = build_compound(&spec).map_err(CliError::from_core)?;

    if let Some(selection) = &exp.entries {
        if format == OutputFormat::Csv {
            let mut body = String::new();
            write_tensor_csv_header(&mut body, exp.objects);
            for (true_t, accepted) in selection {
                let value = tensor.entry(true_t, accepted).map_err(CliError::from_core)?;
                write_tensor_csv_row(&mut body, true_t, accepted, value);
            }
            return Ok(CmdResult { body, ok: true });
        }
        let mut entries = Vec::with_capacity(selection.len());
        for (true_t, accepted) in selection {
            let value = tensor.entry(true_t, accepted).map_err(CliError::from_core)?;
            let summands = if true_t == accepted {
                Vec::new()
            } else {
                tensor
                    .summands(true_t, accepted)
                    .map_err(CliError::from_core)?
                    .into_iter()
                    .map(|(object, m, l, value)| SummandView {
                        object: object + 1,
                        true_hypothesis: m + 1,
                        accepted: l + 1,
                        value,
                    })
                    .collect()
            };
            entries.push(TensorEntryView {
                true_tuple: true_t.iter().map(|&i| i + 1).collect(),
                accepted: accepted.iter().map(|&i| i + 1).collect(),
                value,
                summands,
            });
        }
        let view = TensorView {
            log_base: exp.hypotheses.log_base().base(),
            objects: exp.objects,
            hypotheses: exp.hypotheses.size(),
            conditions_ok: report.ok(),
            forced: force,
            entries,
        };
        return Ok(CmdResult {
            body: to_json(&view)?,
            ok: true,
        });
    }

    // Dense export: CSV only, guarded by the tuple-space size.
    if format != OutputFormat::Csv {
        return Err(CliError::config(
            "dense tensor export is CSV-only; pass --format csv or select entries",
        ));
    }
    let tuples = tensor.index_tuples().map_err(CliError::from_core)?;
    let mut body = String::new();
    write_tensor_csv_header(&mut body, exp.objects);
    for true_t in &tuples {
        for accepted in &tuples {
            let value = tensor.entry(true_t, accepted).map_err(CliError::from_core)?;
            write_tensor_csv_row(&mut body, true_t, accepted, value);
        }
    }
    Ok(CmdResult { body, ok: true })
}

fn write_tensor_csv_header(body: &mut String, objects: usize) {
    for i in 0..objects {
        body.push_str(&format!("true_{},", i + 1));
    }
    for i in 0..objects {
        body.push_str(&format!("accepted_{},", i + 1));
    }
    body.push_str("value\n");
}

fn write_tensor_csv_row(body: &mut String, true_t: &[usize], accepted: &[usize], value: ExtReal) {
    for idx in true_t {
        body.push_str(&format!("{},", idx + 1));
    }
    for idx in accepted {
        body.push_str(&format!("{},", idx + 1));
    }
    body.push_str(&format!("{value}\n"));
}

// --- classify ----------------------------------------------------------------

#[derive(Serialize)]
struct ObjectClassifyView {
    object: usize,
    decision: usize,
    length: usize,
    type_counts: Vec<u64>,
    /// D(empirical type || G_m) for every hypothesis, in the active base.
    divergences: Vec<ExtReal>,
}

#[derive(Serialize)]
struct ClassifyView {
    decisions: Vec<usize>,
    objects: Vec<ObjectClassifyView>,
}

pub fn cmd_classify(exp: &Experiment, data: &str) -> Result<CmdResult, CliError> {
    let lines: Vec<&str> = data.lines().filter(|l| !l.trim().is_empty()).collect();
    if lines.is_empty() {
        return Err(CliError::config("data file is empty"));
    }
    if lines.len() != exp.objects {
        return Err(CliError::config(format!(
            "data file has {} sequences, expected one per object ({})",
            lines.len(),
            exp.objects
        )));
    }
    let mut sequences = Vec::with_capacity(lines.len());
    for (i, line) in lines.iter().enumerate() {
        let symbols: Vec<usize> = line
            .split_whitespace()
            .map(|tok| {
                tok.parse::<usize>().map_err(|_| {
                    CliError::config(format!("object {}: bad symbol {tok:?}", i + 1))
                })
            })
            .collect::<Result<_, _>>()?;
        sequences.push(symbols);
    }
    if sequences.windows(2).any(|w| w[0].len() != w[1].len()) {
        return Err(CliError::config("sequences must all have the same length"));
    }

    let mut decisions = Vec::new();
    let mut objects = Vec::new();
    for (i, symbols) in sequences.into_iter().enumerate() {
        let length = symbols.len();
        let sample = Sample::new(symbols).map_err(CliError::from_config_error)?;
        let regions = DecisionRegions::new(&exp.hypotheses, &exp.per_object_given[i.min(exp.per_object_given.len() - 1)])
            .map_err(CliError::from_core)?;
        let decision = classify(&regions, &sample).map_err(CliError::from_config_error)?;
        let t = lao_core::empirical_type(&sample, exp.hypotheses.alphabet_size())
            .map_err(CliError::from_config_error)?;
        let q = t.distribution();
        let divergences = (0..exp.hypotheses.size())
            .map(|m| {
                lao_core::kl_divergence(&q, exp.hypotheses.dist(m), exp.hypotheses.log_base())
                    .map_err(CliError::from_core)
            })
            .collect::<Result<Vec<_>, _>>()?;
        decisions.push(decision + 1);
        objects.push(ObjectClassifyView {
            object: i + 1,
            decision: decision + 1,
            length,
            type_counts: t.counts().to_vec(),
            divergences,
        });
    }
    let view = ClassifyView { decisions, objects };
    Ok(CmdResult {
        body: to_json(&view)?,
        ok: true,
    })
}

// --- simulate ------------------------------------------------------------------

#[derive(Serialize)]
struct EstimateRow {
    n: u64,
    exact: ErrorEstimate,
    #[serde(skip_serializing_if = "Option::is_none")]
    monte_carlo: Option<ErrorEstimate>,
}

#[derive(Serialize)]
struct SimResultView {
    #[serde(rename = "true")]
    true_sel: Value,
    accepted: Value,
    predicted: ExtReal,
    estimates: Vec<EstimateRow>,
    /// Absent when the prediction is infinite (no fit attempted).
    #[serde(skip_serializing_if = "Option::is_none")]
    fit: Option<ExponentEstimate>,
    /// Fitted slope divided by the predicted exponent.
    #[serde(skip_serializing_if = "Option::is_none")]
    ratio: Option<f64>,
}

#[derive(Serialize)]
struct SimulateView {
    log_base: f64,
    seed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    trials: Option<u64>,
    n_grid: Vec<u64>,
    results: Vec<SimResultView>,
}

fn fit_from_estimates(
    n_grid: &[u64],
    estimates: &[EstimateRow],
) -> Result<Option<ExponentEstimate>, CliError> {
    let mut ys = Vec::with_capacity(estimates.len());
    for row in estimates {
        match row.exact.log_alpha {
            Some(v) => ys.push(-v),
            None => {
                return Ok(Some(ExponentEstimate::Infinite {
                    first_zero_n: row.n,
                }))
            }
        }
    }
    if n_grid.len() < 3 {
        return Ok(None);
    }
    Ok(Some(ExponentEstimate::Fitted(
        fit_exponent_series(n_grid, &ys).map_err(CliError::from_core)?,
    )))
}

fn ratio_of(fit: &Option<ExponentEstimate>, predicted: ExtReal) -> Option<f64> {
    match (fit, predicted) {
        (Some(ExponentEstimate::Fitted(f)), ExtReal::Finite(p)) if p > 0.0 => {
            Some(f.slope / p)
        }
        _ => None,
    }
}

pub fn cmd_simulate(exp: &Experiment, threads: usize, force: bool) -> Result<CmdResult, CliError> {
    let n_grid = exp
        .n_grid
        .clone()
        .ok_or_else(|| CliError::config("simulate needs an n_grid"))?;

    let mut results = Vec::new();
    if exp.objects == 1 {
        let given = &exp.per_object_given[0];
        let report = check_conditions(&exp.hypotheses, given).map_err(CliError::from_core)?;
        gate_conditions(
            "simulate",
            report.ok(),
            report.stein_only(),
            force,
            format!("{} violation(s)", report.violations.len()),
        )?;
        let matrix = build_matrix(&exp.hypotheses, given).map_err(CliError::from_core)?;
        let regions =
            DecisionRegions::new(&exp.hypotheses, given).map_err(CliError::from_core)?;
        let pairs = exp.pairs.clone().unwrap_or_else(|| {
            let m = exp.hypotheses.size();
            (0..m)
                .flat_map(|a| (0..m).filter(move |&b| b != a).map(move |b| (a, b)))
                .collect()
        });
        for (true_m, accepted_l) in pairs {
            let predicted = matrix.entry(true_m, accepted_l);
            let mut estimates = Vec::new();
            for &n in &n_grid {
                let exact = exact_error(&exp.hypotheses, &regions, true_m, accepted_l, n)
                    .map_err(CliError::from_core)?;
                let monte_carlo = match exp.trials {
                    Some(trials) => Some(
                        monte_carlo_error(
                            &exp.hypotheses,
                            &regions,
                            true_m,
                            accepted_l,
                            n,
                            trials,
                            exp.seed,
                            threads,
                        )
                        .map_err(CliError::from_core)?,
                    ),
                    None => None,
                };
                estimates.push(EstimateRow {
                    n,
                    exact,
                    monte_carlo,
                });
            }
            let fit = if predicted.is_finite() {
                fit_from_estimates(&n_grid, &estimates)?
            } else {
                None
            };
            let ratio = ratio_of(&fit, predicted);
            results.push(SimResultView {
                true_sel: Value::from(true_m + 1),
                accepted: Value::from(accepted_l + 1),
                predicted,
                estimates,
                fit,
                ratio,
            });
        }
    } else {
        let spec = exp.multi_spec()?;
        let report = check_conditions_multi(&spec).map_err(CliError::from_core)?;
        gate_conditions(
            "simulate",
            report.ok(),
            report.stein_only(),
            force,
            "per-object violations".to_string(),
        )?;
        let tensor = build_compound(&spec).map_err(CliError::from_core)?;
        let per_regions: Vec<DecisionRegions> = exp
            .per_object_given
            .iter()
            .map(|g| DecisionRegions::new(&exp.hypotheses, g))
            .collect::<Result<_, _>>()
            .map_err(CliError::from_core)?;
        let selections = exp
            .entries
            .clone()
            .ok_or_else(|| CliError::config("multi-object simulate needs entries"))?;
        for (true_t, accepted) in selections {
            let predicted = tensor.entry(&true_t, &accepted).map_err(CliError::from_core)?;
            let mut estimates = Vec::new();
            for &n in &n_grid {
                let exact =
                    compound_exact_error(&exp.hypotheses, &per_regions, &true_t, &accepted, n)
                        .map_err(CliError::from_core)?;
                let monte_carlo = match exp.trials {
                    Some(trials) => Some(
                        compound_monte_carlo_error(
                            &exp.hypotheses,
                            &per_regions,
                            &true_t,
                            &accepted,
                            n,
                            trials,
                            exp.seed,
                            threads,
                        )
                        .map_err(CliError::from_core)?,
                    ),
                    None => None,
                };
                estimates.push(EstimateRow {
                    n,
                    exact,
                    monte_carlo,
                });
            }
            let fit = if predicted.is_finite() {
                fit_from_estimates(&n_grid, &estimates)?
            } else {
                None
            };
            let ratio = ratio_of(&fit, predicted);
            results.push(SimResultView {
                true_sel: Value::from(true_t.iter().map(|&i| i + 1).collect::<Vec<_>>()),
                accepted: Value::from(accepted.iter().map(|&i| i + 1).collect::<Vec<_>>()),
                predicted,
                estimates,
                fit,
                ratio,
            });
        }
    }

    let view = SimulateView {
        log_base: exp.hypotheses.log_base().base(),
        seed: exp.seed,
        trials: exp.trials,
        n_grid,
        results,
    };
    Ok(CmdResult {
        body: to_json(&view)?,
        ok: true,
    })
}

// --- sweep -------------------------------------------------------------------

#[derive(Serialize)]
struct SweepPoint {
    axes: Vec<f64>,
    value: ExtReal,
}

#[derive(Serialize)]
struct SweepView {
    points: Vec<SweepPoint>,
}

fn axis_values(start: f64, stop: f64, step: f64) -> Vec<f64> {
    let mut out = Vec::new();
    let mut k = 0u64;
    loop {
        let x = start + k as f64 * step;
        if x > stop + step * 1e-9 {
            return out;
        }
        out.push(x);
        k += 1;
    }
}

/// The swept reliability at one grid point: the matrix/tensor entry when the
/// feasibility conditions hold, and exactly zero past the breakdown.
fn sweep_value_single(
    exp: &Experiment,
    hypothesis: usize,
    x: f64,
    true_m: usize,
    accepted_l: usize,
) -> Result<ExtReal, CliError> {
    let mut diag = exp.per_object_given[0].diag().to_vec();
    diag[hypothesis] = x;
    let given = lao_core::GivenExponents::new(diag).map_err(CliError::from_core)?;
    let report = check_conditions(&exp.hypotheses, &given).map_err(CliError::from_core)?;
    if !report.ok() {
        return Ok(ExtReal::ZERO);
    }
    let matrix = build_matrix(&exp.hypotheses, &given).map_err(CliError::from_core)?;
    Ok(matrix.entry(true_m, accepted_l))
}

fn sweep_value_pair(
    exp: &Experiment,
    axes: &[(usize, usize, f64, f64, f64)],
    x: f64,
    y: f64,
    true_t: &[usize],
    accepted: &[usize],
) -> Result<ExtReal, CliError> {
    let mut rows: Vec<Vec<f64>> = exp
        .per_object_given
        .iter()
        .map(|g| g.diag().to_vec())
        .collect();
    rows[axes[0].0][axes[0].1] = x;
    rows[axes[1].0][axes[1].1] = y;
    let per_object = rows
        .into_iter()
        .map(lao_core::GivenExponents::new)
        .collect::<Result<Vec<_>, _>>()
        .map_err(CliError::from_core)?;
    let spec = lao_core::MultiObjectSpec::new(exp.hypotheses.clone(), per_object)
        .map_err(CliError::from_core)?;
    let report = check_conditions_multi(&spec).map_err(CliError::from_core)?;
    if !report.ok() {
        return Ok(ExtReal::ZERO);
    }
    let tensor = build_compound(&spec).map_err(CliError::from_core)?;
    tensor.entry(true_t, accepted).map_err(CliError::from_core)
}

pub fn cmd_sweep(exp: &Experiment, format: OutputFormat) -> Result<CmdResult, CliError> {
    let sweep = exp
        .sweep
        .as_ref()
        .ok_or_else(|| CliError::config("config has no sweep section"))?;
    let (true_t, accepted) = &sweep.entry;

    let mut points: Vec<SweepPoint> = Vec::new();
    match sweep.axes.len() {
        1 => {
            let (_, hypothesis, start, stop, step) = sweep.axes[0];
            for x in axis_values(start, stop, step) {
                let value = sweep_value_single(exp, hypothesis, x, true_t[0], accepted[0])?;
                points.push(SweepPoint {
                    axes: vec![x],
                    value,
                });
            }
        }
        2 => {
            let (_, _, start1, stop1, step1) = sweep.axes[0];
            let (_, _, start2, stop2, step2) = sweep.axes[1];
            for x in axis_values(start1, stop1, step1) {
                for y in axis_values(start2, stop2, step2) {
                    let value = sweep_value_pair(exp, &sweep.axes, x, y, true_t, accepted)?;
                    points.push(SweepPoint {
                        axes: vec![x, y],
                        value,
                    });
                }
            }
        }
        _ => unreachable!("validated to 1 or 2 axes"),
    }

    match format {
        OutputFormat::Json => Ok(CmdResult {
            body: to_json(&SweepView { points })?,
            ok: true,
        }),
        OutputFormat::Csv => {
            let mut body = String::new();
            if sweep.axes.len() == 1 {
                body.push_str("given,value\n");
            } else {
                body.push_str("given_1,given_2,value\n");
            }
            for p in &points {
                for a in &p.axes {
                    body.push_str(&format!("{a},"));
                }
                body.push_str(&format!("{}\n", p.value));
            }
            Ok(CmdResult { body, ok: true })
        }
    }
}
