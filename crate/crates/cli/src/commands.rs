use std::path::Path;
use std::time::Instant;

use entroplex::bounds::{capacity_witness, MeasurementPair};
use entroplex::experiments::sweeps::{FULL_TRIALS, SMOKE_TRIALS};
use entroplex::experiments::{
    example1_pair, example1_report, fig1_curve, gap_scan, haar_average_q_state,
    least_squares_slope, run_suite, StatePreset, Suite, SuiteOutcome, SweepConfig,
};
use entroplex::Execution;
use serde_json::json;

use crate::error::{CliError, Context};
use crate::input::{load_basis, load_channel, load_measurement, load_state};
use crate::report::{emit, fmt_sig12, write_csv, ReportDocument};
use crate::{
    BoundsArgs, CapacityArgs, Example1Args, Fig1Args, GapArgs, Preset, StateArg, VerifyArgs,
};

pub const SEED_VAR: &str = "ENTROPLEX_SEED";

fn resolve_seed(flag: Option<u64>) -> Result<u64, CliError> {
    if let Some(s) = flag {
        return Ok(s);
    }
    match std::env::var(SEED_VAR) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| CliError::Usage(format!("{SEED_VAR}=`{v}` is not an unsigned integer"))),
        Err(_) => Ok(0),
    }
}

/// Parses `2x2,3x3` into `[[2, 2], [3, 3]]`.
pub fn parse_dims_grid(s: &str) -> Result<Vec<Vec<usize>>, CliError> {
    s.split(',')
        .map(|entry| {
            entry
                .trim()
                .split('x')
                .map(|d| d.trim().parse::<usize>().ok().filter(|&d| d > 0))
                .collect::<Option<Vec<_>>>()
                .ok_or_else(|| CliError::Usage(format!("--dims: `{entry}` is not of the form 2x3")))
        })
        .collect()
}

fn parse_dim_list(s: &str) -> Result<Vec<usize>, CliError> {
    s.split(',')
        .map(|d| {
            d.trim()
                .parse::<usize>()
                .map_err(|_| CliError::Usage(format!("--dims: `{d}` is not a positive integer")))
        })
        .collect()
}

pub fn bounds(a: &BoundsArgs, exec: Execution, out: Option<&Path>) -> Result<bool, CliError> {
    let start = Instant::now();
    let (x, dx) = load_measurement(&a.x, "x")?;
    let (z, dz) = load_measurement(&a.z, "z")?;
    let mut inputs = vec![dx, dz];
    let state = match &a.state {
        Some(path) => {
            let (rho, d) = load_state(path, "state")?;
            inputs.push(d);
            Some(if rho.num_subsystems() > 1 {
                rho.reduce(&[0]).context("state")?
            } else {
                rho
            })
        }
        None => None,
    };
    let pair = MeasurementPair::new(x, z).context("measurement pair")?;
    let report = pair.report(state.as_ref(), exec).context("bounds")?;
    let results = json!({
        "bounds": report,
        "complementarity": pair.summary(),
        "h_factors": pair.h_factors(),
    });
    emit(
        &ReportDocument::new("bounds", inputs, None, results, start.elapsed()),
        out,
    )?;
    Ok(true)
}

pub fn verify(a: &VerifyArgs, exec: Execution, out: Option<&Path>) -> Result<bool, CliError> {
    let start = Instant::now();
    let suites: Vec<Suite> = if a.suite == "all" {
        Suite::ALL.to_vec()
    } else {
        vec![a.suite.parse().map_err(|_| {
            let names: Vec<&str> = Suite::ALL.iter().map(|s| s.name()).collect();
            CliError::Usage(format!(
                "unknown suite `{}`; expected one of {} or all",
                a.suite,
                names.join(", ")
            ))
        })?]
    };
    let dims = a.dims.as_deref().map(parse_dims_grid).transpose()?;
    if dims.is_some() && suites.len() > 1 {
        return Err(CliError::Usage("--dims needs a single suite".into()));
    }
    let seed = resolve_seed(a.seed)?;
    let mut cfg = SweepConfig::new(
        seed,
        a.trials.unwrap_or(match a.preset {
            Preset::Smoke => SMOKE_TRIALS,
            Preset::Full => FULL_TRIALS,
        }),
    );
    cfg.dims = dims;
    cfg.tol = a.tol;
    cfg.exec = exec;
    cfg.state = match a.state {
        StateArg::Random => StatePreset::Random,
        StateArg::MaxEntangled => StatePreset::MaxEntangled,
    };

    let mut outcomes: Vec<SuiteOutcome> = Vec::with_capacity(suites.len());
    for suite in suites {
        let o = run_suite(suite, &cfg).context(format!("suite {suite}"))?;
        let detail = if o.generic.is_empty() {
            format!(
                "{:>6} records  {:>4} skipped  min slack {}",
                o.records.len(),
                o.skipped,
                o.min_slack().map_or("-".into(), |s| format!("{s:.3e}"))
            )
        } else {
            o.generic
                .iter()
                .map(|g| match g.qubit_tie_defect {
                    Some(t) => format!("d={} forced ties, defect {t:.1e}", g.d),
                    None => format!("d={} distinct {:.4}", g.d, g.distinct_fraction),
                })
                .collect::<Vec<_>>()
                .join("  ")
        };
        eprintln!("{:<16} {:>3} failed  {detail}", suite.name(), o.failures());
        outcomes.push(o);
    }
    let passed = outcomes.iter().all(SuiteOutcome::passed);
    let results = json!({
        "passed": passed,
        "trials": cfg.trials,
        "tol": cfg.tol,
        "state": cfg.state,
        "suites": outcomes,
    });
    emit(
        &ReportDocument::new("verify", vec![], Some(seed), results, start.elapsed()),
        out,
    )?;
    Ok(passed)
}

pub fn example1(a: &Example1Args, exec: Execution, out: Option<&Path>) -> Result<bool, CliError> {
    let start = Instant::now();
    let seed = resolve_seed(a.seed)?;
    if a.samples < 2 {
        return Err(CliError::Usage("--samples must be at least 2".into()));
    }
    let pair = example1_pair();
    let haar = haar_average_q_state(&pair, a.samples, seed, exec).context("Haar average")?;
    let results = json!({
        "bounds": example1_report(exec),
        "complementarity": pair.summary(),
        "h_factors": pair.h_factors(),
        "haar_average_q_state": haar,
    });
    emit(
        &ReportDocument::new("example1", vec![], Some(seed), results, start.elapsed()),
        out,
    )?;
    Ok(true)
}

pub fn fig1(a: &Fig1Args, exec: Execution, out: Option<&Path>) -> Result<bool, CliError> {
    let start = Instant::now();
    if a.points < 2 {
        return Err(CliError::Usage("--points must be at least 2".into()));
    }
    let curve = fig1_curve(a.points, exec);
    let (p_max, max) = curve
        .iter()
        .copied()
        .fold((0.0, f64::NEG_INFINITY), |best, pt| {
            if pt.1 > best.1 {
                pt
            } else {
                best
            }
        });
    if let Some(path) = &a.csv {
        let rows: Vec<Vec<String>> = curve
            .iter()
            .map(|(p, l)| vec![fmt_sig12(*p), fmt_sig12(*l)])
            .collect();
        write_csv(path, &["p", "lambda_min"], &rows)?;
    }
    let results = json!({
        "curve": curve.iter().map(|(p, l)| json!({"p": p, "lambda_min": l})).collect::<Vec<_>>(),
        "max": {"p": p_max, "lambda_min": max},
    });
    emit(
        &ReportDocument::new("fig1", vec![], None, results, start.elapsed()),
        out,
    )?;
    Ok(true)
}

pub fn gap(a: &GapArgs, exec: Execution, out: Option<&Path>) -> Result<bool, CliError> {
    let start = Instant::now();
    let dims = parse_dim_list(&a.dims)?;
    let points = gap_scan(&dims, a.theta, exec).context("gap scan")?;
    if let Some(path) = &a.csv {
        let rows: Vec<Vec<String>> = points
            .iter()
            .map(|p| {
                vec![
                    p.d.to_string(),
                    fmt_sig12(p.theta),
                    fmt_sig12(p.c_max),
                    fmt_sig12(p.c_2),
                    fmt_sig12(p.delta),
                    fmt_sig12(p.predicted_delta),
                ]
            })
            .collect();
        write_csv(
            path,
            &["d", "theta", "c_max", "c_2", "delta", "predicted_delta"],
            &rows,
        )?;
    }
    let log_d: Vec<f64> = points.iter().map(|p| (p.d as f64).log2()).collect();
    let delta: Vec<f64> = points.iter().map(|p| p.delta).collect();
    let slope = (points.len() >= 2).then(|| least_squares_slope(&log_d, &delta));
    let results = json!({
        "theta": a.theta,
        "points": points,
        "slope_vs_log2_d": slope,
        "asymptotic_slope": 0.5 * (1.0 - a.theta.cos()),
        "increasing": delta.windows(2).all(|w| w[1] > w[0]),
    });
    emit(
        &ReportDocument::new("gap", vec![], None, results, start.elapsed()),
        out,
    )?;
    Ok(true)
}

pub fn capacity(a: &CapacityArgs, out: Option<&Path>) -> Result<bool, CliError> {
    let start = Instant::now();
    let (channel, dc) = load_channel(&a.channel, "channel")?;
    let (x, dx) = load_basis(&a.x, "x")?;
    let (xb, dxb) = load_basis(&a.xb, "xb")?;
    let (z, dz) = load_basis(&a.z, "z")?;
    let (zb, dzb) = load_basis(&a.zb, "zb")?;
    let w = capacity_witness(&channel, &x, &xb, &z, &zb).context("capacity witness")?;
    let results = json!({ "capacity": w });
    emit(
        &ReportDocument::new(
            "capacity",
            vec![dc, dx, dxb, dz, dzb],
            None,
            results,
            start.elapsed(),
        ),
        out,
    )?;
    Ok(true)
}
