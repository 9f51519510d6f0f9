//! The `sweep` subcommand: tabulate exact and asymptotic curves on a grid.

use oscibif_core::asymptotics::AsymptoticEngine;
use oscibif_core::{timemap, Error, ProblemParams, Regime, Truncation};
use rayon::prelude::*;

use crate::report::{cell, sig17};
use crate::{CommonArgs, Mode, Scale};

pub struct Row {
    pub alpha: f64,
    pub mu_exact: Option<f64>,
    pub gradsq_exact: Option<f64>,
    pub lambda_exact: Option<f64>,
    pub mu_asym: Option<f64>,
    pub gradsq_asym: Option<f64>,
    pub lambda_asym: Option<f64>,
    pub rel_err_mu: Option<f64>,
    pub rel_err_lambda: Option<f64>,
    pub regime: &'static str,
    pub flags: Vec<&'static str>,
}

pub struct Outcome {
    pub rows: Vec<Row>,
    pub nonconverged: bool,
    pub fatal: Option<Error>,
}

fn rel_err(asym: Option<f64>, exact: Option<f64>) -> Option<f64> {
    match (asym, exact) {
        (Some(a), Some(e)) if e != 0.0 => Some(((a - e) / e).abs()),
        _ => None,
    }
}

fn compute_row(
    params: &ProblemParams,
    engine: &AsymptoticEngine,
    alpha: f64,
    mode: Mode,
    truncation: Truncation,
) -> Result<(Row, bool), Error> {
    let mut flags: Vec<&'static str> = Vec::new();
    let mut nonconverged = false;

    let exact = if mode != Mode::Asym {
        match timemap::lambda_of_alpha(params, alpha) {
            Ok(pt) => Some(pt),
            Err(Error::NonConvergence { .. }) => {
                nonconverged = true;
                None
            }
            Err(e) => return Err(e),
        }
    } else {
        None
    };

    let mut regime = if alpha >= 1.0 { "large" } else { "small" };
    let mut asym = None;
    if mode != Mode::Exact {
        let mu = engine.mu_asym(alpha, truncation);
        let grad = engine.gradsq_asym(alpha, truncation);
        let lambda = engine.lambda_asym(alpha, truncation);
        match (mu, grad, lambda) {
            (Ok(mu), Ok(grad), Ok(lambda)) => {
                regime = match mu.regime {
                    Regime::Large => "large",
                    Regime::Small => "small",
                };
                if mu.extrapolated {
                    flags.push("extrapolated");
                }
                asym = Some((mu.value, grad.value, lambda.value));
            }
            (Err(Error::NonConvergence { .. }), _, _)
            | (_, Err(Error::NonConvergence { .. }), _)
            | (_, _, Err(Error::NonConvergence { .. })) => {
                nonconverged = true;
            }
            (Err(e), _, _) => return Err(e),
            (_, Err(e), _) => return Err(e),
            (_, _, Err(e)) => return Err(e),
        }
    }

    if nonconverged {
        flags.push("nonconverged");
    }

    let row = Row {
        alpha,
        mu_exact: exact.as_ref().map(|pt| pt.mu),
        gradsq_exact: exact.as_ref().map(|pt| pt.grad_norm_sq),
        lambda_exact: exact.as_ref().map(|pt| pt.lambda),
        mu_asym: asym.map(|(m, _, _)| m),
        gradsq_asym: asym.map(|(_, g, _)| g),
        lambda_asym: asym.map(|(_, _, l)| l),
        rel_err_mu: rel_err(asym.map(|(m, _, _)| m), exact.as_ref().map(|pt| pt.mu)),
        rel_err_lambda: rel_err(asym.map(|(_, _, l)| l), exact.as_ref().map(|pt| pt.lambda)),
        regime,
        flags,
    };
    Ok((row, nonconverged))
}

pub fn run(params: &ProblemParams, grid: &[f64], mode: Mode, truncation: Truncation) -> Outcome {
    let engine = AsymptoticEngine::new(*params);
    // Warm the per-p caches once so worker threads don't duplicate the work.
    if mode != Mode::Exact {
        let _ = engine.statics();
    }

    let results: Vec<Result<(Row, bool), Error>> = grid
        .par_iter()
        .map(|&alpha| compute_row(params, &engine, alpha, mode, truncation))
        .collect();

    let mut rows = Vec::with_capacity(grid.len());
    let mut nonconverged = false;
    let mut fatal = None;
    for (i, res) in results.into_iter().enumerate() {
        match res {
            Ok((row, nc)) => {
                nonconverged |= nc;
                rows.push(row);
            }
            Err(e) => {
                if fatal.is_none() {
                    fatal = Some(e);
                }
                rows.push(Row {
                    alpha: grid[i],
                    mu_exact: None,
                    gradsq_exact: None,
                    lambda_exact: None,
                    mu_asym: None,
                    gradsq_asym: None,
                    lambda_asym: None,
                    rel_err_mu: None,
                    rel_err_lambda: None,
                    regime: if grid[i] >= 1.0 { "large" } else { "small" },
                    flags: vec!["error"],
                });
            }
        }
    }
    Outcome { rows, nonconverged, fatal }
}

pub const CSV_HEADER: &str = "alpha,p,b,mu_exact,gradsq_exact,lambda_exact,mu_asym,gradsq_asym,lambda_asym,rel_err_mu,rel_err_lambda,regime,flags";

pub fn to_csv(params: &ProblemParams, rows: &[Row]) -> String {
    let mut out = String::with_capacity(rows.len() * 256 + 128);
    out.push_str(CSV_HEADER);
    out.push('\n');
    for row in rows {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{},{},{},{},{}\n",
            sig17(row.alpha),
            sig17(params.p()),
            sig17(params.b()),
            cell(row.mu_exact),
            cell(row.gradsq_exact),
            cell(row.lambda_exact),
            cell(row.mu_asym),
            cell(row.gradsq_asym),
            cell(row.lambda_asym),
            cell(row.rel_err_mu),
            cell(row.rel_err_lambda),
            row.regime,
            row.flags.join(";"),
        ));
    }
    out
}

pub fn to_json(params: &ProblemParams, common: &CommonArgs, mode: Mode, rows: &[Row]) -> String {
    let rows_json: Vec<serde_json::Value> = rows
        .iter()
        .map(|r| {
            serde_json::json!({
                "alpha": r.alpha,
                "p": params.p(),
                "b": params.b(),
                "mu_exact": r.mu_exact,
                "gradsq_exact": r.gradsq_exact,
                "lambda_exact": r.lambda_exact,
                "mu_asym": r.mu_asym,
                "gradsq_asym": r.gradsq_asym,
                "lambda_asym": r.lambda_asym,
                "rel_err_mu": r.rel_err_mu,
                "rel_err_lambda": r.rel_err_lambda,
                "regime": r.regime,
                "flags": r.flags,
            })
        })
        .collect();
    let doc = serde_json::json!({
        "metadata": {
            "version": env!("CARGO_PKG_VERSION"),
            "config": {
                "p": params.p(),
                "b": params.b(),
                "alpha_min": common.alpha_min,
                "alpha_max": common.alpha_max,
                "points": common.points,
                "scale": match common.scale { Scale::Log => "log", Scale::Linear => "linear" },
                "mode": match mode { Mode::Exact => "exact", Mode::Asym => "asym", Mode::Both => "both" },
            },
        },
        "rows": rows_json,
    });
    let mut body = serde_json::to_string_pretty(&doc).expect("static structure serializes");
    body.push('\n');
    body
}
