//! The five subcommands. Each resolves its settings, computes, and returns a
//! [`ReportEnvelope`]; writing and exit codes are handled by the caller.

use rayon::prelude::*;

use crate::asymptotics::{error_decay_report, AsymptoticModel, OrderFit, Quantity};
use crate::identities::{run_range, Check, ResidualReport, T2DerivativeProbe, FD_MIN_WORKING_DIGITS};
use crate::moments::{MomentTable, Params};
use crate::numerics::{format_significant, BigReal, PrecisionContext};
use crate::orthopoly::RecurrenceTable;

use super::config::{parse_n_list, parse_range, Layers};
use super::report::ReportEnvelope;
use super::{AsymptArgs, CliError, MomentsArgs, RecurrenceArgs, SweepArgs, VerifyArgs};

pub const RECURRENCE_COLUMNS: [&str; 7] = ["n", "beta_n", "h_n", "p_n", "r_n", "R_n", "log_D_n"];

const DEFAULT_N: usize = 20;
const DEFAULT_SWEEP_N: usize = 10;
const DEFAULT_MAX_ORDER: usize = 20;
const DEFAULT_STEP: &str = "1e-10";
const DEFAULT_N_LIST: &str = "32,64";

fn usage(e: impl std::fmt::Display) -> CliError {
    CliError::Usage(e.to_string())
}

pub fn moments(a: &MomentsArgs, layers: &mut Layers) -> Result<ReportEnvelope, CliError> {
    let max_order = layers.parsed("max-order", a.max_order, DEFAULT_MAX_ORDER)?;
    let ctx = layers.context(a.common.digits, a.common.guard, max_order / 2, 0)?;
    let params = layers.params(a.common.t1.clone(), a.common.t2.clone(), &ctx)?;
    let table = MomentTable::compute(&params, max_order, &ctx)?;
    let digits = ctx.target_digits();

    let mut env = ReportEnvelope::new("moments", &["j", "mu_j"]);
    for j in 0..=max_order {
        env.push_row(vec![j.to_string(), format_significant(&table[j], digits)]);
    }
    env.config = layers.echo();
    Ok(env)
}

/// One row of the recurrence table, as rendered by `recurrence`.
pub fn recurrence_row(table: &RecurrenceTable, n: usize, digits: u32) -> Result<Vec<String>, CliError> {
    let f = |x: &BigReal| format_significant(x, digits);
    Ok(vec![
        n.to_string(),
        f(&table.beta()[n]),
        f(&table.h()[n]),
        f(&table.p()[n]),
        f(&table.small_r()[n]),
        f(&table.big_r()[n]),
        f(&table.log_hankel(n)?),
    ])
}

pub fn recurrence(a: &RecurrenceArgs, layers: &mut Layers) -> Result<ReportEnvelope, CliError> {
    let n_max = layers.parsed("n", a.n, DEFAULT_N)?;
    let ctx = layers.context(a.common.digits, a.common.guard, n_max, 0)?;
    let params = layers.params(a.common.t1.clone(), a.common.t2.clone(), &ctx)?;
    let table = RecurrenceTable::compute(&params, n_max, &ctx)?;

    let mut env = ReportEnvelope::new("recurrence", &RECURRENCE_COLUMNS);
    for n in 0..=n_max {
        env.push_row(recurrence_row(&table, n, ctx.target_digits())?);
    }
    env.config = layers.echo();
    Ok(env)
}

fn parse_checks(text: &str) -> Result<Vec<Check>, CliError> {
    if text == "all" {
        return Ok(Check::ALL.to_vec());
    }
    let mut checks = Vec::new();
    for name in text.split(',') {
        let check: Check = name.trim().parse().map_err(usage)?;
        if !checks.contains(&check) {
            checks.push(check);
        }
    }
    Ok(checks)
}

fn fold_reports(reports: impl Iterator<Item = crate::error::Result<ResidualReport>>) -> crate::error::Result<ResidualReport> {
    let mut acc: Option<ResidualReport> = None;
    for r in reports {
        let r = r?;
        acc = Some(match acc {
            Some(a) => a.merge(r),
            None => r,
        });
    }
    acc.ok_or_else(|| crate::error::Error::InvalidArgument("empty index range".into()))
}

pub fn verify(a: &VerifyArgs, layers: &mut Layers) -> Result<ReportEnvelope, CliError> {
    let n_max = layers.parsed("n", a.n, DEFAULT_N)?;
    if n_max < 4 {
        return Err(usage(format!("verify needs --n of at least 4, got {n_max}")));
    }
    let checks = parse_checks(&layers.get_or("check", a.check.clone(), "all"))?;
    let needs_fd = checks.contains(&Check::Dt2);
    let min_working = if needs_fd { FD_MIN_WORKING_DIGITS } else { 0 };
    let ctx = layers.context(a.common.digits, a.common.guard, n_max, min_working)?;
    let params = layers.params(a.common.t1.clone(), a.common.t2.clone(), &ctx)?;
    let tol = match layers.get("tol", a.tol.clone()) {
        Some(text) => Some(ctx.parse(&text).map_err(usage)?),
        None => None,
    };
    let step = if needs_fd {
        Some(ctx.parse(&layers.get_or("step", a.step.clone(), DEFAULT_STEP)).map_err(usage)?)
    } else {
        None
    };

    let table = RecurrenceTable::compute(&params, n_max, &ctx)?;
    let (from, to) = (2, n_max - 2);
    let reports: Vec<crate::error::Result<ResidualReport>> = checks
        .par_iter()
        .map(|check| match check {
            Check::Dt2 => {
                let step = step.as_ref().expect("step resolved for dt2");
                let probe = T2DerivativeProbe::around(table.clone(), step)?;
                fold_reports((from..=to).map(|n| probe.report(n)))
            }
            other => run_range(&table, *other, from, to),
        })
        .collect();

    let digits = ctx.target_digits();
    let f = |x: &BigReal| format_significant(x, digits);
    let mut env = ReportEnvelope::new(
        "verify",
        &["check", "n_from", "n_to", "max_abs_residual", "max_rel_residual", "worst_n", "tolerance", "pass"],
    );
    let mut all_pass = true;
    let mut failed = Vec::new();
    let mut worst: Option<(BigReal, String)> = None;
    for (check, report) in checks.iter().zip(reports) {
        let mut report = report?;
        if let Some(t) = &tol {
            report = report.with_tolerance(t.clone());
        }
        all_pass &= report.pass;
        if !report.pass {
            failed.push(check.name());
        }
        let ratio = ctx.real(&report.max_rel_residual / &report.tolerance);
        let label = format!(
            "{} at n={} (relative residual {})",
            check.name(),
            report.worst_n,
            format_significant(&report.max_rel_residual, 6)
        );
        // Largest residual/tolerance ratio; any failing check has a ratio of at least 1.
        let outranks = match &worst {
            None => true,
            Some((w, _)) => ratio > *w,
        };
        if outranks {
            worst = Some((ratio, label));
        }
        env.push_row(vec![
            check.name().to_string(),
            report.n_range.0.to_string(),
            report.n_range.1.to_string(),
            f(&report.max_abs_residual),
            f(&report.max_rel_residual),
            report.worst_n.to_string(),
            f(&report.tolerance),
            report.pass.to_string(),
        ]);
    }
    env.set_summary("pass", all_pass);
    env.set_summary("checks", checks.iter().map(|c| c.name()).collect::<Vec<_>>().join(","));
    env.set_summary("failed", failed.join(","));
    if let Some((_, label)) = worst {
        env.set_summary("worst", label);
    }
    env.config = layers.echo();
    Ok(env)
}

pub fn asympt(a: &AsymptArgs, layers: &mut Layers) -> Result<ReportEnvelope, CliError> {
    let quantity: Quantity = layers.get_or("quantity", a.quantity.clone(), "beta").parse().map_err(usage)?;
    let n_list = parse_n_list(&layers.get_or("n-list", a.n_list.clone(), DEFAULT_N_LIST))?;
    let n_top = *n_list.last().expect("non-empty list") + 2;
    let ctx = layers.context(a.common.digits, a.common.guard, n_top, 0)?;
    let params = layers.params(a.common.t1.clone(), a.common.t2.clone(), &ctx)?;
    let model = AsymptoticModel::new(&params, &ctx);
    let table = if quantity.needs_table() {
        Some(RecurrenceTable::compute(&params, n_top, &ctx)?)
    } else {
        None
    };
    let report = error_decay_report(quantity, &n_list, table.as_ref(), &model)?;

    let digits = ctx.target_digits();
    let f = |x: &BigReal| format_significant(x, digits);
    let mut env = ReportEnvelope::new("asympt", &["n", "exact", "asym", "abs_error", "fitted_order", "regime_flag"]);
    for row in &report.rows {
        let fit = match &row.fit {
            OrderFit::Fitted { order, .. } => f(order),
            OrderFit::ExactMatch => "exact-match".to_string(),
            OrderFit::NoPartner => String::new(),
        };
        env.push_row(vec![
            row.n.to_string(),
            f(&row.exact),
            f(&row.asym),
            f(&row.error),
            fit,
            report.regime.label().to_string(),
        ]);
    }
    env.set_summary("quantity", quantity.name());
    env.set_summary("regime", report.regime.label());
    env.set_summary("expected_order", format!("{}/3", quantity.remainder_thirds()));
    env.set_summary("band", format_significant(&report.band, 2));
    env.set_summary("orders_within_band", report.all_within());
    env.config = layers.echo();
    Ok(env)
}

fn grid_axis(layers: &mut Layers, range_key: &str, range: Option<String>, point_key: &str, point: Option<String>, ctx: &PrecisionContext) -> Result<Vec<BigReal>, CliError> {
    match layers.get(range_key, range) {
        Some(text) => parse_range(&text, ctx),
        None => Ok(vec![ctx.parse(&layers.get_or(point_key, point, "0")).map_err(usage)?]),
    }
}

pub fn sweep(a: &SweepArgs, layers: &mut Layers) -> Result<ReportEnvelope, CliError> {
    let n = layers.parsed("n", a.n, DEFAULT_SWEEP_N)?;
    let quantity = layers.get_or("quantity", a.quantity.clone(), "beta_n");
    let column = RECURRENCE_COLUMNS[1..]
        .iter()
        .position(|c| *c == quantity)
        .map(|i| i + 1)
        .ok_or_else(|| usage(format!("unknown sweep quantity '{quantity}'; expected one of {}", RECURRENCE_COLUMNS[1..].join(", "))))?;
    let ctx = layers.context(a.common.digits, a.common.guard, n, 0)?;
    let t1s = grid_axis(layers, "t1-range", a.t1_range.clone(), "t1", a.common.t1.clone(), &ctx)?;
    let t2s = grid_axis(layers, "t2-range", a.t2_range.clone(), "t2", a.common.t2.clone(), &ctx)?;

    let grid: Vec<(BigReal, BigReal)> = t1s
        .iter()
        .flat_map(|t1| t2s.iter().map(move |t2| (t1.clone(), t2.clone())))
        .collect();
    let digits = ctx.target_digits();
    let values: Vec<Result<String, CliError>> = grid
        .par_iter()
        .map(|(t1, t2)| {
            let table = RecurrenceTable::compute(&Params::new(t1.clone(), t2.clone()), n, &ctx)?;
            Ok(recurrence_row(&table, n, digits)?.swap_remove(column))
        })
        .collect();

    let mut env = ReportEnvelope::new("sweep", &["t1", "t2", "n", quantity.as_str()]);
    for ((t1, t2), value) in grid.iter().zip(values) {
        env.push_row(vec![
            format_significant(t1, digits),
            format_significant(t2, digits),
            n.to_string(),
            value?,
        ]);
    }
    env.config = layers.echo();
    Ok(env)
}
