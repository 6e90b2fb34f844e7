//! Sweep runner: strategy × β grid × repetitions, final averaged losses with
//! 95% confidence intervals, CSV emission.

use std::io::Write;
use std::path::Path;

use rayon::prelude::*;

use crate::data_io::{shuffled_stream, Dataset, Task};
use crate::error::{Error, Result};
use crate::learner::Learner;
use crate::losses::LossKind;
use crate::regularizer::LambdaSchedule;
use crate::strategies::Strategy;

#[derive(Debug, Clone)]
pub struct SweepConfig {
    pub loss: LossKind,
    pub strategies: Vec<Strategy>,
    pub beta_grid: Vec<f64>,
    pub repetitions: usize,
    pub base_seed: u64,
    /// Gradient-norm bound handed to the schedule. Defaults to 1 on
    /// unit-norm data for hinge/logistic/absolute; required for squared.
    pub g_override: Option<f64>,
}

/// Aggregate for one (strategy, β) grid point.
#[derive(Debug, Clone)]
pub struct SweepCell {
    pub strategy: Strategy,
    pub beta: f64,
    pub mean_final_averaged_loss: f64,
    /// 1.96 · stddev/√reps (normal-approximation 95% interval).
    pub ci_halfwidth: f64,
    pub per_rep_final: Vec<f64>,
}

/// Log-spaced grid with exact endpoints; ~4 points per decade.
pub fn default_beta_grid(kind: LossKind) -> Vec<f64> {
    match kind {
        LossKind::Absolute => log_grid(1e-3, 1e8, 45),
        _ => log_grid(1e-3, 1e3, 25),
    }
}

fn log_grid(lo: f64, hi: f64, points: usize) -> Vec<f64> {
    assert!(points >= 2 && lo > 0.0 && hi > lo);
    let (log_lo, log_hi) = (lo.log10(), hi.log10());
    (0..points)
        .map(|i| match i {
            0 => lo,
            i if i == points - 1 => hi,
            i => 10f64.powf(log_lo + (log_hi - log_lo) * i as f64 / (points - 1) as f64),
        })
        .collect()
}

fn validate(ds: &Dataset, config: &SweepConfig) -> Result<f64> {
    if config.beta_grid.is_empty() {
        return Err(Error::Config("beta grid must be non-empty".into()));
    }
    if config.beta_grid.iter().any(|b| b.is_nan() || *b <= 0.0) {
        return Err(Error::Config("beta values must be positive".into()));
    }
    if config.repetitions < 1 {
        return Err(Error::Config("repetitions must be at least 1".into()));
    }
    if config.strategies.is_empty() {
        return Err(Error::Config("need at least one strategy".into()));
    }
    if ds.examples.is_empty() {
        return Err(Error::Data("dataset has no examples".into()));
    }
    let expected = Task::for_loss(config.loss);
    if ds.task != expected {
        return Err(Error::Config(format!(
            "{} loss needs a {:?} dataset, got {:?}",
            config.loss, expected, ds.task
        )));
    }
    match config.g_override {
        Some(g) if g > 0.0 => Ok(g),
        Some(g) => Err(Error::Config(format!("G must be positive, got {g}"))),
        None if config.loss == LossKind::Squared => Err(Error::Config(
            "squared loss has unbounded gradients; pass an explicit G".into(),
        )),
        None if ds.unit_norm => Ok(1.0),
        None => Err(Error::Config(
            "dataset is not unit-normalized; pass an explicit G or preprocess first".into(),
        )),
    }
}

/// Runs the full grid. Cells execute in parallel; the returned order is
/// strategy name then ascending β, independent of scheduling.
pub fn run_sweep(ds: &Dataset, config: &SweepConfig) -> Result<Vec<SweepCell>> {
    let g_bound = validate(ds, config)?;

    let mut jobs: Vec<(Strategy, f64)> = Vec::new();
    for strategy in &config.strategies {
        for beta in &config.beta_grid {
            jobs.push((*strategy, *beta));
        }
    }

    let mut cells = jobs
        .into_par_iter()
        .map(|(strategy, beta)| -> Result<SweepCell> {
            let mut per_rep_final = Vec::with_capacity(config.repetitions);
            for rep in 0..config.repetitions {
                let stream = shuffled_stream(ds, config.base_seed + rep as u64);
                let losses = stream
                    .iter()
                    .map(|ex| ex.to_loss(config.loss))
                    .collect::<Result<Vec<_>>>()?;
                let schedule = LambdaSchedule::new(g_bound, beta)?;
                let mut learner = Learner::new(ds.dimension, strategy, schedule);
                let report = learner.run(&losses)?;
                if strategy.guarantees_improvement() {
                    debug_assert!(
                        report.per_round.iter().all(|d| d.delta >= -1e-9),
                        "improvement ledger violated inside a sweep cell"
                    );
                }
                per_rep_final.push(report.final_averaged_loss());
            }
            let n = per_rep_final.len() as f64;
            let mean = per_rep_final.iter().sum::<f64>() / n;
            let ci_halfwidth = if per_rep_final.len() < 2 {
                0.0
            } else {
                let var = per_rep_final
                    .iter()
                    .map(|v| (v - mean) * (v - mean))
                    .sum::<f64>()
                    / (n - 1.0);
                1.96 * var.sqrt() / n.sqrt()
            };
            Ok(SweepCell {
                strategy,
                beta,
                mean_final_averaged_loss: mean,
                ci_halfwidth,
                per_rep_final,
            })
        })
        .collect::<Result<Vec<_>>>()?;

    cells.sort_by(|a, b| {
        a.strategy
            .to_string()
            .cmp(&b.strategy.to_string())
            .then(a.beta.total_cmp(&b.beta))
    });
    Ok(cells)
}

/// Writes `strategy,beta,mean_avg_loss,ci95,reps` rows sorted by strategy
/// name then ascending β, with β in 6-significant-digit scientific notation.
pub fn write_csv(cells: &[SweepCell], out: &mut impl Write) -> Result<()> {
    let mut sorted: Vec<&SweepCell> = cells.iter().collect();
    sorted.sort_by(|a, b| {
        a.strategy
            .to_string()
            .cmp(&b.strategy.to_string())
            .then(a.beta.total_cmp(&b.beta))
    });
    writeln!(out, "strategy,beta,mean_avg_loss,ci95,reps")?;
    for cell in sorted {
        writeln!(
            out,
            "{},{:.5e},{},{},{}",
            cell.strategy,
            cell.beta,
            cell.mean_final_averaged_loss,
            cell.ci_halfwidth,
            cell.per_rep_final.len()
        )?;
    }
    Ok(())
}

/// [`write_csv`] to a file path.
pub fn emit_csv(cells: &[SweepCell], path: impl AsRef<Path>) -> Result<()> {
    let mut file = std::fs::File::create(path)?;
    write_csv(cells, &mut file)?;
    file.flush()?;
    Ok(())
}
