//! β-sweep benchmark driver over a LibSVM dataset.
//!
//! Exit codes: 0 success, 2 configuration error, 3 data error.

use std::fs::File;
use std::io::BufReader;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;

use implicit_ftrl::{
    bench, data_io, error::Error, LossKind, SweepConfig, Strategy, Task,
};

#[derive(Parser, Debug)]
#[command(
    name = "ftrl-bench",
    about = "Sweep β × strategy × repetition over a LibSVM dataset and emit a CSV of final averaged losses"
)]
struct Args {
    /// LibSVM-format dataset path, or "-" for standard input
    #[arg(long)]
    data: PathBuf,

    /// Loss kind: hinge | logistic | absolute | squared
    #[arg(long)]
    loss: String,

    /// Comma-separated strategies (linear, proximal-h, proximal-hprime,
    /// twostep-h, twostep-hprime, aprox-h, aprox-hprime, implicit-omd)
    #[arg(long, default_value = "linear,aprox-hprime,twostep-hprime,proximal-h")]
    strategies: String,

    /// "auto" for the per-loss default grid, or a comma-separated list
    #[arg(long, default_value = "auto")]
    betas: String,

    /// Repetitions per grid point (shuffled with seed, seed+1, ...)
    #[arg(long, default_value_t = 15)]
    reps: usize,

    /// Base shuffle seed
    #[arg(long, default_value_t = 0)]
    seed: u64,

    /// Gradient-norm bound for the schedule; required for squared loss
    #[arg(long = "G")]
    g_bound: Option<f64>,

    /// Output CSV path
    #[arg(long)]
    out: PathBuf,
}

const EXIT_CONFIG: u8 = 2;
const EXIT_DATA: u8 = 3;

fn exit_code_for(err: &Error) -> u8 {
    match err {
        Error::Config(_) | Error::InvalidInput(_) | Error::NonPositiveEta(_) => EXIT_CONFIG,
        _ => EXIT_DATA,
    }
}

fn fail(err: Error) -> ExitCode {
    eprintln!("error: {err}");
    ExitCode::from(exit_code_for(&err))
}

fn main() -> ExitCode {
    let args = Args::parse();

    let loss: LossKind = match args.loss.parse() {
        Ok(kind) => kind,
        Err(err) => return fail(err),
    };

    let strategies: Vec<Strategy> = match args
        .strategies
        .split(',')
        .filter(|s| !s.trim().is_empty())
        .map(str::parse)
        .collect()
    {
        Ok(list) => list,
        Err(err) => return fail(err),
    };

    let beta_grid: Vec<f64> = if args.betas.trim() == "auto" {
        bench::default_beta_grid(loss)
    } else {
        let parsed: Result<Vec<f64>, _> = args
            .betas
            .split(',')
            .filter(|s| !s.trim().is_empty())
            .map(|s| s.trim().parse::<f64>())
            .collect();
        match parsed {
            Ok(list) => list,
            Err(_) => {
                return fail(Error::Config(format!(
                    "--betas must be 'auto' or a comma-separated list of numbers, got '{}'",
                    args.betas
                )))
            }
        }
    };

    let task = Task::for_loss(loss);
    let parsed = if args.data.as_os_str() == "-" {
        data_io::parse_libsvm(std::io::stdin().lock(), task)
    } else {
        match File::open(&args.data) {
            Ok(f) => data_io::parse_libsvm(BufReader::new(f), task),
            Err(err) => return fail(Error::Data(format!("{}: {err}", args.data.display()))),
        }
    };
    let raw = match parsed {
        Ok(ds) => ds,
        Err(err) => return fail(err),
    };
    let dataset = match data_io::preprocess(&raw) {
        Ok(ds) => ds,
        Err(err) => return fail(err),
    };

    let config = SweepConfig {
        loss,
        strategies,
        beta_grid,
        repetitions: args.reps,
        base_seed: args.seed,
        g_override: args.g_bound,
    };

    let cells = match bench::run_sweep(&dataset, &config) {
        Ok(cells) => cells,
        Err(err) => return fail(err),
    };
    if let Err(err) = bench::emit_csv(&cells, &args.out) {
        return fail(err);
    }
    println!(
        "wrote {} cells ({} strategies x {} betas, {} reps) to {}",
        cells.len(),
        config.strategies.len(),
        config.beta_grid.len(),
        config.repetitions,
        args.out.display()
    );
    ExitCode::SUCCESS
}
