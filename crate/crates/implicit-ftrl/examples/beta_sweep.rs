//! A small beta sweep over a synthetic classification set, printing the CSV
//! that `ftrl-bench` would write.

use implicit_ftrl::bench::{run_sweep, write_csv, SweepConfig};
use implicit_ftrl::data_io::{preprocess, Dataset, Example, Task};
use implicit_ftrl::{LossKind, SparseVector, Strategy};
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

fn main() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let examples: Vec<Example> = (0..120)
        .map(|_| {
            let entries: Vec<(usize, f64)> = (0..4)
                .map(|i| (i, rng.random_range(-1.0_f64..1.0)))
                .collect();
            let signal = entries[0].1 + 0.5 * entries[1].1;
            Example {
                features: SparseVector::new(entries).unwrap(),
                label: if signal + rng.random_range(-0.4..0.4) > 0.0 { 1.0 } else { -1.0 },
            }
        })
        .collect();
    let dataset = preprocess(&Dataset {
        examples,
        dimension: 4,
        task: Task::Classification,
        unit_norm: false,
    })
    .unwrap();

    let config = SweepConfig {
        loss: LossKind::Hinge,
        strategies: vec![
            Strategy::Linear,
            Strategy::AProxHPrime,
            Strategy::TwoStepHPrime,
            Strategy::ProximalH,
        ],
        beta_grid: vec![0.01, 0.1, 1.0, 10.0, 100.0],
        repetitions: 5,
        base_seed: 0,
        g_override: None,
    };

    let cells = run_sweep(&dataset, &config).unwrap();
    let mut csv = Vec::new();
    write_csv(&cells, &mut csv).unwrap();
    print!("{}", String::from_utf8(csv).unwrap());

    let best = cells
        .iter()
        .min_by(|a, b| a.mean_final_averaged_loss.total_cmp(&b.mean_final_averaged_loss))
        .unwrap();
    println!(
        "\nbest cell: {} at beta {:.3} (mean averaged loss {:.4} +- {:.4})",
        best.strategy, best.beta, best.mean_final_averaged_loss, best.ci_halfwidth
    );
}
