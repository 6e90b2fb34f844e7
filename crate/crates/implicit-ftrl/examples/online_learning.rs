//! One online pass: per-round predictions, losses, progress, and the
//! improvement ledger of a proximal learner on a toy hinge stream.

use implicit_ftrl::{LambdaSchedule, Learner, LossKind, RoundLoss, SparseVector, Strategy};
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

fn main() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let losses: Vec<RoundLoss> = (0..12)
        .map(|_| {
            let raw = [
                rng.random_range(-1.0_f64..1.0),
                rng.random_range(-1.0..1.0),
                1.0, // bias
            ];
            let norm = raw.iter().map(|v| v * v).sum::<f64>().sqrt();
            let features =
                SparseVector::new(raw.iter().enumerate().map(|(i, v)| (i, v / norm)).collect())
                    .unwrap();
            let label = if rng.random_bool(0.5) { 1.0 } else { -1.0 };
            RoundLoss::new(LossKind::Hinge, features, label).unwrap()
        })
        .collect();

    let schedule = LambdaSchedule::new(1.0, 1.0).unwrap();
    let mut learner = Learner::new(3, Strategy::ProximalH, schedule);

    println!("round   loss    gamma    delta   alpha_z  lambda_t");
    for loss in &losses {
        let diag = learner.observe(loss).unwrap();
        println!(
            "{:>5}  {:>5.3}  {:>7.4}  {:>7.4}  {:>7.4}  {:>7.4}",
            diag.round, diag.loss_value, diag.gamma, diag.delta, diag.alpha_z, diag.lambda_current
        );
    }

    let x = learner.predict();
    println!("\nfinal iterate: {x:?}");
    println!(
        "dual state theta = lambda * x: {:?}",
        learner.dual_state().unwrap()
    );
}
