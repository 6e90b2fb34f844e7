//! How the adaptive regularizer weight reacts to beta, and the a-priori cap
//! it never exceeds.

use implicit_ftrl::{LambdaSchedule, Learner, LossKind, RoundLoss, SparseVector, Strategy};
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

fn main() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let losses: Vec<RoundLoss> = (0..300)
        .map(|_| {
            let raw = [rng.random_range(-1.0_f64..1.0), rng.random_range(-1.0..1.0), 1.0];
            let norm = raw.iter().map(|v| v * v).sum::<f64>().sqrt();
            let features =
                SparseVector::new(raw.iter().enumerate().map(|(i, v)| (i, v / norm)).collect())
                    .unwrap();
            RoundLoss::new(
                LossKind::Hinge,
                features,
                if rng.random_bool(0.5) { 1.0 } else { -1.0 },
            )
            .unwrap()
        })
        .collect();

    println!("lambda trajectory under proximal updates (G = 1):\n");
    println!("{:>8} {:>10} {:>10} {:>12} {:>12}", "beta", "lambda_1", "lambda_T+1", "cap", "slack");
    for beta in [0.1, 0.5, 1.0, 2.0, 10.0] {
        let mut learner = Learner::new(3, Strategy::ProximalH, LambdaSchedule::new(1.0, beta).unwrap());
        let mut grad_sq = 0.0;
        for loss in &losses {
            let diag = learner.observe(loss).unwrap();
            grad_sq += diag.gradient_norm * diag.gradient_norm;
        }
        let lambda_first = 1.0 / beta;
        let lambda_last = learner.schedule().lambda_current();
        // cap: G/beta + sqrt(5/(4 beta^2) * sum of squared gradient norms)
        let cap = 1.0 / beta + (5.0 / (4.0 * beta * beta) * grad_sq).sqrt();
        println!(
            "{:>8.2} {:>10.3} {:>10.3} {:>12.3} {:>12.3}",
            beta,
            lambda_first,
            lambda_last,
            cap,
            cap - lambda_last
        );
    }

    println!("\nsmall beta starts heavy and conservative; large beta starts light and");
    println!("lets the realized per-round progress grow the weight instead.");
}
