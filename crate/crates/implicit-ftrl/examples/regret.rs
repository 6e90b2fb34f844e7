//! Regret accounting against a brute-force offline comparator, plus the
//! 1-D oracle certifying the proximal rule's dual choice.

use implicit_ftrl::learner::regret_against;
use implicit_ftrl::oracle::{argmin_h_1d, offline_comparator};
use implicit_ftrl::strategies::{step, DualState};
use implicit_ftrl::{LambdaSchedule, Learner, LossKind, RoundLoss, SparseVector, Strategy};
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

fn main() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let losses: Vec<RoundLoss> = (0..200)
        .map(|_| {
            let raw = [rng.random_range(-1.0_f64..1.0), rng.random_range(-1.0..1.0), 1.0];
            let norm = raw.iter().map(|v| v * v).sum::<f64>().sqrt();
            let features =
                SparseVector::new(raw.iter().enumerate().map(|(i, v)| (i, v / norm)).collect())
                    .unwrap();
            // noisy linear concept
            let label = if raw[0] - 0.4 * raw[1] + rng.random_range(-0.3..0.3) > 0.0 {
                1.0
            } else {
                -1.0
            };
            RoundLoss::new(LossKind::Hinge, features, label).unwrap()
        })
        .collect();

    let comparator = offline_comparator(&losses, 3);
    let comparator_loss: f64 = losses.iter().map(|l| l.value(&comparator).unwrap()).sum();
    println!("offline comparator u = {comparator:?}");
    println!("comparator cumulative loss: {comparator_loss:.4}\n");

    for strategy in [Strategy::Linear, Strategy::TwoStepHPrime, Strategy::AProxHPrime] {
        let mut learner = Learner::new(3, strategy, LambdaSchedule::new(1.0, 1.0).unwrap());
        let mut report = learner.run(&losses).unwrap();
        let regret = regret_against(&report, &losses, &comparator).unwrap();
        report.record_regret("offline-subgradient-descent", regret);
        println!(
            "{:<16} cumulative {:>8.4}  averaged {:>7.4}  regret vs u {:>8.4}",
            strategy.to_string(),
            report.cumulative_loss,
            report.final_averaged_loss(),
            report.regret_vs["offline-subgradient-descent"],
        );
    }

    // the 1-D oracle agrees with the closed-form proximal dual choice
    let loss = &losses[0];
    let theta = vec![0.4, -0.2, 0.1];
    let state = DualState {
        theta: &theta,
        lambda_current: 1.0,
        lambda_next: 1.2,
    };
    let closed = step(Strategy::ProximalH, &state, loss).unwrap().alpha_z;
    let searched = argmin_h_1d(&theta, 1.2, loss);
    println!(
        "\nproximal dual coefficient {:+.8} vs golden-section oracle {:+.8}",
        closed.value(),
        searched.value()
    );
}
