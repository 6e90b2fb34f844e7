//! Tour of the four loss families: values, subgradients, conjugates,
//! proximal steps, and the truncated linear model.

use implicit_ftrl::{DualCoefficient, LossKind, RoundLoss, SparseVector};

fn main() {
    let kinds = [
        (LossKind::Hinge, 1.0),
        (LossKind::Logistic, 1.0),
        (LossKind::Absolute, 0.5),
        (LossKind::Squared, 0.5),
    ];

    let features = SparseVector::new(vec![(0, 0.6), (1, 0.8)]).unwrap();
    let x = vec![0.3, -0.4];

    println!("loss values, subgradient coefficients, and prox steps at x = {x:?}");
    for (kind, label) in kinds {
        let loss = RoundLoss::new(kind, features.clone(), label).unwrap();
        let value = loss.value(&x).unwrap();
        let alpha_g = loss.subgradient(&x).unwrap();
        let prox = loss.prox(&x, 1.0).unwrap();
        let after = loss.value(&prox).unwrap();
        println!(
            "  {kind:<8} y={label:>4}: loss {value:.4}, alpha_g {:+.4}, prox -> {:?} (loss {after:.4})",
            alpha_g.value(),
            prox.iter().map(|v| (v * 1e4).round() / 1e4).collect::<Vec<_>>(),
        );
    }

    // Fenchel-Young: value + conjugate >= alpha * prediction, with equality
    // exactly at subgradient coefficients
    let loss = RoundLoss::new(LossKind::Logistic, features.clone(), 1.0).unwrap();
    let p = loss.features.dot(&x);
    println!("\nFenchel-Young for the logistic loss at prediction {p:.4}:");
    for alpha in [-0.9, -0.5, -0.1] {
        let lhs = loss.value(&x).unwrap() + loss.conjugate(DualCoefficient(alpha));
        println!("  alpha {alpha:+.2}: value + conjugate = {lhs:.6} >= alpha*p = {:.6}", alpha * p);
    }
    let tight = loss.subgradient(&x).unwrap();
    let lhs = loss.value(&x).unwrap() + loss.conjugate(tight);
    println!(
        "  at the subgradient {:+.4}: {lhs:.10} == {:.10}",
        tight.value(),
        tight.value() * p
    );

    // the truncated linear model minorizes the loss and agrees at the anchor
    let hinge = RoundLoss::new(LossKind::Hinge, features, 1.0).unwrap();
    let g = hinge.subgradient(&x).unwrap();
    println!("\ntruncated linear model of the hinge anchored at x:");
    for probe in [vec![0.3, -0.4], vec![1.0, 1.0], vec![-1.0, 0.0]] {
        println!(
            "  at {probe:?}: model {:.4} <= loss {:.4}",
            hinge.truncated_value(&x, g, &probe).unwrap(),
            hinge.value(&probe).unwrap()
        );
    }
}
