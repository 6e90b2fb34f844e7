//! Synthetic data generators shared by the integration suites.

#![allow(dead_code)]

use implicit_ftrl::data_io::{preprocess, Dataset, Example, Task};
use implicit_ftrl::losses::{LossKind, RoundLoss};
use implicit_ftrl::sparse::SparseVector;
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

/// Dense random features in [-1, 1]^d with uniformly random labels, then
/// bias-augmented and unit-normalized. Pure-noise labels keep the iterates
/// small, so hinge margins stay in the active region for the whole pass.
pub fn noisy_classification(n: usize, d: usize, seed: u64) -> Dataset {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let examples = (0..n)
        .map(|_| {
            let entries: Vec<(usize, f64)> =
                (0..d).map(|i| (i, rng.random_range(-1.0_f64..1.0))).collect();
            Example {
                features: SparseVector::new(entries).unwrap(),
                label: if rng.random_bool(0.5) { 1.0 } else { -1.0 },
            }
        })
        .collect();
    let raw = Dataset {
        examples,
        dimension: d,
        task: Task::Classification,
        unit_norm: false,
    };
    preprocess(&raw).unwrap()
}

/// Linearly separable two-class data whose separating component is squeezed
/// into a thin band of width `band`: every example sits close to the decision
/// boundary, so no finite pass learns it out completely.
pub fn band_separable_classification(n: usize, d: usize, band: f64, seed: u64) -> Dataset {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut direction: Vec<f64> = (0..d).map(|_| rng.random_range(-1.0_f64..1.0)).collect();
    let norm = direction.iter().map(|v| v * v).sum::<f64>().sqrt();
    direction.iter_mut().for_each(|v| *v /= norm);
    let mut examples = Vec::with_capacity(n);
    while examples.len() < n {
        let x: Vec<f64> = (0..d).map(|_| rng.random_range(-1.0_f64..1.0)).collect();
        let proj: f64 = x.iter().zip(&direction).map(|(a, b)| a * b).sum();
        let label = if rng.random_bool(0.5) { 1.0 } else { -1.0 };
        let target = label * band * rng.random_range(1.0..2.0);
        let x: Vec<f64> = x
            .iter()
            .zip(&direction)
            .map(|(v, u)| v - proj * u + target * u)
            .collect();
        if x.iter().map(|v| v * v).sum::<f64>().sqrt() < 1e-6 {
            continue;
        }
        examples.push(Example {
            features: SparseVector::new(x.into_iter().enumerate().collect()).unwrap(),
            label,
        });
    }
    let raw = Dataset {
        examples,
        dimension: d,
        task: Task::Classification,
        unit_norm: false,
    };
    preprocess(&raw).unwrap()
}

/// Regression data: dense features, labels uniform in [-1.5, 1.5],
/// bias-augmented and unit-normalized.
pub fn random_regression(n: usize, d: usize, seed: u64) -> Dataset {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let examples = (0..n)
        .map(|_| {
            let entries: Vec<(usize, f64)> =
                (0..d).map(|i| (i, rng.random_range(-1.0_f64..1.0))).collect();
            Example {
                features: SparseVector::new(entries).unwrap(),
                label: rng.random_range(-1.5..1.5),
            }
        })
        .collect();
    let raw = Dataset {
        examples,
        dimension: d,
        task: Task::Regression,
        unit_norm: false,
    };
    preprocess(&raw).unwrap()
}

/// Dataset matching the task of the loss kind.
pub fn dataset_for(kind: LossKind, n: usize, d: usize, seed: u64) -> Dataset {
    if kind.is_classification() {
        noisy_classification(n, d, seed)
    } else {
        random_regression(n, d, seed)
    }
}

/// Losses for one in-order pass over the dataset.
pub fn losses_for(ds: &Dataset, kind: LossKind) -> Vec<RoundLoss> {
    ds.examples
        .iter()
        .map(|ex| ex.to_loss(kind).unwrap())
        .collect()
}

/// A random single-round instance: loss, dual state θ, and the λ pair.
pub struct RandomInstance {
    pub loss: RoundLoss,
    pub theta: Vec<f64>,
    pub lambda_current: f64,
    pub lambda_next: f64,
}

pub fn random_instance(rng: &mut ChaCha8Rng, kind: LossKind, dim: usize) -> RandomInstance {
    let mut entries: Vec<(usize, f64)> = (0..dim)
        .map(|i| (i, rng.random_range(-1.0_f64..1.0)))
        .filter(|&(_, v)| v.abs() > 1e-2)
        .collect();
    if entries.is_empty() {
        entries.push((0, 1.0));
    }
    let features = SparseVector::new(entries).unwrap();
    let label = if kind.is_classification() {
        if rng.random_bool(0.5) {
            1.0
        } else {
            -1.0
        }
    } else {
        rng.random_range(-2.0_f64..2.0)
    };
    let loss = RoundLoss::new(kind, features, label).unwrap();
    let theta = (0..dim).map(|_| rng.random_range(-3.0_f64..3.0)).collect();
    let lambda_current: f64 = rng.random_range(0.3_f64..4.0);
    let lambda_next = lambda_current * rng.random_range(1.0_f64..1.5);
    RandomInstance {
        loss,
        theta,
        lambda_current,
        lambda_next,
    }
}

pub const ALL_KINDS: [LossKind; 4] = [
    LossKind::Hinge,
    LossKind::Logistic,
    LossKind::Absolute,
    LossKind::Squared,
];
