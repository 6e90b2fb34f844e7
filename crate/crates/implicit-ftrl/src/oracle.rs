//! Brute-force verifiers kept deliberately independent of the closed-form
//! update paths: a 1-D search for the dual objective minimizer, a grid check
//! for proximal outputs, and a subgradient-descent comparator for regret.

use crate::error::{Error, Result};
use crate::losses::{DualCoefficient, LossKind, RoundLoss};
use crate::strategies::h_value_from_parts;

/// Golden-section minimizer over a fixed bracket.
#[derive(Debug, Clone, Copy)]
pub struct BracketSearch {
    pub lo: f64,
    pub hi: f64,
    pub tolerance: f64,
    pub max_iterations: usize,
}

impl BracketSearch {
    pub fn new(lo: f64, hi: f64, tolerance: f64) -> Result<Self> {
        if lo.is_nan() || hi.is_nan() || lo >= hi {
            return Err(Error::InvalidInput(format!(
                "bracket requires lo < hi, got [{lo}, {hi}]"
            )));
        }
        if tolerance.is_nan() || tolerance <= 0.0 {
            return Err(Error::InvalidInput(format!(
                "tolerance must be positive, got {tolerance}"
            )));
        }
        Ok(Self {
            lo,
            hi,
            tolerance,
            max_iterations: 500,
        })
    }

    /// Minimizes a unimodal `f` on [lo, hi] to within `tolerance` in x.
    pub fn minimize(&self, f: impl Fn(f64) -> f64) -> f64 {
        const INV_PHI: f64 = 0.618_033_988_749_894_9;
        let mut lo = self.lo;
        let mut hi = self.hi;
        let mut a = hi - INV_PHI * (hi - lo);
        let mut b = lo + INV_PHI * (hi - lo);
        let mut fa = f(a);
        let mut fb = f(b);
        let mut iterations = 0;
        while hi - lo > self.tolerance && iterations < self.max_iterations {
            if fa <= fb {
                hi = b;
                b = a;
                fb = fa;
                a = hi - INV_PHI * (hi - lo);
                fa = f(a);
            } else {
                lo = a;
                a = b;
                fa = fb;
                b = lo + INV_PHI * (hi - lo);
                fb = f(b);
            }
            iterations += 1;
        }
        0.5 * (lo + hi)
    }
}

const GRID_SEED_POINTS: usize = 1024;
const SEARCH_TOLERANCE: f64 = 1e-8;

/// Minimizes α ↦ ‖θ − α·s‖²/(2λ) + φ*(α) by a grid seed plus golden-section
/// refinement over the conjugate domain. The objective is convex in α, so the
/// refined local answer is global.
pub fn argmin_h_1d(theta: &[f64], lambda: f64, loss: &RoundLoss) -> DualCoefficient {
    let theta_norm_sq: f64 = theta.iter().map(|v| v * v).sum();
    let theta_dot_s = loss.features.dot(theta);
    let s_norm_sq = loss.features.norm_sq();
    let objective = |alpha: f64| {
        h_value_from_parts(
            theta_norm_sq,
            theta_dot_s,
            s_norm_sq,
            lambda,
            loss,
            DualCoefficient(alpha),
        )
    };

    let (lo, hi) = match loss.kind {
        // α = −c·y over c ∈ [0, 1]
        LossKind::Hinge | LossKind::Logistic => {
            if loss.label > 0.0 {
                (-1.0, 0.0)
            } else {
                (0.0, 1.0)
            }
        }
        LossKind::Absolute => (-1.0, 1.0),
        LossKind::Squared => {
            // the minimizer sits between 0 and the subgradient coefficient;
            // pad generously so a clipped interval never excludes it
            let alpha_g = loss.subgradient_at(theta_dot_s / lambda).0;
            let pad = 1.0 + 10.0 * theta_norm_sq.sqrt() * lambda;
            (alpha_g.min(0.0) - pad, alpha_g.max(0.0) + pad)
        }
    };

    let step = (hi - lo) / GRID_SEED_POINTS as f64;
    let mut best_index = 0;
    let mut best_value = f64::INFINITY;
    for i in 0..=GRID_SEED_POINTS {
        let alpha = lo + step * i as f64;
        let value = objective(alpha);
        if value < best_value {
            best_value = value;
            best_index = i;
        }
    }
    let refine_lo = (lo + step * best_index.saturating_sub(1) as f64).max(lo);
    let refine_hi = (lo + step * (best_index + 1) as f64).min(hi);
    let search = BracketSearch::new(refine_lo, refine_hi, SEARCH_TOLERANCE)
        .expect("non-degenerate refinement bracket");
    let refined = search.minimize(objective);
    // boundary minimizers beat any interior point within the x-tolerance,
    // so let the exact endpoints compete
    let best = [refined, lo, hi]
        .into_iter()
        .min_by(|a, b| objective(*a).total_cmp(&objective(*b)))
        .expect("non-empty candidate set");
    DualCoefficient(best)
}

/// Default iteration budget for [`offline_comparator`].
pub const COMPARATOR_ITERATIONS: usize = 100_000;

/// Approximately minimizes u ↦ Σ_t ℓ_t(u) by subgradient descent with
/// stepsize `step_scale`/√k on the mean objective, tracking the best of the
/// running iterate and its running average. Stops early only when the
/// objective hits its global lower bound 0.
pub fn offline_comparator_from(
    losses: &[RoundLoss],
    dim: usize,
    start: &[f64],
    iterations: usize,
    step_scale: f64,
) -> Vec<f64> {
    assert!(!losses.is_empty(), "comparator needs at least one loss");
    let count = losses.len() as f64;
    let objective = |u: &[f64]| -> f64 {
        losses
            .iter()
            .map(|l| l.value_at(l.features.dot(u)))
            .sum::<f64>()
            / count
    };

    let mut u = start.to_vec();
    let mut u_avg = u.clone();
    let mut best = u.clone();
    let mut best_value = objective(&u);
    let mut grad = vec![0.0; dim];

    for k in 1..=iterations {
        if best_value == 0.0 {
            break;
        }
        grad.iter_mut().for_each(|g| *g = 0.0);
        for loss in losses {
            let alpha = loss.subgradient_at(loss.features.dot(&u));
            loss.features.add_scaled_into(alpha.0 / count, &mut grad);
        }
        let step = step_scale / (k as f64).sqrt();
        for (ui, gi) in u.iter_mut().zip(&grad) {
            *ui -= step * gi;
        }
        let kf = k as f64;
        for (ai, ui) in u_avg.iter_mut().zip(&u) {
            *ai += (ui - *ai) / (kf + 1.0);
        }
        for candidate in [&u, &u_avg] {
            let value = objective(candidate);
            if value < best_value {
                best_value = value;
                best.copy_from_slice(candidate);
            }
        }
    }
    best
}

/// [`offline_comparator_from`] started at the origin with the default budget.
pub fn offline_comparator(losses: &[RoundLoss], dim: usize) -> Vec<f64> {
    offline_comparator_from(losses, dim, &vec![0.0; dim], COMPARATOR_ITERATIONS, 1.0)
}

const PROX_GRID_BUDGET: usize = 10_000;
const PROX_GRID_SLACK: f64 = 1e-7;

/// Checks a candidate prox output against every point of a lattice covering a
/// ball of radius 2(‖y_point‖ + η‖s‖) around y_point. Only for dimension ≤ 3.
pub fn grid_prox_check(loss: &RoundLoss, y_point: &[f64], eta: f64, candidate: &[f64]) -> bool {
    let dim = y_point.len();
    assert!((1..=3).contains(&dim), "grid check supports dimensions 1..=3");
    assert_eq!(candidate.len(), dim);

    let objective = |x: &[f64]| -> f64 {
        let diff: f64 = x
            .iter()
            .zip(y_point)
            .map(|(a, b)| (a - b) * (a - b))
            .sum();
        0.5 * diff + eta * loss.value_at(loss.features.dot(x))
    };
    let candidate_value = objective(candidate);

    let norm: f64 = y_point.iter().map(|v| v * v).sum::<f64>().sqrt();
    let radius = 2.0 * (norm + eta * loss.features.norm());
    let per_axis = (PROX_GRID_BUDGET as f64).powf(1.0 / dim as f64).floor() as usize;
    let per_axis = per_axis.max(2);

    let mut point = vec![0.0; dim];
    let mut index = vec![0usize; dim];
    loop {
        for d in 0..dim {
            let frac = index[d] as f64 / (per_axis - 1) as f64;
            point[d] = y_point[d] - radius + 2.0 * radius * frac;
        }
        if candidate_value > objective(&point) + PROX_GRID_SLACK {
            return false;
        }
        // odometer increment
        let mut d = 0;
        loop {
            index[d] += 1;
            if index[d] < per_axis {
                break;
            }
            index[d] = 0;
            d += 1;
            if d == dim {
                return true;
            }
        }
    }
}
