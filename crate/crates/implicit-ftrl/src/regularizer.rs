//! The quadratic regularizer ψ_λ(x) = (λ/2)‖x‖², its conjugate, the
//! per-round progress term γ, and the adaptive λ schedule.
//!
//! The schedule keeps λ one rotation ahead: during round t both λ_t and
//! λ_{t+1} are already fixed, so no update in that round can feed back into
//! the regularizer weight it is being scored under. Concretely
//! λ_t = (G·β + Σ_{i ≤ t−2} max(γ_i, 0)) / β², with λ_1 = λ_2 = G/β.

use crate::error::{Error, Result};
use crate::losses::RoundLoss;
use crate::sparse::dense_dist_sq;

/// ψ_λ(x) = (λ/2)‖x‖².
pub fn psi_value(lambda: f64, x: &[f64]) -> f64 {
    debug_assert!(lambda > 0.0);
    0.5 * lambda * x.iter().map(|v| v * v).sum::<f64>()
}

/// ψ*_λ(θ) = ‖θ‖²/(2λ) on an unconstrained domain.
pub fn psi_conjugate(lambda: f64, theta: &[f64]) -> f64 {
    debug_assert!(lambda > 0.0);
    theta.iter().map(|v| v * v).sum::<f64>() / (2.0 * lambda)
}

/// ∇ψ*_λ(θ) = θ/λ, the argmax of ⟨θ, x⟩ − ψ_λ(x).
pub fn psi_conjugate_grad(lambda: f64, theta: &[f64]) -> Vec<f64> {
    debug_assert!(lambda > 0.0);
    theta.iter().map(|v| v / lambda).collect()
}

/// Progress term γ = ℓ(x_t) − ℓ(x_next) − (λ_t/2)‖x_next − x_t‖².
pub fn gamma(loss: &RoundLoss, x_t: &[f64], x_next: &[f64], lambda_t: f64) -> f64 {
    let p_t = loss.features.dot(x_t);
    let p_next = loss.features.dot(x_next);
    loss.value_at(p_t) - loss.value_at(p_next) - 0.5 * lambda_t * dense_dist_sq(x_next, x_t)
}

/// Adaptive regularizer weights driven by the clamped γ increments.
///
/// `advance` is called once per round with that round's γ; it rotates
/// λ_current ← λ_next and folds max(γ, 0)/β² into the new λ_next. Exact
/// proximal updates have γ ≥ 0 by optimality; the clamp keeps the sequence
/// non-decreasing under the other strategies as well.
#[derive(Debug, Clone, Copy)]
pub struct LambdaSchedule {
    beta: f64,
    g_bound: f64,
    lambda_current: f64,
    lambda_next: f64,
    /// Σ_{i ≤ t−2} max(γ_i, 0): everything already inside λ_current.
    gamma_accumulator: f64,
    /// γ_{t−1}, the increment most recently folded into λ_next.
    pending_gamma: f64,
    frozen: bool,
}

impl LambdaSchedule {
    /// Fresh schedule with λ_1 = λ_2 = G/β.
    pub fn new(g_bound: f64, beta: f64) -> Result<Self> {
        if !beta.is_finite() || beta <= 0.0 {
            return Err(Error::Config(format!("beta must be positive, got {beta}")));
        }
        if !g_bound.is_finite() || g_bound <= 0.0 {
            return Err(Error::Config(format!(
                "gradient bound G must be positive, got {g_bound}"
            )));
        }
        let lambda = g_bound / beta;
        Ok(Self {
            beta,
            g_bound,
            lambda_current: lambda,
            lambda_next: lambda,
            gamma_accumulator: 0.0,
            pending_gamma: 0.0,
            frozen: false,
        })
    }

    /// Frozen schedule: λ_t = λ for every t, `advance` only records γ.
    pub fn constant(lambda: f64) -> Result<Self> {
        if !lambda.is_finite() || lambda <= 0.0 {
            return Err(Error::Config(format!(
                "lambda must be positive, got {lambda}"
            )));
        }
        Ok(Self {
            beta: 1.0,
            g_bound: lambda,
            lambda_current: lambda,
            lambda_next: lambda,
            gamma_accumulator: 0.0,
            pending_gamma: 0.0,
            frozen: true,
        })
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn g_bound(&self) -> f64 {
        self.g_bound
    }

    /// λ_t, the weight of the regularizer currently in force.
    pub fn lambda_current(&self) -> f64 {
        self.lambda_current
    }

    /// λ_{t+1}; fixed before the current round's dual vector is chosen.
    pub fn lambda_next(&self) -> f64 {
        self.lambda_next
    }

    pub fn gamma_accumulator(&self) -> f64 {
        self.gamma_accumulator
    }

    pub fn pending_gamma(&self) -> f64 {
        self.pending_gamma
    }

    pub fn is_frozen(&self) -> bool {
        self.frozen
    }

    /// Rotates the pair (λ_t, λ_{t+1}) → (λ_{t+1}, λ_{t+1} + max(γ_t, 0)/β²).
    pub fn advance(&mut self, gamma_t: f64) {
        if self.frozen {
            self.pending_gamma = gamma_t;
            return;
        }
        self.gamma_accumulator += self.pending_gamma.max(0.0);
        self.lambda_current = self.lambda_next;
        self.lambda_next += gamma_t.max(0.0) / (self.beta * self.beta);
        self.pending_gamma = gamma_t;
    }
}
