//! Rules for choosing the per-round dual vector z = α·s.
//!
//! Each rule scores candidate duals with one of two objectives,
//!
//! ```text
//! H (z) = ψ*_{λ_next}(θ − z) + ℓ*(z)        (next regularizer weight)
//! H'(z) = ψ*_{λ_curr}(θ − z) + ℓ*(z)        (current regularizer weight)
//! ```
//!
//! and every rule except plain linearization is built to never score worse
//! than the subgradient g: the resulting improvement δ = H(g) − H(z) ≥ 0
//! tightens the regret ledger round by round.
//!
//! * `Linear` charges g itself (δ = 0 by construction).
//! * `ProximalH` / `ProximalHPrime` minimize H / H' exactly via the proximal
//!   operator of the loss.
//! * `TwoStepH` / `TwoStepHPrime` take the subgradient after one tentative
//!   linearized step; the improvement guarantee needs the loss to be smooth
//!   with λ at least its curvature constant.
//! * `AProxH` / `AProxHPrime` minimize the objective with the loss replaced
//!   by its truncated linear model, which has a closed-form answer.
//! * `ImplicitOmd` is the mirror-descent baseline: it proxes the primal
//!   iterate directly and keeps no dual state.

use crate::error::{Error, Result};
use crate::losses::{DualCoefficient, RoundLoss};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Strategy {
    Linear,
    ProximalH,
    ProximalHPrime,
    TwoStepH,
    TwoStepHPrime,
    AProxH,
    AProxHPrime,
    ImplicitOmd,
}

impl Strategy {
    pub const ALL: [Strategy; 8] = [
        Strategy::Linear,
        Strategy::ProximalH,
        Strategy::ProximalHPrime,
        Strategy::TwoStepH,
        Strategy::TwoStepHPrime,
        Strategy::AProxH,
        Strategy::AProxHPrime,
        Strategy::ImplicitOmd,
    ];

    /// True when the rule is scored against λ_next (the H objective); false
    /// for the H' family and the OMD baseline, which live at λ_current.
    pub fn scores_against_next_lambda(self) -> bool {
        matches!(
            self,
            Strategy::Linear | Strategy::ProximalH | Strategy::TwoStepH | Strategy::AProxH
        )
    }

    /// Strategies whose improvement δ ≥ 0 holds unconditionally.
    pub fn guarantees_improvement(self) -> bool {
        matches!(
            self,
            Strategy::Linear
                | Strategy::ProximalH
                | Strategy::ProximalHPrime
                | Strategy::AProxH
                | Strategy::AProxHPrime
                | Strategy::ImplicitOmd
        )
    }
}

impl std::str::FromStr for Strategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "linear" => Ok(Strategy::Linear),
            "proximal-h" => Ok(Strategy::ProximalH),
            "proximal-hprime" => Ok(Strategy::ProximalHPrime),
            "twostep-h" => Ok(Strategy::TwoStepH),
            "twostep-hprime" => Ok(Strategy::TwoStepHPrime),
            "aprox-h" => Ok(Strategy::AProxH),
            "aprox-hprime" => Ok(Strategy::AProxHPrime),
            "implicit-omd" => Ok(Strategy::ImplicitOmd),
            other => Err(Error::Config(format!("unknown strategy '{other}'"))),
        }
    }
}

impl std::fmt::Display for Strategy {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let name = match self {
            Strategy::Linear => "linear",
            Strategy::ProximalH => "proximal-h",
            Strategy::ProximalHPrime => "proximal-hprime",
            Strategy::TwoStepH => "twostep-h",
            Strategy::TwoStepHPrime => "twostep-hprime",
            Strategy::AProxH => "aprox-h",
            Strategy::AProxHPrime => "aprox-hprime",
            Strategy::ImplicitOmd => "implicit-omd",
        };
        f.write_str(name)
    }
}

/// View of the FTRL dual state a strategy needs for one round.
#[derive(Debug, Clone, Copy)]
pub struct DualState<'a> {
    /// θ_t, the negated sum of past dual vectors.
    pub theta: &'a [f64],
    /// λ_t.
    pub lambda_current: f64,
    /// λ_{t+1}; already fixed, never a function of this round's z.
    pub lambda_next: f64,
}

/// Outcome of one strategy invocation.
#[derive(Debug, Clone)]
pub struct StepResult {
    pub alpha_z: DualCoefficient,
    /// Next iterate (θ − z)/λ_next.
    pub x_next: Vec<f64>,
    /// Objective at z, under the λ the strategy is scored against.
    pub h_at_z: f64,
    /// Objective at the subgradient g, under the same λ.
    pub h_at_g: f64,
    /// h_at_g − h_at_z.
    pub delta: f64,
}

/// H-style objective ‖θ − α·s‖²/(2λ) + φ*(α); +∞ outside the conjugate domain.
pub fn h_value(theta: &[f64], lambda: f64, loss: &RoundLoss, alpha: DualCoefficient) -> f64 {
    let theta_norm_sq: f64 = theta.iter().map(|v| v * v).sum();
    let theta_dot_s = loss.features.dot(theta);
    let s_norm_sq = loss.features.norm_sq();
    h_value_from_parts(theta_norm_sq, theta_dot_s, s_norm_sq, lambda, loss, alpha)
}

/// [`h_value`] with the quadratic pieces precomputed.
pub fn h_value_from_parts(
    theta_norm_sq: f64,
    theta_dot_s: f64,
    s_norm_sq: f64,
    lambda: f64,
    loss: &RoundLoss,
    alpha: DualCoefficient,
) -> f64 {
    let a = alpha.0;
    let quad = (theta_norm_sq - 2.0 * a * theta_dot_s + a * a * s_norm_sq) / (2.0 * lambda);
    quad + loss.conjugate(alpha)
}

/// Dispatches a dual-state strategy. `ImplicitOmd` keeps no dual state and is
/// driven through [`step_implicit_omd`] instead.
pub fn step(strategy: Strategy, state: &DualState<'_>, loss: &RoundLoss) -> Result<StepResult> {
    loss.features.check_fits(state.theta.len())?;
    let alpha_z = match strategy {
        Strategy::Linear => step_alpha_linear(state, loss),
        Strategy::ProximalH => step_alpha_proximal_h(state, loss)?,
        Strategy::ProximalHPrime => step_alpha_proximal_hprime(state, loss)?,
        Strategy::TwoStepH => step_alpha_two_step(state, loss, true),
        Strategy::TwoStepHPrime => step_alpha_two_step(state, loss, false),
        Strategy::AProxH => step_alpha_aprox(state, loss, true),
        Strategy::AProxHPrime => step_alpha_aprox(state, loss, false),
        Strategy::ImplicitOmd => {
            return Err(Error::Config(
                "implicit-omd keeps a primal iterate; use step_implicit_omd".into(),
            ))
        }
    };
    Ok(finish_step(strategy, state, loss, alpha_z))
}

fn finish_step(
    strategy: Strategy,
    state: &DualState<'_>,
    loss: &RoundLoss,
    alpha_z: DualCoefficient,
) -> StepResult {
    let lambda = if strategy.scores_against_next_lambda() {
        state.lambda_next
    } else {
        state.lambda_current
    };
    let theta_norm_sq: f64 = state.theta.iter().map(|v| v * v).sum();
    let theta_dot_s = loss.features.dot(state.theta);
    let s_norm_sq = loss.features.norm_sq();
    let p_t = theta_dot_s / state.lambda_current;
    let alpha_g = loss.subgradient_at(p_t);
    let h_at_z = h_value_from_parts(theta_norm_sq, theta_dot_s, s_norm_sq, lambda, loss, alpha_z);
    let h_at_g = h_value_from_parts(theta_norm_sq, theta_dot_s, s_norm_sq, lambda, loss, alpha_g);
    let mut x_next: Vec<f64> = state.theta.iter().map(|v| v / state.lambda_next).collect();
    loss.features
        .add_scaled_into(-alpha_z.0 / state.lambda_next, &mut x_next);
    StepResult {
        alpha_z,
        x_next,
        h_at_z,
        h_at_g,
        delta: h_at_g - h_at_z,
    }
}

/// z = g, the plain linearized charge.
pub fn step_linear(state: &DualState<'_>, loss: &RoundLoss) -> Result<StepResult> {
    step(Strategy::Linear, state, loss)
}

/// Exact H minimizer: next iterate is Prox_{ℓ/λ_next}(λ_curr·x_t/λ_next).
pub fn step_proximal_h(state: &DualState<'_>, loss: &RoundLoss) -> Result<StepResult> {
    step(Strategy::ProximalH, state, loss)
}

/// Exact H' minimizer: next iterate is (λ_curr/λ_next)·Prox_{ℓ/λ_curr}(x_t).
pub fn step_proximal_hprime(state: &DualState<'_>, loss: &RoundLoss) -> Result<StepResult> {
    step(Strategy::ProximalHPrime, state, loss)
}

/// Subgradient after one tentative step: probe (θ − g)/λ_next for the H
/// variant, (θ − g)/λ_curr for the H' variant.
pub fn step_two_step(state: &DualState<'_>, loss: &RoundLoss, h_variant: bool) -> Result<StepResult> {
    let strategy = if h_variant {
        Strategy::TwoStepH
    } else {
        Strategy::TwoStepHPrime
    };
    step(strategy, state, loss)
}

/// Truncated-model minimizer with the closed-form clip of the dual scale.
pub fn step_aprox(state: &DualState<'_>, loss: &RoundLoss, h_variant: bool) -> Result<StepResult> {
    let strategy = if h_variant {
        Strategy::AProxH
    } else {
        Strategy::AProxHPrime
    };
    step(strategy, state, loss)
}

fn step_alpha_linear(state: &DualState<'_>, loss: &RoundLoss) -> DualCoefficient {
    let p_t = loss.features.dot(state.theta) / state.lambda_current;
    loss.subgradient_at(p_t)
}

fn step_alpha_proximal_h(state: &DualState<'_>, loss: &RoundLoss) -> Result<DualCoefficient> {
    // prox anchored at the shrunk point θ/λ_next, with step 1/λ_next
    let p_v = loss.features.dot(state.theta) / state.lambda_next;
    let c = loss.prox_coeff(p_v, 1.0 / state.lambda_next)?;
    Ok(DualCoefficient(-c * state.lambda_next))
}

fn step_alpha_proximal_hprime(state: &DualState<'_>, loss: &RoundLoss) -> Result<DualCoefficient> {
    // prox anchored at x_t with step 1/λ_curr; z = λ_curr(x_t − prox(x_t))
    let p_t = loss.features.dot(state.theta) / state.lambda_current;
    let c = loss.prox_coeff(p_t, 1.0 / state.lambda_current)?;
    Ok(DualCoefficient(-c * state.lambda_current))
}

fn step_alpha_two_step(
    state: &DualState<'_>,
    loss: &RoundLoss,
    h_variant: bool,
) -> DualCoefficient {
    let lambda = if h_variant {
        state.lambda_next
    } else {
        state.lambda_current
    };
    let theta_dot_s = loss.features.dot(state.theta);
    let s_norm_sq = loss.features.norm_sq();
    let p_t = theta_dot_s / state.lambda_current;
    let alpha_g = loss.subgradient_at(p_t);
    let p_probe = (theta_dot_s - alpha_g.0 * s_norm_sq) / lambda;
    loss.subgradient_at(p_probe)
}

fn step_alpha_aprox(state: &DualState<'_>, loss: &RoundLoss, h_variant: bool) -> DualCoefficient {
    let theta_dot_s = loss.features.dot(state.theta);
    let s_norm_sq = loss.features.norm_sq();
    let p_t = theta_dot_s / state.lambda_current;
    let alpha_g = loss.subgradient_at(p_t);
    if alpha_g.0 == 0.0 {
        // the truncated model is constant; charging nothing is the minimizer
        return DualCoefficient::ZERO;
    }
    let g_norm_sq = alpha_g.0 * alpha_g.0 * s_norm_sq;
    let scale = if h_variant {
        // minimize over the truncated model at λ_next: the model is evaluated
        // where the prox lands, i.e. at the shrunk point θ/λ_next
        let p_v = theta_dot_s / state.lambda_next;
        let model_at_v = loss.truncated_value_at(p_t, alpha_g, p_v);
        (state.lambda_next * model_at_v / g_norm_sq).min(1.0)
    } else {
        (state.lambda_current * loss.value_at(p_t) / g_norm_sq).min(1.0)
    };
    DualCoefficient(scale * alpha_g.0)
}

/// Implicit online mirror descent baseline: x_next = Prox_{ℓ/λ}(x_t).
pub fn step_implicit_omd(x_t: &[f64], loss: &RoundLoss, lambda_t: f64) -> Result<Vec<f64>> {
    if !lambda_t.is_finite() || lambda_t <= 0.0 {
        return Err(Error::Config(format!(
            "lambda must be positive, got {lambda_t}"
        )));
    }
    loss.prox(x_t, 1.0 / lambda_t)
}
