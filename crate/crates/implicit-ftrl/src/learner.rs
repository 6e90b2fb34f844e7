//! The per-round protocol: predict, receive a loss, charge a dual vector,
//! advance the regularizer schedule, and keep a diagnostics ledger.
//!
//! The dual state starts at θ = 0 and the prediction is always θ/λ_t, the
//! unconstrained minimizer of ψ_t(x) − ⟨θ, x⟩. The mirror-descent baseline
//! stores its primal iterate directly instead of a dual state.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::losses::{DualCoefficient, RoundLoss};
use crate::regularizer::{self, LambdaSchedule};
use crate::strategies::{self, DualState, Strategy};

/// One round's ledger entry.
///
/// `h_next_*` are the dual objective values under λ_{t+1}, `h_curr_*` under
/// λ_t; both are recorded every round. `delta` is h(g) − h(z) under the λ the
/// strategy is scored against.
#[derive(Debug, Clone)]
pub struct RoundDiagnostics {
    pub round: usize,
    pub loss_value: f64,
    pub gamma: f64,
    pub delta: f64,
    pub alpha_z: f64,
    pub alpha_g: f64,
    pub h_next_at_z: f64,
    pub h_next_at_g: f64,
    pub h_curr_at_z: f64,
    pub h_curr_at_g: f64,
    pub gradient_norm: f64,
    pub lambda_current: f64,
    pub lambda_next: f64,
}

/// Summary of an online pass.
#[derive(Debug, Clone, Default)]
pub struct RunReport {
    pub cumulative_loss: f64,
    /// Running means (1/t)Σ_{i≤t} ℓ_i(x_i).
    pub averaged_loss_series: Vec<f64>,
    /// Regret against named comparators, filled by the caller.
    pub regret_vs: BTreeMap<String, f64>,
    pub per_round: Vec<RoundDiagnostics>,
}

impl RunReport {
    pub fn final_averaged_loss(&self) -> f64 {
        self.averaged_loss_series.last().copied().unwrap_or(0.0)
    }

    pub fn record_regret(&mut self, comparator: impl Into<String>, regret: f64) {
        self.regret_vs.insert(comparator.into(), regret);
    }
}

/// Regret of a finished run against the fixed comparator u.
///
/// `losses` must be the exact sequence the report was produced on.
pub fn regret_against(report: &RunReport, losses: &[RoundLoss], u: &[f64]) -> Result<f64> {
    if report.per_round.len() != losses.len() {
        return Err(Error::LengthMismatch {
            report: report.per_round.len(),
            losses: losses.len(),
        });
    }
    let mut comparator_loss = 0.0;
    for loss in losses {
        comparator_loss += loss.value(u)?;
    }
    Ok(report.cumulative_loss - comparator_loss)
}

/// Online learner: strategy, schedule, and the state vector.
#[derive(Debug, Clone)]
pub struct Learner {
    strategy: Strategy,
    schedule: LambdaSchedule,
    /// θ_t for dual-state strategies; the primal iterate for the OMD baseline.
    state_vec: Vec<f64>,
    round: usize,
    dimension: usize,
}

impl Learner {
    pub fn new(dimension: usize, strategy: Strategy, schedule: LambdaSchedule) -> Self {
        Self {
            strategy,
            schedule,
            state_vec: vec![0.0; dimension],
            round: 1,
            dimension,
        }
    }

    pub fn strategy(&self) -> Strategy {
        self.strategy
    }

    pub fn schedule(&self) -> &LambdaSchedule {
        &self.schedule
    }

    /// Current round index t, starting at 1.
    pub fn round(&self) -> usize {
        self.round
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    /// The FTRL dual state θ_t; `None` for the OMD baseline.
    pub fn dual_state(&self) -> Option<&[f64]> {
        if self.strategy == Strategy::ImplicitOmd {
            None
        } else {
            Some(&self.state_vec)
        }
    }

    /// x_t = θ_t/λ_t (the OMD baseline returns its stored iterate).
    pub fn predict(&self) -> Vec<f64> {
        if self.strategy == Strategy::ImplicitOmd {
            self.state_vec.clone()
        } else {
            let lambda = self.schedule.lambda_current();
            self.state_vec.iter().map(|v| v / lambda).collect()
        }
    }

    /// Plays one round: pays ℓ_t(x_t), charges z_t, rotates the schedule.
    pub fn observe(&mut self, loss: &RoundLoss) -> Result<RoundDiagnostics> {
        loss.features.check_fits(self.dimension)?;
        let lambda_current = self.schedule.lambda_current();
        let lambda_next = self.schedule.lambda_next();

        let diag = if self.strategy == Strategy::ImplicitOmd {
            self.observe_omd(loss, lambda_current, lambda_next)?
        } else {
            self.observe_dual(loss, lambda_current, lambda_next)?
        };

        self.schedule.advance(diag.gamma);
        self.round += 1;
        Ok(diag)
    }

    fn observe_dual(
        &mut self,
        loss: &RoundLoss,
        lambda_current: f64,
        lambda_next: f64,
    ) -> Result<RoundDiagnostics> {
        let state = DualState {
            theta: &self.state_vec,
            lambda_current,
            lambda_next,
        };
        let step = strategies::step(self.strategy, &state, loss)?;

        let x_t = self.predict();
        // same float path as the strategies, so the ledger pairs match exactly
        let p_t = loss.features.dot(&self.state_vec) / lambda_current;
        let loss_value = loss.value_at(p_t);
        let alpha_g = loss.subgradient_at(p_t);
        let gradient_norm = alpha_g.0.abs() * loss.features.norm();
        let gamma = regularizer::gamma(loss, &x_t, &step.x_next, lambda_current);

        let (h4, delta) = self.h_ledger(loss, lambda_current, lambda_next, step.alpha_z, alpha_g);

        loss.features
            .add_scaled_into(-step.alpha_z.0, &mut self.state_vec);

        Ok(RoundDiagnostics {
            round: self.round,
            loss_value,
            gamma,
            delta,
            alpha_z: step.alpha_z.0,
            alpha_g: alpha_g.0,
            h_next_at_z: h4[0],
            h_next_at_g: h4[1],
            h_curr_at_z: h4[2],
            h_curr_at_g: h4[3],
            gradient_norm,
            lambda_current,
            lambda_next,
        })
    }

    fn observe_omd(
        &mut self,
        loss: &RoundLoss,
        lambda_current: f64,
        lambda_next: f64,
    ) -> Result<RoundDiagnostics> {
        let p_t = loss.features.dot(&self.state_vec);
        let loss_value = loss.value_at(p_t);
        let alpha_g = loss.subgradient_at(p_t);
        let gradient_norm = alpha_g.0.abs() * loss.features.norm();

        let c = loss.prox_coeff(p_t, 1.0 / lambda_current)?;
        let alpha_z = DualCoefficient(-c * lambda_current);

        // γ from the primal move alone: x_next − x_t = c·s
        let p_next = p_t + c * loss.features.norm_sq();
        let gamma = loss_value
            - loss.value_at(p_next)
            - 0.5 * lambda_current * c * c * loss.features.norm_sq();

        // the dual objectives are scored as if the matching FTRL state held
        // this iterate, i.e. with a virtual θ = λ_t·x_t
        let (h4, delta) =
            self.h_ledger_virtual(loss, lambda_current, lambda_next, p_t, alpha_z, alpha_g);

        loss.features.add_scaled_into(c, &mut self.state_vec);

        Ok(RoundDiagnostics {
            round: self.round,
            loss_value,
            gamma,
            delta,
            alpha_z: alpha_z.0,
            alpha_g: alpha_g.0,
            h_next_at_z: h4[0],
            h_next_at_g: h4[1],
            h_curr_at_z: h4[2],
            h_curr_at_g: h4[3],
            gradient_norm,
            lambda_current,
            lambda_next,
        })
    }

    fn h_ledger(
        &self,
        loss: &RoundLoss,
        lambda_current: f64,
        lambda_next: f64,
        alpha_z: DualCoefficient,
        alpha_g: DualCoefficient,
    ) -> ([f64; 4], f64) {
        let theta_norm_sq: f64 = self.state_vec.iter().map(|v| v * v).sum();
        let theta_dot_s = loss.features.dot(&self.state_vec);
        let s_norm_sq = loss.features.norm_sq();
        let h = |lambda: f64, alpha: DualCoefficient| {
            strategies::h_value_from_parts(theta_norm_sq, theta_dot_s, s_norm_sq, lambda, loss, alpha)
        };
        let values = [
            h(lambda_next, alpha_z),
            h(lambda_next, alpha_g),
            h(lambda_current, alpha_z),
            h(lambda_current, alpha_g),
        ];
        let delta = if self.strategy.scores_against_next_lambda() {
            values[1] - values[0]
        } else {
            values[3] - values[2]
        };
        (values, delta)
    }

    fn h_ledger_virtual(
        &self,
        loss: &RoundLoss,
        lambda_current: f64,
        lambda_next: f64,
        p_t: f64,
        alpha_z: DualCoefficient,
        alpha_g: DualCoefficient,
    ) -> ([f64; 4], f64) {
        let x_norm_sq: f64 = self.state_vec.iter().map(|v| v * v).sum();
        let theta_norm_sq = lambda_current * lambda_current * x_norm_sq;
        let theta_dot_s = lambda_current * p_t;
        let s_norm_sq = loss.features.norm_sq();
        let h = |lambda: f64, alpha: DualCoefficient| {
            strategies::h_value_from_parts(theta_norm_sq, theta_dot_s, s_norm_sq, lambda, loss, alpha)
        };
        let values = [
            h(lambda_next, alpha_z),
            h(lambda_next, alpha_g),
            h(lambda_current, alpha_z),
            h(lambda_current, alpha_g),
        ];
        // the OMD prox minimizes the λ_t objective for this virtual state
        (values, values[3] - values[2])
    }

    /// Runs one pass over `losses`, collecting a [`RunReport`].
    pub fn run(&mut self, losses: &[RoundLoss]) -> Result<RunReport> {
        let mut report = RunReport::default();
        for loss in losses {
            let diag = self.observe(loss)?;
            report.cumulative_loss += diag.loss_value;
            report
                .averaged_loss_series
                .push(report.cumulative_loss / (report.per_round.len() + 1) as f64);
            report.per_round.push(diag);
        }
        Ok(report)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::losses::LossKind;
    use crate::sparse::SparseVector;

    fn hinge2() -> RoundLoss {
        RoundLoss::new(
            LossKind::Hinge,
            SparseVector::new(vec![(0, 1.0)]).unwrap(),
            1.0,
        )
        .unwrap()
    }

    fn fresh(strategy: Strategy) -> Learner {
        Learner::new(2, strategy, LambdaSchedule::new(1.0, 1.0).unwrap())
    }

    #[test]
    fn fresh_state_predicts_zero() {
        let learner = fresh(Strategy::ProximalH);
        assert_eq!(learner.predict(), vec![0.0, 0.0]);
        assert_eq!(learner.round(), 1);
    }

    #[test]
    fn predict_divides_by_lambda() {
        let mut learner = Learner::new(2, Strategy::Linear, LambdaSchedule::constant(2.0).unwrap());
        learner.state_vec = vec![2.0, 0.0];
        assert_eq!(learner.predict(), vec![1.0, 0.0]);
        let mut learner =
            Learner::new(2, Strategy::Linear, LambdaSchedule::constant(0.5).unwrap());
        learner.state_vec = vec![-1.0, 3.0];
        assert_eq!(learner.predict(), vec![-2.0, 6.0]);
    }

    #[test]
    fn one_proximal_hinge_round() {
        let mut learner = fresh(Strategy::ProximalH);
        let diag = learner.observe(&hinge2()).unwrap();
        assert_eq!(diag.loss_value, 1.0);
        assert_eq!(diag.alpha_z, -1.0);
        assert_eq!(learner.dual_state().unwrap(), &[1.0, 0.0]);
        assert_eq!(learner.predict(), vec![1.0, 0.0]);
        assert_eq!(diag.gamma, 0.5);
        assert_eq!(learner.round(), 2);
        // λ_3 = 1 + γ_1
        assert_eq!(learner.schedule().lambda_next(), 1.5);
    }

    #[test]
    fn zero_gradient_round_only_rotates() {
        let loss = RoundLoss::new(LossKind::Absolute, SparseVector::unit(0), 0.0).unwrap();
        let mut learner = Learner::new(1, Strategy::ProximalH, LambdaSchedule::new(1.0, 1.0).unwrap());
        let diag = learner.observe(&loss).unwrap();
        assert_eq!(diag.alpha_g, 0.0);
        assert_eq!(diag.alpha_z, 0.0);
        assert_eq!(diag.gamma, 0.0);
        assert_eq!(learner.dual_state().unwrap(), &[0.0]);
        assert_eq!(learner.round(), 2);
    }

    #[test]
    fn repeated_loss_reaches_fixed_point() {
        let loss = hinge2();
        let mut learner = fresh(Strategy::ProximalH);
        let mut last_gamma = f64::INFINITY;
        for _ in 0..60 {
            last_gamma = learner.observe(&loss).unwrap().gamma;
        }
        assert!(last_gamma.abs() < 1e-6);
        let x = learner.predict();
        let again = learner.observe(&loss).unwrap();
        assert!((learner.predict()[0] - x[0]).abs() < 1e-12);
        assert_eq!(again.loss_value, 0.0);
    }

    #[test]
    fn regret_examples() {
        let loss = hinge2();
        let losses = vec![loss.clone(); 5];
        let mut learner = fresh(Strategy::ProximalH);
        let report = learner.run(&losses).unwrap();
        // ℓ(0) = 1 per round
        let r = regret_against(&report, &losses, &[0.0, 0.0]).unwrap();
        assert!((r - (report.cumulative_loss - 5.0)).abs() < 1e-12);

        // a single round against its own prediction x_1 = 0 is regret 0
        let one = vec![loss.clone()];
        let mut learner = fresh(Strategy::ProximalH);
        let report = learner.run(&one).unwrap();
        assert_eq!(regret_against(&report, &one, &[0.0, 0.0]).unwrap(), 0.0);

        assert!(matches!(
            regret_against(&report, &losses, &[0.0, 0.0]),
            Err(Error::LengthMismatch { .. })
        ));
    }

    #[test]
    fn averaged_series_is_running_mean() {
        let losses = vec![hinge2(); 20];
        let mut learner = fresh(Strategy::AProxHPrime);
        let report = learner.run(&losses).unwrap();
        let mut sum = 0.0;
        for (t, diag) in report.per_round.iter().enumerate() {
            sum += diag.loss_value;
            let avg = report.averaged_loss_series[t];
            assert!((avg * (t + 1) as f64 - sum).abs() <= 1e-6 * sum.abs().max(1.0));
        }
    }

    #[test]
    fn delta_matches_ledger_pair() {
        let losses = vec![hinge2(); 10];
        for strategy in Strategy::ALL {
            let mut learner = fresh(strategy);
            let report = learner.run(&losses).unwrap();
            for diag in &report.per_round {
                let expect = if strategy.scores_against_next_lambda() {
                    diag.h_next_at_g - diag.h_next_at_z
                } else {
                    diag.h_curr_at_g - diag.h_curr_at_z
                };
                assert!((diag.delta - expect).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn theta_telescopes_exactly() {
        let losses: Vec<RoundLoss> = (0..40)
            .map(|i| {
                RoundLoss::new(
                    LossKind::Logistic,
                    SparseVector::new(vec![(0, 0.6), (1, if i % 2 == 0 { 0.8 } else { -0.8 })])
                        .unwrap(),
                    if i % 3 == 0 { 1.0 } else { -1.0 },
                )
                .unwrap()
            })
            .collect();
        let mut learner = fresh(Strategy::ProximalHPrime);
        let mut z_sum = vec![0.0_f64; 2];
        for loss in &losses {
            let diag = learner.observe(loss).unwrap();
            loss.features.add_scaled_into(-diag.alpha_z, &mut z_sum);
        }
        assert_eq!(learner.dual_state().unwrap(), z_sum.as_slice());
    }

    #[test]
    fn constant_lambda_proximal_matches_omd() {
        let losses: Vec<RoundLoss> = (0..30)
            .map(|i| {
                RoundLoss::new(
                    LossKind::Logistic,
                    SparseVector::new(vec![(0, 0.28), (1, 0.96)]).unwrap(),
                    if i % 2 == 0 { 1.0 } else { -1.0 },
                )
                .unwrap()
            })
            .collect();
        let mut prox = Learner::new(2, Strategy::ProximalH, LambdaSchedule::constant(1.5).unwrap());
        let mut omd = Learner::new(
            2,
            Strategy::ImplicitOmd,
            LambdaSchedule::constant(1.5).unwrap(),
        );
        for loss in &losses {
            prox.observe(loss).unwrap();
            omd.observe(loss).unwrap();
            let xp = prox.predict();
            let xo = omd.predict();
            for (a, b) in xp.iter().zip(&xo) {
                assert!((a - b).abs() < 1e-9);
            }
        }
    }
}
