//! Linear-predictor losses ℓ(x) = φ(⟨s, x⟩): values, subgradients, scalar
//! Fenchel conjugates, proximal operators, and truncated linear models.
//!
//! Every loss here varies only along its feature vector s, so its conjugate
//! ℓ*(z) is finite only for z = α·s and equals the scalar conjugate φ*(α).
//! That makes the dual side of every update one-dimensional, which is what
//! [`DualCoefficient`] captures.

use crate::error::{Error, Result};
use crate::sparse::SparseVector;

/// The four supported scalar links.
///
/// All four are convex, closed, and lower bounded by 0, which is what the
/// truncated-model updates require.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LossKind {
    /// max(1 − y·p, 0) with y ∈ {−1, +1}
    Hinge,
    /// ln(1 + exp(−y·p)) with y ∈ {−1, +1}
    Logistic,
    /// |p − y|
    Absolute,
    /// ½(p − y)²
    Squared,
}

impl LossKind {
    pub fn is_classification(self) -> bool {
        matches!(self, LossKind::Hinge | LossKind::Logistic)
    }

    /// Smoothness constant of the scalar link (sup of φ''), when finite.
    pub fn link_smoothness(self) -> Option<f64> {
        match self {
            LossKind::Logistic => Some(0.25),
            LossKind::Squared => Some(1.0),
            LossKind::Hinge | LossKind::Absolute => None,
        }
    }
}

impl std::str::FromStr for LossKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "hinge" => Ok(LossKind::Hinge),
            "logistic" => Ok(LossKind::Logistic),
            "absolute" => Ok(LossKind::Absolute),
            "squared" => Ok(LossKind::Squared),
            other => Err(Error::Config(format!("unknown loss kind '{other}'"))),
        }
    }
}

impl std::fmt::Display for LossKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let name = match self {
            LossKind::Hinge => "hinge",
            LossKind::Logistic => "logistic",
            LossKind::Absolute => "absolute",
            LossKind::Squared => "squared",
        };
        f.write_str(name)
    }
}

/// Scalar handle on a dual vector: z = alpha · s.
///
/// Every update rule in this crate produces its dual vector along the current
/// features, so one coefficient is a complete description.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DualCoefficient(pub f64);

impl DualCoefficient {
    pub const ZERO: DualCoefficient = DualCoefficient(0.0);

    pub fn value(self) -> f64 {
        self.0
    }
}

/// One round's loss: a kind, its features s, and the label y.
#[derive(Debug, Clone)]
pub struct RoundLoss {
    pub kind: LossKind,
    pub features: SparseVector,
    pub label: f64,
}

/// Absolute tolerance on the stationarity residual of the logistic prox solve.
const LOGISTIC_PROX_TOL: f64 = 1e-10;
const LOGISTIC_PROX_MAX_ITER: usize = 200;

impl RoundLoss {
    /// Validates the classification label and non-empty features.
    pub fn new(kind: LossKind, features: SparseVector, label: f64) -> Result<Self> {
        if features.is_zero() {
            return Err(Error::InvalidInput(
                "round loss features must not be the zero vector".into(),
            ));
        }
        if kind.is_classification() && label != 1.0 && label != -1.0 {
            return Err(Error::InvalidInput(format!(
                "{kind} loss expects labels in {{-1, +1}}, got {label}"
            )));
        }
        Ok(Self {
            kind,
            features,
            label,
        })
    }

    /// φ(p): the loss as a function of the prediction scalar p = ⟨s, x⟩.
    pub fn value_at(&self, p: f64) -> f64 {
        let y = self.label;
        match self.kind {
            LossKind::Hinge => (1.0 - y * p).max(0.0),
            LossKind::Logistic => stable_log1p_exp(-y * p),
            LossKind::Absolute => (p - y).abs(),
            LossKind::Squared => 0.5 * (p - y) * (p - y),
        }
    }

    /// ℓ(x) = φ(⟨s, x⟩); errors when x does not cover the feature support.
    pub fn value(&self, x: &[f64]) -> Result<f64> {
        self.features.check_fits(x.len())?;
        Ok(self.value_at(self.features.dot(x)))
    }

    /// A subgradient coefficient α with α·s ∈ ∂ℓ(x), as a function of p.
    ///
    /// At the hinge kink (margin exactly 1) and the absolute kink (residual
    /// exactly 0) this returns 0, the minimum-norm subgradient.
    pub fn subgradient_at(&self, p: f64) -> DualCoefficient {
        let y = self.label;
        let alpha = match self.kind {
            LossKind::Hinge => {
                if y * p < 1.0 {
                    -y
                } else {
                    0.0
                }
            }
            LossKind::Logistic => -y * sigmoid(-y * p),
            LossKind::Absolute => {
                if p > y {
                    1.0
                } else if p < y {
                    -1.0
                } else {
                    0.0
                }
            }
            LossKind::Squared => p - y,
        };
        DualCoefficient(alpha)
    }

    /// Subgradient coefficient at a dense point.
    pub fn subgradient(&self, x: &[f64]) -> Result<DualCoefficient> {
        self.features.check_fits(x.len())?;
        Ok(self.subgradient_at(self.features.dot(x)))
    }

    /// φ*(α), the scalar Fenchel conjugate; +∞ outside the effective domain.
    ///
    /// Closed forms: hinge φ*(−c·y) = −c on c ∈ [0, 1]; logistic
    /// φ*(−c·y) = c·ln c + (1−c)·ln(1−c) on c ∈ [0, 1]; absolute φ*(v) = y·v
    /// on |v| ≤ 1; squared φ*(v) = v²/2 + y·v.
    pub fn conjugate(&self, alpha: DualCoefficient) -> f64 {
        let v = alpha.0;
        let y = self.label;
        match self.kind {
            LossKind::Hinge => {
                let c = -v * y;
                if (0.0..=1.0).contains(&c) {
                    -c
                } else {
                    f64::INFINITY
                }
            }
            LossKind::Logistic => {
                let c = -v * y;
                if (0.0..=1.0).contains(&c) {
                    xlnx(c) + xlnx(1.0 - c)
                } else {
                    f64::INFINITY
                }
            }
            LossKind::Absolute => {
                if v.abs() <= 1.0 {
                    y * v
                } else {
                    f64::INFINITY
                }
            }
            LossKind::Squared => 0.5 * v * v + y * v,
        }
    }

    /// Scalar core of the proximal operator: returns c such that
    /// argmin_x ½‖x − v‖² + η·ℓ(x) equals v + c·s, where p0 = ⟨s, v⟩.
    ///
    /// Hinge, absolute, and squared use their closed forms; logistic solves
    /// the 1-D stationarity equation by safeguarded Newton to an absolute
    /// residual of 1e−10 on the bracket [p0 − η‖s‖², p0 + η‖s‖²].
    pub fn prox_coeff(&self, p0: f64, eta: f64) -> Result<f64> {
        if eta <= 0.0 || !eta.is_finite() {
            return Err(Error::NonPositiveEta(eta));
        }
        let s_sq = self.features.norm_sq();
        let y = self.label;
        let c = match self.kind {
            LossKind::Hinge => {
                let active = (1.0 - y * p0).max(0.0);
                (eta).min(active / s_sq) * y
            }
            LossKind::Absolute => {
                let r = p0 - y;
                if r > 0.0 {
                    -eta.min(r / s_sq)
                } else if r < 0.0 {
                    eta.min(-r / s_sq)
                } else {
                    0.0
                }
            }
            LossKind::Squared => -(p0 - y) * eta / (1.0 + eta * s_sq),
            LossKind::Logistic => {
                let p_hat = self.logistic_prox_prediction(p0, eta, s_sq)?;
                -eta * self.subgradient_at(p_hat).0
            }
        };
        Ok(c)
    }

    /// Prox_{η·ℓ}(y_point) = argmin_x ½‖x − y_point‖² + η·ℓ(x).
    pub fn prox(&self, y_point: &[f64], eta: f64) -> Result<Vec<f64>> {
        self.features.check_fits(y_point.len())?;
        let p0 = self.features.dot(y_point);
        let c = self.prox_coeff(p0, eta)?;
        let mut out = y_point.to_vec();
        self.features.add_scaled_into(c, &mut out);
        Ok(out)
    }

    /// Solves p = p0 − η‖s‖²·φ'(p) for the prediction at the logistic prox.
    ///
    /// Newton with a bisection safeguard: a step is taken only if it stays
    /// inside the sign-change bracket and keeps the residual shrinking fast
    /// enough; otherwise the bracket is halved. The second condition breaks
    /// the two-cycles Newton falls into across the sigmoid's flat tails.
    fn logistic_prox_prediction(&self, p0: f64, eta: f64, s_sq: f64) -> Result<f64> {
        let k = eta * s_sq;
        let residual = |p: f64| p + k * self.subgradient_at(p).0 - p0;
        let mut lo = p0 - k;
        let mut hi = p0 + k;
        let mut p = p0;
        let mut step_prev = hi - lo;
        let mut step = step_prev;
        for _ in 0..LOGISTIC_PROX_MAX_ITER {
            let r = residual(p);
            if r.abs() <= LOGISTIC_PROX_TOL {
                return Ok(p);
            }
            if r > 0.0 {
                hi = p;
            } else {
                lo = p;
            }
            if hi - lo <= f64::EPSILON * (1.0 + p.abs()) {
                // the residual has hit its rounding floor for this scale
                return Ok(p);
            }
            // φ'' = σ(1 − σ) evaluated at the margin
            let sig = sigmoid(-self.label * p);
            let slope = 1.0 + k * sig * (1.0 - sig);
            let newton = p - r / slope;
            let acceptable =
                newton > lo && newton < hi && (2.0 * r).abs() < (step_prev * slope).abs();
            step_prev = step;
            if acceptable {
                step = newton - p;
                p = newton;
            } else {
                step = 0.5 * (hi - lo);
                p = 0.5 * (lo + hi);
            }
        }
        Err(Error::ProxNoConvergence(LOGISTIC_PROX_MAX_ITER))
    }

    /// Truncated linear model max(ℓ(anchор) + α_g·⟨s, x − anchor⟩, 0) at x,
    /// where α_g is a subgradient coefficient at the anchor.
    pub fn truncated_value(
        &self,
        x_anchor: &[f64],
        alpha_g: DualCoefficient,
        x: &[f64],
    ) -> Result<f64> {
        self.features.check_fits(x_anchor.len())?;
        self.features.check_fits(x.len())?;
        let p_anchor = self.features.dot(x_anchor);
        let p = self.features.dot(x);
        Ok(self.truncated_value_at(p_anchor, alpha_g, p))
    }

    /// Scalar form of [`truncated_value`](Self::truncated_value).
    pub fn truncated_value_at(&self, p_anchor: f64, alpha_g: DualCoefficient, p: f64) -> f64 {
        (self.value_at(p_anchor) + alpha_g.0 * (p - p_anchor)).max(0.0)
    }

    /// Curvature bound L with ℓ L-smooth w.r.t. ‖·‖₂, when the link is smooth.
    pub fn smoothness(&self) -> Option<f64> {
        self.kind
            .link_smoothness()
            .map(|l| l * self.features.norm_sq())
    }
}

/// ln(1 + e^u) without overflow.
fn stable_log1p_exp(u: f64) -> f64 {
    if u > 0.0 {
        u + (-u).exp().ln_1p()
    } else {
        u.exp().ln_1p()
    }
}

/// 1 / (1 + e^{-t}) without overflow.
pub(crate) fn sigmoid(t: f64) -> f64 {
    if t >= 0.0 {
        1.0 / (1.0 + (-t).exp())
    } else {
        let e = t.exp();
        e / (1.0 + e)
    }
}

/// x·ln x extended by 0 at x = 0.
fn xlnx(x: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else {
        x * x.ln()
    }
}
