//! Online convex optimization with follow-the-regularized-leader and
//! interchangeable dual update rules.
//!
//! Each round the learner predicts x_t = θ_t/λ_t, receives a linear-predictor
//! loss ℓ_t(x) = φ(⟨s_t, x⟩), and charges a dual vector z_t = α·s_t to its
//! state. The charging rule is pluggable ([`Strategy`]): plain linearization,
//! exact proximal (implicit) minimization, two-step probing, or truncated
//! linear models, each in a flavor scored against the next or the current
//! regularizer weight, plus an implicit mirror-descent baseline. A built-in
//! ledger records, per round, how much better than the plain subgradient each
//! rule did.
//!
//! The regularizer weight λ_t follows an adaptive schedule driven by the
//! realized per-round progress, kept one rotation ahead so the weight a rule
//! is scored under never depends on that rule's own output.
//!
//! See the `examples/` directory for runnable tours of each capability and
//! the `ftrl-bench` binary for the β-sweep benchmark driver.

pub mod bench;
pub mod data_io;
pub mod error;
pub mod learner;
pub mod losses;
pub mod oracle;
pub mod regularizer;
pub mod sparse;
pub mod strategies;

pub use bench::{default_beta_grid, emit_csv, run_sweep, SweepCell, SweepConfig};
pub use data_io::{parse_libsvm, preprocess, shuffled_stream, Dataset, Example, Task};
pub use error::{Error, Result};
pub use learner::{regret_against, Learner, RoundDiagnostics, RunReport};
pub use losses::{DualCoefficient, LossKind, RoundLoss};
pub use regularizer::LambdaSchedule;
pub use sparse::SparseVector;
pub use strategies::{h_value, DualState, StepResult, Strategy};
