//! Interval-arithmetic certification of the convergence hypotheses, and
//! root isolation by bisection.

mod root;
mod sign;
mod theorem;

pub use root::{fixed_point_residual, isolate_fixed_point, isolate_root, RootEnclosure};
pub use sign::{verify_sign, SignCheck, SignRelation, Verdict};
pub use theorem::{check_lemma_conditions, check_theorem, Certificate, ConditionReport, Side, Theorem};

/// Default leaf budget for each sign verification.
pub const DEFAULT_BUDGET: usize = 4096;

/// Default width of root enclosures.
pub const DEFAULT_ROOT_TOL: f64 = 1e-12;
