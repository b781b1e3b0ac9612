//! Newton-Raphson root finding with a global convergence certificate.
//!
//! A function is given as text (`"x^3-2*x+2"`). Before iterating, the
//! certifier proves with outward-rounded interval arithmetic that on an
//! interval `[a, c]` left of the root `c`
//!
//! * `f·f'' >= 0`,
//! * `f·f' < 0`,
//! * `f' != 0`,
//! * `f != 0` away from `c`,
//!
//! (mirrored on `[c, b]` with `f·f' > 0`). Under those conditions the Newton
//! sequence converges monotonically to `c` from every start in the interval.
//!
//! ```
//! use newton_certify::{certified_solve, parse, Interval, SolverConfig, Termination, Verdict};
//!
//! let f = parse("x^3-2*x+2").unwrap();
//! let bracket = Interval::new(-5.0, 0.0).unwrap();
//! let run = certified_solve(&f, bracket, &SolverConfig::default(), 4096).unwrap();
//! assert_eq!(run.certificate.verdict, Verdict::Certified);
//! assert_eq!(run.trace.termination, Termination::Converged);
//! assert!((run.trace.final_x + 1.7692923542386314).abs() < 1e-12);
//! ```

pub mod certify;
pub mod cli;
mod error;
pub mod expr;
pub mod solve;

pub use certify::{
    check_lemma_conditions, check_theorem, isolate_root, verify_sign, Certificate, ConditionReport,
    RootEnclosure, Side, SignCheck, SignRelation, Theorem, Verdict,
};
pub use error::{Error, Result};
pub use expr::{parse, Expression, Interval, Jet2};
pub use solve::{
    certified_solve, damped_transform, detect_cycle, mean_iterate_solve, newton_solve, newton_step,
    CertifiedRun, IterationTrace, Method, SolverConfig, Termination,
};
