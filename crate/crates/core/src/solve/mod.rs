//! Newton and mean iterations with traces, cycle detection and the
//! certified driver.

mod certified;
mod config;
mod cycle;
mod iterate;
mod trace;

pub use certified::{certified_solve, CertifiedRun};
pub use config::SolverConfig;
pub use cycle::detect_cycle;
pub use iterate::{damped_transform, mean_iterate_solve, newton_solve, newton_step};
pub use trace::{IterationTrace, Method, Termination};
