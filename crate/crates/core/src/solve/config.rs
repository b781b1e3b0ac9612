use serde::{Deserialize, Serialize};

use crate::certify::DEFAULT_ROOT_TOL;
use crate::error::{Error, Result};

/// Stopping rule and safeguards shared by all solvers.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SolverConfig {
    pub max_iter: usize,
    /// Step test: `|x_{n+1} - x_n| <= xtol * max(1, |x_{n+1}|)`.
    pub xtol: f64,
    /// Residual test: `|f(x_n)| <= ftol`.
    pub ftol: f64,
    pub cycle_window: usize,
    pub cycle_tol: f64,
    /// `|f'(x)| <= derivative_floor` stops Newton with `DerivativeZero`.
    pub derivative_floor: f64,
    /// Width of the root enclosure used by `certified_solve`.
    pub root_tol: f64,
    /// Let `certified_solve` iterate even without a certificate.
    pub advisory: bool,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            max_iter: 100,
            xtol: 1e-12,
            ftol: 1e-13,
            cycle_window: 8,
            cycle_tol: 1e-10,
            derivative_floor: 1e-300,
            root_tol: DEFAULT_ROOT_TOL,
            advisory: false,
        }
    }
}

impl SolverConfig {
    pub fn validate(&self) -> Result<()> {
        let positive = [
            ("xtol", self.xtol),
            ("ftol", self.ftol),
            ("cycle_tol", self.cycle_tol),
            ("derivative_floor", self.derivative_floor),
            ("root_tol", self.root_tol),
        ];
        for (name, v) in positive {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::Precondition(format!("{name} must be positive and finite, got {v}")));
            }
        }
        if self.max_iter < 1 {
            return Err(Error::Precondition("max_iter must be at least 1".into()));
        }
        if self.cycle_window < 4 {
            return Err(Error::Precondition("cycle_window must be at least 4".into()));
        }
        Ok(())
    }

    pub(crate) fn step_converged(&self, prev: f64, next: f64) -> bool {
        (next - prev).abs() <= self.xtol * next.abs().max(1.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_are_valid() {
        let cfg = SolverConfig::default();
        cfg.validate().unwrap();
        assert_eq!(cfg.max_iter, 100);
        assert_eq!(cfg.cycle_window, 8);
    }

    #[test]
    fn rejects_bad_values() {
        let bad = [
            SolverConfig { xtol: 0.0, ..Default::default() },
            SolverConfig { ftol: -1.0, ..Default::default() },
            SolverConfig { cycle_tol: f64::NAN, ..Default::default() },
            SolverConfig { max_iter: 0, ..Default::default() },
            SolverConfig { cycle_window: 3, ..Default::default() },
        ];
        for cfg in bad {
            assert!(cfg.validate().is_err(), "{cfg:?}");
        }
    }
}
