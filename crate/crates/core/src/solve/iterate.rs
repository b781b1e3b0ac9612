use super::config::SolverConfig;
use super::cycle::detect_cycle;
use super::trace::{IterationTrace, Method, Termination};
use crate::certify::Side;
use crate::error::{Error, Result};
use crate::expr::{Expression, Interval};

/// `x - f(x)/f'(x)`.
pub fn newton_step(e: &Expression, x: f64, floor: f64) -> Result<f64> {
    scaled_newton_correction(e, x, floor, 1.0)
}

/// `F(x) = x - 2 f(x)/f'(x)`. The mean iteration of `F`, `(x + F(x))/2`,
/// is the Newton step of `f`.
pub fn damped_transform(e: &Expression, x: f64, floor: f64) -> Result<f64> {
    scaled_newton_correction(e, x, floor, 2.0)
}

fn scaled_newton_correction(e: &Expression, x: f64, floor: f64, scale: f64) -> Result<f64> {
    let jet = e.eval_jet2(x)?;
    if jet.d1.abs() <= floor {
        return Err(Error::DerivativeZero { x, derivative: jet.d1 });
    }
    let next = x - scale * jet.value / jet.d1;
    if next.is_finite() {
        Ok(next)
    } else {
        Err(Error::Domain(format!("step from {x} is not finite")))
    }
}

fn mean_step(g: &Expression, x: f64) -> Result<f64> {
    let next = (x + g.eval(x)?) / 2.0;
    if next.is_finite() {
        Ok(next)
    } else {
        Err(Error::Domain(format!("mean step from {x} is not finite")))
    }
}

struct Iteration<'a> {
    method: Method,
    cfg: &'a SolverConfig,
    domain: Option<Interval>,
    step: &'a dyn Fn(f64) -> Result<f64>,
    residual: &'a dyn Fn(f64) -> Result<f64>,
    /// Direction the iterates must move in, if known.
    direction: Option<Side>,
}

fn stop_reason(err: Error) -> Termination {
    match err {
        Error::DerivativeZero { .. } => Termination::DerivativeZero,
        other => Termination::DomainError(other.to_string()),
    }
}

impl Iteration<'_> {
    fn run(&self, x0: f64) -> Result<IterationTrace> {
        self.cfg.validate()?;
        if !x0.is_finite() {
            return Err(Error::Precondition(format!("start point {x0} is not finite")));
        }
        let r0 = match (self.residual)(x0) {
            Ok(r) => r,
            Err(err) => {
                return Ok(IterationTrace::start(self.method, x0, f64::NAN).finish(stop_reason(err)))
            }
        };
        let mut trace = IterationTrace::start(self.method, x0, r0);
        if self.domain.is_some_and(|d| !d.contains(x0)) {
            return Ok(trace.finish(Termination::LeftDomain));
        }

        let mut x = x0;
        for n in 0..self.cfg.max_iter {
            let next = match (self.step)(x) {
                Ok(v) => v,
                Err(err) => return Ok(trace.finish(stop_reason(err))),
            };
            // start point already a solution: keep the single-entry trace
            if n == 0 && r0.abs() <= self.cfg.ftol && self.cfg.step_converged(x, next) {
                return Ok(trace.finish(Termination::Converged));
            }
            let retrograde = match self.direction {
                Some(Side::Left) => next < x,
                Some(Side::Right) => next > x,
                None => false,
            };
            // backward step within tolerance: stop at the previous iterate
            if retrograde && self.cfg.step_converged(x, next) && trace.final_residual().abs() <= self.cfg.ftol {
                return Ok(trace.finish(Termination::Converged));
            }
            let r = match (self.residual)(next) {
                Ok(r) => r,
                Err(err) => {
                    trace.push(next, f64::NAN);
                    return Ok(trace.finish(stop_reason(err)));
                }
            };
            trace.push(next, r);
            if self.domain.is_some_and(|d| !d.contains(next)) {
                return Ok(trace.finish(Termination::LeftDomain));
            }
            // exact zero residual
            if r == 0.0 || (self.cfg.step_converged(x, next) && r.abs() <= self.cfg.ftol) {
                return Ok(trace.finish(Termination::Converged));
            }
            let window = self.cfg.cycle_window;
            if trace.iterates.len() >= window {
                let tail = &trace.iterates[trace.iterates.len() - window..];
                if let Some((period, points)) = detect_cycle(tail, self.cfg.cycle_tol) {
                    return Ok(trace.finish(Termination::CycleDetected { period, points }));
                }
            }
            x = next;
        }
        Ok(trace.finish(Termination::MaxIter))
    }
}

/// Newton-Raphson from `x0`. Stops when both the step and residual tests
/// pass, when the derivative vanishes, on a detected cycle, on leaving
/// `domain`, or after `cfg.max_iter` steps. Errors only on an invalid
/// configuration or a non-finite start.
pub fn newton_solve(
    e: &Expression,
    x0: f64,
    cfg: &SolverConfig,
    domain: Option<Interval>,
) -> Result<IterationTrace> {
    directed_newton_solve(e, x0, cfg, domain, None)
}

/// Newton on a certified side of the root. The iterates of a certified
/// run increase (Left) or decrease (Right); a backward step that already
/// passes the step test ends the run at the previous iterate.
pub(crate) fn directed_newton_solve(
    e: &Expression,
    x0: f64,
    cfg: &SolverConfig,
    domain: Option<Interval>,
    direction: Option<Side>,
) -> Result<IterationTrace> {
    let floor = cfg.derivative_floor;
    Iteration {
        method: Method::Newton,
        cfg,
        domain,
        step: &|x| newton_step(e, x, floor),
        residual: &|x| e.eval(x),
        direction,
    }
    .run(x0)
}

/// Mean iteration `x <- (x + g(x))/2` toward a fixed point of `g`. The
/// residual recorded per iterate is `g(x) - x`.
pub fn mean_iterate_solve(
    g: &Expression,
    x0: f64,
    cfg: &SolverConfig,
    domain: Option<Interval>,
) -> Result<IterationTrace> {
    Iteration {
        method: Method::MeanIterate,
        cfg,
        domain,
        step: &|x| mean_step(g, x),
        residual: &|x| Ok(g.eval(x)? - x),
        direction: None,
    }
    .run(x0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse;

    const FLOOR: f64 = 1e-300;

    #[test]
    fn first_newton_step_of_the_cubic() {
        let f = parse("x^3-2*x+2").unwrap();
        assert_eq!(newton_step(&f, -400.0, FLOOR).unwrap(), -266.6677819490915);
    }

    #[test]
    fn quadratic_jumps_across_zero() {
        let g = parse("x^2+x").unwrap();
        let y1 = newton_step(&g, -1.0 / 3.0, FLOOR).unwrap();
        assert!((y1 - 1.0 / 3.0).abs() <= 1e-15);
    }

    #[test]
    fn step_at_a_root_is_a_fixed_point() {
        let f = parse("x^2-4").unwrap();
        assert_eq!(newton_step(&f, 2.0, FLOOR).unwrap(), 2.0);
        assert_eq!(damped_transform(&f, 2.0, FLOOR).unwrap(), 2.0);
    }

    #[test]
    fn damped_transform_value() {
        let g = parse("x^2+x").unwrap();
        let big_f = damped_transform(&g, -1.0 / 3.0, FLOOR).unwrap();
        assert!((big_f - 1.0).abs() < 1e-15);
    }

    #[test]
    fn derivative_floor() {
        let f = parse("x^2+1").unwrap();
        assert!(matches!(newton_step(&f, 0.0, FLOOR), Err(Error::DerivativeZero { .. })));
        let t = newton_solve(&f, 0.0, &SolverConfig::default(), None).unwrap();
        assert_eq!(t.termination, Termination::DerivativeZero);
        assert_eq!(t.iterates, vec![0.0]);
    }

    #[test]
    fn piecewise_oscillation_is_detected() {
        let f = parse("if(x<=0, x^2+x, x^2-x)").unwrap();
        let t = newton_solve(&f, -1.0 / 3.0, &SolverConfig::default(), None).unwrap();
        let Termination::CycleDetected { period, points } = &t.termination else {
            panic!("expected a cycle, got {:?}", t.termination)
        };
        assert_eq!(*period, 2);
        assert!((points[0] + 1.0 / 3.0).abs() < 1e-12);
        assert!((points[1] - 1.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn quadratic_converges_after_the_jump() {
        let g = parse("x^2+x").unwrap();
        let t = newton_solve(&g, -1.0 / 3.0, &SolverConfig::default(), None).unwrap();
        assert!(t.converged());
        assert!(t.final_x.abs() <= 1e-12);
    }

    #[test]
    fn leaving_the_domain_stops() {
        let g = parse("x^2+x").unwrap();
        let dom = Interval::new(-0.5, 0.0).unwrap();
        let t = newton_solve(&g, -1.0 / 3.0, &SolverConfig::default(), Some(dom)).unwrap();
        assert_eq!(t.termination, Termination::LeftDomain);
        assert_eq!(t.iterates.len(), 2);
    }

    #[test]
    fn domain_error_is_recorded() {
        let f = parse("log(x)").unwrap();
        let t = newton_solve(&f, 5.0, &SolverConfig::default(), None).unwrap();
        // 5 - 5 log 5 < 0
        assert!(matches!(t.termination, Termination::DomainError(_)));
        assert_eq!(t.iterates.len(), t.residuals.len());
        assert!(t.final_residual().is_nan());
    }

    #[test]
    fn root_as_start_gives_one_entry() {
        let f = parse("x^2-4").unwrap();
        let t = newton_solve(&f, 2.0, &SolverConfig::default(), None).unwrap();
        assert!(t.converged());
        assert_eq!(t.iterates, vec![2.0]);
        assert_eq!(t.iterations, 0);
    }

    #[test]
    fn max_iter() {
        let f = parse("x^3-2*x+2").unwrap();
        let cfg = SolverConfig { max_iter: 3, ..Default::default() };
        let t = newton_solve(&f, -400.0, &cfg, None).unwrap();
        assert_eq!(t.termination, Termination::MaxIter);
        assert_eq!(t.iterations, 3);
    }

    #[test]
    fn retrograde_rounding_step_ends_a_directed_run() {
        let f = parse("x^3*1.6195878216843127+x^2*-1.3695937813917887+x*2.3103862481777795+2.383962988793644")
            .unwrap();
        let cfg = SolverConfig::default();
        let t = directed_newton_solve(&f, -5.921068428769532, &cfg, None, Some(Side::Left)).unwrap();
        assert!(t.converged());
        assert!(t.is_nondecreasing(), "{:?}", t.iterates);
        assert!(t.final_residual().abs() <= cfg.ftol);
    }

    #[test]
    fn invalid_inputs() {
        let f = parse("x").unwrap();
        assert!(newton_solve(&f, f64::NAN, &SolverConfig::default(), None).is_err());
        let cfg = SolverConfig { xtol: 0.0, ..Default::default() };
        assert!(newton_solve(&f, 1.0, &cfg, None).is_err());
    }

    #[test]
    fn mean_iteration_on_identity_is_immediate() {
        let g = parse("x").unwrap();
        let t = mean_iterate_solve(&g, 3.5, &SolverConfig::default(), None).unwrap();
        assert!(t.converged());
        assert_eq!(t.iterates, vec![3.5]);
    }

    #[test]
    fn mean_iteration_quadratic_map_creeps_up() {
        let g = parse("x^2+x").unwrap();
        let t = mean_iterate_solve(&g, -0.25, &SolverConfig::default(), None).unwrap();
        // oracle: direct recurrence
        let mut x: f64 = -0.25;
        for (n, it) in t.iterates.iter().enumerate() {
            assert_eq!(*it, x, "iterate {n}");
            x = (x + (x * x + x)) / 2.0;
        }
        assert!(t.is_nondecreasing());
        assert!(t.iterates.iter().all(|v| *v < 0.0));
        assert!(t.final_x > -0.02);
    }
}
