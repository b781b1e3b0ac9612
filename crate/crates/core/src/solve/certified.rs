use serde::{Deserialize, Serialize};

use super::config::SolverConfig;
use super::iterate::{directed_newton_solve, newton_solve};
use super::trace::{IterationTrace, Method, Termination};
use crate::certify::{check_theorem, isolate_root, Certificate, Side};
use crate::error::{Error, Result};
use crate::expr::{Expression, Interval};

/// Certificate together with the Newton run it licenses.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CertifiedRun {
    pub certificate: Certificate,
    pub trace: IterationTrace,
    /// True when the trace was produced without a `Certified` verdict.
    pub advisory: bool,
}

/// Isolates the root in `bracket`, certifies one side of it and runs Newton
/// from that side's outer endpoint.
///
/// The Left side is tried first. Without a certified side the better of the
/// two certificates is returned with a one-entry `Refused` trace, unless
/// `cfg.advisory` is set, in which case Newton runs inside `bracket` and the
/// result is flagged as advisory.
pub fn certified_solve(
    e: &Expression,
    bracket: Interval,
    cfg: &SolverConfig,
    budget: usize,
) -> Result<CertifiedRun> {
    cfg.validate()?;
    let root = isolate_root(e, bracket, cfg.root_tol)?;

    let mut best: Option<Certificate> = None;
    for (side, outer) in [(Side::Left, bracket.lo()), (Side::Right, bracket.hi())] {
        let cert = match check_theorem(e, side, outer, root, budget) {
            Ok(c) => c,
            Err(Error::Precondition(_)) => continue,
            Err(other) => return Err(other),
        };
        if best.as_ref().map_or(true, |b| cert.verdict > b.verdict) {
            best = Some(cert);
        }
        if best.as_ref().is_some_and(Certificate::is_certified) {
            break;
        }
    }
    let certificate = best.ok_or_else(|| {
        Error::Precondition(format!("root enclosure {} leaves no room on either side of {bracket}", root.interval))
    })?;

    let x0 = certificate.outer();
    if certificate.is_certified() {
        let domain = match certificate.side {
            Side::Left => Interval::new(x0, root.hi())?,
            Side::Right => Interval::new(root.lo(), x0)?,
        };
        let trace = directed_newton_solve(e, x0, cfg, Some(domain), Some(certificate.side))?;
        return Ok(CertifiedRun { certificate, trace, advisory: false });
    }
    let trace = if cfg.advisory {
        newton_solve(e, x0, cfg, Some(bracket))?
    } else {
        let r0 = e.eval(x0).unwrap_or(f64::NAN);
        IterationTrace::start(Method::Newton, x0, r0).finish(Termination::Refused)
    };
    Ok(CertifiedRun { certificate, trace, advisory: cfg.advisory })
}
