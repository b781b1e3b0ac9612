//! Certify, pick the start farthest from the root, then iterate.
//!
//!     cargo run --example certified_solve

use newton_certify::{certified_solve, parse, Interval, SolverConfig, Termination};

fn report(text: &str, lo: f64, hi: f64, cfg: &SolverConfig) -> Result<(), newton_certify::Error> {
    let run = certified_solve(&parse(text)?, Interval::new(lo, hi)?, cfg, 4096)?;
    let cert = &run.certificate;
    println!(
        "{text} on [{lo}, {hi}]: {:?} {:?} side, x0 = {}, {} -> {}{}",
        cert.theorem,
        cert.side,
        run.trace.x0,
        run.trace.termination.kind(),
        run.trace.final_x,
        if run.advisory { " (advisory)" } else { "" }
    );
    Ok(())
}

fn main() -> Result<(), newton_certify::Error> {
    let cfg = SolverConfig::default();
    report("x^3-2*x+2", -5.0, 0.0, &cfg)?;
    report("x^2+x", -0.4, 0.5, &cfg)?;
    report("x", -1.0, 1.0, &cfg)?;

    // sin has an inflection at its root, so neither side certifies
    report("sin(x)", -1.0, 1.0, &cfg)?;
    report("sin(x)", -1.0, 1.0, &SolverConfig { advisory: true, ..cfg })?;

    let run = certified_solve(&parse("sin(x)")?, Interval::new(-1.0, 1.0)?, &cfg, 4096)?;
    assert_eq!(run.trace.termination, Termination::Refused);
    Ok(())
}
