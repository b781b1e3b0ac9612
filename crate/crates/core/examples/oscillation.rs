//! A piecewise function on which Newton bounces between -1/3 and 1/3
//! forever, and the quadratic branch x^2 + x which escapes after one jump.
//!
//!     cargo run --example oscillation

use newton_certify::{newton_solve, parse, SolverConfig, Termination};

fn main() -> Result<(), newton_certify::Error> {
    let cfg = SolverConfig::default();
    let f = parse("if(x<=0, x^2+x, x^2-x)")?;
    let trace = newton_solve(&f, -1.0 / 3.0, &cfg, None)?;
    for (n, x) in trace.iterates.iter().enumerate() {
        println!("x{n:<2} = {x:+.17}");
    }
    match &trace.termination {
        Termination::CycleDetected { period, points } => {
            println!("cycle of period {period} through {points:?}")
        }
        other => panic!("expected a cycle, got {other:?}"),
    }

    let g = parse("x^2+x")?;
    let trace = newton_solve(&g, -1.0 / 3.0, &cfg, None)?;
    println!("\ng = x^2+x from -1/3: y1 = {}, then {} steps to {:e}", trace.iterates[1], trace.iterations, trace.final_x);
    assert!(trace.converged() && trace.final_x.abs() <= 1e-12);
    Ok(())
}
