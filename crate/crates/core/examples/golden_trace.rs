//! Newton on x^3 - 2x + 2 from x0 = -400, far left of the root.
//!
//!     cargo run --example golden_trace

use newton_certify::cli::{emit_trace, OutputFormat};
use newton_certify::{newton_solve, parse, SolverConfig};

fn main() -> Result<(), newton_certify::Error> {
    let f = parse("x^3-2*x+2")?;
    let trace = newton_solve(&f, -400.0, &SolverConfig::default(), None)?;
    print!("{}", emit_trace(&trace, OutputFormat::Table));

    assert!(trace.converged());
    assert!(trace.is_nondecreasing());
    assert_eq!(trace.final_x, -1.7692923542386314);
    Ok(())
}
