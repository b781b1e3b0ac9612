//! Checking the convergence conditions on both sides of a root.
//!
//!     cargo run --example certify_theorem

use newton_certify::cli::{emit_certificate, OutputFormat};
use newton_certify::{check_theorem, isolate_root, parse, Interval, Side, Verdict};

fn main() -> Result<(), newton_certify::Error> {
    let budget = 4096;

    let f = parse("x^3-2*x+2")?;
    let root = isolate_root(&f, Interval::new(-2.0, 0.0)?, 1e-12)?;
    let left = check_theorem(&f, Side::Left, -5.0, root, budget)?;
    print!("{}", emit_certificate(&left, OutputFormat::Table));
    assert_eq!(left.verdict, Verdict::Certified);

    // right of the cubic's root f*f'' < 0 until the inflection at 0
    let right = check_theorem(&f, Side::Right, 0.0, root, budget)?;
    print!("\n{}", emit_certificate(&right, OutputFormat::Table));
    assert_eq!(right.condition("C1").unwrap().verdict, Verdict::Refuted);

    let g = parse("x^2+x")?;
    let root = isolate_root(&g, Interval::new(-0.4, 0.5)?, 1e-12)?;
    for (side, outer) in [(Side::Left, -0.5), (Side::Right, 0.5)] {
        let cert = check_theorem(&g, side, outer, root, budget)?;
        print!("\n{}", emit_certificate(&cert, OutputFormat::Table));
    }
    Ok(())
}
