//! The mean iteration x <- (x + g(x))/2 toward a fixed point of g, with
//! the conditions that guarantee it converges.
//!
//!     cargo run --example mean_iterate

use newton_certify::certify::isolate_fixed_point;
use newton_certify::{
    check_lemma_conditions, damped_transform, mean_iterate_solve, newton_step, parse, Interval, Side,
    SolverConfig,
};

fn main() -> Result<(), newton_certify::Error> {
    let g = parse("cos(x)")?;
    let fp = isolate_fixed_point(&g, Interval::new(0.0, 1.0)?, 1e-12)?;
    let cert = check_lemma_conditions(&g, Side::Left, 0.0, fp, 4096)?;
    println!("cos(x) on [0, c): {:?}", cert.verdict);

    let trace = mean_iterate_solve(&g, 0.0, &SolverConfig::default(), None)?;
    println!("fixed point {} after {} steps", trace.final_x, trace.iterations);
    assert!((trace.final_x - 0.7390851332151607).abs() <= 1e-12);
    assert!(trace.is_nondecreasing());

    // Newton is the mean iteration of F(x) = x - 2 f(x)/f'(x)
    let f = parse("x^3-2*x+2")?;
    for x in [-400.0, -3.0, -1.9] {
        let big_f = damped_transform(&f, x, 1e-300)?;
        let n = newton_step(&f, x, 1e-300)?;
        println!("x = {x:>6}: (x + F(x))/2 = {:<22} newton step = {n}", (x + big_f) / 2.0);
    }
    Ok(())
}
