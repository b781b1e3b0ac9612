//! Outward-rounded enclosures of a function over an interval.
//!
//!     cargo run --example interval_bounds

use newton_certify::{parse, Interval};

fn main() -> Result<(), newton_certify::Error> {
    let cases = [
        ("x^3-2*x+2", -5.0, -2.0),
        ("x^2+x", -1.0, 0.0),
        ("sin(x)", 0.0, 3.2),
        ("exp(x)/(1+x^2)", -1.0, 1.0),
        ("if(x<=0, x^2+x, x^2-x)", -0.5, 0.5),
    ];
    for (text, lo, hi) in cases {
        let e = parse(text)?;
        let iv = Interval::new(lo, hi)?;
        let enc = e.eval_interval(iv)?;
        println!("{text:<24} on {iv}: {enc}");
        for k in 0..=64 {
            let x = lo + (hi - lo) * k as f64 / 64.0;
            assert!(enc.contains(e.eval(x)?), "{text} escapes at {x}");
        }
    }

    let a = Interval::new(0.1, 0.1)?;
    println!("0.1 + 0.2 lies in {}", a.add(Interval::point(0.2)));
    Ok(())
}
