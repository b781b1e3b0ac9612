//! Parsing, printing and differentiating expressions.
//!
//!     cargo run --example symbolic_diff

use newton_certify::parse;

fn main() -> Result<(), newton_certify::Error> {
    for text in ["x^3-2*x+2", "if(x<=0, x^2+x, x^2-x)", "sin(x)*exp(-x)", "sqrt(x)+1/x", "-x^2"] {
        let e = parse(text)?;
        let d1 = e.differentiate();
        let d2 = d1.differentiate();
        println!("f   = {e}\nf'  = {d1}\nf'' = {d2}\n");
        assert_eq!(parse(&e.to_string())?, e);
    }

    let jet = parse("x^3-2*x+2")?.eval_jet2(-400.0)?;
    println!("at x = -400: f = {}, f' = {}, f'' = {}", jet.value, jet.d1, jet.d2);

    for bad in ["x^", "x+y", "2^x", "sin(x"] {
        println!("{bad:<8} -> {}", parse(bad).unwrap_err());
    }
    Ok(())
}
