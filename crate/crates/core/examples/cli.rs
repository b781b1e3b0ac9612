//! Driving the command-line front end in-process, as the binary does.
//!
//!     cargo run --example cli -- certified-solve --expr "x^3-2*x+2" --bracket -5,0 --out csv

fn main() {
    let mut args: Vec<String> = std::env::args().collect();
    if args.len() == 1 {
        args.extend(["solve", "--expr", "x^3-2*x+2", "--x0", "-400", "--out", "csv"].map(String::from));
    }
    let out = newton_certify::cli::run(args);
    print!("{}", out.stdout);
    eprint!("{}", out.stderr);
    std::process::exit(out.code);
}
