//! Detecting periodic orbits in a window of iterates.
//!
//!     cargo run --example cycle_detection

use newton_certify::detect_cycle;

fn main() {
    let t = 1.0 / 3.0;
    let windows: [(&str, Vec<f64>); 4] = [
        ("+-1/3", vec![-t, t, -t, t, -t, t, -t, t]),
        ("period 3", vec![0.1, 2.5, -7.0, 0.1, 2.5, -7.0, 0.1, 2.5]),
        ("halving", (0..8).map(|k| 0.5f64.powi(k)).collect()),
        ("settled", vec![1.0; 8]),
    ];
    for (name, w) in windows {
        match detect_cycle(&w, 1e-10) {
            Some((p, points)) => println!("{name:<9} period {p}: {points:?}"),
            None => println!("{name:<9} no cycle"),
        }
    }
}
