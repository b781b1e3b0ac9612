fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(1.0)
}

/// Smallest period `p` in `2..=len/2` with `window[i] ≈ window[i + p]` for
/// every applicable `i`, together with the first `p` points.
///
/// Windows in which two consecutive values agree are treated as converging
/// and never reported as cycles.
pub fn detect_cycle(window: &[f64], tol: f64) -> Option<(usize, Vec<f64>)> {
    let n = window.len();
    if n < 4 || window.windows(2).any(|w| close(w[0], w[1], tol)) {
        return None;
    }
    (2..=n / 2)
        .find(|&p| (0..n - p).all(|i| close(window[i], window[i + p], tol)))
        .map(|p| (p, window[..p].to_vec()))
}
