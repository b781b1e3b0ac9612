use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::expr::{Expression, Interval};

/// Narrow interval with a strict sign change of `f` at its endpoints.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RootEnclosure {
    #[serde(flatten)]
    pub interval: Interval,
    pub sign_left: i8,
    pub sign_right: i8,
    pub width: f64,
}

impl RootEnclosure {
    pub fn lo(&self) -> f64 {
        self.interval.lo()
    }

    pub fn hi(&self) -> f64 {
        self.interval.hi()
    }

    pub fn midpoint(&self) -> f64 {
        self.interval.midpoint()
    }

    /// Re-evaluates the endpoint signs of `e` against the recorded ones.
    pub fn is_consistent_with(&self, e: &Expression) -> bool {
        let sign = |x: f64| e.eval(x).ok().map(strict_sign);
        self.sign_left * self.sign_right == -1
            && sign(self.lo()) == Some(Some(self.sign_left))
            && sign(self.hi()) == Some(Some(self.sign_right))
            && self.width == self.interval.width()
    }
}

fn strict_sign(v: f64) -> Option<i8> {
    if v > 0.0 {
        Some(1)
    } else if v < 0.0 {
        Some(-1)
    } else {
        None
    }
}

fn enclosure(lo: f64, hi: f64, sign_left: i8) -> RootEnclosure {
    RootEnclosure {
        interval: Interval::new(lo, hi).expect("bisection keeps lo <= hi"),
        sign_left,
        sign_right: -sign_left,
        width: hi - lo,
    }
}

/// Brackets a root of `e` inside `search` to width at most `tol`.
///
/// Bisection runs until the bracket is a quarter of `tol`; the returned
/// enclosure is then re-centred to width `tol` (clipped to `search`) so
/// that the root sits well inside it and the sign at each endpoint is
/// clear of rounding noise. If the re-centred endpoints do not keep the
/// sign change, the tight bracket is returned instead. When `tol` is
/// below the double spacing near the root the result is the pair of
/// adjacent doubles around it.
pub fn isolate_root(e: &Expression, search: Interval, tol: f64) -> Result<RootEnclosure> {
    if !(tol > 0.0) || !search.is_finite() {
        return Err(Error::Precondition(format!(
            "root isolation needs a finite search interval and tol > 0 (got {search}, tol = {tol})"
        )));
    }
    let (mut lo, mut hi) = (search.lo(), search.hi());
    let (f_lo, f_hi) = (e.eval(lo)?, e.eval(hi)?);
    let (Some(s_lo), Some(s_hi)) = (strict_sign(f_lo), strict_sign(f_hi)) else {
        return Err(Error::NoSignChange { lo, hi, f_lo, f_hi });
    };
    if s_lo == s_hi {
        return Err(Error::NoSignChange { lo, hi, f_lo, f_hi });
    }

    let mut exact_zero = None;
    while hi - lo > tol / 4.0 {
        let m = lo + (hi - lo) / 2.0;
        if m <= lo || m >= hi {
            break;
        }
        match strict_sign(e.eval(m)?) {
            None => {
                exact_zero = Some(m);
                break;
            }
            Some(s) if s == s_lo => lo = m,
            Some(_) => hi = m,
        }
    }

    let centre = match exact_zero {
        Some(z) => z,
        None if hi - lo <= tol / 4.0 => lo + (hi - lo) / 2.0,
        // stalled on adjacent doubles
        None => return Ok(enclosure(lo, hi, s_lo)),
    };

    let half = tol / 2.0;
    let wide_lo = (centre - half).max(search.lo());
    let mut wide_hi = (centre + half).min(search.hi());
    while wide_hi - wide_lo > tol {
        wide_hi = wide_hi.next_down();
    }
    let keeps_sign = |x: f64, s: i8| matches!(e.eval(x), Ok(v) if strict_sign(v) == Some(s));
    if wide_lo < centre && centre < wide_hi && keeps_sign(wide_lo, s_lo) && keeps_sign(wide_hi, -s_lo) {
        return Ok(enclosure(wide_lo, wide_hi, s_lo));
    }
    if exact_zero.is_none() {
        return Ok(enclosure(lo, hi, s_lo));
    }
    // exact zero at the centre: widen symmetrically until both sides are signed
    let mut step = centre.abs().max(f64::MIN_POSITIVE) * f64::EPSILON;
    loop {
        let a = (centre - step).max(search.lo());
        let b = (centre + step).min(search.hi());
        if keeps_sign(a, s_lo) && keeps_sign(b, -s_lo) {
            return Ok(enclosure(a, b, s_lo));
        }
        if a == search.lo() && b == search.hi() {
            return Ok(enclosure(search.lo(), search.hi(), s_lo));
        }
        step *= 2.0;
    }
}

/// Brackets a fixed point of `g`, i.e. a root of `g(x) - x`.
pub fn isolate_fixed_point(g: &Expression, search: Interval, tol: f64) -> Result<RootEnclosure> {
    isolate_root(&fixed_point_residual(g), search, tol)
}

/// `g(x) - x`.
pub fn fixed_point_residual(g: &Expression) -> Expression {
    Expression::sub(g.clone(), Expression::Variable)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse;

    fn iv(lo: f64, hi: f64) -> Interval {
        Interval::new(lo, hi).unwrap()
    }

    #[test]
    fn cubic_root() {
        let f = parse("x^3-2*x+2").unwrap();
        let r = isolate_root(&f, iv(-2.0, 0.0), 1e-12).unwrap();
        assert!(r.width <= 1e-12);
        assert!(r.interval.contains(-1.7692923542386314));
        assert_eq!((r.sign_left, r.sign_right), (-1, 1));
        assert!(r.is_consistent_with(&f));
    }

    #[test]
    fn identity_root_at_exact_midpoint() {
        let f = parse("x").unwrap();
        let r = isolate_root(&f, iv(-1.0, 1.0), 1e-12).unwrap();
        assert!(r.interval.contains(0.0) && r.lo() < 0.0 && r.hi() > 0.0);
        assert!(r.width <= 1e-12);
        assert!(r.is_consistent_with(&f));
    }

    #[test]
    fn quadratic_root_at_zero() {
        let f = parse("x^2+x").unwrap();
        let r = isolate_root(&f, iv(-0.4, 0.3), 1e-12).unwrap();
        assert!(r.interval.contains(0.0) && r.width <= 1e-12);
        assert!(r.is_consistent_with(&f));
    }

    #[test]
    fn no_sign_change() {
        let f = parse("x^2+1").unwrap();
        assert!(matches!(isolate_root(&f, iv(-1.0, 1.0), 1e-12), Err(Error::NoSignChange { .. })));
        let f = parse("x").unwrap();
        assert!(matches!(isolate_root(&f, iv(0.0, 1.0), 1e-12), Err(Error::NoSignChange { .. })));
    }

    #[test]
    fn tolerance_below_double_spacing() {
        let f = parse("x^3-2*x+2").unwrap();
        let r = isolate_root(&f, iv(-2.0, 0.0), 1e-30).unwrap();
        assert!(r.width > 0.0 && r.width <= 4.0 * f64::EPSILON);
        assert!(r.is_consistent_with(&f));
    }

    #[test]
    fn cosine_fixed_point() {
        let g = parse("cos(x)").unwrap();
        let r = isolate_fixed_point(&g, iv(0.0, 1.0), 1e-12).unwrap();
        assert!(r.interval.contains(0.7390851332151607));
    }
}
