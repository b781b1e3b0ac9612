//! Closed intervals with outward rounding.
//!
//! Rigor model: every inexact elementary operation moves each endpoint one
//! representable double outward. Results that are provably exact (checked
//! with an FMA or two-sum residual) are kept as is. Library transcendentals
//! are not correctly rounded, so their endpoints move two doubles outward.

use serde::{Deserialize, Serialize};
use std::f64::consts::{FRAC_PI_2, PI, TAU};
use std::fmt;

use crate::error::{Error, Result};

/// Below this magnitude the FMA residual of a product may underflow, so
/// exactness cannot be decided and the result is always widened.
const EXACT_CHECK_FLOOR: f64 = 1e-270;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Interval {
    lo: f64,
    hi: f64,
}

impl Interval {
    /// Finite interval `[lo, hi]`.
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if lo.is_finite() && hi.is_finite() && lo <= hi {
            Ok(Interval { lo, hi })
        } else {
            Err(Error::InvalidInterval { lo, hi })
        }
    }

    /// Interval that may extend to infinity on either side, used for search
    /// domains such as half-lines.
    pub fn unbounded(lo: f64, hi: f64) -> Result<Self> {
        if !lo.is_nan() && !hi.is_nan() && lo <= hi && lo != f64::INFINITY && hi != f64::NEG_INFINITY
        {
            Ok(Interval { lo, hi })
        } else {
            Err(Error::InvalidInterval { lo, hi })
        }
    }

    pub fn point(x: f64) -> Self {
        Interval { lo: x, hi: x }
    }

    pub fn entire() -> Self {
        Interval { lo: f64::NEG_INFINITY, hi: f64::INFINITY }
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }

    pub fn hi(&self) -> f64 {
        self.hi
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    /// Midpoint, never outside the interval.
    pub fn midpoint(&self) -> f64 {
        if self.lo == self.hi {
            return self.lo;
        }
        let m = self.lo + (self.hi - self.lo) / 2.0;
        if m.is_finite() {
            m.clamp(self.lo, self.hi)
        } else {
            self.lo / 2.0 + self.hi / 2.0
        }
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }

    pub fn contains_zero(&self) -> bool {
        self.contains(0.0)
    }

    pub fn is_finite(&self) -> bool {
        self.lo.is_finite() && self.hi.is_finite()
    }

    pub fn hull(&self, other: &Interval) -> Interval {
        Interval { lo: self.lo.min(other.lo), hi: self.hi.max(other.hi) }
    }

    pub fn intersect(&self, other: &Interval) -> Option<Interval> {
        let lo = self.lo.max(other.lo);
        let hi = self.hi.min(other.hi);
        (lo <= hi).then_some(Interval { lo, hi })
    }

    /// Splits at the midpoint into two closed halves.
    pub fn bisect(&self) -> (Interval, Interval) {
        let m = self.midpoint();
        (Interval { lo: self.lo, hi: m }, Interval { lo: m, hi: self.hi })
    }

    fn raw(lo: f64, hi: f64) -> Self {
        Interval { lo, hi }
    }

    /// Replaces NaN endpoints (from `0 * inf` and friends) by the whole line.
    fn sanitize(lo: f64, hi: f64) -> Self {
        if lo.is_nan() || hi.is_nan() {
            Self::entire()
        } else {
            Interval { lo, hi }
        }
    }

    pub fn neg(self) -> Self {
        Self::raw(-self.hi, -self.lo)
    }

    pub fn add(self, rhs: Self) -> Self {
        Self::sanitize(add_down(self.lo, rhs.lo), add_up(self.hi, rhs.hi))
    }

    pub fn sub(self, rhs: Self) -> Self {
        Self::sanitize(add_down(self.lo, -rhs.hi), add_up(self.hi, -rhs.lo))
    }

    pub fn mul(self, rhs: Self) -> Self {
        let candidates = [
            (self.lo, rhs.lo),
            (self.lo, rhs.hi),
            (self.hi, rhs.lo),
            (self.hi, rhs.hi),
        ];
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for (a, b) in candidates {
            let (d, u) = mul_rounded(a, b);
            if d.is_nan() || u.is_nan() {
                return Self::entire();
            }
            lo = lo.min(d);
            hi = hi.max(u);
        }
        Self::raw(lo, hi)
    }

    pub fn div(self, rhs: Self) -> Result<Self> {
        if rhs.contains_zero() {
            return Err(Error::domain(format!("division by an interval containing zero {rhs}")));
        }
        let candidates = [
            (self.lo, rhs.lo),
            (self.lo, rhs.hi),
            (self.hi, rhs.lo),
            (self.hi, rhs.hi),
        ];
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for (a, b) in candidates {
            let (d, u) = div_rounded(a, b);
            if d.is_nan() || u.is_nan() {
                return Ok(Self::entire());
            }
            lo = lo.min(d);
            hi = hi.max(u);
        }
        Ok(Self::raw(lo, hi))
    }

    /// Integer power with tight even-power enclosures (`[-1,2]^2 = [0,4]`).
    pub fn powi(self, n: i64) -> Result<Self> {
        if n == 0 {
            return Ok(Self::point(1.0));
        }
        if n < 0 {
            let positive = self.powi(-n)?;
            return Self::point(1.0).div(positive);
        }
        if n % 2 == 1 {
            return Ok(Self::sanitize(
                repeated_product(self.lo, n).lo,
                repeated_product(self.hi, n).hi,
            ));
        }
        let (small, large) = if self.contains_zero() {
            (0.0, self.lo.abs().max(self.hi.abs()))
        } else {
            let (a, b) = (self.lo.abs(), self.hi.abs());
            (a.min(b), a.max(b))
        };
        let lo = if small == 0.0 { 0.0 } else { repeated_product(small, n).lo.max(0.0) };
        Ok(Self::sanitize(lo, repeated_product(large, n).hi))
    }

    /// Real power with constant non-integer exponent, through `exp(p log x)`.
    pub fn powf(self, p: f64) -> Result<Self> {
        if self.lo < 0.0 {
            return Err(Error::domain(format!("non-integer power {p} of {self}, which has negative values")));
        }
        if self.lo == 0.0 {
            if p < 0.0 {
                return Err(Error::domain(format!("negative power {p} of an interval touching zero")));
            }
            let upper = if self.hi == 0.0 {
                0.0
            } else {
                Interval::point(self.hi).ln()?.mul(Self::point(p)).exp().hi
            };
            return Ok(Self::raw(0.0, upper));
        }
        Ok(self.ln()?.mul(Self::point(p)).exp())
    }

    pub fn sqrt(self) -> Result<Self> {
        if self.lo < 0.0 {
            return Err(Error::domain(format!("sqrt of {self}, which has negative values")));
        }
        let lo = self.lo.sqrt();
        let hi = self.hi.sqrt();
        let lo = if sqrt_exact(self.lo, lo) { lo } else { lo.next_down().max(0.0) };
        let hi = if sqrt_exact(self.hi, hi) { hi } else { hi.next_up() };
        Ok(Self::raw(lo, hi))
    }

    pub fn abs(self) -> Self {
        if self.lo >= 0.0 {
            self
        } else if self.hi <= 0.0 {
            self.neg()
        } else {
            Self::raw(0.0, (-self.lo).max(self.hi))
        }
    }

    pub fn exp(self) -> Self {
        Self::raw(down2(self.lo.exp()).max(0.0), up2(self.hi.exp()))
    }

    pub fn ln(self) -> Result<Self> {
        if self.lo <= 0.0 {
            return Err(Error::domain(format!("log of {self}, which has non-positive values")));
        }
        Ok(Self::raw(down2(self.lo.ln()), up2(self.hi.ln())))
    }

    pub fn sin(self) -> Self {
        periodic_extremes(self, FRAC_PI_2, -FRAC_PI_2, f64::sin)
    }

    pub fn cos(self) -> Self {
        periodic_extremes(self, 0.0, PI, f64::cos)
    }

    pub fn tan(self) -> Result<Self> {
        if !self.is_finite() || straddles_lattice(self, FRAC_PI_2, PI) {
            return Err(Error::domain(format!("tan over {self}, which contains a pole")));
        }
        Ok(Self::raw(down2(self.lo.tan()), up2(self.hi.tan())))
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

fn down2(x: f64) -> f64 {
    x.next_down().next_down()
}

fn up2(x: f64) -> f64 {
    x.next_up().next_up()
}

fn two_sum_error(a: f64, b: f64, s: f64) -> f64 {
    let bb = s - a;
    (a - (s - bb)) + (b - bb)
}

fn add_down(a: f64, b: f64) -> f64 {
    let s = a + b;
    if !s.is_finite() || two_sum_error(a, b, s) == 0.0 {
        s
    } else {
        s.next_down()
    }
}

fn add_up(a: f64, b: f64) -> f64 {
    let s = a + b;
    if !s.is_finite() || two_sum_error(a, b, s) == 0.0 {
        s
    } else {
        s.next_up()
    }
}

fn mul_rounded(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    if a == 0.0 || b == 0.0 {
        // 0 * inf has no meaningful bound
        return if a.is_infinite() || b.is_infinite() { (f64::NAN, f64::NAN) } else { (0.0, 0.0) };
    }
    if !p.is_finite() {
        return (p, p);
    }
    let exact = a.abs() == 1.0
        || b.abs() == 1.0
        || (p.abs() >= EXACT_CHECK_FLOOR && a.mul_add(b, -p) == 0.0);
    if exact {
        (p, p)
    } else {
        (p.next_down(), p.next_up())
    }
}

fn div_rounded(a: f64, b: f64) -> (f64, f64) {
    let q = a / b;
    if a == 0.0 {
        return (0.0, 0.0);
    }
    if !q.is_finite() {
        return (q, q);
    }
    let exact = b.abs() == 1.0 || (q.abs() >= EXACT_CHECK_FLOOR && q.mul_add(b, -a) == 0.0);
    if exact {
        (q, q)
    } else {
        (q.next_down(), q.next_up())
    }
}

fn sqrt_exact(x: f64, s: f64) -> bool {
    x == 0.0 || x.is_infinite() || (s.abs() >= EXACT_CHECK_FLOOR && s.mul_add(s, -x) == 0.0)
}

/// Encloses `x^n` (n ≥ 1) by the same left-to-right product chain used by
/// the point evaluator.
fn repeated_product(x: f64, n: i64) -> Interval {
    let base = Interval::point(x);
    let mut acc = base;
    for _ in 1..n {
        acc = acc.mul(base);
    }
    acc
}

/// True if some `offset + k * period` may lie in the interval. Errs on the
/// side of reporting a hit.
fn straddles_lattice(iv: Interval, offset: f64, period: f64) -> bool {
    let slack = 1e-9;
    let t_lo = (iv.lo - offset) / period;
    let t_hi = (iv.hi - offset) / period;
    (t_hi + slack).floor() >= (t_lo - slack).ceil()
}

fn periodic_extremes(iv: Interval, max_at: f64, min_at: f64, f: fn(f64) -> f64) -> Interval {
    if !iv.is_finite() || iv.width() >= TAU {
        return Interval::raw(-1.0, 1.0);
    }
    let (a, b) = (f(iv.lo), f(iv.hi));
    let mut lo = down2(a.min(b)).max(-1.0);
    let mut hi = up2(a.max(b)).min(1.0);
    if straddles_lattice(iv, max_at, TAU) {
        hi = 1.0;
    }
    if straddles_lattice(iv, min_at, TAU) {
        lo = -1.0;
    }
    Interval::raw(lo, hi)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn iv(lo: f64, hi: f64) -> Interval {
        Interval::new(lo, hi).unwrap()
    }

    #[test]
    fn construction() {
        assert!(Interval::new(2.0, 1.0).is_err());
        assert!(Interval::new(f64::NAN, 1.0).is_err());
        assert!(Interval::new(0.0, f64::INFINITY).is_err());
        assert!(Interval::unbounded(f64::NEG_INFINITY, -2.0).is_ok());
    }

    #[test]
    fn exact_operations_stay_tight() {
        assert_eq!(iv(1.0, 2.0).add(iv(3.0, 4.0)), iv(4.0, 6.0));
        assert_eq!(iv(-1.0, 2.0).mul(iv(0.0, 0.0)), iv(0.0, 0.0));
        assert_eq!(iv(-1.0, 2.0).mul(iv(3.0, 3.0)), iv(-3.0, 6.0));
        assert_eq!(iv(-1.0, 2.0).powi(2).unwrap(), iv(0.0, 4.0));
        assert_eq!(iv(-2.0, -1.0).powi(3).unwrap(), iv(-8.0, -1.0));
        assert_eq!(iv(4.0, 9.0).sqrt().unwrap(), iv(2.0, 3.0));
    }

    #[test]
    fn inexact_operations_widen() {
        let third = iv(1.0, 1.0).div(iv(3.0, 3.0)).unwrap();
        assert!(third.lo() < 1.0 / 3.0 && 1.0 / 3.0 < third.hi());
        let s = iv(0.1, 0.1).add(iv(0.2, 0.2));
        assert!(s.lo() < 0.1 + 0.2 || s.hi() > 0.1 + 0.2);
        assert!(s.contains(0.1 + 0.2));
    }

    #[test]
    fn domain_errors() {
        assert!(iv(-1.0, 1.0).div(iv(-1.0, 1.0)).is_err());
        assert!(iv(-1.0, 1.0).sqrt().is_err());
        assert!(iv(0.0, 1.0).ln().is_err());
        assert!(iv(1.0, 2.0).tan().is_err());
        assert!(iv(-1.0, 1.0).powf(0.5).is_err());
    }

    #[test]
    fn trig_ranges() {
        let s = iv(0.0, 3.0).sin();
        assert_eq!(s.hi(), 1.0);
        assert!(s.lo() <= 0.0);
        let c = iv(3.0, 3.5).cos();
        assert_eq!(c.lo(), -1.0);
        let c = iv(0.0, 0.739).cos();
        assert!(c.lo() <= 0.739f64.cos() && c.hi() == 1.0);
        let t = iv(-1.0, 1.0).tan().unwrap();
        assert!(t.lo() <= (-1.0f64).tan() && t.hi() >= 1.0f64.tan());
    }

    #[test]
    fn fractional_power() {
        let r = iv(0.0, 4.0).powf(0.5).unwrap();
        assert!(r.lo() == 0.0 && r.hi() >= 2.0 && r.hi() < 2.0 + 1e-12);
    }
}
