use super::ast::{BinaryOp, Comparison, Expression, Piecewise, UnaryOp};
use super::interval::Interval;
use crate::error::{Error, Result};

/// Exponent as an integer when it is one and small enough to expand.
pub(crate) fn integer_exponent(p: f64) -> Option<i64> {
    (p.fract() == 0.0 && p.abs() <= 1024.0).then_some(p as i64)
}

/// `x^n` as the left-to-right product chain `x*x*...*x`.
pub(crate) fn powi_chain(x: f64, n: i64) -> f64 {
    match n {
        0 => 1.0,
        n if n < 0 => 1.0 / powi_chain(x, -n),
        n => {
            let mut acc = x;
            for _ in 1..n {
                acc *= x;
            }
            acc
        }
    }
}

fn finite(v: f64, what: impl FnOnce() -> String) -> Result<f64> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::Domain(what()))
    }
}

pub(crate) fn apply_unary(op: UnaryOp, u: f64) -> Result<f64> {
    let v = match op {
        UnaryOp::Neg => -u,
        UnaryOp::Sin => u.sin(),
        UnaryOp::Cos => u.cos(),
        UnaryOp::Tan => u.tan(),
        UnaryOp::Exp => u.exp(),
        UnaryOp::Log => {
            if u <= 0.0 {
                return Err(Error::domain(format!("log of non-positive value {u}")));
            }
            u.ln()
        }
        UnaryOp::Sqrt => {
            if u < 0.0 {
                return Err(Error::domain(format!("sqrt of negative value {u}")));
            }
            u.sqrt()
        }
        UnaryOp::Abs => u.abs(),
    };
    finite(v, || format!("{op:?} of {u} is not finite"))
}

pub(crate) fn apply_pow(base: f64, p: f64) -> Result<f64> {
    let v = match integer_exponent(p) {
        Some(n) => {
            if n < 0 && base == 0.0 {
                return Err(Error::domain(format!("zero raised to negative power {p}")));
            }
            powi_chain(base, n)
        }
        None => {
            if base < 0.0 {
                return Err(Error::domain(format!("negative base {base} raised to non-integer power {p}")));
            }
            if base == 0.0 && p < 0.0 {
                return Err(Error::domain(format!("zero raised to negative power {p}")));
            }
            base.powf(p)
        }
    };
    finite(v, || format!("{base}^{p} is not finite"))
}

impl Expression {
    /// Point evaluation in double precision, round to nearest.
    pub fn eval(&self, x: f64) -> Result<f64> {
        match self {
            Expression::Constant(c) => Ok(*c),
            Expression::Variable => finite(x, || format!("non-finite argument {x}")),
            Expression::Unary(op, c) => apply_unary(*op, c.eval(x)?),
            Expression::Binary(op, l, r) => {
                let a = l.eval(x)?;
                let b = r.eval(x)?;
                let v = match op {
                    BinaryOp::Add => a + b,
                    BinaryOp::Sub => a - b,
                    BinaryOp::Mul => a * b,
                    BinaryOp::Div => {
                        if b == 0.0 {
                            return Err(Error::domain(format!("division by zero at x = {x}")));
                        }
                        a / b
                    }
                    BinaryOp::Pow => return apply_pow(a, b),
                };
                finite(v, || format!("overflow at x = {x}"))
            }
            Expression::Piecewise(pw) => pw.select(x).eval(x),
        }
    }

    /// Interval extension with outward rounding. The result encloses
    /// `{ eval(x) : x in iv }`.
    ///
    /// This is the natural extension, tightened to the endpoint values when
    /// the derivative's enclosure shows the function is monotone on `iv`.
    pub fn eval_interval(&self, iv: Interval) -> Result<Interval> {
        let natural = self.natural_interval(iv)?;
        Ok(self
            .monotone_range(iv, &natural)
            .and_then(|m| m.intersect(&natural))
            .unwrap_or(natural))
    }

    fn monotone_range(&self, iv: Interval, natural: &Interval) -> Option<Interval> {
        if iv.width() == 0.0
            || !natural.is_finite()
            || self.guard_thresholds().iter().any(|t| iv.contains(*t))
        {
            return None;
        }
        let slope = self.differentiate().natural_interval(iv).ok()?;
        if slope.contains_zero() {
            return None;
        }
        let at_lo = self.natural_interval(Interval::point(iv.lo())).ok()?;
        let at_hi = self.natural_interval(Interval::point(iv.hi())).ok()?;
        let (low, high) = if slope.lo() > 0.0 { (at_lo, at_hi) } else { (at_hi, at_lo) };
        // Point evaluation in between carries its own rounding error; allow
        // for it with a margin scaled to the magnitudes involved.
        let scale = natural.lo().abs().max(natural.hi().abs());
        let slack = 8.0 * (scale.next_up() - scale);
        let lo = low.lo() - low.width() - slack;
        let hi = high.hi() + high.width() + slack;
        (lo <= hi).then(|| Interval::unbounded(lo, hi).ok()).flatten()
    }

    /// Natural interval extension: each operation applied to the operand
    /// enclosures.
    pub fn natural_interval(&self, iv: Interval) -> Result<Interval> {
        match self {
            Expression::Constant(c) => Ok(Interval::point(*c)),
            Expression::Variable => Ok(iv),
            Expression::Unary(op, c) => {
                let u = c.natural_interval(iv)?;
                match op {
                    UnaryOp::Neg => Ok(u.neg()),
                    UnaryOp::Sin => Ok(u.sin()),
                    UnaryOp::Cos => Ok(u.cos()),
                    UnaryOp::Tan => u.tan(),
                    UnaryOp::Exp => Ok(u.exp()),
                    UnaryOp::Log => u.ln(),
                    UnaryOp::Sqrt => u.sqrt(),
                    UnaryOp::Abs => Ok(u.abs()),
                }
            }
            Expression::Binary(op, l, r) => {
                if *op == BinaryOp::Pow {
                    let base = l.natural_interval(iv)?;
                    let p = r.eval(0.0)?;
                    return match integer_exponent(p) {
                        Some(n) => base.powi(n),
                        None => base.powf(p),
                    };
                }
                let a = l.natural_interval(iv)?;
                let b = r.natural_interval(iv)?;
                match op {
                    BinaryOp::Add => Ok(a.add(b)),
                    BinaryOp::Sub => Ok(a.sub(b)),
                    BinaryOp::Mul => Ok(a.mul(b)),
                    BinaryOp::Div => a.div(b),
                    BinaryOp::Pow => unreachable!(),
                }
            }
            Expression::Piecewise(pw) => piecewise_interval(pw, iv),
        }
    }
}

/// Hull of every branch over the part of `iv` that selects it. Boundary
/// points are included on both sides (closures), which keeps the result an
/// enclosure over the reals as well as over doubles.
fn piecewise_interval(pw: &Piecewise, iv: Interval) -> Result<Interval> {
    let mut remaining = Some(iv);
    let mut acc: Option<Interval> = None;
    for (guard, branch) in &pw.arms {
        let Some(rest) = remaining else { break };
        let t = guard.threshold_value();
        let (selected, unselected) = split_at(rest, t, guard.cmp);
        if let Some(part) = selected {
            let r = branch.natural_interval(part)?;
            acc = Some(acc.map_or(r, |a| a.hull(&r)));
        }
        remaining = unselected;
    }
    if let Some(rest) = remaining {
        let r = pw.otherwise.natural_interval(rest)?;
        acc = Some(acc.map_or(r, |a| a.hull(&r)));
    }
    acc.ok_or_else(|| Error::domain("empty piecewise selection"))
}

fn split_at(iv: Interval, t: f64, cmp: Comparison) -> (Option<Interval>, Option<Interval>) {
    let lower = Interval::unbounded(f64::NEG_INFINITY, t).ok().and_then(|h| iv.intersect(&h));
    let upper = Interval::unbounded(t, f64::INFINITY).ok().and_then(|h| iv.intersect(&h));
    // A closure that degenerates to the threshold itself is kept only on
    // the side the guard actually sends the threshold to.
    let t_selected = cmp.holds(t, t);
    let keep = |part: Option<Interval>, selected_side: bool| {
        part.filter(|p| p.width() > 0.0 || t_selected == selected_side)
    };
    if cmp.selects_below() {
        (keep(lower, true), keep(upper, false))
    } else {
        (keep(upper, true), keep(lower, false))
    }
}
