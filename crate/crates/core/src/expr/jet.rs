//! Second-order forward-mode differentiation.

use serde::{Deserialize, Serialize};

use super::ast::{BinaryOp, Expression, UnaryOp};
use super::eval::{apply_pow, integer_exponent, powi_chain};
use crate::error::{Error, Result};

/// Value with first and second derivative at a point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Jet2 {
    pub value: f64,
    pub d1: f64,
    pub d2: f64,
}

impl Jet2 {
    pub fn constant(value: f64) -> Self {
        Jet2 { value, d1: 0.0, d2: 0.0 }
    }

    /// The independent variable seeded at `x`.
    pub fn variable(x: f64) -> Self {
        Jet2 { value: x, d1: 1.0, d2: 0.0 }
    }

    fn checked(self, what: &str) -> Result<Self> {
        if self.value.is_finite() && self.d1.is_finite() && self.d2.is_finite() {
            Ok(self)
        } else {
            Err(Error::Domain(format!("{what} produced a non-finite derivative")))
        }
    }

    /// `g(self)` given `g`, `g'`, `g''` at `self.value`.
    fn chain(self, g: f64, g1: f64, g2: f64) -> Self {
        Jet2 {
            value: g,
            d1: g1 * self.d1,
            d2: g2 * self.d1 * self.d1 + g1 * self.d2,
        }
    }

    fn add(self, o: Self) -> Self {
        Jet2 { value: self.value + o.value, d1: self.d1 + o.d1, d2: self.d2 + o.d2 }
    }

    fn sub(self, o: Self) -> Self {
        Jet2 { value: self.value - o.value, d1: self.d1 - o.d1, d2: self.d2 - o.d2 }
    }

    fn mul(self, o: Self) -> Self {
        Jet2 {
            value: self.value * o.value,
            d1: self.d1 * o.value + self.value * o.d1,
            d2: self.d2 * o.value + 2.0 * self.d1 * o.d1 + self.value * o.d2,
        }
    }

    fn recip(self) -> Result<Self> {
        let v = self.value;
        if v == 0.0 {
            return Err(Error::domain("division by zero"));
        }
        let r = 1.0 / v;
        Ok(self.chain(r, -r * r, 2.0 * r * r * r))
    }

    fn unary(self, op: UnaryOp) -> Result<Self> {
        let u = self.value;
        let out = match op {
            UnaryOp::Neg => Jet2 { value: -u, d1: -self.d1, d2: -self.d2 },
            UnaryOp::Sin => {
                let (s, c) = u.sin_cos();
                self.chain(s, c, -s)
            }
            UnaryOp::Cos => {
                let (s, c) = u.sin_cos();
                self.chain(c, -s, -c)
            }
            UnaryOp::Tan => {
                let t = u.tan();
                let sec2 = 1.0 + t * t;
                self.chain(t, sec2, 2.0 * t * sec2)
            }
            UnaryOp::Exp => {
                let e = u.exp();
                self.chain(e, e, e)
            }
            UnaryOp::Log => {
                if u <= 0.0 {
                    return Err(Error::domain(format!("log of non-positive value {u}")));
                }
                self.chain(u.ln(), 1.0 / u, -1.0 / (u * u))
            }
            UnaryOp::Sqrt => {
                if u <= 0.0 {
                    return Err(Error::domain(format!("sqrt is not differentiable at {u}")));
                }
                let s = u.sqrt();
                self.chain(s, 0.5 / s, -0.25 / (s * u))
            }
            UnaryOp::Abs => {
                if u == 0.0 {
                    return Err(Error::domain("abs is not differentiable at 0"));
                }
                let sign = u.signum();
                self.chain(u.abs(), sign, 0.0)
            }
        };
        out.checked(&format!("{op:?}"))
    }

    fn pow(self, p: f64) -> Result<Self> {
        let u = self.value;
        let value = apply_pow(u, p)?;
        let (g1, g2) = match integer_exponent(p) {
            Some(0) => (0.0, 0.0),
            Some(1) => (1.0, 0.0),
            Some(n) => {
                // u != 0 whenever n < 0, apply_pow rejects it
                let n_f = n as f64;
                (n_f * powi_chain(u, n - 1), n_f * (n_f - 1.0) * powi_chain(u, n - 2))
            }
            None => (p * u.powf(p - 1.0), p * (p - 1.0) * u.powf(p - 2.0)),
        };
        self.chain(value, g1, g2).checked("pow")
    }
}

impl Expression {
    /// `(f(x), f'(x), f''(x))` by forward propagation. At a piecewise
    /// threshold the branch selected by the guard supplies all three
    /// components, which gives one-sided derivatives at branch ends.
    pub fn eval_jet2(&self, x: f64) -> Result<Jet2> {
        let out = match self {
            Expression::Constant(c) => Jet2::constant(*c),
            Expression::Variable => Jet2::variable(x),
            Expression::Unary(op, c) => c.eval_jet2(x)?.unary(*op)?,
            Expression::Binary(op, l, r) => {
                let a = l.eval_jet2(x)?;
                match op {
                    BinaryOp::Pow => a.pow(r.eval(0.0)?)?,
                    BinaryOp::Add => a.add(r.eval_jet2(x)?),
                    BinaryOp::Sub => a.sub(r.eval_jet2(x)?),
                    BinaryOp::Mul => a.mul(r.eval_jet2(x)?),
                    BinaryOp::Div => a.mul(r.eval_jet2(x)?.recip()?),
                }
            }
            Expression::Piecewise(pw) => pw.select(x).eval_jet2(x)?,
        };
        out.checked("evaluation")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse;

    #[test]
    fn polynomial_jets() {
        let f = parse("x^3-2*x+2").unwrap();
        assert_eq!(f.eval_jet2(1.0).unwrap(), Jet2 { value: 1.0, d1: 1.0, d2: 6.0 });
        let j = f.eval_jet2(-400.0).unwrap();
        assert_eq!(j.value, -63999198.0);
        assert_eq!(j.d1, 479998.0);
        assert_eq!(-400.0 - j.value / j.d1, -266.6677819490915);
    }

    #[test]
    fn quadratic_at_minus_third() {
        let g = parse("x^2+x").unwrap();
        let j = g.eval_jet2(-1.0 / 3.0).unwrap();
        assert!((j.value + 2.0 / 9.0).abs() < 1e-16);
        assert!((j.d1 - 1.0 / 3.0).abs() < 1e-16);
        assert_eq!(j.d2, 2.0);
    }

    #[test]
    fn one_sided_at_threshold() {
        let f = parse("if(x<=0, x^2+x, x^2-x)").unwrap();
        assert_eq!(f.eval_jet2(0.0).unwrap(), Jet2 { value: 0.0, d1: 1.0, d2: 2.0 });
        assert_eq!(f.eval_jet2(1e-300).unwrap().d1, -1.0);
    }

    #[test]
    fn transcendental_jets() {
        let f = parse("sin(x)*exp(x)").unwrap();
        let x: f64 = 0.7;
        let j = f.eval_jet2(x).unwrap();
        let d1 = x.exp() * (x.sin() + x.cos());
        let d2 = 2.0 * x.exp() * x.cos();
        assert!((j.d1 - d1).abs() < 1e-14);
        assert!((j.d2 - d2).abs() < 1e-14);
    }

    #[test]
    fn non_differentiable_points() {
        assert!(parse("abs(x)").unwrap().eval_jet2(0.0).is_err());
        assert!(parse("sqrt(x)").unwrap().eval_jet2(0.0).is_err());
        assert!(parse("1/x").unwrap().eval_jet2(0.0).is_err());
        assert_eq!(parse("abs(x)").unwrap().eval_jet2(-2.0).unwrap().d1, -1.0);
    }
}
