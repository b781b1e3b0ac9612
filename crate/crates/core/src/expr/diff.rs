//! Symbolic differentiation with light simplification.

use super::ast::{BinaryOp, Expression, Piecewise, UnaryOp};

use Expression::{Binary, Constant, Piecewise as Pw, Unary, Variable};

impl Expression {
    /// Symbolic derivative with respect to `x`.
    ///
    /// Piecewise expressions differentiate branch-wise and keep their
    /// guards. `abs(u)` differentiates to `u/abs(u)*u'`, which fails at
    /// evaluation time where `u = 0`.
    pub fn differentiate(&self) -> Expression {
        simplify(derive(self))
    }

    /// Light simplification: constant folding and 0/1 identities.
    pub fn simplified(&self) -> Expression {
        simplify(self.clone())
    }
}

fn c(v: f64) -> Expression {
    Constant(v)
}

fn derive(e: &Expression) -> Expression {
    match e {
        Constant(_) => c(0.0),
        Variable => c(1.0),
        Unary(op, u) => {
            let du = derive(u);
            let u = (**u).clone();
            let outer = match op {
                UnaryOp::Neg => return Expression::neg(du),
                UnaryOp::Sin => Expression::unary(UnaryOp::Cos, u),
                UnaryOp::Cos => Expression::neg(Expression::unary(UnaryOp::Sin, u)),
                UnaryOp::Tan => Expression::add(
                    c(1.0),
                    Expression::pow(Expression::unary(UnaryOp::Tan, u), c(2.0)),
                ),
                UnaryOp::Exp => Expression::unary(UnaryOp::Exp, u),
                UnaryOp::Log => return Expression::div(du, u),
                UnaryOp::Sqrt => {
                    return Expression::div(
                        du,
                        Expression::mul(c(2.0), Expression::unary(UnaryOp::Sqrt, u)),
                    )
                }
                UnaryOp::Abs => Expression::div(u.clone(), Expression::unary(UnaryOp::Abs, u)),
            };
            Expression::mul(outer, du)
        }
        Binary(op, l, r) => {
            let (u, v) = ((**l).clone(), (**r).clone());
            match op {
                BinaryOp::Add => Expression::add(derive(l), derive(r)),
                BinaryOp::Sub => Expression::sub(derive(l), derive(r)),
                BinaryOp::Mul => Expression::add(
                    Expression::mul(derive(l), v),
                    Expression::mul(u, derive(r)),
                ),
                BinaryOp::Div => Expression::div(
                    Expression::sub(Expression::mul(derive(l), v.clone()), Expression::mul(u, derive(r))),
                    Expression::pow(v, c(2.0)),
                ),
                BinaryOp::Pow => {
                    // exponent is constant by construction
                    let lowered = match simplify(v.clone()) {
                        Constant(p) => c(p - 1.0),
                        other => Expression::sub(other, c(1.0)),
                    };
                    Expression::mul(Expression::mul(v, Expression::pow(u, lowered)), derive(l))
                }
            }
        }
        Pw(pw) => Pw(Piecewise {
            arms: pw.arms.iter().map(|(g, b)| (g.clone(), derive(b))).collect(),
            otherwise: Box::new(derive(&pw.otherwise)),
        }),
    }
}

fn is_const(e: &Expression, v: f64) -> bool {
    matches!(e, Constant(c) if *c == v)
}

fn simplify(e: Expression) -> Expression {
    match e {
        Constant(_) | Variable => e,
        Unary(op, u) => {
            let u = simplify(*u);
            if let Constant(v) = u {
                if let Ok(folded) = super::eval::apply_unary(op, v) {
                    return c(folded);
                }
            }
            match (op, u) {
                (UnaryOp::Neg, Unary(UnaryOp::Neg, inner)) => *inner,
                (op, u) => Expression::unary(op, u),
            }
        }
        Binary(op, l, r) => {
            let l = simplify(*l);
            let r = simplify(*r);
            if let (Constant(_), Constant(_)) = (&l, &r) {
                if let Ok(v) = Expression::binary(op, l.clone(), r.clone()).eval(0.0) {
                    return c(v);
                }
            }
            match op {
                BinaryOp::Add if is_const(&l, 0.0) => r,
                BinaryOp::Add | BinaryOp::Sub if is_const(&r, 0.0) => l,
                BinaryOp::Sub if is_const(&l, 0.0) => simplify(Expression::neg(r)),
                BinaryOp::Mul if is_const(&l, 0.0) || is_const(&r, 0.0) => c(0.0),
                BinaryOp::Mul if is_const(&l, 1.0) => r,
                BinaryOp::Mul | BinaryOp::Div if is_const(&r, 1.0) => l,
                BinaryOp::Mul if is_const(&l, -1.0) => simplify(Expression::neg(r)),
                BinaryOp::Div if is_const(&l, 0.0) => c(0.0),
                BinaryOp::Pow if is_const(&r, 0.0) => c(1.0),
                BinaryOp::Pow if is_const(&r, 1.0) => l,
                // (a * u) * b  ->  (a*b) * u  for constants a, b
                BinaryOp::Mul => match (l, r) {
                    (Binary(BinaryOp::Mul, a, u), Constant(b)) if matches!(*a, Constant(_)) => {
                        let Constant(a) = *a else { unreachable!() };
                        simplify(Expression::mul(c(a * b), *u))
                    }
                    (Constant(a), Binary(BinaryOp::Mul, b, u)) if matches!(*b, Constant(_)) => {
                        let Constant(b) = *b else { unreachable!() };
                        simplify(Expression::mul(c(a * b), *u))
                    }
                    (l, r) => Expression::mul(l, r),
                },
                _ => Expression::binary(op, l, r),
            }
        }
        Pw(pw) => Pw(Piecewise {
            arms: pw.arms.into_iter().map(|(g, b)| (g, simplify(b))).collect(),
            otherwise: Box::new(simplify(*pw.otherwise)),
        }),
    }
}
