//! Pretty-printer producing text that parses back to the same tree.

use super::ast::{BinaryOp, Expression, UnaryOp};

const PREC_ADD: u8 = 1;
const PREC_MUL: u8 = 2;
const PREC_POW: u8 = 3;
const PREC_NEG: u8 = 4;
const PREC_ATOM: u8 = 5;

fn precedence(e: &Expression) -> u8 {
    match e {
        Expression::Constant(v) if v.is_sign_negative() => PREC_NEG,
        Expression::Constant(_) | Expression::Variable | Expression::Piecewise(_) => PREC_ATOM,
        Expression::Unary(UnaryOp::Neg, _) => PREC_NEG,
        Expression::Unary(_, _) => PREC_ATOM,
        Expression::Binary(BinaryOp::Add | BinaryOp::Sub, _, _) => PREC_ADD,
        Expression::Binary(BinaryOp::Mul | BinaryOp::Div, _, _) => PREC_MUL,
        Expression::Binary(BinaryOp::Pow, _, _) => PREC_POW,
    }
}

/// Shortest decimal that round-trips through `f64` parsing.
pub fn format_number(v: f64) -> String {
    let a = v.abs();
    if v.fract() == 0.0 && a < 1e16 {
        format!("{v:.0}")
    } else if a == 0.0 || (1e-5..1e16).contains(&a) {
        format!("{v}")
    } else {
        format!("{v:e}")
    }
}

pub fn format(e: &Expression) -> String {
    let mut out = String::new();
    write(e, &mut out);
    out
}

fn write_child(child: &Expression, parens: bool, out: &mut String) {
    if parens {
        out.push('(');
        write(child, out);
        out.push(')');
    } else {
        write(child, out);
    }
}

fn write(e: &Expression, out: &mut String) {
    match e {
        Expression::Constant(v) => out.push_str(&format_number(*v)),
        Expression::Variable => out.push('x'),
        Expression::Unary(UnaryOp::Neg, c) => {
            out.push('-');
            let parens = precedence(c) <= PREC_NEG;
            write_child(c, parens, out);
        }
        Expression::Unary(op, c) => {
            out.push_str(op.function_name().unwrap_or_default());
            out.push('(');
            write(c, out);
            out.push(')');
        }
        Expression::Binary(op, l, r) => {
            let p = precedence(e);
            let (left_parens, right_parens) = match op {
                BinaryOp::Pow => (precedence(l) <= PREC_POW, precedence(r) < PREC_POW),
                _ => (precedence(l) < p, precedence(r) <= p),
            };
            write_child(l, left_parens, out);
            out.push(op.symbol());
            write_child(r, right_parens, out);
        }
        Expression::Piecewise(pw) => {
            for (guard, branch) in &pw.arms {
                out.push_str("if(x");
                out.push_str(guard.cmp.symbol());
                write(&guard.threshold, out);
                out.push_str(", ");
                write(branch, out);
                out.push_str(", ");
            }
            write(&pw.otherwise, out);
            for _ in &pw.arms {
                out.push(')');
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse;

    fn round(s: &str) -> String {
        format(&parse(s).unwrap())
    }

    #[test]
    fn canonical_forms() {
        assert_eq!(round("x^3-2*x+2"), "x^3-2*x+2");
        assert_eq!(round("(x^2)^3"), "(x^2)^3");
        assert_eq!(round("x^(2^3)"), "x^2^3");
        assert_eq!(round("-(x^2)"), "-(x^2)");
        assert_eq!(round("(-x)^2"), "-x^2");
    }

    #[test]
    fn piecewise_prints_as_nested_calls() {
        assert_eq!(round("if(x<=0, x^2+x, x^2-x)"), "if(x<=0, x^2+x, x^2-x)");
        assert_eq!(round("if(x<0,1,if(x>=2,3,x))"), "if(x<0, 1, if(x>=2, 3, x))");
    }

    #[test]
    fn associativity_is_preserved() {
        assert_eq!(round("1-(x-2)"), "1-(x-2)");
        assert_eq!(round("(1-x)-2"), "1-x-2");
        assert_eq!(round("x/(2*x)"), "x/(2*x)");
        assert_eq!(round("x*(2/x)"), "x*(2/x)");
    }

    #[test]
    fn numbers() {
        assert_eq!(format_number(400.0), "400");
        assert_eq!(format_number(-2.0), "-2");
        assert_eq!(format_number(0.5), "0.5");
        assert_eq!(format_number(1e-12), "1e-12");
        assert_eq!(format_number(1.5e300), "1.5e300");
        assert_eq!(format_number(-1.7692923542386314), "-1.7692923542386314");
    }
}
