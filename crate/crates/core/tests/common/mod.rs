#![allow(dead_code)]

use newton_certify::expr::UnaryOp;
use newton_certify::Expression;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn constant(rng: &mut ChaCha8Rng) -> Expression {
    let v = (rng.gen_range(-40..=40) as f64) / 8.0;
    Expression::Constant(if v == 0.0 { 0.5 } else { v })
}

fn leaf(rng: &mut ChaCha8Rng) -> Expression {
    if rng.gen_bool(0.6) {
        Expression::Variable
    } else {
        constant(rng)
    }
}

/// Random expression in `x` built from smooth operations only, so it is
/// defined and twice differentiable everywhere except where a divisor
/// vanishes.
pub fn smooth_expression(rng: &mut ChaCha8Rng, depth: u32) -> Expression {
    if depth == 0 || rng.gen_bool(0.2) {
        return leaf(rng);
    }
    let sub = |rng: &mut ChaCha8Rng| smooth_expression(rng, depth - 1);
    match rng.gen_range(0..9) {
        0 => Expression::add(sub(rng), sub(rng)),
        1 => Expression::sub(sub(rng), sub(rng)),
        2 | 3 => Expression::mul(sub(rng), sub(rng)),
        4 => {
            // divisor bounded away from zero
            let d = Expression::add(Expression::pow(sub(rng), Expression::Constant(2.0)), Expression::Constant(1.0));
            Expression::div(sub(rng), d)
        }
        5 => Expression::pow(sub(rng), Expression::Constant(rng.gen_range(2..=3) as f64)),
        6 => Expression::unary(UnaryOp::Sin, sub(rng)),
        7 => Expression::unary(UnaryOp::Cos, sub(rng)),
        _ => Expression::unary(UnaryOp::Neg, sub(rng)),
    }
}

/// Like [`smooth_expression`] but also using functions with restricted
/// domains and kinks, for soundness checks that tolerate evaluation errors.
pub fn any_expression(rng: &mut ChaCha8Rng, depth: u32) -> Expression {
    if depth == 0 || rng.gen_bool(0.2) {
        return leaf(rng);
    }
    let sub = |rng: &mut ChaCha8Rng| any_expression(rng, depth - 1);
    match rng.gen_range(0..14) {
        0 => Expression::add(sub(rng), sub(rng)),
        1 => Expression::sub(sub(rng), sub(rng)),
        2 => Expression::mul(sub(rng), sub(rng)),
        3 => Expression::div(sub(rng), sub(rng)),
        4 => Expression::pow(sub(rng), Expression::Constant(rng.gen_range(-2..=4) as f64)),
        5 => Expression::pow(sub(rng), Expression::Constant(0.5)),
        6 => Expression::unary(UnaryOp::Sin, sub(rng)),
        7 => Expression::unary(UnaryOp::Cos, sub(rng)),
        8 => Expression::unary(UnaryOp::Tan, sub(rng)),
        9 => Expression::unary(UnaryOp::Exp, sub(rng)),
        10 => Expression::unary(UnaryOp::Log, sub(rng)),
        11 => Expression::unary(UnaryOp::Sqrt, sub(rng)),
        12 => Expression::unary(UnaryOp::Abs, sub(rng)),
        _ => Expression::unary(UnaryOp::Neg, sub(rng)),
    }
}

/// Units in the last place of `v`.
pub fn ulp(v: f64) -> f64 {
    let a = v.abs();
    if a == 0.0 {
        return f64::from_bits(1);
    }
    f64::from_bits(a.to_bits() + 1) - a
}

/// Five-point central difference.
pub fn central_difference(f: impl Fn(f64) -> Option<f64>, x: f64, h: f64) -> Option<f64> {
    let (a, b, c, d) = (f(x - 2.0 * h)?, f(x - h)?, f(x + h)?, f(x + 2.0 * h)?);
    Some((a - 8.0 * b + 8.0 * c - d) / (12.0 * h))
}

/// Five-point difference with the step chosen where successive halvings
/// agree best, starting from `h0`.
pub fn adaptive_difference(f: impl Fn(f64) -> Option<f64>, x: f64, h0: f64) -> Option<f64> {
    let estimates: Vec<f64> = (0..14)
        .map(|k| central_difference(&f, x, h0 / 2f64.powi(k)))
        .collect::<Option<_>>()?;
    estimates
        .windows(2)
        .min_by(|a, b| (a[0] - a[1]).abs().total_cmp(&(b[0] - b[1]).abs()))
        .map(|w| w[1])
}

pub fn rel_err(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs()).max(1.0)
}
