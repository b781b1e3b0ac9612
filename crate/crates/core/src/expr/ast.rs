use std::fmt;

/// Unary operators and elementary functions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum UnaryOp {
    Neg,
    Sin,
    Cos,
    Tan,
    Exp,
    Log,
    Sqrt,
    Abs,
}

impl UnaryOp {
    /// Name used by the call-style syntax (`sin(x)`); `None` for negation.
    pub fn function_name(self) -> Option<&'static str> {
        match self {
            UnaryOp::Neg => None,
            UnaryOp::Sin => Some("sin"),
            UnaryOp::Cos => Some("cos"),
            UnaryOp::Tan => Some("tan"),
            UnaryOp::Exp => Some("exp"),
            UnaryOp::Log => Some("log"),
            UnaryOp::Sqrt => Some("sqrt"),
            UnaryOp::Abs => Some("abs"),
        }
    }

    pub fn from_function_name(name: &str) -> Option<Self> {
        Some(match name {
            "sin" => UnaryOp::Sin,
            "cos" => UnaryOp::Cos,
            "tan" => UnaryOp::Tan,
            "exp" => UnaryOp::Exp,
            "log" => UnaryOp::Log,
            "sqrt" => UnaryOp::Sqrt,
            "abs" => UnaryOp::Abs,
            _ => return None,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BinaryOp {
    Add,
    Sub,
    Mul,
    Div,
    Pow,
}

impl BinaryOp {
    pub fn symbol(self) -> char {
        match self {
            BinaryOp::Add => '+',
            BinaryOp::Sub => '-',
            BinaryOp::Mul => '*',
            BinaryOp::Div => '/',
            BinaryOp::Pow => '^',
        }
    }
}

/// Comparison used in a piecewise guard `x <op> threshold`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Comparison {
    Lt,
    Le,
    Gt,
    Ge,
}

impl Comparison {
    pub fn symbol(self) -> &'static str {
        match self {
            Comparison::Lt => "<",
            Comparison::Le => "<=",
            Comparison::Gt => ">",
            Comparison::Ge => ">=",
        }
    }

    pub fn holds(self, x: f64, threshold: f64) -> bool {
        match self {
            Comparison::Lt => x < threshold,
            Comparison::Le => x <= threshold,
            Comparison::Gt => x > threshold,
            Comparison::Ge => x >= threshold,
        }
    }

    /// True when the guard selects points below the threshold.
    pub fn selects_below(self) -> bool {
        matches!(self, Comparison::Lt | Comparison::Le)
    }
}

/// Guard of a piecewise arm. The threshold is a constant expression; its
/// double-precision value defines the branch boundary.
#[derive(Debug, Clone, PartialEq)]
pub struct Guard {
    pub cmp: Comparison,
    pub threshold: Box<Expression>,
}

impl Guard {
    pub fn new(cmp: Comparison, threshold: Expression) -> Self {
        Guard { cmp, threshold: Box::new(threshold) }
    }

    /// Numeric value of the threshold. Guards are validated at construction
    /// time by the parser, so evaluation failures map to NaN here and make
    /// every comparison false.
    pub fn threshold_value(&self) -> f64 {
        self.threshold.eval(0.0).unwrap_or(f64::NAN)
    }

    pub fn holds(&self, x: f64) -> bool {
        self.cmp.holds(x, self.threshold_value())
    }
}

/// `if(guard_1, branch_1, if(guard_2, branch_2, ..., otherwise))`
#[derive(Debug, Clone, PartialEq)]
pub struct Piecewise {
    pub arms: Vec<(Guard, Expression)>,
    pub otherwise: Box<Expression>,
}

impl Piecewise {
    /// Branch selected for the point `x`.
    pub fn select(&self, x: f64) -> &Expression {
        self.arms
            .iter()
            .find(|(guard, _)| guard.holds(x))
            .map(|(_, branch)| branch)
            .unwrap_or(&self.otherwise)
    }
}

/// Expression tree of a real function of the single variable `x`.
///
/// Immutable once built; every evaluator takes `&self`.
#[derive(Debug, Clone, PartialEq)]
pub enum Expression {
    Constant(f64),
    Variable,
    Unary(UnaryOp, Box<Expression>),
    Binary(BinaryOp, Box<Expression>, Box<Expression>),
    Piecewise(Piecewise),
}

impl Expression {
    pub fn constant(value: f64) -> Self {
        Expression::Constant(value)
    }

    pub fn var() -> Self {
        Expression::Variable
    }

    pub fn unary(op: UnaryOp, child: Expression) -> Self {
        Expression::Unary(op, Box::new(child))
    }

    pub fn binary(op: BinaryOp, left: Expression, right: Expression) -> Self {
        Expression::Binary(op, Box::new(left), Box::new(right))
    }

    pub fn add(left: Expression, right: Expression) -> Self {
        Self::binary(BinaryOp::Add, left, right)
    }

    pub fn sub(left: Expression, right: Expression) -> Self {
        Self::binary(BinaryOp::Sub, left, right)
    }

    pub fn mul(left: Expression, right: Expression) -> Self {
        Self::binary(BinaryOp::Mul, left, right)
    }

    pub fn div(left: Expression, right: Expression) -> Self {
        Self::binary(BinaryOp::Div, left, right)
    }

    pub fn pow(base: Expression, exponent: Expression) -> Self {
        Self::binary(BinaryOp::Pow, base, exponent)
    }

    pub fn neg(child: Expression) -> Self {
        Self::unary(UnaryOp::Neg, child)
    }

    /// True when `x` occurs anywhere in the tree (guards excluded, since
    /// thresholds are constant by construction).
    pub fn depends_on_x(&self) -> bool {
        match self {
            Expression::Constant(_) => false,
            Expression::Variable => true,
            Expression::Unary(_, c) => c.depends_on_x(),
            Expression::Binary(_, l, r) => l.depends_on_x() || r.depends_on_x(),
            Expression::Piecewise(_) => true,
        }
    }

    /// Thresholds of every piecewise guard in the tree.
    pub fn guard_thresholds(&self) -> Vec<f64> {
        let mut out = Vec::new();
        self.collect_thresholds(&mut out);
        out
    }

    fn collect_thresholds(&self, out: &mut Vec<f64>) {
        match self {
            Expression::Constant(_) | Expression::Variable => {}
            Expression::Unary(_, c) => c.collect_thresholds(out),
            Expression::Binary(_, l, r) => {
                l.collect_thresholds(out);
                r.collect_thresholds(out);
            }
            Expression::Piecewise(pw) => {
                for (guard, branch) in &pw.arms {
                    out.push(guard.threshold_value());
                    branch.collect_thresholds(out);
                }
                pw.otherwise.collect_thresholds(out);
            }
        }
    }

    /// Number of nodes, guards included.
    pub fn size(&self) -> usize {
        match self {
            Expression::Constant(_) | Expression::Variable => 1,
            Expression::Unary(_, c) => 1 + c.size(),
            Expression::Binary(_, l, r) => 1 + l.size() + r.size(),
            Expression::Piecewise(pw) => {
                1 + pw.otherwise.size()
                    + pw.arms.iter().map(|(g, b)| g.threshold.size() + b.size()).sum::<usize>()
            }
        }
    }
}

impl fmt::Display for Expression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&super::format::format(self))
    }
}
