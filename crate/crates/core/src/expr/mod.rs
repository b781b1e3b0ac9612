//! Expressions of one real variable: parsing, printing, point, jet and
//! interval evaluation, and symbolic differentiation.

mod ast;
mod diff;
mod eval;
mod format;
mod interval;
mod jet;
mod parse;

pub use ast::{BinaryOp, Comparison, Expression, Guard, Piecewise, UnaryOp};
pub use format::{format, format_number};
pub use interval::Interval;
pub use jet::Jet2;
pub use parse::parse;
