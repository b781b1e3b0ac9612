//! Recursive-descent parser for the expression grammar.
//!
//! ```text
//! expr    := term (('+' | '-') term)*
//! term    := power (('*' | '/') power)*
//! power   := unary ('^' power)?            right associative
//! unary   := '-' unary | primary
//! primary := number | 'x' | func '(' expr ')' | '(' expr ')'
//!          | 'if' '(' 'x' cmp expr ',' expr ',' expr ')'
//! cmp     := '<' | '<=' | '>' | '>='
//! ```
//!
//! Unary minus binds tighter than `^`, so `-x^2` is `(-x)^2`.

use super::ast::{BinaryOp, Comparison, Expression, Guard, Piecewise, UnaryOp};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Number(f64),
    Ident(String),
    Op(char),
    Cmp(Comparison),
    LParen,
    RParen,
    Comma,
    End,
}

struct Lexer<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn tokenize(src: &'a str) -> Result<Vec<(Token, usize)>> {
        let mut lx = Lexer { src, pos: 0 };
        let mut out = Vec::new();
        loop {
            let (tok, at) = lx.next_token()?;
            let end = tok == Token::End;
            out.push((tok, at));
            if end {
                return Ok(out);
            }
        }
    }

    fn peek_byte(&self, ahead: usize) -> Option<u8> {
        self.src.as_bytes().get(self.pos + ahead).copied()
    }

    fn next_token(&mut self) -> Result<(Token, usize)> {
        while let Some(b) = self.peek_byte(0) {
            if b.is_ascii_whitespace() {
                self.pos += 1;
            } else {
                break;
            }
        }
        let start = self.pos;
        let Some(b) = self.peek_byte(0) else {
            return Ok((Token::End, start));
        };
        let tok = match b {
            b'0'..=b'9' | b'.' => return self.number(start),
            b'a'..=b'z' | b'A'..=b'Z' | b'_' => {
                while matches!(self.peek_byte(0), Some(c) if c.is_ascii_alphanumeric() || c == b'_')
                {
                    self.pos += 1;
                }
                return Ok((Token::Ident(self.src[start..self.pos].to_string()), start));
            }
            b'+' | b'-' | b'*' | b'/' | b'^' => Token::Op(b as char),
            b'(' => Token::LParen,
            b')' => Token::RParen,
            b',' => Token::Comma,
            b'<' | b'>' => {
                let or_equal = self.peek_byte(1) == Some(b'=');
                self.pos += if or_equal { 2 } else { 1 };
                let cmp = match (b, or_equal) {
                    (b'<', false) => Comparison::Lt,
                    (b'<', true) => Comparison::Le,
                    (_, false) => Comparison::Gt,
                    (_, true) => Comparison::Ge,
                };
                return Ok((Token::Cmp(cmp), start));
            }
            _ => {
                let ch = self.src[start..].chars().next().unwrap_or('?');
                return Err(syntax(start, format!("unexpected character `{ch}`")));
            }
        };
        self.pos += 1;
        Ok((tok, start))
    }

    fn number(&mut self, start: usize) -> Result<(Token, usize)> {
        let digits = |lx: &mut Lexer| {
            let from = lx.pos;
            while matches!(lx.peek_byte(0), Some(b'0'..=b'9')) {
                lx.pos += 1;
            }
            lx.pos - from
        };
        let mut count = digits(self);
        if self.peek_byte(0) == Some(b'.') {
            self.pos += 1;
            count += digits(self);
        }
        if count == 0 {
            return Err(syntax(start, "malformed number"));
        }
        if matches!(self.peek_byte(0), Some(b'e' | b'E')) {
            let sign = usize::from(matches!(self.peek_byte(1), Some(b'+' | b'-')));
            if matches!(self.peek_byte(1 + sign), Some(b'0'..=b'9')) {
                self.pos += 1 + sign;
                digits(self);
            }
        }
        let text = &self.src[start..self.pos];
        let value: f64 = text
            .parse()
            .map_err(|_| syntax(start, format!("malformed number `{text}`")))?;
        if !value.is_finite() {
            return Err(syntax(start, format!("number `{text}` is out of range")));
        }
        Ok((Token::Number(value), start))
    }
}

fn syntax(offset: usize, message: impl Into<String>) -> Error {
    Error::Syntax { offset, message: message.into() }
}

struct Parser {
    tokens: Vec<(Token, usize)>,
    at: usize,
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.tokens[self.at].0
    }

    fn offset(&self) -> usize {
        self.tokens[self.at].1
    }

    fn bump(&mut self) -> Token {
        let tok = self.tokens[self.at].0.clone();
        if tok != Token::End {
            self.at += 1;
        }
        tok
    }

    fn expect(&mut self, want: Token, what: &str) -> Result<()> {
        if *self.peek() == want {
            self.bump();
            Ok(())
        } else {
            Err(syntax(self.offset(), format!("expected {what}")))
        }
    }

    fn expr(&mut self) -> Result<Expression> {
        let mut lhs = self.term()?;
        loop {
            let op = match self.peek() {
                Token::Op('+') => BinaryOp::Add,
                Token::Op('-') => BinaryOp::Sub,
                _ => return Ok(lhs),
            };
            self.bump();
            let rhs = self.term()?;
            lhs = Expression::binary(op, lhs, rhs);
        }
    }

    fn term(&mut self) -> Result<Expression> {
        let mut lhs = self.power()?;
        loop {
            let op = match self.peek() {
                Token::Op('*') => BinaryOp::Mul,
                Token::Op('/') => BinaryOp::Div,
                _ => return Ok(lhs),
            };
            self.bump();
            let rhs = self.power()?;
            lhs = Expression::binary(op, lhs, rhs);
        }
    }

    fn power(&mut self) -> Result<Expression> {
        let base = self.unary()?;
        if *self.peek() != Token::Op('^') {
            return Ok(base);
        }
        self.bump();
        let exponent_at = self.offset();
        let exponent = self.power()?;
        if exponent.depends_on_x() {
            return Err(Error::NonConstantExponent { offset: exponent_at });
        }
        Ok(Expression::pow(base, exponent))
    }

    fn unary(&mut self) -> Result<Expression> {
        if *self.peek() == Token::Op('-') {
            self.bump();
            return Ok(Expression::neg(self.unary()?));
        }
        self.primary()
    }

    fn primary(&mut self) -> Result<Expression> {
        let at = self.offset();
        match self.bump() {
            Token::Number(v) => Ok(Expression::Constant(v)),
            Token::LParen => {
                let inner = self.expr()?;
                self.expect(Token::RParen, "`)`")?;
                Ok(inner)
            }
            Token::Ident(name) => self.identifier(name, at),
            Token::End => Err(syntax(at, "unexpected end of input")),
            other => Err(syntax(at, format!("unexpected {}", describe(&other)))),
        }
    }

    fn identifier(&mut self, name: String, at: usize) -> Result<Expression> {
        if name == "x" {
            return Ok(Expression::Variable);
        }
        if name == "if" {
            return self.conditional();
        }
        if let Some(op) = UnaryOp::from_function_name(&name) {
            self.expect(Token::LParen, &format!("`(` after `{name}`"))?;
            let arg = self.expr()?;
            self.expect(Token::RParen, "`)`")?;
            return Ok(Expression::unary(op, arg));
        }
        Err(Error::MultipleVariables { name, offset: at })
    }

    fn conditional(&mut self) -> Result<Expression> {
        self.expect(Token::LParen, "`(` after `if`")?;
        let var_at = self.offset();
        match self.bump() {
            Token::Ident(name) if name == "x" => {}
            Token::Ident(name) if UnaryOp::from_function_name(&name).is_none() && name != "if" => {
                return Err(Error::MultipleVariables { name, offset: var_at });
            }
            _ => return Err(syntax(var_at, "guard must have the form `x <op> constant`")),
        }
        let cmp_at = self.offset();
        let Token::Cmp(cmp) = self.bump() else {
            return Err(syntax(cmp_at, "expected one of `<`, `<=`, `>`, `>=`"));
        };
        let threshold_at = self.offset();
        let threshold = self.expr()?;
        if threshold.depends_on_x() {
            return Err(syntax(threshold_at, "guard threshold must not depend on `x`"));
        }
        match threshold.eval(0.0) {
            Ok(v) if v.is_finite() => {}
            _ => return Err(syntax(threshold_at, "guard threshold is not a finite constant")),
        }
        self.expect(Token::Comma, "`,`")?;
        let then_branch = self.expr()?;
        self.expect(Token::Comma, "`,`")?;
        let else_branch = self.expr()?;
        self.expect(Token::RParen, "`)`")?;

        let guard = Guard::new(cmp, threshold);
        // A nested conditional in the else position becomes further arms.
        Ok(match else_branch {
            Expression::Piecewise(mut inner) => {
                inner.arms.insert(0, (guard, then_branch));
                Expression::Piecewise(inner)
            }
            other => Expression::Piecewise(Piecewise {
                arms: vec![(guard, then_branch)],
                otherwise: Box::new(other),
            }),
        })
    }
}

fn describe(tok: &Token) -> String {
    match tok {
        Token::Number(v) => format!("number {v}"),
        Token::Ident(s) => format!("identifier `{s}`"),
        Token::Op(c) => format!("`{c}`"),
        Token::Cmp(c) => format!("`{}`", c.symbol()),
        Token::LParen => "`(`".into(),
        Token::RParen => "`)`".into(),
        Token::Comma => "`,`".into(),
        Token::End => "end of input".into(),
    }
}

/// Parse a textual function of `x`.
pub fn parse(text: &str) -> Result<Expression> {
    let tokens = Lexer::tokenize(text)?;
    let mut parser = Parser { tokens, at: 0 };
    let expr = parser.expr()?;
    if *parser.peek() != Token::End {
        let tok = parser.peek().clone();
        return Err(syntax(parser.offset(), format!("unexpected {}", describe(&tok))));
    }
    Ok(expr)
}

impl std::str::FromStr for Expression {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use Expression::*;

    fn c(v: f64) -> Expression {
        Constant(v)
    }

    #[test]
    fn cubic_structure() {
        let e = parse("x^3-2*x+2").unwrap();
        let want = Expression::add(
            Expression::sub(
                Expression::pow(Variable, c(3.0)),
                Expression::mul(c(2.0), Variable),
            ),
            c(2.0),
        );
        assert_eq!(e, want);
    }

    #[test]
    fn identity() {
        assert_eq!(parse("x").unwrap(), Variable);
        assert_eq!(parse("  ( x ) ").unwrap(), Variable);
    }

    #[test]
    fn piecewise_structure() {
        let e = parse("if(x<=0, x^2+x, x^2-x)").unwrap();
        let Piecewise(pw) = e else { panic!("expected piecewise") };
        assert_eq!(pw.arms.len(), 1);
        assert_eq!(pw.arms[0].0.cmp, Comparison::Le);
        assert_eq!(*pw.arms[0].0.threshold, c(0.0));
        assert_eq!(pw.arms[0].1, parse("x^2+x").unwrap());
        assert_eq!(*pw.otherwise, parse("x^2-x").unwrap());
    }

    #[test]
    fn nested_piecewise_flattens() {
        let e = parse("if(x<0, 1, if(x>=2, 3, x))").unwrap();
        let Piecewise(pw) = e else { panic!() };
        assert_eq!(pw.arms.len(), 2);
        assert_eq!(pw.arms[1].0.cmp, Comparison::Ge);
        assert_eq!(*pw.otherwise, Variable);
    }

    #[test]
    fn precedence() {
        // unary minus binds tighter than ^, ^ is right associative
        assert_eq!(
            parse("-x^2").unwrap(),
            Expression::pow(Expression::neg(Variable), c(2.0))
        );
        assert_eq!(
            parse("x^2^3").unwrap(),
            Expression::pow(Variable, Expression::pow(c(2.0), c(3.0)))
        );
        assert_eq!(
            parse("1-x/2*3").unwrap(),
            Expression::sub(
                c(1.0),
                Expression::mul(Expression::div(Variable, c(2.0)), c(3.0))
            )
        );
        assert_eq!(
            parse("x^-1").unwrap(),
            Expression::pow(Variable, Expression::neg(c(1.0)))
        );
    }

    #[test]
    fn numbers() {
        assert_eq!(parse("1e-3").unwrap(), c(1e-3));
        assert_eq!(parse("2.5E+2").unwrap(), c(250.0));
        assert_eq!(parse(".5").unwrap(), c(0.5));
        assert_eq!(parse("3.").unwrap(), c(3.0));
    }

    #[test]
    fn functions() {
        assert_eq!(parse("sin(x)").unwrap(), Expression::unary(UnaryOp::Sin, Variable));
        assert!(matches!(parse("sqrt(abs(x))").unwrap(), Unary(UnaryOp::Sqrt, _)));
    }

    #[test]
    fn syntax_errors_carry_offsets() {
        assert_eq!(
            parse("x + * 2"),
            Err(Error::Syntax { offset: 4, message: "unexpected `*`".into() })
        );
        assert!(matches!(parse("x +"), Err(Error::Syntax { offset: 3, .. })));
        assert!(matches!(parse("(x"), Err(Error::Syntax { offset: 2, .. })));
        assert!(matches!(parse("x $ 1"), Err(Error::Syntax { offset: 2, .. })));
        assert!(matches!(parse("sin x"), Err(Error::Syntax { offset: 4, .. })));
        assert!(matches!(parse("x x"), Err(Error::Syntax { offset: 2, .. })));
        assert!(matches!(parse(""), Err(Error::Syntax { offset: 0, .. })));
    }

    #[test]
    fn other_identifiers_are_rejected() {
        assert_eq!(
            parse("x + y"),
            Err(Error::MultipleVariables { name: "y".into(), offset: 4 })
        );
        assert!(matches!(parse("if(t<0, 1, 2)"), Err(Error::MultipleVariables { .. })));
    }

    #[test]
    fn non_constant_exponent() {
        assert_eq!(parse("2^x"), Err(Error::NonConstantExponent { offset: 2 }));
        assert!(matches!(parse("x^(1+sin(x))"), Err(Error::NonConstantExponent { .. })));
        assert!(parse("x^(1/2)").is_ok());
    }

    #[test]
    fn guard_must_be_constant() {
        assert!(matches!(parse("if(x<x, 1, 2)"), Err(Error::Syntax { .. })));
        assert!(matches!(parse("if(x<log(0), 1, 2)"), Err(Error::Syntax { .. })));
        assert!(matches!(parse("if(1<x, 1, 2)"), Err(Error::Syntax { .. })));
        assert!(parse("if(x>=-1/3, 1, 2)").is_ok());
    }
}
