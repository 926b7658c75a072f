use std::f64::consts::{E, PI};

use thiserror::Error;

use super::ast::{BinOp, Expr, Func};

/// Maximum nesting depth of a parsed tree.
pub const MAX_DEPTH: usize = 256;

/// Parse failures. Offsets are 0-based byte offsets into the input.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum ParseError {
    #[error("syntax error at byte {offset}: found {found}, expected one of: {}", expected.join(", "))]
    Syntax { offset: usize, found: String, expected: Vec<&'static str> },
    #[error("unknown identifier `{name}` at byte {offset}")]
    UnknownIdentifier { offset: usize, name: String },
    #[error("expression nested deeper than {MAX_DEPTH} levels at byte {offset}")]
    TooDeep { offset: usize },
}

impl ParseError {
    pub fn offset(&self) -> usize {
        match self {
            ParseError::Syntax { offset, .. }
            | ParseError::UnknownIdentifier { offset, .. }
            | ParseError::TooDeep { offset } => *offset,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(f64),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Comma,
    End,
    Bad(char),
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Num(v) => format!("number {v}"),
            Tok::Ident(s) => format!("identifier `{s}`"),
            Tok::Plus => "`+`".into(),
            Tok::Minus => "`-`".into(),
            Tok::Star => "`*`".into(),
            Tok::Slash => "`/`".into(),
            Tok::Caret => "`^`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::Comma => "`,`".into(),
            Tok::End => "end of input".into(),
            Tok::Bad(c) => format!("unexpected character {c:?}"),
        }
    }
}

fn lex(text: &str) -> Vec<(Tok, usize)> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < text.len() {
        let c = text[i..].chars().next().expect("in bounds");
        let start = i;
        if c.is_whitespace() {
            i += c.len_utf8();
            continue;
        }
        let tok = match c {
            '+' => Tok::Plus,
            '-' | '\u{2212}' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            ',' => Tok::Comma,
            '0'..='9' | '.' => {
                let mut j = i;
                while j < bytes.len() && (bytes[j].is_ascii_digit() || bytes[j] == b'.') {
                    j += 1;
                }
                // optional exponent, only when followed by digits
                if j < bytes.len() && (bytes[j] == b'e' || bytes[j] == b'E') {
                    let mut k = j + 1;
                    if k < bytes.len() && (bytes[k] == b'+' || bytes[k] == b'-') {
                        k += 1;
                    }
                    if k < bytes.len() && bytes[k].is_ascii_digit() {
                        while k < bytes.len() && bytes[k].is_ascii_digit() {
                            k += 1;
                        }
                        j = k;
                    }
                }
                let lit = &text[i..j];
                i = j;
                out.push((lit.parse::<f64>().map(Tok::Num).unwrap_or(Tok::Bad(c)), start));
                continue;
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let mut j = i;
                while j < bytes.len() && (bytes[j].is_ascii_alphanumeric() || bytes[j] == b'_') {
                    j += 1;
                }
                out.push((Tok::Ident(text[i..j].to_string()), start));
                i = j;
                continue;
            }
            other => Tok::Bad(other),
        };
        i += c.len_utf8();
        out.push((tok, start));
    }
    out.push((Tok::End, text.len()));
    out
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
}

type Node = (Expr, usize);

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn syntax(&self, expected: &[&'static str]) -> ParseError {
        ParseError::Syntax { offset: self.offset(), found: self.peek().describe(), expected: expected.to_vec() }
    }

    fn node(&self, e: Expr, depth: usize) -> Result<Node, ParseError> {
        if depth > MAX_DEPTH {
            Err(ParseError::TooDeep { offset: self.offset() })
        } else {
            Ok((e, depth))
        }
    }

    fn binary(&self, op: BinOp, l: Node, r: Node) -> Result<Node, ParseError> {
        let depth = l.1.max(r.1) + 1;
        self.node(Expr::Binary(op, Box::new(l.0), Box::new(r.0)), depth)
    }

    fn expr(&mut self, nest: usize) -> Result<Node, ParseError> {
        if nest > MAX_DEPTH {
            return Err(ParseError::TooDeep { offset: self.offset() });
        }
        let mut lhs = self.term(nest)?;
        loop {
            let op = match self.peek() {
                Tok::Plus => BinOp::Add,
                Tok::Minus => BinOp::Sub,
                _ => return Ok(lhs),
            };
            self.bump();
            let rhs = self.term(nest)?;
            lhs = self.binary(op, lhs, rhs)?;
        }
    }

    fn term(&mut self, nest: usize) -> Result<Node, ParseError> {
        let mut lhs = self.factor(nest)?;
        loop {
            let op = match self.peek() {
                Tok::Star => BinOp::Mul,
                Tok::Slash => BinOp::Div,
                _ => return Ok(lhs),
            };
            self.bump();
            let rhs = self.factor(nest)?;
            lhs = self.binary(op, lhs, rhs)?;
        }
    }

    fn factor(&mut self, nest: usize) -> Result<Node, ParseError> {
        if nest > MAX_DEPTH {
            return Err(ParseError::TooDeep { offset: self.offset() });
        }
        if *self.peek() == Tok::Minus {
            self.bump();
            let (inner, d) = self.factor(nest + 1)?;
            return match inner {
                Expr::Num(v) => self.node(Expr::Num(-v), d),
                e => self.node(Expr::Neg(Box::new(e)), d + 1),
            };
        }
        let base = self.base(nest)?;
        if *self.peek() == Tok::Caret {
            self.bump();
            let exponent = self.factor(nest + 1)?;
            return self.binary(BinOp::Pow, base, exponent);
        }
        Ok(base)
    }

    fn expect(&mut self, tok: Tok, what: &'static str) -> Result<(), ParseError> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            Err(self.syntax(&[what]))
        }
    }

    fn base(&mut self, nest: usize) -> Result<Node, ParseError> {
        const STARTS: &[&str] = &["number", "`x`", "function call", "`(`", "`-`"];
        let offset = self.offset();
        match self.peek().clone() {
            Tok::Num(v) => {
                self.bump();
                Ok((Expr::Num(v), 1))
            }
            Tok::LParen => {
                self.bump();
                let inner = self.expr(nest + 1)?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(inner)
            }
            Tok::Ident(name) => {
                self.bump();
                match name.as_str() {
                    "x" => return Ok((Expr::Var, 1)),
                    "pi" => return Ok((Expr::Num(PI), 1)),
                    "e" => return Ok((Expr::Num(E), 1)),
                    _ => {}
                }
                let func = Func::from_name(&name);
                if func.is_none() && name != "pow" {
                    return Err(ParseError::UnknownIdentifier { offset, name });
                }
                self.expect(Tok::LParen, "`(`")?;
                let arg = self.expr(nest + 1)?;
                let node = match func {
                    Some(f) => {
                        let d = arg.1 + 1;
                        self.node(Expr::Call(f, Box::new(arg.0)), d)?
                    }
                    None => {
                        self.expect(Tok::Comma, "`,`")?;
                        let exponent = self.expr(nest + 1)?;
                        self.binary(BinOp::Pow, arg, exponent)?
                    }
                };
                self.expect(Tok::RParen, "`)`")?;
                Ok(node)
            }
            _ => Err(self.syntax(STARTS)),
        }
    }
}

/// Parses `text` into an expression tree.
pub fn parse(text: &str) -> Result<Expr, ParseError> {
    let mut p = Parser { toks: lex(text), pos: 0 };
    let (e, _) = p.expr(0)?;
    if *p.peek() != Tok::End {
        return Err(p.syntax(&["operator", "end of input"]));
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(op: BinOp, l: Expr, r: Expr) -> Expr {
        Expr::Binary(op, Box::new(l), Box::new(r))
    }

    #[test]
    fn documented_examples() {
        assert_eq!(parse("x^2").unwrap(), b(BinOp::Pow, Expr::Var, Expr::Num(2.0)));
        assert_eq!(
            parse("ln(x)/x").unwrap(),
            b(BinOp::Div, Expr::call(Func::Ln, Expr::Var), Expr::Var)
        );
        let e = parse("2*exp(\u{2212}x) + pi").unwrap();
        assert_eq!(
            e,
            b(
                BinOp::Add,
                b(BinOp::Mul, Expr::Num(2.0), Expr::call(Func::Exp, Expr::Neg(Box::new(Expr::Var)))),
                Expr::Num(std::f64::consts::PI)
            )
        );
    }

    #[test]
    fn unary_minus_binds_looser_than_power() {
        assert_eq!(parse("-x^2").unwrap().eval(3.0).unwrap(), -9.0);
        assert_eq!(parse("2^-1").unwrap().eval(0.0).unwrap(), 0.5);
        assert_eq!(parse("2^3^2").unwrap().eval(0.0).unwrap(), 512.0);
        assert_eq!(parse("-2").unwrap(), Expr::Num(-2.0));
    }

    #[test]
    fn precedence_and_associativity() {
        assert_eq!(parse("1 - 2 - 3").unwrap().eval(0.0).unwrap(), -4.0);
        assert_eq!(parse("8 / 4 / 2").unwrap().eval(0.0).unwrap(), 1.0);
        assert_eq!(parse("1 + 2 * 3").unwrap().eval(0.0).unwrap(), 7.0);
        assert_eq!(parse("pow(x, 3)").unwrap().eval(2.0).unwrap(), 8.0);
        assert_eq!(parse("1.5e-3*x").unwrap().eval(2.0).unwrap(), 3e-3);
        assert!((parse("e").unwrap().eval(0.0).unwrap() - std::f64::consts::E).abs() < 1e-16);
    }

    #[test]
    fn errors_carry_offsets() {
        match parse("x + * 2").unwrap_err() {
            ParseError::Syntax { offset, expected, .. } => {
                assert_eq!(offset, 4);
                assert!(expected.contains(&"`(`"));
            }
            e => panic!("{e:?}"),
        }
        assert_eq!(
            parse("2*foo(x)").unwrap_err(),
            ParseError::UnknownIdentifier { offset: 2, name: "foo".into() }
        );
        assert_eq!(parse("").unwrap_err().offset(), 0);
        assert_eq!(parse("(x").unwrap_err().offset(), 2);
        assert_eq!(parse("x)").unwrap_err().offset(), 1);
        assert!(matches!(parse("y").unwrap_err(), ParseError::UnknownIdentifier { .. }));
        assert!(matches!(parse("x $ 1").unwrap_err(), ParseError::Syntax { offset: 2, .. }));
    }

    #[test]
    fn deep_nesting_is_an_error_not_a_crash() {
        let deep = "(".repeat(100_000) + "x" + &")".repeat(100_000);
        assert!(matches!(parse(&deep).unwrap_err(), ParseError::TooDeep { .. }));
        let long = vec!["x"; 10_000].join("+");
        assert!(matches!(parse(&long).unwrap_err(), ParseError::TooDeep { .. }));
        let negs = "-".repeat(100_000) + "x";
        assert!(parse(&negs).is_err());
    }
}
