//! The expression language.
//!
//! ```text
//! sum     := sign? tensor (('+' | '-') tensor)*
//! tensor  := product ('(x)' product)*
//! product := power (('*' | '/')? power)*
//! power   := atom ('^' '-'? integer)?
//! atom    := integer | name | name '(' integer (',' integer)* ')'
//!          | '(' sum ')' | '[' sum ']'
//! ```
//!
//! Juxtaposition and `/` are accepted on top of `*` so that every printed
//! normal form (`(2 v^3) F(1) K e`, `(1)/(v^2 - 1)`, `(c) [x] (x) [y]`) reads
//! back verbatim. A name that takes arguments always consumes the `(` that
//! follows it, so `F(2)` is a divided power and never `F * 2`.

use std::fmt;

use num_bigint::BigInt;

use crate::error::{CliError, CliResult};

/// Largest divided-power, falling-factorial or product index accepted.
pub const MAX_INDEX: i64 = 64;
/// Largest index for the central families `sigma`, `xi`, `xip`.
pub const MAX_CENTRAL_INDEX: i64 = 16;
/// Largest magnitude of a shift argument or an exponent.
pub const MAX_SHIFT: i64 = 1000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Atom {
    V,
    Q,
    K,
    BigE,
    BigF,
    SmallE,
    SmallF,
    Casimir,
    FDiv(u32),
    EDiv(u32),
    Sigma(u32),
    Xi(u32),
    XiPrime(u32),
    Qb(i64, u32),
    Br(i64),
    BrH(i64, u32),
    Bbb(u32),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Int(BigInt),
    Atom(Atom),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i64),
    /// Two or more tensor factors.
    Tensor(Vec<Expr>),
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Atom::V => write!(f, "v"),
            Atom::Q => write!(f, "q"),
            Atom::K => write!(f, "K"),
            Atom::BigE => write!(f, "E"),
            Atom::BigF => write!(f, "F"),
            Atom::SmallE => write!(f, "e"),
            Atom::SmallF => write!(f, "f"),
            Atom::Casimir => write!(f, "C"),
            Atom::FDiv(n) => write!(f, "F({n})"),
            Atom::EDiv(n) => write!(f, "E({n})"),
            Atom::Sigma(n) => write!(f, "sigma({n})"),
            Atom::Xi(n) => write!(f, "xi({n})"),
            Atom::XiPrime(n) => write!(f, "xip({n})"),
            Atom::Qb(m, n) => write!(f, "qb({m},{n})"),
            Atom::Br(a) => write!(f, "br({a})"),
            Atom::BrH(m, n) => write!(f, "brH({m},{n})"),
            Atom::Bbb(l) => write!(f, "bbb({l})"),
        }
    }
}

impl fmt::Display for Expr {
    /// Fully parenthesized; re-parses to the same tree.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Int(n) => write!(f, "{n}"),
            Expr::Atom(a) => write!(f, "{a}"),
            Expr::Neg(x) => write!(f, "-({x})"),
            Expr::Add(x, y) => write!(f, "({x}) + ({y})"),
            Expr::Sub(x, y) => write!(f, "({x}) - ({y})"),
            Expr::Mul(x, y) => write!(f, "({x})*({y})"),
            Expr::Div(x, y) => write!(f, "({x})/({y})"),
            Expr::Pow(x, k) => write!(f, "({x})^{k}"),
            Expr::Tensor(xs) => {
                let parts: Vec<String> = xs.iter().map(|x| format!("[{x}]")).collect();
                write!(f, "{}", parts.join(" (x) "))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Name(String),
    LParen,
    RParen,
    LBrack,
    RBrack,
    Comma,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    Otimes,
}

fn describe(t: Option<&Tok>) -> String {
    match t {
        None => "end of input".into(),
        Some(Tok::Int(n)) => format!("integer {n}"),
        Some(Tok::Name(s)) => format!("'{s}'"),
        Some(Tok::LParen) => "'('".into(),
        Some(Tok::RParen) => "')'".into(),
        Some(Tok::LBrack) => "'['".into(),
        Some(Tok::RBrack) => "']'".into(),
        Some(Tok::Comma) => "','".into(),
        Some(Tok::Plus) => "'+'".into(),
        Some(Tok::Minus) => "'-'".into(),
        Some(Tok::Star) => "'*'".into(),
        Some(Tok::Slash) => "'/'".into(),
        Some(Tok::Caret) => "'^'".into(),
        Some(Tok::Otimes) => "'(x)'".into(),
    }
}

fn syntax<T>(pos: usize, msg: impl Into<String>) -> CliResult<T> {
    Err(CliError::Syntax { pos, msg: msg.into() })
}

fn lex(input: &str) -> CliResult<Vec<(Tok, usize)>> {
    let bytes = input.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        let tok = match c {
            b'0'..=b'9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                out.push((Tok::Int(input[start..i].parse().expect("digits")), start));
                continue;
            }
            b'a'..=b'z' | b'A'..=b'Z' | b'_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((Tok::Name(input[start..i].to_string()), start));
                continue;
            }
            b'(' => {
                // "(x)" with optional inner spaces is the tensor sign
                let rest: String = input[i + 1..].chars().take_while(|&ch| ch != ')').collect();
                if rest.trim() == "x" && input[i + 1 + rest.len()..].starts_with(')') {
                    i += rest.len() + 2;
                    out.push((Tok::Otimes, start));
                    continue;
                }
                Tok::LParen
            }
            b')' => Tok::RParen,
            b'[' => Tok::LBrack,
            b']' => Tok::RBrack,
            b',' => Tok::Comma,
            b'+' => Tok::Plus,
            b'-' => Tok::Minus,
            b'*' => Tok::Star,
            b'/' => Tok::Slash,
            b'^' => Tok::Caret,
            _ => {
                let ch = input[i..].chars().next().unwrap_or('?');
                return syntax(i, format!("unexpected character '{ch}'"));
            }
        };
        out.push((tok, start));
        i += 1;
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    at: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(t, _)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.end, |(_, p)| *p)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.at).map(|(t, _)| t.clone());
        self.at += 1;
        t
    }

    fn expect(&mut self, want: Tok) -> CliResult<()> {
        if self.peek() == Some(&want) {
            self.at += 1;
            Ok(())
        } else {
            syntax(self.pos(), format!("expected {}, found {}", describe(Some(&want)), describe(self.peek())))
        }
    }

    fn sum(&mut self) -> CliResult<Expr> {
        let mut acc = match self.peek() {
            Some(Tok::Minus) => {
                self.at += 1;
                Expr::Neg(Box::new(self.tensor()?))
            }
            Some(Tok::Plus) => {
                self.at += 1;
                self.tensor()?
            }
            _ => self.tensor()?,
        };
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.at += 1;
                    acc = Expr::Add(Box::new(acc), Box::new(self.tensor()?));
                }
                Some(Tok::Minus) => {
                    self.at += 1;
                    acc = Expr::Sub(Box::new(acc), Box::new(self.tensor()?));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn tensor(&mut self) -> CliResult<Expr> {
        let first = self.product()?;
        if self.peek() != Some(&Tok::Otimes) {
            return Ok(first);
        }
        let mut parts = vec![first];
        while self.peek() == Some(&Tok::Otimes) {
            self.at += 1;
            parts.push(self.product()?);
        }
        Ok(Expr::Tensor(parts))
    }

    fn starts_atom(&self) -> bool {
        matches!(self.peek(), Some(Tok::Int(_) | Tok::Name(_) | Tok::LParen | Tok::LBrack))
    }

    fn product(&mut self) -> CliResult<Expr> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.at += 1;
                    acc = Expr::Mul(Box::new(acc), Box::new(self.power()?));
                }
                Some(Tok::Slash) => {
                    self.at += 1;
                    acc = Expr::Div(Box::new(acc), Box::new(self.power()?));
                }
                _ if self.starts_atom() => acc = Expr::Mul(Box::new(acc), Box::new(self.power()?)),
                _ => return Ok(acc),
            }
        }
    }

    fn power(&mut self) -> CliResult<Expr> {
        let base = self.atom()?;
        if self.peek() != Some(&Tok::Caret) {
            return Ok(base);
        }
        self.at += 1;
        let neg = if self.peek() == Some(&Tok::Minus) {
            self.at += 1;
            true
        } else {
            false
        };
        let pos = self.pos();
        match self.bump() {
            Some(Tok::Int(n)) => {
                let k = i64::try_from(&n).ok().filter(|k| *k <= MAX_SHIFT);
                let Some(k) = k else {
                    return Err(CliError::Domain(format!("exponent {n} exceeds {MAX_SHIFT}")));
                };
                Ok(Expr::Pow(Box::new(base), if neg { -k } else { k }))
            }
            t => syntax(pos, format!("expected an integer exponent, found {}", describe(t.as_ref()))),
        }
    }

    fn int_arg(&mut self) -> CliResult<i64> {
        let neg = if self.peek() == Some(&Tok::Minus) {
            self.at += 1;
            true
        } else {
            false
        };
        let pos = self.pos();
        match self.bump() {
            Some(Tok::Int(n)) => {
                let k = i64::try_from(&n).ok().filter(|k| *k <= MAX_SHIFT);
                let Some(k) = k else {
                    return Err(CliError::Domain(format!("argument {n} exceeds {MAX_SHIFT}")));
                };
                Ok(if neg { -k } else { k })
            }
            t => syntax(pos, format!("expected an integer argument, found {}", describe(t.as_ref()))),
        }
    }

    fn args(&mut self, name: &str, arity: usize) -> CliResult<Vec<i64>> {
        let pos = self.pos();
        if self.peek() != Some(&Tok::LParen) {
            return syntax(pos, format!("'{name}' needs {arity} argument(s) in parentheses"));
        }
        self.at += 1;
        let mut out = vec![self.int_arg()?];
        while self.peek() == Some(&Tok::Comma) {
            self.at += 1;
            out.push(self.int_arg()?);
        }
        self.expect(Tok::RParen)?;
        if out.len() != arity {
            return syntax(pos, format!("'{name}' takes {arity} argument(s), got {}", out.len()));
        }
        Ok(out)
    }

    fn atom(&mut self) -> CliResult<Expr> {
        let pos = self.pos();
        match self.bump() {
            Some(Tok::Int(n)) => Ok(Expr::Int(n)),
            Some(Tok::LParen) => {
                let x = self.sum()?;
                self.expect(Tok::RParen)?;
                Ok(x)
            }
            Some(Tok::LBrack) => {
                let x = self.sum()?;
                self.expect(Tok::RBrack)?;
                Ok(x)
            }
            Some(Tok::Name(s)) => self.named(&s, pos).map(Expr::Atom),
            t => syntax(pos, format!("expected an expression, found {}", describe(t.as_ref()))),
        }
    }

    fn named(&mut self, s: &str, pos: usize) -> CliResult<Atom> {
        let has_args = self.peek() == Some(&Tok::LParen);
        Ok(match s {
            "v" => Atom::V,
            "q" => Atom::Q,
            "K" => Atom::K,
            "e" => Atom::SmallE,
            "f" => Atom::SmallF,
            "C" => Atom::Casimir,
            "E" if !has_args => Atom::BigE,
            "F" if !has_args => Atom::BigF,
            "E" => Atom::EDiv(index(s, self.args(s, 1)?[0], MAX_INDEX)?),
            "F" => Atom::FDiv(index(s, self.args(s, 1)?[0], MAX_INDEX)?),
            "sigma" => Atom::Sigma(index(s, self.args(s, 1)?[0], MAX_CENTRAL_INDEX)?),
            "xi" => Atom::Xi(index(s, self.args(s, 1)?[0], MAX_CENTRAL_INDEX)?),
            "xip" => Atom::XiPrime(index(s, self.args(s, 1)?[0], MAX_CENTRAL_INDEX)?),
            "br" => Atom::Br(self.args(s, 1)?[0]),
            "bbb" | "BBB" => Atom::Bbb(index(s, self.args(s, 1)?[0], MAX_INDEX)?),
            "qb" => {
                let a = self.args(s, 2)?;
                Atom::Qb(a[0], index(s, a[1], MAX_INDEX)?)
            }
            "brH" => {
                let a = self.args(s, 2)?;
                Atom::BrH(a[0], index(s, a[1], MAX_INDEX)?)
            }
            _ => return syntax(pos, format!("unknown name '{s}'")),
        })
    }
}

fn index(name: &str, n: i64, max: i64) -> CliResult<u32> {
    if n < 0 {
        return Err(CliError::Domain(format!("{name}({n}): index must be non-negative")));
    }
    if n > max {
        return Err(CliError::Domain(format!("{name}({n}): index exceeds {max}")));
    }
    Ok(n as u32)
}

pub fn parse_expr(input: &str) -> CliResult<Expr> {
    let toks = lex(input)?;
    if toks.is_empty() {
        return syntax(0, "empty expression");
    }
    let mut p = Parser { toks, at: 0, end: input.len() };
    let x = p.sum()?;
    if p.at < p.toks.len() {
        return syntax(p.pos(), format!("unexpected {}", describe(p.peek())));
    }
    Ok(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grammar() {
        let x = parse_expr("e*F(2) - qb(2,1)*K^-1").unwrap();
        assert!(matches!(x, Expr::Sub(_, _)));
        assert!(matches!(parse_expr("F(-1)"), Err(CliError::Domain(_))));
        assert!(matches!(parse_expr("1 (x) 1 - F(1) (x) e").unwrap(), Expr::Sub(_, _)));
        assert!(matches!(parse_expr("F(1) ( x ) e").unwrap(), Expr::Tensor(_)));
        match parse_expr("e + * K") {
            Err(CliError::Syntax { pos, .. }) => assert_eq!(pos, 4),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_expr("K^"), Err(CliError::Syntax { pos: 2, .. })));
        assert!(matches!(parse_expr("sigma(2, 3)"), Err(CliError::Syntax { .. })));
        assert!(matches!(parse_expr("foo"), Err(CliError::Syntax { .. })));
        assert!(matches!(parse_expr(""), Err(CliError::Syntax { .. })));
    }

    #[test]
    fn display_reparses() {
        for s in ["e*F(2) - qb(2,1)*K^-1", "-(v^-2 + 2) F(1) K^2 e", "[F(1)] (x) [e] (x) [K]", "brH(-1,2)/br(3)"] {
            let x = parse_expr(s).unwrap();
            assert_eq!(parse_expr(&x.to_string()).unwrap(), x, "{s}");
        }
    }
}
