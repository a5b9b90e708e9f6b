//! Arithmetic expressions over one free variable `x`: the little language
//! the CLI parses into towers and series.
//!
//! Grammar (standard precedence, unary minus binds tightest):
//! ```text
//! expr    := term (('+' | '-') term)*
//! term    := power (('*' | '/') power)*
//! power   := prefix ('^' nat)*
//! prefix  := '-' prefix | primary
//! primary := number | 'x' | name '(' expr ')' | '(' expr ')'
//! ```
//! `^` takes a literal nonnegative integer exponent and is desugared to
//! repeated multiplication at evaluation time.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::One;

use crate::error::{Error, Result};
use crate::field::Rat;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Func {
    Exp,
    Log,
    Sqrt,
    Sin,
    Cos,
    Tan,
    Atan,
    Asin,
    Acos,
}

impl Func {
    pub fn name(self) -> &'static str {
        match self {
            Func::Exp => "exp",
            Func::Log => "log",
            Func::Sqrt => "sqrt",
            Func::Sin => "sin",
            Func::Cos => "cos",
            Func::Tan => "tan",
            Func::Atan => "atan",
            Func::Asin => "asin",
            Func::Acos => "acos",
        }
    }

    fn from_name(s: &str) -> Option<Func> {
        Some(match s {
            "exp" => Func::Exp,
            "log" => Func::Log,
            "sqrt" => Func::Sqrt,
            "sin" => Func::Sin,
            "cos" => Func::Cos,
            "tan" => Func::Tan,
            "atan" => Func::Atan,
            "asin" => Func::Asin,
            "acos" => Func::Acos,
            _ => return None,
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Var,
    IntLit(i64),
    RatLit(Rat),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
    Call(Func, Box<Expr>),
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(i64),
    Dec(Rat),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn lex(src: &str) -> Result<Vec<(Tok, usize)>> {
    let bytes = src.as_bytes();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        match c {
            ' ' | '\t' | '\n' | '\r' => i += 1,
            '+' => {
                toks.push((Tok::Plus, i));
                i += 1;
            }
            '-' => {
                toks.push((Tok::Minus, i));
                i += 1;
            }
            '*' => {
                toks.push((Tok::Star, i));
                i += 1;
            }
            '/' => {
                toks.push((Tok::Slash, i));
                i += 1;
            }
            '^' => {
                toks.push((Tok::Caret, i));
                i += 1;
            }
            '(' => {
                toks.push((Tok::LParen, i));
                i += 1;
            }
            ')' => {
                toks.push((Tok::RParen, i));
                i += 1;
            }
            '0'..='9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                if i < bytes.len() && bytes[i] == b'.' {
                    i += 1;
                    let frac_start = i;
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                    if i == frac_start {
                        return Err(Error::Syntax {
                            offset: i,
                            expected: vec!["digit".to_string()],
                        });
                    }
                    let digits: String = src[start..i].chars().filter(|&c| c != '.').collect();
                    let scale = i - frac_start;
                    let p: BigInt = digits.parse().expect("digits");
                    let q = BigInt::from(10u32).pow(scale as u32);
                    toks.push((Tok::Dec(BigRational::new(p, q)), start));
                } else {
                    let n: i64 = src[start..i].parse().map_err(|_| Error::Syntax {
                        offset: start,
                        expected: vec!["integer literal".to_string()],
                    })?;
                    toks.push((Tok::Int(n), start));
                }
            }
            'a'..='z' | 'A'..='Z' | '_' => {
                let start = i;
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                toks.push((Tok::Ident(src[start..i].to_string()), start));
            }
            _ => {
                return Err(Error::Syntax {
                    offset: i,
                    expected: vec!["token".to_string()],
                })
            }
        }
    }
    Ok(toks)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map(|&(_, o)| o).unwrap_or(self.end)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(t, _)| t.clone());
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn err(&self, expected: &[&str]) -> Error {
        Error::Syntax {
            offset: self.offset(),
            expected: expected.iter().map(|s| s.to_string()).collect(),
        }
    }

    fn expect(&mut self, t: Tok, what: &str) -> Result<()> {
        if self.peek() == Some(&t) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(&[what]))
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.power()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                    lhs = Expr::Mul(Box::new(lhs), Box::new(self.power()?));
                }
                Some(Tok::Slash) => {
                    self.pos += 1;
                    lhs = Expr::Div(Box::new(lhs), Box::new(self.power()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn power(&mut self) -> Result<Expr> {
        let mut base = self.prefix()?;
        while self.peek() == Some(&Tok::Caret) {
            self.pos += 1;
            match self.bump() {
                Some(Tok::Int(n)) if n >= 0 && n <= u32::MAX as i64 => {
                    base = Expr::Pow(Box::new(base), n as u32);
                }
                _ => {
                    self.pos = self.pos.saturating_sub(1);
                    return Err(self.err(&["nonnegative integer exponent"]));
                }
            }
        }
        Ok(base)
    }

    fn prefix(&mut self) -> Result<Expr> {
        if self.peek() == Some(&Tok::Minus) {
            self.pos += 1;
            Ok(Expr::Neg(Box::new(self.prefix()?)))
        } else {
            self.primary()
        }
    }

    fn primary(&mut self) -> Result<Expr> {
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.pos += 1;
                Ok(Expr::IntLit(n))
            }
            Some(Tok::Dec(r)) => {
                self.pos += 1;
                Ok(Expr::RatLit(r))
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(Tok::RParen, ")")?;
                Ok(e)
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                if name == "x" {
                    return Ok(Expr::Var);
                }
                match Func::from_name(&name) {
                    Some(f) => {
                        self.expect(Tok::LParen, "(")?;
                        let arg = self.expr()?;
                        self.expect(Tok::RParen, ")")?;
                        Ok(Expr::Call(f, Box::new(arg)))
                    }
                    None => Err(Error::UnknownFunction(name)),
                }
            }
            _ => Err(self.err(&["number", "x", "function call", "("])),
        }
    }
}

pub fn parse_expr(src: &str) -> Result<Expr> {
    let toks = lex(src)?;
    let mut p = Parser {
        toks,
        pos: 0,
        end: src.len(),
    };
    let e = p.expr()?;
    if p.peek().is_some() {
        return Err(p.err(&["operator", "end of input"]));
    }
    Ok(e)
}

// precedence levels for rendering: + - = 1, * / = 2, ^ = 3, unary - = 4, atoms = 5
fn level(e: &Expr) -> u8 {
    match e {
        Expr::Add(..) | Expr::Sub(..) => 1,
        Expr::Mul(..) | Expr::Div(..) => 2,
        Expr::Pow(..) => 3,
        Expr::Neg(..) => 4,
        _ => 5,
    }
}

fn wrap(e: &Expr, min: u8) -> String {
    if level(e) < min {
        format!("({})", render(e))
    } else {
        render(e)
    }
}

/// Render so that `parse_expr(render(e)) == e`.
pub fn render(e: &Expr) -> String {
    match e {
        Expr::Var => "x".to_string(),
        Expr::IntLit(n) => n.to_string(),
        Expr::RatLit(r) => render_decimal(r),
        Expr::Neg(a) => format!("-{}", wrap(a, 4)),
        Expr::Add(a, b) => format!("{} + {}", wrap(a, 1), wrap(b, 2)),
        Expr::Sub(a, b) => format!("{} - {}", wrap(a, 1), wrap(b, 2)),
        Expr::Mul(a, b) => format!("{}*{}", wrap(a, 2), wrap(b, 3)),
        Expr::Div(a, b) => format!("{}/{}", wrap(a, 2), wrap(b, 3)),
        Expr::Pow(a, n) => format!("{}^{}", wrap(a, 4), n),
        Expr::Call(f, a) => format!("{}({})", f.name(), render(a)),
    }
}

// Decimal literals always have a power-of-ten denominator before reduction,
// so the reduced denominator divides some 10^k and this terminates.
fn render_decimal(r: &Rat) -> String {
    let ten = BigInt::from(10u32);
    for k in 1..=64u32 {
        let scaled = r * BigRational::from_integer(ten.pow(k));
        if scaled.denom().is_one() {
            let digits = scaled.numer().to_string();
            let (neg, digits) = match digits.strip_prefix('-') {
                Some(d) => ("-", d.to_string()),
                None => ("", digits),
            };
            let digits = if digits.len() <= k as usize {
                format!("{}{}", "0".repeat(k as usize + 1 - digits.len()), digits)
            } else {
                digits
            };
            let split = digits.len() - k as usize;
            return format!("{}{}.{}", neg, &digits[..split], &digits[split..]);
        }
    }
    format!("({}/{})", r.numer(), r.denom())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::rat_of;

    #[test]
    fn basic_shapes() {
        assert_eq!(
            parse_expr("x/(1+x)").unwrap(),
            Expr::Div(
                Box::new(Expr::Var),
                Box::new(Expr::Add(Box::new(Expr::IntLit(1)), Box::new(Expr::Var)))
            )
        );
        assert_eq!(
            parse_expr("exp(-x)*sin(x)").unwrap(),
            Expr::Mul(
                Box::new(Expr::Call(Func::Exp, Box::new(Expr::Neg(Box::new(Expr::Var))))),
                Box::new(Expr::Call(Func::Sin, Box::new(Expr::Var)))
            )
        );
    }

    #[test]
    fn precedence_and_associativity() {
        // 1 - 2 - 3 is left associative
        assert_eq!(
            parse_expr("1-2-3").unwrap(),
            Expr::Sub(
                Box::new(Expr::Sub(
                    Box::new(Expr::IntLit(1)),
                    Box::new(Expr::IntLit(2))
                )),
                Box::new(Expr::IntLit(3))
            )
        );
        // * binds tighter than +
        assert_eq!(
            parse_expr("1+2*x").unwrap(),
            Expr::Add(
                Box::new(Expr::IntLit(1)),
                Box::new(Expr::Mul(Box::new(Expr::IntLit(2)), Box::new(Expr::Var)))
            )
        );
        // unary minus binds tighter than ^
        assert_eq!(
            parse_expr("-x^2").unwrap(),
            Expr::Pow(Box::new(Expr::Neg(Box::new(Expr::Var))), 2)
        );
    }

    #[test]
    fn decimals() {
        assert_eq!(parse_expr("0.5").unwrap(), Expr::RatLit(rat_of(1, 2)));
        assert_eq!(parse_expr("2.25").unwrap(), Expr::RatLit(rat_of(9, 4)));
    }

    #[test]
    fn syntax_errors() {
        match parse_expr("x*(") {
            Err(Error::Syntax { offset, .. }) => assert_eq!(offset, 3),
            other => panic!("{other:?}"),
        }
        match parse_expr("x^-2") {
            Err(Error::Syntax { .. }) => {}
            other => panic!("{other:?}"),
        }
        match parse_expr("foo(x)") {
            Err(Error::UnknownFunction(n)) => assert_eq!(n, "foo"),
            other => panic!("{other:?}"),
        }
        assert!(parse_expr("x x").is_err());
        assert!(parse_expr("").is_err());
    }

    #[test]
    fn render_round_trip() {
        let corpus = [
            "x",
            "1",
            "0.5",
            "x + 1",
            "x - 1 - 2",
            "x*(1 + x)",
            "x/(1 + x)",
            "-x",
            "-(x + 1)",
            "-x^2",
            "-(x^2)",
            "(x^2)^3",
            "x^0",
            "exp(-x)*sin(x)",
            "cos(sin(x)*exp(-x/2))",
            "sqrt(1 + x)",
            "log(1 + x)",
            "atan(x)",
            "asin(x)",
            "acos(x)",
            "tan(x/4)",
            "1/(1 - x)",
            "x*x*x",
            "x/2/3",
            "2.25*x^3 - 0.5",
            "x^2 + 2*x + 1",
            "(1 + x)*(1 - x)",
            "exp(x)^2",
            "-1 + x",
            "x - -1",
            "sin(cos(tan(x)))",
            "x*exp(x)",
            "1 + x + x^2/2",
            "(x + 1)/(x - 1)",
            "-(1/x)",
            "0.125*x",
            "x^10",
            "sqrt(x^2 + 1)",
            "exp(x + 0.5)",
            "log(x)/x",
            "x - x",
            "3/4*x",
            "(2 + x)^4",
            "sin(x)/cos(x)",
            "1 - exp(-x)",
            "x*(x + 1)*(x + 2)",
            "0.1 + 0.2*x",
            "atan(1/(1 + x))",
            "x/(1 + x/(1 + x))",
            "exp(exp(x))",
        ];
        assert!(corpus.len() >= 50);
        for src in corpus {
            let t = parse_expr(src).unwrap();
            let r = render(&t);
            let t2 = parse_expr(&r)
                .unwrap_or_else(|e| panic!("render of {src:?} gave {r:?}: {e}"));
            assert_eq!(t2, t, "{src:?} -> {r:?}");
        }
    }
}
