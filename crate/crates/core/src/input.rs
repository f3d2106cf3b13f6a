//! Parsers for rational-function expressions and sequence listings.

use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::guess::SequencePrefix;
use crate::ratfun::RatFun;
use crate::rational::{parse_rational, Rational};

/// Largest numerator or denominator degree an expression may build.
pub const EXPRESSION_DEGREE_CAP: usize = 4096;

/// Parsed expression; `pos` fields are byte offsets into the source.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Number(Rational),
    Var {
        name: String,
        pos: usize,
    },
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div {
        num: Box<Expr>,
        den: Box<Expr>,
        pos: usize,
    },
    Pow {
        base: Box<Expr>,
        exp: u32,
    },
    Group(Box<Expr>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Num(Rational),
    Ident(String),
    Op(char),
}

/// 1-based line and column of a byte offset.
fn line_col(src: &str, pos: usize) -> (usize, usize) {
    let before = &src[..pos.min(src.len())];
    let line = before.matches('\n').count() + 1;
    let col = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
    (line, col)
}

fn err_at(src: &str, pos: usize, msg: impl Into<String>) -> Error {
    let (l, c) = line_col(src, pos);
    Error::parse(l, c, msg)
}

fn lex(src: &str) -> Result<Vec<(Tok, usize)>> {
    let mut toks = Vec::new();
    let bytes = src.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        if c.is_ascii_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() || c == b'.' {
            let start = i;
            while i < bytes.len() && (bytes[i].is_ascii_digit() || bytes[i] == b'.') {
                i += 1;
            }
            let text = &src[start..i];
            let value = decimal(text)
                .ok_or_else(|| err_at(src, start, format!("malformed number '{text}'")))?;
            toks.push((Tok::Num(value), start));
        } else if c.is_ascii_alphabetic() || c == b'_' {
            let start = i;
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            toks.push((Tok::Ident(src[start..i].to_string()), start));
        } else if b"+-*/^()".contains(&c) {
            toks.push((Tok::Op(c as char), i));
            i += 1;
        } else {
            let ch = src[i..].chars().next().unwrap_or('?');
            return Err(err_at(src, i, format!("unexpected character '{ch}'")));
        }
    }
    Ok(toks)
}

/// `12`, `1.25`, `.5`, `3.` as exact rationals.
fn decimal(text: &str) -> Option<Rational> {
    let (int_part, frac) = match text.split_once('.') {
        Some((a, b)) => (a, b),
        None => (text, ""),
    };
    if frac.contains('.') || (int_part.is_empty() && frac.is_empty()) {
        return None;
    }
    let digits = format!("{int_part}{frac}");
    let n = BigInt::from_str(&digits).ok()?;
    let d = num_traits::pow(BigInt::from(10), frac.len());
    Some(Rational::new(n, d))
}

struct Parser<'a> {
    src: &'a str,
    toks: Vec<(Tok, usize)>,
    at: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(t, _)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.src.len(), |(_, p)| *p)
    }

    fn eat(&mut self, op: char) -> bool {
        if self.peek() == Some(&Tok::Op(op)) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            if self.eat('+') {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat('-') {
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        loop {
            if self.eat('*') {
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
            } else if self.peek() == Some(&Tok::Op('/')) {
                let pos = self.pos();
                self.at += 1;
                let den = self.unary()?;
                lhs = Expr::Div {
                    num: Box::new(lhs),
                    den: Box::new(den),
                    pos,
                };
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.eat('-') {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        if self.eat('+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let pos = self.pos();
        let exp = self.unary()?;
        let value = constant_value(&exp).ok_or_else(|| {
            err_at(
                self.src,
                pos,
                "exponent must be a reasonably sized constant",
            )
        })?;
        if !value.is_integer() {
            return Err(err_at(self.src, pos, "non-integer exponent"));
        }
        if value.is_negative() {
            return Err(err_at(self.src, pos, "negative exponent"));
        }
        let exp = value
            .to_integer()
            .to_u32()
            .ok_or_else(|| err_at(self.src, pos, "exponent too large"))?;
        Ok(Expr::Pow {
            base: Box::new(base),
            exp,
        })
    }

    fn atom(&mut self) -> Result<Expr> {
        let pos = self.pos();
        match self.toks.get(self.at).cloned() {
            Some((Tok::Num(v), _)) => {
                self.at += 1;
                Ok(Expr::Number(v))
            }
            Some((Tok::Ident(name), _)) => {
                self.at += 1;
                if self.peek() == Some(&Tok::Op('('))
                    || matches!(self.peek(), Some(Tok::Ident(_) | Tok::Num(_)))
                {
                    return Err(err_at(
                        self.src,
                        self.pos(),
                        "implicit multiplication or function calls are not supported",
                    ));
                }
                Ok(Expr::Var { name, pos })
            }
            Some((Tok::Op('('), _)) => {
                self.at += 1;
                let inner = self.expr()?;
                if !self.eat(')') {
                    return Err(err_at(self.src, self.pos(), "expected ')'"));
                }
                Ok(Expr::Group(Box::new(inner)))
            }
            Some((Tok::Op(c), _)) => Err(err_at(self.src, pos, format!("unexpected '{c}'"))),
            None => Err(err_at(self.src, pos, "unexpected end of input")),
        }
    }
}

/// Value of a variable-free expression, `None` if it has a variable or
/// divides by zero.
fn constant_value(e: &Expr) -> Option<Rational> {
    Some(match e {
        Expr::Number(v) => v.clone(),
        Expr::Var { .. } => return None,
        Expr::Neg(a) => -constant_value(a)?,
        Expr::Group(a) => constant_value(a)?,
        Expr::Add(a, b) => constant_value(a)? + constant_value(b)?,
        Expr::Sub(a, b) => constant_value(a)? - constant_value(b)?,
        Expr::Mul(a, b) => constant_value(a)? * constant_value(b)?,
        Expr::Div { num, den, .. } => {
            let d = constant_value(den)?;
            if d.is_zero() {
                return None;
            }
            constant_value(num)? / d
        }
        Expr::Pow { base, exp } => checked_pow(&constant_value(base)?, *exp)?,
    })
}

/// Bits allowed in a constant power before the input is rejected.
const CONSTANT_BITS_CAP: u64 = 1 << 20;

fn checked_pow(r: &Rational, e: u32) -> Option<Rational> {
    let bits = r.numer().bits() + r.denom().bits();
    if bits.saturating_mul(e as u64) > CONSTANT_BITS_CAP && !r.numer().magnitude().is_one() {
        return None;
    }
    Some(num_traits::pow(r.clone(), e as usize))
}

/// Parse the whole input into an expression tree.
pub fn parse_ast(input: &str) -> Result<Expr> {
    let toks = lex(input)?;
    if toks.is_empty() {
        return Err(err_at(input, 0, "empty expression"));
    }
    let mut p = Parser {
        src: input,
        toks,
        at: 0,
    };
    let e = p.expr()?;
    if p.at < p.toks.len() {
        return Err(err_at(input, p.pos(), "unexpected trailing input"));
    }
    Ok(e)
}

/// Parse and normalize an expression in at most one variable.
pub fn parse_expression(input: &str) -> Result<RatFun> {
    let e = parse_ast(input)?;
    let mut var: Option<String> = None;
    to_ratfun(&e, input, &mut var)
}

fn check_degree(f: RatFun) -> Result<RatFun> {
    let d = f.num().deg().max(f.den().deg());
    if d > EXPRESSION_DEGREE_CAP {
        return Err(Error::DegreeCap {
            degree: d,
            cap: EXPRESSION_DEGREE_CAP,
        });
    }
    Ok(f)
}

fn to_ratfun(e: &Expr, src: &str, var: &mut Option<String>) -> Result<RatFun> {
    let f = match e {
        Expr::Number(v) => RatFun::constant(v.clone()),
        Expr::Var { name, pos } => {
            match var {
                Some(v) if v != name => {
                    return Err(err_at(
                        src,
                        *pos,
                        format!("second variable '{name}' (already using '{v}')"),
                    ))
                }
                _ => *var = Some(name.clone()),
            }
            RatFun::var()
        }
        Expr::Neg(a) => to_ratfun(a, src, var)?.neg(),
        Expr::Group(a) => to_ratfun(a, src, var)?,
        Expr::Add(a, b) => to_ratfun(a, src, var)?.add(&to_ratfun(b, src, var)?),
        Expr::Sub(a, b) => to_ratfun(a, src, var)?.sub(&to_ratfun(b, src, var)?),
        Expr::Mul(a, b) => to_ratfun(a, src, var)?.mul(&to_ratfun(b, src, var)?),
        Expr::Div { num, den, pos } => {
            let n = to_ratfun(num, src, var)?;
            let d = to_ratfun(den, src, var)?;
            if d.is_zero() {
                return Err(err_at(src, *pos, "division by zero"));
            }
            n.div(&d)?
        }
        Expr::Pow { base, exp } => {
            let b = to_ratfun(base, src, var)?;
            let d = b.num().deg().max(b.den().deg());
            if d.saturating_mul(*exp as usize) > EXPRESSION_DEGREE_CAP {
                return Err(Error::DegreeCap {
                    degree: d.saturating_mul(*exp as usize),
                    cap: EXPRESSION_DEGREE_CAP,
                });
            }
            if b.is_zero() && *exp == 0 {
                RatFun::constant(Rational::one())
            } else if b.den().degree() == 0 && b.num().degree() < 1 {
                let c = checked_pow(&b.num().coeff(0), *exp)
                    .ok_or_else(|| err_at(src, 0, "constant power too large"))?;
                RatFun::constant(c)
            } else {
                b.pow(*exp as usize)
            }
        }
    };
    check_degree(f)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SequenceMode {
    List,
    BFile,
}

/// Parse a sequence prefix. B-files are re-based at 0; use
/// [`parse_bfile`] to learn the original offset.
pub fn parse_sequence(input: &str, mode: SequenceMode) -> Result<SequencePrefix> {
    match mode {
        SequenceMode::List => parse_list(input),
        SequenceMode::BFile => parse_bfile(input).map(|(s, _)| s),
    }
}

/// Comma and/or whitespace separated terms, optionally inside `[...]`.
pub fn parse_list(input: &str) -> Result<SequencePrefix> {
    let trimmed_start = input.len() - input.trim_start().len();
    let mut body = input.trim();
    let mut base = trimmed_start;
    if let Some(rest) = body.strip_prefix('[') {
        body = rest
            .strip_suffix(']')
            .ok_or_else(|| err_at(input, input.trim_end().len(), "missing closing ']'"))?;
        base += 1;
    } else if body.ends_with(']') {
        return Err(err_at(
            input,
            trimmed_start + body.len() - 1,
            "unmatched ']'",
        ));
    }
    let mut terms = Vec::new();
    let mut expect_term = true;
    let mut token_start: Option<usize> = None;
    let bytes = body.as_bytes();
    let flush = |start: usize, end: usize, terms: &mut Vec<Rational>| -> Result<()> {
        let text = &body[start..end];
        let v = parse_rational(text)
            .filter(|_| !text.contains(char::is_whitespace))
            .ok_or_else(|| err_at(input, base + start, format!("malformed term '{text}'")))?;
        terms.push(v);
        Ok(())
    };
    for (i, &c) in bytes.iter().enumerate() {
        let sep = c == b',' || c.is_ascii_whitespace();
        match (sep, token_start) {
            (false, None) => token_start = Some(i),
            (true, Some(s)) => {
                flush(s, i, &mut terms)?;
                token_start = None;
                expect_term = false;
            }
            _ => {}
        }
        if c == b',' {
            if expect_term {
                return Err(err_at(input, base + i, "empty term"));
            }
            expect_term = true;
        }
    }
    if let Some(s) = token_start {
        flush(s, bytes.len(), &mut terms)?;
    } else if expect_term && !terms.is_empty() {
        return Err(err_at(input, base + bytes.len(), "trailing ','"));
    }
    if terms.is_empty() {
        return Err(err_at(input, 0, "empty input"));
    }
    SequencePrefix::new(terms)
}

/// OEIS b-file: `index value` per line, `#` comments. Returns the terms and
/// the smallest index.
pub fn parse_bfile(input: &str) -> Result<(SequencePrefix, i64)> {
    let mut terms = Vec::new();
    let mut first: Option<i64> = None;
    let mut expected = 0i64;
    for (ln, line) in input.lines().enumerate() {
        let content = line.split('#').next().unwrap_or("");
        if content.trim().is_empty() {
            continue;
        }
        let fields: Vec<(usize, &str)> = content
            .split_whitespace()
            .map(|f| (f.as_ptr() as usize - line.as_ptr() as usize, f))
            .collect();
        let at =
            |col: usize, msg: String| Error::parse(ln + 1, line[..col].chars().count() + 1, msg);
        if fields.len() != 2 {
            return Err(at(fields[0].0, "expected 'index value'".into()));
        }
        let (ic, it) = fields[0];
        let index: i64 = it
            .parse()
            .map_err(|_| at(ic, format!("malformed index '{it}'")))?;
        let (vc, vt) = fields[1];
        let value = parse_rational(vt).ok_or_else(|| at(vc, format!("malformed value '{vt}'")))?;
        match first {
            None => first = Some(index),
            Some(_) if index != expected => {
                return Err(at(
                    ic,
                    format!("index {index} is not consecutive (expected {expected})"),
                ))
            }
            _ => {}
        }
        expected = index + 1;
        terms.push(value);
    }
    let Some(first) = first else {
        return Err(Error::parse(1, 1, "empty input"));
    };
    Ok((SequencePrefix::new(terms)?, first))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Poly;
    use crate::rational::{int, rat};
    use proptest::prelude::*;

    fn p(c: &[i64]) -> Poly {
        Poly::from_i64s(c)
    }

    fn ints(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn expressions() {
        assert_eq!(
            parse_expression("1/(1-x)").unwrap(),
            RatFun::new(p(&[1]), p(&[1, -1])).unwrap()
        );
        let f = parse_expression("-(-x^8+4*x^4+x^2)/(-x^8+2*x^4-1)").unwrap();
        let want = RatFun::new(
            -p(&[0, 0, 1, 0, 4, 0, 0, 0, -1]),
            p(&[-1, 0, 0, 0, 2, 0, 0, 0, -1]),
        )
        .unwrap();
        assert_eq!(f, want);
        assert_eq!(
            parse_expression(" 2 ^ 3 ^ 2 ").unwrap(),
            RatFun::constant(int(512))
        );
        assert_eq!(
            parse_expression("-x^2").unwrap(),
            RatFun::from(p(&[0, 0, -1]))
        );
        assert_eq!(
            parse_expression("1.25*t").unwrap(),
            RatFun::from(Poly::from_coeffs(vec![int(0), rat(5, 4)]))
        );
        assert_eq!(
            parse_expression("x^(1+1)").unwrap(),
            RatFun::from(p(&[0, 0, 1]))
        );
    }

    #[test]
    fn expression_errors() {
        for bad in [
            "x^(1/2)", "x^-1", "x^y", "x+y", "2x", "x(1)", "(1-x", "1/0", "1/(x-x)", "", "1 +",
            "x $ 2", "1..2", "9^9^9^9",
        ] {
            assert!(
                matches!(parse_expression(bad), Err(Error::Parse { .. })),
                "{bad}"
            );
        }
        assert_eq!(
            parse_expression("1 +\n  y*x"),
            Err(Error::parse(
                2,
                5,
                "second variable 'x' (already using 'y')"
            ))
        );
        assert!(matches!(
            parse_expression("(1-x)^5000"),
            Err(Error::DegreeCap { .. })
        ));
    }

    #[test]
    fn lists() {
        assert_eq!(
            parse_list("[4, 0, 2, 0, 5]").unwrap().terms(),
            &ints(&[4, 0, 2, 0, 5])[..]
        );
        assert_eq!(
            parse_list("1 -2\n3/6").unwrap().terms(),
            &[int(1), int(-2), rat(1, 2)][..]
        );
        for bad in ["", "  ", "[]", "1,,2", "1, x", "[1, 2", "1 2]", "1/0", "1,"] {
            assert!(matches!(parse_list(bad), Err(Error::Parse { .. })), "{bad}");
        }
        assert_eq!(
            parse_list("1, 2, y"),
            Err(Error::parse(1, 7, "malformed term 'y'"))
        );
    }

    #[test]
    fn bfiles() {
        let (s, first) = parse_bfile("0 0\n1 0\n2 1\n3 0\n4 4").unwrap();
        assert_eq!((s.terms(), first), (&ints(&[0, 0, 1, 0, 4])[..], 0));
        let (s, first) = parse_bfile("# A000012\n\n1 1  # one\n2 1\n").unwrap();
        assert_eq!((s.terms(), first), (&ints(&[1, 1])[..], 1));
        assert_eq!(
            parse_bfile("0 1\n2 1"),
            Err(Error::parse(
                2,
                1,
                "index 2 is not consecutive (expected 1)"
            ))
        );
        assert!(parse_bfile("# nothing").is_err());
        assert!(parse_bfile("0 1 2").is_err());
        assert!(parse_bfile("0 x").is_err());
    }

    fn arb_ratfun() -> impl Strategy<Value = RatFun> {
        (
            prop::collection::vec((-9i64..10, 1i64..5), 0..6),
            prop::collection::vec((-9i64..10, 1i64..5), 1..6),
        )
            .prop_filter_map("zero denominator", |(n, d)| {
                let n = Poly::from_coeffs(n.into_iter().map(|(a, b)| rat(a, b)).collect());
                let d = Poly::from_coeffs(d.into_iter().map(|(a, b)| rat(a, b)).collect());
                RatFun::new(n, d)
                    .ok()
                    .filter(|f| f.is_analytic_at_zero() || f.is_zero())
            })
    }

    proptest! {
        #[test]
        fn expression_round_trip(f in arb_ratfun()) {
            prop_assert_eq!(parse_expression(&f.to_expression("x")).unwrap(), f);
        }

        #[test]
        fn parser_never_panics(s in "[ -~\n]{0,40}") {
            let _ = parse_expression(&s);
            let _ = parse_list(&s);
            let _ = parse_bfile(&s);
        }

        #[test]
        fn list_round_trip(v in prop::collection::vec((-50i64..50, 1i64..7), 1..20)) {
            let terms: Vec<Rational> = v.iter().map(|&(a, b)| rat(a, b)).collect();
            let text = terms.iter().map(|t| t.to_string()).collect::<Vec<_>>().join(", ");
            let parsed = parse_list(&format!("[{text}]")).unwrap();
            prop_assert_eq!(parsed.terms(), &terms[..]);
        }
    }
}
