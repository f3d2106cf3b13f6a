//! Shared fixtures and an independent evaluator for rendered formulas.
#![allow(dead_code)]

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};

use hyperseq::poly::Poly;
use hyperseq::ratfun::RatFun;
use hyperseq::rational::{int, Rational};

pub const A307717: [i64; 33] = [
    4, 0, 2, 0, 5, 0, 3, 0, 8, 0, 5, 0, 13, 0, 9, 0, 22, 0, 16, 0, 37, 0, 27, 0, 60, 0, 43, 0, 93,
    0, 65, 0, 138,
];

pub const A226782: [i64; 17] = [0, 0, 1, 0, 4, 0, 2, 0, 7, 0, 3, 0, 10, 0, 4, 0, 13];

pub fn ints(v: &[i64]) -> Vec<Rational> {
    v.iter().map(|&x| int(x)).collect()
}

pub fn p(c: &[i64]) -> Poly {
    Poly::from_i64s(c)
}

/// `-(2x^16 - x^14 - 5x^12 + 5x^10 + 12x^8 - 5x^6 - 11x^4 + 2x^2 + 4) / (-x^16 + 4x^12 - 6x^8 + 4x^4 - 1)`
pub fn a307717_gf() -> RatFun {
    let num = -p(&[4, 0, 2, 0, -11, 0, -5, 0, 12, 0, 5, 0, -5, 0, -1, 0, 2]);
    let den = p(&[-1, 0, 0, 0, 4, 0, 0, 0, -6, 0, 0, 0, 4, 0, 0, 0, -1]);
    RatFun::new(num, den).unwrap()
}

/// `-(-x^8 + 4x^4 + x^2) / (-x^8 + 2x^4 - 1)`
pub fn a226782_gf() -> RatFun {
    RatFun::new(
        -p(&[0, 0, 1, 0, 4, 0, 0, 0, -1]),
        p(&[-1, 0, 0, 0, 2, 0, 0, 0, -1]),
    )
    .unwrap()
}

// ------------------------------------------------------------ formula lines

/// Evaluate an arithmetic expression in one index variable at `n`.
/// Supports `+ - * / ^`, parentheses, integer exponents (possibly negative
/// or equal to the index) and `pochhammer(a, n)`.
pub fn eval_expr(src: &str, idx: &str, n: i64) -> Rational {
    let toks = tokenize(src);
    let mut ev = Eval {
        toks,
        at: 0,
        idx,
        n,
    };
    let v = ev.sum();
    assert_eq!(ev.at, ev.toks.len(), "trailing input in {src}");
    v
}

#[derive(Clone, Debug, PartialEq)]
enum T {
    Num(BigInt),
    Id(String),
    Sym(char),
}

fn tokenize(s: &str) -> Vec<T> {
    let cs: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < cs.len() {
        let c = cs[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let st = i;
            while i < cs.len() && cs[i].is_ascii_digit() {
                i += 1;
            }
            out.push(T::Num(
                cs[st..i].iter().collect::<String>().parse().unwrap(),
            ));
        } else if c.is_alphabetic() || c == '_' {
            let st = i;
            while i < cs.len() && (cs[i].is_alphanumeric() || cs[i] == '_') {
                i += 1;
            }
            out.push(T::Id(cs[st..i].iter().collect()));
        } else {
            out.push(T::Sym(c));
            i += 1;
        }
    }
    out
}

struct Eval<'a> {
    toks: Vec<T>,
    at: usize,
    idx: &'a str,
    n: i64,
}

impl Eval<'_> {
    fn sym(&mut self, c: char) -> bool {
        if self.toks.get(self.at) == Some(&T::Sym(c)) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn sum(&mut self) -> Rational {
        let mut v = self.product();
        loop {
            if self.sym('+') {
                v += self.product();
            } else if self.sym('-') {
                v -= self.product();
            } else {
                return v;
            }
        }
    }

    fn product(&mut self) -> Rational {
        let mut v = self.signed();
        loop {
            if self.sym('*') {
                v *= self.signed();
            } else if self.sym('/') {
                v /= self.signed();
            } else {
                return v;
            }
        }
    }

    fn signed(&mut self) -> Rational {
        if self.sym('-') {
            -self.signed()
        } else {
            self.power()
        }
    }

    fn power(&mut self) -> Rational {
        let base = self.atom();
        if !self.sym('^') {
            return base;
        }
        let e = self.signed();
        assert!(e.is_integer(), "non-integer exponent");
        let e = e.to_integer().to_i64().unwrap();
        let b = if e < 0 { base.recip() } else { base };
        num_traits::pow(b, e.unsigned_abs() as usize)
    }

    fn atom(&mut self) -> Rational {
        let t = self.toks[self.at].clone();
        self.at += 1;
        match t {
            T::Num(v) => Rational::from_integer(v),
            T::Id(name) if name == self.idx => int(self.n),
            T::Id(name) if name == "pochhammer" => {
                assert!(self.sym('('));
                let a = self.sum();
                assert!(self.sym(','));
                let k = self.sum().to_integer().to_i64().unwrap();
                assert!(self.sym(')'));
                (0..k).fold(Rational::one(), |acc, j| acc * (&a + int(j)))
            }
            T::Sym('(') => {
                let v = self.sum();
                assert!(self.sym(')'), "expected )");
                v
            }
            other => panic!("unexpected token {other:?}"),
        }
    }
}

/// One line of the piecewise view.
#[derive(Debug)]
pub enum Line {
    Value {
        index: usize,
        value: Rational,
    },
    Residue {
        m: usize,
        j: usize,
        expr: String,
        from: usize,
    },
}

/// Parse `a(K) = V` and `a(Mn+J) = EXPR for n >= S` lines.
pub fn parse_formula(text: &str, idx: &str) -> Vec<Line> {
    text.lines()
        .map(|line| {
            let rest = line.strip_prefix("a(").expect("line starts with a(");
            let (arg, rhs) = rest.split_once(") = ").expect("a(...) = ...");
            if let Ok(index) = arg.parse::<usize>() {
                return Line::Value {
                    index,
                    value: eval_expr(rhs, idx, 0),
                };
            }
            let (expr, from) = rhs.rsplit_once(&format!(" for {idx} >= ")).expect("range");
            let (mpart, j) = match arg.split_once('+') {
                Some((a, b)) => (a, b.parse().unwrap()),
                None => (arg, 0),
            };
            let m = match mpart.strip_suffix(idx).unwrap() {
                "" => 1,
                s => s.parse().unwrap(),
            };
            Line::Residue {
                m,
                j,
                expr: expr.to_string(),
                from: from.parse().unwrap(),
            }
        })
        .collect()
}

/// Value at index `k` from the piecewise lines; explicit values win.
pub fn formula_value(lines: &[Line], idx: &str, k: usize) -> Rational {
    for l in lines {
        if let Line::Value { index, value } = l {
            if *index == k {
                return value.clone();
            }
        }
    }
    for l in lines {
        if let Line::Residue { m, j, expr, from } = l {
            if k % m == *j && k / m >= *from {
                return eval_expr(expr, idx, (k / m) as i64);
            }
        }
    }
    panic!("index {k} not covered by the formula");
}
