//! Dense univariate polynomials over the rationals.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{int, Rational};

/// A polynomial stored as coefficients from the constant term upward.
///
/// The coefficient vector never has a trailing zero, so the zero polynomial
/// is the empty vector and `degree()` is the index of the last entry.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<Rational>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(int(1))
    }

    /// The indeterminate itself.
    pub fn x() -> Self {
        Poly::monomial(int(1), 1)
    }

    pub fn constant(c: Rational) -> Self {
        Poly::from_coeffs(vec![c])
    }

    /// `c * x^k`.
    pub fn monomial(c: Rational, k: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); k + 1];
        coeffs[k] = c;
        Poly::from_coeffs(coeffs)
    }

    /// Build from low-to-high coefficients, trimming trailing zeros.
    pub fn from_coeffs(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Poly::from_coeffs(coeffs.iter().map(|&c| int(c)).collect())
    }

    /// `∏ (x - r)` over the given roots.
    pub fn from_roots<'a>(roots: impl IntoIterator<Item = &'a Rational>) -> Self {
        roots.into_iter().fold(Poly::one(), |acc, r| {
            &acc * &Poly::from_coeffs(vec![-r.clone(), int(1)])
        })
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Rational> {
        self.coeffs
    }

    /// Coefficient of `x^i`; zero past the degree.
    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    /// Degree, with `-1` for the zero polynomial.
    pub fn degree(&self) -> isize {
        self.coeffs.len() as isize - 1
    }

    /// Degree as `usize`; zero for the zero polynomial.
    pub fn deg(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Leading coefficient (zero for the zero polynomial).
    pub fn lc(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Evaluate at a small integer.
    pub fn eval_i64(&self, n: i64) -> Rational {
        self.eval(&int(n))
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Divide by the leading coefficient. The zero polynomial stays zero.
    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        self.scale(&self.lc().recip())
    }

    pub fn is_monic(&self) -> bool {
        self.lc().is_one()
    }

    pub fn derivative(&self) -> Poly {
        Poly::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * int(i as i64))
                .collect(),
        )
    }

    pub fn pow(&self, e: usize) -> Poly {
        let mut result = Poly::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// `p(x) -> p(x^m)`.
    pub fn inflate(&self, m: usize) -> Poly {
        assert!(m > 0, "inflate by zero");
        if self.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![Rational::zero(); self.deg() * m + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i * m] = c.clone();
        }
        Poly::from_coeffs(coeffs)
    }

    /// Returns `q` with `q(n) = p(n + k)` identically.
    pub fn shift(&self, k: i64) -> Poly {
        self.taylor_shift(&int(k))
    }

    /// Returns `q` with `q(n) = p(n + a)` identically.
    pub fn taylor_shift(&self, a: &Rational) -> Poly {
        if a.is_zero() || self.is_constant() {
            return self.clone();
        }
        // Horner in the ring: q = (...(c_d (x+a) + c_{d-1})(x+a) + ...)
        let lin = Poly::from_coeffs(vec![a.clone(), int(1)]);
        let mut acc = Poly::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * &lin) + &Poly::constant(c.clone());
        }
        acc
    }

    /// `p(x) -> p(c x)`.
    pub fn dilate(&self, c: &Rational) -> Poly {
        let mut factor = Rational::one();
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for a in &self.coeffs {
            coeffs.push(a * &factor);
            factor *= c;
        }
        Poly::from_coeffs(coeffs)
    }

    /// Euclidean division: `self = q * b + r` with `deg r < deg b`.
    pub fn divrem(&self, b: &Poly) -> Result<(Poly, Poly)> {
        if b.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.degree() < b.degree() {
            return Ok((Poly::zero(), self.clone()));
        }
        let db = b.deg();
        let inv = b.lc().recip();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Rational::zero(); self.deg() - db + 1];
        for i in (0..quot.len()).rev() {
            let c = &rem[i + db] * &inv;
            if c.is_zero() {
                continue;
            }
            for (j, bj) in b.coeffs.iter().enumerate() {
                rem[i + j] -= &c * bj;
            }
            quot[i] = c;
        }
        rem.truncate(db);
        Ok((Poly::from_coeffs(quot), Poly::from_coeffs(rem)))
    }

    /// Quotient of an exact division. Panics if the division leaves a remainder.
    pub fn div_exact(&self, b: &Poly) -> Poly {
        let (q, r) = self.divrem(b).expect("exact division by zero polynomial");
        assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    pub fn rem(&self, b: &Poly) -> Result<Poly> {
        Ok(self.divrem(b)?.1)
    }

    /// `true` when `b` divides `self`.
    pub fn divisible_by(&self, b: &Poly) -> bool {
        matches!(self.divrem(b), Ok((_, r)) if r.is_zero())
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, b: &Poly) -> Result<Poly> {
        if self.is_zero() && b.is_zero() {
            return Err(Error::ZeroGcd);
        }
        let mut a = self.primitive();
        let mut b = b.primitive();
        while !b.is_zero() {
            let r = a.rem(&b)?;
            a = b;
            b = r.primitive();
        }
        Ok(a.monic())
    }

    /// Extended Euclid: returns `(g, s, t)` with `s*a + t*b = g`, `g` monic.
    pub fn xgcd(&self, b: &Poly) -> Result<(Poly, Poly, Poly)> {
        if self.is_zero() && b.is_zero() {
            return Err(Error::ZeroGcd);
        }
        let (mut r0, mut r1) = (self.clone(), b.clone());
        let (mut s0, mut s1) = (Poly::one(), Poly::zero());
        let (mut t0, mut t1) = (Poly::zero(), Poly::one());
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1)?;
            let s = &s0 - &(&q * &s1);
            let t = &t0 - &(&q * &t1);
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
            t0 = std::mem::replace(&mut t1, t);
        }
        let inv = r0.lc().recip();
        Ok((r0.scale(&inv), s0.scale(&inv), t0.scale(&inv)))
    }

    /// Positive rational `c` such that `self / c` has coprime integer coefficients
    /// and a positive leading coefficient. Zero for the zero polynomial.
    pub fn content(&self) -> Rational {
        if self.is_zero() {
            return Rational::zero();
        }
        let den_lcm = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let num_gcd = self.coeffs.iter().fold(BigInt::zero(), |acc, c| {
            acc.gcd(&(c.numer() * (&den_lcm / c.denom())))
        });
        let c = Rational::new(num_gcd, den_lcm);
        if self.lc().is_negative() {
            -c
        } else {
            c
        }
    }

    /// Primitive integer-coefficient associate with positive leading coefficient.
    pub fn primitive(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        self.scale(&self.content().recip())
    }

    /// Integer coefficients; panics if some coefficient is not integral.
    pub fn to_integer_coeffs(&self) -> Vec<BigInt> {
        self.coeffs
            .iter()
            .map(|c| {
                assert!(c.is_integer(), "non-integral coefficient");
                c.to_integer()
            })
            .collect()
    }

    pub fn from_integer_coeffs(coeffs: &[BigInt]) -> Poly {
        Poly::from_coeffs(
            coeffs
                .iter()
                .map(|c| Rational::from_integer(c.clone()))
                .collect(),
        )
    }

    /// Render with the given variable name, highest power first, e.g. `2*x^2 - x + 1/3`.
    pub fn to_string_with(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let abs = c.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            if mono.is_empty() {
                out.push_str(&abs.to_string());
            } else if abs.is_one() {
                out.push_str(&mono);
            } else {
                out.push_str(&format!("{abs}*{mono}"));
            }
        }
        out
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_with("x"))
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

impl From<Rational> for Poly {
    fn from(c: Rational) -> Self {
        Poly::constant(c)
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n)
            .map(|i| match (self.coeffs.get(i), rhs.coeffs.get(i)) {
                (Some(a), Some(b)) => a + b,
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            })
            .collect();
        Poly::from_coeffs(coeffs)
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self + &(-rhs)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Poly::from_coeffs(coeffs)
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for Poly {
            type Output = Poly;
            fn $m(self, rhs: Poly) -> Poly { (&self).$m(&rhs) }
        }
        impl $tr<&Poly> for Poly {
            type Output = Poly;
            fn $m(self, rhs: &Poly) -> Poly { (&self).$m(rhs) }
        }
        impl $tr<Poly> for &Poly {
            type Output = Poly;
            fn $m(self, rhs: Poly) -> Poly { self.$m(&rhs) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;
    use proptest::prelude::*;

    fn p(c: &[i64]) -> Poly {
        Poly::from_i64s(c)
    }

    #[test]
    fn zero_polynomial_degree() {
        assert_eq!(Poly::zero().degree(), -1);
        assert_eq!(p(&[0, 0, 0]), Poly::zero());
        assert_eq!(p(&[5]).degree(), 0);
    }

    #[test]
    fn divrem_examples() {
        // (x^2 - 1) / (x - 1)
        assert_eq!(
            p(&[-1, 0, 1]).divrem(&p(&[-1, 1])).unwrap(),
            (p(&[1, 1]), Poly::zero())
        );
        // (x^2 + 1) / (x - 1) = x + 1 rem 2
        assert_eq!(
            p(&[1, 0, 1]).divrem(&p(&[-1, 1])).unwrap(),
            (p(&[1, 1]), p(&[2]))
        );
        assert_eq!(
            p(&[0, 0, 0, 1]).divrem(&p(&[0, 0, 1])).unwrap(),
            (p(&[0, 1]), Poly::zero())
        );
        assert_eq!(p(&[1, 2]).divrem(&Poly::zero()), Err(Error::DivisionByZero));
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(p(&[-1, 0, 1]).gcd(&p(&[1, -2, 1])).unwrap(), p(&[-1, 1]));
        assert_eq!(
            p(&[-1, 0, 0, 0, 1])
                .gcd(&p(&[-1, 0, 0, 0, 0, 0, 1]))
                .unwrap(),
            p(&[-1, 0, 1])
        );
        assert_eq!(p(&[0, 1]).gcd(&p(&[1])).unwrap(), Poly::one());
        assert_eq!(Poly::zero().gcd(&Poly::zero()), Err(Error::ZeroGcd));
        assert_eq!(
            Poly::zero().gcd(&p(&[2, 4])).unwrap(),
            Poly::from_coeffs(vec![rat(1, 2), int(1)])
        );
    }

    #[test]
    fn shift_examples() {
        assert_eq!(p(&[0, 0, 1]).shift(1), p(&[1, 2, 1]));
        assert_eq!(p(&[0, 1]).shift(-1), p(&[-1, 1]));
        assert_eq!(p(&[3, 2]).shift(2), p(&[7, 2]));
    }

    #[test]
    fn xgcd_identity() {
        let a = p(&[-1, 0, 1]);
        let b = p(&[2, -3, 1]);
        let (g, s, t) = a.xgcd(&b).unwrap();
        assert_eq!(g, p(&[-1, 1]));
        assert_eq!(&(&s * &a) + &(&t * &b), g);
    }

    #[test]
    fn content_and_primitive() {
        let q = Poly::from_coeffs(vec![rat(1, 2), rat(-3, 4)]);
        assert_eq!(q.content(), rat(-1, 4));
        assert_eq!(q.primitive(), p(&[-2, 3]));
    }

    #[test]
    fn display() {
        assert_eq!(p(&[1, -1, 0, 2]).to_string(), "2*x^3 - x + 1");
        assert_eq!(
            Poly::from_coeffs(vec![rat(-1, 2), int(-1)]).to_string_with("n"),
            "-n - 1/2"
        );
    }

    fn arb_poly() -> impl Strategy<Value = Poly> {
        prop::collection::vec((-20i64..20, 1i64..5), 0..8)
            .prop_map(|v| Poly::from_coeffs(v.into_iter().map(|(a, b)| rat(a, b)).collect()))
    }

    proptest! {
        #[test]
        fn divrem_reconstructs(a in arb_poly(), b in arb_poly()) {
            prop_assume!(!b.is_zero());
            let (q, r) = a.divrem(&b).unwrap();
            prop_assert_eq!(&(&q * &b) + &r, a);
            prop_assert!(r.degree() < b.degree());
        }

        #[test]
        fn gcd_divides_both(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
            prop_assume!(!c.is_zero() && !(a.is_zero() && b.is_zero()));
            let ac = &a * &c;
            let bc = &b * &c;
            let g = ac.gcd(&bc).unwrap();
            prop_assert!(g.is_monic());
            prop_assert!(ac.divisible_by(&g));
            prop_assert!(bc.divisible_by(&g));
            prop_assert!(g.divisible_by(&c.monic()));
        }

        #[test]
        fn shift_matches_evaluation(a in arb_poly(), k in -5i64..5, n in -10i64..10) {
            prop_assert_eq!(a.shift(k).eval_i64(n), a.eval_i64(n + k));
        }
    }
}
