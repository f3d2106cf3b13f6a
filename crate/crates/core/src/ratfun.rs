//! Canonical rational functions over the rationals.

use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::rational::Rational;

/// `num / den` with `gcd(num, den) = 1` and `den` monic.
///
/// The zero function is `0 / 1`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RatFun {
    num: Poly,
    den: Poly,
}

impl RatFun {
    /// Reduce `num / den` to canonical form.
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        if num.is_zero() {
            return Ok(RatFun::zero());
        }
        let g = num.gcd(&den)?;
        let num = num.div_exact(&g);
        let den = den.div_exact(&g);
        let lc = den.lc().recip();
        Ok(RatFun {
            num: num.scale(&lc),
            den: den.scale(&lc),
        })
    }

    pub fn zero() -> Self {
        RatFun {
            num: Poly::zero(),
            den: Poly::one(),
        }
    }

    pub fn constant(c: Rational) -> Self {
        RatFun {
            num: Poly::constant(c),
            den: Poly::one(),
        }
    }

    pub fn var() -> Self {
        RatFun::from(Poly::x())
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// `true` when the denominator does not vanish at the origin.
    pub fn is_analytic_at_zero(&self) -> bool {
        !self.den.coeff(0).is_zero()
    }

    pub fn add(&self, other: &RatFun) -> RatFun {
        let num = &(&self.num * &other.den) + &(&other.num * &self.den);
        RatFun::new(num, &self.den * &other.den).expect("nonzero denominators")
    }

    pub fn sub(&self, other: &RatFun) -> RatFun {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> RatFun {
        RatFun {
            num: -&self.num,
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, other: &RatFun) -> RatFun {
        RatFun::new(&self.num * &other.num, &self.den * &other.den).expect("nonzero denominators")
    }

    pub fn div(&self, other: &RatFun) -> Result<RatFun> {
        if other.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        RatFun::new(&self.num * &other.den, &self.den * &other.num)
    }

    pub fn pow(&self, e: usize) -> RatFun {
        RatFun {
            num: self.num.pow(e),
            den: self.den.pow(e),
        }
    }

    /// `f(x + a)`; used for certificates in the index variable.
    pub fn taylor_shift(&self, a: &Rational) -> RatFun {
        RatFun::new(self.num.taylor_shift(a), self.den.taylor_shift(a))
            .expect("shift keeps den nonzero")
    }

    pub fn eval(&self, x: &Rational) -> Option<Rational> {
        let d = self.den.eval(x);
        if d.is_zero() {
            None
        } else {
            Some(self.num.eval(x) / d)
        }
    }

    /// First `count` power series coefficients at the origin, by exact long
    /// division of the numerator by the denominator.
    pub fn series_coeffs(&self, count: usize) -> Result<Vec<Rational>> {
        let d0 = self.den.coeff(0);
        if d0.is_zero() {
            return Err(Error::NonAnalytic);
        }
        let inv = d0.recip();
        let den = self.den.coeffs();
        let mut out: Vec<Rational> = Vec::with_capacity(count);
        for n in 0..count {
            let mut acc = self.num.coeff(n);
            for (i, d) in den.iter().enumerate().skip(1).take(n) {
                if !d.is_zero() {
                    acc -= d * &out[n - i];
                }
            }
            out.push(acc * &inv);
        }
        Ok(out)
    }

    /// Numerator and denominator scaled so the denominator's constant term is 1
    /// (when it is nonzero); the usual way to show a generating function.
    pub fn gf_parts(&self) -> (Poly, Poly) {
        let d0 = self.den.coeff(0);
        if d0.is_zero() {
            return (self.num.clone(), self.den.clone());
        }
        let s = d0.recip();
        (self.num.scale(&s), self.den.scale(&s))
    }

    /// Compact expression such as `1/(1-x)`, readable by the expression parser.
    pub fn to_expression(&self, var: &str) -> String {
        let (num, den) = self.gf_parts();
        let n = ascending_compact(&num, var);
        if den.degree() == 0 && den.coeff(0).is_one() {
            return n;
        }
        let n = if num.coeffs().iter().filter(|c| !c.is_zero()).count() > 1 {
            format!("({n})")
        } else {
            n
        };
        format!("{n}/({})", ascending_compact(&den, var))
    }
}

/// Ascending powers, no spaces: `4+2*x^2-11*x^4`.
pub fn ascending_compact(p: &Poly, var: &str) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, c) in p.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        if neg {
            out.push('-');
        } else if !out.is_empty() {
            out.push('+');
        }
        let abs = c.abs();
        match (i, abs.is_one()) {
            (0, _) => out.push_str(&abs.to_string()),
            (_, true) => {}
            (_, false) => {
                out.push_str(&abs.to_string());
                out.push('*');
            }
        }
        match i {
            0 => {}
            1 => out.push_str(var),
            _ => out.push_str(&format!("{var}^{i}")),
        }
    }
    out
}

impl From<Poly> for RatFun {
    fn from(p: Poly) -> Self {
        RatFun {
            num: p,
            den: Poly::one(),
        }
    }
}

impl fmt::Display for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_expression("x"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};
    use proptest::prelude::*;

    fn p(c: &[i64]) -> Poly {
        Poly::from_i64s(c)
    }

    /// Generating function of A307717.
    fn a307717() -> RatFun {
        let num = -p(&[4, 0, 2, 0, -11, 0, -5, 0, 12, 0, 5, 0, -5, 0, -1, 0, 2]);
        let den = p(&[-1, 0, 0, 0, 4, 0, 0, 0, -6, 0, 0, 0, 4, 0, 0, 0, -1]);
        RatFun::new(num, den).unwrap()
    }

    fn a226782() -> RatFun {
        let num = -p(&[0, 0, 1, 0, 4, 0, 0, 0, -1]);
        let den = p(&[-1, 0, 0, 0, 2, 0, 0, 0, -1]);
        RatFun::new(num, den).unwrap()
    }

    #[test]
    fn normalize_examples() {
        let f = RatFun::new(p(&[2, 2]), p(&[-2, 2])).unwrap();
        assert_eq!((f.num(), f.den()), (&p(&[1, 1]), &p(&[-1, 1])));
        let f = RatFun::new(p(&[-1, 0, 1]), p(&[-1, 1])).unwrap();
        assert_eq!((f.num(), f.den()), (&p(&[1, 1]), &Poly::one()));
        assert_eq!(
            RatFun::new(p(&[1]), Poly::zero()),
            Err(Error::ZeroDenominator)
        );
    }

    #[test]
    fn a226782_gf_is_already_reduced() {
        let num = p(&[0, 0, 1, 0, 4, 0, 0, 0, -1]);
        let den = p(&[1, 0, 0, 0, -2, 0, 0, 0, 1]);
        let f = RatFun::new(num.clone(), den.clone()).unwrap();
        assert_eq!(f.num(), &num);
        assert_eq!(f.den(), &den);
        assert_eq!(f, a226782());
    }

    #[test]
    fn series_examples() {
        let geo = RatFun::new(p(&[1]), p(&[1, -1])).unwrap();
        assert_eq!(geo.series_coeffs(4).unwrap(), vec![int(1); 4]);
        let want: Vec<Rational> = [4, 0, 2, 0, 5].iter().map(|&v| int(v)).collect();
        assert_eq!(a307717().series_coeffs(5).unwrap(), want);
        let want: Vec<Rational> = [0, 0, 1, 0, 4].iter().map(|&v| int(v)).collect();
        assert_eq!(a226782().series_coeffs(5).unwrap(), want);
        let pole = RatFun::new(p(&[1]), p(&[0, 1])).unwrap();
        assert_eq!(pole.series_coeffs(3), Err(Error::NonAnalytic));
    }

    #[test]
    fn expression_text() {
        let geo = RatFun::new(p(&[1]), p(&[1, -1])).unwrap();
        assert_eq!(geo.to_expression("x"), "1/(1-x)");
        let f = RatFun::new(Poly::from_coeffs(vec![rat(1, 2), int(-3)]), p(&[2, 0, 1])).unwrap();
        assert_eq!(f.to_expression("t"), "(1/4-3/2*t)/(1+1/2*t^2)");
        assert_eq!(RatFun::zero().to_expression("x"), "0");
    }

    fn arb_ratfun() -> impl Strategy<Value = RatFun> {
        (
            prop::collection::vec(-5i64..6, 0..5),
            prop::collection::vec(-5i64..6, 1..5),
        )
            .prop_filter_map("zero denominator", |(n, d)| RatFun::new(p(&n), p(&d)).ok())
    }

    proptest! {
        #[test]
        fn canonical_after_arithmetic(f in arb_ratfun(), g in arb_ratfun()) {
            for h in [f.add(&g), f.mul(&g), f.sub(&g)] {
                prop_assert!(h.den().is_monic());
                prop_assert_eq!(h.num().gcd(h.den()).unwrap(), Poly::one());
            }
        }

        #[test]
        fn series_times_den_is_num(f in arb_ratfun()) {
            prop_assume!(f.is_analytic_at_zero());
            let s = Poly::from_coeffs(f.series_coeffs(12).unwrap());
            let prod = &s * f.den();
            for i in 0..12 {
                prop_assert_eq!(prod.coeff(i), f.num().coeff(i));
            }
        }
    }
}
