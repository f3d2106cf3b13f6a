//! Holonomic differential equations for rational functions and their
//! coefficient recurrences.

use std::collections::BTreeMap;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::ratfun::RatFun;
use crate::rational::{int, Rational};

/// `Σ_k coeffs[k](x) · f^(k)(x) = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HolonomicDE {
    coeffs: Vec<Poly>,
}

impl HolonomicDE {
    pub fn new(coeffs: Vec<Poly>) -> Result<Self> {
        match coeffs.last() {
            Some(c) if !c.is_zero() => Ok(HolonomicDE { coeffs }),
            _ => Err(Error::ZeroFunction),
        }
    }

    pub fn coeffs(&self) -> &[Poly] {
        &self.coeffs
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Apply the operator to a rational function.
    pub fn apply(&self, f: &RatFun) -> RatFun {
        let mut acc = RatFun::zero();
        let mut deriv = f.clone();
        for c in &self.coeffs {
            acc = acc.add(&RatFun::from(c.clone()).mul(&deriv));
            deriv = derivative(&deriv);
        }
        acc
    }
}

fn derivative(f: &RatFun) -> RatFun {
    let (p, q) = (f.num(), f.den());
    let num = &(&p.derivative() * q) - &(p * &q.derivative());
    RatFun::new(num, q * q).expect("nonzero denominator")
}

/// `Σ_i coeffs[i](n) · a(n+i) = 0` for every `n >= valid_from`, where the
/// leading coefficient also does not vanish.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HolonomicRE {
    coeffs: Vec<Poly>,
    valid_from: i64,
}

impl HolonomicRE {
    /// Trailing and leading coefficients must be nonzero.
    pub fn new(coeffs: Vec<Poly>, valid_from: i64) -> Result<Self> {
        if coeffs.first().is_none_or(|c| c.is_zero()) || coeffs.last().is_none_or(|c| c.is_zero()) {
            return Err(Error::ZeroFunction);
        }
        Ok(HolonomicRE { coeffs, valid_from })
    }

    pub fn coeffs(&self) -> &[Poly] {
        &self.coeffs
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn valid_from(&self) -> i64 {
        self.valid_from
    }

    /// `Σ_i c_i(n) · a(n+i)` with `a` supplied as a lookup.
    pub fn residual(&self, n: i64, a: impl Fn(i64) -> Rational) -> Rational {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| c.eval_i64(n) * a(n + i as i64))
            .sum()
    }

    /// Extend `initial` to `count` terms with the recurrence. `initial` must
    /// hold at least `valid_from + order` terms.
    pub fn unroll(&self, initial: &[Rational], count: usize) -> Vec<Rational> {
        let d = self.order();
        let start = self.valid_from.max(0) as usize;
        let mut a: Vec<Rational> = initial.iter().take(count).cloned().collect();
        assert!(
            a.len() >= (start + d).min(count),
            "not enough initial terms"
        );
        while a.len() < count {
            let k = a.len();
            let n = k - d;
            let acc: Rational = (0..d)
                .map(|i| self.coeffs[i].eval_i64(n as i64) * &a[n + i])
                .sum();
            a.push(-acc / self.coeffs[d].eval_i64(n as i64));
        }
        a
    }
}

/// First-order equation `p q f' - (p' q - p q') f = 0` for `f = p / q`,
/// divided by the gcd of its coefficients and made primitive.
pub fn de_from_ratfun(f: &RatFun) -> Result<HolonomicDE> {
    if f.is_zero() {
        return Err(Error::ZeroFunction);
    }
    let (p, q) = (f.num(), f.den());
    let c1 = p * q;
    let c0 = -(&(&p.derivative() * q) - &(p * &q.derivative()));
    let g = c1.gcd(&c0)?;
    let mut coeffs = vec![c0.div_exact(&g), c1.div_exact(&g)];
    make_primitive(&mut coeffs);
    HolonomicDE::new(coeffs)
}

/// Rewrite `x^l f^(k) -> (n-l+1)(n-l+2)…(n-l+k) a(n-l+k)`, collect shifts,
/// move the lowest shift to `a(n)` and strip the common polynomial factor.
pub fn re_from_de(de: &HolonomicDE) -> HolonomicRE {
    let mut by_shift: BTreeMap<i64, Poly> = BTreeMap::new();
    for (k, c) in de.coeffs().iter().enumerate() {
        for (l, coef) in c.coeffs().iter().enumerate() {
            if coef.is_zero() {
                continue;
            }
            let shift = k as i64 - l as i64;
            let mut rising = Poly::constant(coef.clone());
            for j in 1..=k as i64 {
                rising = &rising * &Poly::from_coeffs(vec![int(j - l as i64), int(1)]);
            }
            let entry = by_shift.entry(shift).or_insert_with(Poly::zero);
            *entry = &*entry + &rising;
        }
    }
    by_shift.retain(|_, p| !p.is_zero());
    let lo = *by_shift.keys().next().expect("nonzero operator");
    let hi = *by_shift.keys().next_back().unwrap();
    // Index change n -> n - lo so the lowest shift becomes a(n).
    let mut coeffs: Vec<Poly> = (lo..=hi)
        .map(|s| by_shift.get(&s).map_or_else(Poly::zero, |p| p.shift(-lo)))
        .collect();

    let g = coeffs.iter().fold(Poly::zero(), |acc, c| {
        if acc.is_zero() {
            c.monic()
        } else {
            acc.gcd(c).unwrap()
        }
    });
    for c in coeffs.iter_mut() {
        *c = c.div_exact(&g);
    }
    make_primitive(&mut coeffs);

    // Rewrite valid for n - lo >= 0; removed content and the leading
    // coefficient must not vanish from the start index on.
    let mut valid_from = lo.max(0);
    let leading = coeffs.last().unwrap().clone();
    for root in integer_roots(&g).into_iter().chain(integer_roots(&leading)) {
        if root >= valid_from {
            valid_from = root + 1;
        }
    }
    HolonomicRE::new(coeffs, valid_from).expect("collected shifts are nonzero at both ends")
}

/// Integer roots of a polynomial, by exact evaluation at the divisors of the
/// trailing nonzero coefficient of its primitive associate.
pub fn integer_roots(p: &Poly) -> Vec<i64> {
    if p.degree() < 1 {
        return Vec::new();
    }
    let prim = p.primitive().to_integer_coeffs();
    let mut roots = Vec::new();
    let low = prim.iter().position(|c| !c.is_zero()).unwrap();
    if low > 0 {
        roots.push(0);
    }
    let t = prim[low].abs();
    let Some(t) = num_traits::ToPrimitive::to_i64(&t) else {
        return roots;
    };
    let mut d = 1i64;
    while d * d <= t {
        if t % d == 0 {
            for cand in [d, t / d] {
                for r in [cand, -cand] {
                    if !roots.contains(&r) && p.eval_i64(r).is_zero() {
                        roots.push(r);
                    }
                }
            }
        }
        d += 1;
    }
    roots.sort_unstable();
    roots
}

/// Scale a list of polynomials to coprime integer coefficients with the last
/// polynomial's leading coefficient positive.
pub(crate) fn make_primitive(coeffs: &mut [Poly]) {
    let all: Vec<Rational> = coeffs
        .iter()
        .flat_map(|c| c.coeffs().iter().cloned())
        .collect();
    if all.is_empty() {
        return;
    }
    let mut content = Poly::from_coeffs(all).content().abs();
    if coeffs.last().is_some_and(|c| c.lc().is_negative()) {
        content = -content;
    }
    let inv = content.recip();
    for c in coeffs.iter_mut() {
        *c = c.scale(&inv);
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

    fn same_up_to_scalar(a: &[Poly], b: &[Poly]) -> bool {
        if a.len() != b.len() {
            return false;
        }
        let (i, lead) = a.iter().enumerate().find(|(_, c)| !c.is_zero()).unwrap();
        let ratio = b[i].lc() / lead.lc();
        a.iter().zip(b).all(|(x, y)| &x.scale(&ratio) == y)
    }

    #[test]
    fn geometric_de_and_re() {
        let f = RatFun::new(p(&[1]), p(&[1, -1])).unwrap();
        let de = de_from_ratfun(&f).unwrap();
        assert!(same_up_to_scalar(de.coeffs(), &[p(&[-1]), p(&[1, -1])]));
        assert!(de.apply(&f).is_zero());
        let re = re_from_de(&de);
        // (n+1) a(n+1) - (n+1) a(n) = 0 with the common factor removed
        assert!(same_up_to_scalar(re.coeffs(), &[p(&[-1]), p(&[1])]));
        assert_eq!(re.valid_from(), 0);
    }

    #[test]
    fn constant_function() {
        let de = de_from_ratfun(&RatFun::constant(int(1))).unwrap();
        assert_eq!(de.coeffs(), &[Poly::zero(), p(&[1])]);
        // (n+1) a(n+1) = 0 normalises to a(n) = 0 from n = 1 on.
        let re = re_from_de(&de);
        assert_eq!(re.order(), 0);
        assert_eq!(re.coeffs(), &[p(&[1])]);
        assert_eq!(re.valid_from(), 1);
        assert_eq!(
            re.unroll(&[int(1)], 4),
            vec![int(1), int(0), int(0), int(0)]
        );
    }

    #[test]
    fn fibonacci_de_and_re() {
        let f = RatFun::new(p(&[0, 1]), p(&[1, -1, -1])).unwrap();
        let de = de_from_ratfun(&f).unwrap();
        // x(1-x-x^2) f' - (1+x^2) f = 0, checked by substitution
        assert!(same_up_to_scalar(
            de.coeffs(),
            &[p(&[-1, 0, -1]), p(&[0, 1, -1, -1])]
        ));
        assert!(de.apply(&f).is_zero());
        // (n-1)a(n) - (n-1)a(n-1) - (n-1)a(n-2) = 0, shifted and stripped of n+1
        let re = re_from_de(&de);
        assert!(same_up_to_scalar(
            re.coeffs(),
            &[p(&[-1]), p(&[-1]), p(&[1])]
        ));
        assert_eq!(re.valid_from(), 0);
        let fib = re.unroll(&[int(0), int(1)], 10);
        assert_eq!(fib, f.series_coeffs(10).unwrap());
    }

    #[test]
    fn rewrite_before_content_removal() {
        // x f' - 2 f (f = x^2) gives (n - 2) a(n) = 0; content n - 2 has root 2.
        let de = HolonomicDE::new(vec![p(&[-2]), p(&[0, 1])]).unwrap();
        let re = re_from_de(&de);
        assert_eq!(re.coeffs(), &[p(&[1])]);
        assert_eq!(re.valid_from(), 3);
    }

    #[test]
    fn integer_root_search() {
        assert_eq!(
            integer_roots(&Poly::from_roots(&[int(3), int(-2), rat(1, 2)])),
            vec![-2, 3]
        );
        assert_eq!(integer_roots(&p(&[0, 0, 1])), vec![0]);
        assert!(integer_roots(&p(&[1, 0, 1])).is_empty());
    }

    fn arb_ratfun() -> impl Strategy<Value = RatFun> {
        (
            prop::collection::vec((-4i64..5, 1i64..3), 1..6),
            prop::collection::vec((-4i64..5, 1i64..3), 0..6),
        )
            .prop_filter_map("degenerate", |(n, d)| {
                let num = Poly::from_coeffs(n.into_iter().map(|(a, b)| rat(a, b)).collect());
                let mut dc = vec![int(1)];
                dc.extend(d.into_iter().map(|(a, b)| rat(a, b)));
                RatFun::new(num, Poly::from_coeffs(dc))
                    .ok()
                    .filter(|f| !f.is_zero())
            })
    }

    proptest! {
        #[test]
        fn recurrence_reproduces_series(f in arb_ratfun()) {
            let re = re_from_de(&de_from_ratfun(&f).unwrap());
            let oracle = f.series_coeffs(50).unwrap();
            let head = (re.valid_from() as usize + re.order()).min(50);
            prop_assert_eq!(re.unroll(&oracle[..head], 50), oracle);
        }

        #[test]
        fn order_and_trivial_content(f in arb_ratfun()) {
            let re = re_from_de(&de_from_ratfun(&f).unwrap());
            let g = re.coeffs().iter().fold(Poly::zero(), |acc, c| if acc.is_zero() { c.monic() } else { acc.gcd(c).unwrap() });
            prop_assert_eq!(g, Poly::one());
            prop_assert!(!re.coeffs()[0].is_zero() && !re.coeffs().last().unwrap().is_zero());
        }
    }
}
