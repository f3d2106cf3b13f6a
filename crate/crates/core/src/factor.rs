//! Complete factorization over the rationals.
//!
//! Squarefree decomposition (Yun) over Q, then for each squarefree part the
//! classical Zassenhaus route: factor modulo a small prime with
//! Cantor–Zassenhaus, Hensel-lift to a modulus above the Mignotte bound and
//! recombine lifted factors by trial division over the integers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::rational::Rational;

/// Largest degree [`poly_factor`] accepts.
pub const DEFAULT_DEGREE_CAP: usize = 64;

/// `unit * ∏ factor^multiplicity`, every factor monic and irreducible over Q.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pub unit: Rational,
    pub factors: Vec<(Poly, usize)>,
}

impl Factorization {
    /// Multiply the factorization back out.
    pub fn expand(&self) -> Poly {
        self.factors
            .iter()
            .fold(Poly::constant(self.unit.clone()), |acc, (f, e)| {
                &acc * &f.pow(*e)
            })
    }

    /// Rational roots with multiplicity, taken from the linear factors.
    pub fn rational_roots(&self) -> Vec<(Rational, usize)> {
        self.factors
            .iter()
            .filter(|(f, _)| f.degree() == 1)
            .map(|(f, e)| (-f.coeff(0), *e))
            .collect()
    }
}

/// Factor `p` completely over the rationals, with the default degree cap.
pub fn poly_factor(p: &Poly) -> Result<Factorization> {
    poly_factor_capped(p, DEFAULT_DEGREE_CAP)
}

pub fn poly_factor_capped(p: &Poly, cap: usize) -> Result<Factorization> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if p.deg() > cap {
        return Err(Error::DegreeCap {
            degree: p.deg(),
            cap,
        });
    }
    let unit = p.lc();
    let mut factors = Vec::new();
    for (part, mult) in squarefree_decomposition(&p.monic()) {
        for f in factor_squarefree(&part) {
            factors.push((f, mult));
        }
    }
    factors.sort_by(|(a, ea), (b, eb)| {
        a.degree()
            .cmp(&b.degree())
            .then_with(|| a.coeffs().cmp(b.coeffs()))
            .then(ea.cmp(eb))
    });
    Ok(Factorization { unit, factors })
}

/// Yun's algorithm on a monic polynomial: pairs `(g_i, i)` with
/// `p = ∏ g_i^i`, each `g_i` squarefree, monic and of positive degree.
pub fn squarefree_decomposition(p: &Poly) -> Vec<(Poly, usize)> {
    let mut out = Vec::new();
    if p.degree() < 1 {
        return out;
    }
    let dp = p.derivative();
    let b = p.gcd(&dp).expect("nonzero");
    let mut c = p.div_exact(&b);
    let mut d = &dp.div_exact(&b) - &c.derivative();
    let mut i = 1;
    while c.degree() > 0 {
        let a = c.gcd(&d).expect("c is nonzero");
        if a.degree() > 0 {
            out.push((a.clone(), i));
        }
        c = c.div_exact(&a);
        d = &d.div_exact(&a) - &c.derivative();
        i += 1;
    }
    out
}

/// Irreducible monic factors of a squarefree polynomial of positive degree.
fn factor_squarefree(g: &Poly) -> Vec<Poly> {
    if g.degree() <= 1 {
        return vec![g.monic()];
    }
    let mut out = Vec::new();
    let mut g = g.monic();
    // Strip the factor x so the integer work sees a nonzero constant term.
    if g.coeff(0).is_zero() {
        out.push(Poly::x());
        g = g.div_exact(&Poly::x());
    }
    if g.degree() == 1 {
        out.push(g);
    } else if g.degree() > 1 {
        let f = g.primitive().to_integer_coeffs();
        for h in zassenhaus(&f) {
            out.push(Poly::from_integer_coeffs(&h).monic());
        }
    }
    out
}

// ---- integer-side Zassenhaus ----

const PRIMES: &[u64] = &[
    3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97,
    101, 103, 107, 109, 113, 127, 131, 137, 139, 149, 151, 157, 163, 167, 173, 179, 181, 191, 193,
    197, 199, 211, 223, 227, 229, 233, 239, 241, 251, 257, 263, 269, 271, 277, 281, 283, 293, 307,
    311, 313, 317, 331, 337, 347, 349, 353, 359, 367, 373, 379, 383, 389, 397, 401, 409, 419, 421,
    431, 433, 439, 443, 449, 457, 461, 463, 467, 479, 487, 491, 499, 503, 509, 521, 523, 541, 547,
    557, 563, 569, 571, 577, 587, 593, 599, 601, 607, 613, 617, 619, 631, 641, 643, 647, 653, 659,
    661, 673, 677, 683, 691, 701, 709, 719, 727, 733, 739, 743, 751, 757, 761, 769, 773, 787, 797,
    809, 811, 821, 823, 827, 829, 839, 853, 857, 859, 863, 877, 881, 883, 887, 907, 911, 919, 929,
    937, 941, 947, 953, 967, 971, 977, 983, 991, 997,
];

/// Number of admissible primes compared before settling on the one giving the
/// fewest modular factors.
const PRIME_TRIALS: usize = 5;

/// Factor a primitive squarefree integer polynomial of degree >= 2 with
/// nonzero constant term. Returns primitive integer factors.
fn zassenhaus(f: &[BigInt]) -> Vec<Vec<BigInt>> {
    let lc = f.last().unwrap().clone();
    let mut best: Option<(u64, Vec<ModPoly>)> = None;
    let mut tried = 0;
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_f00d);
    for &p in PRIMES {
        if (&lc % BigInt::from(p)).is_zero() {
            continue;
        }
        let fp = ModPoly::from_big(f, p).monic();
        if fp.degree() != f.len() as isize - 1 {
            continue;
        }
        if ModPoly::gcd(&fp, &fp.derivative()).degree() != 0 {
            continue;
        }
        let factors = factor_mod_p(&fp, &mut rng);
        if factors.len() == 1 {
            return vec![f.to_vec()];
        }
        if best.as_ref().is_none_or(|(_, b)| factors.len() < b.len()) {
            best = Some((p, factors));
        }
        tried += 1;
        if tried >= PRIME_TRIALS {
            break;
        }
    }
    let (p, modular) = best.expect("no admissible prime below 1000");

    // p^k > 2 * |lc| * 2^deg * ||f||_1 bounds every coefficient of lc * (factor).
    let norm1: BigInt = f.iter().map(|c| c.abs()).sum();
    let bound = BigInt::from(2) * lc.abs() * (BigInt::one() << (f.len() - 1)) * norm1;
    let pb = BigInt::from(p);
    let mut modulus = pb.clone();
    let mut k = 1;
    while modulus <= bound {
        modulus *= &pb;
        k += 1;
    }
    let lifted = hensel_lift_all(f, &modular, p, k);
    recombine(f, lifted, &modulus)
}

/// Lift `f ≡ lc * ∏ u_i (mod p)` to monic factors modulo `p^k`.
fn hensel_lift_all(f: &[BigInt], factors: &[ModPoly], p: u64, k: u32) -> Vec<Vec<BigInt>> {
    let mut out = Vec::with_capacity(factors.len());
    let mut target = f.to_vec();
    for i in 0..factors.len() - 1 {
        let g = &factors[i];
        let h = factors[i + 1..]
            .iter()
            .fold(ModPoly::one(p), |acc, u| ModPoly::mul(&acc, u));
        let (g_lift, h_lift) = hensel_pair(&target, g, &h, p, k);
        out.push(g_lift);
        target = h_lift;
    }
    out.push(target);
    out
}

/// Linear Hensel lifting of `f ≡ lc(f) * g * h (mod p)`, `g` and `h` monic and
/// coprime mod p. Returns monic lifts modulo `p^k`.
fn hensel_pair(
    f: &[BigInt],
    g: &ModPoly,
    h: &ModPoly,
    p: u64,
    k: u32,
) -> (Vec<BigInt>, Vec<BigInt>) {
    let pb = BigInt::from(p);
    let lc = f.last().unwrap().clone();
    let lc_inv = mod_inv(lc.mod_floor(&pb).to_u64().unwrap(), p);
    let (one, s, t) = ModPoly::xgcd(g, h);
    debug_assert_eq!(one.degree(), 0);

    let mut gz = g.to_big();
    let mut hz = h.to_big();
    let mut q = pb.clone();
    for _ in 1..k {
        let prod = int_poly_mul(&int_poly_scale(&gz, &lc), &hz);
        let e: Vec<BigInt> = (0..f.len().max(prod.len()))
            .map(|i| {
                let a = f.get(i).cloned().unwrap_or_default();
                let b = prod.get(i).cloned().unwrap_or_default();
                let d = a - b;
                debug_assert!((&d % &q).is_zero());
                d / &q
            })
            .collect();
        let e = ModPoly::from_big(&e, p).scale(lc_inv);
        let te = ModPoly::mul(&t, &e);
        let (quot, dg) = ModPoly::divrem(&te, g);
        let dh = ModPoly::add(&ModPoly::mul(&s, &e), &ModPoly::mul(&quot, h));
        gz = int_poly_add(&gz, &int_poly_scale(&dg.to_big(), &q));
        hz = int_poly_add(&hz, &int_poly_scale(&dh.to_big(), &q));
        q *= &pb;
    }
    (symmetric(&gz, &q), symmetric(&hz, &q))
}

/// Try subsets of lifted factors of growing size; each subset whose
/// reconstruction divides `f` over the integers is a true factor.
fn recombine(f: &[BigInt], lifted: Vec<Vec<BigInt>>, modulus: &BigInt) -> Vec<Vec<BigInt>> {
    let mut remaining: Vec<Vec<BigInt>> = lifted;
    let mut f = Poly::from_integer_coeffs(f);
    let mut found = Vec::new();
    let mut size = 1;
    while 2 * size <= remaining.len() {
        let mut progressed = false;
        let n = remaining.len();
        let mut combo: Vec<usize> = (0..size).collect();
        loop {
            let lc = f.lc().to_integer();
            let mut g = vec![lc.clone()];
            for &i in &combo {
                g = int_poly_mul(&g, &remaining[i]);
                g = g.iter().map(|c| c.mod_floor(modulus)).collect();
            }
            let g = Poly::from_integer_coeffs(&symmetric(&g, modulus)).primitive();
            if let Ok((quot, rem)) = f.divrem(&g) {
                if rem.is_zero() && quot.coeffs().iter().all(|c| c.is_integer()) {
                    found.push(g.to_integer_coeffs());
                    f = quot.primitive();
                    for &i in combo.iter().rev() {
                        remaining.remove(i);
                    }
                    progressed = true;
                    break;
                }
            }
            if !next_combination(&mut combo, n) {
                break;
            }
        }
        if !progressed {
            size += 1;
        }
    }
    if f.degree() > 0 {
        found.push(f.to_integer_coeffs());
    }
    found
}

fn next_combination(combo: &mut [usize], n: usize) -> bool {
    let k = combo.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if combo[i] < n - k + i {
            combo[i] += 1;
            for j in i + 1..k {
                combo[j] = combo[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

fn symmetric(coeffs: &[BigInt], modulus: &BigInt) -> Vec<BigInt> {
    let half = modulus / 2;
    coeffs
        .iter()
        .map(|c| {
            let r = c.mod_floor(modulus);
            if r > half {
                r - modulus
            } else {
                r
            }
        })
        .collect()
}

fn int_poly_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn int_poly_add(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    (0..a.len().max(b.len()))
        .map(|i| a.get(i).cloned().unwrap_or_default() + b.get(i).cloned().unwrap_or_default())
        .collect()
}

fn int_poly_scale(a: &[BigInt], c: &BigInt) -> Vec<BigInt> {
    a.iter().map(|x| x * c).collect()
}

// ---- polynomials over GF(p), p < 2^32 ----

fn mod_pow(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

fn mod_inv(a: u64, p: u64) -> u64 {
    assert!(!a.is_multiple_of(p), "inverse of zero mod p");
    mod_pow(a, p - 2, p)
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct ModPoly {
    c: Vec<u64>,
    p: u64,
}

impl ModPoly {
    fn new(mut c: Vec<u64>, p: u64) -> Self {
        while c.last() == Some(&0) {
            c.pop();
        }
        ModPoly { c, p }
    }

    fn one(p: u64) -> Self {
        ModPoly::new(vec![1], p)
    }

    fn from_big(f: &[BigInt], p: u64) -> Self {
        let pb = BigInt::from(p);
        ModPoly::new(
            f.iter()
                .map(|c| c.mod_floor(&pb).to_u64().unwrap())
                .collect(),
            p,
        )
    }

    fn to_big(&self) -> Vec<BigInt> {
        self.c.iter().map(|&c| BigInt::from(c)).collect()
    }

    fn degree(&self) -> isize {
        self.c.len() as isize - 1
    }

    fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    fn lc(&self) -> u64 {
        *self.c.last().unwrap_or(&0)
    }

    fn scale(&self, s: u64) -> Self {
        ModPoly::new(self.c.iter().map(|&a| a * s % self.p).collect(), self.p)
    }

    fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(mod_inv(self.lc(), self.p))
    }

    fn derivative(&self) -> Self {
        let p = self.p;
        ModPoly::new(
            self.c
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &a)| (i as u64 % p) * a % p)
                .collect(),
            p,
        )
    }

    fn add(a: &Self, b: &Self) -> Self {
        let p = a.p;
        let n = a.c.len().max(b.c.len());
        ModPoly::new(
            (0..n)
                .map(|i| (a.c.get(i).unwrap_or(&0) + b.c.get(i).unwrap_or(&0)) % p)
                .collect(),
            p,
        )
    }

    fn sub(a: &Self, b: &Self) -> Self {
        let p = a.p;
        let n = a.c.len().max(b.c.len());
        ModPoly::new(
            (0..n)
                .map(|i| (a.c.get(i).unwrap_or(&0) + p - b.c.get(i).unwrap_or(&0)) % p)
                .collect(),
            p,
        )
    }

    fn mul(a: &Self, b: &Self) -> Self {
        let p = a.p;
        if a.is_zero() || b.is_zero() {
            return ModPoly::new(Vec::new(), p);
        }
        let mut out = vec![0u64; a.c.len() + b.c.len() - 1];
        for (i, &x) in a.c.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.c.iter().enumerate() {
                out[i + j] = (out[i + j] + x * y) % p;
            }
        }
        ModPoly::new(out, p)
    }

    fn divrem(a: &Self, b: &Self) -> (Self, Self) {
        let p = a.p;
        assert!(!b.is_zero(), "mod-p division by zero");
        if a.degree() < b.degree() {
            return (ModPoly::new(Vec::new(), p), a.clone());
        }
        let db = b.c.len() - 1;
        let inv = mod_inv(b.lc(), p);
        let mut rem = a.c.clone();
        let mut quot = vec![0u64; a.c.len() - db];
        for i in (0..quot.len()).rev() {
            let c = rem[i + db] * inv % p;
            if c == 0 {
                continue;
            }
            for (j, &bj) in b.c.iter().enumerate() {
                rem[i + j] = (rem[i + j] + p - c * bj % p) % p;
            }
            quot[i] = c;
        }
        rem.truncate(db);
        (ModPoly::new(quot, p), ModPoly::new(rem, p))
    }

    fn rem(a: &Self, b: &Self) -> Self {
        ModPoly::divrem(a, b).1
    }

    fn gcd(a: &Self, b: &Self) -> Self {
        let (mut a, mut b) = (a.clone(), b.clone());
        while !b.is_zero() {
            let r = ModPoly::rem(&a, &b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `(g, s, t)` with `s*a + t*b = g`, `g` monic.
    fn xgcd(a: &Self, b: &Self) -> (Self, Self, Self) {
        let p = a.p;
        let (mut r0, mut r1) = (a.clone(), b.clone());
        let (mut s0, mut s1) = (ModPoly::one(p), ModPoly::new(Vec::new(), p));
        let (mut t0, mut t1) = (ModPoly::new(Vec::new(), p), ModPoly::one(p));
        while !r1.is_zero() {
            let (q, r) = ModPoly::divrem(&r0, &r1);
            let s = ModPoly::sub(&s0, &ModPoly::mul(&q, &s1));
            let t = ModPoly::sub(&t0, &ModPoly::mul(&q, &t1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
            t0 = std::mem::replace(&mut t1, t);
        }
        let inv = mod_inv(r0.lc(), p);
        (r0.scale(inv), s0.scale(inv), t0.scale(inv))
    }

    fn pow_mod(base: &Self, mut e: u64, m: &Self) -> Self {
        let mut result = ModPoly::one(base.p);
        let mut b = ModPoly::rem(base, m);
        while e > 0 {
            if e & 1 == 1 {
                result = ModPoly::rem(&ModPoly::mul(&result, &b), m);
            }
            e >>= 1;
            if e > 0 {
                b = ModPoly::rem(&ModPoly::mul(&b, &b), m);
            }
        }
        result
    }
}

/// Monic irreducible factors of a monic squarefree polynomial over GF(p), p odd.
fn factor_mod_p(f: &ModPoly, rng: &mut ChaCha8Rng) -> Vec<ModPoly> {
    let mut out = Vec::new();
    for (g, d) in distinct_degree(f) {
        equal_degree(&g, d, rng, &mut out);
    }
    out.sort_by(|a, b| a.degree().cmp(&b.degree()).then_with(|| a.c.cmp(&b.c)));
    out
}

fn distinct_degree(f: &ModPoly) -> Vec<(ModPoly, usize)> {
    let p = f.p;
    let x = ModPoly::new(vec![0, 1], p);
    let mut out = Vec::new();
    let mut rest = f.clone();
    let mut h = x.clone();
    let mut d = 1;
    while rest.degree() >= 2 * d as isize {
        h = ModPoly::pow_mod(&h, p, &rest);
        let g = ModPoly::gcd(&ModPoly::sub(&h, &x), &rest);
        if g.degree() > 0 {
            rest = ModPoly::divrem(&rest, &g).0;
            h = ModPoly::rem(&h, &rest);
            out.push((g, d));
        }
        d += 1;
    }
    if rest.degree() > 0 {
        let deg = rest.degree() as usize;
        out.push((rest, deg));
    }
    out
}

fn equal_degree(g: &ModPoly, d: usize, rng: &mut ChaCha8Rng, out: &mut Vec<ModPoly>) {
    let p = g.p;
    let n = g.degree() as usize;
    if n == d {
        out.push(g.clone());
        return;
    }
    loop {
        let a = ModPoly::new((0..n).map(|_| rng.gen_range(0..p)).collect(), p);
        if a.degree() < 1 {
            continue;
        }
        // a^((p^d - 1)/2) = (a * a^p * ... * a^(p^(d-1)))^((p-1)/2)
        let mut frob = ModPoly::rem(&a, g);
        let mut norm = frob.clone();
        for _ in 1..d {
            frob = ModPoly::pow_mod(&frob, p, g);
            norm = ModPoly::rem(&ModPoly::mul(&norm, &frob), g);
        }
        let b = ModPoly::pow_mod(&norm, (p - 1) / 2, g);
        let b = ModPoly::sub(&b, &ModPoly::one(p));
        let c = ModPoly::gcd(&b, g);
        if c.degree() > 0 && c.degree() < g.degree() {
            let other = ModPoly::divrem(g, &c).0;
            equal_degree(&c, d, rng, out);
            equal_degree(&other, d, rng, out);
            return;
        }
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

    /// Irreducibility check for degree <= 3: no rational root.
    fn has_rational_root(f: &Poly) -> bool {
        let g = f.primitive().to_integer_coeffs();
        let a0 = g[0].abs();
        let an = g.last().unwrap().abs();
        if a0.is_zero() {
            return true;
        }
        let divisors = |n: &BigInt| -> Vec<BigInt> {
            let n = n.to_i64().unwrap();
            (1..=n).filter(|d| n % d == 0).map(BigInt::from).collect()
        };
        for num in divisors(&a0) {
            for den in divisors(&an) {
                for sign in [1, -1] {
                    let r = Rational::new(&num * sign, den.clone());
                    if f.eval(&r).is_zero() {
                        return true;
                    }
                }
            }
        }
        false
    }

    #[test]
    fn difference_of_squares() {
        let fac = poly_factor(&p(&[-1, 0, 1])).unwrap();
        assert_eq!(fac.unit, int(1));
        assert_eq!(fac.factors, vec![(p(&[-1, 1]), 1), (p(&[1, 1]), 1)]);
    }

    #[test]
    fn fourth_power_of_x4_minus_1() {
        // x^16 - 4x^12 + 6x^8 - 4x^4 + 1 = (x^4 - 1)^4
        let f = p(&[1, 0, 0, 0, -4, 0, 0, 0, 6, 0, 0, 0, -4, 0, 0, 0, 1]);
        assert_eq!(f, p(&[-1, 0, 0, 0, 1]).pow(4));
        let fac = poly_factor(&f).unwrap();
        assert_eq!(
            fac.factors,
            vec![(p(&[-1, 1]), 4), (p(&[1, 1]), 4), (p(&[1, 0, 1]), 4)]
        );
        assert_eq!(fac.expand(), f);
    }

    #[test]
    fn irreducible_quadratic() {
        let fac = poly_factor(&p(&[1, 0, 1])).unwrap();
        assert_eq!(fac.factors, vec![(p(&[1, 0, 1]), 1)]);
    }

    #[test]
    fn zero_and_cap() {
        assert_eq!(poly_factor(&Poly::zero()), Err(Error::ZeroPolynomial));
        let big = Poly::monomial(int(1), 70);
        assert_eq!(
            poly_factor(&big),
            Err(Error::DegreeCap {
                degree: 70,
                cap: 64
            })
        );
    }

    #[test]
    fn constants_and_content() {
        let fac = poly_factor(&p(&[-6])).unwrap();
        assert_eq!(fac.unit, int(-6));
        assert!(fac.factors.is_empty());
        let f = Poly::from_coeffs(vec![rat(-3, 2), int(0), rat(3, 4)]);
        let fac = poly_factor(&f).unwrap();
        assert_eq!(fac.unit, rat(3, 4));
        assert_eq!(fac.expand(), f);
    }

    #[test]
    fn swinnerton_dyer_like_recombination() {
        // x^4 - 10x^2 + 1 is irreducible over Q but splits modulo every prime.
        let f = p(&[1, 0, -10, 0, 1]);
        let fac = poly_factor(&f).unwrap();
        assert_eq!(fac.factors, vec![(f.clone(), 1)]);
    }

    #[test]
    fn cyclotomic_products() {
        let f = p(&[-1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1]); // x^12 - 1
        let fac = poly_factor(&f).unwrap();
        assert_eq!(fac.factors.len(), 6);
        assert_eq!(fac.expand(), f);
    }

    #[test]
    fn factors_with_x_and_rational_roots() {
        let f = &Poly::from_roots(&[rat(1, 2), rat(-2, 3), int(0), int(0)]) * &p(&[2, 0, 1]);
        let fac = poly_factor(&f).unwrap();
        assert_eq!(fac.expand(), f);
        let roots = fac.rational_roots();
        assert!(roots.contains(&(int(0), 2)));
        assert!(roots.contains(&(rat(1, 2), 1)));
        assert!(roots.contains(&(rat(-2, 3), 1)));
    }

    fn arb_factor_list() -> impl Strategy<Value = Vec<Poly>> {
        prop::collection::vec(prop::collection::vec(-6i64..7, 2..4), 1..5).prop_map(|v| {
            v.into_iter()
                .map(|c| Poly::from_i64s(&c))
                .filter(|f| f.degree() >= 1)
                .collect()
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn factorization_is_complete(fs in arb_factor_list(), k in 1i64..4) {
            let f = fs.iter().fold(Poly::constant(int(k)), |acc, g| &acc * g);
            let fac = poly_factor(&f).unwrap();
            prop_assert_eq!(fac.expand(), f);
            for (g, e) in &fac.factors {
                prop_assert!(*e >= 1);
                prop_assert!(g.is_monic() && g.degree() >= 1);
                if g.degree() >= 2 {
                    prop_assert!(!has_rational_root(g));
                }
            }
        }
    }
}
