//! Hypergeometric term solutions of recurrences and m-fold section search.
//!
//! A rational generating function is split into its `m` sections
//! `g_j(y) = Σ a(mn+j) y^n`; each section gets a recurrence through the
//! holonomic module, and the recurrence is solved for hypergeometric terms
//! with the Hyper enumeration restricted to the rationals. The smallest `m`
//! whose sections are all spanned by such terms wins.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::factor::{poly_factor, Factorization};
use crate::fps::{self, SectionFit};
use crate::holonomic::{de_from_ratfun, re_from_de, HolonomicRE};
use crate::linalg;
use crate::poly::Poly;
use crate::ratfun::RatFun;
use crate::rational::{int, is_nonpositive_integer, pow_i64, Rational};
use crate::resultant::poly_resultant;

/// Default cap on the degree of polynomial solutions.
pub const DEFAULT_DEGREE_CAP: usize = 50;

/// Largest section count tried when looking for the order of a root class.
const ROOT_ORDER_LIMIT: usize = 64;

/// `h(n) = base^n · poly(n) · ∏ (α)_n^e`, with `(α)_n` the rising factorial.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HyperTerm {
    base: Rational,
    poly: Poly,
    pochhammer: Vec<(Rational, i64)>,
}

impl HyperTerm {
    pub fn new(base: Rational, poly: Poly, pochhammer: Vec<(Rational, i64)>) -> Result<Self> {
        if base.is_zero() {
            return Err(Error::InvalidRepresentation(
                "hypergeometric base must be nonzero".into(),
            ));
        }
        if poly.is_zero() {
            return Err(Error::InvalidRepresentation(
                "polynomial part must be nonzero".into(),
            ));
        }
        let mut merged: BTreeMap<Rational, i64> = BTreeMap::new();
        for (a, e) in pochhammer {
            *merged.entry(a).or_insert(0) += e;
        }
        let pochhammer = merged.into_iter().filter(|(_, e)| *e != 0).collect();
        Ok(HyperTerm {
            base,
            poly,
            pochhammer,
        })
    }

    /// `base^n · n^k`.
    pub fn power(base: Rational, k: usize) -> Self {
        HyperTerm::new(base, Poly::monomial(int(1), k), Vec::new()).expect("nonzero base")
    }

    pub fn base(&self) -> &Rational {
        &self.base
    }

    pub fn poly(&self) -> &Poly {
        &self.poly
    }

    pub fn pochhammer(&self) -> &[(Rational, i64)] {
        &self.pochhammer
    }

    pub fn is_pochhammer_free(&self) -> bool {
        self.pochhammer.is_empty()
    }

    /// Value at `n`, `None` where a Pochhammer factor in the denominator vanishes.
    pub fn eval(&self, n: usize) -> Option<Rational> {
        self.values(n, 1).pop().flatten()
    }

    /// Values at `start, start+1, ..., start+count-1`.
    pub fn values(&self, start: usize, count: usize) -> Vec<Option<Rational>> {
        let mut out = Vec::with_capacity(count);
        let mut z_pow = pow_i64(&self.base, start as i64);
        // Running numerator/denominator of ∏ (α)_n^e.
        let mut num = Rational::one();
        let mut den = Rational::one();
        for k in 0..start {
            step_pochhammer(&self.pochhammer, k, &mut num, &mut den);
        }
        for n in start..start + count {
            if den.is_zero() {
                out.push(None);
            } else {
                out.push(Some(&z_pow * self.poly.eval_i64(n as i64) * &num / &den));
            }
            step_pochhammer(&self.pochhammer, n, &mut num, &mut den);
            z_pow *= &self.base;
        }
        out
    }

    fn class_key(&self) -> ClassKey {
        (self.base.clone(), self.pochhammer.clone())
    }

    /// Ordering used for output: Pochhammer-free first, then base, then degree.
    pub fn display_cmp(&self, other: &HyperTerm) -> Ordering {
        (!self.is_pochhammer_free())
            .cmp(&!other.is_pochhammer_free())
            .then_with(|| self.base.cmp(&other.base))
            .then_with(|| self.pochhammer.cmp(&other.pochhammer))
            .then_with(|| self.poly.degree().cmp(&other.poly.degree()))
            .then_with(|| self.poly.coeffs().cmp(other.poly.coeffs()))
    }
}

/// Multiply the running product by `(α + k)^e` for each factor.
fn step_pochhammer(factors: &[(Rational, i64)], k: usize, num: &mut Rational, den: &mut Rational) {
    for (a, e) in factors {
        let v = a + int(k as i64);
        let p = num_traits::pow(v, e.unsigned_abs() as usize);
        if *e > 0 {
            *num *= p;
        } else {
            *den *= p;
        }
    }
}

/// The ratio `h(n+1) / h(n)` as a rational function of `n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub ratio: RatFun,
}

pub fn certificate_of(h: &HyperTerm) -> Certificate {
    let mut ratio = RatFun::constant(h.base.clone())
        .mul(&RatFun::new(h.poly.shift(1), h.poly.clone()).expect("nonzero poly"));
    for (a, e) in &h.pochhammer {
        let lin = RatFun::from(Poly::from_coeffs(vec![a.clone(), int(1)]));
        let factor = if *e > 0 {
            lin.pow(*e as usize)
        } else {
            RatFun::constant(int(1))
                .div(&lin.pow(e.unsigned_abs() as usize))
                .expect("nonzero linear factor")
        };
        ratio = ratio.mul(&factor);
    }
    Certificate { ratio }
}

/// Monic polynomial whose roots are the `m`-th powers of the roots of `q`,
/// with multiplicity: `Res_z(q(z), u - z^m)` made monic.
pub fn power_transform(q: &Poly, m: usize) -> Result<Poly> {
    assert!(m >= 1, "section count must be positive");
    if q.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if q.degree() == 0 {
        return Ok(Poly::one());
    }
    let mut b = vec![Poly::zero(); m + 1];
    b[0] = Poly::x();
    b[m] = Poly::constant(int(-1));
    Ok(poly_resultant(q, &b)?.monic())
}

/// The `m` sections `g_j(y) = Σ_n a(mn+j) y^n` of `f`.
pub fn multisection(f: &RatFun, m: usize) -> Result<Vec<RatFun>> {
    assert!(m >= 1, "section count must be positive");
    if !f.is_analytic_at_zero() {
        return Err(Error::NonAnalytic);
    }
    if m == 1 {
        return Ok(vec![f.clone()]);
    }
    let d = power_transform(f.den(), m)?;
    let cofactor = d.inflate(m).div_exact(f.den());
    let num = f.num() * &cofactor;
    let mut parts = vec![Vec::new(); m];
    for (i, c) in num.coeffs().iter().enumerate() {
        let (k, j) = i.div_rem(&m);
        let part = &mut parts[j];
        if part.len() <= k {
            part.resize(k + 1, Rational::zero());
        }
        part[k] = c.clone();
    }
    parts
        .into_iter()
        .map(|c| RatFun::new(Poly::from_coeffs(c), d.clone()))
        .collect()
}

/// Basis of the polynomial solutions of `Σ c_i(n) p(n+i) = 0` of degree at
/// most `min(degree_cap, bound)`; the bound comes from the indicial equation
/// of the operator rewritten in forward differences.
pub fn poly_solutions(re: &HolonomicRE, degree_cap: usize) -> Vec<Poly> {
    let Some(bound) = degree_bound(re.coeffs()) else {
        return Vec::new();
    };
    let bound = bound.min(degree_cap);
    // Column k holds the image of n^k.
    let images: Vec<Poly> = (0..=bound)
        .map(|k| {
            re.coeffs()
                .iter()
                .enumerate()
                .fold(Poly::zero(), |acc, (i, c)| {
                    &acc + &(c * &Poly::monomial(int(1), k).shift(i as i64))
                })
        })
        .collect();
    let rows = images.iter().map(|p| p.deg() + 1).max().unwrap_or(0);
    let matrix: Vec<Vec<Rational>> = (0..rows)
        .map(|r| images.iter().map(|p| p.coeff(r)).collect())
        .collect();
    let kernel = linalg::nullspace(&matrix, bound + 1);
    canonical_span(kernel.into_iter().map(Poly::from_coeffs).collect())
}

/// Largest possible degree of a polynomial solution, or `None` if there is none.
fn degree_bound(coeffs: &[Poly]) -> Option<usize> {
    // Σ c_i E^i = Σ_k r_k Δ^k with r_k = Σ_i C(i, k) c_i.
    let d = coeffs.len() - 1;
    let mut r = vec![Poly::zero(); d + 1];
    for (i, c) in coeffs.iter().enumerate() {
        let mut binom = Rational::one();
        for (k, rk) in r.iter_mut().enumerate().take(i + 1) {
            *rk = &*rk + &c.scale(&binom);
            binom = binom * int((i - k) as i64) / int(k as i64 + 1);
        }
    }
    let b = r
        .iter()
        .enumerate()
        .filter(|(_, p)| !p.is_zero())
        .map(|(k, p)| p.degree() - k as isize)
        .max()?;
    // Top coefficient of c(n) of degree D: Σ_{k: deg r_k - k = b} lc(r_k) D(D-1)…(D-k+1)
    let mut indicial = Poly::zero();
    for (k, p) in r.iter().enumerate() {
        if p.is_zero() || p.degree() - k as isize != b {
            continue;
        }
        let mut falling = Poly::one();
        for j in 0..k {
            falling = &falling * &Poly::from_coeffs(vec![int(-(j as i64)), int(1)]);
        }
        indicial = &indicial + &falling.scale(&p.lc());
    }
    nonnegative_integer_roots(&indicial).into_iter().max()
}

fn nonnegative_integer_roots(p: &Poly) -> Vec<usize> {
    crate::holonomic::integer_roots(p)
        .into_iter()
        .filter(|&r| r >= 0)
        .map(|r| r as usize)
        .collect()
}

/// Reduced echelon basis of the span, pivoting on the highest degree, so a
/// full span up to degree `D` comes back as `1, n, ..., n^D`.
fn canonical_span(polys: Vec<Poly>) -> Vec<Poly> {
    let width = polys.iter().map(|p| p.deg() + 1).max().unwrap_or(0);
    let mut rows: Vec<Vec<Rational>> = polys
        .iter()
        .filter(|p| !p.is_zero())
        .map(|p| (0..width).rev().map(|i| p.coeff(i)).collect())
        .collect();
    linalg::rref(&mut rows, width);
    let mut out: Vec<Poly> = rows
        .into_iter()
        .map(|row| Poly::from_coeffs(row.into_iter().rev().collect()))
        .filter(|p| !p.is_zero())
        .collect();
    out.sort_by_key(Poly::degree);
    out
}

/// Hypergeometric solutions over the rationals with the default degree cap.
pub fn hyper_solutions(re: &HolonomicRE) -> Result<Vec<HyperTerm>> {
    hyper_solutions_capped(re, DEFAULT_DEGREE_CAP)
}

/// Hyper enumeration: for monic `a | c_0(n)` and `b | c_d(n-d+1)` built
/// from rational linear factors, and nonzero rational `z` from the leading
/// coefficient equation, polynomial solutions `c` of the auxiliary recurrence
/// give terms with ratio `z · a(n)/b(n) · c(n+1)/c(n)`.
///
/// Terms whose Pochhammer factors start at a nonpositive integer are dropped:
/// they vanish or are undefined from some index on.
pub fn hyper_solutions_capped(re: &HolonomicRE, degree_cap: usize) -> Result<Vec<HyperTerm>> {
    let d = re.order();
    if d == 0 {
        return Ok(Vec::new());
    }
    let coeffs = re.coeffs();
    let trailing = poly_factor(&coeffs[0])?;
    let leading = poly_factor(&coeffs[d].shift(1 - d as i64))?;
    let a_divisors = linear_divisors(&trailing);
    let b_divisors = linear_divisors(&leading);

    let mut found: Vec<HyperTerm> = Vec::new();
    for a_roots in &a_divisors {
        for b_roots in &b_divisors {
            if shares_shifted_root(a_roots, b_roots) {
                continue;
            }
            let a = Poly::from_roots(a_roots);
            let b = Poly::from_roots(b_roots);
            let p: Vec<Poly> = (0..=d)
                .map(|i| {
                    let mut acc = coeffs[i].clone();
                    for j in 0..i {
                        acc = &acc * &a.shift(j as i64);
                    }
                    for j in i..d {
                        acc = &acc * &b.shift(j as i64);
                    }
                    acc
                })
                .collect();
            let top = p.iter().map(|q| q.degree()).max().unwrap_or(-1);
            if top < 0 {
                continue;
            }
            let z_poly = Poly::from_coeffs(
                p.iter()
                    .map(|q| {
                        if q.degree() == top {
                            q.lc()
                        } else {
                            Rational::zero()
                        }
                    })
                    .collect(),
            );
            if z_poly.degree() < 1 {
                continue;
            }
            let mut pochhammer: Vec<(Rational, i64)> = Vec::new();
            pochhammer.extend(a_roots.iter().map(|r| (-r, 1)));
            pochhammer.extend(b_roots.iter().map(|r| (-r, -1)));
            if pochhammer
                .iter()
                .any(|(alpha, _)| is_nonpositive_integer(alpha))
            {
                continue;
            }
            for (z, _) in poly_factor(&z_poly)?.rational_roots() {
                if z.is_zero() {
                    continue;
                }
                let aux: Vec<Poly> = p
                    .iter()
                    .enumerate()
                    .map(|(i, q)| q.scale(&pow_i64(&z, i as i64)))
                    .collect();
                let aux = HolonomicRE::new(aux, 0)?;
                for c in poly_solutions(&aux, degree_cap) {
                    let term = HyperTerm::new(z.clone(), c, pochhammer.clone())?;
                    found.push(term);
                }
            }
        }
    }
    Ok(canonical_terms(found))
}

/// Base and Pochhammer factors; terms of one class differ only in their polynomial.
pub(crate) type ClassKey = (Rational, Vec<(Rational, i64)>);

/// Merge terms by class (base and Pochhammer factors) and replace each class
/// by the echelon basis of its polynomial parts. Equal certificates collapse.
fn canonical_terms(terms: Vec<HyperTerm>) -> Vec<HyperTerm> {
    let mut classes: BTreeMap<ClassKey, Vec<Poly>> = BTreeMap::new();
    for t in terms {
        classes.entry(t.class_key()).or_default().push(t.poly);
    }
    let mut out: Vec<HyperTerm> = classes
        .into_iter()
        .flat_map(|((base, poch), polys)| {
            canonical_span(polys).into_iter().map(move |u| HyperTerm {
                base: base.clone(),
                poly: u,
                pochhammer: poch.clone(),
            })
        })
        .collect();
    out.sort_by(|a, b| a.display_cmp(b));
    out
}

/// Spread each class over plain monomials: `z^n n^k (poch)` for every `k` up
/// to the largest degree found in that class.
fn monomial_basis(terms: &[HyperTerm]) -> Vec<HyperTerm> {
    let mut top: BTreeMap<(Rational, Vec<(Rational, i64)>), usize> = BTreeMap::new();
    for t in terms {
        let d = top.entry(t.class_key()).or_default();
        *d = (*d).max(t.poly.deg());
    }
    let mut out: Vec<HyperTerm> = top
        .into_iter()
        .flat_map(|((base, poch), d)| {
            (0..=d).map(move |k| HyperTerm {
                base: base.clone(),
                poly: Poly::monomial(int(1), k),
                pochhammer: poch.clone(),
            })
        })
        .collect();
    out.sort_by(|a, b| a.display_cmp(b));
    out
}

/// All monic divisors made of rational linear factors, as root multisets.
fn linear_divisors(f: &Factorization) -> Vec<Vec<Rational>> {
    let mut out: Vec<Vec<Rational>> = vec![Vec::new()];
    for (root, mult) in f.rational_roots() {
        let mut next = Vec::with_capacity(out.len() * (mult + 1));
        for base in &out {
            for e in 0..=mult {
                let mut v = base.clone();
                v.extend(std::iter::repeat_n(root.clone(), e));
                next.push(v);
            }
        }
        out = next;
    }
    out
}

/// `gcd(a(n), b(n+h)) != 1` for some integer `h >= 0`.
fn shares_shifted_root(a_roots: &[Rational], b_roots: &[Rational]) -> bool {
    a_roots.iter().any(|ra| {
        b_roots.iter().any(|rb| {
            let h = rb - ra;
            h.is_integer() && h >= Rational::zero()
        })
    })
}

/// Per-residue hypergeometric bases for the chosen number of sections.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MFoldBasis {
    pub m: usize,
    pub per_residue: Vec<Vec<HyperTerm>>,
    pub section_gfs: Vec<RatFun>,
}

/// Search knobs shared with the orchestration layer.
#[derive(Clone, Copy, Debug)]
pub(crate) struct SearchParams {
    pub m_max: usize,
    pub degree_cap: usize,
    pub guard: usize,
    pub max_start: usize,
    /// Number of leading sequence terms every section fit must reproduce.
    pub depth: usize,
}

/// Smallest `m <= m_max` whose sections are all spanned by hypergeometric
/// terms over the rationals.
pub fn mfold_search(f: &RatFun, m_max: usize) -> Result<MFoldBasis> {
    let params = SearchParams {
        m_max: m_max.max(1),
        degree_cap: DEFAULT_DEGREE_CAP,
        guard: fps::DEFAULT_GUARD,
        max_start: fps::DEFAULT_MAX_START,
        depth: 0,
    };
    search(f, &params).map(|(basis, _)| basis)
}

pub(crate) fn search(f: &RatFun, params: &SearchParams) -> Result<(MFoldBasis, Vec<SectionFit>)> {
    if !f.is_analytic_at_zero() {
        return Err(Error::NonAnalytic);
    }
    'm: for m in 1..=params.m_max.max(1) {
        let sections = multisection(f, m)?;
        // A section pole whose minimal polynomial is not linear forces an
        // irrational base, which no rational hypergeometric term can produce.
        for g in &sections {
            if !g.is_zero() && !splits_over_rationals(g.den())? {
                continue 'm;
            }
        }
        let mut per_residue = Vec::with_capacity(m);
        let mut fits = Vec::with_capacity(m);
        for (j, g) in sections.iter().enumerate() {
            let basis = if g.is_zero() {
                Vec::new()
            } else {
                monomial_basis(&hyper_solutions_capped(
                    &re_from_de(&de_from_ratfun(g)?),
                    params.degree_cap,
                )?)
            };
            let poly_part_len = (g.num().degree() - g.den().degree() + 1).max(0) as usize;
            let max_start = params.max_start.max(poly_part_len);
            let needed = params.depth.saturating_sub(j).div_ceil(m) + 1;
            let rows = needed.max(basis.len() + max_start + params.guard + 1);
            let values = g.series_coeffs(rows)?;
            let Some(fit) = fps::fit_section(&values, &basis, max_start) else {
                continue 'm;
            };
            per_residue.push(basis);
            fits.push(fit);
        }
        return Ok((
            MFoldBasis {
                m,
                per_residue,
                section_gfs: sections,
            },
            fits,
        ));
    }
    Err(Error::NoHypergeometricBasis {
        m_max: params.m_max.max(1),
    })
}

fn splits_over_rationals(p: &Poly) -> Result<bool> {
    if p.degree() < 1 {
        return Ok(true);
    }
    Ok(poly_factor(p)?.factors.iter().all(|(g, _)| g.degree() == 1))
}

/// Default section bound: the larger of `deg den` and the smallest `m` that
/// makes every pole's `m`-th power rational (when such an `m` exists).
pub fn default_m_max(f: &RatFun) -> Result<usize> {
    let deg = f.den().deg().max(1);
    if f.den().degree() < 1 {
        return Ok(deg);
    }
    let mut lcm = 1usize;
    for (g, _) in poly_factor(f.den())?.factors {
        match root_power_order(&g)? {
            Some(order) => lcm = lcm.lcm(&order),
            None => return Ok(deg),
        }
    }
    Ok(deg.max(lcm))
}

/// Smallest `m` with `β^m` rational for the roots `β` of the irreducible `g`.
fn root_power_order(g: &Poly) -> Result<Option<usize>> {
    let k = g.deg();
    if k == 1 {
        return Ok(Some(1));
    }
    if g.coeff(0).is_zero() {
        return Ok(None);
    }
    // β^m = c for every root exactly when x^m ≡ c (mod g).
    let x = Poly::x();
    let mut power = x.clone();
    for m in 2..=ROOT_ORDER_LIMIT {
        power = (&power * &x).rem(g)?;
        if power.is_constant() {
            return Ok(Some(m));
        }
    }
    Ok(None)
}
