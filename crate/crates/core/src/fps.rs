//! Closed-form power series representations built from m-fold bases.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::hyper::{self, HyperTerm, SearchParams};
use crate::linalg;
use crate::ratfun::RatFun;
use crate::rational::Rational;

/// Extra rows beyond the unknowns that every fit must also satisfy.
pub const DEFAULT_GUARD: usize = 5;
/// Largest section index tried as the start of a fit, unless a polynomial
/// part forces a later one.
pub const DEFAULT_MAX_START: usize = 8;
/// Default number of verified coefficients.
pub const DEFAULT_DEPTH: usize = 200;

/// One residue class `k ≡ residue (mod m)`: `a(m n + residue) = Σ w·h(n)`
/// for `n >= start`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResiduePart {
    pub residue: usize,
    pub start: usize,
    pub terms: Vec<(Rational, HyperTerm)>,
}

impl ResiduePart {
    /// `Σ w·h(n)` for `n` in `0..count`; undefined terms count as zero.
    pub fn formula_values(&self, count: usize) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); count];
        for (w, h) in &self.terms {
            for (slot, v) in out.iter_mut().zip(h.values(0, count)) {
                if let Some(v) = v {
                    *slot += w * v;
                }
            }
        }
        out
    }
}

/// `a(index)` equals the formula value plus `delta`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Correction {
    pub index: usize,
    pub delta: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesRepresentation {
    m: usize,
    parts: Vec<ResiduePart>,
    corrections: Vec<Correction>,
}

impl SeriesRepresentation {
    /// Checks the structural invariants: one part per residue in order,
    /// nonzero weights, and sorted nonzero corrections inside the prefix
    /// covered by the part starts.
    pub fn new(m: usize, parts: Vec<ResiduePart>, corrections: Vec<Correction>) -> Result<Self> {
        let bad = |msg: &str| Err(Error::InvalidRepresentation(msg.to_string()));
        if m == 0 {
            return bad("m must be positive");
        }
        if parts.len() != m || parts.iter().enumerate().any(|(j, p)| p.residue != j) {
            return bad("expected one part per residue, in order");
        }
        if parts
            .iter()
            .flat_map(|p| &p.terms)
            .any(|(w, _)| w.is_zero())
        {
            return bad("weights must be nonzero");
        }
        let limit = m * parts.iter().map(|p| p.start).max().unwrap_or(0) + m;
        for (i, c) in corrections.iter().enumerate() {
            if c.delta.is_zero() {
                return bad("correction deltas must be nonzero");
            }
            if c.index >= limit {
                return bad("correction index beyond the covered prefix");
            }
            if i > 0 && corrections[i - 1].index >= c.index {
                return bad("corrections must be sorted by index without repeats");
            }
        }
        Ok(SeriesRepresentation {
            m,
            parts,
            corrections,
        })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn parts(&self) -> &[ResiduePart] {
        &self.parts
    }

    pub fn corrections(&self) -> &[Correction] {
        &self.corrections
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationReport {
    pub checked_terms: usize,
    pub all_match: bool,
    pub first_mismatch: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FpsOptions {
    /// `None` picks [`hyper::default_m_max`].
    pub m_max: Option<usize>,
    pub depth: usize,
    pub degree_cap: usize,
    pub guard: usize,
    pub max_start: usize,
}

impl Default for FpsOptions {
    fn default() -> Self {
        FpsOptions {
            m_max: None,
            depth: DEFAULT_DEPTH,
            degree_cap: hyper::DEFAULT_DEGREE_CAP,
            guard: DEFAULT_GUARD,
            max_start: DEFAULT_MAX_START,
        }
    }
}

/// Weights and start index of a successful section fit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SectionFit {
    pub start: usize,
    pub weights: Vec<Rational>,
}

/// Exact weights with `values[n] = Σ w_i·basis_i(n)` for every `n >= n0`
/// in range. Free variables are set to zero. Needs at least one row more
/// than there are basis terms.
pub fn fit_combination(
    values: &[Rational],
    basis: &[HyperTerm],
    n0: usize,
) -> Result<Vec<Rational>> {
    let rows = values.len().saturating_sub(n0);
    if basis.is_empty() {
        return if values.iter().skip(n0).all(Zero::is_zero) {
            Ok(Vec::new())
        } else {
            Err(Error::NoFit)
        };
    }
    if rows <= basis.len() {
        return Err(Error::NoFit);
    }
    let columns: Vec<Vec<Rational>> = basis
        .iter()
        .map(|h| {
            h.values(n0, rows)
                .into_iter()
                .map(|v| v.unwrap_or_else(Rational::zero))
                .collect()
        })
        .collect();
    let matrix: Vec<Vec<Rational>> = (0..rows)
        .map(|r| columns.iter().map(|c| c[r].clone()).collect())
        .collect();
    linalg::solve(&matrix, &values[n0..]).ok_or(Error::NoFit)
}

/// First start index in `0..=max_start` at which the section fits.
pub fn fit_section(
    values: &[Rational],
    basis: &[HyperTerm],
    max_start: usize,
) -> Option<SectionFit> {
    (0..=max_start).find_map(|n0| {
        fit_combination(values, basis, n0)
            .ok()
            .map(|weights| SectionFit { start: n0, weights })
    })
}

/// Representation of `f` with the default options and the given bounds.
pub fn build_representation(
    f: &RatFun,
    m_max: Option<usize>,
    depth: usize,
) -> Result<SeriesRepresentation> {
    build_representation_with(
        f,
        &FpsOptions {
            m_max,
            depth,
            ..FpsOptions::default()
        },
    )
}

pub fn build_representation_with(f: &RatFun, opts: &FpsOptions) -> Result<SeriesRepresentation> {
    if !f.is_analytic_at_zero() {
        return Err(Error::NonAnalytic);
    }
    let m_max = match opts.m_max {
        Some(m) => m.max(1),
        None => hyper::default_m_max(f)?,
    };
    let params = SearchParams {
        m_max,
        degree_cap: opts.degree_cap,
        guard: opts.guard,
        max_start: opts.max_start,
        depth: opts.depth,
    };
    let (basis, fits) = hyper::search(f, &params)?;
    let m = basis.m;
    let mut parts = Vec::with_capacity(m);
    for (j, (terms, fit)) in basis.per_residue.into_iter().zip(fits).enumerate() {
        let mut terms: Vec<(Rational, HyperTerm)> = fit
            .weights
            .into_iter()
            .zip(terms)
            .filter(|(w, _)| !w.is_zero())
            .collect();
        terms.sort_by(|a, b| a.1.display_cmp(&b.1));
        parts.push(ResiduePart {
            residue: j,
            start: fit.start,
            terms,
        });
    }
    let prefix = m * parts.iter().map(|p| p.start).max().unwrap_or(0) + m;
    let oracle = f.series_coeffs(prefix)?;
    let mut corrections = Vec::new();
    let formulas: Vec<Vec<Rational>> = parts.iter().map(|p| p.formula_values(p.start)).collect();
    for (k, actual) in oracle.iter().enumerate() {
        let (n, j) = (k / m, k % m);
        if n >= parts[j].start {
            continue;
        }
        let delta = actual - &formulas[j][n];
        if !delta.is_zero() {
            corrections.push(Correction { index: k, delta });
        }
    }
    SeriesRepresentation::new(m, parts, corrections)
}

/// First `count` coefficients described by the representation.
pub fn eval_representation(rep: &SeriesRepresentation, count: usize) -> Vec<Rational> {
    let m = rep.m;
    let per_residue: Vec<Vec<Rational>> = rep
        .parts
        .iter()
        .map(|p| p.formula_values(count.saturating_sub(p.residue).div_ceil(m)))
        .collect();
    let mut out: Vec<Rational> = (0..count)
        .map(|k| per_residue[k % m][k / m].clone())
        .collect();
    for c in &rep.corrections {
        if c.index < count {
            out[c.index] += &c.delta;
        }
    }
    out
}

/// Compare the representation with the series of `f` on `count` terms.
pub fn verify(rep: &SeriesRepresentation, f: &RatFun, count: usize) -> Result<VerificationReport> {
    let oracle = f.series_coeffs(count)?;
    let got = eval_representation(rep, count);
    let first_mismatch = oracle.iter().zip(&got).position(|(a, b)| a != b);
    Ok(VerificationReport {
        checked_terms: count,
        all_match: first_mismatch.is_none(),
        first_mismatch,
    })
}
