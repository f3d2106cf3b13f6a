//! Rational generating-function guessing (Padé-type).

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg;
use crate::poly::Poly;
use crate::ratfun::RatFun;
use crate::rational::Rational;

/// Leading terms `a_0, a_1, ...` of a sequence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SequencePrefix {
    terms: Vec<Rational>,
}

impl SequencePrefix {
    pub fn new(terms: Vec<Rational>) -> Result<Self> {
        if terms.is_empty() {
            return Err(Error::parse(1, 1, "empty sequence"));
        }
        Ok(SequencePrefix { terms })
    }

    pub fn terms(&self) -> &[Rational] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GuessOptions {
    pub max_num_degree: usize,
    pub max_den_degree: usize,
    /// Terms held back from the fit and only used for confirmation.
    pub guard_terms: usize,
}

impl GuessOptions {
    /// Budget of `⌊(N-1)/2⌋` for both degrees given `N` terms.
    pub fn for_length(n: usize) -> Self {
        let d = n.saturating_sub(1) / 2;
        GuessOptions {
            max_num_degree: d,
            max_den_degree: d,
            guard_terms: 0,
        }
    }
}

/// Find the rational function of least total degree whose expansion matches
/// every supplied term.
///
/// Candidates are tried by total degree `t = dn + dd` from 0 upward, and for
/// equal `t` with the smaller denominator degree first. A candidate `(dn, dd)`
/// is only admissible when `dn + dd + 1 + guard <= N`.
pub fn guess_rational(prefix: &SequencePrefix, opts: &GuessOptions) -> Result<RatFun> {
    let s = prefix.terms();
    let n = s.len();
    if n < 2 {
        return Err(Error::NoGuess);
    }
    for t in 0..=opts.max_num_degree + opts.max_den_degree {
        for dd in 0..=t.min(opts.max_den_degree) {
            let dn = t - dd;
            if dn > opts.max_num_degree || dn + dd + 1 + opts.guard_terms > n {
                continue;
            }
            if let Some(f) = try_degrees(s, dn, dd) {
                return Ok(f);
            }
        }
    }
    Err(Error::NoGuess)
}

/// Solve `q * S ≡ p (mod x^N)` with `q(0) = 1`, `deg p <= dn`, `deg q <= dd`.
fn try_degrees(s: &[Rational], dn: usize, dd: usize) -> Option<RatFun> {
    let n = s.len();
    let term = |k: isize| -> Rational {
        if k < 0 {
            Rational::zero()
        } else {
            s[k as usize].clone()
        }
    };
    // Rows k = dn+1 .. N-1:  Σ_{i=1..dd} q_i S_{k-i} = -S_k
    let rows: Vec<Vec<Rational>> = (dn + 1..n)
        .map(|k| (1..=dd).map(|i| term(k as isize - i as isize)).collect())
        .collect();
    let rhs: Vec<Rational> = (dn + 1..n).map(|k| -term(k as isize)).collect();
    let q_tail = if dd == 0 {
        if rhs.iter().any(|v| !v.is_zero()) {
            return None;
        }
        Vec::new()
    } else if rows.is_empty() {
        vec![Rational::zero(); dd]
    } else {
        linalg::solve(&rows, &rhs)?
    };
    let mut q = vec![Rational::one()];
    q.extend(q_tail);
    let p: Vec<Rational> = (0..=dn)
        .map(|k| {
            (0..=dd.min(k))
                .map(|i| &q[i] * term(k as isize - i as isize))
                .sum()
        })
        .collect();
    RatFun::new(Poly::from_coeffs(p), Poly::from_coeffs(q)).ok()
}
