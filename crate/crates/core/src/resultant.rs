//! Resultants via fraction-free (Bareiss) elimination of the Sylvester matrix.

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::rational::Rational;

/// `Res_z(a, b)` where `a` has rational coefficients in `z` and `b` is given
/// by its coefficients in `z` (low to high), each a polynomial in `u`.
///
/// The result is a polynomial in `u`. Requires `a != 0` and `deg_z b >= 1`.
pub fn poly_resultant(a: &Poly, b: &[Poly]) -> Result<Poly> {
    let b_deg = b.iter().rposition(|c| !c.is_zero());
    let Some(n) = b_deg else {
        return Err(Error::DegenerateResultant);
    };
    if a.is_zero() || n == 0 {
        return Err(Error::DegenerateResultant);
    }
    let a_coeffs: Vec<Poly> = a.coeffs().iter().cloned().map(Poly::constant).collect();
    Ok(sylvester_det(&a_coeffs, &b[..=n]))
}

/// Resultant of two polynomials with rational coefficients.
pub fn resultant(a: &Poly, b: &Poly) -> Result<Rational> {
    if a.is_zero() || b.is_zero() {
        return Err(Error::DegenerateResultant);
    }
    if a.degree() == 0 && b.degree() == 0 {
        return Ok(Rational::from_integer(1.into()));
    }
    let lift = |p: &Poly| -> Vec<Poly> { p.coeffs().iter().cloned().map(Poly::constant).collect() };
    Ok(sylvester_det(&lift(a), &lift(b)).coeff(0))
}

/// Sylvester matrix of `a` (degree m) and `b` (degree n), rows ordered so
/// that the determinant equals the resultant.
pub fn sylvester_matrix(a: &[Poly], b: &[Poly]) -> Vec<Vec<Poly>> {
    let m = a.len() - 1;
    let n = b.len() - 1;
    let size = m + n;
    let mut rows = Vec::with_capacity(size);
    for i in 0..n {
        let mut row = vec![Poly::zero(); size];
        for (j, c) in a.iter().rev().enumerate() {
            row[i + j] = c.clone();
        }
        rows.push(row);
    }
    for i in 0..m {
        let mut row = vec![Poly::zero(); size];
        for (j, c) in b.iter().rev().enumerate() {
            row[i + j] = c.clone();
        }
        rows.push(row);
    }
    rows
}

fn sylvester_det(a: &[Poly], b: &[Poly]) -> Poly {
    let mut m = sylvester_matrix(a, b);
    bareiss_det(&mut m)
}

/// Determinant of a square matrix over Q[u]; every intermediate division is exact.
pub fn bareiss_det(m: &mut [Vec<Poly>]) -> Poly {
    let n = m.len();
    if n == 0 {
        return Poly::one();
    }
    let mut negate = false;
    let mut prev = Poly::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(swap) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                return Poly::zero();
            };
            m.swap(k, swap);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&m[i][j] * &m[k][k]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = num.div_exact(&prev);
            }
            m[i][k] = Poly::zero();
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if negate {
        -det
    } else {
        det
    }
}
