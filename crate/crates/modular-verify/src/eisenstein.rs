//! The E₄/E₆ monomial basis and form-valued decomposition.

use std::sync::Arc;

use num_traits::{One, Zero};
use series_core::{eisenstein, GradedPoly, QExp, QSeries, Rational, Ring};

use crate::error::{Result, VerifyError};

/// E₄ᵃE₆ᵇ with its exponents.
#[derive(Clone, Debug)]
pub struct BasisElement {
    pub a: u32,
    pub b: u32,
    pub series: QSeries<Rational>,
}

impl BasisElement {
    pub fn label(&self) -> String {
        let mut parts = Vec::new();
        if self.a > 0 {
            parts.push(if self.a == 1 { "E4".to_string() } else { format!("E4^{}", self.a) });
        }
        if self.b > 0 {
            parts.push(if self.b == 1 { "E6".to_string() } else { format!("E6^{}", self.b) });
        }
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }
}

/// All monomials E₄ᵃE₆ᵇ with 4a + 6b = weight, largest a first.
/// Odd, negative or unreachable weights give the empty list.
pub fn eisenstein_basis(weight: i64, q_cap: u32) -> Vec<BasisElement> {
    if weight < 0 || weight % 2 != 0 {
        return Vec::new();
    }
    let w = weight as u32;
    let e4 = eisenstein(4, q_cap).expect("E4");
    let e6 = eisenstein(6, q_cap).expect("E6");
    let mut out = Vec::new();
    for a in (0..=w / 4).rev() {
        let rest = w - 4 * a;
        if rest % 6 != 0 {
            continue;
        }
        let b = rest / 6;
        let series = e4.pow(a as i64).unwrap().mul(&e6.pow(b as i64).unwrap());
        out.push(BasisElement { a, b, series });
    }
    out
}

/// Result of writing a series as Σ cᵢ·basisᵢ + residual.
#[derive(Clone, Debug)]
pub struct Decomposition {
    pub basis: Vec<BasisElement>,
    pub coefficients: Vec<GradedPoly>,
    pub residual: QSeries,
}

impl Decomposition {
    pub fn is_modular(&self) -> bool {
        self.residual.is_zero()
    }
}

fn invert(mut m: Vec<Vec<Rational>>) -> Option<Vec<Vec<Rational>>> {
    let n = m.len();
    let mut inv: Vec<Vec<Rational>> = (0..n).map(|i| (0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }).collect()).collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, pivot);
        inv.swap(col, pivot);
        let p = m[col][col].clone();
        for j in 0..n {
            m[col][j] /= &p;
            inv[col][j] /= &p;
        }
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for j in 0..n {
                    let (a, b) = (m[col][j].clone(), inv[col][j].clone());
                    m[r][j] -= &f * a;
                    inv[r][j] -= &f * b;
                }
            }
        }
    }
    Some(inv)
}

/// Solve for form-valued coefficients from the first dim-many q-powers and
/// measure the residual over every retained integer q-power.
pub fn decompose(series: &QSeries, weight: i64) -> Result<Decomposition> {
    if let Some(e) = series.non_integer_exponent() {
        return Err(VerifyError::Domain(format!("non-integral exponent q^{e} in a series to decompose")));
    }
    let cap = series.q_cap().whole().max(0) as u32;
    let basis = eisenstein_basis(weight, cap);
    let ring: &Arc<Ring> = series.ring();
    let n = basis.len();
    if n > cap as usize + 1 {
        return Err(VerifyError::Domain(format!("q cap {cap} too small for a {n}-dimensional basis")));
    }
    let m: Vec<Vec<Rational>> =
        (0..n).map(|i| basis.iter().map(|b| b.series.rational_coeff(QExp::int(i as i32))).collect()).collect();
    let inv = invert(m).ok_or_else(|| VerifyError::Domain("singular Eisenstein matrix".into()))?;
    let coefficients: Vec<GradedPoly> = (0..n)
        .map(|j| {
            let mut c = GradedPoly::zero(ring);
            for (i, row) in inv[j].iter().enumerate() {
                c.add_scaled(&series.coeff(QExp::int(i as i32)), row);
            }
            c
        })
        .collect();
    let mut residual = series.clone();
    for (b, c) in basis.iter().zip(&coefficients) {
        residual = residual.sub(&b.series.embed(ring)?.mul_poly(c));
    }
    Ok(Decomposition { basis, coefficients, residual })
}
