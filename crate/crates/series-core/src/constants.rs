//! Standard q-series constants and Bernoulli numbers.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Result, SeriesError};
use crate::poly::Ring;
use crate::qseries::{QExp, QSeries};
use crate::scalar::{int, Rational};

/// σ_k(n) = Σ_{d | n} d^k.
pub fn sigma(k: u32, n: u64) -> BigInt {
    let mut s = BigInt::zero();
    for d in 1..=n {
        if n % d == 0 {
            s += BigInt::from(d).pow(k);
        }
    }
    s
}

/// Eisenstein series E₂, E₄, E₆ in the normalization with constant term 1.
pub fn eisenstein(k: u32, q_cap: u32) -> Result<QSeries<Rational>> {
    let (factor, power) = match k {
        2 => (-24, 1),
        4 => (240, 3),
        6 => (-504, 5),
        _ => return Err(SeriesError::Domain(format!("Eisenstein series E_{k} is not supported (k must be 2, 4 or 6)"))),
    };
    let ring = Ring::scalar();
    let cap = QExp::int(q_cap as i32);
    let coeffs = std::iter::once((QExp::ZERO, int(1)))
        .chain((1..=q_cap as u64).map(|n| (QExp::int(n as i32), Rational::from_integer(sigma(power, n) * factor))));
    Ok(QSeries::from_constants(&ring, cap, coeffs))
}

/// G₂ = −1/24 + Σ σ₁(n) qⁿ = −E₂/24, the weight-2 quasimodular series of the
/// Jacobi-form literature.
pub fn g2(q_cap: u32) -> QSeries<Rational> {
    eisenstein(2, q_cap).expect("E2").scale(&crate::scalar::rat(-1, 24))
}

/// The Euler product c = ∏_{j≥1}(1 − qʲ).
pub fn euler_product(q_cap: u32) -> QSeries<Rational> {
    let ring = Ring::scalar();
    let cap = QExp::int(q_cap as i32);
    let mut c = QSeries::one(&ring, cap);
    for j in 1..=q_cap as i32 {
        let factor = QSeries::from_constants(&ring, cap, [(QExp::ZERO, int(1)), (QExp::int(j), int(-1))]);
        c = c.mul(&factor);
    }
    c
}

/// ηᵐ = q^{m/24} cᵐ for any integer m (truncated at `q_cap`).
pub fn eta_power(m: i64, q_cap: u32) -> QSeries<Rational> {
    euler_product(q_cap).pow(m).expect("c is invertible").shift(QExp(m as i32))
}

/// Bernoulli numbers B₀..B_n with B₁ = −1/2.
pub fn bernoulli_numbers(n: usize) -> Vec<Rational> {
    let mut b: Vec<Rational> = Vec::with_capacity(n + 1);
    for m in 0..=n {
        if m == 0 {
            b.push(Rational::one());
            continue;
        }
        // Σ_{k=0}^{m} C(m+1, k) B_k = 0
        let mut acc = Rational::zero();
        let mut binom = BigInt::one();
        for (k, bk) in b.iter().enumerate() {
            acc += bk * Rational::from_integer(binom.clone());
            binom = binom * BigInt::from(m + 1 - k) / BigInt::from(k + 1);
        }
        b.push(-acc / Rational::from_integer(BigInt::from(m + 1)));
    }
    b
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    #[test]
    fn bernoulli_small() {
        let b = bernoulli_numbers(8);
        assert_eq!(b[1], rat(-1, 2));
        assert_eq!(b[2], rat(1, 6));
        assert_eq!(b[3], int(0));
        assert_eq!(b[4], rat(-1, 30));
        assert_eq!(b[6], rat(1, 42));
        assert_eq!(b[8], rat(-1, 30));
    }

    #[test]
    fn unsupported_weight() {
        assert!(eisenstein(8, 3).is_err());
    }
}
