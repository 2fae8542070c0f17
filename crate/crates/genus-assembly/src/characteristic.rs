//! Multiplicative characteristic series over formal roots.

use std::sync::Arc;

use series_core::{bernoulli_numbers, int, GradedPoly, Mono, Rational, Ring};

fn factorial(n: u32) -> Rational {
    (1..=n as i64).fold(int(1), |a, k| a * int(k))
}

/// Univariate series Σ cₙ vⁿ in variable `var`, truncated by the ring caps.
fn univariate(ring: &Arc<Ring>, var: usize, coeffs: impl Fn(u32) -> Rational) -> GradedPoly {
    let cap = ring.degree_cap();
    let terms = (0..=cap).filter_map(|n| {
        let mut m = Mono::one();
        m.set(var, n as u8);
        ring.within_caps(&m).then(|| (m, coeffs(n)))
    });
    GradedPoly::from_terms(ring, terms.collect::<Vec<_>>())
}

fn product_over(ring: &Arc<Ring>, roots: &[usize], f: impl Fn(usize) -> GradedPoly) -> GradedPoly {
    roots.iter().fold(GradedPoly::one(ring), |acc, &i| &acc * &f(i))
}

/// Coefficients of (x/2)/sinh(x/2).
pub fn ahat_coeffs(n: u32) -> Vec<Rational> {
    let b = bernoulli_numbers(n as usize);
    (0..=n)
        .map(|k| {
            if k % 2 == 1 {
                return int(0);
            }
            // B_k(1/2) = (2^{1−k} − 1) B_k
            let two = Rational::new(2.into(), 1.into());
            let scale = num_pow(&two, 1 - k as i32) - int(1);
            scale * &b[k as usize] / factorial(k)
        })
        .collect()
}

fn num_pow(r: &Rational, e: i32) -> Rational {
    let p = (0..e.unsigned_abs()).fold(int(1), |a, _| a * r);
    if e < 0 {
        int(1) / p
    } else {
        p
    }
}

/// Â = ∏ (xᵢ/2)/sinh(xᵢ/2), one factor per ± pair.
pub fn ahat(ring: &Arc<Ring>, roots: &[usize]) -> GradedPoly {
    let c = ahat_coeffs(ring.degree_cap());
    product_over(ring, roots, |i| univariate(ring, i, |n| c[n as usize].clone()))
}

/// Td = ∏ xᵢ/(1 − e^{−xᵢ}).
pub fn todd(ring: &Arc<Ring>, roots: &[usize]) -> GradedPoly {
    let b = bernoulli_numbers(ring.degree_cap() as usize);
    product_over(ring, roots, |i| {
        univariate(ring, i, |n| {
            let s = if n % 2 == 1 { int(-1) } else { int(1) };
            s * &b[n as usize] / factorial(n)
        })
    })
}

/// chΔ = ∏ (e^{xᵢ/2} + e^{−xᵢ/2}).
pub fn ch_delta(ring: &Arc<Ring>, roots: &[usize]) -> GradedPoly {
    product_over(ring, roots, |i| {
        univariate(ring, i, |n| if n % 2 == 1 { int(0) } else { int(2) / (num_pow(&int(2), n as i32) * factorial(n)) })
    })
}
