//! Kernel behaviour: worked examples for every operation and randomized
//! ring-axiom / truncation properties.
//!
//! The Eisenstein and Euler-product checks use oracles written here from
//! scratch (trial-division divisor sums, the pentagonal number theorem).

use std::sync::Arc;

use proptest::prelude::*;
use series_core::*;

fn ring(n: usize, cap: u32) -> Arc<Ring> {
    let vars = (1..=n).map(|i| Var::root(format!("x{i}"), "T")).collect();
    Ring::new(vars, cap, 0).unwrap()
}

fn x(r: &Arc<Ring>, i: usize) -> GradedPoly {
    GradedPoly::var(r, i)
}

fn c(r: &Arc<Ring>, n: i64) -> GradedPoly {
    GradedPoly::constant(r, int(n))
}

// ---------------------------------------------------------------- examples

#[test]
fn difference_of_squares() {
    let r = ring(1, 4);
    let a = &c(&r, 1) + &x(&r, 0);
    let b = &c(&r, 1) - &x(&r, 0);
    assert_eq!(&a * &b, &c(&r, 1) - &(&x(&r, 0) * &x(&r, 0)));
}

#[test]
fn products_above_cap_vanish() {
    let r = ring(2, 2);
    let a = &x(&r, 0) + &x(&r, 1);
    let b = &x(&r, 0) * &x(&r, 1);
    assert!((&a * &b).is_zero());
}

#[test]
fn scalar_coefficients_square() {
    let r = ring(1, 4);
    let iota = Scalar::monomial(int(1), Unit::new(1, true));
    let one = GradedPoly::<Scalar>::one(&r);
    let xs = GradedPoly::<Scalar>::var(&r, 0);
    let a = &one + &xs.scale_coeff(&iota);
    let expected = &(&one + &xs.scale_coeff(&iota.scale(&int(2)))) - &(&xs * &xs).scale_coeff(&Scalar::pi_pow(2));
    assert_eq!(&a * &a, expected);
}

#[test]
fn mismatched_universes_error() {
    let a = x(&ring(1, 3), 0);
    let b = x(&ring(2, 3), 0);
    assert!(matches!(a.try_mul(&b), Err(SeriesError::Config(_))));
}

#[test]
fn exp_examples() {
    let r = ring(2, 3);
    assert_eq!(GradedPoly::<Rational>::zero(&r).exp().unwrap(), c(&r, 1));
    let e = x(&r, 0).exp().unwrap();
    let x1 = x(&r, 0);
    let expected = GradedPoly::from_terms(
        &r,
        [(Mono::one(), int(1)), (Mono::var(0), int(1)), (Mono::from_exps(&[2]), rat(1, 2)), (Mono::from_exps(&[3]), rat(1, 6))],
    );
    assert_eq!(e, expected);
    assert_eq!((&x1 + &x(&r, 1)).exp().unwrap(), &e * &x(&r, 1).exp().unwrap());
    assert!(matches!(c(&r, 1).exp(), Err(SeriesError::Domain(_))));
}

#[test]
fn invert_examples() {
    let r = ring(1, 3);
    let geo = (&c(&r, 1) - &x(&r, 0)).invert().unwrap();
    let expected = GradedPoly::from_terms(&r, (0..=3).map(|k| (Mono::from_exps(&[k]), int(1))));
    assert_eq!(geo, expected);
    assert_eq!(c(&r, 2).invert().unwrap(), GradedPoly::constant(&r, rat(1, 2)));
    let e = x(&r, 0).exp().unwrap();
    assert_eq!(e.invert().unwrap(), x(&r, 0).neg().exp().unwrap());
    assert!(x(&r, 0).invert().is_err());
}

#[test]
fn fractional_exponent_products() {
    let r = Ring::scalar();
    let cap = QExp::int(2);
    let half = QSeries::from_constants(&r, cap, [(QExp::HALF, int(1))]);
    assert_eq!(half.mul(&half), QSeries::from_constants(&r, cap, [(QExp::int(1), int(1))]));
    let a = QSeries::from_constants(&r, cap, [(QExp::frac(1, 24).unwrap(), int(1))]);
    let b = QSeries::from_constants(&r, cap, [(QExp::frac(23, 24).unwrap(), int(1))]);
    assert_eq!(a.mul(&b), QSeries::from_constants(&r, cap, [(QExp::int(1), int(1))]));
    let geometric = QSeries::from_constants(&r, cap, (0..=2).map(|n| (QExp::int(n), int(1))));
    let one_minus_q = QSeries::from_constants(&r, cap, [(QExp::ZERO, int(1)), (QExp::int(1), int(-1))]);
    assert_eq!(one_minus_q.mul(&geometric), QSeries::one(&r, cap));
    assert!(QExp::frac(1, 5).is_err());
}

// ---------------------------------------------------------------- constants

fn divisor_sum(k: u32, n: u64) -> i128 {
    (1..=n).filter(|d| n % d == 0).map(|d| (d as i128).pow(k)).sum()
}

#[test]
fn eisenstein_printed_values() {
    let e4 = eisenstein(4, 3).unwrap();
    let e6 = eisenstein(6, 3).unwrap();
    let e2 = eisenstein(2, 3).unwrap();
    let coeffs = |s: &QSeries| (1..=3).map(|n| s.rational_coeff(QExp::int(n))).collect::<Vec<_>>();
    assert_eq!(coeffs(&e4), vec![int(240), int(2160), int(6720)]);
    assert_eq!(coeffs(&e6), vec![int(-504), int(-16632), int(-122976)]);
    assert_eq!(coeffs(&e2), vec![int(-24), int(-72), int(-96)]);
}

#[test]
fn eisenstein_matches_divisor_oracle() {
    let cap = 12;
    let e4 = eisenstein(4, cap).unwrap();
    let e6 = eisenstein(6, cap).unwrap();
    for n in 1..=cap as u64 {
        assert_eq!(e4.rational_coeff(QExp::int(n as i32)), Rational::from_integer((240 * divisor_sum(3, n)).into()));
        assert_eq!(e6.rational_coeff(QExp::int(n as i32)), Rational::from_integer((-504 * divisor_sum(5, n)).into()));
    }
}

#[test]
fn euler_product_is_pentagonal() {
    let cap = 40;
    let c = euler_product(cap);
    let mut oracle = vec![0i64; cap as usize + 1];
    for k in -10i64..=10 {
        let g = k * (3 * k - 1) / 2;
        if (0..=cap as i64).contains(&g) {
            oracle[g as usize] += if k % 2 == 0 { 1 } else { -1 };
        }
    }
    for (n, o) in oracle.iter().enumerate() {
        assert_eq!(c.rational_coeff(QExp::int(n as i32)), int(*o), "q^{n}");
    }
    assert_eq!(c.pow(0).unwrap(), QSeries::one(c.ring(), c.q_cap()));
    let eta24 = eta_power(24, 3);
    assert_eq!(eta24.order(), Some(QExp::int(1)));
    assert_eq!(eta24.rational_coeff(QExp::int(1)), int(1));
    assert_eq!(eta24.rational_coeff(QExp::int(2)), int(-24));
}

#[test]
fn negative_powers_invert() {
    let c = euler_product(6);
    let inv = c.pow(-3).unwrap();
    assert_eq!(inv.mul(&c.pow(3).unwrap()), QSeries::one(c.ring(), c.q_cap()));
    // 1/c is the partition generating function
    let p = c.pow(-1).unwrap();
    let partitions = [1, 1, 2, 3, 5, 7, 11];
    for (n, v) in partitions.iter().enumerate() {
        assert_eq!(p.rational_coeff(QExp::int(n as i32)), int(*v));
    }
}

// ---------------------------------------------------------------- properties

fn arb_poly(r: Arc<Ring>) -> impl Strategy<Value = GradedPoly> {
    let n = r.len();
    prop::collection::vec((prop::collection::vec(0u8..3, n), -5i64..6, 1i64..4), 0..6).prop_map(move |terms| {
        GradedPoly::from_terms(&r, terms.into_iter().map(|(e, a, b)| (Mono::from_exps(&e), rat(a, b))))
    })
}

fn within_caps(p: &GradedPoly) -> bool {
    p.terms().iter().all(|(m, c)| p.ring().within_caps(m) && !Coeff::is_zero(c))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms((a, b, d) in (arb_poly(ring(3, 4)), arb_poly(ring(3, 4)), arb_poly(ring(3, 4)))) {
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &d, &a * &(&b * &d));
        prop_assert_eq!(&a * &(&b + &d), &(&a * &b) + &(&a * &d));
        prop_assert_eq!(&(&a + &b) + &d, &a + &(&b + &d));
        prop_assert!(within_caps(&(&a * &b)));
        prop_assert!(within_caps(&(&a + &b)));
    }

    #[test]
    fn exp_of_negation_is_inverse(a in arb_poly(ring(3, 4))) {
        let mut nil = a.clone();
        nil = &nil - &GradedPoly::constant(nil.ring(), nil.constant_term());
        let e = nil.exp().unwrap();
        let f = nil.neg().exp().unwrap();
        prop_assert_eq!(&e * &f, GradedPoly::one(nil.ring()));
        prop_assert_eq!(e.invert().unwrap(), f);
        prop_assert!(within_caps(&e));
    }

    #[test]
    fn invert_is_two_sided(a in arb_poly(ring(2, 5)), k in 1i64..5) {
        let a = &a - &GradedPoly::constant(a.ring(), a.constant_term());
        let a = &a + &GradedPoly::constant(a.ring(), int(k));
        let b = a.invert().unwrap();
        prop_assert_eq!(&a * &b, GradedPoly::one(a.ring()));
    }

    #[test]
    fn lattice_product_agrees_with_integer_product(
        xs in prop::collection::vec((0i32..48, -3i64..4), 0..6),
        ys in prop::collection::vec((0i32..48, -3i64..4), 0..6),
    ) {
        // exponents in 1/24 units against the same data read as integer exponents of q^{1/24}
        let r = Ring::scalar();
        let frac = |v: &Vec<(i32, i64)>| QSeries::from_constants(&r, QExp::int(2), v.iter().map(|(e, c)| (QExp(*e), int(*c))));
        let whole = |v: &Vec<(i32, i64)>| QSeries::from_constants(&r, QExp::int(48), v.iter().map(|(e, c)| (QExp::int(*e), int(*c))));
        let p = frac(&xs).mul(&frac(&ys));
        let q = whole(&xs).mul(&whole(&ys));
        for e in 0..=48 {
            prop_assert_eq!(p.rational_coeff(QExp(e)), q.rational_coeff(QExp::int(e)));
        }
    }
}
