use std::f64::consts::PI;

use num_complex::Complex64;
use proptest::prelude::*;
use theta_numeric::*;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn q(tau: Complex64, a: f64) -> Complex64 {
    (2.0 * PI * Complex64::i() * tau * a).exp()
}

#[test]
fn values_at_zero() {
    let tau = c(0.1, 1.2);
    let s = ThetaSample::new(c(0.0, 0.0), tau, 60).unwrap();
    assert!(theta_eval(ThetaKind::Theta, &s).unwrap().norm() < 1e-15);
    let mut expected = 2.0 * q(tau, 0.125);
    for j in 1..=60 {
        expected *= (1.0 - q(tau, j as f64)) * (1.0 + q(tau, j as f64)).powi(2);
    }
    assert!((theta_eval(ThetaKind::Theta1, &s).unwrap() - expected).norm() < 1e-12);
    let closed = theta_prime_zero_closed(tau, 60).unwrap();
    assert!((theta_eval(ThetaKind::ThetaPrime, &s).unwrap() - closed).norm() < 1e-9);
}

#[test]
fn theta_prime_is_the_v_derivative() {
    let s = ThetaSample::new(c(0.21, -0.07), c(-0.3, 1.1), 60).unwrap();
    let h = 1e-5;
    let at = |dv: f64| theta_eval(ThetaKind::Theta, &ThetaSample { v: s.v + dv, ..s }).unwrap();
    let fd = (at(h) - at(-h)) / (2.0 * h);
    assert!((theta_eval(ThetaKind::ThetaPrime, &s).unwrap() - fd).norm() < 1e-6);
}

#[test]
fn spot_checks() {
    let s = ThetaSample::new(c(0.3, 0.1), c(0.2, 1.5), 60).unwrap();
    assert!(law_residual(ThetaKind::Theta2, Law::TShift, &s).unwrap() < 1e-9);
    assert!(law_residual(ThetaKind::Theta3, Law::SInversion, &s).unwrap() < 1e-9);
    assert!(law_residual(ThetaKind::ThetaPrime, Law::SInversion, &s).unwrap() < 1e-9);
    let chk = check_law(ThetaKind::Theta, Law::SInversion, &s, 1e-9).unwrap();
    assert!(chk.passed);
}

#[test]
fn invalid_samples_are_rejected() {
    assert!(ThetaSample::new(c(0.0, 0.0), c(0.0, -1.0), 10).is_err());
    assert!(ThetaSample::new(c(0.0, 0.0), c(0.0, 1.0), 0).is_err());
    let bad = ThetaSample { v: c(0.0, 0.0), tau: c(0.3, 0.0), n_terms: 5 };
    assert!(matches!(theta_eval(ThetaKind::Theta, &bad), Err(ThetaError::Domain(_))));
}

#[test]
fn all_laws_hold_on_random_samples() {
    let samples = random_samples(20, 80, 7);
    let report = check_all(&samples, 1e-9).unwrap();
    assert_eq!(report.laws.len(), 10);
    assert!(report.passed, "{report:?}");
}

#[test]
fn more_factors_never_hurt() {
    for s in random_samples(20, 1, 11) {
        for k in ThetaKind::ALL {
            for law in [Law::TShift, Law::SInversion] {
                let mut prev = f64::INFINITY;
                for n in [2, 4, 8, 16] {
                    let r = law_residual(k, law, &ThetaSample { n_terms: n, ..s }).unwrap();
                    assert!(r <= prev.max(1e-12), "{k} {law} n={n}: {r} > {prev}");
                    prev = r;
                }
            }
        }
    }
}

#[test]
fn eta_matches_the_exact_series() {
    for s in random_samples(20, 80, 3) {
        assert!(eta24_residual(s.tau, 80, 40).unwrap() < 1e-9);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn t_shift_holds(re in -0.5f64..0.5, im in 0.8f64..2.0, vr in 0.0f64..0.5, va in 0.0f64..6.28) {
        let s = ThetaSample::new(Complex64::from_polar(vr, va), c(re, im), 80).unwrap();
        for k in ThetaKind::ALL {
            prop_assert!(law_residual(k, Law::TShift, &s).unwrap() < 1e-9);
        }
    }
}
