//! Decomposition, residue scalars and catalog verification.
//!
//! Eisenstein coefficients are checked against divisor sums computed here.

use std::collections::BTreeSet;

use genus_assembly::{Assembly, GenusId, GenusInstance};
use modular_verify::*;
use proptest::prelude::*;
use series_core::*;

fn sigma(k: u32, n: i64) -> i64 {
    (1..=n).filter(|d| n % d == 0).map(|d| d.pow(k)).sum()
}

/// q-coefficients of E₄ᵃE₆ᵇ through q^cap by naive convolution.
fn oracle(a: u32, b: u32, cap: usize) -> Vec<i64> {
    let e4: Vec<i64> = (0..=cap).map(|n| if n == 0 { 1 } else { 240 * sigma(3, n as i64) }).collect();
    let e6: Vec<i64> = (0..=cap).map(|n| if n == 0 { 1 } else { -504 * sigma(5, n as i64) }).collect();
    let mul = |x: &[i64], y: &[i64]| (0..=cap).map(|n| (0..=n).map(|i| x[i] * y[n - i]).sum()).collect::<Vec<i64>>();
    let mut out = vec![0; cap + 1];
    out[0] = 1;
    for _ in 0..a {
        out = mul(&out, &e4);
    }
    for _ in 0..b {
        out = mul(&out, &e6);
    }
    out
}

fn coeffs(s: &QSeries, cap: i32) -> Vec<Rational> {
    (0..=cap).map(|n| s.rational_coeff(QExp::int(n))).collect()
}

#[test]
fn basis_examples() {
    assert!(eisenstein_basis(2, 4).is_empty());
    assert!(eisenstein_basis(7, 4).is_empty());
    assert!(eisenstein_basis(-4, 4).is_empty());
    let w4 = eisenstein_basis(4, 2);
    assert_eq!(w4.len(), 1);
    assert_eq!(coeffs(&w4[0].series, 2), vec![int(1), int(240), int(2160)]);
    let w10 = eisenstein_basis(10, 2);
    assert_eq!(w10[0].label(), "E4*E6");
    assert_eq!(coeffs(&w10[0].series, 2), vec![int(1), int(-264), int(-135432)]);
    let w12: Vec<String> = eisenstein_basis(12, 2).iter().map(|b| b.label()).collect();
    assert_eq!(w12, vec!["E4^3", "E6^2"]);
}

#[test]
fn basis_matches_divisor_oracle() {
    for w in [0, 4, 6, 8, 10, 12, 14, 16, 24] {
        for b in eisenstein_basis(w, 6) {
            let expected: Vec<Rational> = oracle(b.a, b.b, 6).into_iter().map(|c| int(c)).collect();
            assert_eq!(coeffs(&b.series, 6), expected, "{}", b.label());
        }
    }
}

#[test]
fn decompose_cube_of_e4() {
    let e4 = eisenstein(4, 4).unwrap();
    let cube = e4.pow(3).unwrap();
    let d = decompose(&cube, 12).unwrap();
    assert_eq!(d.coefficients.iter().map(|c| c.constant_term()).collect::<Vec<_>>(), vec![int(1), int(0)]);
    assert!(d.is_modular());
    let wrong = decompose(&cube, 8).unwrap();
    assert!(!wrong.is_modular());
}

#[test]
fn decompose_rejects_half_integer_exponents() {
    let r = Ring::scalar();
    let s = QSeries::from_constants(&r, QExp::int(2), [(QExp::ZERO, int(1)), (QExp::HALF, int(1))]);
    assert!(matches!(decompose(&s, 4), Err(VerifyError::Domain(_))));
}

#[test]
fn q_at_dim_six_is_a_multiple_of_e4() {
    let inst = GenusInstance::new(GenusId::Q, 6);
    let prep = Prepared::new(&inst, 0, &[], 4, Caps::default()).unwrap();
    let d = &prep.decomposition;
    assert!(d.is_modular());
    assert_eq!(d.coefficients.len(), 1);
    let asm = Assembly::new(&inst).unwrap();
    let q0 = (&(&asm.prefactor * &asm.ch_delta) + &asm.prefactor.scale(&int(16))).extract_root_degree(4);
    assert_eq!(d.coefficients[0], prep.constraints.apply(&prep.basis.to_class_basis(&q0).unwrap()).unwrap());
}

#[test]
fn a1_at_odd_gap_three_is_a_multiple_of_e4() {
    let cons: Vec<String> = GenusId::Ell.default_constraints();
    let inst = GenusInstance::new(GenusId::Ell, 10).with_l(3).with_zeta_cap(1);
    let prep = Prepared::new(&inst, 1, &cons, 4, Caps::default()).unwrap();
    assert_eq!(prep.decomposition.basis.len(), 1);
    assert!(prep.decomposition.is_modular());
    assert!(!prep.series.is_zero());
}

#[test]
fn residue_scale_examples() {
    assert_eq!(residue_scale(4, 2, Parity::Even).unwrap(), "-1/2*pi^-2".parse().unwrap());
    assert_eq!(residue_scale(5, 1, Parity::Odd).unwrap(), Scalar::two_pi_i().pow(3).inverse().unwrap().neg());
    assert_eq!(residue_scale(6, 0, Parity::Even).unwrap(), Scalar::two_pi_i().pow(3).inverse().unwrap());
    assert!(residue_scale(5, 1, Parity::Even).is_err());
    assert!(residue_scale(4, 1, Parity::Odd).is_err());
}

#[test]
fn catalog_is_consistent() {
    let cat = Catalog::builtin();
    assert!(cat.records.len() >= 40);
    let exp = builtin_expectations();
    let ids: BTreeSet<&str> = cat.ids().into_iter().collect();
    let pinned: BTreeSet<&str> = exp.keys().map(|s| s.as_str()).collect();
    assert_eq!(ids, pinned);
    let json = serde_json::to_string(&cat).unwrap();
    assert_eq!(Catalog::from_json(&json).unwrap(), cat);
}

#[test]
fn bad_records_are_rejected() {
    let mut r = Catalog::builtin().get("THM-2.4a").unwrap().clone();
    r.weight = 6;
    assert!(r.validate().is_err());
    let mut r2 = Catalog::builtin().get("THM-2.4a").unwrap().clone();
    r2.lhs[0].twists.push("Nope".into());
    assert!(r2.validate().is_err());
    let mut r3 = Catalog::builtin().get("THM-2.4a").unwrap().clone();
    r3.fiber_dim = 7;
    assert!(r3.validate().is_err());
}

#[test]
fn printed_examples_verify() {
    let cat = Catalog::builtin();
    let run = |id: &str| verify_theorem(cat.get(id).unwrap(), Caps::default()).unwrap();
    let a = run("THM-2.4a");
    assert_eq!((a.status, a.derived_coeffs.clone()), (Status::Match, vec!["120".to_string()]));
    let b = run("THM-2.5b");
    assert_eq!((b.status, b.derived_coeffs.clone()), (Status::Match, vec!["-16632".to_string()]));
    let c = run("THM-2.7b");
    assert_eq!((c.status, c.derived_coeffs.clone()), (Status::Mismatch, vec!["-135432".to_string()]));
    assert_eq!(c.expansion_consistent, Some(true));
}

#[test]
fn report_json_round_trips() {
    let cat = Catalog::builtin();
    let recs: Vec<TheoremRecord> = ["THM-2.20a", "THM-3.7.1-printed", "PROP-3.5.1-d4l2"].iter().map(|id| cat.get(id).unwrap().clone()).collect();
    let reps = verify_all(&recs, Caps::default()).unwrap();
    assert_eq!(reps.iter().map(|r| r.id.as_str()).collect::<Vec<_>>(), vec!["PROP-3.5.1-d4l2", "THM-2.20a", "THM-3.7.1-printed"]);
    let s = serde_json::to_string(&reps).unwrap();
    let back: Vec<VerifyReport> = serde_json::from_str(&s).unwrap();
    assert_eq!(back, reps);
    assert!(reps[2].residual_witness.is_some());
}

#[test]
fn ratios_do_not_depend_on_the_instance() {
    // same d − l, one more W root
    let cat = Catalog::builtin();
    for id in ["THM-3.6.1a", "THM-3.6.2b", "THM-3.7.1", "THM-3.13.1b", "THM-3.14.2", "THM-3.19.1a", "THM-3.20.1"] {
        let r = cat.get(id).unwrap();
        let mut alt = r.clone();
        alt.l += 1;
        alt.fiber_dim += 2;
        let a = verify_theorem(r, Caps::default()).unwrap();
        let b = verify_theorem(&alt, Caps::default()).unwrap();
        assert_eq!(a.derived_coeffs, b.derived_coeffs, "{id}");
        assert_eq!(a.status, Status::Match, "{id}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn decomposition_recovers_combinations(w in prop::sample::select(vec![4i64, 6, 8, 10, 12, 14]), cs in prop::collection::vec((-20i64..20, 1i64..7), 2)) {
        let basis = eisenstein_basis(w, 4);
        let r = Ring::scalar();
        let mut s = QSeries::zero(&r, QExp::int(4));
        for (b, (n, d)) in basis.iter().zip(&cs) {
            s = s.add(&b.series.scale(&rat(*n, *d)));
        }
        let dec = decompose(&s, w).unwrap();
        prop_assert!(dec.is_modular());
        for (c, (n, d)) in dec.coefficients.iter().zip(&cs) {
            prop_assert_eq!(c.constant_term(), rat(*n, *d));
        }
        let bumped = s.add(&QSeries::from_constants(&r, QExp::int(4), [(QExp::int(4), int(1))]));
        prop_assert!(!decompose(&bumped, w).unwrap().is_modular());
    }

    #[test]
    fn residue_scale_inverts_the_printed_denominators(half in 1u32..8, j in 0u32..6) {
        let even = residue_scale(2 * half, j, Parity::Even).unwrap().mul(&Scalar::two_pi_i().pow(half));
        let fact: i64 = (1..=j as i64).product();
        prop_assert_eq!(even, Scalar::from_rational(int(if j % 2 == 0 { fact } else { -fact })));
        if j >= 1 {
            let odd = residue_scale(2 * half + 1, j, Parity::Odd).unwrap().mul(&Scalar::two_pi_i().pow(half + 1));
            let dfact: i64 = (1..=(2 * j as i64 - 1)).step_by(2).product();
            let sign = if j % 2 == 0 { 1 } else { -1 };
            prop_assert_eq!(odd, Scalar::from_rational(rat(sign * dfact, 1 << (j - 1))));
        }
    }
}
