//! Assembly examples and expansion cross-checks against the printed q-expansions.

use genus_assembly::*;
use series_core::*;

fn spin(g: GenusId, dim: u32) -> Assembly {
    Assembly::new(&GenusInstance::new(g, dim)).unwrap()
}

fn form(asm: &Assembly, terms: &[(&[&str], i64)]) -> GradedPoly {
    let mut f = ScalarForm::zero(&asm.ring);
    for (tw, m) in terms {
        let tw: Vec<String> = tw.iter().map(|s| s.to_string()).collect();
        f = f.add(&asm.twist_form(&tw).unwrap().map(|p| Ok(p.scale(&int(*m)))).unwrap());
    }
    assert_eq!(f.parts().keys().filter(|u| **u != Unit::ONE).count(), 0);
    f.part(Unit::ONE)
}

#[test]
fn characteristic_examples() {
    let r = Ring::new(vec![Var::root("x1", "T")], 4, 0).unwrap();
    let a = ahat(&r, &[0]);
    assert_eq!(a.coeff(&Mono::from_exps(&[2])), rat(-1, 24));
    assert_eq!(a.coeff(&Mono::from_exps(&[4])), rat(7, 5760));
    let d = ch_delta(&r, &[0]);
    assert_eq!(d.coeff(&Mono::one()), int(2));
    assert_eq!(d.coeff(&Mono::from_exps(&[2])), rat(1, 4));
    assert_eq!(d.coeff(&Mono::from_exps(&[4])), rat(1, 192));
    let t = todd(&r, &[0]);
    let expected = [int(1), rat(1, 2), rat(1, 12), int(0), rat(-1, 720)];
    for (k, c) in expected.iter().enumerate() {
        assert_eq!(t.coeff(&Mono::from_exps(&[k as u8])), *c);
    }
    assert_eq!(ahat(&r, &[]), GradedPoly::one(&r));
    // Td(x)·Td(−x) = (x/2 / sinh(x/2))², the Â-type even series
    let neg = t.substitute(&r, &[GradedPoly::var(&r, 0).neg()]).unwrap();
    assert_eq!(&t * &neg, &a * &a);
}

#[test]
fn todd_matches_bernoulli_oracle() {
    // x/(1 − e^{−x}) satisfies (1 − e^{−x})·Td = x
    let r = Ring::new(vec![Var::root("x1", "T")], 8, 0).unwrap();
    let x = GradedPoly::var(&r, 0);
    let one_minus = &GradedPoly::one(&r) - &x.neg().exp().unwrap();
    let t = todd(&r, &[0]);
    let lhs = &one_minus * &t;
    let r7 = r.with_caps(7, 0);
    assert_eq!(lhs.embed(&r7).unwrap(), x.embed(&r7).unwrap());
}

#[test]
fn q0_coefficients() {
    for (g, dim, w) in [(GenusId::Q, 6, 16), (GenusId::QTilde, 5, 8), (GenusId::QHat, 7, 16)] {
        let asm = spin(g, dim);
        let q = asm.genus(QExp::int(1)).unwrap();
        let expected = (&(&asm.prefactor * &asm.ch_delta) + &asm.prefactor.scale(&int(w))).extract_root_degree(4);
        assert_eq!(q.coeff(QExp::ZERO), expected, "{g} dim {dim}");
    }
}

#[test]
fn inconsistent_dimensions_are_rejected() {
    assert!(matches!(Assembly::new(&GenusInstance::new(GenusId::Q, 7)), Err(GenusError::Config(_))));
    assert!(Assembly::new(&GenusInstance::new(GenusId::Q1, 6).with_j(2)).is_err());
}

#[test]
fn spin_expansion_matches_printed_terms() {
    for dim in [6, 10] {
        let asm = spin(GenusId::Q, dim);
        let q = asm.genus(QExp::int(2)).unwrap();
        let p = 1i64 << (asm.instance.pairs());
        let q1 = form(&asm, &[(&["Delta", "Tt"], 2), (&["Tt"], 2 * p), (&["L2Tt"], 2 * p)]);
        assert_eq!(q.coeff(QExp::int(1)), q1, "q^1 dim {dim}");
        let q2 = form(&asm, &[(&["Delta", "A0"], 1), (&["A1"], 2 * p)]);
        assert_eq!(q.coeff(QExp::int(2)), q2, "q^2 dim {dim}");
    }
}

#[test]
fn spinc_expansion_matches_printed_terms() {
    for dim in [5, 6, 7, 10] {
        let qc = Assembly::new(&GenusInstance::new(GenusId::Qc, dim)).unwrap();
        let s = qc.genus(QExp::int(2)).unwrap();
        assert_eq!(s.coeff(QExp::ZERO), form(&qc, &[(&[], 1)]));
        assert_eq!(s.coeff(QExp::int(1)), form(&qc, &[(&["B1"], 1)]), "B1 dim {dim}");
        assert_eq!(s.coeff(QExp::int(2)), form(&qc, &[(&["B2"], 1)]), "B2 dim {dim}");
        let qs = Assembly::new(&GenusInstance::new(GenusId::QcStar, dim)).unwrap();
        let s = qs.genus(QExp::int(2)).unwrap();
        assert_eq!(s.coeff(QExp::int(1)), form(&qs, &[(&["B3"], 1)]), "B3 dim {dim}");
        assert_eq!(s.coeff(QExp::int(2)), form(&qs, &[(&["B4"], 1)]), "B4 dim {dim}");
    }
}

#[test]
fn ell_without_w_reduces_to_prefactor() {
    let inst = GenusInstance::new(GenusId::Ell, 4).with_l(0).with_zeta_cap(2);
    let asm = Assembly::new(&inst).unwrap();
    let e = asm.ell(QExp::int(1), false).unwrap();
    assert_eq!(e.coeff(QExp::ZERO), asm.prefactor.extract_root_degree(3));
}

#[test]
fn a0_matches_printed_terms() {
    let inst = GenusInstance::new(GenusId::Ell, 8).with_l(2).with_zeta_cap(0);
    let asm = Assembly::new(&inst).unwrap();
    let a = asm.a_series(QExp::int(2)).unwrap();
    assert_eq!(a[0].coeff(QExp::ZERO), form(&asm, &[(&["LW"], 1)]));
    assert_eq!(a[0].coeff(QExp::int(1)), form(&asm, &[(&["LW", "A2"], 1)]));
    assert_eq!(a[0].coeff(QExp::int(2)), form(&asm, &[(&["LW", "A3"], 1)]));
}

#[test]
fn theta_side_equals_bundle_side() {
    for (g, dim) in [(GenusId::Ell, 6), (GenusId::EllTilde, 5), (GenusId::EllBar, 7)] {
        let inst = GenusInstance::new(g, dim).with_l(2).with_zeta_cap(4);
        let asm = Assembly::new(&inst).unwrap();
        let bundle = asm.ell(QExp::int(2), false).unwrap();
        let (_, theta) = theta_side(&asm, QExp::int(2)).unwrap();
        assert_eq!(theta, bundle, "{g}");
    }
}

/// (genus, dim, l, n, q-power, twist) where the twist should reproduce the aₙ coefficient.
fn a_n_term(g: GenusId, dim: u32, l: u32, n: u32, qk: i32, twist: &str) -> bool {
    let inst = GenusInstance::new(g, dim).with_l(l).with_zeta_cap(n);
    let asm = Assembly::new(&inst).unwrap();
    let a = asm.a_series(QExp::int(qk)).unwrap();
    let series = ScalarForm::rational(a[n as usize].coeff(QExp::int(qk))).scale_scalar(&two_pi_i_pow(n));
    let mut tw = vec![twist.to_string()];
    if n == 0 {
        tw.insert(0, "LW".into());
    }
    let diff = asm.twist_form(&tw).unwrap().sub(&series);
    let basis = inst.class_basis(&asm.ring).unwrap();
    let cs = inst.constraints(&basis, &g.default_constraints()).unwrap();
    cs.apply_form(&basis.form_to_class_basis(&diff).unwrap()).unwrap().is_zero()
}

#[test]
fn derived_twists_reproduce_the_expansion() {
    let cases = [
        (GenusId::Ell, 10, 3, 1, 1, "A4c"),
        (GenusId::EllTilde, 9, 3, 1, 1, "A10c"),
        (GenusId::EllBar, 9, 3, 1, 1, "A13c"),
        (GenusId::EllTilde, 9, 2, 0, 1, "A8c"),
        (GenusId::EllTilde, 9, 2, 0, 2, "A9c"),
        (GenusId::EllBar, 11, 2, 0, 1, "A11c"),
        (GenusId::EllBar, 11, 2, 0, 2, "A12c"),
        (GenusId::Ell, 6, 2, 2, 0, "A5"),
        (GenusId::Ell, 6, 3, 3, 0, "A6"),
        (GenusId::Ell, 6, 2, 4, 0, "A7c"),
    ];
    for (g, dim, l, n, qk, tw) in cases {
        assert!(a_n_term(g, dim, l, n, qk, tw), "{g} dim {dim} {tw}");
    }
}

#[test]
fn literal_twists_differ_from_the_expansion() {
    let cases = [
        (GenusId::Ell, 10, 3, 1, 1, "A4"),
        (GenusId::EllTilde, 9, 2, 0, 1, "A8"),
        (GenusId::EllBar, 11, 2, 0, 2, "A12"),
        (GenusId::Ell, 6, 2, 4, 0, "A7"),
    ];
    for (g, dim, l, n, qk, tw) in cases {
        assert!(!a_n_term(g, dim, l, n, qk, tw), "{g} dim {dim} {tw}");
    }
}
