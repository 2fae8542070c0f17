//! Assembly of the genera as q(-ζ) series of extracted forms.

use std::sync::Arc;

use lambda_ring::{ell_factors, twist_bundle, witten_factors, BundleContext, LineElement, WittenKind};
use series_core::{g2, int, product, rat, GradedPoly, QExp, QSeries, Ring, Scalar, ScalarForm, Unit};

use crate::characteristic::{ahat, ch_delta};
use crate::error::{GenusError, Result};
use crate::instance::{GenusId, GenusInstance};

/// Ring, bundle data and prefactor for one instance.
#[derive(Clone, Debug)]
pub struct Assembly {
    pub instance: GenusInstance,
    pub ring: Arc<Ring>,
    pub ctx: BundleContext,
    /// Â, Â·e^{u/2} or e^{c₁(W)/2}·Â.
    pub prefactor: GradedPoly,
    /// chΔ over all root pairs (spin genera).
    pub ch_delta: GradedPoly,
}

impl Assembly {
    pub fn new(instance: &GenusInstance) -> Result<Self> {
        let ring = instance.ring()?;
        let ctx = instance.context(&ring);
        let roots = instance.t_roots(&ring);
        let mut prefactor = ahat(&ring, &roots);
        if instance.genus.is_spinc() {
            let u = ring.var_index("u").expect("u");
            prefactor = &prefactor * &LineElement::var(u, rat(1, 2)).ch(&ring);
        }
        if instance.genus.is_ell() {
            let half_c1: lambda_ring::LinearForm = ring.group_indices("W").into_iter().map(|i| (i, rat(1, 2))).collect();
            prefactor = &prefactor * &LineElement::new(half_c1).ch(&ring);
        }
        let zero_pairs = instance.pairs() as i64 - roots.len() as i64;
        let ch_delta = ch_delta(&ring, &roots).scale(&int(1 << zero_pairs));
        Ok(Assembly { instance: instance.clone(), ring, ctx, prefactor, ch_delta })
    }

    pub fn degree(&self) -> u32 {
        self.instance.extract_degree()
    }

    fn constant(&self, q_cap: QExp, p: &GradedPoly) -> QSeries {
        QSeries::monomial(q_cap, QExp::ZERO, p.clone())
    }

    /// The genus, degree-extracted in every q-coefficient.
    pub fn genus(&self, q_cap: QExp) -> Result<QSeries> {
        let g = self.instance.genus;
        let d = Some(self.degree());
        let series = if g.is_spin() {
            let mut f1 = vec![self.constant(q_cap, &self.prefactor), self.constant(q_cap, &self.ch_delta)];
            f1.extend(witten_factors(WittenKind::Theta1, &self.ctx, q_cap)?);
            let mut total = product(&self.ring, q_cap, f1, d);
            let weight = int(1 << self.instance.pairs());
            for kind in [WittenKind::Theta2, WittenKind::Theta3] {
                let mut f = vec![self.constant(q_cap, &self.prefactor)];
                f.extend(witten_factors(kind, &self.ctx, q_cap)?);
                total = total.add(&product(&self.ring, q_cap, f, d).scale(&weight));
            }
            total
        } else if g.is_spinc() {
            let kind = if g == GenusId::Qc { WittenKind::SpinC } else { WittenKind::SpinCStar };
            let mut f = vec![self.constant(q_cap, &self.prefactor)];
            f.extend(witten_factors(kind, &self.ctx, q_cap)?);
            product(&self.ring, q_cap, f, d)
        } else {
            return self.ell(q_cap, false);
        };
        if let Some(e) = series.non_integer_exponent() {
            return Err(GenusError::Config(format!("half-integer exponent {e} survived assembly")));
        }
        Ok(series)
    }

    /// Elliptic genus, optionally multiplied by the quasimodular correction exp(l·G₂·ζ²).
    pub fn ell(&self, q_cap: QExp, corrected: bool) -> Result<QSeries> {
        let kind = self.instance.genus.ell_kind().ok_or_else(|| GenusError::Config("not an elliptic genus".into()))?;
        let mut f = vec![self.constant(q_cap, &self.prefactor)];
        f.extend(ell_factors(kind, &self.ctx, q_cap)?);
        if corrected {
            f.push(self.correction(q_cap)?);
        }
        Ok(product(&self.ring, q_cap, f, Some(self.degree())))
    }

    /// exp(l·G₂(q)·ζ²) with G₂ = −E₂/24.
    pub fn correction(&self, q_cap: QExp) -> Result<QSeries> {
        let z = self.ring.zeta_index().ok_or_else(|| GenusError::Config("no zeta variable".into()))?;
        let zeta = GradedPoly::var(&self.ring, z);
        let arg = g2(q_cap.whole() as u32).embed(&self.ring)?.mul_poly(&(&zeta * &zeta).scale(&int(self.instance.l as i64)));
        let mut term = QSeries::one(&self.ring, q_cap);
        let mut sum = term.clone();
        for k in 1..=(self.ring.zeta_cap() / 2) {
            term = term.mul(&arg).scale(&rat(1, k as i64));
            sum = sum.add(&term);
        }
        Ok(sum)
    }

    /// ζⁿ coefficients n = 0..=zeta_cap of the corrected elliptic genus.
    /// The series in z is (2π√−1)ⁿ times the returned one.
    pub fn a_series(&self, q_cap: QExp) -> Result<Vec<QSeries>> {
        let e = self.ell(q_cap, true)?;
        Ok((0..=self.ring.zeta_cap()).map(|n| e.zeta_coefficient(n)).collect())
    }

    /// {prefactor · Π ch(twists)} at the extraction degree, with `Delta` for chΔ.
    pub fn twist_form(&self, twists: &[String]) -> Result<ScalarForm> {
        let mut f = ScalarForm::rational(self.prefactor.clone());
        for t in twists {
            let ch = if t == "Delta" {
                ScalarForm::rational(self.ch_delta.clone())
            } else {
                twist_bundle(t, &self.ctx)?.ch(&self.ctx)
            };
            f = f.mul(&ch);
        }
        let d = self.degree();
        Ok(f.map(|p| Ok(p.extract_root_degree(d)))?)
    }
}

/// (2π√−1)ⁿ.
pub fn two_pi_i_pow(n: u32) -> Scalar {
    Scalar::two_pi_i().pow(n)
}

/// Convenience: the scalar √−1^k.
pub fn i_pow(k: i64) -> Scalar {
    let k = k.rem_euclid(4);
    let s = if k >= 2 { int(-1) } else { int(1) };
    Scalar::monomial(s, Unit::new(0, k % 2 == 1))
}
