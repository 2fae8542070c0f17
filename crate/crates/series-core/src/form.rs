//! Polynomials with coefficients in Q(i)[π, π⁻¹], stored unit by unit.
//!
//! A `ScalarForm` is Σ_u u·P_u where the units u = π^k·iᵇ form a Q-basis of
//! the scalar field and each P_u is a rational `GradedPoly`. Heavy kernels
//! stay rational; the π/i bookkeeping rides along as a finite index set.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::Result;
use crate::poly::{GradedPoly, Ring};
use crate::scalar::{Rational, Scalar, Unit};

#[derive(Clone, Debug, PartialEq)]
pub struct ScalarForm {
    ring: Arc<Ring>,
    parts: BTreeMap<Unit, GradedPoly<Rational>>,
}

impl ScalarForm {
    pub fn zero(ring: &Arc<Ring>) -> Self {
        ScalarForm { ring: ring.clone(), parts: BTreeMap::new() }
    }

    /// `s · p`.
    pub fn new(s: &Scalar, p: &GradedPoly<Rational>) -> Self {
        let mut out = Self::zero(p.ring());
        for (u, r) in s.terms() {
            out.add_part(*u, &p.scale(r));
        }
        out
    }

    pub fn rational(p: GradedPoly<Rational>) -> Self {
        let mut out = Self::zero(p.ring());
        out.add_part(Unit::ONE, &p);
        out
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn parts(&self) -> &BTreeMap<Unit, GradedPoly<Rational>> {
        &self.parts
    }

    pub fn part(&self, u: Unit) -> GradedPoly<Rational> {
        self.parts.get(&u).cloned().unwrap_or_else(|| GradedPoly::zero(&self.ring))
    }

    pub fn is_zero(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn add_part(&mut self, u: Unit, p: &GradedPoly<Rational>) {
        if p.is_zero() {
            return;
        }
        let e = self.parts.entry(u).or_insert_with(|| GradedPoly::zero(p.ring()));
        e.add_assign(p);
        if e.is_zero() {
            self.parts.remove(&u);
        }
    }

    pub fn add(&self, other: &ScalarForm) -> ScalarForm {
        let mut out = self.clone();
        for (u, p) in &other.parts {
            out.add_part(*u, p);
        }
        out
    }

    pub fn sub(&self, other: &ScalarForm) -> ScalarForm {
        self.add(&other.scale_scalar(&Scalar::from_rational(crate::scalar::int(-1))))
    }

    pub fn mul(&self, other: &ScalarForm) -> ScalarForm {
        let mut out = Self::zero(&self.ring);
        for (ua, pa) in &self.parts {
            for (ub, pb) in &other.parts {
                let (u, negate) = ua.mul(*ub);
                let prod = pa * pb;
                out.add_part(u, &if negate { prod.neg() } else { prod });
            }
        }
        out
    }

    /// Multiply by a rational polynomial.
    pub fn mul_poly(&self, p: &GradedPoly<Rational>) -> ScalarForm {
        self.map(|q| Ok(q * p)).expect("mul_poly")
    }

    pub fn scale_scalar(&self, s: &Scalar) -> ScalarForm {
        let mut out = Self::zero(&self.ring);
        for (ua, pa) in &self.parts {
            for (ub, r) in s.terms() {
                let (u, negate) = ua.mul(*ub);
                let p = pa.scale(r);
                out.add_part(u, &if negate { p.neg() } else { p });
            }
        }
        out
    }

    /// Apply a rational-linear map part by part (possibly into another universe).
    pub fn map(&self, f: impl Fn(&GradedPoly<Rational>) -> Result<GradedPoly<Rational>>) -> Result<ScalarForm> {
        let mut ring = None;
        let mut parts = BTreeMap::new();
        for (u, p) in &self.parts {
            let q = f(p)?;
            ring.get_or_insert_with(|| q.ring().clone());
            if !q.is_zero() {
                parts.insert(*u, q);
            }
        }
        let ring = match ring {
            Some(r) => r,
            None => f(&GradedPoly::zero(&self.ring))?.ring().clone(),
        };
        Ok(ScalarForm { ring, parts })
    }

    /// The same element as a polynomial with `Scalar` coefficients.
    pub fn to_scalar_poly(&self) -> GradedPoly<Scalar> {
        let mut out = GradedPoly::<Scalar>::zero(&self.ring);
        for (u, p) in &self.parts {
            let s = Scalar::monomial(crate::scalar::int(1), *u);
            out.add_assign(&p.map_coeffs(|c| s.scale(c)));
        }
        out
    }

    pub fn from_scalar_poly(p: &GradedPoly<Scalar>) -> ScalarForm {
        let mut out = Self::zero(p.ring());
        for (m, c) in p.terms() {
            for (u, r) in c.terms() {
                out.add_part(*u, &GradedPoly::monomial(p.ring(), *m, r.clone()));
            }
        }
        out
    }
}

impl fmt::Display for ScalarForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_scalar_poly())
    }
}
