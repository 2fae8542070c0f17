//! Truncated q-series whose coefficients are `GradedPoly`s.
//!
//! Exponents live on the lattice (1/24)Z so that q^{1/8} theta prefactors,
//! q^{1/24} eta prefactors and q^{1/2} Witten-bundle parameters share one grid.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_traits::Zero;

use crate::error::{Result, SeriesError};
use crate::poly::{GradedPoly, Ring};
use crate::scalar::{int, rat, Coeff, Rational};

/// A q-exponent measured in units of 1/24.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct QExp(pub i32);

impl QExp {
    pub const DEN: i32 = 24;
    pub const ZERO: QExp = QExp(0);
    pub const HALF: QExp = QExp(12);

    pub fn int(n: i32) -> Self {
        QExp(n * Self::DEN)
    }

    /// `num/den`, where `den` must divide 24.
    pub fn frac(num: i32, den: i32) -> Result<Self> {
        if den <= 0 || Self::DEN % den != 0 {
            return Err(SeriesError::Domain(format!("q-exponent denominator {den} does not divide 24")));
        }
        Ok(QExp(num * (Self::DEN / den)))
    }

    pub fn from_rational(r: &Rational) -> Result<Self> {
        let scaled = r * int(Self::DEN as i64);
        if !scaled.is_integer() {
            return Err(SeriesError::Domain(format!("q-exponent {r} is not on the 1/24 lattice")));
        }
        let n: i64 = scaled.to_integer().try_into().map_err(|_| SeriesError::Domain("q-exponent too large".into()))?;
        Ok(QExp(n as i32))
    }

    pub fn is_integer(self) -> bool {
        self.0 % Self::DEN == 0
    }

    /// Integer value; meaningful only when `is_integer`.
    pub fn whole(self) -> i32 {
        self.0.div_euclid(Self::DEN)
    }

    pub fn as_rational(self) -> Rational {
        rat(self.0 as i64, Self::DEN as i64)
    }
}

impl std::ops::Add for QExp {
    type Output = QExp;
    fn add(self, o: QExp) -> QExp {
        QExp(self.0 + o.0)
    }
}

impl std::ops::Sub for QExp {
    type Output = QExp;
    fn sub(self, o: QExp) -> QExp {
        QExp(self.0 - o.0)
    }
}

impl fmt::Display for QExp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_rational())
    }
}

/// Truncated q-series; every coefficient shares the series' variable universe.
#[derive(Clone, Debug)]
pub struct QSeries<C: Coeff = Rational> {
    ring: Arc<Ring>,
    q_cap: QExp,
    coeffs: BTreeMap<QExp, GradedPoly<C>>,
}

impl<C: Coeff> PartialEq for QSeries<C> {
    fn eq(&self, other: &Self) -> bool {
        self.q_cap == other.q_cap && self.coeffs == other.coeffs
    }
}

impl<C: Coeff> QSeries<C> {
    pub fn zero(ring: &Arc<Ring>, q_cap: QExp) -> Self {
        QSeries { ring: ring.clone(), q_cap, coeffs: BTreeMap::new() }
    }

    pub fn one(ring: &Arc<Ring>, q_cap: QExp) -> Self {
        Self::monomial(q_cap, QExp::ZERO, GradedPoly::one(ring))
    }

    /// `poly · q^e`.
    pub fn monomial(q_cap: QExp, e: QExp, poly: GradedPoly<C>) -> Self {
        let mut s = Self::zero(poly.ring(), q_cap);
        s.set(e, poly);
        s
    }

    /// Series with constant (variable-free) coefficients.
    pub fn from_constants(ring: &Arc<Ring>, q_cap: QExp, coeffs: impl IntoIterator<Item = (QExp, C)>) -> Self {
        let mut s = Self::zero(ring, q_cap);
        for (e, c) in coeffs {
            s.add_at(e, &GradedPoly::constant(ring, c));
        }
        s
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn q_cap(&self) -> QExp {
        self.q_cap
    }

    pub fn coeffs(&self) -> &BTreeMap<QExp, GradedPoly<C>> {
        &self.coeffs
    }

    pub fn coeff(&self, e: QExp) -> GradedPoly<C> {
        self.coeffs.get(&e).cloned().unwrap_or_else(|| GradedPoly::zero(&self.ring))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Replace the coefficient at `e` (ignored beyond the cap).
    pub fn set(&mut self, e: QExp, poly: GradedPoly<C>) {
        poly.check_universe(&GradedPoly::zero(&self.ring)).expect("series coefficient universe");
        if e > self.q_cap {
            return;
        }
        if poly.is_zero() {
            self.coeffs.remove(&e);
        } else {
            self.coeffs.insert(e, poly);
        }
    }

    pub fn add_at(&mut self, e: QExp, poly: &GradedPoly<C>) {
        if e > self.q_cap || poly.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(e).or_insert_with(|| GradedPoly::zero(&self.ring));
        entry.add_assign(poly);
        if entry.is_zero() {
            self.coeffs.remove(&e);
        }
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.q_cap != other.q_cap {
            return Err(SeriesError::Config(format!("q caps differ: {} vs {}", self.q_cap, other.q_cap)));
        }
        GradedPoly::<C>::zero(&self.ring).check_universe(&GradedPoly::zero(&other.ring))
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = self.clone();
        for (e, p) in &other.coeffs {
            out.add_at(*e, p);
        }
        Ok(out)
    }

    pub fn add(&self, other: &Self) -> Self {
        self.try_add(other).expect("series add")
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.map_polys(|p| p.neg())
    }

    pub fn scale(&self, r: &Rational) -> Self {
        self.map_polys(|p| p.scale(r))
    }

    pub fn scale_coeff(&self, k: &C) -> Self {
        self.map_polys(|p| p.scale_coeff(k))
    }

    /// Apply `f` to every coefficient (results stay in the same universe).
    pub fn map_polys(&self, f: impl Fn(&GradedPoly<C>) -> GradedPoly<C>) -> Self {
        let mut out = Self::zero(&self.ring, self.q_cap);
        for (e, p) in &self.coeffs {
            out.set(*e, f(p));
        }
        out
    }

    /// Multiply every coefficient by a polynomial.
    pub fn mul_poly(&self, p: &GradedPoly<C>) -> Self {
        self.map_polys(|c| c * p)
    }

    /// Cauchy product truncated at the shared q cap.
    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.mul_inner(other, None))
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.try_mul(other).expect("series mul")
    }

    /// Product keeping only root-degree `degree` in every coefficient.
    pub fn mul_at_degree(&self, other: &Self, degree: u32) -> Self {
        self.check(other).expect("series mul_at_degree");
        self.mul_inner(other, Some(degree))
    }

    fn mul_inner(&self, other: &Self, exact: Option<u32>) -> Self {
        let mut out = Self::zero(&self.ring, self.q_cap);
        for (ea, pa) in &self.coeffs {
            for (eb, pb) in &other.coeffs {
                let e = *ea + *eb;
                if e > self.q_cap {
                    break;
                }
                let prod = match exact {
                    Some(d) => pa.mul_at_degree(pb, d),
                    None => pa * pb,
                };
                out.add_at(e, &prod);
            }
        }
        out
    }

    /// Inverse of a series whose lowest term is an invertible q⁰ coefficient.
    pub fn invert(&self) -> Result<Self> {
        let a0 = self.coeff(QExp::ZERO);
        if self.coeffs.keys().next().is_some_and(|e| *e < QExp::ZERO) {
            return Err(SeriesError::Domain("invert of a series with negative q-exponents".into()));
        }
        let b0 = a0.invert()?;
        let rest: Vec<(QExp, &GradedPoly<C>)> = self.coeffs.iter().filter(|(e, _)| **e > QExp::ZERO).map(|(e, p)| (*e, p)).collect();
        let mut out = Self::zero(&self.ring, self.q_cap);
        out.set(QExp::ZERO, b0.clone());
        for step in 1..=self.q_cap.0 {
            let e = QExp(step);
            let mut acc = GradedPoly::zero(&self.ring);
            for (ea, pa) in &rest {
                if *ea > e {
                    break;
                }
                if let Some(pb) = out.coeffs.get(&(e - *ea)) {
                    acc.add_assign(&(*pa * pb));
                }
            }
            if !acc.is_zero() {
                out.set(e, (&acc * &b0).neg());
            }
        }
        Ok(out)
    }

    /// Integer power; negative powers go through `invert`.
    pub fn pow(&self, n: i64) -> Result<Self> {
        let base = if n < 0 { self.invert()? } else { self.clone() };
        let mut k = n.unsigned_abs();
        let mut out = Self::one(&self.ring, self.q_cap);
        let mut b = base;
        while k > 0 {
            if k & 1 == 1 {
                out = out.mul(&b);
            }
            k >>= 1;
            if k > 0 {
                b = b.mul(&b);
            }
        }
        Ok(out)
    }

    /// Multiply by q^e (exponents beyond the cap fall away).
    pub fn shift(&self, e: QExp) -> Self {
        let mut out = Self::zero(&self.ring, self.q_cap);
        for (k, p) in &self.coeffs {
            out.set(*k + e, p.clone());
        }
        out
    }

    /// Homogeneous root-degree `d` component of every coefficient.
    pub fn extract_root_degree(&self, d: u32) -> Self {
        self.map_polys(|p| p.extract_root_degree(d))
    }

    /// ζᵏ coefficient of every coefficient.
    pub fn zeta_coefficient(&self, k: u32) -> Self {
        self.map_polys(|p| p.zeta_coefficient(k))
    }

    /// Same series in a universe with a smaller or equal q cap.
    pub fn truncate(&self, q_cap: QExp) -> Self {
        let mut out = Self::zero(&self.ring, q_cap);
        for (e, p) in &self.coeffs {
            out.set(*e, p.clone());
        }
        out
    }

    /// Re-home into another variable universe (variables matched by name).
    pub fn embed(&self, target: &Arc<Ring>) -> Result<Self> {
        let mut out = Self::zero(target, self.q_cap);
        for (e, p) in &self.coeffs {
            out.set(*e, p.embed(target)?);
        }
        Ok(out)
    }

    /// Apply q^{1/2} ↦ −q^{1/2}; every exponent must be a multiple of 1/2.
    pub fn flip_half(&self) -> Result<Self> {
        let mut out = Self::zero(&self.ring, self.q_cap);
        for (e, p) in &self.coeffs {
            if e.0 % QExp::HALF.0 != 0 {
                return Err(SeriesError::Domain(format!("exponent {e} is not a half-integer multiple")));
            }
            let odd = (e.0 / QExp::HALF.0).rem_euclid(2) == 1;
            out.set(*e, if odd { p.neg() } else { p.clone() });
        }
        Ok(out)
    }

    /// First exponent that is not an integer, if any.
    pub fn non_integer_exponent(&self) -> Option<QExp> {
        self.coeffs.keys().copied().find(|e| !e.is_integer())
    }

    /// Bit mask of variables occurring in any coefficient.
    pub fn support(&self) -> u32 {
        self.coeffs.values().fold(0, |m, p| m | p.support())
    }

    /// Lowest nonzero exponent.
    pub fn order(&self) -> Option<QExp> {
        self.coeffs.keys().next().copied()
    }
}

/// Product of many factors, multiplying factors with equal variable support
/// first and then merging the groups from the smallest support upward. When
/// `final_degree` is set, the last merge keeps only that root-degree.
pub fn product<C: Coeff>(ring: &Arc<Ring>, q_cap: QExp, factors: Vec<QSeries<C>>, final_degree: Option<u32>) -> QSeries<C> {
    let mut groups: BTreeMap<u32, QSeries<C>> = BTreeMap::new();
    for f in factors {
        let mask = f.support();
        match groups.remove(&mask) {
            Some(g) => {
                groups.insert(mask, g.mul(&f));
            }
            None => {
                groups.insert(mask, f);
            }
        }
    }
    let mut ordered: Vec<(u32, QSeries<C>)> = groups.into_iter().collect();
    ordered.sort_by_key(|(m, _)| (m.count_ones(), *m));
    let n = ordered.len();
    let mut acc = QSeries::one(ring, q_cap);
    for (k, (_, g)) in ordered.into_iter().enumerate() {
        acc = match final_degree {
            Some(d) if k + 1 == n => acc.mul_at_degree(&g, d),
            _ => acc.mul(&g),
        };
    }
    if n == 0 {
        if let Some(d) = final_degree {
            acc = acc.extract_root_degree(d);
        }
    }
    acc
}

impl QSeries<Rational> {
    /// Numeric coefficient at `e` of a series over the scalar universe.
    pub fn rational_coeff(&self, e: QExp) -> Rational {
        self.coeffs.get(&e).map(|p| p.constant_term()).unwrap_or_else(<Rational as Zero>::zero)
    }
}

impl<C: Coeff> fmt::Display for QSeries<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0 + O(q^{})", self.q_cap);
        }
        for (n, (e, p)) in self.coeffs.iter().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({p})*q^{e}")?;
        }
        write!(f, " + O(q^>{})", self.q_cap)
    }
}
