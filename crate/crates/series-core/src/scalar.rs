//! Exact coefficient fields.
//!
//! `Rational` is plain `BigRational`. `Scalar` is the Laurent-polynomial
//! extension Q(i)[π, π⁻¹]: a finite sum of rationals times units `π^k·iᵇ`
//! with `b ∈ {0, 1}`. No relation on π is ever applied.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::SeriesError;

/// Exact rational numbers.
pub type Rational = BigRational;

/// Rational from a pair of machine integers.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Rational from a machine integer.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parse `"a"` or `"a/b"` into a rational.
pub fn parse_rational(s: &str) -> Result<Rational, SeriesError> {
    let s = s.trim();
    let bad = || SeriesError::Parse(format!("not a rational: {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(n, d))
        }
        None => Ok(Rational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

/// Coefficient ring interface shared by `Rational` and `Scalar`.
pub trait Coeff: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn from_rational(r: Rational) -> Self;
    fn add_assign_ref(&mut self, other: &Self);
    fn mul_ref(&self, other: &Self) -> Self;
    fn neg_ref(&self) -> Self;
    fn scale(&self, r: &Rational) -> Self;
    /// Multiplicative inverse when it exists in the ring.
    fn inverse(&self) -> Option<Self>;

    fn sub_assign_ref(&mut self, other: &Self) {
        self.add_assign_ref(&other.neg_ref());
    }
}

impl Coeff for Rational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn from_rational(r: Rational) -> Self {
        r
    }
    fn add_assign_ref(&mut self, other: &Self) {
        *self += other;
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn scale(&self, r: &Rational) -> Self {
        self * r
    }
    fn inverse(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
    fn sub_assign_ref(&mut self, other: &Self) {
        *self -= other;
    }
}

/// A basis element `π^pi · i^(i as 0/1)` of Q(i)[π, π⁻¹] over Q.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Unit {
    pub pi: i32,
    pub i: bool,
}

impl Unit {
    pub const ONE: Unit = Unit { pi: 0, i: false };
    pub const I: Unit = Unit { pi: 0, i: true };

    pub fn new(pi: i32, i: bool) -> Self {
        Unit { pi, i }
    }

    /// Product of two units together with the sign produced by `i² = −1`.
    pub fn mul(self, other: Unit) -> (Unit, bool) {
        let negate = self.i && other.i;
        (Unit { pi: self.pi + other.pi, i: self.i ^ other.i }, negate)
    }

    /// Inverse unit and its sign (`1/i = −i`).
    pub fn inv(self) -> (Unit, bool) {
        (Unit { pi: -self.pi, i: self.i }, self.i)
    }
}

impl fmt::Display for Unit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.pi {
            0 => {}
            1 => parts.push("pi".to_string()),
            k => parts.push(format!("pi^{k}")),
        }
        if self.i {
            parts.push("i".to_string());
        }
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join("*"))
        }
    }
}

/// Element of Q(i)[π, π⁻¹], stored as rational coordinates on `Unit`s.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Scalar {
    terms: BTreeMap<Unit, Rational>,
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::default()
    }

    pub fn one() -> Self {
        Scalar::from_rational(int(1))
    }

    pub fn from_rational(r: Rational) -> Self {
        Scalar::monomial(r, Unit::ONE)
    }

    pub fn monomial(r: Rational, unit: Unit) -> Self {
        let mut terms = BTreeMap::new();
        if !Zero::is_zero(&r) {
            terms.insert(unit, r);
        }
        Scalar { terms }
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        Scalar::monomial(int(1), Unit::I)
    }

    /// `π^k`.
    pub fn pi_pow(k: i32) -> Self {
        Scalar::monomial(int(1), Unit::new(k, false))
    }

    /// `2πi`, the normalization constant of the formal roots.
    pub fn two_pi_i() -> Self {
        Scalar::monomial(int(2), Unit::new(1, true))
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Unit, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, unit: Unit) -> Rational {
        self.terms.get(&unit).cloned().unwrap_or_else(Zero::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The rational value when the scalar has no π or i content.
    pub fn as_rational(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Zero::zero()),
            1 => self.terms.get(&Unit::ONE).cloned(),
            _ => None,
        }
    }

    /// The single unit when the scalar is a monomial.
    pub fn as_monomial(&self) -> Option<(Rational, Unit)> {
        if self.terms.len() == 1 {
            let (u, r) = self.terms.iter().next().unwrap();
            Some((r.clone(), *u))
        } else {
            None
        }
    }

    fn add_term(&mut self, unit: Unit, r: &Rational) {
        if Zero::is_zero(r) {
            return;
        }
        let entry = self.terms.entry(unit).or_insert_with(Zero::zero);
        *entry += r;
        if Zero::is_zero(entry) {
            self.terms.remove(&unit);
        }
    }

    pub fn add(&self, other: &Scalar) -> Scalar {
        let mut out = self.clone();
        for (u, r) in &other.terms {
            out.add_term(*u, r);
        }
        out
    }

    pub fn sub(&self, other: &Scalar) -> Scalar {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Scalar {
        Scalar { terms: self.terms.iter().map(|(u, r)| (*u, -r)).collect() }
    }

    pub fn mul(&self, other: &Scalar) -> Scalar {
        let mut out = Scalar::zero();
        for (ua, ra) in &self.terms {
            for (ub, rb) in &other.terms {
                let (u, negate) = ua.mul(*ub);
                let p = ra * rb;
                out.add_term(u, &if negate { -p } else { p });
            }
        }
        out
    }

    pub fn scale(&self, r: &Rational) -> Scalar {
        if Zero::is_zero(r) {
            return Scalar::zero();
        }
        Scalar { terms: self.terms.iter().map(|(u, c)| (*u, c * r)).collect() }
    }

    pub fn pow(&self, n: u32) -> Scalar {
        let mut out = Scalar::one();
        for _ in 0..n {
            out = out.mul(self);
        }
        out
    }

    /// Inverse of a monomial; sums of several units are not invertible here.
    pub fn inverse(&self) -> Option<Scalar> {
        let (r, u) = self.as_monomial()?;
        let (ui, negate) = u.inv();
        let ri = r.recip();
        Some(Scalar::monomial(if negate { -ri } else { ri }, ui))
    }
}

impl Coeff for Scalar {
    fn zero() -> Self {
        Scalar::zero()
    }
    fn one() -> Self {
        Scalar::one()
    }
    fn is_zero(&self) -> bool {
        Scalar::is_zero(self)
    }
    fn from_rational(r: Rational) -> Self {
        Scalar::from_rational(r)
    }
    fn add_assign_ref(&mut self, other: &Self) {
        for (u, r) in &other.terms {
            self.add_term(*u, r);
        }
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self.mul(other)
    }
    fn neg_ref(&self) -> Self {
        self.neg()
    }
    fn scale(&self, r: &Rational) -> Self {
        Scalar::scale(self, r)
    }
    fn inverse(&self) -> Option<Self> {
        Scalar::inverse(self)
    }
}

impl From<Rational> for Scalar {
    fn from(r: Rational) -> Self {
        Scalar::from_rational(r)
    }
}

impl fmt::Display for Scalar {
    /// Format as `c*pi^k*i + …`; parsable by `FromStr`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (u, r) in &self.terms {
            let (sign, mag) = if r.is_negative() { ("-", -r) } else { ("+", r.clone()) };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            if *u == Unit::ONE {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{u}")?;
            } else {
                write!(f, "{mag}*{u}")?;
            }
        }
        Ok(())
    }
}

impl FromStr for Scalar {
    type Err = SeriesError;

    /// Accepts sums of monomials such as `240`, `-1/2*pi^-2`, `2*pi*i - 3`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.is_empty() {
            return Err(SeriesError::Parse("empty scalar".into()));
        }
        let mut out = Scalar::zero();
        let mut sign = 1i64;
        let mut rest = s;
        if let Some(r) = rest.strip_prefix('-') {
            sign = -1;
            rest = r.trim_start();
        }
        loop {
            let cut = rest.find(" + ").map(|p| (p, 1)).into_iter().chain(rest.find(" - ").map(|p| (p, -1))).min_by_key(|x| x.0);
            let (mono, next) = match cut {
                Some((p, s2)) => (&rest[..p], Some((s2, &rest[p + 3..]))),
                None => (rest, None),
            };
            out = out.add(&parse_monomial(mono)?.scale(&int(sign)));
            match next {
                Some((s2, r)) => {
                    sign = s2;
                    rest = r.trim_start();
                }
                None => break,
            }
        }
        Ok(out)
    }
}

fn parse_monomial(s: &str) -> Result<Scalar, SeriesError> {
    let mut coeff = int(1);
    let mut unit = Unit::ONE;
    for factor in s.split('*') {
        let factor = factor.trim();
        if factor == "i" {
            let (u, negate) = unit.mul(Unit::I);
            unit = u;
            if negate {
                coeff = -coeff;
            }
        } else if factor == "pi" {
            unit.pi += 1;
        } else if let Some(e) = factor.strip_prefix("pi^") {
            let k: i32 = e.trim_matches(|c| c == '(' || c == ')').parse().map_err(|_| SeriesError::Parse(format!("bad pi power in {s:?}")))?;
            unit.pi += k;
        } else {
            coeff *= parse_rational(factor.trim_matches(|c| c == '(' || c == ')'))?;
        }
    }
    Ok(Scalar::monomial(coeff, unit))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn iota_squared_is_minus_pi_squared() {
        let iota = Scalar::monomial(int(1), Unit::new(1, true));
        assert_eq!(iota.mul(&iota), Scalar::monomial(int(-1), Unit::new(2, false)));
    }

    #[test]
    fn monomial_inverse() {
        let x = Scalar::two_pi_i();
        assert_eq!(x.mul(&x.inverse().unwrap()), Scalar::one());
        let sum = Scalar::one().add(&Scalar::pi_pow(1));
        assert!(sum.inverse().is_none());
    }

    #[test]
    fn display_parse_round_trip() {
        for s in ["0", "240", "-1/2*pi^-2", "2*pi*i", "-3 + 1/8*pi^-3*i", "pi^2"] {
            let x: Scalar = s.parse().unwrap();
            let back: Scalar = x.to_string().parse().unwrap();
            assert_eq!(x, back, "{s}");
        }
        let x: Scalar = "i*i".parse().unwrap();
        assert_eq!(x, Scalar::from_rational(int(-1)));
    }
}
