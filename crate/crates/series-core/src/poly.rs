//! Truncated multivariate polynomials over a fixed variable universe.
//!
//! Every variable carries a root-degree weight: formal roots have weight 1,
//! characteristic-class generators weight `k` (Chern `e_k`) or `2k`
//! (Pontryagin `p_k`), and the elliptic parameter ζ weight 0 with its own cap.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use rustc_hash::FxHashMap;

use crate::error::{Result, SeriesError};
use crate::scalar::{int, Coeff, Rational};

/// Maximum number of variables in one universe.
pub const MAX_VARS: usize = 16;

/// A named generator of a polynomial ring.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Var {
    pub name: String,
    /// Group tag, e.g. `T`, `W`, `L` for roots or the owning group of a class generator.
    pub group: String,
    /// Contribution to root-degree (cohomological degree is twice this).
    pub weight: u8,
    /// True for the ζ variable, whose degree is capped separately.
    pub zeta: bool,
}

impl Var {
    pub fn root(name: impl Into<String>, group: impl Into<String>) -> Self {
        Var { name: name.into(), group: group.into(), weight: 1, zeta: false }
    }

    pub fn zeta() -> Self {
        Var { name: "zeta".into(), group: "zeta".into(), weight: 0, zeta: true }
    }

    pub fn generator(name: impl Into<String>, group: impl Into<String>, weight: u8) -> Self {
        Var { name: name.into(), group: group.into(), weight, zeta: false }
    }
}

/// Variable universe plus truncation caps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ring {
    vars: Vec<Var>,
    degree_cap: u32,
    zeta_cap: u32,
    weights: [u8; MAX_VARS],
    zeta_idx: Option<usize>,
}

impl Ring {
    pub fn new(vars: Vec<Var>, degree_cap: u32, zeta_cap: u32) -> Result<Arc<Ring>> {
        if vars.len() > MAX_VARS {
            return Err(SeriesError::Config(format!("{} variables exceed the limit of {MAX_VARS}", vars.len())));
        }
        let mut weights = [0u8; MAX_VARS];
        let mut zeta_idx = None;
        for (i, v) in vars.iter().enumerate() {
            if vars[..i].iter().any(|w| w.name == v.name) {
                return Err(SeriesError::Config(format!("duplicate variable {}", v.name)));
            }
            if v.zeta {
                if zeta_idx.is_some() {
                    return Err(SeriesError::Config("more than one zeta variable".into()));
                }
                zeta_idx = Some(i);
            } else if v.weight == 0 {
                return Err(SeriesError::Config(format!("variable {} has weight 0", v.name)));
            }
            weights[i] = v.weight;
        }
        Ok(Arc::new(Ring { vars, degree_cap, zeta_cap, weights, zeta_idx }))
    }

    /// The universe with no variables, used for purely numerical q-series.
    pub fn scalar() -> Arc<Ring> {
        Ring::new(Vec::new(), 0, 0).expect("empty ring")
    }

    pub fn vars(&self) -> &[Var] {
        &self.vars
    }

    pub fn len(&self) -> usize {
        self.vars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vars.is_empty()
    }

    pub fn degree_cap(&self) -> u32 {
        self.degree_cap
    }

    pub fn zeta_cap(&self) -> u32 {
        self.zeta_cap
    }

    pub fn zeta_index(&self) -> Option<usize> {
        self.zeta_idx
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v.name == name)
    }

    /// Indices of all variables in a group, in declaration order.
    pub fn group_indices(&self, group: &str) -> Vec<usize> {
        self.vars.iter().enumerate().filter(|(_, v)| v.group == group).map(|(i, _)| i).collect()
    }

    pub fn with_caps(&self, degree_cap: u32, zeta_cap: u32) -> Arc<Ring> {
        Arc::new(Ring { degree_cap, zeta_cap, ..self.clone() })
    }

    #[inline]
    pub fn root_degree(&self, m: &Mono) -> u32 {
        let mut d = 0u32;
        for i in 0..self.vars.len() {
            d += self.weights[i] as u32 * m.0[i] as u32;
        }
        d
    }

    #[inline]
    pub fn zeta_degree(&self, m: &Mono) -> u32 {
        self.zeta_idx.map_or(0, |i| m.0[i] as u32)
    }

    #[inline]
    pub fn within_caps(&self, m: &Mono) -> bool {
        self.root_degree(m) <= self.degree_cap && self.zeta_degree(m) <= self.zeta_cap
    }

    fn same(a: &Arc<Ring>, b: &Arc<Ring>) -> bool {
        Arc::ptr_eq(a, b) || **a == **b
    }
}

/// Exponent vector.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mono(pub [u8; MAX_VARS]);

impl Mono {
    pub fn one() -> Self {
        Mono([0; MAX_VARS])
    }

    pub fn var(i: usize) -> Self {
        let mut m = Mono::one();
        m.0[i] = 1;
        m
    }

    pub fn from_exps(exps: &[u8]) -> Self {
        let mut m = Mono::one();
        m.0[..exps.len()].copy_from_slice(exps);
        m
    }

    #[inline]
    pub fn mul(&self, other: &Mono) -> Mono {
        let mut out = *self;
        for i in 0..MAX_VARS {
            out.0[i] += other.0[i];
        }
        out
    }

    pub fn get(&self, i: usize) -> u8 {
        self.0[i]
    }

    pub fn set(&mut self, i: usize, e: u8) {
        self.0[i] = e;
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }
}

/// Truncated polynomial with coefficients in `C`.
#[derive(Clone, Debug)]
pub struct GradedPoly<C: Coeff = Rational> {
    ring: Arc<Ring>,
    terms: BTreeMap<Mono, C>,
}

impl<C: Coeff> PartialEq for GradedPoly<C> {
    fn eq(&self, other: &Self) -> bool {
        Ring::same(&self.ring, &other.ring) && self.terms == other.terms
    }
}

impl<C: Coeff> GradedPoly<C> {
    pub fn zero(ring: &Arc<Ring>) -> Self {
        GradedPoly { ring: ring.clone(), terms: BTreeMap::new() }
    }

    pub fn one(ring: &Arc<Ring>) -> Self {
        Self::constant(ring, C::one())
    }

    pub fn constant(ring: &Arc<Ring>, c: C) -> Self {
        Self::monomial(ring, Mono::one(), c)
    }

    /// The single variable with index `i`.
    pub fn var(ring: &Arc<Ring>, i: usize) -> Self {
        assert!(i < ring.len(), "variable index {i} out of range");
        Self::monomial(ring, Mono::var(i), C::one())
    }

    pub fn monomial(ring: &Arc<Ring>, m: Mono, c: C) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() && ring.within_caps(&m) {
            terms.insert(m, c);
        }
        GradedPoly { ring: ring.clone(), terms }
    }

    /// Build from terms, summing duplicates and dropping zeros and over-cap terms.
    pub fn from_terms(ring: &Arc<Ring>, terms: impl IntoIterator<Item = (Mono, C)>) -> Self {
        let mut out = BTreeMap::<Mono, C>::new();
        for (m, c) in terms {
            if !ring.within_caps(&m) {
                continue;
            }
            match out.get_mut(&m) {
                Some(x) => x.add_assign_ref(&c),
                None => {
                    out.insert(m, c);
                }
            }
        }
        out.retain(|_, c| !c.is_zero());
        GradedPoly { ring: ring.clone(), terms: out }
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn terms(&self) -> &BTreeMap<Mono, C> {
        &self.terms
    }

    pub fn into_terms(self) -> BTreeMap<Mono, C> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Mono) -> C {
        self.terms.get(m).cloned().unwrap_or_else(C::zero)
    }

    pub fn constant_term(&self) -> C {
        self.coeff(&Mono::one())
    }

    pub fn check_universe(&self, other: &Self) -> Result<()> {
        if Ring::same(&self.ring, &other.ring) {
            Ok(())
        } else {
            Err(SeriesError::Config("operands have different variable universes or caps".into()))
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_universe(other)?;
        let mut out = self.clone();
        out.add_assign(other);
        Ok(out)
    }

    /// In-place sum; panics on mismatched universes.
    pub fn add_assign(&mut self, other: &Self) {
        self.check_universe(other).expect("poly add");
        for (m, c) in &other.terms {
            add_term(&mut self.terms, *m, c);
        }
    }

    /// In-place `self += r·other`.
    pub fn add_scaled(&mut self, other: &Self, r: &Rational) {
        self.check_universe(other).expect("poly add_scaled");
        for (m, c) in &other.terms {
            add_term(&mut self.terms, *m, &c.scale(r));
        }
    }

    pub fn neg(&self) -> Self {
        GradedPoly { ring: self.ring.clone(), terms: self.terms.iter().map(|(m, c)| (*m, c.neg_ref())).collect() }
    }

    pub fn scale(&self, r: &Rational) -> Self {
        if num_traits::Zero::is_zero(r) {
            return Self::zero(&self.ring);
        }
        GradedPoly { ring: self.ring.clone(), terms: self.terms.iter().map(|(m, c)| (*m, c.scale(r))).collect() }
    }

    pub fn scale_coeff(&self, k: &C) -> Self {
        let terms = self.terms.iter().map(|(m, c)| (*m, c.mul_ref(k))).filter(|(_, c)| !c.is_zero()).collect();
        GradedPoly { ring: self.ring.clone(), terms }
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_universe(other)?;
        Ok(self.mul_unchecked(other, None))
    }

    /// Product keeping only terms of root-degree exactly `degree`.
    pub fn mul_at_degree(&self, other: &Self, degree: u32) -> Self {
        self.check_universe(other).expect("poly mul_at_degree");
        self.mul_unchecked(other, Some(degree))
    }

    fn mul_unchecked(&self, other: &Self, exact: Option<u32>) -> Self {
        let ring = &self.ring;
        if self.is_zero() || other.is_zero() {
            return Self::zero(ring);
        }
        let cap = ring.degree_cap;
        let zcap = ring.zeta_cap;
        let mut b: Vec<(u32, u32, &Mono, &C)> =
            other.terms.iter().map(|(m, c)| (ring.root_degree(m), ring.zeta_degree(m), m, c)).collect();
        b.sort_by_key(|x| x.0);
        let mut acc: FxHashMap<Mono, C> = FxHashMap::default();
        for (ma, ca) in &self.terms {
            let da = ring.root_degree(ma);
            let za = ring.zeta_degree(ma);
            for (db, zb, mb, cb) in &b {
                let d = da + db;
                if d > cap {
                    break;
                }
                if let Some(e) = exact {
                    if d < e {
                        continue;
                    }
                    if d > e {
                        break;
                    }
                }
                if za + zb > zcap {
                    continue;
                }
                let m = ma.mul(mb);
                let p = ca.mul_ref(cb);
                match acc.get_mut(&m) {
                    Some(x) => x.add_assign_ref(&p),
                    None => {
                        acc.insert(m, p);
                    }
                }
            }
        }
        let terms = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        GradedPoly { ring: ring.clone(), terms }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut out = Self::one(&self.ring);
        let mut base = self.clone();
        let mut k = n;
        while k > 0 {
            if k & 1 == 1 {
                out = &out * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        out
    }

    /// `Σ aᵏ/k!`, truncated; requires a zero constant term.
    pub fn exp(&self) -> Result<Self> {
        if !self.constant_term().is_zero() {
            return Err(SeriesError::Domain("exp of a polynomial with nonzero constant term".into()));
        }
        let mut out = Self::one(&self.ring);
        let mut power = Self::one(&self.ring);
        let mut k = 0i64;
        loop {
            k += 1;
            power = (&power * self).scale(&crate::scalar::rat(1, k));
            if power.is_zero() {
                break;
            }
            out.add_assign(&power);
        }
        Ok(out)
    }

    /// Multiplicative inverse up to the caps; requires an invertible constant term.
    pub fn invert(&self) -> Result<Self> {
        let c0 = self.constant_term();
        let inv0 = c0
            .inverse()
            .ok_or_else(|| SeriesError::Domain("invert of a polynomial whose constant term is not invertible".into()))?;
        let mut nil = self.clone();
        nil.terms.remove(&Mono::one());
        // a = c0 (1 + n), n = nil / c0;  a⁻¹ = c0⁻¹ Σ (−n)ᵏ
        let step = nil.scale_coeff(&inv0).neg();
        let mut out = Self::one(&self.ring);
        let mut power = Self::one(&self.ring);
        loop {
            power = &power * &step;
            if power.is_zero() {
                break;
            }
            out.add_assign(&power);
        }
        Ok(out.scale_coeff(&inv0))
    }

    /// Homogeneous component of root-degree `d`.
    pub fn extract_root_degree(&self, d: u32) -> Self {
        let terms = self.terms.iter().filter(|(m, _)| self.ring.root_degree(m) == d).map(|(m, c)| (*m, c.clone())).collect();
        GradedPoly { ring: self.ring.clone(), terms }
    }

    /// Component of ζ-degree `k`, with ζ removed from the monomials.
    pub fn zeta_coefficient(&self, k: u32) -> Self {
        let Some(z) = self.ring.zeta_idx else {
            return if k == 0 { self.clone() } else { Self::zero(&self.ring) };
        };
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.0[z] as u32 == k)
            .map(|(m, c)| {
                let mut m2 = *m;
                m2.0[z] = 0;
                (m2, c.clone())
            })
            .collect();
        GradedPoly { ring: self.ring.clone(), terms }
    }

    pub fn max_root_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| self.ring.root_degree(m)).max()
    }

    pub fn is_homogeneous(&self, d: u32) -> bool {
        self.terms.keys().all(|m| self.ring.root_degree(m) == d)
    }

    /// Variables (by index) that occur in some term.
    pub fn support(&self) -> u32 {
        let mut mask = 0u32;
        for m in self.terms.keys() {
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    mask |= 1 << i;
                }
            }
        }
        mask
    }

    /// Re-home into another universe, mapping variables by name.
    pub fn embed(&self, target: &Arc<Ring>) -> Result<Self> {
        let map = var_map(&self.ring, target)?;
        let terms = self.terms.iter().map(|(m, c)| {
            let mut out = Mono::one();
            for (i, &e) in m.0.iter().enumerate().take(self.ring.len()) {
                if e > 0 {
                    out.0[map[i]] = e;
                }
            }
            (out, c.clone())
        });
        Ok(Self::from_terms(target, terms))
    }

    /// Substitute `images[i]` for variable `i`; all images must share one universe.
    pub fn substitute(&self, target: &Arc<Ring>, images: &[GradedPoly<C>]) -> Result<GradedPoly<C>> {
        if images.len() != self.ring.len() {
            return Err(SeriesError::Config("substitution needs one image per variable".into()));
        }
        for img in images {
            if !Ring::same(img.ring(), target) {
                return Err(SeriesError::Config("substitution images must live in the target universe".into()));
            }
        }
        let mut powers: Vec<Vec<GradedPoly<C>>> = images.iter().map(|p| vec![GradedPoly::one(target), p.clone()]).collect();
        let mut out = GradedPoly::zero(target);
        for (m, c) in &self.terms {
            let mut t = GradedPoly::constant(target, c.clone());
            for i in 0..self.ring.len() {
                let e = m.0[i] as usize;
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e {
                    let next = &powers[i][powers[i].len() - 1] * &powers[i][1];
                    powers[i].push(next);
                }
                t = &t * &powers[i][e];
                if t.is_zero() {
                    break;
                }
            }
            out.add_assign(&t);
        }
        Ok(out)
    }

    pub fn map_coeffs<D: Coeff>(&self, f: impl Fn(&C) -> D) -> GradedPoly<D> {
        let terms = self.terms.iter().map(|(m, c)| (*m, f(c))).filter(|(_, c)| !c.is_zero()).collect();
        GradedPoly { ring: self.ring.clone(), terms }
    }

    /// Lowest term in (root-degree, exponent) order, used as a residual witness.
    pub fn first_term(&self) -> Option<(Mono, C)> {
        self.terms
            .iter()
            .min_by_key(|(m, _)| (self.ring.root_degree(m), **m))
            .map(|(m, c)| (*m, c.clone()))
    }

    pub fn format_mono(&self, m: &Mono) -> String {
        format_mono(&self.ring, m)
    }
}

/// Index map from `src` variables to `dst` variables by name.
pub fn var_map(src: &Ring, dst: &Ring) -> Result<Vec<usize>> {
    src.vars
        .iter()
        .map(|v| {
            dst.var_index(&v.name)
                .ok_or_else(|| SeriesError::Config(format!("variable {} missing from target universe", v.name)))
        })
        .collect()
}

fn add_term<C: Coeff>(terms: &mut BTreeMap<Mono, C>, m: Mono, c: &C) {
    if c.is_zero() {
        return;
    }
    match terms.get_mut(&m) {
        Some(x) => {
            x.add_assign_ref(c);
            if x.is_zero() {
                terms.remove(&m);
            }
        }
        None => {
            terms.insert(m, c.clone());
        }
    }
}

pub fn format_mono(ring: &Ring, m: &Mono) -> String {
    let mut parts = Vec::new();
    for (i, v) in ring.vars.iter().enumerate() {
        match m.0[i] {
            0 => {}
            1 => parts.push(v.name.clone()),
            e => parts.push(format!("{}^{e}", v.name)),
        }
    }
    parts.join("*")
}

impl<C: Coeff> fmt::Display for GradedPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut keys: Vec<&Mono> = self.terms.keys().collect();
        keys.sort_by_key(|m| (self.ring.root_degree(m), std::cmp::Reverse(**m)));
        for (n, m) in keys.into_iter().enumerate() {
            let c = &self.terms[m];
            let cs = c.to_string();
            let needs_paren = cs.contains(" + ") || cs.contains(" - ");
            let cs = if needs_paren { format!("({cs})") } else { cs };
            if n > 0 {
                write!(f, " + ")?;
            }
            if m.is_one() {
                write!(f, "{cs}")?;
            } else if cs == "1" {
                write!(f, "{}", format_mono(&self.ring, m))?;
            } else {
                write!(f, "{cs}*{}", format_mono(&self.ring, m))?;
            }
        }
        Ok(())
    }
}

impl<C: Coeff> Add for &GradedPoly<C> {
    type Output = GradedPoly<C>;
    fn add(self, rhs: Self) -> GradedPoly<C> {
        let mut out = self.clone();
        out.add_assign(rhs);
        out
    }
}

impl<C: Coeff> Sub for &GradedPoly<C> {
    type Output = GradedPoly<C>;
    fn sub(self, rhs: Self) -> GradedPoly<C> {
        let mut out = self.clone();
        out.add_assign(&rhs.neg());
        out
    }
}

impl<C: Coeff> Neg for &GradedPoly<C> {
    type Output = GradedPoly<C>;
    fn neg(self) -> GradedPoly<C> {
        GradedPoly::neg(self)
    }
}

impl<C: Coeff> Mul for &GradedPoly<C> {
    type Output = GradedPoly<C>;
    /// Truncated product. Panics on mismatched universes; use `try_mul` to get an error instead.
    fn mul(self, rhs: Self) -> GradedPoly<C> {
        self.try_mul(rhs).expect("poly mul")
    }
}

/// Convenience: the rational constant `n` in `ring`.
pub fn const_int(ring: &Arc<Ring>, n: i64) -> GradedPoly<Rational> {
    GradedPoly::constant(ring, int(n))
}
