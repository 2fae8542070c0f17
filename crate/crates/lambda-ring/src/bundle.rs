//! Virtual bundles as finite multisets of line elements.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Signed, Zero};
use series_core::{int, GradedPoly, Mono, Rational, Ring};

/// Rational-linear form in the variables of a ring, keyed by variable index.
pub type LinearForm = BTreeMap<usize, Rational>;

/// A line bundle given by its first Chern root.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct LineElement {
    root: LinearForm,
}

impl LineElement {
    pub fn trivial() -> Self {
        Self::default()
    }

    pub fn new(root: LinearForm) -> Self {
        let root = root.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        LineElement { root }
    }

    /// The line with root `coeff · v_index`.
    pub fn var(index: usize, coeff: Rational) -> Self {
        Self::new([(index, coeff)].into_iter().collect())
    }

    pub fn root(&self) -> &LinearForm {
        &self.root
    }

    pub fn is_trivial(&self) -> bool {
        self.root.is_empty()
    }

    pub fn dual(&self) -> Self {
        LineElement { root: self.root.iter().map(|(k, c)| (*k, -c)).collect() }
    }

    pub fn tensor(&self, other: &LineElement) -> Self {
        let mut root = self.root.clone();
        for (k, c) in &other.root {
            *root.entry(*k).or_insert_with(Rational::zero) += c;
        }
        Self::new(root)
    }

    /// The j-th tensor power.
    pub fn power(&self, j: i64) -> Self {
        let j = int(j);
        Self::new(self.root.iter().map(|(k, c)| (*k, c * &j)).collect())
    }

    /// e^{root} truncated to the caps of `ring`.
    pub fn ch(&self, ring: &Arc<Ring>) -> GradedPoly {
        exp_linear(ring, &self.root)
    }

    pub fn format(&self, ring: &Ring) -> String {
        if self.root.is_empty() {
            return "0".into();
        }
        let mut s = String::new();
        for (k, c) in &self.root {
            let name = &ring.vars()[*k].name;
            let neg = c.is_negative();
            let a = c.abs();
            if s.is_empty() {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { "-" } else { "+" });
            }
            if a.is_one() {
                s.push_str(name);
            } else if a.denom().is_one() {
                s.push_str(&format!("{a}{name}"));
            } else {
                s.push_str(&format!("{name}*{a}"));
            }
        }
        s
    }
}

/// e^{Σ aᵢvᵢ} expanded by direct multinomial enumeration.
pub fn exp_linear(ring: &Arc<Ring>, form: &LinearForm) -> GradedPoly {
    let vars: Vec<(usize, &Rational)> = form.iter().filter(|(_, c)| !c.is_zero()).map(|(k, c)| (*k, c)).collect();
    let mut terms: Vec<(Mono, Rational)> = Vec::new();
    let mut mono = Mono::one();
    expand(ring, &vars, 0, &mut mono, Rational::one(), &mut terms);
    GradedPoly::from_terms(ring, terms)
}

fn expand(ring: &Ring, vars: &[(usize, &Rational)], pos: usize, mono: &mut Mono, coeff: Rational, out: &mut Vec<(Mono, Rational)>) {
    if pos == vars.len() {
        out.push((*mono, coeff));
        return;
    }
    let (idx, a) = vars[pos];
    let mut c = coeff;
    let mut e: u8 = 0;
    loop {
        expand(ring, vars, pos + 1, mono, c.clone(), out);
        e += 1;
        mono.set(idx, e);
        if e == u8::MAX || !ring.within_caps(mono) {
            break;
        }
        c = c * a / int(e as i64);
    }
    mono.set(idx, 0);
}

/// Generalized binomial coefficient C(a, j) for integer a (negative allowed).
pub fn binomial(a: i64, j: u32) -> Rational {
    let mut r = Rational::one();
    for i in 0..j as i64 {
        r = r * int(a - i) / int(i + 1);
    }
    r
}

/// Formal Z-linear combination of line elements.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct VirtualBundle {
    lines: BTreeMap<LineElement, i64>,
}

impl VirtualBundle {
    pub fn zero() -> Self {
        Self::default()
    }

    /// n copies of the trivial line (n may be negative).
    pub fn trivial(n: i64) -> Self {
        Self::from_lines([(LineElement::trivial(), n)])
    }

    pub fn line(l: LineElement) -> Self {
        Self::from_lines([(l, 1)])
    }

    pub fn from_lines(lines: impl IntoIterator<Item = (LineElement, i64)>) -> Self {
        let mut v = Self::zero();
        for (l, m) in lines {
            v.add_line(l, m);
        }
        v
    }

    /// Complexification of a real bundle: lines ±rᵢ for each given root.
    pub fn real_pairs(roots: impl IntoIterator<Item = LineElement>) -> Self {
        let mut v = Self::zero();
        for r in roots {
            v.add_line(r.dual(), 1);
            v.add_line(r, 1);
        }
        v
    }

    pub fn add_line(&mut self, l: LineElement, m: i64) {
        if m == 0 {
            return;
        }
        let e = self.lines.entry(l.clone()).or_insert(0);
        *e += m;
        if *e == 0 {
            self.lines.remove(&l);
        }
    }

    pub fn lines(&self) -> &BTreeMap<LineElement, i64> {
        &self.lines
    }

    pub fn is_zero(&self) -> bool {
        self.lines.is_empty()
    }

    pub fn rank(&self) -> i64 {
        self.lines.values().sum()
    }

    /// True when every multiplicity is nonnegative.
    pub fn is_effective(&self) -> bool {
        self.lines.values().all(|m| *m > 0)
    }

    pub fn add(&self, other: &VirtualBundle) -> VirtualBundle {
        let mut v = self.clone();
        for (l, m) in &other.lines {
            v.add_line(l.clone(), *m);
        }
        v
    }

    pub fn sub(&self, other: &VirtualBundle) -> VirtualBundle {
        self.add(&other.scale(-1))
    }

    pub fn scale(&self, k: i64) -> VirtualBundle {
        Self::from_lines(self.lines.iter().map(|(l, m)| (l.clone(), m * k)))
    }

    pub fn tensor(&self, other: &VirtualBundle) -> VirtualBundle {
        let mut v = Self::zero();
        for (a, m) in &self.lines {
            for (b, n) in &other.lines {
                v.add_line(a.tensor(b), m * n);
            }
        }
        v
    }

    pub fn dual(&self) -> VirtualBundle {
        Self::from_lines(self.lines.iter().map(|(l, m)| (l.dual(), *m)))
    }

    /// V − rank(V).
    pub fn tilde(&self) -> VirtualBundle {
        self.sub(&Self::trivial(self.rank()))
    }

    /// Coefficients of tᵏ, k = 0..=n, in Λₜ(V).
    pub fn lambda_series(&self, n: u32) -> Vec<VirtualBundle> {
        self.power_series(n, |m, j| binomial(m, j))
    }

    /// Coefficients of tᵏ, k = 0..=n, in Sₜ(V).
    pub fn sym_series(&self, n: u32) -> Vec<VirtualBundle> {
        // Sₜ(L)^m = (1 − tL)^{−m}
        self.power_series(n, |m, j| {
            let b = binomial(-m, j);
            if j % 2 == 1 {
                -b
            } else {
                b
            }
        })
    }

    fn power_series(&self, n: u32, coeff: impl Fn(i64, u32) -> Rational) -> Vec<VirtualBundle> {
        let mut acc: Vec<VirtualBundle> = vec![VirtualBundle::zero(); n as usize + 1];
        acc[0] = VirtualBundle::trivial(1);
        for (l, m) in &self.lines {
            let factor: Vec<VirtualBundle> = (0..=n)
                .map(|j| {
                    let c = coeff(*m, j);
                    let c = c.to_integer().try_into().expect("binomial fits in i64");
                    VirtualBundle::from_lines([(l.power(j as i64), c)])
                })
                .collect();
            let mut next = vec![VirtualBundle::zero(); n as usize + 1];
            for (i, a) in acc.iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                for (j, b) in factor.iter().enumerate().take(n as usize + 1 - i) {
                    if !b.is_zero() {
                        next[i + j] = next[i + j].add(&a.tensor(b));
                    }
                }
            }
            acc = next;
        }
        acc
    }

    /// k-th exterior power.
    pub fn lambda(&self, k: u32) -> VirtualBundle {
        self.lambda_series(k).pop().expect("nonempty")
    }

    /// k-th symmetric power.
    pub fn sym(&self, k: u32) -> VirtualBundle {
        self.sym_series(k).pop().expect("nonempty")
    }

    /// Σ(−1)ᵏΛᵏV for an effective bundle.
    pub fn lambda_neg1(&self) -> VirtualBundle {
        assert!(self.is_effective(), "Λ₋₁ of a non-effective bundle is an infinite series");
        let r = self.rank().max(0) as u32;
        self.lambda_series(r)
            .iter()
            .enumerate()
            .fold(VirtualBundle::zero(), |acc, (k, b)| acc.add(&b.scale(if k % 2 == 0 { 1 } else { -1 })))
    }

    /// Chern character Σ m·e^{root}.
    pub fn ch(&self, ring: &Arc<Ring>) -> GradedPoly {
        let mut p = GradedPoly::zero(ring);
        for (l, m) in &self.lines {
            p.add_scaled(&l.ch(ring), &int(*m));
        }
        p
    }

    /// Same, with Scalar coefficients.
    pub fn ch_scalar<C: series_core::Coeff>(&self, ring: &Arc<Ring>) -> GradedPoly<C> {
        self.ch(ring).map_coeffs(|c| C::from_rational(c.clone()))
    }

    pub fn format(&self, ring: &Ring) -> String {
        if self.lines.is_empty() {
            return "0".into();
        }
        self.lines
            .iter()
            .map(|(l, m)| if *m == 1 { format!("[{}]", l.format(ring)) } else { format!("{m}[{}]", l.format(ring)) })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

impl fmt::Display for VirtualBundle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .lines
            .iter()
            .map(|(l, m)| {
                let r: Vec<String> = l.root.iter().map(|(k, c)| format!("{c}·v{k}")).collect();
                format!("{m}·[{}]", if r.is_empty() { "0".into() } else { r.join("+") })
            })
            .collect();
        write!(f, "{}", if parts.is_empty() { "0".into() } else { parts.join(" + ") })
    }
}
