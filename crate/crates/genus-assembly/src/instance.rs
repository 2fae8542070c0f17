//! Genus identifiers, instance parameters and the universes they induce.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use lambda_ring::{BundleContext, LineElement, VirtualBundle};
use series_core::{int, Ring, Var};
use symfunc::{ClassBasis, Constraint, ConstraintSet, GroupKind, GroupSpec};

use crate::error::{GenusError, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GenusId {
    Q,
    QTilde,
    QHat,
    Qc,
    QcStar,
    Ell,
    EllTilde,
    EllBar,
    Q1,
    Q2,
}

impl GenusId {
    pub const ALL: [GenusId; 10] = [
        GenusId::Q,
        GenusId::QTilde,
        GenusId::QHat,
        GenusId::Qc,
        GenusId::QcStar,
        GenusId::Ell,
        GenusId::EllTilde,
        GenusId::EllBar,
        GenusId::Q1,
        GenusId::Q2,
    ];

    pub fn name(self) -> &'static str {
        match self {
            GenusId::Q => "Q",
            GenusId::QTilde => "Qtilde",
            GenusId::QHat => "Qhat",
            GenusId::Qc => "Qc",
            GenusId::QcStar => "QcStar",
            GenusId::Ell => "Ell",
            GenusId::EllTilde => "EllTilde",
            GenusId::EllBar => "EllBar",
            GenusId::Q1 => "Q1",
            GenusId::Q2 => "Q2",
        }
    }

    pub fn is_spin(self) -> bool {
        matches!(self, GenusId::Q | GenusId::QTilde | GenusId::QHat | GenusId::Q1 | GenusId::Q2)
    }

    pub fn is_spinc(self) -> bool {
        matches!(self, GenusId::Qc | GenusId::QcStar)
    }

    pub fn is_ell(self) -> bool {
        matches!(self, GenusId::Ell | GenusId::EllTilde | GenusId::EllBar)
    }

    pub fn ell_kind(self) -> Option<lambda_ring::EllKind> {
        match self {
            GenusId::Ell => Some(lambda_ring::EllKind::Even),
            GenusId::EllTilde => Some(lambda_ring::EllKind::OddTilde),
            GenusId::EllBar => Some(lambda_ring::EllKind::OddBar),
            _ => None,
        }
    }

    /// Constraints under which the genus is modular.
    pub fn default_constraints(self) -> Vec<String> {
        let v: &[&str] = match self {
            GenusId::Qc => &["p1(T)=3p1(L)"],
            GenusId::QcStar => &["p1(T)=p1(L)"],
            GenusId::Ell => &["c1(W)=0", "c1(T)=0", "p1(T)=p1(W)"],
            GenusId::EllTilde | GenusId::EllBar => &["c1(W)=0", "p1(T)=p1(W)"],
            _ => &[],
        };
        v.iter().map(|s| s.to_string()).collect()
    }
}

impl fmt::Display for GenusId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for GenusId {
    type Err = GenusError;

    fn from_str(s: &str) -> Result<Self> {
        let g = match s {
            "Q" => GenusId::Q,
            "Qtilde" | "Q~" | "Q̃" | "QTilde" => GenusId::QTilde,
            "Qhat" | "Q^" | "Q̂" | "QHat" => GenusId::QHat,
            "Qc" => GenusId::Qc,
            "QcStar" | "Qc*" | "Qcstar" => GenusId::QcStar,
            "Ell" => GenusId::Ell,
            "EllTilde" | "Ell~" | "Elltilde" => GenusId::EllTilde,
            "EllBar" | "Ellbar" => GenusId::EllBar,
            "Q1" | "Q₁" => GenusId::Q1,
            "Q2" | "Q₂" => GenusId::Q2,
            _ => return Err(GenusError::Config(format!("unknown genus '{s}'"))),
        };
        Ok(g)
    }
}

/// One geometric instance of a genus.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GenusInstance {
    pub genus: GenusId,
    pub fiber_dim: u32,
    /// Rank of W (elliptic genera).
    pub l: u32,
    /// Degree index j (higher-degree genera).
    pub j: u32,
    /// Overrides the number of symbolic tangent roots.
    pub symbolic: Option<u32>,
    pub zeta_cap: u32,
}

impl GenusInstance {
    pub fn new(genus: GenusId, fiber_dim: u32) -> Self {
        GenusInstance { genus, fiber_dim, l: 0, j: 0, symbolic: None, zeta_cap: 0 }
    }

    pub fn with_l(mut self, l: u32) -> Self {
        self.l = l;
        self
    }

    pub fn with_j(mut self, j: u32) -> Self {
        self.j = j;
        self
    }

    pub fn with_zeta_cap(mut self, z: u32) -> Self {
        self.zeta_cap = z;
        self
    }

    pub fn with_symbolic(mut self, m: u32) -> Self {
        self.symbolic = Some(m);
        self
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.fiber_dim;
        let bad = |why: &str| Err(GenusError::Config(format!("{} at fiber dimension {n}: {why}", self.genus)));
        match self.genus {
            GenusId::Q if n % 4 != 2 => bad("dimension must be 4k-2"),
            GenusId::QTilde if n % 4 != 1 => bad("dimension must be 4k-3"),
            GenusId::QHat if n % 4 != 3 => bad("dimension must be 4k-1"),
            GenusId::Qc | GenusId::QcStar if n < 5 || n % 4 == 0 => bad("dimension must be 4k-3, 4k-2 or 4k-1 with k >= 2"),
            GenusId::Ell if n % 2 != 0 || n < 2 => bad("dimension must be 2d-2"),
            GenusId::EllTilde | GenusId::EllBar if n % 2 != 1 => bad("dimension must be odd"),
            GenusId::Q1 if n % 2 != 0 || (n / 2 + self.j) % 2 != 0 => bad("dimension must be 2r with r+j even"),
            GenusId::Q2 if n % 2 != 1 || (n / 2 + self.j) % 2 != 0 => bad("dimension must be 2r+1 with r+j even"),
            _ if self.genus.is_ell() && self.zeta_cap > 6 => bad("zeta cap above 6"),
            _ => Ok(()),
        }?;
        if let Some(m) = self.symbolic {
            if m > self.pairs() {
                return bad("more symbolic roots than root pairs");
            }
        }
        Ok(())
    }

    /// k for the spin and spin^c families.
    pub fn k(&self) -> u32 {
        (self.fiber_dim + 3) / 4
    }

    /// d for the elliptic genera.
    pub fn d(&self) -> u32 {
        match self.genus {
            GenusId::Ell => (self.fiber_dim + 2) / 2,
            GenusId::EllTilde => (self.fiber_dim + 3) / 2,
            GenusId::EllBar => (self.fiber_dim + 1) / 2,
            _ => 0,
        }
    }

    /// r for the higher-degree genera.
    pub fn r(&self) -> u32 {
        self.fiber_dim / 2
    }

    /// Number of tangent root pairs (complex roots for the even elliptic genus).
    pub fn pairs(&self) -> u32 {
        match self.genus {
            GenusId::Ell => self.d() - 1,
            GenusId::EllTilde => self.d() - 2,
            GenusId::EllBar => self.d() - 1,
            _ => self.fiber_dim / 2,
        }
    }

    /// Root-degree of the extracted component (half the cohomological degree).
    pub fn extract_degree(&self) -> u32 {
        match self.genus {
            GenusId::Q | GenusId::QTilde | GenusId::QHat | GenusId::Qc => 2 * self.k(),
            GenusId::QcStar => 2 * self.k() + 1,
            GenusId::Ell | GenusId::EllTilde | GenusId::EllBar => self.d(),
            GenusId::Q1 | GenusId::Q2 => self.r() + self.j,
        }
    }

    /// Modular weight of the genus (of a₀ for elliptic genera).
    pub fn weight(&self) -> i64 {
        match self.genus {
            GenusId::Q | GenusId::QTilde | GenusId::QHat | GenusId::Qc | GenusId::QcStar => 2 * self.k() as i64,
            GenusId::Ell | GenusId::EllTilde | GenusId::EllBar => self.d() as i64 - self.l as i64,
            GenusId::Q1 | GenusId::Q2 => (self.r() + self.j) as i64,
        }
    }

    /// Symbolic tangent roots: enough to make the class basis faithful.
    pub fn symbolic_roots(&self) -> u32 {
        if let Some(m) = self.symbolic {
            return m;
        }
        let deg = self.extract_degree();
        // Pontryagin monomials of root-degree ≤ deg involve at most deg/2 distinct p_k
        self.pairs().min(deg / 2)
    }

    pub fn ring(&self) -> Result<Arc<Ring>> {
        self.validate()?;
        let mut vars: Vec<Var> = (1..=self.symbolic_roots()).map(|i| Var::root(format!("x{i}"), "T")).collect();
        if self.genus.is_ell() {
            vars.extend((1..=self.l).map(|i| Var::root(format!("w{i}"), "W")));
            vars.push(Var::zeta());
        }
        if self.genus.is_spinc() {
            vars.push(Var::root("u", "L"));
        }
        let z = if self.genus.is_ell() { self.zeta_cap } else { 0 };
        Ok(Ring::new(vars, self.extract_degree(), z)?)
    }

    pub fn t_roots(&self, ring: &Ring) -> Vec<usize> {
        ring.group_indices("T")
    }

    pub fn context(&self, ring: &Arc<Ring>) -> BundleContext {
        let mut ctx = BundleContext::new(ring);
        let xs: Vec<LineElement> = self.t_roots(ring).into_iter().map(|i| LineElement::var(i, int(1))).collect();
        let m = xs.len() as i64;
        match self.genus {
            GenusId::Ell => {
                ctx.t10 = VirtualBundle::from_lines(xs.iter().map(|x| (x.clone(), 1))).add(&VirtualBundle::trivial(self.pairs() as i64 - m));
                ctx.t_c = ctx.t10.add(&ctx.t10.dual());
            }
            _ => {
                let rank = match self.genus {
                    GenusId::EllTilde => 2 * self.d() as i64 - 3,
                    GenusId::EllBar => 2 * self.d() as i64 - 1,
                    _ => self.fiber_dim as i64,
                };
                ctx.t_c = VirtualBundle::real_pairs(xs).add(&VirtualBundle::trivial(rank - 2 * m));
            }
        }
        if self.genus.is_ell() {
            ctx.w = VirtualBundle::from_lines(ring.group_indices("W").into_iter().map(|i| (LineElement::var(i, int(1)), 1)));
            ctx.d = self.d() as i64;
            ctx.l = self.l as i64;
        }
        if self.genus.is_spinc() {
            let u = ring.var_index("u").expect("u");
            ctx.l_c = VirtualBundle::real_pairs([LineElement::var(u, int(1))]);
        }
        ctx
    }

    pub fn class_basis(&self, ring: &Arc<Ring>) -> Result<ClassBasis> {
        let names = |g: &str| ring.group_indices(g).into_iter().map(|i| ring.vars()[i].name.clone()).collect::<Vec<_>>();
        let mut groups = Vec::new();
        let t = names("T");
        if !t.is_empty() {
            groups.push(GroupSpec::new("T", GroupKind::Real, t));
        }
        let w = names("W");
        if !w.is_empty() {
            groups.push(GroupSpec::new("W", GroupKind::Complex, w));
        }
        if self.genus.is_spinc() {
            groups.push(GroupSpec::new("L", GroupKind::Line, ["u"]));
        }
        Ok(ClassBasis::new(ring, groups)?)
    }

    /// Constraint set over the class basis. Classes of an absent (rank-zero)
    /// group vanish: c₁ constraints on it are dropped and p₁ of it is zero.
    pub fn constraints(&self, basis: &ClassBasis, constraints: &[String]) -> Result<ConstraintSet> {
        let mut parsed = Vec::new();
        for c in constraints {
            match Constraint::parse(c)? {
                Constraint::C1Zero(g) if basis.group(&g).is_none() => {}
                Constraint::P1Equal { lhs, rhs, .. } if basis.group(&rhs).is_none() => parsed.push(Constraint::P1Zero(lhs)),
                Constraint::P1Equal { lhs, .. } | Constraint::P1Zero(lhs) if basis.group(&lhs).is_none() => {}
                other => parsed.push(other),
            }
        }
        Ok(ConstraintSet::new(basis, &parsed)?)
    }
}
