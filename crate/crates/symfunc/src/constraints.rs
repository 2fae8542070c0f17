//! Constraint ideals as generator substitutions on the class basis.

use std::sync::Arc;

use series_core::{int, GradedPoly, Ring, ScalarForm};

use crate::basis::{ClassBasis, GroupKind};
use crate::error::{Result, SymError};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Constraint {
    /// c₁(G) = 0.
    C1Zero(String),
    /// p₁(T) = k·p₁(G).
    P1Equal { lhs: String, factor: i64, rhs: String },
    /// p₁(T) = 0.
    P1Zero(String),
}

impl Constraint {
    /// Parses `c1(W)=0`, `p1(T)=p1(W)`, `p1(T)=3p1(L)` and the like.
    pub fn parse(s: &str) -> Result<Self> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = || SymError::Domain(format!("unknown constraint '{s}'"));
        let (l, r) = t.split_once('=').ok_or_else(bad)?;
        let group = |x: &str, cls: &str| -> Option<String> {
            x.strip_prefix(cls)?.strip_prefix('(')?.strip_suffix(')').map(str::to_string)
        };
        if r == "0" {
            if let Some(g) = group(l, "p1") {
                return Ok(Constraint::P1Zero(g));
            }
            return group(l, "c1").map(Constraint::C1Zero).ok_or_else(bad);
        }
        let lhs = group(l, "p1").ok_or_else(bad)?;
        let split = r.find("p1(").ok_or_else(bad)?;
        let factor = if split == 0 { 1 } else { r[..split].trim_end_matches('*').parse::<i64>().map_err(|_| bad())? };
        let rhs = group(&r[split..], "p1").ok_or_else(bad)?;
        Ok(Constraint::P1Equal { lhs, factor, rhs })
    }
}

/// An ordered list of substitutions, c₁ ones first.
#[derive(Clone, Debug)]
pub struct ConstraintSet {
    ring: Arc<Ring>,
    /// (generator index, replacement) in application order.
    subs: Vec<(usize, GradedPoly)>,
}

impl ConstraintSet {
    pub fn new(basis: &ClassBasis, constraints: &[Constraint]) -> Result<Self> {
        let ring = basis.target().clone();
        let mut subs: Vec<(usize, GradedPoly)> = Vec::new();
        let gen = |name: &str| ring.var_index(name);
        let unknown = |g: &str| SymError::Domain(format!("constraint refers to unknown group {g}"));

        for c in constraints {
            if let Constraint::C1Zero(g) = c {
                let spec = basis.group(g).ok_or_else(|| unknown(g))?;
                match spec.kind {
                    // real groups have no first Chern class in this basis
                    GroupKind::Real => {}
                    _ => {
                        let i = gen(&spec.generator(1)).ok_or_else(|| unknown(g))?;
                        subs.push((i, GradedPoly::zero(&ring)));
                    }
                }
            }
        }
        let mut p1_subs = Vec::new();
        for c in constraints {
            let (lhs, p1_rhs) = match c {
                Constraint::P1Equal { lhs, factor, rhs } => {
                    let r = basis.group(rhs).ok_or_else(|| unknown(rhs))?;
                    (lhs, p1_of(&ring, r)?.scale(&int(*factor)))
                }
                Constraint::P1Zero(lhs) => (lhs, GradedPoly::zero(&ring)),
                Constraint::C1Zero(_) => continue,
            };
            {
                let l = basis.group(lhs).ok_or_else(|| unknown(lhs))?;
                let p1_rhs = apply(&p1_rhs, &subs)?;
                match l.kind {
                    GroupKind::Real => {
                        let i = gen(&l.generator(1)).ok_or_else(|| unknown(lhs))?;
                        p1_subs.push((i, p1_rhs));
                    }
                    GroupKind::Complex => {
                        // p₁ = e₁² − 2e₂, so e₂ ↦ (e₁² − p₁(rhs))/2
                        if l.vars.len() < 2 {
                            return Err(SymError::Domain(format!("group {lhs} is too small to carry p1")));
                        }
                        let e1 = GradedPoly::var(&ring, gen(&l.generator(1)).unwrap());
                        let e1sq = apply(&(&e1 * &e1), &subs)?;
                        let img = (&e1sq - &p1_rhs).scale(&series_core::rat(1, 2));
                        p1_subs.push((gen(&l.generator(2)).unwrap(), img));
                    }
                    GroupKind::Line => {
                        return Err(SymError::Domain(format!("p1 of the line group {lhs} cannot be eliminated")));
                    }
                }
            }
        }
        subs.extend(p1_subs);
        Ok(ConstraintSet { ring, subs })
    }

    pub fn parse(basis: &ClassBasis, constraints: &[impl AsRef<str>]) -> Result<Self> {
        let cs: Vec<Constraint> = constraints.iter().map(|s| Constraint::parse(s.as_ref())).collect::<Result<_>>()?;
        Self::new(basis, &cs)
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    /// Canonical representative modulo the constraint ideal.
    pub fn apply(&self, p: &GradedPoly) -> Result<GradedPoly> {
        apply(p, &self.subs)
    }

    pub fn apply_form(&self, f: &ScalarForm) -> Result<ScalarForm> {
        Ok(f.map(|p| apply(p, &self.subs).map_err(|e| series_core::SeriesError::Domain(e.to_string())))?)
    }
}

fn p1_of(ring: &Arc<Ring>, g: &crate::basis::GroupSpec) -> Result<GradedPoly> {
    let var = |k: usize| {
        ring.var_index(&g.generator(k)).map(|i| GradedPoly::var(ring, i)).ok_or_else(|| SymError::Domain(format!("missing generator {}", g.generator(k))))
    };
    Ok(match g.kind {
        GroupKind::Real => var(1)?,
        GroupKind::Line => {
            let u = var(1)?;
            &u * &u
        }
        GroupKind::Complex => {
            let e1 = var(1)?;
            let sq = &e1 * &e1;
            if g.vars.len() >= 2 {
                &sq - &var(2)?.scale(&int(2))
            } else {
                sq
            }
        }
    })
}

fn apply(p: &GradedPoly, subs: &[(usize, GradedPoly)]) -> Result<GradedPoly> {
    let ring = p.ring().clone();
    let mut cur = p.clone();
    for (i, img) in subs {
        if cur.support() & (1 << i) == 0 {
            continue;
        }
        let images: Vec<GradedPoly> = (0..ring.len()).map(|k| if k == *i { img.clone() } else { GradedPoly::var(&ring, k) }).collect();
        cur = cur.substitute(&ring, &images)?;
    }
    Ok(cur)
}
