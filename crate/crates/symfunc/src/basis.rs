//! Conversion between root polynomials and characteristic-class generators.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::Zero;
use series_core::{GradedPoly, Mono, Rational, Ring, ScalarForm, Var};

use crate::elementary::{check_symmetric, to_elementary};
use crate::error::{Result, SymError};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GroupKind {
    /// Chern roots of a complex bundle; generators e₁..eₙ.
    Complex,
    /// One root per ± pair of a real bundle; generators p₁..pₙ (elementary in the squares).
    Real,
    /// A single line; its root is kept as the generator.
    Line,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupSpec {
    pub name: String,
    pub kind: GroupKind,
    /// Root variable names in the source ring.
    pub vars: Vec<String>,
}

impl GroupSpec {
    pub fn new(name: impl Into<String>, kind: GroupKind, vars: impl IntoIterator<Item = impl Into<String>>) -> Self {
        GroupSpec { name: name.into(), kind, vars: vars.into_iter().map(Into::into).collect() }
    }

    /// Name of the k-th generator (k ≥ 1).
    pub fn generator(&self, k: usize) -> String {
        match self.kind {
            GroupKind::Complex => format!("e{k}({})", self.name),
            GroupKind::Real => format!("p{k}({})", self.name),
            GroupKind::Line => self.vars[0].clone(),
        }
    }

    fn generator_vars(&self) -> Vec<Var> {
        match self.kind {
            GroupKind::Complex => (1..=self.vars.len()).map(|k| Var::generator(self.generator(k), self.name.clone(), k as u8)).collect(),
            GroupKind::Real => (1..=self.vars.len()).map(|k| Var::generator(self.generator(k), self.name.clone(), 2 * k as u8)).collect(),
            GroupKind::Line => vec![Var::generator(self.generator(1), self.name.clone(), 1)],
        }
    }
}

/// The pair of universes (roots, classes) for one instance.
#[derive(Clone, Debug)]
pub struct ClassBasis {
    source: Arc<Ring>,
    target: Arc<Ring>,
    groups: Vec<GroupSpec>,
    /// Intermediate universes: stage i has groups < i converted.
    stages: Vec<Arc<Ring>>,
}

impl ClassBasis {
    pub fn new(source: &Arc<Ring>, groups: Vec<GroupSpec>) -> Result<Self> {
        for g in &groups {
            if g.vars.is_empty() || (g.kind == GroupKind::Line && g.vars.len() != 1) {
                return Err(SymError::Domain(format!("group {} has an invalid variable list", g.name)));
            }
            for v in &g.vars {
                if source.var_index(v).is_none() {
                    return Err(SymError::Domain(format!("group {} refers to unknown variable {v}", g.name)));
                }
            }
        }
        let mut stages = vec![source.clone()];
        for i in 0..groups.len() {
            let done = &groups[..=i];
            let mut vars: Vec<Var> = done.iter().flat_map(|g| g.generator_vars()).collect();
            for v in source.vars() {
                if !done.iter().any(|g| g.vars.contains(&v.name)) {
                    vars.push(v.clone());
                }
            }
            stages.push(Ring::new(vars, source.degree_cap(), source.zeta_cap())?);
        }
        let target = stages.last().unwrap().clone();
        Ok(ClassBasis { source: source.clone(), target, groups, stages })
    }

    pub fn source(&self) -> &Arc<Ring> {
        &self.source
    }

    pub fn target(&self) -> &Arc<Ring> {
        &self.target
    }

    pub fn groups(&self) -> &[GroupSpec] {
        &self.groups
    }

    pub fn group(&self, name: &str) -> Option<&GroupSpec> {
        self.groups.iter().find(|g| g.name == name)
    }

    /// Unique class-basis representation of a group-symmetric polynomial.
    pub fn to_class_basis(&self, p: &GradedPoly) -> Result<GradedPoly> {
        (p.ring().as_ref() == self.source.as_ref()).then_some(()).ok_or_else(|| SymError::Domain("polynomial is not over the source universe".into()))?;
        let mut cur = p.clone();
        for (i, g) in self.groups.iter().enumerate() {
            cur = convert_group(&cur, g, &self.stages[i + 1])?;
        }
        Ok(cur)
    }

    pub fn form_to_class_basis(&self, f: &ScalarForm) -> Result<ScalarForm> {
        let err = std::cell::RefCell::new(None);
        let out = f.map(|p| {
            self.to_class_basis(p).map_err(|e| {
                *err.borrow_mut() = Some(e.clone());
                series_core::SeriesError::Domain(e.to_string())
            })
        });
        match (out, err.into_inner()) {
            (Ok(f), _) => Ok(f),
            (Err(_), Some(e)) => Err(e),
            (Err(e), None) => Err(e.into()),
        }
    }

    /// Re-expands generators into roots.
    pub fn expand(&self, p: &GradedPoly) -> Result<GradedPoly> {
        let src = &self.source;
        let images: Vec<GradedPoly> = self
            .target
            .vars()
            .iter()
            .map(|v| self.generator_image(v).unwrap_or_else(|| GradedPoly::var(src, src.var_index(&v.name).expect("passthrough var"))))
            .collect();
        Ok(p.substitute(src, &images)?)
    }

    fn generator_image(&self, v: &Var) -> Option<GradedPoly> {
        let g = self.groups.iter().find(|g| g.name == v.group && g.kind != GroupKind::Line)?;
        let k = (1..=g.vars.len()).find(|k| g.generator(*k) == v.name)?;
        let src = &self.source;
        let roots: Vec<GradedPoly> = g
            .vars
            .iter()
            .map(|n| {
                let x = GradedPoly::var(src, src.var_index(n).unwrap());
                if g.kind == GroupKind::Real {
                    &x * &x
                } else {
                    x
                }
            })
            .collect();
        Some(elementary_poly(src, &roots, k))
    }
}

/// e_k of the given polynomials.
pub fn elementary_poly(ring: &Arc<Ring>, xs: &[GradedPoly], k: usize) -> GradedPoly {
    // e_j accumulated by adding one variable at a time
    let mut e: Vec<GradedPoly> = vec![GradedPoly::one(ring)];
    e.resize(k + 1, GradedPoly::zero(ring));
    for x in xs {
        for j in (1..=k).rev() {
            let add = &e[j - 1] * x;
            e[j].add_assign(&add);
        }
    }
    e.swap_remove(k)
}

fn convert_group(p: &GradedPoly, g: &GroupSpec, next: &Arc<Ring>) -> Result<GradedPoly> {
    let ring = p.ring();
    let idx: Vec<usize> = g.vars.iter().map(|n| ring.var_index(n).expect("group var")).collect();
    let n = idx.len();
    // passthrough variable positions in the next universe
    let map: Vec<Option<usize>> = (0..ring.len()).map(|i| if idx.contains(&i) { None } else { next.var_index(&ring.vars()[i].name) }).collect();
    let gen_idx: Vec<usize> = match g.kind {
        GroupKind::Line => vec![next.var_index(&g.generator(1)).unwrap()],
        _ => (1..=n).map(|k| next.var_index(&g.generator(k)).unwrap()).collect(),
    };

    let mut buckets: BTreeMap<Mono, BTreeMap<Vec<u8>, Rational>> = BTreeMap::new();
    for (m, c) in p.terms() {
        let mut other = *m;
        let mut a = Vec::with_capacity(n);
        for &i in &idx {
            a.push(m.get(i));
            other.set(i, 0);
        }
        buckets.entry(other).or_default().insert(a, c.clone());
    }

    let mut terms: Vec<(Mono, Rational)> = Vec::new();
    for (other, f) in buckets {
        let mut base = Mono::one();
        for (i, t) in map.iter().enumerate() {
            if let Some(t) = t {
                base.set(*t, other.get(i));
            }
        }
        let coords: BTreeMap<Vec<u32>, Rational> = match g.kind {
            GroupKind::Line => f.into_iter().map(|(a, c)| (vec![a[0] as u32], c)).collect(),
            GroupKind::Complex => {
                check_symmetric(n, &f).map_err(|(i, j)| asym(g, i, j))?;
                to_elementary(n, &f)?
            }
            GroupKind::Real => {
                let mut half = BTreeMap::new();
                for (a, c) in f {
                    if let Some(k) = a.iter().position(|e| e % 2 == 1) {
                        return Err(SymError::Domain(format!("odd power of {} in real group {}", g.vars[k], g.name)));
                    }
                    half.insert(a.iter().map(|e| e / 2).collect::<Vec<u8>>(), c);
                }
                check_symmetric(n, &half).map_err(|(i, j)| asym(g, i, j))?;
                to_elementary(n, &half)?
            }
        };
        for (mu, c) in coords {
            if c.is_zero() {
                continue;
            }
            let mut m = base;
            for (k, e) in mu.iter().enumerate() {
                m.set(gen_idx[k], *e as u8);
            }
            terms.push((m, c));
        }
    }
    Ok(GradedPoly::from_terms(next, terms))
}

fn asym(g: &GroupSpec, i: usize, j: usize) -> SymError {
    SymError::Domain(format!("not symmetric in group {}: transposition {} <-> {}", g.name, g.vars[i], g.vars[j]))
}
