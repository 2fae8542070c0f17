//! Theorem records, the shipped catalog and pinned expectations.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use genus_assembly::{GenusId, GenusInstance};
use serde::{Deserialize, Serialize};
use series_core::Scalar;

use crate::eisenstein::eisenstein_basis;
use crate::error::{Result, VerifyError};
use crate::residue::Parity;

const CATALOG_JSON: &str = include_str!("../data/catalog.json");
const EXPECTATIONS_JSON: &str = include_str!("../data/expectations.json");

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Context {
    DetLine,
    Gerbe,
    Eta,
    ResidueEven,
    ResidueOdd,
}

impl Context {
    pub fn residue_parity(self) -> Option<Parity> {
        match self {
            Context::ResidueEven => Some(Parity::Even),
            Context::ResidueOdd => Some(Parity::Odd),
            _ => None,
        }
    }
}

impl fmt::Display for Context {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Context::DetLine => "det-line",
            Context::Gerbe => "gerbe",
            Context::Eta => "eta",
            Context::ResidueEven => "residue-even",
            Context::ResidueOdd => "residue-odd",
        })
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RecordKind {
    /// LHS = paper_coeff · RHS at one q-power.
    #[default]
    Coefficient,
    /// The whole q-series vanishes under the constraints.
    Vanishing,
    /// The q-series decomposes with zero residual.
    Modular,
}

/// One summand: multiplier times the product of the named twists.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TwistTerm {
    pub twists: Vec<String>,
    #[serde(default = "one")]
    pub mult: String,
}

fn one() -> String {
    "1".into()
}

fn is_one(s: &String) -> bool {
    s == "1"
}

fn is_zero(n: &u32) -> bool {
    *n == 0
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TheoremRecord {
    pub id: String,
    pub context: Context,
    #[serde(default)]
    pub kind: RecordKind,
    pub genus: String,
    pub fiber_dim: u32,
    #[serde(default, skip_serializing_if = "is_zero")]
    pub l: u32,
    #[serde(default, skip_serializing_if = "is_zero")]
    pub j: u32,
    /// r for the higher-degree records (must equal fiber_dim / 2).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r: Option<u32>,
    /// ζ-power n of the elliptic coefficient aₙ.
    #[serde(default, skip_serializing_if = "is_zero")]
    pub zeta_power: u32,
    pub constraints: Vec<String>,
    pub weight: i64,
    #[serde(default, skip_serializing_if = "is_zero")]
    pub q_power: u32,
    #[serde(default)]
    pub lhs: Vec<TwistTerm>,
    #[serde(default)]
    pub rhs: Vec<TwistTerm>,
    #[serde(default = "zero_str")]
    pub paper_coeff: String,
    /// Expanded q^{q_power} coefficient = lhs_scale · LHS.
    #[serde(default = "one", skip_serializing_if = "is_one")]
    pub lhs_scale: String,
    /// Expanded q⁰ coefficient = rhs_scale · RHS.
    #[serde(default = "one", skip_serializing_if = "is_one")]
    pub rhs_scale: String,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub note: String,
}

fn zero_str() -> String {
    "0".into()
}

impl TheoremRecord {
    pub fn genus_id(&self) -> Result<GenusId> {
        Ok(GenusId::from_str(&self.genus)?)
    }

    pub fn instance(&self) -> Result<GenusInstance> {
        let g = self.genus_id()?;
        let inst = GenusInstance::new(g, self.fiber_dim).with_l(self.l).with_j(self.j).with_zeta_cap(self.zeta_power);
        inst.validate()?;
        Ok(inst)
    }

    /// Modular weight of the verified series.
    pub fn derived_weight(&self) -> Result<i64> {
        let inst = self.instance()?;
        Ok(inst.weight() + if inst.genus.is_ell() { self.zeta_power as i64 } else { 0 })
    }

    pub fn paper_scalar(&self) -> Result<Scalar> {
        parse_scalar(&self.paper_coeff, &self.id)
    }

    /// Structural checks that need no assembly.
    pub fn validate(&self) -> Result<()> {
        let err = |m: String| Err(VerifyError::Catalog(format!("{}: {m}", self.id)));
        let inst = self.instance()?;
        if !inst.genus.is_ell() && self.zeta_power != 0 {
            return err("zeta_power only applies to elliptic genera".into());
        }
        let w = self.derived_weight()?;
        if w != self.weight {
            return err(format!("weight {} but the instance has weight {w}", self.weight));
        }
        if let Some(r) = self.r {
            if r != inst.r() {
                return err(format!("r = {r} but fiber dimension gives {}", inst.r()));
            }
        }
        if let Some(p) = self.context.residue_parity() {
            let actual = if self.fiber_dim % 2 == 0 { Parity::Even } else { Parity::Odd };
            if p != actual {
                return err("residue context parity does not match the fiber dimension".into());
            }
        }
        if self.kind == RecordKind::Coefficient {
            if eisenstein_basis(self.weight, 6).len() > 2 {
                return err("basis dimension above 2".into());
            }
            if self.lhs.is_empty() || self.rhs.is_empty() {
                return err("coefficient record needs both sides".into());
            }
        }
        for t in self.lhs.iter().chain(&self.rhs) {
            parse_scalar(&t.mult, &self.id)?;
            for name in &t.twists {
                if name != "Delta" && !lambda_twist_known(name) {
                    return err(format!("unknown twist '{name}'"));
                }
            }
        }
        self.paper_scalar()?;
        parse_scalar(&self.lhs_scale, &self.id)?;
        parse_scalar(&self.rhs_scale, &self.id)?;
        Ok(())
    }
}

fn lambda_twist_known(name: &str) -> bool {
    genus_assembly::TWIST_NAMES.contains(&name)
}

pub(crate) fn parse_scalar(s: &str, id: &str) -> Result<Scalar> {
    Scalar::from_str(s).map_err(|e| VerifyError::Catalog(format!("{id}: bad scalar '{s}': {e}")))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Catalog {
    pub records: Vec<TheoremRecord>,
}

impl Catalog {
    pub fn from_json(s: &str) -> Result<Self> {
        let c: Catalog = serde_json::from_str(s)?;
        c.validate()?;
        Ok(c)
    }

    /// The catalog compiled into the crate.
    pub fn builtin() -> Self {
        Catalog::from_json(CATALOG_JSON).expect("shipped catalog is valid")
    }

    pub fn validate(&self) -> Result<()> {
        let mut seen = BTreeSet::new();
        for r in &self.records {
            if !seen.insert(r.id.as_str()) {
                return Err(VerifyError::Catalog(format!("duplicate id {}", r.id)));
            }
            r.validate()?;
        }
        Ok(())
    }

    pub fn get(&self, id: &str) -> Option<&TheoremRecord> {
        self.records.iter().find(|r| r.id == id)
    }

    pub fn ids(&self) -> Vec<&str> {
        self.records.iter().map(|r| r.id.as_str()).collect()
    }
}

/// Pinned outcome for one record.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Expectation {
    pub status: crate::verify::Status,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expansion_consistent: Option<bool>,
}

pub type Expectations = BTreeMap<String, Expectation>;

pub fn builtin_expectations() -> Expectations {
    serde_json::from_str(EXPECTATIONS_JSON).expect("shipped expectations are valid")
}

pub fn expectations_from_json(s: &str) -> Result<Expectations> {
    Ok(serde_json::from_str(s)?)
}
