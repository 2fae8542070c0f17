//! Exact verification of catalog records.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;
use std::time::Instant;

use genus_assembly::{two_pi_i_pow, Assembly, GenusInstance};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use series_core::{QExp, QSeries, Scalar, ScalarForm};
use symfunc::{ClassBasis, ConstraintSet};

use crate::eisenstein::{decompose, Decomposition};
use crate::error::{Result, VerifyError};
use crate::record::{parse_scalar, RecordKind, TheoremRecord, TwistTerm};
use crate::residue::residue_scale;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Match,
    Mismatch,
    ResidualNonzero,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Match => "match",
            Status::Mismatch => "mismatch",
            Status::ResidualNonzero => "residual-nonzero",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub id: String,
    pub context: String,
    pub weight: i64,
    pub constraints: Vec<String>,
    pub derived_coeffs: Vec<String>,
    pub paper_coeffs: Vec<String>,
    /// q-coefficient ratios of the Eisenstein basis, rescaled to the record's sides.
    pub eisenstein_coeffs: Vec<String>,
    pub status: Status,
    /// Whether the reduced series decomposed in the Eisenstein basis with zero residual.
    #[serde(default)]
    pub modular: bool,
    pub residual_witness: Option<String>,
    /// Whether the printed twist combinations equal the expanded q-coefficients.
    pub expansion_consistent: Option<bool>,
    pub wall_time_ms: u64,
}

/// Verification caps.
#[derive(Clone, Copy, Debug)]
pub struct Caps {
    pub q_cap: u32,
}

impl Default for Caps {
    fn default() -> Self {
        Caps { q_cap: 4 }
    }
}

/// Assembled, reduced and decomposed series for one instance and constraint list.
pub struct Prepared {
    pub assembly: Assembly,
    pub basis: ClassBasis,
    pub constraints: ConstraintSet,
    /// The series is `unit` times this rational series.
    pub unit: Scalar,
    pub series: QSeries,
    pub decomposition: Decomposition,
}

impl Prepared {
    pub fn new(inst: &GenusInstance, zeta_power: u32, constraints: &[String], weight: i64, caps: Caps) -> Result<Self> {
        let assembly = Assembly::new(inst)?;
        let q = QExp::int(caps.q_cap as i32);
        let (unit, raw) = if inst.genus.is_ell() {
            let a = assembly.a_series(q)?;
            (two_pi_i_pow(zeta_power), a[zeta_power as usize].clone())
        } else {
            (Scalar::one(), assembly.genus(q)?)
        };
        let basis = inst.class_basis(&assembly.ring)?;
        let cs = inst.constraints(&basis, constraints)?;
        let series = reduce_series(&basis, &cs, &raw)?;
        let decomposition = decompose(&series, weight)?;
        Ok(Prepared { assembly, basis, constraints: cs, unit, series, decomposition })
    }

    pub fn reduce(&self, f: &ScalarForm) -> Result<ScalarForm> {
        Ok(self.constraints.apply_form(&self.basis.form_to_class_basis(f)?)?)
    }

    /// The reduced q^k coefficient, unit included.
    pub fn coefficient(&self, k: u32) -> ScalarForm {
        ScalarForm::new(&self.unit, &self.series.coeff(QExp::int(k as i32)))
    }

    fn side(&self, terms: &[TwistTerm], id: &str) -> Result<ScalarForm> {
        let mut f = ScalarForm::zero(&self.assembly.ring);
        for t in terms {
            let m = parse_scalar(&t.mult, id)?;
            f = f.add(&self.assembly.twist_form(&t.twists)?.scale_scalar(&m));
        }
        self.reduce(&f)
    }
}

/// Reduce every coefficient to the constrained class basis.
pub fn reduce_series(basis: &ClassBasis, cs: &ConstraintSet, s: &QSeries) -> Result<QSeries> {
    let mut out = QSeries::zero(cs.ring(), s.q_cap());
    for (e, p) in s.coeffs() {
        out.set(*e, cs.apply(&basis.to_class_basis(p)?)?);
    }
    Ok(out)
}

/// The unique c with l = c·r, if any.
pub fn solve_ratio(l: &ScalarForm, r: &ScalarForm) -> Option<Scalar> {
    let rp = r.to_scalar_poly();
    let (m, rc) = rp.first_term()?;
    let c = l.to_scalar_poly().coeff(&m).mul(&rc.inverse()?);
    l.sub(&r.scale_scalar(&c)).is_zero().then_some(c)
}

/// Smallest nonzero term of a form, printed in its class basis.
pub fn form_witness(f: &ScalarForm) -> Option<String> {
    let p = f.to_scalar_poly();
    let (m, c) = p.first_term()?;
    Some(format!("({c})*{}", p.format_mono(&m)))
}

fn series_witness(s: &QSeries, unit: &Scalar) -> Option<String> {
    s.coeffs().iter().find(|(_, p)| !p.is_zero()).and_then(|(e, p)| {
        form_witness(&ScalarForm::new(unit, p)).map(|w| format!("q^{e}: {w}"))
    })
}

fn key(r: &TheoremRecord) -> String {
    format!("{}|{}|{}|{}|{}|{}", r.genus, r.fiber_dim, r.l, r.j, r.zeta_power, r.constraints.join(","))
}

/// Verify one record against an already prepared series.
pub fn verify_prepared(record: &TheoremRecord, prep: &Prepared) -> Result<VerifyReport> {
    let start = Instant::now();
    let mut report = VerifyReport {
        id: record.id.clone(),
        context: record.context.to_string(),
        weight: record.weight,
        constraints: record.constraints.clone(),
        derived_coeffs: Vec::new(),
        paper_coeffs: Vec::new(),
        eisenstein_coeffs: Vec::new(),
        status: Status::Match,
        modular: prep.decomposition.is_modular(),
        residual_witness: None,
        expansion_consistent: None,
        wall_time_ms: 0,
    };
    match record.kind {
        RecordKind::Vanishing => {
            if !prep.series.is_zero() {
                report.status = Status::ResidualNonzero;
                report.residual_witness = series_witness(&prep.series, &prep.unit);
            }
        }
        RecordKind::Modular => {
            if !prep.decomposition.is_modular() {
                report.status = Status::ResidualNonzero;
                report.residual_witness = series_witness(&prep.decomposition.residual, &prep.unit);
            }
        }
        RecordKind::Coefficient => verify_coefficient(record, prep, &mut report)?,
    }
    report.wall_time_ms = start.elapsed().as_millis() as u64;
    Ok(report)
}

fn verify_coefficient(record: &TheoremRecord, prep: &Prepared, report: &mut VerifyReport) -> Result<()> {
    let id = &record.id;
    let k = record.q_power;
    if k as i32 > prep.series.q_cap().whole() {
        return Err(VerifyError::Domain(format!("{id}: q cap below the record's q-power {k}")));
    }
    let lhs_scale = parse_scalar(&record.lhs_scale, id)?;
    let rhs_scale = parse_scalar(&record.rhs_scale, id)?;
    let printed = record.paper_scalar()?;
    report.paper_coeffs.push(printed.to_string());

    let mut lhs = prep.side(&record.lhs, id)?;
    let mut rhs = prep.side(&record.rhs, id)?;
    report.expansion_consistent = Some(
        prep.coefficient(k).sub(&lhs.scale_scalar(&lhs_scale)).is_zero()
            && prep.coefficient(0).sub(&rhs.scale_scalar(&rhs_scale)).is_zero(),
    );

    let basis = &prep.decomposition.basis;
    let ratio = rhs_scale.mul(&lhs_scale.inverse().ok_or_else(|| VerifyError::Catalog(format!("{id}: lhs_scale not invertible")))?);
    for b in basis {
        let bk = Scalar::from_rational(b.series.rational_coeff(QExp::int(k as i32)));
        report.eisenstein_coeffs.push(bk.mul(&ratio).to_string());
    }

    if let Some(parity) = record.context.residue_parity() {
        let s = residue_scale(record.fiber_dim, record.j, parity)?;
        lhs = lhs.scale_scalar(&s);
        rhs = rhs.scale_scalar(&s);
    }

    if !prep.decomposition.is_modular() {
        report.status = Status::ResidualNonzero;
        report.residual_witness = series_witness(&prep.decomposition.residual, &prep.unit);
        return Ok(());
    }
    if rhs.is_zero() {
        report.status = Status::ResidualNonzero;
        report.residual_witness = form_witness(&lhs).or_else(|| Some("both sides vanish".into()));
        return Ok(());
    }
    let diff = lhs.sub(&rhs.scale_scalar(&printed));
    match solve_ratio(&lhs, &rhs) {
        Some(c) => {
            report.status = if diff.is_zero() { Status::Match } else { Status::Mismatch };
            report.derived_coeffs.push(c.to_string());
        }
        None => {
            report.status = Status::ResidualNonzero;
            report.residual_witness = form_witness(&diff);
        }
    }
    Ok(())
}

/// Verify one record from scratch.
pub fn verify_theorem(record: &TheoremRecord, caps: Caps) -> Result<VerifyReport> {
    record.validate()?;
    let start = Instant::now();
    let prep = Prepared::new(&record.instance()?, record.zeta_power, &record.constraints, record.weight, caps)?;
    let mut report = verify_prepared(record, &prep)?;
    report.wall_time_ms = start.elapsed().as_millis() as u64;
    Ok(report)
}

/// Verify many records in parallel, sharing assembled series between records
/// with the same instance. Reports come back sorted by id.
pub fn verify_all(records: &[TheoremRecord], caps: Caps) -> Result<Vec<VerifyReport>> {
    let mut groups: BTreeMap<String, Vec<&TheoremRecord>> = BTreeMap::new();
    for r in records {
        r.validate()?;
        groups.entry(key(r)).or_default().push(r);
    }
    let groups: Vec<Vec<&TheoremRecord>> = groups.into_values().collect();
    let results: Vec<Result<Vec<VerifyReport>>> = groups
        .par_iter()
        .map(|g| {
            let first = g[0];
            let start = Instant::now();
            let prep = Arc::new(Prepared::new(&first.instance()?, first.zeta_power, &first.constraints, first.weight, caps)?);
            let setup = start.elapsed().as_millis() as u64;
            g.iter()
                .map(|r| {
                    let mut rep = verify_prepared(r, &prep)?;
                    rep.wall_time_ms += setup;
                    Ok(rep)
                })
                .collect()
        })
        .collect();
    let mut out = Vec::new();
    for r in results {
        out.extend(r?);
    }
    out.sort_by(|a, b| a.id.cmp(&b.id));
    Ok(out)
}
