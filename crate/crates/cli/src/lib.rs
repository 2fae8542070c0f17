//! The `modcheck` batch driver: catalog verification, genus expansion,
//! Eisenstein decomposition and theta-law checks.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};
use genus_assembly::{GenusId, GenusInstance};
use modular_verify::{
    builtin_expectations, expectations_from_json, verify_all, Caps, Catalog, Expectations, Prepared, Status, TheoremRecord, VerifyReport,
};
use series_core::{QExp, ScalarForm};
use theta_numeric::{check_all, random_samples};

pub const EXIT_OK: u8 = 0;
pub const EXIT_SURPRISE: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const MAX_Q_CAP: u32 = 6;
pub const MAX_ZETA_CAP: u32 = 6;

#[derive(Debug, Parser)]
#[command(name = "modcheck", about = "Exact verification of modular anomaly-cancellation identities")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Verify catalog records against their pinned expectations.
    Verify(VerifyArgs),
    /// Print the q-expansion of a genus in the class basis.
    Expand(InstanceArgs),
    /// Decompose a genus on the E4/E6 monomial basis.
    Decompose(InstanceArgs),
    /// Check the theta transformation laws numerically.
    ThetaCheck(ThetaArgs),
    /// List catalog records.
    Catalog(CatalogArgs),
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Verify every record.
    #[arg(long, conflicts_with = "id")]
    pub all: bool,
    /// Record id (repeatable).
    #[arg(long)]
    pub id: Vec<String>,
    #[arg(long, default_value_t = 4)]
    pub qmax: u32,
    /// Write the reports as JSON to this path.
    #[arg(long)]
    pub json: Option<PathBuf>,
    /// Catalog file (defaults to the built-in one).
    #[arg(long)]
    pub catalog: Option<PathBuf>,
    /// Pinned expectations file (defaults to the built-in one).
    #[arg(long)]
    pub expectations: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct InstanceArgs {
    /// Q, Qtilde, Qhat, Qc, QcStar, Ell, EllTilde, EllBar, Q1, Q2.
    #[arg(long)]
    pub genus: String,
    #[arg(long)]
    pub dim: u32,
    #[arg(long, default_value_t = 2)]
    pub qmax: u32,
    /// Highest ζ-power for elliptic genera.
    #[arg(long, default_value_t = 0)]
    pub zmax: u32,
    /// Rank of W (elliptic genera).
    #[arg(long, default_value_t = 0)]
    pub l: u32,
    /// Degree index (Q1, Q2).
    #[arg(long, default_value_t = 0)]
    pub j: u32,
    /// Constraint such as "p1(T)=p1(W)" (repeatable); defaults to the genus' own.
    #[arg(long)]
    pub constraint: Vec<String>,
    /// Skip constraint reduction (expand only).
    #[arg(long)]
    pub raw: bool,
    #[arg(long)]
    pub json: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ThetaArgs {
    #[arg(long, default_value_t = 20)]
    pub samples: usize,
    #[arg(long, default_value_t = 1e-9)]
    pub tol: f64,
    #[arg(long, default_value_t = 80)]
    pub terms: usize,
    #[arg(long, default_value_t = 7)]
    pub seed: u64,
    #[arg(long)]
    pub json: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct CatalogArgs {
    #[arg(long)]
    pub catalog: Option<PathBuf>,
    #[arg(long)]
    pub json: Option<PathBuf>,
}

/// Captured result of one invocation.
#[derive(Debug, Default)]
pub struct Outcome {
    pub code: u8,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn usage(msg: impl Into<String>) -> Self {
        Outcome { code: EXIT_USAGE, stdout: String::new(), stderr: format!("error: {}\n", msg.into()) }
    }

    fn failure(msg: impl Into<String>) -> Self {
        Outcome { code: EXIT_SURPRISE, stdout: String::new(), stderr: format!("error: {}\n", msg.into()) }
    }
}

pub fn run(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Verify(a) => run_verify(a),
        Command::Expand(a) => run_expand(a),
        Command::Decompose(a) => run_decompose(a),
        Command::ThetaCheck(a) => run_theta(a),
        Command::Catalog(a) => run_catalog(a),
    }
}

/// Parse arguments as the binary would and run.
pub fn run_args<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(&cli),
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            Outcome { code, stdout: String::new(), stderr: e.to_string() }
        }
    }
}

fn write_json<T: serde::Serialize>(path: &Option<PathBuf>, value: &T) -> Result<(), String> {
    if let Some(p) = path {
        let s = serde_json::to_string_pretty(value).map_err(|e| e.to_string())?;
        std::fs::write(p, s + "\n").map_err(|e| format!("cannot write {}: {e}", p.display()))?;
    }
    Ok(())
}

fn load_catalog(path: &Option<PathBuf>) -> Result<Catalog, String> {
    match path {
        None => Ok(Catalog::builtin()),
        Some(p) => {
            let s = std::fs::read_to_string(p).map_err(|e| format!("cannot read {}: {e}", p.display()))?;
            Catalog::from_json(&s).map_err(|e| e.to_string())
        }
    }
}

fn load_expectations(path: &Option<PathBuf>) -> Result<Expectations, String> {
    match path {
        None => Ok(builtin_expectations()),
        Some(p) => {
            let s = std::fs::read_to_string(p).map_err(|e| format!("cannot read {}: {e}", p.display()))?;
            expectations_from_json(&s).map_err(|e| e.to_string())
        }
    }
}

/// Records whose outcome differs from the pinned expectation.
pub fn surprises(reports: &[VerifyReport], expected: &Expectations) -> Vec<String> {
    let mut out = Vec::new();
    for r in reports {
        match expected.get(&r.id) {
            None => out.push(format!("{}: no pinned expectation", r.id)),
            Some(e) => {
                if e.status != r.status {
                    out.push(format!("{}: expected {}, got {}", r.id, e.status, r.status));
                }
                if e.expansion_consistent.is_some() && e.expansion_consistent != r.expansion_consistent {
                    out.push(format!("{}: expansion consistency changed", r.id));
                }
            }
        }
    }
    out
}

pub fn run_verify(a: &VerifyArgs) -> Outcome {
    if !a.all && a.id.is_empty() {
        return Outcome::usage("choose --all or at least one --id");
    }
    if a.qmax < 2 || a.qmax > MAX_Q_CAP {
        return Outcome::usage(format!("--qmax must lie in 2..={MAX_Q_CAP}"));
    }
    let catalog = match load_catalog(&a.catalog) {
        Ok(c) => c,
        Err(e) => return Outcome::usage(e),
    };
    let expected = match load_expectations(&a.expectations) {
        Ok(e) => e,
        Err(e) => return Outcome::usage(e),
    };
    let records: Vec<TheoremRecord> = if a.all {
        catalog.records.clone()
    } else {
        let mut v = Vec::new();
        for id in &a.id {
            match catalog.get(id) {
                Some(r) => v.push(r.clone()),
                None => return Outcome::usage(format!("no record with id '{id}'")),
            }
        }
        v
    };
    let reports = match verify_all(&records, Caps { q_cap: a.qmax }) {
        Ok(r) => r,
        Err(e) => return Outcome::failure(e.to_string()),
    };
    let mut out = String::new();
    for r in &reports {
        let derived = if r.derived_coeffs.is_empty() { "-".to_string() } else { r.derived_coeffs.join(",") };
        let paper = if r.paper_coeffs.is_empty() { "-".to_string() } else { r.paper_coeffs.join(",") };
        let _ = write!(out, "{:<24} {:<17} derived={derived} printed={paper}", r.id, r.status.to_string());
        if let Some(w) = &r.residual_witness {
            let _ = write!(out, " witness={w}");
        }
        let _ = writeln!(out, " ({} ms)", r.wall_time_ms);
    }
    let bad = surprises(&reports, &expected);
    let counts = |s: Status| reports.iter().filter(|r| r.status == s).count();
    let _ = writeln!(
        out,
        "{} records: {} match, {} mismatch, {} residual-nonzero; {} differ from pinned expectations",
        reports.len(),
        counts(Status::Match),
        counts(Status::Mismatch),
        counts(Status::ResidualNonzero),
        bad.len()
    );
    if let Err(e) = write_json(&a.json, &reports) {
        return Outcome::failure(e);
    }
    let stderr: String = bad.iter().map(|b| format!("surprise: {b}\n")).collect();
    Outcome { code: if bad.is_empty() { EXIT_OK } else { EXIT_SURPRISE }, stdout: out, stderr }
}

fn instance(a: &InstanceArgs) -> Result<(GenusInstance, Vec<String>), String> {
    if a.qmax > MAX_Q_CAP {
        return Err(format!("--qmax must be at most {MAX_Q_CAP}"));
    }
    if a.zmax > MAX_ZETA_CAP {
        return Err(format!("--zmax must be at most {MAX_ZETA_CAP}"));
    }
    let g = GenusId::from_str(&a.genus).map_err(|e| e.to_string())?;
    let inst = GenusInstance::new(g, a.dim).with_l(a.l).with_j(a.j).with_zeta_cap(if g.is_ell() { a.zmax } else { 0 });
    inst.validate().map_err(|e| e.to_string())?;
    let cons = if a.constraint.is_empty() { g.default_constraints() } else { a.constraint.clone() };
    Ok((inst, cons))
}

#[derive(Debug, serde::Serialize)]
struct ExpandedTerm {
    zeta_power: u32,
    q_power: i32,
    form: String,
}

pub fn run_expand(a: &InstanceArgs) -> Outcome {
    let (inst, cons) = match instance(a) {
        Ok(x) => x,
        Err(e) => return Outcome::usage(e),
    };
    let cons = if a.raw { Vec::new() } else { cons };
    let mut out = String::new();
    let mut terms = Vec::new();
    let zs = if inst.genus.is_ell() { 0..=a.zmax } else { 0..=0 };
    for n in zs {
        let prep = match Prepared::new(&inst, n, &cons, 0, Caps { q_cap: a.qmax }) {
            Ok(p) => p,
            Err(e) => return Outcome::failure(e.to_string()),
        };
        if n == 0 {
            let _ = writeln!(
                out,
                "{} at fiber dimension {}: weight {}, root-degree {}, constraints [{}]",
                inst.genus,
                inst.fiber_dim,
                inst.weight(),
                inst.extract_degree(),
                cons.join(", ")
            );
            if matches!(inst.genus, GenusId::Q | GenusId::QTilde | GenusId::QHat) {
                let _ = writeln!(out, "q^0 = {{A*chDelta + {}*A}}", 1u64 << (inst.pairs() + 1));
            }
        }
        for k in 0..=a.qmax as i32 {
            let form = ScalarForm::new(&prep.unit, &prep.series.coeff(QExp::int(k)));
            let label = if inst.genus.is_ell() { format!("a{n} q^{k}") } else { format!("q^{k}") };
            let _ = writeln!(out, "{label}: {form}");
            terms.push(ExpandedTerm { zeta_power: n, q_power: k, form: form.to_string() });
        }
    }
    if let Err(e) = write_json(&a.json, &terms) {
        return Outcome::failure(e);
    }
    Outcome { code: EXIT_OK, stdout: out, stderr: String::new() }
}

#[derive(Debug, serde::Serialize)]
struct DecomposeOutput {
    genus: String,
    fiber_dim: u32,
    zeta_power: u32,
    weight: i64,
    basis: Vec<String>,
    coefficients: Vec<String>,
    residual_zero: bool,
    residual_witness: Option<String>,
}

pub fn run_decompose(a: &InstanceArgs) -> Outcome {
    let (inst, cons) = match instance(a) {
        Ok(x) => x,
        Err(e) => return Outcome::usage(e),
    };
    let n = if inst.genus.is_ell() { a.zmax } else { 0 };
    let weight = inst.weight() + n as i64;
    let prep = match Prepared::new(&inst, n, &cons, weight, Caps { q_cap: a.qmax.max(1) }) {
        Ok(p) => p,
        Err(e) => return Outcome::failure(e.to_string()),
    };
    let d = &prep.decomposition;
    let witness = d
        .residual
        .coeffs()
        .iter()
        .find(|(_, p)| !p.is_zero())
        .and_then(|(e, p)| modular_verify::form_witness(&ScalarForm::new(&prep.unit, p)).map(|w| format!("q^{e}: {w}")));
    let result = DecomposeOutput {
        genus: inst.genus.to_string(),
        fiber_dim: inst.fiber_dim,
        zeta_power: n,
        weight,
        basis: d.basis.iter().map(|b| b.label()).collect(),
        coefficients: d.coefficients.iter().map(|c| ScalarForm::new(&prep.unit, c).to_string()).collect(),
        residual_zero: d.is_modular(),
        residual_witness: witness,
    };
    let mut out = String::new();
    let _ = writeln!(out, "{} at fiber dimension {}, weight {weight}, constraints [{}]", inst.genus, inst.fiber_dim, cons.join(", "));
    if result.basis.is_empty() {
        let _ = writeln!(out, "no modular forms of weight {weight}: the series must vanish");
    }
    for (b, c) in result.basis.iter().zip(&result.coefficients) {
        let _ = writeln!(out, "{b}: {c}");
    }
    let _ = writeln!(out, "residual: {}", if result.residual_zero { "0".to_string() } else { result.residual_witness.clone().unwrap_or_default() });
    if let Err(e) = write_json(&a.json, &result) {
        return Outcome::failure(e);
    }
    Outcome { code: if result.residual_zero { EXIT_OK } else { EXIT_SURPRISE }, stdout: out, stderr: String::new() }
}

pub fn run_theta(a: &ThetaArgs) -> Outcome {
    if a.samples == 0 || a.terms == 0 || !(a.tol > 0.0) {
        return Outcome::usage("--samples, --terms and --tol must be positive");
    }
    let samples = random_samples(a.samples, a.terms, a.seed);
    let report = match check_all(&samples, a.tol) {
        Ok(r) => r,
        Err(e) => return Outcome::failure(e.to_string()),
    };
    let mut out = String::new();
    for l in &report.laws {
        let _ = writeln!(out, "{:<10} {:<11} max residual {:.3e} {}", l.kind.to_string(), l.law.to_string(), l.residual, if l.passed { "ok" } else { "FAIL" });
    }
    let _ = writeln!(out, "theta'(0) closed form: max residual {:.3e}", report.theta_prime_zero);
    let _ = writeln!(out, "eta^24 against exact series: max residual {:.3e}", report.eta24);
    let _ = writeln!(out, "{} samples, tolerance {:e}: {}", report.samples, report.tolerance, if report.passed { "pass" } else { "FAIL" });
    if let Err(e) = write_json(&a.json, &report) {
        return Outcome::failure(e);
    }
    Outcome { code: if report.passed { EXIT_OK } else { EXIT_SURPRISE }, stdout: out, stderr: String::new() }
}

pub fn run_catalog(a: &CatalogArgs) -> Outcome {
    let catalog = match load_catalog(&a.catalog) {
        Ok(c) => c,
        Err(e) => return Outcome::usage(e),
    };
    let expected = builtin_expectations();
    let mut out = String::new();
    for r in &catalog.records {
        let pinned = expected.get(&r.id).map(|e| e.status.to_string()).unwrap_or_else(|| "-".into());
        let _ = writeln!(
            out,
            "{:<24} {:<12} {:<9} dim {:>2} weight {:>2} q^{} printed {:<8} pinned {pinned}",
            r.id,
            r.context.to_string(),
            r.genus,
            r.fiber_dim,
            r.weight,
            r.q_power,
            r.paper_coeff
        );
    }
    if let Err(e) = write_json(&a.json, &catalog) {
        return Outcome::failure(e);
    }
    Outcome { code: EXIT_OK, stdout: out, stderr: String::new() }
}
