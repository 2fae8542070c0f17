//! Double-precision Jacobi theta functions from their product formulas, and
//! numeric checks of the S and T transformation laws.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use series_core::{eta_power, QExp};
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum ThetaError {
    #[error("domain error: {0}")]
    Domain(String),
}

pub type Result<T> = std::result::Result<T, ThetaError>;

const I: Complex64 = Complex64::new(0.0, 1.0);

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ThetaSample {
    pub v: Complex64,
    pub tau: Complex64,
    pub n_terms: usize,
}

impl ThetaSample {
    pub fn new(v: Complex64, tau: Complex64, n_terms: usize) -> Result<Self> {
        let s = ThetaSample { v, tau, n_terms };
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.tau.im > 0.0) {
            return Err(ThetaError::Domain(format!("Im(tau) must be positive, got {}", self.tau.im)));
        }
        if self.n_terms == 0 {
            return Err(ThetaError::Domain("n_terms must be at least 1".into()));
        }
        Ok(())
    }

    fn with(&self, v: Complex64, tau: Complex64) -> Result<Self> {
        ThetaSample::new(v, tau, self.n_terms)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ThetaKind {
    Theta,
    Theta1,
    Theta2,
    Theta3,
    ThetaPrime,
}

impl ThetaKind {
    pub const ALL: [ThetaKind; 5] = [ThetaKind::Theta, ThetaKind::Theta1, ThetaKind::Theta2, ThetaKind::Theta3, ThetaKind::ThetaPrime];
}

impl fmt::Display for ThetaKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ThetaKind::Theta => "theta",
            ThetaKind::Theta1 => "theta1",
            ThetaKind::Theta2 => "theta2",
            ThetaKind::Theta3 => "theta3",
            ThetaKind::ThetaPrime => "thetaprime",
        })
    }
}

impl FromStr for ThetaKind {
    type Err = ThetaError;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "theta" => ThetaKind::Theta,
            "theta1" => ThetaKind::Theta1,
            "theta2" => ThetaKind::Theta2,
            "theta3" => ThetaKind::Theta3,
            "thetaprime" | "theta'" => ThetaKind::ThetaPrime,
            _ => return Err(ThetaError::Domain(format!("unknown theta function '{s}'"))),
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Law {
    TShift,
    SInversion,
}

impl fmt::Display for Law {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Law::TShift => "T-shift",
            Law::SInversion => "S-inversion",
        })
    }
}

/// e^{2πi·x}.
fn e(x: Complex64) -> Complex64 {
    (2.0 * PI * I * x).exp()
}

/// q^{a} for q = e^{2πiτ}, taken as e^{2πiaτ}.
fn qpow(tau: Complex64, a: f64) -> Complex64 {
    e(tau * a)
}

/// ∏_{j=1}^{n} (1 − qʲ)(1 + s·y·q^{j−h})(1 + s·y⁻¹·q^{j−h}) and its log-derivative in v.
fn product(v: Complex64, tau: Complex64, n: usize, sign: f64, half: bool) -> (Complex64, Complex64) {
    let y = e(v);
    let yi = e(-v);
    let shift = if half { 0.5 } else { 0.0 };
    let mut p = Complex64::new(1.0, 0.0);
    let mut dlog = Complex64::new(0.0, 0.0);
    for j in 1..=n {
        let qj = qpow(tau, j as f64);
        let qh = qpow(tau, j as f64 - shift);
        let a = y * qh * sign;
        let b = yi * qh * sign;
        p *= (1.0 - qj) * (1.0 + a) * (1.0 + b);
        dlog += 2.0 * PI * I * (a / (1.0 + a) - b / (1.0 + b));
    }
    (p, dlog)
}

/// Truncated product value of one theta function; θ′ is ∂θ/∂v.
pub fn theta_eval(kind: ThetaKind, s: &ThetaSample) -> Result<Complex64> {
    s.validate()?;
    let (v, tau, n) = (s.v, s.tau, s.n_terms);
    let pref = 2.0 * qpow(tau, 0.125);
    Ok(match kind {
        ThetaKind::Theta => pref * (PI * v).sin() * product(v, tau, n, -1.0, false).0,
        ThetaKind::Theta1 => pref * (PI * v).cos() * product(v, tau, n, 1.0, false).0,
        ThetaKind::Theta2 => product(v, tau, n, -1.0, true).0,
        ThetaKind::Theta3 => product(v, tau, n, 1.0, true).0,
        ThetaKind::ThetaPrime => {
            let (p, dlog) = product(v, tau, n, -1.0, false);
            pref * (PI * (PI * v).cos() * p + (PI * v).sin() * p * dlog)
        }
    })
}

/// η(τ) = q^{1/24} ∏(1 − qʲ).
pub fn eta(tau: Complex64, n_terms: usize) -> Result<Complex64> {
    ThetaSample::new(Complex64::new(0.0, 0.0), tau, n_terms)?;
    let mut p = qpow(tau, 1.0 / 24.0);
    for j in 1..=n_terms {
        p *= 1.0 - qpow(tau, j as f64);
    }
    Ok(p)
}

/// 2π q^{1/8} ∏(1 − qʲ)³, the closed form of θ′(0, τ).
pub fn theta_prime_zero_closed(tau: Complex64, n_terms: usize) -> Result<Complex64> {
    ThetaSample::new(Complex64::new(0.0, 0.0), tau, n_terms)?;
    let mut p = 2.0 * PI * qpow(tau, 0.125);
    for j in 1..=n_terms {
        p *= (1.0 - qpow(tau, j as f64)).powi(3);
    }
    Ok(p)
}

/// |η(τ)²⁴ − Σ aₙqⁿ| with aₙ the exact coefficients of q·c²⁴.
pub fn eta24_residual(tau: Complex64, n_terms: usize, q_cap: u32) -> Result<f64> {
    let lhs = eta(tau, n_terms)?.powi(24);
    let series = eta_power(24, q_cap);
    let mut rhs = Complex64::new(0.0, 0.0);
    for n in 1..=q_cap as i32 {
        let c = series.rational_coeff(QExp::int(n)).to_f64().unwrap_or(f64::NAN);
        rhs += c * qpow(tau, n as f64);
    }
    Ok((lhs - rhs).norm())
}

/// (τ/√−1)^{1/2} on the principal branch.
fn root_factor(tau: Complex64) -> Complex64 {
    (tau / I).sqrt()
}

/// |LHS − RHS| of the printed law. For θ′ the S-law is evaluated at v = 0.
pub fn law_residual(kind: ThetaKind, law: Law, s: &ThetaSample) -> Result<f64> {
    s.validate()?;
    let (v, tau) = (s.v, s.tau);
    let val = |k: ThetaKind, v: Complex64, tau: Complex64| theta_eval(k, &s.with(v, tau)?);
    let residual = match law {
        Law::TShift => {
            let shifted = tau + 1.0;
            let rot = (PI * I / 4.0).exp();
            let (lhs, rhs) = match kind {
                ThetaKind::Theta | ThetaKind::Theta1 | ThetaKind::ThetaPrime => (val(kind, v, shifted)?, rot * val(kind, v, tau)?),
                ThetaKind::Theta2 => (val(kind, v, shifted)?, val(ThetaKind::Theta3, v, tau)?),
                ThetaKind::Theta3 => (val(kind, v, shifted)?, val(ThetaKind::Theta2, v, tau)?),
            };
            lhs - rhs
        }
        Law::SInversion => {
            let inv = -1.0 / tau;
            let root = root_factor(tau);
            let gauss = (PI * I * tau * v * v).exp();
            match kind {
                ThetaKind::Theta => val(kind, v, inv)? - root / I * gauss * val(kind, tau * v, tau)?,
                ThetaKind::Theta1 => val(kind, v, inv)? - root * gauss * val(ThetaKind::Theta2, tau * v, tau)?,
                ThetaKind::Theta2 => val(kind, v, inv)? - root * gauss * val(ThetaKind::Theta1, tau * v, tau)?,
                ThetaKind::Theta3 => val(kind, v, inv)? - root * gauss * val(ThetaKind::Theta3, tau * v, tau)?,
                ThetaKind::ThetaPrime => {
                    let zero = Complex64::new(0.0, 0.0);
                    val(kind, zero, inv)? - root / I * tau * val(kind, zero, tau)?
                }
            }
        }
    };
    Ok(residual.norm())
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct LawCheck {
    pub kind: ThetaKind,
    pub law: Law,
    pub residual: f64,
    pub passed: bool,
}

pub fn check_law(kind: ThetaKind, law: Law, s: &ThetaSample, tolerance: f64) -> Result<LawCheck> {
    let residual = law_residual(kind, law, s)?;
    Ok(LawCheck { kind, law, residual, passed: residual < tolerance })
}

/// Pseudo-random samples with Im τ ∈ [0.8, 2], |Re τ| ≤ 0.5, |v| ≤ 0.5.
pub fn random_samples(count: usize, n_terms: usize, seed: u64) -> Vec<ThetaSample> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let tau = Complex64::new(rng.gen_range(-0.5..=0.5), rng.gen_range(0.8..=2.0));
            let v = Complex64::from_polar(rng.gen_range(0.0..=0.5), rng.gen_range(0.0..2.0 * PI));
            ThetaSample { v, tau, n_terms }
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ThetaReport {
    pub samples: usize,
    pub tolerance: f64,
    /// Largest residual per (function, law).
    pub laws: Vec<LawCheck>,
    /// |θ′(0,τ) − 2πq^{1/8}∏(1−qʲ)³| maximised over the samples.
    pub theta_prime_zero: f64,
    /// |η²⁴ − q·c²⁴| maximised over the samples.
    pub eta24: f64,
    pub passed: bool,
}

/// Every law over every sample, evaluated concurrently.
pub fn check_all(samples: &[ThetaSample], tolerance: f64) -> Result<ThetaReport> {
    let pairs: Vec<(ThetaKind, Law)> = ThetaKind::ALL.iter().flat_map(|k| [(*k, Law::TShift), (*k, Law::SInversion)]).collect();
    let laws: Vec<LawCheck> = pairs
        .par_iter()
        .map(|(k, l)| {
            let mut worst = 0.0f64;
            for s in samples {
                worst = worst.max(law_residual(*k, *l, s)?);
            }
            Ok(LawCheck { kind: *k, law: *l, residual: worst, passed: worst < tolerance })
        })
        .collect::<Result<_>>()?;
    let mut tp = 0.0f64;
    let mut e24 = 0.0f64;
    for s in samples {
        let at_zero = ThetaSample { v: Complex64::new(0.0, 0.0), ..*s };
        tp = tp.max((theta_eval(ThetaKind::ThetaPrime, &at_zero)? - theta_prime_zero_closed(s.tau, s.n_terms)?).norm());
        e24 = e24.max(eta24_residual(s.tau, s.n_terms, 40)?);
    }
    let passed = laws.iter().all(|l| l.passed) && tp < tolerance && e24 < tolerance;
    Ok(ThetaReport { samples: samples.len(), tolerance, laws, theta_prime_zero: tp, eta24: e24, passed })
}
