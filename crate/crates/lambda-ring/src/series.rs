//! Chern characters of Sₜ / Λₜ generating series with t = ±q^e.

use std::sync::Arc;

use series_core::{product, GradedPoly, QExp, QSeries, Rational, Ring};

use crate::bundle::{binomial, VirtualBundle};
use crate::error::{LambdaError, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PowerKind {
    Sym,
    Lambda,
}

/// One generating-series factor per line of `v`, each a QSeries in q.
pub fn line_factors(
    v: &VirtualBundle,
    kind: PowerKind,
    t_exp: QExp,
    sign: i64,
    ring: &Arc<Ring>,
    q_cap: QExp,
) -> Result<Vec<QSeries>> {
    if t_exp.0 < 0 {
        return Err(LambdaError::Domain(format!("t exponent {t_exp} is negative")));
    }
    let mut out = Vec::new();
    for (line, &m) in v.lines() {
        // number of t-powers below the cap
        let jmax: u32 = if t_exp.0 == 0 {
            if kind == PowerKind::Lambda && m > 0 {
                m as u32
            } else {
                return Err(LambdaError::Domain("t = ±1 is only allowed for Λ of an effective bundle".into()));
            }
        } else {
            (q_cap.0 / t_exp.0) as u32
        };
        let mut f = QSeries::zero(ring, q_cap);
        for j in 0..=jmax {
            // Λ: (1 + t e^r)^m,  S: (1 − t e^r)^{−m}
            let mut c: Rational = match kind {
                PowerKind::Lambda => binomial(m, j),
                PowerKind::Sym => {
                    let b = binomial(-m, j);
                    if j % 2 == 1 {
                        -b
                    } else {
                        b
                    }
                }
            };
            if sign < 0 && j % 2 == 1 {
                c = -c;
            }
            if c == Rational::from_integer(0.into()) {
                continue;
            }
            let p: GradedPoly = line.power(j as i64).ch(ring).scale(&c);
            f.add_at(QExp(t_exp.0 * j as i32), &p);
        }
        out.push(f);
    }
    Ok(out)
}

/// ch(Sₜ(v)) or ch(Λₜ(v)) with t = sign·q^{t_exp}.
pub fn sym_lambda_series(
    v: &VirtualBundle,
    kind: PowerKind,
    t_exp: QExp,
    sign: i64,
    ring: &Arc<Ring>,
    q_cap: QExp,
) -> Result<QSeries> {
    let factors = line_factors(v, kind, t_exp, sign, ring, q_cap)?;
    Ok(product(ring, q_cap, factors, None))
}
