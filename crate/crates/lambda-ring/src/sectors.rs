//! Witten-type bundles Θ₁, Θ₂, Θ₃, Θ, Θ* and the elliptic-genus bundles.

use std::sync::Arc;

use series_core::{euler_product, int, product, QExp, QSeries, Rational, Ring};

use crate::bundle::{exp_linear, LineElement, VirtualBundle};
use crate::error::{LambdaError, Result};
use crate::series::{line_factors, PowerKind};

/// Root data for one geometric instance.
#[derive(Clone, Debug)]
pub struct BundleContext {
    pub ring: Arc<Ring>,
    /// T_CZ (complexified tangent bundle, roots ±xⱼ and zero roots).
    pub t_c: VirtualBundle,
    /// T^{1,0}Z, used by the even elliptic genus.
    pub t10: VirtualBundle,
    pub w: VirtualBundle,
    /// L_R ⊗ C (roots ±u).
    pub l_c: VirtualBundle,
    pub zeta: Option<usize>,
    pub d: i64,
    pub l: i64,
}

impl BundleContext {
    pub fn new(ring: &Arc<Ring>) -> Self {
        BundleContext {
            ring: ring.clone(),
            t_c: VirtualBundle::zero(),
            t10: VirtualBundle::zero(),
            w: VirtualBundle::zero(),
            l_c: VirtualBundle::zero(),
            zeta: ring.zeta_index(),
            d: 0,
            l: 0,
        }
    }

    pub fn t_tilde(&self) -> VirtualBundle {
        self.t_c.tilde()
    }

    pub fn l_tilde(&self) -> VirtualBundle {
        self.l_c.tilde()
    }

    pub fn w_dual(&self) -> VirtualBundle {
        self.w.dual()
    }

    fn zeta_line(&self) -> Result<LineElement> {
        let z = self.zeta.ok_or_else(|| LambdaError::Config("ring has no ζ variable".into()))?;
        Ok(LineElement::var(z, int(1)))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WittenKind {
    Theta1,
    Theta2,
    Theta3,
    SpinC,
    SpinCStar,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EllKind {
    Even,
    OddTilde,
    OddBar,
}

fn whole_steps(q_cap: QExp) -> impl Iterator<Item = QExp> {
    (1..=q_cap.0.div_euclid(24)).map(QExp::int)
}

fn half_steps(q_cap: QExp) -> impl Iterator<Item = QExp> {
    (0..).map(|m| QExp(24 * m + 12)).take_while(move |e| *e <= q_cap)
}

/// Generating-series factors of a Witten-type bundle.
pub fn witten_factors(kind: WittenKind, ctx: &BundleContext, q_cap: QExp) -> Result<Vec<QSeries>> {
    let ring = &ctx.ring;
    let t = ctx.t_tilde();
    let mut out = Vec::new();
    for e in whole_steps(q_cap) {
        out.extend(line_factors(&t, PowerKind::Sym, e, 1, ring, q_cap)?);
    }
    match kind {
        WittenKind::Theta1 => {
            for e in whole_steps(q_cap) {
                out.extend(line_factors(&t, PowerKind::Lambda, e, 1, ring, q_cap)?);
            }
        }
        WittenKind::Theta2 | WittenKind::Theta3 => {
            let sign = if kind == WittenKind::Theta2 { -1 } else { 1 };
            for e in half_steps(q_cap) {
                out.extend(line_factors(&t, PowerKind::Lambda, e, sign, ring, q_cap)?);
            }
        }
        WittenKind::SpinC => {
            let lt = ctx.l_tilde();
            for e in whole_steps(q_cap) {
                out.extend(line_factors(&lt, PowerKind::Lambda, e, 1, ring, q_cap)?);
            }
            for e in half_steps(q_cap) {
                out.extend(line_factors(&lt, PowerKind::Lambda, e, -1, ring, q_cap)?);
                out.extend(line_factors(&lt, PowerKind::Lambda, e, 1, ring, q_cap)?);
            }
        }
        WittenKind::SpinCStar => {
            let lt = ctx.l_tilde();
            for e in whole_steps(q_cap) {
                out.extend(line_factors(&lt, PowerKind::Lambda, e, -1, ring, q_cap)?);
            }
        }
    }
    Ok(out)
}

/// ch of a Witten-type bundle, truncated at `q_cap`.
pub fn witten_sector(kind: WittenKind, ctx: &BundleContext, q_cap: QExp) -> Result<QSeries> {
    Ok(product(&ctx.ring, q_cap, witten_factors(kind, ctx, q_cap)?, None))
}

/// Exponent of the Euler-product prefactor c^N.
pub fn ell_c_power(kind: EllKind, d: i64, l: i64) -> i64 {
    match kind {
        EllKind::Even => 2 * (d - 1 - l),
        EllKind::OddTilde => 2 * (d - l) - 3,
        EllKind::OddBar => 2 * (d - l) - 1,
    }
}

/// Generating-series factors of the elliptic-genus bundle, including c^N and y^{−l/2}.
pub fn ell_factors(kind: EllKind, ctx: &BundleContext, q_cap: QExp) -> Result<Vec<QSeries>> {
    if !q_cap.is_integer() {
        return Err(LambdaError::Config("elliptic sectors need an integral q cap".into()));
    }
    let ring = &ctx.ring;
    let y = ctx.zeta_line()?;
    let y_wd = ctx.w_dual().tensor(&VirtualBundle::line(y.clone()));
    let yinv_w = ctx.w.tensor(&VirtualBundle::line(y.dual()));
    let mut out = Vec::new();

    let n = ell_c_power(kind, ctx.d, ctx.l);
    let c = euler_product(q_cap.whole() as u32).pow(n)?.embed(ring)?;
    out.push(c.truncate(q_cap));

    let mut shift = y.root().clone();
    for v in shift.values_mut() {
        *v = &*v * Rational::new((-ctx.l).into(), 2.into());
    }
    out.push(QSeries::monomial(q_cap, QExp::ZERO, exp_linear(ring, &shift)));

    out.extend(line_factors(&y_wd, PowerKind::Lambda, QExp::ZERO, -1, ring, q_cap)?);
    for e in whole_steps(q_cap) {
        out.extend(line_factors(&y_wd, PowerKind::Lambda, e, -1, ring, q_cap)?);
        out.extend(line_factors(&yinv_w, PowerKind::Lambda, e, -1, ring, q_cap)?);
        out.extend(line_factors(&ctx.t_c, PowerKind::Sym, e, 1, ring, q_cap)?);
    }
    Ok(out)
}

pub fn ell_sector(kind: EllKind, ctx: &BundleContext, q_cap: QExp) -> Result<QSeries> {
    Ok(product(&ctx.ring, q_cap, ell_factors(kind, ctx, q_cap)?, None))
}
