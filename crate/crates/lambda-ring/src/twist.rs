//! Named twist bundles appearing in the q-expansions.
//!
//! A twist is a finite Scalar-weighted sum of virtual bundles. Names ending in
//! `c` are the forms obtained by expanding the generating series directly;
//! they differ from the literal ones only where the printed formulas disagree
//! with the expansion.

use series_core::{int, rat, Rational, Scalar, ScalarForm, Unit};

use crate::bundle::VirtualBundle;
use crate::error::{LambdaError, Result};
use crate::sectors::BundleContext;

#[derive(Clone, Debug, Default)]
pub struct TwistBundle {
    pub terms: Vec<(Scalar, VirtualBundle)>,
}

impl TwistBundle {
    pub fn from_bundle(b: VirtualBundle) -> Self {
        TwistBundle { terms: vec![(Scalar::one(), b)] }
    }

    pub fn push(&mut self, s: Scalar, b: VirtualBundle) {
        self.terms.push((s, b));
    }

    pub fn extend(&mut self, other: TwistBundle) {
        self.terms.extend(other.terms);
    }

    /// Multiplies every coefficient by `s`.
    pub fn scaled(mut self, s: &Scalar) -> Self {
        for t in &mut self.terms {
            t.0 = t.0.mul(s);
        }
        self
    }

    /// Tensor product of every term with `b`.
    pub fn tensor(&self, b: &VirtualBundle) -> Self {
        TwistBundle { terms: self.terms.iter().map(|(s, v)| (s.clone(), v.tensor(b))).collect() }
    }

    pub fn ch(&self, ctx: &BundleContext) -> ScalarForm {
        let mut f = ScalarForm::zero(&ctx.ring);
        for (s, v) in &self.terms {
            f = f.add(&ScalarForm::new(s, &v.ch(&ctx.ring)));
        }
        f
    }
}

pub const TWIST_NAMES: &[&str] = &[
    "1", "Tt", "L2Tt", "Lt", "LW", "SW", "A0", "A1", "A2", "A3", "A4", "A4c", "A5", "A6", "A7", "A7c", "A8", "A8c", "A9",
    "A9c", "A10", "A10c", "A11", "A11c", "A12", "A12c", "A13", "A13c", "B1", "B2", "B3", "B4",
];

fn pi_i(k: i32, i: bool, r: Rational) -> Scalar {
    Scalar::monomial(r, Unit::new(k, i))
}

fn sign(p: u32) -> i64 {
    if p % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Σₚ (−1)ᵖ (p − l/2)ᵏ ΛᵖW* with coefficient `s`.
fn moment(ctx: &BundleContext, k: u32, s: &Scalar) -> TwistBundle {
    let wd = ctx.w_dual();
    let lam = wd.lambda_series(ctx.l.max(0) as u32);
    let mut t = TwistBundle::default();
    for (p, b) in lam.into_iter().enumerate() {
        let shift = rat(2 * p as i64 - ctx.l, 2);
        let c = pow(&shift, k) * int(sign(p as u32));
        if c != int(0) && !b.is_zero() {
            t.push(s.scale(&c), b);
        }
    }
    t
}

fn pow(r: &Rational, k: u32) -> Rational {
    (0..k).fold(int(1), |acc, _| acc * r)
}

fn triv(n: i64) -> VirtualBundle {
    VirtualBundle::trivial(n)
}

/// W + W*.
fn w_sym(ctx: &BundleContext) -> VirtualBundle {
    ctx.w.add(&ctx.w_dual())
}

/// The a₁ bracket of the q¹ term: printed `linear` carries the trivial
/// summand, `corrected` chooses the form derived from the expansion.
fn a1_q1(ctx: &BundleContext, base: VirtualBundle, corrected: bool) -> TwistBundle {
    let lw = ctx.w_dual().lambda_neg1();
    let mut t = TwistBundle::default();
    if corrected {
        // 2πi [Λ₋₁W*⊗(W − W*) + SW ⊗ base]
        t.push(pi_i(1, true, int(2)), lw.tensor(&ctx.w.sub(&ctx.w_dual())));
        t.extend(moment(ctx, 1, &pi_i(1, true, int(2))).tensor(&base));
    } else {
        // −2πi Λ₋₁W*⊗(W + W*) + πi[2Σ_{j≥1}(−1)ʲΛʲW* − lΛ₋₁W*] ⊗ base
        t.push(pi_i(1, true, int(-2)), lw.tensor(&w_sym(ctx)));
        let wd = ctx.w_dual();
        let mut bracket = lw.scale(-ctx.l);
        for (j, b) in wd.lambda_series(ctx.l.max(0) as u32).into_iter().enumerate().skip(1) {
            bracket = bracket.add(&b.scale(2 * sign(j as u32)));
        }
        t.push(pi_i(1, true, int(1)), bracket.tensor(&base));
    }
    t
}

/// The q² twist shared by the elliptic expansions: S²T + cross terms + linear + constant.
fn ell_q2(ctx: &BundleContext, t: &VirtualBundle, s2: VirtualBundle, linear: i64, constant: i64) -> VirtualBundle {
    let ws = w_sym(ctx);
    let wd = ctx.w_dual();
    s2.add(&wd.lambda(2))
        .add(&ctx.w.lambda(2))
        .add(&wd.tensor(&ctx.w))
        .add(&ws.sub(t).scale(linear))
        .sub(&ws.tensor(t))
        .add(&triv(constant))
}

/// Builds the named twist for the given instance.
pub fn twist_bundle(name: &str, ctx: &BundleContext) -> Result<TwistBundle> {
    let (d, l) = (ctx.d, ctx.l);
    let tt = ctx.t_tilde();
    let lt = ctx.l_tilde();
    let wd = ctx.w_dual();
    let ws = w_sym(ctx);
    let t10s = ctx.t10.add(&ctx.t10.dual());
    let one = TwistBundle::from_bundle;
    let b = match name {
        "1" => one(triv(1)),
        "Tt" => one(tt),
        "L2Tt" => one(tt.lambda(2)),
        "Lt" => one(lt),
        "LW" => one(wd.lambda_neg1()),
        "SW" => moment(ctx, 1, &Scalar::one()),
        "A0" => one(tt.scale(2).add(&tt.lambda(2)).add(&tt.tensor(&tt)).add(&tt.sym(2))),
        "A1" => one(
            tt.lambda(4)
                .add(&tt.lambda(2).tensor(&tt))
                .add(&tt.tensor(&tt))
                .add(&tt.sym(2))
                .add(&tt),
        ),
        "A2" => one(t10s.sub(&triv(2 * (d - 1 - l))).sub(&ws)),
        "A3" => {
            let s2 = ctx.t10.sym(2).add(&ctx.t10.dual().tensor(&ctx.t10)).add(&ctx.t10.dual().sym(2));
            one(ell_q2(ctx, &t10s, s2, 2 * (d - 1 - l) - 1, (d - 1 - l) * (2 * d - 2 * l - 5)))
        }
        "A4" | "A4c" => a1_q1(ctx, t10s.sub(&triv(2 * (d - 1 - l))).sub(&ws), name == "A4c"),
        "A5" => {
            let mut t = moment(ctx, 2, &pi_i(2, false, int(-2)));
            t.extend(moment(ctx, 0, &pi_i(2, false, rat(l, 6))));
            t
        }
        "A6" => {
            // (4/3)π³(√−1)³ = −(4/3)π³√−1
            let mut t = moment(ctx, 3, &pi_i(3, true, rat(-4, 3)));
            t.extend(moment(ctx, 1, &pi_i(3, true, rat(l, 3))));
            t
        }
        "A7" | "A7c" => {
            let middle = if name == "A7" { rat(-l * l, 3) } else { rat(-l, 3) };
            let mut t = moment(ctx, 4, &pi_i(4, false, rat(2, 3)));
            t.extend(moment(ctx, 2, &pi_i(4, false, middle)));
            t.extend(moment(ctx, 0, &pi_i(4, false, rat(l * l, 72))));
            t
        }
        "A8" => one(ctx.t_c.sub(&triv(2 * (d - 1) - 3)).sub(&ws)),
        "A8c" => one(ctx.t_c.sub(&triv(2 * (d - l) - 3)).sub(&ws)),
        "A9" | "A9c" => {
            let m = if name == "A9" { d - 1 } else { d - l };
            one(ell_q2(ctx, &ctx.t_c, ctx.t_c.sym(2), 2 * m - 4, (d - l - 3) * (2 * d - 2 * l - 3)))
        }
        "A10" => a1_q1(ctx, ctx.t_c.sub(&triv(2 * (d - 1) - 3)).sub(&ws), false),
        "A10c" => a1_q1(ctx, ctx.t_c.sub(&triv(2 * (d - l) - 3)).sub(&ws), true),
        "A11" => one(ctx.t_c.sub(&triv(2 * (d - 1) - 1)).sub(&ws)),
        "A11c" => one(ctx.t_c.sub(&triv(2 * (d - l) - 1)).sub(&ws)),
        "A12" | "A12c" => {
            let m = if name == "A12" { d - 1 } else { d - l };
            one(ell_q2(ctx, &ctx.t_c, ctx.t_c.sym(2), 2 * m - 2, (d - l - 2) * (2 * d - 2 * l - 1)))
        }
        "A13" => a1_q1(ctx, ctx.t_c.sub(&triv(2 * (d - 1) - 1)).sub(&ws), false),
        "A13c" => a1_q1(ctx, ctx.t_c.sub(&triv(2 * (d - l) - 1)).sub(&ws), true),
        "B1" => one(b1(&tt, &lt)),
        "B2" => {
            let l2 = lt.lambda(2);
            one(tt.sym(2)
                .add(&tt)
                .add(&b1_l(&lt).tensor(&tt))
                .add(&l2.tensor(&l2))
                .add(&lt.lambda(4).scale(2))
                .sub(&lt.tensor(&lt.lambda(3)).scale(2))
                .add(&lt.tensor(&l2).scale(2))
                .sub(&lt.tensor(&lt).tensor(&lt))
                .add(&lt)
                .add(&l2))
        }
        "B3" => one(tt.sub(&lt)),
        "B4" => one(lt.lambda(2).sub(&lt).sub(&lt.tensor(&tt)).add(&tt.sym(2)).add(&tt)),
        _ => return Err(LambdaError::Domain(format!("unknown twist bundle '{name}'"))),
    };
    Ok(b)
}

/// 2Λ²L̃ − L̃⊗L̃ + L̃.
fn b1_l(lt: &VirtualBundle) -> VirtualBundle {
    lt.lambda(2).scale(2).sub(&lt.tensor(lt)).add(lt)
}

fn b1(tt: &VirtualBundle, lt: &VirtualBundle) -> VirtualBundle {
    tt.add(&b1_l(lt))
}
