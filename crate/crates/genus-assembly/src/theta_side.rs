//! The theta-product form of the elliptic genera,
//! η^{3N} ∏ 2π√−1xᵢ/θ(τ,xᵢ) ∏ θ(τ,w_j − z),
//! expanded from the Jacobi product formula in normalized roots.

use series_core::{euler_product, product, rat, GradedPoly, QExp, QSeries, Scalar};

use crate::assemble::{i_pow, Assembly};
use crate::error::{GenusError, Result};
use crate::instance::GenusId;

/// sinh(v/2)/(v/2) in a single variable expression `v`.
fn sinhc_half(v: &GradedPoly) -> GradedPoly {
    let ring = v.ring();
    let mut out = GradedPoly::one(ring);
    let v2 = &(v * v).scale(&rat(1, 4));
    let mut term = GradedPoly::one(ring);
    for k in 1..=ring.degree_cap().max(ring.zeta_cap()) as i64 {
        term = (&term * v2).scale(&rat(1, (2 * k) * (2 * k + 1)));
        if term.is_zero() {
            break;
        }
        out.add_assign(&term);
    }
    out
}

/// ∏_{j≥1}(1 − e^{v}q^j)(1 − e^{−v}q^j).
fn theta_tail(v: &GradedPoly, q_cap: QExp) -> Result<Vec<QSeries>> {
    let ring = v.ring();
    let ep = v.exp()?;
    let em = v.neg().exp()?;
    let mut out = Vec::new();
    for j in 1..=q_cap.whole() {
        for e in [&ep, &em] {
            let mut f = QSeries::one(ring, q_cap);
            f.add_at(QExp::int(j), &e.neg());
            out.push(f);
        }
    }
    Ok(out)
}

/// Returns (unit, series) with theta side = unit · series; the series is
/// extracted at the instance degree and should equal the bundle-side genus.
pub fn theta_side(asm: &Assembly, q_cap: QExp) -> Result<(Scalar, QSeries)> {
    let inst = &asm.instance;
    let ring = &asm.ring;
    let (d, l) = (inst.d() as i64, inst.l as i64);
    let n_eta = match inst.genus {
        GenusId::Ell => d - 1 - l,
        GenusId::EllTilde => d - l - 2,
        GenusId::EllBar => d - l - 1,
        _ => return Err(GenusError::Config("theta side exists only for elliptic genera".into())),
    };
    let n_x = inst.pairs() as i64;
    let c = euler_product(q_cap.whole() as u32).embed(ring)?;
    let mut factors = vec![c.pow(3 * n_eta - n_x + l)?];

    // x-roots: X/(2 sinh(X/2)) / ∏(1 − e^{±X}qʲ); zero roots give 1/∏(1 − qʲ)²
    let symbolic = inst.t_roots(ring);
    for k in 0..n_x as usize {
        let x = match symbolic.get(k) {
            Some(&i) => GradedPoly::var(ring, i),
            None => GradedPoly::zero(ring),
        };
        let s = sinhc_half(&x).invert()?;
        let tail = product(ring, q_cap, theta_tail(&x, q_cap)?, None).invert()?;
        factors.push(QSeries::monomial(q_cap, QExp::ZERO, s));
        factors.push(tail);
    }
    // w-roots: 2 sinh((w − ζ)/2) ∏(1 − e^{±(w−ζ)}qʲ)
    let z = ring.zeta_index().ok_or_else(|| GenusError::Config("no zeta variable".into()))?;
    for i in ring.group_indices("W") {
        let v = &GradedPoly::var(ring, i) - &GradedPoly::var(ring, z);
        let half = v.scale(&rat(1, 2));
        let two_sinh = &half.exp()? - &half.neg().exp()?;
        factors.push(QSeries::monomial(q_cap, QExp::ZERO, two_sinh));
        factors.extend(theta_tail(&v, q_cap)?);
    }
    let series = product(ring, q_cap, factors, Some(inst.extract_degree()));
    // η^{3N} carries q^{N/8}, each θ a q^{1/8}
    let shift = QExp(3 * (n_eta - n_x + l) as i32);
    let series = if shift == QExp::ZERO { series } else { series.shift(shift) };
    Ok((i_pow(n_x - l), series))
}
