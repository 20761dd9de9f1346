//! The unit map from Whittaker data to induced functions.

use super::{deeper, region_val};
use crate::error::{Error, Result};
use crate::field::{CycScalar, LocalElem};
use crate::gl2rep::whittaker::section_coordinate;
use crate::gl2rep::{InducedFn, WhittakerFn};
use crate::schwartz::{
    boxes, shell_balls, tabulate, Ball, CoordKind, Ctx, Probe, SBFunction, SpaceDescriptor,
};
use std::collections::BTreeSet;

/// Top row of the section matrix with bottom row `(c, s)` and determinant `Δ`.
fn section_top(
    ctx: &Ctx,
    c: &LocalElem,
    s: &LocalElem,
    delta: &LocalElem,
) -> Result<Option<[LocalElem; 2]>> {
    let first = if c.is_zero_to_prec() {
        if c.prec() <= s.val_or_prec() {
            return Ok(None);
        }
        false
    } else if s.is_zero_to_prec() {
        if c.val_or_prec() > s.prec() {
            return Ok(None);
        }
        true
    } else {
        c.val_or_prec() <= s.val_or_prec()
    };
    Ok(Some(if first {
        [LocalElem::zero(), ctx.neg(&ctx.div(delta, c)?)]
    } else {
        [ctx.div(delta, s)?, LocalElem::zero()]
    }))
}

/// `W(J·n(b)·σ(c, s, Δ))` on a box, or its vanishing `b`-integral over the box.
///
/// Writing the phase as `A/z(b)` with `z = B + A·b`, a `b`-ball of level `L` integrates to zero
/// when the linear term of the expansion is a nontrivial character and the quadratic term is trivial.
fn unit_integrand(
    ctx: &Ctx,
    w: &WhittakerFn,
    c: &LocalElem,
    s: &LocalElem,
    delta: &LocalElem,
    b: &LocalElem,
    level: i32,
) -> Result<Option<CycScalar>> {
    let Some([g11, g12]) = section_top(ctx, c, s, delta)? else {
        return Ok(None);
    };
    let h21 = ctx.neg(&ctx.add(&g11, &ctx.mul(b, c)));
    let h22 = ctx.neg(&ctx.add(&g12, &ctx.mul(b, s)));
    let stored = match w.f.value_at(&[h21.clone(), h22.clone(), ctx.neg(delta)]) {
        None => return Ok(None),
        Some(v) if v.is_zero() => return Ok(Some(v)),
        Some(v) => v,
    };
    let (h11, h12) = (ctx.neg(c), ctx.neg(s));
    let x = section_coordinate(ctx, [&h11, &h12, &h21, &h22])?;
    if x.prec() >= 0 {
        return Ok(Some(&stored * &ctx.theta(&x)?));
    }
    let first =
        !h21.is_zero_to_prec() && (h22.is_zero_to_prec() || h21.val_or_prec() <= h22.val_or_prec());
    let (a, z) = if first { (&h11, &h21) } else { (&h12, &h22) };
    if a.is_zero_to_prec() || z.is_zero_to_prec() {
        return Ok(None);
    }
    let (va, vz) = (a.valuation()?, z.valuation()?);
    let cancels = level + va > vz && 3 * (va - vz) + 2 * level >= 0 && 2 * (va - vz) + level < 0;
    Ok(cancels.then(|| CycScalar::zero(ctx.p())))
}

/// `f(g) = ∫ W(J·n(b)·g) db` with `J = diag(−1, 1)·w⁻¹ = (0, −1; −1, 0)`, stored on the section.
///
/// With `n_lo ≤ v(bottom row of W's support)` and `N` the finest level of `W`, the value at
/// `(c, s, Δ)` vanishes unless `2n_lo − N − 3 ≤ min(v(c), v(s)) ≤ v(Δ) − n_lo`, and only
/// `b ∈ t^{n_lo − min(v(c), v(s))}O` contributes.
pub fn unit_map(ctx: &Ctx, w: &WhittakerFn) -> Result<InducedFn> {
    let q = ctx.q();
    let terms = w.f.ball_terms();
    if terms.is_empty() {
        return Ok(InducedFn::zero(ctx));
    }
    let n_lo = terms
        .iter()
        .map(|(b, _)| b[0].min_val().min(b[1].min_val()))
        .min()
        .expect("nonempty");
    let top = terms
        .iter()
        .map(|(b, _)| b[0].level.max(b[1].level))
        .max()
        .expect("nonempty");
    let dvals: BTreeSet<i32> =
        w.f.terms()
            .iter()
            .map(|(r, _)| region_val(&r[2]).expect("multiplicative"))
            .collect();
    let mut cover = Vec::new();
    for &vd in &dvals {
        for vr in 2 * n_lo - top - 3..=vd - n_lo {
            let b = vec![Ball::around_zero(n_lo - vr)];
            let rows = [
                (shell_balls(q, vr), vec![Ball::around_zero(vr)]),
                (vec![Ball::around_zero(vr + 1)], shell_balls(q, vr)),
            ];
            for (c, s) in rows {
                cover.extend(boxes(&[c, s, shell_balls(q, vd), b.clone()]));
            }
        }
    }
    let local = deeper(ctx, 2 * (top - n_lo) + 6);
    let pieces = tabulate(&local, cover, |boxb, x| {
        let (c, s, delta, b) = (&x[0], &x[1], &x[2], &x[3]);
        match unit_integrand(ctx, w, c, s, delta, b, boxb[3].level) {
            Ok(Some(v)) => Ok(Probe::Const(v)),
            Ok(None) | Err(Error::ZeroToPrecision) | Err(Error::InsufficientPrecision(_)) => {
                Ok(Probe::Split(None))
            }
            Err(e) => Err(e),
        }
    })?;
    let space = SpaceDescriptor::new(vec![
        CoordKind::Additive,
        CoordKind::Additive,
        CoordKind::Multiplicative,
        CoordKind::Additive,
    ])
    .with_puncture(0, 1)?;
    let full = SBFunction::from_ball_terms(space, q, ctx.p(), pieces)?;
    InducedFn::new(full.integrate(&[3])?)
}
