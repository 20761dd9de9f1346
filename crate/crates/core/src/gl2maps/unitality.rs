//! The two sides of the unitality square.

use super::{region_level, region_min_val, region_val, substitute_cells};
use crate::error::{Error, Result};
use crate::field::LocalElem;
use crate::schwartz::{boxes, shell_balls, Ctx, Region, SBFunction, SpaceDescriptor};

/// For `x⁻¹ ∈ r`: the forced `v(x)` if any, and an upper bound for `v(x)`.
fn inverse_vals(r: &Region) -> (Option<i32>, i32) {
    match region_val(r) {
        Some(v) => (Some(-v), -v),
        None => (None, -region_level(r)),
    }
}

/// `(a, d) ↦ ∫ Ψ((a⁻¹, 0; u·a⁻¹, d⁻¹), a·d) du = |a|·∫ Ψ((a⁻¹, 0; c, d⁻¹), ad) dc`.
pub fn unitality_anticlockwise(ctx: &Ctx, psi: &SBFunction) -> Result<SBFunction> {
    if *psi.space() != SpaceDescriptor::y_space() {
        return Err(Error::Structure(
            "expected a function on M₂(F) × F^×".into(),
        ));
    }
    let h = psi.specialize(1, &LocalElem::zero())?.integrate(&[1])?;
    let q = ctx.q();
    substitute_cells(
        ctx,
        &h,
        SpaceDescriptor::torus(),
        |r| {
            let vy = region_val(&r[2]).expect("multiplicative");
            let (fa, ca) = inverse_vals(&r[0]);
            let (fd, cd) = inverse_vals(&r[1]);
            let pairs: Vec<(i32, i32)> = match (fa, fd) {
                (Some(va), Some(vd)) => {
                    if va + vd == vy {
                        vec![(va, vd)]
                    } else {
                        vec![]
                    }
                }
                (Some(va), None) => (vy - va <= cd)
                    .then_some((va, vy - va))
                    .into_iter()
                    .collect(),
                (None, Some(vd)) => (vy - vd <= ca)
                    .then_some((vy - vd, vd))
                    .into_iter()
                    .collect(),
                (None, None) => (vy - cd..=ca).map(|va| (va, vy - va)).collect(),
            };
            Ok(pairs
                .into_iter()
                .flat_map(|(va, vd)| boxes(&[shell_balls(q, va), shell_balls(q, vd)]))
                .collect())
        },
        |x| {
            Ok(vec![
                ctx.inv(&x[0])?,
                ctx.inv(&x[1])?,
                ctx.mul(&x[0], &x[1]),
            ])
        },
        |b| Ok(ctx.qpow(-b[0].valuation().expect("shell ball"))),
    )
}

/// `(λ, y) ↦ |λ²y|⁻¹·∫ Ψ((1/(yλ), 0; c/(yλ), λ), y) dc = |λ|⁻¹·∫ Ψ((1/(yλ), 0; c′, λ), y) dc′`.
pub fn unitality_clockwise(ctx: &Ctx, psi: &SBFunction) -> Result<SBFunction> {
    if *psi.space() != SpaceDescriptor::y_space() {
        return Err(Error::Structure(
            "expected a function on M₂(F) × F^×".into(),
        ));
    }
    let g = psi.specialize(1, &LocalElem::zero())?;
    let q = ctx.q();
    let space = SpaceDescriptor::new(vec![
        crate::schwartz::CoordKind::Additive,
        crate::schwartz::CoordKind::Multiplicative,
        crate::schwartz::CoordKind::Additive,
    ]);
    let k = substitute_cells(
        ctx,
        &g,
        space,
        |r| {
            let Region::Ball(c) = &r[1] else {
                unreachable!("additive coordinate")
            };
            let mut out = Vec::new();
            for yb in r[3].balls(q) {
                let vy = yb.valuation().expect("multiplicative ball");
                let (fa, ca) = inverse_vals(&r[0]);
                let (lo, hi) = match region_val(&r[2]) {
                    Some(vd) => (vd, vd),
                    None => (region_min_val(&r[2]), i32::MAX),
                };
                let (lo, hi) = match fa {
                    Some(va) => (lo.max(va - vy), hi.min(va - vy)),
                    None => (lo, hi.min(ca - vy)),
                };
                for v in lo..=hi {
                    for lb in shell_balls(q, v) {
                        out.push(vec![lb, yb.clone(), c.clone()]);
                    }
                }
            }
            Ok(out)
        },
        |x| {
            Ok(vec![
                ctx.inv(&ctx.mul(&x[0], &x[1]))?,
                x[2].clone(),
                x[0].clone(),
                x[1].clone(),
            ])
        },
        |b| Ok(ctx.qpow(b[0].valuation().expect("shell ball"))),
    )?;
    k.integrate(&[2])
}
