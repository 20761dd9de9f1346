//! Trace profiles and the intertwining operator.

use super::{deeper, region_level, region_min_val, region_val, scale_abs};
use crate::error::Result;
use crate::field::CycScalar;
use crate::gl2rep::{GL2Elem, InducedFn};
use crate::schwartz::{
    boxes, fourier, pullback_coords, shell_balls, tabulate_values, Ball, CoordKind, CoordMap, Ctx,
    Region, SBFunction, SpaceDescriptor,
};

/// `(a, d) ↦ ∫ f(bottom row (d, d·v), determinant a·d)·e(−v) dv`, the trace of `diag(a, d)·w·n(v)`.
pub fn trace_profile(ctx: &Ctx, f: &InducedFn) -> Result<SBFunction> {
    let q = ctx.q();
    let mut terms = Vec::new();
    for (r, coef) in f.f.terms() {
        let (cr, sr, dr) = (&r[0], &r[1], &r[2]);
        let vdelta = region_val(dr).expect("multiplicative");
        let n_s = region_level(sr);
        let vds: Vec<i32> = match region_val(cr) {
            Some(v) => (v <= n_s).then_some(v).into_iter().collect(),
            None => (region_min_val(cr)..=n_s).collect(),
        };
        let mut cover = Vec::new();
        for vd in vds {
            let v_ball = vec![Ball::around_zero(region_min_val(sr) - vd)];
            cover.extend(boxes(&[
                shell_balls(q, vdelta - vd),
                shell_balls(q, vd),
                v_ball,
            ]));
        }
        let depth =
            cover.iter().map(|b| -b[2].level).max().unwrap_or(0) + region_level(cr).max(n_s) + 4;
        let local = deeper(ctx, depth);
        let pieces = tabulate_values(&local, cover, |_, x| {
            let (a, d, v) = (&x[0], &x[1], &x[2]);
            let img = [d.clone(), ctx.mul(d, v), ctx.mul(a, d)];
            let mut inside = Some(true);
            for (reg, p) in r.iter().zip(&img) {
                match reg.contains_point(p) {
                    Some(false) => return Ok(Some(CycScalar::zero(ctx.p()))),
                    None => inside = None,
                    Some(true) => {}
                }
            }
            if inside.is_none() || v.prec() < 0 {
                return Ok(None);
            }
            Ok(Some(coef * &ctx.add_char(&ctx.neg(v))?))
        })?;
        terms.extend(pieces);
    }
    let space = SpaceDescriptor::new(vec![
        CoordKind::Multiplicative,
        CoordKind::Multiplicative,
        CoordKind::Additive,
    ]);
    SBFunction::from_ball_terms(space, q, ctx.p(), terms)?.integrate(&[2])
}

/// The trace `∫ F(w·n(v))·e(−v) dv ∈ one_T` of an induced function.
pub fn trace_map(ctx: &Ctx, f: &InducedFn) -> Result<SBFunction> {
    trace_profile(ctx, f)
}

/// `(a, d) ↦ |d|⁻¹·∫ f(bottom row (d, w), determinant a·d)·e(−w/d) dw`, evaluated cellwise in closed form.
pub fn intertwined_trace_profile(ctx: &Ctx, f: &InducedFn) -> Result<SBFunction> {
    let q = ctx.q();
    let mut terms = Vec::new();
    for (r, coef) in f.f.terms() {
        let (cr, sr, dr) = (&r[0], &r[1], &r[2]);
        let Region::Ball(s) = sr else {
            unreachable!("additive coordinate")
        };
        let vdelta = region_val(dr).expect("multiplicative");
        let vds: Vec<i32> = match region_val(cr) {
            Some(v) => (v <= s.level).then_some(v).into_iter().collect(),
            None => (region_min_val(cr)..=s.level).collect(),
        };
        let cover: Vec<Vec<Ball>> = vds
            .iter()
            .flat_map(|&vd| boxes(&[shell_balls(q, vdelta - vd), shell_balls(q, vd)]))
            .collect();
        let vol = ctx.qpow(-s.level);
        terms.extend(tabulate_values(ctx, cover, |b, x| {
            let (a, d) = (&x[0], &x[1]);
            let checks = [cr.contains_point(d), dr.contains_point(&ctx.mul(a, d))];
            if checks.contains(&Some(false)) {
                return Ok(Some(CycScalar::zero(ctx.p())));
            }
            if checks.contains(&None) {
                return Ok(None);
            }
            let phase = ctx.div(&s.center, d)?;
            if phase.prec() < 0 {
                return Ok(None);
            }
            let vd = b[1].valuation().expect("shell ball");
            Ok(Some(
                &(&(coef * &vol) * &ctx.qpow(vd)) * &ctx.add_char(&ctx.neg(&phase))?,
            ))
        })?);
    }
    SBFunction::from_ball_terms(SpaceDescriptor::torus(), q, ctx.p(), terms)
}

/// `M(f)(g)` as a function of `(λ, y)`:
/// `|y|·∫∫ (R_g f)(bottom row (−yt, −ytu), determinant y)·e(−yλt)·|t| dt du`,
/// computed as `|y|⁻¹·∫ H(c, y)·e(λc) dc` with `H(c, Δ) = ∫ (R_g f)(c, s, Δ) ds`.
pub fn intertwiner_kernel(ctx: &Ctx, f: &InducedFn, g: &GL2Elem) -> Result<SBFunction> {
    let h = f.act(ctx, g)?;
    let big_h = h.f.integrate(&[1])?;
    let hat = fourier(ctx, &big_h, 0)?;
    let reflected = pullback_coords(ctx, &hat, &[CoordMap::scale(0, ctx.int(-1))])?;
    scale_abs(ctx, &reflected, 1, -1)
}
