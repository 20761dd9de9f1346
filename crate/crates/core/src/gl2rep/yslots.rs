//! The three commuting `GL₂`-actions on `Y = S(M₂(F) × F^×)` and transposition.
//!
//! Coordinates are `(a, b, c, d, y)` with `x = (a, b; c, d)`.

use super::matrix::{bruhat_decompose, GL2Elem, Gen};
use crate::error::{Error, Result};
use crate::field::LocalElem;
use crate::schwartz::{
    fourier_m2, modulate, pullback_coords, pullback_linear, CoordMap, Ctx, Poly, SBFunction, YScale,
};

pub type YElem = SBFunction;

pub const MATRIX: [usize; 4] = [0, 1, 2, 3];
pub const Y: usize = 4;

/// How the outer slots rescale `y`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DetConvention {
    /// `y ↦ y·det g₁·det g₃`.
    #[default]
    Product,
    /// `y ↦ y·det g₁` only; the third slot leaves `y` alone.
    FirstOnly,
}

fn block(rows: [[&LocalElem; 4]; 4]) -> Vec<Vec<LocalElem>> {
    rows.iter()
        .map(|r| r.iter().map(|x| (*x).clone()).collect())
        .collect()
}

/// `Ψ(g⁻¹x, y·det g)`.
pub fn act_slot1(ctx: &Ctx, g: &GL2Elem, psi: &YElem) -> Result<YElem> {
    let h = g.inv(ctx)?;
    let z = LocalElem::zero();
    let m = block([
        [&h.a, &z, &h.b, &z],
        [&z, &h.a, &z, &h.b],
        [&h.c, &z, &h.d, &z],
        [&z, &h.c, &z, &h.d],
    ]);
    let moved = pullback_linear(ctx, psi, &MATRIX, &m)?;
    pullback_coords(ctx, &moved, &[CoordMap::scale(Y, g.det().clone())])
}

/// `Ψ(x·g⁻ᵀ, y·det g)`.
pub fn act_slot3(ctx: &Ctx, g: &GL2Elem, psi: &YElem) -> Result<YElem> {
    act_slot3_with(ctx, g, psi, DetConvention::Product)
}

pub fn act_slot3_with(ctx: &Ctx, g: &GL2Elem, psi: &YElem, conv: DetConvention) -> Result<YElem> {
    let h = g.inv(ctx)?;
    let z = LocalElem::zero();
    let m = block([
        [&h.a, &h.b, &z, &z],
        [&h.c, &h.d, &z, &z],
        [&z, &z, &h.a, &h.b],
        [&z, &z, &h.c, &h.d],
    ]);
    let moved = pullback_linear(ctx, psi, &MATRIX, &m)?;
    match conv {
        DetConvention::Product => {
            pullback_coords(ctx, &moved, &[CoordMap::scale(Y, g.det().clone())])
        }
        DetConvention::FirstOnly => Ok(moved),
    }
}

/// Middle-slot action of one generator.
pub fn act_mid_gen(ctx: &Ctx, g: &Gen, psi: &YElem) -> Result<YElem> {
    match g {
        Gen::W => fourier_m2(ctx, psi, MATRIX, &YScale::Coord(Y)),
        Gen::M(a, b) => {
            // |a|·e(b·y·det x)·Ψ(x, a·y)
            let moved = pullback_coords(ctx, psi, &[CoordMap::scale(Y, a.clone())])?;
            let scaled = moved.scale(&ctx.qpow(-a.valuation()?));
            let det = Poly::monomial(b.clone(), vec![1, 0, 0, 1, 1])
                .add(Poly::monomial(ctx.neg(b), vec![0, 1, 1, 0, 1]));
            modulate(ctx, &scaled, &det)
        }
    }
}

/// Middle-slot action of `diag(1, d)`: `|d|⁻¹·Ψ(d⁻¹x, d·y)`.
pub fn act_mid_diag(ctx: &Ctx, d: &LocalElem, psi: &YElem) -> Result<YElem> {
    let di = ctx.inv(d)?;
    let mut maps: Vec<CoordMap> = MATRIX
        .iter()
        .map(|&i| CoordMap::scale(i, di.clone()))
        .collect();
    maps.push(CoordMap::scale(Y, d.clone()));
    Ok(pullback_coords(ctx, psi, &maps)?.scale(&ctx.qpow(d.valuation()?)))
}

/// Middle-slot action through `g = m(1, a/c)·w·diag(1, det/c)·m(c, d)`, or
/// `diag(1, d)·m(a, b)` when `c = 0`; at most one Fourier transform.
pub fn act_mid(ctx: &Ctx, g: &GL2Elem, psi: &YElem) -> Result<YElem> {
    if g.c.is_exact_zero() {
        let moved = act_mid_gen(ctx, &Gen::M(g.a.clone(), g.b.clone()), psi)?;
        return act_mid_diag(ctx, &g.d, &moved);
    }
    if g.c.is_zero_to_prec() {
        return Err(Error::InsufficientPrecision(
            "cannot decide whether c vanishes".into(),
        ));
    }
    let cinv = ctx.inv(&g.c)?;
    let mut out = act_mid_gen(ctx, &Gen::M(g.c.clone(), g.d.clone()), psi)?;
    out = act_mid_diag(ctx, &ctx.mul(g.det(), &cinv), &out)?;
    out = act_mid_gen(ctx, &Gen::W, &out)?;
    act_mid_gen(ctx, &Gen::M(LocalElem::one(), ctx.mul(&g.a, &cinv)), &out)
}

/// Middle-slot action along the Bruhat word of `g`.
pub fn act_mid_word(ctx: &Ctx, g: &GL2Elem, psi: &YElem) -> Result<YElem> {
    let word = bruhat_decompose(ctx, g)?;
    let mut out = psi.clone();
    for gen in word.0.iter().rev() {
        out = act_mid_gen(ctx, gen, &out)?;
    }
    Ok(out)
}

/// `Ψ(xᵀ, y)`.
pub fn transpose_13(psi: &YElem) -> Result<YElem> {
    psi.permute(&[0, 2, 1, 3, 4], psi.space().clone())
}

/// The Weyl element acting in all three slots: `Ψ ↦ slot1(w)·slot3(w⁻¹)·mid(w)·Ψ`, i.e.
/// `x ↦ w⁻¹xw⁻¹` in the outer slots.
pub fn act_www(ctx: &Ctx, psi: &YElem) -> Result<YElem> {
    let w = GL2Elem::w(ctx);
    let winv = w.inv(ctx)?;
    let mid = act_mid_gen(ctx, &Gen::W, psi)?;
    let s3 = act_slot3(ctx, &winv, &mid)?;
    act_slot1(ctx, &w, &s3)
}
