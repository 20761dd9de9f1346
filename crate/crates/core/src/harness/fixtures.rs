//! Shared generators, hand-built expected values and pointwise oracles.

use super::oracle::representatives;
use super::random::{random_elem, random_sb_in, random_unit_elem, Rng8};
use crate::error::Result;
use crate::field::{CycScalar, LocalElem};
use crate::gl2rep::{GL2Elem, Gen, GenWord, WhittakerFn};
use crate::schwartz::{Ball, CoordKind, Ctx, Region, SBFunction, SpaceDescriptor};
use rand::Rng;

/// Random invertible matrix with entries in `t^{lo}O / t^{hi}O`.
pub fn random_g(ctx: &Ctx, lo: i32, hi: i32, r: &mut Rng8) -> GL2Elem {
    loop {
        let e: Vec<LocalElem> = (0..4).map(|_| random_elem(ctx.q(), lo, hi, r)).collect();
        if let Ok(g) = GL2Elem::new(ctx, e[0].clone(), e[1].clone(), e[2].clone(), e[3].clone()) {
            return g;
        }
    }
}

/// Random element of `GL₂(O)`.
pub fn random_unit_g(ctx: &Ctx, r: &mut Rng8) -> GL2Elem {
    loop {
        let g = random_g(ctx, 0, 2, r);
        if g.det().valuation() == Ok(0) {
            return g;
        }
    }
}

pub fn random_torus_pair(ctx: &Ctx, r: &mut Rng8) -> (LocalElem, LocalElem) {
    (
        random_unit_elem(ctx.q(), r.gen_range(-1..2), 2, r),
        random_unit_elem(ctx.q(), r.gen_range(-1..2), 2, r),
    )
}

/// Random point of a space: additive coordinates in `t^{-1}O`, multiplicative ones of valuation in `[-1, 2]`.
pub fn random_point(ctx: &Ctx, space: &SpaceDescriptor, r: &mut Rng8) -> Vec<LocalElem> {
    space
        .kinds
        .iter()
        .map(|k| match k {
            CoordKind::Additive => random_elem(ctx.q(), -1, 4, r),
            CoordKind::Multiplicative => random_unit_elem(ctx.q(), r.gen_range(-1..3), 5, r),
        })
        .collect()
}

/// Random `(λ, y)` with `λ ≠ 0`.
pub fn random_l_point(ctx: &Ctx, r: &mut Rng8) -> (LocalElem, LocalElem) {
    let mut lam = random_elem(ctx.q(), -2, 4, r);
    if lam.is_exact_zero() {
        lam = LocalElem::t_pow(5);
    }
    (lam, random_unit_elem(ctx.q(), r.gen_range(-1..2), 4, r))
}

/// Random word of `len` generators `m(a, b)` (`a` a unit, `b ∈ t^{b_lo}O`) and `w`.
pub fn random_word(ctx: &Ctx, len: usize, b_lo: i32, r: &mut Rng8) -> GenWord {
    GenWord(
        (0..len)
            .map(|_| {
                if r.gen_bool(0.4) {
                    Gen::W
                } else {
                    Gen::M(
                        random_unit_elem(ctx.q(), 0, 2, r),
                        random_elem(ctx.q(), b_lo, b_lo + 2, r),
                    )
                }
            })
            .collect(),
    )
}

/// The product of a generator word.
pub fn word_matrix(ctx: &Ctx, word: &GenWord) -> Result<GL2Elem> {
    let mut g = GL2Elem::identity(ctx);
    for gen in &word.0 {
        g = g.mul(ctx, &gen.matrix(ctx)?);
    }
    Ok(g)
}

/// Single-cell Whittaker datum near the identity coset.
pub fn small_whittaker(ctx: &Ctx, r: &mut Rng8) -> WhittakerFn {
    loop {
        if let Ok(f) = random_sb_in(ctx, &SpaceDescriptor::u_g_space(), 0, 1, 1, r) {
            if let Ok(w) = WhittakerFn::new(f) {
                return w;
            }
        }
    }
}

/// `q^{-level}·Σ_b W(J·n(b)·g)` over `b ∈ t^{lo}O / t^{level}O`, `J = (0, −1; −1, 0)`.
pub fn unit_brute(
    ctx: &Ctx,
    w: &WhittakerFn,
    g: &GL2Elem,
    lo: i32,
    level: i32,
) -> Result<CycScalar> {
    let j = GL2Elem::new(
        ctx,
        LocalElem::zero(),
        ctx.int(-1),
        ctx.int(-1),
        LocalElem::zero(),
    )?;
    let mut sum = ctx.zero_scalar();
    for b in representatives(ctx.q(), lo, level) {
        let h = j.mul(ctx, &GL2Elem::n(ctx, b)).mul(ctx, g);
        sum += &w.evaluate(ctx, &h)?;
    }
    Ok(&sum * &ctx.qpow(-level))
}

/// Brute-force unit value at `g`, read through `η_w` at `(λ, y)`.
pub fn unit_brute_twisted(
    ctx: &Ctx,
    w: &WhittakerFn,
    g: &GL2Elem,
    lam: &LocalElem,
    y: &LocalElem,
) -> Result<CycScalar> {
    let l = GL2Elem::diag(ctx, ctx.neg(&ctx.inv(lam)?), ctx.neg(&ctx.mul(lam, y)))?.mul(ctx, g);
    let vr = l.c.val_or_prec().min(l.d.val_or_prec());
    unit_brute(ctx, w, &l, -vr - 2, 5 - 2 * vr)
}

fn ball(x: &LocalElem, level: i32) -> Result<Region> {
    Ok(Region::Ball(Ball::new(x, level)?))
}

fn zball(level: i32) -> Region {
    Region::Ball(Ball::around_zero(level))
}

/// `1_{1+εO}(λ)·1_{1+εO}(y)` with `ε = t^m`.
pub fn mu_chain_target(ctx: &Ctx, m: i32) -> Result<SBFunction> {
    let one = LocalElem::one();
    ctx.indicator(
        SpaceDescriptor::l_space(),
        vec![ball(&one, m)?, ball(&one, m)?],
    )
}

/// `1_{εO}(a, b, c)·1_{1+εO}(d)·1_{1+εO}(y)`.
pub fn mu_chain_psi0(ctx: &Ctx, m: i32) -> Result<SBFunction> {
    let one = LocalElem::one();
    ctx.indicator(
        SpaceDescriptor::y_space(),
        vec![zball(m), zball(m), zball(m), ball(&one, m)?, ball(&one, m)?],
    )
}

/// `|ε|²·1{a ∈ ε⁻¹O, b ∈ εO, c ∈ ε⁻¹O, d ∈ 1+εO}·1_{1+εO}(y)`.
pub fn mu_chain_start(ctx: &Ctx, m: i32) -> Result<SBFunction> {
    let one = LocalElem::one();
    let f = ctx.indicator(
        SpaceDescriptor::y_space(),
        vec![
            zball(-m),
            zball(m),
            zball(-m),
            ball(&one, m)?,
            ball(&one, m)?,
        ],
    )?;
    Ok(f.scale(&ctx.qpow(-2 * m)))
}

/// `|ε|²·e(d)` on `{a ∈ εO, b ∈ ε⁻¹O, c ∈ εO, d ∈ ε⁻¹O} × {y ∈ 1+εO}`.
pub fn mu_chain_checkpoint_one(ctx: &Ctx, m: i32) -> Result<SBFunction> {
    let one = LocalElem::one();
    let mut terms = Vec::new();
    for d0 in representatives(ctx.q(), -m, 0) {
        let cell = vec![zball(m), zball(-m), zball(m), ball(&d0, 0)?, ball(&one, m)?];
        terms.push((cell, &ctx.qpow(-2 * m) * &ctx.add_char(&d0)?));
    }
    SBFunction::from_region_terms(SpaceDescriptor::y_space(), ctx.q(), ctx.p(), terms)
}

/// `|ε|·1_{ε⁻¹O}(λ)·e(λ)·1_{1+εO}(y)`.
pub fn mu_chain_checkpoint_two(ctx: &Ctx, m: i32) -> Result<SBFunction> {
    let one = LocalElem::one();
    let mut terms = Vec::new();
    for l0 in representatives(ctx.q(), -m, 0) {
        terms.push((
            vec![ball(&l0, 0)?, ball(&one, m)?],
            &ctx.qpow(-m) * &ctx.add_char(&l0)?,
        ));
    }
    SBFunction::from_region_terms(SpaceDescriptor::l_space(), ctx.q(), ctx.p(), terms)
}

/// `e(−1/d)` on `{|ad − 1| ≤ q^{-n}, |d| = q^{-n}}`, cut into cells `(1/d + O) × (d + t^{2n}O)`.
pub fn trace_closed_form(ctx: &Ctx, n: i32) -> Result<SBFunction> {
    let mut terms = Vec::new();
    for d in representatives(ctx.q(), n, 2 * n) {
        if d.val_or_prec() != n {
            continue;
        }
        let di = ctx.inv(&d)?;
        terms.push((
            vec![ball(&di, 0)?, ball(&d, 2 * n)?],
            ctx.add_char(&ctx.neg(&di))?,
        ));
    }
    SBFunction::from_region_terms(SpaceDescriptor::torus(), ctx.q(), ctx.p(), terms)
}
