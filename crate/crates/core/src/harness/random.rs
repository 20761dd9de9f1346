//! Deterministic pseudo-random corpus.

use crate::error::Result;
use crate::field::{CycScalar, LocalElem, Rat, EXACT};
use crate::schwartz::{Ball, CoordKind, Ctx, Region, SBFunction, SpaceDescriptor};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type Rng8 = ChaCha8Rng;

pub fn rng(seed: u64) -> Rng8 {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Nonzero coefficient drawn from a fixed small set.
pub fn random_coeff(p: u32, rng: &mut Rng8) -> CycScalar {
    match rng.gen_range(0..6) {
        0 => CycScalar::one(p),
        1 => CycScalar::from_int(p, -1),
        2 => CycScalar::from_int(p, 2),
        3 => CycScalar::from_rat(p, Rat::new(1, 3)),
        4 => CycScalar::zeta(p, 1),
        _ => &CycScalar::one(p) + &CycScalar::zeta(p, 2),
    }
}

/// Rational-valued variant of [`random_coeff`].
pub fn random_rat_coeff(p: u32, rng: &mut Rng8) -> CycScalar {
    let r = [
        Rat::from_integer(1),
        Rat::from_integer(-1),
        Rat::from_integer(2),
        Rat::new(1, 3),
    ];
    CycScalar::from_rat(p, r[rng.gen_range(0..r.len())])
}

/// Exact element with digits at exponents `lo..hi`.
pub fn random_elem(q: u32, lo: i32, hi: i32, rng: &mut Rng8) -> LocalElem {
    let digits = (lo..hi).map(|_| rng.gen_range(0..q)).collect();
    LocalElem::from_digits(lo, digits, EXACT)
}

/// Random nonzero exact element of valuation `v` with `len` digits.
pub fn random_unit_elem(q: u32, v: i32, len: i32, rng: &mut Rng8) -> LocalElem {
    let mut digits: Vec<u32> = vec![rng.gen_range(1..q)];
    digits.extend((1..len.max(1)).map(|_| rng.gen_range(0..q)));
    LocalElem::from_digits(v, digits, EXACT)
}

/// Random additive ball inside `t^{lo}O` with level in `[lo, levels]`.
pub fn random_ball(q: u32, lo: i32, levels: i32, rng: &mut Rng8) -> Ball {
    let level = rng.gen_range(lo..=levels.max(lo));
    let c = random_elem(q, lo, level, rng);
    Ball::new(&c, level).expect("exact center")
}

/// Random multiplicative region `c·U_k` with valuation in `[-1, 1]` and `k ≤ levels`.
pub fn random_mult_region(q: u32, levels: i32, rng: &mut Rng8) -> Region {
    let v = rng.gen_range(-1..=1);
    let k = rng.gen_range(0..=levels.max(0));
    if k == 0 {
        return Region::Shell(v);
    }
    let c = random_unit_elem(q, v, k, rng);
    Region::Ball(Ball::new(&c, v + k).expect("exact center"))
}

/// Random cell of the space, respecting the punctured pair.
pub fn random_cell(
    q: u32,
    space: &SpaceDescriptor,
    lo: i32,
    levels: i32,
    rng: &mut Rng8,
) -> Vec<Region> {
    loop {
        let cell: Vec<Region> = space
            .kinds
            .iter()
            .map(|k| match k {
                CoordKind::Additive => Region::Ball(random_ball(q, lo, levels, rng)),
                CoordKind::Multiplicative => random_mult_region(q, levels, rng),
            })
            .collect();
        let ok = match space.punctured {
            Some((i, j)) => {
                !matches!((&cell[i], &cell[j]), (Region::Ball(a), Region::Ball(b)) if a.contains_zero() && b.contains_zero())
            }
            None => true,
        };
        if ok {
            return cell;
        }
    }
}

/// A random function with up to `cells` cells (overlaps are summed), additive support in `t^{-1}O`.
pub fn random_sb(
    ctx: &Ctx,
    space: &SpaceDescriptor,
    levels: i32,
    cells: usize,
    rng: &mut Rng8,
) -> Result<SBFunction> {
    random_sb_in(ctx, space, -1, levels, cells, rng)
}

/// [`random_sb`] with additive support in `t^{lo}O`.
pub fn random_sb_in(
    ctx: &Ctx,
    space: &SpaceDescriptor,
    lo: i32,
    levels: i32,
    cells: usize,
    rng: &mut Rng8,
) -> Result<SBFunction> {
    let terms = (0..cells.max(1))
        .map(|_| {
            (
                random_cell(ctx.q(), space, lo, levels, rng),
                random_coeff(ctx.p(), rng),
            )
        })
        .collect();
    SBFunction::from_region_terms(space.clone(), ctx.q(), ctx.p(), terms)
}

/// [`random_sb`] from a seed.
pub fn random_sb_seeded(
    ctx: &Ctx,
    space: &SpaceDescriptor,
    levels: i32,
    cells: usize,
    seed: u64,
) -> Result<SBFunction> {
    random_sb(ctx, space, levels, cells, &mut rng(seed))
}
