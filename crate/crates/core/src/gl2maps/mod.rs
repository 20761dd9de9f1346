//! The explicit operators between `Y`, the torus modules and induced functions.

pub mod l2;
pub mod mu;
pub mod trace;
pub mod unit;
pub mod unitality;

pub use l2::{L2Elem, Tail};
pub use mu::{mu, mu_doubleprime, mu_prime, partial_fourier_l};
pub use trace::{intertwined_trace_profile, intertwiner_kernel, trace_map, trace_profile};
pub use unit::unit_map;
pub use unitality::{unitality_anticlockwise, unitality_clockwise};

use crate::error::{Error, Result};
use crate::field::{CycScalar, LocalElem};
use crate::schwartz::{tabulate_values, Ball, Ctx, Region, SBFunction, SpaceDescriptor};

/// Valuation of a region that avoids `0`.
pub(crate) fn region_val(r: &Region) -> Option<i32> {
    match r {
        Region::Shell(v) => Some(*v),
        Region::Ball(b) => b.valuation(),
    }
}

pub(crate) fn region_min_val(r: &Region) -> i32 {
    match r {
        Region::Shell(v) => *v,
        Region::Ball(b) => b.min_val(),
    }
}

pub(crate) fn region_level(r: &Region) -> i32 {
    match r {
        Region::Shell(v) => v + 1,
        Region::Ball(b) => b.level,
    }
}

/// `f·|x_coord|^power`; the coordinate must avoid `0` on every cell.
pub fn scale_abs(ctx: &Ctx, f: &SBFunction, coord: usize, power: i32) -> Result<SBFunction> {
    let terms = f
        .ball_terms()
        .into_iter()
        .map(|(b, c)| {
            let v = b[coord]
                .valuation()
                .ok_or_else(|| Error::Structure("|x| is unbounded on a cell".into()))?;
            Ok((b, &c * &ctx.qpow(-power * v)))
        })
        .collect::<Result<Vec<_>>>()?;
    f.rebuild(terms)
}

/// A copy of `ctx` allowed at least `depth` refinement levels.
pub(crate) fn deeper(ctx: &Ctx, depth: i32) -> Ctx {
    Ctx::new(ctx.k.clone(), ctx.budget.max(depth))
}

/// Substitutes into `f` cell by cell: for each cell, `cover` lists boxes of the target space
/// containing its preimage; `image` maps a box to source coordinates and `weight` gives a
/// factor constant on the box.
pub(crate) fn substitute_cells(
    ctx: &Ctx,
    f: &SBFunction,
    space: SpaceDescriptor,
    mut cover: impl FnMut(&[Region]) -> Result<Vec<Vec<Ball>>>,
    image: impl Fn(&[LocalElem]) -> Result<Vec<LocalElem>>,
    weight: impl Fn(&[Ball]) -> Result<CycScalar>,
) -> Result<SBFunction> {
    let mut terms = Vec::new();
    for (regions, c) in f.terms() {
        let start = cover(regions)?;
        terms.extend(tabulate_values(ctx, start, |b, x| {
            let img = image(x)?;
            let mut inside = Some(true);
            for (r, p) in regions.iter().zip(&img) {
                match r.contains_point(p) {
                    Some(false) => return Ok(Some(CycScalar::zero(ctx.p()))),
                    None => inside = None,
                    Some(true) => {}
                }
            }
            match inside {
                Some(_) => Ok(Some(c * &weight(b)?)),
                None => Ok(None),
            }
        })?);
    }
    SBFunction::from_ball_terms(space, ctx.q(), ctx.p(), terms)
}

#[cfg(test)]
mod tests;
