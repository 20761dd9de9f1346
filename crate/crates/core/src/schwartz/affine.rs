//! Pullback along invertible affine maps.

use super::canon::BallTerm;
use super::cell::{Ball, CoordKind};
use super::func::SBFunction;
use super::Ctx;
use crate::error::{Error, Result};
use crate::field::LocalElem;

/// The substitution `x_coord ↦ a·x_coord + b`.
#[derive(Debug, Clone)]
pub struct CoordMap {
    pub coord: usize,
    pub a: LocalElem,
    pub b: LocalElem,
}

impl CoordMap {
    pub fn scale(coord: usize, a: LocalElem) -> Self {
        Self {
            coord,
            a,
            b: LocalElem::zero(),
        }
    }

    pub fn shift(coord: usize, b: LocalElem) -> Self {
        Self {
            coord,
            a: LocalElem::one(),
            b,
        }
    }
}

/// `g(x) = f(x')` where `x'` applies each coordinate substitution.
pub fn pullback_coords(ctx: &Ctx, f: &SBFunction, maps: &[CoordMap]) -> Result<SBFunction> {
    let mut terms = f.ball_terms();
    for m in maps {
        if m.coord >= f.dim() {
            return Err(Error::Structure(format!("no coordinate {}", m.coord)));
        }
        if m.a.is_zero_to_prec() {
            return Err(Error::SingularMap(format!(
                "scaling by {} on coordinate {}",
                m.a, m.coord
            )));
        }
        if f.space().kinds[m.coord] == CoordKind::Multiplicative && !m.b.is_exact_zero() {
            return Err(Error::Structure(
                "translation on a multiplicative coordinate".into(),
            ));
        }
        for (balls, _) in terms.iter_mut() {
            balls[m.coord] = preimage_affine(ctx, &balls[m.coord], &m.a, &m.b)?;
        }
    }
    f.rebuild(terms)
}

/// `{x : a·x + b ∈ B}`.
pub fn preimage_affine(ctx: &Ctx, ball: &Ball, a: &LocalElem, b: &LocalElem) -> Result<Ball> {
    let va = a.valuation()?;
    let center = ctx.div(&ctx.sub(&ball.center, b), a)?;
    Ball::new(&center, ball.level - va)
}

#[derive(Debug, Clone)]
enum Elementary {
    Swap(usize, usize),
    Scale(usize, LocalElem),
    /// `x_i ↦ x_i + s·x_j`.
    Shear(usize, usize, LocalElem),
}

/// `g(x) = f(..., M·x_S, ...)` for the additive coordinates `S = coords`.
pub fn pullback_linear(
    ctx: &Ctx,
    f: &SBFunction,
    coords: &[usize],
    m: &[Vec<LocalElem>],
) -> Result<SBFunction> {
    let n = coords.len();
    if m.len() != n || m.iter().any(|r| r.len() != n) {
        return Err(Error::Structure(
            "matrix shape does not match coordinates".into(),
        ));
    }
    if coords
        .iter()
        .any(|&c| f.space().kinds.get(c) != Some(&CoordKind::Additive))
    {
        return Err(Error::Structure(
            "linear maps act on additive coordinates only".into(),
        ));
    }
    let mut terms = f.ball_terms();
    for e in decompose(ctx, m)? {
        terms = match e {
            Elementary::Swap(i, j) => {
                for (balls, _) in terms.iter_mut() {
                    balls.swap(coords[i], coords[j]);
                }
                terms
            }
            Elementary::Scale(i, a) => {
                for (balls, _) in terms.iter_mut() {
                    balls[coords[i]] =
                        preimage_affine(ctx, &balls[coords[i]], &a, &LocalElem::zero())?;
                }
                terms
            }
            Elementary::Shear(i, j, s) => shear(ctx, terms, coords[i], coords[j], &s)?,
        };
    }
    f.rebuild(terms)
}

/// Writes `M = E_1·…·E_r` by Gauss–Jordan elimination with minimal-valuation pivots.
fn decompose(ctx: &Ctx, m: &[Vec<LocalElem>]) -> Result<Vec<Elementary>> {
    let n = m.len();
    let mut a: Vec<Vec<LocalElem>> = m.to_vec();
    let mut out = Vec::new();
    for col in 0..n {
        let pivot = (col..n)
            .filter(|&r| !a[r][col].is_zero_to_prec())
            .min_by_key(|&r| a[r][col].val_or_prec())
            .ok_or_else(|| Error::SingularMap(format!("no pivot in column {col}")))?;
        if pivot != col {
            a.swap(pivot, col);
            out.push(Elementary::Swap(pivot, col));
        }
        let p = a[col][col].clone();
        let pinv = ctx.inv(&p)?;
        for k in 0..n {
            a[col][k] = if k == col {
                LocalElem::one()
            } else {
                ctx.mul(&a[col][k], &pinv)
            };
        }
        out.push(Elementary::Scale(col, p));
        for r in 0..n {
            if r == col || a[r][col].is_exact_zero() {
                continue;
            }
            let s = a[r][col].clone();
            for k in 0..n {
                a[r][k] = if k == col {
                    LocalElem::zero()
                } else {
                    ctx.sub(&a[r][k], &ctx.mul(&s, &a[col][k]))
                };
            }
            out.push(Elementary::Shear(r, col, s));
        }
    }
    Ok(out)
}

/// Pullback along `x_i ↦ x_i + s·x_j`.
fn shear(
    ctx: &Ctx,
    terms: Vec<BallTerm>,
    i: usize,
    j: usize,
    s: &LocalElem,
) -> Result<Vec<BallTerm>> {
    let mut out = Vec::new();
    for (balls, c) in terms {
        let mut stack = vec![balls[j].clone()];
        while let Some(bj) = stack.pop() {
            let z = ctx.mul(s, &bj.as_elem());
            let ni = balls[i].level;
            if z.prec() >= ni {
                let mut cell = balls.clone();
                cell[j] = bj;
                cell[i] = Ball::new(&ctx.sub(&balls[i].center, &z), ni)?;
                out.push((cell, c.clone()));
            } else if bj.level.saturating_add(s.val_or_prec()) >= ni {
                return Err(Error::InsufficientPrecision(format!(
                    "shear coefficient {s} too coarse"
                )));
            } else {
                stack.extend(bj.children(ctx.q()));
            }
        }
    }
    Ok(out)
}
