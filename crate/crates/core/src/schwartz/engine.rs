//! Refine-until-decidable tabulation.

use super::canon::BallTerm;
use super::cell::Ball;
use super::Ctx;
use crate::error::{Error, Result};
use crate::field::{CycScalar, LocalElem};

/// Verdict of a probe on a box of balls.
pub enum Probe {
    /// The integrand is constant on the whole box.
    Const(CycScalar),
    /// Undecided; split the given coordinate (or the coarsest one).
    Split(Option<usize>),
}

/// Splits each starting box until `probe` reports a constant, collecting the nonzero pieces.
///
/// The probe sees each box as a vector of elements whose precision is the ball level.
pub fn tabulate(
    ctx: &Ctx,
    start: Vec<Vec<Ball>>,
    mut probe: impl FnMut(&[Ball], &[LocalElem]) -> Result<Probe>,
) -> Result<Vec<BallTerm>> {
    let mut out = Vec::new();
    for b in start {
        let base: Vec<i32> = b.iter().map(|x| x.level).collect();
        let mut stack = vec![b];
        while let Some(cur) = stack.pop() {
            let elems: Vec<LocalElem> = cur.iter().map(Ball::as_elem).collect();
            match probe(&cur, &elems)? {
                Probe::Const(c) => {
                    if !c.is_zero() {
                        out.push((cur, c));
                    }
                }
                Probe::Split(hint) => {
                    let i = hint.unwrap_or_else(|| {
                        (0..cur.len())
                            .min_by_key(|&i| (cur[i].level - base[i], cur[i].level))
                            .unwrap_or(0)
                    });
                    if cur.is_empty() || cur[i].level - base[i] >= ctx.budget {
                        return Err(Error::RefinementBudgetExceeded(format!(
                            "coordinate {i} would be refined past {} levels below {:?}",
                            ctx.budget, cur
                        )));
                    }
                    for child in cur[i].children(ctx.q()) {
                        let mut next = cur.clone();
                        next[i] = child;
                        stack.push(next);
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Tabulates a pointwise rule: `eval` returns `Ok(None)` (or a precision error) when the
/// box is too coarse to decide the value.
pub fn tabulate_values(
    ctx: &Ctx,
    start: Vec<Vec<Ball>>,
    mut eval: impl FnMut(&[Ball], &[LocalElem]) -> Result<Option<CycScalar>>,
) -> Result<Vec<BallTerm>> {
    tabulate(ctx, start, |b, x| match eval(b, x) {
        Ok(Some(v)) => Ok(Probe::Const(v)),
        Ok(None) | Err(Error::ZeroToPrecision) | Err(Error::InsufficientPrecision(_)) => {
            Ok(Probe::Split(None))
        }
        Err(e) => Err(e),
    })
}

/// The `q − 1` unit balls making up the shell `t^v O^×`.
pub fn shell_balls(q: u32, v: i32) -> Vec<Ball> {
    super::cell::Region::Shell(v).balls(q)
}

/// All products of one ball from each factor.
pub fn boxes(factors: &[Vec<Ball>]) -> Vec<Vec<Ball>> {
    let mut out: Vec<Vec<Ball>> = vec![Vec::new()];
    for f in factors {
        out = out
            .into_iter()
            .flat_map(|pre| {
                f.iter().map(move |b| {
                    let mut v = pre.clone();
                    v.push(b.clone());
                    v
                })
            })
            .collect();
    }
    out
}
