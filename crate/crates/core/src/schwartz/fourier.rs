//! Phase modulation and Fourier transforms.

use super::canon::BallTerm;
use super::cell::{Ball, CoordKind};
use super::engine::{tabulate, Probe};
use super::func::SBFunction;
use super::poly::Poly;
use super::Ctx;
use crate::error::{Error, Result};
use crate::field::{CycScalar, LocalElem};

/// `x ↦ e(P(x))·f(x)`.
pub fn modulate(ctx: &Ctx, f: &SBFunction, phase: &Poly) -> Result<SBFunction> {
    if phase.is_zero() {
        return Ok(f.clone());
    }
    let cells = f
        .ball_terms()
        .into_iter()
        .map(|(b, c)| (b, c, phase.clone()))
        .collect();
    f.rebuild(modulate_cells(ctx, cells)?)
}

/// Modulates each cell by its own phase, refining until every phase is constant per piece.
pub fn modulate_cells(
    ctx: &Ctx,
    cells: Vec<(Vec<Ball>, CycScalar, Poly)>,
) -> Result<Vec<BallTerm>> {
    let mut out = Vec::new();
    for (balls, c, phase) in cells {
        if phase.is_zero() {
            out.push((balls, c));
            continue;
        }
        let pieces = tabulate(ctx, vec![balls], |_, x| match phase.eval(ctx, x) {
            Ok(v) if v.prec() >= 0 => Ok(Probe::Const(&c * &ctx.add_char(&v)?)),
            Ok(_) | Err(Error::ZeroToPrecision) => Ok(Probe::Split(None)),
            Err(e) => Err(e),
        })?;
        out.extend(pieces);
    }
    Ok(out)
}

/// `f̂(ξ) = ∫ f(x)·e(−xξ) dx` in coordinate `coord`.
pub fn fourier(ctx: &Ctx, f: &SBFunction, coord: usize) -> Result<SBFunction> {
    if f.space().kinds.get(coord) != Some(&CoordKind::Additive) {
        return Err(Error::Structure(format!(
            "coordinate {coord} is not additive"
        )));
    }
    let dim = f.dim();
    let cells = f
        .ball_terms()
        .into_iter()
        .map(|(mut balls, c)| {
            let b = balls[coord].clone();
            balls[coord] = Ball::around_zero(-b.level);
            let phase = Poly::var(dim, coord).scale(ctx, &ctx.neg(&b.center));
            (
                balls,
                c.scale(crate::field::QPower(-b.level).to_rat(ctx.q())),
                phase,
            )
        })
        .collect();
    f.rebuild(modulate_cells(ctx, cells)?)
}

/// The scale `y` in the matrix transform.
#[derive(Debug, Clone)]
pub enum YScale {
    /// A multiplicative coordinate of the same function.
    Coord(usize),
    Const(LocalElem),
}

/// `|y|²·∫ f(z, y)·e(−y⟨x, z⟩) dz` over `z ∈ M₂(F)` with coordinates `m = [a, b, c, d]`,
/// where `⟨x, z⟩ = ad′ + a′d − bc′ − b′c`.
pub fn fourier_m2(ctx: &Ctx, f: &SBFunction, m: [usize; 4], y: &YScale) -> Result<SBFunction> {
    let kinds = &f.space().kinds;
    if m.iter()
        .any(|&i| kinds.get(i) != Some(&CoordKind::Additive))
    {
        return Err(Error::Structure(
            "matrix coordinates must be additive".into(),
        ));
    }
    if let YScale::Coord(j) = y {
        if kinds.get(*j) != Some(&CoordKind::Multiplicative) {
            return Err(Error::Structure(
                "scale coordinate must be multiplicative".into(),
            ));
        }
    }
    let dim = f.dim();
    // output entry k is paired against input entry partner[k] with sign sign[k]
    let partner = [3usize, 2, 1, 0];
    let sign = [false, true, true, false];
    let mut cells = Vec::new();
    for (balls, c) in f.ball_terms() {
        let (vy, ypoly) = match y {
            YScale::Coord(j) => (
                balls[*j].valuation().expect("multiplicative ball"),
                Poly::var(dim, *j),
            ),
            YScale::Const(y0) => (y0.valuation()?, Poly::constant(dim, y0.clone())),
        };
        let mut out = balls.clone();
        let mut vol = -2 * vy;
        let mut pairing = Poly::zero(dim);
        for k in 0..4 {
            let zin = &balls[m[partner[k]]];
            vol -= zin.level;
            out[m[k]] = Ball::around_zero(-zin.level - vy);
            let center = if sign[k] {
                ctx.neg(&zin.center)
            } else {
                zin.center.clone()
            };
            pairing = pairing.add(Poly::var(dim, m[k]).scale(ctx, &center));
        }
        let phase = pairing.mul(ctx, &ypoly).neg(ctx);
        cells.push((
            out,
            c.scale(crate::field::QPower(vol).to_rat(ctx.q())),
            phase,
        ));
    }
    f.rebuild(modulate_cells(ctx, cells)?)
}
