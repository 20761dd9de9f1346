//! `μ`, `μ′`, `μ″` and the partial Fourier transform on `𝓛`.

use super::l2::{L2Elem, Tail};
use super::{deeper, scale_abs, substitute_cells};
use crate::error::{Error, Result};
use crate::field::{CycScalar, LocalElem};
use crate::schwartz::{
    boxes, fourier, shell_balls, tabulate, Ball, Ctx, Probe, Region, SBFunction, SpaceDescriptor,
};

fn check_y(psi: &SBFunction) -> Result<()> {
    if *psi.space() != SpaceDescriptor::y_space() {
        return Err(Error::Structure(
            "expected a function on M₂(F) × F^×".into(),
        ));
    }
    Ok(())
}

/// `μ(Ψ)(λ, y) = Ψ((0, 0; 0, λ), y)`.
pub fn mu(psi: &SBFunction) -> Result<SBFunction> {
    check_y(psi)?;
    let zero = LocalElem::zero();
    psi.specialize(0, &zero)?
        .specialize(0, &zero)?
        .specialize(0, &zero)
}

/// `μ′(Ψ)(λ, y) = |λ|·∫ Ψ((0, bλ; 0, λ), y) db`, i.e. `∫ Ψ((0, β; 0, λ), y) dβ`.
pub fn mu_prime(psi: &SBFunction) -> Result<SBFunction> {
    check_y(psi)?;
    let zero = LocalElem::zero();
    let g = psi.specialize(2, &zero)?.specialize(0, &zero)?;
    g.integrate(&[0])
}

/// `ℱ(f)(λ, y) = |y|·∫ f(α, y)·e(−αλy) dα`.
pub fn partial_fourier_l(ctx: &Ctx, f: &SBFunction) -> Result<SBFunction> {
    if *f.space() != SpaceDescriptor::l_space() {
        return Err(Error::Structure("expected a function on F × F^×".into()));
    }
    let hat = fourier(ctx, f, 0)?;
    let q = ctx.q();
    let out = substitute_cells(
        ctx,
        &hat,
        SpaceDescriptor::l_space(),
        |r| {
            let Region::Ball(xi) = &r[0] else {
                unreachable!("additive coordinate")
            };
            let mut out = Vec::new();
            for yb in r[1].balls(q) {
                let vy = yb.valuation().expect("multiplicative ball");
                let lam = if xi.contains_zero() {
                    Ball::around_zero(xi.level - vy)
                } else {
                    let level = (xi.level - vy).min(yb.level - 2 * vy + xi.min_val());
                    let center = ctx.div(&xi.center, &yb.center)?.with_prec(level);
                    Ball::new(&center, level)?
                };
                out.push(vec![lam, yb]);
            }
            Ok(out)
        },
        |x| Ok(vec![ctx.mul(&x[0], &x[1]), x[1].clone()]),
        |_| Ok(ctx.one_scalar()),
    )?;
    scale_abs(ctx, &out, 1, 1)
}

/// One cell of `Ψ` as `(A, B, C, D)` balls, the `y`-region and the coefficient.
type YCell = ([Ball; 4], Region, CycScalar);

fn y_cells(psi: &SBFunction) -> Vec<YCell> {
    psi.terms()
        .iter()
        .map(|(r, c)| {
            let ball = |i: usize| match &r[i] {
                Region::Ball(b) => b.clone(),
                Region::Shell(_) => unreachable!("additive coordinate"),
            };
            (
                [ball(0), ball(1), ball(2), ball(3)],
                r[4].clone(),
                c.clone(),
            )
        })
        .collect()
}

/// `vol{β′ ∈ C : ββ′ ∈ λA}` on a box of `(λ, β)`, or `None` when undecided.
fn slice_volume(
    ctx: &Ctx,
    a: &Ball,
    cb: &Ball,
    v: i32,
    lam: &LocalElem,
    beta: &LocalElem,
) -> Result<Option<i32>> {
    let none = Ok(None);
    if beta.is_zero_to_prec() {
        let k = beta.prec();
        if a.contains_zero() {
            return if k + cb.min_val() >= a.level + v {
                Ok(Some(cb.level))
            } else {
                none
            };
        }
        return if k + cb.min_val() > v + a.min_val() {
            Ok(Some(i32::MAX))
        } else {
            none
        };
    }
    let vb = beta.valuation()?;
    let le = a.level + v - vb;
    let l = cb.level.min(le);
    let e0 = if a.contains_zero() {
        LocalElem::zero()
    } else {
        ctx.mul(&ctx.div(lam, beta)?, &a.center)
    };
    if e0.prec() < l {
        return none;
    }
    let meets = ctx.sub(&e0, &cb.center).val_or_prec() >= l;
    Ok(Some(if meets { cb.level.max(le) } else { i32::MAX }))
}

/// The shell-`v` part of `μ″(Ψ)`: `|λ|⁻¹·vol{(β, β′) ∈ B × C : ββ′ ∈ λA}` per cell.
fn mu2_shell(ctx: &Ctx, cells: &[YCell], v: i32) -> Result<SBFunction> {
    let q = ctx.q();
    let mut terms = Vec::new();
    for ([a, b, c, d], yr, coef) in cells {
        let lam_start = match d.valuation() {
            Some(vd) if vd == v => vec![d.clone()],
            Some(_) => continue,
            None if v >= d.level => shell_balls(q, v),
            None => continue,
        };
        let depth =
            (a.level + v - c.min_val() - b.level).max(0) + (a.level - a.min_val()).max(0) + 2;
        let local = deeper(ctx, depth);
        let start = boxes(&[lam_start, vec![b.clone()]]);
        let pieces = tabulate(&local, start, |_, x| {
            match slice_volume(ctx, a, c, v, &x[0], &x[1]) {
                Ok(Some(i32::MAX)) => Ok(Probe::Const(CycScalar::zero(ctx.p()))),
                Ok(Some(level)) => Ok(Probe::Const(&(coef * &ctx.qpow(v)) * &ctx.qpow(-level))),
                Ok(None) | Err(Error::ZeroToPrecision) | Err(Error::InsufficientPrecision(_)) => {
                    Ok(Probe::Split(None))
                }
                Err(e) => Err(e),
            }
        })?;
        let lam = SBFunction::from_ball_terms(SpaceDescriptor::additive(2), q, ctx.p(), pieces)?
            .integrate(&[1])?;
        for (r, s) in lam.terms() {
            terms.push((vec![r[0].clone(), yr.clone()], s.clone()));
        }
    }
    SBFunction::from_region_terms(SpaceDescriptor::l_space(), q, ctx.p(), terms)
}

/// The `y`-profile `g` when `h = 1_{t^v O^×}(λ)·g(y)`, else `None`.
fn shell_profile(ctx: &Ctx, h: &SBFunction, v: i32) -> Result<Option<SBFunction>> {
    let g = h.specialize(0, &LocalElem::t_pow(v))?;
    Ok((Tail::shell_times(ctx, v, &g)? == *h).then_some(g))
}

/// `μ″(Ψ)(λ, y) = |λ|·∫∫ Ψ((λbb′, λb; λb′, λ), y) db db′`, with logarithmic tails near `λ = 0`.
pub fn mu_doubleprime(ctx: &Ctx, psi: &SBFunction) -> Result<L2Elem> {
    check_y(psi)?;
    let cells = y_cells(psi);
    if cells.is_empty() {
        return Ok(L2Elem::plain(ctx.zero(SpaceDescriptor::l_space())));
    }
    let vmin = cells
        .iter()
        .map(|(m, _, _)| m[3].min_val())
        .min()
        .expect("nonempty");
    let mut n = vmin;
    let mut has_tail = false;
    for ([a, b, c, d], _, _) in &cells {
        match d.valuation() {
            Some(vd) => n = n.max(vd + 1),
            None => {
                has_tail = true;
                n = n
                    .max(d.level)
                    .max(b.level + c.level - a.min_val().min(a.level));
            }
        }
    }
    let mut plain = ctx.zero(SpaceDescriptor::l_space());
    for v in vmin..n {
        plain = plain.add(&mu2_shell(ctx, &cells, v)?)?;
    }
    if !has_tail {
        return Ok(L2Elem::plain(plain));
    }
    let mut profiles = Vec::new();
    for v in n..n + 4 {
        let h = mu2_shell(ctx, &cells, v)?;
        let g = shell_profile(ctx, &h, v)?
            .ok_or_else(|| Error::Structure(format!("shell {v} of μ″ is not constant in λ")))?;
        profiles.push(g);
    }
    let beta = profiles[1].sub(&profiles[0])?;
    let alpha = profiles[0].sub(&beta.scale(&CycScalar::from_int(ctx.p(), n as i128)))?;
    let tail = Tail {
        start: n,
        alpha,
        beta,
    };
    for (k, g) in profiles.iter().enumerate().skip(2) {
        if tail.profile_at(ctx, n + k as i32)? != *g {
            return Err(Error::Structure(format!(
                "μ″ tail prediction fails at v(λ) = {}",
                n + k as i32
            )));
        }
    }
    L2Elem::new(ctx, plain, Some(tail))
}
