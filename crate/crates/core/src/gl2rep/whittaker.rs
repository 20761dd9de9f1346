//! Whittaker data: left `(U, θ)`-equivariant functions, compactly supported mod `U`.

use super::matrix::GL2Elem;
use crate::error::{Error, Result};
use crate::field::{CycScalar, LocalElem};
use crate::schwartz::{tabulate_values, Ctx, SBFunction, SpaceDescriptor};

/// Values on the section `σ(c, d, Δ)`; `W(n(x)·σ) = θ(x)·W(σ)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WhittakerFn {
    pub f: SBFunction,
}

/// `h = n(x)·σ(c, d, Δ)`: returns `x`, deciding the chart from the bottom row.
///
/// `σ = (0, −Δ/c; c, d)` when `c ≠ 0` and `v(c) ≤ v(d)`, else `(Δ/d, 0; c, d)`.
pub fn section_coordinate(ctx: &Ctx, h: [&LocalElem; 4]) -> Result<LocalElem> {
    let [h11, h12, c, d] = h;
    let first = if c.is_zero_to_prec() {
        if d.is_zero_to_prec() || c.prec() <= d.val_or_prec() {
            return Err(Error::InsufficientPrecision(
                "bottom row too coarse for the section".into(),
            ));
        }
        false
    } else if d.is_zero_to_prec() {
        c.val_or_prec() <= d.prec()
            || return Err(Error::InsufficientPrecision("chart undecided".into()))
    } else {
        c.val_or_prec() <= d.val_or_prec()
    };
    if first {
        ctx.div(h11, c)
    } else {
        ctx.div(h12, d)
    }
}

pub fn section(ctx: &Ctx, c: &LocalElem, d: &LocalElem, delta: &LocalElem) -> Result<GL2Elem> {
    let first = !c.is_exact_zero() && (d.is_exact_zero() || c.valuation()? <= d.valuation()?);
    if first {
        GL2Elem::new(
            ctx,
            LocalElem::zero(),
            ctx.neg(&ctx.div(delta, c)?),
            c.clone(),
            d.clone(),
        )
    } else {
        GL2Elem::new(
            ctx,
            ctx.div(delta, d)?,
            LocalElem::zero(),
            c.clone(),
            d.clone(),
        )
    }
}

impl WhittakerFn {
    pub fn new(f: SBFunction) -> Result<Self> {
        if *f.space() != SpaceDescriptor::u_g_space() {
            return Err(Error::Structure("Whittaker data live on (c, d, Δ)".into()));
        }
        Ok(Self { f })
    }

    /// `W(h)` from entries known to finite precision; `None` when undecided.
    pub fn value_at(
        &self,
        ctx: &Ctx,
        h: [&LocalElem; 4],
        det: &LocalElem,
    ) -> Result<Option<CycScalar>> {
        let stored = match self.f.value_at(&[h[2].clone(), h[3].clone(), det.clone()]) {
            Some(v) if v.is_zero() => return Ok(Some(v)),
            Some(v) => v,
            None => return Ok(None),
        };
        let x = section_coordinate(ctx, h)?;
        if x.prec() < 0 {
            return Ok(None);
        }
        Ok(Some(&ctx.theta(&x)? * &stored))
    }

    pub fn evaluate(&self, ctx: &Ctx, h: &GL2Elem) -> Result<CycScalar> {
        self.value_at(ctx, h.entries(), h.det())?
            .ok_or_else(|| Error::InsufficientPrecision("matrix too coarse to evaluate".into()))
    }

    /// Right translation `(R_g W)(h) = W(hg)`.
    pub fn act(&self, ctx: &Ctx, g: &GL2Elem) -> Result<Self> {
        let support = SBFunction::from_region_terms(
            self.f.space().clone(),
            ctx.q(),
            ctx.p(),
            self.f
                .terms()
                .iter()
                .map(|(r, _)| (r.clone(), ctx.one_scalar()))
                .collect(),
        )?;
        let moved = super::induced::InducedFn::new(support)?.act(ctx, g)?;
        let cover = moved.f.ball_terms().into_iter().map(|(b, _)| b).collect();
        let terms = tabulate_values(ctx, cover, |_, x| {
            let (c, d, delta) = (&x[0], &x[1], &x[2]);
            if c.is_zero_to_prec() && d.is_zero_to_prec() {
                return Ok(None);
            }
            let s = section_elems(ctx, c, d, delta)?;
            let hg = mul_entries(ctx, &s, g);
            self.value_at(
                ctx,
                [&hg[0], &hg[1], &hg[2], &hg[3]],
                &ctx.mul(delta, g.det()),
            )
        })?;
        Self::new(self.f.rebuild(terms)?)
    }
}

/// Section entries for a box, with precision propagation.
fn section_elems(
    ctx: &Ctx,
    c: &LocalElem,
    d: &LocalElem,
    delta: &LocalElem,
) -> Result<[LocalElem; 4]> {
    let first = if c.is_zero_to_prec() {
        if c.prec() <= d.val_or_prec() {
            return Err(Error::InsufficientPrecision("chart undecided".into()));
        }
        false
    } else if d.is_zero_to_prec() {
        if c.val_or_prec() > d.prec() {
            return Err(Error::InsufficientPrecision("chart undecided".into()));
        }
        true
    } else {
        c.val_or_prec() <= d.val_or_prec()
    };
    Ok(if first {
        [
            LocalElem::zero(),
            ctx.neg(&ctx.div(delta, c)?),
            c.clone(),
            d.clone(),
        ]
    } else {
        [ctx.div(delta, d)?, LocalElem::zero(), c.clone(), d.clone()]
    })
}

fn mul_entries(ctx: &Ctx, h: &[LocalElem; 4], g: &GL2Elem) -> [LocalElem; 4] {
    let e = |x: &LocalElem, y: &LocalElem, z: &LocalElem, u: &LocalElem| {
        ctx.add(&ctx.mul(x, y), &ctx.mul(z, u))
    };
    [
        e(&h[0], &g.a, &h[1], &g.c),
        e(&h[0], &g.b, &h[1], &g.d),
        e(&h[2], &g.a, &h[3], &g.c),
        e(&h[2], &g.b, &h[3], &g.d),
    ]
}
