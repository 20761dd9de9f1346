//! Torus modules `one_T = S(F^× × F^×)` and `𝓛 = S(F × F^×)`, their twists, and `η`.

use crate::error::{Error, Result};
use crate::field::{CycScalar, LocalElem};
use crate::schwartz::{
    boxes, pullback_coords, shell_balls, tabulate_values, CoordMap, Ctx, SBFunction,
    SpaceDescriptor,
};
use std::collections::BTreeSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum TBase {
    /// `S(F^× × F^×)` in coordinates `(a, d)`, action `f(a·, d·)`.
    OneT,
    /// `S(F × F^×)` in coordinates `(λ, y)`, action `|a/d|·F(d⁻¹λ, ady)`.
    L,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub struct TModuleTag {
    pub base: TBase,
    /// Extra factor `|a|^m·|d|^n`.
    pub twist: (i32, i32),
    /// Weyl twist: `(a, d)` acts as `|a/d|·(d, a)`.
    pub weyl: bool,
}

impl TModuleTag {
    pub fn one_t() -> Self {
        Self {
            base: TBase::OneT,
            twist: (0, 0),
            weyl: false,
        }
    }

    pub fn l() -> Self {
        Self {
            base: TBase::L,
            twist: (0, 0),
            weyl: false,
        }
    }

    pub fn twisted(mut self, m: i32, n: i32) -> Self {
        self.twist = (self.twist.0 + m, self.twist.1 + n);
        self
    }

    /// `V ↦ V(w)`; twisting twice returns the original tag.
    pub fn weyl_twist(mut self) -> Self {
        self.weyl = !self.weyl;
        self
    }

    pub fn space(&self) -> SpaceDescriptor {
        match self.base {
            TBase::OneT => SpaceDescriptor::torus(),
            TBase::L => SpaceDescriptor::l_space(),
        }
    }
}

/// The action of `(a, d) ∈ T` on a vector of the tagged module.
pub fn t_act(
    ctx: &Ctx,
    tag: &TModuleTag,
    (a, d): (&LocalElem, &LocalElem),
    v: &SBFunction,
) -> Result<SBFunction> {
    if a.is_zero_to_prec() || d.is_zero_to_prec() {
        return Err(Error::SingularMap(
            "torus element with vanishing entry".into(),
        ));
    }
    let (va, vd) = (a.valuation()?, d.valuation()?);
    let (x, z) = if tag.weyl { (d, a) } else { (a, d) };
    let (vx, vz) = (x.valuation()?, z.valuation()?);
    let mut exp = tag.twist.0 * va + tag.twist.1 * vd;
    if tag.weyl {
        exp += va - vd;
    }
    let moved = match tag.base {
        TBase::OneT => pullback_coords(
            ctx,
            v,
            &[CoordMap::scale(0, x.clone()), CoordMap::scale(1, z.clone())],
        )?,
        TBase::L => {
            exp += vx - vz;
            let maps = [
                CoordMap::scale(0, ctx.inv(z)?),
                CoordMap::scale(1, ctx.mul(x, z)),
            ];
            pullback_coords(ctx, v, &maps)?
        }
    };
    Ok(moved.scale(&ctx.qpow(-exp)))
}

/// `J(φ)(a, d) = |a/d|·φ(d, a)`, the isomorphism `one_T ≅ one_T(w)`; an involution.
pub fn weyl_swap(ctx: &Ctx, f: &SBFunction) -> Result<SBFunction> {
    let swapped = f.permute(&[1, 0], SpaceDescriptor::torus())?;
    let terms = swapped
        .ball_terms()
        .into_iter()
        .map(|(b, c)| {
            let e = b[1].valuation().unwrap_or(0) - b[0].valuation().unwrap_or(0);
            let s = &c * &ctx.qpow(e);
            (b, s)
        })
        .collect();
    swapped.rebuild(terms)
}

/// Cover of `{(λ, y)}` by shell pairs.
fn shell_cover(ctx: &Ctx, pairs: BTreeSet<(i32, i32)>) -> Vec<Vec<crate::schwartz::Ball>> {
    pairs
        .into_iter()
        .flat_map(|(vl, vy)| boxes(&[shell_balls(ctx.q(), vl), shell_balls(ctx.q(), vy)]))
        .collect()
}

fn vals(f: &SBFunction) -> BTreeSet<(i32, i32)> {
    f.ball_terms()
        .iter()
        .map(|(b, _)| {
            (
                b[0].valuation().expect("unit ball"),
                b[1].valuation().expect("unit ball"),
            )
        })
        .collect()
}

/// `η(f)(λ, y) = |λ²y|⁻¹·f(λy, λ⁻¹)`: `one_T → 𝓛`.
pub fn eta(ctx: &Ctx, f: &SBFunction) -> Result<SBFunction> {
    let pairs = vals(f).into_iter().map(|(va, vd)| (-vd, va + vd)).collect();
    let terms = tabulate_values(ctx, shell_cover(ctx, pairs), |b, x| {
        let (l, y) = (&x[0], &x[1]);
        let img = [ctx.mul(l, y), ctx.inv(l)?];
        let v = f.value_at(&img);
        let (vl, vy) = (b[0].valuation().unwrap(), b[1].valuation().unwrap());
        Ok(v.map(|v| {
            if v.is_zero() {
                v
            } else {
                &v * &ctx.qpow(2 * vl + vy)
            }
        }))
    })?;
    SBFunction::from_ball_terms(SpaceDescriptor::l_space(), ctx.q(), ctx.p(), terms)
}

/// `η_w(φ)(λ, y) = φ(−λ⁻¹, −λy)`, equivariant `one_T(w) → 𝓛`.
pub fn eta_w(ctx: &Ctx, f: &SBFunction) -> Result<SBFunction> {
    let pairs = vals(f).into_iter().map(|(va, vd)| (-va, va + vd)).collect();
    let terms = tabulate_values(ctx, shell_cover(ctx, pairs), |_, x| {
        let (l, y) = (&x[0], &x[1]);
        let img = [ctx.neg(&ctx.inv(l)?), ctx.neg(&ctx.mul(l, y))];
        Ok(f.value_at(&img))
    })?;
    SBFunction::from_ball_terms(SpaceDescriptor::l_space(), ctx.q(), ctx.p(), terms)
}

/// `|·|`-weight helper: `q^{-k}` as a scalar.
pub fn abs_pow(ctx: &Ctx, v: i32) -> CycScalar {
    ctx.qpow(-v)
}
