//! Induced functions in the `S(U\G)` model, coordinates `(c, d, Δ)`: bottom row and determinant.

use super::matrix::GL2Elem;
use super::tmod::TModuleTag;
use crate::error::{Error, Result};
use crate::field::{CycScalar, LocalElem};
use crate::schwartz::{
    boxes, pullback_coords, pullback_linear, shell_balls, tabulate_values, Ball, CoordMap, Ctx,
    SBFunction, SpaceDescriptor,
};
use std::collections::BTreeSet;

/// An element of `i(one_T)`: `F(g)(a, d) = f(diag(a, d)·g)` for `f ∈ S(U\G)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InducedFn {
    pub tag: TModuleTag,
    pub f: SBFunction,
}

/// A chart point of `P¹(O/t^n)`: bottom row `[1 : x]` or `[x·t : 1]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum P1Point {
    First(LocalElem),
    Second(LocalElem),
}

impl P1Point {
    /// A representative in `GL₂(O)` with this bottom row.
    pub fn matrix(&self, ctx: &Ctx) -> GL2Elem {
        match self {
            P1Point::First(x) => GL2Elem::new(
                ctx,
                LocalElem::zero(),
                ctx.int(-1),
                LocalElem::one(),
                x.clone(),
            ),
            P1Point::Second(x) => GL2Elem::new(
                ctx,
                LocalElem::one(),
                LocalElem::zero(),
                x.shift(1),
                LocalElem::one(),
            ),
        }
        .expect("determinant one")
    }
}

/// Valuation window of `s` given `s·k ∈ ball`: `(lo, hi)`, `hi = None` when unbounded.
fn scaled_window(ball: &Ball, k: &LocalElem) -> Option<(i32, Option<i32>)> {
    if k.is_exact_zero() {
        return None;
    }
    let vk = k.val_or_prec();
    Some((ball.min_val() - vk, ball.valuation().map(|v| v - vk)))
}

/// Valuations of `s` with `s·k1 ∈ b1` and `s·k2 ∈ b2`.
pub fn row_valuations(b1: &Ball, k1: &LocalElem, b2: &Ball, k2: &LocalElem) -> Vec<i32> {
    let mut lo = i32::MIN;
    let mut hi: Option<i32> = None;
    for (b, k) in [(b1, k1), (b2, k2)] {
        match scaled_window(b, k) {
            None if !b.contains_zero() => return Vec::new(),
            None => {}
            Some((l, h)) => {
                lo = lo.max(l);
                if let Some(h) = h {
                    hi = Some(hi.map_or(h, |x: i32| x.min(h)));
                }
            }
        }
    }
    match hi {
        Some(h) if lo <= h => (lo..=h).collect(),
        _ => Vec::new(),
    }
}

impl InducedFn {
    pub fn new(f: SBFunction) -> Result<Self> {
        if *f.space() != SpaceDescriptor::u_g_space() {
            return Err(Error::Structure("induced functions live on S(U\\G)".into()));
        }
        Ok(Self {
            tag: TModuleTag::one_t(),
            f,
        })
    }

    pub fn zero(ctx: &Ctx) -> Self {
        Self::new(ctx.zero(SpaceDescriptor::u_g_space())).expect("valid space")
    }

    /// `f_n`: the indicator of `U·K_n`, the cell `{c ∈ t^nO, d ∈ 1 + t^nO, Δ ∈ 1 + t^nO}`.
    pub fn f_n(ctx: &Ctx, n: i32) -> Result<Self> {
        use crate::schwartz::Region;
        let one = Region::Ball(Ball::new(&LocalElem::one(), n)?);
        let cell = vec![Region::Ball(Ball::around_zero(n)), one.clone(), one];
        Self::new(ctx.indicator(SpaceDescriptor::u_g_space(), cell)?)
    }

    /// Right translation `(R_g F)(h) = F(hg)`.
    pub fn act(&self, ctx: &Ctx, g: &GL2Elem) -> Result<Self> {
        let gt = vec![
            vec![g.a.clone(), g.c.clone()],
            vec![g.b.clone(), g.d.clone()],
        ];
        let moved = pullback_linear(ctx, &self.f, &[0, 1], &gt)?;
        let f = pullback_coords(ctx, &moved, &[CoordMap::scale(2, g.det().clone())])?;
        Ok(Self { tag: self.tag, f })
    }

    /// The underlying `U`-invariant function at `g`.
    pub fn scalar_at(&self, ctx: &Ctx, g: &GL2Elem) -> Result<CycScalar> {
        let _ = ctx;
        self.f
            .evaluate(&[g.c.clone(), g.d.clone(), g.det().clone()])
    }

    /// `F(g) ∈ one_T`, i.e. `(a, d) ↦ f(d·g₂₁, d·g₂₂, a·d·det g)`.
    pub fn value_at(&self, ctx: &Ctx, g: &GL2Elem) -> Result<SBFunction> {
        let vdet = g.det().valuation()?;
        let mut pairs = BTreeSet::new();
        for (b, _) in self.f.ball_terms() {
            let vdelta = b[2].valuation().expect("multiplicative");
            for vd in row_valuations(&b[0], &g.c, &b[1], &g.d) {
                pairs.insert((vdelta - vd - vdet, vd));
            }
        }
        let q = ctx.q();
        let cover = pairs
            .into_iter()
            .flat_map(|(va, vd)| boxes(&[shell_balls(q, va), shell_balls(q, vd)]))
            .collect();
        let terms = tabulate_values(ctx, cover, |_, x| {
            let (a, d) = (&x[0], &x[1]);
            let pt = [
                ctx.mul(d, &g.c),
                ctx.mul(d, &g.d),
                ctx.mul(&ctx.mul(a, d), g.det()),
            ];
            Ok(self.f.value_at(&pt))
        })?;
        SBFunction::from_ball_terms(SpaceDescriptor::torus(), q, ctx.p(), terms)
    }

    /// The values on the `P¹(O/t^n)` representatives.
    pub fn table(&self, ctx: &Ctx, n: i32) -> Result<Vec<(P1Point, SBFunction)>> {
        let mut out = Vec::new();
        for x in crate::harness::oracle::representatives(ctx.q(), 0, n) {
            let pt = P1Point::First(x);
            out.push((pt.clone(), self.value_at(ctx, &pt.matrix(ctx))?));
        }
        for x in crate::harness::oracle::representatives(ctx.q(), 0, n - 1) {
            let pt = P1Point::Second(x);
            out.push((pt.clone(), self.value_at(ctx, &pt.matrix(ctx))?));
        }
        Ok(out)
    }
}
