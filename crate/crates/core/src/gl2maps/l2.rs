//! `𝓛₂`: functions on `F × F^×` allowed to grow like `α + β·v(λ)` near `λ = 0`.

use crate::error::{Error, Result};
use crate::field::{CycScalar, LocalElem};
use crate::schwartz::{shell_balls, Ball, Ctx, Region, SBFunction, SpaceDescriptor};
use std::collections::BTreeMap;

/// `α(y) + β(y)·v(λ)` for `λ ∈ t^start O ∖ {0}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tail {
    pub start: i32,
    pub alpha: SBFunction,
    pub beta: SBFunction,
}

/// A plain part vanishing on `t^start O`, plus an optional tail; the tail start is minimal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct L2Elem {
    pub plain: SBFunction,
    pub tail: Option<Tail>,
}

impl Tail {
    /// `α + β·v` as a function of `y`.
    pub fn profile_at(&self, ctx: &Ctx, v: i32) -> Result<SBFunction> {
        self.alpha
            .add(&self.beta.scale(&CycScalar::from_int(ctx.p(), v as i128)))
    }

    /// `1_{t^v O^×}(λ)·g(y)`.
    pub fn shell_times(ctx: &Ctx, v: i32, g: &SBFunction) -> Result<SBFunction> {
        let mut terms = Vec::new();
        for (r, c) in g.terms() {
            for b in shell_balls(ctx.q(), v) {
                terms.push((vec![Region::Ball(b), r[0].clone()], c.clone()));
            }
        }
        SBFunction::from_region_terms(SpaceDescriptor::l_space(), ctx.q(), ctx.p(), terms)
    }

    /// `(y-ball, α, β, start)` on a common partition of the `y`-supports.
    pub fn terms(&self) -> Result<Vec<(Ball, CycScalar, CycScalar, i32)>> {
        let level = [self.alpha.max_levels()[0], self.beta.max_levels()[0]]
            .into_iter()
            .flatten()
            .max();
        let Some(level) = level else {
            return Ok(Vec::new());
        };
        let mut map: BTreeMap<Ball, (CycScalar, CycScalar)> = BTreeMap::new();
        let p = self.alpha.p();
        for (i, f) in [&self.alpha, &self.beta].into_iter().enumerate() {
            for (b, c) in f.refine(&[level])? {
                let e = map
                    .entry(b[0].clone())
                    .or_insert((CycScalar::zero(p), CycScalar::zero(p)));
                if i == 0 {
                    e.0 = c;
                } else {
                    e.1 = c;
                }
            }
        }
        Ok(map
            .into_iter()
            .map(|(b, (a, be))| (b, a, be, self.start))
            .collect())
    }
}

impl L2Elem {
    /// Canonical text: the plain part, then the tail start, `α` and `β`.
    pub fn to_text(&self) -> String {
        let mut s = self.plain.to_text();
        if let Some(t) = &self.tail {
            s.push_str(&format!(
                "tail {}\nalpha\n{}beta\n{}",
                t.start,
                t.alpha.to_text(),
                t.beta.to_text()
            ));
        }
        s
    }

    pub fn plain(f: SBFunction) -> Self {
        Self {
            plain: f,
            tail: None,
        }
    }

    /// Normalizes: drops zero tails and lowers the tail start while the plain part agrees with it.
    pub fn new(ctx: &Ctx, plain: SBFunction, tail: Option<Tail>) -> Result<Self> {
        let Some(mut tail) = tail.filter(|t| !(t.alpha.is_zero() && t.beta.is_zero())) else {
            return Ok(Self::plain(plain));
        };
        let mut plain = plain;
        let lowest = plain.min_vals()[0].unwrap_or(tail.start);
        while tail.start > lowest {
            let s = tail.start - 1;
            let (shell, rest): (Vec<_>, Vec<_>) = plain
                .ball_terms()
                .into_iter()
                .partition(|(b, _)| b[0].valuation() == Some(s));
            let part = plain.rebuild(shell)?;
            if part != Tail::shell_times(ctx, s, &tail.profile_at(ctx, s)?)? {
                break;
            }
            plain = plain.rebuild(rest)?;
            tail.start = s;
        }
        Ok(Self {
            plain,
            tail: Some(tail),
        })
    }

    /// The value at an exact point.
    pub fn evaluate(&self, ctx: &Ctx, lam: &LocalElem, y: &LocalElem) -> Result<CycScalar> {
        if let Some(t) = &self.tail {
            if lam.is_exact_zero() {
                return Err(Error::Structure("tails are undefined at λ = 0".into()));
            }
            let v = lam.valuation()?;
            if v >= t.start {
                return t.profile_at(ctx, v)?.evaluate(std::slice::from_ref(y));
            }
        }
        self.plain.evaluate(&[lam.clone(), y.clone()])
    }

    pub fn is_plain(&self) -> bool {
        self.tail.is_none()
    }
}
