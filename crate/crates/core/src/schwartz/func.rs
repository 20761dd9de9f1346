//! Schwartz–Bruhat functions as finite sums of cell indicators.

use super::canon::{canonicalize, BallTerm, RegionTerm};
use super::cell::{Ball, CoordKind, Region, SpaceDescriptor};
use crate::error::{Error, Result};
use crate::field::{CycScalar, LocalElem, QPower};
use std::fmt;

/// A locally constant compactly supported function, always in canonical form.
#[derive(Clone, PartialEq, Eq)]
pub struct SBFunction {
    space: SpaceDescriptor,
    q: u32,
    p: u32,
    terms: Vec<RegionTerm>,
}

impl SBFunction {
    pub fn zero(space: SpaceDescriptor, q: u32, p: u32) -> Self {
        Self {
            space,
            q,
            p,
            terms: Vec::new(),
        }
    }

    /// Builds the function `Σ c·1_cell` (overlaps add) and canonicalizes.
    pub fn from_ball_terms(
        space: SpaceDescriptor,
        q: u32,
        p: u32,
        terms: Vec<BallTerm>,
    ) -> Result<Self> {
        for (balls, c) in &terms {
            validate(&space, balls)?;
            if c.p() != p {
                return Err(Error::Structure(
                    "coefficient over the wrong cyclotomic field".into(),
                ));
            }
        }
        let terms = terms.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        let terms = canonicalize(q, &space.kinds, terms);
        Ok(Self { space, q, p, terms })
    }

    pub fn from_region_terms(
        space: SpaceDescriptor,
        q: u32,
        p: u32,
        terms: Vec<RegionTerm>,
    ) -> Result<Self> {
        let mut balls = Vec::new();
        for (regions, c) in terms {
            if regions.len() != space.dim() {
                return Err(Error::Structure("cell dimension mismatch".into()));
            }
            for combo in expand(q, &regions) {
                balls.push((combo, c.clone()));
            }
        }
        Self::from_ball_terms(space, q, p, balls)
    }

    /// `c·1_cell`.
    pub fn indicator(
        space: SpaceDescriptor,
        q: u32,
        regions: Vec<Region>,
        c: CycScalar,
    ) -> Result<Self> {
        let p = c.p();
        Self::from_region_terms(space, q, p, vec![(regions, c)])
    }

    pub fn space(&self) -> &SpaceDescriptor {
        &self.space
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn terms(&self) -> &[RegionTerm] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The terms with every shell expanded into unit balls.
    pub fn ball_terms(&self) -> Vec<BallTerm> {
        let mut out = Vec::new();
        for (regions, c) in &self.terms {
            for combo in expand(self.q, regions) {
                out.push((combo, c.clone()));
            }
        }
        out
    }

    fn same_shape(&self, other: &Self) -> Result<()> {
        if self.space != other.space || self.q != other.q || self.p != other.p {
            return Err(Error::Structure(
                "functions live on different spaces".into(),
            ));
        }
        Ok(())
    }

    pub fn rebuild(&self, terms: Vec<BallTerm>) -> Result<Self> {
        Self::from_ball_terms(self.space.clone(), self.q, self.p, terms)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_shape(other)?;
        let mut terms = self.ball_terms();
        terms.extend(other.ball_terms());
        self.rebuild(terms)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.map_coeffs(|c| -c)
    }

    pub fn scale(&self, s: &CycScalar) -> Self {
        if s.is_zero() {
            return Self::zero(self.space.clone(), self.q, self.p);
        }
        self.map_coeffs(|c| c * s)
    }

    fn map_coeffs(&self, f: impl Fn(&CycScalar) -> CycScalar) -> Self {
        let terms = self.terms.iter().map(|(r, c)| (r.clone(), f(c))).collect();
        Self {
            space: self.space.clone(),
            q: self.q,
            p: self.p,
            terms,
        }
    }

    /// Pointwise product.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.same_shape(other)?;
        let rhs = other.ball_terms();
        let mut terms = Vec::new();
        for (a, ca) in self.ball_terms() {
            'pair: for (b, cb) in &rhs {
                let mut cell = Vec::with_capacity(a.len());
                for (x, y) in a.iter().zip(b) {
                    if x.contains_ball(y) {
                        cell.push(y.clone());
                    } else if y.contains_ball(x) {
                        cell.push(x.clone());
                    } else {
                        continue 'pair;
                    }
                }
                terms.push((cell, &ca * cb));
            }
        }
        self.rebuild(terms)
    }

    /// Value at a point, or `None` when the precision of the point does not decide it.
    pub fn value_at(&self, point: &[LocalElem]) -> Option<CycScalar> {
        let mut undecided = false;
        for (regions, c) in &self.terms {
            let mut inside = Some(true);
            for (r, x) in regions.iter().zip(point) {
                match r.contains_point(x) {
                    Some(false) => {
                        inside = Some(false);
                        break;
                    }
                    None => inside = None,
                    Some(true) => {}
                }
            }
            match inside {
                Some(true) => return Some(c.clone()),
                None => undecided = true,
                Some(false) => {}
            }
        }
        (!undecided).then(|| CycScalar::zero(self.p))
    }

    pub fn evaluate(&self, point: &[LocalElem]) -> Result<CycScalar> {
        if point.len() != self.dim() {
            return Err(Error::Structure("point dimension mismatch".into()));
        }
        self.value_at(point).ok_or_else(|| {
            Error::InsufficientPrecision("point does not decide cell membership".into())
        })
    }

    /// Splits every cell down to the given levels; the result is a non-canonical
    /// term list pointwise equal to `self`.
    pub fn refine(&self, levels: &[i32]) -> Result<Vec<BallTerm>> {
        if levels.len() != self.dim() {
            return Err(Error::Structure("level vector dimension mismatch".into()));
        }
        let mut out = Vec::new();
        for (balls, c) in self.ball_terms() {
            let mut combos: Vec<Vec<Ball>> = vec![Vec::new()];
            for (b, &lv) in balls.iter().zip(levels) {
                if lv < b.level {
                    return Err(Error::Structure(format!(
                        "cannot coarsen level {} to {lv}",
                        b.level
                    )));
                }
                let kids = b.descendants(self.q, lv);
                combos = combos
                    .into_iter()
                    .flat_map(|pre| {
                        kids.iter().map(move |k| {
                            let mut v = pre.clone();
                            v.push(k.clone());
                            v
                        })
                    })
                    .collect();
            }
            out.extend(combos.into_iter().map(|cell| (cell, c.clone())));
        }
        Ok(out)
    }

    /// Finest level used on each coordinate.
    pub fn max_levels(&self) -> Vec<Option<i32>> {
        let mut out = vec![None; self.dim()];
        for (balls, _) in self.ball_terms() {
            for (i, b) in balls.iter().enumerate() {
                out[i] = Some(out[i].map_or(b.level, |l: i32| l.max(b.level)));
            }
        }
        out
    }

    /// Integrates out the listed coordinates (at least one must remain).
    pub fn integrate(&self, coords: &[usize]) -> Result<Self> {
        if coords.is_empty() || coords.iter().any(|&i| i >= self.dim()) {
            return Err(Error::Structure("invalid integration coordinates".into()));
        }
        let space = self.space.without(coords)?;
        if space.dim() == 0 {
            return Err(Error::Structure(
                "use integral() to integrate every coordinate".into(),
            ));
        }
        let mut terms = Vec::new();
        for (balls, c) in self.ball_terms() {
            let mut vol = QPower(0);
            let mut rest = Vec::new();
            for (i, b) in balls.into_iter().enumerate() {
                if coords.contains(&i) {
                    vol = vol * ball_volume(self.space.kinds[i], &b);
                } else {
                    rest.push(b);
                }
            }
            terms.push((rest, c.scale(vol.to_rat(self.q))));
        }
        Self::from_ball_terms(space, self.q, self.p, terms)
    }

    /// Integral over the whole space.
    pub fn integral(&self) -> CycScalar {
        let mut sum = CycScalar::zero(self.p);
        for (regions, c) in &self.terms {
            let mut vol = crate::field::Rat::from_integer(1);
            for (i, r) in regions.iter().enumerate() {
                vol *= region_volume(self.q, self.space.kinds[i], r);
            }
            sum += &c.scale(vol);
        }
        sum
    }

    /// Fixes coordinate `i` to an exact value, dropping it from the space.
    pub fn specialize(&self, i: usize, x: &LocalElem) -> Result<Self> {
        let space = self.space.without(&[i])?;
        let mut terms = Vec::new();
        for (balls, c) in self.ball_terms() {
            match balls[i].contains_point(x) {
                Some(true) => {
                    let mut rest = balls;
                    rest.remove(i);
                    terms.push((rest, c));
                }
                Some(false) => {}
                None => {
                    return Err(Error::InsufficientPrecision(
                        "specialization point too coarse".into(),
                    ))
                }
            }
        }
        Self::from_ball_terms(space, self.q, self.p, terms)
    }

    /// Reorders coordinates: new coordinate `j` is old coordinate `order[j]`.
    pub fn permute(&self, order: &[usize], space: SpaceDescriptor) -> Result<Self> {
        let terms = self
            .ball_terms()
            .into_iter()
            .map(|(b, c)| (order.iter().map(|&i| b[i].clone()).collect(), c))
            .collect();
        Self::from_ball_terms(space, self.q, self.p, terms)
    }

    /// Largest support radius: every cell lies in `t^m O` on coordinate `i` where `m` is returned.
    pub fn min_vals(&self) -> Vec<Option<i32>> {
        let mut out = vec![None; self.dim()];
        for (balls, _) in self.ball_terms() {
            for (i, b) in balls.iter().enumerate() {
                let m = b.min_val().min(b.level);
                out[i] = Some(out[i].map_or(m, |l: i32| l.min(m)));
            }
        }
        out
    }
}

pub fn ball_volume(kind: CoordKind, b: &Ball) -> QPower {
    match kind {
        CoordKind::Additive => QPower(-b.level),
        CoordKind::Multiplicative => QPower(b.valuation().unwrap_or(b.level) - b.level),
    }
}

pub fn region_volume(q: u32, kind: CoordKind, r: &Region) -> crate::field::Rat {
    match r {
        Region::Ball(b) => ball_volume(kind, b).to_rat(q),
        Region::Shell(v) => match kind {
            CoordKind::Additive => {
                QPower(-*v).to_rat(q) * crate::field::Rat::new(q as i128 - 1, q as i128)
            }
            CoordKind::Multiplicative => crate::field::Rat::new(q as i128 - 1, q as i128),
        },
    }
}

fn expand(q: u32, regions: &[Region]) -> Vec<Vec<Ball>> {
    let mut combos: Vec<Vec<Ball>> = vec![Vec::new()];
    for r in regions {
        let balls = r.balls(q);
        combos = combos
            .into_iter()
            .flat_map(|pre| {
                balls.iter().map(move |b| {
                    let mut v = pre.clone();
                    v.push(b.clone());
                    v
                })
            })
            .collect();
    }
    combos
}

fn validate(space: &SpaceDescriptor, balls: &[Ball]) -> Result<()> {
    if balls.len() != space.dim() {
        return Err(Error::Structure("cell dimension mismatch".into()));
    }
    for (b, k) in balls.iter().zip(&space.kinds) {
        if *k == CoordKind::Multiplicative && b.contains_zero() {
            return Err(Error::Structure(format!(
                "multiplicative cell {b} contains 0"
            )));
        }
    }
    if let Some((i, j)) = space.punctured {
        if balls[i].contains_zero() && balls[j].contains_zero() {
            return Err(Error::Structure("cell meets the punctured origin".into()));
        }
    }
    Ok(())
}

impl fmt::Debug for SBFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for SBFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (regions, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            let cells: Vec<String> = regions.iter().map(|r| r.to_string()).collect();
            write!(f, "[{}] * ({c})", cells.join(", "))?;
        }
        Ok(())
    }
}
