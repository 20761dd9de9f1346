//! Balls, cells and coordinate spaces.

use crate::error::{Error, Result};
use crate::field::{LocalElem, EXACT};
use serde::{Deserialize, Serialize};
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CoordKind {
    /// Ranges over `F`, additive Haar measure with `vol(O) = 1`.
    Additive,
    /// Ranges over `F^×`, measure `d^×x = dx/|x|`.
    Multiplicative,
}

/// Ordered coordinates of a product of copies of `F` and `F^×`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SpaceDescriptor {
    pub kinds: Vec<CoordKind>,
    /// Two additive coordinates that may not vanish simultaneously.
    pub punctured: Option<(usize, usize)>,
}

impl SpaceDescriptor {
    pub fn new(kinds: Vec<CoordKind>) -> Self {
        Self {
            kinds,
            punctured: None,
        }
    }

    pub fn with_puncture(mut self, i: usize, j: usize) -> Result<Self> {
        let ok = i != j
            && self.kinds.get(i) == Some(&CoordKind::Additive)
            && self.kinds.get(j) == Some(&CoordKind::Additive);
        if !ok {
            return Err(Error::Structure(format!(
                "invalid punctured pair ({i},{j})"
            )));
        }
        self.punctured = Some((i, j));
        Ok(self)
    }

    pub fn dim(&self) -> usize {
        self.kinds.len()
    }

    /// `n` additive coordinates.
    pub fn additive(n: usize) -> Self {
        Self::new(vec![CoordKind::Additive; n])
    }

    /// `S(F × F^×)`, coordinates `(λ, y)`.
    pub fn l_space() -> Self {
        Self::new(vec![CoordKind::Additive, CoordKind::Multiplicative])
    }

    /// `S(F^× × F^×)`, coordinates `(a, d)`.
    pub fn torus() -> Self {
        Self::new(vec![CoordKind::Multiplicative; 2])
    }

    /// `S(M_2(F) × F^×)`, coordinates `(a, b, c, d, y)`.
    pub fn y_space() -> Self {
        let mut k = vec![CoordKind::Additive; 4];
        k.push(CoordKind::Multiplicative);
        Self::new(k)
    }

    /// `S(U\G)` via bottom row and determinant, coordinates `(c, d, Δ)`.
    pub fn u_g_space() -> Self {
        Self::new(vec![
            CoordKind::Additive,
            CoordKind::Additive,
            CoordKind::Multiplicative,
        ])
        .with_puncture(0, 1)
        .expect("valid puncture")
    }

    /// The space with the listed coordinates removed.
    pub fn without(&self, coords: &[usize]) -> Result<Self> {
        let kinds = (0..self.dim())
            .filter(|i| !coords.contains(i))
            .map(|i| self.kinds[i])
            .collect();
        let punctured = match self.punctured {
            Some((i, j)) if !coords.contains(&i) && !coords.contains(&j) => {
                let shift = |x: usize| x - coords.iter().filter(|&&c| c < x).count();
                Some((shift(i), shift(j)))
            }
            _ => None,
        };
        Ok(Self { kinds, punctured })
    }
}

/// The ball `center + t^level O`, with `center` exact and free of digits at or above `level`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Ball {
    pub level: i32,
    pub center: LocalElem,
}

impl Ball {
    /// The ball around `x` at `level`; the digits of `x` below `level` must be known.
    pub fn new(x: &LocalElem, level: i32) -> Result<Self> {
        Ok(Self {
            level,
            center: x.truncated(level)?,
        })
    }

    /// `t^level O`.
    pub fn around_zero(level: i32) -> Self {
        Self {
            level,
            center: LocalElem::zero(),
        }
    }

    pub fn contains_zero(&self) -> bool {
        self.center.is_exact_zero()
    }

    /// Lower bound on the valuation of every element of the ball.
    pub fn min_val(&self) -> i32 {
        if self.contains_zero() {
            self.level
        } else {
            self.center.val_or_prec()
        }
    }

    /// The valuation shared by all elements; `None` if the ball contains zero.
    pub fn valuation(&self) -> Option<i32> {
        (!self.contains_zero()).then(|| self.center.val_or_prec())
    }

    /// The ball as a single element known to precision `level`.
    pub fn as_elem(&self) -> LocalElem {
        if self.contains_zero() {
            LocalElem::zero_to(self.level)
        } else {
            LocalElem::from_digits(
                self.center.val_or_prec(),
                digits_of(&self.center),
                self.level,
            )
        }
    }

    /// Decides membership of a point known to finite precision.
    pub fn contains_point(&self, x: &LocalElem) -> Option<bool> {
        let lo = self
            .center
            .val_or_prec()
            .min(x.val_or_prec())
            .min(self.level);
        for k in lo..self.level {
            match x.digit(k) {
                Some(d) if d != self.center.digit(k).unwrap_or(0) => return Some(false),
                Some(_) => {}
                None => return None,
            }
        }
        Some(true)
    }

    pub fn contains_ball(&self, other: &Ball) -> bool {
        other.level >= self.level
            && other
                .center
                .truncated(self.level)
                .map(|c| c == self.center)
                .unwrap_or(false)
    }

    pub fn disjoint(&self, other: &Ball) -> bool {
        !self.contains_ball(other) && !other.contains_ball(self)
    }

    /// The `q` balls one level down.
    pub fn children(&self, q: u32) -> Vec<Ball> {
        (0..q)
            .map(|d| {
                let mut digits = digits_from(&self.center, self.level);
                digits.push(d);
                let start = self.level - digits.len() as i32 + 1;
                Ball {
                    level: self.level + 1,
                    center: LocalElem::from_digits(start, digits, EXACT),
                }
            })
            .collect()
    }

    /// All sub-balls at `level` (which must be at least the current level).
    pub fn descendants(&self, q: u32, level: i32) -> Vec<Ball> {
        let mut cur = vec![self.clone()];
        for _ in self.level..level {
            cur = cur.iter().flat_map(|b| b.children(q)).collect();
        }
        cur
    }

    pub fn parent(&self) -> Ball {
        Ball {
            level: self.level - 1,
            center: self.center.truncated(self.level - 1).expect("exact center"),
        }
    }
}

/// Digits of an exact element from its valuation to the last nonzero digit.
fn digits_of(x: &LocalElem) -> Vec<u32> {
    if x.is_zero_to_prec() {
        return Vec::new();
    }
    (x.val_or_prec()..x.end())
        .map(|k| x.digit(k).unwrap_or(0))
        .collect()
}

/// Digits of `x` for exponents `m..level` where `m = min(val, level)`, padded with zeros.
fn digits_from(x: &LocalElem, level: i32) -> Vec<u32> {
    if x.is_zero_to_prec() {
        return Vec::new();
    }
    (x.val_or_prec()..level)
        .map(|k| x.digit(k).unwrap_or(0))
        .collect()
}

impl fmt::Debug for Ball {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Ball {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.contains_zero() {
            write!(f, "t^{}O", self.level)
        } else {
            write!(f, "({})+t^{}O", self.center, self.level)
        }
    }
}

/// One coordinate factor of a cell.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Region {
    Ball(Ball),
    /// The shell `t^v O^×`, i.e. `t^v·U_0` (multiplicative coordinates only).
    Shell(i32),
}

impl Region {
    /// Decomposition into balls.
    pub fn balls(&self, q: u32) -> Vec<Ball> {
        match self {
            Region::Ball(b) => vec![b.clone()],
            Region::Shell(v) => (1..q)
                .map(|a| Ball {
                    level: v + 1,
                    center: LocalElem::monomial(a, *v),
                })
                .collect(),
        }
    }

    pub fn contains_point(&self, x: &LocalElem) -> Option<bool> {
        match self {
            Region::Ball(b) => b.contains_point(x),
            Region::Shell(v) => {
                if x.is_zero_to_prec() {
                    if x.prec() > *v {
                        Some(false)
                    } else {
                        None
                    }
                } else {
                    Some(x.val_or_prec() == *v)
                }
            }
        }
    }

    /// Multiplicative description `(center, k)` of `center·U_k`, `k ≥ 0`.
    pub fn mult_form(&self) -> Option<(LocalElem, i32)> {
        match self {
            Region::Shell(v) => Some((LocalElem::t_pow(*v), 0)),
            Region::Ball(b) => b.valuation().map(|v| (b.center.clone(), b.level - v)),
        }
    }
}

impl fmt::Debug for Region {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Region {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Region::Ball(b) => write!(f, "{b}"),
            Region::Shell(v) => write!(f, "t^{v}O^x"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ball_children_partition() {
        let b = Ball::new(&LocalElem::from_digits(-1, vec![2], EXACT), 1).unwrap();
        let kids = b.children(3);
        assert_eq!(kids.len(), 3);
        for k in &kids {
            assert!(b.contains_ball(k));
            assert_eq!(k.parent(), b);
        }
        assert!(kids[0].disjoint(&kids[1]));
        assert_eq!(kids[0].center, LocalElem::monomial(2, -1));
        assert_eq!(
            kids[2].center,
            LocalElem::from_digits(-1, vec![2, 0, 2], EXACT)
        );
    }

    #[test]
    fn membership() {
        let b = Ball::new(&LocalElem::one(), 1).unwrap();
        let x = LocalElem::from_digits(0, vec![1, 0, 1], EXACT);
        assert_eq!(b.contains_point(&x), Some(true));
        assert_eq!(b.contains_point(&LocalElem::zero()), Some(false));
        assert_eq!(b.contains_point(&LocalElem::zero_to(0)), None);
        assert_eq!(
            Ball::around_zero(0).contains_point(&LocalElem::t_pow(-1)),
            Some(false)
        );
        assert_eq!(Region::Shell(0).contains_point(&x), Some(true));
    }

    #[test]
    fn shell_decomposes_into_unit_balls() {
        let balls = Region::Shell(2).balls(3);
        assert_eq!(balls.len(), 2);
        assert!(balls
            .iter()
            .all(|b| b.level == 3 && b.valuation() == Some(2)));
    }
}
