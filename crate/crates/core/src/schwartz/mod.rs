//! Exact calculus of Schwartz–Bruhat functions on products of `F` and `F^×`.

pub mod affine;
pub mod canon;
pub mod cell;
pub mod engine;
pub mod fourier;
pub mod func;
pub mod poly;
pub mod serial;

pub use affine::{pullback_coords, pullback_linear, CoordMap};
pub use canon::{BallTerm, RegionTerm};
pub use cell::{Ball, CoordKind, Region, SpaceDescriptor};
pub use engine::{boxes, shell_balls, tabulate, tabulate_values, Probe};
pub use fourier::{fourier, fourier_m2, modulate, modulate_cells, YScale};
pub use func::SBFunction;
pub use poly::Poly;
pub use serial::first_diff;

use crate::field::LocalField;
use std::ops::Deref;

/// Field arithmetic plus the refinement budget shared by every operation.
#[derive(Debug, Clone)]
pub struct Ctx {
    pub k: LocalField,
    /// How many levels a cell may be split below its starting level.
    pub budget: i32,
}

impl Ctx {
    pub fn new(k: LocalField, budget: i32) -> Self {
        Self { k, budget }
    }

    pub fn with_q(q: u32) -> crate::Result<Self> {
        Ok(Self::new(LocalField::with_q(q)?, 6))
    }

    pub fn zero(&self, space: SpaceDescriptor) -> SBFunction {
        SBFunction::zero(space, self.q(), self.p())
    }

    pub fn function(
        &self,
        space: SpaceDescriptor,
        terms: Vec<BallTerm>,
    ) -> crate::Result<SBFunction> {
        SBFunction::from_ball_terms(space, self.q(), self.p(), terms)
    }

    pub fn indicator(
        &self,
        space: SpaceDescriptor,
        regions: Vec<Region>,
    ) -> crate::Result<SBFunction> {
        SBFunction::indicator(space, self.q(), regions, self.one_scalar())
    }
}

impl Deref for Ctx {
    type Target = LocalField;
    fn deref(&self) -> &LocalField {
        &self.k
    }
}

#[cfg(test)]
mod tests;
