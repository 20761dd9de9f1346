//! Canonical text and JSON forms.

use super::cell::{Ball, CoordKind, Region, SpaceDescriptor};
use super::func::SBFunction;
use crate::error::{Error, Result};
use crate::field::{CycScalar, LocalElem, EXACT};
use serde::{Deserialize, Serialize};
use std::fmt::Write;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RegionJson {
    Ball {
        start: i32,
        digits: Vec<u32>,
        level: i32,
    },
    Shell {
        valuation: i32,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellJson {
    pub regions: Vec<RegionJson>,
    pub coeff: CycScalar,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FunctionJson {
    pub space: Vec<CoordKind>,
    pub punctured: Option<(usize, usize)>,
    pub q: u32,
    pub p: u32,
    pub cells: Vec<CellJson>,
}

fn region_json(r: &Region) -> RegionJson {
    match r {
        Region::Shell(v) => RegionJson::Shell { valuation: *v },
        Region::Ball(b) => {
            let (start, digits) = if b.contains_zero() {
                (b.level, Vec::new())
            } else {
                let v = b.center.val_or_prec();
                (
                    v,
                    (v..b.center.end())
                        .map(|k| b.center.digit(k).unwrap_or(0))
                        .collect(),
                )
            };
            RegionJson::Ball {
                start,
                digits,
                level: b.level,
            }
        }
    }
}

fn region_from_json(r: &RegionJson) -> Result<Region> {
    Ok(match r {
        RegionJson::Shell { valuation } => Region::Shell(*valuation),
        RegionJson::Ball {
            start,
            digits,
            level,
        } => Region::Ball(Ball::new(
            &LocalElem::from_digits(*start, digits.clone(), EXACT),
            *level,
        )?),
    })
}

impl SBFunction {
    pub fn to_json_value(&self) -> FunctionJson {
        FunctionJson {
            space: self.space().kinds.clone(),
            punctured: self.space().punctured,
            q: self.q(),
            p: self.p(),
            cells: self
                .terms()
                .iter()
                .map(|(r, c)| CellJson {
                    regions: r.iter().map(region_json).collect(),
                    coeff: c.clone(),
                })
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_json_value()).expect("serializable")
    }

    pub fn from_json_value(v: &FunctionJson) -> Result<Self> {
        let space = SpaceDescriptor {
            kinds: v.space.clone(),
            punctured: v.punctured,
        };
        let mut terms = Vec::new();
        for cell in &v.cells {
            let regions = cell
                .regions
                .iter()
                .map(region_from_json)
                .collect::<Result<Vec<_>>>()?;
            terms.push((regions, cell.coeff.clone()));
        }
        SBFunction::from_region_terms(space, v.q, v.p, terms)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let v: FunctionJson =
            serde_json::from_str(s).map_err(|e| Error::Structure(e.to_string()))?;
        Self::from_json_value(&v)
    }

    /// Line-oriented canonical text form, one cell per line.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let kinds: Vec<&str> = self
            .space()
            .kinds
            .iter()
            .map(|k| match k {
                CoordKind::Additive => "A",
                CoordKind::Multiplicative => "M",
            })
            .collect();
        writeln!(s, "space {}", kinds.join(",")).unwrap();
        if let Some((i, j)) = self.space().punctured {
            writeln!(s, "puncture {i},{j}").unwrap();
        }
        writeln!(s, "field q={} p={}", self.q(), self.p()).unwrap();
        for (regions, c) in self.terms() {
            let cells: Vec<String> = regions
                .iter()
                .map(|r| match region_json(r) {
                    RegionJson::Shell { valuation } => format!("S[{valuation}]"),
                    RegionJson::Ball {
                        start,
                        digits,
                        level,
                    } => {
                        let d: Vec<String> = digits.iter().map(|x| x.to_string()).collect();
                        format!("B[{start}:{}|{level}]", d.join("."))
                    }
                })
                .collect();
            let coeffs: Vec<String> = c.coeffs().iter().map(|r| r.to_string()).collect();
            writeln!(s, "cell {} :: {}", cells.join(" "), coeffs.join(",")).unwrap();
        }
        s
    }
}

/// First line on which two canonical texts differ.
pub fn first_diff(a: &str, b: &str) -> Option<String> {
    let mut la = a.lines();
    let mut lb = b.lines();
    for i in 0.. {
        match (la.next(), lb.next()) {
            (None, None) => return None,
            (x, y) if x == y => continue,
            (x, y) => {
                return Some(format!(
                    "line {i}: {:?} vs {:?}",
                    x.unwrap_or("<end>"),
                    y.unwrap_or("<end>")
                ))
            }
        }
    }
    None
}
