//! Canonical form: disjoint maximal cells, deterministic order.

use super::cell::{Ball, CoordKind, Region};
use crate::field::CycScalar;
use std::collections::{BTreeMap, BTreeSet};

pub type BallTerm = (Vec<Ball>, CycScalar);
pub type RegionTerm = (Vec<Region>, CycScalar);

/// Canonicalizes a list of (possibly overlapping) ball terms; values add on overlaps.
pub fn canonicalize(q: u32, kinds: &[CoordKind], terms: Vec<BallTerm>) -> Vec<RegionTerm> {
    let p = match terms.first() {
        Some((_, c)) => c.p(),
        None => return Vec::new(),
    };
    let mut out = canon_rec(q, p, kinds, terms);
    out.sort();
    out
}

fn canon_rec(q: u32, p: u32, kinds: &[CoordKind], terms: Vec<BallTerm>) -> Vec<RegionTerm> {
    if kinds.is_empty() {
        let mut sum = CycScalar::zero(p);
        for (_, c) in &terms {
            sum += c;
        }
        return if sum.is_zero() {
            Vec::new()
        } else {
            vec![(Vec::new(), sum)]
        };
    }
    let distinct: BTreeSet<Ball> = terms.iter().map(|(b, _)| b[0].clone()).collect();
    let mut slices: BTreeMap<Ball, Vec<RegionTerm>> = BTreeMap::new();
    for piece in partition(q, &distinct) {
        let sub: Vec<BallTerm> = terms
            .iter()
            .filter(|(b, _)| b[0].contains_ball(&piece))
            .map(|(b, c)| (b[1..].to_vec(), c.clone()))
            .collect();
        let mut slice = canon_rec(q, p, &kinds[1..], sub);
        if !slice.is_empty() {
            slice.sort();
            slices.insert(piece, slice);
        }
    }
    let merged = merge(q, kinds[0], slices);
    let mut out = Vec::new();
    for (region, slice) in merged {
        for (rest, c) in slice {
            let mut regions = Vec::with_capacity(rest.len() + 1);
            regions.push(region.clone());
            regions.extend(rest);
            out.push((regions, c));
        }
    }
    out
}

/// Disjoint balls refining the given set: every given ball is a union of pieces.
pub fn partition(q: u32, balls: &BTreeSet<Ball>) -> Vec<Ball> {
    let roots: Vec<&Ball> = balls
        .iter()
        .filter(|b| !balls.iter().any(|o| o != *b && o.contains_ball(b)))
        .collect();
    let mut out = Vec::new();
    for r in roots {
        let inner: Vec<&Ball> = balls
            .iter()
            .filter(|b| *b != r && r.contains_ball(b))
            .collect();
        split(q, r, &inner, &mut out);
    }
    out
}

fn split(q: u32, b: &Ball, inner: &[&Ball], out: &mut Vec<Ball>) {
    if inner.is_empty() {
        out.push(b.clone());
        return;
    }
    for child in b.children(q) {
        let below: Vec<&Ball> = inner
            .iter()
            .copied()
            .filter(|x| child.contains_ball(x) && **x != child)
            .collect();
        split(q, &child, &below, out);
    }
}

fn merge(
    q: u32,
    kind: CoordKind,
    mut slices: BTreeMap<Ball, Vec<RegionTerm>>,
) -> Vec<(Region, Vec<RegionTerm>)> {
    loop {
        let mut groups: BTreeMap<Ball, Vec<Ball>> = BTreeMap::new();
        for b in slices.keys() {
            groups.entry(b.parent()).or_default().push(b.clone());
        }
        let mut changed = false;
        for (parent, kids) in groups {
            if kids.len() as u32 == q && kids.iter().all(|k| slices[k] == slices[&kids[0]]) {
                let s = slices.remove(&kids[0]).unwrap();
                for k in &kids[1..] {
                    slices.remove(k);
                }
                slices.insert(parent, s);
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    let mut out: Vec<(Region, Vec<RegionTerm>)> = Vec::new();
    if kind == CoordKind::Multiplicative {
        let mut shells: BTreeMap<i32, Vec<Ball>> = BTreeMap::new();
        for b in slices.keys() {
            if let Some(v) = b.valuation() {
                if b.level == v + 1 {
                    shells.entry(v).or_default().push(b.clone());
                }
            }
        }
        for (v, balls) in shells {
            if balls.len() as u32 == q - 1 && balls.iter().all(|k| slices[k] == slices[&balls[0]]) {
                let s = slices.remove(&balls[0]).unwrap();
                for k in &balls[1..] {
                    slices.remove(k);
                }
                out.push((Region::Shell(v), s));
            }
        }
    }
    out.extend(slices.into_iter().map(|(b, s)| (Region::Ball(b), s)));
    out
}
