//! Brute-force oracles: exhaustive summation over coset representatives.

use crate::error::{Error, Result};
use crate::field::{CycScalar, LocalElem, Rat, EXACT};
use crate::schwartz::{Ball, CoordKind, SBFunction};

/// Cap on the number of sample points.
pub const MAX_POINTS: u64 = 4_000_000;

/// All exact elements `Σ_{lo ≤ k < hi} d_k t^k`.
pub fn representatives(q: u32, lo: i32, hi: i32) -> Vec<LocalElem> {
    let n = (hi - lo).max(0) as u32;
    let total = (q as u64).pow(n);
    (0..total)
        .map(|mut idx| {
            let digits = (0..n)
                .map(|_| {
                    let d = (idx % q as u64) as u32;
                    idx /= q as u64;
                    d
                })
                .collect();
            LocalElem::from_digits(lo, digits, EXACT)
        })
        .collect()
}

/// Sample points of one coordinate with their measure weights.
fn samples(q: u32, kind: CoordKind, lo: i32, hi: i32, level: i32) -> Vec<(LocalElem, Rat)> {
    let qr = |k: i32| {
        let base = Rat::from_integer(q as i128);
        if k >= 0 {
            base.pow(k)
        } else {
            Rat::from_integer(1) / base.pow(-k)
        }
    };
    match kind {
        CoordKind::Additive => representatives(q, lo, level)
            .into_iter()
            .map(|x| (x, qr(-level)))
            .collect(),
        CoordKind::Multiplicative => representatives(q, lo, level)
            .into_iter()
            .filter(|x| !x.is_zero_to_prec() && x.val_or_prec() <= hi)
            .map(|x| {
                let v = x.val_or_prec();
                (x, qr(v - level))
            })
            .collect(),
    }
}

/// Support bounds per coordinate: every cell lies in valuations `[lo, hi]`.
fn bounds(f: &SBFunction) -> Vec<(i32, i32)> {
    let mut out = vec![(i32::MAX, i32::MIN); f.dim()];
    for (balls, _) in f.ball_terms() {
        for (i, b) in balls.iter().enumerate() {
            let lo = b.min_val().min(b.level);
            let hi = b.valuation().unwrap_or(b.level);
            out[i] = (out[i].0.min(lo), out[i].1.max(hi));
        }
    }
    out
}

/// Integrates `coords` out of `f` by summing point values at `level`; the remaining
/// coordinates are sampled at the same level and reassembled into a function.
pub fn brute_force_integral(f: &SBFunction, coords: &[usize], level: i32) -> Result<SBFunction> {
    let (terms, _) = brute_terms(f, coords, level)?;
    let space = f.space().without(coords)?;
    SBFunction::from_ball_terms(space, f.q(), f.p(), terms)
}

/// Integral over every coordinate by summation at `level`.
pub fn brute_force_total(f: &SBFunction, level: i32) -> Result<CycScalar> {
    let all: Vec<usize> = (0..f.dim()).collect();
    Ok(brute_terms(f, &all, level)?.1)
}

fn brute_terms(
    f: &SBFunction,
    coords: &[usize],
    level: i32,
) -> Result<(Vec<(Vec<Ball>, CycScalar)>, CycScalar)> {
    let q = f.q();
    if f.is_zero() {
        return Ok((Vec::new(), CycScalar::zero(f.p())));
    }
    if f.max_levels().iter().flatten().any(|&l| l > level) {
        return Err(Error::Structure(format!(
            "sampling level {level} is coarser than the function"
        )));
    }
    let per: Vec<Vec<(LocalElem, Rat)>> = bounds(f)
        .into_iter()
        .enumerate()
        .map(|(i, (lo, hi))| samples(q, f.space().kinds[i], lo, hi, level))
        .collect();
    let count: u64 = per.iter().map(|s| s.len() as u64).product();
    if count > MAX_POINTS {
        return Err(Error::RefinementBudgetExceeded(format!(
            "{count} sample points"
        )));
    }
    let rest: Vec<usize> = (0..f.dim()).filter(|i| !coords.contains(i)).collect();
    let mut acc: std::collections::BTreeMap<Vec<Ball>, CycScalar> = Default::default();
    let mut total = CycScalar::zero(f.p());
    let mut idx = vec![0usize; per.len()];
    'outer: loop {
        let point: Vec<LocalElem> = idx
            .iter()
            .enumerate()
            .map(|(i, &j)| per[i][j].0.clone())
            .collect();
        let v = f.evaluate(&point)?;
        if !v.is_zero() {
            let w: Rat = coords.iter().map(|&i| per[i][idx[i]].1).product();
            let contrib = v.scale(w);
            let key: Vec<Ball> = rest
                .iter()
                .map(|&i| Ball::new(&point[i], level))
                .collect::<Result<_>>()?;
            total += &contrib;
            *acc.entry(key).or_insert_with(|| CycScalar::zero(f.p())) += &contrib;
        }
        for i in 0..idx.len() {
            idx[i] += 1;
            if idx[i] < per[i].len() {
                continue 'outer;
            }
            idx[i] = 0;
        }
        break;
    }
    Ok((acc.into_iter().collect(), total))
}
