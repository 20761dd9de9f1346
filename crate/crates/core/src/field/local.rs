//! Truncated Laurent series over `F_q` with explicit absolute precision.

use super::fq::Fq;
use crate::error::{Error, Result};
use std::fmt;

/// Precision marker for elements whose digit list is complete.
pub const EXACT: i32 = i32::MAX;

/// An element of `F_q((t))` known modulo `t^prec`.
///
/// Digits are stored from the valuation upwards; the leading digit is
/// nonzero and trailing zeros are trimmed. An element with no known
/// nonzero digit is *zero to precision*: a distinguished state, not the
/// number zero (unless `prec == EXACT`).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LocalElem {
    start: i32,
    digits: Vec<u32>,
    prec: i32,
}

impl LocalElem {
    pub fn zero() -> Self {
        Self {
            start: EXACT,
            digits: Vec::new(),
            prec: EXACT,
        }
    }

    /// The element `O(t^prec)`.
    pub fn zero_to(prec: i32) -> Self {
        Self {
            start: prec,
            digits: Vec::new(),
            prec,
        }
    }

    /// Exact monomial `c·t^k`.
    pub fn monomial(c: u32, k: i32) -> Self {
        Self::from_digits(k, vec![c], EXACT)
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    /// The uniformizer power `t^k`.
    pub fn t_pow(k: i32) -> Self {
        Self::monomial(1, k)
    }

    /// Builds `Σ digits[i]·t^{start+i} + O(t^prec)`, normalizing the digit list.
    pub fn from_digits(start: i32, digits: Vec<u32>, prec: i32) -> Self {
        let mut digits = digits;
        if start < prec {
            let room = (prec as i64 - start as i64).min(digits.len() as i64) as usize;
            digits.truncate(room);
        } else {
            digits.clear();
        }
        let lead = digits.iter().position(|&d| d != 0);
        match lead {
            None => Self::zero_to(prec),
            Some(i) => {
                let end = digits.iter().rposition(|&d| d != 0).unwrap();
                Self {
                    start: start + i as i32,
                    digits: digits[i..=end].to_vec(),
                    prec,
                }
            }
        }
    }

    pub fn prec(&self) -> i32 {
        self.prec
    }

    pub fn is_exact(&self) -> bool {
        self.prec == EXACT
    }

    /// True when no nonzero digit is known.
    pub fn is_zero_to_prec(&self) -> bool {
        self.digits.is_empty()
    }

    pub fn is_exact_zero(&self) -> bool {
        self.digits.is_empty() && self.prec == EXACT
    }

    pub fn valuation(&self) -> Result<i32> {
        if self.digits.is_empty() {
            Err(Error::ZeroToPrecision)
        } else {
            Ok(self.start)
        }
    }

    /// Valuation when known, else the precision (a lower bound for it).
    pub fn val_or_prec(&self) -> i32 {
        if self.digits.is_empty() {
            self.prec
        } else {
            self.start
        }
    }

    /// Coefficient of `t^k`, or `None` when it is beyond the precision.
    pub fn digit(&self, k: i32) -> Option<u32> {
        if k >= self.prec {
            return None;
        }
        Some(self.raw_digit(k))
    }

    fn raw_digit(&self, k: i32) -> u32 {
        if self.digits.is_empty() || k < self.start {
            return 0;
        }
        let i = (k as i64 - self.start as i64) as usize;
        self.digits.get(i).copied().unwrap_or(0)
    }

    /// One past the highest stored digit.
    pub fn end(&self) -> i32 {
        if self.digits.is_empty() {
            self.start
        } else {
            self.start + self.digits.len() as i32
        }
    }

    /// Nonzero digits as `(exponent, digit)` pairs.
    pub fn terms(&self) -> impl Iterator<Item = (i32, u32)> + '_ {
        self.digits
            .iter()
            .enumerate()
            .filter(|(_, &d)| d != 0)
            .map(move |(i, &d)| (self.start + i as i32, d))
    }

    /// Lowers the precision to `min(prec, n)`.
    pub fn with_prec(&self, n: i32) -> Self {
        if n >= self.prec {
            return self.clone();
        }
        Self::from_digits(self.start, self.digits.clone(), n)
    }

    /// The exact element formed by the digits below `t^n`.
    pub fn truncated(&self, n: i32) -> Result<Self> {
        if self.prec < n {
            return Err(Error::InsufficientPrecision(format!(
                "need digits below t^{n}, have precision {}",
                self.prec
            )));
        }
        Ok(Self::from_digits(self.start, self.digits.clone(), n).exact_copy())
    }

    fn exact_copy(mut self) -> Self {
        if self.digits.is_empty() {
            return Self::zero();
        }
        self.prec = EXACT;
        self
    }

    /// Multiplication by `t^k`.
    pub fn shift(&self, k: i32) -> Self {
        if self.is_exact_zero() {
            return Self::zero();
        }
        Self {
            start: self.start.saturating_add(k),
            digits: self.digits.clone(),
            prec: if self.prec == EXACT {
                EXACT
            } else {
                self.prec + k
            },
        }
    }

    pub fn abs(&self) -> Result<super::QPower> {
        Ok(super::QPower(-self.valuation()?))
    }

    /// Leading digit, when known.
    pub fn lead_digit(&self) -> Option<u32> {
        self.digits.first().copied()
    }
}

impl fmt::Debug for LocalElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for LocalElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, d) in self.terms() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{d}")?,
                _ if d == 1 => write!(f, "t^{k}")?,
                _ => write!(f, "{d}t^{k}")?,
            }
        }
        if self.prec != EXACT {
            if !first {
                write!(f, " + ")?;
            }
            write!(f, "O(t^{})", self.prec)?;
        } else if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Arithmetic context for `F = F_q((t))`.
#[derive(Debug, Clone)]
pub struct LocalField {
    pub fq: Fq,
    /// Relative precision used when a series inverse has no finite form.
    pub work_prec: i32,
}

impl LocalField {
    pub fn new(fq: Fq) -> Self {
        Self { fq, work_prec: 48 }
    }

    pub fn q(&self) -> u32 {
        self.fq.q()
    }

    pub fn p(&self) -> u32 {
        self.fq.p()
    }

    /// Image of an integer (exact, in `F_p ⊂ O`).
    pub fn int(&self, n: i64) -> LocalElem {
        LocalElem::from_digits(0, vec![self.fq.from_int(n)], EXACT)
    }

    pub fn neg(&self, x: &LocalElem) -> LocalElem {
        LocalElem {
            start: x.start,
            digits: x.digits.iter().map(|&d| self.fq.neg(d)).collect(),
            prec: x.prec,
        }
    }

    pub fn add(&self, x: &LocalElem, y: &LocalElem) -> LocalElem {
        self.combine(x, y, |a, b| self.fq.add(a, b))
    }

    pub fn sub(&self, x: &LocalElem, y: &LocalElem) -> LocalElem {
        self.combine(x, y, |a, b| self.fq.sub(a, b))
    }

    fn combine(&self, x: &LocalElem, y: &LocalElem, op: impl Fn(u32, u32) -> u32) -> LocalElem {
        let prec = x.prec.min(y.prec);
        let spans = [x, y].into_iter().filter(|e| !e.digits.is_empty());
        let (lo, hi) = spans.fold((i32::MAX, i32::MIN), |(lo, hi), e| {
            (lo.min(e.start), hi.max(e.end()))
        });
        let hi = hi.min(prec);
        if lo >= hi {
            return LocalElem::zero_to(prec);
        }
        let digits = (lo..hi)
            .map(|k| op(x.raw_digit(k), y.raw_digit(k)))
            .collect();
        LocalElem::from_digits(lo, digits, prec)
    }

    pub fn mul(&self, x: &LocalElem, y: &LocalElem) -> LocalElem {
        if x.is_exact_zero() || y.is_exact_zero() {
            return LocalElem::zero();
        }
        let vx = x.val_or_prec();
        let vy = y.val_or_prec();
        let bump = |p: i32, v: i32| {
            if p == EXACT {
                EXACT
            } else {
                p.saturating_add(v)
            }
        };
        let prec = bump(x.prec, vy).min(bump(y.prec, vx));
        if x.digits.is_empty() || y.digits.is_empty() {
            return LocalElem::zero_to(prec);
        }
        let start = vx + vy;
        let full = x.digits.len() + y.digits.len() - 1;
        let len = if prec == EXACT {
            full
        } else {
            ((prec - start).max(0) as usize).min(full)
        };
        let mut out = vec![0u32; len];
        for (i, &a) in x.digits.iter().enumerate() {
            if a == 0 || i >= len {
                continue;
            }
            for (j, &b) in y.digits.iter().enumerate() {
                if i + j >= len {
                    break;
                }
                out[i + j] = self.fq.add(out[i + j], self.fq.mul(a, b));
            }
        }
        LocalElem::from_digits(start, out, prec)
    }

    /// Multiplication by a residue-field constant.
    pub fn scale(&self, c: u32, x: &LocalElem) -> LocalElem {
        if c == 0 {
            return LocalElem::zero();
        }
        LocalElem {
            start: x.start,
            digits: x.digits.iter().map(|&d| self.fq.mul(c, d)).collect(),
            prec: x.prec,
        }
    }

    pub fn inv(&self, x: &LocalElem) -> Result<LocalElem> {
        let v = x.valuation()?;
        if x.is_exact() && x.digits.len() == 1 {
            return Ok(LocalElem::monomial(self.fq.inv(x.digits[0]), -v));
        }
        let prec = if x.is_exact() {
            -v + self.work_prec
        } else {
            (x.prec - 2 * v).min(-v + self.work_prec)
        };
        let n = (prec + v) as usize;
        let u0inv = self.fq.inv(x.digits[0]);
        let mut b = vec![0u32; n];
        if n > 0 {
            b[0] = u0inv;
        }
        for k in 1..n {
            let mut s = 0;
            for j in 1..=k.min(x.digits.len() - 1) {
                s = self.fq.add(s, self.fq.mul(x.digits[j], b[k - j]));
            }
            b[k] = self.fq.neg(self.fq.mul(u0inv, s));
        }
        Ok(LocalElem::from_digits(-v, b, prec))
    }

    pub fn div(&self, x: &LocalElem, y: &LocalElem) -> Result<LocalElem> {
        Ok(self.mul(x, &self.inv(y)?))
    }

    pub fn pow(&self, x: &LocalElem, e: i32) -> Result<LocalElem> {
        let base = if e < 0 { self.inv(x)? } else { x.clone() };
        let mut acc = LocalElem::one();
        for _ in 0..e.unsigned_abs() {
            acc = self.mul(&acc, &base);
        }
        Ok(acc)
    }

    /// `|x|` as a power of `q`.
    pub fn abs(&self, x: &LocalElem) -> Result<super::QPower> {
        x.abs()
    }
}
