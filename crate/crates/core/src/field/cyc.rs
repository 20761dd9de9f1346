//! Exact arithmetic in the cyclotomic field `Q(ζ_p)`.

use num_rational::Ratio;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

pub type Rat = Ratio<i128>;

/// An element of `Q(ζ_p)` in the basis `1, ζ, …, ζ^{p-2}`.
///
/// The basis is a genuine basis, so equality of coefficient vectors is
/// equality of field elements.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CycScalar {
    coeffs: Vec<Rat>,
}

impl CycScalar {
    pub fn zero(p: u32) -> Self {
        Self {
            coeffs: vec![Rat::zero(); p as usize - 1],
        }
    }

    pub fn one(p: u32) -> Self {
        Self::from_rat(p, Rat::one())
    }

    pub fn from_rat(p: u32, r: Rat) -> Self {
        let mut s = Self::zero(p);
        s.coeffs[0] = r;
        s
    }

    pub fn from_int(p: u32, n: i128) -> Self {
        Self::from_rat(p, Rat::from_integer(n))
    }

    /// `ζ_p^k`; the exponent is reduced mod `p`.
    pub fn zeta(p: u32, k: i64) -> Self {
        let k = k.rem_euclid(p as i64) as usize;
        let mut s = Self::zero(p);
        if k == p as usize - 1 {
            for c in &mut s.coeffs {
                *c = -Rat::one();
            }
        } else {
            s.coeffs[k] = Rat::one();
        }
        s
    }

    pub fn from_coeffs(coeffs: Vec<Rat>) -> Self {
        assert!(
            coeffs.len() >= 2,
            "coefficient vector must have length p-1 >= 2"
        );
        Self { coeffs }
    }

    pub fn p(&self) -> u32 {
        self.coeffs.len() as u32 + 1
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    /// Returns the value as a rational if it lies in `Q`.
    pub fn as_rat(&self) -> Option<Rat> {
        self.coeffs[1..]
            .iter()
            .all(Zero::is_zero)
            .then(|| self.coeffs[0])
    }

    pub fn scale(&self, r: Rat) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|c| c * r).collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.p());
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Complex conjugation, `ζ ↦ ζ^{-1}`.
    pub fn conj(&self) -> Self {
        let p = self.p() as i64;
        let mut out = Self::zero(self.p());
        for (k, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                out += &Self::zeta(self.p(), p - k as i64).scale(*c);
            }
        }
        out
    }
}

impl Add for &CycScalar {
    type Output = CycScalar;
    fn add(self, rhs: &CycScalar) -> CycScalar {
        debug_assert_eq!(self.coeffs.len(), rhs.coeffs.len());
        CycScalar {
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &CycScalar {
    type Output = CycScalar;
    fn sub(self, rhs: &CycScalar) -> CycScalar {
        CycScalar {
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Neg for &CycScalar {
    type Output = CycScalar;
    fn neg(self) -> CycScalar {
        CycScalar {
            coeffs: self.coeffs.iter().map(|a| -a).collect(),
        }
    }
}

impl AddAssign<&CycScalar> for CycScalar {
    fn add_assign(&mut self, rhs: &CycScalar) {
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a += b;
        }
    }
}

impl Mul for &CycScalar {
    type Output = CycScalar;
    fn mul(self, rhs: &CycScalar) -> CycScalar {
        let p = self.coeffs.len() + 1;
        // product in Q[x]/(x^p - 1), then eliminate x^{p-1}
        let mut full = vec![Rat::zero(); p];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    full[(i + j) % p] += a * b;
                }
            }
        }
        let top = full[p - 1];
        full.truncate(p - 1);
        for c in &mut full {
            *c -= top;
        }
        CycScalar { coeffs: full }
    }
}

impl fmt::Display for CycScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = c.abs();
            match (k, a.is_one()) {
                (0, _) => write!(f, "{a}")?,
                (_, true) => write!(f, "z^{k}")?,
                (_, false) => write!(f, "{a}*z^{k}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for CycScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cyc({self})")
    }
}

/// Serialized as the list of rational coefficients, e.g. `["1/9","0"]`.
impl Serialize for CycScalar {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let v: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        v.serialize(s)
    }
}

impl<'de> Deserialize<'de> for CycScalar {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v: Vec<String> = Vec::deserialize(d)?;
        let coeffs = v
            .iter()
            .map(|s| {
                parse_rat(s).ok_or_else(|| serde::de::Error::custom(format!("bad rational {s}")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        if coeffs.len() < 2 {
            return Err(serde::de::Error::custom("need p-1 >= 2 coefficients"));
        }
        Ok(CycScalar { coeffs })
    }
}

pub fn parse_rat(s: &str) -> Option<Rat> {
    match s.split_once('/') {
        Some((n, d)) => {
            let d: i128 = d.trim().parse().ok()?;
            let n: i128 = n.trim().parse().ok()?;
            (d != 0).then(|| Rat::new(n, d))
        }
        None => Some(Rat::from_integer(s.trim().parse().ok()?)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zeta_has_order_p() {
        for p in [3u32, 5, 7] {
            let z = CycScalar::zeta(p, 1);
            assert_eq!(z.pow(p), CycScalar::one(p));
            assert!(!z.pow(1).is_one());
            assert_eq!(CycScalar::zeta(p, 2), &z * &z);
        }
    }

    #[test]
    fn root_of_unity_sums() {
        for p in [3u32, 5] {
            for k in 0..(2 * p as i64) {
                let mut s = CycScalar::zero(p);
                for j in 0..p as i64 {
                    s += &CycScalar::zeta(p, j * k);
                }
                let expected = if k % p as i64 == 0 { p as i128 } else { 0 };
                assert_eq!(s, CycScalar::from_int(p, expected), "p={p} k={k}");
            }
        }
    }

    #[test]
    fn conjugation_inverts_roots() {
        let z = CycScalar::zeta(5, 3);
        assert_eq!(&z * &z.conj(), CycScalar::one(5));
    }

    #[test]
    fn serde_roundtrip() {
        let x = &CycScalar::zeta(3, 2).scale(Rat::new(1, 9)) + &CycScalar::from_int(3, 2);
        let s = serde_json::to_string(&x).unwrap();
        let y: CycScalar = serde_json::from_str(&s).unwrap();
        assert_eq!(x, y);
    }
}
