//! The residue field `F_q`, `q = p^f`, as table-driven arithmetic on `u32` codes.
//!
//! An element is encoded by its coefficient vector modulo a fixed monic
//! irreducible polynomial of degree `f`, read as a base-`p` integer.

use crate::error::{Error, Result};

/// Parameters of the residue field.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FieldConfig {
    pub p: u32,
    pub f: u32,
    pub q: u32,
}

impl FieldConfig {
    pub fn new(p: u32, f: u32) -> Result<Self> {
        if p < 3 || !is_prime(p) {
            return Err(Error::Config(format!("p = {p} must be an odd prime")));
        }
        if f == 0 {
            return Err(Error::Config("extension degree must be positive".into()));
        }
        let q = p
            .checked_pow(f)
            .filter(|&q| q <= 1 << 12)
            .ok_or_else(|| Error::Config(format!("q = {p}^{f} too large")))?;
        Ok(Self { p, f, q })
    }

    /// Parses a residue field size `q` into `(p, f)`.
    pub fn from_q(q: u32) -> Result<Self> {
        for p in 3..=q {
            if is_prime(p) {
                let mut pw = p;
                let mut f = 1;
                while pw < q {
                    pw *= p;
                    f += 1;
                }
                if pw == q {
                    return Self::new(p, f);
                }
                if q % p == 0 {
                    break;
                }
            }
        }
        Err(Error::Config(format!(
            "q = {q} is not a power of an odd prime"
        )))
    }
}

fn is_prime(n: u32) -> bool {
    n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

#[derive(Debug, Clone)]
pub struct Fq {
    pub cfg: FieldConfig,
    add: Vec<u32>,
    mul: Vec<u32>,
    neg: Vec<u32>,
    inv: Vec<u32>,
    trace: Vec<u32>,
}

impl Fq {
    pub fn new(cfg: FieldConfig) -> Self {
        let FieldConfig { p, f, q } = cfg;
        let modulus = irreducible(p, f);
        let to_vec = |mut x: u32| {
            (0..f)
                .map(|_| {
                    let d = x % p;
                    x /= p;
                    d
                })
                .collect::<Vec<_>>()
        };
        let from_vec = |v: &[u32]| v.iter().rev().fold(0, |acc, &d| acc * p + d);
        let n = q as usize;
        let mut add = vec![0; n * n];
        let mut mul = vec![0; n * n];
        for x in 0..q {
            let xv = to_vec(x);
            for y in 0..q {
                let yv = to_vec(y);
                let s: Vec<u32> = xv.iter().zip(&yv).map(|(a, b)| (a + b) % p).collect();
                add[(x * q + y) as usize] = from_vec(&s);
                mul[(x * q + y) as usize] = from_vec(&poly_mulmod(&xv, &yv, &modulus, p));
            }
        }
        let mut neg = vec![0; n];
        let mut inv = vec![0; n];
        for x in 0..q {
            for y in 0..q {
                if add[(x * q + y) as usize] == 0 {
                    neg[x as usize] = y;
                }
                if mul[(x * q + y) as usize] == 1 {
                    inv[x as usize] = y;
                }
            }
        }
        let mut fq = Self {
            cfg,
            add,
            mul,
            neg,
            inv,
            trace: vec![0; n],
        };
        for x in 0..q {
            let mut acc = 0;
            let mut conj = x;
            for _ in 0..f {
                acc = fq.add(acc, conj);
                conj = fq.pow(conj, p);
            }
            // the trace lies in the prime field, whose codes are 0..p
            debug_assert!(acc < p);
            fq.trace[x as usize] = acc;
        }
        fq
    }

    #[inline]
    pub fn q(&self) -> u32 {
        self.cfg.q
    }
    #[inline]
    pub fn p(&self) -> u32 {
        self.cfg.p
    }
    #[inline]
    pub fn add(&self, x: u32, y: u32) -> u32 {
        self.add[(x * self.cfg.q + y) as usize]
    }
    #[inline]
    pub fn sub(&self, x: u32, y: u32) -> u32 {
        self.add(x, self.neg[y as usize])
    }
    #[inline]
    pub fn mul(&self, x: u32, y: u32) -> u32 {
        self.mul[(x * self.cfg.q + y) as usize]
    }
    #[inline]
    pub fn neg(&self, x: u32) -> u32 {
        self.neg[x as usize]
    }
    /// Multiplicative inverse; `x` must be nonzero.
    #[inline]
    pub fn inv(&self, x: u32) -> u32 {
        debug_assert!(x != 0);
        self.inv[x as usize]
    }
    /// Absolute trace to `F_p`, returned as an integer in `0..p`.
    #[inline]
    pub fn trace(&self, x: u32) -> u32 {
        self.trace[x as usize]
    }

    pub fn pow(&self, x: u32, mut e: u32) -> u32 {
        let mut base = x;
        let mut acc = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Image of an integer under `Z -> F_p -> F_q`.
    pub fn from_int(&self, n: i64) -> u32 {
        n.rem_euclid(self.cfg.p as i64) as u32
    }

    /// Trace computed directly as the sum of Frobenius conjugates.
    pub fn trace_by_conjugates(&self, x: u32) -> u32 {
        let mut acc = 0;
        let mut conj = x;
        for _ in 0..self.cfg.f {
            acc = self.add(acc, conj);
            conj = self.pow(conj, self.cfg.p);
        }
        acc
    }
}

fn poly_mulmod(a: &[u32], b: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let f = m.len() - 1;
    let mut prod = vec![0u32; 2 * f];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    // reduce by the monic modulus from the top down
    for k in (f..prod.len()).rev() {
        let c = prod[k];
        if c != 0 {
            for i in 0..=f {
                let idx = k - f + i;
                prod[idx] = (prod[idx] + p - (c * m[i]) % p) % p;
            }
        }
    }
    prod.truncate(f);
    prod
}

/// Smallest monic irreducible of degree `f` over `F_p` (coefficients low to high).
fn irreducible(p: u32, f: u32) -> Vec<u32> {
    if f == 1 {
        return vec![0, 1];
    }
    let count = p.pow(f);
    for code in 0..count {
        let mut m: Vec<u32> = (0..f).map(|i| (code / p.pow(i)) % p).collect();
        m.push(1);
        if m[0] == 0 {
            continue;
        }
        if (1..=f / 2).all(|d| !has_monic_factor_of_degree(&m, d, p)) {
            return m;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

fn has_monic_factor_of_degree(m: &[u32], d: u32, p: u32) -> bool {
    (0..p.pow(d)).any(|code| {
        let mut g: Vec<u32> = (0..d).map(|i| (code / p.pow(i)) % p).collect();
        g.push(1);
        poly_rem(m, &g, p).iter().all(|&c| c == 0)
    })
}

fn poly_rem(a: &[u32], g: &[u32], p: u32) -> Vec<u32> {
    let mut r = a.to_vec();
    let dg = g.len() - 1;
    while r.len() > dg {
        let c = *r.last().unwrap();
        let shift = r.len() - 1 - dg;
        for i in 0..=dg {
            r[shift + i] = (r[shift + i] + p - (c * g[i]) % p) % p;
        }
        r.pop();
    }
    r
}
