//! `GL₂(F)` elements and generator words.

use crate::error::{Error, Result};
use crate::field::{LocalElem, LocalField};
use std::fmt;

#[derive(Clone, PartialEq, Eq)]
pub struct GL2Elem {
    pub a: LocalElem,
    pub b: LocalElem,
    pub c: LocalElem,
    pub d: LocalElem,
    det: LocalElem,
}

impl GL2Elem {
    pub fn new(
        k: &LocalField,
        a: LocalElem,
        b: LocalElem,
        c: LocalElem,
        d: LocalElem,
    ) -> Result<Self> {
        let det = k.sub(&k.mul(&a, &d), &k.mul(&b, &c));
        if det.is_zero_to_prec() {
            return Err(Error::SingularMap(format!("determinant {det}")));
        }
        Ok(Self { a, b, c, d, det })
    }

    pub fn identity(k: &LocalField) -> Self {
        Self::diag(k, LocalElem::one(), LocalElem::one()).expect("invertible")
    }

    pub fn diag(k: &LocalField, a: LocalElem, d: LocalElem) -> Result<Self> {
        Self::new(k, a, LocalElem::zero(), LocalElem::zero(), d)
    }

    /// `m(a, b) = (a, b; 0, 1)`.
    pub fn m(k: &LocalField, a: LocalElem, b: LocalElem) -> Result<Self> {
        Self::new(k, a, b, LocalElem::zero(), LocalElem::one())
    }

    /// `n(x) = (1, x; 0, 1)`.
    pub fn n(k: &LocalField, x: LocalElem) -> Self {
        Self::m(k, LocalElem::one(), x).expect("unipotent")
    }

    /// `(1, 0; u, 1)`.
    pub fn lower(k: &LocalField, u: LocalElem) -> Self {
        Self::new(k, LocalElem::one(), LocalElem::zero(), u, LocalElem::one()).expect("unipotent")
    }

    /// `w = (0, −1; 1, 0)`.
    pub fn w(k: &LocalField) -> Self {
        Self::new(
            k,
            LocalElem::zero(),
            k.int(-1),
            LocalElem::one(),
            LocalElem::zero(),
        )
        .expect("invertible")
    }

    pub fn det(&self) -> &LocalElem {
        &self.det
    }

    pub fn mul(&self, k: &LocalField, o: &Self) -> Self {
        let e = |x: &LocalElem, y: &LocalElem, z: &LocalElem, u: &LocalElem| {
            k.add(&k.mul(x, y), &k.mul(z, u))
        };
        let a = e(&self.a, &o.a, &self.b, &o.c);
        let b = e(&self.a, &o.b, &self.b, &o.d);
        let c = e(&self.c, &o.a, &self.d, &o.c);
        let d = e(&self.c, &o.b, &self.d, &o.d);
        Self {
            a,
            b,
            c,
            d,
            det: k.mul(&self.det, &o.det),
        }
    }

    pub fn inv(&self, k: &LocalField) -> Result<Self> {
        let di = k.inv(&self.det)?;
        let s = |x: &LocalElem| k.mul(x, &di);
        Ok(Self {
            a: s(&self.d),
            b: s(&k.neg(&self.b)),
            c: s(&k.neg(&self.c)),
            d: s(&self.a),
            det: di,
        })
    }

    pub fn transpose(&self) -> Self {
        Self {
            a: self.a.clone(),
            b: self.c.clone(),
            c: self.b.clone(),
            d: self.d.clone(),
            det: self.det.clone(),
        }
    }

    pub fn entries(&self) -> [&LocalElem; 4] {
        [&self.a, &self.b, &self.c, &self.d]
    }

    /// Entrywise equality wherever both sides are known.
    pub fn agrees(&self, k: &LocalField, o: &Self) -> bool {
        self.entries()
            .iter()
            .zip(o.entries())
            .all(|(x, y)| k.sub(x, y).is_zero_to_prec())
    }

    pub fn is_exact(&self) -> bool {
        self.entries().iter().all(|x| x.is_exact())
    }
}

impl fmt::Debug for GL2Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}; {}, {})", self.a, self.b, self.c, self.d)
    }
}

/// A generator of `GL₂(F)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Gen {
    /// `m(a, b) = (a, b; 0, 1)`.
    M(LocalElem, LocalElem),
    /// `w = (0, −1; 1, 0)`.
    W,
}

impl Gen {
    pub fn matrix(&self, k: &LocalField) -> Result<GL2Elem> {
        match self {
            Gen::M(a, b) => GL2Elem::m(k, a.clone(), b.clone()),
            Gen::W => Ok(GL2Elem::w(k)),
        }
    }
}

/// An ordered product of generators.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct GenWord(pub Vec<Gen>);

impl GenWord {
    pub fn product(&self, k: &LocalField) -> Result<GL2Elem> {
        let mut acc = GL2Elem::identity(k);
        for g in &self.0 {
            acc = acc.mul(k, &g.matrix(k)?);
        }
        Ok(acc)
    }

    fn push(&mut self, k: &LocalField, g: Gen) {
        if let (Some(Gen::M(a, b)), Gen::M(a2, b2)) = (self.0.last(), &g) {
            let merged = Gen::M(k.mul(a, a2), k.add(&k.mul(a, b2), b));
            self.0.pop();
            if !matches!(&merged, Gen::M(x, y) if *x == LocalElem::one() && y.is_exact_zero()) {
                self.0.push(merged);
            }
            return;
        }
        self.0.push(g);
    }
}

/// `diag(1, d) = w·m(d, 0)·m(−1, 0)·w·m(−1, 0)`.
fn diag_one_d(k: &LocalField, d: &LocalElem) -> Vec<Gen> {
    let m1 = Gen::M(k.int(-1), LocalElem::zero());
    vec![
        Gen::W,
        Gen::M(d.clone(), LocalElem::zero()),
        m1.clone(),
        Gen::W,
        m1,
    ]
}

/// Word in `{m(a,b), w}` whose product is `g`.
pub fn bruhat_decompose(k: &LocalField, g: &GL2Elem) -> Result<GenWord> {
    let mut word = GenWord::default();
    let mut letters = Vec::new();
    if g.c.is_exact_zero() {
        let d = &g.d;
        if d.is_zero_to_prec() {
            return Err(Error::InsufficientPrecision(
                "diagonal entry undetermined".into(),
            ));
        }
        if *d != LocalElem::one() {
            letters.extend(diag_one_d(k, d));
        }
        letters.push(Gen::M(g.a.clone(), g.b.clone()));
    } else {
        if g.c.is_zero_to_prec() {
            return Err(Error::InsufficientPrecision(
                "cannot decide whether c vanishes".into(),
            ));
        }
        let cinv = k.inv(&g.c)?;
        letters.push(Gen::M(LocalElem::one(), k.mul(&g.a, &cinv)));
        letters.push(Gen::W);
        let e = k.mul(g.det(), &cinv);
        if e != LocalElem::one() {
            letters.extend(diag_one_d(k, &e));
        }
        letters.push(Gen::M(g.c.clone(), g.d.clone()));
    }
    for l in letters {
        word.push(k, l);
    }
    Ok(word)
}
