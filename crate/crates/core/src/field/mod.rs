//! Exact arithmetic for `F_q`, `F = F_q((t))`, `q`-power magnitudes, and the
//! scalar field `Q(ζ_p)`, together with the fixed additive character.

mod cyc;
mod fq;
mod local;

pub use cyc::{parse_rat, CycScalar, Rat};
pub use fq::{FieldConfig, Fq};
pub use local::{LocalElem, LocalField, EXACT};

use crate::error::{Error, Result};

/// The exact rational `q^k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct QPower(pub i32);

impl QPower {
    pub fn to_rat(self, q: u32) -> Rat {
        let base = Rat::from_integer(q as i128);
        if self.0 >= 0 {
            num_traits::pow(base, self.0 as usize)
        } else {
            num_traits::pow(base.recip(), (-self.0) as usize)
        }
    }
}

impl std::ops::Mul for QPower {
    type Output = QPower;
    fn mul(self, rhs: QPower) -> QPower {
        QPower(self.0 + rhs.0)
    }
}

impl LocalField {
    /// Convenience constructor from the residue field size.
    pub fn with_q(q: u32) -> Result<Self> {
        Ok(Self::new(Fq::new(FieldConfig::from_q(q)?)))
    }

    /// `q^k` as a scalar.
    pub fn qpow(&self, k: i32) -> CycScalar {
        CycScalar::from_rat(self.p(), QPower(k).to_rat(self.q()))
    }

    pub fn one_scalar(&self) -> CycScalar {
        CycScalar::one(self.p())
    }

    pub fn zero_scalar(&self) -> CycScalar {
        CycScalar::zero(self.p())
    }

    /// The additive character `e(x) = ζ_p^{Tr(c_{-1}(x))}`, trivial on `O`
    /// and nontrivial on `t^{-1}O`.
    pub fn add_char(&self, x: &LocalElem) -> Result<CycScalar> {
        let d = x
            .digit(-1)
            .ok_or_else(|| Error::InsufficientPrecision(format!("t^-1 digit of {x} is unknown")))?;
        Ok(CycScalar::zeta(self.p(), self.fq.trace(d) as i64))
    }

    /// `θ(n(u)) = e(u)` on the upper unipotent subgroup.
    pub fn theta(&self, u: &LocalElem) -> Result<CycScalar> {
        self.add_char(u)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn k3() -> LocalField {
        LocalField::with_q(3).unwrap()
    }

    #[test]
    fn character_examples() {
        let k = k3();
        assert!(k
            .add_char(&LocalElem::from_digits(0, vec![2, 1], EXACT))
            .unwrap()
            .is_one());
        assert_eq!(
            k.add_char(&LocalElem::t_pow(-1)).unwrap(),
            CycScalar::zeta(3, 1)
        );
        let x = LocalElem::from_digits(-2, vec![0, 2], EXACT);
        assert_eq!(k.add_char(&x).unwrap(), CycScalar::zeta(3, 2));
        assert!(k.add_char(&LocalElem::zero_to(-1)).is_err());
    }

    #[test]
    fn theta_examples() {
        let k = k3();
        assert!(k.theta(&LocalElem::zero()).unwrap().is_one());
        assert_eq!(
            k.theta(&LocalElem::t_pow(-1)).unwrap(),
            CycScalar::zeta(3, 1)
        );
        assert!(k
            .theta(&LocalElem::from_digits(1, vec![2, 2], EXACT))
            .unwrap()
            .is_one());
    }

    #[test]
    fn qpower_rationals() {
        assert_eq!(QPower(-2).to_rat(3), Rat::new(1, 9));
        assert_eq!((QPower(3) * QPower(-1)).to_rat(5), Rat::from_integer(25));
    }

    fn arb_elem() -> impl Strategy<Value = LocalElem> {
        (-3i32..3, prop::collection::vec(0u32..3, 0..6))
            .prop_map(|(s, d)| LocalElem::from_digits(s, d, EXACT))
    }

    proptest! {
        #[test]
        fn character_is_additive(x in arb_elem(), y in arb_elem()) {
            let k = k3();
            let lhs = k.add_char(&k.add(&x, &y)).unwrap();
            let rhs = &k.add_char(&x).unwrap() * &k.add_char(&y).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn valuation_and_abs_multiply(x in arb_elem(), y in arb_elem()) {
            let k = k3();
            prop_assume!(!x.is_zero_to_prec() && !y.is_zero_to_prec());
            let xy = k.mul(&x, &y);
            prop_assert_eq!(xy.valuation().unwrap(), x.valuation().unwrap() + y.valuation().unwrap());
            prop_assert_eq!(xy.abs().unwrap(), x.abs().unwrap() * y.abs().unwrap());
        }

        #[test]
        fn precision_never_increases(x in arb_elem(), y in arb_elem(), px in -2i32..8, py in -2i32..8) {
            let k = k3();
            let (x, y) = (x.with_prec(px), y.with_prec(py));
            prop_assert!(k.add(&x, &y).prec() <= px.min(py));
            let m = k.mul(&x, &y);
            prop_assert!(m.prec() <= px.saturating_add(y.val_or_prec()).max(py.saturating_add(x.val_or_prec())));
        }
    }
}
