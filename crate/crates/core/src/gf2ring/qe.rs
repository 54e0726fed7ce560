//! The quadratic extension GF(2)[s, s^-1][alpha] / (alpha^2 + s alpha + 1).

use std::fmt;

use serde::{Deserialize, Serialize};

use super::{Laurent, RingError};

/// `c0 + c1 * alpha`, where `alpha` and `alpha^-1 = s + alpha` are the roots
/// of `x^2 + s x + 1`.
#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(from = "(Laurent, Laurent)", into = "(Laurent, Laurent)")]
pub struct Qe {
    pub c0: Laurent,
    pub c1: Laurent,
}

impl From<(Laurent, Laurent)> for Qe {
    fn from((c0, c1): (Laurent, Laurent)) -> Self {
        Qe { c0, c1 }
    }
}

impl From<Qe> for (Laurent, Laurent) {
    fn from(x: Qe) -> Self {
        (x.c0, x.c1)
    }
}

impl From<Laurent> for Qe {
    fn from(c0: Laurent) -> Self {
        Qe {
            c0,
            c1: Laurent::zero(),
        }
    }
}

impl Qe {
    pub fn new(c0: Laurent, c1: Laurent) -> Self {
        Qe { c0, c1 }
    }

    pub fn zero() -> Self {
        Qe::default()
    }

    pub fn one() -> Self {
        Laurent::one().into()
    }

    pub fn alpha() -> Self {
        Qe::new(Laurent::zero(), Laurent::one())
    }

    /// `alpha^-1 = s + alpha`.
    pub fn alpha_inv() -> Self {
        Qe::new(Laurent::s(), Laurent::one())
    }

    pub fn is_zero(&self) -> bool {
        self.c0.is_zero() && self.c1.is_zero()
    }

    /// The element lies in the Laurent subring.
    pub fn as_laurent(&self) -> Option<&Laurent> {
        self.c1.is_zero().then_some(&self.c0)
    }

    pub fn mul_ref(&self, o: &Qe) -> Qe {
        // alpha^2 = s alpha + 1
        let hi = &self.c1 * &o.c1;
        let c0 = &(&self.c0 * &o.c0) + &hi;
        let mut c1 = &(&self.c0 * &o.c1) + &(&self.c1 * &o.c0);
        c1 += &hi.shifted(1);
        Qe { c0, c1 }
    }

    /// The other root substituted for alpha: `c0 + c1 (s + alpha)`.
    pub fn conjugate(&self) -> Qe {
        Qe::new(&self.c0 + &self.c1.shifted(1), self.c1.clone())
    }

    /// `x * conj(x) = c0^2 + s c0 c1 + c1^2`, multiplicative.
    pub fn norm(&self) -> Laurent {
        let mut n = self.c0.square();
        n += &(&self.c0 * &self.c1).shifted(1);
        n += &self.c1.square();
        n
    }

    pub fn inverse(&self) -> Result<Qe, RingError> {
        if self.is_zero() {
            return Err(RingError::ZeroInput);
        }
        let ninv = self
            .norm()
            .inverse()
            .map_err(|_| RingError::NotUnit(self.to_string()))?;
        let c = self.conjugate();
        Ok(Qe::new(&c.c0 * &ninv, &c.c1 * &ninv))
    }

    /// `alpha^k` for any integer k.
    pub fn alpha_pow(k: i64) -> Qe {
        let base = if k >= 0 { Qe::alpha() } else { Qe::alpha_inv() };
        let mut acc = Qe::one();
        let mut b = base;
        let mut e = k.unsigned_abs();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_ref(&b);
            }
            e >>= 1;
            if e > 0 {
                b = b.mul_ref(&b);
            }
        }
        acc
    }
}

impl std::ops::AddAssign<&Qe> for Qe {
    fn add_assign(&mut self, o: &Qe) {
        self.c0 += &o.c0;
        self.c1 += &o.c1;
    }
}

impl std::ops::Add<&Qe> for &Qe {
    type Output = Qe;
    fn add(self, o: &Qe) -> Qe {
        Qe::new(&self.c0 + &o.c0, &self.c1 + &o.c1)
    }
}

impl std::ops::Mul<&Qe> for &Qe {
    type Output = Qe;
    fn mul(self, o: &Qe) -> Qe {
        self.mul_ref(o)
    }
}

impl fmt::Display for Qe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.c0.is_zero(), self.c1.is_zero()) {
            (_, true) => write!(f, "{}", self.c0),
            (true, false) => write!(f, "({})a", self.c1),
            (false, false) => write!(f, "{} + ({})a", self.c0, self.c1),
        }
    }
}

impl fmt::Debug for Qe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Qe({self})")
    }
}
