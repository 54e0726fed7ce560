//! Evaluation homomorphisms GF(2)[s, s^-1][alpha] -> GF(2^d) sending alpha
//! to a root of unity of odd order n.

use std::sync::Arc;

use super::field::{order_of_two, FieldError, FfElem, FiniteField};
use super::{poly, Laurent, Qe};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EvalError {
    #[error("n = {0} is even; roots of unity of even order do not exist in characteristic two")]
    EvenN(u32),
    #[error("n = {0} is too small (need odd n >= 3)")]
    TooSmall(u32),
    #[error("bad modulus: {0}")]
    BadModulus(#[from] FieldError),
}

/// Ring homomorphism alpha -> zeta, s -> zeta + zeta^-1, t -> zeta^2 + zeta^-2.
#[derive(Debug, Clone)]
pub struct EvalMap {
    n: u32,
    field: Arc<FiniteField>,
    zeta: FfElem,
    s_image: FfElem,
    s_log: u64,
}

impl EvalMap {
    /// Builds GF(2^d) with d the order of 2 mod n (default modulus unless one
    /// is supplied) and picks zeta = g^((2^d - 1)/n) for the smallest
    /// primitive element g.
    pub fn new(n: u32, modulus: Option<u64>) -> Result<Self, EvalError> {
        if n % 2 == 0 {
            return Err(EvalError::EvenN(n));
        }
        if n < 3 {
            return Err(EvalError::TooSmall(n));
        }
        let d = order_of_two(n);
        let field = match modulus {
            Some(p) => {
                let got = poly::degree(p as u128).unwrap_or(0);
                if got != d {
                    return Err(FieldError::WrongDegree { got, want: d }.into());
                }
                FiniteField::new(p)?
            }
            None => FiniteField::with_degree(d)?,
        };
        let field = Arc::new(field);
        let zeta = field.exp(((field.order() - 1) / n) as u64);
        Ok(EvalMap::with_root(field, n, zeta))
    }

    /// Map sending alpha to a given root `zeta` of order `n`.
    pub fn with_root(field: Arc<FiniteField>, n: u32, zeta: FfElem) -> Self {
        let zinv = field.inv(zeta).expect("root of unity is nonzero");
        let s_image = zeta ^ zinv;
        assert!(s_image != 0, "zeta must not be an involution");
        let s_log = field.log(s_image).unwrap() as u64;
        EvalMap {
            n,
            field,
            zeta,
            s_image,
            s_log,
        }
    }

    /// The same field with alpha sent to `zeta^c` instead; its order is
    /// `n / gcd(n, c)`.
    pub fn power(&self, c: u32) -> EvalMap {
        let z = self.field.pow(self.zeta, c as i64);
        let ord = self.field.element_order(z).unwrap() as u32;
        EvalMap::with_root(self.field.clone(), ord, z)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn field(&self) -> &Arc<FiniteField> {
        &self.field
    }

    pub fn zeta(&self) -> FfElem {
        self.zeta
    }

    pub fn s_image(&self) -> FfElem {
        self.s_image
    }

    pub fn alpha_image(&self) -> FfElem {
        self.zeta
    }

    pub fn t_image(&self) -> FfElem {
        self.field.mul(self.s_image, self.s_image)
    }

    pub fn eval_laurent(&self, x: &Laurent) -> FfElem {
        let q1 = self.field.order() as i64 - 1;
        x.exponents().fold(0, |acc, e| {
            let k = (self.s_log as i64 * (e as i64).rem_euclid(q1)).rem_euclid(q1);
            acc ^ self.field.exp(k as u64)
        })
    }

    pub fn eval_qe(&self, x: &Qe) -> FfElem {
        self.eval_laurent(&x.c0) ^ self.field.mul(self.eval_laurent(&x.c1), self.zeta)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn n5_standard_modulus() {
        let m = EvalMap::new(5, Some(0b10011)).unwrap();
        let f = m.field();
        // zeta = x^3 = 0b1000
        assert_eq!(m.zeta(), 0b1000);
        assert_eq!(f.element_order(m.zeta()), Some(5));
        // s -> x^2 + x + 1, which lies in GF(4)
        assert_eq!(m.s_image(), 0b111);
        assert_eq!(f.pow(m.s_image(), 3), 1);
        // t -> x^2 + x
        assert_eq!(m.eval_laurent(&Laurent::t()), 0b110);
        assert_eq!(m.eval_laurent(&Laurent::one()), 1);
        assert_eq!(m.eval_qe(&Qe::alpha()), m.zeta());
    }

    #[test]
    fn n7_degree_three() {
        let m = EvalMap::new(7, Some(0b1011)).unwrap();
        assert_eq!(m.field().degree(), 3);
        assert_eq!(m.field().element_order(m.zeta()), Some(7));
    }

    #[test]
    fn errors() {
        assert_eq!(EvalMap::new(6, None).unwrap_err(), EvalError::EvenN(6));
        assert!(matches!(
            EvalMap::new(5, Some(0b1011)),
            Err(EvalError::BadModulus(FieldError::WrongDegree { got: 3, want: 4 }))
        ));
        assert!(matches!(
            EvalMap::new(5, Some(0b10101)),
            Err(EvalError::BadModulus(FieldError::Reducible(_)))
        ));
    }

    #[test]
    fn alpha_satisfies_min_poly() {
        for n in [3, 5, 7, 9, 11, 15] {
            let m = EvalMap::new(n, None).unwrap();
            let f = m.field();
            let a = m.alpha_image();
            assert_eq!(f.mul(a, a) ^ f.mul(m.s_image(), a) ^ 1, 0, "n={n}");
        }
    }
}
