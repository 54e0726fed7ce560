//! The coefficient rings: GF(2)[s, s^-1], its quadratic extension by a root
//! of `x^2 + s x + 1`, small binary fields, and evaluation maps between them.

mod eval;
mod ffmat;
mod field;
mod laurent;
pub mod poly;
mod qe;

use std::fmt::{Debug, Display};
use std::hash::Hash;

pub use eval::{EvalError, EvalMap};
pub use ffmat::FfMatrix;
pub use field::{default_modulus, order_of_two, poly_string, FfElem, FieldError, FiniteField};
pub use laurent::Laurent;
pub use qe::Qe;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RingError {
    #[error("inverse of zero")]
    ZeroInput,
    #[error("{0} is not a unit")]
    NotUnit(String),
}

/// Commutative coefficient ring of characteristic two containing
/// GF(2)[s, s^-1].
pub trait Scalar:
    Clone + PartialEq + Eq + Hash + Debug + Display + Default + Send + Sync + 'static
{
    fn zero() -> Self {
        Self::default()
    }
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool {
        *self == Self::one()
    }
    fn add(&self, o: &Self) -> Self;
    fn add_assign(&mut self, o: &Self);
    fn mul(&self, o: &Self) -> Self;
    fn try_inverse(&self) -> Result<Self, RingError>;
    fn from_laurent(x: &Laurent) -> Self;
}

impl Scalar for Laurent {
    fn one() -> Self {
        Laurent::one()
    }
    fn is_zero(&self) -> bool {
        Laurent::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn add_assign(&mut self, o: &Self) {
        *self += o;
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn try_inverse(&self) -> Result<Self, RingError> {
        self.inverse()
    }
    fn from_laurent(x: &Laurent) -> Self {
        x.clone()
    }
}

impl Scalar for Qe {
    fn one() -> Self {
        Qe::one()
    }
    fn is_zero(&self) -> bool {
        Qe::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn add_assign(&mut self, o: &Self) {
        *self += o;
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn try_inverse(&self) -> Result<Self, RingError> {
        self.inverse()
    }
    fn from_laurent(x: &Laurent) -> Self {
        x.clone().into()
    }
}

/// Degrees of the irreducible factors of `(x^n + 1)/(x + 1)` over GF(2),
/// ascending. The augmentation ideal of GF(2)C_n is the direct sum of the
/// fields GF(2^d) over these degrees.
pub fn cyclotomic_split(n: u32) -> Result<Vec<u32>, EvalError> {
    if n % 2 == 0 {
        return Err(EvalError::EvenN(n));
    }
    if !(3..=127).contains(&n) {
        return Err(EvalError::TooSmall(n));
    }
    // (x^n + 1)/(x + 1) = 1 + x + ... + x^(n-1), squarefree for odd n
    let f: poly::Poly = (1u128 << n) - 1;
    Ok(poly::factor_degrees_squarefree(f))
}

/// Representatives (least elements) of the nonzero cyclotomic cosets of 2
/// modulo n; one per simple component of the augmentation ideal.
pub fn coset_representatives(n: u32) -> Vec<u32> {
    let mut seen = vec![false; n as usize];
    let mut reps = Vec::new();
    for c in 1..n {
        if seen[c as usize] {
            continue;
        }
        reps.push(c);
        let mut x = c;
        while !seen[x as usize] {
            seen[x as usize] = true;
            x = (2 * x) % n;
        }
    }
    reps
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn split_examples() {
        assert_eq!(cyclotomic_split(5).unwrap(), vec![4]);
        assert_eq!(cyclotomic_split(7).unwrap(), vec![3, 3]);
        assert_eq!(cyclotomic_split(9).unwrap(), vec![2, 6]);
        assert_eq!(cyclotomic_split(8), Err(EvalError::EvenN(8)));
    }

    #[test]
    fn coset_reps() {
        assert_eq!(coset_representatives(5), vec![1]);
        assert_eq!(coset_representatives(7), vec![1, 3]);
        assert_eq!(coset_representatives(9), vec![1, 3]);
    }
}
