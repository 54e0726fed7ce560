//! Laurent polynomials over GF(2) in the indeterminate `s`, stored as an
//! offset bit vector.
//!
//! The element `t` of the base ring is `s^2`; everything is kept in
//! `s`-exponents so there is a single representation for both rings.

use std::fmt;

use serde::de::{Deserialize, Deserializer};
use serde::ser::{Serialize, SerializeSeq, Serializer};
use smallvec::{smallvec, SmallVec};

use super::RingError;

type Words = SmallVec<[u64; 2]>;

/// An element of GF(2)[s, s^-1].
///
/// Canonical form: zero is `low == 0` with no words; otherwise bit 0 of the
/// first word is set (it is the coefficient of `s^low`) and the last word is
/// nonzero. Equality and hashing are therefore structural.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Laurent {
    low: i32,
    bits: Words,
}

/// 64x64 -> 128 bit carry-less product.
#[inline]
fn clmul64(a: u64, b: u64) -> (u64, u64) {
    let (mut lo, mut hi) = (0u64, 0u64);
    let (x, y) = if a.count_ones() < b.count_ones() {
        (b, a)
    } else {
        (a, b)
    };
    let mut rest = y;
    while rest != 0 {
        let i = rest.trailing_zeros();
        lo ^= x << i;
        if i > 0 {
            hi ^= x >> (64 - i);
        }
        rest &= rest - 1;
    }
    (lo, hi)
}

/// Spread the 32 bits of `x` into the even bit positions of a u64.
#[inline]
fn spread(x: u32) -> u64 {
    let mut v = x as u64;
    v = (v | (v << 16)) & 0x0000_FFFF_0000_FFFF;
    v = (v | (v << 8)) & 0x00FF_00FF_00FF_00FF;
    v = (v | (v << 4)) & 0x0F0F_0F0F_0F0F_0F0F;
    v = (v | (v << 2)) & 0x3333_3333_3333_3333;
    v = (v | (v << 1)) & 0x5555_5555_5555_5555;
    v
}

fn shl_words(bits: &[u64], shift: u32) -> Words {
    let (w, b) = ((shift / 64) as usize, shift % 64);
    let mut out: Words = smallvec![0; bits.len() + w + 1];
    for (i, &x) in bits.iter().enumerate() {
        out[i + w] ^= x << b;
        if b > 0 {
            out[i + w + 1] ^= x >> (64 - b);
        }
    }
    out
}

impl Laurent {
    pub fn zero() -> Self {
        Laurent::default()
    }

    pub fn one() -> Self {
        Laurent::monomial(0)
    }

    pub fn monomial(e: i32) -> Self {
        Laurent {
            low: e,
            bits: smallvec![1],
        }
    }

    /// The indeterminate `s`.
    pub fn s() -> Self {
        Laurent::monomial(1)
    }

    /// `t = s^2`.
    pub fn t() -> Self {
        Laurent::monomial(2)
    }

    pub fn t_inv() -> Self {
        Laurent::monomial(-2)
    }

    /// Sum of `s^e` over the given exponents. Repeated exponents cancel.
    pub fn from_exponents<I: IntoIterator<Item = i32>>(exps: I) -> Self {
        let mut acc = Laurent::zero();
        for e in exps {
            acc += &Laurent::monomial(e);
        }
        acc
    }

    /// Polynomial in `t` given by its coefficient bits, lowest degree first.
    pub fn from_t_coeffs(coeffs: &[bool]) -> Self {
        Laurent::from_exponents(
            coeffs
                .iter()
                .enumerate()
                .filter(|(_, &c)| c)
                .map(|(i, _)| 2 * i as i32),
        )
    }

    fn normalized(mut low: i32, mut bits: Words) -> Self {
        while bits.last() == Some(&0) {
            bits.pop();
        }
        if bits.is_empty() {
            return Laurent::zero();
        }
        let lead = bits.iter().position(|&w| w != 0).unwrap();
        let tz = lead as u32 * 64 + bits[lead].trailing_zeros();
        if tz > 0 {
            let (w, b) = ((tz / 64) as usize, tz % 64);
            let n = bits.len() - w;
            let mut out: Words = smallvec![0; n];
            for i in 0..n {
                let mut v = bits[i + w] >> b;
                if b > 0 && i + w + 1 < bits.len() {
                    v |= bits[i + w + 1] << (64 - b);
                }
                out[i] = v;
            }
            while out.last() == Some(&0) {
                out.pop();
            }
            bits = out;
            low += tz as i32;
        }
        Laurent { low, bits }
    }

    pub fn is_zero(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.low == 0 && self.bits.len() == 1 && self.bits[0] == 1
    }

    /// True iff the element is a single term `s^k`, i.e. a unit.
    pub fn is_monomial(&self) -> bool {
        self.bits.len() == 1 && self.bits[0] == 1
    }

    /// Number of nonzero terms.
    pub fn weight(&self) -> u32 {
        self.bits.iter().map(|w| w.count_ones()).sum()
    }

    pub fn min_exponent(&self) -> Option<i32> {
        (!self.is_zero()).then_some(self.low)
    }

    pub fn max_exponent(&self) -> Option<i32> {
        let last = *self.bits.last()?;
        let top = (self.bits.len() as i32 - 1) * 64 + (63 - last.leading_zeros() as i32);
        Some(self.low + top)
    }

    /// Exponents with coefficient one, ascending.
    pub fn exponents(&self) -> impl Iterator<Item = i32> + '_ {
        self.bits.iter().enumerate().flat_map(move |(i, &w)| {
            let base = self.low + 64 * i as i32;
            let mut rest = w;
            std::iter::from_fn(move || {
                if rest == 0 {
                    return None;
                }
                let b = rest.trailing_zeros();
                rest &= rest - 1;
                Some(base + b as i32)
            })
        })
    }

    /// Coefficient of `s^e`.
    pub fn coeff(&self, e: i32) -> bool {
        if self.is_zero() || e < self.low {
            return false;
        }
        let off = (e - self.low) as usize;
        self.bits
            .get(off / 64)
            .is_some_and(|w| (w >> (off % 64)) & 1 == 1)
    }

    /// All exponents even: the element lies in GF(2)[t, t^-1].
    pub fn in_t_subring(&self) -> bool {
        self.exponents().all(|e| e % 2 == 0)
    }

    /// All exponents even and nonnegative: the element lies in GF(2)[t].
    pub fn is_t_polynomial(&self) -> bool {
        self.exponents().all(|e| e % 2 == 0 && e >= 0)
    }

    pub fn mul_ref(&self, other: &Laurent) -> Laurent {
        if self.is_zero() || other.is_zero() {
            return Laurent::zero();
        }
        let mut out: Words = smallvec![0; self.bits.len() + other.bits.len()];
        for (i, &a) in self.bits.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.bits.iter().enumerate() {
                let (lo, hi) = clmul64(a, b);
                out[i + j] ^= lo;
                out[i + j + 1] ^= hi;
            }
        }
        // constant terms multiply to one, so only the top needs trimming
        while out.last() == Some(&0) {
            out.pop();
        }
        Laurent {
            low: self.low + other.low,
            bits: out,
        }
    }

    pub fn add_ref(&self, other: &Laurent) -> Laurent {
        let mut out = self.clone();
        out += other;
        out
    }

    /// Multiply by `s^k`.
    pub fn shifted(&self, k: i32) -> Laurent {
        if self.is_zero() {
            return Laurent::zero();
        }
        Laurent {
            low: self.low + k,
            bits: self.bits.clone(),
        }
    }

    /// Frobenius: `x -> x^2`, which spreads the bits apart.
    pub fn square(&self) -> Laurent {
        let mut out: Words = SmallVec::with_capacity(self.bits.len() * 2);
        for &w in &self.bits {
            out.push(spread(w as u32));
            out.push(spread((w >> 32) as u32));
        }
        while out.last() == Some(&0) {
            out.pop();
        }
        if out.is_empty() {
            return Laurent::zero();
        }
        Laurent {
            low: 2 * self.low,
            bits: out,
        }
    }

    /// Nonnegative power by repeated squaring.
    pub fn pow(&self, mut k: u32) -> Laurent {
        let mut base = self.clone();
        let mut acc = Laurent::one();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul_ref(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.square();
            }
        }
        acc
    }

    /// Inverse in GF(2)[s, s^-1]; only monomials are units.
    pub fn inverse(&self) -> Result<Laurent, RingError> {
        if self.is_zero() {
            Err(RingError::ZeroInput)
        } else if self.is_monomial() {
            Ok(Laurent::monomial(-self.low))
        } else {
            Err(RingError::NotUnit(self.to_string()))
        }
    }

    /// True iff the element is a unit that is the square of a unit.
    pub fn is_square_unit(&self) -> bool {
        self.is_monomial() && self.low % 2 == 0
    }
}

impl std::ops::AddAssign<&Laurent> for Laurent {
    fn add_assign(&mut self, other: &Laurent) {
        if other.is_zero() {
            return;
        }
        if self.is_zero() {
            *self = other.clone();
            return;
        }
        let low = self.low.min(other.low);
        let mut a = if self.low == low {
            std::mem::take(&mut self.bits)
        } else {
            shl_words(&self.bits, (self.low - low) as u32)
        };
        let b = if other.low == low {
            other.bits.clone()
        } else {
            shl_words(&other.bits, (other.low - low) as u32)
        };
        if a.len() < b.len() {
            a.resize(b.len(), 0);
        }
        for (x, y) in a.iter_mut().zip(b.iter()) {
            *x ^= y;
        }
        *self = Laurent::normalized(low, a);
    }
}

impl std::ops::Add<&Laurent> for &Laurent {
    type Output = Laurent;
    fn add(self, other: &Laurent) -> Laurent {
        self.add_ref(other)
    }
}

impl std::ops::Mul<&Laurent> for &Laurent {
    type Output = Laurent;
    fn mul(self, other: &Laurent) -> Laurent {
        self.mul_ref(other)
    }
}

impl fmt::Display for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for e in self.exponents() {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match e {
                0 => f.write_str("1")?,
                1 => f.write_str("s")?,
                _ => write!(f, "s^{e}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Laurent({self})")
    }
}

impl Serialize for Laurent {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        let mut seq = ser.serialize_seq(Some(self.weight() as usize))?;
        for e in self.exponents() {
            seq.serialize_element(&e)?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for Laurent {
    fn deserialize<D: Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        let exps = Vec::<i32>::deserialize(de)?;
        Ok(Laurent::from_exponents(exps))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp(e: &[i32]) -> Laurent {
        Laurent::from_exponents(e.iter().copied())
    }

    #[test]
    fn unit_identity() {
        assert_eq!(&Laurent::s() * &Laurent::monomial(-1), Laurent::one());
    }

    #[test]
    fn frobenius_square() {
        let x = lp(&[0, 1]);
        assert_eq!(&x * &x, lp(&[0, 2]));
        assert_eq!(x.square(), lp(&[0, 2]));
    }

    #[test]
    fn two_by_one_product() {
        assert_eq!(&lp(&[-1, 1]) * &Laurent::s(), lp(&[0, 2]));
    }

    #[test]
    fn inversion() {
        assert_eq!(Laurent::monomial(3).inverse().unwrap(), Laurent::monomial(-3));
        assert_eq!(Laurent::one().inverse().unwrap(), Laurent::one());
        assert!(matches!(lp(&[0, 1]).inverse(), Err(RingError::NotUnit(_))));
        assert_eq!(Laurent::zero().inverse(), Err(RingError::ZeroInput));
    }

    #[test]
    fn addition_cancels_and_normalizes() {
        let x = lp(&[-70, 3, 200]);
        assert!((&x + &x).is_zero());
        let y = lp(&[-70, 5]);
        assert_eq!(&x + &y, lp(&[3, 5, 200]));
        assert_eq!((&x + &y).min_exponent(), Some(3));
        assert_eq!(x.max_exponent(), Some(200));
    }

    #[test]
    fn wide_products_match_schoolbook() {
        let a = lp(&[-3, 0, 63, 64, 130]);
        let b = lp(&[1, 65, 127]);
        let mut expect = Laurent::zero();
        for x in a.exponents() {
            for y in b.exponents() {
                expect += &Laurent::monomial(x + y);
            }
        }
        assert_eq!(&a * &b, expect);
        assert_eq!(a.square(), &a * &a);
    }

    #[test]
    fn t_subring_predicates() {
        assert!(lp(&[0, 2, 4]).is_t_polynomial());
        assert!(lp(&[-2, 4]).in_t_subring());
        assert!(!lp(&[-2, 4]).is_t_polynomial());
        assert!(!Laurent::s().in_t_subring());
    }

    #[test]
    fn display_and_serde() {
        let x = lp(&[-2, 0, 1, 3]);
        assert_eq!(x.to_string(), "s^-2 + 1 + s + s^3");
        let json = serde_json::to_string(&x).unwrap();
        assert_eq!(json, "[-2,0,1,3]");
        let back: Laurent = serde_json::from_str(&json).unwrap();
        assert_eq!(back, x);
    }
}
