//! The Clifford algebra of (V, q): generated by `u, v_1, ..., v_m` subject to
//! `x^2 = q(x)` and `xy + yx = (x, y)`. Elements are sums of ordered
//! monomials `x_{i_1} ... x_{i_k}` (`i_1 < ... < i_k`), encoded as bitmasks
//! with bit 0 for `u` and bit `i` for `v_i`.

mod center;
mod psi;

use std::collections::BTreeMap;
use std::fmt;

use serde::ser::{Serialize, SerializeSeq, Serializer};

use crate::gf2ring::{Laurent, Scalar};
use crate::quadspace::{QuadSpace, RMatrix};

pub use center::{center_candidates, central_symbolically, specialized_center_dimension, CenterReport};
pub use psi::{
    kernel_element, lemma_commutation_holds, power_identities, spinor_witness, PowerSeq, PsiRep,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CliffordError {
    #[error("element uses generators outside an algebra on {0} generators")]
    MixedAmbient(usize),
    #[error("{0} is not invertible")]
    NotUnit(String),
    #[error("conjugation does not preserve V: {0}")]
    NotCliffordGroup(String),
    #[error("c * conj(c) = {0} is not a scalar")]
    NotScalar(String),
    #[error("m = {0} must be even")]
    OddM(usize),
}

/// Cl(V, q) for the standard form on `m + 1` generators.
#[derive(Debug, Clone)]
pub struct Algebra {
    space: QuadSpace,
    labels: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Element<S> {
    terms: Vec<(u32, S)>,
}

impl<S: Scalar> Element<S> {
    pub fn zero() -> Self {
        Element { terms: Vec::new() }
    }

    pub fn scalar(c: S) -> Self {
        Self::monomial(0, c)
    }

    pub fn one() -> Self {
        Self::scalar(S::one())
    }

    pub fn monomial(mask: u32, c: S) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            Element {
                terms: vec![(mask, c)],
            }
        }
    }

    fn from_map(map: BTreeMap<u32, S>) -> Self {
        Element {
            terms: map.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    pub fn terms(&self) -> &[(u32, S)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0 == 0 && self.terms[0].1.is_one()
    }

    pub fn coeff(&self, mask: u32) -> S {
        self.terms
            .binary_search_by_key(&mask, |(m, _)| *m)
            .map(|k| self.terms[k].1.clone())
            .unwrap_or_else(|_| S::zero())
    }

    /// The scalar value if the element has no monomials of positive length.
    pub fn as_scalar(&self) -> Option<S> {
        match self.terms.as_slice() {
            [] => Some(S::zero()),
            [(0, c)] => Some(c.clone()),
            _ => None,
        }
    }

    pub fn add(&self, o: &Element<S>) -> Element<S> {
        let mut out = Vec::with_capacity(self.terms.len() + o.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() || j < o.terms.len() {
            let a = self.terms.get(i);
            let b = o.terms.get(j);
            match (a, b) {
                (Some((ma, ca)), Some((mb, cb))) if ma == mb => {
                    let c = ca.add(cb);
                    if !c.is_zero() {
                        out.push((*ma, c));
                    }
                    i += 1;
                    j += 1;
                }
                (Some((ma, ca)), Some((mb, _))) if ma < mb => {
                    out.push((*ma, ca.clone()));
                    i += 1;
                }
                (Some(x), None) => {
                    out.push(x.clone());
                    i += 1;
                }
                (_, Some(y)) => {
                    out.push(y.clone());
                    j += 1;
                }
                (None, None) => unreachable!(),
            }
        }
        Element { terms: out }
    }

    pub fn scale(&self, c: &S) -> Element<S> {
        Element {
            terms: self
                .terms
                .iter()
                .map(|(m, x)| (*m, x.mul(c)))
                .filter(|(_, x)| !x.is_zero())
                .collect(),
        }
    }

    /// `Some(parity)` if every monomial has the same length parity.
    pub fn parity(&self) -> Option<bool> {
        let mut it = self.terms.iter().map(|(m, _)| m.count_ones() % 2 == 1);
        let first = it.next().unwrap_or(false);
        it.all(|p| p == first).then_some(first)
    }

    pub fn is_even(&self) -> bool {
        self.parity() == Some(false)
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> Element<T> {
        Element {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (*m, f(c)))
                .filter(|(_, c)| !c.is_zero())
                .collect(),
        }
    }

    fn max_generator(&self) -> Option<usize> {
        self.terms
            .iter()
            .map(|(m, _)| 32 - m.leading_zeros() as usize)
            .max()
    }
}

impl Algebra {
    pub fn new(m: usize) -> Self {
        Self::with_space(QuadSpace::new(m).expect("m >= 2"))
    }

    pub fn with_space(space: QuadSpace) -> Self {
        let labels = space.labels();
        Algebra { space, labels }
    }

    pub fn space(&self) -> &QuadSpace {
        &self.space
    }

    pub fn m(&self) -> usize {
        self.space.m()
    }

    /// Number of generators, `m + 1`.
    pub fn generators(&self) -> usize {
        self.space.rank()
    }

    /// Dimension `2^(m+1)` of the algebra.
    pub fn dimension(&self) -> usize {
        1 << self.generators()
    }

    pub fn gen<S: Scalar>(&self, i: usize) -> Element<S> {
        assert!(i < self.generators(), "generator index");
        Element::monomial(1 << i, S::one())
    }

    pub fn u<S: Scalar>(&self) -> Element<S> {
        self.gen(0)
    }

    pub fn v<S: Scalar>(&self, i: usize) -> Element<S> {
        assert!(i >= 1, "v indices start at 1");
        self.gen(i)
    }

    /// Embeds a vector of V.
    pub fn vector<S: Scalar>(&self, x: &[S]) -> Element<S> {
        assert_eq!(x.len(), self.generators());
        Element {
            terms: x
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (1u32 << i, c.clone()))
                .collect(),
        }
    }

    /// Coefficients of `x` if it lies in V.
    pub fn vector_part<S: Scalar>(&self, x: &Element<S>) -> Option<Vec<S>> {
        let mut out = vec![S::zero(); self.generators()];
        for (m, c) in x.terms() {
            if m.count_ones() != 1 {
                return None;
            }
            out[m.trailing_zeros() as usize] = c.clone();
        }
        Some(out)
    }

    fn q_gen<S: Scalar>(&self, g: usize) -> S {
        S::from_laurent(self.space.q_basis(g))
    }

    /// `e_M x_g = c e_{M xor g} + sum_{p in M, p > g} e_{M \ p}`, with
    /// `c = q(x_g)` if `g` is in `M` and `1` otherwise.
    fn right_gen<S: Scalar>(&self, acc: &mut BTreeMap<u32, S>, mask: u32, coeff: &S, g: usize) {
        let bit = 1u32 << g;
        let c = if mask & bit != 0 {
            coeff.mul(&self.q_gen::<S>(g))
        } else {
            coeff.clone()
        };
        add_into(acc, mask ^ bit, c);
        let mut above = mask & !((bit << 1) - 1);
        while above != 0 {
            let p = above & above.wrapping_neg();
            add_into(acc, mask & !p, coeff.clone());
            above &= above - 1;
        }
    }

    /// Product `e_M e_N` as a list of monomials with coefficients.
    fn mono_mul<S: Scalar>(&self, left: u32, right: u32) -> BTreeMap<u32, S> {
        let mut cur = BTreeMap::new();
        cur.insert(left, S::one());
        let mut rest = right;
        while rest != 0 {
            let g = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let mut next = BTreeMap::new();
            for (m, c) in &cur {
                self.right_gen(&mut next, *m, c, g);
            }
            next.retain(|_, c: &mut S| !c.is_zero());
            cur = next;
        }
        cur
    }

    pub fn mul<S: Scalar>(&self, x: &Element<S>, y: &Element<S>) -> Element<S> {
        if x.is_zero() || y.is_zero() {
            return Element::zero();
        }
        let mut acc = BTreeMap::new();
        for (n, cy) in y.terms() {
            if *n == 0 {
                for (m, cx) in x.terms() {
                    add_into(&mut acc, *m, cx.mul(cy));
                }
                continue;
            }
            for (m, cx) in x.terms() {
                let c = cx.mul(cy);
                for (p, d) in self.mono_mul::<S>(*m, *n) {
                    add_into(&mut acc, p, d.mul(&c));
                }
            }
        }
        Element::from_map(acc)
    }

    /// Product that first checks both operands live in this algebra.
    pub fn try_mul<S: Scalar>(&self, x: &Element<S>, y: &Element<S>) -> Result<Element<S>, CliffordError> {
        let n = self.generators();
        if x.max_generator().unwrap_or(0) > n || y.max_generator().unwrap_or(0) > n {
            return Err(CliffordError::MixedAmbient(n));
        }
        Ok(self.mul(x, y))
    }

    pub fn pow<S: Scalar>(&self, x: &Element<S>, mut k: u64) -> Element<S> {
        let mut acc = Element::one();
        let mut base = x.clone();
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            k >>= 1;
            if k > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    /// `xy + yx`.
    pub fn anticommutator<S: Scalar>(&self, x: &Element<S>, y: &Element<S>) -> Element<S> {
        self.mul(x, y).add(&self.mul(y, x))
    }

    /// The reversal anti-automorphism `(w_1 ... w_k)^tr = w_k ... w_1`; in
    /// characteristic two it is also the Clifford conjugation.
    pub fn transpose<S: Scalar>(&self, x: &Element<S>) -> Element<S> {
        let mut acc = BTreeMap::new();
        for (m, c) in x.terms() {
            if m.count_ones() <= 1 {
                add_into(&mut acc, *m, c.clone());
                continue;
            }
            // multiply the generators back in decreasing order
            let mut cur = BTreeMap::new();
            let top = 31 - m.leading_zeros() as usize;
            cur.insert(1u32 << top, S::one());
            let mut rest = m & !(1 << top);
            while rest != 0 {
                let g = 31 - rest.leading_zeros() as usize;
                rest &= !(1 << g);
                let mut next = BTreeMap::new();
                for (p, d) in &cur {
                    self.right_gen(&mut next, *p, d, g);
                }
                next.retain(|_, d: &mut S| !d.is_zero());
                cur = next;
            }
            for (p, d) in cur {
                add_into(&mut acc, p, d.mul(c));
            }
        }
        Element::from_map(acc)
    }

    pub fn conj<S: Scalar>(&self, x: &Element<S>) -> Element<S> {
        self.transpose(x)
    }

    /// `c conj(c)`, which must be a scalar.
    pub fn spinor_norm<S: Scalar>(&self, c: &Element<S>) -> Result<S, CliffordError> {
        let n = self.mul(c, &self.conj(c));
        n.as_scalar()
            .ok_or_else(|| CliffordError::NotScalar(self.display(&n)))
    }

    /// Inverse of an element whose spinor norm (on both sides) is a unit
    /// scalar: `c^-1 = N(c)^-1 conj(c)`.
    pub fn inverse<S: Scalar>(&self, c: &Element<S>) -> Result<Element<S>, CliffordError> {
        let not_unit = || CliffordError::NotUnit(self.display(c));
        let cbar = self.conj(c);
        let left = self.mul(c, &cbar).as_scalar().ok_or_else(not_unit)?;
        let right = self.mul(&cbar, c).as_scalar().ok_or_else(not_unit)?;
        if left != right {
            return Err(not_unit());
        }
        let inv = left.try_inverse().map_err(|_| not_unit())?;
        Ok(cbar.scale(&inv))
    }

    /// Matrix (row convention) of `v -> c^-1 v c` on V.
    pub fn pi_matrix<S: Scalar>(&self, c: &Element<S>) -> Result<RMatrix<S>, CliffordError> {
        let c_inv = self.inverse(c)?;
        let n = self.generators();
        let mut rows = Vec::with_capacity(n);
        for i in 0..n {
            let img = self.mul(&self.mul(&c_inv, &self.gen(i)), c);
            let row = self.vector_part(&img).ok_or_else(|| {
                CliffordError::NotCliffordGroup(format!(
                    "{} maps to {}",
                    self.labels[i],
                    self.display(&img)
                ))
            })?;
            rows.push(row);
        }
        Ok(RMatrix::from_rows(rows))
    }

    pub fn monomial_label(&self, mask: u32) -> String {
        if mask == 0 {
            return "1".into();
        }
        (0..self.generators())
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| self.labels[i].as_str())
            .collect::<Vec<_>>()
            .join(" ")
    }

    pub fn display<S: Scalar>(&self, x: &Element<S>) -> String {
        if x.is_zero() {
            return "0".into();
        }
        x.terms()
            .iter()
            .map(|(m, c)| {
                if *m == 0 {
                    format!("({c})")
                } else if c.is_one() {
                    self.monomial_label(*m)
                } else {
                    format!("({c}) {}", self.monomial_label(*m))
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

fn add_into<S: Scalar>(acc: &mut BTreeMap<u32, S>, mask: u32, c: S) {
    if c.is_zero() {
        return;
    }
    acc.entry(mask)
        .and_modify(|x| x.add_assign(&c))
        .or_insert(c);
}

impl<S: Scalar> fmt::Display for Element<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| format!("({c})e{m:#b}"))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl<S: Scalar + Serialize> Serialize for Element<S> {
    fn serialize<Ser: Serializer>(&self, ser: Ser) -> Result<Ser::Ok, Ser::Error> {
        let mut seq = ser.serialize_seq(Some(self.terms.len()))?;
        for (m, c) in &self.terms {
            seq.serialize_element(&(m, c))?;
        }
        seq.end()
    }
}

/// Random vector of V with small Laurent coefficients; for property tests.
pub fn random_vector<R: rand::Rng>(rng: &mut R, n: usize) -> Vec<Laurent> {
    (0..n).map(|_| random_laurent(rng)).collect()
}

pub fn random_laurent<R: rand::Rng>(rng: &mut R) -> Laurent {
    let k = rng.gen_range(0..4);
    Laurent::from_exponents((0..k).map(|_| rng.gen_range(-4..=4)))
}
