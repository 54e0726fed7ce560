use std::fmt;

use serde::ser::{Serialize, SerializeSeq, Serializer};

use crate::gf2ring::{RingError, Scalar};

/// Square matrix over a scalar ring in the row convention: row `i` is the
/// image of basis vector `i`, vectors are rows, and `x (g h) = (x g) h`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RMatrix<S> {
    n: usize,
    data: Vec<S>,
}

impl<S: Scalar> RMatrix<S> {
    pub fn zero(n: usize) -> Self {
        RMatrix {
            n,
            data: vec![S::zero(); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n);
        for i in 0..n {
            m.data[i * n + i] = S::one();
        }
        m
    }

    /// Panics if the rows are not all of length `rows.len()`.
    pub fn from_rows(rows: Vec<Vec<S>>) -> Self {
        let n = rows.len();
        assert!(rows.iter().all(|r| r.len() == n), "matrix must be square");
        RMatrix {
            n,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> S) -> Self {
        RMatrix {
            n,
            data: (0..n * n).map(|k| f(k / n, k % n)).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &S {
        &self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: S) {
        self.data[i * self.n + j] = v;
    }

    pub fn row(&self, i: usize) -> &[S] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn entries(&self) -> impl Iterator<Item = &S> {
        self.data.iter()
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> RMatrix<T> {
        RMatrix {
            n: self.n,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn is_identity(&self) -> bool {
        (0..self.n).all(|i| {
            (0..self.n).all(|j| {
                let x = self.get(i, j);
                if i == j {
                    x.is_one()
                } else {
                    x.is_zero()
                }
            })
        })
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.n).all(|i| (0..self.n).all(|j| i == j || self.get(i, j).is_zero()))
    }

    /// Product skipping zero entries on both sides; cheap when either factor
    /// is sparse (word evaluation multiplies by sparse generator images).
    pub fn mul(&self, other: &RMatrix<S>) -> RMatrix<S> {
        assert_eq!(self.n, other.n, "dimension mismatch");
        let n = self.n;
        let sparse_rows: Vec<Vec<(usize, &S)>> = (0..n)
            .map(|k| {
                other
                    .row(k)
                    .iter()
                    .enumerate()
                    .filter(|(_, v)| !v.is_zero())
                    .collect()
            })
            .collect();
        let mut out = Self::zero(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for &(j, b) in &sparse_rows[k] {
                    out.data[i * n + j].add_assign(&a.mul(b));
                }
            }
        }
        out
    }

    pub fn add(&self, other: &RMatrix<S>) -> RMatrix<S> {
        RMatrix {
            n: self.n,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a.add(b)).collect(),
        }
    }

    pub fn scale(&self, c: &S) -> RMatrix<S> {
        self.map(|x| x.mul(c))
    }

    pub fn pow(&self, mut k: u64) -> RMatrix<S> {
        let mut acc = Self::identity(self.n);
        let mut base = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Row vector times matrix.
    pub fn apply(&self, x: &[S]) -> Vec<S> {
        assert_eq!(x.len(), self.n);
        let mut out = vec![S::zero(); self.n];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, o) in out.iter_mut().enumerate() {
                let m = self.get(i, j);
                if !m.is_zero() {
                    o.add_assign(&xi.mul(m));
                }
            }
        }
        out
    }

    /// Characteristic polynomial coefficients `[1, c_1, ..., c_n]` of
    /// `det(x I + M)` (signs are irrelevant in characteristic two), by
    /// Berkowitz's division-free recurrence.
    pub fn char_poly(&self) -> Vec<S> {
        let n = self.n;
        let mut p = vec![S::one()];
        for r in 0..n {
            // leading r x r block, column above and row left of the pivot
            let mut v: Vec<S> = (0..r).map(|i| self.get(i, r).clone()).collect();
            let mut t = Vec::with_capacity(r + 2);
            t.push(S::one());
            t.push(self.get(r, r).clone());
            for _ in 0..r {
                let dot = (0..r).fold(S::zero(), |acc, j| acc.add(&self.get(r, j).mul(&v[j])));
                t.push(dot);
                v = (0..r)
                    .map(|i| (0..r).fold(S::zero(), |acc, j| acc.add(&self.get(i, j).mul(&v[j]))))
                    .collect();
            }
            let mut next = vec![S::zero(); r + 2];
            for (i, slot) in next.iter_mut().enumerate() {
                for j in 0..=i.min(r) {
                    if !p[j].is_zero() && !t[i - j].is_zero() {
                        slot.add_assign(&t[i - j].mul(&p[j]));
                    }
                }
            }
            p = next;
        }
        p
    }

    pub fn det(&self) -> S {
        self.char_poly().pop().unwrap_or_else(S::one)
    }

    /// Inverse over the ring: diagonal fast path, otherwise Cayley-Hamilton
    /// on the Berkowitz characteristic polynomial. Fails iff the determinant
    /// is not a unit.
    pub fn try_inverse(&self) -> Result<RMatrix<S>, RingError> {
        let n = self.n;
        if self.is_diagonal() {
            let mut out = Self::zero(n);
            for i in 0..n {
                out.set(i, i, self.get(i, i).try_inverse()?);
            }
            return Ok(out);
        }
        let p = self.char_poly();
        let det_inv = p[n].try_inverse()?;
        // M^-1 = det^-1 (M^(n-1) + c_1 M^(n-2) + ... + c_(n-1))
        let mut acc = Self::identity(n);
        for c in &p[1..n] {
            acc = acc.mul(self).add(&Self::identity(n).scale(c));
        }
        Ok(acc.scale(&det_inv))
    }
}

impl<S: Scalar> fmt::Debug for RMatrix<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[")?;
        for i in 0..self.n {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl<S: Scalar + Serialize> Serialize for RMatrix<S> {
    fn serialize<Ser: Serializer>(&self, ser: Ser) -> Result<Ser::Ok, Ser::Error> {
        let mut seq = ser.serialize_seq(Some(self.n))?;
        for i in 0..self.n {
            seq.serialize_element(self.row(i))?;
        }
        seq.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf2ring::Laurent;

    fn l(e: &[i32]) -> Laurent {
        Laurent::from_exponents(e.iter().copied())
    }

    /// Leibniz expansion, independent of the Berkowitz recurrence.
    fn leibniz(m: &RMatrix<Laurent>) -> Laurent {
        fn perms(n: usize) -> Vec<Vec<usize>> {
            if n == 0 {
                return vec![vec![]];
            }
            let mut out = Vec::new();
            for p in perms(n - 1) {
                for k in 0..n {
                    let mut q = p.clone();
                    q.insert(k, n - 1);
                    out.push(q);
                }
            }
            out
        }
        let mut acc = Laurent::zero();
        for p in perms(m.dim()) {
            let term = p.iter().enumerate().fold(Laurent::one(), |a, (i, &j)| &a * m.get(i, j));
            acc += &term;
        }
        acc
    }

    #[test]
    fn det_matches_leibniz() {
        let m = RMatrix::from_rows(vec![
            vec![l(&[0]), l(&[2]), l(&[-1, 3]), l(&[1])],
            vec![l(&[]), l(&[0, 1]), l(&[5]), l(&[-2])],
            vec![l(&[1]), l(&[3]), l(&[0, 4, -2, 6]), l(&[])],
            vec![l(&[2, 3]), l(&[]), l(&[1]), l(&[0, 7])],
        ]);
        assert_eq!(m.det(), leibniz(&m));
    }

    #[test]
    fn inverse_via_cayley_hamilton() {
        // lower unitriangular times upper triangular with monomial diagonal
        let lo = RMatrix::from_rows(vec![
            vec![l(&[0]), l(&[]), l(&[])],
            vec![l(&[1, -2]), l(&[0]), l(&[])],
            vec![l(&[3]), l(&[0, 5]), l(&[0])],
        ]);
        let up = RMatrix::from_rows(vec![
            vec![l(&[2]), l(&[-1, 3]), l(&[4])],
            vec![l(&[]), l(&[-3]), l(&[0, 1])],
            vec![l(&[]), l(&[]), l(&[1])],
        ]);
        let m = lo.mul(&up);
        assert_eq!(m.det(), l(&[0]));
        let inv = m.try_inverse().unwrap();
        assert!(m.mul(&inv).is_identity());
        assert!(inv.mul(&m).is_identity());
    }

    #[test]
    fn non_unit_determinant_fails() {
        let m = RMatrix::from_rows(vec![vec![l(&[0, 1]), l(&[])], vec![l(&[]), l(&[0, 1])]]);
        assert!(m.try_inverse().is_err());
        let m = RMatrix::from_rows(vec![vec![l(&[0]), l(&[0])], vec![l(&[0]), l(&[0])]]);
        assert!(m.try_inverse().is_err());
    }

    #[test]
    fn det_of_triangular() {
        let m = RMatrix::from_rows(vec![
            vec![l(&[1]), l(&[7]), l(&[0])],
            vec![l(&[]), l(&[2]), l(&[4])],
            vec![l(&[]), l(&[]), l(&[-3])],
        ]);
        assert_eq!(m.det(), l(&[0]));
    }
}
