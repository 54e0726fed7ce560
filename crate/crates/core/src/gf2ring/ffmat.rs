//! Dense matrices over a [`FiniteField`], row convention as for `RMatrix`.

use super::field::{FfElem, FiniteField};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FfMatrix {
    rows: usize,
    cols: usize,
    data: Vec<FfElem>,
}

impl FfMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        FfMatrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> FfElem) -> Self {
        FfMatrix {
            rows,
            cols,
            data: (0..rows * cols).map(|k| f(k / cols, k % cols)).collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> FfElem {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: FfElem) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[FfElem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn entries(&self) -> &[FfElem] {
        &self.data
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (0..self.cols).all(|j| self.get(i, j) == (i == j) as FfElem))
    }

    pub fn mul(&self, f: &FiniteField, o: &FfMatrix) -> FfMatrix {
        assert_eq!(self.cols, o.rows, "dimension mismatch");
        let mut out = Self::zero(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                let dst = &mut out.data[i * o.cols..(i + 1) * o.cols];
                for (d, &b) in dst.iter_mut().zip(o.row(k)) {
                    *d ^= f.mul(a, b);
                }
            }
        }
        out
    }

    pub fn add(&self, o: &FfMatrix) -> FfMatrix {
        FfMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a ^ b).collect(),
        }
    }

    pub fn pow(&self, f: &FiniteField, mut k: u64) -> FfMatrix {
        let mut acc = Self::identity(self.rows);
        let mut base = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(f, &base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(f, &base);
            }
        }
        acc
    }

    /// Row vector times matrix.
    pub fn apply(&self, f: &FiniteField, x: &[FfElem]) -> Vec<FfElem> {
        let mut out = vec![0; self.cols];
        for (i, &xi) in x.iter().enumerate() {
            if xi == 0 {
                continue;
            }
            for (o, &m) in out.iter_mut().zip(self.row(i)) {
                *o ^= f.mul(xi, m);
            }
        }
        out
    }

    /// Rank by Gaussian elimination.
    pub fn rank(&self, f: &FiniteField) -> usize {
        let mut m = self.clone();
        let mut rank = 0;
        for col in 0..m.cols {
            let Some(p) = (rank..m.rows).find(|&r| m.get(r, col) != 0) else {
                continue;
            };
            if p != rank {
                for j in 0..m.cols {
                    m.data.swap(p * m.cols + j, rank * m.cols + j);
                }
            }
            let inv = f.inv(m.get(rank, col)).unwrap();
            let pivot: Vec<FfElem> = m.row(rank).iter().map(|&x| f.mul(x, inv)).collect();
            for r in rank + 1..m.rows {
                let c = m.get(r, col);
                if c != 0 {
                    for (j, &pj) in pivot.iter().enumerate().skip(col) {
                        m.data[r * m.cols + j] ^= f.mul(c, pj);
                    }
                }
            }
            rank += 1;
            if rank == m.rows {
                break;
            }
        }
        rank
    }

    /// Multiplicative order of an invertible square matrix, by repeated
    /// multiplication, up to `limit`.
    pub fn order(&self, f: &FiniteField, limit: u64) -> Option<u64> {
        let mut x = self.clone();
        for k in 1..=limit {
            if x.is_identity() {
                return Some(k);
            }
            x = x.mul(f, self);
        }
        None
    }

    /// Row-major packing of all entries, `bits` bits each, little-endian.
    pub fn encode(&self, bits: u32, out: &mut Vec<u8>) {
        let mut acc: u64 = 0;
        let mut n = 0;
        for &x in &self.data {
            acc |= (x as u64) << n;
            n += bits;
            while n >= 8 {
                out.push(acc as u8);
                acc >>= 8;
                n -= 8;
            }
        }
        if n > 0 {
            out.push(acc as u8);
        }
    }

    pub fn decode(rows: usize, cols: usize, bits: u32, bytes: &[u8]) -> FfMatrix {
        let mask = (1u64 << bits) - 1;
        let mut data = Vec::with_capacity(rows * cols);
        let mut acc: u64 = 0;
        let mut n = 0;
        let mut it = bytes.iter();
        for _ in 0..rows * cols {
            while n < bits {
                acc |= (*it.next().expect("short encoding") as u64) << n;
                n += 8;
            }
            data.push((acc & mask) as FfElem);
            acc >>= bits;
            n -= bits;
        }
        FfMatrix { rows, cols, data }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn encoding_roundtrip_and_size() {
        let f = FiniteField::new(0b10011).unwrap();
        let m = FfMatrix::from_fn(5, 5, |i, j| ((i * 7 + j * 3) % 16) as FfElem);
        let mut buf = Vec::new();
        m.encode(f.degree(), &mut buf);
        assert_eq!(buf.len(), 13);
        assert_eq!(FfMatrix::decode(5, 5, 4, &buf), m);
    }

    #[test]
    fn rank_and_order() {
        let f = FiniteField::new(0b111).unwrap();
        let m = FfMatrix::from_fn(3, 3, |i, j| if j == (i + 1) % 3 { 1 } else { 0 });
        assert_eq!(m.rank(&f), 3);
        assert_eq!(m.order(&f, 10), Some(3));
        let singular = FfMatrix::from_fn(3, 3, |_, j| j as FfElem);
        assert_eq!(singular.rank(&f), 1);
    }
}
