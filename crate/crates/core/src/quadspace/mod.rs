//! The quadratic module V = <u, v_1, ..., v_m> with q(u) = 1,
//! q(v_i) = t^-1 and all distinct basis pairings equal to one.

mod decompose;
mod matrix;

pub use decompose::{
    hyperbolic_decompose, DecomposeError, DecompStep, HyperbolicDecomposition, STATE_TABLE,
};
pub use matrix::RMatrix;

use crate::gf2ring::{Laurent, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum QuadError {
    #[error("q(w) = {0} is not a unit, so w cannot be a transvection axis")]
    NonUnitNorm(String),
    #[error("vector has length {got}, ambient rank is {want}")]
    BadLength { got: usize, want: usize },
    #[error("m = {0} out of range (need m >= 2)")]
    BadM(usize),
}

/// Coefficients of a vector of V in the basis `u, v_1, ..., v_m`.
pub type Vector<S> = Vec<S>;

/// The quadratic module of rank `m + 1`. Basis index 0 is `u`, index `i` is
/// `v_i`. The bilinear form is fixed (Gram matrix J - I over GF(2)); the
/// q-values of `u` and of the `v_i` are parameters so non-standard forms can
/// be fed to the decomposition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadSpace {
    m: usize,
    q_u: Laurent,
    q_v: Laurent,
}

impl QuadSpace {
    /// The standard form: q(u) = 1, q(v_i) = t^-1.
    pub fn new(m: usize) -> Result<Self, QuadError> {
        Self::with_values(m, Laurent::one(), Laurent::t_inv())
    }

    pub fn with_values(m: usize, q_u: Laurent, q_v: Laurent) -> Result<Self, QuadError> {
        if m < 2 {
            return Err(QuadError::BadM(m));
        }
        Ok(QuadSpace { m, q_u, q_v })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn rank(&self) -> usize {
        self.m + 1
    }

    pub fn labels(&self) -> Vec<String> {
        std::iter::once("u".to_string())
            .chain((1..=self.m).map(|i| format!("v{i}")))
            .collect()
    }

    /// q on basis vector `i`.
    pub fn q_basis(&self, i: usize) -> &Laurent {
        if i == 0 {
            &self.q_u
        } else {
            &self.q_v
        }
    }

    /// Bilinear pairing of basis vectors.
    pub fn gram(&self, i: usize, j: usize) -> bool {
        i != j
    }

    pub fn basis_vector<S: Scalar>(&self, i: usize) -> Vector<S> {
        let mut v = vec![S::zero(); self.rank()];
        v[i] = S::one();
        v
    }

    /// Vector with GF(2) coefficients given by the index set.
    pub fn gf2_vector<S: Scalar>(&self, idx: &[usize]) -> Vector<S> {
        let mut v = vec![S::zero(); self.rank()];
        for &i in idx {
            v[i].add_assign(&S::one());
        }
        v
    }

    fn check_len<S>(&self, x: &[S]) -> Result<(), QuadError> {
        if x.len() == self.rank() {
            Ok(())
        } else {
            Err(QuadError::BadLength {
                got: x.len(),
                want: self.rank(),
            })
        }
    }

    /// `q(sum l_i x_i) = sum l_i^2 q(x_i) + sum_{i<j} l_i l_j (x_i, x_j)`.
    /// Panics on a length mismatch.
    pub fn q_eval<S: Scalar>(&self, x: &[S]) -> S {
        self.check_len(x).expect("vector length");
        let mut acc = S::zero();
        // with all off-diagonal pairings one: sum_{i<j} l_i l_j
        // = (sum l_i)^2 + sum l_i^2, halved; in char 2 accumulate directly
        let mut prefix = S::zero();
        for (i, l) in x.iter().enumerate() {
            if l.is_zero() {
                continue;
            }
            acc.add_assign(&l.mul(l).mul(&S::from_laurent(self.q_basis(i))));
            acc.add_assign(&prefix.mul(l));
            prefix.add_assign(l);
        }
        acc
    }

    /// The alternating form `(x, y)`.
    pub fn bilin<S: Scalar>(&self, x: &[S], y: &[S]) -> S {
        self.check_len(x).expect("vector length");
        self.check_len(y).expect("vector length");
        // (x, y) = (sum x)(sum y) + sum x_i y_i since Gram = J - I
        let sx = x.iter().fold(S::zero(), |a, b| a.add(b));
        let sy = y.iter().fold(S::zero(), |a, b| a.add(b));
        let diag = x.iter().zip(y).fold(S::zero(), |a, (p, q)| a.add(&p.mul(q)));
        sx.mul(&sy).add(&diag)
    }

    /// Matrix of `r_w(x) = x + (x, w)/q(w) w`.
    pub fn transvection<S: Scalar>(&self, w: &[S]) -> Result<RMatrix<S>, QuadError> {
        self.check_len(w)?;
        let qw = self.q_eval(w);
        let inv = qw
            .try_inverse()
            .map_err(|_| QuadError::NonUnitNorm(qw.to_string()))?;
        let n = self.rank();
        let mut m = RMatrix::<S>::identity(n);
        for i in 0..n {
            let e = self.basis_vector::<S>(i);
            let c = self.bilin(&e, w).mul(&inv);
            if c.is_zero() {
                continue;
            }
            for (j, wj) in w.iter().enumerate() {
                let cur = m.get(i, j).add(&c.mul(wj));
                m.set(i, j, cur);
            }
        }
        Ok(m)
    }

    /// Whether `M` preserves q and the bilinear form on all basis vectors
    /// and basis pairs.
    pub fn preserves<S: Scalar>(&self, m: &RMatrix<S>) -> bool {
        let n = self.rank();
        let images: Vec<Vec<S>> = (0..n).map(|i| m.row(i).to_vec()).collect();
        (0..n).all(|i| self.q_eval(&images[i]) == S::from_laurent(self.q_basis(i)))
            && (0..n).all(|i| {
                (i + 1..n).all(|j| {
                    let want = if self.gram(i, j) { S::one() } else { S::zero() };
                    self.bilin(&images[i], &images[j]) == want
                })
            })
    }

    /// `r = u + v_1 + ... + v_m` spans the radical when m is even; for odd m
    /// the form is nondegenerate and `None` is returned.
    pub fn radical_vector(&self) -> Option<Vector<Laurent>> {
        let n = self.rank();
        if gram_rank_gf2(n) == n {
            return None;
        }
        let r: Vector<Laurent> = vec![Laurent::one(); n];
        debug_assert!((0..n).all(|i| self.bilin(&r, &self.basis_vector::<Laurent>(i)).is_zero()));
        Some(r)
    }
}

/// Rank over GF(2) of the Gram matrix J - I of size n.
pub fn gram_rank_gf2(n: usize) -> usize {
    let mut rows: Vec<Vec<bool>> = (0..n).map(|i| (0..n).map(|j| i != j).collect()).collect();
    let mut rank = 0;
    for col in 0..n {
        let Some(p) = (rank..n).find(|&r| rows[r][col]) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && row[col] {
                for (x, y) in row.iter_mut().zip(&pivot) {
                    *x ^= y;
                }
            }
        }
        rank += 1;
    }
    rank
}
