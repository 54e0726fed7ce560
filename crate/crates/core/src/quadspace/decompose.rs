//! Orthogonal splitting V = V_1 + ... + V_k + U into hyperbolic lines and a
//! rank 2 or 3 remainder, by repeated extraction of a singular pair from the
//! top two basis vectors.

use serde::Serialize;

use super::{QuadSpace, Vector};
use crate::gf2ring::Laurent;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DecomposeError {
    #[error("q-state ({0}) is not one of the four periodic states")]
    UnsupportedForm(String),
    #[error("rank {rank} is below 4, no hyperbolic pair is extracted")]
    RankTooSmall {
        rank: usize,
        residual: HyperbolicDecomposition,
    },
}

/// One row of the state table: `(q_0, q_1, q_2)` written as `(a, b, c)` with
/// each entry `t^-1 * x + y` encoded as `(x, y)`, and the chosen `(alpha, beta)`.
type StateRow = ([(bool, bool); 3], (bool, bool));

/// The four periodic states and their solutions of
/// `a^2 q_0 + b^2 q_1 + q_2 + a + b + ab = 0`.
pub const STATE_TABLE: [StateRow; 4] = [
    ([(false, true), (true, false), (true, false)], (true, true)),
    ([(false, true), (true, false), (true, true)], (false, true)),
    ([(false, true), (true, true), (true, true)], (true, true)),
    ([(false, true), (true, true), (true, false)], (false, true)),
];

fn state_value((x, y): (bool, bool)) -> Laurent {
    let mut v = Laurent::zero();
    if x {
        v += &Laurent::t_inv();
    }
    if y {
        v += &Laurent::one();
    }
    v
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DecompStep {
    /// Rank of the working module before the extraction.
    pub rank: usize,
    pub q: [Laurent; 3],
    pub alpha: bool,
    pub beta: bool,
    /// Row of [`STATE_TABLE`] that matched.
    pub table_row: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HyperbolicDecomposition {
    pub pairs: Vec<(Vector<Laurent>, Vector<Laurent>)>,
    pub residual: Vec<Vector<Laurent>>,
    pub steps: Vec<DecompStep>,
}

impl HyperbolicDecomposition {
    pub fn vector_count(&self) -> usize {
        2 * self.pairs.len() + self.residual.len()
    }

    /// Checks every structural invariant against `space`; returns the first
    /// violated one.
    pub fn check(&self, space: &QuadSpace) -> Result<(), String> {
        let zero = Laurent::zero();
        let one = Laurent::one();
        if self.vector_count() != space.rank() {
            return Err(format!("{} vectors for rank {}", self.vector_count(), space.rank()));
        }
        if !(2..=3).contains(&self.residual.len()) {
            return Err(format!("residual rank {}", self.residual.len()));
        }
        let all: Vec<&Vector<Laurent>> = self
            .pairs
            .iter()
            .flat_map(|(e, f)| [e, f])
            .chain(&self.residual)
            .collect();
        for v in &all {
            if !v.iter().all(|c| c.is_zero() || c.is_one()) {
                return Err("vector is not a GF(2) combination of the basis".into());
            }
        }
        for (i, (e, f)) in self.pairs.iter().enumerate() {
            if space.q_eval(e) != zero || space.q_eval(f) != zero {
                return Err(format!("pair {i} is not singular"));
            }
            if space.bilin(e, f) != one {
                return Err(format!("pair {i} has (e, f) != 1"));
            }
        }
        // block membership: pair i occupies slots 2i, 2i+1; residual is one block
        let block = |k: usize| (k / 2).min(self.pairs.len());
        for a in 0..all.len() {
            for b in a + 1..all.len() {
                if block(a) != block(b) && !space.bilin(all[a], all[b]).is_zero() {
                    return Err(format!("vectors {a} and {b} in distinct blocks pair nontrivially"));
                }
            }
        }
        // F2-independence: a basis of V since the count equals the rank
        if gf2_rank(&all) != space.rank() {
            return Err("output vectors are dependent".into());
        }
        Ok(())
    }
}

fn gf2_rank(vs: &[&Vector<Laurent>]) -> usize {
    let mut rows: Vec<u128> = vs
        .iter()
        .map(|v| {
            v.iter()
                .enumerate()
                .filter(|(_, c)| c.is_one())
                .fold(0u128, |acc, (i, _)| acc | 1 << i)
        })
        .collect();
    let mut rank = 0;
    while let Some(p) = rows.iter().copied().filter(|r| *r != 0).max() {
        let bit = 1u128 << (127 - p.leading_zeros());
        for r in rows.iter_mut() {
            if *r & bit != 0 {
                *r ^= p;
            }
        }
        rank += 1;
    }
    rank
}

fn combine(coeffs: &[(bool, &Vector<Laurent>)]) -> Vector<Laurent> {
    let n = coeffs[0].1.len();
    let mut out = vec![Laurent::zero(); n];
    for (c, v) in coeffs {
        if *c {
            for (o, x) in out.iter_mut().zip(v.iter()) {
                *o += x;
            }
        }
    }
    out
}

/// Runs the extraction loop while the working rank is at least four.
pub fn hyperbolic_decompose(space: &QuadSpace) -> Result<HyperbolicDecomposition, DecomposeError> {
    let mut cur: Vec<Vector<Laurent>> = (0..space.rank()).map(|i| space.basis_vector(i)).collect();
    let mut out = HyperbolicDecomposition {
        pairs: Vec::new(),
        residual: Vec::new(),
        steps: Vec::new(),
    };
    if cur.len() < 4 {
        out.residual = cur;
        return Err(DecomposeError::RankTooSmall {
            rank: space.rank(),
            residual: out,
        });
    }
    while cur.len() >= 4 {
        let q: Vec<Laurent> = cur.iter().map(|v| space.q_eval(v)).collect();
        let state = [q[0].clone(), q[1].clone(), q[2].clone()];
        let describe = || format!("{}, {}, {}", state[0], state[1], state[2]);
        if q[2..].iter().any(|x| *x != q[2]) {
            return Err(DecomposeError::UnsupportedForm(describe()));
        }
        let Some(row) = STATE_TABLE
            .iter()
            .position(|(s, _)| s.iter().zip(&state).all(|(enc, v)| state_value(*enc) == *v))
        else {
            return Err(DecomposeError::UnsupportedForm(describe()));
        };
        let (alpha, beta) = STATE_TABLE[row].1;
        let k = cur.len() - 1;
        let e = combine(&[(alpha, &cur[0]), (beta, &cur[1]), (true, &cur[k])]);
        let f = combine(&[(alpha, &cur[0]), (beta, &cur[1]), (true, &cur[k - 1])]);
        let ef = combine(&[(true, &e), (true, &f)]);
        let mut next = Vec::with_capacity(k - 1);
        next.push(combine(&[(true, &cur[0]), (!beta, &ef)]));
        next.push(combine(&[(true, &cur[1]), (!alpha, &ef)]));
        let mid = !(alpha ^ beta);
        for v in &cur[2..k - 1] {
            next.push(combine(&[(true, v), (mid, &ef)]));
        }
        out.steps.push(DecompStep {
            rank: cur.len(),
            q: state,
            alpha,
            beta,
            table_row: row,
        });
        out.pairs.push((e, f));
        cur = next;
    }
    out.residual = cur;
    Ok(out)
}
