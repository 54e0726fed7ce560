use std::collections::HashSet;

use smallvec::SmallVec;

use super::SpecError;
use crate::exec::Exec;
use crate::gf2ring::{FfMatrix, FiniteField};

pub const DEFAULT_CAP: u64 = 2_000_000;

type Key = SmallVec<[u8; 32]>;

fn key(m: &FfMatrix, bits: u32) -> Key {
    let mut v = Vec::with_capacity((m.rows() * m.cols() * bits as usize).div_ceil(8));
    m.encode(bits, &mut v);
    Key::from_vec(v)
}

/// Order of the group generated by `gens`, by breadth-first closure from the
/// identity under right multiplication. Errors once more than `cap`
/// elements have been found.
pub fn group_order_bfs(field: &FiniteField, gens: &[FfMatrix], cap: u64, exec: Exec) -> Result<u64, SpecError> {
    let Some(first) = gens.first() else {
        return Ok(1);
    };
    let bits = field.degree();
    let id = FfMatrix::identity(first.rows());
    let mut seen: HashSet<Key> = HashSet::new();
    seen.insert(key(&id, bits));
    let mut frontier = vec![id];
    while !frontier.is_empty() {
        let mut cand: Vec<(Key, FfMatrix)> = exec.flat_map(&frontier, |x| {
            gens.iter()
                .map(|g| {
                    let y = x.mul(field, g);
                    (key(&y, bits), y)
                })
                .collect::<Vec<_>>()
        });
        match exec {
            #[cfg(feature = "parallel")]
            Exec::Parallel => {
                use rayon::prelude::*;
                cand.par_sort_unstable_by(|a, b| a.0.cmp(&b.0));
            }
            _ => cand.sort_unstable_by(|a, b| a.0.cmp(&b.0)),
        }
        cand.dedup_by(|a, b| a.0 == b.0);
        let fresh: Vec<bool> = exec.map(&cand, |(k, _)| !seen.contains(k));
        frontier = Vec::new();
        for ((k, y), new) in cand.into_iter().zip(fresh) {
            if new {
                seen.insert(k);
                frontier.push(y);
            }
        }
        if seen.len() as u64 > cap {
            return Err(SpecError::CapExceeded {
                cap,
                reached: seen.len() as u64,
            });
        }
    }
    Ok(seen.len() as u64)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm(field: &FiniteField, p: &[usize]) -> FfMatrix {
        let _ = field;
        FfMatrix::from_fn(p.len(), p.len(), |i, j| (p[i] == j) as u32)
    }

    #[test]
    fn empty_generators() {
        let f = FiniteField::with_degree(2).unwrap();
        assert_eq!(group_order_bfs(&f, &[], 10, Exec::Sequential).unwrap(), 1);
    }

    #[test]
    fn symmetric_groups() {
        let f = FiniteField::with_degree(1).unwrap();
        for n in 2..=5usize {
            let cycle: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
            let mut swap: Vec<usize> = (0..n).collect();
            swap.swap(0, 1);
            let gens = [perm(&f, &cycle), perm(&f, &swap)];
            let want: u64 = (1..=n as u64).product();
            for exec in [Exec::Sequential, Exec::Parallel] {
                assert_eq!(group_order_bfs(&f, &gens, 1000, exec).unwrap(), want);
            }
        }
    }

    #[test]
    fn cap_is_a_resource_error() {
        let f = FiniteField::with_degree(1).unwrap();
        let cycle: Vec<usize> = (0..6).map(|i| (i + 1) % 6).collect();
        let gens = [perm(&f, &cycle), perm(&f, &[1, 0, 2, 3, 4, 5])];
        assert!(matches!(
            group_order_bfs(&f, &gens, 100, Exec::Sequential),
            Err(SpecError::CapExceeded { cap: 100, .. })
        ));
    }

    #[test]
    fn scalar_group_of_field() {
        // GF(16)^* is cyclic of order 15
        let f = FiniteField::with_degree(4).unwrap();
        let g = FfMatrix::from_fn(1, 1, |_, _| f.generator());
        assert_eq!(group_order_bfs(&f, &[g], 100, Exec::Sequential).unwrap(), 15);
    }
}
