//! Execution strategy for the embarrassingly parallel loops (relator checks,
//! random-word sweeps, BFS frontier expansion).
//!
//! With the `parallel` feature disabled every strategy runs sequentially.

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Exec {
    Sequential,
    #[default]
    Parallel,
}

impl Exec {
    /// Order-preserving map over a slice.
    pub fn map<T, R, F>(self, items: &[T], f: F) -> Vec<R>
    where
        T: Sync,
        R: Send,
        F: Fn(&T) -> R + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Exec::Parallel => {
                use rayon::prelude::*;
                items.par_iter().map(f).collect()
            }
            _ => items.iter().map(f).collect(),
        }
    }

    /// Order-preserving flat map over a slice.
    pub fn flat_map<T, R, I, F>(self, items: &[T], f: F) -> Vec<R>
    where
        T: Sync,
        R: Send,
        I: IntoIterator<Item = R>,
        F: Fn(&T) -> I + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Exec::Parallel => {
                use rayon::prelude::*;
                items
                    .par_iter()
                    .map(|x| f(x).into_iter().collect::<Vec<_>>())
                    .flatten_iter()
                    .collect()
            }
            _ => items.iter().flat_map(f).collect(),
        }
    }

    pub fn sort_dedup<T: Ord + Send>(self, v: &mut Vec<T>) {
        match self {
            #[cfg(feature = "parallel")]
            Exec::Parallel => {
                use rayon::prelude::*;
                v.par_sort_unstable();
            }
            _ => v.sort_unstable(),
        }
        v.dedup();
    }
}

/// Size the global worker pool. `YTWO_THREADS` overrides the argument.
/// Returns the thread count in effect (1 without the `parallel` feature).
pub fn configure_threads(requested: Option<usize>) -> usize {
    let from_env = std::env::var("YTWO_THREADS")
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .filter(|&n| n > 0);
    let want = from_env.or(requested);
    #[cfg(feature = "parallel")]
    {
        if let Some(n) = want {
            // a pool may already exist (e.g. in tests); keep the existing one
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
        }
        rayon::current_num_threads()
    }
    #[cfg(not(feature = "parallel"))]
    {
        let _ = want;
        1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn strategies_agree() {
        let xs: Vec<u32> = (0..1000).collect();
        let a = Exec::Sequential.map(&xs, |x| x * x);
        let b = Exec::Parallel.map(&xs, |x| x * x);
        assert_eq!(a, b);
        let c = Exec::Parallel.flat_map(&xs, |&x| [x, x + 1]);
        assert_eq!(c, Exec::Sequential.flat_map(&xs, |&x| [x, x + 1]));
        let mut d = c.clone();
        Exec::Parallel.sort_dedup(&mut d);
        assert_eq!(d.len(), 1001);
    }
}
