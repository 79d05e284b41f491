//! Worker pool and exhaustive tuple search.
//!
//! The pool size comes from `BIHOM_WORKERS` when set to a positive integer,
//! otherwise rayon's default. Searches visit every tuple and keep the
//! lexicographically least failure, so results do not depend on scheduling.

use std::sync::OnceLock;

use rayon::prelude::*;
use rayon::ThreadPool;

use crate::scalar::Scalar;

pub const WORKERS_ENV: &str = "BIHOM_WORKERS";

fn pool() -> &'static ThreadPool {
    static POOL: OnceLock<ThreadPool> = OnceLock::new();
    POOL.get_or_init(|| {
        let mut builder = rayon::ThreadPoolBuilder::new().thread_name(|i| format!("bihom-worker-{i}"));
        if let Some(n) = std::env::var(WORKERS_ENV)
            .ok()
            .and_then(|v| v.trim().parse::<usize>().ok())
        {
            if n > 0 {
                builder = builder.num_threads(n);
            }
        }
        builder.build().expect("worker pool")
    })
}

/// Number of workers in the shared pool.
pub fn worker_count() -> usize {
    pool().current_num_threads()
}

#[derive(Debug, Clone, PartialEq)]
pub struct SearchOutcome {
    pub examined: u64,
    pub failing: u64,
    /// Lexicographically least failing tuple and its residual.
    pub first: Option<(Vec<usize>, Vec<Scalar>)>,
}

fn decode(mut index: u64, dims: &[usize]) -> Vec<usize> {
    let mut out = vec![0; dims.len()];
    for (slot, &d) in out.iter_mut().zip(dims).rev() {
        *slot = (index % d as u64) as usize;
        index /= d as u64;
    }
    out
}

/// Evaluates `residual` on every tuple of `0..dims[0] x 0..dims[1] x ...`.
/// A tuple fails when its residual has a nonzero entry.
pub fn search<F>(dims: &[usize], residual: F) -> SearchOutcome
where
    F: Fn(&[usize]) -> Vec<Scalar> + Sync + Send,
{
    let total: u64 = dims.iter().map(|&d| d as u64).product();
    if total == 0 {
        return SearchOutcome {
            examined: 0,
            failing: 0,
            first: None,
        };
    }
    type Acc = (u64, Option<(u64, Vec<Scalar>)>);
    let merge = |a: Acc, b: Acc| -> Acc {
        let first = match (a.1, b.1) {
            (Some(x), Some(y)) => Some(if x.0 <= y.0 { x } else { y }),
            (x, y) => x.or(y),
        };
        (a.0 + b.0, first)
    };
    let (failing, first) = pool().install(|| {
        (0..total as usize)
            .into_par_iter()
            .with_min_len(8)
            .fold(
                || (0u64, None),
                |acc: Acc, idx| {
                    let idx = idx as u64;
                    let tuple = decode(idx, dims);
                    let r = residual(&tuple);
                    if r.iter().all(Scalar::is_zero) {
                        acc
                    } else {
                        merge(acc, (1, Some((idx, r))))
                    }
                },
            )
            .reduce(|| (0, None), merge)
    });
    SearchOutcome {
        examined: total,
        failing,
        first: first.map(|(idx, r)| (decode(idx, dims), r)),
    }
}

/// Maps `f` over items on the shared pool, preserving order.
pub fn map_ordered<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    pool().install(|| items.par_iter().map(f).collect())
}
