//! Deterministic data-parallel index folds for the O(M^2) pair scans.
//!
//! Thread count is capped by the HQMAP_THREADS environment variable
//! (default 1). Partial results are combined in fixed thread order, and
//! the folds used here are exact max/sum reductions, so results are
//! identical for every thread count.

use std::sync::OnceLock;

pub fn thread_count() -> usize {
    static COUNT: OnceLock<usize> = OnceLock::new();
    *COUNT.get_or_init(|| {
        std::env::var("HQMAP_THREADS")
            .ok()
            .and_then(|v| v.parse::<usize>().ok())
            .unwrap_or(1)
            .clamp(1, 64)
    })
}

/// Fold `work(i)` over i in 0..n on up to HQMAP_THREADS threads, combining
/// per-range partials in thread order.
pub fn indexed_fold<R, F, G>(n: usize, identity: R, work: F, combine: G) -> R
where
    R: Send + Clone,
    F: Fn(usize, R) -> R + Sync,
    G: Fn(R, R) -> R,
{
    let threads = thread_count().min(n.max(1));
    if threads <= 1 {
        let mut acc = identity;
        for i in 0..n {
            acc = work(i, acc);
        }
        return acc;
    }
    let chunk = n.div_ceil(threads);
    let mut partials: Vec<Option<R>> = vec![None; threads];
    std::thread::scope(|scope| {
        let work = &work;
        let handles: Vec<_> = (0..threads)
            .map(|t| {
                let lo = t * chunk;
                let hi = ((t + 1) * chunk).min(n);
                let id = identity.clone();
                scope.spawn(move || {
                    let mut acc = id;
                    for i in lo..hi {
                        acc = work(i, acc);
                    }
                    acc
                })
            })
            .collect();
        for (t, h) in handles.into_iter().enumerate() {
            partials[t] = Some(h.join().expect("scan worker panicked"));
        }
    });
    let mut out = identity;
    for p in partials.into_iter().flatten() {
        out = combine(out, p);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fold_matches_sequential() {
        let n = 1000;
        let got = indexed_fold(n, 0u64, |i, acc| acc + i as u64, |a, b| a + b);
        assert_eq!(got, (n as u64 - 1) * n as u64 / 2);
    }
}
