//! Deterministic chunked range scans.
//!
//! Every scan splits its range into fixed-size chunks (independent of the
//! worker count), maps each chunk on some worker, then combines the chunk
//! results in index order. Output is therefore bit-stable across `--workers`
//! settings.

use crate::error::Error;

/// Fixed chunk width; must not depend on the worker count.
pub const CHUNK_WIDTH: u64 = 1 << 16;

pub fn default_workers() -> usize {
    std::thread::available_parallelism()
        .map(|n| n.get())
        .unwrap_or(1)
}

/// Map the inclusive range [lo, hi] chunk by chunk and return the per-chunk
/// results in chunk order. On failure the error from the lowest-indexed
/// failing chunk is returned.
pub fn chunk_map<T, F>(lo: u64, hi: u64, workers: usize, map: F) -> Result<Vec<T>, Error>
where
    T: Send,
    F: Fn(u64, u64) -> Result<T, Error> + Sync,
{
    if hi < lo {
        return Ok(Vec::new());
    }
    let n_chunks = ((hi - lo) / CHUNK_WIDTH + 1) as usize;
    let bounds = |idx: usize| {
        let a = lo + idx as u64 * CHUNK_WIDTH;
        let b = (a + CHUNK_WIDTH - 1).min(hi);
        (a, b)
    };
    let workers = workers.max(1).min(n_chunks);
    if workers == 1 {
        let mut out = Vec::with_capacity(n_chunks);
        for idx in 0..n_chunks {
            let (a, b) = bounds(idx);
            out.push(map(a, b)?);
        }
        return Ok(out);
    }

    let results = std::thread::scope(|scope| {
        let map = &map;
        let handles: Vec<_> = (0..workers)
            .map(|t| {
                scope.spawn(move || {
                    let mut local = Vec::new();
                    let mut idx = t;
                    while idx < n_chunks {
                        let (a, b) = bounds(idx);
                        local.push((idx, map(a, b)));
                        idx += workers;
                    }
                    local
                })
            })
            .collect();
        let mut merged: Vec<Option<Result<T, Error>>> = (0..n_chunks).map(|_| None).collect();
        for h in handles {
            for (idx, r) in h.join().expect("scan worker panicked") {
                merged[idx] = Some(r);
            }
        }
        merged
    });

    let mut out = Vec::with_capacity(n_chunks);
    for r in results {
        out.push(r.expect("chunk not computed")?);
    }
    Ok(out)
}

/// Neumaier-compensated floating accumulator.
#[derive(Debug, Clone, Copy, Default)]
pub struct CompensatedSum {
    sum: f64,
    comp: f64,
}

impl CompensatedSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, v: f64) {
        let t = self.sum + v;
        if self.sum.abs() >= v.abs() {
            self.comp += (self.sum - t) + v;
        } else {
            self.comp += (v - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

/// Compensated sum of a per-element term over [lo, hi], chunked.
pub fn sum_scan<F>(lo: u64, hi: u64, workers: usize, term: F) -> Result<f64, Error>
where
    F: Fn(u64) -> Result<f64, Error> + Sync,
{
    let partials = chunk_map(lo, hi, workers, |a, b| {
        let mut acc = CompensatedSum::new();
        for n in a..=b {
            acc.add(term(n)?);
        }
        Ok(acc.value())
    })?;
    let mut total = CompensatedSum::new();
    for p in partials {
        total.add(p);
    }
    Ok(total.value())
}

/// Count of elements satisfying a predicate over [lo, hi], chunked.
pub fn count_scan<F>(lo: u64, hi: u64, workers: usize, pred: F) -> Result<u64, Error>
where
    F: Fn(u64) -> Result<bool, Error> + Sync,
{
    let partials = chunk_map(lo, hi, workers, |a, b| {
        let mut c = 0u64;
        for n in a..=b {
            if pred(n)? {
                c += 1;
            }
        }
        Ok(c)
    })?;
    Ok(partials.into_iter().sum())
}
