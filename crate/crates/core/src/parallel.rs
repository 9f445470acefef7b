//! Deterministic map-reduce over fixed-point index ranges.
//!
//! The index space is cut into fixed-size chunks independent of the worker
//! count; partial results are merged in chunk order, so output never depends
//! on `threads`.

use std::ops::Range;

use rayon::prelude::*;

use crate::error::VolumeError;

pub(crate) const CHUNK: u64 = 1 << 12;

pub(crate) fn chunked<R, M, F>(total: u64, threads: usize, map: M, mut fold: F) -> Result<Option<R>, VolumeError>
where
    R: Send,
    M: Fn(Range<u64>) -> R + Sync,
    F: FnMut(R, R) -> R,
{
    let chunks: Vec<Range<u64>> = (0..total.div_ceil(CHUNK))
        .map(|c| c * CHUNK..((c + 1) * CHUNK).min(total))
        .collect();
    let partials: Vec<R> = if threads <= 1 || chunks.len() <= 1 {
        chunks.into_iter().map(&map).collect()
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .map_err(|e| VolumeError::ThreadPool(e.to_string()))?;
        pool.install(|| chunks.into_par_iter().map(&map).collect())
    };
    let mut iter = partials.into_iter();
    let first = iter.next();
    Ok(first.map(|f| iter.fold(f, &mut fold)))
}
