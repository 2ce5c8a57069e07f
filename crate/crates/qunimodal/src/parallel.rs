//! Parallel classification with deterministic output order.

use qunimodal_core::unimodality::{classify, classify_with, ScanEntry, DIRECT_CLASSIFY_LIMIT};
use qunimodal_core::BaseRegistry;
use rayon::prelude::*;
use rayon::ThreadPool;

/// True when some pair would be classified through a certificate.
pub fn needs_registry(pairs: &[(usize, usize)]) -> bool {
    pairs
        .iter()
        .any(|&(a, b)| a.min(b) >= 5 && a * b > DIRECT_CLASSIFY_LIMIT)
}

pub fn classify_one(ell: usize, m: usize, registry: Option<&BaseRegistry>) -> ScanEntry {
    let class = match registry {
        Some(r) => classify_with(ell, m, r),
        None => classify(ell, m),
    };
    ScanEntry { ell, m, class }
}

/// Classifies `pairs` in chunks. Each chunk runs in parallel and is handed
/// to `emit` in input order once complete.
pub fn scan_streaming<E>(
    pool: &ThreadPool,
    pairs: &[(usize, usize)],
    registry: Option<&BaseRegistry>,
    mut emit: impl FnMut(&[ScanEntry]) -> Result<(), E>,
) -> Result<(), E> {
    let chunk = (pool.current_num_threads() * 4).max(16);
    for block in pairs.chunks(chunk) {
        let entries: Vec<ScanEntry> = pool.install(|| {
            block
                .par_iter()
                .map(|&(a, b)| classify_one(a, b, registry))
                .collect()
        });
        emit(&entries)?;
    }
    Ok(())
}

pub fn scan_all(
    pool: &ThreadPool,
    pairs: &[(usize, usize)],
    registry: Option<&BaseRegistry>,
) -> Vec<ScanEntry> {
    let mut out = Vec::with_capacity(pairs.len());
    scan_streaming::<()>(pool, pairs, registry, |block| {
        out.extend_from_slice(block);
        Ok(())
    })
    .expect("infallible sink");
    out
}
