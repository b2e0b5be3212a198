//! Fan-out of census and density work over scoped threads.
//!
//! Work is cut into contiguous pieces, one per worker; partial results merge
//! into the same totals however the pieces were cut.

use std::ops::Range;
use std::thread;

use cycle_census_core::census::{self, ClassTally, CensusError, CensusReport};
use cycle_census_core::density::{self, DensityError, DensityReport, IntPoly, PrimeTally};
use cycle_census_core::{PermGroup, Ratio};

pub fn default_workers() -> usize {
    thread::available_parallelism().map_or(1, |n| n.get())
}

/// `0..total` cut into at most `parts` contiguous nonempty ranges.
pub fn split(total: u128, parts: usize) -> Vec<Range<u128>> {
    let parts = (parts.max(1) as u128).min(total.max(1));
    let step = total.div_ceil(parts);
    (0..parts).map(|k| (k * step).min(total)..((k + 1) * step).min(total)).filter(|r| !r.is_empty()).collect()
}

/// Below this many elements a single thread is used.
const SERIAL_LIMIT: u128 = 20_000;

pub fn tally(g: &PermGroup, cap: u128, workers: usize) -> Result<ClassTally, CensusError> {
    if !g.is_transitive() {
        return Err(CensusError::NotTransitive);
    }
    g.elements(cap)?;
    if workers <= 1 || g.order() < SERIAL_LIMIT {
        return Ok(census::tally_range(g, 0..g.order()));
    }
    let parts: Vec<ClassTally> = thread::scope(|s| {
        let handles: Vec<_> =
            split(g.order(), workers).into_iter().map(|r| s.spawn(move || census::tally_range(g, r))).collect();
        handles.into_iter().map(|h| h.join().expect("census worker panicked")).collect()
    });
    let mut total = ClassTally::new();
    for t in parts {
        total.merge(g, t);
    }
    Ok(total)
}

pub fn count_n_cycles(g: &PermGroup, cap: u128, workers: usize) -> Result<u128, CensusError> {
    if !g.is_transitive() {
        return Err(CensusError::NotTransitive);
    }
    g.elements(cap)?;
    if workers <= 1 || g.order() < SERIAL_LIMIT {
        return Ok(census::count_n_cycles_range(g, 0..g.order()));
    }
    Ok(thread::scope(|s| {
        let handles: Vec<_> = split(g.order(), workers)
            .into_iter()
            .map(|r| s.spawn(move || census::count_n_cycles_range(g, r)))
            .collect();
        handles.into_iter().map(|h| h.join().expect("census worker panicked")).sum()
    }))
}

pub fn census(g: &PermGroup, cap: u128, workers: usize) -> Result<CensusReport, CensusError> {
    let t = tally(g, cap, workers)?;
    census::report_from_tally(g, &t)
}

pub fn predicted_density(g: &PermGroup, cap: u128, workers: usize) -> Result<Ratio, CensusError> {
    Ok(Ratio::new(count_n_cycles(g, cap, workers)?, g.order()))
}

pub fn density(
    f: &IntPoly,
    bound: u64,
    floor: u64,
    workers: usize,
    predicted: Option<Ratio>,
) -> Result<DensityReport, DensityError> {
    density::check_density_input(f, bound)?;
    let primes = density::primes_in_window(bound, floor);
    let chunk = primes.len().div_ceil(workers.max(1)).max(1);
    let parts: Vec<PrimeTally> = thread::scope(|s| {
        let handles: Vec<_> =
            primes.chunks(chunk).map(|c| s.spawn(move || density::classify_primes(f, c))).collect();
        handles.into_iter().map(|h| h.join().expect("density worker panicked")).collect()
    });
    let mut t = PrimeTally::default();
    for p in parts {
        t.merge(p);
    }
    Ok(density::report_from_tally(f, bound, floor, t, predicted))
}
