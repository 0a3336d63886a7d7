//! Box counting: the comparator that misreads irregular sets.
//!
//! Boxes are index blocks of `b` consecutive indices with `b` dividing `n`;
//! the final grid point `n` belongs to the last block, matching the usual
//! right-closed box convention on `[0, 1]`.

use crate::error::{Error, Result};
use crate::grid::GridSet;
use crate::measure::least_squares_slope;

#[derive(Debug, Clone, PartialEq)]
pub struct BoxCountEstimate {
    /// Least-squares slope of `log N(b)` against `log(n / b)`.
    pub dimension: f64,
    /// `(box_size, boxes_intersected)` per requested size.
    pub counts: Vec<(u64, u64)>,
}

/// Counts boxes of each size intersecting the set and fits the scaling
/// exponent. Requires at least two distinct sizes, each dividing `n`.
///
/// The reciprocal family shows the method's bias: a countable set of
/// dimension zero reads as roughly one half.
///
/// ```
/// use gridmeasure::generators::{render, SetSpec};
/// use gridmeasure::grid::GridScale;
/// use gridmeasure::measure::box_count_estimate;
///
/// let n = 1_000_000u64;
/// let scale = GridScale::new(n).unwrap();
/// let set = render(&SetSpec::reciprocals("r", 10_000), scale).unwrap();
///
/// let sizes: Vec<u64> = (1..=3).map(|j| n / 10u64.pow(j)).collect();
/// let est = box_count_estimate(&set, &sizes).unwrap();
/// assert!(est.dimension > 0.4, "box slope {}", est.dimension);
/// ```
pub fn box_count_estimate(set: &GridSet, box_sizes: &[u64]) -> Result<BoxCountEstimate> {
    let n = set.scale().n();
    let mut sizes: Vec<u64> = box_sizes.to_vec();
    sizes.sort_unstable();
    sizes.dedup();
    if sizes.len() < 2 {
        return Err(Error::DegenerateFit);
    }
    for &b in &sizes {
        if b == 0 || b > n || !n.is_multiple_of(b) {
            return Err(Error::BoxSize { size: b, n });
        }
    }

    let mut counts = Vec::with_capacity(sizes.len());
    for &b in &sizes {
        let last_box = n / b - 1;
        let mut total = 0u64;
        let mut prev_done: Option<u64> = None;
        for run in set.runs() {
            let lo = (run.start / b).min(last_box);
            let hi = (run.end() / b).min(last_box);
            let lo = match prev_done {
                Some(done) if lo <= done => done + 1,
                _ => lo,
            };
            if lo <= hi {
                total += hi - lo + 1;
                prev_done = Some(hi);
            }
        }
        counts.push((b, total));
    }

    if counts.iter().any(|&(_, c)| c == 0) {
        // Empty set: no boxes at any size, slope undefined; report 0.
        return Ok(BoxCountEstimate { dimension: 0.0, counts });
    }

    let xs: Vec<f64> = counts.iter().map(|&(b, _)| ((n / b) as f64).ln()).collect();
    let ys: Vec<f64> = counts.iter().map(|&(_, c)| (c as f64).ln()).collect();
    let dimension = least_squares_slope(&xs, &ys).ok_or(Error::DegenerateFit)?;
    Ok(BoxCountEstimate { dimension, counts })
}
