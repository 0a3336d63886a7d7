//! Merging a fine partition into coarser interval pieces, and mapping grid
//! partitions back to real covers.

use crate::error::{Error, Result};
use crate::generators::RealInterval;
use crate::partition::{DeltaInterval, Partition};

/// Greedily merges each piece with the leftmost piece to its right while
/// the union stays one interval and the accumulated diameter is still
/// below `eta`. The result partitions the same set, every output piece has
/// diameter at most `eta + delta`, and the cost Σ diam^s never increases
/// (subadditivity of x^s on (0, 1]).
///
/// ```
/// use gridmeasure::grid::GridScale;
/// use gridmeasure::partition::{DeltaInterval, Partition};
/// use gridmeasure::measure::coarsen_partition;
///
/// let scale = GridScale::new(100).unwrap();
/// let pieces = vec![
///     DeltaInterval::new(0, 5, scale).unwrap(),
///     DeltaInterval::new(5, 5, scale).unwrap(),
/// ];
/// let fine = Partition::new(pieces, 0.5, 0.05).unwrap();
///
/// let coarse = coarsen_partition(&fine, 0.2).unwrap();
/// assert_eq!(coarse.pieces().len(), 1);
/// assert!(coarse.cost() < fine.cost()); // strict for s < 1
/// ```
pub fn coarsen_partition(part: &Partition, eta: f64) -> Result<Partition> {
    if !(eta > 0.0 && eta.is_finite()) {
        return Err(Error::InvalidEta { eta });
    }
    let pieces = part.pieces();
    if pieces.len() <= 1 {
        return Ok(part.clone());
    }
    let scale = pieces[0].scale();
    let n = scale.n() as f64;

    let mut merged: Vec<DeltaInterval> = Vec::new();
    let mut current = pieces[0];
    for piece in &pieces[1..] {
        let adjacent = piece.start == current.end() + 1;
        let diam = current.point_count as f64 / n;
        if adjacent && diam < eta {
            current = DeltaInterval::new(
                current.start,
                current.point_count + piece.point_count,
                scale,
            )?;
        } else {
            merged.push(current);
            current = *piece;
        }
    }
    merged.push(current);

    // The merged pieces live under the relaxed diameter bound eta + delta.
    Ok(Partition::from_validated(
        merged,
        part.s(),
        eta + part.delta(),
    ))
}

/// Maps each piece to the closed real interval spanned by its grid points,
/// `[start/n, (start + count - 1)/n]`. Pieces whose real length falls below
/// `min_length` are dropped; pass a small positive floor to discard the
/// degenerate single-point images, or 0.0 to keep everything.
pub fn standard_cover(part: &Partition, min_length: f64) -> Vec<RealInterval> {
    part.pieces()
        .iter()
        .filter_map(|piece| {
            let n = piece.scale().n() as f64;
            let lo = piece.start as f64 / n;
            let hi = piece.end() as f64 / n;
            if hi - lo < min_length {
                None
            } else {
                Some(RealInterval { lo, hi })
            }
        })
        .collect()
}
