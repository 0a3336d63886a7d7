//! δ-intervals and partitions of grid sets into δ-intervals.
//!
//! A δ-interval is a contiguous block of grid indices whose diameter uses
//! the point-count convention: a block of `c` points at scale `n` has
//! diameter `c / n` (not `(c - 1) / n`). The deviation from the metric
//! diameter vanishes as `1 / n`.

use crate::error::{Error, Result};
use crate::grid::{GridScale, GridSet};

/// Guard factor for `floor(delta * n)` at integer boundaries: a delta meant
/// to be exactly `k / n` can land a few ulps below `k` after rounding, which
/// would silently lose one admissible point per piece.
const FLOOR_SNAP: f64 = 1.0 + 16.0 * f64::EPSILON;

/// Largest piece size (in points) admissible for `delta` at this scale,
/// i.e. `floor(delta * n)` evaluated robustly.
pub fn delta_point_budget(delta: f64, scale: GridScale) -> u64 {
    let raw = delta * scale.n() as f64 * FLOOR_SNAP;
    if raw.is_nan() || raw < 1.0 {
        return 0;
    }
    let budget = raw.floor() as u64;
    budget.min(scale.point_count())
}

/// Cost `diam^s` of one piece of `point_count` points.
///
/// Evaluated as `exp(s * (ln c - ln n))` so that very large `n` cannot
/// underflow the ratio before exponentiation. `s = 1` short-circuits to the
/// exact ratio `c / n`, which keeps the s = 1 identity with the discrete
/// Lebesgue measure tight.
pub fn piece_cost(point_count: u64, scale: GridScale, s: f64) -> f64 {
    debug_assert!(point_count >= 1);
    if s == 1.0 {
        point_count as f64 / scale.n() as f64
    } else {
        (s * ((point_count as f64).ln() - (scale.n() as f64).ln())).exp()
    }
}

/// A contiguous block of grid indices used as one partition piece.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DeltaInterval {
    pub start: u64,
    pub point_count: u64,
    scale: GridScale,
}

impl DeltaInterval {
    pub fn new(start: u64, point_count: u64, scale: GridScale) -> Result<Self> {
        if point_count == 0 {
            return Err(Error::invalid("a delta-interval needs at least one point"));
        }
        let end = start
            .checked_add(point_count - 1)
            .ok_or(Error::Overflow)?;
        if end > scale.n() {
            return Err(Error::IndexOutOfRange { index: end, max: scale.n() });
        }
        Ok(DeltaInterval { start, point_count, scale })
    }

    pub fn end(&self) -> u64 {
        self.start + self.point_count - 1
    }

    pub fn scale(&self) -> GridScale {
        self.scale
    }

    /// Point-count diameter `c / n`.
    pub fn diameter(&self) -> f64 {
        self.point_count as f64 / self.scale.n() as f64
    }

    /// Contribution `diam^s` to a partition cost.
    pub fn cost(&self, s: f64) -> f64 {
        piece_cost(self.point_count, self.scale, s)
    }
}

/// An ordered partition of a grid set into δ-intervals, together with its
/// cost Σ diam(V_i)^s for the `s` it was built with.
#[derive(Debug, Clone, PartialEq)]
pub struct Partition {
    pieces: Vec<DeltaInterval>,
    s: f64,
    delta: f64,
    cost: f64,
}

impl Partition {
    /// Validates and wraps a piece list. Pieces must be sorted, disjoint,
    /// share one scale, and respect the `delta` point budget.
    pub fn new(pieces: Vec<DeltaInterval>, s: f64, delta: f64) -> Result<Self> {
        if !(s > 0.0 && s <= 1.0) {
            return Err(Error::InvalidS { s });
        }
        if delta.is_nan() || delta <= 0.0 {
            return Err(Error::invalid(format!("delta must be positive, got {delta}")));
        }
        if let Some(first) = pieces.first() {
            let scale = first.scale();
            let budget = delta_point_budget(delta, scale);
            for pair in pieces.windows(2) {
                if pair[1].scale() != scale {
                    return Err(Error::ScaleMismatch {
                        left: scale.n(),
                        right: pair[1].scale().n(),
                    });
                }
                if pair[1].start <= pair[0].end() {
                    return Err(Error::invalid("partition pieces overlap or are unsorted"));
                }
            }
            for piece in &pieces {
                if piece.point_count > budget {
                    return Err(Error::invalid(format!(
                        "piece of {} points exceeds the delta budget {budget}",
                        piece.point_count
                    )));
                }
            }
        }
        let cost = pieces.iter().map(|p| p.cost(s)).fold(0.0, |acc, c| acc + c);
        Ok(Partition { pieces, s, delta, cost })
    }

    /// Used by the measure engine for partitions it has already proven
    /// valid (e.g. optimal witnesses, coarsened pieces).
    pub(crate) fn from_validated(pieces: Vec<DeltaInterval>, s: f64, delta: f64) -> Self {
        let cost = pieces.iter().map(|p| p.cost(s)).fold(0.0, |acc, c| acc + c);
        Partition { pieces, s, delta, cost }
    }

    pub fn pieces(&self) -> &[DeltaInterval] {
        &self.pieces
    }

    pub fn s(&self) -> f64 {
        self.s
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    /// Σ diam(V_i)^s, accumulated left to right over the pieces.
    pub fn cost(&self) -> f64 {
        self.cost
    }

    pub fn is_empty(&self) -> bool {
        self.pieces.is_empty()
    }

    /// Largest piece diameter, 0 for the empty partition.
    pub fn max_diameter(&self) -> f64 {
        self.pieces
            .iter()
            .map(|p| p.diameter())
            .fold(0.0, f64::max)
    }

    /// The union of the pieces as a grid set (adjacent pieces fuse into
    /// maximal runs).
    pub fn covered_set(&self) -> Option<GridSet> {
        let scale = self.pieces.first()?.scale();
        Some(
            GridSet::from_runs(
                self.pieces.iter().map(|p| (p.start, p.point_count)),
                scale,
            )
            .expect("validated pieces are in range"),
        )
    }
}
