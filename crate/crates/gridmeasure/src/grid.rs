//! Exact set algebra on the finite grid Ω = {0/n, 1/n, …, n/n}.
//!
//! Sets are stored as sorted, disjoint, non-adjacent runs of consecutive
//! indices, so interval unions, Cantor-stage renderings and their dilations
//! stay cheap even at very large `n`. All operations are pure: they return
//! new sets and never mutate their inputs.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest accepted grid extent. Indices up to 2^52 stay exactly
/// representable as f64, so index/`n` coordinates lose no precision.
pub const MAX_SCALE: u64 = 1 << 52;

/// The grid resolution: the grid has `n + 1` points `0/n … n/n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GridScale {
    n: u64,
}

impl GridScale {
    pub fn new(n: u64) -> Result<Self> {
        if n == 0 || n > MAX_SCALE {
            return Err(Error::invalid(format!(
                "grid extent must lie in [1, 2^52], got {n}"
            )));
        }
        Ok(GridScale { n })
    }

    /// The denominator `n`; index `i` sits at coordinate `i / n`.
    pub fn n(self) -> u64 {
        self.n
    }

    /// Number of grid points, `n + 1`.
    pub fn point_count(self) -> u64 {
        self.n + 1
    }

    /// Real coordinate of a grid index.
    pub fn point(self, index: u64) -> f64 {
        index as f64 / self.n as f64
    }
}

/// A maximal run of consecutive grid indices: `start, start+1, …, start+len-1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Run {
    pub start: u64,
    pub len: u64,
}

impl Run {
    /// Last index of the run (inclusive).
    pub fn end(self) -> u64 {
        self.start + self.len - 1
    }
}

/// A subset of the grid in canonical run-length form.
///
/// Canonical means: runs sorted by start, pairwise disjoint, and separated
/// by at least one missing index (adjacent runs are merged on construction).
///
/// ```
/// use gridmeasure::grid::{GridScale, GridSet};
///
/// let scale = GridScale::new(10).unwrap();
/// let set = GridSet::from_runs([(0, 2), (2, 3)], scale).unwrap();
/// assert_eq!(set.runs().len(), 1); // adjacent runs merge to (0, 5)
/// assert_eq!(set.cardinality(), 5);
/// ```
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GridSet {
    runs: Vec<Run>,
    scale: GridScale,
}

impl GridSet {
    /// The empty subset of the grid.
    pub fn empty(scale: GridScale) -> Self {
        GridSet { runs: Vec::new(), scale }
    }

    /// The whole grid, indices `0..=n`.
    pub fn full(scale: GridScale) -> Self {
        GridSet {
            runs: vec![Run { start: 0, len: scale.point_count() }],
            scale,
        }
    }

    /// Builds a set from `(start, len)` runs, canonicalizing as it goes.
    /// Overlapping and adjacent input runs are merged; zero-length runs are
    /// dropped. Fails if any index exceeds `scale.n()`.
    pub fn from_runs(
        runs: impl IntoIterator<Item = (u64, u64)>,
        scale: GridScale,
    ) -> Result<Self> {
        let mut collected: Vec<Run> = Vec::new();
        for (start, len) in runs {
            if len == 0 {
                continue;
            }
            let end = start
                .checked_add(len - 1)
                .ok_or(Error::Overflow)?;
            if end > scale.n() {
                return Err(Error::IndexOutOfRange { index: end, max: scale.n() });
            }
            collected.push(Run { start, len });
        }
        collected.sort_by_key(|r| r.start);
        let runs = merge_sorted(collected);
        Ok(GridSet { runs, scale })
    }

    /// Builds a set from individual indices (any order, duplicates allowed).
    pub fn from_indices(
        indices: impl IntoIterator<Item = u64>,
        scale: GridScale,
    ) -> Result<Self> {
        let mut idx: Vec<u64> = indices.into_iter().collect();
        idx.sort_unstable();
        idx.dedup();
        if let Some(&last) = idx.last() {
            if last > scale.n() {
                return Err(Error::IndexOutOfRange { index: last, max: scale.n() });
            }
        }
        let mut runs: Vec<Run> = Vec::new();
        for i in idx {
            match runs.last_mut() {
                Some(run) if i == run.end() + 1 => run.len += 1,
                _ => runs.push(Run { start: i, len: 1 }),
            }
        }
        Ok(GridSet { runs, scale })
    }

    pub fn scale(&self) -> GridScale {
        self.scale
    }

    pub fn runs(&self) -> &[Run] {
        &self.runs
    }

    pub fn is_empty(&self) -> bool {
        self.runs.is_empty()
    }

    /// Number of grid points in the set.
    pub fn cardinality(&self) -> u64 {
        self.runs.iter().map(|r| r.len).sum()
    }

    /// The uniform discrete measure `card / (n + 1)`.
    pub fn discrete_lebesgue(&self) -> f64 {
        self.cardinality() as f64 / self.scale.point_count() as f64
    }

    /// Membership test by binary search over runs.
    pub fn contains_index(&self, index: u64) -> bool {
        let pos = self.runs.partition_point(|r| r.end() < index);
        self.runs
            .get(pos)
            .is_some_and(|r| r.start <= index && index <= r.end())
    }

    /// True when every point of `self` lies in `other`.
    pub fn is_subset_of(&self, other: &GridSet) -> Result<bool> {
        self.check_scale(other)?;
        let mut j = 0;
        for run in &self.runs {
            while j < other.runs.len() && other.runs[j].end() < run.start {
                j += 1;
            }
            match other.runs.get(j) {
                Some(o) if o.start <= run.start && run.end() <= o.end() => {}
                _ => return Ok(false),
            }
        }
        Ok(true)
    }

    /// `{ i : |i - j| <= k for some j in the set }`, clipped to `[0, n]`.
    ///
    /// The halo truncates at the boundary rather than wrapping; the grid
    /// models `[0, 1]` only.
    ///
    /// ```
    /// use gridmeasure::grid::{GridScale, GridSet};
    ///
    /// let scale = GridScale::new(10).unwrap();
    /// let point = GridSet::from_runs([(5, 1)], scale).unwrap();
    ///
    /// // A symmetric halo of two indices around index 5.
    /// let fat = point.dilate(2);
    /// assert_eq!(fat.runs()[0].start, 3);
    /// assert_eq!(fat.runs()[0].len, 5);
    ///
    /// // Erosion undoes dilation on sets that were already fat enough.
    /// assert!(point.is_subset_of(&fat.erode(2)).unwrap());
    /// ```
    pub fn dilate(&self, k: u64) -> GridSet {
        if k == 0 || self.runs.is_empty() {
            return self.clone();
        }
        let n = self.scale.n();
        let k = k.min(n);
        let grown: Vec<Run> = self
            .runs
            .iter()
            .map(|r| {
                let start = r.start.saturating_sub(k);
                let end = (r.end() + k).min(n);
                Run { start, len: end - start + 1 }
            })
            .collect();
        GridSet { runs: merge_sorted(grown), scale: self.scale }
    }

    /// `{ i in the set : [i-k, i+k] ∩ [0, n] is contained in the set }`.
    ///
    /// Dual to [`dilate`](Self::dilate): the clipped halo around a surviving
    /// point must lie entirely inside the set.
    pub fn erode(&self, k: u64) -> GridSet {
        if k == 0 {
            return self.clone();
        }
        let n = self.scale.n();
        let mut runs = Vec::new();
        for r in &self.runs {
            // A boundary run keeps its clipped side: there is nothing
            // outside [0, n] to demand.
            let start = if r.start == 0 { 0 } else { r.start.saturating_add(k) };
            let end_raw = r.end();
            let end = if end_raw == n {
                n
            } else if end_raw >= k {
                end_raw - k
            } else {
                continue;
            };
            if start <= end && start <= end_raw && end >= r.start {
                runs.push(Run { start, len: end - start + 1 });
            }
        }
        GridSet { runs, scale: self.scale }
    }

    pub fn union(&self, other: &GridSet) -> Result<GridSet> {
        self.check_scale(other)?;
        let mut all: Vec<Run> = Vec::with_capacity(self.runs.len() + other.runs.len());
        all.extend_from_slice(&self.runs);
        all.extend_from_slice(&other.runs);
        all.sort_by_key(|r| r.start);
        Ok(GridSet { runs: merge_sorted(all), scale: self.scale })
    }

    pub fn intersect(&self, other: &GridSet) -> Result<GridSet> {
        self.check_scale(other)?;
        let mut runs = Vec::new();
        let (mut i, mut j) = (0, 0);
        while i < self.runs.len() && j < other.runs.len() {
            let a = self.runs[i];
            let b = other.runs[j];
            let lo = a.start.max(b.start);
            let hi = a.end().min(b.end());
            if lo <= hi {
                runs.push(Run { start: lo, len: hi - lo + 1 });
            }
            if a.end() <= b.end() {
                i += 1;
            } else {
                j += 1;
            }
        }
        Ok(GridSet { runs, scale: self.scale })
    }

    /// Complement within the full grid `[0, n]`.
    pub fn complement(&self) -> GridSet {
        let n = self.scale.n();
        let mut runs = Vec::new();
        let mut next = 0u64;
        for r in &self.runs {
            if r.start > next {
                runs.push(Run { start: next, len: r.start - next });
            }
            next = r.end() + 1;
        }
        if next <= n {
            runs.push(Run { start: next, len: n - next + 1 });
        }
        GridSet { runs, scale: self.scale }
    }

    fn check_scale(&self, other: &GridSet) -> Result<()> {
        if self.scale != other.scale {
            return Err(Error::ScaleMismatch {
                left: self.scale.n(),
                right: other.scale.n(),
            });
        }
        Ok(())
    }
}

/// Merges a start-sorted run list into canonical (disjoint, non-adjacent) form.
fn merge_sorted(sorted: Vec<Run>) -> Vec<Run> {
    let mut out: Vec<Run> = Vec::with_capacity(sorted.len());
    for run in sorted {
        match out.last_mut() {
            Some(prev) if run.start <= prev.end() + 1 => {
                let end = prev.end().max(run.end());
                prev.len = end - prev.start + 1;
            }
            _ => out.push(run),
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn scale(n: u64) -> GridScale {
        GridScale::new(n).unwrap()
    }

    /// Reference model for n <= 16: one bit per grid index.
    fn to_mask(set: &GridSet) -> u32 {
        let mut mask = 0u32;
        for r in set.runs() {
            for i in r.start..=r.end() {
                mask |= 1 << i;
            }
        }
        mask
    }

    fn from_mask(mask: u32, sc: GridScale) -> GridSet {
        GridSet::from_indices(
            (0..=sc.n()).filter(|i| mask & (1 << i) != 0),
            sc,
        )
        .unwrap()
    }

    fn dilate_mask(mask: u32, k: u64, n: u64) -> u32 {
        let mut out = 0u32;
        for i in 0..=n {
            for j in 0..=n {
                if mask & (1 << j) != 0 && i.abs_diff(j) <= k {
                    out |= 1 << i;
                }
            }
        }
        out
    }

    fn erode_mask(mask: u32, k: u64, n: u64) -> u32 {
        let mut out = 0u32;
        for i in 0..=n {
            if mask & (1 << i) == 0 {
                continue;
            }
            let lo = i.saturating_sub(k);
            let hi = (i + k).min(n);
            if (lo..=hi).all(|j| mask & (1 << j) != 0) {
                out |= 1 << i;
            }
        }
        out
    }

    #[test]
    fn adjacent_runs_merge() {
        let s = GridSet::from_runs([(0, 2), (2, 3)], scale(10)).unwrap();
        assert_eq!(s.runs(), &[Run { start: 0, len: 5 }]);
    }

    #[test]
    fn empty_set_is_legal() {
        let s = GridSet::from_runs([], scale(10)).unwrap();
        assert!(s.is_empty());
        assert_eq!(s.cardinality(), 0);
        assert_eq!(s.discrete_lebesgue(), 0.0);
    }

    #[test]
    fn disjoint_runs_preserved() {
        let s = GridSet::from_runs([(0, 3), (7, 4)], scale(10)).unwrap();
        assert_eq!(s.runs().len(), 2);
        assert_eq!(s.cardinality(), 7);
    }

    #[test]
    fn out_of_range_rejected() {
        let err = GridSet::from_runs([(8, 4)], scale(10)).unwrap_err();
        assert_eq!(err, Error::IndexOutOfRange { index: 11, max: 10 });
    }

    #[test]
    fn canonicalization_is_idempotent() {
        let s = GridSet::from_runs([(3, 2), (0, 2), (6, 1), (5, 1)], scale(10)).unwrap();
        let again = GridSet::from_runs(
            s.runs().iter().map(|r| (r.start, r.len)),
            s.scale(),
        )
        .unwrap();
        assert_eq!(s, again);
    }

    #[test]
    fn full_grid_cardinality() {
        assert_eq!(GridSet::full(scale(100)).cardinality(), 101);
        assert_eq!(GridSet::full(scale(100)).discrete_lebesgue(), 1.0);
    }

    #[test]
    fn single_point_lebesgue() {
        let sc = scale(1_000_000);
        let s = GridSet::from_runs([(0, 1)], sc).unwrap();
        assert_eq!(s.discrete_lebesgue(), 1.0 / 1_000_001.0);
    }

    #[test]
    fn dilate_symmetric_halo() {
        let s = GridSet::from_runs([(5, 1)], scale(10)).unwrap();
        assert_eq!(s.dilate(2).runs(), &[Run { start: 3, len: 5 }]);
    }

    #[test]
    fn dilate_clips_at_boundary() {
        let s = GridSet::from_runs([(0, 1)], scale(10)).unwrap();
        assert_eq!(s.dilate(3).runs(), &[Run { start: 0, len: 4 }]);
    }

    #[test]
    fn erode_shrinks_run() {
        let s = GridSet::from_runs([(3, 5)], scale(10)).unwrap();
        assert_eq!(s.erode(1).runs(), &[Run { start: 4, len: 3 }]);
    }

    #[test]
    fn erode_zero_is_identity() {
        let s = GridSet::from_runs([(2, 4), (8, 2)], scale(12)).unwrap();
        assert_eq!(s.erode(0), s);
    }

    #[test]
    fn complement_involution_and_partition() {
        let sc = scale(12);
        let s = GridSet::from_runs([(0, 2), (5, 3)], sc).unwrap();
        assert_eq!(s.complement().complement(), s);
        let u = s.union(&s.complement()).unwrap();
        assert_eq!(u, GridSet::full(sc));
        assert!(s.intersect(&s.complement()).unwrap().is_empty());
    }

    #[test]
    fn scale_mismatch_rejected() {
        let a = GridSet::full(scale(10));
        let b = GridSet::full(scale(11));
        assert_eq!(
            a.union(&b).unwrap_err(),
            Error::ScaleMismatch { left: 10, right: 11 }
        );
    }

    /// Exhaustive check of dilation composition, erosion duality and the
    /// inclusion–exclusion identity against a bitmask model for all subsets
    /// of small grids.
    #[test]
    fn exhaustive_small_grid_ops_match_bitmask_model() {
        for n in 1..=10u64 {
            let sc = scale(n);
            for mask in 0..(1u32 << (n + 1)) {
                let set = from_mask(mask, sc);
                assert_eq!(to_mask(&set), mask);

                for k in [0u64, 1, 2, 3] {
                    assert_eq!(to_mask(&set.dilate(k)), dilate_mask(mask, k, n));
                    assert_eq!(to_mask(&set.erode(k)), erode_mask(mask, k, n));
                }

                // dilate(dilate(B, a), b) = dilate(B, a + b)
                assert_eq!(set.dilate(1).dilate(2), set.dilate(3));

                // erode(dilate(B, k), k) contains B
                for k in [1u64, 2] {
                    assert!(set
                        .is_subset_of(&set.dilate(k).erode(k))
                        .unwrap());
                }
            }
        }
    }

    #[test]
    fn exhaustive_inclusion_exclusion() {
        let n = 8u64;
        let sc = scale(n);
        for a in 0..(1u32 << (n + 1)) {
            // A deterministic, well-spread partner mask.
            let b = a.wrapping_mul(2654435761) & ((1 << (n + 1)) - 1);
            let sa = from_mask(a, sc);
            let sb = from_mask(b, sc);
            let union = sa.union(&sb).unwrap();
            let inter = sa.intersect(&sb).unwrap();
            assert_eq!(
                union.cardinality() + inter.cardinality(),
                sa.cardinality() + sb.cardinality()
            );
            assert_eq!(to_mask(&union), a | b);
            assert_eq!(to_mask(&inter), a & b);
        }
    }

    #[test]
    fn dilate_and_erode_are_monotone() {
        let sc = scale(14);
        for a in (0..(1u32 << 15)).step_by(97) {
            let b = a | (a >> 3) | 0b100;
            let sa = from_mask(a & 0x7fff, sc);
            let sb = from_mask(b & 0x7fff, sc);
            assert!(sa.is_subset_of(&sb).unwrap());
            for k in [1u64, 2, 4] {
                assert!(sa.dilate(k).is_subset_of(&sb.dilate(k)).unwrap());
                assert!(sa.erode(k).is_subset_of(&sb.erode(k)).unwrap());
            }
        }
    }

    #[test]
    fn lebesgue_additive_over_disjoint_union() {
        let sc = scale(1000);
        let a = GridSet::from_runs([(0, 100), (300, 50)], sc).unwrap();
        let b = GridSet::from_runs([(150, 20), (600, 200)], sc).unwrap();
        assert!(a.intersect(&b).unwrap().is_empty());
        let u = a.union(&b).unwrap();
        // Exact as an integer identity before the final division.
        assert_eq!(u.cardinality(), a.cardinality() + b.cardinality());
    }
}
