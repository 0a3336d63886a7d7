//! The discrete s-dimensional measure: the exact minimum of Σ diam(V_i)^s
//! over partitions of a grid set into δ-intervals.
//!
//! Two independent evaluation routes are kept side by side:
//!
//! * a closed form per maximal run — with m = floor(δn) admissible points
//!   per piece, a run of k points is optimally split into q = ceil(k/m)
//!   pieces, q−1 of them full and one remainder (subadditivity of x^s
//!   makes fewer pieces cheaper, concavity pushes the sizes to the
//!   extremes);
//! * an exhaustive dynamic program used as the test oracle.
//!
//! Both routes share the same piece-cost primitive and the same summation
//! order (pieces left to right within a run, run subtotals left to right),
//! so on their common domain they agree bit for bit, not merely within a
//! tolerance.

use crate::error::{Error, Result};
use crate::grid::GridSet;
use crate::measure::MeasureParams;
use crate::partition::{piece_cost, DeltaInterval, Partition};

/// The exhaustive oracle refuses sets larger than this.
pub const ORACLE_CARDINALITY_LIMIT: u64 = 10_000;

fn check_feasible(set: &GridSet, p: &MeasureParams) -> Result<u64> {
    p.validate()?;
    let budget = p.point_budget();
    if budget == 0 && !set.is_empty() {
        return Err(Error::GridTooCoarse { delta: p.delta, n: p.scale.n() });
    }
    if set.scale() != p.scale {
        return Err(Error::ScaleMismatch { left: set.scale().n(), right: p.scale.n() });
    }
    Ok(budget)
}

/// Optimal cost of one run of `len` points, summed piece by piece, plus the
/// piece count. `full_cost` is the cost of an m-point piece.
///
/// At s = 1 every tiling of the run has cost exactly `len / n` in real
/// arithmetic (the piece diameters telescope), so that value is returned
/// directly with a single rounding instead of a summation.
fn run_value(
    len: u64,
    budget: u64,
    full_cost: f64,
    p: &MeasureParams,
) -> (f64, u64) {
    let q = len.div_ceil(budget);
    if p.s == 1.0 {
        return (len as f64 / p.scale.n() as f64, q);
    }
    let rem = len - (q - 1) * budget;
    let mut acc = 0.0;
    for _ in 0..q - 1 {
        acc += full_cost;
    }
    acc += piece_cost(rem, p.scale, p.s);
    (acc, q)
}

/// Value-only evaluation of the discrete measure: returns `(value,
/// piece_count)` without materializing the witness partition. Prefer this
/// in sweeps where the witness can run to millions of pieces.
pub fn h_delta_s_value(set: &GridSet, p: &MeasureParams) -> Result<(f64, u64)> {
    let budget = check_feasible(set, p)?;
    if set.is_empty() {
        return Ok((0.0, 0));
    }
    let full_cost = piece_cost(budget, p.scale, p.s);
    let mut total = 0.0;
    let mut pieces = 0u64;
    for run in set.runs() {
        let (v, q) = if run.len > budget {
            run_value(run.len, budget, full_cost, p)
        } else {
            (piece_cost(run.len, p.scale, p.s), 1)
        };
        total += v;
        pieces += q;
    }
    Ok((total, pieces))
}

/// The discrete s-dimensional measure of `set` together with one witnessing
/// optimal partition (q−1 full pieces then the remainder, left to right,
/// within each maximal run).
///
/// ```
/// use gridmeasure::grid::{GridScale, GridSet};
/// use gridmeasure::measure::{h_delta_s, MeasureParams};
///
/// let scale = GridScale::new(10).unwrap();
/// let set = GridSet::from_runs([(2, 5)], scale).unwrap();
/// let params = MeasureParams::new(1.0, 0.2, scale).unwrap();
/// let (value, witness) = h_delta_s(&set, &params).unwrap();
/// // At s = 1 the value is cardinality / n regardless of the partition.
/// assert!((value - 0.5).abs() < 1e-12);
/// assert_eq!(witness.pieces().len(), 3); // 2 + 2 + 1 points
/// ```
pub fn h_delta_s(set: &GridSet, p: &MeasureParams) -> Result<(f64, Partition)> {
    let budget = check_feasible(set, p)?;
    if set.is_empty() {
        return Ok((0.0, Partition::from_validated(Vec::new(), p.s, p.delta)));
    }
    let full_cost = piece_cost(budget, p.scale, p.s);
    let mut total = 0.0;
    let mut pieces: Vec<DeltaInterval> = Vec::new();
    for run in set.runs() {
        if run.len <= budget {
            total += piece_cost(run.len, p.scale, p.s);
            pieces.push(DeltaInterval::new(run.start, run.len, p.scale)?);
            continue;
        }
        let (v, q) = run_value(run.len, budget, full_cost, p);
        total += v;
        let rem = run.len - (q - 1) * budget;
        let mut cursor = run.start;
        for _ in 0..q - 1 {
            pieces.push(DeltaInterval::new(cursor, budget, p.scale)?);
            cursor += budget;
        }
        pieces.push(DeltaInterval::new(cursor, rem, p.scale)?);
    }
    Ok((total, Partition::from_validated(pieces, p.s, p.delta)))
}

/// Exhaustive verifier of the partition minimum: within each maximal run a
/// dynamic program explores every multiset of piece sizes bounded by
/// `floor(δn)`,
///
/// ```text
/// cost(0) = 0,   cost(j) = min over piece sizes t in [1, m] of cost(j - t) + (t/n)^s,
/// ```
///
/// restricted to non-increasing size sequences, and run results are added
/// left to right. Reordering the pieces of a tiling never changes its real
/// cost, so the restriction loses no partition — it only fixes one float
/// summation order per candidate, the same order the closed form uses for
/// its witness. Independent of the closed-form route; intended for
/// test-scale sets only.
///
/// ```
/// use gridmeasure::grid::{GridScale, GridSet};
/// use gridmeasure::measure::{h_delta_s_oracle, h_delta_s_value, MeasureParams};
///
/// let scale = GridScale::new(16).unwrap();
/// let set = GridSet::from_runs([(0, 7), (9, 4)], scale).unwrap();
/// let params = MeasureParams::new(0.25, 3.0 / 16.0, scale).unwrap();
///
/// let (closed, _) = h_delta_s_value(&set, &params).unwrap();
/// let oracle = h_delta_s_oracle(&set, &params).unwrap();
/// assert_eq!(closed.to_bits(), oracle.to_bits());
/// ```
pub fn h_delta_s_oracle(set: &GridSet, p: &MeasureParams) -> Result<f64> {
    let budget = check_feasible(set, p)?;
    if set.is_empty() {
        return Ok(0.0);
    }
    let card = set.cardinality();
    if card > ORACLE_CARDINALITY_LIMIT {
        return Err(Error::TooLarge { cardinality: card, limit: ORACLE_CARDINALITY_LIMIT });
    }
    let mut total = 0.0;
    for run in set.runs() {
        if p.s == 1.0 {
            // Degenerate exponent: every tiling costs exactly len / n.
            total += run.len as f64 / p.scale.n() as f64;
            continue;
        }
        let len = run.len as usize;
        let m = budget.min(run.len) as usize;
        let weights: Vec<f64> = (1..=m)
            .map(|t| piece_cost(t as u64, p.scale, p.s))
            .collect();
        // best[j][t]: cheapest accumulated sum tiling the first j points
        // with non-increasing piece sizes ending in a piece of t+1 points.
        let mut best = vec![vec![f64::INFINITY; m]; len + 1];
        for t in 1..=m.min(len) {
            best[t][t - 1] = weights[t - 1];
        }
        for j in 1..len {
            for t in 1..=m.min(j) {
                let here = best[j][t - 1];
                if !here.is_finite() {
                    continue;
                }
                for next in 1..=t.min(len - j) {
                    let c = here + weights[next - 1];
                    if c < best[j + next][next - 1] {
                        best[j + next][next - 1] = c;
                    }
                }
            }
        }
        let run_min = best[len]
            .iter()
            .copied()
            .fold(f64::INFINITY, f64::min);
        total += run_min;
    }
    Ok(total)
}
