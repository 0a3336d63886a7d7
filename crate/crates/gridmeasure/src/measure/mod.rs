//! The measure engine: discrete s-dimensional measure, partition
//! coarsening, cover fattening, classical comparators and dimension
//! estimation.

mod boxcount;
mod classical;
mod coarsen;
mod discrete;
mod dimension;
mod fatten;
mod theorem;

pub use boxcount::{box_count_estimate, BoxCountEstimate};
pub use classical::classical_cover_measure;
pub use coarsen::{coarsen_partition, standard_cover};
pub use dimension::{
    dimension_estimate, halo_for, DimensionOptions, EstimationMethod, HaloRule, SchedulePoint,
};
pub use discrete::{h_delta_s, h_delta_s_oracle, h_delta_s_value, ORACLE_CARDINALITY_LIMIT};
pub use fatten::{fattened_cover_superset, FattenedCover};
pub use theorem::{lebesgue_bounds, theorem_rhs};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::GridScale;
use crate::partition::delta_point_budget;

/// Values above this are flagged as diverging in reports and treated as
/// +infinity by the dimension search.
pub const DIVERGENCE_THRESHOLD: f64 = 1e6;

/// Values below this are treated as vanished by the dimension search.
pub const VANISHING_THRESHOLD: f64 = 1e-6;

/// Evaluation parameters for the discrete measure: the exponent `s`, the
/// piece-diameter bound `delta`, and the grid scale.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeasureParams {
    pub s: f64,
    pub delta: f64,
    pub scale: GridScale,
}

impl MeasureParams {
    pub fn new(s: f64, delta: f64, scale: GridScale) -> Result<Self> {
        let p = MeasureParams { s, delta, scale };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.s > 0.0 && self.s <= 1.0) {
            return Err(Error::InvalidS { s: self.s });
        }
        if !(self.delta > 0.0 && self.delta.is_finite()) {
            return Err(Error::invalid(format!(
                "delta must be positive and finite, got {}",
                self.delta
            )));
        }
        Ok(())
    }

    /// Largest admissible piece size in points, `floor(delta * n)`.
    pub fn point_budget(&self) -> u64 {
        delta_point_budget(self.delta, self.scale)
    }
}

/// What a report row measures.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ReportKind {
    DiscreteH,
    LebesgueLower,
    LebesgueUpper,
    ClassicalCover,
    BoxCount,
}

impl ReportKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ReportKind::DiscreteH => "discrete_h",
            ReportKind::LebesgueLower => "lebesgue_lower",
            ReportKind::LebesgueUpper => "lebesgue_upper",
            ReportKind::ClassicalCover => "classical_cover",
            ReportKind::BoxCount => "box_count",
        }
    }
}

/// Row status: normal, diverging (value beyond the divergence threshold),
/// or skipped with a machine-readable reason.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub enum ReportStatus {
    Ok,
    Diverging,
    Skipped(String),
}

impl From<ReportStatus> for String {
    fn from(s: ReportStatus) -> String {
        match s {
            ReportStatus::Ok => "ok".to_string(),
            ReportStatus::Diverging => "diverging".to_string(),
            ReportStatus::Skipped(reason) => format!("skipped:{reason}"),
        }
    }
}

impl TryFrom<String> for ReportStatus {
    type Error = String;

    fn try_from(s: String) -> std::result::Result<Self, String> {
        match s.as_str() {
            "ok" => Ok(ReportStatus::Ok),
            "diverging" => Ok(ReportStatus::Diverging),
            other => match other.strip_prefix("skipped:") {
                Some(reason) => Ok(ReportStatus::Skipped(reason.to_string())),
                None => Err(format!("unknown report status {other:?}")),
            },
        }
    }
}

/// One evaluation record: the unit of CSV/JSON output.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MeasureReport {
    pub spec_id: String,
    pub n: u64,
    pub delta: f64,
    pub s: f64,
    pub halo: u64,
    pub kind: ReportKind,
    pub value: f64,
    pub piece_count: u64,
    pub status: ReportStatus,
}

/// Cost `len^s` of a real interval, with the same exp/ln evaluation and
/// s = 1 short-circuit as the grid piece cost.
pub(crate) fn length_cost(len: f64, s: f64) -> f64 {
    if len <= 0.0 {
        0.0
    } else if s == 1.0 {
        len
    } else {
        (s * len.ln()).exp()
    }
}

/// Ordinary least-squares slope of `ys` against `xs`. `None` when fewer
/// than two distinct abscissae are supplied.
pub(crate) fn least_squares_slope(xs: &[f64], ys: &[f64]) -> Option<f64> {
    if xs.len() != ys.len() || xs.len() < 2 {
        return None;
    }
    let n = xs.len() as f64;
    let mean_x = xs.iter().sum::<f64>() / n;
    let mean_y = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mean_x) * (x - mean_x)).sum();
    if sxx < 1e-30 {
        return None;
    }
    let sxy: f64 = xs
        .iter()
        .zip(ys)
        .map(|(x, y)| (x - mean_x) * (y - mean_y))
        .sum();
    Some(sxy / sxx)
}
