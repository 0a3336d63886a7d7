//! Discrete measures on finite grids.
//!
//! This crate measures subsets of the unit interval through their shadows
//! on a finite grid Ω = {0/n, 1/n, …, 1}. The central quantity is the
//! discrete s-dimensional measure: the exact minimum of Σ diam(V_i)^s over
//! partitions of a grid set into contiguous pieces of diameter at most δ.
//! Around it sit the pieces needed to study dimension at desk scale:
//! generators for standard sets (interval unions, middle-λ Cantor stages,
//! reciprocal point families), halo dilation standing in for measuring
//! through supersets, discrete Lebesgue bounds, a classical cover-measure
//! comparator, box counting, and a critical-exponent search.
//!
//! # Quick start
//!
//! Measure a stage-4 Cantor rendering at its matched scale and exponent:
//!
//! ```
//! use gridmeasure::generators::SetSpec;
//! use gridmeasure::grid::GridScale;
//! use gridmeasure::measure::{theorem_rhs, MeasureParams};
//!
//! let stage = 4;
//! let n = 3u64.pow(2 * stage); // 6561
//! let scale = GridScale::new(n).unwrap();
//! let s = 2f64.ln() / 3f64.ln();
//! let delta = 3f64.powi(-(stage as i32)) + 1.0 / n as f64;
//!
//! let spec = SetSpec::cantor("cantor-thirds", 1.0 / 3.0, stage);
//! let params = MeasureParams::new(s, delta, scale).unwrap();
//! let report = theorem_rhs(&spec, &params, 1).unwrap();
//!
//! // At the critical exponent the analytic value is 2^m 3^(-ms) = 1.
//! assert!((report.value - 1.0).abs() < 0.15);
//! ```
//!
//! The `book/` directory of the repository walks through the model, the
//! closed-form evaluator and its exhaustive oracle, and the comparators;
//! its code snippets mirror the doc-tests in this crate.

pub mod error;
pub mod generators;
pub mod grid;
pub mod measure;
pub mod partition;

pub use error::{Error, Result};
pub use generators::{
    analytic_reference, cantor_intervals, cantor_kept_ratio, render, RealInterval, SetSpec,
};
pub use grid::{GridScale, GridSet, Run};
pub use measure::{
    box_count_estimate, classical_cover_measure, coarsen_partition, dimension_estimate,
    fattened_cover_superset, h_delta_s, h_delta_s_oracle, h_delta_s_value, lebesgue_bounds,
    standard_cover, theorem_rhs, DimensionOptions, EstimationMethod, HaloRule, MeasureParams,
    MeasureReport, ReportKind, ReportStatus, SchedulePoint,
};
pub use partition::{delta_point_budget, piece_cost, DeltaInterval, Partition};
