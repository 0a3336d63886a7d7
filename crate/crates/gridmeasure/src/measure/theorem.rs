//! Measuring a real set through grid supersets of its rendering.
//!
//! A real point has no width on the grid, so "the grid points near the
//! set" is modelled by rendering the set and dilating by a halo of `k`
//! indices. Since the discrete measure is monotone under set inclusion,
//! evaluating at the thinnest admissible halo stands in for the infimum
//! over all supersets.

use crate::error::{Error, Result};
use crate::generators::{render, SetSpec};
use crate::grid::GridScale;
use crate::measure::{
    h_delta_s_value, MeasureParams, MeasureReport, ReportKind, ReportStatus,
    DIVERGENCE_THRESHOLD,
};

/// Discrete measure of the halo-dilated rendering of a spec.
pub fn theorem_rhs(spec: &SetSpec, p: &MeasureParams, halo: u64) -> Result<MeasureReport> {
    if halo == 0 {
        return Err(Error::invalid("halo must be at least 1"));
    }
    let set = render(spec, p.scale)?.dilate(halo);
    let (value, piece_count) = h_delta_s_value(&set, p)?;
    let status = if value > DIVERGENCE_THRESHOLD {
        ReportStatus::Diverging
    } else {
        ReportStatus::Ok
    };
    Ok(MeasureReport {
        spec_id: spec.id.clone(),
        n: p.scale.n(),
        delta: p.delta,
        s: p.s,
        halo,
        kind: ReportKind::DiscreteH,
        value,
        piece_count,
        status,
    })
}

/// Lower and upper discrete Lebesgue bounds: the density of the eroded
/// rendering and of the dilated one — the tightest inner and outer grid
/// approximations at the given halo width.
pub fn lebesgue_bounds(spec: &SetSpec, scale: GridScale, halo: u64) -> Result<(f64, f64)> {
    if halo == 0 {
        return Err(Error::invalid("halo must be at least 1"));
    }
    let rendered = render(spec, scale)?;
    let lower = rendered.erode(halo).discrete_lebesgue();
    let upper = rendered.dilate(halo).discrete_lebesgue();
    Ok((lower, upper))
}
