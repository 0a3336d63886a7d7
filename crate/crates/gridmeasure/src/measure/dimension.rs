//! Dimension estimation: the critical exponent where the discrete measure
//! stops diverging and starts vanishing along a δ → 0 schedule.

use crate::error::{Error, Result};
use crate::generators::SetSpec;
use crate::grid::GridScale;
use crate::measure::{
    least_squares_slope, theorem_rhs, MeasureParams, DIVERGENCE_THRESHOLD, VANISHING_THRESHOLD,
};

/// How the dilation halo scales with the grid.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HaloRule {
    /// `ceil(sqrt(n))`: grows without bound while `halo / n` vanishes.
    SqrtN,
    Fixed(u64),
}

impl HaloRule {
    pub fn halo_for(self, n: u64) -> u64 {
        match self {
            HaloRule::SqrtN => halo_for(n),
            HaloRule::Fixed(k) => k.max(1),
        }
    }
}

/// `ceil(sqrt(n))` in exact integer arithmetic.
pub fn halo_for(n: u64) -> u64 {
    let mut r = (n as f64).sqrt() as u64;
    while r * r < n {
        r += 1;
    }
    while r > 1 && (r - 1) * (r - 1) >= n {
        r -= 1;
    }
    r.max(1)
}

/// One cell of a dimension schedule: evaluate at scale `n` with piece bound
/// `delta`; `stage` overrides the Cantor stage so constructions stay
/// matched to the resolution.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SchedulePoint {
    pub n: u64,
    pub delta: f64,
    pub stage: u32,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum EstimationMethod {
    /// Bisection on s: fit the slope of log value against log(1/δ) over
    /// the schedule and find where it crosses zero.
    Counting { halo: HaloRule },
    /// Box counting on the finest schedule point with sizes `n / factor^j`.
    BoxCounting { factor: u64, levels: u32 },
}

/// Knobs for the counting search. The divergence/vanishing clamps keep the
/// slope fit stable when values explode or underflow.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DimensionOptions {
    pub s_tolerance: f64,
    pub divergence_threshold: f64,
    pub vanishing_threshold: f64,
}

impl Default for DimensionOptions {
    fn default() -> Self {
        DimensionOptions {
            s_tolerance: 1e-3,
            divergence_threshold: DIVERGENCE_THRESHOLD,
            vanishing_threshold: VANISHING_THRESHOLD,
        }
    }
}

/// Estimates the dimension of the set described by `spec`.
///
/// For the counting method, a candidate `s` is classified by the fitted
/// slope of `log value` against `log(1/δ)` over the schedule: positive
/// slope means the measure still diverges (s below the dimension),
/// negative slope means it vanishes (s above). Bisection then pins the
/// crossing to `s_tolerance`. A slope already negative at the smallest
/// probed `s` reports dimension 0; a slope still positive at `s = 1` is a
/// `NoBracket` error.
///
/// ```
/// use gridmeasure::generators::SetSpec;
/// use gridmeasure::measure::{
///     dimension_estimate, DimensionOptions, EstimationMethod, HaloRule, SchedulePoint,
/// };
///
/// // Stage-matched schedule for the middle-thirds Cantor set: at stage m,
/// // scale 3^(2m) and delta = 3^-m + 1/n.
/// let schedule: Vec<SchedulePoint> = (5..=8)
///     .map(|m| {
///         let n = 3u64.pow(2 * m);
///         SchedulePoint { n, delta: 3f64.powi(-(m as i32)) + 1.0 / n as f64, stage: m }
///     })
///     .collect();
///
/// let spec = SetSpec::cantor("cantor-thirds", 1.0 / 3.0, 0);
/// let d = dimension_estimate(
///     &spec,
///     &schedule,
///     EstimationMethod::Counting { halo: HaloRule::SqrtN },
///     &DimensionOptions::default(),
/// )
/// .unwrap();
/// assert!((d - 0.6309).abs() <= 0.02, "estimated {d}");
/// ```
pub fn dimension_estimate(
    spec: &SetSpec,
    schedule: &[SchedulePoint],
    method: EstimationMethod,
    options: &DimensionOptions,
) -> Result<f64> {
    if schedule.len() < 3 {
        return Err(Error::invalid(format!(
            "schedule needs at least 3 points, got {}",
            schedule.len()
        )));
    }
    for pair in schedule.windows(2) {
        if pair[1].n <= pair[0].n {
            return Err(Error::invalid("schedule scales must be strictly increasing"));
        }
    }
    match method {
        EstimationMethod::Counting { halo } => {
            counting_estimate(spec, schedule, halo, options)
        }
        EstimationMethod::BoxCounting { factor, levels } => {
            box_estimate(spec, schedule, factor, levels)
        }
    }
}

fn counting_estimate(
    spec: &SetSpec,
    schedule: &[SchedulePoint],
    halo: HaloRule,
    options: &DimensionOptions,
) -> Result<f64> {
    let slope_at = |s: f64| -> Result<f64> {
        let mut xs = Vec::with_capacity(schedule.len());
        let mut ys = Vec::with_capacity(schedule.len());
        let mut diverged = false;
        let mut all_vanished = true;
        for point in schedule {
            let scale = GridScale::new(point.n)?;
            let params = MeasureParams::new(s, point.delta, scale)?;
            let staged = spec.with_stage(point.stage);
            let report = theorem_rhs(&staged, &params, halo.halo_for(point.n))?;
            if report.value > options.divergence_threshold {
                diverged = true;
            }
            if report.value >= options.vanishing_threshold {
                all_vanished = false;
            }
            if report.value > 0.0 {
                xs.push((1.0 / point.delta).ln());
                ys.push(report.value.ln());
            }
        }
        if diverged {
            return Ok(1.0);
        }
        if all_vanished || xs.len() < 2 {
            return Ok(-1.0);
        }
        least_squares_slope(&xs, &ys).ok_or(Error::DegenerateFit)
    };

    let mut lo = options.s_tolerance.max(1e-6);
    let mut hi = 1.0;
    let slope_lo = slope_at(lo)?;
    if slope_lo <= 0.0 {
        // Vanishes even at the smallest exponent probed: dimension 0.
        return Ok(0.0);
    }
    let slope_hi = slope_at(hi)?;
    if slope_hi > 0.0 {
        return Err(Error::NoBracket { lo, hi, slope_lo, slope_hi });
    }
    while hi - lo > options.s_tolerance {
        let mid = 0.5 * (lo + hi);
        if slope_at(mid)? > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

fn box_estimate(
    spec: &SetSpec,
    schedule: &[SchedulePoint],
    factor: u64,
    levels: u32,
) -> Result<f64> {
    use crate::generators::render;
    use crate::measure::box_count_estimate;

    if factor < 2 {
        return Err(Error::invalid("box factor must be at least 2"));
    }
    let point = schedule.last().expect("schedule checked non-empty");
    let scale = GridScale::new(point.n)?;
    let set = render(&spec.with_stage(point.stage), scale)?;
    let mut sizes = Vec::new();
    let mut b = point.n;
    for _ in 0..levels {
        if !b.is_multiple_of(factor) {
            break;
        }
        b /= factor;
        if b == 0 {
            break;
        }
        sizes.push(b);
    }
    Ok(box_count_estimate(&set, &sizes)?.dimension)
}

#[cfg(test)]
mod tests {
    use super::*;

    const LOG2_OVER_LOG3: f64 = 0.6309297535714574;

    fn cantor_schedule(base: u64, stages: std::ops::RangeInclusive<u32>) -> Vec<SchedulePoint> {
        stages
            .map(|m| {
                let n = base.pow(2 * m);
                SchedulePoint {
                    n,
                    delta: (1.0 / base as f64).powi(m as i32) + 1.0 / n as f64,
                    stage: m,
                }
            })
            .collect()
    }

    #[test]
    fn halo_rule_sqrt() {
        assert_eq!(halo_for(1), 1);
        assert_eq!(halo_for(100), 10);
        assert_eq!(halo_for(101), 11);
        assert_eq!(halo_for(3u64.pow(12)), 3u64.pow(6));
        assert_eq!(HaloRule::SqrtN.halo_for(10_000_000), 3163);
    }

    #[test]
    fn interval_dimension_is_one() {
        let spec = SetSpec::interval_union("unit", vec![[0.0, 1.0]]);
        let schedule: Vec<SchedulePoint> = [10_000u64, 100_000, 1_000_000, 10_000_000]
            .iter()
            .map(|&n| SchedulePoint { n, delta: (n as f64).powf(-0.75), stage: 0 })
            .collect();
        let d = dimension_estimate(
            &spec,
            &schedule,
            EstimationMethod::Counting { halo: HaloRule::SqrtN },
            &DimensionOptions::default(),
        )
        .unwrap();
        assert!((d - 1.0).abs() <= 0.02, "dimension {d}");
    }

    #[test]
    fn cantor_thirds_dimension() {
        // Deep stages: the boundary pairs of the dilated rendering are
        // cheaper than interior ones, and their weight halves per stage;
        // from stage 5 on the residual slope sits well inside tolerance.
        let spec = SetSpec::cantor("c", 1.0 / 3.0, 0);
        let schedule = cantor_schedule(3, 5..=8);
        let d = dimension_estimate(
            &spec,
            &schedule,
            EstimationMethod::Counting { halo: HaloRule::SqrtN },
            &DimensionOptions::default(),
        )
        .unwrap();
        assert!((d - LOG2_OVER_LOG3).abs() <= 0.02, "dimension {d}");
    }

    #[test]
    fn cantor_half_dimension() {
        // Middle-1/2 Cantor: kept ratio 1/4, dimension log2/log4 = 1/2.
        let spec = SetSpec::cantor("c", 0.5, 0);
        let schedule = cantor_schedule(4, 4..=6);
        let d = dimension_estimate(
            &spec,
            &schedule,
            EstimationMethod::Counting { halo: HaloRule::SqrtN },
            &DimensionOptions::default(),
        )
        .unwrap();
        assert!((d - 0.5).abs() <= 0.02, "dimension {d}");
    }

    #[test]
    fn reciprocals_counting_dimension_is_zero() {
        // Scales past count^2 isolate every rendered point; a unit halo
        // then sees a finite set whose measure vanishes at every s.
        let spec = SetSpec::reciprocals("r", 1_000);
        let schedule: Vec<SchedulePoint> = (0..4)
            .map(|j| {
                let n = 4_000_000u64 * 4u64.pow(j);
                SchedulePoint { n, delta: (n as f64).powf(-0.75), stage: 0 }
            })
            .collect();
        let d = dimension_estimate(
            &spec,
            &schedule,
            EstimationMethod::Counting { halo: HaloRule::Fixed(1) },
            &DimensionOptions::default(),
        )
        .unwrap();
        assert!(d <= 0.05, "dimension {d}");
    }

    #[test]
    fn box_method_on_reciprocals_sees_a_half() {
        let spec = SetSpec::reciprocals("r", 10_000);
        let schedule = vec![
            SchedulePoint { n: 1_000_000, delta: 1e-3, stage: 0 },
            SchedulePoint { n: 10_000_000, delta: 1e-4, stage: 0 },
            SchedulePoint { n: 100_000_000, delta: 1e-5, stage: 0 },
        ];
        let d = dimension_estimate(
            &spec,
            &schedule,
            EstimationMethod::BoxCounting { factor: 10, levels: 4 },
            &DimensionOptions::default(),
        )
        .unwrap();
        assert!(d >= 0.4, "box dimension {d}");
    }

    #[test]
    fn short_schedule_rejected() {
        let spec = SetSpec::full("u");
        let schedule = vec![
            SchedulePoint { n: 100, delta: 0.1, stage: 0 },
            SchedulePoint { n: 200, delta: 0.05, stage: 0 },
        ];
        assert!(dimension_estimate(
            &spec,
            &schedule,
            EstimationMethod::Counting { halo: HaloRule::SqrtN },
            &DimensionOptions::default(),
        )
        .is_err());
    }

    #[test]
    fn bisection_helper_reports_no_bracket() {
        // A schedule on which values grow at every s (engineered via a
        // always-diverging clamp) cannot bracket: force it by shrinking
        // the divergence threshold so every value counts as diverging.
        let spec = SetSpec::full("u");
        let schedule: Vec<SchedulePoint> = [1_000u64, 10_000, 100_000]
            .iter()
            .map(|&n| SchedulePoint { n, delta: (n as f64).powf(-0.5), stage: 0 })
            .collect();
        let options = DimensionOptions {
            divergence_threshold: 1e-9,
            ..DimensionOptions::default()
        };
        let err = dimension_estimate(
            &spec,
            &schedule,
            EstimationMethod::Counting { halo: HaloRule::SqrtN },
            &options,
        )
        .unwrap_err();
        assert!(matches!(err, Error::NoBracket { .. }));
    }
}
