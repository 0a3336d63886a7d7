//! Implementations behind the CLI subcommands.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use gridmeasure::generators::{cantor_intervals, cantor_kept_ratio, render, SetSpec, SetVariant};
use gridmeasure::grid::GridScale;
use gridmeasure::measure::{
    box_count_estimate, classical_cover_measure, dimension_estimate, lebesgue_bounds,
    theorem_rhs, DimensionOptions, EstimationMethod, HaloRule, MeasureParams, MeasureReport,
    ReportKind, ReportStatus, SchedulePoint,
};
use gridmeasure::RealInterval;

/// Errors carrying their process exit code: 2 for configuration problems,
/// 3 for a too-coarse grid, 4 for a missing dimension bracket, 1 otherwise.
#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    pub fn config(message: impl Into<String>) -> Self {
        CliError { code: 2, message: message.into() }
    }
}

impl From<gridmeasure::Error> for CliError {
    fn from(err: gridmeasure::Error) -> Self {
        let code = match &err {
            gridmeasure::Error::GridTooCoarse { .. } => 3,
            gridmeasure::Error::NoBracket { .. } => 4,
            gridmeasure::Error::InvalidInput(_)
            | gridmeasure::Error::InvalidS { .. }
            | gridmeasure::Error::StageTooLarge { .. } => 2,
            _ => 1,
        };
        CliError { code, message: err.to_string() }
    }
}

pub fn load_spec(path: &Path) -> Result<SetSpec, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::config(format!("cannot read spec file {}: {e}", path.display())))?;
    let spec: SetSpec = serde_json::from_str(&text)
        .map_err(|e| CliError::config(format!("bad spec JSON in {}: {e}", path.display())))?;
    spec.validate().map_err(CliError::from)?;
    Ok(spec)
}

pub fn parse_halo_rule(halo: Option<u64>, rule: Option<&str>) -> Result<HaloRule, CliError> {
    if let Some(k) = halo {
        if k == 0 {
            return Err(CliError::config("halo must be at least 1"));
        }
        return Ok(HaloRule::Fixed(k));
    }
    match rule {
        None => Ok(HaloRule::SqrtN),
        Some("sqrt_n") => Ok(HaloRule::SqrtN),
        Some(other) => match other.strip_prefix("fixed:") {
            Some(k) => {
                let k: u64 = k
                    .parse()
                    .map_err(|_| CliError::config(format!("bad halo rule {other:?}")))?;
                parse_halo_rule(Some(k), None)
            }
            None => Err(CliError::config(format!(
                "unknown halo rule {other:?}; expected sqrt_n or fixed:<k>"
            ))),
        },
    }
}

fn halo_rule_name(rule: HaloRule) -> String {
    match rule {
        HaloRule::SqrtN => "sqrt_n".to_string(),
        HaloRule::Fixed(k) => format!("fixed:{k}"),
    }
}

// ---------------------------------------------------------------- measure

pub enum MeasureKind {
    Discrete,
    Classical { resolution: u64 },
}

/// Real-interval description of a spec, for the classical comparator.
fn spec_intervals(spec: &SetSpec) -> Result<Vec<RealInterval>, CliError> {
    let ivs = match &spec.variant {
        SetVariant::IntervalUnion { intervals } => intervals
            .iter()
            .map(|iv| RealInterval::new(iv[0], iv[1]))
            .collect::<gridmeasure::Result<Vec<_>>>()?,
        SetVariant::Cantor { lambda, stage } => cantor_intervals(*lambda, *stage)?,
        SetVariant::Full => vec![RealInterval::new(0.0, 1.0)?],
        SetVariant::Empty => Vec::new(),
        SetVariant::PointFamily { count, .. } => {
            let mut ivs = vec![RealInterval::new(0.0, 0.0)?];
            for k in 1..=*count {
                let p = 1.0 / k as f64;
                ivs.push(RealInterval::new(p, p)?);
            }
            ivs
        }
    };
    Ok(ivs)
}

pub fn cmd_measure(
    spec: &SetSpec,
    n: u64,
    delta: f64,
    s: f64,
    halo_rule: HaloRule,
    kind: MeasureKind,
) -> Result<MeasureReport, CliError> {
    match kind {
        MeasureKind::Discrete => {
            let scale = GridScale::new(n)?;
            let params = MeasureParams::new(s, delta, scale)?;
            Ok(theorem_rhs(spec, &params, halo_rule.halo_for(n))?)
        }
        MeasureKind::Classical { resolution } => {
            let ivs = spec_intervals(spec)?;
            let value = classical_cover_measure(&ivs, delta, s, resolution)?;
            Ok(MeasureReport {
                spec_id: spec.id.clone(),
                n: resolution,
                delta,
                s,
                halo: 0,
                kind: ReportKind::ClassicalCover,
                value,
                piece_count: ivs.len() as u64,
                status: ReportStatus::Ok,
            })
        }
    }
}

// ------------------------------------------------------------------ sweep

#[derive(Debug, Clone, Serialize, Deserialize, Default)]
pub struct SweepConfigFile {
    pub spec: Option<SetSpec>,
    #[serde(default)]
    pub scales: Vec<u64>,
    #[serde(default)]
    pub deltas: Vec<f64>,
    pub delta_rule: Option<String>,
    #[serde(default)]
    pub s_values: Vec<f64>,
    pub halo_rule: Option<String>,
    pub output_path: Option<String>,
    pub format: Option<String>,
}

#[derive(Debug, Clone)]
pub enum DeltaSpec {
    List(Vec<f64>),
    /// δ = n^exponent per scale.
    Power(f64),
}

impl DeltaSpec {
    pub fn deltas_for(&self, n: u64) -> Vec<f64> {
        match self {
            DeltaSpec::List(list) => list.clone(),
            DeltaSpec::Power(p) => vec![(n as f64).powf(*p)],
        }
    }
}

/// Parses a delta rule of the form `n^-0.75`.
pub fn parse_delta_rule(rule: &str) -> Result<DeltaSpec, CliError> {
    let exponent = rule
        .strip_prefix("n^")
        .and_then(|e| e.parse::<f64>().ok())
        .ok_or_else(|| {
            CliError::config(format!("bad delta rule {rule:?}; expected n^<exponent>"))
        })?;
    if exponent >= 0.0 {
        return Err(CliError::config("delta rule exponent must be negative"));
    }
    Ok(DeltaSpec::Power(exponent))
}

pub struct SweepPlan {
    pub spec: SetSpec,
    pub scales: Vec<u64>,
    pub deltas: DeltaSpec,
    pub s_values: Vec<f64>,
    pub halo_rule: HaloRule,
}

/// Evaluates every (n, delta, s) cell. Cell failures become skipped rows;
/// rows come back sorted by (spec_id, n, delta, s) for byte-deterministic
/// output.
pub fn cmd_sweep(plan: &SweepPlan) -> Result<Vec<MeasureReport>, CliError> {
    if plan.scales.is_empty() {
        return Err(CliError::config("sweep needs at least one scale"));
    }
    if plan.s_values.is_empty() {
        return Err(CliError::config("sweep needs at least one s value"));
    }
    let mut rows = Vec::new();
    for &n in &plan.scales {
        let halo = plan.halo_rule.halo_for(n);
        let scale = match GridScale::new(n) {
            Ok(sc) => sc,
            Err(err) => {
                for delta in plan.deltas.deltas_for(n) {
                    for &s in &plan.s_values {
                        rows.push(skipped_row(&plan.spec, n, delta, s, halo, &err));
                    }
                }
                continue;
            }
        };
        for delta in plan.deltas.deltas_for(n) {
            for &s in &plan.s_values {
                let row = MeasureParams::new(s, delta, scale)
                    .and_then(|params| theorem_rhs(&plan.spec, &params, halo))
                    .unwrap_or_else(|err| skipped_row(&plan.spec, n, delta, s, halo, &err));
                rows.push(row);
            }
        }
    }
    rows.sort_by(|a, b| {
        a.spec_id
            .cmp(&b.spec_id)
            .then(a.n.cmp(&b.n))
            .then(a.delta.total_cmp(&b.delta))
            .then(a.s.total_cmp(&b.s))
    });
    Ok(rows)
}

fn skipped_row(
    spec: &SetSpec,
    n: u64,
    delta: f64,
    s: f64,
    halo: u64,
    err: &gridmeasure::Error,
) -> MeasureReport {
    let reason = match err {
        gridmeasure::Error::GridTooCoarse { .. } => "grid_too_coarse".to_string(),
        other => {
            let mut text: String = other
                .to_string()
                .chars()
                .map(|c| if c == ',' || c.is_whitespace() { '_' } else { c })
                .collect();
            text.truncate(80);
            text
        }
    };
    MeasureReport {
        spec_id: spec.id.clone(),
        n,
        delta,
        s,
        halo,
        kind: ReportKind::DiscreteH,
        value: 0.0,
        piece_count: 0,
        status: ReportStatus::Skipped(reason),
    }
}

// -------------------------------------------------------------- dimension

#[derive(Debug, Serialize)]
pub struct SchedulePointOut {
    pub n: u64,
    pub delta: f64,
    pub stage: u32,
}

#[derive(Debug, Serialize)]
pub struct DimensionOutput {
    pub spec_id: String,
    pub method: String,
    pub dimension: f64,
    pub analytic_dimension: Option<f64>,
    pub halo_rule: String,
    pub schedule: Vec<SchedulePointOut>,
}

/// Stage-matched schedule for a spec: four points with increasing scales.
///
/// Cantor specs walk the deepest four stages whose squared denominator
/// scale stays below 10^8 (boundary effects of the halo decay
/// geometrically with the stage). Interval-like specs sweep decade scales
/// with δ = n^(-3/4). Point families start past `count^2`, where every
/// rendered point is isolated on the grid.
pub fn default_schedule(spec: &SetSpec) -> Result<Vec<SchedulePoint>, CliError> {
    match &spec.variant {
        SetVariant::Cantor { lambda, .. } => {
            let (r_num, r_den) = cantor_kept_ratio(*lambda)?;
            let ratio = r_num as f64 / r_den as f64;
            let mut m_hi = 1u32;
            while m_hi < 15 {
                let next = (r_den as f64).powi(2 * (m_hi + 1) as i32);
                if next > 1e8 {
                    break;
                }
                m_hi += 1;
            }
            let m_lo = m_hi.saturating_sub(3).max(1);
            Ok((m_lo..=m_hi)
                .map(|m| {
                    let n = r_den.pow(2 * m);
                    SchedulePoint {
                        n,
                        delta: ratio.powi(m as i32) + 1.0 / n as f64,
                        stage: m,
                    }
                })
                .collect())
        }
        SetVariant::PointFamily { count, .. } => {
            let base = (4 * count.saturating_mul(*count)).max(1_000_000);
            Ok((0..4)
                .map(|j| {
                    let n = base * 4u64.pow(j);
                    SchedulePoint { n, delta: (n as f64).powf(-0.75), stage: 0 }
                })
                .collect())
        }
        _ => Ok([10_000u64, 100_000, 1_000_000, 10_000_000]
            .iter()
            .map(|&n| SchedulePoint { n, delta: (n as f64).powf(-0.75), stage: 0 })
            .collect()),
    }
}

/// Default halo for dimension work: the sqrt rule, except for point
/// families where the halo must stay thinner than the gaps between
/// rendered points.
pub fn default_dimension_halo(spec: &SetSpec) -> HaloRule {
    match spec.variant {
        SetVariant::PointFamily { .. } => HaloRule::Fixed(1),
        _ => HaloRule::SqrtN,
    }
}

pub fn cmd_dimension(
    spec: &SetSpec,
    schedule: &[SchedulePoint],
    halo: HaloRule,
    method: &str,
) -> Result<DimensionOutput, CliError> {
    let est_method = match method {
        "counting" => EstimationMethod::Counting { halo },
        "box" | "box_counting" => EstimationMethod::BoxCounting { factor: 10, levels: 4 },
        other => {
            return Err(CliError::config(format!(
                "unknown method {other:?}; expected counting or box"
            )))
        }
    };
    let dimension = dimension_estimate(spec, schedule, est_method, &DimensionOptions::default())?;
    Ok(DimensionOutput {
        spec_id: spec.id.clone(),
        method: match est_method {
            EstimationMethod::Counting { .. } => "counting".to_string(),
            EstimationMethod::BoxCounting { .. } => "box_counting".to_string(),
        },
        dimension,
        analytic_dimension: gridmeasure::analytic_reference(spec).map(|r| r.dimension),
        halo_rule: halo_rule_name(halo),
        schedule: schedule
            .iter()
            .map(|p| SchedulePointOut { n: p.n, delta: p.delta, stage: p.stage })
            .collect(),
    })
}

// ---------------------------------------------------------------- compare

#[derive(Debug, Serialize)]
pub struct CompareOutput {
    pub spec_id: String,
    pub box_scale: u64,
    pub counting_dimension: f64,
    pub box_dimension: f64,
    pub difference: f64,
    pub box_counts: Vec<(u64, u64)>,
}

/// Counting-based and box-counting estimates side by side.
///
/// The counting side uses a unit halo: comparing the two methods only
/// makes sense when the halo is thinner than the structure the box
/// counter sees (a sqrt-n halo would weld the accumulation tail of a
/// point family into a fat quasi-interval).
pub fn cmd_compare(spec: &SetSpec, box_n: u64) -> Result<CompareOutput, CliError> {
    let schedule = default_schedule(spec)?;
    let counting = dimension_estimate(
        spec,
        &schedule,
        EstimationMethod::Counting { halo: HaloRule::Fixed(1) },
        &DimensionOptions::default(),
    )?;

    if !box_n.is_multiple_of(10_000) {
        return Err(CliError::config(format!(
            "box scale {box_n} must be divisible by 10^4 for decade box sizes"
        )));
    }
    let scale = GridScale::new(box_n)?;
    let set = render(spec, scale)?;
    let sizes: Vec<u64> = (1..=4).map(|j| box_n / 10u64.pow(j)).collect();
    let est = box_count_estimate(&set, &sizes)?;

    Ok(CompareOutput {
        spec_id: spec.id.clone(),
        box_scale: box_n,
        counting_dimension: counting,
        box_dimension: est.dimension,
        difference: est.dimension - counting,
        box_counts: est.counts,
    })
}

// --------------------------------------------------------------- lebesgue

pub fn cmd_lebesgue(
    spec: &SetSpec,
    n: u64,
    halo_rule: HaloRule,
) -> Result<Vec<MeasureReport>, CliError> {
    let scale = GridScale::new(n)?;
    let halo = halo_rule.halo_for(n);
    let (lower, upper) = lebesgue_bounds(spec, scale, halo)?;
    let row = |kind, value| MeasureReport {
        spec_id: spec.id.clone(),
        n,
        delta: 0.0,
        s: 1.0,
        halo,
        kind,
        value,
        piece_count: 0,
        status: ReportStatus::Ok,
    };
    Ok(vec![
        row(ReportKind::LebesgueLower, lower),
        row(ReportKind::LebesgueUpper, upper),
    ])
}
