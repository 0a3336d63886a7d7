//! Declarative descriptions of standard subsets of [0, 1] and their grid
//! renderings.
//!
//! Cantor-type constructions are carried out in exact rational arithmetic
//! (stage-matched denominators), so a rendering at `n = 3^k` hits interval
//! endpoints exactly instead of drifting with floating point.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::{GridScale, GridSet};

/// A closed real interval `[lo, hi]` inside `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RealInterval {
    pub lo: f64,
    pub hi: f64,
}

impl RealInterval {
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if !(lo.is_finite() && hi.is_finite() && lo <= hi) {
            return Err(Error::invalid(format!("bad interval [{lo}, {hi}]")));
        }
        Ok(RealInterval { lo, hi })
    }

    pub fn length(self) -> f64 {
        self.hi - self.lo
    }
}

/// Deepest supported Cantor stage; past this the interval count or the
/// exact denominator would overflow 64-bit arithmetic for common ratios.
pub const MAX_CANTOR_STAGE: u32 = 30;

fn default_point_count() -> u64 {
    10_000
}

/// Families of point sets with known accumulation behaviour.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PointKind {
    /// `{0} ∪ {1/k : k >= 1}`, truncated at `count` reciprocals.
    Reciprocals,
}

/// The shape of a standard set, tagged for the JSON schema.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "variant", rename_all = "snake_case")]
pub enum SetVariant {
    IntervalUnion {
        intervals: Vec<[f64; 2]>,
    },
    Cantor {
        lambda: f64,
        #[serde(default)]
        stage: u32,
    },
    PointFamily {
        kind: PointKind,
        #[serde(default = "default_point_count")]
        count: u64,
    },
    Full,
    Empty,
}

/// A named, declarative description of a subset of `[0, 1]`.
///
/// ```
/// use gridmeasure::generators::SetSpec;
///
/// let spec: SetSpec = serde_json::from_str(
///     r#"{"id": "thirds", "variant": "cantor", "lambda": 0.3333333333333333, "stage": 2}"#,
/// ).unwrap();
/// spec.validate().unwrap();
/// ```
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SetSpec {
    pub id: String,
    #[serde(flatten)]
    pub variant: SetVariant,
}

impl SetSpec {
    pub fn interval_union(id: impl Into<String>, intervals: Vec<[f64; 2]>) -> Self {
        SetSpec { id: id.into(), variant: SetVariant::IntervalUnion { intervals } }
    }

    pub fn cantor(id: impl Into<String>, lambda: f64, stage: u32) -> Self {
        SetSpec { id: id.into(), variant: SetVariant::Cantor { lambda, stage } }
    }

    pub fn reciprocals(id: impl Into<String>, count: u64) -> Self {
        SetSpec {
            id: id.into(),
            variant: SetVariant::PointFamily { kind: PointKind::Reciprocals, count },
        }
    }

    pub fn full(id: impl Into<String>) -> Self {
        SetSpec { id: id.into(), variant: SetVariant::Full }
    }

    pub fn empty(id: impl Into<String>) -> Self {
        SetSpec { id: id.into(), variant: SetVariant::Empty }
    }

    pub fn validate(&self) -> Result<()> {
        if self.id.is_empty() {
            return Err(Error::invalid("spec id must be non-empty"));
        }
        match &self.variant {
            SetVariant::IntervalUnion { intervals } => {
                for iv in intervals {
                    let [lo, hi] = *iv;
                    if !(lo.is_finite() && hi.is_finite() && (0.0..=1.0).contains(&lo) && lo <= hi && hi <= 1.0) {
                        return Err(Error::invalid(format!(
                            "interval [{lo}, {hi}] must satisfy 0 <= lo <= hi <= 1"
                        )));
                    }
                }
                Ok(())
            }
            SetVariant::Cantor { lambda, stage } => {
                if !(lambda.is_finite() && *lambda > 0.0 && *lambda < 1.0) {
                    return Err(Error::invalid(format!("cantor lambda must lie in (0, 1), got {lambda}")));
                }
                if *stage > MAX_CANTOR_STAGE {
                    return Err(Error::StageTooLarge { stage: *stage, limit: MAX_CANTOR_STAGE });
                }
                Ok(())
            }
            SetVariant::PointFamily { count, .. } => {
                if *count == 0 || *count > 10_000_000 {
                    return Err(Error::invalid(format!(
                        "point family count must lie in [1, 10^7], got {count}"
                    )));
                }
                Ok(())
            }
            SetVariant::Full | SetVariant::Empty => Ok(()),
        }
    }

    /// Same spec with the Cantor stage replaced; other variants are
    /// unchanged. Used by stage-matched schedules.
    pub fn with_stage(&self, stage: u32) -> SetSpec {
        let mut out = self.clone();
        if let SetVariant::Cantor { stage: st, .. } = &mut out.variant {
            *st = stage;
        }
        out
    }
}

/// Best rational approximation `p / q` of `x` with `q` bounded, via
/// continued fractions. Recovers exact small fractions (1/3, 1/2, 2/5, …)
/// from their f64 representations.
fn ratio_from_f64(x: f64, max_den: u64) -> (u64, u64) {
    let mut value = x;
    let (mut p0, mut q0, mut p1, mut q1) = (0u64, 1u64, 1u64, 0u64);
    for _ in 0..40 {
        let a = value.floor();
        if a < 0.0 || a > max_den as f64 {
            break;
        }
        let a = a as u64;
        let p2 = match a.checked_mul(p1).and_then(|v| v.checked_add(p0)) {
            Some(v) => v,
            None => break,
        };
        let q2 = match a.checked_mul(q1).and_then(|v| v.checked_add(q0)) {
            Some(v) => v,
            None => break,
        };
        if q2 > max_den {
            break;
        }
        (p0, q0, p1, q1) = (p1, q1, p2, q2);
        let frac = value - a as f64;
        if frac.abs() < 1e-12 {
            break;
        }
        value = 1.0 / frac;
    }
    if q1 == 0 {
        (0, 1)
    } else {
        (p1, q1)
    }
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a.max(1)
}

/// The kept-segment ratio `(1 - lambda) / 2` as an exact reduced fraction,
/// recovered from the f64 `lambda` by continued fractions. The denominator
/// drives stage-matched grid scales (`n = den^(2m)` and the like).
pub fn cantor_kept_ratio(lambda: f64) -> Result<(u64, u64)> {
    if !(lambda > 0.0 && lambda < 1.0) {
        return Err(Error::invalid(format!(
            "cantor lambda must lie in (0, 1), got {lambda}"
        )));
    }
    let (lp, lq) = ratio_from_f64(lambda, 1_000_000);
    let r_num_raw = lq - lp;
    let r_den_raw = 2 * lq;
    let g = gcd(r_num_raw, r_den_raw);
    Ok((r_num_raw / g, r_den_raw / g))
}

/// Exact stage-`m` Cantor intervals as integer fractions over one common
/// denominator: returns `(den, endpoints)` with each interval `[a, b]`
/// meaning `[a/den, b/den]`.
fn cantor_fractions(lambda: f64, stage: u32) -> Result<(i128, Vec<(i128, i128)>)> {
    if stage > MAX_CANTOR_STAGE {
        return Err(Error::StageTooLarge { stage, limit: MAX_CANTOR_STAGE });
    }
    let (rn, rd) = cantor_kept_ratio(lambda)?;
    let (r_num, r_den) = (rn as i128, rd as i128);

    // Common denominator r_den^stage; guard the 128-bit head-room we rely
    // on for the index arithmetic in `render`.
    let mut den: i128 = 1;
    for _ in 0..stage {
        den = den
            .checked_mul(r_den)
            .filter(|d| *d < (1i128 << 62))
            .ok_or(Error::StageTooLarge { stage, limit: MAX_CANTOR_STAGE })?;
    }

    let mut intervals: Vec<(i128, i128)> = vec![(0, den)];
    for level in 0..stage {
        let mut next = Vec::with_capacity(intervals.len() * 2);
        for (a, b) in intervals {
            // (b - a) = r_num^level * r_den^(stage - level), so the division
            // by r_den below is exact at every level.
            let kept = (b - a) / r_den * r_num;
            next.push((a, a + kept));
            next.push((b - kept, b));
        }
        intervals = next;
        let _ = level;
    }
    Ok((den, intervals))
}

/// The 2^stage closed intervals of the middle-λ Cantor construction.
///
/// ```
/// use gridmeasure::generators::cantor_intervals;
///
/// let c1 = cantor_intervals(1.0 / 3.0, 1).unwrap();
/// assert_eq!(c1.len(), 2);
/// assert_eq!((c1[0].lo, c1[0].hi), (0.0, 1.0 / 3.0));
/// assert_eq!((c1[1].lo, c1[1].hi), (2.0 / 3.0, 1.0));
/// ```
pub fn cantor_intervals(lambda: f64, stage: u32) -> Result<Vec<RealInterval>> {
    let (den, fractions) = cantor_fractions(lambda, stage)?;
    Ok(fractions
        .into_iter()
        .map(|(a, b)| RealInterval { lo: a as f64 / den as f64, hi: b as f64 / den as f64 })
        .collect())
}

/// Renders a spec to the grid: all indices `i` with `i/n` in the described
/// closed set. Point families map each point to its nearest index with ties
/// toward 0.
pub fn render(spec: &SetSpec, scale: GridScale) -> Result<GridSet> {
    spec.validate()?;
    let n = scale.n();
    match &spec.variant {
        SetVariant::Full => Ok(GridSet::full(scale)),
        SetVariant::Empty => Ok(GridSet::empty(scale)),
        SetVariant::IntervalUnion { intervals } => {
            let mut runs = Vec::with_capacity(intervals.len());
            for &[lo, hi] in intervals {
                let i_lo = (lo * n as f64).ceil() as u64;
                let i_hi = ((hi * n as f64).floor() as u64).min(n);
                if i_lo <= i_hi {
                    runs.push((i_lo, i_hi - i_lo + 1));
                }
            }
            GridSet::from_runs(runs, scale)
        }
        SetVariant::Cantor { lambda, stage } => {
            let (den, fractions) = cantor_fractions(*lambda, *stage)?;
            let n_i = n as i128;
            let mut runs = Vec::with_capacity(fractions.len());
            for (a, b) in fractions {
                // i/n >= a/den  <=>  i * den >= a * n, exactly in integers.
                let i_lo = (a * n_i + den - 1).div_euclid(den);
                let i_hi = (b * n_i).div_euclid(den);
                if i_lo <= i_hi {
                    runs.push((i_lo as u64, (i_hi - i_lo + 1) as u64));
                }
            }
            GridSet::from_runs(runs, scale)
        }
        SetVariant::PointFamily { kind: PointKind::Reciprocals, count } => {
            let mut indices = Vec::with_capacity(*count as usize + 1);
            indices.push(0);
            for k in 1..=*count {
                let q = n / k;
                let r = n % k;
                // Nearest index to n/k, ties toward 0.
                let idx = if 2 * r > k { q + 1 } else { q };
                indices.push(idx.min(n));
            }
            GridSet::from_indices(indices, scale)
        }
    }
}

/// Analytically known dimension (and measure at that dimension, when the
/// literature pins it) for a spec.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AnalyticReference {
    pub dimension: f64,
    pub measure_at_dimension: Option<f64>,
}

/// Reference values for specs whose Hausdorff dimension is classical:
/// interval unions have dimension 1 and measure equal to total length,
/// middle-λ Cantor sets have dimension `log 2 / log(2/(1-λ))`, and the
/// reciprocal family is countable, hence dimension 0.
pub fn analytic_reference(spec: &SetSpec) -> Option<AnalyticReference> {
    match &spec.variant {
        SetVariant::IntervalUnion { intervals } => {
            let total: f64 = intervals.iter().map(|iv| iv[1] - iv[0]).sum();
            Some(AnalyticReference { dimension: 1.0, measure_at_dimension: Some(total) })
        }
        SetVariant::Cantor { lambda, .. } => {
            let dimension = 2f64.ln() / (2.0 / (1.0 - lambda)).ln();
            let measure = if (*lambda - 1.0 / 3.0).abs() < 1e-12 {
                Some(1.0)
            } else {
                None
            };
            Some(AnalyticReference { dimension, measure_at_dimension: measure })
        }
        SetVariant::PointFamily { .. } => {
            Some(AnalyticReference { dimension: 0.0, measure_at_dimension: None })
        }
        SetVariant::Full => {
            Some(AnalyticReference { dimension: 1.0, measure_at_dimension: Some(1.0) })
        }
        SetVariant::Empty => {
            Some(AnalyticReference { dimension: 0.0, measure_at_dimension: Some(0.0) })
        }
    }
}
