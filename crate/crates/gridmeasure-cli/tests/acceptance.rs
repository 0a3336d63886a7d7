//! Acceptance suite: one test per criterion, each printing a single
//! PASS/FAIL line (run with `--nocapture` to see the lines for passing
//! criteria). Tolerances are pinned in the assertions, not configurable.

use std::fs;
use std::path::PathBuf;
use std::process::Command;
use std::time::{Duration, Instant};

use gridmeasure::grid::{GridScale, GridSet};
use gridmeasure::measure::{
    coarsen_partition, h_delta_s, h_delta_s_oracle, h_delta_s_value, halo_for, theorem_rhs,
    MeasureParams,
};
use gridmeasure::SetSpec;

const LOG2_OVER_LOG3: f64 = 0.6309297535714574;

fn finish(criterion: u32, name: &str, budget: Duration, started: Instant, result: Result<String, String>) {
    let elapsed = started.elapsed();
    match &result {
        Ok(detail) if elapsed <= budget => {
            println!(
                "[acceptance] criterion {criterion} ({name}): PASS in {:.2?} — {detail}",
                elapsed
            );
        }
        Ok(detail) => {
            println!(
                "[acceptance] criterion {criterion} ({name}): FAIL — runtime {:.2?} over budget {:.2?} ({detail})",
                elapsed, budget
            );
            panic!("criterion {criterion} exceeded its runtime budget");
        }
        Err(detail) => {
            println!("[acceptance] criterion {criterion} ({name}): FAIL — {detail}");
            panic!("criterion {criterion} failed: {detail}");
        }
    }
}

struct SplitMix(u64);

impl SplitMix {
    fn next(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }
}

fn random_gridset(rng: &mut SplitMix, scale: GridScale, max_run: u64, max_gap: u64) -> GridSet {
    let n = scale.n();
    let mut runs = Vec::new();
    let mut cursor = rng.next() % (max_gap + 1);
    while cursor < n {
        let len = (1 + rng.next() % max_run).min(n - cursor + 1);
        runs.push((cursor, len));
        cursor += len + 1 + rng.next() % max_gap;
    }
    GridSet::from_runs(runs, scale).unwrap()
}

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_gridmeasure"))
}

fn write_spec(name: &str, body: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("acceptance");
    fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    fs::write(&path, body).unwrap();
    path
}

/// Criterion 1: stage-matched Cantor value at the critical exponent with
/// the sqrt-n halo must land in [0.9, 1.15] (analytic target 1).
#[test]
fn criterion_1_cantor_measure_at_critical_exponent() {
    let started = Instant::now();
    let result = (|| {
        let mut details = Vec::new();
        for m in [4u32, 5, 6] {
            let n = 3u64.pow(2 * m);
            let scale = GridScale::new(n).map_err(|e| e.to_string())?;
            let delta = 3f64.powi(-(m as i32)) + 1.0 / n as f64;
            let params =
                MeasureParams::new(LOG2_OVER_LOG3, delta, scale).map_err(|e| e.to_string())?;
            let spec = SetSpec::cantor("cantor-thirds", 1.0 / 3.0, m);
            let halo = halo_for(n);
            let report = theorem_rhs(&spec, &params, halo).map_err(|e| e.to_string())?;
            details.push(format!("m={m}: value {:.4} (halo {halo})", report.value));
            if !(0.9..=1.15).contains(&report.value) {
                return Err(format!(
                    "value {:.4} outside [0.9, 1.15] at m={m}, n={n}, halo={halo} ({})",
                    report.value,
                    details.join("; ")
                ));
            }
        }
        Ok(details.join("; "))
    })();
    finish(1, "cantor measure at critical exponent", Duration::from_secs(5), started, result);
}

/// Criterion 2: the dimension subcommand recovers log2/log3 for the
/// middle-thirds Cantor set from a 4-point schedule.
#[test]
fn criterion_2_cantor_dimension_via_cli() {
    let started = Instant::now();
    let result = (|| {
        let spec = write_spec(
            "cantor.json",
            r#"{"id": "cantor-thirds", "variant": "cantor", "lambda": 0.3333333333333333, "stage": 6}"#,
        );
        let out = bin()
            .args(["dimension", "--spec"])
            .arg(&spec)
            .output()
            .map_err(|e| e.to_string())?;
        if out.status.code() != Some(0) {
            return Err(format!(
                "exit code {:?}: {}",
                out.status.code(),
                String::from_utf8_lossy(&out.stderr)
            ));
        }
        let report: serde_json::Value =
            serde_json::from_slice(&out.stdout).map_err(|e| e.to_string())?;
        let schedule_len = report["schedule"].as_array().map(|a| a.len()).unwrap_or(0);
        if schedule_len != 4 {
            return Err(format!("expected a 4-point schedule, got {schedule_len}"));
        }
        let d = report["dimension"].as_f64().ok_or("missing dimension")?;
        if (d - 0.6309).abs() <= 0.02 {
            Ok(format!("dimension {d:.4} vs log2/log3 = 0.6309"))
        } else {
            Err(format!("dimension {d:.4} not within 0.6309 ± 0.02"))
        }
    })();
    finish(2, "cantor dimension via cli", Duration::from_secs(30), started, result);
}

/// Criterion 3: divergence law. At fixed stage 6 and the critical
/// exponent, log h is affine in log delta with slope s - 1, and the value
/// grows without bound as delta shrinks.
#[test]
fn criterion_3_divergence_law() {
    let started = Instant::now();
    let result = (|| {
        let n = 3u64.pow(14);
        let scale = GridScale::new(n).map_err(|e| e.to_string())?;
        let spec = SetSpec::cantor("cantor-thirds", 1.0 / 3.0, 6);
        let halo = halo_for(n);
        let mut ln_delta = Vec::new();
        let mut ln_value = Vec::new();
        let mut values = Vec::new();
        for k in 8..=11 {
            let delta = 3f64.powi(-k);
            let params =
                MeasureParams::new(LOG2_OVER_LOG3, delta, scale).map_err(|e| e.to_string())?;
            let report = theorem_rhs(&spec, &params, halo).map_err(|e| e.to_string())?;
            ln_delta.push(delta.ln());
            ln_value.push(report.value.ln());
            values.push(report.value);
        }
        // Values must increase as delta decreases (k grows).
        for pair in values.windows(2) {
            if pair[1] <= pair[0] {
                return Err(format!("values not increasing as delta shrinks: {values:?}"));
            }
        }
        let mean_x: f64 = ln_delta.iter().sum::<f64>() / 4.0;
        let mean_y: f64 = ln_value.iter().sum::<f64>() / 4.0;
        let sxx: f64 = ln_delta.iter().map(|x| (x - mean_x).powi(2)).sum();
        let sxy: f64 = ln_delta
            .iter()
            .zip(&ln_value)
            .map(|(x, y)| (x - mean_x) * (y - mean_y))
            .sum();
        let slope = sxy / sxx;
        let want = LOG2_OVER_LOG3 - 1.0;
        if (slope - want).abs() <= 0.02 {
            Ok(format!(
                "slope {slope:.4} vs s-1 = {want:.4}; values {:.2} → {:.2}",
                values[0], values[3]
            ))
        } else {
            Err(format!("slope {slope:.4} not within {want:.4} ± 0.02"))
        }
    })();
    finish(3, "divergence law", Duration::from_secs(5), started, result);
}

/// Criterion 4: the closed form and the exhaustive oracle agree bit for
/// bit on all 2^17 subsets of the n = 16 grid for every listed budget and
/// exponent.
#[test]
fn criterion_4_oracle_equivalence_exhaustive() {
    let started = Instant::now();
    let result = (|| {
        let scale = GridScale::new(16).map_err(|e| e.to_string())?;
        let budgets = [1u64, 2, 3, 5, 8];
        let s_values = [0.25, 0.5, LOG2_OVER_LOG3, 1.0];
        let mut checked = 0u64;
        for mask in 0u32..(1 << 17) {
            let set = GridSet::from_indices((0..=16u64).filter(|i| mask & (1 << i) != 0), scale)
                .map_err(|e| e.to_string())?;
            for &m in &budgets {
                let delta = m as f64 / 16.0;
                for &s in &s_values {
                    let params = MeasureParams::new(s, delta, scale).map_err(|e| e.to_string())?;
                    let (closed, _) = h_delta_s_value(&set, &params).map_err(|e| e.to_string())?;
                    let oracle = h_delta_s_oracle(&set, &params).map_err(|e| e.to_string())?;
                    if closed.to_bits() != oracle.to_bits() {
                        return Err(format!(
                            "mismatch at mask {mask:#x}, m={m}, s={s}: {closed} vs {oracle}"
                        ));
                    }
                    checked += 1;
                }
            }
        }
        Ok(format!("{checked} evaluations bit-identical"))
    })();
    finish(4, "oracle equivalence, all subsets of n=16", Duration::from_secs(60), started, result);
}

/// Criterion 5: at s = 1 the discrete measure and the discrete Lebesgue
/// measure differ by at most 1/n on random sets, for every tested delta.
#[test]
fn criterion_5_s1_lebesgue_link() {
    let started = Instant::now();
    let result = (|| {
        let n = 1_000_000u64;
        let scale = GridScale::new(n).map_err(|e| e.to_string())?;
        let deltas = [1e-6, 1e-5, 1e-4, 1e-2, 0.5];
        let mut rng = SplitMix(0x5eed_2024);
        let mut worst: f64 = 0.0;
        for _ in 0..100 {
            let set = random_gridset(&mut rng, scale, 40_000, 30_000);
            let d = set.discrete_lebesgue();
            for &delta in &deltas {
                let params = MeasureParams::new(1.0, delta, scale).map_err(|e| e.to_string())?;
                let (h, _) = h_delta_s_value(&set, &params).map_err(|e| e.to_string())?;
                let diff = (h - d).abs();
                worst = worst.max(diff);
                if diff > 1.0 / n as f64 {
                    return Err(format!(
                        "|h - d| = {diff:e} exceeds 1/n at delta {delta}, card {}",
                        set.cardinality()
                    ));
                }
            }
        }
        Ok(format!("worst |h - d| = {worst:.3e} <= 1/n = 1e-6"))
    })();
    finish(5, "s = 1 Lebesgue link", Duration::from_secs(5), started, result);
}

/// Criterion 6: coarsening keeps the underlying set, respects the
/// eta + delta diameter bound, and never increases the cost.
#[test]
fn criterion_6_coarsening_contract() {
    let started = Instant::now();
    let result = (|| {
        let mut rng = SplitMix(0xc0a2_5e11);
        let s_values = [0.25, 0.5, LOG2_OVER_LOG3, 1.0];
        for trial in 0..1000 {
            let n = 50 + rng.next() % 1950;
            let scale = GridScale::new(n).map_err(|e| e.to_string())?;
            let set = random_gridset(&mut rng, scale, 30, 12);
            if set.is_empty() {
                continue;
            }
            let budget = 1 + rng.next() % 8;
            let delta = budget as f64 / n as f64;
            let s = s_values[(rng.next() % 4) as usize];
            let params = MeasureParams::new(s, delta, scale).map_err(|e| e.to_string())?;
            let (_, part) = h_delta_s(&set, &params).map_err(|e| e.to_string())?;
            let eta = delta * (1.0 + (rng.next() % 80) as f64 / 8.0);
            let out = coarsen_partition(&part, eta).map_err(|e| e.to_string())?;
            if out.covered_set().as_ref() != Some(&set) {
                return Err(format!("trial {trial}: output covers a different set"));
            }
            let bound = (eta + delta) * (1.0 + 1e-12);
            if out.max_diameter() > bound {
                return Err(format!(
                    "trial {trial}: max diameter {} exceeds eta + delta = {}",
                    out.max_diameter(),
                    eta + delta
                ));
            }
            if out.cost() > part.cost() * (1.0 + 1e-12) {
                return Err(format!(
                    "trial {trial}: cost rose from {} to {}",
                    part.cost(),
                    out.cost()
                ));
            }
        }
        Ok("1000 random partitions: set preserved, diameters within eta + delta, cost non-increasing".to_string())
    })();
    finish(6, "coarsening contract", Duration::from_secs(10), started, result);
}

/// Criterion 7: at s = 1 on the unit interval the measured value matches
/// H^1([0,1]) = 1 within 3 halo / n + 1/n for every delta in the sweep.
#[test]
fn criterion_7_unit_interval_at_s1() {
    let started = Instant::now();
    let result = (|| {
        let n = 10_000_000u64;
        let scale = GridScale::new(n).map_err(|e| e.to_string())?;
        let spec = SetSpec::full("unit");
        let halo = halo_for(n);
        let tolerance = 3.0 * halo as f64 / n as f64 + 1.0 / n as f64;
        let mut worst: f64 = 0.0;
        for k in 1..=4 {
            let delta = 10f64.powi(-k);
            let params = MeasureParams::new(1.0, delta, scale).map_err(|e| e.to_string())?;
            let report = theorem_rhs(&spec, &params, halo).map_err(|e| e.to_string())?;
            let err = (report.value - 1.0).abs();
            worst = worst.max(err);
            if err > tolerance {
                return Err(format!(
                    "value {} at delta {delta} deviates {err:e} > {tolerance:e}",
                    report.value
                ));
            }
        }
        Ok(format!("worst |value - 1| = {worst:.3e} <= {tolerance:.3e}"))
    })();
    finish(7, "unit interval at s = 1", Duration::from_secs(5), started, result);
}

/// Criterion 8: on the reciprocal point family (Hausdorff dimension 0,
/// box dimension 1/2) the compare subcommand reports a counting estimate
/// at most 0.2 and a box estimate at least 0.4.
#[test]
fn criterion_8_box_counting_divergence() {
    let started = Instant::now();
    let result = (|| {
        let spec = write_spec(
            "reciprocals.json",
            r#"{"id": "reciprocals", "variant": "point_family", "kind": "reciprocals", "count": 10000}"#,
        );
        let out = bin()
            .args(["compare", "--spec"])
            .arg(&spec)
            .args(["--n", "100000000"])
            .output()
            .map_err(|e| e.to_string())?;
        if out.status.code() != Some(0) {
            return Err(format!(
                "exit code {:?}: {}",
                out.status.code(),
                String::from_utf8_lossy(&out.stderr)
            ));
        }
        let report: serde_json::Value =
            serde_json::from_slice(&out.stdout).map_err(|e| e.to_string())?;
        let counting = report["counting_dimension"].as_f64().ok_or("missing counting")?;
        let boxdim = report["box_dimension"].as_f64().ok_or("missing box")?;
        if counting > 0.2 {
            return Err(format!("counting estimate {counting:.3} exceeds 0.2"));
        }
        if boxdim < 0.4 {
            return Err(format!("box estimate {boxdim:.3} below 0.4"));
        }
        Ok(format!("counting {counting:.3} <= 0.2, box {boxdim:.3} >= 0.4"))
    })();
    finish(8, "box-counting divergence on reciprocals", Duration::from_secs(30), started, result);
}
