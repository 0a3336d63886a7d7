//! Deterministic CSV and JSON rendering of measure reports.
//!
//! CSV floats carry 17 significant digits so every row round-trips through
//! f64 (and through the JSON schema) without loss; identical inputs always
//! produce identical bytes.

use gridmeasure::measure::MeasureReport;

pub const CSV_HEADER: &str = "spec_id,n,delta,s,halo,kind,value,piece_count,status";

/// 17 significant digits, scientific notation: enough to round-trip f64.
pub fn fmt_f64(v: f64) -> String {
    format!("{v:.16e}")
}

pub fn report_to_csv_row(r: &MeasureReport) -> String {
    let status: String = r.status.clone().into();
    format!(
        "{},{},{},{},{},{},{},{},{}",
        r.spec_id,
        r.n,
        fmt_f64(r.delta),
        fmt_f64(r.s),
        r.halo,
        r.kind.as_str(),
        fmt_f64(r.value),
        r.piece_count,
        status
    )
}

pub fn reports_to_csv(reports: &[MeasureReport]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in reports {
        out.push_str(&report_to_csv_row(r));
        out.push('\n');
    }
    out
}

pub fn reports_to_json(reports: &[MeasureReport]) -> String {
    let mut s = serde_json::to_string_pretty(reports).expect("reports serialize");
    s.push('\n');
    s
}

/// Parses one CSV data row back into a report; the inverse of
/// [`report_to_csv_row`], exercised by the round-trip tests.
#[cfg(test)]
pub fn report_from_csv_row(row: &str) -> Result<MeasureReport, String> {
    let fields: Vec<&str> = row.split(',').collect();
    if fields.len() != 9 {
        return Err(format!("expected 9 fields, got {}", fields.len()));
    }
    let parse_f = |s: &str| s.parse::<f64>().map_err(|e| format!("bad float {s:?}: {e}"));
    let parse_u = |s: &str| s.parse::<u64>().map_err(|e| format!("bad integer {s:?}: {e}"));
    let kind = match fields[5] {
        "discrete_h" => gridmeasure::measure::ReportKind::DiscreteH,
        "lebesgue_lower" => gridmeasure::measure::ReportKind::LebesgueLower,
        "lebesgue_upper" => gridmeasure::measure::ReportKind::LebesgueUpper,
        "classical_cover" => gridmeasure::measure::ReportKind::ClassicalCover,
        "box_count" => gridmeasure::measure::ReportKind::BoxCount,
        other => return Err(format!("unknown kind {other:?}")),
    };
    Ok(MeasureReport {
        spec_id: fields[0].to_string(),
        n: parse_u(fields[1])?,
        delta: parse_f(fields[2])?,
        s: parse_f(fields[3])?,
        halo: parse_u(fields[4])?,
        kind,
        value: parse_f(fields[6])?,
        piece_count: parse_u(fields[7])?,
        status: gridmeasure::measure::ReportStatus::try_from(fields[8].to_string())?,
    })
}
