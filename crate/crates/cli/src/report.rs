//! Canonical report documents: a single JSON map with sorted keys, rationals
//! as "p/q" strings, polynomials in degrevlex-descending order. Identical
//! inputs and seed produce byte-identical documents; telemetry carries
//! deterministic step counts, never wall-clock readings.

use crate::print::{fmt_point, fmt_poly};
use dreg_core::budget::Budget;
use dreg_core::engine::{
    Chart, ComponentRecord, Divisor, Options, RecordStatus, RegularityReport, Verdict,
};
use dreg_core::ratweyl::RankResult;
use serde_json::{json, Map, Value};

pub const SCHEMA: &str = "dreg-report/1";

pub fn rank_value(rank: &RankResult) -> Value {
    match rank {
        RankResult::Finite(r) => json!(r),
        RankResult::Infinite => json!("INFINITE"),
    }
}

pub fn verdict_str(v: Verdict) -> &'static str {
    match v {
        Verdict::Regular => "REGULAR",
        Verdict::Irregular => "IRREGULAR",
        Verdict::Inconclusive => "INCONCLUSIVE",
    }
}

pub fn chart_str(c: Chart) -> String {
    match c {
        Chart::Affine => "affine".to_string(),
        Chart::AtInfinity(k) => format!("infinity-{}", k + 1),
    }
}

fn status_str(s: RecordStatus) -> &'static str {
    match s {
        RecordStatus::Stable => "STABLE",
        RecordStatus::Unstable => "UNSTABLE",
        RecordStatus::Unsampled => "UNSAMPLED",
    }
}

pub fn record_value(rec: &ComponentRecord) -> Value {
    let mut m = Map::new();
    m.insert("chart".into(), json!(chart_str(rec.chart)));
    m.insert("component".into(), json!(fmt_poly(&rec.component)));
    m.insert(
        "points".into(),
        json!(rec.points.iter().map(|p| fmt_point(p)).collect::<Vec<_>>()),
    );
    m.insert(
        "gr_ranks".into(),
        json!(rec
            .gr_ranks
            .iter()
            .map(|g| match g {
                Some(r) => json!(r),
                None => json!("INFINITE"),
            })
            .collect::<Vec<_>>()),
    );
    m.insert("status".into(), json!(status_str(rec.status)));
    m.insert(
        "irr_mult".into(),
        match rec.irr_mult {
            Some(v) => json!(v),
            None => Value::Null,
        },
    );
    m.insert("notes".into(), json!(rec.notes));
    Value::Object(m)
}

pub fn divisor_value(d: &Divisor) -> Value {
    let entries: Vec<Value> = d
        .entries
        .iter()
        .map(|(poly, mult)| json!({"poly": fmt_poly(poly), "mult": mult}))
        .collect();
    json!(entries)
}

pub fn options_value(options: &Options) -> Value {
    json!({
        "seed": options.seed,
        "height_bound": options.height_bound,
        "points_per_component": options.points_per_component,
        "check_infinity": options.check_infinity,
    })
}

pub fn telemetry_value(budgets: &[&Budget]) -> Value {
    let gb: u64 = budgets.iter().map(|b| b.gb_calls()).sum();
    let pairs: u64 = budgets.iter().map(|b| b.pairs_total()).sum();
    let red: u64 = budgets.iter().map(|b| b.reductions()).sum();
    json!({"gb_calls": gb, "s_pairs": pairs, "reductions": red})
}

pub fn regularity_value(
    report: &RegularityReport,
    options: &Options,
    command: &str,
    telemetry: Value,
) -> Value {
    let mut m = Map::new();
    m.insert("schema".into(), json!(SCHEMA));
    m.insert("command".into(), json!(command));
    m.insert("rank".into(), rank_value(&report.rank));
    m.insert("verdict".into(), json!(verdict_str(report.verdict)));
    m.insert("divisor".into(), divisor_value(&report.divisor));
    m.insert(
        "records".into(),
        json!(report.records.iter().map(record_value).collect::<Vec<_>>()),
    );
    m.insert("infinity_checked".into(), json!(report.infinity_checked));
    m.insert("caveats".into(), json!(report.caveats));
    m.insert("options".into(), options_value(options));
    m.insert("telemetry".into(), telemetry);
    Value::Object(m)
}

/// Canonical rendering: pretty JSON plus a trailing newline.
pub fn render(value: &Value) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("serializable");
    text.push('\n');
    text
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn keys_are_sorted() {
        let v = json!({"zebra": 1, "alpha": 2});
        let text = render(&v);
        let za = text.find("zebra").unwrap();
        let al = text.find("alpha").unwrap();
        assert!(al < za);
    }

    #[test]
    fn deterministic_rendering() {
        let v = json!({"rank": 2, "divisor": [{"poly": "x2", "mult": 1}]});
        assert_eq!(render(&v), render(&v));
    }
}
