//! CSV and JSON writers for sweep rows and discrepancy reports.
//!
//! CSV floats use `{:.16e}` (17 significant digits) so identical inputs
//! give identical bytes. JSON numbers use the shortest representation that
//! round-trips; non-finite values become `null`.

use std::io::{self, Write};

use serde_json::{json, Map, Value};

use super::config::Scenario;
use super::report::DiscrepancyReport;
use super::scenario::{output_columns, Cell, Row};

pub fn format_float(v: f64) -> String {
    // fold -0.0 into 0.0
    let v = if v == 0.0 { 0.0 } else { v };
    format!("{v:.16e}")
}

fn json_number(v: f64) -> Value {
    let v = if v == 0.0 { 0.0 } else { v };
    serde_json::Number::from_f64(v).map_or(Value::Null, Value::Number)
}

fn opt_text(v: Option<f64>) -> String {
    v.map(format_float).unwrap_or_default()
}

fn opt_json(v: Option<f64>) -> Value {
    v.map_or(Value::Null, json_number)
}

pub fn row_header(scenario: Scenario) -> Vec<String> {
    let mut cols = vec!["index".to_string()];
    cols.extend(scenario.schema().iter().map(|(k, _)| k.to_string()));
    cols.extend(["growth_rate", "growth_units", "dynamo_class", "sources"].map(String::from));
    cols.extend(output_columns(scenario).iter().map(|c| c.to_string()));
    cols.push("status".into());
    cols
}

fn row_record(scenario: Scenario, row: &Row) -> Vec<String> {
    let mut rec = vec![row.index.to_string()];
    rec.extend(row.params.iter().map(|(_, v)| format_float(*v)));
    let n_out = output_columns(scenario).len();
    match &row.outcome {
        Ok(ev) => {
            rec.push(opt_text(ev.gamma));
            rec.push(ev.gamma_units.to_string());
            rec.push(ev.class.map(|c| c.as_str().to_string()).unwrap_or_default());
            rec.push(ev.sources.join(";"));
            rec.extend(ev.outputs.iter().map(|c| match c {
                Cell::Num(v) => format_float(*v),
                Cell::Text(t) => t.clone(),
            }));
        }
        Err(_) => rec.extend(std::iter::repeat_n(String::new(), 4 + n_out)),
    }
    rec.push(row.status());
    rec
}

pub fn write_rows_csv<W: Write>(w: W, scenario: Scenario, rows: &[Row]) -> io::Result<()> {
    let mut out = csv::Writer::from_writer(w);
    out.write_record(row_header(scenario))?;
    for row in rows {
        out.write_record(row_record(scenario, row))?;
    }
    out.flush()
}

pub fn rows_json(scenario: Scenario, rows: &[Row]) -> Value {
    let out_cols = output_columns(scenario);
    let rows: Vec<Value> = rows
        .iter()
        .map(|row| {
            let mut m = Map::new();
            m.insert("index".into(), json!(row.index));
            let params: Map<String, Value> = row.params.iter().map(|(k, v)| (k.to_string(), json_number(*v))).collect();
            m.insert("parameters".into(), Value::Object(params));
            match &row.outcome {
                Ok(ev) => {
                    m.insert("growth_rate".into(), opt_json(ev.gamma));
                    m.insert("growth_units".into(), json!(ev.gamma_units));
                    m.insert("dynamo_class".into(), ev.class.map_or(Value::Null, |c| json!(c.as_str())));
                    m.insert("sources".into(), json!(ev.sources));
                    let outputs: Map<String, Value> = out_cols
                        .iter()
                        .zip(&ev.outputs)
                        .map(|(k, c)| {
                            let v = match c {
                                Cell::Num(x) => json_number(*x),
                                Cell::Text(t) => json!(t),
                            };
                            (k.to_string(), v)
                        })
                        .collect();
                    m.insert("outputs".into(), Value::Object(outputs));
                }
                Err(_) => {
                    for k in ["growth_rate", "growth_units", "dynamo_class", "sources", "outputs"] {
                        m.insert(k.into(), Value::Null);
                    }
                }
            }
            m.insert("status".into(), json!(row.status()));
            Value::Object(m)
        })
        .collect();
    json!({ "scenario": scenario.name(), "rows": rows })
}

pub const REPORT_HEADER: [&str; 9] = [
    "equation",
    "quantity",
    "point",
    "stated_value",
    "oracle_value",
    "abs_gap",
    "rel_gap",
    "verdict",
    "note",
];

pub fn write_report_csv<W: Write>(w: W, report: &DiscrepancyReport) -> io::Result<()> {
    let mut out = csv::Writer::from_writer(w);
    out.write_record(REPORT_HEADER)?;
    for e in &report.entries {
        out.write_record([
            e.equation.to_string(),
            e.quantity.to_string(),
            e.point.clone(),
            format_float(e.stated_value),
            opt_text(e.oracle_value),
            opt_text(e.abs_gap),
            opt_text(e.rel_gap),
            e.verdict.as_str().to_string(),
            e.note.to_string(),
        ])?;
    }
    out.flush()
}

pub fn report_json(report: &DiscrepancyReport) -> Value {
    let entries: Vec<Value> = report
        .entries
        .iter()
        .map(|e| {
            json!({
                "equation": e.equation,
                "quantity": e.quantity,
                "point": e.point,
                "stated_value": json_number(e.stated_value),
                "oracle_value": opt_json(e.oracle_value),
                "abs_gap": opt_json(e.abs_gap),
                "rel_gap": opt_json(e.rel_gap),
                "verdict": e.verdict.as_str(),
                "note": e.note,
            })
        })
        .collect();
    json!({ "entries": entries, "failures": report.failures })
}

pub fn write_json<W: Write>(mut w: W, value: &Value) -> io::Result<()> {
    serde_json::to_writer_pretty(&mut w, value)?;
    w.write_all(b"\n")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cli::config::ScenarioConfig;
    use crate::cli::scenario::run_points;
    use crate::exec::Execution;

    #[test]
    fn csv_uses_fixed_floats_and_lf() {
        let cfg = ScenarioConfig::parse("[chicone_latushkin]\nsweep = kappa -1 0 2\n").unwrap();
        let rows = run_points(cfg.scenario, &cfg.points(), 1e-9, Execution::Sequential);
        let mut buf = Vec::new();
        write_rows_csv(&mut buf, cfg.scenario, &rows).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(!text.contains('\r'));
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(
            lines[0],
            "index,eta,kappa,growth_rate,growth_units,dynamo_class,sources,growth_rate_imag,oscillatory,status"
        );
        assert!(lines[1].starts_with("0,1.0000000000000001e-1,-1.0000000000000000e0,"));
        assert!(lines[2].ends_with(",ok"));
    }

    #[test]
    fn json_keeps_column_order() {
        let cfg = ScenarioConfig::parse("[radial_modes]\n").unwrap();
        let rows = run_points(cfg.scenario, &cfg.points(), 1e-9, Execution::Sequential);
        let v = rows_json(cfg.scenario, &rows);
        let text = serde_json::to_string(&v).unwrap();
        assert!(text.find("\"index\"").unwrap() < text.find("\"status\"").unwrap());
        assert_eq!(v["rows"][0]["outputs"]["oracle_n_plus_re"], json!(-1.0));
    }

    #[test]
    fn non_finite_becomes_null() {
        assert_eq!(json_number(f64::NAN), Value::Null);
        assert_eq!(format_float(f64::INFINITY), "inf");
    }
}
