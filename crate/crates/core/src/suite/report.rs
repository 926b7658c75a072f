//! Report records and their JSON-lines and CSV encodings.
//!
//! Numbers are written with 17 significant digits in exponent form, which is
//! locale independent and round-trips every finite `f64`. Non-finite values
//! are written as `null`.

use std::fmt::Write as _;
use std::io::Write;
use std::str::FromStr;

use serde_json::Value;

use crate::error::{Error, Result};
use crate::inequalities::{InequalityReport, Param, Params};

/// One case of a suite run.
#[derive(Debug, Clone, PartialEq)]
pub struct SuiteRecord {
    pub report: InequalityReport,
    pub seed: u64,
    pub case_index: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Jsonl,
    Csv,
}

impl FromStr for ReportFormat {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "jsonl" => Ok(ReportFormat::Jsonl),
            "csv" => Ok(ReportFormat::Csv),
            other => Err(Error::domain(format!("unknown report format `{other}` (expected jsonl or csv)"))),
        }
    }
}

/// Aggregate over a set of records.
#[derive(Debug, Clone, PartialEq)]
pub struct SuiteSummary {
    pub cases: usize,
    pub passed: usize,
    pub failed: usize,
    /// Failed cases whose evaluation raised an error.
    pub errors: usize,
    /// Smallest `slack + error_budget` margin over finite bound records.
    pub min_slack: Option<f64>,
    /// Largest identity residual.
    pub max_residual: Option<f64>,
    /// Largest closed-form/quadrature relative disagreement.
    pub max_constants_delta: Option<f64>,
}

fn fold_max(acc: Option<f64>, v: f64) -> Option<f64> {
    Some(acc.map_or(v, |m| m.max(v)))
}

impl SuiteSummary {
    pub fn from_records(records: &[SuiteRecord]) -> Self {
        let mut s = SuiteSummary {
            cases: records.len(),
            passed: 0,
            failed: 0,
            errors: 0,
            min_slack: None,
            max_residual: None,
            max_constants_delta: None,
        };
        for r in records {
            let rep = &r.report;
            if rep.pass {
                s.passed += 1;
            } else {
                s.failed += 1;
                if rep.params.contains_key("error") {
                    s.errors += 1;
                }
            }
            if !rep.lhs.is_finite() {
                continue;
            }
            match rep.name.as_str() {
                "lemma1" => s.max_residual = fold_max(s.max_residual, rep.lhs),
                "constants" => s.max_constants_delta = fold_max(s.max_constants_delta, rep.lhs),
                _ => s.min_slack = Some(s.min_slack.map_or(rep.slack, |m| m.min(rep.slack))),
            }
        }
        s
    }

    pub fn all_passed(&self) -> bool {
        self.failed == 0
    }

    fn to_json(&self) -> String {
        let opt = |v: Option<f64>| v.map_or("null".to_string(), format_number);
        format!(
            "{{\"cases\":{},\"passed\":{},\"failed\":{},\"errors\":{},\"min_slack\":{},\"max_residual\":{},\"max_constants_delta\":{}}}",
            self.cases,
            self.passed,
            self.failed,
            self.errors,
            opt(self.min_slack),
            opt(self.max_residual),
            opt(self.max_constants_delta)
        )
    }
}

/// `v` with 17 significant digits, or `null` when not finite.
pub fn format_number(v: f64) -> String {
    if v.is_finite() {
        format!("{v:.16e}")
    } else {
        "null".to_string()
    }
}

fn json_string(s: &str) -> String {
    serde_json::to_string(s).expect("strings always serialize")
}

fn params_json(p: &Params) -> String {
    let mut out = String::from("{");
    for (i, (k, v)) in p.iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        let value = match v {
            Param::Num(x) => format_number(*x),
            Param::Text(t) => json_string(t),
        };
        let _ = write!(out, "{}:{}", json_string(k), value);
    }
    out.push('}');
    out
}

fn record_json(r: &SuiteRecord) -> String {
    let rep = &r.report;
    format!(
        "{{\"inequality\":{},\"params\":{},\"lhs\":{},\"rhs\":{},\"slack\":{},\"pass\":{},\"error_budget\":{},\"seed\":{},\"case_index\":{}}}",
        json_string(&rep.name),
        params_json(&rep.params),
        format_number(rep.lhs),
        format_number(rep.rhs),
        format_number(rep.slack),
        rep.pass,
        format_number(rep.error_budget),
        r.seed,
        r.case_index
    )
}

/// One JSON object per record, then a `{"summary": ...}` footer line.
pub fn write_jsonl<W: Write>(mut out: W, records: &[SuiteRecord]) -> Result<SuiteSummary> {
    for r in records {
        writeln!(out, "{}", record_json(r))?;
    }
    let summary = SuiteSummary::from_records(records);
    writeln!(out, "{{\"summary\":{}}}", summary.to_json())?;
    out.flush()?;
    Ok(summary)
}

const CSV_HEADER: [&str; 9] = ["inequality", "params", "lhs", "rhs", "slack", "pass", "error_budget", "seed", "case_index"];

/// A header row, one row per record with `params` as a JSON object, and a
/// final row whose `inequality` is `summary` and whose `params` holds the
/// summary object.
pub fn write_csv<W: Write>(out: W, records: &[SuiteRecord]) -> Result<SuiteSummary> {
    let csv_err = |e: csv::Error| Error::Io(e.to_string());
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER).map_err(csv_err)?;
    for r in records {
        let rep = &r.report;
        w.write_record([
            rep.name.clone(),
            params_json(&rep.params),
            format_number(rep.lhs),
            format_number(rep.rhs),
            format_number(rep.slack),
            rep.pass.to_string(),
            format_number(rep.error_budget),
            r.seed.to_string(),
            r.case_index.to_string(),
        ])
        .map_err(csv_err)?;
    }
    let summary = SuiteSummary::from_records(records);
    w.write_record(["summary", &summary.to_json(), "", "", "", "", "", "", ""]).map_err(csv_err)?;
    w.flush()?;
    Ok(summary)
}

fn bad(line: usize, what: &str) -> Error {
    Error::domain(format!("report line {line}: {what}"))
}

fn json_f64(v: &Value) -> f64 {
    v.as_f64().unwrap_or(f64::NAN)
}

/// Parses the records of a JSON-lines report, skipping the summary footer.
pub fn read_jsonl(text: &str) -> Result<Vec<SuiteRecord>> {
    let mut out = Vec::new();
    for (n, line) in text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty()) {
        let v: Value = serde_json::from_str(line).map_err(|e| bad(n + 1, &e.to_string()))?;
        if v.get("summary").is_some() {
            continue;
        }
        let name = v["inequality"].as_str().ok_or_else(|| bad(n + 1, "missing inequality"))?;
        let obj = v["params"].as_object().ok_or_else(|| bad(n + 1, "missing params"))?;
        let mut params = Params::new();
        for (k, pv) in obj {
            let p = match pv {
                Value::String(s) => Param::Text(s.clone()),
                Value::Number(x) => Param::Num(x.as_f64().unwrap_or(f64::NAN)),
                _ => return Err(bad(n + 1, &format!("parameter `{k}` has unsupported type"))),
            };
            params.insert(k.clone(), p);
        }
        let report = InequalityReport {
            name: name.to_string(),
            params,
            lhs: json_f64(&v["lhs"]),
            rhs: json_f64(&v["rhs"]),
            slack: json_f64(&v["slack"]),
            pass: v["pass"].as_bool().ok_or_else(|| bad(n + 1, "missing pass"))?,
            error_budget: json_f64(&v["error_budget"]),
        };
        let seed = v["seed"].as_u64().ok_or_else(|| bad(n + 1, "missing seed"))?;
        let case_index = v["case_index"].as_u64().ok_or_else(|| bad(n + 1, "missing case_index"))? as usize;
        out.push(SuiteRecord { report, seed, case_index });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn record(lhs: f64, pass: bool) -> SuiteRecord {
        let mut params = Params::new();
        params.insert("a".into(), Param::Num(0.1));
        params.insert("f".into(), Param::Text("x^2 \"quoted\"".into()));
        let mut report = InequalityReport::with_budget("thm5", params, lhs, 1.0, 1e-12);
        report.pass = pass;
        SuiteRecord { report, seed: u64::MAX, case_index: 3 }
    }

    #[test]
    fn numbers_have_17_digits() {
        assert_eq!(format_number(0.1), "1.0000000000000001e-1");
        assert_eq!(format_number(-2.5), "-2.5000000000000000e0");
        assert_eq!(format_number(f64::NAN), "null");
        for v in [0.1, 1.0 / 3.0, 6.02e23, -1e-300, f64::MAX] {
            assert_eq!(format_number(v).parse::<f64>().unwrap(), v);
        }
    }

    #[test]
    fn jsonl_round_trip() {
        let recs = vec![record(0.25, true), record(f64::NAN, false)];
        let mut buf = Vec::new();
        let s = write_jsonl(&mut buf, &recs).unwrap();
        assert_eq!((s.cases, s.passed, s.failed), (2, 1, 1));
        let text = String::from_utf8(buf).unwrap();
        assert!(text.lines().last().unwrap().starts_with("{\"summary\":"));
        let back = read_jsonl(&text).unwrap();
        assert_eq!(back[0], recs[0]);
        assert!(back[1].report.lhs.is_nan());
        let first: Value = serde_json::from_str(text.lines().next().unwrap()).unwrap();
        let keys: Vec<&str> = first.as_object().unwrap().keys().map(|k| k.as_str()).collect();
        let mut expected = CSV_HEADER.to_vec();
        expected.sort();
        let mut keys = keys;
        keys.sort();
        assert_eq!(keys, expected);
    }

    #[test]
    fn csv_layout() {
        let mut buf = Vec::new();
        write_csv(&mut buf, &[record(0.5, true)]).unwrap();
        let mut rdr = csv::Reader::from_reader(buf.as_slice());
        assert_eq!(rdr.headers().unwrap().iter().collect::<Vec<_>>(), CSV_HEADER.to_vec());
        let rows: Vec<csv::StringRecord> = rdr.records().map(|r| r.unwrap()).collect();
        assert_eq!(rows.len(), 2);
        assert_eq!(&rows[0][0], "thm5");
        let params: Value = serde_json::from_str(&rows[0][1]).unwrap();
        assert_eq!(params["f"], "x^2 \"quoted\"");
        assert_eq!(&rows[1][0], "summary");
    }

    #[test]
    fn summary_margins() {
        let mut recs = vec![record(0.25, true), record(0.5, true)];
        recs[1].report.name = "lemma1".into();
        let s = SuiteSummary::from_records(&recs);
        assert_eq!(s.min_slack, Some(0.75));
        assert_eq!(s.max_residual, Some(0.5));
        assert!(s.all_passed());
        assert_eq!(SuiteSummary::from_records(&[]).min_slack, None);
    }
}
