//! JSON and plain-text renderings of a [`Report`].

use std::fmt::Write as _;

use nuchern_core::{Check, Detail, Report};
use serde_json::{json, Map, Value};

fn number(x: f64) -> Value {
    serde_json::Number::from_f64(x).map(Value::Number).unwrap_or_else(|| Value::String(x.to_string()))
}

pub fn detail_json(d: &Detail) -> Value {
    match d {
        Detail::Text(s) => Value::String(s.clone()),
        Detail::Integer(n) => json!(n),
        Detail::Number(x) => number(*x),
        Detail::Fraction(r) => Value::String(format!("{}/{}", r.numer(), r.denom())),
        Detail::Complex(re, im) => Value::Array(vec![number(*re), number(*im)]),
        Detail::Bool(b) => Value::Bool(*b),
        Detail::List(items) => Value::Array(items.iter().map(detail_json).collect()),
        Detail::Map(entries) => pairs_json(entries),
    }
}

fn pairs_json(entries: &[(String, Detail)]) -> Value {
    let mut map = Map::new();
    for (k, v) in entries {
        map.insert(k.clone(), detail_json(v));
    }
    Value::Object(map)
}

fn check_json(c: &Check) -> Value {
    let mut obj = Map::new();
    obj.insert("name".into(), Value::String(c.name.clone()));
    obj.insert("status".into(), Value::String(c.status.as_str().into()));
    obj.insert("details".into(), pairs_json(&c.details));
    if let Some(t) = c.timing {
        obj.insert("timing".into(), number(t));
    }
    Value::Object(obj)
}

/// `{command, config, checks: [{name, status, details, timing}], overall}`.
pub fn report_json(report: &Report) -> Value {
    json!({
        "command": report.command,
        "config": pairs_json(&report.config),
        "checks": report.checks.iter().map(check_json).collect::<Vec<_>>(),
        "overall": report.overall().as_str(),
    })
}

/// Removes every `timing` field, leaving the deterministic part.
pub fn strip_timing(v: &mut Value) {
    match v {
        Value::Object(map) => {
            map.remove("timing");
            map.values_mut().for_each(strip_timing);
        }
        Value::Array(items) => items.iter_mut().for_each(strip_timing),
        _ => {}
    }
}

pub fn report_text(report: &Report) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "command: {}", report.command);
    let config: Vec<String> = report.config.iter().map(|(k, v)| format!("{k}={v}")).collect();
    let _ = writeln!(out, "config: {}", config.join(" "));
    for c in &report.checks {
        let _ = write!(out, "{:<4} {}", c.status.as_str().to_uppercase(), c.name);
        for (k, v) in &c.details {
            let _ = write!(out, "  {k}={v}");
        }
        if let Some(t) = c.timing {
            let _ = write!(out, "  ({t:.3}s)");
        }
        out.push('\n');
    }
    let failed = report.failures().count();
    let _ = writeln!(out, "overall: {} ({} checks, {failed} failed)", report.overall().as_str(), report.checks.len());
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::Rational64;

    #[test]
    fn schema_and_encodings() {
        let mut r = Report::new("demo");
        r.config.push(("seed".into(), Detail::Integer(42)));
        let mut c = Check::pass("x")
            .with("value", Detail::List(vec![Detail::Fraction(Rational64::new(-1, 2)), Detail::Fraction(Rational64::from(0))]))
            .with("z", Detail::Complex(1.5, -2.0))
            .with("inf", f64::INFINITY);
        c.timing = Some(0.25);
        r.push(c);
        let mut v = report_json(&r);
        assert_eq!(v["overall"], "pass");
        assert_eq!(v["checks"][0]["details"]["value"], json!(["-1/2", "0/1"]));
        assert_eq!(v["checks"][0]["details"]["z"], json!([1.5, -2.0]));
        assert_eq!(v["checks"][0]["details"]["inf"], json!("inf"));
        assert_eq!(v["checks"][0]["timing"], json!(0.25));
        strip_timing(&mut v);
        assert!(v["checks"][0].get("timing").is_none());
        assert!(report_text(&r).contains("PASS x  value=[-1/2, 0/1]"));
    }
}
