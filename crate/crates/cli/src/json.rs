//! JSON output helpers: every float is written with 12 significant digits so
//! golden files compare byte-for-byte across platforms.

use serde::Serialize;
use serde_json::{Number, Value};

/// Rounds `v` to 12 significant digits.
pub fn round12(v: f64) -> f64 {
    if !v.is_finite() || v == 0.0 {
        return v;
    }
    format!("{v:.11e}").parse().unwrap_or(v)
}

/// Human-friendly number: 12 significant digits, no trailing zeros.
pub fn num(v: f64) -> String {
    let r = round12(v);
    if r == r.trunc() && r.abs() < 1e15 {
        format!("{}", r as i64)
    } else {
        format!("{r}")
    }
}

pub fn nums(v: &[f64]) -> String {
    format!("[{}]", v.iter().map(|x| num(*x)).collect::<Vec<_>>().join(", "))
}

fn round_value(v: Value) -> Value {
    match v {
        Value::Number(n) if n.is_f64() => {
            let f = round12(n.as_f64().unwrap_or(f64::NAN));
            Number::from_f64(f).map_or(Value::Null, Value::Number)
        }
        Value::Array(a) => Value::Array(a.into_iter().map(round_value).collect()),
        Value::Object(o) => Value::Object(o.into_iter().map(|(k, v)| (k, round_value(v))).collect()),
        other => other,
    }
}

/// Pretty JSON with rounded floats and a trailing newline.
pub fn to_pretty<T: Serialize>(value: &T) -> anyhow::Result<String> {
    let v = round_value(serde_json::to_value(value)?);
    Ok(serde_json::to_string_pretty(&v)? + "\n")
}
