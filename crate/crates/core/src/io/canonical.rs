use serde::Serialize;
use serde_json::{Map, Number, Value};

/// Rounds to 6 significant digits and folds negative zero.
pub fn round_sig6(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return if x.is_finite() { 0.0 } else { x };
    }
    let r: f64 = format!("{x:.5e}").parse().expect("formatted float parses");
    if r == 0.0 {
        0.0
    } else {
        r
    }
}

/// Canonical form of a JSON value: object keys sorted, floats at 6
/// significant digits.
pub fn canonical_value(v: Value) -> Value {
    match v {
        Value::Object(m) => {
            let mut entries: Vec<(String, Value)> = m.into_iter().collect();
            entries.sort_by(|a, b| a.0.cmp(&b.0));
            let mut out = Map::new();
            for (k, v) in entries {
                out.insert(k, canonical_value(v));
            }
            Value::Object(out)
        }
        Value::Array(a) => Value::Array(a.into_iter().map(canonical_value).collect()),
        Value::Number(n) if n.is_f64() => {
            let x = round_sig6(n.as_f64().expect("f64 number"));
            if x.fract() == 0.0 && x.abs() < 1e15 {
                Value::Number(Number::from(x as i64))
            } else {
                Number::from_f64(x).map(Value::Number).unwrap_or(Value::Null)
            }
        }
        other => other,
    }
}

/// Pretty-printed canonical JSON with a trailing newline.
pub fn to_canonical_string<T: Serialize>(value: &T) -> String {
    let v = serde_json::to_value(value).expect("engine types serialize to JSON");
    let mut s = serde_json::to_string_pretty(&canonical_value(v)).expect("values print");
    s.push('\n');
    s
}

/// Single-line canonical JSON, for JSONL.
pub fn to_canonical_line<T: Serialize>(value: &T) -> String {
    let v = serde_json::to_value(value).expect("engine types serialize to JSON");
    serde_json::to_string(&canonical_value(v)).expect("values print")
}
