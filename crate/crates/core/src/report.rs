//! JSON report envelope `{"tool", "version", "config", "result"}` with every
//! float written to 17 significant digits.

use serde::Serialize;
use serde_json::Value;

use crate::error::Result;

pub const TOOL: &str = "rmspace";

#[derive(Serialize)]
struct Envelope<'a, C: Serialize, R: Serialize> {
    tool: &'a str,
    version: &'a str,
    config: &'a C,
    result: &'a R,
}

/// Render the envelope as indented JSON text ending in a newline.
pub fn render<C: Serialize, R: Serialize>(config: &C, result: &R) -> Result<String> {
    let value = serde_json::to_value(Envelope { tool: TOOL, version: env!("CARGO_PKG_VERSION"), config, result })?;
    let mut out = String::new();
    write_value(&value, 0, &mut out);
    out.push('\n');
    Ok(out)
}

/// `{:.16e}` keeps 17 significant digits, enough to round-trip any f64.
fn write_number(n: &serde_json::Number, out: &mut String) {
    if n.is_f64() {
        out.push_str(&format!("{:.16e}", n.as_f64().expect("f64 number")));
    } else {
        out.push_str(&n.to_string());
    }
}

fn indent(level: usize, out: &mut String) {
    for _ in 0..level {
        out.push_str("  ");
    }
}

fn write_value(v: &Value, level: usize, out: &mut String) {
    match v {
        Value::Null => out.push_str("null"),
        Value::Bool(b) => out.push_str(if *b { "true" } else { "false" }),
        Value::Number(n) => write_number(n, out),
        Value::String(s) => out.push_str(&serde_json::to_string(s).expect("strings serialize")),
        Value::Array(items) => {
            if items.is_empty() {
                out.push_str("[]");
                return;
            }
            // short rows of scalars (complex pairs, coefficient rows) stay on one line
            if items.len() <= 4 && items.iter().all(|x| !x.is_array() && !x.is_object()) {
                out.push('[');
                for (i, x) in items.iter().enumerate() {
                    if i > 0 {
                        out.push_str(", ");
                    }
                    write_value(x, level, out);
                }
                out.push(']');
                return;
            }
            out.push_str("[\n");
            for (i, x) in items.iter().enumerate() {
                indent(level + 1, out);
                write_value(x, level + 1, out);
                out.push_str(if i + 1 < items.len() { ",\n" } else { "\n" });
            }
            indent(level, out);
            out.push(']');
        }
        Value::Object(map) => {
            if map.is_empty() {
                out.push_str("{}");
                return;
            }
            out.push_str("{\n");
            for (i, (k, x)) in map.iter().enumerate() {
                indent(level + 1, out);
                out.push_str(&serde_json::to_string(k).expect("keys serialize"));
                out.push_str(": ");
                write_value(x, level + 1, out);
                out.push_str(if i + 1 < map.len() { ",\n" } else { "\n" });
            }
            indent(level, out);
            out.push('}');
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn envelope_and_float_format() {
        let text = render(&json!({"p": 2.0}), &json!({"value": 1.0 / 3.0, "count": 3, "pair": [0.5, -1.0]})).unwrap();
        let parsed: Value = serde_json::from_str(&text).unwrap();
        assert_eq!(parsed["tool"], "rmspace");
        assert_eq!(parsed["result"]["count"], 3);
        assert_eq!(parsed["result"]["value"].as_f64().unwrap(), 1.0 / 3.0);
        assert!(text.contains("3.3333333333333331e-1"));
        assert!(text.contains("[5.0000000000000000e-1, -1.0000000000000000e0]"));
    }

    #[test]
    fn non_finite_values_become_null() {
        let text = render(&json!({}), &json!({"x": f64::NAN})).unwrap();
        assert!(text.contains("\"x\": null"));
    }
}
