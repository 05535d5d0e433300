//! Report assembly: every command produces a versioned JSON value
//! (`"schema": 1`), and the markdown form is rendered from that JSON so
//! the two can never drift apart.

use serde_json::{json, Map, Value};

/// Wraps a report body with the schema version and command name.
pub fn envelope(command: &str, body: Value) -> Value {
    let mut map = Map::new();
    map.insert("schema".into(), json!(1));
    map.insert("command".into(), json!(command));
    if let Value::Object(fields) = body {
        for (k, v) in fields {
            map.insert(k, v);
        }
    } else {
        map.insert("result".into(), body);
    }
    Value::Object(map)
}

fn scalar_text(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("null".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        _ => None,
    }
}

fn inline_text(v: &Value) -> String {
    scalar_text(v).unwrap_or_else(|| v.to_string())
}

/// True when every entry is an object with identical scalar-valued keys
/// (renderable as a table).
fn uniform_rows(items: &[Value]) -> Option<Vec<String>> {
    let first = items.first()?.as_object()?;
    let keys: Vec<String> = first.keys().cloned().collect();
    for item in items {
        let obj = item.as_object()?;
        if obj.keys().cloned().collect::<Vec<_>>() != keys {
            return None;
        }
        if obj.values().any(|v| scalar_text(v).is_none()) {
            return None;
        }
    }
    Some(keys)
}

fn render_value(out: &mut String, key: &str, v: &Value, depth: usize) {
    let indent = "  ".repeat(depth);
    match v {
        Value::Array(items) => {
            if items.is_empty() {
                out.push_str(&format!("{indent}- {key}: []\n"));
            } else if let Some(keys) = uniform_rows(items) {
                out.push_str(&format!("{indent}- {key}:\n\n"));
                out.push_str(&format!("| {} |\n", keys.join(" | ")));
                out.push_str(&format!(
                    "|{}\n",
                    keys.iter().map(|_| "---|").collect::<String>()
                ));
                for item in items {
                    let row: Vec<String> = keys
                        .iter()
                        .map(|k| inline_text(&item[k.as_str()]))
                        .collect();
                    out.push_str(&format!("| {} |\n", row.join(" | ")));
                }
                out.push('\n');
            } else if items.iter().all(|x| scalar_text(x).is_some()) {
                let rendered: Vec<String> = items.iter().map(inline_text).collect();
                out.push_str(&format!("{indent}- {key}: {}\n", rendered.join(", ")));
            } else {
                out.push_str(&format!("{indent}- {key}:\n"));
                for (i, item) in items.iter().enumerate() {
                    render_value(out, &format!("[{i}]"), item, depth + 1);
                }
            }
        }
        Value::Object(fields) => {
            out.push_str(&format!("{indent}- {key}:\n"));
            for (k, val) in fields {
                render_value(out, k, val, depth + 1);
            }
        }
        scalar => out.push_str(&format!("{indent}- {key}: {}\n", inline_text(scalar))),
    }
}

/// Deterministic markdown rendering of a report value.
pub fn render_markdown(report: &Value) -> String {
    let mut out = String::new();
    let Some(fields) = report.as_object() else {
        return inline_text(report) + "\n";
    };
    let title = fields
        .get("command")
        .and_then(Value::as_str)
        .unwrap_or("report");
    out.push_str(&format!("# {title}\n\n"));
    for (k, v) in fields {
        if k == "command" || k == "schema" {
            continue;
        }
        render_value(&mut out, k, v, 0);
    }
    out
}
