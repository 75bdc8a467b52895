use serde_json::Value;

fn is_scalar(v: &Value) -> bool {
    !matches!(v, Value::Array(_) | Value::Object(_))
}

fn is_flat_array(v: &Value) -> bool {
    matches!(v, Value::Array(items) if items.iter().all(is_scalar))
}

fn is_matrix(v: &Value) -> bool {
    matches!(v, Value::Array(rows) if !rows.is_empty() && rows.iter().all(is_flat_array))
}

fn inline(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(items) => {
            let parts: Vec<String> = items.iter().map(inline).collect();
            format!("[{}]", parts.join(", "))
        }
        other => other.to_string(),
    }
}

fn field(key: &str, v: &Value, indent: usize, out: &mut String) {
    let pad = " ".repeat(indent);
    if is_scalar(v) || is_flat_array(v) {
        out.push_str(&format!("{pad}{key}: {}\n", inline(v)));
    } else if is_matrix(v) {
        out.push_str(&format!("{pad}{key}:\n"));
        for row in v.as_array().into_iter().flatten() {
            out.push_str(&format!("{pad}  {}\n", inline(row)));
        }
    } else {
        out.push_str(&format!("{pad}{key}:\n"));
        block(v, indent + 2, out);
    }
}

fn block(v: &Value, indent: usize, out: &mut String) {
    match v {
        Value::Object(map) => {
            for (k, child) in map {
                field(k, child, indent, out);
            }
        }
        Value::Array(items) => {
            for (i, item) in items.iter().enumerate() {
                field(&format!("[{i}]"), item, indent, out);
            }
        }
        scalar => out.push_str(&format!("{}{}\n", " ".repeat(indent), inline(scalar))),
    }
}

/// Indented `key: value` listing. Batches are separated by blank lines.
pub fn render(v: &Value) -> String {
    let mut out = String::new();
    match v {
        Value::Array(docs) => {
            for (i, doc) in docs.iter().enumerate() {
                if i > 0 {
                    out.push('\n');
                }
                let label = doc.get("label").and_then(Value::as_str);
                out.push_str(&format!(
                    "# {}\n",
                    label.map_or(i.to_string(), str::to_string)
                ));
                block(doc, 0, &mut out);
            }
        }
        other => block(other, 0, &mut out),
    }
    out
}
