use clap::ValueEnum;
use serde_json::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

pub fn render(format: Format, value: &Value, text: &str) -> anyhow::Result<String> {
    Ok(match format {
        Format::Json => serde_json::to_string_pretty(value)? + "\n",
        Format::Csv => to_csv(value)?,
        Format::Text if text.ends_with('\n') => text.to_string(),
        Format::Text => format!("{text}\n"),
    })
}

/// One `path,value` row per JSON leaf, paths joined with `.` and array
/// indices written as numbers (`suites.0.name`).
fn to_csv(value: &Value) -> anyhow::Result<String> {
    let mut rows = Vec::new();
    flatten(value, &mut String::new(), &mut rows);
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["path", "value"])?;
    for (path, leaf) in rows {
        w.write_record([path, leaf])?;
    }
    Ok(String::from_utf8(w.into_inner()?)?)
}

fn flatten(v: &Value, path: &mut String, out: &mut Vec<(String, String)>) {
    let mut descend = |key: &str, child: &Value, path: &mut String| {
        let len = path.len();
        if !path.is_empty() {
            path.push('.');
        }
        path.push_str(key);
        flatten(child, path, out);
        path.truncate(len);
    };
    match v {
        Value::Object(map) if !map.is_empty() => {
            for (k, child) in map {
                descend(k, child, path);
            }
        }
        Value::Array(items) if !items.is_empty() => {
            for (i, child) in items.iter().enumerate() {
                descend(&i.to_string(), child, path);
            }
        }
        Value::String(s) => out.push((path.clone(), s.clone())),
        Value::Null => out.push((path.clone(), String::new())),
        other => out.push((path.clone(), other.to_string())),
    }
}
