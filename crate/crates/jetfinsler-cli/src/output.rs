//! Deterministic JSON/CSV emission and atomic file writes.
//!
//! JSON numbers carry 17 significant digits, CSV numbers 12 — round-trip
//! fidelity for regression tests versus readability.  Identical inputs
//! produce byte-identical output.

use std::fmt::Write as _;
use std::fs;
use std::io;
use std::path::Path;

/// 17 significant digits (JSON).
pub fn fmt_f64_json(v: f64) -> String {
    let v = if v == 0.0 { 0.0 } else { v };
    format!("{v:.16e}")
}

/// 12 significant digits (CSV).
pub fn fmt_f64_csv(v: f64) -> String {
    let v = if v == 0.0 { 0.0 } else { v };
    format!("{v:.11e}")
}

/// Minimal JSON document model with deterministic key order.
pub enum Json {
    Num(f64),
    Int(u64),
    Str(String),
    Bool(bool),
    Arr(Vec<Json>),
    Obj(Vec<(&'static str, Json)>),
}

impl Json {
    pub fn from_row(row: &[f64]) -> Json {
        Json::Arr(row.iter().map(|&v| Json::Num(v)).collect())
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Json {
        Json::Arr(rows.iter().map(|r| Json::from_row(r)).collect())
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        self.write(&mut out, 0);
        out.push('\n');
        out
    }

    fn write(&self, out: &mut String, indent: usize) {
        match self {
            Json::Num(v) => out.push_str(&fmt_f64_json(*v)),
            Json::Int(v) => {
                let _ = write!(out, "{v}");
            }
            Json::Str(s) => {
                out.push('"');
                for c in s.chars() {
                    match c {
                        '"' => out.push_str("\\\""),
                        '\\' => out.push_str("\\\\"),
                        '\n' => out.push_str("\\n"),
                        c if (c as u32) < 0x20 => {
                            let _ = write!(out, "\\u{:04x}", c as u32);
                        }
                        c => out.push(c),
                    }
                }
                out.push('"');
            }
            Json::Bool(b) => out.push_str(if *b { "true" } else { "false" }),
            Json::Arr(items) => {
                if items.is_empty() {
                    out.push_str("[]");
                    return;
                }
                // matrices and vectors of numbers stay on one line
                let flat = items
                    .iter()
                    .all(|i| matches!(i, Json::Num(_) | Json::Int(_) | Json::Str(_)));
                if flat {
                    out.push('[');
                    for (n, item) in items.iter().enumerate() {
                        if n > 0 {
                            out.push_str(", ");
                        }
                        item.write(out, indent);
                    }
                    out.push(']');
                } else {
                    out.push_str("[\n");
                    for (n, item) in items.iter().enumerate() {
                        pad(out, indent + 1);
                        item.write(out, indent + 1);
                        if n + 1 < items.len() {
                            out.push(',');
                        }
                        out.push('\n');
                    }
                    pad(out, indent);
                    out.push(']');
                }
            }
            Json::Obj(fields) => {
                if fields.is_empty() {
                    out.push_str("{}");
                    return;
                }
                out.push_str("{\n");
                for (n, (key, value)) in fields.iter().enumerate() {
                    pad(out, indent + 1);
                    let _ = write!(out, "\"{key}\": ");
                    value.write(out, indent + 1);
                    if n + 1 < fields.len() {
                        out.push(',');
                    }
                    out.push('\n');
                }
                pad(out, indent);
                out.push('}');
            }
        }
    }
}

fn pad(out: &mut String, indent: usize) {
    for _ in 0..indent {
        out.push_str("  ");
    }
}

/// Writes via a temp file in the same directory and renames, so failed runs
/// never leave partial output behind.
pub fn write_atomic(path: &Path, content: &str) -> io::Result<()> {
    let tmp = path.with_extension(format!(
        "{}tmp",
        path.extension()
            .map(|e| format!("{}.", e.to_string_lossy()))
            .unwrap_or_default()
    ));
    fs::write(&tmp, content)?;
    fs::rename(&tmp, path)
}

/// Prints to stdout, or writes atomically to `path` and prints the path.
pub fn emit(path: Option<&str>, content: &str) -> io::Result<()> {
    match path {
        None => {
            print!("{content}");
            Ok(())
        }
        Some(p) => {
            write_atomic(Path::new(p), content)?;
            println!("{p}");
            Ok(())
        }
    }
}
