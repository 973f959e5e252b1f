//! Output documents.
//!
//! A [`Doc`] renders either as JSON, with every float written to 17
//! significant digits so that it reads back bit for bit, or as an indented
//! human-readable text form. Object keys keep their insertion order.

use remcalc::{Complex64, ComplexMatrix, Poly};

use crate::expr::{format_complex, format_poly, format_real, Var};

#[derive(Debug, Clone, PartialEq)]
pub enum Doc {
    Null,
    Bool(bool),
    Int(i64),
    Float(f64),
    Str(String),
    Complex(Complex64),
    /// JSON `{"coeffs": [...], "expr": "..."}`.
    Poly(Poly, Var),
    /// JSON `{"order": q, "entries": [...]}`, row-major.
    Matrix(ComplexMatrix),
    List(Vec<Doc>),
    Object(Vec<(String, Doc)>),
}

impl Doc {
    pub fn object() -> Self {
        Doc::Object(Vec::new())
    }

    /// Appends a field; no-op on anything but an object.
    pub fn with(mut self, key: &str, value: impl Into<Doc>) -> Self {
        if let Doc::Object(fields) = &mut self {
            fields.push((key.to_string(), value.into()));
        }
        self
    }

    pub fn poly(p: &Poly) -> Self {
        Doc::Poly(p.clone(), Var::X)
    }

    pub fn complex_list(values: &[Complex64]) -> Self {
        Doc::List(values.iter().map(|&c| Doc::Complex(c)).collect())
    }

    pub fn to_json(&self) -> String {
        let mut out = String::new();
        write_json(self, 0, &mut out);
        out.push('\n');
        out
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        match self {
            Doc::Object(fields) => write_fields(fields, 0, &mut out),
            other => {
                out.push_str(&inline_text(other));
                out.push('\n');
            }
        }
        out
    }
}

impl From<&str> for Doc {
    fn from(s: &str) -> Self {
        Doc::Str(s.to_string())
    }
}

impl From<String> for Doc {
    fn from(s: String) -> Self {
        Doc::Str(s)
    }
}

impl From<f64> for Doc {
    fn from(v: f64) -> Self {
        Doc::Float(v)
    }
}

impl From<usize> for Doc {
    fn from(v: usize) -> Self {
        Doc::Int(v as i64)
    }
}

impl From<bool> for Doc {
    fn from(v: bool) -> Self {
        Doc::Bool(v)
    }
}

impl From<Complex64> for Doc {
    fn from(c: Complex64) -> Self {
        Doc::Complex(c)
    }
}

impl From<&Poly> for Doc {
    fn from(p: &Poly) -> Self {
        Doc::poly(p)
    }
}

impl From<&ComplexMatrix> for Doc {
    fn from(m: &ComplexMatrix) -> Self {
        Doc::Matrix(m.clone())
    }
}

impl From<Vec<Doc>> for Doc {
    fn from(v: Vec<Doc>) -> Self {
        Doc::List(v)
    }
}

/// 17 significant digits; non-finite values become `null`.
pub fn json_float(v: f64) -> String {
    if v.is_finite() {
        format!("{v:.16e}")
    } else {
        "null".to_string()
    }
}

fn json_string(s: &str) -> String {
    serde_json::to_string(s).expect("strings always serialize")
}

fn json_complex(c: Complex64) -> String {
    format!("[{}, {}]", json_float(c.re), json_float(c.im))
}

fn indent(level: usize, out: &mut String) {
    for _ in 0..level {
        out.push_str("  ");
    }
}

fn write_json(doc: &Doc, level: usize, out: &mut String) {
    match doc {
        Doc::Null => out.push_str("null"),
        Doc::Bool(b) => out.push_str(if *b { "true" } else { "false" }),
        Doc::Int(i) => out.push_str(&i.to_string()),
        Doc::Float(v) => out.push_str(&json_float(*v)),
        Doc::Str(s) => out.push_str(&json_string(s)),
        Doc::Complex(c) => out.push_str(&json_complex(*c)),
        Doc::Poly(p, var) => {
            let fields = vec![
                ("coeffs".to_string(), Doc::complex_list(p.coeffs())),
                ("expr".to_string(), Doc::Str(format_poly(p, *var))),
            ];
            write_json(&Doc::Object(fields), level, out);
        }
        Doc::Matrix(m) => {
            let fields = vec![
                ("order".to_string(), Doc::from(m.order())),
                ("entries".to_string(), Doc::complex_list(m.entries())),
            ];
            write_json(&Doc::Object(fields), level, out);
        }
        Doc::List(items) if items.is_empty() => out.push_str("[]"),
        Doc::List(items)
            if items
                .iter()
                .all(|d| matches!(d, Doc::Complex(_) | Doc::Float(_) | Doc::Int(_))) =>
        {
            // scalar lists stay on one line
            out.push('[');
            for (i, item) in items.iter().enumerate() {
                if i > 0 {
                    out.push_str(", ");
                }
                write_json(item, level, out);
            }
            out.push(']');
        }
        Doc::List(items) => {
            out.push_str("[\n");
            for (i, item) in items.iter().enumerate() {
                indent(level + 1, out);
                write_json(item, level + 1, out);
                out.push_str(if i + 1 < items.len() { ",\n" } else { "\n" });
            }
            indent(level, out);
            out.push(']');
        }
        Doc::Object(fields) if fields.is_empty() => out.push_str("{}"),
        Doc::Object(fields) => {
            out.push_str("{\n");
            for (i, (key, value)) in fields.iter().enumerate() {
                indent(level + 1, out);
                out.push_str(&json_string(key));
                out.push_str(": ");
                write_json(value, level + 1, out);
                out.push_str(if i + 1 < fields.len() { ",\n" } else { "\n" });
            }
            indent(level, out);
            out.push('}');
        }
    }
}

fn inline_text(doc: &Doc) -> String {
    match doc {
        Doc::Null => "-".to_string(),
        Doc::Bool(b) => b.to_string(),
        Doc::Int(i) => i.to_string(),
        Doc::Float(v) => format_real(*v),
        Doc::Str(s) => s.clone(),
        Doc::Complex(c) => format_complex(*c),
        Doc::Poly(p, var) => format_poly(p, *var),
        Doc::Matrix(m) => {
            let q = m.order();
            let rows: Vec<String> = (0..q)
                .map(|i| (0..q).map(|j| format_complex(m[(i, j)])).collect::<Vec<_>>().join(", "))
                .collect();
            format!("[{}]", rows.join("; "))
        }
        Doc::List(items) => format!("[{}]", items.iter().map(inline_text).collect::<Vec<_>>().join(", ")),
        Doc::Object(fields) => format!(
            "{{{}}}",
            fields
                .iter()
                .map(|(k, v)| format!("{k}: {}", inline_text(v)))
                .collect::<Vec<_>>()
                .join(", ")
        ),
    }
}

fn write_fields(fields: &[(String, Doc)], level: usize, out: &mut String) {
    for (key, value) in fields {
        indent(level, out);
        match value {
            Doc::Object(inner) if !inner.is_empty() => {
                out.push_str(key);
                out.push_str(":\n");
                write_fields(inner, level + 1, out);
            }
            Doc::List(items) if items.iter().any(|d| matches!(d, Doc::Object(_))) => {
                out.push_str(key);
                out.push_str(":\n");
                for (i, item) in items.iter().enumerate() {
                    indent(level + 1, out);
                    out.push_str(&format!("[{i}]"));
                    match item {
                        Doc::Object(inner) => {
                            out.push('\n');
                            write_fields(inner, level + 2, out);
                        }
                        other => {
                            out.push(' ');
                            out.push_str(&inline_text(other));
                            out.push('\n');
                        }
                    }
                }
            }
            other => {
                out.push_str(key);
                out.push_str(": ");
                out.push_str(&inline_text(other));
                out.push('\n');
            }
        }
    }
}
