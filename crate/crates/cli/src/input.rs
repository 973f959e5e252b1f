//! Command-line payloads.
//!
//! An argument that names an existing file is replaced by the file's
//! contents. Text starting with `[` or `{` is JSON in the library's wire
//! encodings; anything else is an expression. Lists are comma separated and
//! matrix rows are separated by `;`.

use std::fmt;
use std::path::Path;

use remcalc::dynamics::{ExpPolyFunction, ExpPolyTerm, Forcing, SampledForcing};
use remcalc::{find_roots, Complex64, ComplexMatrix, FactoredPoly, Jet, Poly};
use serde::de::DeserializeOwned;

use crate::expr::{parse_constant, parse_poly_expr_in, ParseError, Var};

/// Failure of a command, before or inside the engine.
#[derive(Debug)]
pub enum CliError {
    Syntax { argument: String, error: ParseError },
    Input(String),
    Engine(remcalc::Error),
}

impl CliError {
    pub fn code(&self) -> &'static str {
        match self {
            CliError::Syntax { .. } => "syntax_error",
            CliError::Input(_) => "invalid_input",
            CliError::Engine(e) => e.code(),
        }
    }

    /// 2 for numerical failures, 1 for everything else.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Engine(e) if e.is_numerical() => 2,
            _ => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Syntax { argument, error } => write!(f, "{argument}: {error}"),
            CliError::Input(msg) => f.write_str(msg),
            CliError::Engine(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<remcalc::Error> for CliError {
    fn from(e: remcalc::Error) -> Self {
        CliError::Engine(e)
    }
}

pub type CliResult<T> = Result<T, CliError>;

/// Payload text after file resolution.
pub enum Payload {
    Json(serde_json::Value),
    Text(String),
}

pub fn resolve(name: &str, arg: &str) -> CliResult<Payload> {
    let text = if Path::new(arg).is_file() {
        std::fs::read_to_string(arg).map_err(|e| CliError::Input(format!("{name}: cannot read {arg}: {e}")))?
    } else {
        arg.to_string()
    };
    let trimmed = text.trim();
    if trimmed.starts_with('[') || trimmed.starts_with('{') {
        let value = serde_json::from_str(trimmed).map_err(|e| CliError::Input(format!("{name}: invalid JSON: {e}")))?;
        Ok(Payload::Json(value))
    } else {
        Ok(Payload::Text(trimmed.to_string()))
    }
}

fn decode<T: DeserializeOwned>(name: &str, value: serde_json::Value) -> CliResult<T> {
    serde_json::from_value(value).map_err(|e| CliError::Input(format!("{name}: {e}")))
}

fn syntax(name: &str, error: ParseError) -> CliError {
    CliError::Syntax {
        argument: name.to_string(),
        error,
    }
}

fn expression(name: &str, text: &str, var: Var) -> CliResult<Poly> {
    parse_poly_expr_in(text, var).map_err(|e| syntax(name, e))
}

/// Splits on `sep`, keeping byte offsets so syntax errors point into the
/// whole argument.
fn split_offsets(text: &str, sep: char) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = 0;
    for (i, c) in text.char_indices() {
        if c == sep {
            out.push((start, &text[start..i]));
            start = i + c.len_utf8();
        }
    }
    out.push((start, &text[start..]));
    out
}

fn shifted(e: ParseError, by: usize) -> ParseError {
    ParseError {
        offset: e.offset + by,
        message: e.message,
    }
}

/// A polynomial: expression in `X`, coefficient list, or factored form.
pub fn poly(name: &str, arg: &str) -> CliResult<Poly> {
    match resolve(name, arg)? {
        Payload::Text(t) => expression(name, &t, Var::X),
        Payload::Json(v @ serde_json::Value::Object(_)) => Ok(decode::<FactoredPoly>(name, v)?.expand()),
        Payload::Json(v) => decode(name, v),
    }
}

/// How a divisor's roots were obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DivisorPath {
    /// Supplied in factored form; taken as exact.
    Factored,
    /// Found numerically from the expanded polynomial.
    RootsFound,
}

impl DivisorPath {
    pub fn as_str(self) -> &'static str {
        match self {
            DivisorPath::Factored => "factored",
            DivisorPath::RootsFound => "roots-found",
        }
    }
}

/// A divisor with its roots: factored form as given, or any other
/// polynomial form through root finding.
pub fn factored(name: &str, arg: &str, cluster_tol: f64) -> CliResult<(FactoredPoly, DivisorPath)> {
    let p = match resolve(name, arg)? {
        Payload::Json(v @ serde_json::Value::Object(_)) => return Ok((decode(name, v)?, DivisorPath::Factored)),
        Payload::Json(v) => decode::<Poly>(name, v)?,
        Payload::Text(t) => expression(name, &t, Var::X)?,
    };
    if p.degree().is_none() {
        return Err(remcalc::Error::ZeroDivisor.into());
    }
    Ok((find_roots(&p, cluster_tol)?, DivisorPath::RootsFound))
}

/// Complex numbers: JSON `[[re, im], ...]` or comma-separated constants.
pub fn complex_list(name: &str, arg: &str) -> CliResult<Vec<Complex64>> {
    match resolve(name, arg)? {
        Payload::Json(v) => decode(name, v),
        Payload::Text(t) if t.is_empty() => Ok(Vec::new()),
        Payload::Text(t) => split_offsets(&t, ',')
            .into_iter()
            .map(|(off, s)| parse_constant(s).map_err(|e| syntax(name, shifted(e, off))))
            .collect(),
    }
}

/// Real numbers: JSON array or comma-separated decimal literals.
pub fn real_list(name: &str, arg: &str) -> CliResult<Vec<f64>> {
    match resolve(name, arg)? {
        Payload::Json(v) => decode(name, v),
        Payload::Text(t) => split_offsets(&t, ',')
            .into_iter()
            .map(|(off, s)| {
                let c = parse_constant(s).map_err(|e| syntax(name, shifted(e, off)))?;
                if c.im != 0.0 {
                    return Err(CliError::Input(format!("{name}: expected a real number, got {s:?}")));
                }
                Ok(c.re)
            })
            .collect(),
    }
}

/// Square matrix: JSON `{"order", "entries"}` or rows `a, b; c, d`.
pub fn matrix(name: &str, arg: &str) -> CliResult<ComplexMatrix> {
    match resolve(name, arg)? {
        Payload::Json(v) => decode(name, v),
        Payload::Text(t) => {
            let mut entries = Vec::new();
            let rows = split_offsets(&t, ';');
            let q = rows.len();
            for (row_off, row) in rows {
                let cells = split_offsets(row, ',');
                if cells.len() != q {
                    return Err(CliError::Input(format!(
                        "{name}: a matrix with {q} rows needs {q} entries per row, got {}",
                        cells.len()
                    )));
                }
                for (off, cell) in cells {
                    entries.push(parse_constant(cell).map_err(|e| syntax(name, shifted(e, row_off + off)))?);
                }
            }
            Ok(ComplexMatrix::from_row_major(q, entries)?)
        }
    }
}

fn poly_in_t(p: &Poly) -> ExpPolyFunction {
    let zero = Complex64::new(0.0, 0.0);
    ExpPolyFunction::new(
        p.coeffs()
            .iter()
            .enumerate()
            .filter(|(_, c)| **c != zero)
            .map(|(k, &c)| ExpPolyTerm::new(c, k as u32, zero))
            .collect(),
    )
}

/// Exp-poly function: JSON list of `{"c", "k", "lambda"}` terms or a
/// polynomial expression in `t`.
pub fn exp_poly(name: &str, arg: &str) -> CliResult<ExpPolyFunction> {
    match resolve(name, arg)? {
        Payload::Json(v) => decode(name, v),
        Payload::Text(t) => Ok(poly_in_t(&expression(name, &t, Var::T)?)),
    }
}

/// Vector of exp-poly functions: JSON list of term lists or
/// comma-separated expressions in `t`.
pub fn exp_poly_list(name: &str, arg: &str) -> CliResult<Vec<ExpPolyFunction>> {
    match resolve(name, arg)? {
        Payload::Json(v) => decode(name, v),
        Payload::Text(t) => split_offsets(&t, ',')
            .into_iter()
            .map(|(off, s)| {
                parse_poly_expr_in(s, Var::T)
                    .map(|p| poly_in_t(&p))
                    .map_err(|e| syntax(name, shifted(e, off)))
            })
            .collect(),
    }
}

/// ODE forcing: sampled table `{"times", "values"}`, exp-poly terms, or an
/// expression in `t`.
pub fn forcing(name: &str, arg: &str) -> CliResult<Forcing> {
    match resolve(name, arg)? {
        Payload::Json(v @ serde_json::Value::Object(_)) => Ok(Forcing::Sampled(decode::<SampledForcing>(name, v)?)),
        Payload::Json(v) => Ok(Forcing::ExpPoly(decode(name, v)?)),
        Payload::Text(t) => Ok(Forcing::ExpPoly(poly_in_t(&expression(name, &t, Var::T)?))),
    }
}

/// Local residues: JSON list of `{"center", "coeffs"}`.
pub fn jets(name: &str, arg: &str) -> CliResult<Vec<Jet>> {
    match resolve(name, arg)? {
        Payload::Json(v) => decode(name, v),
        Payload::Text(_) => Err(CliError::Input(format!(
            "{name}: expected a JSON list of {{\"center\", \"coeffs\"}}"
        ))),
    }
}
