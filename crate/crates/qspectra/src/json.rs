//! JSON documents for matrices, spectra, spectral systems and reports.
//!
//! Output goes through [`Json`], a small ordered tree whose floats are
//! printed with 17 significant digits so every number survives a round trip.

use std::fmt::Write as _;

use qspectra_core::decomposition::DecompositionResiduals;
use qspectra_core::{QMatrix, QVector, Quaternion, SpectralDecomposition, SpectralSystem, SpectrumInfo};
use serde_json::Value;

use crate::CliError;

/// Ordered JSON tree used for all emitted documents.
#[derive(Debug, Clone, PartialEq)]
pub enum Json {
    Null,
    Bool(bool),
    Int(i64),
    Num(f64),
    Str(String),
    Arr(Vec<Json>),
    Obj(Vec<(String, Json)>),
}

impl Json {
    pub fn obj<K: Into<String>>(fields: impl IntoIterator<Item = (K, Json)>) -> Json {
        Json::Obj(fields.into_iter().map(|(k, v)| (k.into(), v)).collect())
    }

    pub fn str(s: impl Into<String>) -> Json {
        Json::Str(s.into())
    }

    /// Field lookup on objects; `None` for other variants.
    pub fn get(&self, key: &str) -> Option<&Json> {
        match self {
            Json::Obj(fields) => fields.iter().find(|(k, _)| k == key).map(|(_, v)| v),
            _ => None,
        }
    }

    pub fn push_field(&mut self, key: impl Into<String>, value: Json) {
        if let Json::Obj(fields) = self {
            fields.push((key.into(), value));
        }
    }

    pub fn to_compact(&self) -> String {
        let mut out = String::new();
        self.write(&mut out, None, 0);
        out
    }

    pub fn to_pretty(&self) -> String {
        let mut out = String::new();
        self.write(&mut out, Some(2), 0);
        out
    }

    fn write(&self, out: &mut String, indent: Option<usize>, depth: usize) {
        match self {
            Json::Null => out.push_str("null"),
            Json::Bool(b) => out.push_str(if *b { "true" } else { "false" }),
            Json::Int(i) => {
                let _ = write!(out, "{i}");
            }
            Json::Num(x) => out.push_str(&format_g17(*x)),
            Json::Str(s) => out.push_str(&serde_json::to_string(s).expect("string escape")),
            Json::Arr(items) => {
                // numeric leaves stay on one line in pretty mode
                let flat = indent.is_none() || items.iter().all(Json::is_scalar);
                out.push('[');
                for (k, item) in items.iter().enumerate() {
                    if k > 0 {
                        out.push(',');
                        if flat && indent.is_some() {
                            out.push(' ');
                        }
                    }
                    if !flat {
                        newline(out, indent, depth + 1);
                    }
                    item.write(out, indent, depth + 1);
                }
                if !flat && !items.is_empty() {
                    newline(out, indent, depth);
                }
                out.push(']');
            }
            Json::Obj(fields) => {
                out.push('{');
                for (k, (key, value)) in fields.iter().enumerate() {
                    if k > 0 {
                        out.push(',');
                    }
                    newline(out, indent, depth + 1);
                    out.push_str(&serde_json::to_string(key).expect("string escape"));
                    out.push(':');
                    if indent.is_some() {
                        out.push(' ');
                    }
                    value.write(out, indent, depth + 1);
                }
                if !fields.is_empty() {
                    newline(out, indent, depth);
                }
                out.push('}');
            }
        }
    }

    fn is_scalar(&self) -> bool {
        !matches!(self, Json::Arr(_) | Json::Obj(_))
    }
}

fn newline(out: &mut String, indent: Option<usize>, depth: usize) {
    if let Some(w) = indent {
        out.push('\n');
        out.extend(std::iter::repeat_n(' ', w * depth));
    }
}

impl From<f64> for Json {
    fn from(x: f64) -> Json {
        Json::Num(x)
    }
}

impl From<usize> for Json {
    fn from(x: usize) -> Json {
        Json::Int(x as i64)
    }
}

impl From<bool> for Json {
    fn from(b: bool) -> Json {
        Json::Bool(b)
    }
}

/// C's `%.17g`: shortest of fixed or exponent notation with 17 significant
/// digits and trailing zeros removed. Non-finite values become `null`.
pub fn format_g17(x: f64) -> String {
    if !x.is_finite() {
        return "null".to_string();
    }
    if x == 0.0 {
        return "0".to_string();
    }
    const P: i32 = 17;
    let sci = format!("{:.*e}", (P - 1) as usize, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent");
    let exp: i32 = exp.parse().expect("exponent digits");
    if exp < -4 || exp >= P {
        let m = strip_zeros(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{m}e{sign}{:02}", exp.abs())
    } else {
        let decimals = (P - 1 - exp) as usize;
        strip_zeros(&format!("{:.*}", decimals, x)).to_string()
    }
}

fn strip_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

pub fn quaternion(q: Quaternion) -> Json {
    Json::Arr(q.to_array().iter().map(|&c| Json::Num(c)).collect())
}

pub fn qmatrix(t: &QMatrix) -> Json {
    let n = t.n();
    let rows = (0..n)
        .map(|r| Json::Arr((0..n).map(|c| quaternion(t[(r, c)])).collect()))
        .collect();
    Json::obj([("n", Json::from(n)), ("entries", Json::Arr(rows))])
}

pub fn qvector(v: &QVector) -> Json {
    Json::Arr(v.entries().iter().map(|&q| quaternion(q)).collect())
}

pub fn spectrum(info: &SpectrumInfo) -> Json {
    let spheres = info
        .spheres
        .iter()
        .map(|e| {
            Json::obj([
                ("u", Json::from(e.sphere.u)),
                ("v", Json::from(e.sphere.v)),
                ("mult", Json::from(e.mult)),
            ])
        })
        .collect();
    Json::obj([("spheres", Json::Arr(spheres))])
}

pub fn system(sys: &SpectralSystem) -> Json {
    let spheres = sys
        .e
        .support()
        .iter()
        .map(|(s, p)| {
            Json::obj([
                ("u", Json::from(s.u)),
                ("v", Json::from(s.v)),
                ("projection", qmatrix(p)),
            ])
        })
        .collect();
    Json::obj([("spheres", Json::Arr(spheres)), ("J", qmatrix(sys.j.matrix()))])
}

pub fn residuals(r: &DecompositionResiduals) -> Json {
    Json::obj([
        (
            "system",
            Json::obj([
                ("idempotent", Json::from(r.system.measure.idempotent)),
                ("orthogonal", Json::from(r.system.measure.orthogonal)),
                ("total", Json::from(r.system.measure.total)),
                ("commutation", Json::from(r.system.commutation)),
                ("nonreal", Json::from(r.system.nonreal)),
            ]),
        ),
        ("commutation", Json::from(r.commutation)),
        ("scalar_integral", Json::from(r.scalar_integral)),
        ("nilpotency", Json::from(r.nilpotency)),
        ("spectrum", Json::from(r.spectrum)),
        ("j_deviation", Json::from(r.j_deviation)),
        ("uniform_bound", Json::from(r.k_bound)),
        (
            "probes",
            Json::obj([
                ("kind", Json::str("sampled")),
                ("count", Json::from(r.probes)),
                ("failures", Json::from(r.probe_failures)),
                ("worst_residual", Json::from(r.probe_residual)),
            ]),
        ),
        ("worst", Json::from(r.worst())),
    ])
}

pub fn decomposition(d: &SpectralDecomposition) -> Json {
    Json::obj([
        ("S", qmatrix(&d.scalar)),
        ("N", qmatrix(&d.radical)),
        ("system", system(&d.system)),
        ("type_m", Json::from(d.type_m)),
        ("residuals", residuals(&d.residuals)),
    ])
}

fn parse_error(msg: impl Into<String>) -> CliError {
    CliError::Parse(msg.into())
}

fn number(v: &Value, what: &str) -> Result<f64, CliError> {
    let x = v
        .as_f64()
        .ok_or_else(|| parse_error(format!("{what}: expected a number, found {v}")))?;
    if !x.is_finite() {
        return Err(parse_error(format!("{what}: non-finite number")));
    }
    Ok(x)
}

pub fn parse_quaternion(v: &Value, what: &str) -> Result<Quaternion, CliError> {
    let parts = v
        .as_array()
        .filter(|a| a.len() == 4)
        .ok_or_else(|| parse_error(format!("{what}: expected [w, x, y, z]")))?;
    let mut c = [0.0; 4];
    for (k, p) in parts.iter().enumerate() {
        c[k] = number(p, what)?;
    }
    Ok(Quaternion::from_array(c))
}

pub fn parse_qmatrix(v: &Value) -> Result<QMatrix, CliError> {
    let obj = v
        .as_object()
        .ok_or_else(|| parse_error("matrix document must be an object with \"n\" and \"entries\""))?;
    let n = obj
        .get("n")
        .and_then(Value::as_u64)
        .ok_or_else(|| parse_error("\"n\" must be a non-negative integer"))? as usize;
    if n == 0 {
        return Err(parse_error("\"n\" must be at least 1"));
    }
    let rows = obj
        .get("entries")
        .and_then(Value::as_array)
        .ok_or_else(|| parse_error("\"entries\" must be an array of rows"))?;
    if rows.len() != n {
        return Err(CliError::Dimension(format!("expected {n} rows, found {}", rows.len())));
    }
    let mut entries = Vec::with_capacity(n * n);
    for (r, row) in rows.iter().enumerate() {
        let row = row
            .as_array()
            .ok_or_else(|| parse_error(format!("row {r} must be an array")))?;
        if row.len() != n {
            return Err(CliError::Dimension(format!(
                "row {r}: expected {n} entries, found {}",
                row.len()
            )));
        }
        for (c, q) in row.iter().enumerate() {
            entries.push(parse_quaternion(q, &format!("entry ({r}, {c})"))?);
        }
    }
    QMatrix::new(n, entries).map_err(CliError::Core)
}

pub fn parse_qvector(v: &Value) -> Result<QVector, CliError> {
    let items = v
        .as_array()
        .ok_or_else(|| parse_error("vector must be an array of [w, x, y, z]"))?;
    let entries = items
        .iter()
        .enumerate()
        .map(|(k, q)| parse_quaternion(q, &format!("vector entry {k}")))
        .collect::<Result<Vec<_>, _>>()?;
    if entries.is_empty() {
        return Err(parse_error("vector must not be empty"));
    }
    Ok(QVector::new(entries))
}

pub fn parse_str(text: &str) -> Result<Value, CliError> {
    serde_json::from_str(text).map_err(|e| parse_error(format!("invalid JSON: {e}")))
}
