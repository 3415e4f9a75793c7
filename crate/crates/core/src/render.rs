//! Text, LaTeX and JSON renderings of Hodge polynomials and series.

use std::str::FromStr;

use clap::ValueEnum;
use num_bigint::BigUint;
use serde_json::{json, Number, Value};
use thiserror::Error;

use crate::engine::HodgePolynomial;
use crate::series::TriSeries;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, ValueEnum)]
pub enum RenderFormat {
    Diamond,
    Latex,
    Json,
    Poly,
}

#[derive(Debug, Error)]
pub enum RenderError {
    #[error("invalid json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("malformed polynomial json: {0}")]
    Shape(String),
}

/// Entries `h^{p,q}` with `p + q = s`, for `p` increasing.
fn diamond_row(poly: &HodgePolynomial, s: u32) -> Vec<(u32, BigUint)> {
    let d = poly.space_dim();
    let lo = s.saturating_sub(d);
    let hi = s.min(d);
    (lo..=hi).map(|p| (p, poly.get(p, s - p))).collect()
}

/// Row `s` holds the entries with `p + q = s` (top row `s = 0`); the entry
/// `(p, q)` sits in column `d + p - q`.
pub fn render_diamond(poly: &HodgePolynomial) -> String {
    let d = poly.space_dim();
    let width = poly
        .terms()
        .map(|(_, v)| v.to_string().len())
        .max()
        .unwrap_or(1)
        .max(1);
    let mut lines = Vec::new();
    for s in 0..=2 * d {
        let mut cells = vec![String::new(); 2 * d as usize + 1];
        for (p, v) in diamond_row(poly, s) {
            let q = s - p;
            cells[(d + p - q) as usize] = v.to_string();
        }
        let line: Vec<String> = cells.iter().map(|c| format!("{c:>width$}")).collect();
        lines.push(line.join(" ").trim_end().to_string());
    }
    lines.join("\n") + "\n"
}

pub fn render_latex(poly: &HodgePolynomial) -> String {
    let d = poly.space_dim();
    let mut rows = Vec::new();
    for s in 0..=2 * d {
        let mut cells = vec![String::new(); 2 * d as usize + 1];
        for (p, v) in diamond_row(poly, s) {
            let q = s - p;
            cells[(d + p - q) as usize] = v.to_string();
        }
        rows.push(format!("  {}", cells.join(" & ")));
    }
    format!("\\begin{{smallmatrix}}\n{}\n\\end{{smallmatrix}}\n", rows.join(" \\\\\n"))
}

fn big_number(v: &BigUint) -> Value {
    Value::Number(Number::from_str(&v.to_string()).expect("integer literal"))
}

pub fn polynomial_json(n: u32, poly: &HodgePolynomial) -> Value {
    let terms: Vec<Value> = poly
        .terms_by_total_degree()
        .iter()
        .map(|((p, q), h)| json!({"p": p, "q": q, "h": big_number(h)}))
        .collect();
    json!({"n": n, "space_dim": poly.space_dim(), "terms": terms})
}

pub fn render_json(n: u32, poly: &HodgePolynomial) -> String {
    serde_json::to_string_pretty(&polynomial_json(n, poly)).expect("serializable") + "\n"
}

fn field_u32(v: &Value, key: &str) -> Result<u32, RenderError> {
    v.get(key)
        .and_then(Value::as_u64)
        .and_then(|x| u32::try_from(x).ok())
        .ok_or_else(|| RenderError::Shape(format!("missing or invalid '{key}'")))
}

/// Inverse of [`render_json`].
pub fn parse_json(text: &str) -> Result<(u32, HodgePolynomial), RenderError> {
    let v: Value = serde_json::from_str(text)?;
    let n = field_u32(&v, "n")?;
    let space_dim = field_u32(&v, "space_dim")?;
    let terms = v
        .get("terms")
        .and_then(Value::as_array)
        .ok_or_else(|| RenderError::Shape("missing 'terms'".into()))?;
    let mut out = Vec::new();
    for t in terms {
        let (p, q) = (field_u32(t, "p")?, field_u32(t, "q")?);
        if p > space_dim || q > space_dim {
            return Err(RenderError::Shape(format!("term ({p},{q}) outside dimension {space_dim}")));
        }
        let h = match t.get("h") {
            Some(Value::Number(num)) => BigUint::from_str(&num.to_string())
                .map_err(|_| RenderError::Shape(format!("bad value {num}")))?,
            _ => return Err(RenderError::Shape("missing 'h'".into())),
        };
        out.push(((p, q), h));
    }
    Ok((n, HodgePolynomial::new(out, space_dim)))
}

pub fn render_polynomial(n: u32, poly: &HodgePolynomial, format: RenderFormat) -> String {
    match format {
        RenderFormat::Diamond => render_diamond(poly),
        RenderFormat::Latex => render_latex(poly),
        RenderFormat::Json => render_json(n, poly),
        RenderFormat::Poly => format!("{poly}\n"),
    }
}

/// `{"trunc": N, "terms": [{"x","y","t","c"}]}` in canonical `(t, x, y)` order.
pub fn series_json(series: &TriSeries) -> Value {
    let terms: Vec<Value> = series
        .terms()
        .map(|(m, c)| {
            let c = match c.to_integer() {
                Some(i) => Value::Number(Number::from_str(&i.to_string()).expect("integer literal")),
                None => Value::String(c.to_string()),
            };
            json!({"x": m.x, "y": m.y, "t": m.t, "c": c})
        })
        .collect();
    json!({"trunc": series.trunc(), "terms": terms})
}

pub fn render_series(series: &TriSeries, format: RenderFormat) -> String {
    match format {
        RenderFormat::Json => serde_json::to_string_pretty(&series_json(series)).expect("serializable") + "\n",
        _ => format!("{series}\n"),
    }
}
