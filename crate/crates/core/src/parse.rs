//! Text formats: CSV clouds, matrix literals and family literals.
//!
//! CSV: one `x,y` pair per line, optional `x,y` header as the first
//! non-blank line, LF or CRLF endings, blank lines ignored.
//!
//! Matrix: `a,b;c,d` (rows separated by `;`) or JSON `[[a,b],[c,d]]`.
//!
//! Family: `diag`, `upper`, `lower`, `rot`, or
//! `linear:a11,a12;a21,a22|b11,b12;b21,b22`.

use std::fmt::Write as _;
use std::str::FromStr;

use crate::coefficients::{Cloud, LinearCoefficients, Point};
use crate::error::{Error, Result};
use crate::family::OneParamFamily;
use crate::transform::Mat2;

fn parse_number(field: &str) -> Result<f64> {
    let s = field.trim();
    let v: f64 = s
        .parse()
        .map_err(|_| Error::parse(format!("invalid number {s:?}")))?;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::parse(format!("non-finite number {s:?}")))
    }
}

fn is_header(line: &str) -> bool {
    let mut fields = line.split(',').map(str::trim);
    fields.next() == Some("x") && fields.next() == Some("y") && fields.next().is_none()
}

/// Parses a CSV cloud. Line numbers in errors are 1-based.
pub fn parse_cloud_csv(text: &str) -> Result<Cloud> {
    let text = text.strip_prefix('\u{feff}').unwrap_or(text);
    let mut points = Vec::new();
    let mut seen_content = false;
    for (idx, raw) in text.split('\n').enumerate() {
        let lineno = idx + 1;
        let line = raw.strip_suffix('\r').unwrap_or(raw);
        if line.trim().is_empty() {
            continue;
        }
        let first = !seen_content;
        seen_content = true;
        if first && is_header(line) {
            continue;
        }
        let (xs, ys) = line
            .split_once(',')
            .ok_or_else(|| Error::parse_at(lineno, "expected two comma-separated fields"))?;
        if ys.contains(',') {
            return Err(Error::parse_at(
                lineno,
                "expected two comma-separated fields",
            ));
        }
        let x = parse_number(xs).map_err(|e| at_line(e, lineno))?;
        let y = parse_number(ys).map_err(|e| at_line(e, lineno))?;
        points.push(Point::new(x, y)?);
    }
    Cloud::new(points)
}

/// Byte-level entry point; the input must be UTF-8.
pub fn parse_cloud_csv_bytes(bytes: &[u8]) -> Result<Cloud> {
    let text =
        std::str::from_utf8(bytes).map_err(|e| Error::parse(format!("input is not UTF-8: {e}")))?;
    parse_cloud_csv(text)
}

fn at_line(e: Error, line: usize) -> Error {
    match e {
        Error::Parse { message, .. } => Error::Parse {
            line: Some(line),
            message,
        },
        other => other,
    }
}

/// Writes a cloud with an `x,y` header. Values use the shortest
/// representation that parses back to the same `f64`.
pub fn write_cloud_csv(cloud: &Cloud) -> String {
    let mut out = String::with_capacity(16 * (cloud.len() + 1));
    out.push_str("x,y\n");
    for p in cloud.points() {
        let _ = writeln!(out, "{},{}", p.x(), p.y());
    }
    out
}

pub fn parse_matrix_literal(text: &str) -> Result<Mat2> {
    let s = text.trim();
    if s.starts_with('[') {
        let rows: [[f64; 2]; 2] = serde_json::from_str(s)
            .map_err(|e| Error::parse(format!("invalid JSON matrix: {e}")))?;
        let m = Mat2::new(rows[0][0], rows[0][1], rows[1][0], rows[1][1]);
        return if m.is_finite() {
            Ok(m)
        } else {
            Err(Error::parse("non-finite matrix entry"))
        };
    }
    let rows: Vec<&str> = s.split(';').collect();
    if rows.len() != 2 {
        return Err(Error::parse(format!("expected `a,b;c,d`, got {s:?}")));
    }
    let mut vals = [0.0; 4];
    for (r, row) in rows.iter().enumerate() {
        let (p, q) = row
            .split_once(',')
            .filter(|(_, q)| !q.contains(','))
            .ok_or_else(|| Error::parse(format!("matrix row {} must have two entries", r + 1)))?;
        vals[2 * r] = parse_number(p)?;
        vals[2 * r + 1] = parse_number(q)?;
    }
    Ok(Mat2::new(vals[0], vals[1], vals[2], vals[3]))
}

pub fn parse_family_literal(text: &str) -> Result<OneParamFamily> {
    let s = text.trim();
    match s {
        "diag" => return Ok(OneParamFamily::Diagonal),
        "upper" => return Ok(OneParamFamily::UpperTriangular),
        "lower" => return Ok(OneParamFamily::LowerTriangular),
        "rot" => return Ok(OneParamFamily::Rotation),
        _ => {}
    }
    let body = s.strip_prefix("linear:").ok_or_else(|| {
        Error::parse(format!(
            "unknown family {s:?}; expected diag, upper, lower, rot or linear:A|B"
        ))
    })?;
    let (a0, b) = body
        .split_once('|')
        .ok_or_else(|| Error::parse("linear family needs `a0|b`"))?;
    Ok(OneParamFamily::Linear {
        a0: parse_matrix_literal(a0)?,
        b: parse_matrix_literal(b)?,
    })
}

/// `M,H` pair for feeding coefficients directly.
pub fn parse_coeffs_literal(text: &str) -> Result<LinearCoefficients> {
    let (m, h) = text
        .trim()
        .split_once(',')
        .filter(|(_, h)| !h.contains(','))
        .ok_or_else(|| Error::parse("expected `M,H`"))?;
    LinearCoefficients::new(parse_number(m)?, parse_number(h)?)
}

impl FromStr for Mat2 {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_matrix_literal(s)
    }
}

impl FromStr for OneParamFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_family_literal(s)
    }
}

impl FromStr for LinearCoefficients {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_coeffs_literal(s)
    }
}
