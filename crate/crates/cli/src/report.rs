use std::fmt::Write as _;

use cloudinv::{KernelSpec, LinearCoefficients, Mat2, OneParamFamily, RawSums};
use serde::Serialize;

use crate::source::SourceEcho;

pub const SCHEMA: &str = "cloud-invariants/1";

#[derive(Debug, Serialize)]
pub struct Envelope<T> {
    pub schema: &'static str,
    pub command: &'static str,
    #[serde(flatten)]
    pub body: T,
}

#[derive(Debug, Serialize)]
pub struct CoeffsReport {
    pub source: SourceEcho,
    pub coefficients: LinearCoefficients,
    pub raw_sums: Option<RawSums>,
    pub collinear: bool,
}

#[derive(Debug, Serialize)]
pub struct TransformReport {
    pub source: SourceEcho,
    pub matrix: Mat2,
    pub before: LinearCoefficients,
    pub closed_form: LinearCoefficients,
    pub direct: Option<LinearCoefficients>,
    /// Largest component gap between the closed form and direct recomputation.
    pub discrepancy: Option<f64>,
    pub drift: f64,
}

/// One scalar invariant evaluated before and after a transformation.
#[derive(Debug, Clone, Serialize)]
pub struct InvariantValue {
    pub name: &'static str,
    pub before: Option<f64>,
    pub after: Option<f64>,
    pub abs_drift: Option<f64>,
    pub rel_drift: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl InvariantValue {
    pub fn compare(
        name: &'static str,
        before: cloudinv::Result<f64>,
        after: cloudinv::Result<f64>,
    ) -> Self {
        match (before, after) {
            (Ok(b), Ok(a)) => {
                let abs = (a - b).abs();
                let scale = a.abs().max(b.abs());
                let rel = if abs == 0.0 { 0.0 } else { abs / scale };
                InvariantValue {
                    name,
                    before: Some(b),
                    after: Some(a),
                    abs_drift: Some(abs),
                    rel_drift: Some(rel),
                    note: None,
                }
            }
            (b, a) => {
                let note = [b.as_ref().err(), a.as_ref().err()]
                    .into_iter()
                    .flatten()
                    .map(ToString::to_string)
                    .collect::<Vec<_>>()
                    .join("; ");
                InvariantValue {
                    name,
                    before: b.ok(),
                    after: a.ok(),
                    abs_drift: None,
                    rel_drift: None,
                    note: Some(note),
                }
            }
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct InvariantRow {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub phi: Option<f64>,
    pub matrix: Mat2,
    pub after: LinearCoefficients,
    pub invariants: Vec<InvariantValue>,
}

#[derive(Debug, Serialize)]
pub struct InvariantReport {
    pub source: SourceEcho,
    pub family: OneParamFamily,
    pub identity_parameter: f64,
    pub kernel_spec: KernelSpec,
    pub before: LinearCoefficients,
    pub rows: Vec<InvariantRow>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SimCase {
    pub name: &'static str,
    pub family: OneParamFamily,
    pub kernel_spec: KernelSpec,
    pub matrix: Mat2,
    pub after: LinearCoefficients,
    pub invariants: Vec<InvariantValue>,
}

#[derive(Debug, Serialize)]
pub struct SimulateReport {
    pub source: SourceEcho,
    pub before: LinearCoefficients,
    pub cases: Vec<SimCase>,
}

pub fn num(x: f64) -> String {
    let a = x.abs();
    if x == 0.0 || (1e-4..1e6).contains(&a) {
        format!("{x:.9}")
    } else {
        format!("{x:.6e}")
    }
}

fn opt(x: Option<f64>) -> String {
    x.map(num).unwrap_or_else(|| "-".into())
}

fn source_line(s: &SourceEcho) -> String {
    match s {
        SourceEcho::Csv { path, n } => format!("csv {path} ({n} points)"),
        SourceEcho::Generated(g) => {
            format!("{} n={} noise={} seed={}", g.kind, g.n, g.noise, g.seed)
        }
        SourceEcho::Coeffs { m, h } => format!("coefficients M={m} H={h}"),
    }
}

fn coeffs_line(label: &str, lc: &LinearCoefficients) -> String {
    format!("{label:<12} M = {:<18} H = {}\n", num(lc.m), num(lc.h))
}

fn invariant_lines(out: &mut String, values: &[InvariantValue]) {
    let _ = writeln!(
        out,
        "  {:<10} {:>18} {:>18} {:>14} {:>14}",
        "invariant", "before", "after", "abs drift", "rel drift"
    );
    for v in values {
        let _ = writeln!(
            out,
            "  {:<10} {:>18} {:>18} {:>14} {:>14}",
            v.name,
            opt(v.before),
            opt(v.after),
            opt(v.abs_drift),
            opt(v.rel_drift)
        );
        if let Some(n) = &v.note {
            let _ = writeln!(out, "  note: {n}");
        }
    }
}

impl CoeffsReport {
    pub fn render(&self) -> String {
        let mut s = format!("source: {}\n", source_line(&self.source));
        s += &coeffs_line("coefficients", &self.coefficients);
        if let Some(rs) = &self.raw_sums {
            let _ = writeln!(
                s,
                "raw sums     Mn = {}  Hn = {}  D = {}",
                num(rs.mn),
                num(rs.hn),
                num(rs.d)
            );
        }
        let _ = writeln!(s, "collinear    {}", self.collinear);
        s
    }
}

impl TransformReport {
    pub fn render(&self) -> String {
        let mut s = format!(
            "source: {}\nmatrix: {}\n",
            source_line(&self.source),
            self.matrix
        );
        s += &coeffs_line("before", &self.before);
        s += &coeffs_line("closed form", &self.closed_form);
        if let Some(d) = &self.direct {
            s += &coeffs_line("direct", d);
        }
        let _ = writeln!(s, "discrepancy  {}", opt(self.discrepancy));
        let _ = writeln!(s, "drift        {}", num(self.drift));
        s
    }
}

impl InvariantReport {
    pub fn render(&self) -> String {
        let k = &self.kernel_spec;
        let mut s = format!(
            "source: {}\nfamily: {}  (identity at phi = {})\nkernel: (M^2 - H) / (b' H - g' + d M)^2 with (b', g', d) = ({}, {}, {})\n",
            source_line(&self.source),
            self.family,
            num(self.identity_parameter),
            k.bprime,
            k.gprime,
            k.delta
        );
        s += &coeffs_line("before", &self.before);
        for row in &self.rows {
            match row.phi {
                Some(phi) => {
                    let _ = writeln!(s, "\nphi = {phi}  matrix {}", row.matrix);
                }
                None => {
                    let _ = writeln!(s, "\nmatrix {}", row.matrix);
                }
            }
            s += &coeffs_line("after", &row.after);
            invariant_lines(&mut s, &row.invariants);
        }
        s
    }
}

impl SimulateReport {
    pub fn render(&self) -> String {
        let mut s = format!("source: {}\n", source_line(&self.source));
        s += &coeffs_line("before", &self.before);
        for c in &self.cases {
            let _ = writeln!(s, "\n[{}] matrix {}  family {}", c.name, c.matrix, c.family);
            s += &coeffs_line("after", &c.after);
            invariant_lines(&mut s, &c.invariants);
        }
        s
    }
}
