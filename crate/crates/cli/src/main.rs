mod error;
mod report;
mod source;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use cloudinv::family::h_over_m_squared;
use cloudinv::{
    Cloud, Embedding, Error, GeneratorKind, KernelSpec, LinearCoefficients, Mat2, Matrix2,
    OneParamFamily,
};
use rayon::prelude::*;
use serde::Serialize;

use error::{CliError, CliResult};
use report::*;
use source::{dump_points, sibling_path, Input, SourceArgs};

const COLLINEAR_TOL: f64 = 1e-12;

#[derive(Debug, Parser)]
#[command(
    name = "cloudinv",
    version,
    about = "Linear coefficients of planar clouds and their invariants"
)]
struct Cli {
    /// Emit JSON instead of a table
    #[arg(long, global = true)]
    json: bool,

    /// Evaluate independent cases on a thread pool; output is unchanged
    #[arg(long, global = true)]
    parallel: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Slope M, spread ratio H, raw sums and the collinearity flag
    Coeffs {
        #[command(flatten)]
        source: SourceArgs,
    },
    /// Apply a matrix and compare the closed-form image with direct recomputation
    Transform {
        #[command(flatten)]
        source: SourceArgs,
        /// Matrix literal `a,b;c,d` or `[[a,b],[c,d]]`
        #[arg(long, allow_hyphen_values = true)]
        matrix: Mat2,
        /// Write the transformed cloud as CSV
        #[arg(long, value_name = "PATH")]
        dump_points: Option<PathBuf>,
    },
    /// Evaluate the invariant of a family (at each phi) or of a single matrix
    Invariant {
        #[command(flatten)]
        source: SourceArgs,
        /// Family literal: diag, upper, lower, rot, linear:A|B
        #[arg(
            long,
            allow_hyphen_values = true,
            conflicts_with = "matrix",
            required_unless_present = "matrix"
        )]
        family: Option<OneParamFamily>,
        /// Parameter values, comma separated
        #[arg(
            long,
            value_delimiter = ',',
            allow_hyphen_values = true,
            requires = "family"
        )]
        phi: Vec<f64>,
        /// A single invertible non-identity matrix
        #[arg(long, allow_hyphen_values = true)]
        matrix: Option<Mat2>,
        /// Write each transformed cloud as CSV (suffixed per row)
        #[arg(long, value_name = "PATH")]
        dump_points: Option<PathBuf>,
    },
    /// Run the four reference transformations on one cloud
    Simulate {
        #[command(flatten)]
        source: SourceArgs,
        /// Write the original and each transformed cloud as CSV (suffixed per case)
        #[arg(long, value_name = "PATH")]
        dump_points: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            if let Some(h) = e.hint() {
                eprintln!("  {h}");
            }
            ExitCode::from(e.exit_code())
        }
    }
}

fn emit<T: Serialize>(
    json: bool,
    command: &'static str,
    body: T,
    text: impl FnOnce(&T) -> String,
) -> String {
    if json {
        let env = Envelope {
            schema: SCHEMA,
            command,
            body,
        };
        serde_json::to_string_pretty(&env).expect("report serializes") + "\n"
    } else {
        text(&body)
    }
}

fn run(cli: &Cli) -> CliResult<String> {
    match &cli.command {
        Command::Coeffs { source } => {
            let r = cmd_coeffs(&source.load(None, 1000)?)?;
            Ok(emit(cli.json, "coeffs", r, CoeffsReport::render))
        }
        Command::Transform {
            source,
            matrix,
            dump_points,
        } => {
            let r = cmd_transform(&source.load(None, 1000)?, *matrix, dump_points.as_deref())?;
            Ok(emit(cli.json, "transform", r, TransformReport::render))
        }
        Command::Invariant {
            source,
            family,
            phi,
            matrix,
            dump_points,
        } => {
            let input = source.load(None, 1000)?;
            let r = match (family, matrix) {
                (Some(f), _) => {
                    cmd_invariant_family(&input, f, phi, cli.parallel, dump_points.as_deref())?
                }
                (None, Some(m)) => cmd_invariant_matrix(&input, *m, dump_points.as_deref())?,
                (None, None) => return Err(CliError::Usage("pass --family or --matrix".into())),
            };
            Ok(emit(cli.json, "invariant", r, InvariantReport::render))
        }
        Command::Simulate {
            source,
            dump_points,
        } => {
            let input = source.load(Some(GeneratorKind::Scheme), 10_000)?;
            let r = cmd_simulate(&input, cli.parallel, dump_points.as_deref())?;
            Ok(emit(cli.json, "simulate", r, SimulateReport::render))
        }
    }
}

fn cmd_coeffs(input: &Input) -> CliResult<CoeffsReport> {
    let lc = input.coefficients()?;
    let (raw_sums, collinear) = match &input.cloud {
        Some(c) => (Some(c.raw_sums()), c.is_collinear(COLLINEAR_TOL)),
        None => (
            None,
            lc.collinearity_gap() <= COLLINEAR_TOL * lc.h.abs().max(1.0),
        ),
    };
    Ok(CoeffsReport {
        source: input.echo.clone(),
        coefficients: lc,
        raw_sums,
        collinear,
    })
}

/// Image cloud (if any) and its coefficients: recomputed from points when a
/// cloud is present, closed form otherwise.
fn image(
    input: &Input,
    before: LinearCoefficients,
    a: &Matrix2,
) -> CliResult<(Option<Cloud>, LinearCoefficients)> {
    let closed = a.induced_coefficients(before)?;
    match &input.cloud {
        None => Ok((None, closed)),
        Some(c) => {
            let img = a.apply_to_cloud(c)?;
            let lc = img.linear_coefficients().map_err(|e| match e {
                Error::DegenerateCloud { d } => Error::DegenerateImage { denominator: d },
                e => e,
            })?;
            Ok((Some(img), lc))
        }
    }
}

fn coeff_gap(a: &LinearCoefficients, b: &LinearCoefficients) -> f64 {
    (a.m - b.m).abs().max((a.h - b.h).abs())
}

fn cmd_transform(input: &Input, matrix: Mat2, dump: Option<&Path>) -> CliResult<TransformReport> {
    let a = Matrix2::try_from(matrix)?;
    let before = input.coefficients()?;
    let closed_form = a.induced_coefficients(before)?;
    let (img, direct) = match input.cloud {
        Some(_) => {
            let (img, lc) = image(input, before, &a)?;
            (img, Some(lc))
        }
        None => (None, None),
    };
    if let (Some(path), Some(img)) = (dump, &img) {
        dump_points(path, img)?;
    }
    let after = direct.unwrap_or(closed_form);
    Ok(TransformReport {
        source: input.echo.clone(),
        matrix,
        before,
        closed_form,
        direct,
        discrepancy: direct.map(|d| coeff_gap(&d, &closed_form)),
        drift: coeff_gap(&after, &before),
    })
}

fn kernel_values(
    spec: &KernelSpec,
    diag: bool,
    before: LinearCoefficients,
    after: LinearCoefficients,
) -> Vec<InvariantValue> {
    let mut v = Vec::with_capacity(2);
    if diag {
        v.push(InvariantValue::compare(
            "H/M^2",
            h_over_m_squared(before.m, before.h),
            h_over_m_squared(after.m, after.h),
        ));
    }
    v.push(InvariantValue::compare(
        "kernel",
        spec.kernel_at(before),
        spec.kernel_at(after),
    ));
    v
}

fn par_map<T: Sync, R: Send>(
    items: &[T],
    parallel: bool,
    f: impl Fn(&T) -> R + Sync + Send,
) -> Vec<R> {
    if parallel {
        items.par_iter().map(f).collect()
    } else {
        items.iter().map(f).collect()
    }
}

fn cmd_invariant_family(
    input: &Input,
    family: &OneParamFamily,
    phis: &[f64],
    parallel: bool,
    dump: Option<&Path>,
) -> CliResult<InvariantReport> {
    let identity_parameter = family.identity_parameter()?;
    let kernel_spec = family.kernel_spec()?;
    if kernel_spec.is_degenerate() {
        return Err(Error::DegenerateGenerator.into());
    }
    let before = input.coefficients()?;
    let diag = matches!(family, OneParamFamily::Diagonal);
    let rows = par_map(
        phis,
        parallel,
        |&phi| -> CliResult<(InvariantRow, Option<Cloud>)> {
            let m = family.evaluate(phi);
            let (img, after) = image(input, before, &Matrix2::try_from(m)?)?;
            let invariants = kernel_values(&kernel_spec, diag, before, after);
            Ok((
                InvariantRow {
                    phi: Some(phi),
                    matrix: m,
                    after,
                    invariants,
                },
                img,
            ))
        },
    )
    .into_iter()
    .collect::<CliResult<Vec<_>>>()?;
    if let Some(path) = dump {
        for (i, (_, img)) in rows.iter().enumerate() {
            if let Some(img) = img {
                dump_points(&sibling_path(path, &format!("phi{i}")), img)?;
            }
        }
    }
    Ok(InvariantReport {
        source: input.echo.clone(),
        family: *family,
        identity_parameter,
        kernel_spec,
        before,
        rows: rows.into_iter().map(|(r, _)| r).collect(),
    })
}

fn cmd_invariant_matrix(
    input: &Input,
    matrix: Mat2,
    dump: Option<&Path>,
) -> CliResult<InvariantReport> {
    let target = Matrix2::try_from(matrix)?;
    let emb = Embedding::new(target)?;
    let kernel_spec = emb.kernel_spec();
    if kernel_spec.is_degenerate() {
        return Err(Error::DegenerateGenerator.into());
    }
    let before = input.coefficients()?;
    let (img, after) = image(input, before, &target)?;
    if let (Some(path), Some(img)) = (dump, &img) {
        dump_points(path, img)?;
    }
    let normalized = kernel_spec.normalized();
    let invariants = vec![
        InvariantValue::compare(
            "kernel",
            kernel_spec.kernel_at(before),
            kernel_spec.kernel_at(after),
        ),
        InvariantValue::compare(
            "normalized",
            normalized.kernel_at(before),
            normalized.kernel_at(after),
        ),
    ];
    Ok(InvariantReport {
        source: input.echo.clone(),
        family: emb.family,
        identity_parameter: emb.phi_star,
        kernel_spec,
        before,
        rows: vec![InvariantRow {
            phi: None,
            matrix,
            after,
            invariants,
        }],
    })
}

struct Case {
    name: &'static str,
    family: OneParamFamily,
    matrix: Mat2,
}

fn reference_cases() -> [Case; 4] {
    [
        Case {
            name: "diag",
            family: OneParamFamily::Diagonal,
            matrix: Mat2::diag(1.0, 2.0),
        },
        Case {
            name: "shear",
            family: OneParamFamily::UpperTriangular,
            matrix: Mat2::new(1.0, 0.7, 0.0, 1.0),
        },
        Case {
            name: "rotation",
            family: OneParamFamily::Rotation,
            matrix: Mat2::rotation(std::f64::consts::FRAC_PI_3),
        },
        Case {
            name: "general",
            // passes through I at φ = 1/4 and through the matrix at φ = 1/5
            family: OneParamFamily::Linear {
                a0: Mat2::new(-2.0, -2.0, -0.25, 0.5),
                b: Mat2::new(12.0, 8.0, 1.0, 2.0),
            },
            matrix: Mat2::new(0.4, -0.4, -0.05, 0.9),
        },
    ]
}

fn cmd_simulate(input: &Input, parallel: bool, dump: Option<&Path>) -> CliResult<SimulateReport> {
    let before = input.coefficients()?;
    let cases = reference_cases();
    let results = par_map(
        &cases,
        parallel,
        |c| -> CliResult<(SimCase, Option<Cloud>)> {
            let kernel_spec = c.family.kernel_spec()?;
            let (img, after) = image(input, before, &Matrix2::try_from(c.matrix)?)?;
            let diag = matches!(c.family, OneParamFamily::Diagonal);
            let invariants = kernel_values(&kernel_spec, diag, before, after);
            Ok((
                SimCase {
                    name: c.name,
                    family: c.family,
                    kernel_spec,
                    matrix: c.matrix,
                    after,
                    invariants,
                },
                img,
            ))
        },
    )
    .into_iter()
    .collect::<CliResult<Vec<_>>>()?;
    if let Some(path) = dump {
        if let Some(c) = &input.cloud {
            dump_points(&sibling_path(path, "original"), c)?;
        }
        for (case, img) in &results {
            if let Some(img) = img {
                dump_points(&sibling_path(path, case.name), img)?;
            }
        }
    }
    Ok(SimulateReport {
        source: input.echo.clone(),
        before,
        cases: results.into_iter().map(|(c, _)| c).collect(),
    })
}
