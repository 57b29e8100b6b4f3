use std::path::{Path, PathBuf};

use clap::Args;
use cloudinv::parse::{parse_cloud_csv_bytes, write_cloud_csv};
use cloudinv::{Cloud, CloudGenSpec, GeneratorKind, LinearCoefficients};
use serde::Serialize;

use crate::error::{CliError, CliResult};

/// Where the cloud comes from: a CSV file, a seeded generator, or raw `(M, H)`.
#[derive(Debug, Clone, Args)]
pub struct SourceArgs {
    /// Read the cloud from a CSV file of `x,y` rows
    #[arg(long, value_name = "PATH", conflicts_with_all = ["generator", "coeffs"])]
    pub csv: Option<PathBuf>,

    /// Generate the cloud: uniform-box, line-with-noise, ellipse, two-segment
    #[arg(long = "gen", value_name = "KIND", conflicts_with = "coeffs")]
    pub generator: Option<GeneratorKind>,

    /// Number of generated points [default: 1000, simulate 10000]
    #[arg(long)]
    pub n: Option<usize>,

    /// Half-width of the uniform jitter on generated points
    #[arg(long, default_value_t = 0.05)]
    pub noise: f64,

    /// RNG seed for generated clouds (ChaCha8)
    #[arg(long, env = "CLOUD_INV_SEED", default_value_t = 42)]
    pub seed: u64,

    /// Skip the cloud and use these coefficients directly, as `M,H`
    #[arg(long, value_name = "M,H", allow_hyphen_values = true)]
    pub coeffs: Option<LinearCoefficients>,
}

#[derive(Debug, Clone, Serialize)]
#[serde(tag = "type", rename_all = "kebab-case")]
pub enum SourceEcho {
    Csv { path: String, n: usize },
    Generated(CloudGenSpec),
    Coeffs { m: f64, h: f64 },
}

pub struct Input {
    pub echo: SourceEcho,
    pub cloud: Option<Cloud>,
}

impl SourceArgs {
    pub fn load(&self, default_kind: Option<GeneratorKind>, default_n: usize) -> CliResult<Input> {
        if let Some(lc) = self.coeffs {
            return Ok(Input {
                echo: SourceEcho::Coeffs { m: lc.m, h: lc.h },
                cloud: None,
            });
        }
        if let Some(path) = &self.csv {
            let bytes = std::fs::read(path).map_err(|e| CliError::io(path, e))?;
            let cloud = parse_cloud_csv_bytes(&bytes)?;
            let echo = SourceEcho::Csv {
                path: path.display().to_string(),
                n: cloud.len(),
            };
            return Ok(Input {
                echo,
                cloud: Some(cloud),
            });
        }
        let kind = self.generator.or(default_kind).ok_or_else(|| {
            CliError::Usage("no cloud source: pass --csv PATH, --gen KIND or --coeffs M,H".into())
        })?;
        let spec = CloudGenSpec {
            kind,
            n: self.n.unwrap_or(default_n),
            noise: self.noise,
            seed: self.seed,
        };
        let cloud = spec.generate()?;
        Ok(Input {
            echo: SourceEcho::Generated(spec),
            cloud: Some(cloud),
        })
    }
}

impl Input {
    pub fn coefficients(&self) -> CliResult<LinearCoefficients> {
        match (&self.echo, &self.cloud) {
            (_, Some(c)) => Ok(c.linear_coefficients()?),
            (SourceEcho::Coeffs { m, h }, None) => Ok(LinearCoefficients::new(*m, *h)?),
            _ => unreachable!("non-coefficient sources always carry a cloud"),
        }
    }
}

pub fn dump_points(path: &Path, cloud: &Cloud) -> CliResult<()> {
    std::fs::write(path, write_cloud_csv(cloud)).map_err(|e| CliError::io(path, e))
}

/// `out.csv` + `diag` → `out-diag.csv`.
pub fn sibling_path(path: &Path, tag: &str) -> PathBuf {
    let stem = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    let name = match path.extension() {
        Some(ext) => format!("{stem}-{tag}.{}", ext.to_string_lossy()),
        None => format!("{stem}-{tag}"),
    };
    path.with_file_name(name)
}
