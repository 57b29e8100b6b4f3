//! Seeded synthetic clouds.
//!
//! Uses ChaCha8 seeded through `seed_from_u64`, so a given spec produces the
//! same points on every platform.

use std::f64::consts::{PI, TAU};
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::coefficients::{Cloud, Point};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum GeneratorKind {
    /// Uniform in `[0, 4) × [0, 3)`.
    UniformBox,
    /// `y = 2x` for `x` in `[−2, 2)`, noise added to `y`.
    LineWithNoise,
    /// Ellipse with semi-axes 2 and 1, tilted by 30°.
    Ellipse,
    /// Two joined segments `(0,0)→(2,3)→(4,1.5)`, split evenly.
    Scheme,
}

impl GeneratorKind {
    pub fn name(self) -> &'static str {
        match self {
            GeneratorKind::UniformBox => "uniform-box",
            GeneratorKind::LineWithNoise => "line-with-noise",
            GeneratorKind::Ellipse => "ellipse",
            GeneratorKind::Scheme => "scheme",
        }
    }
}

impl fmt::Display for GeneratorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for GeneratorKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "uniform-box" => Ok(GeneratorKind::UniformBox),
            "line-with-noise" | "line" => Ok(GeneratorKind::LineWithNoise),
            "ellipse" => Ok(GeneratorKind::Ellipse),
            "scheme" | "two-segment" => Ok(GeneratorKind::Scheme),
            _ => Err(Error::InvalidSpec(format!("unknown generator {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CloudGenSpec {
    pub kind: GeneratorKind,
    pub n: usize,
    /// Half-width of the uniform jitter added to coordinates.
    pub noise: f64,
    pub seed: u64,
}

impl CloudGenSpec {
    pub fn validate(&self) -> Result<()> {
        if self.n < 2 {
            return Err(Error::InvalidSpec(format!(
                "need at least 2 points, got {}",
                self.n
            )));
        }
        if !(self.noise >= 0.0 && self.noise.is_finite()) {
            return Err(Error::InvalidSpec(format!(
                "noise must be finite and >= 0, got {}",
                self.noise
            )));
        }
        Ok(())
    }

    pub fn generate(&self) -> Result<Cloud> {
        self.validate()?;
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        let jitter = |rng: &mut ChaCha8Rng| {
            if self.noise > 0.0 {
                self.noise * rng.random_range(-1.0..1.0)
            } else {
                0.0
            }
        };
        let (sin30, cos30) = (PI / 6.0).sin_cos();
        let mut points = Vec::with_capacity(self.n);
        for i in 0..self.n {
            let (x, y) = match self.kind {
                GeneratorKind::UniformBox => {
                    let x = rng.random_range(0.0..4.0);
                    let y = rng.random_range(0.0..3.0);
                    (x + jitter(&mut rng), y + jitter(&mut rng))
                }
                GeneratorKind::LineWithNoise => {
                    let x = rng.random_range(-2.0..2.0);
                    (x, 2.0 * x + jitter(&mut rng))
                }
                GeneratorKind::Ellipse => {
                    let t = rng.random_range(0.0..TAU);
                    let (u, v) = (2.0 * t.cos(), t.sin());
                    (
                        cos30 * u - sin30 * v + jitter(&mut rng),
                        sin30 * u + cos30 * v + jitter(&mut rng),
                    )
                }
                GeneratorKind::Scheme => {
                    let t: f64 = rng.random_range(0.0..1.0);
                    let (x, y) = if i % 2 == 0 {
                        (2.0 * t, 3.0 * t)
                    } else {
                        (2.0 + 2.0 * t, 3.0 - 1.5 * t)
                    };
                    (x + jitter(&mut rng), y + jitter(&mut rng))
                }
            };
            points.push(Point::new(x, y)?);
        }
        Cloud::new(points)
    }
}
