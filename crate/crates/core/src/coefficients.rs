//! Raw second-moment sums and the linear coefficients (M, H) of a planar cloud.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::DEGENERACY_EPS;

/// A point of the plane with finite coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Point {
    x: f64,
    y: f64,
}

impl Point {
    pub fn new(x: f64, y: f64) -> Result<Self> {
        if x.is_finite() && y.is_finite() {
            Ok(Point { x, y })
        } else {
            Err(Error::NonFinitePoint { x, y })
        }
    }

    #[inline]
    pub fn x(&self) -> f64 {
        self.x
    }

    #[inline]
    pub fn y(&self) -> f64 {
        self.y
    }
}

/// An ordered set of at least two points.
#[derive(Debug, Clone, PartialEq)]
pub struct Cloud {
    points: Vec<Point>,
}

impl Cloud {
    pub fn new(points: Vec<Point>) -> Result<Self> {
        if points.len() < 2 {
            return Err(Error::TooFewPoints(points.len()));
        }
        Ok(Cloud { points })
    }

    /// Builds a cloud from coordinate pairs, validating every point.
    pub fn from_xy<I>(coords: I) -> Result<Self>
    where
        I: IntoIterator<Item = (f64, f64)>,
    {
        let points = coords
            .into_iter()
            .map(|(x, y)| Point::new(x, y))
            .collect::<Result<Vec<_>>>()?;
        Cloud::new(points)
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn raw_sums(&self) -> RawSums {
        Moments::of(self).raw_sums()
    }

    pub fn linear_coefficients(&self) -> Result<LinearCoefficients> {
        Moments::of(self).linear_coefficients()
    }

    pub fn is_collinear(&self, tol: f64) -> bool {
        self.raw_sums().is_collinear(tol)
    }
}

/// The centered sums `(M_n, H_n, D)`:
///
/// ```text
/// M_n = N Σxy − Σx Σy,   H_n = N Σy² − (Σy)²,   D = N Σx² − (Σx)²
/// ```
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RawSums {
    pub mn: f64,
    pub hn: f64,
    pub d: f64,
}

impl RawSums {
    /// `hn·d − mn²`, nonnegative up to rounding and zero exactly on collinear clouds.
    pub fn gram_determinant(&self) -> f64 {
        self.hn * self.d - self.mn * self.mn
    }

    pub fn is_collinear(&self, tol: f64) -> bool {
        let hd = self.hn * self.d;
        self.gram_determinant() <= tol * hd.max(1.0)
    }

    /// Divides by `D`. Without the original coordinates the degeneracy scale
    /// falls back to `max(1, |D|)`.
    pub fn to_coefficients(&self) -> Result<LinearCoefficients> {
        coefficients_with_scale(*self, self.d.abs())
    }
}

/// The pair `(M, H)`: least-squares slope and the ratio of centered y to x spread.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LinearCoefficients {
    pub m: f64,
    pub h: f64,
}

impl LinearCoefficients {
    pub fn new(m: f64, h: f64) -> Result<Self> {
        if m.is_finite() && h.is_finite() {
            Ok(LinearCoefficients { m, h })
        } else {
            Err(Error::NonFinite("linear coefficients"))
        }
    }

    /// `H − M²`; zero on the collinearity level set.
    pub fn collinearity_gap(&self) -> f64 {
        self.h - self.m * self.m
    }
}

fn coefficients_with_scale(rs: RawSums, scale: f64) -> Result<LinearCoefficients> {
    if rs.d.abs() <= DEGENERACY_EPS * scale.max(1.0) {
        return Err(Error::DegenerateCloud { d: rs.d });
    }
    LinearCoefficients::new(rs.mn / rs.d, rs.hn / rs.d)
}

/// Single-pass running means and co-moments (Welford update). Centering as we
/// go keeps offset clouds away from the cancellation in `NΣxy − ΣxΣy`.
#[derive(Debug, Default, Clone, Copy)]
struct Moments {
    n: f64,
    mean_x: f64,
    mean_y: f64,
    cxx: f64,
    cyy: f64,
    cxy: f64,
    sum_x2: f64,
}

impl Moments {
    fn of(cloud: &Cloud) -> Self {
        let mut acc = Moments::default();
        for p in cloud.points() {
            acc.push(p.x, p.y);
        }
        acc
    }

    #[inline]
    fn push(&mut self, x: f64, y: f64) {
        self.n += 1.0;
        let dx = x - self.mean_x;
        let dy = y - self.mean_y;
        self.mean_x += dx / self.n;
        self.mean_y += dy / self.n;
        let dx_new = x - self.mean_x;
        let dy_new = y - self.mean_y;
        self.cxx += dx * dx_new;
        self.cyy += dy * dy_new;
        self.cxy += dx * dy_new;
        self.sum_x2 += x * x;
    }

    fn raw_sums(&self) -> RawSums {
        RawSums {
            mn: self.n * self.cxy,
            hn: (self.n * self.cyy).max(0.0),
            d: (self.n * self.cxx).max(0.0),
        }
    }

    fn linear_coefficients(&self) -> Result<LinearCoefficients> {
        coefficients_with_scale(self.raw_sums(), self.n * self.sum_x2)
    }
}

pub fn raw_sums(cloud: &Cloud) -> RawSums {
    cloud.raw_sums()
}

pub fn linear_coefficients(cloud: &Cloud) -> Result<LinearCoefficients> {
    cloud.linear_coefficients()
}

pub fn is_collinear(cloud: &Cloud, tol: f64) -> bool {
    cloud.is_collinear(tol)
}
