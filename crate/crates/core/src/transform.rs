//! 2×2 linear maps acting on clouds, and the rational map they induce on (M, H).

use std::fmt;
use std::ops::Mul;

use serde::{Serialize, Serializer};

use crate::coefficients::{Cloud, LinearCoefficients, Point, RawSums};
use crate::error::{Error, Result};
use crate::DEGENERACY_EPS;

/// Row-major entries `(a b; c d)` with no invertibility requirement.
///
/// Family curves pass through singular matrices (`diag(1, 0)`, say), so this
/// type is what families evaluate to. Convert to [`Matrix2`] before acting
/// on anything.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat2 {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

impl Mat2 {
    pub const IDENTITY: Mat2 = Mat2 {
        a: 1.0,
        b: 0.0,
        c: 0.0,
        d: 1.0,
    };
    pub const ZERO: Mat2 = Mat2 {
        a: 0.0,
        b: 0.0,
        c: 0.0,
        d: 0.0,
    };

    pub const fn new(a: f64, b: f64, c: f64, d: f64) -> Self {
        Mat2 { a, b, c, d }
    }

    pub fn diag(a: f64, d: f64) -> Self {
        Mat2::new(a, 0.0, 0.0, d)
    }

    /// `(cos φ, sin φ; −sin φ, cos φ)`.
    pub fn rotation(phi: f64) -> Self {
        let (s, c) = phi.sin_cos();
        Mat2::new(c, s, -s, c)
    }

    pub fn det(&self) -> f64 {
        self.a * self.d - self.b * self.c
    }

    pub fn entries(&self) -> [f64; 4] {
        [self.a, self.b, self.c, self.d]
    }

    pub fn max_abs(&self) -> f64 {
        self.entries().iter().fold(0.0_f64, |m, v| m.max(v.abs()))
    }

    pub fn is_finite(&self) -> bool {
        self.entries().iter().all(|v| v.is_finite())
    }

    pub fn scale(&self, k: f64) -> Mat2 {
        Mat2::new(k * self.a, k * self.b, k * self.c, k * self.d)
    }

    pub fn add(&self, o: &Mat2) -> Mat2 {
        Mat2::new(self.a + o.a, self.b + o.b, self.c + o.c, self.d + o.d)
    }

    pub fn sub(&self, o: &Mat2) -> Mat2 {
        Mat2::new(self.a - o.a, self.b - o.b, self.c - o.c, self.d - o.d)
    }

    pub fn matmul(&self, o: &Mat2) -> Mat2 {
        Mat2::new(
            self.a * o.a + self.b * o.c,
            self.a * o.b + self.b * o.d,
            self.c * o.a + self.d * o.c,
            self.c * o.b + self.d * o.d,
        )
    }

    /// Largest entrywise distance to `o`.
    pub fn max_abs_diff(&self, o: &Mat2) -> f64 {
        self.sub(o).max_abs()
    }
}

impl fmt::Display for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{};{},{}", self.a, self.b, self.c, self.d)
    }
}

impl Serialize for Mat2 {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        [[self.a, self.b], [self.c, self.d]].serialize(s)
    }
}

/// An invertible 2×2 matrix `(α β; γ δ)`.
///
/// Rejected at construction when `|det| ≤ 1e-12 · max(1, max|entry|²)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(transparent)]
pub struct Matrix2(Mat2);

impl Matrix2 {
    pub const IDENTITY: Matrix2 = Matrix2(Mat2::IDENTITY);

    pub fn new(a: f64, b: f64, c: f64, d: f64) -> Result<Self> {
        Matrix2::try_from(Mat2::new(a, b, c, d))
    }

    pub fn rotation(phi: f64) -> Self {
        // det = cos² + sin² never vanishes
        Matrix2(Mat2::rotation(phi))
    }

    pub fn mat(&self) -> &Mat2 {
        &self.0
    }

    pub fn alpha(&self) -> f64 {
        self.0.a
    }
    pub fn beta(&self) -> f64 {
        self.0.b
    }
    pub fn gamma(&self) -> f64 {
        self.0.c
    }
    pub fn delta(&self) -> f64 {
        self.0.d
    }

    pub fn det(&self) -> f64 {
        self.0.det()
    }

    /// `κ·A`; fails only if the scaled matrix trips the invertibility tolerance.
    pub fn scaled(&self, k: f64) -> Result<Self> {
        Matrix2::try_from(self.0.scale(k))
    }

    /// `self · rhs`, i.e. apply `rhs` first.
    pub fn compose(&self, rhs: &Matrix2) -> Result<Self> {
        Matrix2::try_from(self.0.matmul(&rhs.0))
    }

    #[inline]
    pub fn apply_point(&self, p: Point) -> Result<Point> {
        let m = &self.0;
        Point::new(m.a * p.x() + m.b * p.y(), m.c * p.x() + m.d * p.y())
    }

    /// Pointwise image of the cloud; order and length preserved.
    ///
    /// Fails only if a coordinate overflows to infinity.
    pub fn apply_to_cloud(&self, cloud: &Cloud) -> Result<Cloud> {
        let pts = cloud
            .points()
            .iter()
            .map(|&p| self.apply_point(p))
            .collect::<Result<Vec<_>>>()?;
        Cloud::new(pts)
    }

    /// Transformed raw sums:
    /// `M̂n = αγD + (αδ+βγ)Mn + βδHn`, `Ĥn = γ²D + δ²Hn + 2γδMn`,
    /// `D̂ = α²D + β²Hn + 2αβMn`.
    pub fn induced_raw(&self, rs: RawSums) -> RawSums {
        let Mat2 { a, b, c, d } = self.0;
        RawSums {
            mn: a * c * rs.d + (a * d + b * c) * rs.mn + b * d * rs.hn,
            hn: c * c * rs.d + d * d * rs.hn + 2.0 * c * d * rs.mn,
            d: a * a * rs.d + b * b * rs.hn + 2.0 * a * b * rs.mn,
        }
    }

    /// `D̂ / D = 2αβM + β²H + α²`.
    pub fn image_denominator(&self, lc: LinearCoefficients) -> f64 {
        let Mat2 { a, b, .. } = self.0;
        2.0 * a * b * lc.m + b * b * lc.h + a * a
    }

    /// Closed-form coefficients of the image cloud, from `(M, H)` alone.
    pub fn induced_coefficients(&self, lc: LinearCoefficients) -> Result<LinearCoefficients> {
        let Mat2 { a, b, c, d } = self.0;
        let (m, h) = (lc.m, lc.h);
        let den = self.image_denominator(lc);
        let scale = a * a + b * b * h.abs() + 2.0 * (a * b * m).abs();
        if den.abs() <= DEGENERACY_EPS * scale.max(1.0) {
            return Err(Error::DegenerateImage { denominator: den });
        }
        let m_hat = ((a * d + b * c) * m + b * d * h + a * c) / den;
        let h_hat = (2.0 * c * d * m + d * d * h + c * c) / den;
        LinearCoefficients::new(m_hat, h_hat)
    }
}

impl TryFrom<Mat2> for Matrix2 {
    type Error = Error;

    fn try_from(m: Mat2) -> Result<Self> {
        if !m.is_finite() {
            return Err(Error::NonFiniteMatrix);
        }
        let det = m.det();
        let norm = m.max_abs();
        if det.abs() <= DEGENERACY_EPS * (norm * norm).max(1.0) {
            return Err(Error::SingularMatrix { det });
        }
        Ok(Matrix2(m))
    }
}

impl From<Matrix2> for Mat2 {
    fn from(m: Matrix2) -> Mat2 {
        m.0
    }
}

impl Mul for Matrix2 {
    type Output = Result<Matrix2>;

    fn mul(self, rhs: Matrix2) -> Result<Matrix2> {
        self.compose(&rhs)
    }
}

impl fmt::Display for Matrix2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

pub fn apply_to_cloud(m: &Matrix2, cloud: &Cloud) -> Result<Cloud> {
    m.apply_to_cloud(cloud)
}

pub fn induced_raw(m: &Matrix2, rs: RawSums) -> RawSums {
    m.induced_raw(rs)
}

pub fn induced_coefficients(m: &Matrix2, lc: LinearCoefficients) -> Result<LinearCoefficients> {
    m.induced_coefficients(lc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lc(m: f64, h: f64) -> LinearCoefficients {
        LinearCoefficients::new(m, h).unwrap()
    }

    #[test]
    fn rejects_singular_and_nonfinite() {
        assert!(matches!(
            Matrix2::new(1.0, 2.0, 2.0, 4.0),
            Err(Error::SingularMatrix { .. })
        ));
        assert!(matches!(
            Matrix2::new(1.0, 0.0, 0.0, 0.0),
            Err(Error::SingularMatrix { .. })
        ));
        assert_eq!(
            Matrix2::new(f64::NAN, 0.0, 0.0, 1.0),
            Err(Error::NonFiniteMatrix)
        );
        // tolerance is relative to the entry scale
        assert!(Matrix2::new(1e8, 1e8, 1e8, 1e8 + 1e-5).is_err());
        assert!(Matrix2::new(1e-3, 0.0, 0.0, 1e-3).is_ok());
    }

    #[test]
    fn identity_leaves_cloud_alone() {
        let c = Cloud::from_xy([(0.5, -2.0), (3.0, 1.0), (-1.0, 7.25)]).unwrap();
        assert_eq!(Matrix2::IDENTITY.apply_to_cloud(&c).unwrap(), c);
    }

    #[test]
    fn diagonal_scales_y() {
        let c = Cloud::from_xy([(1.0, 1.0), (2.0, 0.0)]).unwrap();
        let img = Matrix2::new(1.0, 0.0, 0.0, 2.0)
            .unwrap()
            .apply_to_cloud(&c)
            .unwrap();
        assert_eq!(img, Cloud::from_xy([(1.0, 2.0), (2.0, 0.0)]).unwrap());
    }

    #[test]
    fn quarter_turn_maps_x_axis_down() {
        let c = Cloud::from_xy([(1.0, 0.0), (0.0, 1.0), (2.0, 3.0)]).unwrap();
        let img = Matrix2::rotation(std::f64::consts::FRAC_PI_2)
            .apply_to_cloud(&c)
            .unwrap();
        let p = img.points()[0];
        assert!(p.x().abs() < 1e-15);
        assert_eq!(p.y(), -1.0);
    }

    #[test]
    fn induced_raw_examples() {
        let rs = RawSums {
            mn: 0.7,
            hn: 2.5,
            d: 3.0,
        };
        assert_eq!(Matrix2::IDENTITY.induced_raw(rs), rs);
        let diag = Matrix2::new(1.0, 0.0, 0.0, 2.0).unwrap();
        assert_eq!(
            diag.induced_raw(rs),
            RawSums {
                mn: 1.4,
                hn: 10.0,
                d: 3.0
            }
        );
        let shear = Matrix2::new(1.0, 0.7, 0.0, 1.0).unwrap();
        let out = shear.induced_raw(RawSums {
            mn: 0.0,
            hn: 2.0,
            d: 6.0,
        });
        assert!((out.mn - 1.4).abs() < 1e-15);
        assert_eq!(out.hn, 2.0);
        assert!((out.d - 6.98).abs() < 1e-14);
    }

    #[test]
    fn identity_coefficients() {
        let x = lc(1.52244, 2.46998);
        assert_eq!(Matrix2::IDENTITY.induced_coefficients(x).unwrap(), x);
    }

    #[test]
    fn diagonal_doubles_slope_quadruples_h() {
        let out = Matrix2::new(1.0, 0.0, 0.0, 2.0)
            .unwrap()
            .induced_coefficients(lc(1.52244, 2.46998))
            .unwrap();
        assert_eq!(out.m, 2.0 * 1.52244);
        assert_eq!(out.h, 4.0 * 2.46998);
    }

    #[test]
    fn degenerate_image_on_vertical_result() {
        // line y = 2x; x̂ = 2x − y = 0
        let m = Matrix2::new(2.0, -1.0, 0.0, 1.0).unwrap();
        assert!(matches!(
            m.induced_coefficients(lc(2.0, 4.0)),
            Err(Error::DegenerateImage { .. })
        ));
        // horizontal line, quarter turn
        let r = Matrix2::rotation(std::f64::consts::FRAC_PI_2);
        assert!(matches!(
            r.induced_coefficients(lc(0.0, 0.0)),
            Err(Error::DegenerateImage { .. })
        ));
    }

    #[test]
    fn composition_order() {
        let a = Matrix2::new(1.0, 2.0, 0.0, 1.0).unwrap();
        let b = Matrix2::new(0.0, 1.0, 1.0, 0.0).unwrap();
        assert_eq!(*(a * b).unwrap().mat(), Mat2::new(2.0, 1.0, 1.0, 0.0));
    }

    #[test]
    fn display_roundtrips_literal_form() {
        assert_eq!(
            Mat2::new(0.4, -0.4, -0.05, 0.9).to_string(),
            "0.4,-0.4;-0.05,0.9"
        );
    }
}
