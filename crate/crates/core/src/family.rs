//! One-parameter matrix families `A(φ)` and their invariant kernels.

use std::fmt;

use serde::Serialize;

use crate::coefficients::LinearCoefficients;
use crate::error::{Error, Result};
use crate::generators::{FamilyGenerator, Kernel};
use crate::transform::Mat2;
use crate::DEGENERACY_EPS;

/// Entrywise tolerance for `A(φ*) = I`.
pub const IDENTITY_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum OneParamFamily {
    /// `diag(1, φ)`
    Diagonal,
    /// `(1 φ; 0 1)`
    UpperTriangular,
    /// `(1 0; φ 1)`
    LowerTriangular,
    /// `(cos φ, sin φ; −sin φ, cos φ)`
    Rotation,
    /// `a0 + φ·b`
    Linear { a0: Mat2, b: Mat2 },
}

impl OneParamFamily {
    /// `A(φ)`, possibly singular.
    pub fn evaluate(&self, phi: f64) -> Mat2 {
        match *self {
            OneParamFamily::Diagonal => Mat2::diag(1.0, phi),
            OneParamFamily::UpperTriangular => Mat2::new(1.0, phi, 0.0, 1.0),
            OneParamFamily::LowerTriangular => Mat2::new(1.0, 0.0, phi, 1.0),
            OneParamFamily::Rotation => Mat2::rotation(phi),
            OneParamFamily::Linear { a0, b } => a0.add(&b.scale(phi)),
        }
    }

    /// The parameter `φ*` with `A(φ*) = I`.
    ///
    /// For `Linear` each entry with `b_ij ≠ 0` pins `φ = (I_ij − a_ij) / b_ij`;
    /// the candidate from the largest `|b_ij|` is taken and every entry,
    /// including those with `b_ij = 0`, must then land on the identity.
    pub fn identity_parameter(&self) -> Result<f64> {
        match *self {
            OneParamFamily::Diagonal => Ok(1.0),
            OneParamFamily::UpperTriangular
            | OneParamFamily::LowerTriangular
            | OneParamFamily::Rotation => Ok(0.0),
            OneParamFamily::Linear { a0, b } => linear_identity_parameter(&a0, &b),
        }
    }

    /// `(β'(φ*), γ'(φ*), α'(φ*) − δ'(φ*))` in closed form.
    pub fn derivative_coefficients(&self) -> Result<FamilyGenerator> {
        let (bp, gp, dl) = match *self {
            OneParamFamily::Diagonal => (0.0, 0.0, -1.0),
            OneParamFamily::UpperTriangular => (1.0, 0.0, 0.0),
            OneParamFamily::LowerTriangular => (0.0, 1.0, 0.0),
            OneParamFamily::Rotation => (1.0, -1.0, 0.0),
            OneParamFamily::Linear { b, .. } => {
                self.identity_parameter()?;
                (b.b, b.c, b.a - b.d)
            }
        };
        FamilyGenerator::new(bp, gp, dl)
    }

    pub fn kernel_spec(&self) -> Result<KernelSpec> {
        self.derivative_coefficients().map(KernelSpec::from)
    }
}

fn linear_identity_parameter(a0: &Mat2, b: &Mat2) -> Result<f64> {
    let a = a0.entries();
    let b = b.entries();
    let target = Mat2::IDENTITY.entries();
    let pivot = (0..4)
        .max_by(|&i, &j| b[i].abs().total_cmp(&b[j].abs()))
        .filter(|&k| b[k] != 0.0)
        .ok_or(Error::NoIdentityParameter)?;
    let phi = (target[pivot] - a[pivot]) / b[pivot];
    if !phi.is_finite() {
        return Err(Error::NoIdentityParameter);
    }
    let consistent = (0..4).all(|i| {
        let v = a[i] + phi * b[i];
        (v - target[i]).abs() <= IDENTITY_TOL * 1f64.max(a[i].abs()).max((phi * b[i]).abs())
    });
    if consistent {
        Ok(phi)
    } else {
        Err(Error::NoIdentityParameter)
    }
}

impl fmt::Display for OneParamFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OneParamFamily::Diagonal => f.write_str("diag"),
            OneParamFamily::UpperTriangular => f.write_str("upper"),
            OneParamFamily::LowerTriangular => f.write_str("lower"),
            OneParamFamily::Rotation => f.write_str("rot"),
            OneParamFamily::Linear { a0, b } => write!(f, "linear:{a0}|{b}"),
        }
    }
}

impl Serialize for OneParamFamily {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Coefficients of the invariant kernel
/// `K(M, H) = (M² − H) / (H·β' − γ' + δ·M)²`.
///
/// Every `F∘K` is invariant under the family the coefficients came from.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct KernelSpec {
    pub bprime: f64,
    pub gprime: f64,
    pub delta: f64,
}

impl From<FamilyGenerator> for KernelSpec {
    fn from(g: FamilyGenerator) -> Self {
        KernelSpec {
            bprime: g.bprime,
            gprime: g.gprime,
            delta: g.delta,
        }
    }
}

impl From<KernelSpec> for FamilyGenerator {
    fn from(k: KernelSpec) -> Self {
        FamilyGenerator {
            bprime: k.bprime,
            gprime: k.gprime,
            delta: k.delta,
        }
    }
}

impl KernelSpec {
    pub fn new(bprime: f64, gprime: f64, delta: f64) -> Self {
        KernelSpec {
            bprime,
            gprime,
            delta,
        }
    }

    pub fn is_degenerate(&self) -> bool {
        self.bprime == 0.0 && self.gprime == 0.0 && self.delta == 0.0
    }

    pub fn denominator_base(&self, m: f64, h: f64) -> f64 {
        h * self.bprime - self.gprime + self.delta * m
    }

    pub fn kernel_value(&self, m: f64, h: f64) -> Result<f64> {
        if self.is_degenerate() {
            return Err(Error::DegenerateGenerator);
        }
        let base = self.denominator_base(m, h);
        let scale = (h * self.bprime).abs() + self.gprime.abs() + (self.delta * m).abs();
        if base.abs() <= DEGENERACY_EPS * scale.max(1.0) {
            return Err(Error::KernelSingular { m, h });
        }
        let v = (m * m - h) / (base * base);
        if v.is_finite() {
            Ok(v)
        } else {
            Err(Error::KernelSingular { m, h })
        }
    }

    pub fn kernel_at(&self, lc: LinearCoefficients) -> Result<f64> {
        self.kernel_value(lc.m, lc.h)
    }

    /// Same direction, coefficients multiplied by `k`; the kernel scales by `1/k²`.
    pub fn scaled(&self, k: f64) -> Self {
        KernelSpec::new(k * self.bprime, k * self.gprime, k * self.delta)
    }

    /// Rescaled to unit max-norm. Degenerate specs are returned unchanged.
    pub fn normalized(&self) -> Self {
        let n = self
            .bprime
            .abs()
            .max(self.gprime.abs())
            .max(self.delta.abs());
        if n == 0.0 {
            *self
        } else {
            self.scaled(1.0 / n)
        }
    }
}

impl Kernel for KernelSpec {
    fn eval(&self, m: f64, h: f64) -> Result<f64> {
        self.kernel_value(m, h)
    }
}

pub fn evaluate(fam: &OneParamFamily, phi: f64) -> Mat2 {
    fam.evaluate(phi)
}

pub fn identity_parameter(fam: &OneParamFamily) -> Result<f64> {
    fam.identity_parameter()
}

pub fn derivative_coefficients(fam: &OneParamFamily) -> Result<FamilyGenerator> {
    fam.derivative_coefficients()
}

pub fn kernel_value(ks: &KernelSpec, m: f64, h: f64) -> Result<f64> {
    ks.kernel_value(m, h)
}

/// `H / M²`, the classical form of the diagonal-family invariant. It equals
/// `1 − K` for the diagonal kernel `K = (M² − H)/M²`.
pub fn h_over_m_squared(m: f64, h: f64) -> Result<f64> {
    let v = h / (m * m);
    if m.abs() > 0.0 && v.is_finite() {
        Ok(v)
    } else {
        Err(Error::KernelSingular { m, h })
    }
}
