//! Invariants for a single matrix, via a linear family through the identity
//! and that matrix.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::family::{KernelSpec, OneParamFamily};
use crate::transform::{Mat2, Matrix2};

/// A linear family `A(φ)` with `A(phi_star) = I` and `A(phi_one) = target`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Embedding {
    pub family: OneParamFamily,
    pub phi_star: f64,
    pub phi_one: f64,
    pub target: Matrix2,
}

impl Embedding {
    /// Canonical embedding `A(φ) = I + φ·(target − I)`, so `φ* = 0` and `φ₁ = 1`.
    ///
    /// Any other linear family through both points yields the same kernel up
    /// to a positive constant factor.
    pub fn new(target: Matrix2) -> Result<Self> {
        let direction = target.mat().sub(&Mat2::IDENTITY);
        if direction.max_abs() <= crate::DEGENERACY_EPS {
            return Err(Error::DegenerateTarget);
        }
        Ok(Embedding {
            family: OneParamFamily::Linear {
                a0: Mat2::IDENTITY,
                b: direction,
            },
            phi_star: 0.0,
            phi_one: 1.0,
            target,
        })
    }

    /// `(t₁₂, t₂₁, t₁₁ − t₂₂)` with `t = target − I`.
    pub fn kernel_spec(&self) -> KernelSpec {
        let t = self.target.mat().sub(&Mat2::IDENTITY);
        KernelSpec::new(t.b, t.c, t.a - t.d)
    }

    pub fn kernel_value(&self, m: f64, h: f64) -> Result<f64> {
        self.kernel_spec().kernel_value(m, h)
    }

    /// Kernel of the spec rescaled to unit max-norm; comparable across targets.
    pub fn normalized_kernel_value(&self, m: f64, h: f64) -> Result<f64> {
        self.kernel_spec().normalized().kernel_value(m, h)
    }
}

pub fn embed(target: Matrix2) -> Result<Embedding> {
    Embedding::new(target)
}

pub fn kernel_for_matrix(target: Matrix2, m: f64, h: f64) -> Result<f64> {
    Embedding::new(target)?.kernel_value(m, h)
}
