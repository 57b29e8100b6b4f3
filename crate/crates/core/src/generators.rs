//! Infinitesimal generators of the induced (M, H) map at the identity, and
//! finite-difference residuals of the first-order invariance conditions.
//!
//! A smooth `I(M, H)` is invariant under a set of matrices containing the
//! identity exactly when `ξ¹ ∂I/∂M + ξ²∂I/∂H = 0` for every generator field
//! `(ξ¹, ξ²)` of the set. Derivatives of `I` are taken numerically here; the
//! kernels are black boxes.

use serde::Serialize;

use crate::coefficients::LinearCoefficients;
use crate::error::{Error, Result};
use crate::transform::{Mat2, Matrix2};

pub const DEFAULT_STEP: f64 = 1e-5;
pub const DEFAULT_THRESHOLD: f64 = 1e-6;

/// One of the four matrix entries, differentiated at the identity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum GeneratorField {
    Alpha,
    Beta,
    Gamma,
    Delta,
}

impl GeneratorField {
    pub const ALL: [GeneratorField; 4] = [
        GeneratorField::Alpha,
        GeneratorField::Beta,
        GeneratorField::Gamma,
        GeneratorField::Delta,
    ];

    /// `(∂M̂/∂Q, ∂Ĥ/∂Q)` at the identity:
    ///
    /// | Q | ξ¹ | ξ² |
    /// |---|----|----|
    /// | α | −M | −2H |
    /// | β | H − 2M² | −2HM |
    /// | γ | 1 | 2M |
    /// | δ | M | 2H |
    pub fn value(self, m: f64, h: f64) -> (f64, f64) {
        match self {
            GeneratorField::Alpha => (-m, -2.0 * h),
            GeneratorField::Beta => (h - 2.0 * m * m, -2.0 * h * m),
            GeneratorField::Gamma => (1.0, 2.0 * m),
            GeneratorField::Delta => (m, 2.0 * h),
        }
    }

    /// Unit direction of this entry in matrix space.
    fn direction(self) -> Mat2 {
        match self {
            GeneratorField::Alpha => Mat2::new(1.0, 0.0, 0.0, 0.0),
            GeneratorField::Beta => Mat2::new(0.0, 1.0, 0.0, 0.0),
            GeneratorField::Gamma => Mat2::new(0.0, 0.0, 1.0, 0.0),
            GeneratorField::Delta => Mat2::new(0.0, 0.0, 0.0, 1.0),
        }
    }
}

pub fn generator_value(g: GeneratorField, m: f64, h: f64) -> (f64, f64) {
    g.value(m, h)
}

/// Largest component gap between [`GeneratorField::value`] and a central
/// difference of the induced coefficient map along `g` at the identity.
///
/// Uses the five-point stencil (error `O(step⁴)`). The three-point one
/// leaves `step²·H(4MH − 8M³)` in the β direction, over 1e-7 near
/// `|M|, |H| ≈ 10` at `step = 1e-5`.
pub fn generator_fd_deviation(g: GeneratorField, m: f64, h: f64, step: f64) -> Result<f64> {
    check_step(step)?;
    let lc = LinearCoefficients::new(m, h)?;
    let dir = g.direction();
    let at = |t: f64| -> Result<LinearCoefficients> {
        Matrix2::try_from(Mat2::IDENTITY.add(&dir.scale(t)))?.induced_coefficients(lc)
    };
    let (p1, m1, p2, m2) = (at(step)?, at(-step)?, at(2.0 * step)?, at(-2.0 * step)?);
    let d = |f1: f64, f_1: f64, f2: f64, f_2: f64| (8.0 * (f1 - f_1) - (f2 - f_2)) / (12.0 * step);
    let fd = (d(p1.m, m1.m, p2.m, m2.m), d(p1.h, m1.h, p2.h, m2.h));
    let (x1, x2) = g.value(m, h);
    Ok((fd.0 - x1).abs().max((fd.1 - x2).abs()))
}

/// Derivative data of a one-parameter family at its identity parameter:
/// `β'(φ*)`, `γ'(φ*)` and `δ = α'(φ*) − δ'(φ*)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FamilyGenerator {
    pub bprime: f64,
    pub gprime: f64,
    pub delta: f64,
}

impl FamilyGenerator {
    pub fn new(bprime: f64, gprime: f64, delta: f64) -> Result<Self> {
        if bprime.is_finite() && gprime.is_finite() && delta.is_finite() {
            Ok(FamilyGenerator {
                bprime,
                gprime,
                delta,
            })
        } else {
            Err(Error::NonFinite("family generator"))
        }
    }

    pub fn is_degenerate(&self) -> bool {
        self.bprime == 0.0 && self.gprime == 0.0 && self.delta == 0.0
    }

    /// The reduced field
    /// `((H − 2M²)β' − δM + γ',  2(γ'M − β'HM − δH))`.
    pub fn field(&self, m: f64, h: f64) -> (f64, f64) {
        let Self {
            bprime,
            gprime,
            delta,
        } = *self;
        (
            (h - 2.0 * m * m) * bprime - delta * m + gprime,
            2.0 * (gprime * m - bprime * h * m - delta * h),
        )
    }
}

/// A scalar function of `(M, H)` whose invariance is being checked.
///
/// Closures returning a non-finite value count as singular at that point.
pub trait Kernel {
    fn eval(&self, m: f64, h: f64) -> Result<f64>;
}

impl<F> Kernel for F
where
    F: Fn(f64, f64) -> f64,
{
    fn eval(&self, m: f64, h: f64) -> Result<f64> {
        let v = self(m, h);
        if v.is_finite() {
            Ok(v)
        } else {
            Err(Error::KernelSingular { m, h })
        }
    }
}

fn check_step(step: f64) -> Result<()> {
    if step > 0.0 && step.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidStep(step))
    }
}

/// Central-difference gradient. The step is scaled by `max(1, |M|, |H|)`.
pub fn central_gradient<K: Kernel + ?Sized>(
    kernel: &K,
    m: f64,
    h: f64,
    step: f64,
) -> Result<(f64, f64)> {
    check_step(step)?;
    let s = step * 1f64.max(m.abs()).max(h.abs());
    let dm = (kernel.eval(m + s, h)? - kernel.eval(m - s, h)?) / (2.0 * s);
    let dh = (kernel.eval(m, h + s)? - kernel.eval(m, h - s)?) / (2.0 * s);
    Ok((dm, dh))
}

fn apply_field(field: (f64, f64), grad: (f64, f64)) -> f64 {
    field.0 * grad.0 + field.1 * grad.1
}

/// Left side of the one-parameter invariance condition for `kernel`.
pub fn family_pde_residual<K: Kernel + ?Sized>(
    fg: &FamilyGenerator,
    kernel: &K,
    m: f64,
    h: f64,
    step: f64,
) -> Result<f64> {
    let grad = central_gradient(kernel, m, h, step)?;
    Ok(apply_field(fg.field(m, h), grad))
}

/// `X_Q I` for Q = α, β, γ, δ, in that order.
pub fn full_pde_residuals<K: Kernel + ?Sized>(
    kernel: &K,
    m: f64,
    h: f64,
    step: f64,
) -> Result<[f64; 4]> {
    let grad = central_gradient(kernel, m, h, step)?;
    Ok(GeneratorField::ALL.map(|g| apply_field(g.value(m, h), grad)))
}

/// Step and residual threshold for pointwise invariance verdicts.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InvarianceCheck {
    pub step: f64,
    pub threshold: f64,
}

impl Default for InvarianceCheck {
    fn default() -> Self {
        InvarianceCheck {
            step: DEFAULT_STEP,
            threshold: DEFAULT_THRESHOLD,
        }
    }
}

impl InvarianceCheck {
    pub fn holds_at<K: Kernel + ?Sized>(
        &self,
        fg: &FamilyGenerator,
        kernel: &K,
        m: f64,
        h: f64,
    ) -> Result<bool> {
        Ok(family_pde_residual(fg, kernel, m, h, self.step)?.abs() <= self.threshold)
    }
}
