#![allow(dead_code)]

use cloudinv::{Cloud, KernelSpec, Mat2, Matrix2, OneParamFamily};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const M0: f64 = 1.52244;
pub const H0: f64 = 2.46998;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Offset, tilted, anisotropic cloud so that (M, H) varies widely.
pub fn random_cloud(rng: &mut impl Rng, n: usize) -> Cloud {
    let cx = rng.random_range(-5.0..5.0);
    let cy = rng.random_range(-5.0..5.0);
    let sx = rng.random_range(0.5..3.0);
    let sy = rng.random_range(0.1..3.0);
    let slope = rng.random_range(-3.0..3.0);
    Cloud::from_xy((0..n).map(|_| {
        let u: f64 = rng.random_range(-1.0..1.0);
        let v: f64 = rng.random_range(-1.0..1.0);
        let x = cx + sx * u;
        (x, cy + slope * (x - cx) + sy * v)
    }))
    .unwrap()
}

pub fn random_matrix(rng: &mut impl Rng) -> Matrix2 {
    loop {
        let m = Mat2::new(
            rng.random_range(-2.0..2.0),
            rng.random_range(-2.0..2.0),
            rng.random_range(-2.0..2.0),
            rng.random_range(-2.0..2.0),
        );
        if m.det().abs() >= 0.1 {
            return Matrix2::try_from(m).unwrap();
        }
    }
}

/// `(M, H)` with `|M| ≤ 3` and `H − M²` in `[lo, hi]`.
pub fn random_mh(rng: &mut impl Rng, lo: f64, hi: f64) -> (f64, f64) {
    let m = rng.random_range(-3.0..3.0);
    (m, m * m + rng.random_range(lo..hi))
}

/// Linear family through I and (0.4, -0.4; -0.05, 0.9).
pub fn case_study_family() -> OneParamFamily {
    OneParamFamily::Linear {
        a0: Mat2::new(-2.0, -2.0, -0.25, 0.5),
        b: Mat2::new(12.0, 8.0, 1.0, 2.0),
    }
}

pub fn all_families() -> [OneParamFamily; 5] {
    [
        OneParamFamily::Diagonal,
        OneParamFamily::UpperTriangular,
        OneParamFamily::LowerTriangular,
        OneParamFamily::Rotation,
        case_study_family(),
    ]
}

/// A parameter range that stays clear of the family's singular members.
pub fn random_phi(rng: &mut impl Rng, fam: &OneParamFamily) -> f64 {
    match fam {
        OneParamFamily::Diagonal => {
            let mag = rng.random_range(0.1..4.0);
            if rng.random_bool(0.5) {
                mag
            } else {
                -mag
            }
        }
        OneParamFamily::UpperTriangular | OneParamFamily::LowerTriangular => {
            rng.random_range(-3.0..3.0)
        }
        OneParamFamily::Rotation => rng.random_range(-std::f64::consts::PI..std::f64::consts::PI),
        OneParamFamily::Linear { .. } => rng.random_range(-1.0..1.0),
    }
}

/// Kernel denominator at least `frac` of its term magnitude (floored at 1).
pub fn well_conditioned(spec: &KernelSpec, m: f64, h: f64, frac: f64) -> bool {
    let scale = (h * spec.bprime).abs() + spec.gprime.abs() + (spec.delta * m).abs();
    spec.denominator_base(m, h).abs() >= frac * scale.max(1.0)
}

pub fn rel_err(a: f64, b: f64) -> f64 {
    let s = a.abs().max(b.abs());
    if s == 0.0 {
        0.0
    } else {
        (a - b).abs() / s
    }
}

/// Prints a one-line verdict and returns it.
pub fn verdict(id: &str, desc: &str, ok: bool, detail: String) -> bool {
    println!(
        "[{}] {id}: {desc} ({detail})",
        if ok { "PASS" } else { "FAIL" }
    );
    ok
}
