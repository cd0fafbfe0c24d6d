//! Uniform approximation across coalescing stationary points. For a cubic
//! phase on the whole line
//!
//! ```text
//! ∫ exp(iλ(a t³ + b t² + c t)) dt = 2π exp(iλh0) Ai(-λ^{2/3} D / (3a)^{4/3}) / (3aλ)^{1/3}
//! ```
//!
//! with `D = b² - 3ac`. This is exact, stays finite at `D = 0` and continues
//! to the evanescent side `D < 0`.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::airy::airy_ai;
use super::spa::CubicPhase;
use super::{Method, SpectrumSample};
use crate::error::{Error, Result};
use crate::frenet_serret::{AlphaW, FsParams};
use crate::minkowski::PlaneWave;

/// Airy value for coefficients `a > 0, b, c` and large parameter `λ`.
pub fn airy_cubic_coefficients(a: f64, b: f64, c: f64, lambda: f64) -> Complex64 {
    let d = b * b - 3.0 * a * c;
    let h0 = (2.0 * b * b * b - 9.0 * a * b * c) / (27.0 * a * a);
    let x = -lambda.powf(2.0 / 3.0) * d / (3.0 * a).powf(4.0 / 3.0);
    let mag = 2.0 * PI * airy_ai(x) / (3.0 * a * lambda).cbrt();
    Complex64::from_polar(1.0, lambda * h0) * mag
}

pub fn airy_cubic(p: &CubicPhase) -> Complex64 {
    airy_cubic_coefficients(p.a, p.b, p.c, p.lambda)
}

/// `2π Ai(0) / (|α·w| k0 / 2)^{1/3}`, the magnitude at `k = k_c`.
pub fn fs_caustic_magnitude(aw: &AlphaW, wave: &PlaneWave) -> f64 {
    wave.e0 * 2.0 * PI * super::airy::AI_ZERO / (aw.alpha_dot_w.abs() * wave.k0() / 2.0).cbrt()
}

/// Airy spectrum of the Frenet-Serret signal. The received phase
/// `Φ_s - k x = k0 (α·w x³/6 + α1κ1 x²/2 + (α0 - k/k0) x)` is an exact cubic;
/// a negative `α·w` is handled by mirroring `x → -x`.
pub fn airy_fs_spectrum(aw: &AlphaW, params: &FsParams, wave: &PlaneWave, k: f64) -> Result<SpectrumSample> {
    let awd = aw.alpha_dot_w;
    if awd == 0.0 {
        return Err(Error::Precondition(
            "Airy approximation needs a quadratic wavenumber (alpha . w != 0)".into(),
        ));
    }
    let k0 = wave.k0();
    let a = awd / 6.0;
    let b = 0.5 * aw.alpha1_kappa1(params);
    let c = aw.alpha[0] - k / k0;
    let (a, c) = if a < 0.0 { (-a, -c) } else { (a, c) };
    Ok(SpectrumSample {
        k,
        value: airy_cubic_coefficients(a, b, c, k0) * wave.e0,
        method: Method::Airy,
    })
}
