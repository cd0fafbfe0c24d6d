//! Spectrum engines for windowed received signals
//! `S(k) = ∫ A(x) exp(i(Φ(x) - k x)) dx`:
//!
//! * [`quadrature`]: oversampled composite Gauss-Legendre, the reference;
//! * [`spa`]: stationary-phase closed forms, including the cubic-phase cases;
//! * [`uniform`]: the Airy approximation valid through a caustic.

pub mod airy;
pub mod quadrature;
pub mod spa;
pub mod uniform;

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::received_signal::{Motion, SignalModel};

pub use airy::{airy_ai, airy_ai_prime};
pub use quadrature::{quadrature_cubic, quadrature_spectrum, QuadratureOptions};
pub use spa::{
    spa_accel_spectrum, spa_cubic, spa_fs_spectrum, spa_jolt_spectrum, CubicCase, CubicPhase, CubicSpa,
    StationaryPointsJolt,
};
pub use uniform::{airy_cubic, airy_fs_spectrum};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Quadrature,
    Spa,
    Airy,
}

impl Method {
    pub const ALL: [Method; 3] = [Method::Quadrature, Method::Spa, Method::Airy];

    pub fn as_str(&self) -> &'static str {
        match self {
            Method::Quadrature => "quadrature",
            Method::Spa => "spa",
            Method::Airy => "airy",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "quadrature" => Ok(Method::Quadrature),
            "spa" => Ok(Method::Spa),
            "airy" => Ok(Method::Airy),
            other => Err(Error::config(
                "methods",
                format!("unknown method `{other}` (expected quadrature, spa or airy)"),
            )),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SpectrumSample {
    pub k: f64,
    pub value: Complex64,
    pub method: Method,
}

impl SpectrumSample {
    pub fn magnitude(&self) -> f64 {
        self.value.norm()
    }
}

/// `n` equally spaced wavenumbers over `[lo, hi]`.
pub fn linear_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![0.5 * (lo + hi)],
        _ => {
            let h = (hi - lo) / (n - 1) as f64;
            (0..n)
                .map(|i| if i == n - 1 { hi } else { lo + h * i as f64 })
                .collect()
        }
    }
}

fn undefined(k: f64, method: Method) -> SpectrumSample {
    SpectrumSample {
        k,
        value: Complex64::new(f64::NAN, f64::NAN),
        method,
    }
}

/// Whether `method` has a closed form for this model.
pub fn method_applies(model: &SignalModel, method: Method) -> bool {
    match (method, &model.motion) {
        (Method::Quadrature, _) => true,
        (Method::Spa, Motion::Jolt(p)) => p.a0 > 0.0 || p.j0 > 0.0,
        (Method::Spa, Motion::Accel(_)) => true,
        (Method::Spa, Motion::FsQuadratic { params, alpha_w, .. }) => {
            alpha_w.alpha_dot_w != 0.0 || alpha_w.alpha1_kappa1(params) != 0.0
        }
        (Method::Airy, Motion::FsQuadratic { alpha_w, .. }) => alpha_w.alpha_dot_w != 0.0,
        (Method::Airy, _) => false,
    }
}

/// One engine over a k grid. Wavenumbers without a stationary point, on the
/// evanescent side or on the caustic yield NaN values for the closed forms.
pub fn model_spectrum(
    model: &SignalModel,
    method: Method,
    ks: &[f64],
    opts: &QuadratureOptions,
) -> Result<Vec<SpectrumSample>> {
    if method == Method::Quadrature {
        return quadrature_spectrum(model, ks, opts);
    }
    if !method_applies(model, method) {
        return Ok(ks.iter().map(|&k| undefined(k, method)).collect());
    }
    let wave = &model.wave;
    let window = &model.window;
    let one = |k: f64| -> Result<SpectrumSample> {
        match (method, &model.motion) {
            (Method::Spa, Motion::Jolt(p)) if p.j0 > 0.0 => spa_jolt_spectrum(p, wave, window, k).map(|r| r.0),
            (Method::Spa, Motion::Jolt(p)) | (Method::Spa, Motion::Accel(p)) => spa_accel_spectrum(p, wave, window, k),
            (Method::Spa, Motion::FsQuadratic { params, alpha_w, .. }) => {
                spa_fs_spectrum(alpha_w, params, wave, window, k)
            }
            (Method::Airy, Motion::FsQuadratic { params, alpha_w, .. }) => airy_fs_spectrum(alpha_w, params, wave, k),
            _ => Ok(undefined(k, method)),
        }
    };
    ks.iter()
        .map(|&k| match one(k) {
            Ok(s) => Ok(s),
            Err(Error::NoStationaryPoint { .. } | Error::Evanescent { .. } | Error::Caustic { .. }) => {
                Ok(undefined(k, method))
            }
            Err(Error::Domain(_)) if k <= 0.0 => Ok(undefined(k, method)),
            Err(e) => Err(e),
        })
        .collect()
}
