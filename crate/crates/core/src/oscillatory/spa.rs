//! Stationary-phase evaluation. Every isolated stationary point `x_s` of
//! `Φ(x) - k x` contributes
//!
//! ```text
//! A(x_s) sqrt(2π / |Φ''(x_s)|) exp(i(Φ(x_s) - k x_s + sgn(Φ''(x_s)) π/4))
//! ```
//!
//! with the principal branches `sqrt(±i) = exp(±iπ/4)`.

use std::f64::consts::{FRAC_PI_4, PI};

use num_complex::Complex64;

use super::{uniform, Method, SpectrumSample};
use crate::error::{Error, Result};
use crate::frenet_serret::{AlphaW, FsParams};
use crate::kinematics::JoltParams;
use crate::minkowski::PlaneWave;
use crate::received_signal::{
    phase_wavenumber_accel, phase_wavenumber_amplitude_jolt, phase_wavenumber_fs, ReceivedSignal, Window,
};

/// Airy argument magnitude below which the two stationary points are treated
/// as coalesced.
pub const COALESCENCE_ARGUMENT: f64 = 2.0;

/// Relative distance to an endpoint below which a stationary point makes the
/// result non-uniform.
pub const ENDPOINT_EPSILON: f64 = 1e-6;

/// Relative size of the stationary-point radicand treated as a caustic.
pub const CAUSTIC_TOLERANCE: f64 = 1e-9;

fn stationary_term(amplitude: f64, phase: f64, curvature: f64) -> Complex64 {
    let mag = amplitude * (2.0 * PI / curvature.abs()).sqrt();
    Complex64::from_polar(mag, phase + curvature.signum() * FRAC_PI_4)
}

/// `h(t) = a t³ + b t² + c t` with `a > 0`, integrated as
/// `∫_{T1}^{T2} exp(iλh(t)) dt`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CubicPhase {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub lambda: f64,
    pub t1: f64,
    pub t2: f64,
}

impl CubicPhase {
    pub fn new(a: f64, b: f64, c: f64, lambda: f64, t1: f64, t2: f64) -> Result<Self> {
        if ![a, b, c, lambda, t1, t2].iter().all(|v| v.is_finite()) {
            return Err(Error::NonFinite("cubic phase"));
        }
        if a <= 0.0 || lambda <= 0.0 {
            return Err(Error::Domain(format!(
                "cubic phase needs a > 0 and lambda > 0, got a = {a}, lambda = {lambda}"
            )));
        }
        if t1 >= t2 {
            return Err(Error::Domain(format!(
                "interval must satisfy T1 < T2, got [{t1}, {t2}]"
            )));
        }
        Ok(CubicPhase {
            a,
            b,
            c,
            lambda,
            t1,
            t2,
        })
    }

    pub fn h(&self, t: f64) -> f64 {
        t * (self.c + t * (self.b + t * self.a))
    }

    pub fn h_prime(&self, t: f64) -> f64 {
        self.c + t * (2.0 * self.b + 3.0 * self.a * t)
    }

    /// `b² - 3ac`; stationary points are real when non-negative.
    pub fn discriminant(&self) -> f64 {
        self.b * self.b - 3.0 * self.a * self.c
    }

    /// `h` at the inflection point `-b / 3a`, the mean of `h(t±)`.
    pub fn h0(&self) -> f64 {
        let (a, b, c) = (self.a, self.b, self.c);
        (2.0 * b * b * b - 9.0 * a * b * c) / (27.0 * a * a)
    }

    /// Half the spread `h(t-) - h(t+)`; absent when `t±` are complex.
    pub fn h1(&self) -> Option<f64> {
        let d = self.discriminant();
        (d >= 0.0).then(|| 2.0 * d.powf(1.5) / (27.0 * self.a * self.a))
    }

    /// `(t-, t+)`, the maximum and minimum of `h`.
    pub fn stationary_points(&self) -> Option<(f64, f64)> {
        let d = self.discriminant();
        if d < 0.0 {
            return None;
        }
        let s = d.sqrt();
        Some(((-self.b - s) / (3.0 * self.a), (-self.b + s) / (3.0 * self.a)))
    }

    /// Argument of `Ai` in the uniform approximation, `-λ^{2/3} D / (3a)^{4/3}`.
    pub fn airy_argument(&self) -> f64 {
        -self.lambda.powf(2.0 / 3.0) * self.discriminant() / (3.0 * self.a).powf(4.0 / 3.0)
    }

    /// `[exp(iλh) / (iλh')]` between the endpoints.
    pub fn boundary_terms(&self) -> Complex64 {
        let edge = |t: f64| {
            let hp = self.h_prime(t);
            if hp == 0.0 {
                return Complex64::new(0.0, 0.0);
            }
            Complex64::from_polar(1.0, self.lambda * self.h(t)) / Complex64::new(0.0, self.lambda * hp)
        };
        edge(self.t2) - edge(self.t1)
    }
}

impl ReceivedSignal for CubicPhase {
    fn window(&self) -> Window {
        Window {
            start: self.t1,
            end: self.t2,
        }
    }

    fn wavenumber(&self, t: f64) -> f64 {
        self.lambda * self.h_prime(t)
    }

    fn amplitude(&self, _t: f64) -> f64 {
        1.0
    }

    fn phases(&self, grid: &[f64]) -> Result<Vec<f64>> {
        Ok(grid.iter().map(|&t| self.lambda * self.h(t)).collect())
    }

    fn wavenumber_extrema(&self) -> (f64, f64) {
        let mut vals = vec![self.wavenumber(self.t1), self.wavenumber(self.t2)];
        let vertex = -self.b / (3.0 * self.a);
        if self.t1 < vertex && vertex < self.t2 {
            vals.push(self.wavenumber(vertex));
        }
        vals.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| {
            (lo.min(v), hi.max(v))
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CubicCase {
    /// Both stationary points interior and well separated.
    TwoInterior,
    /// Stationary points coalescing (or complex) near the interval; Airy value.
    Coalescing,
    OneInterior,
    NoInterior,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CubicSpa {
    pub value: Complex64,
    pub case: CubicCase,
    /// A stationary point lies within `ε |T2 - T1|` of an endpoint.
    pub non_uniform: bool,
}

/// Stationary-phase value of `∫_{T1}^{T2} exp(iλh(t)) dt`.
pub fn spa_cubic(p: &CubicPhase, include_boundary_terms: bool) -> CubicSpa {
    let boundary = if include_boundary_terms {
        p.boundary_terms()
    } else {
        Complex64::new(0.0, 0.0)
    };
    let eps = ENDPOINT_EPSILON * (p.t2 - p.t1);
    let near_edge = |t: f64| (t - p.t1).abs() <= eps || (t - p.t2).abs() <= eps;
    let inside = |t: f64| p.t1 <= t && t <= p.t2;
    let inflection = -p.b / (3.0 * p.a);

    if p.airy_argument().abs() < COALESCENCE_ARGUMENT || p.discriminant() < 0.0 {
        if inside(inflection) {
            return CubicSpa {
                value: uniform::airy_cubic(p) + boundary,
                case: CubicCase::Coalescing,
                non_uniform: near_edge(inflection),
            };
        }
        if p.discriminant() < 0.0 {
            return CubicSpa {
                value: boundary,
                case: CubicCase::NoInterior,
                non_uniform: false,
            };
        }
    }
    let (tm, tp) = p.stationary_points().expect("non-negative discriminant");
    let non_uniform = near_edge(tm) || near_edge(tp);
    let (value, case) = match (inside(tm), inside(tp)) {
        (true, true) => {
            let d = p.discriminant();
            let h1 = p.h1().unwrap_or(0.0);
            let lam = p.lambda;
            let mag = 2.0 * PI.sqrt() * (lam * h1 - FRAC_PI_4).cos() / (d.powf(0.25) * lam.sqrt());
            (Complex64::from_polar(1.0, lam * p.h0()) * mag, CubicCase::TwoInterior)
        }
        (true, false) | (false, true) => {
            let t = if inside(tm) { tm } else { tp };
            let curvature = p.lambda * (6.0 * p.a * t + 2.0 * p.b);
            (
                stationary_term(1.0, p.lambda * p.h(t), curvature),
                CubicCase::OneInterior,
            )
        }
        (false, false) => (Complex64::new(0.0, 0.0), CubicCase::NoInterior),
    };
    CubicSpa {
        value: value + boundary,
        case,
        non_uniform,
    }
}

/// Stationary points of `Φ_s(x) - k x` for the constant-jolt receiver.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct StationaryPointsJolt {
    pub x_plus: Option<f64>,
    pub x_minus: Option<f64>,
    /// `a0² + 2 j0 ln(D k0 / k) = (j0 x± + a0)²`.
    pub discriminant: f64,
}

/// `D k0 exp(a0² / 2j0)`, the largest wavenumber the jolt receiver sees.
pub fn jolt_cutoff(p: &JoltParams, wave: &PlaneWave) -> f64 {
    p.doppler() * wave.k0() * (p.a0 * p.a0 / (2.0 * p.j0)).exp()
}

/// Both roots of `K_s(x) = k`, reported whether or not they lie in a window.
pub fn jolt_stationary_points(p: &JoltParams, wave: &PlaneWave, k: f64) -> Result<StationaryPointsJolt> {
    if p.j0 <= 0.0 {
        return Err(Error::Precondition(
            "jolt stationary points need j0 > 0; use the acceleration engine".into(),
        ));
    }
    if !(k > 0.0) {
        return Err(Error::Domain(format!("wavenumber must be positive, got {k}")));
    }
    let l = (p.doppler() * wave.k0() / k).ln();
    let disc = p.a0 * p.a0 + 2.0 * p.j0 * l;
    if disc <= 0.0 {
        return Ok(StationaryPointsJolt {
            x_plus: None,
            x_minus: None,
            discriminant: disc,
        });
    }
    let s = disc.sqrt();
    // 2l / (a0 + s) avoids cancellation in (s - a0) / j0
    Ok(StationaryPointsJolt {
        x_plus: Some(2.0 * l / (p.a0 + s)),
        x_minus: Some(-(p.a0 + s) / p.j0),
        discriminant: disc,
    })
}

/// Stationary-phase spectrum of the constant-jolt receiver, summing the
/// points that fall inside the window.
pub fn spa_jolt_spectrum(
    p: &JoltParams,
    wave: &PlaneWave,
    window: &Window,
    k: f64,
) -> Result<(SpectrumSample, StationaryPointsJolt)> {
    let points = jolt_stationary_points(p, wave, k)?;
    if points.discriminant <= 0.0 {
        return Err(Error::Evanescent {
            k,
            cutoff: jolt_cutoff(p, wave),
        });
    }
    let root = points.discriminant.sqrt();
    let mut value = Complex64::new(0.0, 0.0);
    let mut found = false;
    for (x, sign) in [(points.x_plus, -1.0), (points.x_minus, 1.0)] {
        let Some(x) = x.filter(|&x| window.contains_loose(x)) else {
            continue;
        };
        let (phi, _, amp) = phase_wavenumber_amplitude_jolt(p, wave, x)?;
        value += stationary_term(amp, phi - k * x, sign * k * root);
        found = true;
    }
    if !found {
        return Err(Error::NoStationaryPoint { k });
    }
    Ok((
        SpectrumSample {
            k,
            value,
            method: Method::Spa,
        },
        points,
    ))
}

/// Single-point magnitude
/// `E0 (2π² k² / (k0⁴ j0 ln(D k0 e^{a0²/2j0} / k)))^{1/4}`.
pub fn jolt_spa_magnitude(p: &JoltParams, wave: &PlaneWave, k: f64) -> Result<f64> {
    let k0 = wave.k0();
    let log = (jolt_cutoff(p, wave) / k).ln();
    if !(log > 0.0) {
        return Err(Error::Evanescent {
            k,
            cutoff: jolt_cutoff(p, wave),
        });
    }
    Ok(wave.e0 * (2.0 * PI * PI * k * k / (k0.powi(4) * p.j0 * log)).powf(0.25))
}

/// `|S(K_s(cτ))|`, the single-point magnitude along the wavenumber curve.
pub fn jolt_spa_curve(p: &JoltParams, wave: &PlaneWave, ctau: f64) -> f64 {
    let k0 = wave.k0();
    let k = p.doppler() * k0 * (-p.omega(ctau)).exp();
    let log = p.a0 * p.a0 / (2.0 * p.j0) + p.omega(ctau);
    wave.e0 * (2.0 * PI * PI * k * k / (k0.powi(4) * p.j0 * log)).powf(0.25)
}

/// Stationary-phase spectrum of the constant-acceleration receiver,
/// including the received amplitude `A_s(x_s) = E0 k / k0`.
pub fn spa_accel_spectrum(p: &JoltParams, wave: &PlaneWave, window: &Window, k: f64) -> Result<SpectrumSample> {
    if p.a0 <= 0.0 {
        return Err(Error::ZeroAcceleration);
    }
    if p.j0 != 0.0 {
        return Err(Error::Precondition("acceleration engine needs j0 = 0".into()));
    }
    if !(k > 0.0) {
        return Err(Error::Domain(format!("wavenumber must be positive, got {k}")));
    }
    let x = (p.doppler() * wave.k0() / k).ln() / p.a0;
    if !window.contains_loose(x) {
        return Err(Error::NoStationaryPoint { k });
    }
    let (phi, _) = phase_wavenumber_accel(p, wave, x)?;
    let amp = wave.e0 * k / wave.k0();
    Ok(SpectrumSample {
        k,
        value: stationary_term(amp, phi - k * x, -p.a0 * k),
        method: Method::Spa,
    })
}

/// `sqrt(2π / (a0 k))`: the acceleration-case magnitude for unit received
/// amplitude, so `|S| sqrt(k)` is constant.
pub fn accel_spa_unit_magnitude(a0: f64, k: f64) -> f64 {
    (2.0 * PI / (a0 * k)).sqrt()
}

/// `α1²κ1²k0 + 2 α·w (k - α0 k0)`; stationary points are real when
/// non-negative.
pub fn fs_radicand(aw: &AlphaW, params: &FsParams, k0: f64, k: f64) -> f64 {
    let a1k1 = aw.alpha1_kappa1(params);
    a1k1 * a1k1 * k0 + 2.0 * aw.alpha_dot_w * (k - aw.alpha[0] * k0)
}

fn fs_caustic_scale(aw: &AlphaW, params: &FsParams, k0: f64, k: f64) -> f64 {
    let a1k1 = aw.alpha1_kappa1(params);
    CAUSTIC_TOLERANCE * (a1k1 * a1k1 * k0 + 2.0 * aw.alpha_dot_w.abs() * (k.abs() + aw.alpha[0].abs() * k0))
}

/// Roots of `K_s(x) = k` on the Frenet-Serret path.
pub fn fs_stationary_points(aw: &AlphaW, params: &FsParams, k0: f64, k: f64) -> Result<Vec<f64>> {
    let a1k1 = aw.alpha1_kappa1(params);
    let awd = aw.alpha_dot_w;
    if awd == 0.0 {
        if a1k1 == 0.0 {
            return Err(Error::Precondition(
                "constant wavenumber has no isolated stationary point".into(),
            ));
        }
        return Ok(vec![(k / k0 - aw.alpha[0]) / a1k1]);
    }
    let r = fs_radicand(aw, params, k0, k);
    if r.abs() <= fs_caustic_scale(aw, params, k0, k) {
        return Err(Error::Caustic { k });
    }
    if r < 0.0 {
        return Err(Error::Evanescent {
            k,
            cutoff: k0 * (aw.alpha[0] - a1k1 * a1k1 / (2.0 * awd)),
        });
    }
    let s = (r / k0).sqrt();
    Ok(vec![(-a1k1 - s) / awd, (-a1k1 + s) / awd])
}

/// Stationary-phase spectrum on the Frenet-Serret path with amplitude `E0`.
pub fn spa_fs_spectrum(
    aw: &AlphaW,
    params: &FsParams,
    wave: &PlaneWave,
    window: &Window,
    k: f64,
) -> Result<SpectrumSample> {
    let k0 = wave.k0();
    let a1k1 = aw.alpha1_kappa1(params);
    let mut value = Complex64::new(0.0, 0.0);
    let mut found = false;
    for x in fs_stationary_points(aw, params, k0, k)? {
        if !window.contains_loose(x) {
            continue;
        }
        let (phi, _) = phase_wavenumber_fs(aw, params, wave, x);
        let curvature = k0 * (aw.alpha_dot_w * x + a1k1);
        value += stationary_term(wave.e0, phi - k * x, curvature);
        found = true;
    }
    if !found {
        return Err(Error::NoStationaryPoint { k });
    }
    Ok(SpectrumSample {
        k,
        value,
        method: Method::Spa,
    })
}

/// Single-point magnitude `E0 sqrt(2π) / (k0 R)^{1/4}`.
pub fn fs_spa_magnitude(aw: &AlphaW, params: &FsParams, wave: &PlaneWave, k: f64) -> Result<f64> {
    let k0 = wave.k0();
    let r = if aw.alpha_dot_w == 0.0 {
        let a1k1 = aw.alpha1_kappa1(params);
        a1k1 * a1k1 * k0
    } else {
        fs_radicand(aw, params, k0, k)
    };
    if !(r > 0.0) {
        return Err(Error::Caustic { k });
    }
    Ok(wave.e0 * (2.0 * PI).sqrt() / (k0 * r).powf(0.25))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::minkowski::Tetrad;
    use crate::oscillatory::quadrature::{quadrature_cubic, QuadratureOptions};
    use crate::received_signal::{jolt_factors, ReceivedSignal, SignalModel};

    fn fixture(lambda: f64) -> CubicPhase {
        CubicPhase::new(1.0 / 3.0, 0.0, -1.0, lambda, -3.0, 3.0).unwrap()
    }

    #[test]
    fn extrema_match_direct_evaluation() {
        let p = CubicPhase::new(0.7, -0.4, -1.3, 10.0, -5.0, 5.0).unwrap();
        let (tm, tp) = p.stationary_points().unwrap();
        let h1 = p.h1().unwrap();
        assert!((p.h(tm) - (p.h0() + h1)).abs() < 1e-13);
        assert!((p.h(tp) - (p.h0() - h1)).abs() < 1e-13);
        assert!(p.h_prime(tm).abs() < 1e-13 && p.h_prime(tp).abs() < 1e-13);
    }

    #[test]
    fn odd_phase_gives_real_value() {
        let s = spa_cubic(&fixture(50.0), false);
        assert_eq!(s.case, CubicCase::TwoInterior);
        assert!(s.value.im.abs() < 1e-12);
        // compact form equals the explicit two-term sum
        let p = fixture(50.0);
        let (tm, tp) = p.stationary_points().unwrap();
        let sum = stationary_term(1.0, p.lambda * p.h(tm), p.lambda * p.h_prime_prime(tm))
            + stationary_term(1.0, p.lambda * p.h(tp), p.lambda * p.h_prime_prime(tp));
        assert!((sum - s.value).norm() < 1e-12);
    }

    impl CubicPhase {
        fn h_prime_prime(&self, t: f64) -> f64 {
            6.0 * self.a * t + 2.0 * self.b
        }
    }

    #[test]
    fn error_shrinks_with_lambda() {
        let opts = QuadratureOptions::default();
        for boundary in [false, true] {
            let err = |lam: f64| {
                let p = fixture(lam);
                (spa_cubic(&p, boundary).value - quadrature_cubic(&p, &opts).unwrap()).norm()
            };
            assert!(err(200.0) <= 0.5 * err(50.0), "boundary = {boundary}");
        }
    }

    #[test]
    fn boundary_only_regime() {
        let p = CubicPhase::new(1.0 / 3.0, 0.0, -1.0, 50.0, 2.0, 3.0).unwrap();
        let s = spa_cubic(&p, true);
        assert_eq!(s.case, CubicCase::NoInterior);
        let q = quadrature_cubic(&p, &QuadratureOptions::default()).unwrap();
        assert!((s.value - q).norm() / q.norm() < 0.1);
    }

    #[test]
    fn single_interior_point() {
        let p = CubicPhase::new(1.0 / 3.0, 0.0, -1.0, 80.0, 0.0, 3.0).unwrap();
        let s = spa_cubic(&p, true);
        assert_eq!(s.case, CubicCase::OneInterior);
        let q = quadrature_cubic(&p, &QuadratureOptions::default()).unwrap();
        assert!((s.value - q).norm() / q.norm() < 0.05);
    }

    #[test]
    fn endpoint_stationary_point_is_flagged() {
        let p = CubicPhase::new(1.0 / 3.0, 0.0, -1.0, 50.0, -3.0, 1.0).unwrap();
        assert!(spa_cubic(&p, false).non_uniform);
        assert!(!spa_cubic(&fixture(50.0), false).non_uniform);
    }

    #[test]
    fn coalescing_points_route_to_airy() {
        let p = CubicPhase::new(1.0 / 3.0, 0.0, -1e-4, 50.0, -3.0, 3.0).unwrap();
        let s = spa_cubic(&p, false);
        assert_eq!(s.case, CubicCase::Coalescing);
        assert!(s.value.norm().is_finite());
    }

    fn jolt() -> (JoltParams, PlaneWave, Window) {
        (
            JoltParams::new(0.1, 0.05, 0.02).unwrap(),
            PlaneWave::along_x(1e9).unwrap(),
            Window::new(0.0, 1.0).unwrap(),
        )
    }

    #[test]
    fn jolt_points_solve_wavenumber_equation() {
        let (p, w, win) = jolt();
        let m = SignalModel::jolt(p, w, win).unwrap();
        let k = 0.98 * m.wavenumber(0.0);
        let pts = jolt_stationary_points(&p, &w, k).unwrap();
        for x in [pts.x_plus.unwrap(), pts.x_minus.unwrap()] {
            assert!((m.wavenumber(x) - k).abs() < 1e-12 * k);
            let printed = -p.a0 / p.j0
                + (p.j0 * (p.doppler() * w.k0() * (p.a0 * p.a0 / (2.0 * p.j0)).exp() / k).ln() * 2.0).sqrt() / p.j0
                    * (x - (-p.a0 / p.j0)).signum();
            assert!((x - printed).abs() < 1e-9);
        }
        let cutoff = jolt_cutoff(&p, &w);
        assert!(matches!(
            spa_jolt_spectrum(&p, &w, &win, 1.01 * cutoff),
            Err(Error::Evanescent { .. })
        ));
        assert!(matches!(
            spa_jolt_spectrum(&p, &w, &win, 0.5 * m.wavenumber(0.0)),
            Err(Error::NoStationaryPoint { .. })
        ));
    }

    #[test]
    fn jolt_magnitudes_agree_across_routes() {
        let (p, w, win) = jolt();
        let m = SignalModel::jolt(p, w, win).unwrap();
        for s in [0.0, 0.3, 1.0] {
            let k = m.wavenumber(s);
            let (sample, _) = spa_jolt_spectrum(&p, &w, &win, k).unwrap();
            let printed = jolt_spa_magnitude(&p, &w, k).unwrap();
            assert!((sample.magnitude() - printed).abs() < 1e-12 * printed);
            assert!((jolt_spa_curve(&p, &w, s) - printed).abs() < 1e-12 * printed);
        }
        let f = jolt_factors(&p, 1.0).unwrap();
        let ratio = jolt_spa_curve(&p, &w, 1.0) / jolt_spa_curve(&p, &w, 0.0);
        assert!((ratio - f.a_j).abs() < 1e-10);
    }

    #[test]
    fn accel_magnitude_ratio_and_unit_form() {
        let p = JoltParams::new(0.1, 0.05, 0.0).unwrap();
        let w = PlaneWave::along_x(1e9).unwrap();
        let win = Window::new(0.0, 1.0).unwrap();
        let kd = p.doppler() * w.k0();
        let k_end = kd * (-0.05f64).exp();
        let s0 = spa_accel_spectrum(&p, &w, &win, kd).unwrap().magnitude();
        let s1 = spa_accel_spectrum(&p, &w, &win, k_end).unwrap().magnitude();
        assert!((s1 / s0 - (-0.025f64).exp()).abs() < 1e-12);
        let c0 = accel_spa_unit_magnitude(0.05, kd) * kd.sqrt();
        let c1 = accel_spa_unit_magnitude(0.05, k_end) * k_end.sqrt();
        assert!((c0 - c1).abs() < 1e-12 * c0);
        assert!(matches!(
            spa_accel_spectrum(&p, &w, &win, 1.01 * kd),
            Err(Error::NoStationaryPoint { .. })
        ));
    }

    #[test]
    fn fs_caustic_and_evanescent_are_signaled() {
        let params = FsParams {
            kappa1: 0.05,
            kappa1_p: -0.0975,
            ..Default::default()
        };
        let w = PlaneWave::along_x(1e9).unwrap();
        let aw = AlphaW::new(&w, &Tetrad::identity(), &params).unwrap();
        let win = Window::new(0.0, 1.0).unwrap();
        let k0 = w.k0();
        let kc = k0 * (1.0 - 0.0025 / 0.2);
        assert!(matches!(
            spa_fs_spectrum(&aw, &params, &w, &win, kc),
            Err(Error::Caustic { .. })
        ));
        assert!(matches!(
            spa_fs_spectrum(&aw, &params, &w, &win, kc - 1e-3),
            Err(Error::Evanescent { .. })
        ));
        let s = spa_fs_spectrum(&aw, &params, &w, &win, kc + 0.01).unwrap();
        assert!(s.magnitude().is_finite());
    }
}
