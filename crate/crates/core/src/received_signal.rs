//! Received phase `Φ_s`, instantaneous wavenumber `K_s = dΦ_s/dcτ` and
//! amplitude `A_s` seen by a receiver crossing a continuous plane wave, for
//! the constant-jolt, constant-acceleration and Frenet-Serret motion models.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::frenet_serret::{AlphaW, FsFrame, FsParams};
use crate::kinematics::JoltParams;
use crate::minkowski::PlaneWave;
use crate::quad;

/// Phase advance per sample above which a grid is rejected as aliased.
pub const NYQUIST_LIMIT: f64 = 0.8 * std::f64::consts::PI;

/// Closed observation window `[start, end]` in `cτ` (m).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Window {
    pub start: f64,
    pub end: f64,
}

impl Window {
    pub fn new(start: f64, end: f64) -> Result<Self> {
        if !(start.is_finite() && end.is_finite()) {
            return Err(Error::NonFinite("window"));
        }
        if start >= end {
            return Err(Error::Domain(format!(
                "window must satisfy ctau_i < ctau_f, got [{start}, {end}]"
            )));
        }
        Ok(Window { start, end })
    }

    pub fn length(&self) -> f64 {
        self.end - self.start
    }

    pub fn contains(&self, ctau: f64) -> bool {
        self.start <= ctau && ctau <= self.end
    }

    /// Membership with the edges widened by `1e-9` of the window length, so
    /// that points computed from edge wavenumbers stay inside.
    pub fn contains_loose(&self, ctau: f64) -> bool {
        let slack = 1e-9 * self.length();
        self.start - slack <= ctau && ctau <= self.end + slack
    }

    /// `n` equally spaced points including both edges.
    pub fn grid(&self, n: usize) -> Vec<f64> {
        if n == 1 {
            return vec![self.start];
        }
        let h = self.length() / (n - 1) as f64;
        (0..n)
            .map(|i| {
                if i == n - 1 {
                    self.end
                } else {
                    self.start + h * i as f64
                }
            })
            .collect()
    }
}

// a few hundred bytes and Copy; boxing would buy nothing
#[allow(clippy::large_enum_variant)]
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Motion {
    /// Constant proper jolt; `a0 = j0 = 0` is the inertial receiver.
    Jolt(JoltParams),
    /// Constant proper acceleration with the `-k0 D / a0` phase offset kept.
    Accel(JoltParams),
    /// Third-order Frenet-Serret path with quadratic wavenumber.
    FsQuadratic {
        params: FsParams,
        frame: FsFrame,
        alpha_w: AlphaW,
    },
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SignalModel {
    pub motion: Motion,
    pub wave: PlaneWave,
    pub window: Window,
}

fn require_x_wave(wave: &PlaneWave) -> Result<()> {
    let [x, y, z] = wave.khat;
    if (x - 1.0).abs() > 1e-12 || y.abs() > 1e-12 || z.abs() > 1e-12 {
        return Err(Error::Precondition(format!(
            "collinear worldlines need a wave along +x, got khat = {:?}",
            wave.khat
        )));
    }
    Ok(())
}

impl SignalModel {
    pub fn jolt(params: JoltParams, wave: PlaneWave, window: Window) -> Result<Self> {
        require_x_wave(&wave)?;
        Ok(SignalModel {
            motion: Motion::Jolt(params),
            wave,
            window,
        })
    }

    pub fn inertial(beta: f64, wave: PlaneWave, window: Window) -> Result<Self> {
        Self::jolt(JoltParams::inertial(beta)?, wave, window)
    }

    pub fn accel(params: JoltParams, wave: PlaneWave, window: Window) -> Result<Self> {
        require_x_wave(&wave)?;
        if params.j0 != 0.0 {
            return Err(Error::Precondition(format!(
                "acceleration model needs j0 = 0 exactly, got {}",
                params.j0
            )));
        }
        if params.a0 == 0.0 {
            return Err(Error::ZeroAcceleration);
        }
        Ok(SignalModel {
            motion: Motion::Accel(params),
            wave,
            window,
        })
    }

    pub fn fs(params: FsParams, frame: FsFrame, wave: PlaneWave, window: Window) -> Result<Self> {
        params.validate()?;
        let alpha_w = AlphaW::new(&wave, &frame, &params)?;
        Ok(SignalModel {
            motion: Motion::FsQuadratic { params, frame, alpha_w },
            wave,
            window,
        })
    }

    pub fn k0(&self) -> f64 {
        self.wave.k0()
    }

    /// `(Φ_s, K_s, A_s)` at one `cτ`.
    pub fn evaluate(&self, ctau: f64) -> Result<(f64, f64, f64)> {
        let k = self.wavenumber(ctau);
        let a = self.amplitude(ctau);
        let phi = match &self.motion {
            Motion::Jolt(p) => phase_wavenumber_amplitude_jolt(p, &self.wave, ctau)?.0,
            Motion::Accel(p) => phase_wavenumber_accel(p, &self.wave, ctau)?.0,
            Motion::FsQuadratic { params, alpha_w, .. } => phase_wavenumber_fs(alpha_w, params, &self.wave, ctau).0,
        };
        Ok((phi, k, a))
    }

    /// Wavenumbers at the window edges, `(K_s(cτ_i), K_s(cτ_f))`.
    pub fn edge_wavenumbers(&self) -> (f64, f64) {
        (self.wavenumber(self.window.start), self.wavenumber(self.window.end))
    }
}

/// A windowed received signal `A(cτ) exp(iΦ(cτ))`.
pub trait ReceivedSignal: Sync {
    fn window(&self) -> Window;
    fn wavenumber(&self, ctau: f64) -> f64;
    fn amplitude(&self, ctau: f64) -> f64;
    /// `Φ` on an ascending grid.
    fn phases(&self, grid: &[f64]) -> Result<Vec<f64>>;
    /// `(min, max)` of `K` over the window.
    fn wavenumber_extrema(&self) -> (f64, f64);
}

impl ReceivedSignal for SignalModel {
    fn window(&self) -> Window {
        self.window
    }

    fn wavenumber(&self, ctau: f64) -> f64 {
        let k0 = self.k0();
        match &self.motion {
            Motion::Jolt(p) | Motion::Accel(p) => k0 * p.doppler() * (-p.omega(ctau)).exp(),
            Motion::FsQuadratic { params, alpha_w, .. } => fs_wavenumber(alpha_w, params, k0, ctau),
        }
    }

    fn amplitude(&self, ctau: f64) -> f64 {
        match &self.motion {
            Motion::Jolt(p) | Motion::Accel(p) => self.wave.e0 * p.doppler() * (-p.omega(ctau)).exp(),
            Motion::FsQuadratic { .. } => self.wave.e0,
        }
    }

    fn phases(&self, grid: &[f64]) -> Result<Vec<f64>> {
        match &self.motion {
            Motion::Jolt(p) => jolt_phases(p, &self.wave, grid),
            Motion::Accel(p) => grid
                .iter()
                .map(|&s| phase_wavenumber_accel(p, &self.wave, s).map(|r| r.0))
                .collect(),
            Motion::FsQuadratic { params, alpha_w, .. } => Ok(grid
                .iter()
                .map(|&s| phase_wavenumber_fs(alpha_w, params, &self.wave, s).0)
                .collect()),
        }
    }

    fn wavenumber_extrema(&self) -> (f64, f64) {
        let (a, b) = self.edge_wavenumbers();
        let mut lo = a.min(b);
        let mut hi = a.max(b);
        if let Monotonicity::TurningPoint { wavenumber, .. } = monotonicity(self) {
            lo = lo.min(wavenumber);
            hi = hi.max(wavenumber);
        }
        (lo, hi)
    }
}

/// The conjugate signal `A exp(-iΦ)`; its spectrum is `S̄(-k)`.
pub struct Conjugated<'a, S: ReceivedSignal>(pub &'a S);

impl<S: ReceivedSignal> ReceivedSignal for Conjugated<'_, S> {
    fn window(&self) -> Window {
        self.0.window()
    }

    fn wavenumber(&self, ctau: f64) -> f64 {
        -self.0.wavenumber(ctau)
    }

    fn amplitude(&self, ctau: f64) -> f64 {
        self.0.amplitude(ctau)
    }

    fn phases(&self, grid: &[f64]) -> Result<Vec<f64>> {
        Ok(self.0.phases(grid)?.into_iter().map(|p| -p).collect())
    }

    fn wavenumber_extrema(&self) -> (f64, f64) {
        let (lo, hi) = self.0.wavenumber_extrema();
        (-hi, -lo)
    }
}

fn jolt_phase_tolerance(ctau: f64) -> f64 {
    1e-14 * ctau.abs().max(1.0)
}

/// `∫_0^{cτ} exp(-ω)`, closed form unless `j0 > 0`.
fn jolt_phase_integral(p: &JoltParams, ctau: f64) -> Result<f64> {
    if p.j0 == 0.0 {
        if p.a0 == 0.0 {
            return Ok(ctau);
        }
        return Ok(-(-p.a0 * ctau).exp_m1() / p.a0);
    }
    quad::integrate(|s| (-p.omega(s)).exp(), 0.0, ctau, jolt_phase_tolerance(ctau), 1e-15)
}

fn jolt_phases(p: &JoltParams, wave: &PlaneWave, grid: &[f64]) -> Result<Vec<f64>> {
    let scale = wave.k0() * p.doppler();
    if p.j0 == 0.0 {
        return grid
            .iter()
            .map(|&s| jolt_phase_integral(p, s).map(|i| scale * i))
            .collect();
    }
    let span = grid.iter().fold(1.0f64, |m, s| m.max(s.abs()));
    let tol = 1e-14 * span / grid.len().max(1) as f64;
    let integral = quad::cumulative(|s| (-p.omega(s)).exp(), 0.0, grid, tol, 1e-15)?;
    Ok(integral.into_iter().map(|i| scale * i).collect())
}

/// `(Φ_s, K_s, A_s)` for the constant-jolt receiver, with `Φ_s(0) = 0`.
pub fn phase_wavenumber_amplitude_jolt(p: &JoltParams, wave: &PlaneWave, ctau: f64) -> Result<(f64, f64, f64)> {
    let d = p.doppler();
    let decay = (-p.omega(ctau)).exp();
    let phi = wave.k0() * d * jolt_phase_integral(p, ctau)?;
    Ok((phi, d * wave.k0() * decay, d * decay * wave.e0))
}

/// `(Φ_s, K_s)` for constant proper acceleration, `Φ_s = -k0 D e^{-a0 cτ} / a0`.
pub fn phase_wavenumber_accel(p: &JoltParams, wave: &PlaneWave, ctau: f64) -> Result<(f64, f64)> {
    if p.a0 == 0.0 {
        return Err(Error::ZeroAcceleration);
    }
    let kd = wave.k0() * p.doppler();
    let decay = (-p.a0 * ctau).exp();
    Ok((-kd / p.a0 * decay, kd * decay))
}

fn fs_wavenumber(aw: &AlphaW, params: &FsParams, k0: f64, ctau: f64) -> f64 {
    let [c0, c1, c2] = fs_wavenumber_coefficients(aw, params, k0);
    c0 + ctau * (c1 + ctau * c2)
}

/// `K_s = c0 + c1 cτ + c2 (cτ)²` with `(c0, c1, c2) = k0 (α0, α1κ1, α·w/2)`.
pub fn fs_wavenumber_coefficients(aw: &AlphaW, params: &FsParams, k0: f64) -> [f64; 3] {
    [
        k0 * aw.alpha[0],
        k0 * aw.alpha1_kappa1(params),
        0.5 * k0 * aw.alpha_dot_w,
    ]
}

/// `(Φ_s, K_s)` along the third-order Frenet-Serret path, `Φ_s = k0 α_ν ζ^ν`.
pub fn phase_wavenumber_fs(aw: &AlphaW, params: &FsParams, wave: &PlaneWave, ctau: f64) -> (f64, f64) {
    let k0 = wave.k0();
    let (k1, k1p, k2) = (params.kappa1, params.kappa1_p, params.kappa2);
    let s = ctau;
    let s2 = s * s;
    let s3 = s2 * s;
    let [a0, a1, a2, _] = aw.alpha;
    let phi = k0 * (a0 * (s + k1 * k1 * s3 / 6.0) + a1 * (k1 * s2 / 2.0 + k1p * s3 / 6.0) + a2 * k1 * k2 * s3 / 6.0);
    (phi, fs_wavenumber(aw, params, k0, ctau))
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AccelFactors {
    pub doppler: f64,
    /// `D_a = K_s(cτ_f) / K_s(0) = e^{-a0 cτ_f}`.
    pub d_a: f64,
    /// `A_a = e^{-a0 cτ_f / 2}`.
    pub a_a: f64,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct JoltFactors {
    pub doppler: f64,
    /// `η = (j0 / a0) cτ_f + 1`.
    pub eta: f64,
    /// `D_j = exp(-(a0² / 2j0)(η² - 1))`.
    pub d_j: f64,
    /// `A_j = sqrt(D_j / η)`.
    pub a_j: f64,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FsFactors {
    /// `η = (α·w / α1κ1) cτ_f + 1`.
    pub eta: f64,
    pub d_fs: f64,
    /// `1/sqrt(η)`; absent when the turning point lies inside `[0, cτ_f]`.
    pub a_fs: Option<f64>,
    /// `k0 (α0 - (α1κ1)² / (2 α·w))`; absent for a linear wavenumber.
    pub k_c: Option<f64>,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Factors {
    Inertial { doppler: f64 },
    Accel(AccelFactors),
    Jolt(JoltFactors),
    Fs(FsFactors),
}

pub fn accel_factors(p: &JoltParams, ctau_f: f64) -> AccelFactors {
    let x = p.a0 * ctau_f;
    AccelFactors {
        doppler: p.doppler(),
        d_a: (-x).exp(),
        a_a: (-0.5 * x).exp(),
    }
}

pub fn jolt_factors(p: &JoltParams, ctau_f: f64) -> Result<JoltFactors> {
    if p.j0 == 0.0 {
        return Err(Error::UseAccelFactors);
    }
    if p.a0 == 0.0 {
        return Err(Error::DegenerateEta);
    }
    // η - 1 is formed directly so that D_j stays accurate as j0 → 0
    let eta_m1 = p.j0 / p.a0 * ctau_f;
    let eta = eta_m1 + 1.0;
    let d_j = (-(p.a0 * p.a0 / (2.0 * p.j0)) * eta_m1 * (eta + 1.0)).exp();
    Ok(JoltFactors {
        doppler: p.doppler(),
        eta,
        d_j,
        a_j: (d_j / eta).sqrt(),
    })
}

pub fn fs_factors(aw: &AlphaW, params: &FsParams, k0: f64, ctau_f: f64) -> Result<FsFactors> {
    let a1k1 = aw.alpha1_kappa1(params);
    let awd = aw.alpha_dot_w;
    let a0 = aw.alpha[0];
    if a1k1 == 0.0 {
        return Err(Error::DegenerateEta);
    }
    if a0 == 0.0 {
        return Err(Error::Domain("alpha_0 = 0 leaves K_s(0) = 0".into()));
    }
    let eta_m1 = awd / a1k1 * ctau_f;
    let eta = eta_m1 + 1.0;
    let d_fs = if awd == 0.0 {
        1.0 + a1k1 * ctau_f / a0
    } else {
        a1k1 * a1k1 / (2.0 * a0 * awd) * eta_m1 * (eta + 1.0) + 1.0
    };
    Ok(FsFactors {
        eta,
        d_fs,
        a_fs: (eta > 0.0).then(|| 1.0 / eta.sqrt()),
        k_c: (awd != 0.0).then(|| k0 * (a0 - a1k1 * a1k1 / (2.0 * awd))),
    })
}

/// All ratios applicable to the model, between `cτ = 0` and `cτ_f`.
pub fn factors(model: &SignalModel, ctau_f: f64) -> Result<Factors> {
    match &model.motion {
        Motion::Jolt(p) if p.j0 == 0.0 && p.a0 == 0.0 => Ok(Factors::Inertial { doppler: p.doppler() }),
        Motion::Jolt(p) if p.j0 == 0.0 => Ok(Factors::Accel(accel_factors(p, ctau_f))),
        Motion::Jolt(p) => jolt_factors(p, ctau_f).map(Factors::Jolt),
        Motion::Accel(p) => Ok(Factors::Accel(accel_factors(p, ctau_f))),
        Motion::FsQuadratic { params, alpha_w, .. } => fs_factors(alpha_w, params, model.k0(), ctau_f).map(Factors::Fs),
    }
}

/// Signal sampled on a uniform grid spanning the window.
#[derive(Clone, Debug, PartialEq)]
pub struct ReceivedSeries {
    pub ctau: Vec<f64>,
    pub phase: Vec<f64>,
    pub wavenumber: Vec<f64>,
    pub amplitude: Vec<f64>,
    pub signal: Vec<Complex64>,
}

/// Smallest sample count whose spacing keeps `max|K| Δcτ ≤ 0.8π`.
pub fn required_samples(model: &SignalModel) -> usize {
    let (lo, hi) = model.wavenumber_extrema();
    let kmax = lo.abs().max(hi.abs());
    (kmax * model.window.length() / NYQUIST_LIMIT).ceil() as usize + 1
}

pub fn synthesize(model: &SignalModel, samples: usize) -> Result<ReceivedSeries> {
    if samples < 2 {
        return Err(Error::Precondition(format!("need at least 2 samples, got {samples}")));
    }
    let required = required_samples(model);
    if samples < required {
        return Err(Error::Undersampled { samples, required });
    }
    let ctau = model.window.grid(samples);
    let phase = model.phases(&ctau)?;
    let (wavenumber, amplitude): (Vec<f64>, Vec<f64>) = ctau
        .par_iter()
        .map(|&s| (model.wavenumber(s), model.amplitude(s)))
        .unzip();
    let signal = phase
        .iter()
        .zip(&amplitude)
        .map(|(&p, &a)| Complex64::from_polar(a, p))
        .collect();
    Ok(ReceivedSeries {
        ctau,
        phase,
        wavenumber,
        amplitude,
        signal,
    })
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Monotonicity {
    Constant,
    MonotoneDecreasing,
    MonotoneIncreasing,
    /// Interior extremum of `K_s`.
    TurningPoint {
        ctau: f64,
        wavenumber: f64,
    },
}

/// Shape of `K_s` over the window.
pub fn monotonicity(model: &SignalModel) -> Monotonicity {
    // K' ∝ sign · (slope·cτ + offset)
    let (sign, slope, offset) = match &model.motion {
        Motion::Jolt(p) | Motion::Accel(p) => (-1.0, p.j0, p.a0),
        Motion::FsQuadratic { params, alpha_w, .. } => (1.0, alpha_w.alpha_dot_w, alpha_w.alpha1_kappa1(params)),
    };
    let w = model.window;
    if slope == 0.0 {
        return match (sign * offset).partial_cmp(&0.0) {
            Some(std::cmp::Ordering::Greater) => Monotonicity::MonotoneIncreasing,
            Some(std::cmp::Ordering::Less) => Monotonicity::MonotoneDecreasing,
            _ => Monotonicity::Constant,
        };
    }
    let root = -offset / slope;
    if w.start < root && root < w.end {
        return Monotonicity::TurningPoint {
            ctau: root,
            wavenumber: model.wavenumber(root),
        };
    }
    let rate = sign * (slope * (0.5 * (w.start + w.end)) + offset);
    if rate > 0.0 {
        Monotonicity::MonotoneIncreasing
    } else {
        Monotonicity::MonotoneDecreasing
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::minkowski::Tetrad;
    use proptest::prelude::*;

    fn wave() -> PlaneWave {
        PlaneWave::along_x(1e9).unwrap()
    }

    fn unit() -> Window {
        Window::new(0.0, 1.0).unwrap()
    }

    fn fixture() -> JoltParams {
        JoltParams::new(0.1, 0.05, 0.02).unwrap()
    }

    #[test]
    fn inertial_wavenumber_and_amplitude_are_doppler_scaled() {
        let p = JoltParams::inertial(0.6).unwrap();
        for s in [0.0, 0.4, 3.0] {
            let (_, k, a) = phase_wavenumber_amplitude_jolt(&p, &wave(), s).unwrap();
            assert!((k - 0.5 * wave().k0()).abs() < 1e-12 * k);
            assert!((a - 0.5).abs() < 1e-15);
        }
    }

    #[test]
    fn hyperbolic_wavenumber_halves_at_ln2() {
        let p = JoltParams::new(0.0, 1.0, 0.0).unwrap();
        let (_, k, _) = phase_wavenumber_amplitude_jolt(&p, &wave(), 2f64.ln()).unwrap();
        assert!((k - 0.5 * wave().k0()).abs() < 1e-14 * k);
    }

    #[test]
    fn jolt_wavenumber_matches_geometric_phase_derivative() {
        let p = fixture();
        let w = wave();
        let h = 1e-4;
        let phase = |s: f64| w.k0() * w.covector().contract(&p.position(s).unwrap());
        let fd = (phase(1.0 - 2.0 * h) - phase(1.0 + 2.0 * h) + 8.0 * (phase(1.0 + h) - phase(1.0 - h))) / (12.0 * h);
        let (_, k, _) = phase_wavenumber_amplitude_jolt(&p, &w, 1.0).unwrap();
        assert!((fd - k).abs() / k < 1e-6);
    }

    #[test]
    fn jolt_phase_equals_geometric_phase() {
        let p = JoltParams::with_offset(0.1, 0.05, 0.02, 0.3).unwrap();
        let w = PlaneWave::along_x(3e8).unwrap();
        let grid: Vec<f64> = (0..=40).map(|i| -1.0 + 0.05 * i as f64).collect();
        let m = SignalModel::jolt(p, w, Window::new(-1.0, 1.0).unwrap()).unwrap();
        let phases = m.phases(&grid).unwrap();
        let z0 = p.position(0.0).unwrap();
        for (s, phi) in grid.iter().zip(phases) {
            let geometric = w.k0() * w.covector().contract(&(p.position(*s).unwrap() - z0));
            assert!((geometric - phi).abs() < 1e-9, "cτ = {s}: {geometric} vs {phi}");
        }
    }

    #[test]
    fn accel_boundary_values_and_consistency_with_jolt() {
        let p = JoltParams::new(0.1, 0.05, 0.0).unwrap();
        let w = wave();
        let kd = w.k0() * p.doppler();
        let (phi, k) = phase_wavenumber_accel(&p, &w, 0.0).unwrap();
        assert_eq!(phi, -kd / 0.05);
        assert_eq!(k, kd);
        let (phi2, k2) = phase_wavenumber_accel(&p, &w, 2.0).unwrap();
        let (phij, kj, _) = phase_wavenumber_amplitude_jolt(&p, &w, 2.0).unwrap();
        assert!((k2 - kj).abs() < 1e-10 * kj);
        // phases differ only by the printed offset
        assert!((phi2 - (phij - kd / 0.05)).abs() < 1e-10 * phi2.abs());
        let h = 1e-5;
        let fd = (phase_wavenumber_accel(&p, &w, 2.0 + h).unwrap().0
            - phase_wavenumber_accel(&p, &w, 2.0 - h).unwrap().0)
            / (2.0 * h);
        assert!((fd - k2).abs() / k2 < 1e-8);
        let flat = JoltParams::new(0.1, 0.0, 0.0).unwrap();
        assert_eq!(phase_wavenumber_accel(&flat, &w, 1.0), Err(Error::ZeroAcceleration));
    }

    #[test]
    fn fs_wavenumber_polynomial() {
        let params = FsParams {
            kappa1: 0.05,
            kappa1_p: 0.01,
            kappa2: 0.02,
            ..Default::default()
        };
        let w = wave();
        let aw = AlphaW::new(&w, &Tetrad::identity(), &params).unwrap();
        let (_, k) = phase_wavenumber_fs(&aw, &params, &w, 0.0);
        assert!((k - w.k0() * aw.alpha[0]).abs() < 1e-14 * k);
        let h = 1e-5;
        let fd = (phase_wavenumber_fs(&aw, &params, &w, h).1 - phase_wavenumber_fs(&aw, &params, &w, -h).1) / (2.0 * h);
        assert!((fd - w.k0() * aw.alpha1_kappa1(&params)).abs() < 1e-6 * fd.abs());
        let flat = AlphaW::new(&w, &Tetrad::identity(), &FsParams::default()).unwrap();
        for s in [-1.0, 0.5, 2.0] {
            let (_, k) = phase_wavenumber_fs(&flat, &FsParams::default(), &w, s);
            assert_eq!(k, w.k0());
        }
    }

    #[test]
    fn fs_reduces_to_taylor_polynomial_of_accel_wavenumber() {
        let a0 = 0.05;
        let params = FsParams::constant(a0, 0.0, 0.0);
        let w = wave();
        let aw = AlphaW::new(&w, &Tetrad::identity(), &params).unwrap();
        assert_eq!(aw.alpha, [1.0, -1.0, 0.0, 0.0]);
        let k0 = w.k0();
        let c = fs_wavenumber_coefficients(&aw, &params, k0);
        let expected = [k0, -k0 * a0, k0 * a0 * a0 / 2.0];
        for (got, want) in c.iter().zip(expected) {
            assert!((got - want).abs() <= 1e-12 * want.abs());
        }
    }

    #[test]
    fn factor_closed_forms() {
        let p = JoltParams::new(0.0, 4f64.ln(), 0.0).unwrap();
        let f = accel_factors(&p, 1.0);
        assert!((f.d_a - 0.25).abs() < 1e-15 && (f.a_a - 0.5).abs() < 1e-15);

        let p = JoltParams::new(0.0, 1.0, 1.0).unwrap();
        let f = jolt_factors(&p, 1.0).unwrap();
        assert_eq!(f.eta, 2.0);
        assert!((f.d_j - (-1.5f64).exp()).abs() < 1e-15);
        assert!((f.a_j - ((-1.5f64).exp() / 2.0).sqrt()).abs() < 1e-15);
        let w = wave();
        let k_end = phase_wavenumber_amplitude_jolt(&p, &w, 1.0).unwrap().1;
        let k_start = phase_wavenumber_amplitude_jolt(&p, &w, 0.0).unwrap().1;
        assert!((k_end / k_start - f.d_j).abs() < 1e-14);

        assert_eq!(
            jolt_factors(&JoltParams::new(0.0, 1.0, 0.0).unwrap(), 1.0),
            Err(Error::UseAccelFactors)
        );
        assert_eq!(
            jolt_factors(&JoltParams::new(0.0, 0.0, 1.0).unwrap(), 1.0),
            Err(Error::DegenerateEta)
        );
    }

    #[test]
    fn jolt_factor_approaches_accel_factor() {
        let a0 = 0.05;
        let eps = 1e-8;
        let p = JoltParams::new(0.1, a0, eps * a0 * a0).unwrap();
        let dj = jolt_factors(&p, 1.0).unwrap().d_j;
        let da = accel_factors(&p, 1.0).d_a;
        assert!((dj / da - 1.0).abs() <= 10.0 * eps * a0 * a0);
    }

    #[test]
    fn fs_factors_match_wavenumber_ratio() {
        let params = FsParams {
            kappa1: 0.05,
            kappa1_p: 0.01,
            kappa2: 0.02,
            ..Default::default()
        };
        let m = SignalModel::fs(params, Tetrad::identity(), wave(), unit()).unwrap();
        let Factors::Fs(f) = factors(&m, 1.0).unwrap() else {
            panic!()
        };
        assert!((f.d_fs - m.wavenumber(1.0) / m.wavenumber(0.0)).abs() < 1e-12);
        let Motion::FsQuadratic { alpha_w, .. } = m.motion else {
            panic!()
        };
        let slope = |s: f64| alpha_w.alpha_dot_w * s + alpha_w.alpha1_kappa1(&params);
        assert!((f.a_fs.unwrap() - (slope(0.0) / slope(1.0)).sqrt()).abs() < 1e-12);
    }

    #[test]
    fn synthesize_guards_against_aliasing() {
        let m = SignalModel::jolt(fixture(), wave(), unit()).unwrap();
        let err = synthesize(&m, 3).unwrap_err();
        let Error::Undersampled { required, .. } = err else {
            panic!("{err:?}")
        };
        assert!(synthesize(&m, required).is_ok());
        assert!(matches!(synthesize(&m, required - 1), Err(Error::Undersampled { .. })));
    }

    #[test]
    fn synthesized_wavenumber_is_phase_derivative() {
        let models = [
            SignalModel::inertial(0.3, wave(), unit()).unwrap(),
            SignalModel::jolt(fixture(), wave(), unit()).unwrap(),
            SignalModel::accel(JoltParams::new(0.1, 0.05, 0.0).unwrap(), wave(), unit()).unwrap(),
            SignalModel::fs(FsParams::constant(0.05, 0.02, 0.0), Tetrad::identity(), wave(), unit()).unwrap(),
        ];
        for m in &models {
            let s = synthesize(m, 4097).unwrap();
            let h = s.ctau[1] - s.ctau[0];
            for i in (2..s.ctau.len() - 2).step_by(97) {
                let fd = (s.phase[i - 2] - s.phase[i + 2] + 8.0 * (s.phase[i + 1] - s.phase[i - 1])) / (12.0 * h);
                assert!((fd - s.wavenumber[i]).abs() <= 1e-6 * s.wavenumber[i].abs());
                assert!(s.amplitude[i] > 0.0);
                assert!((s.signal[i].norm() - s.amplitude[i]).abs() < 1e-12);
            }
        }
        let s = synthesize(&models[0], 100).unwrap();
        assert!(s.wavenumber.iter().all(|&k| k == s.wavenumber[0]));
        assert!(s.amplitude.iter().all(|&a| a == s.amplitude[0]));
    }

    #[test]
    fn monotonicity_classification() {
        let m = SignalModel::jolt(fixture(), wave(), unit()).unwrap();
        assert_eq!(monotonicity(&m), Monotonicity::MonotoneDecreasing);
        let m = SignalModel::jolt(fixture(), wave(), Window::new(-4.0, 1.0).unwrap()).unwrap();
        let Monotonicity::TurningPoint { ctau, .. } = monotonicity(&m) else {
            panic!()
        };
        assert!((ctau + 2.5).abs() < 1e-15);
        let m = SignalModel::inertial(0.2, wave(), unit()).unwrap();
        assert_eq!(monotonicity(&m), Monotonicity::Constant);

        let params = FsParams {
            kappa1: 0.05,
            kappa1_p: -0.0975,
            ..Default::default()
        };
        let m = SignalModel::fs(params, Tetrad::identity(), wave(), unit()).unwrap();
        let Monotonicity::TurningPoint { ctau, wavenumber } = monotonicity(&m) else {
            panic!()
        };
        assert!((ctau - 0.5).abs() < 1e-12);
        let Factors::Fs(f) = factors(&m, 1.0).unwrap() else {
            panic!()
        };
        assert!((wavenumber - f.k_c.unwrap()).abs() < 1e-12 * wavenumber);
    }

    #[test]
    fn window_is_closed() {
        let w = unit();
        assert!(w.contains(0.0) && w.contains(1.0) && !w.contains(1.0 + 1e-12));
        assert!(w.contains_loose(1.0 + 1e-12));
        let g = w.grid(5);
        assert_eq!(g, vec![0.0, 0.25, 0.5, 0.75, 1.0]);
        assert!(Window::new(1.0, 1.0).is_err());
    }

    proptest! {
        #[test]
        fn amplitude_identities_hold(a0 in 1e-3f64..2.0, j0 in 1e-4f64..2.0, tf in 0.01f64..3.0) {
            let p = JoltParams::new(0.0, a0, j0).unwrap();
            let a = accel_factors(&p, tf);
            prop_assert!((a.a_a - a.d_a.sqrt()).abs() <= 1e-12);
            let j = jolt_factors(&p, tf).unwrap();
            prop_assert!((j.a_j - (j.d_j / j.eta).sqrt()).abs() <= 1e-12);
            prop_assert!((j.d_j - (-p.omega(tf)).exp()).abs() <= 1e-12);
        }
    }
}
