//! Invariant and acceptance suite behind `doppler validate`. Each criterion
//! reports its measured values against pinned tolerances; an [`Injection`]
//! perturbs exactly one criterion so that the suite can be shown to fail.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use serde::Serialize;

use super::figures::{
    central_band_deviation, compare_fringes, fig1_models, fig2_measure, fig2_models_on, fig3_params, fig4_grid,
    fig4_params, fig4_scales, figure, fs_model, FigureName, FIXTURE_A0, FIXTURE_BETA, FIXTURE_J0,
};
use super::table::VERSION;
use crate::error::{Error, Result};
use crate::frenet_serret::{fs_frame_evolve, AlphaW, FsParams};
use crate::kinematics::{comoving_tetrad, fermi_walker_transport, kinematic_state, JoltParams};
use crate::minkowski::{doppler_factor, PlaneWave, Tetrad};
use crate::oscillatory::spa::{accel_spa_unit_magnitude, spa_fs_spectrum};
use crate::oscillatory::{
    airy_fs_spectrum, linear_grid, model_spectrum, quadrature_cubic, spa_cubic, CubicPhase, Method, QuadratureOptions,
};
use crate::received_signal::{
    accel_factors, factors, fs_wavenumber_coefficients, jolt_factors, Factors, Motion, ReceivedSignal, SignalModel,
    Window,
};

pub const CRITERIA: [u8; 11] = [1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11];

/// `Ai(0)`, kept independent of the Airy implementation under test.
const AI0: f64 = 0.355_028_053_887_817_2;

/// One perturbation per criterion.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Injection {
    JoltSign,
    TransportDrift,
    DopplerBeta,
    RatioAmplitude,
    LimitEpsilon,
    SpaAmplitude,
    LambdaFixed,
    AiryScale,
    FsFrame,
    FigureWindow,
    NegativeControl,
}

impl Injection {
    pub const ALL: [Injection; 11] = [
        Injection::JoltSign,
        Injection::TransportDrift,
        Injection::DopplerBeta,
        Injection::RatioAmplitude,
        Injection::LimitEpsilon,
        Injection::SpaAmplitude,
        Injection::LambdaFixed,
        Injection::AiryScale,
        Injection::FsFrame,
        Injection::FigureWindow,
        Injection::NegativeControl,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            Injection::JoltSign => "jolt-sign",
            Injection::TransportDrift => "transport-drift",
            Injection::DopplerBeta => "doppler-beta",
            Injection::RatioAmplitude => "ratio-amplitude",
            Injection::LimitEpsilon => "limit-epsilon",
            Injection::SpaAmplitude => "spa-amplitude",
            Injection::LambdaFixed => "lambda-fixed",
            Injection::AiryScale => "airy-scale",
            Injection::FsFrame => "fs-frame",
            Injection::FigureWindow => "figure-window",
            Injection::NegativeControl => "negative-control",
        }
    }

    /// The criterion this injection breaks.
    pub fn criterion(&self) -> u8 {
        Injection::ALL.iter().position(|i| i == self).unwrap() as u8 + 1
    }
}

impl fmt::Display for Injection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Injection {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Injection::ALL.into_iter().find(|i| i.as_str() == s).ok_or_else(|| {
            let names: Vec<_> = Injection::ALL.iter().map(|i| i.as_str()).collect();
            Error::config(
                "inject",
                format!("unknown injection `{s}` (expected one of {})", names.join(", ")),
            )
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Measurement {
    pub name: String,
    pub value: f64,
    /// `"<="` or `">="`.
    pub relation: &'static str,
    pub tolerance: f64,
    pub pass: bool,
}

impl Measurement {
    fn at_most(name: impl Into<String>, value: f64, tolerance: f64) -> Self {
        Measurement {
            name: name.into(),
            value,
            relation: "<=",
            tolerance,
            pass: value <= tolerance,
        }
    }

    fn at_least(name: impl Into<String>, value: f64, tolerance: f64) -> Self {
        Measurement {
            name: name.into(),
            value,
            relation: ">=",
            tolerance,
            pass: value >= tolerance,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CriterionReport {
    pub id: u8,
    pub title: &'static str,
    pub measurements: Vec<Measurement>,
    pub runtime_ms: f64,
    pub runtime_limit_ms: Option<f64>,
    pub error: Option<String>,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ValidationReport {
    pub version: &'static str,
    pub injection: Option<String>,
    pub oversample: f64,
    pub criteria: Vec<CriterionReport>,
    pub pass: bool,
}

pub fn title(id: u8) -> &'static str {
    match id {
        1 => "kinematic invariants",
        2 => "frame transport",
        3 => "classical Doppler recovery",
        4 => "closed-form ratio identities",
        5 => "jolt-to-acceleration limit",
        6 => "stationary phase vs quadrature",
        7 => "cubic-phase lambda scaling",
        8 => "caustic handling",
        9 => "Frenet-Serret reduction",
        10 => "figure pipelines",
        11 => "negative control",
        _ => "unknown",
    }
}

fn runtime_limit_ms(id: u8) -> Option<f64> {
    match id {
        1 => Some(1e3),
        2 => Some(5e3),
        6 => Some(60e3),
        10 => Some(120e3),
        _ => None,
    }
}

fn fixture_jolt() -> JoltParams {
    JoltParams::new(FIXTURE_BETA, FIXTURE_A0, FIXTURE_J0).expect("valid fixture")
}

fn kinematic_invariants(inject: bool) -> Vec<Measurement> {
    let p = fixture_jolt();
    // the perturbed run expects the proper jolt against the acceleration
    let j0 = if inject { -p.j0 } else { p.j0 };
    let (mut norm, mut ua, mut su, mut accel, mut jolt) = (0.0f64, 0.0f64, 0.0f64, 0.0f64, 0.0f64);
    for ctau in linear_grid(0.0, 1.0, 101) {
        let st = kinematic_state(&p, ctau);
        let a_mag = st.a.magnitude();
        norm = norm.max((st.u.dot(&st.u) + 1.0).abs());
        ua = ua.max(st.u.dot(&st.a).abs());
        su = su.max(st.sigma.dot(&st.u).abs());
        accel = accel.max((a_mag - (p.a0 + j0 * ctau)).abs());
        // signed projection on the acceleration direction: +|σ| for j0 > 0
        jolt = jolt.max((st.sigma.dot(&st.a) / a_mag - j0).abs());
    }
    vec![
        Measurement::at_most("|u.u + 1|", norm, 1e-8),
        Measurement::at_most("|u.a|", ua, 1e-8),
        Measurement::at_most("|sigma.u|", su, 1e-8),
        Measurement::at_most("||a| - (a0 + j0 ctau)|", accel, 1e-8),
        Measurement::at_most("||sigma| - j0|", jolt, 1e-8),
    ]
}

fn frame_transport(inject: bool) -> Result<Vec<Measurement>> {
    let p = fixture_jolt();
    let fw = fermi_walker_transport(&p, &comoving_tetrad(&p, 0.0), 0.0, 1.0, 1e-3)?;
    let fs = fs_frame_evolve(&FsParams::constant(0.3, 0.2, 0.1), &Tetrad::identity(), 0.0, 1.0, 1e-3)?;
    let drift = |frames: &[(f64, Tetrad)]| {
        frames
            .iter()
            .map(|(_, f)| {
                let mut f = *f;
                if inject {
                    f.e[1].0[1] += 1e-6;
                }
                f.gram_deviation()
            })
            .fold(0.0, f64::max)
    };
    Ok(vec![
        Measurement::at_most("Fermi-Walker Gram drift", drift(&fw), 1e-9),
        Measurement::at_most("Frenet-Serret Gram drift", drift(&fs), 1e-9),
    ])
}

fn classical_doppler(inject: bool, opts: &QuadratureOptions) -> Result<Vec<Measurement>> {
    let beta = 0.6;
    let wave = PlaneWave::along_x(1e9)?;
    let window = Window::new(0.0, 1.0)?;
    let model = SignalModel::inertial(beta, wave, window)?;
    let k0 = wave.k0();
    let ks = linear_grid(0.4 * k0, 0.6 * k0, 4096);
    let spec = model_spectrum(&model, Method::Quadrature, &ks, opts)?;
    let peak = (0..ks.len())
        .max_by(|&a, &b| spec[a].magnitude().total_cmp(&spec[b].magnitude()))
        .unwrap();
    let d = doppler_factor(if inject { 0.59 } else { beta })?;
    let cell = ks[1] - ks[0];
    // rectangular window of length L and amplitude D: D L |sinc((Dk0 - k) L / 2)|
    let l = window.length();
    let arg = (d * k0 - ks[peak]) * l / 2.0;
    let sinc = if arg == 0.0 { 1.0 } else { arg.sin() / arg };
    let expected = d * l * sinc.abs();
    Ok(vec![
        Measurement::at_most(
            "peak offset from k/k0 = D [cells]",
            (ks[peak] - d * k0).abs() / cell,
            1.0,
        ),
        Measurement::at_most(
            "peak magnitude relative error",
            (spec[peak].magnitude() / expected - 1.0).abs(),
            1e-3,
        ),
    ])
}

fn ratio(model: &SignalModel, method: Method, opts: &QuadratureOptions) -> Result<(f64, f64)> {
    let (k_i, k_f) = model.edge_wavenumbers();
    let s = model_spectrum(model, method, &[k_i, k_f], opts)?;
    Ok((k_f / k_i, s[1].magnitude() / s[0].magnitude()))
}

fn ratio_identities(inject: bool, opts: &QuadratureOptions) -> Result<Vec<Measurement>> {
    let [_, accel, jolt] = fig1_models();
    let fs = fs_model(fig3_params());
    let tau = 1.0;
    let mut out = Vec::new();

    let Motion::Accel(pa) = accel.motion else {
        unreachable!()
    };
    let a = accel_factors(&pa, tau);
    let expected_a = if inject { a.d_a } else { a.d_a.sqrt() };
    out.push(Measurement::at_most(
        "|A_a - sqrt(D_a)|",
        (a.a_a - expected_a).abs(),
        1e-10,
    ));
    let (kr, sr) = ratio(&accel, Method::Spa, opts)?;
    out.push(Measurement::at_most("|D_a - K ratio|", (a.d_a - kr).abs(), 1e-10));
    out.push(Measurement::at_most("|A_a - SPA ratio|", (a.a_a - sr).abs(), 1e-10));

    let Motion::Jolt(pj) = jolt.motion else { unreachable!() };
    let j = jolt_factors(&pj, tau)?;
    out.push(Measurement::at_most(
        "|A_j - sqrt(D_j / eta)|",
        (j.a_j - (j.d_j / j.eta).sqrt()).abs(),
        1e-10,
    ));
    let (kr, sr) = ratio(&jolt, Method::Spa, opts)?;
    out.push(Measurement::at_most("|D_j - K ratio|", (j.d_j - kr).abs(), 1e-10));
    out.push(Measurement::at_most("|A_j - SPA ratio|", (j.a_j - sr).abs(), 1e-10));

    let Factors::Fs(f) = factors(&fs, tau)? else {
        unreachable!()
    };
    let (kr, sr) = ratio(&fs, Method::Spa, opts)?;
    out.push(Measurement::at_most("|D_FS - K ratio|", (f.d_fs - kr).abs(), 1e-10));
    let a_fs = f
        .a_fs
        .ok_or_else(|| Error::Precondition("fixture turns inside the window".into()))?;
    out.push(Measurement::at_most("|A_FS - SPA ratio|", (a_fs - sr).abs(), 1e-10));
    Ok(out)
}

fn limit_consistency(inject: bool) -> Result<Vec<Measurement>> {
    let a0 = FIXTURE_A0;
    let tau = 1.0;
    let j0 = if inject { 1e-2 } else { 1e-8 } * a0 * a0 / tau;
    let j = jolt_factors(&JoltParams::new(FIXTURE_BETA, a0, j0)?, tau)?;
    let a = accel_factors(&JoltParams::new(FIXTURE_BETA, a0, 0.0)?, tau);
    Ok(vec![Measurement::at_most(
        "|D_j / D_a - 1|",
        (j.d_j / a.d_a - 1.0).abs(),
        1e-6,
    )])
}

fn central_ks(model: &SignalModel, n: usize) -> Vec<f64> {
    let (lo, hi) = model.wavenumber_extrema();
    linear_grid(lo + 0.1 * (hi - lo), hi - 0.1 * (hi - lo), n)
}

fn spa_vs_oracle(inject: bool, opts: &QuadratureOptions) -> Result<Vec<Measurement>> {
    let [_, accel, jolt] = fig1_models();
    let fs = fs_model(fig3_params());
    let mut out = Vec::new();
    for (name, model) in [("jolt", &jolt), ("accel", &accel), ("fs monotone", &fs)] {
        let ks = central_ks(model, 101);
        let q = model_spectrum(model, Method::Quadrature, &ks, opts)?;
        let mut s = model_spectrum(model, Method::Spa, &ks, opts)?;
        if inject && name == "accel" {
            let Motion::Accel(p) = model.motion else { unreachable!() };
            for x in &mut s {
                x.value = x.value.unscale(x.magnitude()) * accel_spa_unit_magnitude(p.a0, x.k);
            }
        }
        let (lo, hi) = model.wavenumber_extrema();
        out.push(Measurement::at_most(
            format!("{name}: max relative deviation"),
            central_band_deviation(&q, &s, lo, hi),
            0.05,
        ));
    }
    Ok(out)
}

fn lambda_scaling(inject: bool, opts: &QuadratureOptions) -> Result<Vec<Measurement>> {
    let err = |lambda: f64| -> Result<f64> {
        let p = CubicPhase::new(1.0 / 3.0, 0.0, -1.0, lambda, -3.0, 3.0)?;
        Ok((spa_cubic(&p, false).value - quadrature_cubic(&p, opts)?).norm())
    };
    let e50 = err(50.0)?;
    let e200 = err(if inject { 50.0 } else { 200.0 })?;
    Ok(vec![Measurement::at_most("error(200) / error(50)", e200 / e50, 0.5)])
}

fn caustic(inject: bool, opts: &QuadratureOptions) -> Result<Vec<Measurement>> {
    let model = fs_model(fig4_params());
    let Motion::FsQuadratic { params, alpha_w, .. } = model.motion else {
        unreachable!()
    };
    let (kc, s) = fig4_scales(&model);
    let k0 = model.k0();
    let detected = matches!(
        spa_fs_spectrum(&alpha_w, &params, &model.wave, &model.window, kc),
        Err(Error::Caustic { .. })
    );
    let rerouted = model_spectrum(&model, Method::Spa, &[kc], opts)?[0].value.re.is_nan();
    let scale = if inject {
        alpha_w.alpha_dot_w * k0
    } else {
        alpha_w.alpha_dot_w * k0 / 2.0
    };
    let direct = model.wave.e0 * 2.0 * PI * AI0 / scale.cbrt();
    let airy = airy_fs_spectrum(&alpha_w, &params, &model.wave, kc)?.magnitude();

    let ks = fig4_grid(&model);
    let mags = |m: Method| -> Result<Vec<f64>> {
        Ok(model_spectrum(&model, m, &ks, opts)?
            .iter()
            .map(|x| x.magnitude())
            .collect())
    };
    let cmp = compare_fringes(&ks, &mags(Method::Quadrature)?, &mags(Method::Airy)?, kc, s);
    Ok(vec![
        Measurement::at_least(
            "two-point SPA reports the caustic (1 = yes)",
            f64::from(u8::from(detected)),
            1.0,
        ),
        Measurement::at_least(
            "caustic rerouted away from SPA (1 = yes)",
            f64::from(u8::from(rerouted)),
            1.0,
        ),
        Measurement::at_most("|Airy(k_c)| - direct formula", (airy - direct).abs(), 1e-8),
        Measurement::at_most("first five fringe maxima offset [cells]", cmp.max_offset as f64, 1.0),
    ])
}

fn fs_reduction(inject: bool) -> Result<Vec<Measurement>> {
    let a0 = FIXTURE_A0;
    let params = FsParams {
        kappa1: a0,
        ..Default::default()
    };
    let wave = PlaneWave::along_x(1e9)?;
    let frame = if inject {
        Tetrad::boost_x(0.1)?
    } else {
        Tetrad::identity()
    };
    let aw = AlphaW::new(&wave, &frame, &params)?;
    let k0 = wave.k0();
    let got = fs_wavenumber_coefficients(&aw, &params, k0);
    let want = [k0, -k0 * a0, k0 * a0 * a0 / 2.0];
    let dev = got
        .iter()
        .zip(want)
        .map(|(g, w)| ((g - w) / w).abs())
        .fold(0.0, f64::max);
    Ok(vec![Measurement::at_most("coefficient relative error", dev, 1e-12)])
}

fn figure_pipelines(inject: bool, opts: &QuadratureOptions) -> Result<Vec<Measurement>> {
    if inject {
        // fig2 on a window starting at the acceleration origin
        let (spread, _, _) = fig2_measure(&fig2_models_on(Window::new(0.0, 1.0)?), opts)?;
        return Ok(vec![Measurement::at_most("fig2: accel amplitude spread", spread, 0.02)]);
    }
    let mut out = Vec::new();
    for name in FigureName::ALL {
        for c in figure(name, opts)?.checks {
            out.push(Measurement {
                name: format!("{name}: {}", c.name),
                value: c.measured,
                relation: if c.below { "<=" } else { ">=" },
                tolerance: c.threshold,
                pass: c.pass,
            });
        }
    }
    Ok(out)
}

/// Runs every other criterion under its injection; each must fail.
fn negative_control(inject: bool, opts: &QuadratureOptions) -> Result<Vec<Measurement>> {
    let mut out = Vec::new();
    for i in &Injection::ALL[..10] {
        let id = i.criterion();
        // the perturbed control re-runs criterion 1 unperturbed, which passes
        let probe = if inject && id == 1 { None } else { Some(*i) };
        let r = run_criterion(id, probe, opts);
        out.push(Measurement::at_least(
            format!("criterion {id} fails under {i} (1 = yes)"),
            f64::from(u8::from(!r.pass)),
            1.0,
        ));
    }
    Ok(out)
}

/// Runs one criterion; `inject` only applies when it targets `id`.
pub fn run_criterion(id: u8, inject: Option<Injection>, opts: &QuadratureOptions) -> CriterionReport {
    let on = inject.is_some_and(|i| i.criterion() == id);
    let start = Instant::now();
    let result = match id {
        1 => Ok(kinematic_invariants(on)),
        2 => frame_transport(on),
        3 => classical_doppler(on, opts),
        4 => ratio_identities(on, opts),
        5 => limit_consistency(on),
        6 => spa_vs_oracle(on, opts),
        7 => lambda_scaling(on, opts),
        8 => caustic(on, opts),
        9 => fs_reduction(on),
        10 => figure_pipelines(on, opts),
        11 => negative_control(on, opts),
        _ => Err(Error::config("only", format!("no criterion {id} (expected 1-11)"))),
    };
    let runtime_ms = start.elapsed().as_secs_f64() * 1e3;
    let limit = runtime_limit_ms(id);
    let in_time = limit.is_none_or(|l| runtime_ms < l);
    let (measurements, error) = match result {
        Ok(m) => (m, None),
        Err(e) => (Vec::new(), Some(e.to_string())),
    };
    let pass = error.is_none() && in_time && !measurements.is_empty() && measurements.iter().all(|m| m.pass);
    CriterionReport {
        id,
        title: title(id),
        measurements,
        runtime_ms,
        runtime_limit_ms: limit,
        error,
        pass,
    }
}

/// Runs the selected criteria (all when `only` is empty) in order.
pub fn run_validation(only: &[u8], inject: Option<Injection>, opts: &QuadratureOptions) -> Result<ValidationReport> {
    if let Some(bad) = only.iter().find(|id| !CRITERIA.contains(id)) {
        return Err(Error::config("only", format!("no criterion {bad} (expected 1-11)")));
    }
    let ids: Vec<u8> = if only.is_empty() {
        CRITERIA.to_vec()
    } else {
        only.to_vec()
    };
    let criteria: Vec<CriterionReport> = ids.iter().map(|&id| run_criterion(id, inject, opts)).collect();
    Ok(ValidationReport {
        version: VERSION,
        injection: inject.map(|i| i.to_string()),
        oversample: opts.oversample,
        pass: criteria.iter().all(|c| c.pass),
        criteria,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn injection_names_round_trip() {
        for (n, i) in Injection::ALL.iter().enumerate() {
            assert_eq!(i.as_str().parse::<Injection>().unwrap(), *i);
            assert_eq!(i.criterion() as usize, n + 1);
        }
        assert!("nope".parse::<Injection>().is_err());
    }

    #[test]
    fn jolt_sign_flip_breaks_sigma_invariant() {
        let opts = QuadratureOptions::default();
        assert!(run_criterion(1, None, &opts).pass);
        let r = run_criterion(1, Some(Injection::JoltSign), &opts);
        assert!(!r.pass);
        assert!(r.measurements.iter().any(|m| m.name.contains("sigma| - j0") && !m.pass));
    }

    #[test]
    fn cheap_criteria_pass_and_fail_under_injection() {
        let opts = QuadratureOptions::default();
        for (id, inj) in [
            (2, Injection::TransportDrift),
            (4, Injection::RatioAmplitude),
            (5, Injection::LimitEpsilon),
            (7, Injection::LambdaFixed),
            (9, Injection::FsFrame),
        ] {
            let r = run_criterion(id, None, &opts);
            assert!(r.pass, "{r:?}");
            assert!(!run_criterion(id, Some(inj), &opts).pass, "criterion {id}");
        }
    }

    #[test]
    fn injection_is_scoped_to_its_criterion() {
        let opts = QuadratureOptions::default();
        assert!(run_criterion(5, Some(Injection::JoltSign), &opts).pass);
    }

    #[test]
    fn unknown_criterion_is_a_config_error() {
        assert!(run_validation(&[12], None, &QuadratureOptions::default()).is_err());
    }
}
