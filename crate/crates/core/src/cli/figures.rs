//! Figure reproductions as CSV bundles plus the shape properties each figure
//! is meant to show. The carrier is raised to [`FIXTURE_CARRIER_HZ`] so the
//! stationary-phase forms are asymptotically accurate on unit windows.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use super::table::{fmt_num, reference_magnitude, write_csv, Metadata, VERSION};
use crate::error::{Error, Result};
use crate::frenet_serret::FsParams;
use crate::kinematics::JoltParams;
use crate::minkowski::{PlaneWave, Tetrad};
use crate::oscillatory::{linear_grid, model_spectrum, Method, QuadratureOptions, SpectrumSample};
use crate::received_signal::{factors, Factors, ReceivedSignal, SignalModel, Window};

pub const FIXTURE_CARRIER_HZ: f64 = 1e14;
pub const FIGURE_K_POINTS: usize = 512;
pub const FIXTURE_BETA: f64 = 0.1;
pub const FIXTURE_A0: f64 = 0.05;
pub const FIXTURE_J0: f64 = 0.02;
/// Window of the fig2 comparison; see [`fig2_models`].
pub const FIG2_WINDOW: (f64, f64) = (-1.7, -1.0);

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FigureName {
    Fig1,
    Fig2,
    Fig3,
    Fig4,
}

impl FigureName {
    pub const ALL: [FigureName; 4] = [FigureName::Fig1, FigureName::Fig2, FigureName::Fig3, FigureName::Fig4];

    pub fn as_str(&self) -> &'static str {
        match self {
            FigureName::Fig1 => "fig1",
            FigureName::Fig2 => "fig2",
            FigureName::Fig3 => "fig3",
            FigureName::Fig4 => "fig4",
        }
    }
}

impl fmt::Display for FigureName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for FigureName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "fig1" => Ok(FigureName::Fig1),
            "fig2" => Ok(FigureName::Fig2),
            "fig3" => Ok(FigureName::Fig3),
            "fig4" => Ok(FigureName::Fig4),
            other => Err(Error::config("figure", format!("unknown figure `{other}`"))),
        }
    }
}

/// One measured shape property: `pass` iff `measured` is on the right side of
/// `threshold` (`below` selects `measured <= threshold`).
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ShapeCheck {
    pub name: String,
    pub measured: f64,
    pub threshold: f64,
    pub below: bool,
    pub pass: bool,
}

impl ShapeCheck {
    fn below(name: &str, measured: f64, threshold: f64) -> Self {
        ShapeCheck {
            name: name.into(),
            measured,
            threshold,
            below: true,
            pass: measured <= threshold,
        }
    }

    fn above(name: &str, measured: f64, threshold: f64) -> Self {
        ShapeCheck {
            name: name.into(),
            measured,
            threshold,
            below: false,
            pass: measured >= threshold,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct FigureBundle {
    pub name: FigureName,
    /// `(file name, CSV text)`.
    pub files: Vec<(String, String)>,
    pub checks: Vec<ShapeCheck>,
}

impl FigureBundle {
    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

fn fixture_wave() -> PlaneWave {
    PlaneWave::along_x(FIXTURE_CARRIER_HZ).expect("valid carrier")
}

fn unit_window() -> Window {
    Window::new(0.0, 1.0).expect("valid window")
}

/// Inertial, accelerated and jolted receivers of fig1.
pub fn fig1_models() -> [SignalModel; 3] {
    let w = fixture_wave();
    let win = unit_window();
    [
        SignalModel::inertial(FIXTURE_BETA, w, win).unwrap(),
        SignalModel::accel(JoltParams::new(FIXTURE_BETA, FIXTURE_A0, 0.0).unwrap(), w, win).unwrap(),
        SignalModel::jolt(JoltParams::new(FIXTURE_BETA, FIXTURE_A0, FIXTURE_J0).unwrap(), w, win).unwrap(),
    ]
}

/// The fig1 chirp panels on an earlier window. On any window starting at
/// `cτ = 0` these parameters cannot give both a sub-2% acceleration spread
/// and a >20% jolt decay; `[-1.7, -1.0]` lies before the jolt's turning point
/// at `-a0/j0 = -2.5` and satisfies both.
pub fn fig2_models() -> [SignalModel; 2] {
    fig2_models_on(Window::new(FIG2_WINDOW.0, FIG2_WINDOW.1).unwrap())
}

pub fn fig2_models_on(win: Window) -> [SignalModel; 2] {
    let w = fixture_wave();
    [
        SignalModel::accel(JoltParams::new(FIXTURE_BETA, FIXTURE_A0, 0.0).unwrap(), w, win).unwrap(),
        SignalModel::jolt(JoltParams::new(FIXTURE_BETA, FIXTURE_A0, FIXTURE_J0).unwrap(), w, win).unwrap(),
    ]
}

/// Monotone Frenet-Serret receiver (`α·w < 0`, turning point at `cτ ≈ -6.7`).
pub fn fig3_params() -> FsParams {
    FsParams {
        kappa1: 0.05,
        kappa1_p: 0.01,
        kappa2: 0.02,
        ..Default::default()
    }
}

/// fig3 with `κ1'` lowered so that `α·w = 0.1` and the wavenumber turns at
/// `cτ = 0.5`, placing `k_c` inside the band.
pub fn fig4_params() -> FsParams {
    FsParams {
        kappa1_p: -0.0975,
        ..fig3_params()
    }
}

pub fn fs_model(params: FsParams) -> SignalModel {
    SignalModel::fs(params, Tetrad::identity(), fixture_wave(), unit_window()).unwrap()
}

/// Band of `K_s` over the window widened by `margin` of its width.
pub fn band_grid(model: &SignalModel, margin: f64, n: usize) -> Vec<f64> {
    let (lo, hi) = model.wavenumber_extrema();
    let pad = margin * (hi - lo);
    linear_grid(lo - pad, hi + pad, n)
}

/// Indices of local maxima.
pub fn local_maxima(v: &[f64]) -> Vec<usize> {
    (1..v.len().saturating_sub(1))
        .filter(|&i| v[i] > v[i - 1] && v[i] >= v[i + 1])
        .collect()
}

struct Curve<'a> {
    label: &'a str,
    samples: Vec<SpectrumSample>,
    reference: f64,
}

fn curve<'a>(
    label: &'a str,
    model: &SignalModel,
    method: Method,
    ks: &[f64],
    opts: &QuadratureOptions,
) -> Result<Curve<'a>> {
    Ok(Curve {
        label,
        samples: model_spectrum(model, method, ks, opts)?,
        reference: reference_magnitude(model, opts)?.1,
    })
}

fn figure_csv(name: FigureName, panel: &str, model: &SignalModel, curves: &[&Curve]) -> Result<String> {
    let mut meta = Metadata::default();
    meta.push("generator", format!("doppler-core {VERSION}"));
    meta.push("figure", format!("{name} {panel}"));
    meta.push("model", format!("{:?}", model.motion));
    meta.push("carrier_hz", fmt_num(model.wave.f0));
    meta.push(
        "window",
        format!("[{}, {}]", fmt_num(model.window.start), fmt_num(model.window.end)),
    );
    let reference_k = model.wavenumber(model.window.start);
    meta.push("reference_k", fmt_num(reference_k));
    if let Some(c) = curves.first() {
        meta.push("reference_abs_S", fmt_num(c.reference));
    }
    meta.push(
        "note",
        "frequency and amplitude normalized by their values at the window start",
    );
    let mut rows = Vec::new();
    for c in curves {
        for s in &c.samples {
            rows.push(vec![
                fmt_num(s.k),
                fmt_num(s.k / reference_k),
                fmt_num(s.magnitude()),
                fmt_num(s.magnitude() / c.reference),
                c.label.to_string(),
            ]);
        }
    }
    write_csv(
        &meta,
        &["k", "k_normalized", "abs_S", "abs_S_normalized", "curve"],
        &rows,
    )
}

fn magnitudes(c: &Curve) -> Vec<f64> {
    c.samples.iter().map(|s| s.magnitude()).collect()
}

/// Largest relative deviation of `test` from `oracle` for `k` in the central
/// 80% of `[lo, hi]`.
pub fn central_band_deviation(oracle: &[SpectrumSample], test: &[SpectrumSample], lo: f64, hi: f64) -> f64 {
    let (a, b) = (lo + 0.1 * (hi - lo), hi - 0.1 * (hi - lo));
    oracle
        .iter()
        .zip(test)
        .filter(|(o, _)| a <= o.k && o.k <= b)
        .map(|(o, t)| (t.magnitude() / o.magnitude() - 1.0).abs())
        .fold(0.0, f64::max)
}

fn fig1(opts: &QuadratureOptions) -> Result<FigureBundle> {
    let [inertial, accel, jolt] = fig1_models();
    let kd = inertial.wavenumber(0.0);
    let half = 20.0 * std::f64::consts::PI / inertial.window.length();
    let ks = linear_grid(kd - half, kd + half, FIGURE_K_POINTS);
    let flat = curve("quadrature", &inertial, Method::Quadrature, &ks, opts)?;
    let mags = magnitudes(&flat);
    let peak = (0..mags.len()).max_by(|&a, &b| mags[a].total_cmp(&mags[b])).unwrap();
    let cell = ks[1] - ks[0];

    let mut files = vec![(
        "fig1_inertial.csv".to_string(),
        figure_csv(FigureName::Fig1, "a0=0 j0=0", &inertial, &[&flat])?,
    )];
    let mut band_ratio = Vec::new();
    for (model, file, panel) in [
        (&accel, "fig1_accel.csv", "a0>0 j0=0"),
        (&jolt, "fig1_jolt.csv", "a0>0 j0>0"),
    ] {
        let ks = band_grid(model, 0.05, FIGURE_K_POINTS);
        let q = curve("quadrature", model, Method::Quadrature, &ks, opts)?;
        let s = curve("spa", model, Method::Spa, &ks, opts)?;
        files.push((file.to_string(), figure_csv(FigureName::Fig1, panel, model, &[&q, &s])?));
        let (k_end, k_start) = (model.wavenumber(model.window.end), model.wavenumber(model.window.start));
        let ends = model_spectrum(model, Method::Spa, &[k_end, k_start], opts)?;
        band_ratio.push((k_end / k_start, ends[0].magnitude() / ends[1].magnitude()));
    }
    let (d_a, a_a) = band_ratio[0];
    let (d_j, a_j) = band_ratio[1];
    let checks = vec![
        ShapeCheck::below("inertial peak offset [grid cells]", (ks[peak] - kd).abs() / cell, 1.0),
        ShapeCheck::below(
            "inertial normalized peak - 1",
            (mags[peak] / flat.reference - 1.0).abs(),
            1e-3,
        ),
        ShapeCheck::above("chirp minus skewed amplitude ratio", a_a - a_j, f64::MIN_POSITIVE),
        ShapeCheck::above("chirp minus skewed frequency ratio", d_a - d_j, f64::MIN_POSITIVE),
    ];
    Ok(FigureBundle {
        name: FigureName::Fig1,
        files,
        checks,
    })
}

/// Spread `(max - min) / max` of the acceleration SPA amplitude and the
/// fractional decay of the jolt SPA amplitude across their bands, plus a
/// monotonicity flag for the latter.
pub fn fig2_measure(models: &[SignalModel; 2], opts: &QuadratureOptions) -> Result<(f64, f64, bool)> {
    let band = |m: &SignalModel| {
        let (lo, hi) = m.wavenumber_extrema();
        linear_grid(lo, hi, FIGURE_K_POINTS)
    };
    let accel = curve("spa", &models[0], Method::Spa, &band(&models[0]), opts)?;
    let a = magnitudes(&accel);
    let (amin, amax) = a
        .iter()
        .fold((f64::INFINITY, 0.0f64), |(lo, hi), &v| (lo.min(v), hi.max(v)));
    let jolt = curve("spa", &models[1], Method::Spa, &band(&models[1]), opts)?;
    let j: Vec<f64> = magnitudes(&jolt).iter().map(|v| v / jolt.reference).collect();
    // ascending k: amplitude must rise toward the reference
    let monotone = j.windows(2).all(|w| w[1] > w[0]);
    let decay = 1.0 - j.iter().cloned().fold(f64::INFINITY, f64::min);
    Ok(((amax - amin) / amax, decay, monotone))
}

fn fig2(opts: &QuadratureOptions) -> Result<FigureBundle> {
    let models = fig2_models();
    let mut files = Vec::new();
    for (m, file) in models.iter().zip(["fig2_accel.csv", "fig2_jolt.csv"]) {
        let ks = band_grid(m, 0.05, FIGURE_K_POINTS);
        let s = curve("spa", m, Method::Spa, &ks, opts)?;
        let q = curve("quadrature", m, Method::Quadrature, &ks, opts)?;
        files.push((
            file.to_string(),
            figure_csv(FigureName::Fig2, file.trim_end_matches(".csv"), m, &[&s, &q])?,
        ));
    }
    let (spread, decay, monotone) = fig2_measure(&models, opts)?;
    let checks = vec![
        ShapeCheck::below("accel amplitude spread", spread, 0.02),
        ShapeCheck::above("jolt amplitude decay", decay, 0.20),
        ShapeCheck::above("jolt amplitude monotone (1 = yes)", f64::from(u8::from(monotone)), 1.0),
    ];
    Ok(FigureBundle {
        name: FigureName::Fig2,
        files,
        checks,
    })
}

fn fig3(opts: &QuadratureOptions) -> Result<FigureBundle> {
    let model = fs_model(fig3_params());
    let ks = band_grid(&model, 0.05, FIGURE_K_POINTS);
    let q = curve("quadrature", &model, Method::Quadrature, &ks, opts)?;
    let s = curve("spa", &model, Method::Spa, &ks, opts)?;
    let a = curve("airy", &model, Method::Airy, &ks, opts)?;
    let (lo, hi) = model.wavenumber_extrema();
    let dev = central_band_deviation(&q.samples, &s.samples, lo, hi);
    Ok(FigureBundle {
        name: FigureName::Fig3,
        files: vec![(
            "fig3_fs.csv".into(),
            figure_csv(FigureName::Fig3, "monotone", &model, &[&q, &s, &a])?,
        )],
        checks: vec![ShapeCheck::below("SPA vs quadrature, central band", dev, 0.05)],
    })
}

/// `k_c` and the fringe scale `(k0 α·w / 2)^{1/3}` of the fig4 receiver.
pub fn fig4_scales(model: &SignalModel) -> (f64, f64) {
    let Ok(Factors::Fs(f)) = factors(model, model.window.end) else {
        unreachable!("fs model")
    };
    let crate::received_signal::Motion::FsQuadratic { alpha_w, .. } = model.motion else {
        unreachable!()
    };
    (
        f.k_c.expect("quadratic wavenumber"),
        (model.k0() * alpha_w.alpha_dot_w.abs() / 2.0).cbrt(),
    )
}

pub fn fig4_grid(model: &SignalModel) -> Vec<f64> {
    let (kc, s) = fig4_scales(model);
    linear_grid(kc - 5.0 * s, kc + 15.0 * s, FIGURE_K_POINTS)
}

#[derive(Clone, Debug, PartialEq)]
pub struct FringeComparison {
    pub oracle_maxima: Vec<usize>,
    pub airy_maxima: Vec<usize>,
    /// Largest index offset over the first five fringes.
    pub max_offset: usize,
    /// Oracle fringes on the oscillatory side.
    pub fringe_count: usize,
    /// Oracle magnitude decreases monotonically from `k_c` to `k_c - 3s`.
    pub decays: bool,
}

pub fn compare_fringes(ks: &[f64], oracle: &[f64], airy: &[f64], kc: f64, scale: f64) -> FringeComparison {
    let side = |idx: Vec<usize>| idx.into_iter().filter(|&i| ks[i] >= kc).collect::<Vec<_>>();
    let om = side(local_maxima(oracle));
    let am = side(local_maxima(airy));
    let max_offset = om
        .iter()
        .zip(&am)
        .take(5)
        .map(|(a, b)| a.abs_diff(*b))
        .max()
        .unwrap_or(usize::MAX);
    let max_offset = if om.len() < 5 || am.len() < 5 {
        usize::MAX
    } else {
        max_offset
    };
    let evanescent: Vec<f64> = ks
        .iter()
        .zip(oracle)
        .filter(|(k, _)| **k >= kc - 3.0 * scale && **k <= kc)
        .map(|(_, v)| *v)
        .collect();
    FringeComparison {
        fringe_count: om.len(),
        oracle_maxima: om,
        airy_maxima: am,
        max_offset,
        decays: evanescent.len() > 2 && evanescent.windows(2).all(|w| w[1] > w[0]),
    }
}

fn fig4(opts: &QuadratureOptions) -> Result<FigureBundle> {
    let model = fs_model(fig4_params());
    let ks = fig4_grid(&model);
    let (kc, s) = fig4_scales(&model);
    let q = curve("quadrature", &model, Method::Quadrature, &ks, opts)?;
    let a = curve("airy", &model, Method::Airy, &ks, opts)?;
    let p = curve("spa", &model, Method::Spa, &ks, opts)?;
    let cmp = compare_fringes(&ks, &magnitudes(&q), &magnitudes(&a), kc, s);
    Ok(FigureBundle {
        name: FigureName::Fig4,
        files: vec![(
            "fig4_fs_caustic.csv".into(),
            figure_csv(FigureName::Fig4, "caustic", &model, &[&q, &a, &p])?,
        )],
        checks: vec![
            ShapeCheck::above("oracle fringes past k_c", cmp.fringe_count as f64, 3.0),
            ShapeCheck::above(
                "monotone decay before k_c (1 = yes)",
                f64::from(u8::from(cmp.decays)),
                1.0,
            ),
            ShapeCheck::below("fringe offset, first five [grid cells]", cmp.max_offset as f64, 1.0),
        ],
    })
}

pub fn figure(name: FigureName, opts: &QuadratureOptions) -> Result<FigureBundle> {
    match name {
        FigureName::Fig1 => fig1(opts),
        FigureName::Fig2 => fig2(opts),
        FigureName::Fig3 => fig3(opts),
        FigureName::Fig4 => fig4(opts),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for f in FigureName::ALL {
            assert_eq!(f.as_str().parse::<FigureName>().unwrap(), f);
        }
        assert!("fig5".parse::<FigureName>().is_err());
    }

    #[test]
    fn maxima_detection() {
        assert_eq!(local_maxima(&[0.0, 1.0, 0.0, 2.0, 2.0, 1.0]), vec![1, 3]);
    }

    #[test]
    fn fixture_geometry() {
        let m = fs_model(fig4_params());
        let crate::received_signal::Motion::FsQuadratic { alpha_w, .. } = m.motion else {
            panic!()
        };
        assert!((alpha_w.alpha_dot_w - 0.1).abs() < 1e-15);
        let (kc, _) = fig4_scales(&m);
        assert!((kc / m.k0() - 0.9875).abs() < 1e-12);
    }

    #[test]
    fn fig2_window_precedes_turning_point() {
        let [_, jolt] = fig2_models();
        assert_eq!(
            crate::received_signal::monotonicity(&jolt),
            crate::received_signal::Monotonicity::MonotoneDecreasing
        );
    }
}
