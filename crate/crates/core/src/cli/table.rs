//! CSV tables with a `#`-prefixed metadata header. Numbers carry 15
//! significant digits; undefined values are written as `NaN`.

use std::collections::BTreeMap;

use num_complex::Complex64;

use super::config::Scenario;
use crate::error::{Error, Result};
use crate::frenet_serret::{quartic_coefficients, ExpansionOrder, FsParams, FsPath};
use crate::kinematics::kinematic_state_with_position;
use crate::minkowski::{FourVector, Tetrad};
use crate::oscillatory::quadrature::panel_count;
use crate::oscillatory::{method_applies, model_spectrum, Method, QuadratureOptions, SpectrumSample};
use crate::quad::PANEL_ORDER;
use crate::received_signal::{Motion, ReceivedSignal, SignalModel};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// `{:.14e}`: 15 significant digits.
pub fn fmt_num(v: f64) -> String {
    if v.is_nan() {
        "NaN".into()
    } else {
        format!("{v:.14e}")
    }
}

/// Ordered `key: value` metadata lines.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Metadata(pub Vec<(String, String)>);

impl Metadata {
    pub fn push(&mut self, key: impl Into<String>, value: impl Into<String>) {
        self.0.push((key.into(), value.into()));
    }

    fn render(&self) -> String {
        self.0.iter().map(|(k, v)| format!("# {k}: {v}\n")).collect()
    }
}

pub fn write_csv(meta: &Metadata, header: &[&str], rows: &[Vec<String>]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header)?;
    for r in rows {
        w.write_record(r)?;
    }
    let body = String::from_utf8(w.into_inner().map_err(|e| Error::Io(e.to_string()))?)
        .map_err(|e| Error::Io(e.to_string()))?;
    Ok(meta.render() + &body)
}

#[derive(Clone, Debug, PartialEq)]
pub struct SpectrumRow {
    pub k: f64,
    pub k_over_k0: f64,
    pub abs_s: f64,
    pub abs_s_normalized: f64,
    pub value: Complex64,
    pub method: Method,
    pub rel_dev_vs_quadrature: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SpectrumTable {
    pub metadata: Metadata,
    pub reference_k: f64,
    pub rows: Vec<SpectrumRow>,
}

pub const SPECTRUM_HEADER: [&str; 8] = [
    "k",
    "k_over_k0",
    "abs_S",
    "abs_S_normalized",
    "re_S",
    "im_S",
    "method",
    "rel_dev_vs_quadrature",
];

impl SpectrumTable {
    pub fn to_csv(&self) -> Result<String> {
        let rows: Vec<Vec<String>> = self
            .rows
            .iter()
            .map(|r| {
                vec![
                    fmt_num(r.k),
                    fmt_num(r.k_over_k0),
                    fmt_num(r.abs_s),
                    fmt_num(r.abs_s_normalized),
                    fmt_num(r.value.re),
                    fmt_num(r.value.im),
                    r.method.to_string(),
                    fmt_num(r.rel_dev_vs_quadrature),
                ]
            })
            .collect();
        write_csv(&self.metadata, &SPECTRUM_HEADER, &rows)
    }

    pub fn rows_for(&self, method: Method) -> impl Iterator<Item = &SpectrumRow> {
        self.rows.iter().filter(move |r| r.method == method)
    }
}

/// Quadrature options honouring an explicit sample count; a count below
/// the Nyquist requirement is refused with the count that would pass.
pub fn quadrature_options(
    model: &SignalModel,
    ks: &[f64],
    samples: Option<usize>,
    oversample: f64,
) -> Result<QuadratureOptions> {
    let Some(n) = samples else {
        return Ok(QuadratureOptions::with_oversample(oversample));
    };
    let opts = QuadratureOptions {
        oversample,
        panels: Some(n.div_ceil(PANEL_ORDER)),
    };
    match panel_count(model, ks, &opts) {
        Ok(_) => Ok(opts),
        Err(Error::NyquistViolation { required_factor }) => Err(Error::Undersampled {
            samples: n,
            required: ((n.div_ceil(PANEL_ORDER) * PANEL_ORDER) as f64 * required_factor).ceil() as usize,
        }),
        Err(e) => Err(e),
    }
}

/// `|S(K_s(cτ_i))|` shared by every method's normalized column. The
/// stationary-phase value is preferred: quadrature at a band edge sees only
/// half of the endpoint stationary point.
pub fn reference_magnitude(model: &SignalModel, opts: &QuadratureOptions) -> Result<(Method, f64)> {
    let reference_k = model.wavenumber(model.window.start);
    if method_applies(model, Method::Spa) {
        let v = model_spectrum(model, Method::Spa, &[reference_k], opts)?[0].magnitude();
        if v.is_finite() && v > 0.0 {
            return Ok((Method::Spa, v));
        }
    }
    let v = model_spectrum(model, Method::Quadrature, &[reference_k], opts)?[0].magnitude();
    Ok((Method::Quadrature, v))
}

/// Spectra for every requested method over one k grid, normalized by
/// [`reference_magnitude`].
pub fn spectrum_table(
    model: &SignalModel,
    ks: &[f64],
    methods: &[Method],
    opts: &QuadratureOptions,
    mut metadata: Metadata,
) -> Result<SpectrumTable> {
    let k0 = model.k0();
    let reference_k = model.wavenumber(model.window.start);
    let (reference_method, reference) = reference_magnitude(model, opts)?;
    let mut per_method: BTreeMap<Method, Vec<SpectrumSample>> = BTreeMap::new();
    for &m in methods {
        per_method.insert(m, model_spectrum(model, m, ks, opts)?);
    }
    let quad = per_method.get(&Method::Quadrature).cloned();
    let mut rows = Vec::with_capacity(ks.len() * methods.len());
    for (i, &k) in ks.iter().enumerate() {
        for (m, samples) in &per_method {
            let s = samples[i];
            let abs_s = s.magnitude();
            let dev = match &quad {
                Some(q) => (abs_s / q[i].magnitude() - 1.0).abs(),
                None => f64::NAN,
            };
            rows.push(SpectrumRow {
                k,
                k_over_k0: k / k0,
                abs_s,
                abs_s_normalized: abs_s / reference,
                value: s.value,
                method: *m,
                rel_dev_vs_quadrature: dev,
            });
        }
    }
    metadata.push("reference_k", fmt_num(reference_k));
    metadata.push("reference_method", reference_method.as_str());
    metadata.push("reference_abs_S", fmt_num(reference));
    metadata.push("k0", fmt_num(k0));
    metadata.push(
        "methods",
        methods.iter().map(Method::as_str).collect::<Vec<_>>().join(","),
    );
    metadata.push("oversample", fmt_num(opts.oversample));
    Ok(SpectrumTable {
        metadata,
        reference_k,
        rows,
    })
}

pub fn scenario_metadata(command: &str, scenario: &Scenario) -> Metadata {
    let mut meta = Metadata::default();
    meta.push("generator", format!("doppler-core {VERSION}"));
    meta.push("command", command);
    let compact = serde_json::to_string(&scenario.config).expect("scenario serializes");
    meta.push("scenario", compact);
    meta
}

pub fn cmd_spectrum(scenario: &Scenario, methods: Option<&[Method]>, oversample: f64) -> Result<SpectrumTable> {
    let methods = methods.unwrap_or(&scenario.methods);
    if methods.is_empty() {
        return Err(Error::config("methods", "at least one method is required"));
    }
    let opts = quadrature_options(&scenario.model, &scenario.k_grid, scenario.samples, oversample)?;
    spectrum_table(
        &scenario.model,
        &scenario.k_grid,
        methods,
        &opts,
        scenario_metadata("spectrum", scenario),
    )
}

/// Kinematic four-vectors along the window.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct KinematicRow {
    pub ctau: f64,
    pub z: FourVector,
    pub u: FourVector,
    pub a: FourVector,
    pub j: FourVector,
    pub sigma: FourVector,
}

fn fs_derivatives(params: &FsParams, frame: &Tetrad, ctau: f64, order: ExpansionOrder) -> (FourVector, FourVector) {
    let (k1, k1p, k2) = (params.kappa1, params.kappa1_p, params.kappa2);
    let s = ctau;
    let mut second = [k1 * k1 * s, k1 + k1p * s, k1 * k2 * s, 0.0];
    let mut third = [k1 * k1, k1p, k1 * k2, 0.0];
    if order == ExpansionOrder::Fourth {
        let q = quartic_coefficients(params);
        for i in 0..4 {
            second[i] += 12.0 * q[i] * s * s;
            third[i] += 24.0 * q[i] * s;
        }
    }
    let combine = |c: [f64; 4]| (0..4).fold(FourVector::ZERO, |acc, i| acc + frame.e[i] * c[i]);
    (combine(second), combine(third))
}

pub fn kinematic_rows(model: &SignalModel, grid: &[f64]) -> Result<Vec<KinematicRow>> {
    match &model.motion {
        Motion::Jolt(p) | Motion::Accel(p) => grid
            .iter()
            .map(|&s| {
                let st = kinematic_state_with_position(p, s)?;
                Ok(KinematicRow {
                    ctau: s,
                    z: st.z,
                    u: st.u,
                    a: st.a,
                    j: st.j,
                    sigma: st.sigma,
                })
            })
            .collect(),
        Motion::FsQuadratic { params, frame, .. } => {
            let path = FsPath::new(*params, *frame, ExpansionOrder::Third)?;
            Ok(grid
                .iter()
                .map(|&s| {
                    let u = path.tangent(s);
                    let (a, j) = fs_derivatives(params, frame, s, path.order);
                    KinematicRow {
                        ctau: s,
                        z: path.position(s),
                        u,
                        a,
                        j,
                        sigma: j - u * a.dot(&a),
                    }
                })
                .collect())
        }
    }
}

pub const KINEMATICS_SAMPLES: usize = 101;

pub fn cmd_kinematics(scenario: &Scenario) -> Result<String> {
    let n = scenario.samples.unwrap_or(KINEMATICS_SAMPLES);
    let grid = scenario.model.window.grid(n);
    let rows = kinematic_rows(&scenario.model, &grid)?;
    let mut header: Vec<String> = vec!["ctau".into()];
    for name in ["z", "u", "a", "j", "sigma"] {
        header.extend((0..4).map(|i| format!("{name}{i}")));
    }
    header.extend(["abs_a".into(), "abs_sigma".into()]);
    let header: Vec<&str> = header.iter().map(String::as_str).collect();
    let body: Vec<Vec<String>> = rows
        .iter()
        .map(|r| {
            let mut v = vec![fmt_num(r.ctau)];
            for vec4 in [r.z, r.u, r.a, r.j, r.sigma] {
                v.extend(vec4.0.iter().map(|&c| fmt_num(c)));
            }
            v.push(fmt_num(r.a.dot(&r.a).max(0.0).sqrt()));
            v.push(fmt_num(r.sigma.dot(&r.sigma).max(0.0).sqrt()));
            v
        })
        .collect();
    write_csv(&scenario_metadata("kinematics", scenario), &header, &body)
}
