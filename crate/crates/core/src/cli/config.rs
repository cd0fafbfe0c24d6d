//! JSON scenario documents.
//!
//! Worldline parameters may be given in SI (`a0_si` in m/s², `j0_si` in
//! m/s³) or geometric units (`a0_geom` in 1/m, `j0_geom` in 1/m²), never both.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::frenet_serret::FsParams;
use crate::kinematics::JoltParams;
use crate::minkowski::{FourVector, PlaneWave, Tetrad, SPEED_OF_LIGHT};
use crate::oscillatory::Method;
use crate::received_signal::{ReceivedSignal, SignalModel, Window};

pub const DEFAULT_CARRIER_HZ: f64 = 1e9;
pub const DEFAULT_K_POINTS: usize = 512;
/// Default spectrum grid, as fractions of the band `[K_min, K_max]`.
pub const DEFAULT_GRID_SPAN: (f64, f64) = (0.97, 1.01);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModelKind {
    Inertial,
    Accel,
    Jolt,
    Fs,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FrameSpec {
    /// `"rest"` or `"boost_x"` (boost with the scenario `beta`).
    Preset(String),
    Explicit {
        tetrad: [[f64; 4]; 4],
    },
}

impl Default for FrameSpec {
    fn default() -> Self {
        FrameSpec::Preset("rest".into())
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FsConfig {
    #[serde(default)]
    pub kappa1: f64,
    #[serde(default)]
    pub kappa1_p: f64,
    #[serde(default)]
    pub kappa1_pp: f64,
    #[serde(default)]
    pub kappa2: f64,
    #[serde(default)]
    pub kappa2_p: f64,
    #[serde(default)]
    pub kappa3: f64,
    #[serde(default)]
    pub frame: FrameSpec,
    /// Overrides `wave.khat` for the Frenet-Serret model.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub khat: Option<[f64; 3]>,
}

fn default_f0() -> f64 {
    DEFAULT_CARRIER_HZ
}

fn default_khat() -> [f64; 3] {
    [1.0, 0.0, 0.0]
}

fn default_e0() -> f64 {
    1.0
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WaveConfig {
    #[serde(default = "default_f0")]
    pub f0_hz: f64,
    #[serde(default = "default_khat")]
    pub khat: [f64; 3],
    #[serde(default = "default_e0")]
    pub e0: f64,
}

impl Default for WaveConfig {
    fn default() -> Self {
        WaveConfig {
            f0_hz: default_f0(),
            khat: default_khat(),
            e0: default_e0(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WindowConfig {
    pub ctau_i: f64,
    pub ctau_f: f64,
}

impl Default for WindowConfig {
    fn default() -> Self {
        WindowConfig {
            ctau_i: 0.0,
            ctau_f: 1.0,
        }
    }
}

fn default_n_k() -> usize {
    DEFAULT_K_POINTS
}

fn default_methods() -> Vec<Method> {
    vec![Method::Quadrature, Method::Spa]
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpectrumConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k_min: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k_max: Option<f64>,
    #[serde(default = "default_n_k")]
    pub n_k: usize,
    #[serde(default = "default_methods")]
    pub methods: Vec<Method>,
}

impl Default for SpectrumConfig {
    fn default() -> Self {
        SpectrumConfig {
            k_min: None,
            k_max: None,
            n_k: default_n_k(),
            methods: default_methods(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SampleCount {
    Auto(AutoTag),
    Fixed(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AutoTag {
    Auto,
}

impl Default for SampleCount {
    fn default() -> Self {
        SampleCount::Auto(AutoTag::Auto)
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SamplingConfig {
    #[serde(default)]
    pub n_samples: SampleCount,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    pub model: ModelKind,
    #[serde(default)]
    pub beta: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a0_si: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a0_geom: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub j0_si: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub j0_geom: Option<f64>,
    #[serde(default)]
    pub x1_0: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fs: Option<FsConfig>,
    #[serde(default)]
    pub wave: WaveConfig,
    #[serde(default)]
    pub window: WindowConfig,
    #[serde(default)]
    pub spectrum: SpectrumConfig,
    #[serde(default)]
    pub sampling: SamplingConfig,
}

/// A validated scenario.
#[derive(Clone, Debug, PartialEq)]
pub struct Scenario {
    pub config: ScenarioConfig,
    pub model: SignalModel,
    pub k_grid: Vec<f64>,
    pub methods: Vec<Method>,
    pub samples: Option<usize>,
}

fn pick(field: &str, si: Option<f64>, geom: Option<f64>, si_scale: f64) -> Result<Option<f64>> {
    let value = match (si, geom) {
        (Some(_), Some(_)) => {
            return Err(Error::config(
                field,
                format!("give exactly one of {field}_si and {field}_geom"),
            ))
        }
        (Some(s), None) => Some(s / si_scale),
        (None, g) => g,
    };
    if let Some(v) = value {
        if !v.is_finite() {
            return Err(Error::config(field, "must be finite"));
        }
    }
    Ok(value)
}

impl ScenarioConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::config("<document>", e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("scenario serializes")
    }

    /// Proper acceleration in 1/m.
    pub fn a0(&self) -> Result<Option<f64>> {
        pick("a0", self.a0_si, self.a0_geom, SPEED_OF_LIGHT * SPEED_OF_LIGHT)
    }

    /// Proper jolt in 1/m².
    pub fn j0(&self) -> Result<Option<f64>> {
        pick("j0", self.j0_si, self.j0_geom, SPEED_OF_LIGHT.powi(3))
    }

    fn wave_for(&self, khat: [f64; 3]) -> Result<PlaneWave> {
        PlaneWave::new(self.wave.f0_hz, khat, self.wave.e0).map_err(|e| Error::config("wave", e.to_string()))
    }

    fn frame(&self, spec: &FrameSpec) -> Result<Tetrad> {
        let frame = match spec {
            FrameSpec::Preset(name) => match name.as_str() {
                "rest" => Tetrad::identity(),
                "boost_x" => Tetrad::boost_x(self.beta).map_err(|e| Error::config("fs.frame", e.to_string()))?,
                other => {
                    return Err(Error::config(
                        "fs.frame",
                        format!("unknown preset `{other}` (expected rest or boost_x)"),
                    ))
                }
            },
            FrameSpec::Explicit { tetrad } => Tetrad::new(
                FourVector(tetrad[0]),
                FourVector(tetrad[1]),
                FourVector(tetrad[2]),
                FourVector(tetrad[3]),
            ),
        };
        frame
            .check_orthonormal(Tetrad::GRAM_TOLERANCE)
            .map_err(|e| Error::config("fs.frame", e.to_string()))?;
        Ok(frame)
    }

    pub fn signal_model(&self) -> Result<SignalModel> {
        let window =
            Window::new(self.window.ctau_i, self.window.ctau_f).map_err(|e| Error::config("window", e.to_string()))?;
        let a0 = self.a0()?;
        let j0 = self.j0()?;
        let jolt = |a0: f64, j0: f64| {
            JoltParams::with_offset(self.beta, a0, j0, self.x1_0)
                .map_err(|e| Error::config("beta/a0/j0", e.to_string()))
        };
        let wrap = |r: Result<SignalModel>, field: &str| r.map_err(|e| Error::config(field, e.to_string()));
        match self.model {
            ModelKind::Inertial => {
                if a0.unwrap_or(0.0) != 0.0 || j0.unwrap_or(0.0) != 0.0 {
                    return Err(Error::config("model", "inertial model takes no a0 or j0"));
                }
                wrap(
                    SignalModel::jolt(jolt(0.0, 0.0)?, self.wave_for(self.wave.khat)?, window),
                    "wave.khat",
                )
            }
            ModelKind::Accel => {
                let a0 = a0.ok_or_else(|| Error::config("a0", "acceleration model needs a0_si or a0_geom"))?;
                if j0.unwrap_or(0.0) != 0.0 {
                    return Err(Error::config("j0", "acceleration model needs j0 = 0"));
                }
                wrap(
                    SignalModel::accel(jolt(a0, 0.0)?, self.wave_for(self.wave.khat)?, window),
                    "a0",
                )
            }
            ModelKind::Jolt => {
                let a0 = a0.ok_or_else(|| Error::config("a0", "jolt model needs a0_si or a0_geom"))?;
                let j0 = j0.ok_or_else(|| Error::config("j0", "jolt model needs j0_si or j0_geom"))?;
                wrap(
                    SignalModel::jolt(jolt(a0, j0)?, self.wave_for(self.wave.khat)?, window),
                    "wave.khat",
                )
            }
            ModelKind::Fs => {
                let fs = self
                    .fs
                    .as_ref()
                    .ok_or_else(|| Error::config("fs", "Frenet-Serret model needs an fs block"))?;
                let params = FsParams {
                    kappa1: fs.kappa1,
                    kappa1_p: fs.kappa1_p,
                    kappa1_pp: fs.kappa1_pp,
                    kappa2: fs.kappa2,
                    kappa2_p: fs.kappa2_p,
                    kappa3: fs.kappa3,
                };
                params.validate().map_err(|e| Error::config("fs", e.to_string()))?;
                let frame = self.frame(&fs.frame)?;
                let wave = self.wave_for(fs.khat.unwrap_or(self.wave.khat))?;
                wrap(SignalModel::fs(params, frame, wave, window), "fs")
            }
        }
    }

    /// Validates every field and resolves defaults.
    pub fn resolve(&self) -> Result<Scenario> {
        let model = self.signal_model()?;
        let spec = &self.spectrum;
        if spec.n_k == 0 {
            return Err(Error::config("spectrum.n_k", "must be positive"));
        }
        if spec.methods.is_empty() {
            return Err(Error::config("spectrum.methods", "at least one method is required"));
        }
        let (lo, hi) = model.wavenumber_extrema();
        let k_min = spec.k_min.unwrap_or(DEFAULT_GRID_SPAN.0 * lo);
        let k_max = spec.k_max.unwrap_or(DEFAULT_GRID_SPAN.1 * hi);
        if !(k_min.is_finite() && k_max.is_finite() && k_min < k_max) {
            return Err(Error::config(
                "spectrum.k_min/k_max",
                format!("need finite k_min < k_max, got [{k_min}, {k_max}]"),
            ));
        }
        let mut methods = spec.methods.clone();
        methods.sort();
        methods.dedup();
        let samples = match self.sampling.n_samples {
            SampleCount::Auto(_) => None,
            SampleCount::Fixed(n) if n >= 2 => Some(n),
            SampleCount::Fixed(n) => {
                return Err(Error::config("sampling.n_samples", format!("need at least 2, got {n}")))
            }
        };
        Ok(Scenario {
            config: self.clone(),
            model,
            k_grid: crate::oscillatory::linear_grid(k_min, k_max, spec.n_k),
            methods,
            samples,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const JOLT: &str = r#"{
        "model": "jolt", "beta": 0.1, "a0_geom": 0.05, "j0_geom": 0.02,
        "window": {"ctau_i": 0.0, "ctau_f": 1.0},
        "spectrum": {"n_k": 64, "methods": ["spa", "quadrature"]}
    }"#;

    #[test]
    fn parses_and_applies_defaults() {
        let cfg = ScenarioConfig::from_json(JOLT).unwrap();
        assert_eq!(cfg.wave.f0_hz, 1e9);
        assert_eq!(cfg.sampling.n_samples, SampleCount::default());
        let s = cfg.resolve().unwrap();
        assert_eq!(s.k_grid.len(), 64);
        assert_eq!(s.methods, vec![Method::Quadrature, Method::Spa]);
    }

    #[test]
    fn round_trip_is_exact() {
        let cfg = ScenarioConfig::from_json(JOLT).unwrap();
        let again = ScenarioConfig::from_json(&cfg.to_json()).unwrap();
        assert_eq!(cfg, again);
        assert_eq!(cfg.resolve().unwrap().model, again.resolve().unwrap().model);
    }

    #[test]
    fn si_and_geometric_units_agree() {
        let c = SPEED_OF_LIGHT;
        let si = JOLT
            .replace("\"a0_geom\": 0.05", &format!("\"a0_si\": {:e}", 0.05 * c * c))
            .replace("\"j0_geom\": 0.02", &format!("\"j0_si\": {:e}", 0.02 * c * c * c));
        let a = ScenarioConfig::from_json(JOLT).unwrap();
        let b = ScenarioConfig::from_json(&si).unwrap();
        assert!((a.a0().unwrap().unwrap() / b.a0().unwrap().unwrap() - 1.0).abs() < 1e-15);
        assert!((a.j0().unwrap().unwrap() / b.j0().unwrap().unwrap() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn field_level_errors() {
        let both = JOLT.replace("\"a0_geom\": 0.05", "\"a0_geom\": 0.05, \"a0_si\": 1.0");
        let err = ScenarioConfig::from_json(&both).unwrap().resolve().unwrap_err();
        assert!(matches!(err, Error::Config { ref field, .. } if field == "a0"), "{err}");

        let fast = JOLT.replace("\"beta\": 0.1", "\"beta\": 1.5");
        let err = ScenarioConfig::from_json(&fast).unwrap().resolve().unwrap_err();
        assert!(matches!(err, Error::Config { .. }));

        let unknown = JOLT.replace("\"beta\"", "\"betta\"");
        assert!(ScenarioConfig::from_json(&unknown).is_err());

        let fs = r#"{"model": "fs", "fs": {"kappa1": 0.05, "frame": {"tetrad": [[1,0,0,0],[0,2,0,0],[0,0,1,0],[0,0,0,1]]}}}"#;
        let err = ScenarioConfig::from_json(fs).unwrap().resolve().unwrap_err();
        assert!(matches!(err, Error::Config { ref field, .. } if field == "fs.frame"));
    }

    #[test]
    fn sample_count_forms() {
        let auto: SamplingConfig = serde_json::from_str(r#"{"n_samples": "auto"}"#).unwrap();
        assert_eq!(auto.n_samples, SampleCount::Auto(AutoTag::Auto));
        let fixed: SamplingConfig = serde_json::from_str(r#"{"n_samples": 4096}"#).unwrap();
        assert_eq!(fixed.n_samples, SampleCount::Fixed(4096));
    }
}
