//! Frenet-Serret frames of timelike worldlines in 4D spacetime.
//!
//! The frame `(e0, e1, e2, e3)` (tangent, normal, binormal, trinormal) obeys
//!
//! ```text
//! de0/dcτ =  κ1 e1
//! de1/dcτ =  κ1 e0 + κ2 e2
//! de2/dcτ = -κ2 e1 + κ3 e3
//! de3/dcτ = -κ3 e2
//! ```
//!
//! with curvature `κ1`, torsion `κ2` and hyper-torsion `κ3`. Near `cτ = 0` the
//! worldline is approximated by its Taylor series written in the initial
//! frame; [`AlphaW`] carries the contractions of that frame with the incoming
//! plane wave, which is all the received-phase model needs.

use crate::error::{Error, Result};
use crate::kinematics::integrate_frame;
use crate::minkowski::{FourVector, PlaneWave, Tetrad, SPEED_OF_LIGHT};

/// Curvature parameters and derivatives at `cτ = 0`.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct FsParams {
    /// Curvature `κ1` (1/m), non-negative.
    pub kappa1: f64,
    /// `κ1'` (1/m²).
    pub kappa1_p: f64,
    /// `κ1''` (1/m³); only the fourth-order expansion uses it.
    pub kappa1_pp: f64,
    /// Torsion `κ2` (1/m).
    pub kappa2: f64,
    /// `κ2'` (1/m²); only the fourth-order expansion uses it.
    pub kappa2_p: f64,
    /// Hyper-torsion `κ3` (1/m).
    pub kappa3: f64,
}

impl FsParams {
    pub fn validate(&self) -> Result<()> {
        let all = [
            self.kappa1,
            self.kappa1_p,
            self.kappa1_pp,
            self.kappa2,
            self.kappa2_p,
            self.kappa3,
        ];
        if !all.iter().all(|v| v.is_finite()) {
            return Err(Error::NonFinite("Frenet-Serret parameters"));
        }
        if self.kappa1 < 0.0 {
            return Err(Error::Domain(format!(
                "curvature is a magnitude, got kappa1 = {}",
                self.kappa1
            )));
        }
        Ok(())
    }

    /// Constant-curvature parameters (all derivatives zero).
    pub fn constant(kappa1: f64, kappa2: f64, kappa3: f64) -> Self {
        FsParams {
            kappa1,
            kappa2,
            kappa3,
            ..Default::default()
        }
    }
}

/// Tangent, normal, binormal and trinormal at `cτ = 0`.
pub type FsFrame = Tetrad;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExpansionOrder {
    Third,
    Fourth,
}

/// Frame coefficients `ζ^ν(cτ)` of `z(cτ) - z(0)` in the initial frame.
pub fn expansion_coefficients(p: &FsParams, ctau: f64, order: ExpansionOrder) -> [f64; 4] {
    let (k1, k1p, k2) = (p.kappa1, p.kappa1_p, p.kappa2);
    let s = ctau;
    let s2 = s * s;
    let s3 = s2 * s;
    let mut z = [
        s + k1 * k1 * s3 / 6.0,
        k1 * s2 / 2.0 + k1p * s3 / 6.0,
        k1 * k2 * s3 / 6.0,
        0.0,
    ];
    if order == ExpansionOrder::Fourth {
        let q = quartic_coefficients(p);
        let s4 = s2 * s2;
        for (zi, qi) in z.iter_mut().zip(q) {
            *zi += qi * s4;
        }
    }
    z
}

/// Coefficients of `(cτ)^4` in each frame direction.
pub fn quartic_coefficients(p: &FsParams) -> [f64; 4] {
    let (k1, k1p, k1pp, k2, k2p, k3) = (p.kappa1, p.kappa1_p, p.kappa1_pp, p.kappa2, p.kappa2_p, p.kappa3);
    [
        3.0 * k1 * k1p / 24.0,
        (k1 * k1 * k1 + k1pp - k1 * k2 * k2) / 24.0,
        (2.0 * k1p * k2 + k1 * k2p) / 24.0,
        k1 * k2 * k3 / 24.0,
    ]
}

/// `dζ^ν/dcτ`.
pub fn expansion_rates(p: &FsParams, ctau: f64, order: ExpansionOrder) -> [f64; 4] {
    let (k1, k1p, k2) = (p.kappa1, p.kappa1_p, p.kappa2);
    let s = ctau;
    let s2 = s * s;
    let mut d = [
        1.0 + k1 * k1 * s2 / 2.0,
        k1 * s + k1p * s2 / 2.0,
        k1 * k2 * s2 / 2.0,
        0.0,
    ];
    if order == ExpansionOrder::Fourth {
        let q = quartic_coefficients(p);
        for (di, qi) in d.iter_mut().zip(q) {
            *di += 4.0 * qi * s2 * s;
        }
    }
    d
}

fn combine(frame: &FsFrame, coeffs: [f64; 4]) -> FourVector {
    (0..4).fold(FourVector::ZERO, |acc, i| acc + frame.e[i] * coeffs[i])
}

/// Series approximation of the worldline around `cτ = 0`.
pub fn fs_path_expansion(
    p: &FsParams,
    frame0: &FsFrame,
    z0: FourVector,
    ctau: f64,
    order: ExpansionOrder,
) -> FourVector {
    z0 + combine(frame0, expansion_coefficients(p, ctau, order))
}

/// Worldline given by the Frenet-Serret series; convenient when the same
/// parameters are evaluated many times.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FsPath {
    pub params: FsParams,
    pub frame: FsFrame,
    pub origin: FourVector,
    pub order: ExpansionOrder,
}

impl FsPath {
    pub fn new(params: FsParams, frame: FsFrame, order: ExpansionOrder) -> Result<Self> {
        params.validate()?;
        frame.check_orthonormal(Tetrad::GRAM_TOLERANCE)?;
        Ok(FsPath {
            params,
            frame,
            origin: FourVector::ZERO,
            order,
        })
    }

    pub fn position(&self, ctau: f64) -> FourVector {
        fs_path_expansion(&self.params, &self.frame, self.origin, ctau, self.order)
    }

    /// Analytic `dz/dcτ` of the truncated series.
    pub fn tangent(&self, ctau: f64) -> FourVector {
        combine(&self.frame, expansion_rates(&self.params, ctau, self.order))
    }
}

/// Integrates the Frenet-Serret equations with constant `κ1`, `κ2`, `κ3`.
pub fn fs_frame_evolve(
    p: &FsParams,
    initial: &FsFrame,
    start: f64,
    end: f64,
    step: f64,
) -> Result<Vec<(f64, FsFrame)>> {
    p.validate()?;
    initial.check_orthonormal(Tetrad::GRAM_TOLERANCE)?;
    let (k1, k2, k3) = (p.kappa1, p.kappa2, p.kappa3);
    integrate_frame(initial, start, end, step, |_, f| {
        let [e0, e1, e2, e3] = f.e;
        Tetrad::new(e1 * k1, e0 * k1 + e2 * k2, e1 * (-k2) + e3 * k3, e2 * (-k3))
    })
}

fn central_first(f: &dyn Fn(f64) -> FourVector, s: f64, h: f64) -> FourVector {
    (f(s - 2.0 * h) - f(s + 2.0 * h) + (f(s + h) - f(s - h)) * 8.0) * (1.0 / (12.0 * h))
}

/// Three-velocity `v = c (dx_s/dcτ) / (dct/dcτ)` in m/s, from 5-point
/// central differences at step `1e-5`.
pub fn three_velocity(path: impl Fn(f64) -> FourVector, ctau: f64) -> Result<[f64; 3]> {
    let d = central_first(&path, ctau, 1e-5);
    if !(d[0] > 0.0) {
        return Err(Error::NotFutureDirected { ctau });
    }
    let sp = d.spatial();
    Ok(sp.map(|c| SPEED_OF_LIGHT * c / d[0]))
}

/// `α_{ν''} = k_μ e_{ν''}^μ`, `w = (κ1², κ1', κ1κ2, 0)` and their plain sum.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AlphaW {
    pub alpha: [f64; 4],
    pub w: [f64; 4],
    pub alpha_dot_w: f64,
}

impl AlphaW {
    pub fn new(wave: &PlaneWave, frame0: &FsFrame, params: &FsParams) -> Result<Self> {
        frame0.check_orthonormal(Tetrad::GRAM_TOLERANCE)?;
        Ok(alpha_w(wave, frame0, params))
    }

    /// `α1 κ1`, the linear coefficient of the received wavenumber.
    pub fn alpha1_kappa1(&self, params: &FsParams) -> f64 {
        self.alpha[1] * params.kappa1
    }
}

pub fn alpha_w(wave: &PlaneWave, frame0: &FsFrame, params: &FsParams) -> AlphaW {
    let k = wave.covector();
    let alpha = std::array::from_fn(|i| k.contract(&frame0.e[i]));
    let w = [
        params.kappa1 * params.kappa1,
        params.kappa1_p,
        params.kappa1 * params.kappa2,
        0.0,
    ];
    let alpha_dot_w = alpha[0] * w[0] + alpha[1] * w[1] + alpha[2] * w[2];
    AlphaW { alpha, w, alpha_dot_w }
}

/// Curvatures recovered from a proper-time parameterized worldline.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CurvatureEstimate {
    pub kappa1: f64,
    pub kappa1_p: f64,
    pub kappa2: f64,
    pub kappa3: f64,
    /// `|estimate(h) - estimate(2h)|` for `κ1`, `κ2`, `κ3`.
    pub error_bound: [f64; 3],
}

/// Below this the corresponding curvature is treated as zero.
pub const CURVATURE_FLOOR: f64 = 1e-6;

// Step per derivative order; higher orders need wider stencils to keep
// round-off (∝ eps / h^n) below truncation.
const DERIVATIVE_STEPS: [f64; 4] = [1e-3, 1e-3, 5e-3, 2e-2];

fn derivatives(path: &dyn Fn(f64) -> FourVector, s: f64, scale: f64) -> [FourVector; 4] {
    let f = |k: i32, h: f64| path(s + k as f64 * h);
    let h = DERIVATIVE_STEPS.map(|v| v * scale);
    let d1 = (f(-2, h[0]) - f(2, h[0]) + (f(1, h[0]) - f(-1, h[0])) * 8.0) * (1.0 / (12.0 * h[0]));
    let d2 = ((f(1, h[1]) + f(-1, h[1])) * 16.0 - f(2, h[1]) - f(-2, h[1]) - f(0, h[1]) * 30.0)
        * (1.0 / (12.0 * h[1] * h[1]));
    let d3 = (f(2, h[2]) - f(-2, h[2]) - (f(1, h[2]) - f(-1, h[2])) * 2.0) * (1.0 / (2.0 * h[2].powi(3)));
    let d4 = (f(2, h[3]) + f(-2, h[3]) - (f(1, h[3]) + f(-1, h[3])) * 4.0 + f(0, h[3]) * 6.0) * (1.0 / h[3].powi(4));
    [d1, d2, d3, d4]
}

fn spacelike_norm(v: &FourVector) -> f64 {
    v.norm_sqr().max(0.0).sqrt()
}

fn curvatures_at_scale(path: &dyn Fn(f64) -> FourVector, ctau: f64, scale: f64) -> Result<(f64, f64, f64, f64)> {
    let [d1, d2, d3, d4] = derivatives(path, ctau, scale);
    let speed2 = -d1.norm_sqr();
    if !(d1[0] > 0.0 && speed2 > 0.0) {
        return Err(Error::NotFutureDirected { ctau });
    }
    let e0 = d1 * (1.0 / speed2.sqrt());
    // Minkowski projection orthogonal to the unit timelike e0
    let perp0 = |v: FourVector| v + e0 * v.dot(&e0);
    let a = perp0(d2);
    let kappa1 = spacelike_norm(&a) / speed2;
    if kappa1 < CURVATURE_FLOOR {
        return Err(Error::UndefinedTorsion { ctau });
    }
    let e1 = a * (1.0 / spacelike_norm(&a));
    let b = perp0(d3);
    let kappa1_p = b.dot(&e1);
    let b = b - e1 * kappa1_p;
    let bn = spacelike_norm(&b);
    let kappa2 = bn / kappa1;
    if kappa2 < CURVATURE_FLOOR {
        return Ok((kappa1, kappa1_p, 0.0, 0.0));
    }
    let e2 = b * (1.0 / bn);
    let c = perp0(d4);
    let c = c - e1 * c.dot(&e1) - e2 * c.dot(&e2);
    let kappa3 = spacelike_norm(&c) / (kappa1 * kappa2);
    Ok((kappa1, kappa1_p, kappa2, kappa3))
}

/// Curvature `κ1(cτ)` alone; zero for a straight worldline.
pub fn curvature_from_worldline(path: impl Fn(f64) -> FourVector, ctau: f64) -> Result<f64> {
    match fs_curvatures_from_worldline(&path, ctau) {
        Ok(est) => Ok(est.kappa1),
        Err(Error::UndefinedTorsion { .. }) => {
            let [d1, d2, ..] = derivatives(&path, ctau, 1.0);
            let speed2 = -d1.norm_sqr();
            let e0 = d1 * (1.0 / speed2.sqrt());
            Ok(spacelike_norm(&(d2 + e0 * d2.dot(&e0))) / speed2)
        }
        Err(e) => Err(e),
    }
}

/// Gram-Schmidt of the first four `cτ`-derivatives of `path`. Planar paths
/// report `κ2 = κ3 = 0`; a vanishing curvature leaves the torsion undefined.
pub fn fs_curvatures_from_worldline(path: impl Fn(f64) -> FourVector, ctau: f64) -> Result<CurvatureEstimate> {
    let (k1, k1p, k2, k3) = curvatures_at_scale(&path, ctau, 1.0)?;
    let (c1, _, c2, c3) = curvatures_at_scale(&path, ctau, 2.0)?;
    Ok(CurvatureEstimate {
        kappa1: k1,
        kappa1_p: k1p,
        kappa2: k2,
        kappa3: k3,
        error_bound: [(k1 - c1).abs(), (k2 - c2).abs(), (k3 - c3).abs()],
    })
}
