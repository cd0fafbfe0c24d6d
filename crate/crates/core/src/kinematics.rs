//! Receivers with constant proper jolt (and the constant proper acceleration
//! special case) moving in the `x^0`-`x^1` plane.
//!
//! All quantities are geometric: `cτ` in metres, `a0` in 1/m, `j0` in 1/m².
//! The rapidity grows as `ω(cτ) = a0 cτ + j0 (cτ)² / 2` on top of the initial
//! rapidity `atanh β`.

use crate::error::{Error, Result};
use crate::minkowski::{doppler_factor, FourVector, Tetrad};
use crate::quad;

/// Default transport step in `cτ` units.
pub const DEFAULT_TRANSPORT_STEP: f64 = 1e-3;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct JoltParams {
    /// Initial speed ratio `v0 / c`.
    pub beta: f64,
    /// Proper acceleration magnitude at `cτ = 0`, 1/m.
    pub a0: f64,
    /// Proper jolt magnitude `|σ|`, 1/m².
    pub j0: f64,
    /// Initial spatial offset `z^1(0)`, m.
    pub x1_0: f64,
}

impl JoltParams {
    pub fn new(beta: f64, a0: f64, j0: f64) -> Result<Self> {
        Self::with_offset(beta, a0, j0, 0.0)
    }

    pub fn with_offset(beta: f64, a0: f64, j0: f64, x1_0: f64) -> Result<Self> {
        if !(beta.is_finite() && a0.is_finite() && j0.is_finite() && x1_0.is_finite()) {
            return Err(Error::NonFinite("worldline parameters"));
        }
        doppler_factor(beta)?;
        if a0 < 0.0 || j0 < 0.0 {
            return Err(Error::Domain(format!(
                "a0 and j0 are magnitudes and must be non-negative (a0 = {a0}, j0 = {j0})"
            )));
        }
        Ok(JoltParams { beta, a0, j0, x1_0 })
    }

    pub fn inertial(beta: f64) -> Result<Self> {
        Self::new(beta, 0.0, 0.0)
    }

    pub fn gamma(&self) -> f64 {
        1.0 / (1.0 - self.beta * self.beta).sqrt()
    }

    pub fn doppler(&self) -> f64 {
        ((1.0 - self.beta) / (1.0 + self.beta)).sqrt()
    }

    pub fn omega(&self, ctau: f64) -> f64 {
        omega(self, ctau)
    }

    /// `dω/dcτ = a0 + j0 cτ`, the signed proper-acceleration magnitude.
    pub fn omega_rate(&self, ctau: f64) -> f64 {
        self.a0 + self.j0 * ctau
    }

    pub fn rapidity(&self, ctau: f64) -> f64 {
        self.beta.atanh() + self.omega(ctau)
    }

    pub fn position(&self, ctau: f64) -> Result<FourVector> {
        worldline_position(self, ctau)
    }

    pub fn state(&self, ctau: f64) -> KinematicState {
        kinematic_state(self, ctau)
    }
}

/// `ω(cτ) = a0 cτ + j0 (cτ)² / 2`.
pub fn omega(p: &JoltParams, ctau: f64) -> f64 {
    p.a0 * ctau + 0.5 * p.j0 * ctau * ctau
}

fn tolerance_for(ctau: f64) -> f64 {
    1e-12 * ctau.abs().max(1.0)
}

/// Event `z(cτ)` on the worldline.
pub fn worldline_position(p: &JoltParams, ctau: f64) -> Result<FourVector> {
    if !ctau.is_finite() {
        return Err(Error::NonFinite("ctau"));
    }
    let g = p.gamma();
    let (t, x) = if p.j0 == 0.0 {
        if p.a0 == 0.0 {
            (g * ctau, g * p.beta * ctau)
        } else {
            let w = p.a0 * ctau;
            let s = w.sinh();
            let cm1 = 2.0 * (0.5 * w).sinh().powi(2);
            (g * (s + p.beta * cm1) / p.a0, g * (cm1 + p.beta * s) / p.a0)
        }
    } else {
        let tol = tolerance_for(ctau);
        let t = quad::integrate(|s| time_rate(p, s), 0.0, ctau, tol, 1e-15)?;
        let x = quad::integrate(|s| space_rate(p, s), 0.0, ctau, tol, 1e-15)?;
        (t, x)
    };
    Ok(FourVector::new(t, x + p.x1_0, 0.0, 0.0))
}

fn time_rate(p: &JoltParams, s: f64) -> f64 {
    let w = p.omega(s);
    p.gamma() * (w.cosh() + p.beta * w.sinh())
}

fn space_rate(p: &JoltParams, s: f64) -> f64 {
    let w = p.omega(s);
    p.gamma() * (w.sinh() + p.beta * w.cosh())
}

/// Positions along an ascending `cτ` grid; the `j0 > 0` quadrature is
/// accumulated segment by segment instead of restarting from `cτ = 0`.
pub fn worldline_positions(p: &JoltParams, grid: &[f64]) -> Result<Vec<FourVector>> {
    if p.j0 == 0.0 {
        return grid.iter().map(|&s| worldline_position(p, s)).collect();
    }
    let span = grid.iter().fold(1.0f64, |m, s| m.max(s.abs()));
    let tol = 1e-12 * span / grid.len().max(1) as f64;
    let t = quad::cumulative(|s| time_rate(p, s), 0.0, grid, tol, 1e-15)?;
    let x = quad::cumulative(|s| space_rate(p, s), 0.0, grid, tol, 1e-15)?;
    Ok(t.into_iter()
        .zip(x)
        .map(|(t, x)| FourVector::new(t, x + p.x1_0, 0.0, 0.0))
        .collect())
}

/// Kinematic 4-vectors at one proper time.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct KinematicState {
    pub ctau: f64,
    pub z: FourVector,
    /// 4-velocity `dz/dcτ`.
    pub u: FourVector,
    /// 4-acceleration `du/dcτ`.
    pub a: FourVector,
    /// `da/dcτ`.
    pub j: FourVector,
    /// Proper jolt `j - (a·a) u`.
    pub sigma: FourVector,
}

/// Closed-form `u`, `a`, `j`, `σ`; the position `z` is left at zero when its
/// quadrature is not wanted (see [`kinematic_state_with_position`]).
pub fn kinematic_state(p: &JoltParams, ctau: f64) -> KinematicState {
    let g = p.gamma();
    let w = p.omega(ctau);
    let (c, s) = (w.cosh(), w.sinh());
    let rate = p.omega_rate(ctau);
    let u = FourVector::new(g * (c + p.beta * s), g * (s + p.beta * c), 0.0, 0.0);
    let n = FourVector::new(g * (s + p.beta * c), g * (c + p.beta * s), 0.0, 0.0);
    let a = n * rate;
    let j = n * p.j0 + u * (rate * rate);
    let sigma = j - u * a.dot(&a);
    KinematicState {
        ctau,
        z: FourVector::ZERO,
        u,
        a,
        j,
        sigma,
    }
}

pub fn kinematic_state_with_position(p: &JoltParams, ctau: f64) -> Result<KinematicState> {
    let mut st = kinematic_state(p, ctau);
    st.z = worldline_position(p, ctau)?;
    Ok(st)
}

/// Orthonormal frame comoving with the receiver: `e0 = u`, `e1` along the
/// acceleration, `e2`, `e3` the transverse axes. This is the Fermi-Walker
/// transported frame for collinear motion.
pub fn comoving_tetrad(p: &JoltParams, ctau: f64) -> Tetrad {
    let th = p.rapidity(ctau);
    let (c, s) = (th.cosh(), th.sinh());
    Tetrad::new(
        FourVector::new(c, s, 0.0, 0.0),
        FourVector::new(s, c, 0.0, 0.0),
        FourVector::basis(2),
        FourVector::basis(3),
    )
}

/// Classical RK4 for a tetrad-valued ODE on `[start, end]`. The step is
/// shrunk so that an integer number of steps covers the span exactly.
pub(crate) fn integrate_frame<F>(
    initial: &Tetrad,
    start: f64,
    end: f64,
    step: f64,
    rhs: F,
) -> Result<Vec<(f64, Tetrad)>>
where
    F: Fn(f64, &Tetrad) -> Tetrad,
{
    if !(step > 0.0 && step.is_finite()) {
        return Err(Error::Precondition(format!("step must be positive, got {step}")));
    }
    if !(start.is_finite() && end.is_finite()) {
        return Err(Error::NonFinite("integration span"));
    }
    let len = end - start;
    let n = ((len.abs() / step).ceil() as usize).max(1);
    let h = len / n as f64;
    let mut out = Vec::with_capacity(n + 1);
    let mut y = *initial;
    out.push((start, y));
    for i in 0..n {
        let t = start + h * i as f64;
        let k1 = rhs(t, &y);
        let k2 = rhs(t + 0.5 * h, &y.axpy(0.5 * h, &k1));
        let k3 = rhs(t + 0.5 * h, &y.axpy(0.5 * h, &k2));
        let k4 = rhs(t + h, &y.axpy(h, &k3));
        y = Tetrad {
            e: std::array::from_fn(|m| y.e[m] + (k1.e[m] + k2.e[m] * 2.0 + k3.e[m] * 2.0 + k4.e[m]) * (h / 6.0)),
        };
        out.push((start + h * (i + 1) as f64, y));
    }
    Ok(out)
}

/// Transports `initial` along the worldline with
/// `de^μ/dcτ = (u^μ a^ν - u^ν a^μ) e_ν`.
pub fn fermi_walker_transport(
    p: &JoltParams,
    initial: &Tetrad,
    start: f64,
    end: f64,
    step: f64,
) -> Result<Vec<(f64, Tetrad)>> {
    initial.check_orthonormal(Tetrad::GRAM_TOLERANCE)?;
    let u0 = kinematic_state(p, start).u;
    let mismatch = (0..4).map(|i| (initial.e[0][i] - u0[i]).abs()).fold(0.0, f64::max);
    if mismatch > Tetrad::GRAM_TOLERANCE {
        return Err(Error::Precondition(format!(
            "e0 must equal the 4-velocity at the start of the span (mismatch {mismatch:e})"
        )));
    }
    integrate_frame(initial, start, end, step, |ctau, frame| {
        let st = kinematic_state(p, ctau);
        frame.map(|e| st.u * st.a.dot(e) - st.a * st.u.dot(e))
    })
}

/// `Λ^ν_{μ'}` with the frame vectors as columns.
pub fn frame_to_lorentz_matrix(frame: &Tetrad) -> [[f64; 4]; 4] {
    std::array::from_fn(|nu| std::array::from_fn(|mu| frame.e[mu][nu]))
}

/// Largest entry of `|Λᵀ η Λ - η|`.
pub fn lorentz_deviation(m: &[[f64; 4]; 4]) -> f64 {
    let eta = crate::minkowski::METRIC;
    let mut worst: f64 = 0.0;
    for i in 0..4 {
        for j in 0..4 {
            let v: f64 = (0..4).map(|k| m[k][i] * eta[k] * m[k][j]).sum();
            let target = if i == j { eta[i] } else { 0.0 };
            worst = worst.max((v - target).abs());
        }
    }
    worst
}
