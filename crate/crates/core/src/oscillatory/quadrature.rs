//! Reference spectrum by direct summation over an oversampled composite
//! Gauss-Legendre grid. The phase is evaluated once per node and each `k`
//! reuses it; node counts follow from the largest local frequency
//! `max |K(x) - k|` so the rule resolves every oscillation.

use num_complex::Complex64;
use rayon::prelude::*;

use super::{Method, SpectrumSample};
use crate::error::{Error, Result};
use crate::oscillatory::spa::CubicPhase;
use crate::quad::{composite_gauss_legendre, PANEL_ORDER};
use crate::received_signal::{ReceivedSignal, NYQUIST_LIMIT};

pub const DEFAULT_OVERSAMPLE: f64 = 8.0;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadratureOptions {
    /// Nodes per Nyquist-limited sample, `≥ 1`.
    pub oversample: f64,
    /// Explicit panel count; must still satisfy the Nyquist guard.
    pub panels: Option<usize>,
}

impl Default for QuadratureOptions {
    fn default() -> Self {
        QuadratureOptions {
            oversample: DEFAULT_OVERSAMPLE,
            panels: None,
        }
    }
}

impl QuadratureOptions {
    pub fn with_oversample(oversample: f64) -> Self {
        QuadratureOptions {
            oversample,
            panels: None,
        }
    }
}

/// `max |K(x) - k|` over the window and the queried wavenumbers.
fn peak_rate<S: ReceivedSignal + ?Sized>(signal: &S, ks: &[f64]) -> f64 {
    let (kmin, kmax) = signal.wavenumber_extrema();
    ks.iter()
        .map(|&k| (kmax - k).abs().max((kmin - k).abs()))
        .fold(0.0, f64::max)
}

/// Panel count for the given options, or the Nyquist refusal.
pub fn panel_count<S: ReceivedSignal + ?Sized>(signal: &S, ks: &[f64], opts: &QuadratureOptions) -> Result<usize> {
    if !(opts.oversample >= 1.0 && opts.oversample.is_finite()) {
        return Err(Error::Precondition(format!(
            "oversample factor must be finite and at least 1, got {}",
            opts.oversample
        )));
    }
    let length = signal.window().length();
    let rate = peak_rate(signal, ks);
    let nyquist_nodes = rate * length / NYQUIST_LIMIT;
    match opts.panels {
        Some(p) => {
            let nodes = (p * PANEL_ORDER) as f64;
            if p == 0 || nodes < nyquist_nodes {
                return Err(Error::NyquistViolation {
                    required_factor: nyquist_nodes / nodes.max(1.0),
                });
            }
            Ok(p)
        }
        None => {
            let nodes = (opts.oversample * nyquist_nodes).ceil();
            Ok((nodes / PANEL_ORDER as f64).ceil() as usize + 1)
        }
    }
}

/// `S(k) = ∫_window A(x) exp(i(Φ(x) - k x)) dx` for every `k`.
pub fn quadrature_spectrum<S: ReceivedSignal + ?Sized>(
    signal: &S,
    ks: &[f64],
    opts: &QuadratureOptions,
) -> Result<Vec<SpectrumSample>> {
    if ks.is_empty() {
        return Ok(Vec::new());
    }
    let panels = panel_count(signal, ks, opts)?;
    let window = signal.window();
    let (nodes, weights) = composite_gauss_legendre(window.start, window.end, panels);
    let phases = signal.phases(&nodes)?;
    let weighted: Vec<f64> = nodes
        .par_iter()
        .zip(&weights)
        .map(|(&x, &w)| w * signal.amplitude(x))
        .collect();
    let samples = ks
        .par_iter()
        .map(|&k| {
            let value = sum_terms(&nodes, &weighted, &phases, k);
            SpectrumSample {
                k,
                value,
                method: Method::Quadrature,
            }
        })
        .collect();
    Ok(samples)
}

fn sum_terms(nodes: &[f64], weighted: &[f64], phases: &[f64], k: f64) -> Complex64 {
    // per-panel partial sums limit round-off growth
    let mut total = Complex64::new(0.0, 0.0);
    for ((x, w), p) in nodes
        .chunks(PANEL_ORDER)
        .zip(weighted.chunks(PANEL_ORDER))
        .zip(phases.chunks(PANEL_ORDER))
    {
        let mut panel = Complex64::new(0.0, 0.0);
        for i in 0..x.len() {
            let (s, c) = (p[i] - k * x[i]).sin_cos();
            panel += Complex64::new(w[i] * c, w[i] * s);
        }
        total += panel;
    }
    total
}

/// `∫_{T1}^{T2} exp(iλh(t)) dt` for a cubic phase.
pub fn quadrature_cubic(p: &CubicPhase, opts: &QuadratureOptions) -> Result<Complex64> {
    Ok(quadrature_spectrum(p, &[0.0], opts)?[0].value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kinematics::JoltParams;
    use crate::minkowski::PlaneWave;
    use crate::received_signal::{Conjugated, SignalModel, Window};

    fn inertial(beta: f64) -> SignalModel {
        SignalModel::inertial(beta, PlaneWave::along_x(1e9).unwrap(), Window::new(0.0, 2.0).unwrap()).unwrap()
    }

    #[test]
    fn inertial_spectrum_is_window_transform() {
        let m = inertial(0.6);
        let k0 = m.k0();
        let ks: Vec<f64> = (0..41).map(|i| 0.5 * k0 + 0.25 * (i as f64 - 20.0)).collect();
        let s = quadrature_spectrum(&m, &ks, &QuadratureOptions::default()).unwrap();
        for sample in &s {
            let q = (0.5 * k0 - sample.k) * 1.0;
            let sinc = if q == 0.0 { 1.0 } else { q.sin() / q };
            let expected = 0.5 * 2.0 * sinc.abs();
            assert!((sample.magnitude() - expected).abs() < 1e-10, "k = {}", sample.k);
        }
    }

    #[test]
    fn refinement_changes_little() {
        let m = SignalModel::jolt(
            JoltParams::new(0.1, 0.05, 0.02).unwrap(),
            PlaneWave::along_x(1e10).unwrap(),
            Window::new(0.0, 1.0).unwrap(),
        )
        .unwrap();
        let (lo, hi) = m.edge_wavenumbers();
        let ks = crate::oscillatory::linear_grid(hi, lo, 17);
        let a = quadrature_spectrum(&m, &ks, &QuadratureOptions::with_oversample(8.0)).unwrap();
        let b = quadrature_spectrum(&m, &ks, &QuadratureOptions::with_oversample(16.0)).unwrap();
        for (x, y) in a.iter().zip(&b) {
            assert!((x.magnitude() - y.magnitude()).abs() <= 1e-6 * y.magnitude());
        }
    }

    #[test]
    fn nyquist_violation_is_reported() {
        let m = inertial(0.0);
        let opts = QuadratureOptions {
            oversample: 8.0,
            panels: Some(1),
        };
        let err = quadrature_spectrum(&m, &[0.0], &opts).unwrap_err();
        let Error::NyquistViolation { required_factor } = err else {
            panic!("{err:?}")
        };
        assert!(required_factor > 1.0);
        assert!(quadrature_spectrum(&m, &[0.0], &QuadratureOptions::with_oversample(0.5)).is_err());
    }

    #[test]
    fn conjugate_signal_reflects_spectrum() {
        let m = SignalModel::jolt(
            JoltParams::new(0.1, 0.05, 0.02).unwrap(),
            PlaneWave::along_x(1e9).unwrap(),
            Window::new(0.0, 1.0).unwrap(),
        )
        .unwrap();
        let ks = [18.0, 19.0, 20.5];
        let neg: Vec<f64> = ks.iter().map(|k| -k).collect();
        let s = quadrature_spectrum(&m, &ks, &QuadratureOptions::default()).unwrap();
        let c = quadrature_spectrum(&Conjugated(&m), &neg, &QuadratureOptions::default()).unwrap();
        for (a, b) in s.iter().zip(&c) {
            assert!((a.value - b.value.conj()).norm() < 1e-12 * a.magnitude().max(1e-3));
        }
    }

    #[test]
    fn deterministic_across_runs() {
        let m = inertial(0.2);
        let ks = [10.0, 15.0, 17.0];
        let a = quadrature_spectrum(&m, &ks, &QuadratureOptions::default()).unwrap();
        let b = quadrature_spectrum(&m, &ks, &QuadratureOptions::default()).unwrap();
        assert_eq!(a, b);
    }
}
