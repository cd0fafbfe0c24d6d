//! Inertial receiver: the spectrum is a sinc centred on the Doppler-shifted
//! wavenumber `D k0`.

use doppler_core::minkowski::{doppler_factor, PlaneWave};
use doppler_core::oscillatory::{linear_grid, model_spectrum, Method, QuadratureOptions};
use doppler_core::received_signal::{SignalModel, Window};

fn main() -> doppler_core::Result<()> {
    let beta = 0.6;
    let wave = PlaneWave::along_x(1e9)?;
    let model = SignalModel::inertial(beta, wave, Window::new(0.0, 1.0)?)?;
    let k0 = wave.k0();
    let ks = linear_grid(0.4 * k0, 0.6 * k0, 4096);
    let spectrum = model_spectrum(&model, Method::Quadrature, &ks, &QuadratureOptions::default())?;
    let peak = spectrum
        .iter()
        .max_by(|a, b| a.magnitude().total_cmp(&b.magnitude()))
        .unwrap();
    println!("beta = {beta}, D = {}", doppler_factor(beta)?);
    println!("peak at k/k0 = {:.6}, |S| = {:.6}", peak.k / k0, peak.magnitude());
    Ok(())
}
