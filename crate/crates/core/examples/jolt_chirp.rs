//! Constant proper jolt: stationary points of the received phase, the
//! stationary-phase spectrum and the closed-form ratios.

use doppler_core::kinematics::JoltParams;
use doppler_core::minkowski::PlaneWave;
use doppler_core::oscillatory::spa::{jolt_cutoff, jolt_stationary_points};
use doppler_core::oscillatory::{linear_grid, model_spectrum, Method, QuadratureOptions};
use doppler_core::received_signal::{jolt_factors, ReceivedSignal, SignalModel, Window};

fn main() -> doppler_core::Result<()> {
    let p = JoltParams::new(0.1, 0.05, 0.02)?;
    let wave = PlaneWave::along_x(1e14)?;
    let model = SignalModel::jolt(p, wave, Window::new(0.0, 1.0)?)?;
    let f = jolt_factors(&p, 1.0)?;
    println!("eta = {:.6}, D_j = {:.12}, A_j = {:.12}", f.eta, f.d_j, f.a_j);
    println!("cutoff wavenumber = {:.6}", jolt_cutoff(&p, &wave));

    let (lo, hi) = model.wavenumber_extrema();
    let ks = linear_grid(lo + 0.1 * (hi - lo), hi - 0.1 * (hi - lo), 5);
    let opts = QuadratureOptions::default();
    let quad = model_spectrum(&model, Method::Quadrature, &ks, &opts)?;
    let spa = model_spectrum(&model, Method::Spa, &ks, &opts)?;
    for (q, s) in quad.iter().zip(&spa) {
        let pts = jolt_stationary_points(&p, &wave, q.k)?;
        println!(
            "k = {:.4}  x+ = {:.6}  x- = {:.4}  |S| quad = {:.6e}  spa = {:.6e}",
            q.k,
            pts.x_plus.unwrap_or(f64::NAN),
            pts.x_minus.unwrap_or(f64::NAN),
            q.magnitude(),
            s.magnitude()
        );
    }
    Ok(())
}
