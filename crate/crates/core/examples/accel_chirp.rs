//! Constant proper acceleration: an exponential chirp. Stationary phase
//! against quadrature across the band, and the closed-form ratios.

use doppler_core::kinematics::JoltParams;
use doppler_core::minkowski::PlaneWave;
use doppler_core::oscillatory::spa::accel_spa_unit_magnitude;
use doppler_core::oscillatory::{linear_grid, model_spectrum, Method, QuadratureOptions};
use doppler_core::received_signal::{accel_factors, ReceivedSignal, SignalModel, Window};

fn main() -> doppler_core::Result<()> {
    let p = JoltParams::new(0.1, 0.05, 0.0)?;
    let model = SignalModel::accel(p, PlaneWave::along_x(1e14)?, Window::new(0.0, 1.0)?)?;
    let f = accel_factors(&p, 1.0);
    println!(
        "D_a = {:.12}, A_a = {:.12}, sqrt(D_a) = {:.12}",
        f.d_a,
        f.a_a,
        f.d_a.sqrt()
    );

    let (lo, hi) = model.wavenumber_extrema();
    let ks = linear_grid(lo + 0.1 * (hi - lo), hi - 0.1 * (hi - lo), 5);
    let opts = QuadratureOptions::default();
    let quad = model_spectrum(&model, Method::Quadrature, &ks, &opts)?;
    let spa = model_spectrum(&model, Method::Spa, &ks, &opts)?;
    println!(
        "{:>16} {:>14} {:>14} {:>18}",
        "k", "|S| quad", "|S| spa", "unit |S| sqrt(k)"
    );
    for (q, s) in quad.iter().zip(&spa) {
        let unit = accel_spa_unit_magnitude(p.a0, q.k) * q.k.sqrt();
        println!(
            "{:16.6} {:14.6e} {:14.6e} {:18.12}",
            q.k,
            q.magnitude(),
            s.magnitude(),
            unit
        );
    }
    Ok(())
}
