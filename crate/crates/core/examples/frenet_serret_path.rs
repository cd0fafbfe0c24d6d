//! Third-order Frenet-Serret worldline: the curvatures are read back from
//! the path and the received wavenumber is quadratic in proper time.

use doppler_core::frenet_serret::{fs_curvatures_from_worldline, AlphaW, ExpansionOrder, FsParams, FsPath};
use doppler_core::minkowski::{PlaneWave, Tetrad};
use doppler_core::received_signal::{fs_wavenumber_coefficients, monotonicity, ReceivedSignal, SignalModel, Window};

fn main() -> doppler_core::Result<()> {
    let params = FsParams {
        kappa1: 0.05,
        kappa1_p: 0.01,
        kappa2: 0.02,
        ..Default::default()
    };
    let path = FsPath::new(params, Tetrad::identity(), ExpansionOrder::Fourth)?;
    let est = fs_curvatures_from_worldline(|s| path.position(s), 0.0)?;
    println!(
        "recovered kappa1 = {:.8}, kappa1' = {:.8}, kappa2 = {:.8}",
        est.kappa1, est.kappa1_p, est.kappa2
    );

    let wave = PlaneWave::along_x(1e9)?;
    let aw = AlphaW::new(&wave, &Tetrad::identity(), &params)?;
    let [c0, c1, c2] = fs_wavenumber_coefficients(&aw, &params, wave.k0());
    println!("alpha = {:?}, alpha.w = {}", aw.alpha, aw.alpha_dot_w);
    println!("K_s = {c0:.6} + {c1:.6} ctau + {c2:.6} ctau^2");

    let model = SignalModel::fs(params, Tetrad::identity(), wave, Window::new(0.0, 1.0)?)?;
    println!("band = {:?}, {:?}", model.wavenumber_extrema(), monotonicity(&model));
    Ok(())
}
