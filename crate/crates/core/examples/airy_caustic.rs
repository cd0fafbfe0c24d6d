//! Non-monotone Frenet-Serret receiver: the two stationary points merge at
//! `k_c`, where the Airy form stays finite and reproduces the fringes.

use doppler_core::cli::figures::{fig4_params, fig4_scales, fs_model};
use doppler_core::oscillatory::{linear_grid, model_spectrum, Method, QuadratureOptions};

fn main() -> doppler_core::Result<()> {
    let model = fs_model(fig4_params());
    let (kc, s) = fig4_scales(&model);
    println!("k_c = {kc:.3}, fringe scale = {s:.3}");
    let ks = linear_grid(kc - 3.0 * s, kc + 6.0 * s, 19);
    let opts = QuadratureOptions::default();
    let quad = model_spectrum(&model, Method::Quadrature, &ks, &opts)?;
    let airy = model_spectrum(&model, Method::Airy, &ks, &opts)?;
    let spa = model_spectrum(&model, Method::Spa, &ks, &opts)?;
    println!("{:>8} {:>12} {:>12} {:>12}", "(k-kc)/s", "quadrature", "airy", "spa");
    for ((q, a), p) in quad.iter().zip(&airy).zip(&spa) {
        println!(
            "{:8.2} {:12.5e} {:12.5e} {:12.5e}",
            (q.k - kc) / s,
            q.magnitude(),
            a.magnitude(),
            p.magnitude()
        );
    }
    Ok(())
}
