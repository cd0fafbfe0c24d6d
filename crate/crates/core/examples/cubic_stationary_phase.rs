//! Cubic phase `λ(t³/3 - t)` on `[-3, 3]`: the two-point stationary-phase
//! error falls faster than `1/λ`.

use doppler_core::oscillatory::{airy_cubic, quadrature_cubic, spa_cubic, CubicPhase, QuadratureOptions};

fn main() -> doppler_core::Result<()> {
    let opts = QuadratureOptions::default();
    println!(
        "{:>6} {:>14} {:>14} {:>14} {:>12}",
        "lambda", "|oracle|", "spa error", "airy error", "case"
    );
    for lambda in [25.0, 50.0, 100.0, 200.0, 400.0] {
        let p = CubicPhase::new(1.0 / 3.0, 0.0, -1.0, lambda, -3.0, 3.0)?;
        let oracle = quadrature_cubic(&p, &opts)?;
        let spa = spa_cubic(&p, false);
        println!(
            "{lambda:6} {:14.6e} {:14.6e} {:14.6e} {:>12?}",
            oracle.norm(),
            (spa.value - oracle).norm(),
            (airy_cubic(&p) - oracle).norm(),
            spa.case
        );
    }
    Ok(())
}
