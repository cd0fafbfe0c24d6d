//! Fermi-Walker transport of the comoving tetrad along the jolt worldline,
//! compared with the closed-form boosted frame.

use doppler_core::kinematics::{comoving_tetrad, fermi_walker_transport, kinematic_state, JoltParams};

fn main() -> doppler_core::Result<()> {
    let p = JoltParams::new(0.1, 0.05, 0.02)?;
    let frames = fermi_walker_transport(&p, &comoving_tetrad(&p, 0.0), 0.0, 1.0, 1e-3)?;
    for (ctau, frame) in frames.iter().step_by(250) {
        let exact = comoving_tetrad(&p, *ctau);
        let dev = (0..4)
            .flat_map(|m| (0..4).map(move |i| (m, i)))
            .map(|(m, i)| (frame.e[m][i] - exact.e[m][i]).abs())
            .fold(0.0, f64::max);
        let st = kinematic_state(&p, *ctau);
        println!(
            "ctau = {ctau:.3}  gram drift = {:.2e}  vs closed form = {dev:.2e}  |a| = {:.6}  |sigma| = {:.6}",
            frame.gram_deviation(),
            st.a.magnitude(),
            st.sigma.magnitude()
        );
    }
    Ok(())
}
