//! Randomized cross-module invariants.

use doppler_core::cli::config::ScenarioConfig;
use doppler_core::frenet_serret::{AlphaW, ExpansionOrder, FsParams, FsPath};
use doppler_core::kinematics::{comoving_tetrad, fermi_walker_transport, JoltParams};
use doppler_core::minkowski::{PlaneWave, Tetrad, SPEED_OF_LIGHT};
use doppler_core::received_signal::{
    accel_factors, fs_wavenumber_coefficients, jolt_factors, ReceivedSignal, SignalModel, Window,
};
use proptest::prelude::*;

fn models(beta: f64, a0: f64, j0: f64, k1: f64, k1p: f64) -> Vec<SignalModel> {
    let wave = PlaneWave::along_x(1e9).unwrap();
    let win = Window::new(0.0, 1.0).unwrap();
    let fs = FsParams {
        kappa1: k1,
        kappa1_p: k1p,
        ..Default::default()
    };
    vec![
        SignalModel::jolt(JoltParams::new(beta, a0, j0).unwrap(), wave, win).unwrap(),
        SignalModel::accel(JoltParams::new(beta, a0, 0.0).unwrap(), wave, win).unwrap(),
        SignalModel::fs(fs, Tetrad::boost_x(beta).unwrap(), wave, win).unwrap(),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn wavenumber_is_phase_rate(
        beta in -0.5..0.5f64, a0 in 0.01..0.2f64, j0 in 0.0..0.1f64,
        k1 in 0.0..0.2f64, k1p in -0.1..0.1f64, s in 0.1..0.9f64,
    ) {
        let h = 1e-4;
        for m in models(beta, a0, j0, k1, k1p) {
            let phi = m.phases(&[s - h, s + h]).unwrap();
            let fd = (phi[1] - phi[0]) / (2.0 * h);
            let k = m.wavenumber(s);
            prop_assert!((fd / k - 1.0).abs() <= 1e-6, "{:?}: {} vs {}", m.motion, fd, k);
        }
    }

    #[test]
    fn jolt_factors_approach_acceleration(a0 in 0.01..0.5f64, eps in 1e-9..1e-4f64, tf in 0.1..2.0f64) {
        let j = jolt_factors(&JoltParams::new(0.0, a0, eps * a0 * a0).unwrap(), tf).unwrap();
        let a = accel_factors(&JoltParams::new(0.0, a0, 0.0).unwrap(), tf);
        prop_assert!((j.d_j / a.d_a - 1.0).abs() <= 10.0 * eps * tf * tf * a0 * a0);
    }

    #[test]
    fn fs_reduces_to_accelerated_taylor_polynomial(a0 in 1e-3..1.0f64, f0 in 1e6..1e15f64) {
        let wave = PlaneWave::along_x(f0).unwrap();
        let p = FsParams { kappa1: a0, ..Default::default() };
        let aw = AlphaW::new(&wave, &Tetrad::identity(), &p).unwrap();
        let k0 = wave.k0();
        let c = fs_wavenumber_coefficients(&aw, &p, k0);
        let want = [k0, -k0 * a0, k0 * a0 * a0 / 2.0];
        for (g, w) in c.iter().zip(want) {
            prop_assert!(((g - w) / w).abs() <= 1e-12);
        }
    }

    #[test]
    fn planar_paths_stay_planar(k1 in 0.0..1.0f64, k1p in -1.0..1.0f64, s in -2.0..2.0f64) {
        let p = FsParams { kappa1: k1, kappa1_p: k1p, ..Default::default() };
        let z = FsPath::new(p, Tetrad::identity(), ExpansionOrder::Fourth).unwrap().position(s);
        prop_assert_eq!(z[2], 0.0);
        prop_assert_eq!(z[3], 0.0);
    }

    #[test]
    fn transported_frames_stay_orthonormal(beta in -0.8..0.8f64, a0 in 0.0..0.3f64, j0 in 0.0..0.2f64) {
        let p = JoltParams::new(beta, a0, j0).unwrap();
        let frames = fermi_walker_transport(&p, &comoving_tetrad(&p, 0.0), 0.0, 1.0, 1e-3).unwrap();
        prop_assert!(frames.iter().all(|(_, f)| f.gram_deviation() <= 1e-9));
    }

    #[test]
    fn config_round_trip_and_unit_safety(beta in -0.9..0.9f64, a0 in 1e-4..1.0f64, j0 in 1e-4..1.0f64) {
        let geom = format!(r#"{{"model": "jolt", "beta": {beta:?}, "a0_geom": {a0:?}, "j0_geom": {j0:?}}}"#);
        let cfg = ScenarioConfig::from_json(&geom).unwrap();
        prop_assert_eq!(&ScenarioConfig::from_json(&cfg.to_json()).unwrap(), &cfg);
        let c = SPEED_OF_LIGHT;
        let si = format!(
            r#"{{"model": "jolt", "beta": {beta:?}, "a0_si": {:?}, "j0_si": {:?}}}"#,
            a0 * c * c,
            j0 * c * c * c
        );
        let si = ScenarioConfig::from_json(&si).unwrap();
        prop_assert!((si.a0().unwrap().unwrap() / a0 - 1.0).abs() <= 1e-12);
        prop_assert!((si.j0().unwrap().unwrap() / j0 - 1.0).abs() <= 1e-12);
    }
}
