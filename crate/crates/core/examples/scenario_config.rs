//! A JSON scenario through the same path as `doppler spectrum`.

use doppler_core::cli::config::ScenarioConfig;
use doppler_core::cli::table::cmd_spectrum;

const SCENARIO: &str = r#"{
    "model": "jolt",
    "beta": 0.1,
    "a0_si": 4.49e15,
    "j0_geom": 0.02,
    "wave": {"f0_hz": 1e14},
    "window": {"ctau_i": 0.0, "ctau_f": 1.0},
    "spectrum": {"n_k": 6, "methods": ["quadrature", "spa"]}
}"#;

fn main() -> doppler_core::Result<()> {
    let scenario = ScenarioConfig::from_json(SCENARIO)?.resolve()?;
    println!("a0 = {:?} 1/m", scenario.config.a0()?);
    print!("{}", cmd_spectrum(&scenario, None, 8.0)?.to_csv()?);
    Ok(())
}
