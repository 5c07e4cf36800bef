//! Fixtures shared by the criterion benches in `benches/`.

use airy_tunnel::{OracleSettings, PotentialSpec};

/// `(name, potential, energy)` triples covering thin, thick and asymmetric barriers.
pub fn barriers() -> Vec<(&'static str, PotentialSpec, f64)> {
    vec![
        ("parabolic", PotentialSpec::parabolic(1.0).unwrap(), 0.5),
        ("sech2", PotentialSpec::sech2(1.0, 1.0).unwrap(), 0.5),
        ("sech2_thick", PotentialSpec::sech2(20.0, 4.0).unwrap(), 2.0),
        ("gaussian", PotentialSpec::gaussian(2.0, 1.5).unwrap(), 0.7),
    ]
}

pub fn oracle_settings(slices: usize) -> OracleSettings {
    OracleSettings {
        domain: (-12.0, 12.0),
        slices,
    }
}
