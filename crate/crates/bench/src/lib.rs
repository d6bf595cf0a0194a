//! Shared fixtures for the criterion benches.

use photon_ledger_core::{
    link::AmplifierSite, AmplifierModel, FileSource, SimulationConfig, UnitKind,
};

/// `spans` equal 80 km spans at 0.2 dB/km over a random file of `bits` bits,
/// every third amplifier slightly irreversible.
pub fn chain_config(spans: usize, bits: usize) -> SimulationConfig {
    let mut cfg = SimulationConfig::uniform_link(
        spans,
        80.0 * spans as f64,
        0.2,
        1e7,
        1e3,
        FileSource::Random {
            length: bits,
            bias: 0.5,
        },
        UnitKind::Si,
    );
    for (i, site) in cfg.amplifiers.iter_mut().enumerate() {
        if i % 3 == 2 {
            *site = AmplifierSite {
                model: AmplifierModel::Irreversible { excess: 0.05 },
                ..*site
            };
        }
    }
    cfg
}
