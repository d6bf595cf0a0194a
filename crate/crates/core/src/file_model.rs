//! Bit files, their pulse-train realization, and the entropy/information
//! bookkeeping of a whole sequence.
//!
//! All entropies are computed in nats internally; physical entropies carry a
//! factor of `k_B` from the active [`UnitSystem`].

use std::collections::HashMap;
use std::f64::consts::LN_2;

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::thermo::{self, UnitSystem};

/// Name of the generator behind [`BitFile::random`]. Part of the
/// reproducibility contract: a seed only pins file content together with it.
pub const RNG_NAME: &str = "chacha8";

/// A non-empty logical bit sequence.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BitFile {
    bits: Vec<bool>,
}

impl BitFile {
    pub fn new(bits: Vec<bool>) -> Result<Self> {
        if bits.is_empty() {
            return Err(Error::InvalidConfig(
                "bit file must hold at least one bit".into(),
            ));
        }
        Ok(BitFile { bits })
    }

    /// Parses a string of `0`/`1` characters; `_` and whitespace are skipped.
    pub fn parse(text: &str) -> Result<Self> {
        let mut bits = Vec::with_capacity(text.len());
        for (i, c) in text.chars().enumerate() {
            match c {
                '0' => bits.push(false),
                '1' => bits.push(true),
                '_' => {}
                c if c.is_whitespace() => {}
                other => {
                    return Err(Error::InvalidConfig(format!(
                        "bit string has '{other}' at position {i}"
                    )))
                }
            }
        }
        Self::new(bits)
    }

    /// Reads bytes MSB-first.
    pub fn from_bytes(bytes: &[u8]) -> Result<Self> {
        let bits = bytes
            .iter()
            .flat_map(|b| (0..8).rev().map(move |i| (b >> i) & 1 == 1))
            .collect();
        Self::new(bits)
    }

    /// `len` i.i.d. bits, each 1 with probability `bias`, drawn from a
    /// ChaCha8 stream seeded with `seed`.
    pub fn random(len: usize, bias: f64, seed: u64) -> Result<Self> {
        if !(0.0..=1.0).contains(&bias) {
            return Err(domain("bias", bias));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let bits = (0..len).map(|_| unit_f64(&mut rng) < bias).collect();
        Self::new(bits)
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn ones(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }

    pub fn complement(&self) -> BitFile {
        BitFile {
            bits: self.bits.iter().map(|b| !b).collect(),
        }
    }

    pub fn to_bit_string(&self) -> String {
        self.bits
            .iter()
            .map(|&b| if b { '1' } else { '0' })
            .collect()
    }
}

/// Uniform draw from [0, 1) on a 2^-53 grid.
fn unit_f64(rng: &mut ChaCha8Rng) -> f64 {
    (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// Physical realization of a [`BitFile`]: one mode per slot, occupied at a
/// common occupancy for ones and empty for zeros.
#[derive(Debug, Clone, PartialEq)]
pub struct PulseTrain {
    pattern: BitFile,
    frequency: f64,
    one_occupancy: f64,
    occupancy: f64,
}

impl PulseTrain {
    pub fn new(pattern: BitFile, frequency: f64, one_occupancy: f64) -> Result<Self> {
        if !(frequency.is_finite() && frequency > 0.0) {
            return Err(domain("frequency", frequency));
        }
        if !(one_occupancy.is_finite() && one_occupancy > 0.0) {
            return Err(domain("one_occupancy", one_occupancy));
        }
        Ok(PulseTrain {
            pattern,
            frequency,
            one_occupancy,
            occupancy: one_occupancy,
        })
    }

    /// Same pattern and carrier with every occupied slot set to `occupancy`.
    pub(crate) fn with_occupancy(&self, occupancy: f64) -> PulseTrain {
        PulseTrain {
            occupancy,
            ..self.clone()
        }
    }

    pub fn pattern(&self) -> &BitFile {
        &self.pattern
    }

    pub fn len(&self) -> usize {
        self.pattern.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn frequency(&self) -> f64 {
        self.frequency
    }

    /// Occupancy the train was launched with.
    pub fn one_occupancy(&self) -> f64 {
        self.one_occupancy
    }

    /// Current occupancy shared by every occupied slot.
    pub fn occupancy(&self) -> f64 {
        self.occupancy
    }

    pub fn occupied_slots(&self) -> usize {
        self.pattern.ones()
    }

    pub fn slot_occupancies(&self) -> impl Iterator<Item = f64> + '_ {
        self.pattern
            .bits()
            .iter()
            .map(move |&b| if b { self.occupancy } else { 0.0 })
    }

    /// Energy of one occupied slot at the current occupancy.
    pub fn pulse_energy(&self, units: &UnitSystem) -> f64 {
        self.occupancy * units.photon_energy(self.frequency)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EntropyConvention {
    Nats,
    Bits,
}

/// Aggregate energy, entropy and temperature of a pulse train.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FileThermoState {
    pub energy: f64,
    pub entropy: f64,
    pub temperature: Option<f64>,
    pub convention: EntropyConvention,
}

impl FileThermoState {
    pub fn new(energy: f64, entropy: f64, convention: EntropyConvention) -> Self {
        FileThermoState {
            energy,
            entropy,
            temperature: file_temperature(energy, entropy, convention).ok(),
            convention,
        }
    }
}

/// Plug-in Shannon information of a file at a given block order.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct InformationMeasure {
    pub total_nats: f64,
    pub per_symbol_nats: f64,
    pub order: usize,
}

impl InformationMeasure {
    pub fn total_bits(&self) -> f64 {
        self.total_nats / LN_2
    }

    pub fn per_symbol_bits(&self) -> f64 {
        self.per_symbol_nats / LN_2
    }
}

/// Binary mixing entropy `H(p)` in nats, with `0 ln 0 = 0`.
pub fn mixing_entropy_per_slot(p: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&p) {
        return Err(domain("probability", p));
    }
    let term = |x: f64| if x == 0.0 { 0.0 } else { -x * x.ln() };
    let q = 1.0 - p;
    let h = if p < 0.5 {
        term(p) - q * (-p).ln_1p()
    } else {
        term(p) + term(q)
    };
    Ok(h.clamp(0.0, LN_2))
}

/// Mixing entropy `k_B L H(p)` of an `L`-slot train with one-probability `p`.
pub fn file_entropy(len: usize, p: f64, units: &UnitSystem) -> Result<f64> {
    if len == 0 {
        return Err(Error::InsufficientData {
            order: 1,
            length: 0,
        });
    }
    Ok(units.boltzmann * len as f64 * mixing_entropy_per_slot(p)?)
}

/// Capacity entropy `k_B L ln 2`: the mixing entropy of a fair random file.
pub fn capacity_entropy(len: usize, units: &UnitSystem) -> f64 {
    units.boltzmann * (len as f64 * LN_2)
}

/// Plug-in entropy (nats) of the empirical distribution given by `counts`.
///
/// Counts are sorted before summation so the result does not depend on the
/// order they were produced in.
pub fn plugin_entropy(mut counts: Vec<usize>) -> f64 {
    counts.retain(|&c| c > 0);
    counts.sort_unstable();
    let total: usize = counts.iter().sum();
    if total == 0 {
        return 0.0;
    }
    let total = total as f64;
    let h: f64 = counts
        .iter()
        .map(|&c| {
            let p = c as f64 / total;
            -p * p.ln()
        })
        .sum();
    h.max(0.0)
}

/// Order-`k` block entropy estimate over all overlapping `k`-blocks.
///
/// The per-symbol value is `H_k / k`, capped at `ln 2` (the bound for a
/// binary alphabet); the total is `L` times the per-symbol value.
pub fn shannon_information(file: &BitFile, order: usize) -> Result<InformationMeasure> {
    if order == 0 {
        return Err(domain("block order", 0.0));
    }
    let len = file.len();
    if len < order {
        return Err(Error::InsufficientData { order, length: len });
    }
    let h_k = plugin_entropy(block_counts(file.bits(), order));
    let per_symbol_nats = (h_k / order as f64).min(LN_2);
    Ok(InformationMeasure {
        total_nats: len as f64 * per_symbol_nats,
        per_symbol_nats,
        order,
    })
}

fn block_counts(bits: &[bool], order: usize) -> Vec<usize> {
    if order <= 20 {
        let mut dense = vec![0usize; 1 << order];
        for key in packed_blocks(bits, order) {
            dense[key as usize] += 1;
        }
        dense
    } else if order <= 64 {
        let mut map: HashMap<u64, usize> = HashMap::new();
        for key in packed_blocks(bits, order) {
            *map.entry(key).or_default() += 1;
        }
        map.into_values().collect()
    } else {
        let mut map: HashMap<&[bool], usize> = HashMap::new();
        for window in bits.windows(order) {
            *map.entry(window).or_default() += 1;
        }
        map.into_values().collect()
    }
}

/// Rolling MSB-first encoding of every overlapping block, `order <= 64`.
fn packed_blocks(bits: &[bool], order: usize) -> impl Iterator<Item = u64> + '_ {
    let mask = if order == 64 {
        u64::MAX
    } else {
        (1u64 << order) - 1
    };
    let mut key = 0u64;
    bits.iter().enumerate().filter_map(move |(i, &b)| {
        key = ((key << 1) | b as u64) & mask;
        (i + 1 >= order).then_some(key)
    })
}

/// Entropy (nats) of the empirical distribution of whole-file configurations
/// across an ensemble of equal-length files: `-Σ p_j ln p_j` over distinct
/// configurations `j`.
pub fn configuration_entropy(files: &[BitFile]) -> f64 {
    let mut map: HashMap<&[bool], usize> = HashMap::new();
    for f in files {
        *map.entry(f.bits()).or_default() += 1;
    }
    plugin_entropy(map.into_values().collect())
}

/// Total energy of the occupied slots.
pub fn file_energy(train: &PulseTrain, units: &UnitSystem) -> f64 {
    train.occupied_slots() as f64 * train.pulse_energy(units)
}

/// File temperature `Q/S`. With [`EntropyConvention::Bits`] the entropy is
/// first divided by `ln 2`.
pub fn file_temperature(energy: f64, entropy: f64, convention: EntropyConvention) -> Result<f64> {
    if entropy.is_nan() || entropy <= 0.0 {
        return Err(Error::UndefinedTemperature);
    }
    let entropy = match convention {
        EntropyConvention::Nats => entropy,
        EntropyConvention::Bits => entropy / LN_2,
    };
    Ok(energy / entropy)
}

/// `S - k_B I`; non-negative when the physical entropy bounds the information.
pub fn clausius_margin(physical_entropy: f64, info_nats: f64, units: &UnitSystem) -> f64 {
    physical_entropy - units.boltzmann * info_nats
}

/// Logical information not backed by physical entropy at occupancy `n`:
/// `k_B I - I s(n) = I (k_B - s(n))`.
pub fn entropy_deficiency(n: f64, info_nats: f64, units: &UnitSystem) -> Result<f64> {
    if !(n.is_finite() && n >= 0.0) {
        return Err(domain("occupancy", n));
    }
    if !(info_nats.is_finite() && info_nats >= 0.0) {
        return Err(domain("information", info_nats));
    }
    Ok(info_nats * units.boltzmann * thermo::entropy_shortfall(n))
}

#[cfg(test)]
mod tests {
    use super::*;

    const NAT: UnitSystem = UnitSystem::natural();

    #[test]
    fn mixing_entropy_examples() {
        assert!((mixing_entropy_per_slot(0.5).unwrap() - LN_2).abs() < 1e-16);
        assert_eq!(mixing_entropy_per_slot(0.0).unwrap(), 0.0);
        assert_eq!(mixing_entropy_per_slot(1.0).unwrap(), 0.0);
        // -(p ln p + q ln q) at p = 1/4, 40-digit reference
        let h = mixing_entropy_per_slot(0.25).unwrap();
        assert!((h - 0.562_335_144_618_808_4).abs() < 1e-15);
        assert!(mixing_entropy_per_slot(-0.1).is_err());
        assert!(mixing_entropy_per_slot(1.5).is_err());
        assert!(mixing_entropy_per_slot(f64::NAN).is_err());
    }

    #[test]
    fn file_entropy_examples() {
        let s = file_entropy(1000, 0.5, &NAT).unwrap();
        assert!((s - 1000.0 * LN_2).abs() < 1e-12);
        assert!((s - 693.147).abs() < 1e-3);
        assert_eq!(file_entropy(1, 1.0, &NAT).unwrap(), 0.0);
        let s = file_entropy(8, 0.25, &NAT).unwrap();
        assert!((s - 4.498_681_156_950_467).abs() < 1e-14);
        assert!(file_entropy(0, 0.5, &NAT).is_err());
    }

    #[test]
    fn bytes_are_read_msb_first() {
        let f = BitFile::from_bytes(&[0b1011_0010]).unwrap();
        assert_eq!(f.to_bit_string(), "10110010");
        assert!(BitFile::from_bytes(&[]).is_err());
    }

    #[test]
    fn parse_rejects_other_symbols() {
        assert_eq!(BitFile::parse("10 1_1").unwrap().to_bit_string(), "1011");
        assert!(BitFile::parse("012").is_err());
        assert!(BitFile::parse("").is_err());
    }

    #[test]
    fn random_file_is_seed_determined() {
        let a = BitFile::random(4096, 0.5, 7).unwrap();
        let b = BitFile::random(4096, 0.5, 7).unwrap();
        let c = BitFile::random(4096, 0.5, 8).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, c);
        assert!(BitFile::random(16, 1.2, 0).is_err());
        assert_eq!(BitFile::random(64, 0.0, 3).unwrap().ones(), 0);
        assert_eq!(BitFile::random(64, 1.0, 3).unwrap().ones(), 64);
    }

    #[test]
    fn constant_file_has_no_information() {
        let zeros = BitFile::new(vec![false; 300]).unwrap();
        for k in [1, 2, 7, 21, 64, 65, 300] {
            let info = shannon_information(&zeros, k).unwrap();
            assert_eq!(info.total_nats, 0.0, "k = {k}");
        }
    }

    #[test]
    fn fair_file_approaches_ln2() {
        let f = BitFile::random(1 << 20, 0.5, 2024).unwrap();
        let info = shannon_information(&f, 1).unwrap();
        assert!((info.per_symbol_nats - LN_2).abs() < 0.01);
    }

    #[test]
    fn periodic_file_block_entropy() {
        let f = BitFile::parse(&"01".repeat(512)).unwrap();
        // 1023 two-blocks: 512 "01" and 511 "10"
        let expected_k2 = plugin_entropy(vec![512, 511]) / 2.0;
        let i2 = shannon_information(&f, 2).unwrap();
        assert!((i2.per_symbol_nats - expected_k2).abs() < 1e-15);
        assert!((i2.per_symbol_nats - LN_2 / 2.0).abs() < 1e-6);
        let i4 = shannon_information(&f, 4).unwrap();
        assert!(i4.per_symbol_nats < i2.per_symbol_nats);
        assert!((i4.per_symbol_nats - LN_2 / 4.0).abs() < 1e-6);
    }

    #[test]
    fn insufficient_data() {
        let f = BitFile::parse("0101").unwrap();
        assert_eq!(
            shannon_information(&f, 5),
            Err(Error::InsufficientData {
                order: 5,
                length: 4
            })
        );
        assert!(shannon_information(&f, 0).is_err());
        assert!(shannon_information(&f, 4).is_ok());
    }

    #[test]
    fn block_count_paths_agree() {
        let f = BitFile::random(5000, 0.3, 11).unwrap();
        for k in [3, 20, 21, 40, 64] {
            let packed = plugin_entropy(block_counts(f.bits(), k));
            let mut map: HashMap<&[bool], usize> = HashMap::new();
            for w in f.bits().windows(k) {
                *map.entry(w).or_default() += 1;
            }
            let slices = plugin_entropy(map.into_values().collect());
            assert_eq!(packed, slices, "k = {k}");
        }
    }

    #[test]
    fn file_energy_counts_pulses() {
        let f = BitFile::parse("10110010").unwrap();
        let train = PulseTrain::new(f, 1.0, 2.0).unwrap();
        assert_eq!(file_energy(&train, &NAT), 8.0);
        let zeros = PulseTrain::new(BitFile::parse("0000").unwrap(), 1.0, 5.0).unwrap();
        assert_eq!(file_energy(&zeros, &NAT), 0.0);
    }

    #[test]
    fn fair_file_energy_concentrates() {
        let len = 1usize << 20;
        let f = BitFile::random(len, 0.5, 99).unwrap();
        let train = PulseTrain::new(f, 1.0, 1.0).unwrap();
        let q = file_energy(&train, &NAT);
        let three_sigma = 3.0 * (len as f64 * 0.25).sqrt();
        assert!((q - len as f64 / 2.0).abs() <= three_sigma);
    }

    #[test]
    fn file_temperature_conventions() {
        // random file of L slots, q = 2: Q = L, S = L ln 2
        let len = 1000.0;
        let (q, s) = (len, len * LN_2);
        let bits = file_temperature(q, s, EntropyConvention::Bits).unwrap();
        assert!((bits - 1.0).abs() < 1e-15);
        let nats = file_temperature(q, s, EntropyConvention::Nats).unwrap();
        assert!((nats - 1.0 / LN_2).abs() < 1e-15);
        assert_eq!(
            file_temperature(0.0, 0.0, EntropyConvention::Nats),
            Err(Error::UndefinedTemperature)
        );
        assert_eq!(
            FileThermoState::new(0.0, 0.0, EntropyConvention::Bits).temperature,
            None
        );
    }

    #[test]
    fn clausius_margin_examples() {
        let len = 4096usize;
        let cap = capacity_entropy(len, &NAT);
        assert_eq!(clausius_margin(cap, len as f64 * LN_2, &NAT), 0.0);
        assert_eq!(clausius_margin(cap, 0.0, &NAT), cap);

        let len = 1usize << 16;
        let f = BitFile::random(len, 0.25, 5).unwrap();
        let info = shannon_information(&f, 1).unwrap();
        let margin = clausius_margin(capacity_entropy(len, &NAT), info.total_nats, &NAT);
        let expected = len as f64 * (LN_2 - 0.562_335_144_618_808_4);
        // 3σ of the plug-in estimate: |H'(p)| sqrt(p q / L) per symbol
        let sigma = (3.0f64).ln() * (0.25 * 0.75 / len as f64).sqrt();
        assert!((margin - expected).abs() < 3.0 * sigma * len as f64);
        assert!(margin > 0.0);
    }

    #[test]
    fn deficiency_examples() {
        assert_eq!(entropy_deficiency(0.0, 100.0, &NAT).unwrap(), 100.0);
        // ln 2 (1 - ln 2)
        let d = entropy_deficiency(1.0, LN_2, &NAT).unwrap();
        assert!((d - 0.212_694_166_641_743_9).abs() < 1e-15);
        assert!(entropy_deficiency(1e300, 5.0, &NAT).unwrap() < 1e-299);
        assert!(entropy_deficiency(-1.0, 1.0, &NAT).is_err());
        assert!(entropy_deficiency(1.0, -1.0, &NAT).is_err());
    }

    #[test]
    fn uniform_ensemble_reproduces_log_omega() {
        for len in 1..=8usize {
            let files: Vec<BitFile> = (0u32..(1 << len))
                .map(|v| BitFile::new((0..len).rev().map(|i| (v >> i) & 1 == 1).collect()).unwrap())
                .collect();
            let i = configuration_entropy(&files);
            assert!((i - len as f64 * LN_2).abs() < 1e-12, "L = {len}");
            // each file alone is one configuration at k = L
            for f in &files {
                assert_eq!(shannon_information(f, len).unwrap().total_nats, 0.0);
            }
        }
    }
}
