//! End-to-end link simulation: fiber spans alternating with amplifier
//! cycles, recorded in a chronological ledger and audited for the second law.

use serde::{Deserialize, Serialize};

use crate::carnot::{self, AmplifierModel, CycleRecord};
use crate::channel::{self, FiberSpan, SpanAudit};
use crate::error::{Error, Result};
use crate::file_model::{self, BitFile, PulseTrain, RNG_NAME};
use crate::thermo::{self, UnitKind, UnitSystem};

/// Relative slack when comparing an occupancy against the floor `n_min`.
/// Absorbs rounding of `10^(-loss/10)` at exactly critical span lengths.
pub const FLOOR_REL_TOL: f64 = 1e-12;

/// Relative tolerance of the second-law audit against entropy throughput.
pub const SECOND_LAW_REL_TOL: f64 = 1e-12;

/// Where the launched bits come from.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum FileSource {
    Bits {
        bits: String,
    },
    Random {
        length: usize,
        #[serde(default = "half")]
        bias: f64,
    },
}

fn half() -> f64 {
    0.5
}

impl FileSource {
    pub fn realize(&self, seed: u64) -> Result<BitFile> {
        match self {
            FileSource::Bits { bits } => BitFile::parse(bits),
            FileSource::Random { length, bias } => BitFile::random(*length, *bias, seed),
        }
    }
}

/// An amplifier placed after span `after_span` (0-based).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AmplifierSite {
    pub after_span: usize,
    #[serde(default)]
    pub model: AmplifierModel,
    /// Occupancy restored by the amplifier; the launch occupancy if absent.
    #[serde(default)]
    pub target_occupancy: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SimulationConfig {
    #[serde(default)]
    pub units: UnitKind,
    /// Carrier frequency; defaults to 1 (natural) or 193.4 THz (SI).
    #[serde(default)]
    pub frequency_hz: Option<f64>,
    pub launch_occupancy: f64,
    pub file: FileSource,
    #[serde(default)]
    pub spans: Vec<FiberSpan>,
    #[serde(default)]
    pub amplifiers: Vec<AmplifierSite>,
    #[serde(default)]
    pub n_min: f64,
    /// Per-pulse entropy change accepted as adiabatic, in entropy units of
    /// `units`; defaults to `1e-6 k_B`.
    #[serde(default)]
    pub adiabatic_tolerance: Option<f64>,
    #[serde(default)]
    pub seed: u64,
}

impl SimulationConfig {
    pub fn unit_system(&self) -> UnitSystem {
        UnitSystem::from_kind(self.units)
    }

    pub fn frequency(&self) -> f64 {
        self.frequency_hz
            .unwrap_or_else(|| self.unit_system().default_frequency())
    }

    pub fn tolerance(&self) -> f64 {
        self.adiabatic_tolerance
            .unwrap_or(1e-6 * self.unit_system().boltzmann)
    }

    /// `spans` equal spans covering `total_length_km`, each followed by a
    /// reversible amplifier restoring the launch occupancy.
    pub fn uniform_link(
        spans: usize,
        total_length_km: f64,
        attenuation_db_per_km: f64,
        launch_occupancy: f64,
        n_min: f64,
        file: FileSource,
        units: UnitKind,
    ) -> Self {
        let span = FiberSpan {
            length_km: total_length_km / spans.max(1) as f64,
            attenuation_db_per_km,
        };
        SimulationConfig {
            units,
            frequency_hz: None,
            launch_occupancy,
            file,
            spans: vec![span; spans],
            amplifiers: (0..spans)
                .map(|i| AmplifierSite {
                    after_span: i,
                    model: AmplifierModel::Reversible,
                    target_occupancy: None,
                })
                .collect(),
            n_min,
            adiabatic_tolerance: None,
            seed: 0,
        }
    }

    /// Checks every field; errors name the offending field path.
    pub fn validate(&self) -> Result<()> {
        let bad = |path: String, why: &str| Err(Error::InvalidConfig(format!("{path}: {why}")));
        if let Some(nu) = self.frequency_hz {
            if !(nu.is_finite() && nu > 0.0) {
                return bad("frequency_hz".into(), "must be positive and finite");
            }
        }
        let n0 = self.launch_occupancy;
        if !(n0.is_finite() && n0 > 0.0) {
            return bad("launch_occupancy".into(), "must be positive and finite");
        }
        if !(self.n_min.is_finite() && self.n_min >= 0.0) {
            return bad("n_min".into(), "must be non-negative and finite");
        }
        if let Some(tol) = self.adiabatic_tolerance {
            if !(tol.is_finite() && tol >= 0.0) {
                return bad(
                    "adiabatic_tolerance".into(),
                    "must be non-negative and finite",
                );
            }
        }
        match &self.file {
            FileSource::Bits { bits } => {
                if let Err(e) = BitFile::parse(bits) {
                    return bad("file.bits".into(), &e.to_string());
                }
            }
            FileSource::Random { length, bias } => {
                if *length == 0 {
                    return bad("file.length".into(), "must be at least 1");
                }
                if !(0.0..=1.0).contains(bias) {
                    return bad("file.bias".into(), "must lie in [0, 1]");
                }
            }
        }
        for (i, span) in self.spans.iter().enumerate() {
            if !(span.length_km.is_finite() && span.length_km > 0.0) {
                return bad(
                    format!("spans[{i}].length_km"),
                    "must be positive and finite",
                );
            }
            if !(span.attenuation_db_per_km.is_finite() && span.attenuation_db_per_km >= 0.0) {
                return bad(
                    format!("spans[{i}].attenuation_db_per_km"),
                    "must be non-negative and finite",
                );
            }
        }
        let mut seen = vec![false; self.spans.len()];
        for (i, amp) in self.amplifiers.iter().enumerate() {
            if amp.after_span >= self.spans.len() {
                return bad(
                    format!("amplifiers[{i}].after_span"),
                    "refers to a missing span",
                );
            }
            if std::mem::replace(&mut seen[amp.after_span], true) {
                return bad(
                    format!("amplifiers[{i}].after_span"),
                    "duplicate amplifier site",
                );
            }
            if amp.model.validate().is_err() {
                return bad(
                    format!("amplifiers[{i}].model.excess"),
                    "must be non-negative",
                );
            }
            if let Some(t) = amp.target_occupancy {
                if !(t.is_finite() && t > 0.0) {
                    return bad(
                        format!("amplifiers[{i}].target_occupancy"),
                        "must be positive and finite",
                    );
                }
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StageKind {
    Span,
    Amplifier,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpanStage {
    pub span: FiberSpan,
    pub audit: SpanAudit,
    /// Change of the whole train's pulse entropy across the span.
    pub train_entropy_change: f64,
}

/// One entry of the ledger. For a span, `t_hot` is the temperature on entry
/// and `t_cold` on exit.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Stage {
    pub index: usize,
    pub kind: StageKind,
    pub energy_in: f64,
    pub energy_out: f64,
    pub work: f64,
    pub t_cold: Option<f64>,
    pub t_hot: Option<f64>,
    /// Entropy produced by this stage.
    pub delta_s: f64,
    pub cumulative_delta_s: f64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub span: Option<SpanStage>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub cycle: Option<CycleRecord>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Totals {
    pub work: f64,
    pub heat_dissipated: f64,
    pub delta_s_universe: f64,
    /// `Σ Q_C / T_C` over every amplifier.
    pub entropy_throughput: f64,
    /// Sum of finite-occupancy pulse-entropy changes across spans (≤ 0).
    pub span_entropy_drift: f64,
    /// Largest entropy deficiency of the file's information along the link.
    pub deficiency_max: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Ledger {
    pub rng: String,
    pub seed: u64,
    pub units: UnitKind,
    pub frequency_hz: f64,
    pub file_length: usize,
    pub occupied_pulses: usize,
    pub information_nats: f64,
    pub launch_occupancy: f64,
    pub final_occupancy: f64,
    pub min_occupancy: f64,
    pub launch_energy: f64,
    pub final_energy: f64,
    pub stages: Vec<Stage>,
    pub totals: Totals,
    pub pattern_preserved: bool,
    pub adiabatic_within_tolerance: bool,
    /// Pattern preserved and occupancy never below `n_min`.
    pub integrity: bool,
}

impl Ledger {
    pub fn cycles(&self) -> impl Iterator<Item = &CycleRecord> {
        self.stages.iter().filter_map(|s| s.cycle.as_ref())
    }
}

/// Runs the link described by `config`.
///
/// Spans carry zero entropy production in the ledger: attenuation is the
/// adiabatic stroke. The exact finite-occupancy pulse-entropy change is
/// reported separately per span and in `span_entropy_drift`.
pub fn run(config: &SimulationConfig) -> Result<Ledger> {
    config.validate()?;
    let units = config.unit_system();
    let nu = config.frequency();
    let tolerance = config.tolerance();
    let file = config.file.realize(config.seed)?;
    let info = file_model::shannon_information(&file, 1)?.total_nats;
    let launch = PulseTrain::new(file, nu, config.launch_occupancy)?;
    let floor = config.n_min * (1.0 - FLOOR_REL_TOL);

    let mut amps: Vec<Option<AmplifierSite>> = vec![None; config.spans.len()];
    for site in &config.amplifiers {
        amps[site.after_span] = Some(*site);
    }

    let mut train = launch.clone();
    let mut stages = Vec::with_capacity(config.spans.len() * 2);
    let mut totals = Totals {
        work: 0.0,
        heat_dissipated: 0.0,
        delta_s_universe: 0.0,
        entropy_throughput: 0.0,
        span_entropy_drift: 0.0,
        deficiency_max: file_model::entropy_deficiency(train.occupancy(), info, &units)?,
    };
    let mut min_occupancy = train.occupancy();
    let mut pattern_preserved = true;
    let mut adiabatic = true;

    for (span, amp) in config.spans.iter().zip(&amps) {
        let index = stages.len();
        let after = channel::transmit(&train, span);
        if after.occupancy().is_nan() || after.occupancy() <= 0.0 {
            return Err(Error::Simulation {
                stage: index,
                reason: format!("occupancy reaches zero after a {} dB span", span.loss_db()),
            });
        }
        let audit = channel::adiabatic_audit(&train, &after, tolerance, &units)?;
        let energy_in = file_model::file_energy(&train, &units);
        let energy_out = file_model::file_energy(&after, &units);
        let drift = audit.delta_s_per_occupied_pulse * after.occupied_slots() as f64;
        totals.heat_dissipated += energy_in - energy_out;
        totals.span_entropy_drift += drift;
        totals.deficiency_max = totals.deficiency_max.max(file_model::entropy_deficiency(
            after.occupancy(),
            info,
            &units,
        )?);
        pattern_preserved &= audit.pattern_preserved;
        adiabatic &= audit.classical_adiabatic;
        min_occupancy = min_occupancy.min(after.occupancy());
        stages.push(Stage {
            index,
            kind: StageKind::Span,
            energy_in,
            energy_out,
            work: 0.0,
            t_cold: audit.temperature_after,
            t_hot: audit.temperature_before,
            delta_s: 0.0,
            cumulative_delta_s: totals.delta_s_universe,
            span: Some(SpanStage {
                span: *span,
                audit,
                train_entropy_change: drift,
            }),
            cycle: None,
        });
        train = after;

        if let Some(site) = amp {
            let index = stages.len();
            let target = site.target_occupancy.unwrap_or(config.launch_occupancy);
            if target < train.occupancy() {
                return Err(Error::Simulation {
                    stage: index,
                    reason: format!(
                        "amplifier target {target} is below the arriving occupancy {}",
                        train.occupancy()
                    ),
                });
            }
            let (out, rec) =
                carnot::run_cycle(&train, target, site.model, &units).map_err(|e| {
                    Error::Simulation {
                        stage: index,
                        reason: e.to_string(),
                    }
                })?;
            totals.work += rec.work;
            totals.heat_dissipated += rec.dissipated();
            totals.delta_s_universe += rec.delta_s_total;
            totals.entropy_throughput += rec.entropy_throughput();
            pattern_preserved &= out.pattern() == train.pattern();
            stages.push(Stage {
                index,
                kind: StageKind::Amplifier,
                energy_in: rec.heat_cold,
                energy_out: rec.train_energy_out,
                work: rec.work,
                t_cold: Some(rec.t_cold),
                t_hot: Some(rec.t_hot),
                delta_s: rec.delta_s_total,
                cumulative_delta_s: totals.delta_s_universe,
                span: None,
                cycle: Some(rec),
            });
            train = out;
        }
    }

    pattern_preserved &= train.pattern() == launch.pattern();
    Ok(Ledger {
        rng: RNG_NAME.to_string(),
        seed: config.seed,
        units: config.units,
        frequency_hz: nu,
        file_length: launch.len(),
        occupied_pulses: launch.occupied_slots(),
        information_nats: info,
        launch_occupancy: launch.occupancy(),
        final_occupancy: train.occupancy(),
        min_occupancy,
        launch_energy: file_model::file_energy(&launch, &units),
        final_energy: file_model::file_energy(&train, &units),
        stages,
        totals,
        pattern_preserved,
        adiabatic_within_tolerance: adiabatic,
        integrity: pattern_preserved && min_occupancy >= floor,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SecondLawAudit {
    pub pass: bool,
    /// `ΔS_universe`.
    pub margin: f64,
    /// Largest tolerated negative margin.
    pub tolerance: f64,
}

pub fn second_law_audit(ledger: &Ledger) -> SecondLawAudit {
    let tolerance = SECOND_LAW_REL_TOL * ledger.totals.entropy_throughput;
    let margin = ledger.totals.delta_s_universe;
    SecondLawAudit {
        pass: margin >= -tolerance,
        margin,
        tolerance,
    }
}

/// `Q/T_H - Q/T_C`: the entropy change if heat `Q` were re-emitted hotter
/// with no work added. Never positive.
pub fn naive_amplification_entropy_gap(heat: f64, t_cold: f64, t_hot: f64) -> Result<f64> {
    carnot::carnot_efficiency(t_cold, t_hot)?;
    if !(heat.is_finite() && heat >= 0.0) {
        return Err(crate::error::domain("heat", heat));
    }
    Ok(heat / t_hot - heat / t_cold)
}

/// Uniform-spacing placement problem for [`optimize_placement`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PlacementProblem {
    pub total_length_km: f64,
    pub attenuation_db_per_km: f64,
    pub launch_occupancy: f64,
    pub n_min: f64,
    #[serde(default)]
    pub frequency_hz: Option<f64>,
    #[serde(default)]
    pub units: UnitKind,
}

impl PlacementProblem {
    fn unit_system(&self) -> UnitSystem {
        UnitSystem::from_kind(self.units)
    }

    fn frequency(&self) -> f64 {
        self.frequency_hz
            .unwrap_or_else(|| self.unit_system().default_frequency())
    }

    pub fn total_loss_db(&self) -> f64 {
        self.total_length_km * self.attenuation_db_per_km
    }

    /// Largest single-span loss that keeps the occupancy above `n_min`.
    pub fn max_span_loss_db(&self) -> f64 {
        if self.n_min == 0.0 {
            f64::INFINITY
        } else {
            10.0 * (self.launch_occupancy / self.n_min).log10()
        }
    }

    fn validate(&self) -> Result<()> {
        let finite_nonneg = |x: f64| x.is_finite() && x >= 0.0;
        if !finite_nonneg(self.total_length_km) {
            return Err(crate::error::domain("total length", self.total_length_km));
        }
        if !finite_nonneg(self.attenuation_db_per_km) {
            return Err(crate::error::domain(
                "attenuation",
                self.attenuation_db_per_km,
            ));
        }
        if !(self.launch_occupancy.is_finite() && self.launch_occupancy > 0.0) {
            return Err(crate::error::domain(
                "launch occupancy",
                self.launch_occupancy,
            ));
        }
        if !finite_nonneg(self.n_min) {
            return Err(crate::error::domain("n_min", self.n_min));
        }
        if let Some(nu) = self.frequency_hz {
            if !(nu.is_finite() && nu > 0.0) {
                return Err(crate::error::domain("frequency", nu));
            }
        }
        if self.n_min >= self.launch_occupancy {
            return Err(Error::Infeasible(format!(
                "n_min {} is not below the launch occupancy {}",
                self.n_min, self.launch_occupancy
            )));
        }
        Ok(())
    }

    /// Span that `count` equal spans would use.
    fn span(&self, count: usize) -> FiberSpan {
        FiberSpan {
            length_km: self.total_length_km / count as f64,
            attenuation_db_per_km: self.attenuation_db_per_km,
        }
    }

    /// Evaluates `count` equal spans, each closed by a reversible amplifier,
    /// for one occupied pulse.
    pub fn evaluate(&self, count: usize) -> Result<SweepRow> {
        let units = self.unit_system();
        let nu = self.frequency();
        let n0 = self.launch_occupancy;
        let q0 = n0 * units.photon_energy(nu);
        if count == 0 {
            let feasible = self.total_loss_db() == 0.0;
            return Ok(SweepRow {
                amplifiers: 0,
                span_loss_db: self.total_loss_db(),
                transmission: 1.0,
                feasible,
                min_occupancy: if feasible { n0 } else { 0.0 },
                work_total: 0.0,
                work_classical: 0.0,
            });
        }
        let span = self.span(count);
        let g = span.transmission();
        let n_cold = n0 * g;
        let feasible = n_cold > 0.0 && n_cold >= self.n_min * (1.0 - FLOOR_REL_TOL);
        let work_cycle = if n_cold > 0.0 {
            let t_cold = thermo::temperature_from_occupancy(nu, n_cold, &units)?;
            let t_hot = thermo::temperature_from_occupancy(nu, n0, &units)?;
            carnot::reversible_work(n_cold * units.photon_energy(nu), t_cold, t_hot)?
        } else {
            f64::INFINITY
        };
        Ok(SweepRow {
            amplifiers: count,
            span_loss_db: span.loss_db(),
            transmission: g,
            feasible,
            min_occupancy: n_cold,
            work_total: work_cycle * count as f64,
            work_classical: count as f64 * q0 * (1.0 - g),
        })
    }
}

/// One candidate amplifier count.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub amplifiers: usize,
    pub span_loss_db: f64,
    pub transmission: f64,
    pub feasible: bool,
    pub min_occupancy: f64,
    /// Reversible work per occupied pulse at exact pulse temperatures.
    pub work_total: f64,
    /// `N q0 (1 - g)`, the large-occupancy limit of `work_total`.
    pub work_classical: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlacementResult {
    pub amplifiers: usize,
    pub positions_km: Vec<f64>,
    pub span_loss_db: f64,
    /// Launch energy of one occupied pulse.
    pub pulse_energy: f64,
    pub work_total: f64,
    pub work_classical: f64,
    pub min_occupancy: f64,
    /// `min_occupancy - n_min`.
    pub slack: f64,
}

/// Fewest equally spaced amplifiers that keep every span above `n_min`.
///
/// Each span is closed by a reversible amplifier restoring the launch
/// occupancy. Total reversible work `N q0 (1 - g^(1/N))` grows with `N`, so
/// the smallest feasible count is also the cheapest.
pub fn optimize_placement(problem: &PlacementProblem) -> Result<PlacementResult> {
    problem.validate()?;
    let loss = problem.total_loss_db();
    let count = if loss == 0.0 {
        0
    } else {
        let guess = (loss / problem.max_span_loss_db()).ceil();
        let mut n = if guess.is_finite() && guess >= 1.0 {
            guess.min(u32::MAX as f64) as usize
        } else {
            1
        };
        while n > 1 && problem.evaluate(n - 1)?.feasible {
            n -= 1;
        }
        while !problem.evaluate(n)?.feasible {
            n += 1;
        }
        n
    };
    let row = problem.evaluate(count)?;
    let units = problem.unit_system();
    let step = if count == 0 {
        0.0
    } else {
        problem.total_length_km / count as f64
    };
    Ok(PlacementResult {
        amplifiers: count,
        positions_km: (1..=count).map(|i| step * i as f64).collect(),
        span_loss_db: row.span_loss_db,
        pulse_energy: problem.launch_occupancy * units.photon_energy(problem.frequency()),
        work_total: row.work_total,
        work_classical: row.work_classical,
        min_occupancy: row.min_occupancy,
        slack: row.min_occupancy - problem.n_min,
    })
}

/// Work and feasibility for amplifier counts `1..=max_count`.
pub fn placement_sweep(problem: &PlacementProblem, max_count: usize) -> Result<Vec<SweepRow>> {
    problem.validate()?;
    (1..=max_count).map(|n| problem.evaluate(n)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn random_file(length: usize) -> FileSource {
        FileSource::Random { length, bias: 0.5 }
    }

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn single_span_restored_by_reversible_amplifier() {
        // 10 dB span, n0 = 1e6
        let cfg = SimulationConfig::uniform_link(
            1,
            50.0,
            0.2,
            1e6,
            1e3,
            random_file(1024),
            UnitKind::Natural,
        );
        let ledger = run(&cfg).unwrap();
        let q0 = ledger.launch_energy;
        // exact-temperature work: 0.1 Q0 (T(1e6)/T(1e5) - 1), 40-digit reference
        assert!(rel(ledger.totals.work, 0.899_995_500_030_749_8 * q0) < 1e-12);
        // departs from the classical 0.9 Q0 by ~5e-6 at this occupancy
        assert!(rel(ledger.totals.work, 0.9 * q0) < 1e-5);
        assert!(ledger.integrity);
        assert_eq!(ledger.stages.len(), 2);
        assert_eq!(ledger.totals.delta_s_universe, 0.0);

        let mut deep = cfg.clone();
        deep.launch_occupancy = 1e8;
        let ledger = run(&deep).unwrap();
        assert!(rel(ledger.totals.work, 0.9 * ledger.launch_energy) < 1e-6);
    }

    #[test]
    fn empty_link() {
        let cfg = SimulationConfig {
            units: UnitKind::Natural,
            frequency_hz: None,
            launch_occupancy: 10.0,
            file: FileSource::Bits {
                bits: "1010".into(),
            },
            spans: vec![],
            amplifiers: vec![],
            n_min: 0.0,
            adiabatic_tolerance: None,
            seed: 0,
        };
        let ledger = run(&cfg).unwrap();
        assert!(ledger.stages.is_empty());
        assert_eq!(ledger.totals.work, 0.0);
        assert_eq!(ledger.totals.delta_s_universe, 0.0);
        let audit = second_law_audit(&ledger);
        assert!(audit.pass);
        assert_eq!(audit.margin, 0.0);
    }

    #[test]
    fn chain_work_telescopes() {
        let s = 10f64.powf(-0.5);
        for n in [1usize, 3, 5] {
            let mut cfg = SimulationConfig::uniform_link(
                n,
                25.0 * n as f64,
                0.2,
                1e9,
                1e3,
                random_file(256),
                UnitKind::Natural,
            );
            cfg.seed = 3;
            let ledger = run(&cfg).unwrap();
            let q0 = ledger.launch_energy;
            let summed: f64 = ledger.cycles().map(|c| c.work).sum();
            assert_eq!(summed, ledger.totals.work);
            assert!(rel(ledger.totals.work, n as f64 * q0 * (1.0 - s)) < 1e-6);
        }
    }

    #[test]
    fn irreversible_amplifier_is_attributed() {
        let mut cfg = SimulationConfig::uniform_link(
            3,
            150.0,
            0.2,
            1e7,
            1e3,
            random_file(128),
            UnitKind::Natural,
        );
        cfg.amplifiers[1].model = AmplifierModel::Irreversible { excess: 0.1 };
        let ledger = run(&cfg).unwrap();
        let cycles: Vec<_> = ledger.cycles().collect();
        let audit = second_law_audit(&ledger);
        assert!(audit.pass);
        assert!(audit.margin > 0.0);
        assert_eq!(audit.margin, cycles[1].delta_s_total);
        let direct = cycles[1].heat_hot / cycles[1].t_hot - cycles[1].heat_cold / cycles[1].t_cold;
        assert!(rel(audit.margin, direct) < 1e-6);
    }

    #[test]
    fn energy_closes() {
        let mut cfg = SimulationConfig::uniform_link(
            4,
            200.0,
            0.21,
            3e4,
            1.0,
            random_file(512),
            UnitKind::Si,
        );
        cfg.amplifiers[2].model = AmplifierModel::Irreversible { excess: 0.3 };
        let l = run(&cfg).unwrap();
        let lhs = l.launch_energy + l.totals.work - l.final_energy;
        assert!(rel(lhs, l.totals.heat_dissipated) < 1e-9);
    }

    #[test]
    fn zero_occupancy_names_the_stage() {
        let cfg = SimulationConfig {
            units: UnitKind::Natural,
            frequency_hz: None,
            launch_occupancy: 1e3,
            file: FileSource::Bits { bits: "11".into() },
            spans: vec![
                FiberSpan::new(10.0, 0.2).unwrap(),
                FiberSpan::new(20000.0, 0.2).unwrap(),
            ],
            amplifiers: vec![AmplifierSite {
                after_span: 0,
                model: AmplifierModel::Reversible,
                target_occupancy: None,
            }],
            n_min: 0.0,
            adiabatic_tolerance: None,
            seed: 0,
        };
        match run(&cfg) {
            Err(Error::Simulation { stage, .. }) => assert_eq!(stage, 2),
            other => panic!("expected simulation error, got {other:?}"),
        }
    }

    #[test]
    fn validation_names_fields() {
        let mut cfg = SimulationConfig::uniform_link(
            2,
            10.0,
            0.2,
            1e3,
            1.0,
            random_file(8),
            UnitKind::Natural,
        );
        cfg.spans[1].length_km = -1.0;
        let err = run(&cfg).unwrap_err().to_string();
        assert!(err.contains("spans[1].length_km"), "{err}");

        let mut cfg = SimulationConfig::uniform_link(
            2,
            10.0,
            0.2,
            1e3,
            1.0,
            random_file(8),
            UnitKind::Natural,
        );
        cfg.amplifiers[1].after_span = 0;
        let err = run(&cfg).unwrap_err().to_string();
        assert!(err.contains("amplifiers[1].after_span"), "{err}");
    }

    #[test]
    fn amplifier_target_below_arrival_fails() {
        let mut cfg = SimulationConfig::uniform_link(
            1,
            10.0,
            0.2,
            1e3,
            1.0,
            random_file(8),
            UnitKind::Natural,
        );
        cfg.amplifiers[0].target_occupancy = Some(1.0);
        assert!(matches!(run(&cfg), Err(Error::Simulation { stage: 1, .. })));
    }

    #[test]
    fn integrity_tracks_floor() {
        let cfg = SimulationConfig::uniform_link(
            1,
            100.0,
            0.2,
            1e5,
            1e4,
            random_file(64),
            UnitKind::Natural,
        );
        let ledger = run(&cfg).unwrap();
        assert!(!ledger.integrity);
        assert!(ledger.pattern_preserved);
    }

    #[test]
    fn naive_gap_examples() {
        let gap = naive_amplification_entropy_gap(1.0, 150.0, 300.0).unwrap();
        assert!((gap + 1.0 / 300.0).abs() < 1e-18);
        assert_eq!(
            naive_amplification_entropy_gap(5.0, 300.0, 300.0).unwrap(),
            0.0
        );
        assert_eq!(
            naive_amplification_entropy_gap(0.0, 150.0, 300.0).unwrap(),
            0.0
        );
        assert!(naive_amplification_entropy_gap(1.0, 300.0, 150.0).is_err());
        assert!(naive_amplification_entropy_gap(1.0, 0.0, 150.0).is_err());
    }

    fn problem(length: f64, ratio: f64) -> PlacementProblem {
        PlacementProblem {
            total_length_km: length,
            attenuation_db_per_km: 0.2,
            launch_occupancy: 1e12,
            n_min: 1e12 / ratio,
            frequency_hz: None,
            units: UnitKind::Natural,
        }
    }

    #[test]
    fn placement_examples() {
        let p = optimize_placement(&problem(100.0, 100.0)).unwrap();
        assert_eq!(p.amplifiers, 1);
        assert_eq!(p.positions_km, vec![100.0]);
        assert!(rel(p.work_classical, 0.99 * p.pulse_energy) < 1e-12);
        assert!(rel(p.work_total, 0.99 * p.pulse_energy) < 1e-9);
        assert!(p.slack >= -1e-12 * 1e10);

        let p = optimize_placement(&problem(100.0, 10.0)).unwrap();
        assert_eq!(p.amplifiers, 2);
        assert_eq!(p.positions_km, vec![50.0, 100.0]);
        assert!(rel(p.work_classical, 1.8 * p.pulse_energy) < 1e-12);

        let p = optimize_placement(&problem(0.0, 10.0)).unwrap();
        assert_eq!(p.amplifiers, 0);
        assert!(p.positions_km.is_empty());
        assert_eq!(p.work_total, 0.0);

        assert!(matches!(
            optimize_placement(&problem(100.0, 1.0)),
            Err(Error::Infeasible(_))
        ));
    }

    #[test]
    fn sweep_work_increases_with_count() {
        let rows = placement_sweep(&problem(100.0, 10.0), 64).unwrap();
        assert!(!rows[0].feasible);
        assert!(rows[1..].iter().all(|r| r.feasible));
        for w in rows.windows(2) {
            assert!(w[1].work_total > w[0].work_total);
            assert!(w[1].work_classical > w[0].work_classical);
        }
    }
}
