//! Amplification as a four-stroke Carnot cycle.
//!
//! The amplifier reads the attenuated train at `T_C` (isothermal, heat
//! `Q_C` in), pumps work `W` into the pulses without adding information
//! (adiabatic), then writes the train back at `T_H` (isothermal, heat
//! `Q_H = Q_C + W` out). The fiber closes the cycle by expanding the train
//! adiabatically back down to `T_C`.
//!
//! Reversibility requires `Q_H / T_H = Q_C / T_C`, which fixes
//! `W = Q_C (T_H / T_C - 1)` and gives `W / Q_H = 1 - T_C / T_H`.

use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::file_model::{file_energy, PulseTrain};
use crate::thermo::{self, UnitSystem};

/// How much work an amplifier spends relative to the reversible minimum.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize, Default)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum AmplifierModel {
    #[default]
    Reversible,
    /// Applies `(1 + excess) W_rev`; the surplus is dissipated at `T_H`.
    Irreversible { excess: f64 },
}

impl AmplifierModel {
    pub fn excess(&self) -> f64 {
        match *self {
            AmplifierModel::Reversible => 0.0,
            AmplifierModel::Irreversible { excess } => excess,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let e = self.excess();
        if e.is_finite() && e >= 0.0 {
            Ok(())
        } else {
            Err(domain("excess work fraction", e))
        }
    }
}

/// One amplifier cycle.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CycleRecord {
    pub occupied_pulses: usize,
    pub occupancy_in: f64,
    pub occupancy_out: f64,
    pub t_cold: f64,
    pub t_hot: f64,
    /// Heat read from the incoming train at `t_cold`.
    pub heat_cold: f64,
    /// Heat written into the fiber at `t_hot`; `heat_cold + work`.
    pub heat_hot: f64,
    pub work: f64,
    pub work_reversible: f64,
    /// Energy of the emitted train.
    pub train_energy_out: f64,
    /// Change of the train's own pulse entropy, `count (s(n_H) - s(n_C))`.
    pub delta_s_file: f64,
    /// Net entropy change of the amplifier over its strokes.
    pub delta_s_amplifier: f64,
    /// Entropy produced, `Q_H/T_H - Q_C/T_C`.
    pub delta_s_total: f64,
    pub ratio_w_over_qh: f64,
    pub ratio_w_over_qc: f64,
    pub carnot_value: f64,
}

impl CycleRecord {
    /// Entropy carried through the amplifier, `Q_C / T_C`.
    pub fn entropy_throughput(&self) -> f64 {
        self.heat_cold / self.t_cold
    }

    /// Heat that left the cycle without ending up in the emitted pulses.
    pub fn dissipated(&self) -> f64 {
        self.heat_hot - self.train_energy_out
    }
}

fn check_temperatures(t_cold: f64, t_hot: f64) -> Result<()> {
    if !(t_cold.is_finite() && t_cold > 0.0) {
        return Err(domain("cold temperature", t_cold));
    }
    if !(t_hot.is_finite() && t_hot > 0.0) {
        return Err(domain("hot temperature", t_hot));
    }
    if t_cold > t_hot {
        return Err(domain("cold temperature above hot", t_cold));
    }
    Ok(())
}

/// Minimum work that lifts heat `heat_cold` from `t_cold` to `t_hot`
/// without entropy production.
pub fn reversible_work(heat_cold: f64, t_cold: f64, t_hot: f64) -> Result<f64> {
    check_temperatures(t_cold, t_hot)?;
    if !(heat_cold.is_finite() && heat_cold >= 0.0) {
        return Err(domain("heat", heat_cold));
    }
    Ok(heat_cold * ((t_hot - t_cold) / t_cold))
}

/// `1 - T_C / T_H`.
pub fn carnot_efficiency(t_cold: f64, t_hot: f64) -> Result<f64> {
    check_temperatures(t_cold, t_hot)?;
    Ok((t_hot - t_cold) / t_hot)
}

/// Amplifies `train` to `target_occupancy` and records the cycle.
pub fn run_cycle(
    train: &PulseTrain,
    target_occupancy: f64,
    model: AmplifierModel,
    units: &UnitSystem,
) -> Result<(PulseTrain, CycleRecord)> {
    model.validate()?;
    let n_cold = train.occupancy();
    if n_cold.is_nan() || n_cold <= 0.0 {
        return Err(domain("input occupancy", n_cold));
    }
    if !(target_occupancy.is_finite() && target_occupancy >= n_cold) {
        return Err(domain("target occupancy", target_occupancy));
    }
    let nu = train.frequency();
    let t_cold = thermo::temperature_from_occupancy(nu, n_cold, units)?;
    let t_hot = thermo::temperature_from_occupancy(nu, target_occupancy, units)?;

    let heat_cold = file_energy(train, units);
    let work_reversible = reversible_work(heat_cold, t_cold, t_hot)?;
    let excess = model.excess() * work_reversible;
    let work = work_reversible + excess;
    let heat_hot = heat_cold + work;

    let out = train.with_occupancy(target_occupancy);
    let count = train.occupied_slots() as f64;
    let delta_s_file = units.boltzmann
        * count
        * (thermo::entropy_shortfall(n_cold) - thermo::entropy_shortfall(target_occupancy));
    // Q_H/T_H - Q_C/T_C reduces to the excess work over T_H
    let delta_s_total = excess / t_hot;

    let record = CycleRecord {
        occupied_pulses: train.occupied_slots(),
        occupancy_in: n_cold,
        occupancy_out: target_occupancy,
        t_cold,
        t_hot,
        heat_cold,
        heat_hot,
        work,
        work_reversible,
        train_energy_out: file_energy(&out, units),
        delta_s_file,
        delta_s_amplifier: heat_cold / t_cold - heat_hot / t_hot,
        delta_s_total,
        ratio_w_over_qh: if heat_hot > 0.0 { work / heat_hot } else { 0.0 },
        ratio_w_over_qc: if heat_cold > 0.0 {
            work / heat_cold
        } else {
            0.0
        },
        carnot_value: carnot_efficiency(t_cold, t_hot)?,
    };
    Ok((out, record))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StrokeKind {
    IsothermalRead,
    AdiabaticAmplification,
    IsothermalWrite,
    FiberExpansion,
}

/// One leg of the cycle as seen from the amplifier. `heat` is positive into
/// the amplifier, `work` positive when done on the pulses.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Stroke {
    pub kind: StrokeKind,
    pub temperature: Option<f64>,
    pub heat: f64,
    pub work: f64,
    pub amplifier_entropy_change: f64,
}

/// Per-stroke breakdown of a cycle. Entropy entries sum to `-delta_s_total`.
pub fn stroke_ledger(record: &CycleRecord) -> [Stroke; 4] {
    [
        Stroke {
            kind: StrokeKind::IsothermalRead,
            temperature: Some(record.t_cold),
            heat: record.heat_cold,
            work: 0.0,
            amplifier_entropy_change: record.heat_cold / record.t_cold,
        },
        Stroke {
            kind: StrokeKind::AdiabaticAmplification,
            temperature: None,
            heat: 0.0,
            work: record.work,
            amplifier_entropy_change: 0.0,
        },
        Stroke {
            kind: StrokeKind::IsothermalWrite,
            temperature: Some(record.t_hot),
            heat: -record.heat_hot,
            work: 0.0,
            amplifier_entropy_change: -record.heat_hot / record.t_hot,
        },
        Stroke {
            kind: StrokeKind::FiberExpansion,
            temperature: None,
            heat: 0.0,
            work: 0.0,
            amplifier_entropy_change: 0.0,
        },
    ]
}
