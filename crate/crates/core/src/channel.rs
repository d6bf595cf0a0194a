//! Lossy fiber spans. Loss scales the occupancy of every occupied slot and
//! leaves empty slots empty, so the bit pattern survives untouched while the
//! pulse temperature drops.

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::file_model::PulseTrain;
use crate::thermo::{self, UnitSystem};

/// A fiber section of `length_km` with uniform loss `attenuation_db_per_km`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FiberSpan {
    pub length_km: f64,
    pub attenuation_db_per_km: f64,
}

impl FiberSpan {
    pub fn new(length_km: f64, attenuation_db_per_km: f64) -> Result<Self> {
        let span = FiberSpan {
            length_km,
            attenuation_db_per_km,
        };
        span.validate()?;
        Ok(span)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.length_km.is_finite() && self.length_km > 0.0) {
            return Err(domain("span length", self.length_km));
        }
        if !(self.attenuation_db_per_km.is_finite() && self.attenuation_db_per_km >= 0.0) {
            return Err(domain("attenuation", self.attenuation_db_per_km));
        }
        Ok(())
    }

    pub fn loss_db(&self) -> f64 {
        self.attenuation_db_per_km * self.length_km
    }

    /// Power transmission `10^(-αd/10)`.
    pub fn transmission(&self) -> f64 {
        transmission_from_db(self.loss_db())
    }
}

pub fn transmission_from_db(loss_db: f64) -> f64 {
    10f64.powf(-loss_db / 10.0)
}

/// Outcome of checking one span against the constant-entropy picture.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpanAudit {
    pub transmission: f64,
    pub pattern_preserved: bool,
    /// `s(g n) - s(n)` for one occupied pulse; never positive.
    pub delta_s_per_occupied_pulse: f64,
    pub temperature_before: Option<f64>,
    pub temperature_after: Option<f64>,
    /// `|ΔS|` per pulse within the configured tolerance.
    pub classical_adiabatic: bool,
}

pub fn transmit(train: &PulseTrain, span: &FiberSpan) -> PulseTrain {
    train.with_occupancy(train.occupancy() * span.transmission())
}

/// Pulse temperature after a span of transmission `g`.
pub fn temperature_after_span(nu: f64, n: f64, g: f64, units: &UnitSystem) -> Result<f64> {
    if !(g > 0.0 && g <= 1.0) {
        return Err(domain("transmission", g));
    }
    if n == 0.0 {
        return Err(Error::UndefinedTemperature);
    }
    thermo::temperature_from_occupancy(nu, g * n, units)
}

/// Compares a train before and after a span. `tolerance` is in J/K (or
/// `k_B` units in the natural system) per occupied pulse.
pub fn adiabatic_audit(
    before: &PulseTrain,
    after: &PulseTrain,
    tolerance: f64,
    units: &UnitSystem,
) -> Result<SpanAudit> {
    if before.len() != after.len() {
        return Err(Error::LengthMismatch {
            left: before.len(),
            right: after.len(),
        });
    }
    let n_before = before.occupancy();
    let n_after = after.occupancy();
    let pattern_preserved = before.pattern() == after.pattern()
        && before
            .slot_occupancies()
            .zip(after.slot_occupancies())
            .all(|(a, b)| (a == 0.0) == (b == 0.0));
    // written as a difference of shortfalls to keep precision near saturation
    let delta = units.boltzmann
        * (thermo::entropy_shortfall(n_before) - thermo::entropy_shortfall(n_after));
    let delta = if n_after <= n_before {
        delta.min(0.0)
    } else {
        delta
    };
    let nu = before.frequency();
    Ok(SpanAudit {
        transmission: if n_before > 0.0 {
            n_after / n_before
        } else {
            1.0
        },
        pattern_preserved,
        delta_s_per_occupied_pulse: delta,
        temperature_before: thermo::temperature_from_occupancy(nu, n_before, units).ok(),
        temperature_after: thermo::temperature_from_occupancy(nu, n_after, units).ok(),
        classical_adiabatic: delta.abs() <= tolerance,
    })
}
