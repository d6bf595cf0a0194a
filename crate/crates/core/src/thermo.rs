//! Blackbody single-mode relations for a light pulse: occupancy, temperature,
//! energy and entropy of one radiation mode.
//!
//! A pulse with mean photon number `n` in a mode of frequency `ν` is assigned
//! the temperature of a blackbody emitting that occupancy into the mode:
//!
//! ```text
//! n = 1 / (exp(hν / k_B T) - 1)
//! T = hν / (k_B ln(1 + 1/n))
//! q = n hν,  s = q / T = n k_B ln(1 + 1/n)
//! ```
//!
//! The entropy saturates at `k_B` for large `n` and vanishes for an empty
//! mode. Both extremes are evaluated without cancellation.

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};

/// Planck constant, J·s (exact SI value).
pub const PLANCK_SI: f64 = 6.626_070_15e-34;
/// Boltzmann constant, J/K (exact SI value).
pub const BOLTZMANN_SI: f64 = 1.380_649e-23;

/// Above this occupancy the entropy shortfall `1 - n ln(1 + 1/n)` is taken
/// from its power series in `1/n`.
const SERIES_THRESHOLD: f64 = 1.0e3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum UnitKind {
    Si,
    #[default]
    Natural,
}

/// Values of `h` and `k_B` used by every relation in the crate.
///
/// `Natural` sets `h = k_B = 1`, so with `ν = 1` a photon carries one energy
/// unit and temperatures are expressed in energy units.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct UnitSystem {
    pub kind: UnitKind,
    pub planck: f64,
    pub boltzmann: f64,
}

impl UnitSystem {
    pub const fn si() -> Self {
        UnitSystem {
            kind: UnitKind::Si,
            planck: PLANCK_SI,
            boltzmann: BOLTZMANN_SI,
        }
    }

    pub const fn natural() -> Self {
        UnitSystem {
            kind: UnitKind::Natural,
            planck: 1.0,
            boltzmann: 1.0,
        }
    }

    pub const fn from_kind(kind: UnitKind) -> Self {
        match kind {
            UnitKind::Si => Self::si(),
            UnitKind::Natural => Self::natural(),
        }
    }

    /// Energy of one photon at frequency `nu`.
    pub fn photon_energy(&self, nu: f64) -> f64 {
        self.planck * nu
    }

    /// Conventional frequency for this unit system: 1 in natural units
    /// (so `hν = 1`), the 1550 nm telecom carrier (193.4 THz) in SI.
    pub fn default_frequency(&self) -> f64 {
        match self.kind {
            UnitKind::Natural => 1.0,
            UnitKind::Si => 1.934e14,
        }
    }
}

impl Default for UnitSystem {
    fn default() -> Self {
        Self::natural()
    }
}

/// One radiation mode: carrier frequency and mean photon occupancy.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhotonMode {
    frequency: f64,
    occupancy: f64,
}

impl PhotonMode {
    pub fn new(frequency: f64, occupancy: f64) -> Result<Self> {
        check_frequency(frequency)?;
        check_occupancy(occupancy)?;
        Ok(PhotonMode {
            frequency,
            occupancy,
        })
    }

    pub fn frequency(&self) -> f64 {
        self.frequency
    }

    pub fn occupancy(&self) -> f64 {
        self.occupancy
    }

    pub fn thermo(&self, units: &UnitSystem) -> PulseThermo {
        PulseThermo {
            energy: self.occupancy * units.photon_energy(self.frequency),
            temperature: temperature_from_occupancy(self.frequency, self.occupancy, units).ok(),
            entropy: entropy_of_valid(self.occupancy, units),
        }
    }
}

/// Energy, temperature and entropy of a single pulse. `temperature` is
/// `None` for an empty mode.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PulseThermo {
    pub energy: f64,
    pub temperature: Option<f64>,
    pub entropy: f64,
}

fn check_frequency(nu: f64) -> Result<()> {
    if nu.is_finite() && nu > 0.0 {
        Ok(())
    } else {
        Err(domain("frequency", nu))
    }
}

fn check_occupancy(n: f64) -> Result<()> {
    if n.is_finite() && n >= 0.0 {
        Ok(())
    } else {
        Err(domain("occupancy", n))
    }
}

/// Mean photon number of a mode at frequency `nu` in equilibrium at `temperature`.
///
/// Returns 0 once `hν/k_B T` is large enough that the exponential overflows.
pub fn occupancy_from_temperature(nu: f64, temperature: f64, units: &UnitSystem) -> Result<f64> {
    check_frequency(nu)?;
    if !(temperature.is_finite() && temperature > 0.0) {
        return Err(domain("temperature", temperature));
    }
    let x = units.photon_energy(nu) / (units.boltzmann * temperature);
    // past x ≈ 709.78 exp_m1 overflows to +inf and the occupancy is 0
    Ok(1.0 / x.exp_m1())
}

/// Blackbody-equivalent temperature of a mode holding `n` photons.
pub fn temperature_from_occupancy(nu: f64, n: f64, units: &UnitSystem) -> Result<f64> {
    check_frequency(nu)?;
    check_occupancy(n)?;
    if n == 0.0 {
        return Err(Error::UndefinedTemperature);
    }
    Ok(units.photon_energy(nu) / (units.boltzmann * (1.0 / n).ln_1p()))
}

/// Energy `n hν` of a pulse.
pub fn pulse_energy(nu: f64, n: f64, units: &UnitSystem) -> Result<f64> {
    check_frequency(nu)?;
    check_occupancy(n)?;
    Ok(n * units.photon_energy(nu))
}

/// Entropy `n k_B ln(1 + 1/n)` carried by a pulse; 0 for an empty mode and
/// strictly below `k_B` for every finite occupancy.
pub fn pulse_entropy(n: f64, units: &UnitSystem) -> Result<f64> {
    check_occupancy(n)?;
    Ok(entropy_of_valid(n, units))
}

fn entropy_of_valid(n: f64, units: &UnitSystem) -> f64 {
    units.boltzmann * entropy_fraction(n)
}

/// `s / k_B = n ln(1 + 1/n)`, clamped below 1 where f64 can no longer
/// resolve the shortfall.
pub(crate) fn entropy_fraction(n: f64) -> f64 {
    if n == 0.0 {
        0.0
    } else if n < SERIES_THRESHOLD {
        n * (1.0 / n).ln_1p()
    } else {
        (1.0 - entropy_shortfall(n)).min(1.0 - f64::EPSILON / 2.0)
    }
}

/// `1 - s/k_B`: how far a pulse falls short of one full `k_B` of entropy.
///
/// Equals 1 for an empty mode and decays like `1/(2n)`. Large occupancies use
/// the alternating series `Σ (-1)^(j+1) x^j / (j+1)` with `x = 1/n`, which
/// keeps full relative precision where the direct form cancels.
pub fn entropy_shortfall(n: f64) -> f64 {
    if n == 0.0 {
        return 1.0;
    }
    if n < SERIES_THRESHOLD {
        return 1.0 - n * (1.0 / n).ln_1p();
    }
    let x = 1.0 / n;
    // x <= 1e-3, so ten terms leave a remainder below x^11
    let mut sum = 0.0;
    let mut power = x;
    for j in 1..=10 {
        let term = power / (j + 1) as f64;
        if j % 2 == 1 {
            sum += term;
        } else {
            sum -= term;
        }
        power *= x;
    }
    sum
}
