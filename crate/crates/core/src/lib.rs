//! Thermodynamic accounting for binary data sent as single-mode light pulses
//! over lossy fiber.
//!
//! A logical bit file becomes a [`PulseTrain`]: occupied modes for ones and
//! empty modes for zeros. Each occupied mode carries a blackbody-equivalent
//! temperature and entropy ([`thermo`]). Fiber spans scale the occupancy
//! ([`channel`]), amplifiers restore it through a four-stroke Carnot cycle
//! ([`carnot`]), and [`link`] chains both into a ledger that is audited
//! against the second law.

pub mod carnot;
pub mod channel;
pub mod error;
pub mod file_model;
pub mod link;
pub mod report;
pub mod thermo;

pub use carnot::{AmplifierModel, CycleRecord, Stroke, StrokeKind};
pub use channel::{FiberSpan, SpanAudit};
pub use error::{Error, Result};
pub use file_model::{BitFile, EntropyConvention, FileThermoState, InformationMeasure, PulseTrain};
pub use link::{FileSource, Ledger, PlacementResult, SimulationConfig, Stage, StageKind, SweepRow};
pub use thermo::{PhotonMode, PulseThermo, UnitKind, UnitSystem};
