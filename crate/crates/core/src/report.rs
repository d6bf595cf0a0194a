//! Machine-readable renderings of ledgers and placement sweeps.
//!
//! CSV numbers are written with 17 significant digits; JSON numbers use the
//! shortest representation that round-trips. Both are byte-stable for equal
//! inputs.

use crate::error::{Error, Result};
use crate::link::{Ledger, StageKind, SweepRow};

pub const STAGE_CSV_HEADER: [&str; 9] = [
    "stage_index",
    "kind",
    "q_in",
    "q_out",
    "work",
    "t_cold",
    "t_hot",
    "delta_s_stage",
    "cumulative_delta_s_universe",
];

/// 17 significant digits, scientific notation.
pub fn fmt_exact(x: f64) -> String {
    format!("{x:.16e}")
}

fn fmt_opt(x: Option<f64>) -> String {
    x.map(fmt_exact).unwrap_or_default()
}

pub fn ledger_json(ledger: &Ledger) -> Result<String> {
    let mut s = serde_json::to_string_pretty(ledger)
        .map_err(|e| Error::InvalidConfig(format!("ledger serialization: {e}")))?;
    s.push('\n');
    Ok(s)
}

fn csv_error(e: impl std::fmt::Display) -> Error {
    Error::InvalidConfig(format!("csv: {e}"))
}

fn finish(writer: csv::Writer<Vec<u8>>) -> Result<String> {
    let bytes = writer.into_inner().map_err(csv_error)?;
    String::from_utf8(bytes).map_err(csv_error)
}

pub fn stage_csv(ledger: &Ledger) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(STAGE_CSV_HEADER).map_err(csv_error)?;
    for stage in &ledger.stages {
        let kind = match stage.kind {
            StageKind::Span => "span",
            StageKind::Amplifier => "amplifier",
        };
        w.write_record([
            stage.index.to_string(),
            kind.to_string(),
            fmt_exact(stage.energy_in),
            fmt_exact(stage.energy_out),
            fmt_exact(stage.work),
            fmt_opt(stage.t_cold),
            fmt_opt(stage.t_hot),
            fmt_exact(stage.delta_s),
            fmt_exact(stage.cumulative_delta_s),
        ])
        .map_err(csv_error)?;
    }
    finish(w)
}

pub fn sweep_csv(rows: &[SweepRow]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record([
        "amplifiers",
        "span_loss_db",
        "transmission",
        "feasible",
        "min_occupancy",
        "work_total",
        "work_classical",
    ])
    .map_err(csv_error)?;
    for r in rows {
        w.write_record([
            r.amplifiers.to_string(),
            fmt_exact(r.span_loss_db),
            fmt_exact(r.transmission),
            r.feasible.to_string(),
            fmt_exact(r.min_occupancy),
            fmt_exact(r.work_total),
            fmt_exact(r.work_classical),
        ])
        .map_err(csv_error)?;
    }
    finish(w)
}
