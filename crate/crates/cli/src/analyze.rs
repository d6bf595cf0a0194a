use serde::Serialize;

use photon_ledger_core::file_model::{
    capacity_entropy, clausius_margin, entropy_deficiency, file_energy, file_entropy,
    shannon_information,
};
use photon_ledger_core::{
    BitFile, EntropyConvention, Error, FileThermoState, PulseTrain, UnitKind, UnitSystem,
};

use crate::args::{AnalyzeArgs, GlobalArgs};
use crate::outcome::{sig6, write_report, CliError, CliResult, CommandOutcome, EXIT_OK};

#[derive(Debug, Serialize)]
pub struct AnalysisReport {
    pub units: UnitKind,
    pub frequency_hz: f64,
    pub occupancy: f64,
    pub bits: usize,
    pub ones: usize,
    pub block_order: usize,
    pub info_per_symbol_nats: f64,
    pub info_per_symbol_bits: f64,
    pub info_total_nats: f64,
    pub info_total_bits: f64,
    pub capacity_entropy: f64,
    pub mixing_entropy: f64,
    pub clausius_margin: f64,
    pub file_energy: f64,
    pub temperature_nats: Option<f64>,
    pub temperature_bits: Option<f64>,
    pub entropy_deficiency: f64,
}

pub fn run(global: &GlobalArgs, args: &AnalyzeArgs) -> CliResult {
    let kind: UnitKind = global.units.map(Into::into).unwrap_or_default();
    let units = UnitSystem::from_kind(kind);
    let nu = args.frequency.unwrap_or_else(|| units.default_frequency());

    let bytes = std::fs::read(&args.file)
        .map_err(|e| CliError::Input(format!("cannot read {}: {e}", args.file.display())))?;
    let file = BitFile::from_bytes(&bytes)
        .map_err(|_| CliError::Input(format!("{} is empty", args.file.display())))?;
    let info = shannon_information(&file, args.block_order).map_err(|e| match e {
        Error::InsufficientData { order, length } => CliError::Input(format!(
            "insufficient data: block order {order} exceeds the {length} bits of {}",
            args.file.display()
        )),
        other => CliError::Input(other.to_string()),
    })?;
    let train = PulseTrain::new(file.clone(), nu, args.occupancy)
        .map_err(|e| CliError::Input(e.to_string()))?;

    let len = file.len();
    let capacity = capacity_entropy(len, &units);
    let bias = file.ones() as f64 / len as f64;
    let mixing = file_entropy(len, bias, &units).map_err(|e| CliError::Input(e.to_string()))?;
    let energy = file_energy(&train, &units);
    let report = AnalysisReport {
        units: kind,
        frequency_hz: nu,
        occupancy: args.occupancy,
        bits: len,
        ones: file.ones(),
        block_order: info.order,
        info_per_symbol_nats: info.per_symbol_nats,
        info_per_symbol_bits: info.per_symbol_bits(),
        info_total_nats: info.total_nats,
        info_total_bits: info.total_bits(),
        capacity_entropy: capacity,
        mixing_entropy: mixing,
        clausius_margin: clausius_margin(capacity, info.total_nats, &units),
        file_energy: energy,
        temperature_nats: FileThermoState::new(energy, mixing, EntropyConvention::Nats).temperature,
        temperature_bits: FileThermoState::new(energy, mixing, EntropyConvention::Bits).temperature,
        entropy_deficiency: entropy_deficiency(args.occupancy, info.total_nats, &units)
            .map_err(|e| CliError::Input(e.to_string()))?,
    };

    print_summary(&report);
    let mut outcome = CommandOutcome {
        code: EXIT_OK,
        reports: vec![],
    };
    if let Some(dir) = &global.out_dir {
        let json =
            serde_json::to_string_pretty(&report).map_err(|e| CliError::Input(e.to_string()))?;
        outcome
            .reports
            .push(write_report(dir, "analysis.json", &(json + "\n"))?);
    }
    Ok(outcome)
}

fn opt(x: Option<f64>) -> String {
    x.map(sig6).unwrap_or_else(|| "undefined".into())
}

fn print_summary(r: &AnalysisReport) {
    println!("bits                 {} ({} ones)", r.bits, r.ones);
    println!(
        "information (k={})   {} nat/symbol, {} bit/symbol",
        r.block_order,
        sig6(r.info_per_symbol_nats),
        sig6(r.info_per_symbol_bits)
    );
    println!(
        "information total    {} nat, {} bit",
        sig6(r.info_total_nats),
        sig6(r.info_total_bits)
    );
    println!("capacity entropy     {}", sig6(r.capacity_entropy));
    println!("mixing entropy       {}", sig6(r.mixing_entropy));
    println!("clausius margin      {}", sig6(r.clausius_margin));
    println!("file energy          {}", sig6(r.file_energy));
    println!("temperature (nats)   {}", opt(r.temperature_nats));
    println!("temperature (bits)   {}", opt(r.temperature_bits));
    println!(
        "entropy deficiency   {} at occupancy {}",
        sig6(r.entropy_deficiency),
        sig6(r.occupancy)
    );
}
