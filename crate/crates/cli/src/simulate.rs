use photon_ledger_core::link::{run as run_link, second_law_audit};
use photon_ledger_core::report::{ledger_json, stage_csv};
use photon_ledger_core::{Error, SimulationConfig};

use crate::args::{GlobalArgs, SimulateArgs};
use crate::outcome::{
    load_json, sig6, write_report, CliError, CliResult, CommandOutcome, EXIT_AUDIT, EXIT_OK,
};

pub fn run(global: &GlobalArgs, args: &SimulateArgs) -> CliResult {
    let mut config: SimulationConfig = load_json(&args.config)?;
    if let Some(units) = global.units {
        config.units = units.into();
    }
    if let Some(seed) = global.seed {
        config.seed = seed;
    }
    config
        .validate()
        .map_err(|e| CliError::Input(format!("{}: {e}", args.config.display())))?;

    let ledger = run_link(&config).map_err(|e| match e {
        Error::Simulation { stage, reason } => {
            CliError::Audit(format!("simulation failed at stage {stage}: {reason}"))
        }
        other => CliError::Input(other.to_string()),
    })?;
    let audit = second_law_audit(&ledger);

    println!(
        "file                 {} bits, {} pulses, seed {} ({})",
        ledger.file_length, ledger.occupied_pulses, ledger.seed, ledger.rng
    );
    println!("stages               {}", ledger.stages.len());
    println!("launch energy        {}", sig6(ledger.launch_energy));
    println!("W_total              {}", sig6(ledger.totals.work));
    println!(
        "heat dissipated      {}",
        sig6(ledger.totals.heat_dissipated)
    );
    println!(
        "dS_universe          {}",
        sig6(ledger.totals.delta_s_universe)
    );
    println!(
        "span entropy drift   {}",
        sig6(ledger.totals.span_entropy_drift)
    );
    println!(
        "max deficiency       {}",
        sig6(ledger.totals.deficiency_max)
    );
    for stage in &ledger.stages {
        if let Some(c) = &stage.cycle {
            println!(
                "amplifier @ stage {:<3} W/Q_H {:.6}  carnot {:.6}  W/Q_C {:.6}  dS {}",
                stage.index,
                c.ratio_w_over_qh,
                c.carnot_value,
                c.ratio_w_over_qc,
                sig6(c.delta_s_total)
            );
        }
    }
    println!(
        "second law           {} (margin {})",
        if audit.pass { "pass" } else { "FAIL" },
        sig6(audit.margin)
    );
    println!(
        "integrity            {} (min occupancy {}, pattern {})",
        if ledger.integrity { "ok" } else { "LOST" },
        sig6(ledger.min_occupancy),
        if ledger.pattern_preserved {
            "preserved"
        } else {
            "changed"
        }
    );

    let dir = global.out_dir.clone().unwrap_or_else(|| ".".into());
    let json = ledger_json(&ledger).map_err(|e| CliError::Input(e.to_string()))?;
    let csv = stage_csv(&ledger).map_err(|e| CliError::Input(e.to_string()))?;
    let reports = vec![
        write_report(&dir, "ledger.json", &json)?,
        write_report(&dir, "stages.csv", &csv)?,
    ];
    let code = if audit.pass && ledger.integrity {
        EXIT_OK
    } else {
        EXIT_AUDIT
    };
    Ok(CommandOutcome { code, reports })
}
