use photon_ledger_core::link::{optimize_placement, placement_sweep, PlacementProblem};
use photon_ledger_core::report::sweep_csv;

use crate::args::{GlobalArgs, OptimizeArgs};
use crate::outcome::{load_json, sig6, write_report, CliError, CliResult, CommandOutcome, EXIT_OK};

/// Sweep at least this many amplifier counts.
const MIN_SWEEP: usize = 64;

pub fn run(global: &GlobalArgs, args: &OptimizeArgs) -> CliResult {
    let mut problem: PlacementProblem = load_json(&args.config)?;
    if let Some(units) = global.units {
        problem.units = units.into();
    }
    let placement = optimize_placement(&problem).map_err(|e| CliError::Input(e.to_string()))?;
    let sweep = placement_sweep(&problem, MIN_SWEEP.max(2 * placement.amplifiers))
        .map_err(|e| CliError::Input(e.to_string()))?;
    let csv = sweep_csv(&sweep).map_err(|e| CliError::Input(e.to_string()))?;

    println!("total loss           {} dB", sig6(problem.total_loss_db()));
    println!(
        "max span loss        {} dB",
        sig6(problem.max_span_loss_db())
    );
    println!("amplifiers           {}", placement.amplifiers);
    let positions: Vec<String> = placement.positions_km.iter().map(|p| sig6(*p)).collect();
    println!("positions (km)       [{}]", positions.join(", "));
    println!("W_total per pulse    {}", sig6(placement.work_total));
    println!("W_classical          {}", sig6(placement.work_classical));
    println!("occupancy slack      {}", sig6(placement.slack));
    println!();
    print!("{csv}");

    let mut reports = vec![];
    if let Some(dir) = &global.out_dir {
        let json =
            serde_json::to_string_pretty(&placement).map_err(|e| CliError::Input(e.to_string()))?;
        reports.push(write_report(dir, "placement.json", &(json + "\n"))?);
        reports.push(write_report(dir, "sweep.csv", &csv)?);
    }
    Ok(CommandOutcome {
        code: EXIT_OK,
        reports,
    })
}
