use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;

use braidsim::scenario::{
    parse_config, preset, run_scenario, write_output, OutputFormat, ScenarioError, to_csv, to_json,
};

/// Run a braiding experiment described by a TOML config or a named preset
/// (fig2a, fig2b, fig3a, fig4d, fig6) and write the resulting table.
#[derive(Parser, Debug)]
#[command(name = "braidsim", version, about)]
struct Cli {
    /// Scenario name (spectrum, evolve, kscan, phasescan, etascan,
    /// breakprobe, qutrit, manybody, gauge) or a figure preset
    scenario: String,

    /// TOML config file; required unless a preset name is given
    #[arg(long)]
    config: Option<PathBuf>,

    /// Output file; stdout if omitted
    #[arg(long)]
    out: Option<PathBuf>,

    /// Output format
    #[arg(long, value_parser = ["csv", "json"], default_value = "csv")]
    format: String,

    /// Override the population tie tolerance used by K evaluation
    #[arg(long)]
    tol: Option<f64>,
}

fn run(cli: &Cli) -> Result<(), ScenarioError> {
    let text = if let Some(t) = preset(&cli.scenario) {
        t.to_string()
    } else {
        // not a preset: must be a plain scenario name with a config file
        match &cli.config {
            Some(path) => {
                let body = std::fs::read_to_string(path)
                    .map_err(|e| ScenarioError::Io(format!("{}: {e}", path.display())))?;
                body
            }
            None => format!("scenario = \"{}\"\n", cli.scenario),
        }
    };
    let mut cfg = parse_config(&text)?;
    if preset(&cli.scenario).is_none() {
        // config must agree with the scenario named on the command line
        let named = format!("{:?}", cfg.kind).to_lowercase();
        if named != cli.scenario {
            return Err(ScenarioError::Validation(format!(
                "scenario: command line says {:?} but config says {named:?}",
                cli.scenario
            )));
        }
    }
    if let Some(tol) = cli.tol {
        if tol <= 0.0 {
            return Err(ScenarioError::Validation(format!(
                "--tol: must be positive, got {tol}"
            )));
        }
        cfg.tie_eps = tol;
    }

    let table = run_scenario(&cfg)?;

    let format = match cli.format.as_str() {
        "json" => OutputFormat::Json,
        _ => OutputFormat::Csv,
    };
    let out = cli
        .out
        .clone()
        .or_else(|| cfg.output.as_ref().map(|(p, _)| PathBuf::from(p)));
    match out {
        Some(path) => write_output(&table, format, &path)?,
        None => {
            let text = match format {
                OutputFormat::Csv => to_csv(&table),
                OutputFormat::Json => to_json(&table),
            };
            print!("{text}");
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
