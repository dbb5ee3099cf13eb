//! Command-line front end. Exit codes: 0 ok, 2 invalid scenario (or a
//! computation precondition the scenario fails), 3 Morse relation violation,
//! 4 I/O failure.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use conemorse_cli::{develop_svg, flow_batch, morse_pipeline, parse_scenario, Scenario};
use conemorse_cli::pipeline::enumerate;
use conemorse_cli::report;

const EXIT_SCENARIO: u8 = 2;
const EXIT_VIOLATION: u8 = 3;
const EXIT_IO: u8 = 4;

#[derive(Parser)]
#[command(
    name = "conemorse",
    version,
    about = "Geodesics, energy flow, and Morse data on flat cone surfaces"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate geodesics and write the table
    Geodesics(RunArgs),
    /// Flow sampled paths to critical points and report basins
    Flow(RunArgs),
    /// Full pipeline: flow, sampled complex, persistence, Morse relation
    Morse(RunArgs),
    /// Draw the developed sector with chords and the broken line
    DevelopSvg(RunArgs),
}

#[derive(Args)]
struct RunArgs {
    /// Scenario file (line-oriented key = value, angles in radians)
    #[arg(long)]
    scenario: PathBuf,
    /// Output directory (default: scenario's out_dir, then ./out)
    #[arg(long)]
    out: Option<PathBuf>,
    /// Override the scenario seed
    #[arg(long)]
    seed: Option<u64>,
    /// Override the scenario sample count
    #[arg(long)]
    samples: Option<usize>,
    /// Override the Rips scale
    #[arg(long)]
    rips_scale: Option<f64>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (args, run): (&RunArgs, fn(&Scenario, &Path) -> ExitCode) = match &cli.command {
        Command::Geodesics(a) => (a, cmd_geodesics),
        Command::Flow(a) => (a, cmd_flow),
        Command::Morse(a) => (a, cmd_morse),
        Command::DevelopSvg(a) => (a, cmd_develop_svg),
    };

    let text = match fs::read_to_string(&args.scenario) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("cannot read {}: {e}", args.scenario.display());
            return ExitCode::from(EXIT_IO);
        }
    };
    let mut scenario = match parse_scenario(&text) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("{e}");
            return ExitCode::from(EXIT_SCENARIO);
        }
    };
    if let Some(seed) = args.seed {
        scenario.seed = seed;
    }
    if let Some(samples) = args.samples {
        if samples == 0 {
            eprintln!("--samples must be at least 1");
            return ExitCode::from(EXIT_SCENARIO);
        }
        scenario.samples = samples;
    }
    if let Some(scale) = args.rips_scale {
        if !(scale > 0.0) || !scale.is_finite() {
            eprintln!("--rips-scale must be positive and finite, got {scale}");
            return ExitCode::from(EXIT_SCENARIO);
        }
        scenario.rips_scale = Some(scale);
    }

    let out_dir = args
        .out
        .clone()
        .or_else(|| scenario.out_dir.clone())
        .unwrap_or_else(|| PathBuf::from("out"));
    if let Err(e) = fs::create_dir_all(&out_dir) {
        eprintln!("cannot create {}: {e}", out_dir.display());
        return ExitCode::from(EXIT_IO);
    }

    run(&scenario, &out_dir)
}

fn write_file(dir: &Path, name: &str, content: &str) -> Result<(), ExitCode> {
    let path = dir.join(name);
    fs::write(&path, content).map_err(|e| {
        eprintln!("cannot write {}: {e}", path.display());
        ExitCode::from(EXIT_IO)
    })
}

fn cmd_geodesics(scenario: &Scenario, out_dir: &Path) -> ExitCode {
    let enumeration = match enumerate(scenario) {
        Ok(e) => e,
        Err(e) => {
            eprintln!("{e}");
            return ExitCode::from(EXIT_SCENARIO);
        }
    };
    let table = report::geodesics_tsv(&enumeration);
    print!("{table}");
    match write_file(out_dir, "geodesics.tsv", &table) {
        Ok(()) => ExitCode::SUCCESS,
        Err(code) => code,
    }
}

fn cmd_flow(scenario: &Scenario, out_dir: &Path) -> ExitCode {
    let enumeration = match enumerate(scenario) {
        Ok(e) => e,
        Err(e) => {
            eprintln!("{e}");
            return ExitCode::from(EXIT_SCENARIO);
        }
    };
    let batch = match flow_batch(scenario, &enumeration) {
        Ok(b) => b,
        Err(e) => {
            eprintln!("{e}");
            return ExitCode::from(EXIT_SCENARIO);
        }
    };
    let text = report::flow_text(scenario, &enumeration, &batch);
    print!("{text}");
    if batch.unresolved > 0 {
        eprintln!("warning: {} limits did not classify", batch.unresolved);
    }
    if batch.unconverged > 0 {
        eprintln!(
            "warning: {} flows hit the sweep limit before converging",
            batch.unconverged
        );
    }
    let result = write_file(out_dir, "flow_samples.tsv", &report::flow_tsv(&batch))
        .and_then(|()| write_file(out_dir, "flow_report.txt", &text));
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(code) => code,
    }
}

fn cmd_morse(scenario: &Scenario, out_dir: &Path) -> ExitCode {
    let output = match morse_pipeline(scenario) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("{e}");
            return ExitCode::from(EXIT_SCENARIO);
        }
    };
    print!("{}", report::morse_summary(&output));
    let result = write_file(out_dir, "morse_report.txt", &report::morse_text(scenario, &output))
        .and_then(|()| write_file(out_dir, "persistence.tsv", &report::persistence_tsv(&output.pairs)))
        .and_then(|()| write_file(out_dir, "geodesics.tsv", &report::geodesics_tsv(&output.enumeration)));
    if let Err(code) = result {
        return code;
    }
    if output.report.holds() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_VIOLATION)
    }
}

fn cmd_develop_svg(scenario: &Scenario, out_dir: &Path) -> ExitCode {
    let svg = match develop_svg(scenario) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("{e}");
            return ExitCode::from(EXIT_SCENARIO);
        }
    };
    match write_file(out_dir, "develop.svg", &svg) {
        Ok(()) => {
            println!("{}", out_dir.join("develop.svg").display());
            ExitCode::SUCCESS
        }
        Err(code) => code,
    }
}
