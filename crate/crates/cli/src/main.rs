use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};

use qstep_cli::config::{inclusive_grid, FigurePreset, PanelSet, SweepConfig, WEntry};
use qstep_cli::report::point_report;
use qstep_cli::sweep::{run_sweep, run_with_configured_threads};
use qstep_core::StepPotential;

#[derive(Parser)]
#[command(
    name = "qstep",
    version,
    about = "Dirac plane-wave scattering at a quaternionic potential step"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate one (E, potential) point and print a report.
    Point(PointArgs),
    /// Sweep an energy grid and write a CSV file (optionally an SVG chart).
    Sweep(SweepArgs),
    /// Preset sweep of the reflection rates (V0 = 3m, |W0| = 0,1,2,3 m).
    Fig1(FigArgs),
    /// Preset sweep of the transmission rates.
    Fig2(FigArgs),
    /// Preset sweep of the flux balance.
    Fig3(FigArgs),
    /// Preset sweep of the group velocities.
    Fig4(FigArgs),
}

#[derive(Args)]
struct PotentialArgs {
    /// Particle mass m.
    #[arg(long = "m", default_value_t = 1.0)]
    mass: f64,
    /// Complex component V0 of the step (must be >= 0).
    #[arg(long = "V0")]
    v0: f64,
}

#[derive(Args)]
struct PointArgs {
    #[command(flatten)]
    potential: PotentialArgs,
    /// Quaternionic magnitude |W0| (phase 0). Alternative: --V1 with --V2.
    #[arg(long = "W0", conflicts_with_all = ["v1", "v2"])]
    w0: Option<f64>,
    /// j component V1 of the step (requires --V2).
    #[arg(long = "V1", requires = "v2")]
    v1: Option<f64>,
    /// k component V2 of the step (requires --V1).
    #[arg(long = "V2", requires = "v1")]
    v2: Option<f64>,
    /// Incident energy E (absolute, same units as m).
    #[arg(long = "E")]
    energy: f64,
    /// Flux-conservation gate: exit code 2 if exceeded.
    #[arg(long = "tol", default_value_t = 1e-10)]
    tol: f64,
}

#[derive(Args)]
struct SweepArgs {
    #[command(flatten)]
    potential: PotentialArgs,
    /// Comma-separated W0 entries: magnitudes (`2`) or components (`1:0.5`).
    #[arg(long = "W0", value_delimiter = ',', required = true)]
    w0: Vec<String>,
    /// Lower edge of the E/m grid (must exceed 1).
    #[arg(long = "emin")]
    emin: f64,
    /// Upper edge of the E/m grid.
    #[arg(long = "emax")]
    emax: f64,
    /// Number of grid points (>= 2).
    #[arg(long = "steps")]
    steps: usize,
    /// Output CSV path.
    #[arg(long = "out")]
    out: PathBuf,
    /// Optional SVG chart path.
    #[arg(long = "svg")]
    svg: Option<PathBuf>,
    /// Flux-conservation gate: exit code 2 if exceeded.
    #[arg(long = "tol", default_value_t = 1e-10)]
    tol: f64,
}

#[derive(Args)]
struct FigArgs {
    /// Directory that receives <fig>.csv and <fig>.svg.
    #[arg(long = "out-dir")]
    out_dir: PathBuf,
    /// Number of energy grid points over (1, 10].
    #[arg(long = "steps", default_value_t = 2000)]
    steps: usize,
    /// Flux-conservation gate: exit code 2 if exceeded.
    #[arg(long = "tol", default_value_t = 1e-10)]
    tol: f64,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err)
            if matches!(
                err.kind(),
                ErrorKind::DisplayHelp
                    | ErrorKind::DisplayVersion
                    | ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand
            ) =>
        {
            print!("{err}");
            return ExitCode::SUCCESS;
        }
        Err(err) => {
            eprint!("{err}");
            return ExitCode::from(1);
        }
    };

    let code = match cli.command {
        Command::Point(args) => run_point(args),
        Command::Sweep(args) => run_sweep_command(args),
        Command::Fig1(args) => run_fig(FigurePreset::Fig1, args),
        Command::Fig2(args) => run_fig(FigurePreset::Fig2, args),
        Command::Fig3(args) => run_fig(FigurePreset::Fig3, args),
        Command::Fig4(args) => run_fig(FigurePreset::Fig4, args),
    };
    ExitCode::from(code)
}

fn run_point(args: PointArgs) -> u8 {
    let (v1, v2) = match (args.w0, args.v1, args.v2) {
        (Some(w), _, _) => (0.0, w),
        (None, Some(v1), Some(v2)) => (v1, v2),
        _ => (0.0, 0.0),
    };
    let pot = match StepPotential::new(args.potential.v0, v1, v2) {
        Ok(pot) => pot,
        Err(err) => {
            eprintln!("qstep: {err}");
            return 1;
        }
    };
    if !(args.tol.is_finite() && args.tol > 0.0) {
        eprintln!("qstep: tolerance must be positive (tol = {})", args.tol);
        return 1;
    }
    match point_report(args.potential.mass, &pot, args.energy) {
        Ok(outcome) => {
            print!("{}", outcome.text);
            if outcome.flux_residual.abs() > args.tol {
                eprintln!(
                    "qstep: flux residual {:e} exceeds tolerance {:e}",
                    outcome.flux_residual, args.tol
                );
                2
            } else {
                0
            }
        }
        Err(err) => {
            eprintln!("qstep: {err}");
            1
        }
    }
}

fn run_sweep_command(args: SweepArgs) -> u8 {
    if args.steps < 2 {
        eprintln!("qstep: --steps must be at least 2");
        return 1;
    }
    if !(args.emin > 1.0 && args.emax > args.emin) {
        eprintln!("qstep: energy grid must satisfy 1 < emin < emax");
        return 1;
    }
    let mut entries = Vec::new();
    for raw in &args.w0 {
        match WEntry::parse(raw) {
            Ok(entry) => entries.push(entry),
            Err(err) => {
                eprintln!("qstep: {err}");
                return 1;
            }
        }
    }
    let cfg = SweepConfig {
        mass: args.potential.mass,
        v0: args.potential.v0,
        w_entries: entries,
        energies_over_m: inclusive_grid(args.emin, args.emax, args.steps),
        out: args.out,
        svg: args.svg,
        tol: args.tol,
        panels: PanelSet::Full,
    };
    execute_sweep(cfg)
}

fn run_fig(preset: FigurePreset, args: FigArgs) -> u8 {
    if args.steps < 2 {
        eprintln!("qstep: --steps must be at least 2");
        return 1;
    }
    if let Err(err) = std::fs::create_dir_all(&args.out_dir) {
        eprintln!("qstep: cannot create {}: {err}", args.out_dir.display());
        return 1;
    }
    let cfg = preset.config(&args.out_dir, args.steps, args.tol);
    execute_sweep(cfg)
}

fn execute_sweep(cfg: SweepConfig) -> u8 {
    if let Err(err) = cfg.validate() {
        eprintln!("qstep: {err}");
        return 1;
    }
    match run_with_configured_threads(|| run_sweep(&cfg)) {
        Ok(outcome) => {
            println!(
                "wrote {} rows to {} ({} error rows, max flux residual {:e})",
                outcome.rows_written,
                cfg.out.display(),
                outcome.error_rows,
                outcome.max_flux_residual
            );
            if outcome.max_flux_residual > cfg.tol {
                eprintln!(
                    "qstep: max flux residual {:e} exceeds tolerance {:e}",
                    outcome.max_flux_residual, cfg.tol
                );
                2
            } else {
                0
            }
        }
        Err(err) => {
            eprintln!("qstep: {err}");
            1
        }
    }
}
