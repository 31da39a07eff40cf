//! Command-line surface. One command per invocation; exit codes are
//! 0 success, 1 usage, 2 validation/infeasibility, 3 internal.

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};
use vrpstw_core::compare::{compare, ComparisonRow};
use vrpstw_core::{baseline, ga, oracle, DistanceMatrix, GaConfig, Instance, Metric, Solution};

use crate::batch::{batch_orders, BatchSpec};
use crate::error::{CliError, Result};
use crate::format::{self, InstanceFile};
use crate::generate::{generate_instance, WindowStyle};
use crate::report::{render_comparison, OutputFormat, SolveReport};
use crate::svg::emit_route_svg;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MetricArg {
    Euclidean,
    Manhattan,
}

impl From<MetricArg> for Metric {
    fn from(m: MetricArg) -> Self {
        match m {
            MetricArg::Euclidean => Metric::Euclidean,
            MetricArg::Manhattan => Metric::Manhattan,
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "vrpstw",
    version,
    about = "Meal-delivery route optimizer with soft time windows"
)]
struct Cli {
    /// Random seed; overrides the seed from --config.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Distance metric for all computations.
    #[arg(long, global = true, value_enum, default_value_t = MetricArg::Euclidean)]
    metric: MetricArg,
    /// JSON file with solver parameters (population_size, max_generations,
    /// crossover_rate, mutation_rate, tournament_size, elitism_count, seed,
    /// stall_generations); missing fields take defaults.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Output format for result rows and reports.
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Text)]
    format: OutputFormat,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Generate a random instance file.
    Gen {
        /// Number of customers.
        #[arg(short = 'n', long)]
        customers: usize,
        /// Half-width of the coordinate square around the merchant.
        #[arg(long, default_value_t = 10.0)]
        spread: f64,
        /// Delivery window style.
        #[arg(long, value_enum, default_value_t = WindowStyle::Mixed)]
        window_style: WindowStyle,
        /// Output path; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Solve an instance with the genetic algorithm.
    Solve { instance: PathBuf },
    /// Solve an instance with the closed-route nearest-neighbor baseline.
    Baseline { instance: PathBuf },
    /// Solve a small instance exactly by exhaustive search.
    Oracle {
        instance: PathBuf,
        /// Customer cap for the exhaustive search.
        #[arg(long, default_value_t = vrpstw_core::DEFAULT_ORACLE_CAP)]
        max_customers: usize,
        /// Search closed (return-to-merchant) routes instead of open ones.
        #[arg(long)]
        closed: bool,
    },
    /// Split orders into per-slot, per-merchant sub-instances.
    Batch {
        instance: PathBuf,
        /// Slot length in minutes.
        #[arg(long)]
        slot: f64,
        /// Horizon start, minutes from midnight.
        #[arg(long, default_value_t = crate::generate::HORIZON_START_MIN)]
        start: f64,
        /// Horizon end (exclusive), minutes from midnight.
        #[arg(long, default_value_t = crate::generate::HORIZON_END_MIN)]
        end: f64,
        /// Directory to write one instance file per batch.
        #[arg(long)]
        out_dir: Option<PathBuf>,
        /// Replace the instance's orders with rows from this CSV
        /// (header: id,merchant_id,x,y,quantity,a,b,c,placed_at).
        #[arg(long)]
        orders_csv: Option<PathBuf>,
    },
    /// Run baseline and solver on instances and report improvements.
    Compare {
        #[arg(required = true)]
        instances: Vec<PathBuf>,
    },
    /// Render a solution as an SVG route map.
    Plot {
        instance: PathBuf,
        /// Output SVG path.
        #[arg(long)]
        out: PathBuf,
        /// Which solver's solution to draw.
        #[arg(long, value_enum, default_value_t = PlotSolver::Ga)]
        solver: PlotSolver,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum PlotSolver {
    Ga,
    Baseline,
    Oracle,
}

/// Parses arguments and runs one command, returning the process exit code.
pub fn run_cli<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            print!("{e}");
            return 0;
        }
        Err(e) => {
            eprint!("{e}");
            return 1;
        }
    };
    match execute(cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn ga_config(config_path: Option<&Path>, seed: Option<u64>) -> Result<GaConfig> {
    let mut config = match config_path {
        Some(path) => {
            let text = fs::read_to_string(path)
                .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
            serde_json::from_str(&text).map_err(|e| {
                CliError::Input(format!("bad solver config {}: {e}", path.display()))
            })?
        }
        None => GaConfig::default(),
    };
    if let Some(seed) = seed {
        config.seed = seed;
    }
    Ok(config)
}

fn instance_id(instance: &Instance) -> &str {
    &instance.merchants[0].id
}

fn execute(cli: Cli) -> Result<()> {
    let metric: Metric = cli.metric.into();
    match cli.command {
        Command::Gen {
            customers,
            spread,
            window_style,
            out,
        } => {
            let file = generate_instance(cli.seed.unwrap_or(0), customers, spread, window_style)?;
            match out {
                Some(path) => format::save_instance_file(&file, &path)?,
                None => print!("{}", file.to_json()),
            }
            Ok(())
        }
        Command::Solve { instance } => {
            let inst = format::load_instance(&instance)?;
            let config = ga_config(cli.config.as_deref(), cli.seed)?;
            let result = ga::solve(&inst, &config, metric)?;
            let dm = DistanceMatrix::build(&inst, metric);
            let report = SolveReport::new(
                instance_id(&inst),
                "ga",
                &result.best,
                &inst,
                &dm,
                Some(result.generations_run),
            )?;
            print!("{}", report.render(cli.format));
            Ok(())
        }
        Command::Baseline { instance } => {
            let inst = format::load_instance(&instance)?;
            let solution = baseline::baseline_solve(&inst, metric)?;
            print_solution_report(&inst, "baseline", &solution, metric, cli.format)
        }
        Command::Oracle {
            instance,
            max_customers,
            closed,
        } => {
            let inst = format::load_instance(&instance)?;
            let solution = oracle::oracle_solve(&inst, metric, max_customers, closed)?;
            print_solution_report(&inst, "oracle", &solution, metric, cli.format)
        }
        Command::Batch {
            instance,
            slot,
            start,
            end,
            out_dir,
            orders_csv,
        } => {
            let mut file = format::load_instance_file(&instance)?;
            if let Some(csv_path) = orders_csv {
                let text = fs::read_to_string(&csv_path).map_err(|e| {
                    CliError::Input(format!("cannot read {}: {e}", csv_path.display()))
                })?;
                file.orders = format::orders_from_csv(&text)?;
            }
            let inst = file.to_instance()?;
            let spec = BatchSpec {
                slot_length: slot,
                horizon_start: start,
                horizon_end: end,
            };
            let (subs, rejects) = batch_orders(&inst, &spec)?;
            if let Some(dir) = &out_dir {
                fs::create_dir_all(dir).map_err(|e| {
                    CliError::Internal(format!("cannot create {}: {e}", dir.display()))
                })?;
            }
            for sub in &subs {
                let line = format!(
                    "slot {} (start {}) merchant {}: {} orders",
                    sub.slot,
                    sub.slot_start,
                    sub.merchant_id,
                    sub.instance.orders.len()
                );
                match &out_dir {
                    Some(dir) => {
                        let path = dir.join(format!("{}.json", sub.label()));
                        format::save_instance_file(
                            &InstanceFile::from_instance(&sub.instance),
                            &path,
                        )?;
                        println!("{line} -> {}", path.display());
                    }
                    None => println!("{line}"),
                }
            }
            for reject in &rejects {
                println!("rejected: order {} ({})", reject.order_id, reject.reason);
            }
            Ok(())
        }
        Command::Compare { instances } => {
            let config = ga_config(cli.config.as_deref(), cli.seed)?;
            let mut rows: Vec<ComparisonRow> = Vec::with_capacity(instances.len());
            for path in &instances {
                let inst = format::load_instance(path)?;
                rows.push(compare(&inst, &config, metric)?);
            }
            rows.sort_by(|a, b| a.instance_id.cmp(&b.instance_id));
            print!("{}", render_comparison(&rows, cli.format));
            Ok(())
        }
        Command::Plot {
            instance,
            out,
            solver,
        } => {
            let inst = format::load_instance(&instance)?;
            let solution = match solver {
                PlotSolver::Ga => {
                    let config = ga_config(cli.config.as_deref(), cli.seed)?;
                    ga::solve(&inst, &config, metric)?.best
                }
                PlotSolver::Baseline => baseline::baseline_solve(&inst, metric)?,
                PlotSolver::Oracle => {
                    oracle::oracle_solve(&inst, metric, vrpstw_core::DEFAULT_ORACLE_CAP, false)?
                }
            };
            let dm = DistanceMatrix::build(&inst, metric);
            emit_route_svg(&solution, &inst, &dm, &out)
        }
    }
}

fn print_solution_report(
    inst: &Instance,
    solver: &str,
    solution: &Solution,
    metric: Metric,
    format: OutputFormat,
) -> Result<()> {
    let dm = DistanceMatrix::build(inst, metric);
    let report = SolveReport::new(instance_id(inst), solver, solution, inst, &dm, None)?;
    print!("{}", report.render(format));
    Ok(())
}
