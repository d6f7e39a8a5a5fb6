//! `wishart-appt` command-line experiments.
//!
//! Exit codes: 0 on success, 2 for invalid configuration, 3 for numerical
//! failures. Trial parallelism follows `RAYON_NUM_THREADS`.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use wishart_appt::experiments::{
    cmd_appt_scan, cmd_constants, cmd_extremal, cmd_moments, cmd_spectrum_containment, ApptScanConfig,
    ConstantsConfig, ContainmentConfig, CsvTable, ExperimentReport, ExtremalConfig, MomentsConfig,
};
use wishart_appt::Error;

#[derive(Parser)]
#[command(name = "wishart-appt", version, about = "Centered Wishart moments, extremal eigenvalues and APPT thresholds")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Empirical moments (1/d) tr Z^p against the exact formula.
    Moments {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        s: usize,
        /// Moment orders, comma separated.
        #[arg(long, value_delimiter = ',', default_value = "2,3,4")]
        p: Vec<usize>,
        #[arg(long, default_value_t = 2000)]
        trials: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Largest and smallest eigenvalues of Z.
    Extremal {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        s: usize,
        #[arg(long, default_value_t = 50)]
        trials: usize,
        /// Half-width of the windows around ±2.
        #[arg(long, default_value_t = 0.2)]
        eps: f64,
        #[command(flatten)]
        common: Common,
    },
    /// APPT verdict frequencies of induced states over a grid of s.
    ApptScan {
        #[arg(long)]
        d1: usize,
        #[arg(long)]
        d2: usize,
        /// Environment dimensions, comma separated.
        #[arg(long, value_delimiter = ',', required_unless_present = "s", conflicts_with = "s")]
        s_grid: Vec<usize>,
        /// A single environment dimension.
        #[arg(long)]
        s: Option<usize>,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        /// Extra points spent refining the frequency-1/2 crossing.
        #[arg(long, default_value_t = 6)]
        bisection_steps: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Fraction of induced states whose spectrum lies near 1/d.
    Containment {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        s: usize,
        #[arg(long, default_value_t = 200)]
        trials: usize,
        #[arg(long, default_value_t = 0.2, allow_negative_numbers = true)]
        eps: f64,
        #[command(flatten)]
        common: Common,
    },
    /// C_tau table, fixed-p thresholds and s0 brackets.
    Constants {
        /// Threshold orders, comma separated.
        #[arg(long, value_delimiter = ',')]
        p: Vec<usize>,
        /// Add the shape d1 x d2 to the s0 table.
        #[arg(long, requires = "d2")]
        d1: Option<usize>,
        #[arg(long, requires = "d1")]
        d2: Option<usize>,
        #[command(flatten)]
        output: Output,
    },
}

#[derive(Args)]
struct Common {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct Output {
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

enum Failure {
    Config(String),
    Numerical(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_numerical() {
            Failure::Numerical(e.to_string())
        } else {
            Failure::Config(e.to_string())
        }
    }
}

fn emit<C, R, A>(report: &ExperimentReport<C, R, A>, output: &Output) -> Result<(), Failure>
where
    C: Serialize,
    R: Serialize,
    A: Serialize,
    ExperimentReport<C, R, A>: CsvTable,
{
    let sink: Box<dyn Write> = match &output.out {
        Some(path) => Box::new(
            File::create(path).map_err(|e| Failure::Config(format!("cannot write {}: {e}", path.display())))?,
        ),
        None => Box::new(io::stdout().lock()),
    };
    let io_err = |e: &dyn std::fmt::Display| Failure::Config(format!("output failed: {e}"));
    match output.format {
        Format::Json => {
            let mut w = BufWriter::new(sink);
            writeln!(w, "{}", report.to_json()).map_err(|e| io_err(&e))?;
            w.flush().map_err(|e| io_err(&e))?;
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(sink);
            w.write_record(report.csv_header()).map_err(|e| io_err(&e))?;
            for row in report.csv_rows() {
                w.write_record(row).map_err(|e| io_err(&e))?;
            }
            w.flush().map_err(|e| io_err(&e))?;
        }
    }
    Ok(())
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Moments {
            d,
            s,
            p,
            trials,
            common,
        } => emit(&cmd_moments(&MomentsConfig::new(d, s, p, trials, common.seed))?, &common.output),
        Command::Extremal {
            d,
            s,
            trials,
            eps,
            common,
        } => {
            let config = ExtremalConfig {
                d,
                s,
                trials,
                seed: common.seed,
                eps,
            };
            emit(&cmd_extremal(&config)?, &common.output)
        }
        Command::ApptScan {
            d1,
            d2,
            s_grid,
            s,
            trials,
            bisection_steps,
            common,
        } => {
            let grid = s.map(|s| vec![s]).unwrap_or(s_grid);
            let mut config = ApptScanConfig::new(d1, d2, grid, trials, common.seed);
            config.bisection_steps = bisection_steps;
            emit(&cmd_appt_scan(&config)?, &common.output)
        }
        Command::Containment {
            d,
            s,
            trials,
            eps,
            common,
        } => {
            let config = ContainmentConfig {
                d,
                s,
                trials,
                seed: common.seed,
                eps,
            };
            emit(&cmd_spectrum_containment(&config)?, &common.output)
        }
        Command::Constants { p, d1, d2, output } => {
            let mut config = ConstantsConfig::default();
            if !p.is_empty() {
                config.p_values = p;
            }
            if let (Some(d1), Some(d2)) = (d1, d2) {
                config.shapes.push((d1, d2));
            }
            emit(&cmd_constants(&config)?, &output)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Config(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Numerical(msg)) => {
            eprintln!("numerical failure: {msg}");
            ExitCode::from(3)
        }
    }
}
