use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use curvecount_core::cayley::{enumerate_ball, GenSet, DEFAULT_MEMORY_CAP};
use curvecount_core::counting::{
    count_curves, export, fit_exponent, fit_json, ratio_series, read_series_csv,
    relative_variation, verify_paper_example, write_ratio_csv, write_series_csv, ExperimentConfig,
    Exportable, FitWindow, Format,
};
use curvecount_core::stable::{stable_length, PowerSchedule};
use curvecount_core::{CyclicClass, Error, WordMetric};

const EXIT_CONFIG: u8 = 2;
const EXIT_BUDGET: u8 = 3;
const EXIT_VERIFY: u8 = 4;

#[derive(Parser)]
#[command(
    name = "curvecount",
    version,
    about = "Count curves on surfaces by word length"
)]
struct Cli {
    /// Worker threads (defaults to all cores).
    #[arg(long, global = true)]
    workers: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Cayley ball of a generating set as `word,length` CSV.
    Ball {
        #[arg(long, default_value_t = 2)]
        rank: usize,
        /// Comma-separated words; inverses are added.
        #[arg(long, value_delimiter = ',', required = true)]
        gens: Vec<String>,
        #[arg(long)]
        radius: u32,
        /// Output file; stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Memory cap in bytes.
        #[arg(long, default_value_t = DEFAULT_MEMORY_CAP)]
        memory: u64,
    },
    /// Certified bracket for the stable length of a class.
    Stable {
        #[arg(long, default_value_t = 2)]
        rank: usize,
        #[arg(long, value_delimiter = ',', required = true)]
        gens: Vec<String>,
        #[arg(long)]
        class: String,
        #[arg(long, default_value_t = 16)]
        nmax: u32,
        /// Largest word length searched for any power.
        #[arg(long, default_value_t = 64)]
        budget: u32,
        #[arg(long, value_enum, default_value_t = Schedule::Doubling)]
        schedule: Schedule,
        #[arg(long)]
        oriented: bool,
        #[arg(long, default_value_t = DEFAULT_MEMORY_CAP)]
        memory: u64,
    },
    /// Run a counting experiment from a JSON config and write its CSV.
    Count {
        #[arg(long)]
        config: PathBuf,
        /// Overrides the config's output path; stdout when neither is set.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Least-squares fit of log N(L) against log L.
    Fit {
        #[arg(long)]
        series: PathBuf,
        /// `auto` or `lo:hi`.
        #[arg(long, default_value = "auto")]
        window: FitWindow,
    },
    /// Ratio N1(L) / N2(L) of two series.
    Ratio {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
        #[arg(long)]
        output: Option<PathBuf>,
        /// Report the relative variation of the ratio over `lo:hi`.
        #[arg(long)]
        window: Option<String>,
    },
    /// Check the {a, b, a^5} example.
    VerifyPaper,
}

#[derive(Clone, Copy, ValueEnum)]
enum Schedule {
    Doubling,
    All,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.workers {
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(|| run(cli.command)),
            Err(e) => Err(e.into()),
        },
        None => run(cli.command),
    };
    match outcome {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(exit_code(&err))
        }
    }
}

fn exit_code(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<Error>() {
        Some(Error::BudgetExceeded { .. } | Error::MemoryBudgetExceeded { .. }) => EXIT_BUDGET,
        Some(_) => EXIT_CONFIG,
        None => 1,
    }
}

fn run(command: Command) -> Result<ExitCode> {
    match command {
        Command::Ball {
            rank,
            gens,
            radius,
            out,
            memory,
        } => {
            let genset = GenSet::build(rank, &gens, 8)?;
            let ball = enumerate_ball(&genset, radius, memory)?;
            let sink: Box<dyn Write> = match &out {
                Some(path) => Box::new(
                    File::create(path)
                        .with_context(|| format!("cannot create {}", path.display()))?,
                ),
                None => Box::new(io::stdout().lock()),
            };
            let mut sink = BufWriter::new(sink);
            writeln!(sink, "word,length")?;
            for (w, k) in ball.iter() {
                writeln!(sink, "{},{k}", w.to_text())?;
            }
            sink.flush()?;
            eprintln!("sphere sizes: {:?}", ball.sphere_sizes());
        }
        Command::Stable {
            rank,
            gens,
            class,
            nmax,
            budget,
            schedule,
            oriented,
            memory,
        } => {
            let metric = WordMetric::new(GenSet::build(rank, &gens, 8)?).with_memory_cap(memory);
            let c = CyclicClass::parse(rank, &class, oriented)?;
            let schedule = match schedule {
                Schedule::Doubling => PowerSchedule::Doubling,
                Schedule::All => PowerSchedule::All,
            };
            let est = stable_length(&c, &metric, &schedule, nmax, budget)?;
            print_json(&serde_json::to_value(&est)?)?;
        }
        Command::Count { config, output } => {
            let cfg = ExperimentConfig::from_file(&config)?;
            let series = count_curves(&cfg)?;
            match output.or_else(|| cfg.output.clone()) {
                Some(path) => export(Exportable::Series(&series), &path, Format::Csv)?,
                None => write_series_csv(&series, io::stdout().lock())?,
            }
            if !series.is_complete() {
                let first = series.rows.iter().find(|r| !r.complete).map(|r| r.l);
                eprintln!(
                    "warning: search budget exhausted; rows from L = {} on are lower bounds",
                    first.unwrap_or_default()
                );
                return Ok(ExitCode::from(EXIT_BUDGET));
            }
        }
        Command::Fit { series, window } => {
            let series = read_series_csv(&series)?;
            let fit = fit_exponent(&series, window)?;
            println!("{}", fit_json(&fit));
        }
        Command::Ratio {
            a,
            b,
            output,
            window,
        } => {
            let window = window.as_deref().map(parse_window).transpose()?;
            let ratio = ratio_series(&read_series_csv(&a)?, &read_series_csv(&b)?)?;
            match output {
                Some(path) => export(Exportable::Ratio(&ratio), &path, Format::Csv)?,
                None => write_ratio_csv(&ratio, io::stdout().lock())?,
            }
            if let Some((lo, hi)) = window {
                let values = ratio.ratios_in(lo, hi);
                match relative_variation(&values) {
                    Some(v) => eprintln!("relative variation over [{lo}, {hi}]: {v:.4}"),
                    None => eprintln!("no defined ratios in [{lo}, {hi}]"),
                }
            }
        }
        Command::VerifyPaper => {
            let report = verify_paper_example()?;
            for check in &report.checks {
                println!(
                    "{} {}: expected {}, got {}",
                    if check.pass { "ok  " } else { "FAIL" },
                    check.name,
                    check.expected,
                    check.actual
                );
            }
            if !report.passed() {
                return Ok(ExitCode::from(EXIT_VERIFY));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn parse_window(text: &str) -> Result<(u32, u32), Error> {
    match text.parse::<FitWindow>()? {
        FitWindow::Range(lo, hi) => Ok((lo, hi)),
        FitWindow::Auto => Err(Error::Config("ratio window must be lo:hi".into())),
    }
}

fn print_json(value: &serde_json::Value) -> Result<()> {
    let mut out = io::stdout().lock();
    serde_json::to_writer_pretty(&mut out, value)?;
    writeln!(out)?;
    Ok(())
}
