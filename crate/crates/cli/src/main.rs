//! `dimsweep`: benchmark classifiers under dimension reduction.
//!
//! Subcommands: `run` sweeps reducers x component counts x classifiers
//! x objectives over a CSV dataset; `synth` generates a synthetic
//! dataset of the benchmark's shape; `figures` rebuilds the per-figure
//! score grids from an existing report.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use dimsweep_core::runner::{self, ExperimentConfig, ReducerMethod};
use dimsweep_core::{ClassifierId, Objective};

#[derive(Parser)]
#[command(name = "dimsweep", version, about = "Classifier benchmarking under dimension reduction")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the full evaluation sweep and write report tables.
    Run(RunArgs),
    /// Generate a synthetic dataset with class-shifted Gaussian features.
    Synth(SynthArgs),
    /// Rebuild figure-data CSVs from an existing report.
    Figures(FiguresArgs),
}

#[derive(Args)]
struct RunArgs {
    /// Input CSV with a header row.
    #[arg(long)]
    data: PathBuf,

    /// Name of the label column (exactly two distinct values).
    #[arg(long = "label-col", default_value = "label")]
    label_col: String,

    /// Seed for fold splitting and every other stochastic step.
    #[arg(long, default_value_t = 42)]
    seed: u64,

    /// Retained component counts, comma separated.
    #[arg(long = "s-values", value_delimiter = ',', default_values_t = runner::DEFAULT_S_VALUES)]
    s_values: Vec<usize>,

    /// Reduction methods to sweep: anova, pca.
    #[arg(long, value_delimiter = ',', default_values_t = ReducerMethod::ALL.map(|r| r.to_string()))]
    reducers: Vec<String>,

    /// Classifiers to sweep: knn, gnb, lda, ridge, svm-l, svm-rbf, rf.
    #[arg(long, value_delimiter = ',', default_values_t = ClassifierId::ALL.map(|c| c.to_string()))]
    classifiers: Vec<String>,

    /// Tuning/report objectives: accuracy, auc.
    #[arg(long, value_delimiter = ',', default_values_t = Objective::ALL.map(|o| o.to_string()))]
    objectives: Vec<String>,

    /// Skip per-fold z-score standardization.
    #[arg(long = "no-standardize")]
    no_standardize: bool,

    /// Fit reducers on the whole dataset instead of per training fold
    /// (reproduces the leakage-prone protocol; for comparison only).
    #[arg(long = "leaky-reduction")]
    leaky_reduction: bool,

    /// Output directory for report.csv, config.json, timings.csv and
    /// figures/.
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct SynthArgs {
    /// Number of samples (classes are balanced).
    #[arg(long, default_value_t = 150)]
    n: usize,

    /// Number of features.
    #[arg(long, default_value_t = 184)]
    d: usize,

    /// Number of informative (class-shifted) features.
    #[arg(long, default_value_t = 10)]
    informative: usize,

    /// Distance between the class means of informative features.
    #[arg(long, default_value_t = 1.0)]
    separation: f64,

    #[arg(long, default_value_t = 42)]
    seed: u64,

    /// Output CSV path; a .meta.json sidecar records the generator
    /// parameters and informative column positions.
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct FiguresArgs {
    /// Path to a report.csv produced by `run`.
    #[arg(long)]
    report: PathBuf,

    /// Directory for the figure-data CSVs.
    #[arg(long)]
    out: PathBuf,
}

fn parse_each<T: std::str::FromStr<Err = dimsweep_core::Error>>(
    raw: &[String],
) -> Result<Vec<T>, dimsweep_core::Error> {
    raw.iter().map(|s| s.parse()).collect()
}

fn run(args: &RunArgs) -> Result<ExitCode, dimsweep_core::Error> {
    let config = ExperimentConfig {
        data: args.data.clone(),
        label_column: args.label_col.clone(),
        seed: args.seed,
        s_values: args.s_values.clone(),
        reducers: parse_each(&args.reducers)?,
        classifiers: parse_each(&args.classifiers)?,
        objectives: parse_each(&args.objectives)?,
        standardize: !args.no_standardize,
        leaky_reduction: args.leaky_reduction,
        out_dir: args.out.clone(),
    };

    for &classifier in &config.classifiers {
        let size = runner::grid_size(classifier);
        if size > 1 {
            println!("grid {classifier}: {size} points");
        }
    }

    let report = runner::run_experiment(&config)?;
    let errors = report.error_rows();
    println!(
        "sweep finished: {} rows, {} with errors -> {}",
        report.rows.len(),
        errors,
        config.out_dir.display()
    );
    if errors > 0 {
        for row in &report.rows {
            if let dimsweep_core::RowOutcome::Error(message) = &row.outcome {
                eprintln!(
                    "  {} s={} {} {}: {message}",
                    row.reducer, row.s, row.classifier, row.objective
                );
            }
        }
        Ok(ExitCode::from(2))
    } else {
        Ok(ExitCode::SUCCESS)
    }
}

fn synth(args: &SynthArgs) -> Result<ExitCode, dimsweep_core::Error> {
    let data = runner::make_synthetic(args.n, args.d, args.informative, args.separation, args.seed)?;
    dimsweep_core::write_csv(&data.dataset, &args.out)?;

    let meta = serde_json::json!({
        "n": args.n,
        "d": args.d,
        "informative": args.informative,
        "separation": args.separation,
        "seed": args.seed,
        "informative_columns": data.informative_columns,
    });
    let meta_path = args.out.with_extension("meta.json");
    std::fs::write(&meta_path, format!("{}\n", serde_json::to_string_pretty(&meta)?)).map_err(
        |source| dimsweep_core::Error::Io {
            path: meta_path.clone(),
            source,
        },
    )?;
    println!(
        "wrote {} ({} x {}) and {}",
        args.out.display(),
        args.n,
        args.d,
        meta_path.display()
    );
    Ok(ExitCode::SUCCESS)
}

fn figures(args: &FiguresArgs) -> Result<ExitCode, dimsweep_core::Error> {
    let text = std::fs::read_to_string(&args.report).map_err(|source| dimsweep_core::Error::Io {
        path: args.report.clone(),
        source,
    })?;
    let rows = runner::report_from_csv(&text)?;
    let written = runner::export_figure_data(&rows, &args.out)?;
    for path in &written {
        println!("wrote {}", path.display());
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Run(args) => run(args),
        Command::Synth(args) => synth(args),
        Command::Figures(args) => figures(args),
    };
    match outcome {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
