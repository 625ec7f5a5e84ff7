use std::path::PathBuf;
use std::process;

use clap::{Parser, Subcommand};
use kgrec::pipeline;
use kgrec::report::{self, EVALUATION_FILE, RECOMMENDATION_FILE};
use kgrec::{Error, Overrides, PipelineConfig};

/// Knowledge-graph-driven paper recommender.
#[derive(Parser)]
#[command(name = "kgrec", version)]
struct Cli {
    /// Flat TOML config file.
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,
    /// Seed for every random draw in the run.
    #[arg(long, global = true, value_name = "INT")]
    seed: Option<u64>,
    /// Directory for report files.
    #[arg(long, global = true, value_name = "DIR")]
    out: Option<PathBuf>,
    /// Override a config key, e.g. `--set k=10`. Repeatable.
    #[arg(long = "set", global = true, value_name = "KEY=VALUE")]
    set: Vec<String>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Load and validate the paper corpus.
    Ingest,
    /// Import, align and summarize the knowledge graphs.
    Kg,
    /// Rank the candidates and write recommendation.json.
    Recommend,
    /// Score recommendation reports against the corpus relevance labels.
    Evaluate {
        /// recommendation.json files, one per run.
        #[arg(required = true)]
        reports: Vec<PathBuf>,
    },
}

fn run(cli: Cli) -> Result<(), Error> {
    let overrides = Overrides {
        set: cli.set,
        seed: cli.seed,
        output_dir: cli.out,
    };
    let cfg = PipelineConfig::load(cli.config.as_deref(), &overrides)?;
    match cli.command {
        Command::Ingest => print!("{}", pipeline::run_ingest(&cfg)?),
        Command::Kg => {
            for summary in pipeline::run_kg(&cfg)? {
                print!("{summary}");
            }
        }
        Command::Recommend => {
            let rec = pipeline::recommend(&cfg)?;
            let path = report::write_json(&cfg.output_dir, RECOMMENDATION_FILE, &rec)?;
            print!("{}", report::recommendation_table(&rec));
            eprintln!("wrote {}", path.display());
        }
        Command::Evaluate { reports } => {
            let eval = pipeline::evaluate(&cfg, &reports)?;
            let path = report::write_json(&cfg.output_dir, EVALUATION_FILE, &eval)?;
            print!("{}", report::evaluation_table(&eval));
            eprintln!("wrote {}", path.display());
        }
    }
    Ok(())
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            process::exit(if e.use_stderr() { 1 } else { 0 });
        }
    };
    if let Err(e) = run(cli) {
        eprintln!("error: {e}");
        process::exit(e.exit_code() as i32);
    }
}
