use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use ebdi::report::{self, CorpusInputs, OutputFormat, RunConfig, RunOutput, UnitKind};
use ebdi::{CountingMode, Dimension};

#[derive(Parser)]
#[command(name = "ebdi", version, about = "Entropy-based disciplinarity indicator over journal citation data")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Per-unit indicator table (indicators.csv / indicators.json)
    Indicators(Common),
    /// HIGH/LOW levels, roles and the quadrant scatter plot
    Roles {
        #[command(flatten)]
        common: Common,
        /// Precomputed `unit_id,cited_ebdi,citing_ebdi` file, used instead of a corpus
        #[arg(long)]
        scores: Option<PathBuf>,
    },
    /// Spearman correlations between the indicators and external metrics
    Correlate {
        #[command(flatten)]
        common: Common,
        /// `journal_id,metric_name,value` file
        #[arg(long)]
        metrics: PathBuf,
    },
    /// Subject-category citation edge list (sc_network.csv)
    Network {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value_t = Dimension::Cited)]
        dimension: Dimension,
        #[arg(long, default_value_t = 10)]
        top_k: usize,
    },
}

#[derive(Args)]
struct Common {
    /// subject_categories.csv
    #[arg(long)]
    classification: Option<PathBuf>,
    /// journals.csv
    #[arg(long)]
    journals: Option<PathBuf>,
    /// citations.csv
    #[arg(long)]
    citations: Option<PathBuf>,
    /// Only score units in this subject category
    #[arg(long)]
    focal_sc: Option<String>,
    /// Number of categories n for Hmax = ln n (default: rows in the classification file)
    #[arg(long)]
    n_categories: Option<usize>,
    #[arg(long, value_enum, default_value_t = CountingMode::Whole)]
    counting: CountingMode,
    /// Score journals or whole subject categories
    #[arg(long, value_enum, default_value_t = UnitKind::Journal)]
    unit: UnitKind,
    #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
    format: OutputFormat,
    /// Decimal places in CSV output
    #[arg(long, default_value_t = 2)]
    decimals: usize,
    /// Output directory
    #[arg(long, default_value = ".")]
    out: PathBuf,
}

impl Common {
    fn into_config(self, require_corpus: bool) -> Result<RunConfig, ebdi::Error> {
        let inputs = match (self.classification, self.journals, self.citations) {
            (Some(classification), Some(journals), Some(citations)) => Some(CorpusInputs {
                classification,
                journals,
                citations,
            }),
            (None, None, None) if !require_corpus => None,
            _ => {
                return Err(ebdi::Error::Config(
                    "--classification, --journals and --citations must be given together".into(),
                ))
            }
        };
        Ok(RunConfig {
            inputs,
            metrics: None,
            scores: None,
            focal_sc: self.focal_sc,
            n_categories: self.n_categories,
            counting: self.counting,
            unit: self.unit,
            out_dir: self.out,
            format: self.format,
            decimals: self.decimals,
        })
    }
}

fn run(cli: Cli) -> Result<RunOutput, ebdi::Error> {
    match cli.command {
        Command::Indicators(common) => report::run_indicators(&common.into_config(true)?),
        Command::Roles { common, scores } => {
            let mut config = common.into_config(scores.is_none())?;
            config.scores = scores;
            report::run_roles(&config)
        }
        Command::Correlate { common, metrics } => {
            let mut config = common.into_config(true)?;
            config.metrics = Some(metrics);
            report::run_correlations(&config)
        }
        Command::Network {
            common,
            dimension,
            top_k,
        } => report::run_network(&common.into_config(true)?, dimension, top_k),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(out) => {
            for w in &out.warnings {
                eprintln!("warning: {w}");
            }
            for p in &out.written {
                println!("{}", p.display());
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
