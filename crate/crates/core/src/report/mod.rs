//! Pipeline orchestration and output files.
//!
//! Every `run_*` function loads its inputs from a [`RunConfig`], computes a
//! report, writes it under `out_dir` and returns the written paths together
//! with any warnings. CSV numbers are rounded to `decimals` places; JSON
//! always carries full precision.

mod network;
mod plot;
mod tables;

use std::fs::{self, File};
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::corpus::{Classification, Corpus, Dimension, EdgeLoadSummary};
use crate::error::{Error, Result};
use crate::metrics::CountingMode;
use crate::stats::CorrelationResult;

pub use network::{aggregate_sc_network, category_volumes, export_sc_network, NetworkEdge};
pub use plot::{ScatterPlot, ScatterPoint};
pub use tables::{
    compute_correlations, compute_indicators, compute_roles, parse_metrics, parse_scores, DisciplineRow,
    IndicatorRow, IndicatorTable, RoleRow, RolesReport, UnitKind, UnitScores, CITED_SERIES, CITING_SERIES,
};

pub const MISSING: &str = "NA";

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, clap::ValueEnum)]
pub enum OutputFormat {
    #[default]
    Csv,
    Json,
}

impl OutputFormat {
    fn extension(self) -> &'static str {
        match self {
            OutputFormat::Csv => "csv",
            OutputFormat::Json => "json",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorpusInputs {
    pub classification: PathBuf,
    pub journals: PathBuf,
    pub citations: PathBuf,
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub inputs: Option<CorpusInputs>,
    pub metrics: Option<PathBuf>,
    /// Precomputed `unit_id,cited_ebdi,citing_ebdi` pairs, used by `roles`
    /// instead of a corpus.
    pub scores: Option<PathBuf>,
    pub focal_sc: Option<String>,
    pub n_categories: Option<usize>,
    pub counting: CountingMode,
    pub unit: UnitKind,
    pub out_dir: PathBuf,
    pub format: OutputFormat,
    pub decimals: usize,
}

impl RunConfig {
    pub fn new(inputs: CorpusInputs, out_dir: impl Into<PathBuf>) -> Self {
        Self {
            inputs: Some(inputs),
            metrics: None,
            scores: None,
            focal_sc: None,
            n_categories: None,
            counting: CountingMode::Whole,
            unit: UnitKind::Journal,
            out_dir: out_dir.into(),
            format: OutputFormat::Csv,
            decimals: 2,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if let Some(n) = self.n_categories {
            if n < 2 {
                return Err(Error::InvalidCategoryCount { got: n, min: 2 });
            }
        }
        if let Some(inputs) = &self.inputs {
            for p in [&inputs.classification, &inputs.journals, &inputs.citations] {
                if p.as_os_str().is_empty() {
                    return Err(Error::Config("input paths must be non-empty".into()));
                }
            }
        }
        if self.out_dir.as_os_str().is_empty() {
            return Err(Error::Config("output directory must be non-empty".into()));
        }
        Ok(())
    }

    fn inputs(&self) -> Result<&CorpusInputs> {
        self.inputs
            .as_ref()
            .ok_or_else(|| Error::Config("--classification, --journals and --citations are required".into()))
    }
}

#[derive(Debug, Clone, Default)]
pub struct RunOutput {
    pub written: Vec<PathBuf>,
    pub warnings: Vec<String>,
}

pub fn load_corpus(config: &RunConfig) -> Result<(Corpus, EdgeLoadSummary)> {
    config.validate()?;
    let inputs = config.inputs()?;
    let mut classification = Classification::from_paths(&inputs.classification, &inputs.journals)?;
    if let Some(n) = config.n_categories {
        classification = classification.with_n_categories(n)?;
    }
    classification.load_edges_from_path(&inputs.citations)
}

fn num(v: f64, decimals: usize) -> String {
    let s = format!("{v:.decimals$}");
    // avoid "-0.00"
    if s.starts_with('-') && s[1..].chars().all(|c| c == '0' || c == '.') {
        s[1..].to_string()
    } else {
        s
    }
}

fn opt_num(v: Option<f64>, decimals: usize) -> String {
    v.map_or_else(|| MISSING.to_string(), |v| num(v, decimals))
}

fn opt_str<T: ToString>(v: Option<T>, missing: &str) -> String {
    v.map_or_else(|| missing.to_string(), |v| v.to_string())
}

fn create_out_dir(dir: &Path) -> Result<()> {
    fs::create_dir_all(dir).map_err(|source| Error::Io {
        path: dir.to_path_buf(),
        source,
    })
}

fn write_bytes(path: &Path, bytes: &[u8]) -> Result<()> {
    let io = |source| Error::Io {
        path: path.to_path_buf(),
        source,
    };
    let mut f = File::create(path).map_err(io)?;
    f.write_all(bytes).map_err(io)?;
    Ok(())
}

fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut bytes = serde_json::to_vec_pretty(value)?;
    bytes.push(b'\n');
    write_bytes(path, &bytes)
}

fn write_csv(path: &Path, header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> Result<()> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let csv_err = |e: csv::Error| Error::Config(format!("{}: {e}", path.display()));
    w.write_record(header).map_err(csv_err)?;
    for row in rows {
        w.write_record(&row).map_err(csv_err)?;
    }
    let bytes = w
        .into_inner()
        .map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
    write_bytes(path, &bytes)
}

pub const INDICATOR_COLUMNS: [&str; 14] = [
    "unit_id",
    "focal_sc",
    "dimension",
    "n_categories",
    "counting",
    "total_citations",
    "pct_internal",
    "sum_external",
    "entropy",
    "max_entropy",
    "pct_hmax",
    "ebdi",
    "raw_diversity",
    "status",
];

/// Render the indicator table as CSV rows (without header).
pub fn indicator_csv_rows(table: &IndicatorTable, decimals: usize) -> Vec<Vec<String>> {
    table
        .rows
        .iter()
        .map(|r| {
            vec![
                r.unit_id.clone(),
                r.focal_sc.clone(),
                r.dimension.to_string(),
                table.n_categories.to_string(),
                table.counting.as_str().to_string(),
                num(r.total_citations, decimals),
                opt_num(r.pct_internal, decimals),
                opt_num(r.sum_external, decimals),
                opt_num(r.entropy, decimals),
                opt_num(r.max_entropy, decimals),
                opt_num(r.pct_hmax, decimals),
                opt_num(r.ebdi, decimals),
                opt_str(r.raw_diversity, MISSING),
                if r.ebdi.is_some() { "ok" } else { "no_citations" }.to_string(),
            ]
        })
        .collect()
}

pub fn run_indicators(config: &RunConfig) -> Result<RunOutput> {
    let (corpus, _) = load_corpus(config)?;
    let (table, _, warnings) =
        compute_indicators(&corpus, config.unit, config.focal_sc.as_deref(), config.counting)?;
    create_out_dir(&config.out_dir)?;
    let path = config
        .out_dir
        .join(format!("indicators.{}", config.format.extension()));
    match config.format {
        OutputFormat::Json => write_json(&path, &table)?,
        OutputFormat::Csv => write_csv(&path, &INDICATOR_COLUMNS, indicator_csv_rows(&table, config.decimals))?,
    }
    Ok(RunOutput {
        written: vec![path],
        warnings,
    })
}

/// Unit scores from `--scores` when given, otherwise from the corpus.
fn unit_scores(config: &RunConfig) -> Result<(Vec<UnitScores>, Vec<String>)> {
    if let Some(path) = &config.scores {
        let f = File::open(path).map_err(|source| Error::Io {
            path: path.clone(),
            source,
        })?;
        return Ok((parse_scores(f, &path.display().to_string())?, Vec::new()));
    }
    let (corpus, _) = load_corpus(config)?;
    let (_, units, warnings) = compute_indicators(&corpus, config.unit, config.focal_sc.as_deref(), config.counting)?;
    Ok((units, warnings))
}

pub const ROLE_COLUMNS: [&str; 8] = [
    "unit_id",
    "cited_ebdi",
    "citing_ebdi",
    "cited_level",
    "citing_level",
    "role",
    "cited_threshold",
    "citing_threshold",
];

pub const DISCIPLINE_COLUMNS: [&str; 5] = ["unit_id", "cited_ebdi", "citing_ebdi", "difference", "discipline_type"];

pub fn roles_csv(report: &RolesReport, decimals: usize) -> (Vec<&'static str>, Vec<Vec<String>>) {
    match report {
        RolesReport::Journal { rows, .. } => (
            ROLE_COLUMNS.to_vec(),
            rows.iter()
                .map(|r| {
                    vec![
                        r.unit_id.clone(),
                        opt_num(r.cited_ebdi, decimals),
                        opt_num(r.citing_ebdi, decimals),
                        opt_str(r.cited_level, MISSING),
                        opt_str(r.citing_level, MISSING),
                        opt_str(r.role, "UNCLASSIFIED"),
                        num(r.cited_threshold, decimals),
                        num(r.citing_threshold, decimals),
                    ]
                })
                .collect(),
        ),
        RolesReport::Discipline { rows, .. } => (
            DISCIPLINE_COLUMNS.to_vec(),
            rows.iter()
                .map(|r| {
                    vec![
                        r.unit_id.clone(),
                        opt_num(r.cited_ebdi, decimals),
                        opt_num(r.citing_ebdi, decimals),
                        opt_num(r.difference, decimals),
                        opt_str(r.discipline_type, "UNCLASSIFIED"),
                    ]
                })
                .collect(),
        ),
    }
}

pub fn scatter_for(units: &[UnitScores], report: &RolesReport) -> String {
    let points: Vec<ScatterPoint> = units
        .iter()
        .filter_map(|u| {
            u.cited.zip(u.citing).map(|(cited, citing)| ScatterPoint {
                label: u.label.clone(),
                cited,
                citing,
            })
        })
        .collect();
    let (cited_threshold, citing_threshold) = report.thresholds();
    let journal = matches!(report, RolesReport::Journal { .. });
    ScatterPlot {
        title: if journal {
            "Cited and citing EBDI by journal"
        } else {
            "Cited and citing EBDI by subject category"
        },
        points: &points,
        cited_threshold,
        citing_threshold,
        quadrant_labels: journal,
    }
    .to_svg()
}

pub fn run_roles(config: &RunConfig) -> Result<RunOutput> {
    config.validate()?;
    let (units, mut warnings) = unit_scores(config)?;
    let report = compute_roles(&units, config.unit)?;
    let unclassified = match &report {
        RolesReport::Journal { rows, .. } => rows.iter().filter(|r| r.role.is_none()).count(),
        RolesReport::Discipline { rows, .. } => rows.iter().filter(|r| r.discipline_type.is_none()).count(),
    };
    if unclassified > 0 {
        warnings.push(format!("{unclassified} unit(s) unclassified because a dimension is missing"));
    }

    create_out_dir(&config.out_dir)?;
    let path = config.out_dir.join(format!("roles.{}", config.format.extension()));
    match config.format {
        OutputFormat::Json => write_json(&path, &report)?,
        OutputFormat::Csv => {
            let (header, rows) = roles_csv(&report, config.decimals);
            write_csv(&path, &header, rows)?
        }
    }
    let svg_path = config.out_dir.join("scatter.svg");
    write_bytes(&svg_path, scatter_for(&units, &report).as_bytes())?;
    Ok(RunOutput {
        written: vec![path, svg_path],
        warnings,
    })
}

pub const CORRELATION_COLUMNS: [&str; 6] = ["x", "y", "n", "rho", "p_two_tailed", "method_note"];

pub fn correlation_csv_rows(results: &[CorrelationResult], decimals: usize) -> Vec<Vec<String>> {
    results
        .iter()
        .map(|r| {
            vec![
                r.x.clone(),
                r.y.clone(),
                r.n.to_string(),
                num(r.rho, decimals),
                num(r.p_two_tailed, decimals),
                r.method_note.clone(),
            ]
        })
        .collect()
}

pub fn run_correlations(config: &RunConfig) -> Result<RunOutput> {
    config.validate()?;
    let metrics_path = config
        .metrics
        .as_ref()
        .ok_or_else(|| Error::Config("correlate requires --metrics".into()))?;
    let f = File::open(metrics_path).map_err(|source| Error::Io {
        path: metrics_path.clone(),
        source,
    })?;
    let metrics = parse_metrics(f, &metrics_path.display().to_string())?;
    let (units, mut warnings) = unit_scores(config)?;
    let (results, skipped) = compute_correlations(&units, &metrics)?;
    warnings.extend(skipped);

    create_out_dir(&config.out_dir)?;
    let path = config
        .out_dir
        .join(format!("correlations.{}", config.format.extension()));
    match config.format {
        OutputFormat::Json => write_json(&path, &results)?,
        OutputFormat::Csv => write_csv(&path, &CORRELATION_COLUMNS, correlation_csv_rows(&results, config.decimals))?,
    }
    Ok(RunOutput {
        written: vec![path],
        warnings,
    })
}

pub fn run_network(config: &RunConfig, dimension: Dimension, top_k: usize) -> Result<RunOutput> {
    let (corpus, _) = load_corpus(config)?;
    let (edges, warnings) = export_sc_network(&corpus, dimension, top_k, config.counting)?;
    create_out_dir(&config.out_dir)?;
    let path = config.out_dir.join("sc_network.csv");
    write_csv(
        &path,
        &["source_sc", "target_sc", "weight"],
        edges
            .iter()
            .map(|e| vec![e.source_sc.clone(), e.target_sc.clone(), num(e.weight, config.decimals)]),
    )?;
    Ok(RunOutput {
        written: vec![path],
        warnings,
    })
}
