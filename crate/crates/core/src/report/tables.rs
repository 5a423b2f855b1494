//! In-memory report tables, independent of any output format.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::corpus::{Corpus, Dimension};
use crate::error::{Error, Result};
use crate::metrics::{self, CountingMode, EbdiScore, IndicatorPair};
use crate::stats::{self, CorrelationResult, MetricSeries};
use crate::taxonomy::{self, DisciplineKind, JournalRole, Level};

/// What the indicator is computed for.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum UnitKind {
    /// Each journal, relative to each of its subject categories.
    #[default]
    Journal,
    /// Each subject category, pooling the citations of its journals.
    Discipline,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IndicatorRow {
    pub unit_id: String,
    pub focal_sc: String,
    pub dimension: Dimension,
    pub total_citations: f64,
    pub pct_internal: Option<f64>,
    pub sum_external: Option<f64>,
    pub entropy: Option<f64>,
    pub max_entropy: Option<f64>,
    pub pct_hmax: Option<f64>,
    pub ebdi: Option<f64>,
    pub raw_diversity: Option<usize>,
}

impl IndicatorRow {
    fn new(unit_id: &str, focal_sc: &str, dimension: Dimension, score: Option<&EbdiScore>) -> Self {
        Self {
            unit_id: unit_id.to_string(),
            focal_sc: focal_sc.to_string(),
            dimension,
            total_citations: score.map_or(0.0, |s| s.total),
            pct_internal: score.map(|s| s.pct_internal),
            sum_external: score.map(|s| s.external_citations),
            entropy: score.map(|s| s.stats.entropy),
            max_entropy: score.map(|s| s.stats.max_entropy),
            pct_hmax: score.map(|s| s.stats.pct_hmax),
            ebdi: score.map(|s| s.ebdi),
            raw_diversity: score.map(|s| s.stats.raw_diversity),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IndicatorTable {
    pub unit_kind: UnitKind,
    pub n_categories: usize,
    pub counting: CountingMode,
    pub rows: Vec<IndicatorRow>,
}

/// Cited and citing indicator of one (unit, focal category).
#[derive(Debug, Clone, PartialEq)]
pub struct UnitScores {
    pub unit_id: String,
    pub focal_sc: String,
    /// `unit_id`, or `unit_id@focal_sc` when a unit is scored in several categories.
    pub label: String,
    pub cited: Option<f64>,
    pub citing: Option<f64>,
}

/// Every (unit, focal category) pair to score, in output order.
fn targets(corpus: &Corpus, unit_kind: UnitKind, focal_sc: Option<&str>) -> Result<Vec<(String, String)>> {
    if let Some(sc) = focal_sc {
        corpus.category(sc)?;
    }
    let wanted = |sc: &str| focal_sc.is_none_or(|f| f == sc);
    Ok(match unit_kind {
        UnitKind::Journal => corpus
            .journals()
            .values()
            .flat_map(|j| {
                j.sc_memberships
                    .iter()
                    .filter(|sc| wanted(sc))
                    .map(|sc| (j.journal_id.clone(), sc.clone()))
            })
            .collect(),
        UnitKind::Discipline => corpus
            .categories()
            .keys()
            .filter(|sc| wanted(sc))
            .map(|sc| (sc.clone(), sc.clone()))
            .collect(),
    })
}

/// Indicators for every target plus the pairs they came from.
pub fn compute_indicators(
    corpus: &Corpus,
    unit_kind: UnitKind,
    focal_sc: Option<&str>,
    counting: CountingMode,
) -> Result<(IndicatorTable, Vec<UnitScores>, Vec<String>)> {
    let targets = targets(corpus, unit_kind, focal_sc)?;
    let pairs: Vec<IndicatorPair> = targets
        .par_iter()
        .map(|(unit, sc)| match unit_kind {
            UnitKind::Journal => metrics::compute_journal_indicators(corpus, unit, sc, counting),
            UnitKind::Discipline => metrics::compute_discipline_indicators(corpus, sc, counting),
        })
        .collect::<Result<_>>()?;

    let mut seen = BTreeMap::<&str, usize>::new();
    for (unit, _) in &targets {
        *seen.entry(unit).or_default() += 1;
    }

    let mut rows = Vec::with_capacity(targets.len() * 2);
    let mut units = Vec::with_capacity(targets.len());
    let mut warnings = Vec::new();
    for ((unit, sc), pair) in targets.iter().zip(&pairs) {
        for dimension in Dimension::BOTH {
            let score = pair.get(dimension);
            if score.is_none() {
                warnings.push(format!("no citations in dimension {dimension} for `{unit}` in `{sc}`"));
            }
            rows.push(IndicatorRow::new(unit, sc, dimension, score));
        }
        let label = if seen[unit.as_str()] > 1 {
            format!("{unit}@{sc}")
        } else {
            unit.clone()
        };
        units.push(UnitScores {
            unit_id: unit.clone(),
            focal_sc: sc.clone(),
            label,
            cited: pair.cited.as_ref().map(|s| s.ebdi),
            citing: pair.citing.as_ref().map(|s| s.ebdi),
        });
    }
    rows.sort_by(|a, b| (&a.unit_id, &a.focal_sc, a.dimension).cmp(&(&b.unit_id, &b.focal_sc, b.dimension)));
    units.sort_by(|a, b| (&a.unit_id, &a.focal_sc).cmp(&(&b.unit_id, &b.focal_sc)));

    Ok((
        IndicatorTable {
            unit_kind,
            n_categories: corpus.n_categories(),
            counting,
            rows,
        },
        units,
        warnings,
    ))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RoleRow {
    pub unit_id: String,
    pub cited_ebdi: Option<f64>,
    pub citing_ebdi: Option<f64>,
    pub cited_level: Option<Level>,
    pub citing_level: Option<Level>,
    /// `None` is reported as unclassified.
    pub role: Option<JournalRole>,
    pub cited_threshold: f64,
    pub citing_threshold: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DisciplineRow {
    pub unit_id: String,
    pub cited_ebdi: Option<f64>,
    pub citing_ebdi: Option<f64>,
    pub difference: Option<f64>,
    /// `None` when either value is missing.
    pub discipline_type: Option<DisciplineKind>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "unit_kind", rename_all = "lowercase")]
pub enum RolesReport {
    Journal {
        cited_threshold: f64,
        citing_threshold: f64,
        rows: Vec<RoleRow>,
    },
    Discipline {
        cited_threshold: f64,
        citing_threshold: f64,
        rows: Vec<DisciplineRow>,
    },
}

impl RolesReport {
    pub fn thresholds(&self) -> (f64, f64) {
        match self {
            RolesReport::Journal {
                cited_threshold,
                citing_threshold,
                ..
            }
            | RolesReport::Discipline {
                cited_threshold,
                citing_threshold,
                ..
            } => (*cited_threshold, *citing_threshold),
        }
    }
}

/// Quadrant roles (journals) or importer/exporter types (disciplines).
///
/// Thresholds are the medians of each dimension within `units`.
pub fn compute_roles(units: &[UnitScores], unit_kind: UnitKind) -> Result<RolesReport> {
    let triples: Vec<_> = units.iter().map(|u| (u.label.clone(), u.cited, u.citing)).collect();
    let table = taxonomy::build_role_table(&triples)?;
    Ok(match unit_kind {
        UnitKind::Journal => RolesReport::Journal {
            cited_threshold: table.cited_threshold,
            citing_threshold: table.citing_threshold,
            rows: table
                .units
                .into_iter()
                .map(|u| RoleRow {
                    unit_id: u.unit_id,
                    cited_ebdi: u.cited_ebdi,
                    citing_ebdi: u.citing_ebdi,
                    cited_level: u.cited_level,
                    citing_level: u.citing_level,
                    role: u.role,
                    cited_threshold: table.cited_threshold,
                    citing_threshold: table.citing_threshold,
                })
                .collect(),
        },
        UnitKind::Discipline => RolesReport::Discipline {
            cited_threshold: table.cited_threshold,
            citing_threshold: table.citing_threshold,
            rows: units
                .iter()
                .map(|u| {
                    let typed = u
                        .cited
                        .zip(u.citing)
                        .map(|(cited, citing)| taxonomy::classify_discipline(&u.label, cited, citing));
                    DisciplineRow {
                        unit_id: u.label.clone(),
                        cited_ebdi: u.cited,
                        citing_ebdi: u.citing,
                        difference: typed.as_ref().map(|t| t.difference),
                        discipline_type: typed.map(|t| t.kind),
                    }
                })
                .collect(),
        },
    })
}

pub const CITED_SERIES: &str = "cited_ebdi";
pub const CITING_SERIES: &str = "citing_ebdi";

/// Spearman correlations between every pair among the cited indicator, the
/// citing indicator and the supplied metrics (keyed by unit id).
///
/// Pairs that cannot be computed are skipped with a warning.
pub fn compute_correlations(
    units: &[UnitScores],
    metrics: &BTreeMap<String, BTreeMap<String, f64>>,
) -> Result<(Vec<CorrelationResult>, Vec<String>)> {
    let mut series = vec![
        MetricSeries::from_pairs(CITED_SERIES, units.iter().filter_map(|u| u.cited.map(|v| (u.label.clone(), v))))?,
        MetricSeries::from_pairs(CITING_SERIES, units.iter().filter_map(|u| u.citing.map(|v| (u.label.clone(), v))))?,
    ];
    for (name, values) in metrics {
        series.push(MetricSeries::from_pairs(
            name.clone(),
            units
                .iter()
                .filter_map(|u| values.get(&u.unit_id).map(|v| (u.label.clone(), *v))),
        )?);
    }

    let mut results = Vec::new();
    let mut warnings = Vec::new();
    for i in 0..series.len() {
        for j in i + 1..series.len() {
            match stats::correlate(&series[i], &series[j]) {
                Ok(r) => results.push(r),
                Err(e @ (Error::ConstantSeries(_) | Error::InsufficientOverlap { .. })) => {
                    warnings.push(format!("skipping {} vs {}: {e}", series[i].name, series[j].name));
                }
                Err(e) => return Err(e),
            }
        }
    }
    Ok((results, warnings))
}

/// Read `journal_id,metric_name,value` rows into `metric -> unit -> value`.
pub fn parse_metrics<R: std::io::Read>(input: R, label: &str) -> Result<BTreeMap<String, BTreeMap<String, f64>>> {
    let mut reader = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(input);
    let header = reader.headers().map_err(|_| bad_header(label))?;
    if header.iter().ne(["journal_id", "metric_name", "value"]) {
        return Err(bad_header(label));
    }
    let mut out: BTreeMap<String, BTreeMap<String, f64>> = BTreeMap::new();
    for record in reader.records() {
        let record = record.map_err(|e| Error::MalformedRow {
            file: label.to_string(),
            line: e.position().map_or(0, |p| p.line()),
            message: e.to_string(),
        })?;
        let line = record.position().map_or(0, |p| p.line());
        let value: f64 = record[2].parse().map_err(|_| Error::MalformedRow {
            file: label.to_string(),
            line,
            message: format!("value `{}` is not a number", &record[2]),
        })?;
        if !value.is_finite() {
            return Err(Error::NonFinite {
                series: record[1].to_string(),
                unit: record[0].to_string(),
            });
        }
        if out
            .entry(record[1].to_string())
            .or_default()
            .insert(record[0].to_string(), value)
            .is_some()
        {
            return Err(Error::DuplicateUnit {
                series: record[1].to_string(),
                unit: record[0].to_string(),
            });
        }
    }
    Ok(out)
}

/// Read precomputed `unit_id,cited_ebdi,citing_ebdi` rows; empty cells are missing.
pub fn parse_scores<R: std::io::Read>(input: R, label: &str) -> Result<Vec<UnitScores>> {
    let mut reader = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(input);
    let header = reader.headers().map_err(|_| bad_score_header(label))?;
    if header.iter().ne(["unit_id", "cited_ebdi", "citing_ebdi"]) {
        return Err(bad_score_header(label));
    }
    let mut seen = BTreeSet::new();
    let mut units = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| Error::MalformedRow {
            file: label.to_string(),
            line: e.position().map_or(0, |p| p.line()),
            message: e.to_string(),
        })?;
        let line = record.position().map_or(0, |p| p.line());
        let cell = |i: usize| -> Result<Option<f64>> {
            let raw = &record[i];
            if raw.is_empty() || raw.eq_ignore_ascii_case("NA") {
                return Ok(None);
            }
            match raw.parse::<f64>() {
                Ok(v) if v.is_finite() => Ok(Some(v)),
                _ => Err(Error::MalformedRow {
                    file: label.to_string(),
                    line,
                    message: format!("`{raw}` is not a number"),
                }),
            }
        };
        let unit_id = record[0].to_string();
        if !seen.insert(unit_id.clone()) {
            return Err(Error::DuplicateUnit {
                series: label.to_string(),
                unit: unit_id,
            });
        }
        units.push(UnitScores {
            focal_sc: String::new(),
            label: unit_id.clone(),
            cited: cell(1)?,
            citing: cell(2)?,
            unit_id,
        });
    }
    Ok(units)
}

fn bad_header(label: &str) -> Error {
    Error::BadHeader {
        file: label.to_string(),
        expected: "journal_id,metric_name,value".into(),
    }
}

fn bad_score_header(label: &str) -> Error {
    Error::BadHeader {
        file: label.to_string(),
        expected: "unit_id,cited_ebdi,citing_ebdi".into(),
    }
}
