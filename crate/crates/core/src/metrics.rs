//! Citation profiles, external-citation entropy and the disciplinarity
//! indicator.
//!
//! For a unit (a journal, or a whole subject category) and a focal subject
//! category, every citation in one dimension is either internal (the partner
//! journal is classified in the focal category, possibly among others) or
//! external. The indicator is
//!
//! ```text
//! ebdi = pct_internal / (pct_hmax + 1)
//! ```
//!
//! where `pct_internal` is the percentage of internal citations and
//! `pct_hmax` is the Shannon entropy of the external citations' category
//! distribution as a percentage of `ln n`, `n` being the number of
//! categories in the classification system. Both terms are percentages, so
//! the `+ 1` is in percentage points.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::corpus::{Corpus, Dimension};
use crate::error::{Error, Result};

/// How a citation to an external partner classified in several categories
/// is attributed to those categories.
#[derive(
    Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize, clap::ValueEnum,
)]
#[serde(rename_all = "lowercase")]
pub enum CountingMode {
    /// One full count per category of the partner.
    #[default]
    Whole,
    /// `count / |memberships|` per category of the partner.
    Fractional,
}

impl CountingMode {
    pub fn as_str(self) -> &'static str {
        match self {
            CountingMode::Whole => "whole",
            CountingMode::Fractional => "fractional",
        }
    }
}

/// One unit's citations in one dimension, split relative to a focal category.
///
/// `total` and `external_citations` count raw citations. Under whole
/// counting `external_counts` may sum to more than `external_citations`,
/// because a citation to a multi-category partner is credited to each of its
/// categories; the map only feeds the entropy.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CitationProfile {
    pub unit_id: String,
    pub focal_sc: String,
    pub dimension: Dimension,
    pub internal_count: f64,
    pub external_counts: BTreeMap<String, f64>,
    pub external_citations: f64,
    pub total: f64,
}

impl CitationProfile {
    /// Profile from already-aggregated counts. Zero entries are dropped.
    pub fn from_counts(
        unit_id: impl Into<String>,
        focal_sc: impl Into<String>,
        dimension: Dimension,
        internal_count: f64,
        external_counts: impl IntoIterator<Item = (String, f64)>,
    ) -> Self {
        let external_counts: BTreeMap<String, f64> =
            external_counts.into_iter().filter(|(_, c)| *c > 0.0).collect();
        let external_citations: f64 = external_counts.values().sum();
        Self {
            unit_id: unit_id.into(),
            focal_sc: focal_sc.into(),
            dimension,
            internal_count,
            external_citations,
            total: internal_count + external_citations,
            external_counts,
        }
    }

    /// Multiply every count by `factor`.
    pub fn scaled(&self, factor: f64) -> Self {
        Self {
            internal_count: self.internal_count * factor,
            external_counts: self
                .external_counts
                .iter()
                .map(|(k, v)| (k.clone(), v * factor))
                .collect(),
            external_citations: self.external_citations * factor,
            total: self.total * factor,
            ..self.clone()
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DistributionStats {
    /// Shannon entropy in nats.
    pub entropy: f64,
    /// `ln n_categories`.
    pub max_entropy: f64,
    pub pct_hmax: f64,
    pub raw_diversity: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EbdiScore {
    pub unit_id: String,
    pub focal_sc: String,
    pub dimension: Dimension,
    pub total: f64,
    pub pct_internal: f64,
    pub external_citations: f64,
    pub stats: DistributionStats,
    pub ebdi: f64,
}

/// Scores for both dimensions; `None` marks a dimension without citations.
#[derive(Debug, Clone, PartialEq)]
pub struct IndicatorPair {
    pub cited: Option<EbdiScore>,
    pub citing: Option<EbdiScore>,
}

impl IndicatorPair {
    pub fn get(&self, dimension: Dimension) -> Option<&EbdiScore> {
        match dimension {
            Dimension::Cited => self.cited.as_ref(),
            Dimension::Citing => self.citing.as_ref(),
        }
    }
}

struct ProfileBuilder {
    internal: f64,
    external_raw: f64,
    external: BTreeMap<String, f64>,
}

impl ProfileBuilder {
    fn new() -> Self {
        Self {
            internal: 0.0,
            external_raw: 0.0,
            external: BTreeMap::new(),
        }
    }

    fn add_edges(
        &mut self,
        corpus: &Corpus,
        focal_journal: &str,
        focal_sc: &str,
        dimension: Dimension,
        mode: CountingMode,
    ) -> Result<()> {
        for (partner, count) in corpus.edges_of(focal_journal, dimension) {
            if count == 0 {
                continue;
            }
            let count = count as f64;
            if corpus.is_internal(partner, focal_sc)? {
                self.internal += count;
                continue;
            }
            self.external_raw += count;
            let memberships = &corpus.journal(partner)?.sc_memberships;
            let share = match mode {
                CountingMode::Whole => count,
                CountingMode::Fractional => count / memberships.len() as f64,
            };
            for sc in memberships {
                *self.external.entry(sc.clone()).or_insert(0.0) += share;
            }
        }
        Ok(())
    }

    fn finish(self, unit_id: &str, focal_sc: &str, dimension: Dimension) -> CitationProfile {
        CitationProfile {
            unit_id: unit_id.to_string(),
            focal_sc: focal_sc.to_string(),
            dimension,
            internal_count: self.internal,
            total: self.internal + self.external_raw,
            external_citations: self.external_raw,
            external_counts: self.external,
        }
    }
}

/// Classify every edge of `journal_id` in `dimension` against `focal_sc`.
pub fn build_profile(
    corpus: &Corpus,
    journal_id: &str,
    focal_sc: &str,
    dimension: Dimension,
    mode: CountingMode,
) -> Result<CitationProfile> {
    let journal = corpus.journal(journal_id)?;
    if !journal.is_member_of(focal_sc) {
        return Err(Error::NotAMember {
            journal: journal_id.to_string(),
            sc: focal_sc.to_string(),
        });
    }
    let mut builder = ProfileBuilder::new();
    builder.add_edges(corpus, journal_id, focal_sc, dimension, mode)?;
    Ok(builder.finish(journal_id, focal_sc, dimension))
}

/// Profile of a whole subject category: the pooled edges of every journal
/// classified in `sc_id`, with `sc_id` as the focal category.
pub fn build_discipline_profile(
    corpus: &Corpus,
    sc_id: &str,
    dimension: Dimension,
    mode: CountingMode,
) -> Result<CitationProfile> {
    corpus.category(sc_id)?;
    let mut builder = ProfileBuilder::new();
    for journal in corpus.journals_in(sc_id) {
        builder.add_edges(corpus, &journal.journal_id, sc_id, dimension, mode)?;
    }
    Ok(builder.finish(sc_id, sc_id, dimension))
}

/// `-Σ p ln p` over the normalised counts. Non-positive counts contribute
/// nothing; an empty distribution has entropy 0.
pub fn shannon_entropy<I>(counts: I) -> f64
where
    I: IntoIterator<Item = f64>,
    I::IntoIter: Clone,
{
    let counts = counts.into_iter().filter(|&c| c > 0.0);
    let sum: f64 = counts.clone().sum();
    if sum <= 0.0 {
        return 0.0;
    }
    let h = -counts
        .map(|c| {
            let p = c / sum;
            p * p.ln()
        })
        .sum::<f64>();
    // a single category gives -(1 * ln 1) = -0.0
    h.max(0.0)
}

pub fn max_entropy(n_categories: usize) -> Result<f64> {
    if n_categories < 2 {
        return Err(Error::InvalidCategoryCount {
            got: n_categories,
            min: 2,
        });
    }
    Ok((n_categories as f64).ln())
}

/// `100 · entropy / ln n_categories`.
pub fn pct_of_max_entropy(entropy: f64, n_categories: usize) -> Result<f64> {
    Ok(pct_of_entropy_ceiling(entropy, max_entropy(n_categories)?))
}

/// `100 · entropy / max_entropy` for an explicit ceiling.
pub fn pct_of_entropy_ceiling(entropy: f64, max_entropy: f64) -> f64 {
    100.0 * entropy / max_entropy
}

pub fn raw_diversity(profile: &CitationProfile) -> usize {
    profile.external_counts.values().filter(|&&c| c > 0.0).count()
}

pub fn distribution_stats(profile: &CitationProfile, n_categories: usize) -> Result<DistributionStats> {
    let entropy = shannon_entropy(profile.external_counts.values().copied());
    let max_entropy = max_entropy(n_categories)?;
    Ok(DistributionStats {
        entropy,
        max_entropy,
        pct_hmax: pct_of_entropy_ceiling(entropy, max_entropy),
        raw_diversity: raw_diversity(profile),
    })
}

/// The indicator from its two percentage terms.
pub fn ebdi_value(pct_internal: f64, pct_hmax: f64) -> f64 {
    pct_internal / (pct_hmax + 1.0)
}

pub fn compute_ebdi(profile: &CitationProfile, n_categories: usize) -> Result<EbdiScore> {
    if profile.total <= 0.0 {
        return Err(Error::NoCitations {
            unit: profile.unit_id.clone(),
            sc: profile.focal_sc.clone(),
            dimension: profile.dimension,
        });
    }
    let stats = distribution_stats(profile, n_categories)?;
    let pct_internal = 100.0 * profile.internal_count / profile.total;
    let ebdi = ebdi_value(pct_internal, stats.pct_hmax);
    if !ebdi.is_finite() {
        return Err(Error::Arithmetic(format!(
            "non-finite indicator for `{}` in `{}`",
            profile.unit_id, profile.focal_sc
        )));
    }
    Ok(EbdiScore {
        unit_id: profile.unit_id.clone(),
        focal_sc: profile.focal_sc.clone(),
        dimension: profile.dimension,
        total: profile.total,
        pct_internal,
        external_citations: profile.external_citations,
        stats,
        ebdi,
    })
}

fn score_or_missing(profile: &CitationProfile, n_categories: usize) -> Result<Option<EbdiScore>> {
    match compute_ebdi(profile, n_categories) {
        Ok(score) => Ok(Some(score)),
        Err(Error::NoCitations { .. }) => Ok(None),
        Err(e) => Err(e),
    }
}

pub fn compute_journal_indicators(
    corpus: &Corpus,
    journal_id: &str,
    focal_sc: &str,
    mode: CountingMode,
) -> Result<IndicatorPair> {
    let n = corpus.n_categories();
    let cited = build_profile(corpus, journal_id, focal_sc, Dimension::Cited, mode)?;
    let citing = build_profile(corpus, journal_id, focal_sc, Dimension::Citing, mode)?;
    Ok(IndicatorPair {
        cited: score_or_missing(&cited, n)?,
        citing: score_or_missing(&citing, n)?,
    })
}

pub fn compute_discipline_indicators(
    corpus: &Corpus,
    sc_id: &str,
    mode: CountingMode,
) -> Result<IndicatorPair> {
    let n = corpus.n_categories();
    let cited = build_discipline_profile(corpus, sc_id, Dimension::Cited, mode)?;
    let citing = build_discipline_profile(corpus, sc_id, Dimension::Citing, mode)?;
    Ok(IndicatorPair {
        cited: score_or_missing(&cited, n)?,
        citing: score_or_missing(&citing, n)?,
    })
}
