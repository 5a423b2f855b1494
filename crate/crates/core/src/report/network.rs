//! Subject-category citation network as a weighted edge list.
//!
//! Edges point from the citing category to the cited one. For a journal
//! edge `(focal, partner, CITING)` the focal journal is the citer; for
//! `CITED` the partner is. Each citation is credited to every
//! (citer category, cited category) pair: in full under whole counting, or
//! split evenly over the pairs under fractional counting.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::corpus::{Corpus, Dimension};
use crate::error::{Error, Result};
use crate::metrics::CountingMode;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NetworkEdge {
    pub source_sc: String,
    pub target_sc: String,
    pub weight: f64,
}

/// All category-to-category weights for one dimension.
pub fn aggregate_sc_network(
    corpus: &Corpus,
    dimension: Dimension,
    counting: CountingMode,
) -> Result<BTreeMap<(String, String), f64>> {
    let mut weights: BTreeMap<(String, String), f64> = BTreeMap::new();
    for edge in corpus.edges().filter(|e| e.dimension == dimension && e.count > 0) {
        let (citer, cited) = match dimension {
            Dimension::Citing => (&edge.focal_journal, &edge.partner_journal),
            Dimension::Cited => (&edge.partner_journal, &edge.focal_journal),
        };
        let sources = &corpus.journal(citer)?.sc_memberships;
        let targets = &corpus.journal(cited)?.sc_memberships;
        let share = match counting {
            CountingMode::Whole => edge.count as f64,
            CountingMode::Fractional => edge.count as f64 / (sources.len() * targets.len()) as f64,
        };
        for s in sources {
            for t in targets {
                *weights.entry((s.clone(), t.clone())).or_insert(0.0) += share;
            }
        }
    }
    Ok(weights)
}

/// Total weight incident to each category; a self-loop counts once.
pub fn category_volumes(weights: &BTreeMap<(String, String), f64>) -> BTreeMap<String, f64> {
    let mut volume: BTreeMap<String, f64> = BTreeMap::new();
    for ((s, t), w) in weights {
        *volume.entry(s.clone()).or_insert(0.0) += w;
        if s != t {
            *volume.entry(t.clone()).or_insert(0.0) += w;
        }
    }
    volume
}

/// Edge list restricted to the `top_k` categories by citation volume (ties
/// broken by category id), sorted by weight descending, then source and
/// target. Returns warnings alongside the edges.
pub fn export_sc_network(
    corpus: &Corpus,
    dimension: Dimension,
    top_k: usize,
    counting: CountingMode,
) -> Result<(Vec<NetworkEdge>, Vec<String>)> {
    if top_k == 0 {
        return Err(Error::InvalidTopK);
    }
    let weights = aggregate_sc_network(corpus, dimension, counting)?;
    let mut ranked: Vec<(String, f64)> = category_volumes(&weights).into_iter().collect();
    ranked.sort_by(|a, b| b.1.total_cmp(&a.1).then_with(|| a.0.cmp(&b.0)));

    let mut warnings = Vec::new();
    if top_k > ranked.len() {
        warnings.push(format!(
            "top_k = {top_k} but only {} subject categories have citations in dimension {dimension}; emitting all",
            ranked.len()
        ));
    }
    let kept: BTreeSet<String> = ranked.into_iter().take(top_k).map(|(sc, _)| sc).collect();

    let mut edges: Vec<NetworkEdge> = weights
        .into_iter()
        .filter(|((s, t), _)| kept.contains(s) && kept.contains(t))
        .map(|((source_sc, target_sc), weight)| NetworkEdge {
            source_sc,
            target_sc,
            weight,
        })
        .collect();
    edges.sort_by(|a, b| {
        b.weight
            .total_cmp(&a.weight)
            .then_with(|| a.source_sc.cmp(&b.source_sc))
            .then_with(|| a.target_sc.cmp(&b.target_sc))
    });
    Ok((edges, warnings))
}
