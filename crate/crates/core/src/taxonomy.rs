//! HIGH/LOW levels at the per-dimension median and the role labels derived
//! from them.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::corpus::Dimension;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Level {
    Low,
    High,
}

impl Level {
    pub fn as_str(self) -> &'static str {
        match self {
            Level::Low => "LOW",
            Level::High => "HIGH",
        }
    }
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LevelAssignment {
    pub unit_id: String,
    pub dimension: Dimension,
    pub ebdi: f64,
    pub level: Level,
    pub threshold: f64,
}

/// Journal role from the combination of citing and cited levels.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum JournalRole {
    /// Disciplinary in both dimensions.
    Core,
    /// Cites across categories, cited from within its own.
    KnowledgeImporter,
    /// Cites within its own category, cited from others.
    KnowledgeExporter,
    /// Multidisciplinary in both dimensions.
    Tangential,
}

impl JournalRole {
    pub const ALL: [JournalRole; 4] = [
        JournalRole::Core,
        JournalRole::KnowledgeImporter,
        JournalRole::KnowledgeExporter,
        JournalRole::Tangential,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            JournalRole::Core => "CORE",
            JournalRole::KnowledgeImporter => "KNOWLEDGE_IMPORTER",
            JournalRole::KnowledgeExporter => "KNOWLEDGE_EXPORTER",
            JournalRole::Tangential => "TANGENTIAL",
        }
    }
}

impl fmt::Display for JournalRole {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum DisciplineKind {
    Importer,
    Exporter,
    Balanced,
}

impl DisciplineKind {
    pub fn as_str(self) -> &'static str {
        match self {
            DisciplineKind::Importer => "IMPORTER",
            DisciplineKind::Exporter => "EXPORTER",
            DisciplineKind::Balanced => "BALANCED",
        }
    }
}

impl fmt::Display for DisciplineKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DisciplineType {
    pub sc_id: String,
    pub cited_ebdi: f64,
    pub citing_ebdi: f64,
    /// `cited_ebdi - citing_ebdi`
    pub difference: f64,
    pub kind: DisciplineKind,
}

/// Median of `values`: the middle order statistic for odd lengths, the mean
/// of the two middle ones for even lengths.
pub fn median_threshold(values: &[f64]) -> Result<f64> {
    if values.is_empty() {
        return Err(Error::EmptyValues);
    }
    let mut sorted = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    let m = sorted.len();
    Ok(if m % 2 == 1 {
        sorted[m / 2]
    } else {
        (sorted[m / 2 - 1] + sorted[m / 2]) / 2.0
    })
}

pub fn level_for(value: f64, threshold: f64) -> Level {
    if value >= threshold {
        Level::High
    } else {
        Level::Low
    }
}

/// Split one dimension's scores at their median. Values at the median are HIGH.
pub fn assign_levels(scores: &[(String, f64)], dimension: Dimension) -> Result<Vec<LevelAssignment>> {
    if scores.len() < 2 {
        return Err(Error::TooFewUnits(scores.len()));
    }
    let values: Vec<f64> = scores.iter().map(|(_, v)| *v).collect();
    let threshold = median_threshold(&values)?;
    Ok(scores
        .iter()
        .map(|(unit_id, ebdi)| LevelAssignment {
            unit_id: unit_id.clone(),
            dimension,
            ebdi: *ebdi,
            level: level_for(*ebdi, threshold),
            threshold,
        })
        .collect())
}

pub fn classify_journal(cited: Level, citing: Level) -> JournalRole {
    match (citing, cited) {
        (Level::High, Level::High) => JournalRole::Core,
        (Level::Low, Level::High) => JournalRole::KnowledgeImporter,
        (Level::High, Level::Low) => JournalRole::KnowledgeExporter,
        (Level::Low, Level::Low) => JournalRole::Tangential,
    }
}

/// A discipline more disciplinary in the cited dimension than in the citing
/// one imports knowledge; the opposite exports it.
pub fn classify_discipline(sc_id: impl Into<String>, cited_ebdi: f64, citing_ebdi: f64) -> DisciplineType {
    let difference = cited_ebdi - citing_ebdi;
    let kind = if difference > 0.0 {
        DisciplineKind::Importer
    } else if difference < 0.0 {
        DisciplineKind::Exporter
    } else {
        DisciplineKind::Balanced
    };
    DisciplineType {
        sc_id: sc_id.into(),
        cited_ebdi,
        citing_ebdi,
        difference,
        kind,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct UnitRole {
    pub unit_id: String,
    pub cited_ebdi: Option<f64>,
    pub citing_ebdi: Option<f64>,
    pub cited_level: Option<Level>,
    pub citing_level: Option<Level>,
    /// `None` when either dimension is missing.
    pub role: Option<JournalRole>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RoleTable {
    pub cited_threshold: f64,
    pub citing_threshold: f64,
    pub units: Vec<UnitRole>,
}

impl RoleTable {
    pub fn count(&self, role: JournalRole) -> usize {
        self.units.iter().filter(|u| u.role == Some(role)).count()
    }

    pub fn classified(&self) -> impl Iterator<Item = &UnitRole> {
        self.units.iter().filter(|u| u.role.is_some())
    }
}

/// Levels and roles for a set of units given `(unit_id, cited, citing)`.
///
/// Each dimension's threshold is the median over the units that have a
/// value in it; every dimension needs at least two.
pub fn build_role_table(units: &[(String, Option<f64>, Option<f64>)]) -> Result<RoleTable> {
    let cited: Vec<(String, f64)> = units.iter().filter_map(|(u, c, _)| c.map(|c| (u.clone(), c))).collect();
    let citing: Vec<(String, f64)> = units.iter().filter_map(|(u, _, c)| c.map(|c| (u.clone(), c))).collect();
    let cited_threshold = assign_levels(&cited, Dimension::Cited)?[0].threshold;
    let citing_threshold = assign_levels(&citing, Dimension::Citing)?[0].threshold;
    let units = units
        .iter()
        .map(|(unit_id, cited, citing)| {
            let cited_level = cited.map(|v| level_for(v, cited_threshold));
            let citing_level = citing.map(|v| level_for(v, citing_threshold));
            UnitRole {
                unit_id: unit_id.clone(),
                cited_ebdi: *cited,
                citing_ebdi: *citing,
                cited_level,
                citing_level,
                role: cited_level.zip(citing_level).map(|(c, g)| classify_journal(c, g)),
            }
        })
        .collect();
    Ok(RoleTable {
        cited_threshold,
        citing_threshold,
        units,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn scores(values: &[f64]) -> Vec<(String, f64)> {
        values.iter().enumerate().map(|(i, v)| (format!("u{i}"), *v)).collect()
    }

    #[test]
    fn median_examples() {
        assert_eq!(median_threshold(&[1.0, 2.0, 3.0]).unwrap(), 2.0);
        assert_eq!(median_threshold(&[4.0, 1.0, 3.0, 2.0]).unwrap(), 2.5);
        assert!(matches!(median_threshold(&[]), Err(Error::EmptyValues)));
    }

    #[test]
    fn level_examples() {
        let l = assign_levels(&scores(&[0.2, 0.8]), Dimension::Cited).unwrap();
        assert_eq!(l[0].threshold, 0.5);
        assert_eq!((l[0].level, l[1].level), (Level::Low, Level::High));

        let l = assign_levels(&scores(&[1.0, 2.0, 3.0]), Dimension::Citing).unwrap();
        assert_eq!(l[1].ebdi, l[1].threshold);
        assert_eq!(l[1].level, Level::High);

        assert!(matches!(
            assign_levels(&scores(&[1.0]), Dimension::Cited),
            Err(Error::TooFewUnits(1))
        ));
    }

    #[test]
    fn role_table_rows() {
        use JournalRole::*;
        use Level::*;
        assert_eq!(classify_journal(High, High), Core);
        assert_eq!(classify_journal(High, Low), KnowledgeImporter);
        assert_eq!(classify_journal(Low, High), KnowledgeExporter);
        assert_eq!(classify_journal(Low, Low), Tangential);
    }

    #[test]
    fn discipline_examples() {
        let d = classify_discipline("PSYCHOANALYSIS", 2.391, 1.823);
        assert_eq!(d.kind, DisciplineKind::Importer);
        assert!((d.difference - 0.57).abs() < 0.01);
        let d = classify_discipline("ETHNIC STUDIES", 0.31, 0.34);
        assert_eq!(d.kind, DisciplineKind::Exporter);
        assert!((d.difference + 0.03).abs() < 0.01);
        assert_eq!(classify_discipline("X", 0.5, 0.5).kind, DisciplineKind::Balanced);
    }

    #[test]
    fn role_table_with_missing_dimension() {
        let units = vec![
            ("a".to_string(), Some(1.0), Some(1.0)),
            ("b".to_string(), Some(3.0), Some(3.0)),
            ("c".to_string(), Some(2.0), None),
        ];
        let t = build_role_table(&units).unwrap();
        assert_eq!(t.cited_threshold, 2.0);
        assert_eq!(t.citing_threshold, 2.0);
        assert_eq!(t.units[0].role, Some(JournalRole::Tangential));
        assert_eq!(t.units[1].role, Some(JournalRole::Core));
        assert_eq!(t.units[2].cited_level, Some(Level::High));
        assert_eq!(t.units[2].role, None);
        assert_eq!(t.classified().count(), 2);
    }

    /// Brute-force: v is a valid split point iff the number of values >= v
    /// is what the median rule predicts.
    fn high_count_oracle(values: &[f64], threshold: f64) -> usize {
        values.iter().filter(|&&v| v >= threshold).count()
    }

    proptest! {
        #[test]
        fn median_splits_in_half(values in prop::collection::vec(0.0f64..10.0, 20)) {
            let t = median_threshold(&values).unwrap();
            let mut sorted = values.clone();
            sorted.sort_by(f64::total_cmp);
            prop_assert_eq!(t, (sorted[9] + sorted[10]) / 2.0);
            let high = high_count_oracle(&values, t);
            if sorted[9] < sorted[10] {
                prop_assert_eq!(high, 10);
            } else {
                // tie across the middle: everything equal to the median is HIGH
                prop_assert!(high >= 10);
            }
            let l = assign_levels(&scores(&values), Dimension::Cited).unwrap();
            prop_assert_eq!(l.iter().filter(|a| a.level == Level::High).count(), high);
        }

        #[test]
        fn raising_a_value_never_demotes_it(
            values in prop::collection::vec(0.0f64..10.0, 2..30),
            idx in 0usize..30,
            bump in 0.0f64..5.0,
        ) {
            let idx = idx % values.len();
            let before = assign_levels(&scores(&values), Dimension::Cited).unwrap();
            let mut raised = values.clone();
            raised[idx] += bump;
            // fixed threshold
            prop_assert!(level_for(raised[idx], before[0].threshold) >= before[idx].level);
            // recomputed threshold
            let after = assign_levels(&scores(&raised), Dimension::Cited).unwrap();
            prop_assert!(after[idx].level >= before[idx].level);
        }

        #[test]
        fn levels_invariant_under_monotone_maps(values in prop::collection::vec(0.0f64..10.0, 2..30)) {
            let a = assign_levels(&scores(&values), Dimension::Cited).unwrap();
            let mapped: Vec<f64> = values.iter().map(|v| (v * 0.7).exp() + v.powi(3)).collect();
            let b = assign_levels(&scores(&mapped), Dimension::Cited).unwrap();
            for (x, y) in a.iter().zip(&b) {
                prop_assert_eq!(x.level, y.level);
            }
        }
    }
}
