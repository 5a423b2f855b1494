//! Classification system and citation edge lists.
//!
//! A [`Corpus`] is built in two steps: [`Classification::from_readers`] loads
//! the subject-category and journal registries, then
//! [`Classification::load_edges`] attaches the citation counts. The result is
//! immutable and can be shared freely between threads.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::fs::File;
use std::io::Read;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const SC_HEADER: [&str; 3] = ["sc_id", "name", "branch"];
pub const JOURNAL_HEADER: [&str; 3] = ["journal_id", "title", "sc_memberships"];
pub const CITATION_HEADER: [&str; 4] = ["focal_journal_id", "partner_journal_id", "dimension", "count"];

/// Direction of a citation relative to the analysed unit.
#[derive(
    Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize, clap::ValueEnum,
)]
#[serde(rename_all = "UPPERCASE")]
pub enum Dimension {
    /// Citations received by the unit.
    Cited,
    /// Citations made by the unit.
    Citing,
}

impl Dimension {
    pub const BOTH: [Dimension; 2] = [Dimension::Cited, Dimension::Citing];

    pub fn as_str(self) -> &'static str {
        match self {
            Dimension::Cited => "CITED",
            Dimension::Citing => "CITING",
        }
    }
}

impl fmt::Display for Dimension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Dimension {
    type Err = ();

    fn from_str(s: &str) -> std::result::Result<Self, ()> {
        if s.eq_ignore_ascii_case("cited") {
            Ok(Dimension::Cited)
        } else if s.eq_ignore_ascii_case("citing") {
            Ok(Dimension::Citing)
        } else {
            Err(())
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubjectCategory {
    pub sc_id: String,
    pub name: String,
    pub branch: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Journal {
    pub journal_id: String,
    pub title: String,
    pub sc_memberships: BTreeSet<String>,
}

impl Journal {
    pub fn is_member_of(&self, sc_id: &str) -> bool {
        self.sc_memberships.contains(sc_id)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CitationEdge {
    pub focal_journal: String,
    pub partner_journal: String,
    pub dimension: Dimension,
    pub count: u64,
}

/// Subject categories and journals, without citation data yet.
#[derive(Debug, Clone)]
pub struct Classification {
    categories: BTreeMap<String, SubjectCategory>,
    journals: BTreeMap<String, Journal>,
    n_categories: usize,
}

/// Counts reported after attaching a citation file.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EdgeLoadSummary {
    pub rows: usize,
    pub edges: usize,
    pub total_citations: u64,
}

fn open(path: &Path) -> Result<File> {
    File::open(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn file_label(path: &Path) -> String {
    path.display().to_string()
}

fn csv_reader<R: Read>(input: R) -> csv::Reader<R> {
    csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .from_reader(input)
}

fn check_header<R: Read>(reader: &mut csv::Reader<R>, file: &str, expected: &[&str]) -> Result<()> {
    let bad = || Error::BadHeader {
        file: file.to_string(),
        expected: expected.join(","),
    };
    let header = reader.headers().map_err(|_| bad())?;
    // An entirely empty file has an empty header row; callers decide if that is allowed.
    if header.iter().map(|h| h.trim_start_matches('\u{feff}')).ne(expected.iter().copied()) {
        return Err(bad());
    }
    Ok(())
}

fn malformed(file: &str, err: csv::Error) -> Error {
    let line = err.position().map(|p| p.line()).unwrap_or(0);
    Error::MalformedRow {
        file: file.to_string(),
        line,
        message: err.to_string(),
    }
}

fn line_of(record: &csv::StringRecord) -> u64 {
    record.position().map(|p| p.line()).unwrap_or(0)
}

impl Classification {
    pub fn from_paths(sc_file: &Path, journal_file: &Path) -> Result<Self> {
        Self::from_readers(
            open(sc_file)?,
            &file_label(sc_file),
            open(journal_file)?,
            &file_label(journal_file),
        )
    }

    /// Parse `subject_categories.csv` and `journals.csv` style inputs.
    ///
    /// The labels are only used in error messages.
    pub fn from_readers<A: Read, B: Read>(
        sc_input: A,
        sc_label: &str,
        journal_input: B,
        journal_label: &str,
    ) -> Result<Self> {
        let mut categories = BTreeMap::new();
        let mut reader = csv_reader(sc_input);
        check_header(&mut reader, sc_label, &SC_HEADER)?;
        for record in reader.records() {
            let record = record.map_err(|e| malformed(sc_label, e))?;
            let line = line_of(&record);
            let sc_id = record[0].to_string();
            let name = record[1].to_string();
            if sc_id.is_empty() || name.is_empty() {
                return Err(Error::MalformedRow {
                    file: sc_label.to_string(),
                    line,
                    message: "sc_id and name must be non-empty".into(),
                });
            }
            let branch = Some(record[2].to_string()).filter(|b| !b.is_empty());
            if categories.contains_key(&sc_id) {
                return Err(Error::DuplicateCategory(sc_id));
            }
            categories.insert(sc_id.clone(), SubjectCategory { sc_id, name, branch });
        }

        let mut journals = BTreeMap::new();
        let mut reader = csv_reader(journal_input);
        check_header(&mut reader, journal_label, &JOURNAL_HEADER)?;
        for record in reader.records() {
            let record = record.map_err(|e| malformed(journal_label, e))?;
            let line = line_of(&record);
            let journal_id = record[0].to_string();
            if journal_id.is_empty() {
                return Err(Error::MalformedRow {
                    file: journal_label.to_string(),
                    line,
                    message: "journal_id must be non-empty".into(),
                });
            }
            let mut sc_memberships = BTreeSet::new();
            for sc in record[2].split(';').map(str::trim).filter(|s| !s.is_empty()) {
                if !categories.contains_key(sc) {
                    return Err(Error::UnknownCategory {
                        journal: journal_id,
                        sc: sc.to_string(),
                    });
                }
                if !sc_memberships.insert(sc.to_string()) {
                    return Err(Error::DuplicateMembership {
                        journal: journal_id,
                        sc: sc.to_string(),
                    });
                }
            }
            if sc_memberships.is_empty() {
                return Err(Error::JournalWithoutCategory {
                    journal: journal_id,
                    line,
                });
            }
            if journals.contains_key(&journal_id) {
                return Err(Error::DuplicateJournal(journal_id));
            }
            journals.insert(
                journal_id.clone(),
                Journal {
                    journal_id,
                    title: record[1].to_string(),
                    sc_memberships,
                },
            );
        }

        let n_categories = categories.len();
        Ok(Self {
            categories,
            journals,
            n_categories,
        })
    }

    pub fn n_categories(&self) -> usize {
        self.n_categories
    }

    pub fn categories(&self) -> &BTreeMap<String, SubjectCategory> {
        &self.categories
    }

    pub fn journals(&self) -> &BTreeMap<String, Journal> {
        &self.journals
    }

    pub fn load_edges_from_path(self, citation_file: &Path) -> Result<(Corpus, EdgeLoadSummary)> {
        let label = file_label(citation_file);
        self.load_edges(open(citation_file)?, &label)
    }

    /// Attach a `citations.csv` style edge list. Repeated
    /// `(focal, partner, dimension)` rows are summed.
    pub fn load_edges<R: Read>(self, input: R, label: &str) -> Result<(Corpus, EdgeLoadSummary)> {
        let mut raw = String::new();
        let mut input = input;
        input.read_to_string(&mut raw).map_err(|source| Error::Io {
            path: label.into(),
            source,
        })?;

        let mut edges: BTreeMap<EdgeKey, u64> = BTreeMap::new();
        let mut rows = 0;
        if !raw.trim().is_empty() {
            let mut reader = csv_reader(raw.as_bytes());
            check_header(&mut reader, label, &CITATION_HEADER)?;
            for record in reader.records() {
                let record = record.map_err(|e| malformed(label, e))?;
                let line = line_of(&record);
                let (focal, partner) = (&record[0], &record[1]);
                for id in [focal, partner] {
                    if !self.journals.contains_key(id) {
                        return Err(Error::UnknownJournalRef {
                            file: label.to_string(),
                            line,
                            journal: id.to_string(),
                        });
                    }
                }
                let dimension: Dimension = record[2].parse().map_err(|_| Error::BadDimension {
                    file: label.to_string(),
                    line,
                    value: record[2].to_string(),
                })?;
                let count: i64 = record[3].parse().map_err(|_| Error::MalformedRow {
                    file: label.to_string(),
                    line,
                    message: format!("count `{}` is not an integer", &record[3]),
                })?;
                if count < 0 {
                    return Err(Error::NegativeCount {
                        file: label.to_string(),
                        line,
                        count,
                    });
                }
                let key = EdgeKey {
                    focal: focal.to_string(),
                    dimension,
                    partner: partner.to_string(),
                };
                let slot = edges.entry(key).or_insert(0);
                *slot = slot.checked_add(count as u64).ok_or_else(|| {
                    Error::Arithmetic(format!("{label}:{line}: citation count overflow"))
                })?;
                rows += 1;
            }
        }

        let total_citations = edges.values().sum();
        let summary = EdgeLoadSummary {
            rows,
            edges: edges.len(),
            total_citations,
        };
        Ok((
            Corpus {
                classification: self,
                edges,
            },
            summary,
        ))
    }

    /// Override the `n` used for the maximum entropy `ln n`.
    pub fn with_n_categories(mut self, n: usize) -> Result<Self> {
        let used: BTreeSet<&str> = self
            .journals
            .values()
            .flat_map(|j| j.sc_memberships.iter().map(String::as_str))
            .collect();
        let min = used.len().max(2);
        if n < min {
            return Err(Error::InvalidCategoryCount { got: n, min });
        }
        self.n_categories = n;
        Ok(self)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
struct EdgeKey {
    focal: String,
    dimension: Dimension,
    partner: String,
}

/// Registry of subject categories and journals plus merged citation edges.
#[derive(Debug, Clone)]
pub struct Corpus {
    classification: Classification,
    edges: BTreeMap<EdgeKey, u64>,
}

impl Corpus {
    pub fn n_categories(&self) -> usize {
        self.classification.n_categories
    }

    pub fn with_n_categories(self, n: usize) -> Result<Self> {
        Ok(Self {
            classification: self.classification.with_n_categories(n)?,
            edges: self.edges,
        })
    }

    pub fn categories(&self) -> &BTreeMap<String, SubjectCategory> {
        &self.classification.categories
    }

    pub fn journals(&self) -> &BTreeMap<String, Journal> {
        &self.classification.journals
    }

    pub fn journal(&self, journal_id: &str) -> Result<&Journal> {
        self.classification
            .journals
            .get(journal_id)
            .ok_or_else(|| Error::UnknownJournal(journal_id.to_string()))
    }

    pub fn category(&self, sc_id: &str) -> Result<&SubjectCategory> {
        self.classification
            .categories
            .get(sc_id)
            .ok_or_else(|| Error::UnknownSubjectCategory(sc_id.to_string()))
    }

    /// Journals classified in `sc_id`, in id order.
    pub fn journals_in<'a>(&'a self, sc_id: &'a str) -> impl Iterator<Item = &'a Journal> + 'a {
        self.classification
            .journals
            .values()
            .filter(move |j| j.is_member_of(sc_id))
    }

    /// All merged edges, ordered by focal journal, dimension, then partner.
    pub fn edges(&self) -> impl Iterator<Item = CitationEdge> + '_ {
        self.edges.iter().map(|(k, &count)| CitationEdge {
            focal_journal: k.focal.clone(),
            partner_journal: k.partner.clone(),
            dimension: k.dimension,
            count,
        })
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// `(partner, count)` pairs of one journal in one dimension.
    pub fn edges_of<'a>(
        &'a self,
        focal: &'a str,
        dimension: Dimension,
    ) -> impl Iterator<Item = (&'a str, u64)> + 'a {
        let start = EdgeKey {
            focal: focal.to_string(),
            dimension,
            partner: String::new(),
        };
        self.edges
            .range(start..)
            .take_while(move |(k, _)| k.focal == focal && k.dimension == dimension)
            .map(|(k, &c)| (k.partner.as_str(), c))
    }

    /// Whether a citation with `partner` counts as internal to `focal_sc`:
    /// true iff the partner is classified in `focal_sc` (among possibly others).
    pub fn is_internal(&self, partner: &str, focal_sc: &str) -> Result<bool> {
        Ok(self.journal(partner)?.is_member_of(focal_sc))
    }
}
