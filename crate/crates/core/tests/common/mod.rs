#![allow(dead_code)]

use std::collections::HashMap;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use ebdi::report::{CorpusInputs, RunConfig};
use ebdi::{Classification, Corpus, CountingMode};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Raw, unmerged inputs kept as plain tuples so the oracle never touches the
/// crate's data structures.
#[derive(Debug, Clone)]
pub struct RawCorpus {
    pub scs: Vec<String>,
    pub journals: Vec<(String, Vec<String>)>,
    /// (focal, partner, dimension as written, count)
    pub rows: Vec<(String, String, String, u64)>,
}

impl RawCorpus {
    pub fn sc_csv(&self) -> String {
        let mut s = String::from("sc_id,name,branch\n");
        for sc in &self.scs {
            let _ = writeln!(s, "{sc},Category {sc},");
        }
        s
    }

    pub fn journal_csv(&self) -> String {
        let mut s = String::from("journal_id,title,sc_memberships\n");
        for (id, scs) in &self.journals {
            let _ = writeln!(s, "{id},Journal {id},{}", scs.join(";"));
        }
        s
    }

    pub fn citation_csv(&self) -> String {
        let mut s = String::from("focal_journal_id,partner_journal_id,dimension,count\n");
        for (f, p, d, c) in &self.rows {
            let _ = writeln!(s, "{f},{p},{d},{c}");
        }
        s
    }

    pub fn load(&self) -> Corpus {
        Classification::from_readers(
            self.sc_csv().as_bytes(),
            "subject_categories.csv",
            self.journal_csv().as_bytes(),
            "journals.csv",
        )
        .unwrap()
        .load_edges(self.citation_csv().as_bytes(), "citations.csv")
        .unwrap()
        .0
    }

    pub fn write_to(&self, dir: &Path) -> CorpusInputs {
        fs::create_dir_all(dir).unwrap();
        let inputs = CorpusInputs {
            classification: dir.join("subject_categories.csv"),
            journals: dir.join("journals.csv"),
            citations: dir.join("citations.csv"),
        };
        fs::write(&inputs.classification, self.sc_csv()).unwrap();
        fs::write(&inputs.journals, self.journal_csv()).unwrap();
        fs::write(&inputs.citations, self.citation_csv()).unwrap();
        inputs
    }

    pub fn config(&self, dir: &Path, out: impl Into<PathBuf>) -> RunConfig {
        RunConfig::new(self.write_to(dir), out)
    }
}

/// Up to 10 journals, 2 to 5 categories, counts in 0..=20, with repeated
/// rows and mixed-case dimension tags.
pub fn random_corpus(seed: u64) -> RawCorpus {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n_sc = rng.random_range(2..=5);
    let scs: Vec<String> = (0..n_sc).map(|i| format!("SC{i}")).collect();
    let n_j = rng.random_range(1..=10);
    let journals: Vec<(String, Vec<String>)> = (0..n_j)
        .map(|j| {
            let k = rng.random_range(1..=n_sc.min(3));
            let mut picked: Vec<String> = Vec::new();
            while picked.len() < k {
                let sc = scs[rng.random_range(0..n_sc)].clone();
                if !picked.contains(&sc) {
                    picked.push(sc);
                }
            }
            (format!("J{j}"), picked)
        })
        .collect();
    let n_rows = rng.random_range(0..40);
    let rows = (0..n_rows)
        .map(|_| {
            let f = journals[rng.random_range(0..n_j)].0.clone();
            let p = journals[rng.random_range(0..n_j)].0.clone();
            let d = ["CITED", "CITING", "cited", "Citing"][rng.random_range(0..4)].to_string();
            (f, p, d, rng.random_range(0..=20))
        })
        .collect();
    RawCorpus { scs, journals, rows }
}

/// Straight-line recomputation of one (journal, focal category, dimension)
/// from the raw rows.
#[derive(Debug, Clone, PartialEq)]
pub struct OracleRow {
    pub unit_id: String,
    pub focal_sc: String,
    pub dimension: String,
    pub total: f64,
    pub pct_internal: f64,
    pub sum_external: f64,
    pub entropy: f64,
    pub max_entropy: f64,
    pub pct_hmax: f64,
    pub ebdi: f64,
    pub raw_diversity: usize,
}

pub fn oracle_row(
    raw: &RawCorpus,
    journal: &str,
    focal_sc: &str,
    dimension: &str,
    mode: CountingMode,
    n_categories: usize,
) -> Option<OracleRow> {
    let memberships = |id: &str| -> &Vec<String> { &raw.journals.iter().find(|(j, _)| j == id).unwrap().1 };
    let mut internal = 0.0;
    let mut external = 0.0;
    let mut dist: HashMap<&str, f64> = HashMap::new();
    for (f, p, d, c) in &raw.rows {
        if f != journal || !d.eq_ignore_ascii_case(dimension) {
            continue;
        }
        let c = *c as f64;
        let ms = memberships(p);
        if ms.iter().any(|m| m == focal_sc) {
            internal += c;
        } else {
            external += c;
            for m in ms {
                let w = match mode {
                    CountingMode::Whole => c,
                    CountingMode::Fractional => c / ms.len() as f64,
                };
                *dist.entry(m.as_str()).or_default() += w;
            }
        }
    }
    let total = internal + external;
    if total == 0.0 {
        return None;
    }
    // H = ln X - (1/X) Σ x ln x
    let x_sum: f64 = dist.values().filter(|v| **v > 0.0).sum();
    let entropy = if x_sum > 0.0 {
        x_sum.ln() - dist.values().filter(|v| **v > 0.0).map(|x| x * x.ln()).sum::<f64>() / x_sum
    } else {
        0.0
    };
    let max_entropy = (n_categories as f64).ln();
    let pct_hmax = 100.0 * entropy / max_entropy;
    let pct_internal = 100.0 * internal / total;
    Some(OracleRow {
        unit_id: journal.to_string(),
        focal_sc: focal_sc.to_string(),
        dimension: dimension.to_string(),
        total,
        pct_internal,
        sum_external: external,
        entropy,
        max_entropy,
        pct_hmax,
        ebdi: pct_internal / (pct_hmax + 1.0),
        raw_diversity: dist.values().filter(|v| **v > 0.0).count(),
    })
}

/// Journal in LIS with reference-journal aggregates in both dimensions.
/// With n = 53 the cited side gives %IC 52.58, Σext 1984, H 2.03,
/// %Hmax 51.06, EBDI 1.01, 26 categories; the citing side 37.04, 1438,
/// 1.99, 50.05, 0.73, 22.
pub const MISQ_CITED_EXTERNAL: [u64; 26] = [
    638, 435, 289, 193, 130, 85, 54, 37, 28, 15, 8, 7, 7, 7, 6, 5, 5, 5, 4, 4, 4, 4, 4, 4, 3, 3,
];
pub const MISQ_CITING_EXTERNAL: [u64; 22] = [
    475, 320, 211, 137, 92, 58, 36, 22, 17, 13, 7, 6, 6, 6, 6, 5, 5, 4, 3, 3, 3, 3,
];
pub const MISQ_CITED_INTERNAL: u64 = 2200;
pub const MISQ_CITING_INTERNAL: u64 = 846;

pub fn misq_corpus() -> RawCorpus {
    let mut scs = vec!["LIS".to_string()];
    scs.extend((1..=52).map(|i| format!("S{i:02}")));
    let mut journals = vec![
        ("MISQ".to_string(), vec!["LIS".to_string()]),
        ("LISJ".to_string(), vec!["LIS".to_string()]),
    ];
    journals.extend((1..=26).map(|i| (format!("X{i:02}"), vec![format!("S{i:02}")])));
    let mut rows = vec![
        ("MISQ".into(), "LISJ".into(), "CITED".into(), MISQ_CITED_INTERNAL),
        ("MISQ".into(), "LISJ".into(), "CITING".into(), MISQ_CITING_INTERNAL),
    ];
    for (i, c) in MISQ_CITED_EXTERNAL.iter().enumerate() {
        rows.push(("MISQ".into(), format!("X{:02}", i + 1), "CITED".into(), *c));
    }
    for (i, c) in MISQ_CITING_EXTERNAL.iter().enumerate() {
        rows.push(("MISQ".into(), format!("X{:02}", i + 1), "CITING".into(), *c));
    }
    RawCorpus { scs, journals, rows }
}

/// The twelve discipline rows: (name, cited, citing, published difference,
/// published type).
pub const DISCIPLINE_TABLE: [(&str, f64, f64, f64, &str); 12] = [
    ("PSYCHOLOGY MATHEMATICAL", 1.326, 0.643, 0.68, "IMPORTER"),
    ("PSYCHOANALYSIS", 2.391, 1.823, 0.57, "IMPORTER"),
    ("PSYCHOLOGY DEVELOPMENTAL", 0.679, 0.640, 0.04, "IMPORTER"),
    ("ETHNIC STUDIES", 0.31, 0.34, -0.03, "EXPORTER"),
    ("PSYCHOLOGY MULTIDISCIPLINARY", 0.304, 0.370, -0.07, "EXPORTER"),
    ("PSYCHOLOGY APPLIED", 0.440, 0.517, -0.08, "EXPORTER"),
    ("PSYCHOLOGY CLINICAL", 0.628, 0.719, -0.09, "EXPORTER"),
    ("PSYCHOLOGY BIOLOGICAL", 0.636, 0.749, -0.11, "EXPORTER"),
    ("PSYCHOLOGY SOCIAL", 0.844, 1.051, -0.21, "EXPORTER"),
    ("PSYCHOLOGY EXPERIMENTAL", 0.937, 1.159, -0.22, "EXPORTER"),
    ("PSYCHOLOGY EDUCATIONAL", 0.740, 1.273, -0.53, "EXPORTER"),
    ("CULTURAL STUDIES", 0.83, 1.47, -0.64, "EXPORTER"),
];

pub fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol
}
