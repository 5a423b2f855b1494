//! Entropy-based disciplinarity indicator (EBDI) for journal citation data.
//!
//! The crate is organised bottom-up:
//!
//! - [`corpus`] loads subject categories, journals and citation edges;
//! - [`metrics`] builds citation profiles and computes entropy, `%Hmax` and
//!   the indicator;
//! - [`taxonomy`] turns indicator values into HIGH/LOW levels and roles;
//! - [`stats`] provides Spearman correlation with a t-based p-value;
//! - [`report`] runs the pipeline and writes CSV/JSON/SVG outputs.

pub mod corpus;
pub mod error;
pub mod metrics;
pub mod report;
pub mod stats;
pub mod taxonomy;

pub use corpus::{CitationEdge, Classification, Corpus, Dimension, Journal, SubjectCategory};
pub use error::{Error, Result};
pub use metrics::{CitationProfile, CountingMode, DistributionStats, EbdiScore, IndicatorPair};
