//! Dialectometry over Swadesh-style wordlists.
//!
//! The pipeline reads per-variety wordlists ([`wordlist`]), scores every
//! shared concept with a string similarity ([`metrics`]), aggregates the
//! scores per variety pair ([`comparison`]), and clusters the resulting
//! distance matrix into a tree ([`classification`]). [`report`] renders the
//! aggregates as Markdown, CSV or JSON tables.

pub mod classification;
pub mod comparison;
pub mod error;
pub mod metrics;
pub mod report;
pub mod wordlist;

pub use classification::{build_matrix, to_newick, upgma, ClusterTree, DistanceMatrix};
pub use comparison::{
    all_pairs, compare_pair, percentage, score_concept, ConceptScore, ConceptStatus, DenominatorMode,
    PairwiseComparison, VariantPolicy,
};
pub use error::{Error, Result};
pub use metrics::{
    jaro_distance, jaro_similarity, jaro_similarity_naive, metric_lookup, MetricId, SimilarityScore,
};
pub use report::{render_tables, OutputFormat, ReportBundle, RunConfig};
pub use wordlist::{
    normalize_form, parse_wordlist, validate_wordlists, Concept, ConceptList, LexicalForm,
    NormalizationOptions, ValidationReport, VarietyId, Wordlist,
};
