//! Report assembly and rendering.
//!
//! A [`ReportBundle`] holds three tables with one column per variety pair:
//! averaged similarity and distance, counts of completely similar and
//! completely different concepts, and those counts as percentages. JSON keeps
//! the unrounded values next to their display strings; Markdown and CSV show
//! the rounded values only.

use std::fmt::{self, Write as _};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::comparison::{DenominatorMode, PairwiseComparison, VariantPolicy};
use crate::error::{Error, Result};
use crate::metrics::MetricId;
use crate::wordlist::{NormalizationOptions, ValidationReport};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Csv,
    Json,
    #[default]
    Markdown,
}

impl OutputFormat {
    pub fn as_str(self) -> &'static str {
        match self {
            OutputFormat::Csv => "csv",
            OutputFormat::Json => "json",
            OutputFormat::Markdown => "markdown",
        }
    }
}

impl fmt::Display for OutputFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            "markdown" | "md" => Ok(OutputFormat::Markdown),
            _ => Err(Error::UnknownOption {
                kind: "output format",
                value: s.to_string(),
                valid: "csv, json, markdown",
            }),
        }
    }
}

/// Everything that determines a run. Echoed verbatim into every report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub inputs: Vec<String>,
    /// Path of the concept list, or `bundled:swadesh-207`.
    pub concepts: String,
    pub metric: MetricId,
    pub policy: VariantPolicy,
    pub denominator: DenominatorMode,
    pub normalization: NormalizationOptions,
    pub format: OutputFormat,
    pub round: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub out: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub columns: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub matrix_file: Option<String>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            inputs: Vec::new(),
            concepts: "bundled:swadesh-207".to_string(),
            metric: MetricId::Jaro,
            policy: VariantPolicy::Max,
            denominator: DenominatorMode::Full,
            normalization: NormalizationOptions::default(),
            format: OutputFormat::Markdown,
            round: 2,
            out: None,
            columns: None,
            matrix_file: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Metadata {
    pub toolkit: String,
    pub version: String,
    pub config: RunConfig,
    pub averaging: String,
    pub completely_similar: String,
    pub completely_different: String,
}

impl Metadata {
    pub fn new(config: RunConfig) -> Self {
        Metadata {
            toolkit: "lexidist".to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            config,
            averaging: "unweighted mean over concepts attested in both varieties".to_string(),
            completely_similar: "score exactly 1".to_string(),
            completely_different: "score exactly 0".to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TableRow {
    pub label: String,
    pub values: Vec<f64>,
    pub display: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Table {
    pub title: String,
    /// Text of the top-left header cell.
    pub heading: String,
    pub columns: Vec<String>,
    pub rows: Vec<TableRow>,
}

/// Unrounded aggregates of one pair.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PairSummary {
    pub pair: String,
    pub avg_similarity: f64,
    pub avg_distance: f64,
    pub n_completely_similar: usize,
    pub n_completely_different: usize,
    pub pct_completely_similar: f64,
    pub pct_completely_different: f64,
    pub denominator: usize,
    pub aligned_count: usize,
}

impl From<&PairwiseComparison> for PairSummary {
    fn from(c: &PairwiseComparison) -> Self {
        PairSummary {
            pair: c.label(),
            avg_similarity: c.avg_similarity,
            avg_distance: c.avg_distance,
            n_completely_similar: c.n_completely_similar,
            n_completely_different: c.n_completely_different,
            pct_completely_similar: c.pct_completely_similar,
            pct_completely_different: c.pct_completely_different,
            denominator: c.denominator,
            aligned_count: c.aligned_count,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportBundle {
    pub metadata: Metadata,
    pub pairs: Vec<PairSummary>,
    pub similarity_distance: Table,
    pub counts: Table,
    pub percentages: Table,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub tree: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub validation: Option<ValidationReport>,
}

fn fixed(v: f64, digits: usize) -> String {
    format!("{v:.digits$}")
}

impl ReportBundle {
    pub fn new(config: RunConfig, comparisons: &[PairwiseComparison]) -> Self {
        let pairs: Vec<PairSummary> = comparisons.iter().map(PairSummary::from).collect();
        let columns: Vec<String> = pairs.iter().map(|p| p.pair.clone()).collect();
        let digits = config.round;
        let row = |label: &str, values: Vec<f64>, show: &dyn Fn(f64) -> String| TableRow {
            label: label.to_string(),
            display: values.iter().map(|v| show(*v)).collect(),
            values,
        };
        let decimal = |v: f64| fixed(v, digits);
        let integer = |v: f64| format!("{v:.0}");
        let percent = |v: f64| format!("{}%", fixed(v, digits));

        let similarity_distance = Table {
            title: "Similarity/Distance".to_string(),
            heading: config.metric.table_heading().to_string(),
            columns: columns.clone(),
            rows: vec![
                row("Similarity", pairs.iter().map(|p| p.avg_similarity).collect(), &decimal),
                row("Distance", pairs.iter().map(|p| p.avg_distance).collect(), &decimal),
            ],
        };
        let counts = Table {
            title: "Number of Completely Similar or Different Words".to_string(),
            heading: "Similarity".to_string(),
            columns: columns.clone(),
            rows: vec![
                row(
                    "Completely Similar",
                    pairs.iter().map(|p| p.n_completely_similar as f64).collect(),
                    &integer,
                ),
                row(
                    "Completely Different",
                    pairs.iter().map(|p| p.n_completely_different as f64).collect(),
                    &integer,
                ),
            ],
        };
        let percentages = Table {
            title: "Percentages of Completely Similar or Different Words".to_string(),
            heading: "Similarity".to_string(),
            columns,
            rows: vec![
                row(
                    "Completely Similar",
                    pairs.iter().map(|p| p.pct_completely_similar).collect(),
                    &percent,
                ),
                row(
                    "Completely Different",
                    pairs.iter().map(|p| p.pct_completely_different).collect(),
                    &percent,
                ),
            ],
        };

        ReportBundle {
            metadata: Metadata::new(config),
            pairs,
            similarity_distance,
            counts,
            percentages,
            tree: None,
            validation: None,
        }
    }

    pub fn with_tree(mut self, newick: String) -> Self {
        self.tree = Some(newick);
        self
    }

    pub fn with_validation(mut self, report: ValidationReport) -> Self {
        self.validation = Some(report);
        self
    }

    pub fn tables(&self) -> [&Table; 3] {
        [&self.similarity_distance, &self.counts, &self.percentages]
    }
}

/// Renders a bundle. Output is byte-stable for identical bundles.
pub fn render_tables(bundle: &ReportBundle, format: OutputFormat) -> String {
    match format {
        OutputFormat::Json => {
            let mut s = serde_json::to_string_pretty(bundle).expect("report is serializable");
            s.push('\n');
            s
        }
        OutputFormat::Markdown => render_markdown(bundle),
        OutputFormat::Csv => render_csv(bundle),
    }
}

fn metadata_lines(m: &Metadata) -> Vec<(String, String)> {
    let c = &m.config;
    let n = &c.normalization;
    let mut lines = vec![
        ("toolkit".to_string(), format!("{} {}", m.toolkit, m.version)),
        ("inputs".to_string(), c.inputs.join(", ")),
        ("concepts".to_string(), c.concepts.clone()),
        ("metric".to_string(), c.metric.to_string()),
        ("policy".to_string(), c.policy.to_string()),
        ("denominator".to_string(), c.denominator.to_string()),
        (
            "normalization".to_string(),
            format!(
                "nfc, case_fold={}, strip_punctuation={}, collapse_internal_whitespace={}",
                n.case_fold, n.strip_punctuation, n.collapse_internal_whitespace
            ),
        ),
        ("round".to_string(), c.round.to_string()),
        ("averaging".to_string(), m.averaging.clone()),
        ("completely similar".to_string(), m.completely_similar.clone()),
        ("completely different".to_string(), m.completely_different.clone()),
    ];
    if let Some(cols) = &c.columns {
        lines.push(("columns".to_string(), cols.clone()));
    }
    if let Some(path) = &c.matrix_file {
        lines.push(("matrix file".to_string(), path.clone()));
    }
    lines
}

fn render_markdown(bundle: &ReportBundle) -> String {
    let mut out = String::from("# Dialect comparison\n\n");
    for (k, v) in metadata_lines(&bundle.metadata) {
        let _ = writeln!(out, "- {k}: {v}");
    }
    for table in bundle.tables() {
        let _ = write!(out, "\n## {}\n\n| {} |", table.title, table.heading);
        for col in &table.columns {
            let _ = write!(out, " {col} |");
        }
        out.push_str("\n|---|");
        for _ in &table.columns {
            out.push_str("---:|");
        }
        out.push('\n');
        for row in &table.rows {
            let _ = write!(out, "| {} |", row.label);
            for cell in &row.display {
                let _ = write!(out, " {cell} |");
            }
            out.push('\n');
        }
    }
    if let Some(tree) = &bundle.tree {
        let _ = write!(out, "\n## Classification (UPGMA)\n\n```\n{tree}\n```\n");
    }
    if let Some(v) = &bundle.validation {
        let _ = write!(out, "\n## Validation\n\n```\n{}```\n", v.render_text());
    }
    out
}

fn render_csv(bundle: &ReportBundle) -> String {
    let mut out = String::new();
    for (k, v) in metadata_lines(&bundle.metadata) {
        let _ = writeln!(out, "# {k}: {v}");
    }
    if let Some(tree) = &bundle.tree {
        let _ = writeln!(out, "# tree: {tree}");
    }
    let mut writer = csv::Writer::from_writer(Vec::new());
    let mut header = vec!["table".to_string(), "row".to_string()];
    header.extend(bundle.similarity_distance.columns.iter().cloned());
    writer.write_record(&header).expect("in-memory write");
    let names = ["similarity_distance", "counts", "percentages"];
    for (name, table) in names.iter().zip(bundle.tables()) {
        for row in &table.rows {
            let mut record = vec![name.to_string(), row.label.clone()];
            // Percent signs are a Markdown nicety; CSV cells stay numeric.
            record.extend(row.display.iter().map(|d| d.trim_end_matches('%').to_string()));
            writer.write_record(&record).expect("in-memory write");
        }
    }
    let bytes = writer.into_inner().expect("in-memory flush");
    out.push_str(std::str::from_utf8(&bytes).expect("csv output is UTF-8"));
    out
}
