use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::{ConceptList, Wordlist};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Severity {
    Info,
    Warning,
    Error,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Diagnostic {
    pub severity: Severity,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub variety: Option<String>,
    pub message: String,
}

/// Coverage of one variety against the concept list.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VarietyCoverage {
    pub variety: String,
    pub covered: usize,
    pub total: usize,
    pub missing: Vec<u32>,
    /// Number of variants per concept -> number of concepts with that many.
    pub variant_histogram: BTreeMap<usize, usize>,
    pub dominant_script: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub concept_list: String,
    pub concept_count: usize,
    pub varieties: Vec<VarietyCoverage>,
    pub diagnostics: Vec<Diagnostic>,
}

impl ValidationReport {
    pub fn has_errors(&self) -> bool {
        self.diagnostics.iter().any(|d| d.severity == Severity::Error)
    }

    pub fn warnings(&self) -> impl Iterator<Item = &Diagnostic> {
        self.diagnostics.iter().filter(|d| d.severity == Severity::Warning)
    }

    pub fn coverage(&self, variety: &str) -> Option<&VarietyCoverage> {
        self.varieties.iter().find(|v| v.variety == variety)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report is serializable");
        s.push('\n');
        s
    }

    /// Plain-text summary, one line per variety followed by diagnostics.
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "concept list: {} ({} concepts)", self.concept_list, self.concept_count);
        for v in &self.varieties {
            let missing = if v.missing.is_empty() {
                "none".to_string()
            } else {
                v.missing.iter().map(u32::to_string).collect::<Vec<_>>().join(",")
            };
            let histogram = v
                .variant_histogram
                .iter()
                .map(|(k, n)| format!("{k}x{n}"))
                .collect::<Vec<_>>()
                .join(" ");
            let _ = writeln!(
                out,
                "{}: coverage {}/{}, script {}, variants [{}], missing: {}",
                v.variety, v.covered, v.total, v.dominant_script, histogram, missing
            );
        }
        for d in &self.diagnostics {
            let level = match d.severity {
                Severity::Info => "info",
                Severity::Warning => "warning",
                Severity::Error => "error",
            };
            let _ = writeln!(out, "{level}: {}", d.message);
        }
        out
    }
}

/// Checks wordlists against the concept list. Never fails; problems are
/// reported as diagnostics of the appropriate severity.
pub fn validate_wordlists(wordlists: &[Wordlist], concepts: &ConceptList) -> ValidationReport {
    let mut diagnostics = Vec::new();
    let mut varieties = Vec::with_capacity(wordlists.len());

    for (i, list) in wordlists.iter().enumerate() {
        let name = list.variety().to_string();
        if wordlists[..i].iter().any(|w| w.variety() == list.variety()) {
            diagnostics.push(Diagnostic {
                severity: Severity::Error,
                variety: Some(name.clone()),
                message: format!("duplicate variety {name}"),
            });
        }
        if list.concept_list_name() != concepts.name() {
            diagnostics.push(Diagnostic {
                severity: Severity::Error,
                variety: Some(name.clone()),
                message: format!(
                    "{name} was read against concept list {:?}, not {:?}",
                    list.concept_list_name(),
                    concepts.name()
                ),
            });
        }
        let unknown: Vec<u32> = list.entries().keys().copied().filter(|id| !concepts.contains(*id)).collect();
        if !unknown.is_empty() {
            diagnostics.push(Diagnostic {
                severity: Severity::Error,
                variety: Some(name.clone()),
                message: format!("{name} has forms for unknown concept ids {unknown:?}"),
            });
        }

        let missing: Vec<u32> = concepts
            .concepts()
            .iter()
            .map(|c| c.id)
            .filter(|id| list.forms(*id).is_none())
            .collect();
        if list.covered() == 0 {
            diagnostics.push(Diagnostic {
                severity: Severity::Warning,
                variety: Some(name.clone()),
                message: format!("{name} has no forms"),
            });
        } else if !missing.is_empty() {
            diagnostics.push(Diagnostic {
                severity: Severity::Info,
                variety: Some(name.clone()),
                message: format!("{name} is missing {} of {} concepts", missing.len(), concepts.len()),
            });
        }

        let mut variant_histogram = BTreeMap::new();
        for forms in list.entries().values() {
            *variant_histogram.entry(forms.len()).or_insert(0) += 1;
        }

        varieties.push(VarietyCoverage {
            variety: name,
            covered: list.covered(),
            total: concepts.len(),
            missing,
            variant_histogram,
            dominant_script: list.dominant_script(),
        });
    }

    let mut scripts: Vec<&str> = varieties
        .iter()
        .filter(|v| v.covered > 0)
        .map(|v| v.dominant_script.as_str())
        .collect();
    scripts.sort_unstable();
    scripts.dedup();
    if scripts.len() > 1 {
        let listing = varieties
            .iter()
            .filter(|v| v.covered > 0)
            .map(|v| format!("{}={}", v.variety, v.dominant_script))
            .collect::<Vec<_>>()
            .join(", ");
        diagnostics.push(Diagnostic {
            severity: Severity::Warning,
            variety: None,
            message: format!(
                "varieties use different scripts ({listing}); cross-script similarity scores are near zero and not meaningful"
            ),
        });
    }

    ValidationReport {
        concept_list: concepts.name().to_string(),
        concept_count: concepts.len(),
        varieties,
        diagnostics,
    }
}
