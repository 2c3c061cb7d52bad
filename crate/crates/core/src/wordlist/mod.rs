//! Concept lists, per-variety wordlists and their file formats.

mod normalize;
mod parse;
mod validate;

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use normalize::{dominant_script, normalize_form, NormalizationOptions};
pub use parse::{
    parse_wide_file, parse_wide_str, parse_wordlist, parse_wordlist_str, write_long_format,
    ColumnMapping, ParsedWordlists, LONG_HEADER,
};
pub use validate::{validate_wordlists, Diagnostic, Severity, ValidationReport, VarietyCoverage};

const SWADESH_207: &str = include_str!("../../data/swadesh207.tsv");

/// One entry of a concept list.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Concept {
    /// 1-based position in the list.
    pub id: u32,
    pub gloss: String,
}

/// Ordered inventory of concepts, ids contiguous from 1.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConceptList {
    name: String,
    concepts: Vec<Concept>,
}

impl ConceptList {
    pub fn new(name: impl Into<String>, concepts: Vec<Concept>) -> Result<Self> {
        if concepts.is_empty() {
            return Err(Error::InvalidConceptList("list is empty".into()));
        }
        for (pos, c) in concepts.iter().enumerate() {
            if c.id as usize != pos + 1 {
                return Err(Error::InvalidConceptList(format!(
                    "expected id {} at position {}, found {}",
                    pos + 1,
                    pos + 1,
                    c.id
                )));
            }
            if c.gloss.trim().is_empty() {
                return Err(Error::InvalidConceptList(format!("concept {} has an empty gloss", c.id)));
            }
        }
        Ok(ConceptList {
            name: name.into(),
            concepts,
        })
    }

    /// Builds a list from glosses, numbering them from 1.
    pub fn from_glosses<S: AsRef<str>>(name: impl Into<String>, glosses: &[S]) -> Result<Self> {
        let concepts = glosses
            .iter()
            .enumerate()
            .map(|(i, g)| Concept {
                id: i as u32 + 1,
                gloss: g.as_ref().trim().to_string(),
            })
            .collect();
        ConceptList::new(name, concepts)
    }

    /// The bundled 207-entry Swadesh list.
    pub fn swadesh_207() -> Self {
        ConceptList::from_tsv_str("swadesh-207", SWADESH_207).expect("bundled concept list is valid")
    }

    /// Parses `concept_id<TAB>gloss` rows. An optional header row and `#`
    /// comment lines are skipped.
    pub fn from_tsv_str(name: impl Into<String>, text: &str) -> Result<Self> {
        let name = name.into();
        let mut concepts = Vec::new();
        for (idx, line) in text.lines().enumerate() {
            let line = line.trim_end_matches('\r');
            if line.trim().is_empty() || line.starts_with('#') {
                continue;
            }
            let cols: Vec<&str> = line.split('\t').collect();
            if cols.len() != 2 {
                return Err(Error::Parse {
                    source_label: name.clone(),
                    line: idx + 1,
                    message: format!("expected 2 columns, found {}", cols.len()),
                });
            }
            let id = match cols[0].trim().parse::<u32>() {
                Ok(id) => id,
                Err(_) if concepts.is_empty() && cols[0].trim() == "concept_id" => continue,
                Err(_) => {
                    return Err(Error::Parse {
                        source_label: name.clone(),
                        line: idx + 1,
                        message: format!("invalid concept id {:?}", cols[0]),
                    })
                }
            };
            concepts.push(Concept {
                id,
                gloss: cols[1].trim().to_string(),
            });
        }
        ConceptList::new(name, concepts)
    }

    pub fn from_path(path: &Path) -> Result<Self> {
        let text = parse::read_utf8(path)?;
        let name = path
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_else(|| path.display().to_string());
        ConceptList::from_tsv_str(name, &text)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn len(&self) -> usize {
        self.concepts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.concepts.is_empty()
    }

    pub fn concepts(&self) -> &[Concept] {
        &self.concepts
    }

    pub fn get(&self, id: u32) -> Option<&Concept> {
        (id as usize).checked_sub(1).and_then(|i| self.concepts.get(i))
    }

    pub fn contains(&self, id: u32) -> bool {
        self.get(id).is_some()
    }

    pub fn to_tsv(&self) -> String {
        let mut out = String::from("concept_id\tgloss\n");
        for c in &self.concepts {
            out.push_str(&format!("{}\t{}\n", c.id, c.gloss));
        }
        out
    }
}

/// Name of a language variety. Non-empty, no whitespace.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct VarietyId(String);

impl VarietyId {
    pub fn new(value: impl Into<String>) -> Result<Self> {
        let value = value.into();
        if value.is_empty() || value.chars().any(char::is_whitespace) {
            return Err(Error::InvalidVariety(value));
        }
        Ok(VarietyId(value))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl TryFrom<String> for VarietyId {
    type Error = Error;

    fn try_from(value: String) -> Result<Self> {
        VarietyId::new(value)
    }
}

impl From<VarietyId> for String {
    fn from(v: VarietyId) -> String {
        v.0
    }
}

impl fmt::Display for VarietyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl AsRef<str> for VarietyId {
    fn as_ref(&self) -> &str {
        &self.0
    }
}

/// A form as read from file together with its normalized spelling.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LexicalForm {
    pub raw: String,
    pub normalized: String,
    /// Full name of the dominant Unicode script, e.g. `Latin`.
    pub script: String,
}

impl LexicalForm {
    /// Normalizes `raw`; `None` when the cell is empty after normalization.
    pub fn new(raw: &str, options: &NormalizationOptions) -> Option<Self> {
        let normalized = normalize_form(raw, options)?;
        let script = dominant_script([normalized.as_str()]).full_name().to_string();
        Some(LexicalForm {
            raw: raw.to_string(),
            normalized,
            script,
        })
    }
}

/// Forms of one variety keyed by concept id.
///
/// Concepts without an attested form are absent keys; an entry always holds
/// at least one form and never two forms with the same normalized spelling.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Wordlist {
    variety: VarietyId,
    concept_list: String,
    entries: BTreeMap<u32, Vec<LexicalForm>>,
    source: String,
}

/// Result of adding a form to a wordlist.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Added {
    New,
    Duplicate,
}

impl Wordlist {
    pub fn new(variety: VarietyId, concepts: &ConceptList, source: impl Into<String>) -> Self {
        Wordlist {
            variety,
            concept_list: concepts.name().to_string(),
            entries: BTreeMap::new(),
            source: source.into(),
        }
    }

    /// Builds a wordlist from `(concept id, raw form)` pairs. Empty forms are
    /// skipped and duplicates dropped.
    pub fn from_forms<'a>(
        variety: &str,
        concepts: &ConceptList,
        forms: impl IntoIterator<Item = (u32, &'a str)>,
        options: &NormalizationOptions,
    ) -> Result<Self> {
        let mut list = Wordlist::new(VarietyId::new(variety)?, concepts, variety);
        for (id, raw) in forms {
            if !concepts.contains(id) {
                return Err(Error::UnknownConcept {
                    source_label: variety.to_string(),
                    line: 0,
                    id,
                });
            }
            if let Some(form) = LexicalForm::new(raw, options) {
                list.push(id, form);
            }
        }
        Ok(list)
    }

    pub(crate) fn push(&mut self, concept_id: u32, form: LexicalForm) -> Added {
        let variants = self.entries.entry(concept_id).or_default();
        if variants.iter().any(|f| f.normalized == form.normalized) {
            Added::Duplicate
        } else {
            variants.push(form);
            Added::New
        }
    }

    pub fn variety(&self) -> &VarietyId {
        &self.variety
    }

    pub fn concept_list_name(&self) -> &str {
        &self.concept_list
    }

    pub fn source(&self) -> &str {
        &self.source
    }

    pub fn entries(&self) -> &BTreeMap<u32, Vec<LexicalForm>> {
        &self.entries
    }

    pub fn forms(&self, concept_id: u32) -> Option<&[LexicalForm]> {
        self.entries.get(&concept_id).map(Vec::as_slice)
    }

    /// Number of concepts with at least one form.
    pub fn covered(&self) -> usize {
        self.entries.len()
    }

    /// Same wordlist under another variety name.
    pub fn renamed(&self, variety: VarietyId) -> Self {
        Wordlist {
            variety,
            ..self.clone()
        }
    }

    /// Copy without the given concept.
    pub fn without_concept(&self, concept_id: u32) -> Self {
        let mut out = self.clone();
        out.entries.remove(&concept_id);
        out
    }

    pub fn dominant_script(&self) -> String {
        dominant_script(
            self.entries
                .values()
                .flatten()
                .map(|f| f.normalized.as_str()),
        )
        .full_name()
        .to_string()
    }
}
