use std::fs;
use std::path::Path;
use std::str::FromStr;

use crate::error::{Error, Result};

use super::validate::{Diagnostic, Severity};
use super::{Added, ConceptList, LexicalForm, NormalizationOptions, VarietyId, Wordlist};

/// Header row of the long wordlist format.
pub const LONG_HEADER: &str = "concept_id\tgloss\tvariety\tform";

/// Wordlists read from one file, in order of first appearance, plus the
/// non-fatal issues found while reading.
#[derive(Debug, Clone, PartialEq)]
pub struct ParsedWordlists {
    pub wordlists: Vec<Wordlist>,
    pub diagnostics: Vec<Diagnostic>,
}

impl ParsedWordlists {
    fn new() -> Self {
        ParsedWordlists {
            wordlists: Vec::new(),
            diagnostics: Vec::new(),
        }
    }

    fn list_for(&mut self, variety: VarietyId, concepts: &ConceptList, source: &str) -> &mut Wordlist {
        let pos = match self.wordlists.iter().position(|w| w.variety == variety) {
            Some(pos) => pos,
            None => {
                self.wordlists.push(Wordlist::new(variety, concepts, source));
                self.wordlists.len() - 1
            }
        };
        &mut self.wordlists[pos]
    }

    fn add_cell(
        &mut self,
        variety: &VarietyId,
        concepts: &ConceptList,
        source: &str,
        line: usize,
        concept_id: u32,
        raw: &str,
        options: &NormalizationOptions,
    ) {
        let Some(form) = LexicalForm::new(raw, options) else {
            self.diagnostics.push(Diagnostic {
                severity: Severity::Info,
                variety: Some(variety.to_string()),
                message: format!("{source}:{line}: empty form for concept {concept_id} treated as absent"),
            });
            return;
        };
        let normalized = form.normalized.clone();
        let list = self.list_for(variety.clone(), concepts, source);
        if list.push(concept_id, form) == Added::Duplicate {
            self.diagnostics.push(Diagnostic {
                severity: Severity::Warning,
                variety: Some(variety.to_string()),
                message: format!(
                    "{source}:{line}: duplicate form {normalized:?} for concept {concept_id} dropped"
                ),
            });
        }
    }
}

pub(crate) fn read_utf8(path: &Path) -> Result<String> {
    let bytes = fs::read(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    String::from_utf8(bytes).map_err(|e| {
        let valid = e.utf8_error().valid_up_to();
        let line = e.as_bytes()[..valid].iter().filter(|&&b| b == b'\n').count() + 1;
        Error::Encoding {
            source_label: path.display().to_string(),
            line,
        }
    })
}

fn parse_concept_id(cell: &str, concepts: &ConceptList, source: &str, line: usize) -> Result<u32> {
    let id: u32 = cell.trim().parse().map_err(|_| Error::Parse {
        source_label: source.to_string(),
        line,
        message: format!("invalid concept id {cell:?}"),
    })?;
    if !concepts.contains(id) {
        return Err(Error::UnknownConcept {
            source_label: source.to_string(),
            line,
            id,
        });
    }
    Ok(id)
}

fn check_gloss(out: &mut ParsedWordlists, concepts: &ConceptList, id: u32, gloss: &str, source: &str, line: usize) {
    let expected = &concepts.get(id).expect("id checked").gloss;
    let gloss = gloss.trim();
    if !gloss.is_empty() && !gloss.eq_ignore_ascii_case(expected) {
        out.diagnostics.push(Diagnostic {
            severity: Severity::Warning,
            variety: None,
            message: format!("{source}:{line}: gloss {gloss:?} differs from {expected:?} for concept {id}"),
        });
    }
}

/// Parses a long-format wordlist file (`concept_id, gloss, variety, form`).
pub fn parse_wordlist(path: &Path, concepts: &ConceptList, options: &NormalizationOptions) -> Result<ParsedWordlists> {
    let text = read_utf8(path)?;
    parse_wordlist_str(&text, &path.display().to_string(), concepts, options)
}

pub fn parse_wordlist_str(
    text: &str,
    source: &str,
    concepts: &ConceptList,
    options: &NormalizationOptions,
) -> Result<ParsedWordlists> {
    let mut out = ParsedWordlists::new();
    let mut seen_header = false;

    for (idx, line) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = line.strip_suffix('\r').unwrap_or(line);
        if line.starts_with('#') || line.trim().is_empty() {
            continue;
        }
        if !seen_header {
            if line.trim_end() != LONG_HEADER {
                return Err(Error::Parse {
                    source_label: source.to_string(),
                    line: line_no,
                    message: format!("expected header {LONG_HEADER:?}"),
                });
            }
            seen_header = true;
            continue;
        }

        let cols: Vec<&str> = line.split('\t').collect();
        if cols.len() != 4 {
            return Err(Error::Parse {
                source_label: source.to_string(),
                line: line_no,
                message: format!("expected 4 columns, found {}", cols.len()),
            });
        }
        let id = parse_concept_id(cols[0], concepts, source, line_no)?;
        check_gloss(&mut out, concepts, id, cols[1], source, line_no);
        let variety = VarietyId::new(cols[2].trim()).map_err(|e| Error::Parse {
            source_label: source.to_string(),
            line: line_no,
            message: e.to_string(),
        })?;
        out.add_cell(&variety, concepts, source, line_no, id, cols[3], options);
    }

    if !seen_header {
        return Err(Error::Parse {
            source_label: source.to_string(),
            line: 1,
            message: format!("missing header {LONG_HEADER:?}"),
        });
    }
    Ok(out)
}

/// Serializes wordlists back to the long format, using each form's raw
/// spelling so that re-parsing reproduces the same wordlists.
pub fn write_long_format(wordlists: &[Wordlist], concepts: &ConceptList) -> String {
    let mut out = String::from(LONG_HEADER);
    out.push('\n');
    for list in wordlists {
        for (id, forms) in list.entries() {
            let gloss = concepts.get(*id).map(|c| c.gloss.as_str()).unwrap_or("");
            for form in forms {
                out.push_str(&format!("{id}\t{gloss}\t{}\t{}\n", list.variety(), form.raw));
            }
        }
    }
    out
}

/// Column layout of a wide file: one row per concept, one column per variety.
/// Indices are 1-based as written on the command line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColumnMapping {
    pub id: usize,
    pub gloss: Option<usize>,
    pub varieties: Vec<(VarietyId, usize)>,
}

impl FromStr for ColumnMapping {
    type Err = Error;

    /// Parses `id=1,gloss=2,Zaza=3,Hawrami=4`.
    fn from_str(s: &str) -> Result<Self> {
        let mut id = None;
        let mut gloss = None;
        let mut varieties: Vec<(VarietyId, usize)> = Vec::new();
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (key, value) = part
                .split_once('=')
                .ok_or_else(|| Error::InvalidColumns(format!("expected name=column, found {part:?}")))?;
            let col: usize = value
                .trim()
                .parse()
                .ok()
                .filter(|&c| c >= 1)
                .ok_or_else(|| Error::InvalidColumns(format!("invalid column number {value:?}")))?;
            match key.trim() {
                "id" => id = Some(col),
                "gloss" => gloss = Some(col),
                name => {
                    let variety = VarietyId::new(name).map_err(|e| Error::InvalidColumns(e.to_string()))?;
                    if varieties.iter().any(|(v, _)| *v == variety) {
                        return Err(Error::InvalidColumns(format!("variety {variety} mapped twice")));
                    }
                    varieties.push((variety, col));
                }
            }
        }
        let id = id.ok_or_else(|| Error::InvalidColumns("missing id=<column>".into()))?;
        if varieties.is_empty() {
            return Err(Error::InvalidColumns("no variety columns".into()));
        }
        Ok(ColumnMapping { id, gloss, varieties })
    }
}

/// Separators between variants inside one wide-format cell.
const VARIANT_SEPARATORS: [char; 2] = [',', ';'];

/// Parses a wide file: comma-delimited when the extension is `.csv`,
/// tab-delimited otherwise.
pub fn parse_wide_file(
    path: &Path,
    mapping: &ColumnMapping,
    concepts: &ConceptList,
    options: &NormalizationOptions,
) -> Result<ParsedWordlists> {
    let text = read_utf8(path)?;
    let is_csv = path
        .extension()
        .is_some_and(|e| e.eq_ignore_ascii_case("csv"));
    let delimiter = if is_csv { b',' } else { b'\t' };
    parse_wide_str(&text, &path.display().to_string(), delimiter, mapping, concepts, options)
}

/// Parses wide-format text. A first row whose id cell is not a number is
/// taken as a header.
pub fn parse_wide_str(
    text: &str,
    source: &str,
    delimiter: u8,
    mapping: &ColumnMapping,
    concepts: &ConceptList,
    options: &NormalizationOptions,
) -> Result<ParsedWordlists> {
    let mut reader = csv::ReaderBuilder::new()
        .delimiter(delimiter)
        .has_headers(false)
        .flexible(true)
        .comment(Some(b'#'))
        .quoting(delimiter == b',')
        .from_reader(text.as_bytes());

    let mut out = ParsedWordlists::new();
    for (variety, _) in &mapping.varieties {
        out.list_for(variety.clone(), concepts, source);
    }

    let mut first = true;
    for record in reader.records() {
        let record = record.map_err(|e| Error::Parse {
            source_label: source.to_string(),
            line: e.position().map_or(0, |p| p.line() as usize),
            message: e.to_string(),
        })?;
        let line = record.position().map_or(0, |p| p.line() as usize);
        let is_first = std::mem::replace(&mut first, false);
        if record.iter().all(|c| c.trim().is_empty()) {
            continue;
        }
        let cell = |col: usize| -> Result<&str> {
            record.get(col - 1).ok_or_else(|| Error::Parse {
                source_label: source.to_string(),
                line,
                message: format!("row has {} columns, column {col} requested", record.len()),
            })
        };

        let id_cell = cell(mapping.id)?;
        if is_first && id_cell.trim().parse::<u32>().is_err() {
            continue;
        }
        let id = parse_concept_id(id_cell, concepts, source, line)?;
        if let Some(g) = mapping.gloss {
            check_gloss(&mut out, concepts, id, cell(g)?, source, line);
        }
        for (variety, col) in &mapping.varieties {
            let value = cell(*col)?;
            for raw in value.split(VARIANT_SEPARATORS).map(str::trim) {
                if raw.is_empty() {
                    continue;
                }
                out.add_cell(variety, concepts, source, line, id, raw, options);
            }
        }
    }
    Ok(out)
}
