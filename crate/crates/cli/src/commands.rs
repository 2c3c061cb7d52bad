use std::fs;
use std::io::{self, Write};
use std::path::Path;

use lexidist_core::wordlist::{parse_wide_file, ColumnMapping, Diagnostic, Severity};
use lexidist_core::{
    all_pairs, build_matrix, parse_wordlist, render_tables, to_newick, upgma, validate_wordlists, ConceptList,
    DistanceMatrix, Error, NormalizationOptions, OutputFormat, PairwiseComparison, ReportBundle, Result, RunConfig, ValidationReport, Wordlist,
};

use crate::Options;

struct Loaded {
    concepts: ConceptList,
    wordlists: Vec<Wordlist>,
    diagnostics: Vec<Diagnostic>,
}

fn normalization(opts: &Options) -> NormalizationOptions {
    NormalizationOptions {
        case_fold: !opts.no_case_fold,
        strip_punctuation: !opts.keep_punctuation,
        collapse_internal_whitespace: true,
    }
}

fn run_config(opts: &Options) -> RunConfig {
    RunConfig {
        inputs: opts.inputs.iter().map(|p| p.display().to_string()).collect(),
        concepts: opts
            .concepts
            .as_ref()
            .map(|p| p.display().to_string())
            .unwrap_or_else(|| RunConfig::default().concepts),
        metric: opts.metric,
        policy: opts.policy,
        denominator: opts.denominator,
        normalization: normalization(opts),
        format: opts.format,
        round: opts.round,
        out: opts.out.as_ref().map(|p| p.display().to_string()),
        columns: opts.columns.clone(),
        matrix_file: opts.matrix_file.as_ref().map(|p| p.display().to_string()),
    }
}

fn load(opts: &Options) -> Result<Loaded> {
    let concepts = match &opts.concepts {
        Some(path) => ConceptList::from_path(path)?,
        None => ConceptList::swadesh_207(),
    };
    let mapping = opts.columns.as_deref().map(str::parse::<ColumnMapping>).transpose()?;
    let norm = normalization(opts);

    let mut wordlists = Vec::new();
    let mut diagnostics = Vec::new();
    for path in &opts.inputs {
        let parsed = match &mapping {
            Some(m) => parse_wide_file(path, m, &concepts, &norm)?,
            None => parse_wordlist(path, &concepts, &norm)?,
        };
        wordlists.extend(parsed.wordlists);
        diagnostics.extend(parsed.diagnostics);
    }
    Ok(Loaded {
        concepts,
        wordlists,
        diagnostics,
    })
}

fn report_for(loaded: &Loaded) -> ValidationReport {
    let mut report = validate_wordlists(&loaded.wordlists, &loaded.concepts);
    let mut diagnostics = loaded.diagnostics.clone();
    diagnostics.append(&mut report.diagnostics);
    report.diagnostics = diagnostics;
    report
}

fn emit(text: &str, out: Option<&Path>) -> Result<()> {
    match out {
        Some(path) => fs::write(path, text).map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        }),
        None => {
            let mut stdout = io::stdout().lock();
            // A closed pipe is not worth an error exit.
            let _ = stdout.write_all(text.as_bytes());
            Ok(())
        }
    }
}

fn no_inputs() -> Error {
    Error::TooFewVarieties(0)
}

pub fn validate(opts: &Options) -> Result<u8> {
    if opts.inputs.is_empty() {
        return Err(no_inputs());
    }
    let loaded = load(opts)?;
    let report = report_for(&loaded);
    let text = match opts.format {
        OutputFormat::Json => report.to_json(),
        _ => report.render_text(),
    };
    emit(&text, opts.out.as_deref())?;
    Ok(if report.has_errors() { 1 } else { 0 })
}

/// Parses, validates and compares; shared by `compare` and `classify`.
fn analyse(opts: &Options) -> Result<(Loaded, ValidationReport, Vec<PairwiseComparison>)> {
    let loaded = load(opts)?;
    if loaded.wordlists.len() < 2 {
        return Err(Error::TooFewVarieties(loaded.wordlists.len()));
    }
    let report = report_for(&loaded);
    if report.has_errors() {
        eprint!("{}", report.render_text());
        return Err(first_error(&report));
    }
    let comparisons = all_pairs(&loaded.wordlists, &loaded.concepts, opts.metric, opts.policy, opts.denominator)?;
    Ok((loaded, report, comparisons))
}

fn first_error(report: &ValidationReport) -> Error {
    let message = report
        .diagnostics
        .iter()
        .find(|d| d.severity == Severity::Error)
        .map(|d| d.message.clone())
        .unwrap_or_default();
    Error::Validation(message)
}

pub fn compare(opts: &Options) -> Result<u8> {
    if opts.matrix_file.is_some() {
        return Err(Error::InvalidMatrix("--matrix-file is only used by classify".into()));
    }
    let (_, report, comparisons) = analyse(opts)?;
    let bundle = ReportBundle::new(run_config(opts), &comparisons).with_validation(report);
    emit(&render_tables(&bundle, opts.format), opts.out.as_deref())?;
    Ok(0)
}

pub fn classify(opts: &Options) -> Result<u8> {
    let matrix = match &opts.matrix_file {
        Some(path) => DistanceMatrix::from_path(path)?,
        None => build_matrix(&analyse(opts)?.2)?,
    };
    if matrix.len() < 2 {
        return Err(Error::TooFewVarieties(matrix.len()));
    }
    let newick = to_newick(&upgma(&matrix));
    let table = matrix.to_csv(Some(opts.round));
    match &opts.out {
        Some(path) => {
            emit(&format!("{newick}\n"), Some(path))?;
            emit(&table, None)?;
        }
        None => emit(&format!("{table}{newick}\n"), None)?,
    }
    Ok(0)
}
