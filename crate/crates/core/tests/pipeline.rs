mod common;

use lexidist_core::wordlist::{parse_wide_file, write_long_format, ColumnMapping, Severity};
use lexidist_core::{
    all_pairs, build_matrix, parse_wordlist, to_newick, upgma, validate_wordlists, ConceptList, DenominatorMode,
    MetricId, NormalizationOptions, VariantPolicy,
};

use common::fixture;

fn synthetic() -> Vec<lexidist_core::Wordlist> {
    let concepts = ConceptList::swadesh_207();
    parse_wordlist(&fixture("synthetic207.tsv"), &concepts, &NormalizationOptions::default())
        .unwrap()
        .wordlists
}

#[test]
fn synthetic_fixture_validates_cleanly() {
    let concepts = ConceptList::swadesh_207();
    let lists = synthetic();
    let names: Vec<_> = lists.iter().map(|l| l.variety().as_str()).collect();
    assert_eq!(names, ["Alpha", "Beta", "Gamma", "Delta"]);
    let report = validate_wordlists(&lists, &concepts);
    for v in &report.varieties {
        assert_eq!(v.covered, 207, "{}", v.variety);
        assert!(v.missing.is_empty());
        assert_eq!(v.dominant_script, "Latin");
    }
    assert!(report.diagnostics.iter().all(|d| d.severity == Severity::Info));
}

#[test]
fn fixture_normalization_is_applied() {
    let lists = synthetic();
    // Every 23rd concept is capitalized and every 31st carries a trailing comma.
    for list in &lists {
        for id in [23, 31, 46, 62] {
            let form = &list.forms(id).unwrap()[0];
            assert_ne!(form.raw, form.normalized);
            assert!(!form.normalized.ends_with(','));
            assert!(!form.normalized.chars().any(char::is_uppercase));
        }
        assert_eq!(list.forms(17).unwrap().len(), 2);
    }
}

#[test]
fn closest_synthetic_pair_merges_first() {
    let concepts = ConceptList::swadesh_207();
    let lists = synthetic();
    let comparisons = all_pairs(&lists, &concepts, MetricId::Jaro, VariantPolicy::Max, DenominatorMode::Full).unwrap();
    assert_eq!(comparisons.len(), 6);
    let matrix = build_matrix(&comparisons).unwrap();
    let tree = upgma(&matrix);
    let clades = tree.clades();
    assert!(clades.contains(&vec!["Beta".to_string(), "Gamma".to_string()]), "{clades:?}");
    // Delta drifted the most from the shared ancestor.
    let newick = to_newick(&tree);
    assert!(newick.starts_with("(Delta:"), "{newick}");
}

#[test]
fn mixed_script_fixture_warns() {
    let concepts = ConceptList::swadesh_207();
    let mut lists = synthetic();
    lists.extend(
        parse_wordlist(&fixture("synthetic207_arabic.tsv"), &concepts, &NormalizationOptions::default())
            .unwrap()
            .wordlists,
    );
    let report = validate_wordlists(&lists, &concepts);
    let warning = report.warnings().next().expect("script warning");
    assert!(warning.message.contains("ArabicScript=Arabic"));
    assert!(!report.has_errors());
}

#[test]
fn wide_and_long_fixtures_agree() {
    let concepts = ConceptList::from_path(&fixture("synthetic10/concepts.tsv")).unwrap();
    let opts = NormalizationOptions::default();
    let long = parse_wordlist(&fixture("synthetic10/wordlists.tsv"), &concepts, &opts).unwrap();
    let mapping: ColumnMapping = "id=1,gloss=2,North=3,South=4".parse().unwrap();
    let wide = parse_wide_file(&fixture("synthetic10/wide.tsv"), &mapping, &concepts, &opts).unwrap();
    assert_eq!(long.wordlists.len(), 2);
    for (a, b) in long.wordlists.iter().zip(&wide.wordlists) {
        assert_eq!(a.variety(), b.variety());
        assert_eq!(a.entries(), b.entries());
    }
}

#[test]
fn serialized_fixture_is_parseable_by_the_cli_format() {
    let concepts = ConceptList::swadesh_207();
    let lists = synthetic();
    let text = write_long_format(&lists, &concepts);
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("out.tsv");
    std::fs::write(&path, &text).unwrap();
    let again = parse_wordlist(&path, &concepts, &NormalizationOptions::default()).unwrap();
    for (a, b) in lists.iter().zip(&again.wordlists) {
        assert_eq!(a.entries(), b.entries());
    }
}
