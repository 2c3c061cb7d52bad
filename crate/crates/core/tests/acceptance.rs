//! Exit criteria for the toolkit. Prints one PASS/FAIL line per criterion and
//! exits non-zero if any criterion fails.

mod common;

use std::panic::{self, AssertUnwindSafe};
use std::time::{Duration, Instant};

use lexidist_core::wordlist::{parse_wide_file, parse_wordlist_str, write_long_format, ColumnMapping};
use lexidist_core::{
    compare_pair, jaro_distance, jaro_similarity, jaro_similarity_naive, parse_wordlist, percentage, to_newick,
    upgma, validate_wordlists, ConceptList, DenominatorMode, DistanceMatrix, MetricId, NormalizationOptions,
    PairwiseComparison, ReportBundle, RunConfig, VariantPolicy, VarietyId,
};
use proptest::strategy::{Strategy, ValueTree};
use proptest::test_runner::TestRunner;

use common::{fixture, word_pair};

/// Tolerance for the hand-traced Jaro values.
const KERNEL_TOL: f64 = 1e-6;
/// Complement identity between averaged similarity and distance.
const COMPLEMENT_TOL: f64 = 1e-12;
/// Percentage points allowed between computed and printed percentages.
const PERCENT_TOL: f64 = 0.03;
/// Merge-height tolerance for the hand-run UPGMA.
const HEIGHT_TOL: f64 = 1e-4;
/// Frozen fixture aggregates come from an independent oracle; only
/// summation-order noise is allowed.
const FIXTURE_TOL: f64 = 1e-12;

const PAIRS: [&str; 6] = ["Za-Haw", "Kur-Sor", "Za-Kur", "Za-Sor", "Haw-Kur", "Haw-Sor"];
const TABLE1_SIMILARITY: [f64; 6] = [0.57, 0.68, 0.59, 0.58, 0.52, 0.61];
const TABLE1_DISTANCE: [f64; 6] = [0.43, 0.32, 0.41, 0.42, 0.48, 0.39];
const TABLE2_SIMILAR: [usize; 6] = [10, 55, 22, 19, 7, 23];
const TABLE2_DIFFERENT: [usize; 6] = [20, 23, 29, 32, 37, 21];
const TABLE3_SIMILAR: [f64; 6] = [4.83, 26.57, 10.63, 9.18, 3.38, 11.11];
const TABLE3_DIFFERENT: [f64; 6] = [9.66, 11.11, 14.01, 15.48, 17.87, 10.14];
const SWADESH_LEN: usize = 207;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn ac1_jaro_kernel() -> Outcome {
    for (a, b, expected) in [
        ("martha", "marhta", 0.944444),
        ("dixon", "dicksonx", 0.766667),
        ("crate", "trace", 0.733333),
    ] {
        let got = jaro_similarity(a, b);
        ensure((got - expected).abs() <= KERNEL_TOL, || format!("jaro({a},{b}) = {got}, want {expected}"))?;
    }
    ensure(jaro_similarity("kitêb", "kitêb") == 1.0, || "identity".into())?;
    ensure(jaro_similarity("", "") == 1.0, || "both-empty convention".into())?;
    ensure(jaro_similarity("", "av") == 0.0, || "one-empty convention".into())?;
    ensure(jaro_similarity("abc", "xyz") == 0.0, || "no-match case".into())?;
    ensure((jaro_distance("martha", "marhta") - 0.055556).abs() <= KERNEL_TOL, || "distance".into())?;
    Ok("martha/marhta, dixon/dicksonx, crate/trace within 1e-6".into())
}

fn ac2_property_suite() -> Outcome {
    const CASES: usize = 1200;
    let start = Instant::now();
    let mut runner = TestRunner::deterministic();
    let strategy = word_pair();
    for _ in 0..CASES {
        let (a, b) = strategy.new_tree(&mut runner).map_err(|e| e.to_string())?.current();
        let ab = jaro_similarity(&a, &b);
        ensure(ab == jaro_similarity(&b, &a), || format!("asymmetric on {a:?} {b:?}"))?;
        ensure((0.0..=1.0).contains(&ab), || format!("out of range on {a:?} {b:?}"))?;
        ensure((ab == 1.0) == (a == b), || format!("identity broken on {a:?} {b:?}"))?;
        ensure((ab + jaro_distance(&a, &b) - 1.0).abs() <= COMPLEMENT_TOL, || format!("complement on {a:?} {b:?}"))?;
        let naive = jaro_similarity_naive(&a, &b);
        ensure(ab.to_bits() == naive.to_bits(), || format!("oracle mismatch on {a:?} {b:?}: {ab} vs {naive}"))?;
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(5), || format!("took {elapsed:?}"))?;
    Ok(format!("{CASES} pairs over Latin, diacritic Latin and Arabic alphabets in {elapsed:.2?}"))
}

fn ac3_percentages() -> Outcome {
    let mut deviations = Vec::new();
    for (i, pair) in PAIRS.iter().enumerate() {
        for (kind, count, printed) in [
            ("similar", TABLE2_SIMILAR[i], TABLE3_SIMILAR[i]),
            ("different", TABLE2_DIFFERENT[i], TABLE3_DIFFERENT[i]),
        ] {
            let pct = percentage(count, SWADESH_LEN).map_err(|e| e.to_string())?;
            ensure((pct - printed).abs() <= PERCENT_TOL, || {
                format!("{pair} {kind}: {pct:.4} vs printed {printed}")
            })?;
            if format!("{pct:.2}") != format!("{printed:.2}") {
                deviations.push(format!("{pair} {kind} {pct:.2}% vs printed {printed:.2}%"));
            }
        }
    }
    ensure(deviations == ["Za-Sor different 15.46% vs printed 15.48%"], || {
        format!("unexpected deviations {deviations:?}")
    })?;
    Ok(format!("12 cells within {PERCENT_TOL} pp; known deviation: {}", deviations[0]))
}

fn paper_comparison(label: &str, similarity: f64, similar: usize, different: usize) -> PairwiseComparison {
    let (a, b) = label.split_once('-').unwrap();
    PairwiseComparison {
        pair: (VarietyId::new(a).unwrap(), VarietyId::new(b).unwrap()),
        metric: MetricId::Jaro,
        policy: VariantPolicy::Max,
        denominator_mode: DenominatorMode::Full,
        concept_scores: Vec::new(),
        avg_similarity: similarity,
        avg_distance: 1.0 - similarity,
        n_completely_similar: similar,
        n_completely_different: different,
        pct_completely_similar: percentage(similar, SWADESH_LEN).unwrap(),
        pct_completely_different: percentage(different, SWADESH_LEN).unwrap(),
        denominator: SWADESH_LEN,
        aligned_count: SWADESH_LEN,
    }
}

fn ac4_table1_identity() -> Outcome {
    for i in 0..6 {
        let sum = TABLE1_SIMILARITY[i] + TABLE1_DISTANCE[i];
        ensure(format!("{sum:.2}") == "1.00", || format!("{} printed values sum to {sum}", PAIRS[i]))?;
    }
    let comparisons: Vec<_> = (0..6)
        .map(|i| paper_comparison(PAIRS[i], TABLE1_SIMILARITY[i], TABLE2_SIMILAR[i], TABLE2_DIFFERENT[i]))
        .collect();
    let bundle = ReportBundle::new(RunConfig::default(), &comparisons);
    let rows = &bundle.similarity_distance.rows;
    for i in 0..6 {
        let (s, d) = (&rows[0].display[i], &rows[1].display[i]);
        ensure(*d == format!("{:.2}", TABLE1_DISTANCE[i]), || format!("{}: distance shown {d}", PAIRS[i]))?;
        let total: f64 = s.parse::<f64>().unwrap() + d.parse::<f64>().unwrap();
        ensure(format!("{total:.2}") == "1.00", || format!("{}: {s} + {d}", PAIRS[i]))?;
        ensure((rows[0].values[i] + rows[1].values[i] - 1.0).abs() <= COMPLEMENT_TOL, || "unrounded complement".into())?;
    }

    // The same identity on aggregates the toolkit computed itself.
    let concepts = ConceptList::swadesh_207();
    let lists = parse_wordlist(&fixture("synthetic207.tsv"), &concepts, &NormalizationOptions::default())
        .map_err(|e| e.to_string())?
        .wordlists;
    let computed = lexidist_core::all_pairs(&lists, &concepts, MetricId::Jaro, VariantPolicy::Max, DenominatorMode::Full)
        .map_err(|e| e.to_string())?;
    for c in &computed {
        ensure((c.avg_similarity + c.avg_distance - 1.0).abs() <= COMPLEMENT_TOL, || c.label())?;
    }
    Ok("all six columns sum to 1.00 at display precision".into())
}

/// Frozen from tests/fixtures/oracle.py (independent Jaro transcription).
struct Expected {
    policy: VariantPolicy,
    avg_similarity: f64,
    similar: usize,
    different: usize,
}

const SYNTHETIC10: [Expected; 3] = [
    Expected { policy: VariantPolicy::Max, avg_similarity: 0.6802469135802469, similar: 2, different: 1 },
    Expected { policy: VariantPolicy::Mean, avg_similarity: 0.6509259259259259, similar: 2, different: 1 },
    Expected { policy: VariantPolicy::First, avg_similarity: 0.6216049382716049, similar: 2, different: 2 },
];

fn ac5_fixture_reproduction() -> Outcome {
    let start = Instant::now();
    let concepts = ConceptList::from_path(&fixture("synthetic10/concepts.tsv")).map_err(|e| e.to_string())?;
    let opts = NormalizationOptions::default();
    let long = parse_wordlist(&fixture("synthetic10/wordlists.tsv"), &concepts, &opts).map_err(|e| e.to_string())?;
    let mapping: ColumnMapping = "id=1,gloss=2,North=3,South=4".parse().map_err(|e: lexidist_core::Error| e.to_string())?;
    let wide = parse_wide_file(&fixture("synthetic10/wide.tsv"), &mapping, &concepts, &opts).map_err(|e| e.to_string())?;

    for (route, lists) in [("long", &long.wordlists), ("columns", &wide.wordlists)] {
        let (north, south) = (&lists[0], &lists[1]);
        for exp in &SYNTHETIC10 {
            let c = compare_pair(north, south, &concepts, MetricId::Jaro, exp.policy, DenominatorMode::Full)
                .map_err(|e| e.to_string())?;
            let tag = format!("{route}/{}", exp.policy);
            ensure((c.avg_similarity - exp.avg_similarity).abs() <= FIXTURE_TOL, || {
                format!("{tag}: avg {} vs {}", c.avg_similarity, exp.avg_similarity)
            })?;
            ensure(c.n_completely_similar == exp.similar, || format!("{tag}: similar {}", c.n_completely_similar))?;
            ensure(c.n_completely_different == exp.different, || format!("{tag}: different {}", c.n_completely_different))?;
            ensure(c.aligned_count == 9 && c.denominator == 10, || format!("{tag}: counts"))?;
            ensure((c.pct_completely_similar - 10.0 * exp.similar as f64).abs() <= 1e-9, || format!("{tag}: pct"))?;

            if exp.policy != VariantPolicy::Mean {
                // Re-derive every concept score with the naive oracle.
                for s in c.concept_scores.iter().filter(|s| s.score.is_some()) {
                    let fa = north.forms(s.concept_id).unwrap();
                    let fb = south.forms(s.concept_id).unwrap();
                    let oracle = if exp.policy == VariantPolicy::First {
                        jaro_similarity_naive(&fa[0].normalized, &fb[0].normalized)
                    } else {
                        fa.iter()
                            .flat_map(|x| fb.iter().map(move |y| jaro_similarity_naive(&x.normalized, &y.normalized)))
                            .fold(0.0, f64::max)
                    };
                    ensure(s.score.unwrap().value() == oracle, || format!("{tag}: concept {}", s.concept_id))?;
                }
            }
        }
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(10), || format!("took {elapsed:?}"))?;
    Ok(format!(
        "dataset unavailable offline; synthetic 10-concept fixture matches oracle (max avg {:.6}) via long and --columns routes",
        SYNTHETIC10[0].avg_similarity
    ))
}

fn ac6_classification() -> Outcome {
    let pairs: Vec<(&str, &str, f64)> = [
        ("Zaza", "Hawrami"),
        ("Kurmanji", "Sorani"),
        ("Zaza", "Kurmanji"),
        ("Zaza", "Sorani"),
        ("Hawrami", "Kurmanji"),
        ("Hawrami", "Sorani"),
    ]
    .iter()
    .zip(TABLE1_DISTANCE)
    .map(|(&(a, b), d)| (a, b, d))
    .collect();
    let matrix = DistanceMatrix::from_pairs(&pairs).map_err(|e| e.to_string())?;
    let tree = upgma(&matrix);
    let clades = tree.clades();
    let expected_clades: Vec<Vec<String>> = vec![
        vec!["Hawrami", "Kurmanji", "Sorani", "Zaza"],
        vec!["Kurmanji", "Sorani"],
        vec!["Kurmanji", "Sorani", "Zaza"],
    ]
    .into_iter()
    .map(|c| c.into_iter().map(String::from).collect())
    .collect();
    ensure(clades == expected_clades, || format!("clades {clades:?}"))?;

    let heights = tree.merge_heights();
    for (got, want) in heights.iter().zip([0.16, 0.2075, 0.21667]) {
        ensure((got - want).abs() <= HEIGHT_TOL, || format!("heights {heights:?}"))?;
    }
    let newick = to_newick(&tree);
    ensure(newick.contains("(Kurmanji:0.16,Sorani:0.16)"), || newick.clone())?;

    // Same tree from the CSV matrix file.
    let from_file = DistanceMatrix::from_path(&fixture("table1_distances.csv")).map_err(|e| e.to_string())?;
    ensure(to_newick(&upgma(&from_file)) == newick, || "matrix file gives a different tree".into())?;
    Ok(format!("{newick} heights {:.4}/{:.4}/{:.5}", heights[0], heights[1], heights[2]))
}

fn ac7_round_trip() -> Outcome {
    let concepts = ConceptList::swadesh_207();
    let opts = NormalizationOptions::default();
    let mut total = 0;
    for name in ["synthetic207.tsv", "synthetic207_arabic.tsv"] {
        let path = fixture(name);
        let label = path.display().to_string();
        let first = parse_wordlist(&path, &concepts, &opts).map_err(|e| e.to_string())?;
        let text = write_long_format(&first.wordlists, &concepts);
        let second = parse_wordlist_str(&text, &label, &concepts, &opts).map_err(|e| e.to_string())?;
        ensure(first.wordlists == second.wordlists, || format!("{name} changed on round trip"))?;
        total += first.wordlists.len();
    }

    let lists = parse_wordlist(&fixture("synthetic207.tsv"), &concepts, &opts).map_err(|e| e.to_string())?.wordlists;
    let full = validate_wordlists(&lists, &concepts);
    ensure(full.varieties.iter().all(|v| v.covered == 207 && v.missing.is_empty()), || "coverage".into())?;

    let removed: [&[u32]; 3] = [&[5, 9], &[1], &[100, 150, 207]];
    let mutated: Vec<_> = lists
        .iter()
        .zip(removed)
        .map(|(l, ids)| ids.iter().fold(l.clone(), |acc, id| acc.without_concept(*id)))
        .collect();
    let report = validate_wordlists(&mutated, &concepts);
    for (cov, ids) in report.varieties.iter().zip(removed) {
        ensure(cov.missing == ids, || format!("{}: missing {:?}, want {ids:?}", cov.variety, cov.missing))?;
        ensure(cov.covered == 207 - ids.len(), || format!("{}: covered {}", cov.variety, cov.covered))?;
    }
    Ok(format!("{total} wordlists round-trip identically; mutated fixtures report exact missing ids"))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 7] = [
        ("AC1 Jaro kernel correctness", ac1_jaro_kernel),
        ("AC2 metric property suite", ac2_property_suite),
        ("AC3 count/percentage coherence", ac3_percentages),
        ("AC4 similarity/distance complement", ac4_table1_identity),
        ("AC5 end-to-end reproduction (synthetic fixture)", ac5_fixture_reproduction),
        ("AC6 classification determinism", ac6_classification),
        ("AC7 ingestion round trip", ac7_round_trip),
    ];

    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (name, run) in criteria {
        let outcome = panic::catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panicked".into()))
        });
        match outcome {
            Ok(detail) => println!("PASS  {name}: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL  {name}: {detail}");
            }
        }
    }
    let _ = panic::take_hook();
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
