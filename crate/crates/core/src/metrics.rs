//! String similarity kernels.
//!
//! Every metric compares Unicode scalar values, never bytes, and returns a
//! score in `[0, 1]` where `1` means identical. Callers are expected to pass
//! forms that already went through [`crate::wordlist::normalize_form`], so
//! that precomposed and combining spellings of the same letter compare equal.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A similarity value in `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SimilarityScore(f64);

impl SimilarityScore {
    pub const IDENTICAL: SimilarityScore = SimilarityScore(1.0);
    pub const DISJOINT: SimilarityScore = SimilarityScore(0.0);

    /// Wraps `value`, returning `None` when it falls outside `[0, 1]`.
    pub fn new(value: f64) -> Option<Self> {
        (0.0..=1.0).contains(&value).then_some(SimilarityScore(value))
    }

    pub fn value(self) -> f64 {
        self.0
    }

    pub fn distance(self) -> f64 {
        1.0 - self.0
    }
}

/// Matching statistics behind a Jaro score.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MatchStats {
    /// Number of matching characters.
    pub matches: usize,
    /// Half the number of matched characters that appear out of order.
    pub transpositions: f64,
    pub len_a: usize,
    pub len_b: usize,
}

impl MatchStats {
    pub fn similarity(&self) -> f64 {
        if self.len_a == 0 && self.len_b == 0 {
            return 1.0;
        }
        if self.matches == 0 {
            return 0.0;
        }
        let m = self.matches as f64;
        (m / self.len_a as f64 + m / self.len_b as f64 + (m - self.transpositions) / m) / 3.0
    }
}

/// Half-width of the Jaro matching window for two forms of the given lengths.
pub fn match_window(len_a: usize, len_b: usize) -> usize {
    (len_a.max(len_b) / 2).saturating_sub(1)
}

/// Computes Jaro matching statistics over two scalar sequences.
pub fn match_stats(a: &[char], b: &[char]) -> MatchStats {
    let window = match_window(a.len(), b.len());
    let mut a_flags = vec![false; a.len()];
    let mut b_flags = vec![false; b.len()];
    let mut matches = 0;

    for (i, &ca) in a.iter().enumerate() {
        let lo = i.saturating_sub(window);
        let hi = (i + window + 1).min(b.len());
        for j in lo..hi {
            if !b_flags[j] && b[j] == ca {
                a_flags[i] = true;
                b_flags[j] = true;
                matches += 1;
                break;
            }
        }
    }

    let mut out_of_order = 0usize;
    let mut k = 0;
    for (i, &ca) in a.iter().enumerate() {
        if !a_flags[i] {
            continue;
        }
        while !b_flags[k] {
            k += 1;
        }
        if ca != b[k] {
            out_of_order += 1;
        }
        k += 1;
    }

    MatchStats {
        matches,
        transpositions: out_of_order as f64 / 2.0,
        len_a: a.len(),
        len_b: b.len(),
    }
}

/// Jaro similarity of two normalized forms.
///
/// Two empty forms score `1.0`; a single empty form or a pair without any
/// matching character within the window scores `0.0`.
pub fn jaro_similarity(a: &str, b: &str) -> f64 {
    if a == b {
        return 1.0;
    }
    let a: Vec<char> = a.chars().collect();
    let b: Vec<char> = b.chars().collect();
    jaro_similarity_chars(&a, &b)
}

pub fn jaro_similarity_chars(a: &[char], b: &[char]) -> f64 {
    if a.is_empty() || b.is_empty() {
        return if a.len() == b.len() { 1.0 } else { 0.0 };
    }
    match_stats(a, b).similarity()
}

/// `1 - jaro_similarity(a, b)`.
pub fn jaro_distance(a: &str, b: &str) -> f64 {
    1.0 - jaro_similarity(a, b)
}

/// Literal quadratic transcription of the Jaro definition.
///
/// Scans every position of `b` for every position of `a` and checks the
/// window explicitly. Kept as a cross-check for [`jaro_similarity`]; it is
/// not used on any production path.
pub fn jaro_similarity_naive(a: &str, b: &str) -> f64 {
    let a: Vec<char> = a.chars().collect();
    let b: Vec<char> = b.chars().collect();
    if a.is_empty() && b.is_empty() {
        return 1.0;
    }
    if a.is_empty() || b.is_empty() {
        return 0.0;
    }

    let longest = if a.len() > b.len() { a.len() } else { b.len() };
    let window = if longest / 2 >= 1 { longest / 2 - 1 } else { 0 };

    let mut a_matched = vec![false; a.len()];
    let mut b_matched = vec![false; b.len()];
    for i in 0..a.len() {
        for j in 0..b.len() {
            let gap = if i > j { i - j } else { j - i };
            if gap <= window && !b_matched[j] && a[i] == b[j] {
                a_matched[i] = true;
                b_matched[j] = true;
                break;
            }
        }
    }

    let a_seq: Vec<char> = (0..a.len()).filter(|&i| a_matched[i]).map(|i| a[i]).collect();
    let b_seq: Vec<char> = (0..b.len()).filter(|&j| b_matched[j]).map(|j| b[j]).collect();
    let m = a_seq.len();
    if m == 0 {
        return 0.0;
    }
    let mut misordered = 0usize;
    for k in 0..m {
        if a_seq[k] != b_seq[k] {
            misordered += 1;
        }
    }
    let t = misordered as f64 / 2.0;

    let m = m as f64;
    (m / a.len() as f64 + m / b.len() as f64 + (m - t) / m) / 3.0
}

const WINKLER_SCALING: f64 = 0.1;
const WINKLER_MAX_PREFIX: usize = 4;

/// Jaro similarity boosted by the length of the shared prefix (at most four
/// scalars, scaling factor 0.1).
pub fn jaro_winkler_similarity(a: &str, b: &str) -> f64 {
    let sim = jaro_similarity(a, b);
    let prefix = a
        .chars()
        .zip(b.chars())
        .take(WINKLER_MAX_PREFIX)
        .take_while(|(x, y)| x == y)
        .count();
    sim + prefix as f64 * WINKLER_SCALING * (1.0 - sim)
}

/// `1 - levenshtein(a, b) / max(len_a, len_b)`, counted in scalars.
pub fn levenshtein_norm_similarity(a: &str, b: &str) -> f64 {
    strsim::normalized_levenshtein(a, b)
}

/// Signature shared by every registered metric.
pub type SimilarityFn = fn(&str, &str) -> f64;

/// Names of the registered metrics.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MetricId {
    Jaro,
    JaroWinkler,
    LevenshteinNorm,
}

impl MetricId {
    pub const ALL: [MetricId; 3] = [MetricId::Jaro, MetricId::JaroWinkler, MetricId::LevenshteinNorm];

    pub fn as_str(self) -> &'static str {
        match self {
            MetricId::Jaro => "jaro",
            MetricId::JaroWinkler => "jaro_winkler",
            MetricId::LevenshteinNorm => "levenshtein_norm",
        }
    }

    /// Column heading used when rendering the averaged-similarity table.
    pub fn table_heading(self) -> &'static str {
        match self {
            MetricId::Jaro => "Jaro (Avg)",
            MetricId::JaroWinkler => "Jaro-Winkler (Avg)",
            MetricId::LevenshteinNorm => "Levenshtein norm. (Avg)",
        }
    }

    pub fn function(self) -> SimilarityFn {
        match self {
            MetricId::Jaro => jaro_similarity,
            MetricId::JaroWinkler => jaro_winkler_similarity,
            MetricId::LevenshteinNorm => levenshtein_norm_similarity,
        }
    }

    fn valid_names() -> String {
        MetricId::ALL.map(MetricId::as_str).join(", ")
    }
}

impl fmt::Display for MetricId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for MetricId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        MetricId::ALL
            .into_iter()
            .find(|m| m.as_str() == s)
            .ok_or_else(|| Error::UnknownMetric {
                name: s.to_string(),
                valid: MetricId::valid_names(),
            })
    }
}

/// Resolves a metric by name.
pub fn metric_lookup(name: &str) -> Result<SimilarityFn> {
    name.parse::<MetricId>().map(MetricId::function)
}
