//! Concept-by-concept comparison of two wordlists and the aggregates built
//! on top of it: average similarity and distance, counts of completely
//! similar and completely different concepts, and their percentages.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::metrics::{MetricId, SimilarityFn, SimilarityScore};
use crate::wordlist::{ConceptList, VarietyId, Wordlist};

/// How a concept with several variants on either side is scored.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum VariantPolicy {
    /// Best score over all variant pairs.
    #[default]
    Max,
    /// Mean score over all variant pairs.
    Mean,
    /// Score of the first-listed variant on each side.
    First,
}

impl VariantPolicy {
    pub fn as_str(self) -> &'static str {
        match self {
            VariantPolicy::Max => "max",
            VariantPolicy::Mean => "mean",
            VariantPolicy::First => "first",
        }
    }
}

impl fmt::Display for VariantPolicy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for VariantPolicy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "max" => Ok(VariantPolicy::Max),
            "mean" => Ok(VariantPolicy::Mean),
            "first" => Ok(VariantPolicy::First),
            _ => Err(Error::UnknownOption {
                kind: "variant policy",
                value: s.to_string(),
                valid: "max, mean, first",
            }),
        }
    }
}

/// Denominator used for the percentage rows.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DenominatorMode {
    /// Length of the concept list.
    #[default]
    Full,
    /// Number of concepts attested in both varieties.
    Aligned,
}

impl DenominatorMode {
    pub fn as_str(self) -> &'static str {
        match self {
            DenominatorMode::Full => "full",
            DenominatorMode::Aligned => "aligned",
        }
    }
}

impl fmt::Display for DenominatorMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for DenominatorMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "full" => Ok(DenominatorMode::Full),
            "aligned" => Ok(DenominatorMode::Aligned),
            _ => Err(Error::UnknownOption {
                kind: "denominator mode",
                value: s.to_string(),
                valid: "full, aligned",
            }),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ConceptStatus {
    Scored,
    MissingA,
    MissingB,
    MissingBoth,
}

/// Score of a variant cross-product together with the pair realizing it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VariantMatch {
    pub score: SimilarityScore,
    pub best_pair: (String, String),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConceptScore {
    pub concept_id: u32,
    /// Present exactly when `status` is `Scored`.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub score: Option<SimilarityScore>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub best_pair: Option<(String, String)>,
    pub status: ConceptStatus,
}

/// Gaps smaller than this count as ties when choosing the pair closest to a mean.
const TIE_TOLERANCE: f64 = 1e-12;

/// Scores one concept from the variants of two varieties.
pub fn score_concept<S: AsRef<str>>(
    forms_a: &[S],
    forms_b: &[S],
    metric: SimilarityFn,
    policy: VariantPolicy,
) -> Result<VariantMatch> {
    if forms_a.is_empty() || forms_b.is_empty() {
        return Err(Error::EmptyVariants);
    }
    let pair = |a: &S, b: &S| (a.as_ref().to_string(), b.as_ref().to_string());

    let (value, best_pair) = match policy {
        VariantPolicy::First => (metric(forms_a[0].as_ref(), forms_b[0].as_ref()), pair(&forms_a[0], &forms_b[0])),
        VariantPolicy::Max | VariantPolicy::Mean => {
            let scored: Vec<(f64, &S, &S)> = forms_a
                .iter()
                .flat_map(|a| forms_b.iter().map(move |b| (a, b)))
                .map(|(a, b)| (metric(a.as_ref(), b.as_ref()), a, b))
                .collect();
            let mut best = scored[0];
            for s in &scored[1..] {
                if s.0 > best.0 {
                    best = *s;
                }
            }
            if policy == VariantPolicy::Max {
                (best.0, pair(best.1, best.2))
            } else {
                // Summing in sorted order keeps the mean independent of which
                // side is listed first.
                let mut values: Vec<f64> = scored.iter().map(|s| s.0).collect();
                values.sort_by(f64::total_cmp);
                let lowest = values[0];
                let mean = (values.iter().sum::<f64>() / values.len() as f64).clamp(lowest, best.0);
                let mut closest = scored[0];
                for s in &scored[1..] {
                    if (s.0 - mean).abs() < (closest.0 - mean).abs() - TIE_TOLERANCE {
                        closest = *s;
                    }
                }
                (mean, pair(closest.1, closest.2))
            }
        }
    };

    Ok(VariantMatch {
        score: SimilarityScore::new(value).expect("metrics return scores in [0, 1]"),
        best_pair,
    })
}

/// `100 * count / denominator`, unrounded.
pub fn percentage(count: usize, denominator: usize) -> Result<f64> {
    if denominator == 0 {
        return Err(Error::ZeroDenominator);
    }
    if count > denominator {
        return Err(Error::CountExceedsDenominator { count, denominator });
    }
    Ok(100.0 * count as f64 / denominator as f64)
}

/// Aggregated comparison of one variety pair.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PairwiseComparison {
    pub pair: (VarietyId, VarietyId),
    pub metric: MetricId,
    pub policy: VariantPolicy,
    pub denominator_mode: DenominatorMode,
    pub concept_scores: Vec<ConceptScore>,
    pub avg_similarity: f64,
    pub avg_distance: f64,
    pub n_completely_similar: usize,
    pub n_completely_different: usize,
    pub pct_completely_similar: f64,
    pub pct_completely_different: f64,
    pub denominator: usize,
    pub aligned_count: usize,
}

impl PairwiseComparison {
    /// `A-B` label used as a table column heading.
    pub fn label(&self) -> String {
        format!("{}-{}", self.pair.0, self.pair.1)
    }

    pub fn score(&self, concept_id: u32) -> Option<f64> {
        self.concept_scores
            .iter()
            .find(|c| c.concept_id == concept_id)
            .and_then(|c| c.score)
            .map(SimilarityScore::value)
    }
}

/// Compares two wordlists over every concept of `concepts`.
///
/// Only concepts attested on both sides are scored; the others are kept
/// with a `missing_*` status and never count towards the averages.
pub fn compare_pair(
    list_a: &Wordlist,
    list_b: &Wordlist,
    concepts: &ConceptList,
    metric: MetricId,
    policy: VariantPolicy,
    denominator_mode: DenominatorMode,
) -> Result<PairwiseComparison> {
    for list in [list_a, list_b] {
        if list.concept_list_name() != concepts.name() {
            return Err(Error::ConceptListMismatch {
                variety: list.variety().to_string(),
                expected: concepts.name().to_string(),
                found: list.concept_list_name().to_string(),
            });
        }
    }
    let function = metric.function();

    let mut concept_scores = Vec::with_capacity(concepts.len());
    for concept in concepts.concepts() {
        let id = concept.id;
        let entry = match (list_a.forms(id), list_b.forms(id)) {
            (Some(a), Some(b)) => {
                let a: Vec<&str> = a.iter().map(|f| f.normalized.as_str()).collect();
                let b: Vec<&str> = b.iter().map(|f| f.normalized.as_str()).collect();
                let m = score_concept(&a, &b, function, policy)?;
                ConceptScore {
                    concept_id: id,
                    score: Some(m.score),
                    best_pair: Some(m.best_pair),
                    status: ConceptStatus::Scored,
                }
            }
            (a, b) => ConceptScore {
                concept_id: id,
                score: None,
                best_pair: None,
                status: match (a.is_some(), b.is_some()) {
                    (true, false) => ConceptStatus::MissingB,
                    (false, true) => ConceptStatus::MissingA,
                    _ => ConceptStatus::MissingBoth,
                },
            },
        };
        concept_scores.push(entry);
    }

    let scores: Vec<f64> = concept_scores
        .iter()
        .filter_map(|c| c.score.map(SimilarityScore::value))
        .collect();
    let aligned_count = scores.len();
    if aligned_count == 0 {
        return Err(Error::NoOverlap(list_a.variety().to_string(), list_b.variety().to_string()));
    }

    let avg_similarity = scores.iter().sum::<f64>() / aligned_count as f64;
    let n_completely_similar = scores.iter().filter(|&&s| s == 1.0).count();
    let n_completely_different = scores.iter().filter(|&&s| s == 0.0).count();
    let denominator = match denominator_mode {
        DenominatorMode::Full => concepts.len(),
        DenominatorMode::Aligned => aligned_count,
    };

    Ok(PairwiseComparison {
        pair: (list_a.variety().clone(), list_b.variety().clone()),
        metric,
        policy,
        denominator_mode,
        concept_scores,
        avg_similarity,
        avg_distance: 1.0 - avg_similarity,
        n_completely_similar,
        n_completely_different,
        pct_completely_similar: percentage(n_completely_similar, denominator)?,
        pct_completely_different: percentage(n_completely_different, denominator)?,
        denominator,
        aligned_count,
    })
}

/// Compares every unordered pair, in input order: `(0,1), (0,2), ..., (n-2,n-1)`.
pub fn all_pairs(
    wordlists: &[Wordlist],
    concepts: &ConceptList,
    metric: MetricId,
    policy: VariantPolicy,
    denominator_mode: DenominatorMode,
) -> Result<Vec<PairwiseComparison>> {
    if wordlists.len() < 2 {
        return Err(Error::TooFewVarieties(wordlists.len()));
    }
    for (i, list) in wordlists.iter().enumerate() {
        if wordlists[..i].iter().any(|w| w.variety() == list.variety()) {
            return Err(Error::DuplicateVariety(list.variety().to_string()));
        }
    }

    let pairs: Vec<(usize, usize)> = (0..wordlists.len())
        .flat_map(|i| (i + 1..wordlists.len()).map(move |j| (i, j)))
        .collect();
    pairs
        .par_iter()
        .map(|&(i, j)| compare_pair(&wordlists[i], &wordlists[j], concepts, metric, policy, denominator_mode))
        .collect()
}
