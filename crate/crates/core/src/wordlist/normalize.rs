use serde::{Deserialize, Serialize};
use unicode_general_category::{get_general_category, GeneralCategory};
use unicode_normalization::UnicodeNormalization;
use unicode_script::{Script, UnicodeScript};

/// Switches for the form normalization pipeline. Canonical composition is
/// always applied.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct NormalizationOptions {
    pub case_fold: bool,
    /// Removes leading and trailing punctuation only.
    pub strip_punctuation: bool,
    /// Replaces every internal whitespace run by a single space.
    pub collapse_internal_whitespace: bool,
}

impl Default for NormalizationOptions {
    fn default() -> Self {
        NormalizationOptions {
            case_fold: true,
            strip_punctuation: true,
            collapse_internal_whitespace: true,
        }
    }
}

fn is_punctuation(c: char) -> bool {
    matches!(
        get_general_category(c),
        GeneralCategory::ConnectorPunctuation
            | GeneralCategory::DashPunctuation
            | GeneralCategory::OpenPunctuation
            | GeneralCategory::ClosePunctuation
            | GeneralCategory::InitialPunctuation
            | GeneralCategory::FinalPunctuation
            | GeneralCategory::OtherPunctuation
    )
}

/// Normalizes a raw cell into a comparable form.
///
/// Returns `None` when nothing is left, in which case the cell is an absence
/// rather than a form.
pub fn normalize_form(raw: &str, options: &NormalizationOptions) -> Option<String> {
    let mut s: String = raw.nfc().collect();
    if options.case_fold {
        s = s.to_lowercase().nfc().collect();
    }

    let trimmed = if options.strip_punctuation {
        s.trim_matches(|c: char| c.is_whitespace() || is_punctuation(c))
    } else {
        s.trim()
    };

    let out: String = if options.collapse_internal_whitespace {
        trimmed.split_whitespace().collect::<Vec<_>>().join(" ")
    } else {
        trimmed.to_string()
    };
    let out: String = out.nfc().collect();

    (!out.is_empty()).then_some(out)
}

/// Most frequent specific script among the scalars of `text`, ignoring
/// Common, Inherited and Unknown. Falls back to Common when none is found.
pub fn dominant_script<'a>(texts: impl IntoIterator<Item = &'a str>) -> Script {
    let mut counts: Vec<(Script, usize)> = Vec::new();
    for c in texts.into_iter().flat_map(str::chars) {
        let script = c.script();
        if matches!(script, Script::Common | Script::Inherited | Script::Unknown) {
            continue;
        }
        match counts.iter_mut().find(|(s, _)| *s == script) {
            Some((_, n)) => *n += 1,
            None => counts.push((script, 1)),
        }
    }
    counts
        .into_iter()
        .max_by(|(sa, na), (sb, nb)| na.cmp(nb).then_with(|| sb.full_name().cmp(sa.full_name())))
        .map(|(s, _)| s)
        .unwrap_or(Script::Common)
}
