// Shared helpers for the integration tests.
#![allow(dead_code)]

use std::path::PathBuf;

use proptest::prelude::*;

pub const LATIN: &str = "abcdefghijklmnopqrstuvwxyz";
pub const LATIN_DIACRITIC: &str = "aeêiîouûbcçdhkrsşwxz";
pub const ARABIC: &str = "ابتجدرزسشعفقکگلمنوهیئڕێۆ";

pub fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

fn word_from(alphabet: &'static str, max_len: usize) -> impl Strategy<Value = String> {
    let chars: Vec<char> = alphabet.chars().collect();
    prop::collection::vec(prop::sample::select(chars), 0..=max_len).prop_map(|v| v.into_iter().collect())
}

/// Pairs of words drawn from one of the three test alphabets, lengths 0..=40.
pub fn word_pair() -> impl Strategy<Value = (String, String)> {
    prop_oneof![
        (word_from(LATIN, 40), word_from(LATIN, 40)),
        (word_from(LATIN_DIACRITIC, 40), word_from(LATIN_DIACRITIC, 40)),
        (word_from(ARABIC, 40), word_from(ARABIC, 40)),
    ]
}

/// Short non-empty word from the diacritic alphabet.
pub fn short_word() -> impl Strategy<Value = String> {
    let chars: Vec<char> = LATIN_DIACRITIC.chars().collect();
    prop::collection::vec(prop::sample::select(chars), 1..=8).prop_map(|v| v.into_iter().collect())
}
