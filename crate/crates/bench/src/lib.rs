//! Synthetic inputs shared by the benchmarks.

use lexidist_core::{ConceptList, NormalizationOptions, Wordlist};

const ALPHABET: &[char] = &['a', 'b', 'd', 'e', 'ê', 'h', 'i', 'î', 'k', 'l', 'm', 'n', 'r', 's', 'ş', 't', 'u', 'û', 'w', 'x', 'z'];

/// Small xorshift generator so the benches do not depend on `rand`.
pub struct XorShift(u64);

impl XorShift {
    pub fn new(seed: u64) -> Self {
        XorShift(seed.max(1))
    }

    pub fn next(&mut self) -> u64 {
        let mut x = self.0;
        x ^= x << 13;
        x ^= x >> 7;
        x ^= x << 17;
        self.0 = x;
        x
    }

    pub fn below(&mut self, n: usize) -> usize {
        (self.next() % n as u64) as usize
    }
}

pub fn random_form(rng: &mut XorShift, min_len: usize, max_len: usize) -> String {
    let len = min_len + rng.below(max_len - min_len + 1);
    (0..len).map(|_| ALPHABET[rng.below(ALPHABET.len())]).collect()
}

/// Pairs of random forms of the given length range.
pub fn form_pairs(count: usize, min_len: usize, max_len: usize, seed: u64) -> Vec<(String, String)> {
    let mut rng = XorShift::new(seed);
    (0..count)
        .map(|_| (random_form(&mut rng, min_len, max_len), random_form(&mut rng, min_len, max_len)))
        .collect()
}

/// A full wordlist over `concepts` with one or two random variants per concept.
pub fn random_wordlist(variety: &str, concepts: &ConceptList, seed: u64) -> Wordlist {
    let mut rng = XorShift::new(seed);
    let mut forms = Vec::new();
    for c in concepts.concepts() {
        for _ in 0..1 + rng.below(2) {
            forms.push((c.id, random_form(&mut rng, 2, 9)));
        }
    }
    Wordlist::from_forms(
        variety,
        concepts,
        forms.iter().map(|(id, f)| (*id, f.as_str())),
        &NormalizationOptions::default(),
    )
    .expect("generated ids come from the concept list")
}
