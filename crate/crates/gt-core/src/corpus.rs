//! Enumeration and sampling of words, plus the shared thread pool.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::word::{cyclic_canonical, CyclicClass, GroupWord, Letter};

/// All reduced words of length at most `max_len` in `p` generators, in
/// length-lex order.
pub fn reduced_words(p: usize, max_len: usize) -> Vec<GroupWord> {
    let alphabet: Vec<Letter> = (1..=p as u16).flat_map(|g| [Letter::pos(g), Letter::neg(g)]).collect();
    let mut layer: Vec<Vec<Letter>> = vec![vec![]];
    let mut out = vec![GroupWord::identity()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &layer {
            for &l in &alphabet {
                if w.last().is_some_and(|&last| last == l.inverse()) {
                    continue;
                }
                let mut v = w.clone();
                v.push(l);
                next.push(v);
            }
        }
        out.extend(next.iter().map(|v| GroupWord::from_letters(v.iter().copied())));
        layer = next;
    }
    out.sort();
    out
}

/// All conjugacy classes with cyclically reduced length at most `max_len`.
pub fn cyclic_classes(p: usize, max_len: usize) -> Vec<CyclicClass> {
    let mut out: Vec<CyclicClass> = reduced_words(p, max_len).iter().map(cyclic_canonical).collect();
    out.sort();
    out.dedup();
    out
}

/// Deterministic random source shared by the randomized checks.
pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A uniformly random reduced word of length exactly `len`.
pub fn random_word<R: Rng>(rng: &mut R, p: usize, len: usize) -> GroupWord {
    let mut v: Vec<Letter> = Vec::with_capacity(len);
    while v.len() < len {
        let l = Letter::new(rng.gen_range(1..=p as u16), if rng.gen_bool(0.5) { 1 } else { -1 });
        if v.last().is_some_and(|&last| last == l.inverse()) {
            continue;
        }
        v.push(l);
    }
    GroupWord::from_letters(v)
}

/// A random class of cyclically reduced length in `1..=max_len`.
pub fn random_class<R: Rng>(rng: &mut R, p: usize, max_len: usize) -> CyclicClass {
    loop {
        let len = rng.gen_range(1..=max_len);
        let c = cyclic_canonical(&random_word(rng, p, len));
        if !c.is_empty() {
            return c;
        }
    }
}

/// Runs `f` inside a rayon pool sized by `GT_MAX_PARALLELISM` when set.
pub fn with_pool<T: Send>(f: impl FnOnce() -> T + Send) -> T {
    let threads = std::env::var("GT_MAX_PARALLELISM").ok().and_then(|v| v.parse::<usize>().ok()).filter(|&n| n > 0);
    match threads.and_then(|n| rayon::ThreadPoolBuilder::new().num_threads(n).build().ok()) {
        Some(pool) => pool.install(f),
        None => f(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_of_reduced_words() {
        // 1 + 4 + 12 + 36 for two generators.
        assert_eq!(reduced_words(2, 3).len(), 53);
        assert_eq!(reduced_words(1, 4).len(), 9);
    }

    #[test]
    fn classes_in_one_generator() {
        assert_eq!(cyclic_classes(1, 3).len(), 7);
    }

    #[test]
    fn random_words_are_reduced_and_reproducible() {
        let a: Vec<_> = (0..20)
            .map({
                let mut r = rng(7);
                move |_| random_word(&mut r, 3, 5)
            })
            .collect();
        let mut r = rng(7);
        for w in &a {
            assert_eq!(w.len(), 5);
            assert_eq!(*w, random_word(&mut r, 3, 5));
        }
    }
}
