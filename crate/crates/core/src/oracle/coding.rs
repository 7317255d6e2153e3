//! Admissible extensions listed straight from their definition.

use crate::seq::{Int, Word};

/// Whether `beta` is an admissible extension for a label of length `depth`
/// whose word has length `base_len`.
pub fn admissible(depth: usize, base_len: usize, beta: &[Int]) -> bool {
    let b = 1usize << depth;
    let binary = beta.iter().all(|x| *x == Int::from(0) || *x == Int::from(1));
    let segmented = beta.len() % b == 0 && beta.iter().enumerate().all(|(i, x)| *x == beta[i - i % b]);
    !beta.is_empty() && binary && segmented && (base_len + beta.len()) % (2 * b) == 0
}

/// The first `count` admissible extensions, by length then lexicographically.
/// Words are grown one letter at a time, abandoning a prefix as soon as it
/// breaks a block.
pub fn first_betas(depth: usize, base_len: usize, count: usize) -> Vec<Word> {
    let b = 1usize << depth;
    let mut out = Vec::new();
    let mut len = 1;
    while out.len() < count {
        let mut stack: Vec<Vec<Int>> = vec![Vec::new()];
        let mut found = Vec::new();
        while let Some(w) = stack.pop() {
            if w.len() == len {
                if admissible(depth, base_len, &w) {
                    found.push(Word::new(w));
                }
                continue;
            }
            // push 1 first so 0 is explored first
            for bit in [1, 0] {
                let mut next = w.clone();
                next.push(Int::from(bit));
                let i = next.len() - 1;
                if next[i] == next[i - i % b] {
                    stack.push(next);
                }
            }
        }
        out.extend(found);
        len += 1;
    }
    out.truncate(count);
    out
}
