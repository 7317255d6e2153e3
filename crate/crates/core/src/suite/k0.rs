//! The tree of `K₀` against enumeration, and the clopen pieces `D̄_s`.

use std::collections::BTreeSet;

use crate::coding::{c_set_shared, h_word, parse_height, Label};
use crate::oracle::k0::k0_nodes;
use crate::seq::{Int, Word};
use crate::witness::{binary_words, k0_tree_member, PairCylinder};

use super::Report;

fn in_bound(q: &Word, max_len: usize, max_entry: u64) -> bool {
    let (stem, _) = parse_height(q);
    stem.len() <= max_len && stem.0.iter().all(|&e| e <= max_entry)
}

fn member(p: &Word, q: &Word) -> bool {
    k0_tree_member(&PairCylinder::new(p.clone(), q.clone()).expect("equal lengths")).expect("small labels")
}

/// Compares membership with the enumerated closure on every node at depth
/// `≤ depth` whose height parses to a label of length `≤ max_len` with
/// entries `≤ max_entry`. Up to `full_depth` every pair of binary words is
/// tried; beyond it, the children of nodes found at the previous depth.
pub fn run(depth: usize, full_depth: usize, max_len: usize, max_entry: u64) -> Report {
    let mut r = Report::new("k0");
    let labels = Label::up_to(max_len, max_entry);
    let mut frontier: Vec<(Word, Word)> = vec![(Word::empty(), Word::empty())];
    let mut skipped = 0u64;
    for n in 0..=depth {
        let oracle = k0_nodes(&labels, n);
        let mut found: Vec<(Word, Word)> = Vec::new();
        if n <= full_depth {
            let words = binary_words(n);
            for q in &words {
                if !in_bound(q, max_len, max_entry) {
                    skipped += 1;
                    continue;
                }
                let want = oracle.get(q).cloned().unwrap_or_default();
                let have: BTreeSet<Word> = words.iter().filter(|p| member(p, q)).cloned().collect();
                r.oracle(want == have, || format!("depth {n}, height {q}: {} nodes vs {} enumerated", have.len(), want.len()));
                found.extend(have.into_iter().map(|p| (p, q.clone())));
            }
            if n > 0 {
                let parents: BTreeSet<&(Word, Word)> = frontier.iter().collect();
                for (p, q) in &found {
                    if in_bound(&q.prefix(n - 1), max_len, max_entry) {
                        let up = (p.prefix(n - 1), q.prefix(n - 1));
                        r.check(parents.contains(&up), || format!("node ({p}, {q}) has no parent node"));
                    }
                }
            }
        } else {
            let mut seen: BTreeSet<(Word, Word)> = BTreeSet::new();
            for (p, q) in &frontier {
                for a in [0, 1] {
                    for b in [0, 1] {
                        let (p2, q2) = (p.extended(Int::from(a)), q.extended(Int::from(b)));
                        if !in_bound(&q2, max_len, max_entry) {
                            skipped += 1;
                            continue;
                        }
                        let want = oracle.get(&q2).is_some_and(|set| set.contains(&p2));
                        r.oracle(member(&p2, &q2) == want, || format!("depth {n}: node ({p2}, {q2}) disagrees"));
                        if want {
                            seen.insert((p2, q2));
                        }
                    }
                }
            }
            let total: usize = oracle.values().map(BTreeSet::len).sum();
            r.check(seen.len() == total, || format!("depth {n}: walk reached {} of {total} nodes", seen.len()));
            found = seen.into_iter().collect();
        }
        frontier = found;
    }
    r.note(format!("{skipped} heights outside the enumerated label range skipped"));
    r
}

/// `K₀ ∩ (C_s × [h(s)])` against the closure of `⋃_{σ ⊇ s} C_σ × {h₀(σ)}`,
/// level by level, for `|s| ≤ max_s`.
pub fn run_clopen(depth: usize, max_s: usize, max_len: usize, max_entry: u64) -> Report {
    let mut r = Report::new("k0-clopen");
    let labels = Label::up_to(max_len, max_entry);
    for s in Label::up_to(max_s, max_entry) {
        let hs = h_word(&s);
        let cs = c_set_shared(&s).expect("small label");
        let below: Vec<&Label> = labels.iter().filter(|t| s.is_initial_segment_of(t)).collect();
        for n in 0..=depth {
            let oracle = k0_nodes(below.iter().copied(), n);
            let words = binary_words(n);
            for q in words.iter().filter(|q| in_bound(q, max_len, max_entry)) {
                let compatible = q.is_prefix_of(&hs) || hs.is_prefix_of(q);
                let have: BTreeSet<Word> = if compatible {
                    words.iter().filter(|p| cs.contains_word(p) && member(p, q)).cloned().collect()
                } else {
                    BTreeSet::new()
                };
                let want = oracle.get(q).cloned().unwrap_or_default();
                r.oracle(have == want, || format!("s = {s}, depth {n}, height {q}: pieces differ"));
            }
        }
    }
    r
}
