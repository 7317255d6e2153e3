//! Relative interiors of closed regular sets, and the chain "pullback has
//! empty interior ⇒ relative empty interior in the image" on instances.

use std::collections::{BTreeMap, BTreeSet};

use rand::Rng;

use crate::corpus::{Corpus, CorpusParams};
use crate::oracle::{spec_prefixes, OracleSet};
use crate::regsets::{is_nowhere_dense_in, pullback, rel_int_empty, RegularCompact, TailSpec, TreeSpec};
use crate::seq::{Int, RegularPoint, Word};

use super::Report;

/// Depth of the nodes searched for an interior cylinder.
pub const NODE_DEPTH: usize = 6;
/// Depth at which `[p] ∩ C ⊆ B` is compared.
pub const INCLUSION_DEPTH: usize = 12;

fn params() -> CorpusParams {
    CorpusParams { max_depth: 3, entry_bound: 2, max_block: 3, max_words: 2, max_leaves: 3 }
}

fn point_spec(x: &RegularPoint) -> TreeSpec {
    let head = Word::new(x.head().to_vec());
    let tail = TailSpec::new(x.period_len(), [Word::new(x.period().to_vec())]).expect("one word");
    TreeSpec::new([(head, tail)]).expect("single leaf")
}

/// Whether some node `p` of `C` at [`NODE_DEPTH`] has all its
/// [`INCLUSION_DEPTH`] extensions in `C` lying in `B`.
fn brute_interior(b: &OracleSet, c: &TreeSpec) -> bool {
    let deep_b = b.prefixes(INCLUSION_DEPTH);
    let bad: BTreeSet<Word> = spec_prefixes(c, INCLUSION_DEPTH)
        .into_iter()
        .filter(|w| !deep_b.contains(w))
        .map(|w| w.prefix(NODE_DEPTH))
        .collect();
    spec_prefixes(c, NODE_DEPTH).iter().any(|p| !bad.contains(p))
}

fn interior_pairs(r: &mut Report, corpus: &mut Corpus, pairs: usize) {
    let mut empties = 0;
    for case in 0..pairs {
        let (sc, c) = corpus.compact();
        let (expr, b) = match case % 6 {
            0 => (OracleSet::Spec(sc.clone()), c.clone()),
            1 => {
                let s = corpus.overlapping_spec(&sc);
                (OracleSet::Spec(s.clone()), RegularCompact::from_tree(&s))
            }
            2 => {
                let s = corpus.superset_spec(&sc);
                (OracleSet::Spec(s.clone()), RegularCompact::from_tree(&s))
            }
            3 => {
                let s = corpus.tree_spec();
                (OracleSet::Spec(s.clone()), RegularCompact::from_tree(&s))
            }
            4 => {
                let s = point_spec(&corpus.branch_of(&c));
                (OracleSet::Spec(s.clone()), RegularCompact::from_tree(&s))
            }
            _ => {
                let s1 = corpus.overlapping_spec(&sc);
                let s2 = point_spec(&corpus.branch_of(&c));
                let b = RegularCompact::from_tree(&s1).union(&RegularCompact::from_tree(&s2));
                (OracleSet::Union(Box::new(OracleSet::Spec(s1)), Box::new(OracleSet::Spec(s2))), b)
            }
        };
        let fast = rel_int_empty(Some(&b), &c);
        let slow = !brute_interior(&expr, &sc);
        empties += usize::from(fast);
        r.oracle(fast == slow, || format!("pair {case}: B={b} C={c}: relIntEmpty {fast}, brute force {slow}"));
        // fact (1) for closed sets: empty interior and nowhere density coincide
        r.check(fast == is_nowhere_dense_in(Some(&b), &c), || format!("pair {case}: interior and density disagree"));
    }
    r.note(format!("{empties} of {pairs} pairs have empty relative interior"));
}

fn letter_map(corpus: &mut Corpus, k: &RegularCompact) -> BTreeMap<Int, Int> {
    let letters: BTreeSet<Int> = (0..k.num_states()).flat_map(|q| k.edges(q).keys().cloned()).collect();
    letters.into_iter().map(|l| (l, Int::from(corpus.rng().gen_range(-1..=1)))).collect()
}

/// Instances of the chain for `f = φ` coordinatewise on `K`, `C = f(K)`.
fn chain(r: &mut Report, corpus: &mut Corpus, sets: usize, shifts: usize) {
    let mut found = 0;
    let mut tries = 0;
    while found < sets && tries < 50 * sets {
        tries += 1;
        let (_, k) = corpus.compact();
        let phi = letter_map(corpus, &k);
        let image = k.map_letters(&phi);
        let (_, b) = if tries % 2 == 0 {
            corpus.compact()
        } else {
            let x = corpus.branch_of(&image);
            let s = point_spec(&x);
            (s.clone(), RegularCompact::from_tree(&s))
        };
        let mut all_empty = true;
        for i in 0..shifts {
            let g = if i % 2 == 0 {
                corpus.branch_of(&image).sub(&corpus.branch_of(&b))
            } else {
                corpus.point(2, 2)
            };
            let moved = b.translate(&g);
            let pre = pullback(&k, &phi, &moved);
            for _ in 0..4 {
                let x = corpus.branch_of(&k);
                let fx = RegularPoint::new(
                    x.head().iter().map(|l| phi[l].clone()).collect(),
                    x.period().iter().map(|l| phi[l].clone()).collect(),
                )
                .expect("nonempty period");
                let inside = pre.as_ref().is_some_and(|p| p.member(&x));
                r.check(inside == moved.member(&fx), || format!("pullback membership of {x} under shift {g}"));
                r.check(image.member(&fx), || format!("{fx} missing from the image"));
            }
            let pre_empty = rel_int_empty(pre.as_ref(), &k);
            let rel_empty = rel_int_empty(moved.intersect(&image).as_ref(), &image);
            r.check(!pre_empty || rel_empty, || {
                format!("K={k} B={b} g={g}: pullback has empty interior but B + g has interior in the image")
            });
            r.check(rel_empty == rel_int_empty(Some(&moved), &image), || {
                format!("K={k} B={b} g={g}: interior of B+g and of (B+g) ∩ C disagree")
            });
            all_empty &= rel_empty;
        }
        found += usize::from(all_empty);
    }
    r.check(found >= sets, || format!("only {found} of {sets} sets with empty interior under every shift"));
}

pub fn run(seed: u64, pairs: usize, sets: usize, shifts: usize) -> Report {
    let mut r = Report::new("mincompl");
    let mut corpus = Corpus::new(seed, params());
    interior_pairs(&mut r, &mut corpus, pairs);
    chain(&mut r, &mut corpus, sets, shifts);
    r
}
