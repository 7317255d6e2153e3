//! The coding words, the sets `C_s`, refinement, and the height encodings.

use std::collections::{HashMap, HashSet};

use rand::Rng;

use crate::coding::{b_word, beta, c_set, h0_point, h_word, label_of, parse_height, refine_into, Label};
use crate::corpus::{Corpus, CorpusParams};
use crate::oracle::coding::{admissible, first_betas};
use crate::seq::{Point, Word};

use super::Report;

/// Exhaustive checks of the coding words for `|s| ≤ max_len`, `ℓ ≤ max_label`,
/// plus `cases` seeded refinement runs.
pub fn run(seed: u64, max_len: usize, max_label: u64, cases: usize) -> Report {
    let mut r = Report::new("coding");
    r.check(b_word(&Label::empty()).is_ok_and(|w| w.len() == 0), || "b of the empty label is not empty".into());
    let mut oracle: HashMap<(usize, usize), Vec<Word>> = HashMap::new();
    for s in Label::up_to(max_len, max_label) {
        let bs = match b_word(&s) {
            Ok(w) => w,
            Err(e) => {
                r.check(false, || format!("b_{s}: {e}"));
                continue;
            }
        };
        let big = 1usize << s.len();
        r.check(bs.len() % big == 0, || format!("|b_{s}| = {} not divisible by {big}", bs.len()));
        if s.len() == max_len {
            continue;
        }
        let key = (s.len(), bs.len() % (2 * big));
        let listed = oracle
            .entry(key)
            .or_insert_with(|| first_betas(s.len(), bs.len(), max_label as usize + 1))
            .clone();
        for l in 0..=max_label {
            let child = b_word(&s.child(l)).expect("checked label range");
            let ok = bs.is_prefix_of(&child) && admissible(s.len(), bs.len(), &child.as_slice()[bs.len()..]);
            r.check(ok, || format!("b_{{{s},{l}}} does not extend b_{s} admissibly"));
            let b = beta(&s, l).expect("checked label range");
            r.oracle(b == listed[l as usize], || format!("β_{l} after {s} is {b}, enumeration gives {}", listed[l as usize]));
            r.check(label_of(&s, &b).ok() == Some(l), || format!("label of β_{l} after {s} is not {l}"));
        }
        for (i, b) in listed.iter().enumerate() {
            r.check(label_of(&s, b).ok() == Some(i as u64), || format!("label of {b} after {s} is not {i}"));
        }
        if s.len() <= 2 && s.0.iter().all(|&x| x <= 4) {
            let cs = c_set(&s).expect("small label");
            for l in 0..=4 {
                let sub = c_set(&s.child(l)).expect("small label");
                r.check(sub.subset_of(&cs), || format!("C_{{{s},{l}}} ⊄ C_{s}"));
            }
        }
    }

    let mut corpus = Corpus::new(seed, CorpusParams::default());
    for case in 0..cases {
        let len = corpus.rng().gen_range(0..=2);
        let s = Label((0..len).map(|_| corpus.rng().gen_range(0..=3)).collect());
        let cs = c_set(&s).expect("small label");
        let u = corpus.branch_of(&cs);
        let cut = corpus.rng().gen_range(0..=b_word(&s).expect("small label").len() + 8);
        let w = u.prefix(cut);
        let target = cs.restrict_to_cylinder(&w).expect("prefix of a branch");
        let labels: Vec<u64> = match refine_into(&s, &w) {
            Ok(it) => it.take(10).collect(),
            Err(e) => {
                r.check(false, || format!("case {case}: refine_into({s}, {w}) failed: {e}"));
                continue;
            }
        };
        let distinct: HashSet<u64> = labels.iter().copied().collect();
        r.check(distinct.len() == 10, || format!("case {case}: only {} distinct labels", distinct.len()));
        for &l in &labels {
            let inside = c_set(&s.child(l)).is_ok_and(|c| c.subset_of(&target));
            r.check(inside, || format!("case {case}: C_{{{s},{l}}} ⊄ C_{s} ∩ [{w}]"));
        }
    }
    r
}

/// Injectivity, the inclusion correspondence, and eventual containment for
/// the height encodings.
pub fn run_heights(max_len: usize, max_entry: u64, max_k: usize) -> Report {
    let mut r = Report::new("heights");
    let labels = Label::up_to(max_len, max_entry);
    let words: Vec<Word> = labels.iter().map(h_word).collect();
    let points: Vec<_> = labels.iter().map(h0_point).collect();
    let longest = words.iter().map(Word::len).max().unwrap_or(0);
    let long_prefixes: Vec<Word> = points.iter().map(|p| p.prefix(longest)).collect();
    r.check(words.iter().collect::<HashSet<_>>().len() == labels.len(), || "h is not injective".into());
    r.check(points.iter().collect::<HashSet<_>>().len() == labels.len(), || "h₀ is not injective".into());
    for (i, s) in labels.iter().enumerate() {
        r.check(parse_height(&words[i]) == (s.clone(), 0), || format!("parse of h({s}) is not ({s}, 0)"));
        for (j, t) in labels.iter().enumerate() {
            let sub = s.is_initial_segment_of(t);
            let cyl = words[i].is_prefix_of(&words[j]);
            let pt = words[i].is_prefix_of(&long_prefixes[j]);
            if sub != cyl || sub != pt {
                r.check(false, || format!("inclusion correspondence fails for {s}, {t}"));
            } else {
                r.checks += 1;
            }
        }
    }
    for (s, p) in labels.iter().zip(&points).filter(|(s, _)| s.len() < max_len) {
        for k in 0..=max_k {
            let target = p.prefix(k);
            for l in k as u64..k as u64 + 16 {
                let w = h_word(&s.child(l));
                r.check(target.is_prefix_of(&w), || format!("[h({s},{l})] ⊄ [h₀({s})↾{k}]"));
            }
        }
    }
    r
}
