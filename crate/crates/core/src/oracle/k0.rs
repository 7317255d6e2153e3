//! Nodes of `K₀` from its definition: the closure of `⋃ C_s × {h₀(s)}` has
//! as depth-`n` nodes the pairs `(x↾n, h₀(s)↾n)` with `x ∈ C_s`.

use std::collections::{BTreeSet, HashMap};

use crate::coding::{b_word, Label};
use crate::regsets::{TailSpec, TreeSpec};
use crate::seq::{Int, Word};

use super::sets::spec_prefixes;

/// `C_s` written out as a one-leaf presentation.
pub fn c_spec(s: &Label) -> TreeSpec {
    let b = 1usize << s.len();
    let tail = TailSpec::new(b, [Word::new(vec![Int::from(0); b]), Word::new(vec![Int::from(1); b])])
        .expect("two blocks of equal length");
    TreeSpec::new([(b_word(s).expect("small label"), tail)]).expect("one leaf")
}

/// `h₀(s)↾n`, written out directly.
pub fn height_prefix(s: &Label, n: usize) -> Word {
    let mut out = Vec::new();
    for &e in &s.0 {
        for _ in 0..e {
            out.push(Int::from(0));
        }
        out.push(Int::from(1));
    }
    out.resize(n.max(out.len()), Int::from(0));
    out.truncate(n);
    Word::new(out)
}

/// Depth-`n` nodes contributed by the labels in `labels`, grouped by height.
pub fn k0_nodes<'a>(labels: impl IntoIterator<Item = &'a Label>, n: usize) -> HashMap<Word, BTreeSet<Word>> {
    let mut out: HashMap<Word, BTreeSet<Word>> = HashMap::new();
    for s in labels {
        out.entry(height_prefix(s, n)).or_default().extend(spec_prefixes(&c_spec(s), n));
    }
    out
}
