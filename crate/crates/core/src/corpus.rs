//! Seeded generator for test corpora.
//!
//! All randomness comes from a `ChaCha8Rng` seeded with the caller's seed, so
//! a `(seed, params)` pair always yields the same sequence of objects.
//!
//! A tree is drawn as: depth `d ∈ [0, max_depth]`, between 1 and
//! `max_leaves` distinct leaves with entries in `[-entry_bound, entry_bound]`,
//! and for each leaf a tail with block length in `[1, max_block]` and
//! between 1 and `max_words` block words over the same entry range.

use std::collections::{BTreeMap, HashMap};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::regsets::{RegularCompact, TailSpec, TreeSpec};
use crate::seq::{Int, RegularPoint, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CorpusParams {
    pub max_depth: usize,
    pub entry_bound: i64,
    pub max_block: usize,
    pub max_words: usize,
    pub max_leaves: usize,
}

impl Default for CorpusParams {
    fn default() -> Self {
        CorpusParams { max_depth: 4, entry_bound: 3, max_block: 4, max_words: 3, max_leaves: 3 }
    }
}

pub struct Corpus {
    rng: ChaCha8Rng,
    params: CorpusParams,
}

impl Corpus {
    pub fn new(seed: u64, params: CorpusParams) -> Self {
        Corpus { rng: ChaCha8Rng::seed_from_u64(seed), params }
    }

    pub fn params(&self) -> &CorpusParams {
        &self.params
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    pub fn entry(&mut self) -> Int {
        let b = self.params.entry_bound;
        Int::from(self.rng.gen_range(-b..=b))
    }

    pub fn word(&mut self, len: usize) -> Word {
        (0..len).map(|_| self.entry()).collect()
    }

    pub fn tree_spec(&mut self) -> TreeSpec {
        let depth = self.rng.gen_range(0..=self.params.max_depth);
        let leaf_count = self.rng.gen_range(1..=self.params.max_leaves);
        let mut leaves: BTreeMap<Word, TailSpec> = BTreeMap::new();
        for _ in 0..leaf_count {
            let leaf = self.word(depth);
            let block = self.rng.gen_range(1..=self.params.max_block);
            let words = self.rng.gen_range(1..=self.params.max_words);
            let tail_words: Vec<Word> = (0..words).map(|_| self.word(block)).collect();
            let tail = TailSpec::new(block, tail_words).expect("generated tails are well formed");
            leaves.insert(leaf, tail);
        }
        TreeSpec::new(leaves).expect("generated trees are well formed")
    }

    pub fn compact(&mut self) -> (TreeSpec, RegularCompact) {
        let spec = self.tree_spec();
        let k = RegularCompact::from_tree(&spec);
        (spec, k)
    }

    /// A presentation of a superset of `spec`: every tail gains a random
    /// block word and, sometimes, a fresh leaf is added.
    pub fn superset_spec(&mut self, spec: &TreeSpec) -> TreeSpec {
        let mut leaves: BTreeMap<Word, TailSpec> = BTreeMap::new();
        for (leaf, tail) in spec.leaves() {
            let mut words: Vec<Word> = tail.words().iter().cloned().collect();
            words.push(self.word(tail.block_len()));
            leaves.insert(leaf.clone(), TailSpec::new(tail.block_len(), words).expect("same block length"));
        }
        if self.rng.gen_bool(0.5) {
            let leaf = self.word(spec.depth());
            let block = self.rng.gen_range(1..=self.params.max_block);
            let w = self.word(block);
            leaves.entry(leaf).or_insert_with(|| TailSpec::new(block, [w]).expect("one word"));
        }
        TreeSpec::new(leaves).expect("same depth")
    }

    /// Keeps a random nonempty subset of each tail and adds one random word,
    /// so the result overlaps `spec` without containing it.
    pub fn overlapping_spec(&mut self, spec: &TreeSpec) -> TreeSpec {
        let mut leaves: BTreeMap<Word, TailSpec> = BTreeMap::new();
        for (leaf, tail) in spec.leaves() {
            let mut words: Vec<Word> = tail.words().iter().filter(|_| self.rng.gen_bool(0.6)).cloned().collect();
            words.push(self.word(tail.block_len()));
            leaves.insert(leaf.clone(), TailSpec::new(tail.block_len(), words).expect("same block length"));
        }
        TreeSpec::new(leaves).expect("same depth")
    }

    /// The same set presented with every tail block doubled in length.
    pub fn reblocked_spec(spec: &TreeSpec) -> TreeSpec {
        let leaves = spec.leaves().iter().map(|(leaf, tail)| {
            let words: Vec<Word> =
                tail.words().iter().flat_map(|a| tail.words().iter().map(move |b| a.concat(b))).collect();
            (leaf.clone(), TailSpec::new(2 * tail.block_len(), words).expect("doubled blocks"))
        });
        TreeSpec::new(leaves).expect("same depth")
    }

    pub fn point(&mut self, max_head: usize, max_period: usize) -> RegularPoint {
        let h = self.rng.gen_range(0..=max_head);
        let p = self.rng.gen_range(1..=max_period);
        let head = self.word(h);
        let period = self.word(p);
        RegularPoint::new(head, period).expect("nonempty period")
    }

    /// A random eventually periodic branch of `k`: a random walk of random
    /// length, then one random edge per state until a state repeats.
    pub fn branch_of(&mut self, k: &RegularCompact) -> RegularPoint {
        let walk = self.rng.gen_range(0..6);
        let mut state = 0usize;
        let mut labels: Vec<Int> = Vec::new();
        for _ in 0..walk {
            let edges = k.edges(state);
            let i = self.rng.gen_range(0..edges.len());
            let (l, &t) = edges.iter().nth(i).expect("index in range");
            labels.push(l.clone());
            state = t;
        }
        let mut visited: HashMap<usize, usize> = HashMap::new();
        loop {
            if let Some(&at) = visited.get(&state) {
                let head = Word::new(labels[..at].to_vec());
                let period = Word::new(labels[at..].to_vec());
                return RegularPoint::new(head, period).expect("cycle is nonempty");
            }
            visited.insert(state, labels.len());
            let edges = k.edges(state);
            let n = edges.len();
            let i = self.rng.gen_range(0..n);
            let (l, &t) = edges.iter().nth(i).expect("index in range");
            labels.push(l.clone());
            state = t;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generation_is_deterministic() {
        let mut a = Corpus::new(7, CorpusParams::default());
        let mut b = Corpus::new(7, CorpusParams::default());
        for _ in 0..20 {
            assert_eq!(a.tree_spec(), b.tree_spec());
        }
    }

    #[test]
    fn branches_are_members() {
        let mut c = Corpus::new(11, CorpusParams::default());
        for _ in 0..50 {
            let (_, k) = c.compact();
            let x = c.branch_of(&k);
            assert!(k.member(&x), "{x} not in {k}");
        }
    }
}
