//! Finitely presented compact subsets of `Z^ω`.
//!
//! A [`RegularCompact`] is a deterministic, finitely branching transition
//! graph in which every state has at least one outgoing edge. Its branches
//! (infinite label sequences read from the root) form a nonempty compact
//! set, and every such graph is the tree of a closed set with finitely many
//! distinct subtrees. Values are kept minimal and canonically numbered, so
//! structural equality coincides with equality of the denoted sets.
//!
//! The classical "finite pruned tree plus block-periodic tails" presentation
//! is available through [`TreeSpec`] / [`TailSpec`].

mod interior;
mod levels;
mod notation;
mod ops;

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::sync::OnceLock;

use num_bigint::BigUint;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::seq::{Int, RegularPoint, Word};

pub use interior::{is_nowhere_dense_in, pullback, rel_int_empty};
pub use levels::Levels;

/// Outgoing edges of a state: label ↦ target.
pub type Edges = BTreeMap<Int, usize>;

#[derive(Clone)]
pub struct RegularCompact {
    states: Vec<Edges>,
    levels: OnceLock<Levels>,
}

impl PartialEq for RegularCompact {
    fn eq(&self, other: &Self) -> bool {
        self.states == other.states
    }
}

impl Eq for RegularCompact {}

impl std::hash::Hash for RegularCompact {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.states.hash(state);
    }
}

impl std::fmt::Debug for RegularCompact {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "RegularCompact{self}")
    }
}

/// Tail language: all infinite concatenations of `words`, each of length `block_len`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TailSpec {
    block_len: usize,
    words: BTreeSet<Word>,
}

impl TailSpec {
    pub fn new(block_len: usize, words: impl IntoIterator<Item = Word>) -> Result<Self> {
        if block_len == 0 {
            return Err(Error::Precondition("tail block length must be positive".into()));
        }
        let words: BTreeSet<Word> = words.into_iter().collect();
        if words.is_empty() {
            return Err(Error::Precondition("tail word set must be nonempty".into()));
        }
        if let Some(bad) = words.iter().find(|w| w.len() != block_len) {
            return Err(Error::Precondition(format!("tail word {bad} has length != {block_len}")));
        }
        Ok(TailSpec { block_len, words })
    }

    /// `{alphabet}^ω` as a length-1 tail.
    pub fn full(alphabet: &[i64]) -> Self {
        Self::new(1, alphabet.iter().map(|&a| Word::from_i64s(&[a]))).expect("nonempty alphabet")
    }

    pub fn block_len(&self) -> usize {
        self.block_len
    }

    pub fn words(&self) -> &BTreeSet<Word> {
        &self.words
    }
}

/// A pruned tree of uniform depth whose leaves carry tail languages.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeSpec {
    depth: usize,
    leaves: BTreeMap<Word, TailSpec>,
}

impl TreeSpec {
    pub fn new(leaves: impl IntoIterator<Item = (Word, TailSpec)>) -> Result<Self> {
        let leaves: BTreeMap<Word, TailSpec> = leaves.into_iter().collect();
        let depth = leaves
            .keys()
            .next()
            .map(Word::len)
            .ok_or_else(|| Error::Precondition("tree must have at least one leaf".into()))?;
        if leaves.keys().any(|w| w.len() != depth) {
            return Err(Error::Precondition("all leaves must have the same depth".into()));
        }
        Ok(TreeSpec { depth, leaves })
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn leaves(&self) -> &BTreeMap<Word, TailSpec> {
        &self.leaves
    }
}

impl RegularCompact {
    /// Normalizes an arbitrary edge table with root 0.
    ///
    /// Dead states (those without an infinite continuation) are pruned;
    /// returns `None` when the root itself is dead, i.e. the set is empty.
    pub fn from_edges(states: Vec<Edges>) -> Option<Self> {
        let live = live_states(&states);
        if states.is_empty() || !live[0] {
            return None;
        }
        let pruned: Vec<Edges> = states
            .iter()
            .enumerate()
            .map(|(i, e)| {
                if live[i] {
                    e.iter().filter(|(_, &t)| live[t]).map(|(l, &t)| (l.clone(), t)).collect()
                } else {
                    Edges::new()
                }
            })
            .collect();
        Some(Self::canonicalize(&minimize(&pruned)))
    }

    pub fn from_tree(spec: &TreeSpec) -> Self {
        let mut states: Vec<Edges> = vec![Edges::new()];
        let mut node_of: HashMap<Word, usize> = HashMap::new();
        node_of.insert(Word::empty(), 0);
        for (leaf, tail) in &spec.leaves {
            let mut cur = 0usize;
            let mut path = Word::empty();
            for v in leaf {
                path.push(v.clone());
                let next = match node_of.get(&path) {
                    Some(&n) => n,
                    None => {
                        states.push(Edges::new());
                        let n = states.len() - 1;
                        node_of.insert(path.clone(), n);
                        n
                    }
                };
                states[cur].insert(v.clone(), next);
                cur = next;
            }
            // tail: a trie of block words whose leaves loop back to `cur`
            let start = cur;
            for w in &tail.words {
                let mut at = start;
                let (last, inner) = w.as_slice().split_last().expect("block_len >= 1");
                for v in inner {
                    at = match states[at].get(v) {
                        Some(&t) => t,
                        None => {
                            states.push(Edges::new());
                            let t = states.len() - 1;
                            states[at].insert(v.clone(), t);
                            t
                        }
                    };
                }
                states[at].insert(last.clone(), start);
            }
        }
        Self::from_edges(states).expect("tree specs are nonempty")
    }

    /// The singleton `{p}`.
    pub fn singleton(p: &RegularPoint) -> Self {
        let h = p.head_len();
        let total = h + p.period_len();
        let states = (0..total)
            .map(|i| {
                let next = if i + 1 < total { i + 1 } else { h };
                Edges::from([(p.eval(i).clone(), next)])
            })
            .collect();
        Self::from_edges(states).expect("singletons are nonempty")
    }

    /// `alphabet^ω`.
    pub fn full_shift(alphabet: &[i64]) -> Self {
        let edges: Edges = alphabet.iter().map(|&a| (Int::from(a), 0)).collect();
        Self::from_edges(vec![edges]).expect("nonempty alphabet")
    }

    /// `{-1, 0, 1}^ω`.
    pub fn unit_cube() -> Self {
        Self::full_shift(&[-1, 0, 1])
    }

    pub fn num_states(&self) -> usize {
        self.states.len()
    }

    pub fn edges(&self, state: usize) -> &Edges {
        &self.states[state]
    }

    pub fn step(&self, state: usize, label: &Int) -> Option<usize> {
        self.states[state].get(label).copied()
    }

    /// State reached by reading `w` from the root, if `w` is a node of the tree.
    pub fn state_after(&self, w: &[Int]) -> Option<usize> {
        self.state_after_from(0, w)
    }

    pub fn state_after_from(&self, mut state: usize, w: &[Int]) -> Option<usize> {
        for v in w {
            state = self.step(state, v)?;
        }
        Some(state)
    }

    pub fn contains_word(&self, w: &Word) -> bool {
        self.state_after(w.as_slice()).is_some()
    }

    /// Whether the eventually periodic point is a branch.
    pub fn member(&self, x: &RegularPoint) -> bool {
        let h = x.head_len();
        let p = x.period_len();
        let Some(mut state) = self.state_after(x.head()) else {
            return false;
        };
        // after the head, (state, phase) evolves deterministically; a repeat means a cycle
        let mut seen = vec![false; self.states.len() * p];
        let mut phase = 0usize;
        loop {
            let key = state * p + phase;
            if seen[key] {
                return true;
            }
            seen[key] = true;
            match self.step(state, x.eval(h + phase)) {
                Some(t) => state = t,
                None => return false,
            }
            phase = (phase + 1) % p;
        }
    }

    /// `{ x↾n : x ∈ K }`.
    pub fn prefix_set(&self, n: usize) -> BTreeSet<Word> {
        let mut out = BTreeSet::new();
        let mut path = Vec::with_capacity(n);
        self.collect_words(0, n, &mut path, &mut out);
        out
    }

    fn collect_words(&self, state: usize, left: usize, path: &mut Vec<Int>, out: &mut BTreeSet<Word>) {
        if left == 0 {
            out.insert(Word::new(path.clone()));
            return;
        }
        for (label, &t) in &self.states[state] {
            path.push(label.clone());
            self.collect_words(t, left - 1, path, out);
            path.pop();
        }
    }

    /// Number of words of length `n` in the tree.
    pub fn count_prefixes(&self, n: usize) -> BigUint {
        let mut counts = vec![BigUint::zero(); self.states.len()];
        counts[0] = BigUint::from(1u32);
        for _ in 0..n {
            let mut next = vec![BigUint::zero(); self.states.len()];
            for (q, c) in counts.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                for &t in self.states[q].values() {
                    next[t] += c;
                }
            }
            counts = next;
        }
        counts.into_iter().sum()
    }

    /// Whether the tree's level `n` is exactly `words` (all of length `n`).
    pub fn has_prefix_set(&self, n: usize, words: &BTreeSet<Word>) -> bool {
        words.iter().all(|w| w.len() == n && self.contains_word(w))
            && self.count_prefixes(n) == BigUint::from(words.len())
    }

    /// The lexicographically least branch extending `w` (integer order per coordinate).
    pub fn least_branch_from(&self, w: &Word) -> Option<RegularPoint> {
        let mut state = self.state_after(w.as_slice())?;
        let mut visited: HashMap<usize, usize> = HashMap::new();
        let mut labels: Vec<Int> = Vec::new();
        loop {
            if let Some(&at) = visited.get(&state) {
                let head = w.concat(&Word::new(labels[..at].to_vec()));
                let period = Word::new(labels[at..].to_vec());
                return Some(RegularPoint::new(head, period).expect("cycle is nonempty"));
            }
            visited.insert(state, labels.len());
            let (label, &t) = self.states[state].iter().next().expect("live state has an edge");
            labels.push(label.clone());
            state = t;
        }
    }

    pub fn least_branch(&self) -> RegularPoint {
        self.least_branch_from(&Word::empty()).expect("root is a node")
    }

    /// `K ∩ [w]`, or `None` if `w` is not a node.
    pub fn restrict_to_cylinder(&self, w: &Word) -> Option<RegularCompact> {
        let target = self.state_after(w.as_slice())?;
        let n = w.len();
        if n == 0 {
            return Some(self.clone());
        }
        // path nodes 0..n, then a copy of the original graph shifted by n
        let mut states: Vec<Edges> = w
            .iter()
            .enumerate()
            .map(|(i, v)| {
                let next = if i + 1 < n { i + 1 } else { n + target };
                Edges::from([(v.clone(), next)])
            })
            .collect();
        states.extend(self.states.iter().map(|e| e.iter().map(|(l, &t)| (l.clone(), t + n)).collect::<Edges>()));
        RegularCompact::from_edges(states)
    }

    fn canonicalize(states: &[Edges]) -> Self {
        let mut order: Vec<usize> = Vec::new();
        let mut index: HashMap<usize, usize> = HashMap::new();
        let mut queue = VecDeque::from([0usize]);
        index.insert(0, 0);
        while let Some(q) = queue.pop_front() {
            order.push(q);
            for &t in states[q].values() {
                if !index.contains_key(&t) {
                    index.insert(t, index.len());
                    queue.push_back(t);
                }
            }
        }
        let renumbered = order
            .iter()
            .map(|&q| states[q].iter().map(|(l, t)| (l.clone(), index[t])).collect())
            .collect();
        RegularCompact { states: renumbered, levels: OnceLock::new() }
    }
}

/// States with an infinite continuation (greatest fixpoint of "has a live successor").
fn live_states(states: &[Edges]) -> Vec<bool> {
    let mut live = vec![true; states.len()];
    let mut changed = true;
    while changed {
        changed = false;
        for (q, e) in states.iter().enumerate() {
            if live[q] && !e.values().any(|&t| live[t]) {
                live[q] = false;
                changed = true;
            }
        }
    }
    live
}

/// Moore partition refinement on the states reachable from 0.
fn minimize(states: &[Edges]) -> Vec<Edges> {
    let mut reach = vec![false; states.len()];
    let mut stack = vec![0usize];
    reach[0] = true;
    while let Some(q) = stack.pop() {
        for &t in states[q].values() {
            if !reach[t] {
                reach[t] = true;
                stack.push(t);
            }
        }
    }
    let reachable: Vec<usize> = (0..states.len()).filter(|&q| reach[q]).collect();
    let mut class: Vec<usize> = vec![0; states.len()];
    let mut num_classes = 1usize;
    loop {
        let mut sig_index: HashMap<Vec<(Int, usize)>, usize> = HashMap::new();
        let mut next = vec![0usize; states.len()];
        for &q in &reachable {
            let sig: Vec<(Int, usize)> = states[q].iter().map(|(l, &t)| (l.clone(), class[t])).collect();
            let n = sig_index.len();
            next[q] = *sig_index.entry(sig).or_insert(n);
        }
        let count = sig_index.len();
        class = next;
        if count == num_classes {
            break;
        }
        num_classes = count;
    }
    // rebuild with the root's class first so that index 0 stays the root
    let root_class = class[0];
    let remap = |c: usize| -> usize {
        if c == root_class {
            0
        } else if c < root_class {
            c + 1
        } else {
            c
        }
    };
    let mut out = vec![Edges::new(); num_classes];
    for &q in &reachable {
        let c = remap(class[q]);
        if out[c].is_empty() {
            out[c] = states[q].iter().map(|(l, &t)| (l.clone(), remap(class[t]))).collect();
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(v: &[i64]) -> Word {
        Word::from_i64s(v)
    }

    fn words(list: &[&[i64]]) -> BTreeSet<Word> {
        list.iter().map(|v| w(v)).collect()
    }

    fn cantor() -> RegularCompact {
        RegularCompact::full_shift(&[0, 1])
    }

    #[test]
    fn member_examples() {
        let c = cantor();
        assert!(c.member(&RegularPoint::zero()));
        assert!(!c.member(&RegularPoint::from_i64s(&[0, 2], &[0])));
        let single = RegularCompact::singleton(&RegularPoint::zero());
        assert!(single.member(&RegularPoint::zero()));
        assert!(!single.member(&RegularPoint::from_i64s(&[], &[1])));
    }

    #[test]
    fn prefix_set_examples() {
        let c = cantor();
        assert_eq!(c.prefix_set(0), words(&[&[]]));
        assert_eq!(c.prefix_set(2), words(&[&[0, 0], &[0, 1], &[1, 0], &[1, 1]]));
        // (0,0) followed by 1-segmented {0,1} tails
        let tail = TailSpec::new(2, [w(&[0, 0]), w(&[1, 1])]).unwrap();
        let k = RegularCompact::from_tree(&TreeSpec::new([(w(&[0, 0]), tail)]).unwrap());
        assert_eq!(k.prefix_set(4), words(&[&[0, 0, 0, 0], &[0, 0, 1, 1]]));
    }

    #[test]
    fn tree_with_shared_prefixes() {
        let t = TailSpec::new(2, [w(&[1, 2]), w(&[1, 3])]).unwrap();
        let u = TailSpec::full(&[0]);
        let spec = TreeSpec::new([(w(&[0, 1]), t), (w(&[0, 2]), u)]).unwrap();
        let k = RegularCompact::from_tree(&spec);
        assert_eq!(
            k.prefix_set(4),
            words(&[&[0, 1, 1, 2], &[0, 1, 1, 3], &[0, 2, 0, 0]])
        );
        assert_eq!(k.count_prefixes(6), BigUint::from(5u32));
    }

    #[test]
    fn minimization_identifies_equal_sets() {
        let a = RegularCompact::full_shift(&[0, 1]);
        let tail = TailSpec::new(2, [w(&[0, 0]), w(&[0, 1]), w(&[1, 0]), w(&[1, 1])]).unwrap();
        let b = RegularCompact::from_tree(&TreeSpec::new([(w(&[]), tail)]).unwrap());
        assert_eq!(a, b);
        assert_eq!(a.num_states(), 1);
    }

    #[test]
    fn dead_states_are_pruned() {
        // root -0-> 1 (dead end), root -1-> root
        let states = vec![Edges::from([(Int::from(0), 1), (Int::from(1), 0)]), Edges::new()];
        let k = RegularCompact::from_edges(states).unwrap();
        assert_eq!(k, RegularCompact::full_shift(&[1]));
        assert!(RegularCompact::from_edges(vec![Edges::new()]).is_none());
    }

    #[test]
    fn least_branch_and_cylinder() {
        let c = cantor();
        assert_eq!(c.least_branch(), RegularPoint::zero());
        assert_eq!(c.least_branch_from(&w(&[1])).unwrap(), RegularPoint::from_i64s(&[1], &[0]));
        let r = c.restrict_to_cylinder(&w(&[1, 0])).unwrap();
        assert_eq!(r.prefix_set(3), words(&[&[1, 0, 0], &[1, 0, 1]]));
        assert!(RegularCompact::singleton(&RegularPoint::zero())
            .restrict_to_cylinder(&w(&[1]))
            .is_none());
    }

    #[test]
    fn has_prefix_set_checks_exact_level() {
        let c = cantor();
        assert!(c.has_prefix_set(1, &words(&[&[0], &[1]])));
        assert!(!c.has_prefix_set(1, &words(&[&[0]])));
        assert!(!c.has_prefix_set(1, &words(&[&[0], &[2]])));
    }
}
