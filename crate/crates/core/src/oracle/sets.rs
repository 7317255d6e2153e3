//! Prefix sets computed straight from tree/tail presentations, without the
//! transition-graph machinery of `regsets`.

use std::collections::{BTreeSet, HashMap, HashSet};

use crate::regsets::TreeSpec;
use crate::seq::{Int, RegularPoint, Point, Word};

/// All words `x↾n` for branches `x` of the presented set.
pub fn spec_prefixes(spec: &TreeSpec, n: usize) -> BTreeSet<Word> {
    let mut out = BTreeSet::new();
    for (leaf, tail) in spec.leaves() {
        if n <= leaf.len() {
            out.insert(leaf.prefix(n));
            continue;
        }
        let need = n - leaf.len();
        let blocks = need.div_ceil(tail.block_len());
        let mut partial: Vec<Word> = vec![leaf.clone()];
        for _ in 0..blocks {
            partial = partial
                .iter()
                .flat_map(|p| tail.words().iter().map(move |w| p.concat(w)))
                .collect();
        }
        out.extend(partial.into_iter().map(|w| w.prefix(n)));
    }
    out
}

/// Whether `w` is a node of the presented tree.
pub fn spec_contains(spec: &TreeSpec, w: &Word) -> bool {
    spec.leaves().iter().any(|(leaf, tail)| {
        let d = leaf.len();
        if w.len() <= d {
            return w.is_prefix_of(leaf);
        }
        if !leaf.is_prefix_of(w) {
            return false;
        }
        w.as_slice()[d..]
            .chunks(tail.block_len())
            .all(|chunk| tail.words().iter().any(|t| t.as_slice().starts_with(chunk)))
    })
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
enum SpecState {
    Tree(Word),
    Tail { leaf: Word, partial: Word },
}

fn spec_next(spec: &TreeSpec, state: &SpecState) -> Vec<(Int, SpecState)> {
    let mut out = Vec::new();
    match state {
        SpecState::Tree(u) => {
            let letters: BTreeSet<Int> = spec
                .leaves()
                .keys()
                .filter(|leaf| u.is_prefix_of(leaf) && leaf.len() > u.len())
                .map(|leaf| leaf.as_slice()[u.len()].clone())
                .collect();
            if u.len() == spec.depth() {
                return spec_next(spec, &SpecState::Tail { leaf: u.clone(), partial: Word::empty() });
            }
            for v in letters {
                let next = u.extended(v.clone());
                if next.len() == spec.depth() {
                    out.push((v, SpecState::Tail { leaf: next, partial: Word::empty() }));
                } else {
                    out.push((v, SpecState::Tree(next)));
                }
            }
        }
        SpecState::Tail { leaf, partial } => {
            let tail = &spec.leaves()[leaf];
            let letters: BTreeSet<Int> = tail
                .words()
                .iter()
                .filter(|w| partial.is_prefix_of(w))
                .map(|w| w.as_slice()[partial.len()].clone())
                .collect();
            for v in letters {
                let next = partial.extended(v.clone());
                let next = if next.len() == tail.block_len() { Word::empty() } else { next };
                out.push((v, SpecState::Tail { leaf: leaf.clone(), partial: next }));
            }
        }
    }
    out
}

fn spec_root(spec: &TreeSpec) -> SpecState {
    if spec.depth() == 0 {
        SpecState::Tail { leaf: Word::empty(), partial: Word::empty() }
    } else {
        SpecState::Tree(Word::empty())
    }
}

/// `P(A ∩ B, n)` by exploring pairs of presentation states and keeping the
/// words that end in a pair with an infinite continuation.
pub fn intersection_prefixes(a: &TreeSpec, b: &TreeSpec, n: usize) -> BTreeSet<Word> {
    type Pair = (SpecState, SpecState);
    let root: Pair = (spec_root(a), spec_root(b));
    let mut succ: HashMap<Pair, Vec<(Int, Pair)>> = HashMap::new();
    let mut stack = vec![root.clone()];
    let mut seen: HashSet<Pair> = HashSet::from([root.clone()]);
    while let Some(p) = stack.pop() {
        let na = spec_next(a, &p.0);
        let nb = spec_next(b, &p.1);
        let mut edges = Vec::new();
        for (la, sa) in &na {
            for (lb, sb) in &nb {
                if la == lb {
                    let q = (sa.clone(), sb.clone());
                    if seen.insert(q.clone()) {
                        stack.push(q.clone());
                    }
                    edges.push((la.clone(), q));
                }
            }
        }
        succ.insert(p, edges);
    }
    let mut live: HashSet<Pair> = seen.clone();
    loop {
        let dead: Vec<Pair> = live
            .iter()
            .filter(|p| !succ[*p].iter().any(|(_, q)| live.contains(q)))
            .cloned()
            .collect();
        if dead.is_empty() {
            break;
        }
        for d in dead {
            live.remove(&d);
        }
    }
    if !live.contains(&root) {
        return BTreeSet::new();
    }
    let mut level: Vec<(Word, Pair)> = vec![(Word::empty(), root)];
    for _ in 0..n {
        level = level
            .into_iter()
            .flat_map(|(w, p)| {
                succ[&p]
                    .iter()
                    .filter(|(_, q)| live.contains(q))
                    .map(|(l, q)| (w.extended(l.clone()), q.clone()))
                    .collect::<Vec<_>>()
            })
            .collect();
    }
    level.into_iter().map(|(w, _)| w).collect()
}

/// An expression over presented sets whose prefix sets are computed by
/// enumeration.
#[derive(Clone, Debug)]
pub enum OracleSet {
    Spec(TreeSpec),
    Translate(Box<OracleSet>, RegularPoint),
    Sum(Box<OracleSet>, Box<OracleSet>),
    Union(Box<OracleSet>, Box<OracleSet>),
    Inter(TreeSpec, TreeSpec),
}

impl OracleSet {
    pub fn prefixes(&self, n: usize) -> BTreeSet<Word> {
        match self {
            OracleSet::Spec(s) => spec_prefixes(s, n),
            OracleSet::Translate(a, g) => {
                let shift = g.prefix(n);
                a.prefixes(n).into_iter().map(|w| w.add(&shift)).collect()
            }
            OracleSet::Sum(a, b) => {
                let pa = a.prefixes(n);
                let pb = b.prefixes(n);
                pa.iter().flat_map(|x| pb.iter().map(move |y| x.add(y))).collect()
            }
            OracleSet::Union(a, b) => {
                let mut s = a.prefixes(n);
                s.extend(b.prefixes(n));
                s
            }
            OracleSet::Inter(a, b) => intersection_prefixes(a, b, n),
        }
    }

    /// Upper bound on the work of `prefixes(n)`.
    pub fn cost(&self, n: usize) -> u128 {
        match self {
            OracleSet::Spec(s) => s
                .leaves()
                .values()
                .map(|t| {
                    let blocks = n.saturating_sub(s.depth()).div_ceil(t.block_len()) as u32;
                    (t.words().len() as u128).saturating_pow(blocks)
                })
                .sum(),
            OracleSet::Translate(a, _) => a.cost(n),
            OracleSet::Sum(a, b) => a.cost(n).saturating_mul(b.cost(n)),
            OracleSet::Union(a, b) => a.cost(n).saturating_add(b.cost(n)),
            OracleSet::Inter(a, b) => {
                OracleSet::Spec(a.clone()).cost(n).min(OracleSet::Spec(b.clone()).cost(n))
            }
        }
    }

    /// Largest depth `≤ max_depth` whose enumeration cost stays under `budget`.
    pub fn feasible_depth(&self, max_depth: usize, budget: u128) -> usize {
        (0..=max_depth).rev().find(|&n| self.cost(n) <= budget).unwrap_or(0)
    }
}

/// Shortest word in `A`'s tree that is not in `B`'s tree, found by
/// breadth-first search over pairs of presentation states. Every reachable
/// presentation state extends to a branch, so `None` means `A ⊆ B`.
pub fn spec_escape(a: &TreeSpec, b: &TreeSpec) -> Option<Word> {
    use std::collections::VecDeque;
    let root = (spec_root(a), Some(spec_root(b)));
    let mut seen = HashSet::from([root.clone()]);
    let mut queue = VecDeque::from([(root, Word::empty())]);
    while let Some(((sa, sb), w)) = queue.pop_front() {
        let Some(sb) = sb else {
            return Some(w);
        };
        let nb = spec_next(b, &sb);
        for (l, ta) in spec_next(a, &sa) {
            let tb = nb.iter().find(|(m, _)| *m == l).map(|(_, t)| t.clone());
            let key = (ta, tb);
            if seen.insert(key.clone()) {
                queue.push_back((key, w.extended(l)));
            }
        }
    }
    None
}

/// `{x_n : x ∈ A}` from the sequence of reachable presentation-state sets,
/// which is eventually periodic because there are finitely many states.
pub fn spec_letters(spec: &TreeSpec, n: &num_bigint::BigUint) -> BTreeSet<Int> {
    use num_traits::ToPrimitive;
    let step = |set: &BTreeSet<SpecState>| -> BTreeSet<SpecState> {
        set.iter().flat_map(|s| spec_next(spec, s).into_iter().map(|(_, t)| t)).collect()
    };
    let mut seq: Vec<BTreeSet<SpecState>> = vec![BTreeSet::from([spec_root(spec)])];
    let mut first: HashMap<BTreeSet<SpecState>, usize> = HashMap::from([(seq[0].clone(), 0)]);
    let slot = loop {
        let i = seq.len() - 1;
        if n.to_usize() == Some(i) {
            break i;
        }
        let next = step(&seq[i]);
        if let Some(&j) = first.get(&next) {
            // seq[j..] repeats with period i + 1 - j
            let period = num_bigint::BigUint::from(i + 1 - j);
            let offset = ((n - j) % period).to_usize().expect("below period");
            break j + offset;
        }
        first.insert(next.clone(), i + 1);
        seq.push(next);
    };
    seq[slot].iter().flat_map(|s| spec_next(spec, s).into_iter().map(|(l, _)| l)).collect()
}

/// Whether an eventually periodic point is a branch, by following
/// presentation states until a (state, phase) pair repeats.
pub fn spec_member(spec: &TreeSpec, x: &RegularPoint) -> bool {
    let mut state = spec_root(spec);
    let mut seen: HashSet<(SpecState, usize)> = HashSet::new();
    for n in 0.. {
        if n >= x.head_len() && !seen.insert((state.clone(), (n - x.head_len()) % x.period_len())) {
            return true;
        }
        let v = x.eval(n);
        match spec_next(spec, &state).into_iter().find(|(l, _)| l == v) {
            Some((_, t)) => state = t,
            None => return false,
        }
    }
    unreachable!("the loop returns once a pair repeats")
}
