use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

use super::{Edges, RegularCompact};
use crate::seq::{Int, RegularPoint};

/// Worklist-driven construction of a deterministic graph whose states are
/// keyed by `K`; `expand` lists the labelled successors of a key.
fn explore<K, F>(root: K, mut expand: F) -> Vec<Edges>
where
    K: Clone + Eq + std::hash::Hash,
    F: FnMut(&K) -> Vec<(Int, K)>,
{
    let mut index: HashMap<K, usize> = HashMap::new();
    let mut keys: Vec<K> = Vec::new();
    let mut states: Vec<Edges> = Vec::new();
    index.insert(root.clone(), 0);
    keys.push(root);
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        let key = keys[i].clone();
        let mut edges = Edges::new();
        for (label, succ) in expand(&key) {
            let j = match index.get(&succ) {
                Some(&j) => j,
                None => {
                    let j = keys.len();
                    index.insert(succ.clone(), j);
                    keys.push(succ);
                    queue.push_back(j);
                    j
                }
            };
            edges.insert(label, j);
        }
        if states.len() <= i {
            states.resize(i + 1, Edges::new());
        }
        states[i] = edges;
    }
    states.resize(keys.len(), Edges::new());
    states
}

impl RegularCompact {
    /// `K + g`.
    pub fn translate(&self, g: &RegularPoint) -> RegularCompact {
        let h = g.head_len();
        let total = h + g.period_len();
        let advance = |i: usize| if i + 1 < total { i + 1 } else { h };
        let states = explore((0usize, 0usize), |&(q, i)| {
            self.states[q]
                .iter()
                .map(|(l, &t)| (l + g.eval(i), (t, advance(i))))
                .collect()
        });
        RegularCompact::from_edges(states).expect("translation preserves nonemptiness")
    }

    /// `-K`.
    pub fn negate(&self) -> RegularCompact {
        let states = self.states.iter().map(|e| e.iter().map(|(l, &t)| (-l, t)).collect()).collect();
        RegularCompact::from_edges(states).expect("negation preserves nonemptiness")
    }

    /// Minkowski sum `K₁ + K₂` via a subset construction over state pairs.
    pub fn msum(&self, other: &RegularCompact) -> RegularCompact {
        let root: BTreeSet<(usize, usize)> = BTreeSet::from([(0, 0)]);
        let states = explore(root, |set| {
            let mut succ: BTreeMap<Int, BTreeSet<(usize, usize)>> = BTreeMap::new();
            for &(a, b) in set {
                for (la, &ta) in &self.states[a] {
                    for (lb, &tb) in &other.states[b] {
                        succ.entry(la + lb).or_default().insert((ta, tb));
                    }
                }
            }
            succ.into_iter().collect()
        });
        RegularCompact::from_edges(states).expect("sums of nonempty sets are nonempty")
    }

    /// `K₁ ∩ K₂`, or `None` when empty.
    pub fn intersect(&self, other: &RegularCompact) -> Option<RegularCompact> {
        let states = explore((0usize, 0usize), |&(a, b)| {
            self.states[a]
                .iter()
                .filter_map(|(l, &ta)| other.states[b].get(l).map(|&tb| (l.clone(), (ta, tb))))
                .collect()
        });
        RegularCompact::from_edges(states)
    }

    pub fn intersection_is_empty(&self, other: &RegularCompact) -> bool {
        self.intersect(other).is_none()
    }

    /// `K₁ ∪ K₂`.
    pub fn union(&self, other: &RegularCompact) -> RegularCompact {
        let states = explore((Some(0usize), Some(0usize)), |&(a, b)| {
            let mut succ: BTreeMap<Int, (Option<usize>, Option<usize>)> = BTreeMap::new();
            if let Some(a) = a {
                for (l, &t) in &self.states[a] {
                    succ.entry(l.clone()).or_insert((None, None)).0 = Some(t);
                }
            }
            if let Some(b) = b {
                for (l, &t) in &other.states[b] {
                    succ.entry(l.clone()).or_insert((None, None)).1 = Some(t);
                }
            }
            succ.into_iter().collect()
        });
        RegularCompact::from_edges(states).expect("unions of nonempty sets are nonempty")
    }

    /// Image under a coordinatewise letter map `φ`; letters missing from the
    /// map are sent to themselves.
    pub fn map_letters(&self, phi: &BTreeMap<Int, Int>) -> RegularCompact {
        let image = |l: &Int| phi.get(l).cloned().unwrap_or_else(|| l.clone());
        let root: BTreeSet<usize> = BTreeSet::from([0]);
        let states = explore(root, |set| {
            let mut succ: BTreeMap<Int, BTreeSet<usize>> = BTreeMap::new();
            for &q in set {
                for (l, &t) in &self.states[q] {
                    succ.entry(image(l)).or_default().insert(t);
                }
            }
            succ.into_iter().collect()
        });
        RegularCompact::from_edges(states).expect("images of nonempty sets are nonempty")
    }

    /// `K₁ ⊆ K₂`: no reachable state pair lets `K₁` take an edge `K₂` lacks.
    pub fn subset_of(&self, other: &RegularCompact) -> bool {
        self.escape_word(other).is_none()
    }

    /// A shortest node of `K₁`'s tree that is not a node of `K₂`'s tree.
    pub fn escape_word(&self, other: &RegularCompact) -> Option<crate::seq::Word> {
        let mut parent: HashMap<(usize, usize), Option<((usize, usize), Int)>> = HashMap::new();
        parent.insert((0, 0), None);
        let mut queue = VecDeque::from([(0usize, 0usize)]);
        let path_to = |parent: &HashMap<(usize, usize), Option<((usize, usize), Int)>>, mut at: (usize, usize)| {
            let mut labels = Vec::new();
            while let Some(Some((p, l))) = parent.get(&at) {
                labels.push(l.clone());
                at = *p;
            }
            labels.reverse();
            labels
        };
        while let Some((a, b)) = queue.pop_front() {
            for (l, &ta) in &self.states[a] {
                match other.states[b].get(l) {
                    None => {
                        let mut labels = path_to(&parent, (a, b));
                        labels.push(l.clone());
                        return Some(crate::seq::Word::new(labels));
                    }
                    Some(&tb) => {
                        if !parent.contains_key(&(ta, tb)) {
                            parent.insert((ta, tb), Some(((a, b), l.clone())));
                            queue.push_back((ta, tb));
                        }
                    }
                }
            }
        }
        None
    }

    /// Semantic equality by bisimulation over reachable state pairs.
    pub fn equals_semantic(&self, other: &RegularCompact) -> bool {
        let mut seen: BTreeSet<(usize, usize)> = BTreeSet::from([(0, 0)]);
        let mut stack = vec![(0usize, 0usize)];
        while let Some((a, b)) = stack.pop() {
            let ea = &self.states[a];
            let eb = &other.states[b];
            if ea.len() != eb.len() || !ea.keys().eq(eb.keys()) {
                return false;
            }
            for ((_, &ta), (_, &tb)) in ea.iter().zip(eb) {
                if seen.insert((ta, tb)) {
                    stack.push((ta, tb));
                }
            }
        }
        true
    }

    /// Upper bound on the reachable state pairs of the product with `other`.
    pub fn product_size(&self, other: &RegularCompact) -> usize {
        self.num_states() * other.num_states()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::regsets::{TailSpec, TreeSpec};
    use crate::seq::Word;

    fn w(v: &[i64]) -> Word {
        Word::from_i64s(v)
    }

    #[test]
    fn translate_by_zero_is_identity() {
        let k = RegularCompact::full_shift(&[0, 1]).union(&RegularCompact::singleton(&RegularPoint::from_i64s(&[3], &[-1])));
        assert!(k.translate(&RegularPoint::zero()).equals_semantic(&k));
        let g = RegularPoint::from_i64s(&[2, -5], &[1, 0, 4]);
        assert!(k.translate(&g).translate(&g.neg()).equals_semantic(&k));
    }

    #[test]
    fn msum_of_cubes() {
        let s = RegularCompact::full_shift(&[0, 1]).msum(&RegularCompact::unit_cube());
        assert_eq!(s, RegularCompact::full_shift(&[-1, 0, 1, 2]));
    }

    #[test]
    fn intersect_misaligned_phases() {
        // (00|11)^ω and 0⌢(00|11)^ω meet only in 0^ω
        let t = TailSpec::new(2, [w(&[0, 0]), w(&[1, 1])]).unwrap();
        let a = RegularCompact::from_tree(&TreeSpec::new([(w(&[]), t.clone())]).unwrap());
        let b = RegularCompact::from_tree(&TreeSpec::new([(w(&[0]), t)]).unwrap());
        let i = a.intersect(&b).unwrap();
        assert_eq!(i, RegularCompact::singleton(&RegularPoint::zero()));
        let c = RegularCompact::full_shift(&[5]);
        assert!(a.intersect(&c).is_none());
        assert!(a.intersection_is_empty(&c));
    }

    #[test]
    fn subset_and_escape() {
        let a = RegularCompact::full_shift(&[0, 1]);
        let b = RegularCompact::full_shift(&[0]);
        assert!(a.subset_of(&a));
        assert!(b.subset_of(&a));
        assert!(!a.subset_of(&b));
        assert_eq!(a.escape_word(&b), Some(w(&[1])));
    }

    #[test]
    fn letter_map_image() {
        let a = RegularCompact::full_shift(&[-1, 0, 1]);
        let phi = BTreeMap::from([(Int::from(-1), Int::from(1))]);
        assert_eq!(a.map_letters(&phi), RegularCompact::full_shift(&[0, 1]));
    }
}
