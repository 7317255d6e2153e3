//! Relative interiors of closed regular sets.

use std::collections::{BTreeMap, HashSet};

use super::{Edges, RegularCompact};
use crate::seq::Int;

/// `inc[a][b]` iff the subtree of `c` at `a` is contained in the subtree of `b` at `b`.
fn inclusion_table(c: &RegularCompact, b: &RegularCompact) -> Vec<Vec<bool>> {
    let mut inc = vec![vec![true; b.num_states()]; c.num_states()];
    let mut changed = true;
    while changed {
        changed = false;
        for qa in 0..c.num_states() {
            for qb in 0..b.num_states() {
                if !inc[qa][qb] {
                    continue;
                }
                let ok = c.edges(qa).iter().all(|(l, &ta)| match b.step(qb, l) {
                    Some(tb) => inc[ta][tb],
                    None => false,
                });
                if !ok {
                    inc[qa][qb] = false;
                    changed = true;
                }
            }
        }
    }
    inc
}

/// Reachable pairs `(c-state, Some(b-state) | None)`; `None` once the
/// branch has left `b`'s tree.
fn product_pairs(c: &RegularCompact, b: &RegularCompact) -> Vec<(usize, Option<usize>)> {
    let mut seen: HashSet<(usize, Option<usize>)> = HashSet::from([(0, Some(0))]);
    let mut stack = vec![(0usize, Some(0usize))];
    while let Some((qc, qb)) = stack.pop() {
        for (l, &tc) in c.edges(qc) {
            let tb = qb.and_then(|qb| b.step(qb, l));
            if seen.insert((tc, tb)) {
                stack.push((tc, tb));
            }
        }
    }
    let mut v: Vec<_> = seen.into_iter().collect();
    v.sort();
    v
}

/// True iff `B` has empty interior relative to `C`: no node `p` of `C`'s
/// tree satisfies `[p] ∩ C ⊆ B`. `None` stands for the empty set.
pub fn rel_int_empty(b: Option<&RegularCompact>, c: &RegularCompact) -> bool {
    let Some(b) = b else {
        return true;
    };
    let inc = inclusion_table(c, b);
    !product_pairs(c, b)
        .into_iter()
        .any(|(qc, qb)| qb.is_some_and(|qb| inc[qc][qb]))
}

/// True iff `B ∩ C` is nowhere dense in `C`: every node of `C` extends to a
/// node whose cylinder misses `B`.
pub fn is_nowhere_dense_in(b: Option<&RegularCompact>, c: &RegularCompact) -> bool {
    let Some(b) = b else {
        return true;
    };
    let pairs = product_pairs(c, b);
    let index: BTreeMap<(usize, Option<usize>), usize> =
        pairs.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    // backward reachability from the escaped pairs
    let mut good: Vec<bool> = pairs.iter().map(|(_, qb)| qb.is_none()).collect();
    let mut changed = true;
    while changed {
        changed = false;
        for (i, &(qc, qb)) in pairs.iter().enumerate() {
            if good[i] {
                continue;
            }
            let reaches = c.edges(qc).iter().any(|(l, &tc)| {
                let tb = qb.and_then(|qb| b.step(qb, l));
                good[index[&(tc, tb)]]
            });
            if reaches {
                good[i] = true;
                changed = true;
            }
        }
    }
    good.into_iter().all(|g| g)
}

/// `{x ∈ K : φ(x) ∈ B}` for a coordinatewise letter map `φ`.
pub fn pullback(k: &RegularCompact, phi: &BTreeMap<Int, Int>, b: &RegularCompact) -> Option<RegularCompact> {
    let image = |l: &Int| phi.get(l).cloned().unwrap_or_else(|| l.clone());
    let mut index: BTreeMap<(usize, usize), usize> = BTreeMap::from([((0, 0), 0)]);
    let mut keys = vec![(0usize, 0usize)];
    let mut states: Vec<Edges> = Vec::new();
    let mut i = 0;
    while i < keys.len() {
        let (qk, qb) = keys[i];
        let mut edges = Edges::new();
        for (l, &tk) in k.edges(qk) {
            if let Some(tb) = b.step(qb, &image(l)) {
                let next = *index.entry((tk, tb)).or_insert_with(|| {
                    keys.push((tk, tb));
                    keys.len() - 1
                });
                edges.insert(l.clone(), next);
            }
        }
        states.push(edges);
        i += 1;
    }
    RegularCompact::from_edges(states)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seq::{RegularPoint, Word};

    #[test]
    fn whole_space_has_interior() {
        let c = RegularCompact::full_shift(&[0, 1]);
        assert!(!rel_int_empty(Some(&c), &c));
        assert!(!is_nowhere_dense_in(Some(&c), &c));
    }

    #[test]
    fn disjoint_set_has_no_interior() {
        let c = RegularCompact::full_shift(&[0, 1]);
        let b = RegularCompact::full_shift(&[7]);
        assert!(rel_int_empty(b.intersect(&c).as_ref(), &c));
        assert!(rel_int_empty(Some(&b), &c));
        assert!(rel_int_empty(None, &c));
    }

    #[test]
    fn point_in_cantor_space_is_nowhere_dense() {
        let c = RegularCompact::full_shift(&[0, 1]);
        let b = RegularCompact::singleton(&RegularPoint::zero());
        assert!(rel_int_empty(Some(&b), &c));
        assert!(is_nowhere_dense_in(Some(&b), &c));
        // brute force: every depth-d cylinder of C_∅ has 2 extensions at depth d+1
        for d in 0..8 {
            for p in c.prefix_set(d) {
                let below = c.restrict_to_cylinder(&p).unwrap();
                assert_eq!(below.prefix_set(d + 1).len(), 2);
                assert!(!below.subset_of(&b));
            }
        }
    }

    #[test]
    fn cylinder_piece_has_interior() {
        let c = RegularCompact::full_shift(&[0, 1]);
        let b = c.restrict_to_cylinder(&Word::from_i64s(&[1, 1])).unwrap();
        assert!(!rel_int_empty(Some(&b), &c));
    }

    #[test]
    fn pullback_under_letter_map() {
        let k = RegularCompact::full_shift(&[-1, 0, 1]);
        let phi = BTreeMap::from([(Int::from(-1), Int::from(1))]);
        let b = RegularCompact::full_shift(&[0]);
        let pb = pullback(&k, &phi, &b).unwrap();
        assert_eq!(pb, RegularCompact::full_shift(&[0]));
        assert!(pullback(&k, &phi, &RegularCompact::full_shift(&[5])).is_none());
    }
}
