use std::collections::{BTreeSet, HashMap};

use num_bigint::BigUint;
use num_traits::{Signed, ToPrimitive};

use super::RegularCompact;
use crate::seq::Int;

/// The sequence of state sets reachable at each depth, stored up to its
/// first repetition: level `n ≥ onset` equals level `onset + (n - onset) mod period`.
#[derive(Clone, Debug)]
pub struct Levels {
    sets: Vec<BTreeSet<usize>>,
    onset: usize,
    period: usize,
    // per stored level: (min label, max label, max |label|)
    extrema: Vec<(Int, Int, Int)>,
}

impl Levels {
    fn compute(k: &RegularCompact) -> Levels {
        let mut sets: Vec<BTreeSet<usize>> = Vec::new();
        let mut index: HashMap<BTreeSet<usize>, usize> = HashMap::new();
        let mut cur: BTreeSet<usize> = BTreeSet::from([0]);
        let (onset, period) = loop {
            if let Some(&i) = index.get(&cur) {
                break (i, sets.len() - i);
            }
            index.insert(cur.clone(), sets.len());
            let next = cur.iter().flat_map(|&q| k.edges(q).values().copied()).collect();
            sets.push(std::mem::replace(&mut cur, next));
        };
        let extrema = sets
            .iter()
            .map(|set| {
                let labels = || set.iter().flat_map(|&q| k.edges(q).keys());
                let lo = labels().min().expect("live states have edges").clone();
                let hi = labels().max().expect("live states have edges").clone();
                let mag = labels().map(|l| l.abs()).max().expect("nonempty");
                (lo, hi, mag)
            })
            .collect();
        Levels { sets, onset, period, extrema }
    }

    pub fn onset(&self) -> usize {
        self.onset
    }

    pub fn period(&self) -> usize {
        self.period
    }

    fn slot(&self, n: usize) -> usize {
        if n < self.onset {
            n
        } else {
            self.onset + (n - self.onset) % self.period
        }
    }

    fn slot_big(&self, n: &BigUint) -> usize {
        match n.to_usize() {
            Some(small) => self.slot(small),
            None => {
                let r = (n - BigUint::from(self.onset)) % BigUint::from(self.period);
                self.onset + r.to_usize().expect("residue fits")
            }
        }
    }

    pub fn states_at(&self, n: usize) -> &BTreeSet<usize> {
        &self.sets[self.slot(n)]
    }
}

impl RegularCompact {
    pub fn levels(&self) -> &Levels {
        self.levels.get_or_init(|| Levels::compute(self))
    }

    /// `max{|x_n| : x ∈ K} + 1`.
    pub fn bound_seq(&self, n: usize) -> Int {
        let lv = self.levels();
        &lv.extrema[lv.slot(n)].2 + 1
    }

    pub fn bound_seq_big(&self, n: &BigUint) -> Int {
        let lv = self.levels();
        &lv.extrema[lv.slot_big(n)].2 + 1
    }

    /// `(min, max)` of `{x_n : x ∈ K}`.
    pub fn coordinate_range(&self, n: &BigUint) -> (Int, Int) {
        let lv = self.levels();
        let (lo, hi, _) = &lv.extrema[lv.slot_big(n)];
        (lo.clone(), hi.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::regsets::{TailSpec, TreeSpec};
    use crate::seq::{RegularPoint, Word};

    #[test]
    fn bound_examples() {
        let zero = RegularCompact::singleton(&RegularPoint::zero());
        let cantor = RegularCompact::full_shift(&[0, 1]);
        for n in 0..20 {
            assert_eq!(zero.bound_seq(n), Int::from(1));
            assert_eq!(cantor.bound_seq(n), Int::from(2));
        }
        let k = RegularCompact::from_tree(
            &TreeSpec::new([
                (Word::from_i64s(&[-2]), TailSpec::full(&[0])),
                (Word::from_i64s(&[5]), TailSpec::full(&[0])),
            ])
            .unwrap(),
        );
        assert_eq!(k.bound_seq(0), Int::from(6));
        for n in 1..10 {
            assert_eq!(k.bound_seq(n), Int::from(1));
        }
        assert_eq!(k.coordinate_range(&BigUint::from(0u32)), (Int::from(-2), Int::from(5)));
    }

    #[test]
    fn big_indices_follow_the_period() {
        let p = RegularPoint::from_i64s(&[7], &[1, -3, 2]);
        let k = RegularCompact::singleton(&p);
        let lv = k.levels();
        assert!(lv.onset() <= k.num_states());
        for n in 0..30usize {
            assert_eq!(k.bound_seq_big(&BigUint::from(n)), k.bound_seq(n));
            assert_eq!(k.bound_seq(n), p.eval(n).abs() + 1);
        }
        let huge = BigUint::from(3u32).pow(50);
        assert_eq!(k.bound_seq_big(&huge), p.eval_big(&huge).abs() + 1);
    }
}
