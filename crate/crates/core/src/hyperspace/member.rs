//! Budgeted membership in `F = ⋃_K (K + t(K))`.
//!
//! Refutations use only facts true of every fiber: all coordinates have
//! absolute value at least 2; `c(K)_0 = +1` because index 0 is `(0, {()})`;
//! at most one positive index decodes to each depth; and the sets read off
//! positive indices are truncations of one another. Acceptance needs a
//! candidate `K` (a hint, or one learned from those sets) whose signs match
//! and whose offset `z - t(K)` fits a regular branch of `K` on the budget.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_bigint::BigUint;
use num_traits::Signed;

use super::{embed_bit, basis, t_coord, Bit, FiberCertificate};
use crate::regsets::{Edges, RegularCompact};
use crate::seq::{Int, Point, RegularPoint, Word};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OutReason {
    /// `|z_n| ≤ 1`.
    Small(usize),
    /// `z_0 < 0` although every fiber has `c_0 = +1`.
    FirstNegative,
    /// Two positive indices decode to the same depth with different sets.
    DepthClash(usize, usize),
    /// The sets at two positive indices are not truncations of each other.
    LevelClash(usize, usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FVerdict {
    In(FiberCertificate),
    Out(OutReason),
    Unknown { budget: usize },
}

/// Decides `z ∈ F` on the first `budget` coordinates. `In` certificates are
/// checked against `z` on every coordinate below the budget.
pub fn f_member<P: Point + ?Sized>(z: &P, budget: usize, hint: Option<&RegularCompact>) -> FVerdict {
    let zs: Vec<Int> = (0..budget).map(|n| z.coord(n)).collect();
    let levels = match scan(&zs) {
        Ok(levels) => levels,
        Err(reason) => return FVerdict::Out(reason),
    };
    let mut candidates: Vec<RegularCompact> = hint.into_iter().cloned().collect();
    candidates.extend(learn(&levels));
    for k in candidates {
        if let Some(cert) = accept(&zs, &k) {
            return FVerdict::In(cert);
        }
    }
    FVerdict::Unknown { budget }
}

type Levels = BTreeMap<usize, (usize, BTreeSet<Word>)>;

/// A reason no point of `F` starts with `zs`, if the window shows one.
pub fn refute_window(zs: &[Int]) -> Option<OutReason> {
    scan(zs).err()
}

fn scan(zs: &[Int]) -> Result<Levels, OutReason> {
    if let Some(n) = zs.iter().position(|v| v.abs() <= Int::from(1)) {
        return Err(OutReason::Small(n));
    }
    if zs.first().is_some_and(|v| v.is_negative()) {
        return Err(OutReason::FirstNegative);
    }
    let mut levels = Levels::new();
    for (k, v) in zs.iter().enumerate().skip(1) {
        if !v.is_positive() {
            continue;
        }
        let Ok((n, p)) = basis::decode(&BigUint::from(k)) else {
            continue;
        };
        match levels.get(&n) {
            Some((k0, q)) if *q != p => return Err(OutReason::DepthClash(*k0, k)),
            Some(_) => {}
            None => {
                levels.insert(n, (k, p));
            }
        }
    }
    for (n, (kn, pn)) in &levels {
        for (km, pm) in levels.range(n + 1..).map(|(_, v)| v) {
            let cut: BTreeSet<Word> = pm.iter().map(|w| w.prefix(*n)).collect();
            if cut != *pn {
                return Err(OutReason::LevelClash(*kn.min(km), *kn.max(km)));
            }
        }
    }
    Ok(levels)
}

fn accept(zs: &[Int], k: &RegularCompact) -> Option<FiberCertificate> {
    let mut xs = Vec::with_capacity(zs.len());
    for (n, z) in zs.iter().enumerate() {
        let bit = embed_bit(k, &BigUint::from(n)).ok()?;
        if (bit == Bit::Plus) != z.is_positive() {
            return None;
        }
        xs.push(z - t_coord(k, n).ok()?);
    }
    let x = fit_regular(&xs)?;
    FiberCertificate::new(k.clone(), x).ok()
}

/// Shortest `head;period` (by `head + period`) that reproduces `xs` and
/// shows its period at least twice.
fn fit_regular(xs: &[Int]) -> Option<RegularPoint> {
    let len = xs.len();
    for total in 1..=len {
        for p in 1..=total {
            let h = total - p;
            if h + 2 * p > len {
                continue;
            }
            if (h..len - p).all(|i| xs[i] == xs[i + p]) {
                let head = Word::new(xs[..h].to_vec());
                let period = Word::new(xs[h..h + p].to_vec());
                return RegularPoint::new(head, period).ok();
            }
        }
    }
    None
}

/// Candidate compacts from the deepest known level: nodes are merged when
/// their sets of continuations of length `j` agree, for each `j`.
fn learn(levels: &Levels) -> Vec<RegularCompact> {
    let Some((&top, (_, words))) = levels.iter().next_back() else {
        return Vec::new();
    };
    let mut out = Vec::new();
    for j in 1..=top {
        let Some(k) = k_tails(words, top, j) else {
            continue;
        };
        let fits = levels.iter().all(|(&n, (_, p))| k.has_prefix_set(n, p));
        if fits && !out.contains(&k) {
            out.push(k);
        }
    }
    out
}

fn k_tails(words: &BTreeSet<Word>, depth: usize, j: usize) -> Option<RegularCompact> {
    let reach = depth - j;
    let future = |u: &[Int]| -> BTreeSet<Vec<Int>> {
        words
            .iter()
            .filter(|w| w.as_slice().starts_with(u))
            .map(|w| w.as_slice()[u.len()..u.len() + j].to_vec())
            .collect()
    };
    let mut ids: HashMap<BTreeSet<Vec<Int>>, usize> = HashMap::new();
    let mut states: Vec<Edges> = Vec::new();
    let mut level: BTreeSet<Vec<Int>> = BTreeSet::from([Vec::new()]);
    let mut id_of = |f: BTreeSet<Vec<Int>>, states: &mut Vec<Edges>| {
        let next = ids.len();
        let id = *ids.entry(f).or_insert(next);
        if id == states.len() {
            states.push(Edges::new());
        }
        id
    };
    let mut node_ids: HashMap<Vec<Int>, usize> = HashMap::new();
    let root = id_of(future(&[]), &mut states);
    node_ids.insert(Vec::new(), root);
    for _ in 0..reach {
        let mut next_level = BTreeSet::new();
        for u in &level {
            let from = node_ids[u];
            let letters: BTreeSet<Int> = words
                .iter()
                .filter(|w| w.as_slice().starts_with(u))
                .map(|w| w.as_slice()[u.len()].clone())
                .collect();
            for a in letters {
                let mut v = u.clone();
                v.push(a.clone());
                let to = id_of(future(&v), &mut states);
                if let Some(&old) = states[from].get(&a) {
                    if old != to {
                        return None;
                    }
                }
                states[from].insert(a, to);
                node_ids.insert(v.clone(), to);
                next_level.insert(v);
            }
        }
        level = next_level;
    }
    RegularCompact::from_edges(states)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hyperspace::big_t;

    #[test]
    fn recovers_small_fibers() {
        let pair: RegularCompact = "{0>1,1>1;0>1}".parse().unwrap();
        for (k, x, hint) in [
            (RegularCompact::singleton(&RegularPoint::zero()), RegularPoint::zero(), None),
            (pair.clone(), RegularPoint::from_i64s(&[1], &[0]), Some(&pair)),
        ] {
            let cert = FiberCertificate::new(k.clone(), x.clone()).unwrap();
            match f_member(&big_t(&cert), 200, hint) {
                FVerdict::In(found) => {
                    assert_eq!(found.compact(), &k);
                    assert_eq!(found.point(), &x);
                }
                other => panic!("{other:?}"),
            }
        }
    }

    #[test]
    fn refutes() {
        assert_eq!(f_member(&RegularPoint::zero(), 10, None), FVerdict::Out(OutReason::Small(0)));
        assert_eq!(f_member(&RegularPoint::constant(Int::from(-4)), 10, None), FVerdict::Out(OutReason::FirstNegative));
        // positive at indices 1 = (1,{(0)}) and 3 = (1,{(-1),(0)})
        let z = RegularPoint::from_i64s(&[3, 3, -3, 3], &[-3]);
        assert_eq!(f_member(&z, 10, None), FVerdict::Out(OutReason::DepthClash(1, 3)));
    }

    #[test]
    fn perturbations_are_never_accepted() {
        let k = RegularCompact::singleton(&RegularPoint::zero());
        let cert = FiberCertificate::new(k.clone(), RegularPoint::zero()).unwrap();
        let z = big_t(&cert);
        for bump in 0..20usize {
            let zc = z.clone();
            let w = crate::seq::LazyPoint::new(move |n| zc.coord(n) + Int::from(u8::from(n == bump)));
            match f_member(&w, 64, Some(&k)) {
                FVerdict::In(c) => panic!("accepted {c} after bumping {bump}"),
                FVerdict::Out(_) | FVerdict::Unknown { .. } => {}
            }
        }
    }
}
