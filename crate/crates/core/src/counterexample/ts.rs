//! Deciding `T(K, x) ∈ T_s + C_{s⌢ℓ}`.
//!
//! Since `T_s` meets each fiber `K + t(K)` in `{y : y + C_s ⊆ K + t(K)}`
//! and all of `T_s + C_{s⌢ℓ}` that can reach `T(K, x)` lies in that fiber,
//! the question becomes whether some `c* ∈ C_{s⌢ℓ}` has
//! `x − c* + C_s ⊆ K`. We play `c*` letter by letter against every
//! `c ∈ C_s` at once and take a greatest fixpoint.

use std::collections::{BTreeSet, HashMap};

use crate::coding::{c_set_shared, Label};
use crate::error::Result;
use crate::hyperspace::FiberCertificate;
use crate::regsets::RegularCompact;
use crate::seq::{Int, RegularPoint, Word};

#[derive(Clone, PartialEq, Eq, Hash)]
struct Node {
    pos: usize,
    qa: usize,
    pairs: BTreeSet<(usize, usize)>,
}

/// Nodes reachable by a single letter `a` of `c*`, or `None` if some
/// `c ∈ C_s` leaves `K` on this letter.
fn advance(node: &Node, a: &Int, x_letter: &Int, cs: &RegularCompact, k: &RegularCompact) -> Option<BTreeSet<(usize, usize)>> {
    let mut out = BTreeSet::new();
    let shift = x_letter - a;
    for &(qc, qk) in &node.pairs {
        for (b, &tc) in cs.edges(qc) {
            let tk = k.step(qk, &(&shift + b))?;
            out.insert((tc, tk));
        }
    }
    Some(out)
}

/// A `c* ∈ C_{s⌢ℓ}` with `x − c* + C_s ⊆ K`, if one exists.
///
/// The returned point follows the least letter that keeps the play inside
/// the fixpoint, so it is eventually periodic.
pub fn in_ts_plus(cert: &FiberCertificate, s: &Label, ell: u64) -> Result<Option<RegularPoint>> {
    let k = cert.compact();
    let x = cert.point();
    let cs = c_set_shared(s)?;
    let ca = c_set_shared(&s.child(ell))?;
    let span = x.head_len() + x.period_len();
    let next_pos = |p: usize| if p + 1 < span { p + 1 } else { x.head_len() };

    let root = Node { pos: 0, qa: 0, pairs: BTreeSet::from([(0, 0)]) };
    let mut ids: HashMap<Node, usize> = HashMap::from([(root.clone(), 0)]);
    let mut nodes = vec![root];
    // moves[i] = (letter, target) for every legal letter, in letter order
    let mut moves: Vec<Vec<(Int, usize)>> = Vec::new();
    let mut i = 0;
    while i < nodes.len() {
        let node = nodes[i].clone();
        let xl = x.eval(node.pos);
        let mut out = Vec::new();
        for (a, &ta) in ca.edges(node.qa) {
            if let Some(pairs) = advance(&node, a, xl, &cs, k) {
                let succ = Node { pos: next_pos(node.pos), qa: ta, pairs };
                let id = *ids.entry(succ.clone()).or_insert_with(|| {
                    nodes.push(succ);
                    nodes.len() - 1
                });
                out.push((a.clone(), id));
            }
        }
        moves.push(out);
        i += 1;
    }

    let mut alive = vec![true; nodes.len()];
    let mut changed = true;
    while changed {
        changed = false;
        for j in 0..nodes.len() {
            if alive[j] && !moves[j].iter().any(|(_, t)| alive[*t]) {
                alive[j] = false;
                changed = true;
            }
        }
    }
    if !alive[0] {
        return Ok(None);
    }

    let mut seen: HashMap<usize, usize> = HashMap::new();
    let mut letters: Vec<Int> = Vec::new();
    let mut at = 0;
    while let std::collections::hash_map::Entry::Vacant(e) = seen.entry(at) {
        e.insert(letters.len());
        let (a, t) = moves[at].iter().find(|(_, t)| alive[*t]).expect("alive node has an alive move");
        letters.push(a.clone());
        at = *t;
    }
    let start = seen[&at];
    let c_star = RegularPoint::new(Word::new(letters[..start].to_vec()), Word::new(letters[start..].to_vec()))?;
    Ok(Some(c_star))
}

/// Independent check of a witness: `c* ∈ C_{s⌢ℓ}` and
/// `C_s + (x − c*) ⊆ K` as a set inclusion of regular compacts.
pub fn verify_ts_witness(cert: &FiberCertificate, s: &Label, ell: u64, c_star: &RegularPoint) -> Result<bool> {
    if !c_set_shared(&s.child(ell))?.member(c_star) {
        return Ok(false);
    }
    let moved = c_set_shared(s)?.translate(&cert.point().sub(c_star));
    Ok(moved.subset_of(cert.compact()))
}
