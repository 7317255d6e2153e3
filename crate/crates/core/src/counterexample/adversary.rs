//! The adversary branch that keeps `K + t(K)` out of `T_s + C_{s⌢ℓ}`.
//!
//! Inside a fiber, `t(K)_j` is one number for all points, so choosing the
//! least or greatest value of `y_j` over `y ∈ K + t(K)` is the same as
//! choosing the least or greatest edge label of `K`. The adversary walks
//! `K` from a node `w₀`, taking the least label at coordinates
//! `j ≡ 0 (mod 2^{|s|+1})`, the greatest at `j ≡ 2^{|s|}`, and the least
//! elsewhere. Its choice depends only on the state and the residue, so the
//! branch is eventually periodic.

use std::collections::HashMap;
use std::fmt;

use crate::coding::{b_word, Label};
use crate::error::{Error, Result};
use crate::hyperspace::{big_t, FiberCertificate};
use crate::regsets::RegularCompact;
use crate::seq::{Int, LazyPoint, RegularPoint, Word};

/// Which extreme the adversary takes at a coordinate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rule {
    Min,
    Max,
}

fn rule_at(j: usize, s_len: usize) -> Rule {
    let cycle = 1usize << (s_len + 1);
    if j % cycle == cycle / 2 {
        Rule::Max
    } else {
        Rule::Min
    }
}

fn pick(k: &RegularCompact, state: usize, rule: Rule) -> (Int, usize) {
    let edges = k.edges(state);
    let (l, &t) = match rule {
        Rule::Min => edges.iter().next(),
        Rule::Max => edges.iter().next_back(),
    }
    .expect("live state has an edge");
    (l.clone(), t)
}

/// The adversary's branch `w ∈ K ∩ [w₀]` and the point `x = w + t(K)`.
#[derive(Clone, Debug)]
pub struct Adversary {
    pub cert: FiberCertificate,
    pub s: Label,
    pub start: Word,
}

impl Adversary {
    /// `x` as a coordinate oracle whose witness describes `w = x − t(K)`.
    pub fn point(&self) -> LazyPoint {
        big_t(&self.cert)
    }

    pub fn branch(&self) -> &RegularPoint {
        self.cert.point()
    }
}

/// Runs the adversary in `K ∩ [w₀]`.
pub fn adversary_point(k: &RegularCompact, s: &Label, w0: &Word) -> Result<Adversary> {
    let mut state = k
        .state_after(w0.as_slice())
        .ok_or_else(|| Error::Precondition(format!("{w0} is not a node of K")))?;
    let cycle = 1usize << (s.len() + 1);
    let mut seen: HashMap<(usize, usize), usize> = HashMap::new();
    let mut letters: Vec<Int> = Vec::new();
    loop {
        let j = w0.len() + letters.len();
        if let Some(&at) = seen.get(&(state, j % cycle)) {
            let head = w0.concat(&Word::new(letters[..at].to_vec()));
            let w = RegularPoint::new(head, Word::new(letters[at..].to_vec()))?;
            let cert = FiberCertificate::new(k.clone(), w)?;
            return Ok(Adversary { cert, s: s.clone(), start: w0.clone() });
        }
        seen.insert((state, j % cycle), letters.len());
        let (l, t) = pick(k, state, rule_at(j, s.len()));
        letters.push(l);
        state = t;
    }
}

/// The coordinates `j < j′` where the adversary's extremes contradict
/// membership: any `c*` would need `c*_j ≤ 0` and `c*_{j′} ≥ 1`, but they
/// lie in one constant block of the segmented `c*`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExclusionCertificate {
    pub j: usize,
    pub j_prime: usize,
    pub min_at_j: Int,
    pub max_at_j_prime: Int,
}

impl fmt::Display for ExclusionCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{j: {}, jPrime: {}, min: {}, max: {}}}", self.j, self.j_prime, self.min_at_j, self.max_at_j_prime)
    }
}

fn first_j(adv: &Adversary, ell: u64) -> Result<(usize, usize)> {
    let cycle = 1usize << (adv.s.len() + 1);
    let floor = adv.start.len().max(b_word(&adv.s.child(ell))?.len());
    let j = (floor / cycle + 1) * cycle;
    Ok((j, j + cycle / 2))
}

/// The least admissible `j` and the extremes the adversary took there.
pub fn adversary_certificate(adv: &Adversary, ell: u64) -> Result<ExclusionCertificate> {
    let (j, j_prime) = first_j(adv, ell)?;
    let w = adv.branch();
    Ok(ExclusionCertificate { j, j_prime, min_at_j: w.eval(j).clone(), max_at_j_prime: w.eval(j_prime).clone() })
}

/// Re-derives `j`, `j′` and checks that the branch really took the least
/// label of `K` at `j` and the greatest at `j′`.
pub fn verify_exclusion(adv: &Adversary, ell: u64, cert: &ExclusionCertificate) -> Result<bool> {
    if first_j(adv, ell)? != (cert.j, cert.j_prime) {
        return Ok(false);
    }
    let k = adv.cert.compact();
    let w = adv.branch();
    let prefix = |n: usize| Word::new((0..n).map(|i| w.eval(i).clone()).collect());
    let extreme = |n: usize, rule: Rule| -> Option<Int> {
        let state = k.state_after(prefix(n).as_slice())?;
        Some(pick(k, state, rule).0)
    };
    let ok = extreme(cert.j, Rule::Min).as_ref() == Some(&cert.min_at_j)
        && extreme(cert.j_prime, Rule::Max).as_ref() == Some(&cert.max_at_j_prime)
        && w.eval(cert.j) == &cert.min_at_j
        && w.eval(cert.j_prime) == &cert.max_at_j_prime
        && adv.start.is_prefix_of(&prefix(adv.start.len()));
    Ok(ok)
}
