//! Shrinking `C_s` away from a translate `R + g`.
//!
//! Two cases. If `C_s − g ⊆ F` then `−g ∈ T_s`, and `C_{s⌢ℓ} − g` lies in
//! `T_s + C_{s⌢ℓ}`, which `R` avoids; any `ℓ` works and we use `0`.
//! Otherwise some piece `C_s ∩ [u↾n]` has `(C_s ∩ [u↾n]) − g` disjoint from
//! `F` altogether, and `C_{s⌢ℓ}` is refined into that piece.
//!
//! Disjointness from `F` is shown in one of two finite ways: the values of
//! `(u − g)↾n` break a rule every point of `F` obeys, or (for a fiber
//! offset) the piece lands in `K + t(K) + {−1,0,1}^ω` but misses
//! `K + t(K)`, and `F` meets that thickened fiber only in `K + t(K)`.

use std::fmt;

use crate::coding::{c_set_shared, refine_into, Label};
use crate::error::Result;
use crate::hyperspace::{refute_window, t_coord, OutReason};
use crate::regsets::RegularCompact;
use crate::seq::{Point, RegularPoint, Word};
use crate::witness::{Avoidance, Avoider, Certified};

/// A translation vector `g`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Translation {
    Regular(RegularPoint),
    /// `g = −t(K) − r`.
    FiberOffset { k: RegularCompact, r: RegularPoint },
}

impl Translation {
    /// `g↾n`.
    pub fn prefix(&self, n: usize) -> Result<Word> {
        (0..n)
            .map(|i| match self {
                Translation::Regular(g) => Ok(g.eval(i).clone()),
                Translation::FiberOffset { k, r } => Ok(-t_coord(k, i)? - r.eval(i)),
            })
            .collect()
    }
}

impl fmt::Display for Translation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Translation::Regular(g) => write!(f, "{g}"),
            Translation::FiberOffset { k, r } => write!(f, "-t({k}) - {r}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RhmEvidence {
    /// `C_s + r ⊆ K`, so `C_s − g ⊆ K + t(K) ⊆ F`.
    Case1,
    /// `(C_s ∩ [prefix]) + r ⊆ K + {−1,0,1}^ω` and `prefix + r↾n` is not a
    /// node of `K`.
    Case2Fiber { prefix: Word },
    /// `prefix − g↾n` is refuted by `reason`.
    Case2Window { prefix: Word, reason: OutReason },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RhmCertificate {
    pub g: Translation,
    pub s: Label,
    pub ell: u64,
    pub s_prime: Label,
    pub evidence: RhmEvidence,
}

/// Branch prefixes tried for a window refutation: the least branch through
/// each node of `C_s` a few levels past `b_s`.
const WINDOW_FANOUT_DEPTH: usize = 3;

/// Finds `s′ = s⌢ℓ` with `(R + g) ∩ C_{s′} = ∅`, spending at most `budget`
/// window coordinates on refutation searches.
pub fn rhm_cofinal(g: &Translation, s: &Label, budget: u64) -> Result<Certified<RhmCertificate>> {
    if budget == 0 {
        return Ok(Certified::Unknown { spent: 0 });
    }
    let cs = c_set_shared(s)?;
    let done = |ell: u64, evidence: RhmEvidence| {
        Ok(Certified::Yes(RhmCertificate { g: g.clone(), s: s.clone(), ell, s_prime: s.child(ell), evidence }))
    };
    if let Translation::FiberOffset { k, r } = g {
        let moved = cs.translate(r);
        match moved.escape_word(k) {
            None => return done(0, RhmEvidence::Case1),
            Some(w) => {
                let prefix = w.sub(&r.prefix(w.len()));
                if fiber_piece_ok(&cs, k, r, &prefix) {
                    let ell = first_refinement(s, &prefix)?;
                    return done(ell, RhmEvidence::Case2Fiber { prefix });
                }
            }
        }
    }
    let depth = cs.least_branch().head_len() + WINDOW_FANOUT_DEPTH;
    let starts = cs.prefix_set(depth);
    let per = (budget / starts.len().max(1) as u64).max(1) as usize;
    let mut spent = 0u64;
    for w in starts {
        let u = cs.least_branch_from(&w).expect("node of C_s");
        let gw = g.prefix(per)?;
        let y = u.prefix(per).sub(&gw);
        spent += per as u64;
        if let Some(reason) = refute_window(y.as_slice()) {
            let n = reason_extent(&reason);
            let prefix = u.prefix(n);
            let ell = first_refinement(s, &prefix)?;
            return done(ell, RhmEvidence::Case2Window { prefix, reason });
        }
        if spent >= budget {
            break;
        }
    }
    Ok(Certified::Unknown { spent })
}

/// Number of coordinates a refutation depends on.
fn reason_extent(reason: &OutReason) -> usize {
    match *reason {
        OutReason::Small(n) => n + 1,
        OutReason::FirstNegative => 1,
        OutReason::DepthClash(a, b) | OutReason::LevelClash(a, b) => a.max(b) + 1,
    }
}

fn first_refinement(s: &Label, prefix: &Word) -> Result<u64> {
    refine_into(s, prefix)?
        .next()
        .ok_or_else(|| crate::error::Error::Overflow(format!("no refinement of {s} into [{prefix}]")))
}

fn fiber_piece_ok(cs: &RegularCompact, k: &RegularCompact, r: &RegularPoint, prefix: &Word) -> bool {
    let Some(piece) = cs.restrict_to_cylinder(prefix) else {
        return false;
    };
    let escaped = !k.contains_word(&prefix.add(&r.prefix(prefix.len())));
    escaped && piece.translate(r).subset_of(&k.msum(&RegularCompact::unit_cube()))
}

/// Re-checks a certificate from its data.
pub fn verify_rhm(cert: &RhmCertificate) -> Result<bool> {
    if cert.s_prime != cert.s.child(cert.ell) {
        return Ok(false);
    }
    let cs = c_set_shared(&cert.s)?;
    let inside = |prefix: &Word| -> Result<bool> {
        Ok(match cs.restrict_to_cylinder(prefix) {
            Some(piece) => c_set_shared(&cert.s_prime)?.subset_of(&piece),
            None => false,
        })
    };
    match (&cert.evidence, &cert.g) {
        (RhmEvidence::Case1, Translation::FiberOffset { k, r }) => Ok(cs.translate(r).subset_of(k)),
        (RhmEvidence::Case1, Translation::Regular(_)) => Ok(false),
        (RhmEvidence::Case2Fiber { prefix }, Translation::FiberOffset { k, r }) => {
            Ok(inside(prefix)? && fiber_piece_ok(&cs, k, r, prefix))
        }
        (RhmEvidence::Case2Fiber { .. }, Translation::Regular(_)) => Ok(false),
        (RhmEvidence::Case2Window { prefix, reason }, g) => {
            let y = prefix.sub(&g.prefix(prefix.len())?);
            let refuted = refute_window(y.as_slice()).as_ref() == Some(reason);
            Ok(refuted && reason_extent(reason) <= prefix.len() && inside(prefix)?)
        }
    }
}

/// [`rhm_cofinal`] as an [`Avoider`] for `X = R + g`.
pub struct RhmAvoider {
    pub g: Translation,
}

impl Avoider for RhmAvoider {
    type Evidence = RhmCertificate;

    fn avoid(&self, s: &Label, budget: u64) -> Avoidance<RhmCertificate> {
        match rhm_cofinal(&self.g, s, budget) {
            Ok(Certified::Yes(cert)) => Avoidance::Found { s_prime: cert.s_prime.clone(), evidence: cert },
            Ok(Certified::Unknown { spent }) => Avoidance::Unknown { spent },
            Err(_) => Avoidance::Unknown { spent: 0 },
        }
    }

    fn verify(&self, s_prime: &Label, evidence: &RhmCertificate) -> bool {
        evidence.g == self.g && &evidence.s_prime == s_prime && verify_rhm(evidence).unwrap_or(false)
    }
}
