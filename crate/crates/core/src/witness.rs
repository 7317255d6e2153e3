//! The witness space `K₀ ⊆ {0,1}^ω × {0,1}^ω`, its clopen pieces `D̄_s`, and
//! the nowhere-density certifier.
//!
//! `K₀` is the closure of `⋃_s C_s × {h₀(s)}`. A basic open `[p] × [q]` meets
//! it iff `p` is a node of `C_σ` for some `σ` with `h₀(σ) ∈ [q]`. Writing
//! `q = h(stem) ⌢ 0^z`, every such `σ` extends `stem`, so `C_σ ⊆ C_stem`;
//! and `σ = stem` itself qualifies. Membership is therefore one prefix test
//! against `C_stem`.

use std::fmt;

use crate::coding::{c_set, c_set_shared, h_word, parse_height, refine_into, Label};
use crate::error::{Error, Result};
use crate::regsets::RegularCompact;
use crate::seq::{Int, Word};

/// The basic open `[p] × [q]` with `|p| = |q|`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PairCylinder {
    p: Word,
    q: Word,
}

impl PairCylinder {
    pub fn new(p: Word, q: Word) -> Result<Self> {
        if p.len() != q.len() {
            return Err(Error::Precondition(format!("cylinder sides differ in length: {} vs {}", p.len(), q.len())));
        }
        Ok(PairCylinder { p, q })
    }

    /// Equalizes lengths by extending the shorter side with zeros. The
    /// result is a subcylinder of `[p] × [q]`.
    pub fn padded(p: Word, q: Word) -> Self {
        let n = p.len().max(q.len());
        let pad = |w: Word| {
            let mut v = w.as_slice().to_vec();
            v.resize(n, Int::from(0));
            Word::new(v)
        };
        PairCylinder { p: pad(p), q: pad(q) }
    }

    pub fn p(&self) -> &Word {
        &self.p
    }

    pub fn q(&self) -> &Word {
        &self.q
    }

    pub fn depth(&self) -> usize {
        self.p.len()
    }
}

impl fmt::Display for PairCylinder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]×[{}]", self.p, self.q)
    }
}

fn is_binary(w: &Word) -> bool {
    w.iter().all(|x| *x == Int::from(0) || *x == Int::from(1))
}

/// Whether `[p] × [q]` meets `K₀`.
pub fn k0_tree_member(cyl: &PairCylinder) -> Result<bool> {
    if !is_binary(&cyl.q) {
        return Ok(false);
    }
    let (stem, _) = parse_height(&cyl.q);
    Ok(c_set_shared(&stem)?.contains_word(&cyl.p))
}

/// The nodes of `K₀`'s tree at depth `n`, ordered by `q` then `p`.
pub fn k0_level(n: usize) -> Result<Vec<PairCylinder>> {
    let mut out = Vec::new();
    for q in binary_words(n) {
        let (stem, _) = parse_height(&q);
        for p in c_set_shared(&stem)?.prefix_set(n) {
            out.push(PairCylinder { p, q: q.clone() });
        }
    }
    Ok(out)
}

/// All `{0,1}` words of length `n` in lexicographic order.
pub fn binary_words(n: usize) -> Vec<Word> {
    let mut out = vec![Word::empty()];
    for _ in 0..n {
        out = out
            .iter()
            .flat_map(|w| [0, 1].map(|b| w.extended(Int::from(b))))
            .collect();
    }
    out
}

/// `D̄_s = K₀ ∩ (C_s × [h(s)])`, as its two factors.
pub fn d_bar_cylinder(s: &Label) -> Result<(RegularCompact, Word)> {
    Ok((c_set(s)?, h_word(s)))
}

/// The heights `q` with `[p] × [q]` meeting `K₀`, for `|q| = |p|`.
pub fn f0_preimage(p: &Word) -> Result<Vec<Word>> {
    if p.len() > 24 {
        return Err(Error::Overflow(format!("preimage listing at depth {} exceeds 24", p.len())));
    }
    let mut out = Vec::new();
    for q in binary_words(p.len()) {
        if k0_tree_member(&PairCylinder { p: p.clone(), q: q.clone() })? {
            out.push(q);
        }
    }
    Ok(out)
}

/// Answer of an [`Avoider`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Avoidance<E> {
    /// `s_prime` extends the queried label and `X ∩ C_{s_prime} = ∅`, as
    /// witnessed by `evidence`.
    Found { s_prime: Label, evidence: E },
    Unknown { spent: u64 },
}

/// Supplies extensions `s′ ⊇ s` with `X ∩ C_{s′} = ∅` for a fixed target
/// set `X`, and checks its own evidence.
pub trait Avoider {
    type Evidence: Clone + fmt::Debug;

    fn avoid(&self, s: &Label, budget: u64) -> Avoidance<Self::Evidence>;

    fn verify(&self, s_prime: &Label, evidence: &Self::Evidence) -> bool;
}

/// `D̄_{s′}` inside a basic open, avoiding the target set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NwdCertificate<E> {
    pub cylinder: PairCylinder,
    pub s: Label,
    pub ell: u64,
    pub s_prime: Label,
    pub evidence: E,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certified<T> {
    Yes(T),
    Unknown { spent: u64 },
}

/// Upper bound on refinement labels examined before giving up.
const REFINE_LIMIT: usize = 4096;

/// Finds `D̄_{s′} ⊆ [p] × [q]` disjoint from `f₀⁻¹(X)`.
///
/// Takes `s` as the stem of `q` and `x` as a branch of `C_s ∩ [p]`, refines
/// to `C_{s⌢ℓ} ⊆ C_s ∩ [p]` with `ℓ` large enough that `[h(s⌢ℓ)] ⊆ [q]`,
/// and asks the avoider for `s′ ⊇ s⌢ℓ`.
pub fn nwd_certify<A: Avoider>(
    avoider: &A,
    cyl: &PairCylinder,
    budget: u64,
) -> Result<Certified<NwdCertificate<A::Evidence>>> {
    if !k0_tree_member(cyl)? {
        return Err(Error::Precondition(format!("{cyl} misses K₀")));
    }
    let (s, zeros) = parse_height(&cyl.q);
    let ell = refine_into(&s, &cyl.p)?
        .take(REFINE_LIMIT)
        .find(|&l| l >= zeros as u64)
        .ok_or_else(|| Error::Overflow(format!("no refinement label ≥ {zeros} for {cyl}")))?;
    match avoider.avoid(&s.child(ell), budget) {
        Avoidance::Unknown { spent } => Ok(Certified::Unknown { spent }),
        Avoidance::Found { s_prime, evidence } => {
            let cert = NwdCertificate { cylinder: cyl.clone(), s, ell, s_prime, evidence };
            if !verify_nwd(avoider, &cert)? {
                return Err(Error::Consistency(format!("avoider answer for {cyl} fails verification")));
            }
            Ok(Certified::Yes(cert))
        }
    }
}

/// Re-checks a certificate: `s′ ⊇ s⌢ℓ`, `C_{s′} ⊆ [p]`, `[h(s′)] ⊆ [q]`, and
/// the avoider's own evidence.
pub fn verify_nwd<A: Avoider>(avoider: &A, cert: &NwdCertificate<A::Evidence>) -> Result<bool> {
    let cyl = &cert.cylinder;
    let (stem, _) = parse_height(&cyl.q);
    if stem != cert.s || !cert.s.child(cert.ell).is_initial_segment_of(&cert.s_prime) {
        return Ok(false);
    }
    let inside_p = match c_set(&cert.s)?.restrict_to_cylinder(&cyl.p) {
        Some(piece) => c_set(&cert.s_prime)?.subset_of(&piece),
        None => false,
    };
    let inside_q = cyl.q.is_prefix_of(&h_word(&cert.s_prime));
    Ok(inside_p && inside_q && avoider.verify(&cert.s_prime, &cert.evidence))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(v: &[i64]) -> Word {
        Word::from_i64s(v)
    }

    struct Empty;

    impl Avoider for Empty {
        type Evidence = ();

        fn avoid(&self, s: &Label, _: u64) -> Avoidance<()> {
            Avoidance::Found { s_prime: s.child(0), evidence: () }
        }

        fn verify(&self, _: &Label, _: &()) -> bool {
            true
        }
    }

    #[test]
    fn membership_examples() {
        let m = |p: &[i64], q: &[i64]| k0_tree_member(&PairCylinder::new(w(p), w(q)).unwrap()).unwrap();
        assert!(m(&[], &[]));
        assert!(m(&[1, 0, 1], &[0, 0, 0]));
        assert!(!m(&[1, 0, 0, 0], &[1, 0, 0, 0]));
        assert!(m(&[0, 0, 1, 1], &[1, 0, 0, 0]));
        assert!(PairCylinder::new(w(&[0]), w(&[])).is_err());
    }

    #[test]
    fn preimages() {
        assert_eq!(f0_preimage(&Word::empty()).unwrap(), vec![Word::empty()]);
        let pre = f0_preimage(&w(&[0, 0])).unwrap();
        assert!(pre.contains(&w(&[0, 0])) && pre.contains(&w(&[1, 0])));
    }

    #[test]
    fn empty_target_is_avoided_everywhere() {
        for cyl in k0_level(3).unwrap() {
            match nwd_certify(&Empty, &cyl, 10).unwrap() {
                Certified::Yes(cert) => assert!(verify_nwd(&Empty, &cert).unwrap()),
                Certified::Unknown { .. } => panic!("unknown on {cyl}"),
            }
        }
        let off = PairCylinder::new(w(&[1, 1]), w(&[1, 0])).unwrap();
        assert!(nwd_certify(&Empty, &off, 10).is_err());
    }

    #[test]
    fn pieces_nest() {
        let (c, h) = d_bar_cylinder(&Label::empty()).unwrap();
        assert!(c.equals_semantic(&RegularCompact::full_shift(&[0, 1])) && h.len() == 0);
        let s = Label(vec![1]);
        let t = Label(vec![1, 3]);
        let (cs, hs) = d_bar_cylinder(&s).unwrap();
        let (ct, ht) = d_bar_cylinder(&t).unwrap();
        assert!(ct.subset_of(&cs) && hs.is_prefix_of(&ht));
    }
}
