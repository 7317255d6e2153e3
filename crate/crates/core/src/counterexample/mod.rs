//! The set `R = F \ ⋃_{s,ℓ} (T_s + C_{s⌢ℓ})` and its translates.
//!
//! Points are handled through their fiber: `T(K, x)` lies in
//! `T_s + C_{s⌢ℓ}` exactly when `x − c* + C_s ⊆ K` for some
//! `c* ∈ C_{s⌢ℓ}` (see [`in_ts_plus`]). The adversary shows every basic
//! open piece of a fiber keeps a point out of each such set, and
//! [`rhm_cofinal`] shrinks any `C_s` away from a translate `R + g`.

mod adversary;
mod rhm;
mod ts;

use rayon::prelude::*;

use crate::coding::Label;
use crate::error::{Error, Result};
use crate::hyperspace::{f_member, FVerdict, FiberCertificate, OutReason};
use crate::regsets::RegularCompact;
use crate::seq::{Point, RegularPoint, Word};

pub use adversary::{adversary_certificate, adversary_point, verify_exclusion, Adversary, ExclusionCertificate, Rule};
pub use rhm::{rhm_cofinal, verify_rhm, RhmAvoider, RhmCertificate, RhmEvidence, Translation};
pub use ts::{in_ts_plus, verify_ts_witness};

/// Outcome of testing a point of `F` against finitely many `(s, ℓ)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RVerdict {
    /// In `T_s + C_{s⌢ℓ}`, witnessed by `c*`.
    NotInR { s: Label, ell: u64, c_star: RegularPoint },
    /// Outside every listed `T_s + C_{s⌢ℓ}`.
    InRUpTo(Vec<(Label, u64)>),
    OutOfF(OutReason),
    Unknown { budget: usize },
}

/// Tests `T(K, x)` against each pair of `family` in order.
pub fn r_member(cert: &FiberCertificate, family: &[(Label, u64)]) -> Result<RVerdict> {
    for (s, ell) in family {
        if let Some(c_star) = in_ts_plus(cert, s, *ell)? {
            return Ok(RVerdict::NotInR { s: s.clone(), ell: *ell, c_star });
        }
    }
    Ok(RVerdict::InRUpTo(family.to_vec()))
}

/// As [`r_member`] for an arbitrary point, locating its fiber first.
pub fn r_member_point<P: Point + ?Sized>(
    z: &P,
    family: &[(Label, u64)],
    budget: usize,
    hint: Option<&RegularCompact>,
) -> Result<RVerdict> {
    match f_member(z, budget, hint) {
        FVerdict::Out(reason) => Ok(RVerdict::OutOfF(reason)),
        FVerdict::Unknown { budget } => Ok(RVerdict::Unknown { budget }),
        FVerdict::In(cert) => r_member(&cert, family),
    }
}

/// The per-cylinder record of [`dense_complement_check`].
#[derive(Clone, Debug)]
pub struct CoverEntry {
    pub start: Word,
    pub branch: RegularPoint,
    pub exclusion: ExclusionCertificate,
}

/// For each node `w₀` of `K` at `depth`, an adversary branch in `[w₀]`
/// whose fiber point avoids `T_s + C_{s⌢ℓ}`. Each entry is checked twice:
/// the exclusion coordinates are re-derived, and the fixpoint decision
/// must agree that no `c*` exists.
pub fn dense_complement_check(k: &RegularCompact, s: &Label, ell: u64, depth: usize) -> Result<Vec<CoverEntry>> {
    let nodes: Vec<Word> = k.prefix_set(depth).into_iter().collect();
    nodes
        .par_iter()
        .map(|w0| {
            let adv = adversary_point(k, s, w0)?;
            let exclusion = adversary_certificate(&adv, ell)?;
            if !verify_exclusion(&adv, ell, &exclusion)? {
                return Err(Error::Consistency(format!("exclusion at {w0} does not re-derive")));
            }
            if let Some(c) = in_ts_plus(&adv.cert, s, ell)? {
                return Err(Error::Consistency(format!(
                    "adversary branch {} from {w0} lies in T_{s} + C_({s},{ell}) via {c}",
                    adv.branch()
                )));
            }
            Ok(CoverEntry { start: w0.clone(), branch: adv.branch().clone(), exclusion })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coding::{b_word, c_set};
    use crate::hyperspace::t_coord;
    use crate::oracle::ts as brute;
    use crate::seq::Int;
    use crate::witness::Certified;

    fn cube() -> RegularCompact {
        RegularCompact::full_shift(&[0, 1])
    }

    #[test]
    fn constructed_fiber_is_hit() {
        let s = Label::empty();
        let c_star = c_set(&s.child(0)).unwrap().least_branch();
        let x = RegularPoint::from_i64s(&[2], &[5, -1]);
        let k = c_set(&s).unwrap().translate(&x.sub(&c_star));
        let cert = FiberCertificate::new(k.clone(), x.clone()).unwrap();
        let found = in_ts_plus(&cert, &s, 0).unwrap().expect("witness");
        assert!(verify_ts_witness(&cert, &s, 0, &found).unwrap());
        assert!(brute::search(&k, &x, &s, 0, 1, 1).is_some());
        match r_member(&cert, &[(s.clone(), 0)]).unwrap() {
            RVerdict::NotInR { ell: 0, .. } => {}
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn singleton_fiber_is_missed() {
        let x = RegularPoint::from_i64s(&[], &[3]);
        let cert = FiberCertificate::new(RegularCompact::singleton(&x), x).unwrap();
        for ell in 0..4 {
            assert_eq!(in_ts_plus(&cert, &Label::empty(), ell).unwrap(), None);
        }
    }

    #[test]
    fn adversary_alternates_on_the_cube() {
        let k = cube();
        let adv = adversary_point(&k, &Label::empty(), &Word::empty()).unwrap();
        let w = adv.branch();
        for j in 0..16 {
            assert_eq!(*w.eval(j), Int::from((j % 2) as i64));
            assert_eq!(adv.point().coord(j), w.eval(j) + t_coord(&k, j).unwrap());
        }
        assert_eq!(b_word(&Label(vec![0])).unwrap().len(), 2);
        let cert = adversary_certificate(&adv, 0).unwrap();
        assert_eq!((cert.j, cert.j_prime), (4, 5));
        assert!(verify_exclusion(&adv, 0, &cert).unwrap());
    }

    #[test]
    fn dense_checks_cover_counts() {
        let zero = RegularCompact::singleton(&RegularPoint::zero());
        assert_eq!(dense_complement_check(&zero, &Label::empty(), 0, 4).unwrap().len(), 1);
        for ell in 0..=2 {
            assert_eq!(dense_complement_check(&cube(), &Label::empty(), ell, 4).unwrap().len(), 16);
        }
        assert_eq!(dense_complement_check(&cube(), &Label::empty(), 0, 0).unwrap().len(), 1);
    }

    #[test]
    fn rhm_cases() {
        let s = Label::empty();
        let zero = Translation::Regular(RegularPoint::zero());
        match rhm_cofinal(&zero, &s, 64).unwrap() {
            Certified::Yes(c) => {
                assert!(matches!(c.evidence, RhmEvidence::Case2Window { reason: OutReason::Small(0), .. }));
                assert!(verify_rhm(&c).unwrap());
            }
            other => panic!("{other:?}"),
        }
        assert!(matches!(rhm_cofinal(&zero, &s, 0).unwrap(), Certified::Unknown { .. }));

        let x = RegularPoint::from_i64s(&[1], &[0, 2]);
        let c = cube().least_branch();
        let k = cube().translate(&x.sub(&c)).union(&RegularCompact::singleton(&RegularPoint::zero()));
        let g = Translation::FiberOffset { k, r: x.sub(&c) };
        match rhm_cofinal(&g, &s, 64).unwrap() {
            Certified::Yes(cert) => {
                assert_eq!(cert.evidence, RhmEvidence::Case1);
                assert_eq!(cert.s_prime, Label(vec![0]));
                assert!(verify_rhm(&cert).unwrap());
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn out_of_f() {
        let z = RegularPoint::from_i64s(&[5, 1], &[5]);
        assert_eq!(r_member_point(&z, &[], 8, None).unwrap(), RVerdict::OutOfF(OutReason::Small(1)));
    }
}
