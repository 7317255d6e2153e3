//! Cofinal avoidance of `R + g`: both cases of the shrinking step on
//! structured translations, and nowhere-density certificates over a full
//! level of `K₀`.

use rayon::prelude::*;

use crate::certificate::Record;
use crate::coding::{c_set, Label};
use crate::corpus::{Corpus, CorpusParams};
use crate::counterexample::{rhm_cofinal, verify_rhm, RhmAvoider, RhmEvidence, Translation};
use crate::hyperspace::{f_member, t_coord, FVerdict};
use crate::seq::LazyPoint;
use crate::witness::{k0_level, nwd_certify, verify_nwd, Certified};

use super::Report;

/// Default coordinate budget for each shrinking step.
pub const RHM_BUDGET: u64 = 4096;
/// Coordinates read by membership checks on sampled points.
const MEMBER_BUDGET: usize = 160;
/// Sampled branches per Case 1 answer.
const SAMPLES: usize = 20;

/// `c − g` as a coordinate oracle.
fn minus_g(c: &crate::seq::RegularPoint, g: &Translation) -> LazyPoint {
    let c = c.clone();
    match g.clone() {
        Translation::Regular(g) => LazyPoint::new(move |n| c.eval(n) - g.eval(n)),
        Translation::FiberOffset { k, r } => {
            LazyPoint::new(move |n| c.eval(n) + r.eval(n) + t_coord(&k, n).expect("small index"))
        }
    }
}

/// Ten offsets with `C_∅ + r ⊆ K`, ten regular points, and five offsets
/// built on `C_(0)` that need the fiber form of Case 2 at the root.
pub fn family(seed: u64, per_case: usize) -> (Vec<Translation>, Vec<Translation>, Vec<Translation>) {
    let mut corpus = Corpus::new(seed, CorpusParams::default());
    let offsets = |corpus: &mut Corpus, base: &Label, n: usize| -> Vec<Translation> {
        let cs = c_set(base).expect("small label");
        (0..n)
            .map(|_| {
                let x = corpus.point(2, 2);
                let c = corpus.branch_of(&cs);
                let r = x.sub(&c);
                let (_, extra) = corpus.compact();
                Translation::FiberOffset { k: cs.translate(&r).union(&extra), r }
            })
            .collect()
    };
    let case1 = offsets(&mut corpus, &Label::empty(), per_case);
    let mixed = offsets(&mut corpus, &Label(vec![0]), per_case.div_ceil(2));
    let regular = (0..per_case).map(|_| Translation::Regular(corpus.point(3, 3))).collect();
    (case1, regular, mixed)
}

fn check_answer(r: &mut Report, budget: u64, g: &Translation, s: &Label, expect_case1: Option<bool>, corpus: &mut Corpus, tally: &mut [u64; 3]) {
    let cert = match rhm_cofinal(g, s, budget) {
        Ok(Certified::Yes(c)) => c,
        Ok(Certified::Unknown { .. }) => {
            r.unknown += 1;
            r.note(format!("unknown: g={g} s=({s})"));
            return;
        }
        Err(e) => return r.check(false, || format!("g={g} s=({s}): {e}")),
    };
    r.check(verify_rhm(&cert).unwrap_or(false), || format!("g={g} s=({s}): certificate fails re-verification"));
    r.record(Record::rhm(&cert));
    let is_case1 = cert.evidence == RhmEvidence::Case1;
    tally[match cert.evidence {
        RhmEvidence::Case1 => 0,
        RhmEvidence::Case2Fiber { .. } => 1,
        RhmEvidence::Case2Window { .. } => 2,
    }] += 1;
    if let Some(want) = expect_case1 {
        r.check(is_case1 == want, || format!("g={g} s=({s}): expected case 1 = {want}, got {:?}", cert.evidence));
    }
    if is_case1 {
        r.check(cert.ell == 0, || format!("g={g} s=({s}): case 1 with ℓ = {}", cert.ell));
        let Translation::FiberOffset { k, .. } = g else { unreachable!("case 1 needs a fiber offset") };
        let cs = c_set(s).expect("small label");
        for _ in 0..SAMPLES {
            let c = corpus.branch_of(&cs);
            let verdict = f_member(&minus_g(&c, g), MEMBER_BUDGET, Some(k));
            r.check(matches!(&verdict, FVerdict::In(f) if f.compact() == k), || {
                format!("g={g} s=({s}): sampled c={c} gives {verdict:?}")
            });
        }
    } else {
        let cs = c_set(&cert.s_prime).expect("small label");
        for _ in 0..SAMPLES / 4 {
            let c = corpus.branch_of(&cs);
            let verdict = f_member(&minus_g(&c, g), MEMBER_BUDGET, None);
            r.check(!matches!(verdict, FVerdict::In(_)), || format!("g={g} s′=({}): c={c} − g is in F", cert.s_prime));
        }
    }
}

pub fn run(seed: u64, per_case: usize, max_s_len: usize, max_entry: u64, cover_depth: usize, budget: u64) -> Report {
    let mut r = Report::new("rhm");
    let (case1, regular, mixed) = family(seed, per_case);
    let labels = Label::up_to(max_s_len, max_entry);
    let mut corpus = Corpus::new(seed ^ 0x5eed, CorpusParams::default());
    let mut tally = [0u64; 3];
    for s in &labels {
        for g in &case1 {
            check_answer(&mut r, budget, g, s, Some(true), &mut corpus, &mut tally);
        }
        for g in &regular {
            check_answer(&mut r, budget, g, s, Some(false), &mut corpus, &mut tally);
        }
        for g in &mixed {
            let want = if s.0.first() == Some(&0) { Some(true) } else { Some(false) };
            check_answer(&mut r, budget, g, s, want, &mut corpus, &mut tally);
        }
    }

    r.note(format!("case 1: {}, case 2 by fiber: {}, case 2 by window: {}", tally[0], tally[1], tally[2]));
    let cover = match k0_level(cover_depth) {
        Ok(c) => c,
        Err(e) => {
            r.check(false, || format!("level {cover_depth} of K₀: {e}"));
            return r;
        }
    };
    r.note(format!("{} basic opens at depth {cover_depth}", cover.len()));
    for g in case1.iter().chain(&regular) {
        let avoider = RhmAvoider { g: g.clone() };
        let results: Vec<_> = cover.par_iter().map(|cyl| (cyl, nwd_certify(&avoider, cyl, budget))).collect();
        for (cyl, res) in results {
            match res {
                Ok(Certified::Yes(cert)) => {
                    r.check(verify_nwd(&avoider, &cert).unwrap_or(false), || format!("g={g} {cyl}: certificate rejected"));
                    r.record(Record::nwd(&cert));
                }
                Ok(Certified::Unknown { .. }) => {
                    r.unknown += 1;
                    r.note(format!("unknown: g={g} {cyl}"));
                }
                Err(e) => r.check(false, || format!("g={g} {cyl}: {e}")),
            }
        }
    }
    r
}

