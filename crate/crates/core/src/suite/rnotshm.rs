//! Density of `R + g` in every fiber: adversary branches with exclusion
//! certificates over a cover of each corpus compact, and agreement of the
//! fixpoint decision with exhaustive search over small `c*`.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::coding::{b_word, c_set, Label};
use crate::certificate::Record;
use crate::corpus::{Corpus, CorpusParams};
use crate::counterexample::{dense_complement_check, in_ts_plus, verify_ts_witness};
use crate::hyperspace::FiberCertificate;
use crate::oracle::ts as brute;
use crate::seq::RegularPoint;

use super::Report;

/// Head and period blocks always searched by the brute-force oracle.
const BRUTE_BLOCKS: usize = 2;
/// Larger witnesses than this many blocks are not re-searched.
const BRUTE_CAP: usize = 8;

/// Blocks of `c*` past `b_{s⌢ℓ}` as `(head, period)`.
fn witness_blocks(c: &RegularPoint, s: &Label, ell: u64) -> (usize, usize) {
    let child = s.child(ell);
    let block = 1usize << child.len();
    let base = b_word(&child).expect("small label").len();
    let head = c.head_len().saturating_sub(base).div_ceil(block);
    let p = c.period_len();
    let period = num_integer::lcm(p, block) / block;
    (head + 1, period)
}

pub fn run(seed: u64, compacts: usize, cover_depth: usize, max_s_len: usize, max_entry: u64, max_ell: u64, brute_cases: usize) -> Report {
    let mut r = Report::new("rnotshm");
    let mut corpus = Corpus::new(seed, CorpusParams::default());
    let labels = Label::up_to(max_s_len, max_entry);

    for case in 0..compacts {
        let (_, k) = corpus.compact();
        let nodes = k.prefix_set(cover_depth).len();
        for s in &labels {
            for ell in 0..=max_ell {
                match dense_complement_check(&k, s, ell, cover_depth) {
                    Ok(entries) => {
                        for e in &entries {
                            r.record(Record::exclusion_entry(&k, s, ell, e));
                        }
                        r.check(entries.len() == nodes, || {
                            format!("compact {case}, ({s};{ell}): {} of {nodes} cylinders certified", entries.len())
                        });
                        r.checks += 2 * entries.len() as u64;
                    }
                    Err(e) => r.check(false, || format!("compact {case}, ({s};{ell}): {e}")),
                }
            }
        }
    }

    let small = Label::up_to(1, 2);
    let mut hits = 0;
    for case in 0..brute_cases {
        let s = small.choose(corpus.rng()).expect("nonempty").clone();
        let ell = corpus.rng().gen_range(0..=2u64);
        let x = corpus.point(2, 2);
        let kind = case % 4;
        let k = if kind == 3 {
            let (_, k) = corpus.compact();
            k
        } else {
            let cands = brute::candidates(&s, ell, 1, 2);
            let c_star = cands.choose(corpus.rng()).expect("nonempty").clone();
            let target = if kind == 2 { small.choose(corpus.rng()).expect("nonempty").clone() } else { s.clone() };
            let base = c_set(&target).expect("small label").translate(&x.sub(&c_star));
            if kind == 1 {
                let (_, extra) = corpus.compact();
                base.union(&extra)
            } else {
                base
            }
        };
        let x = if k.member(&x) { x } else { corpus.branch_of(&k) };
        let cert = FiberCertificate::new(k.clone(), x.clone()).expect("branch of K");
        let fix = match in_ts_plus(&cert, &s, ell) {
            Ok(v) => v,
            Err(e) => {
                r.check(false, || format!("brute case {case}: {e}"));
                continue;
            }
        };
        let (h, p) = match &fix {
            Some(c) => witness_blocks(c, &s, ell),
            None => (0, 0),
        };
        let (h, p) = (h.max(BRUTE_BLOCKS), p.max(BRUTE_BLOCKS));
        if h + p > BRUTE_CAP {
            r.check(false, || format!("brute case {case}: witness needs {h}+{p} blocks"));
            continue;
        }
        let bf = brute::search(&k, &x, &s, ell, h, p);
        r.oracle(fix.is_some() == bf.is_some(), || {
            format!("brute case {case}: K={k} x={x} s=({s}) ℓ={ell}: fixpoint {fix:?}, search {bf:?}")
        });
        if let Some(c) = &fix {
            hits += 1;
            r.check(verify_ts_witness(&cert, &s, ell, c).unwrap_or(false), || {
                format!("brute case {case}: witness {c} fails re-verification")
            });
        }
        if let Some(c) = &bf {
            r.check(brute::witnesses(&k, &x, &s, c), || format!("brute case {case}: search witness {c} rejected"));
        }
    }
    r.note(format!("fixpoint found witnesses in {hits} of {brute_cases} brute-force cases"));
    r
}
