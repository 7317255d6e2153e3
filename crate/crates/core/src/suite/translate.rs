//! Signs and bounds of the translation `t`, injectivity of `T`, fiber
//! separation, and the thickened-fiber identity on samples.

use num_bigint::BigUint;
use num_traits::Signed;
use rand::Rng;

use crate::certificate::Record;
use crate::corpus::{Corpus, CorpusParams};
use crate::hyperspace::{basis, big_t, fiber_separation_witness, t_coord_big, verify_separation, FiberCertificate};
use crate::oracle::{spec_letters, spec_member, spec_prefixes};
use crate::regsets::{RegularCompact, TreeSpec};
use crate::seq::{eval_point, Int, RegularPoint, Word};

use super::Report;

/// Coordinates checked per sample.
pub const COORDS: usize = 32;

fn oracle_bound(spec: &TreeSpec, n: &BigUint) -> Int {
    spec_letters(spec, n).iter().map(|l| l.abs()).max().unwrap_or_default() + 1
}

fn oracle_bit(spec: &TreeSpec, n: &BigUint) -> Option<bool> {
    let (depth, p) = basis::decode(n).ok()?;
    Some(spec_prefixes(spec, depth) == p)
}

/// `T(K, x)_n` at an arbitrary index.
fn big_t_at(k: &RegularCompact, x: &RegularPoint, n: &BigUint) -> Int {
    x.eval_big(n) + t_coord_big(k, n).expect("decodable witness coordinate")
}

fn unit_point(corpus: &mut Corpus) -> RegularPoint {
    let h = corpus.rng().gen_range(0..4);
    let p = corpus.rng().gen_range(1..4);
    let mut draw = |len: usize| -> Word { (0..len).map(|_| Int::from(corpus.rng().gen_range(-1..=1))).collect() };
    let head = draw(h);
    let period = draw(p);
    RegularPoint::new(head, period).expect("nonempty period")
}

pub fn run(seed: u64, samples: usize, pairs: usize, witnesses: usize, thickened: usize) -> Report {
    let mut r = Report::new("translateapart");
    let mut corpus = Corpus::new(seed, CorpusParams::default());

    for case in 0..samples {
        let (spec, k) = corpus.compact();
        let x = corpus.branch_of(&k);
        let cert = FiberCertificate::new(k.clone(), x).expect("generated branch");
        r.record(Record::fiber(&cert));
        let y = big_t(&cert);
        for n in 0..COORDS {
            let nb = BigUint::from(n);
            let v = eval_point(&y, n);
            let b = oracle_bound(&spec, &nb);
            r.oracle(v.abs() > b, || format!("sample {case}: |y_{n}| = {} ≤ b = {b}", v.abs()));
            let plus = oracle_bit(&spec, &nb).expect("small index");
            r.oracle(v.is_positive() == plus, || format!("sample {case}: sign of y_{n} disagrees with c(K)_{n}"));
        }
    }

    let mut distinct = 0;
    let mut case = 0usize;
    while distinct < pairs {
        case += 1;
        let (_, k) = corpus.compact();
        let x = corpus.branch_of(&k);
        if case % 2 == 0 {
            let x2 = corpus.branch_of(&k);
            if x2 == x {
                continue;
            }
            let n = x.agreement_bound(&x2);
            let n = (0..n).find(|&i| x.eval(i) != x2.eval(i)).expect("distinct points differ below the bound");
            let nb = BigUint::from(n);
            r.check(big_t_at(&k, &x, &nb) != big_t_at(&k, &x2, &nb), || format!("pair {case}: T agrees at {n}"));
        } else {
            let (_, k2) = corpus.compact();
            if k2 == k {
                continue;
            }
            let x2 = corpus.branch_of(&k2);
            match fiber_separation_witness(&k, &k2) {
                Ok(w) => r.check(big_t_at(&k, &x, &w.coord) != big_t_at(&k2, &x2, &w.coord), || {
                    format!("pair {case}: T agrees at witness coordinate {}", w.coord)
                }),
                Err(e) => r.check(false, || format!("pair {case}: no witness: {e}")),
            }
        }
        distinct += 1;
    }
    r.note(format!("{distinct} injectivity pairs"));

    let mut done = 0;
    while done < witnesses {
        let (sa, a) = corpus.compact();
        let (sb, b) = corpus.compact();
        if a == b {
            continue;
        }
        done += 1;
        let w = match fiber_separation_witness(&a, &b) {
            Ok(w) => w,
            Err(e) => {
                r.check(false, || format!("witness {done}: {e}"));
                continue;
            }
        };
        r.check(verify_separation(&a, &b, &w).unwrap_or(false), || format!("witness {done}: {w} fails"));
        r.record(Record::separation(&a, &b, &w));
        let bits = (oracle_bit(&sa, &w.coord), oracle_bit(&sb, &w.coord));
        r.check(matches!(bits, (Some(p), Some(q)) if p != q), || format!("witness {done}: bits do not differ"));
        let la = spec_letters(&sa, &w.coord);
        let lb = spec_letters(&sb, &w.coord);
        let ta = Int::from(3) * oracle_bound(&sa, &w.coord) * if bits.0 == Some(true) { 1 } else { -1 };
        let tb = Int::from(3) * oracle_bound(&sb, &w.coord) * if bits.1 == Some(true) { 1 } else { -1 };
        let ra = (la.first().expect("nonempty") + &ta - 1, la.last().expect("nonempty") + &ta + 1);
        let rb = (lb.first().expect("nonempty") + &tb, lb.last().expect("nonempty") + &tb);
        r.oracle(ra == w.range_a && rb == w.range_b, || format!("witness {done}: ranges differ from enumeration"));
        r.check(ra.1 < rb.0 || rb.1 < ra.0, || format!("witness {done}: enumerated ranges overlap"));
    }

    let mut fibers: Vec<(TreeSpec, RegularCompact, RegularPoint, RegularPoint)> = Vec::new();
    for _ in 0..thickened {
        let (spec, k) = corpus.compact();
        let x = corpus.branch_of(&k);
        let e = if corpus.rng().gen_bool(0.25) { RegularPoint::zero() } else { unit_point(&mut corpus) };
        fibers.push((spec, k, x, e));
    }
    for (i, (spec, k, x, e)) in fibers.iter().enumerate() {
        let shifted = x.add(e);
        let inside = k.member(&shifted);
        r.oracle(inside == spec_member(spec, &shifted), || format!("thickened {i}: membership of x + e disagrees"));
        for (j, (_, k2, _, _)) in fibers.iter().enumerate() {
            if k2 == k {
                continue;
            }
            let w = match fiber_separation_witness(k, k2) {
                Ok(w) => w,
                Err(err) => {
                    r.check(false, || format!("thickened {i} vs {j}: {err}"));
                    continue;
                }
            };
            let v = big_t_at(k, x, &w.coord) + e.eval_big(&w.coord);
            let in_a = w.range_a.0 <= v && v <= w.range_a.1;
            let in_b = w.range_b.0 <= v && v <= w.range_b.1;
            r.check(in_a && !in_b, || format!("thickened {i}: y meets the fiber of sample {j}"));
        }
    }
    r
}
