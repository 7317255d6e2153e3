use std::collections::BTreeSet;

use criterion::{black_box, criterion_group, criterion_main, Criterion};
use zomega::coding::{c_set, Label};
use zomega::counterexample::{adversary_certificate, adversary_point, dense_complement_check, in_ts_plus};
use zomega::hyperspace::{basis, FiberCertificate};
use zomega::{RegularCompact, RegularPoint, Word};

fn regsets(c: &mut Criterion) {
    let a = RegularCompact::full_shift(&[0, 1]);
    let b = c_set(&Label(vec![1, 2])).unwrap();
    c.bench_function("msum C_(1,2) + {0,1}^ω", |bench| bench.iter(|| black_box(&b).msum(black_box(&a))));
    let sum = b.msum(&a);
    c.bench_function("subset_of C_(1,2) ⊆ sum", |bench| bench.iter(|| black_box(&b).subset_of(black_box(&sum))));
}

fn coding(c: &mut Criterion) {
    let p: BTreeSet<Word> = (0..8).map(|i| Word::from_i64s(&[i - 4, i % 3, -i, 7])).collect();
    c.bench_function("basis encode/decode 8 words", |bench| {
        bench.iter(|| basis::decode(&basis::encode(4, black_box(&p)).unwrap()).unwrap())
    });
}

fn counterexample(c: &mut Criterion) {
    let k = RegularCompact::full_shift(&[0, 1]);
    let s = Label::empty();
    c.bench_function("adversary certificate on {0,1}^ω", |bench| {
        bench.iter(|| {
            let adv = adversary_point(black_box(&k), &s, &Word::empty()).unwrap();
            adversary_certificate(&adv, 0).unwrap()
        })
    });
    c.bench_function("dense complement depth 4", |bench| {
        bench.iter(|| dense_complement_check(black_box(&k), &s, 0, 4).unwrap())
    });
    let cert = FiberCertificate::new(k.clone(), RegularPoint::zero()).unwrap();
    c.bench_function("in_ts_plus {0,1}^ω, 0", |bench| bench.iter(|| in_ts_plus(black_box(&cert), &s, 0).unwrap()));
}

criterion_group!(benches, regsets, coding, counterexample);
criterion_main!(benches);
