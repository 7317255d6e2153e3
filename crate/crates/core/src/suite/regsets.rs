//! Set operations against enumeration from the tree/tail presentations.

use crate::corpus::{Corpus, CorpusParams};
use crate::oracle::{spec_contains, spec_escape, OracleSet};
use crate::regsets::{RegularCompact, TreeSpec};

use super::Report;

/// Depth limit for prefix-set comparison.
pub const MAX_DEPTH: usize = 10;
/// Enumeration budget (words touched) for one oracle evaluation.
pub const ORACLE_BUDGET: u128 = 400_000;

fn compare(report: &mut Report, label: &str, case: usize, got: &RegularCompact, expr: &OracleSet) {
    let n = expr.feasible_depth(MAX_DEPTH, ORACLE_BUDGET);
    let want = expr.prefixes(n);
    let have = got.prefix_set(n);
    report.oracle(want == have, || {
        format!("case {case}: {label} prefix sets differ at depth {n} ({} vs {} words)", have.len(), want.len())
    });
}

fn check_subset(report: &mut Report, case: usize, a: (&TreeSpec, &RegularCompact), b: (&TreeSpec, &RegularCompact)) {
    let oracle = spec_escape(a.0, b.0);
    let fast = a.1.escape_word(b.1);
    report.oracle(a.1.subset_of(b.1) == oracle.is_none(), || {
        format!("case {case}: subset verdict {} but oracle escape {oracle:?}", a.1.subset_of(b.1))
    });
    if let (Some(w), Some(v)) = (&fast, &oracle) {
        report.oracle(spec_contains(a.0, w) && !spec_contains(b.0, w), || {
            format!("case {case}: escape word {w} is not a certificate")
        });
        report.oracle(w.len() == v.len(), || format!("case {case}: escape {w} not shortest (oracle {v})"));
    }
}

/// Runs `cases` seeded cases; each draws a compact `A`, a related compact `B`
/// and a point `g`.
pub fn run(seed: u64, cases: usize) -> Report {
    let mut report = Report::new("regsets-oracle");
    let mut corpus = Corpus::new(seed, CorpusParams::default());
    let mut min_depth = MAX_DEPTH;
    for case in 0..cases {
        let (sa, a) = corpus.compact();
        let sb = match case % 3 {
            0 => corpus.tree_spec(),
            1 => corpus.overlapping_spec(&sa),
            _ => corpus.superset_spec(&sa),
        };
        let b = RegularCompact::from_tree(&sb);
        let g = corpus.point(3, 3);

        let spec_a = OracleSet::Spec(sa.clone());
        compare(&mut report, "tree", case, &a, &spec_a);
        compare(&mut report, "translate", case, &a.translate(&g), &OracleSet::Translate(Box::new(spec_a.clone()), g.clone()));
        let sum = OracleSet::Sum(Box::new(spec_a.clone()), Box::new(OracleSet::Spec(sb.clone())));
        min_depth = min_depth.min(sum.feasible_depth(MAX_DEPTH, ORACLE_BUDGET));
        compare(&mut report, "msum", case, &a.msum(&b), &sum);
        let inter = OracleSet::Inter(sa.clone(), sb.clone());
        match a.intersect(&b) {
            Some(k) => compare(&mut report, "intersect", case, &k, &inter),
            None => report.oracle(inter.prefixes(MAX_DEPTH).is_empty(), || {
                format!("case {case}: intersect empty but oracle has depth-{MAX_DEPTH} words")
            }),
        }
        let union = OracleSet::Union(Box::new(spec_a.clone()), Box::new(OracleSet::Spec(sb.clone())));
        compare(&mut report, "union", case, &a.union(&b), &union);

        check_subset(&mut report, case, (&sa, &a), (&sb, &b));
        check_subset(&mut report, case, (&sb, &b), (&sa, &a));

        let re = Corpus::reblocked_spec(&sa);
        let ra = RegularCompact::from_tree(&re);
        report.check(ra.equals_semantic(&a) && ra == a, || format!("case {case}: reblocked presentation differs"));
        let same = spec_escape(&sa, &sb).is_none() && spec_escape(&sb, &sa).is_none();
        report.oracle(a.equals_semantic(&b) == same, || format!("case {case}: equality verdict disagrees"));
    }
    report.note(format!("smallest msum comparison depth {min_depth}"));
    report
}
