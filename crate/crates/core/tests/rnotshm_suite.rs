use zomega::suite::rnotshm;

#[test]
fn adversary_covers_and_fixpoint_matches_search() {
    let report = rnotshm::run(6, 20, 6, 2, 3, 3, 200);
    for f in report.failures.iter().take(10) {
        eprintln!("{f}");
    }
    eprintln!("{report} {:?}", report.notes);
    assert!(report.passed());
}
