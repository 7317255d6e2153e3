use zomega::suite::mincompl;

#[test]
fn interiors_match_search_and_chain_holds() {
    let report = mincompl::run(8, 200, 20, 10);
    for f in report.failures.iter().take(10) {
        eprintln!("{f}");
    }
    eprintln!("{report} {:?}", report.notes);
    assert!(report.passed());
}
