use zomega::suite::rhm;

#[test]
fn both_cases_and_nowhere_density() {
    let report = rhm::run(7, 10, 2, 3, 6, rhm::RHM_BUDGET);
    for f in report.failures.iter().take(10) {
        eprintln!("{f}");
    }
    eprintln!("{report} {:?}", report.notes.iter().take(5).collect::<Vec<_>>());
    assert!(report.passed());
}
