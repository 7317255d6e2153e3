use zomega::suite::regsets;

#[test]
fn set_operations_match_enumeration() {
    let report = regsets::run(1, 300);
    eprintln!("{report} {:?}", report.notes);
    assert!(report.passed(), "{report}\n{:#?}", &report.failures[..report.failures.len().min(10)]);
}
