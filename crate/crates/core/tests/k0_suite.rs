use zomega::suite::k0;

#[test]
fn k0_tree_matches_closure() {
    let r = k0::run(12, 8, 3, 5);
    eprintln!("{r} {:?}", r.notes);
    assert!(r.passed(), "{r}\n{:#?}", &r.failures[..r.failures.len().min(10)]);
}

#[test]
fn clopen_pieces() {
    let r = k0::run_clopen(10, 2, 3, 5);
    eprintln!("{r}");
    assert!(r.passed(), "{r}\n{:#?}", &r.failures[..r.failures.len().min(10)]);
}
