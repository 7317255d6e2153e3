use zomega::suite::translate;

#[test]
fn translation_separates_fibers() {
    let r = translate::run(5, 200, 200, 100, 100);
    eprintln!("{r} {:?}", r.notes);
    assert!(r.passed(), "{r}\n{:#?}", &r.failures[..r.failures.len().min(10)]);
}
