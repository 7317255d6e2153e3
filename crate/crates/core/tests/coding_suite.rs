use zomega::suite::coding;

#[test]
fn coding_words_and_refinement() {
    let r = coding::run(2, 3, 8, 50);
    assert!(r.passed(), "{r}\n{:#?}", &r.failures[..r.failures.len().min(10)]);
}

#[test]
fn height_encodings() {
    let r = coding::run_heights(4, 6, 12);
    assert!(r.passed(), "{r}\n{:#?}", &r.failures[..r.failures.len().min(10)]);
}
