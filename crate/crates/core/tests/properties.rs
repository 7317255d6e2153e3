use std::collections::BTreeSet;

use num_bigint::BigUint;
use proptest::prelude::*;

use zomega::coding::{b_word, beta, c_set, h_word, label_of, parse_height, refine_into, Label};
use zomega::corpus::{Corpus, CorpusParams};
use zomega::counterexample::{adversary_certificate, adversary_point, in_ts_plus, verify_exclusion, verify_ts_witness};
use zomega::hyperspace::{basis, embed_bit, Bit, FiberCertificate};
use zomega::seq::{Int, Point, Word};
use zomega::{is_segmented, RegularCompact, RegularPoint};

fn label(max_len: usize, max_entry: u64) -> impl Strategy<Value = Label> {
    prop::collection::vec(0..=max_entry, 0..=max_len).prop_map(Label)
}

fn word_set() -> impl Strategy<Value = (usize, BTreeSet<Word>)> {
    (1usize..4).prop_flat_map(|n| {
        let word = prop::collection::vec(-5i64..=5, n).prop_map(|v| Word::from_i64s(&v));
        (Just(n), prop::collection::btree_set(word, 1..5))
    })
}

fn compact(seed: u64) -> RegularCompact {
    Corpus::new(seed, CorpusParams::default()).compact().1
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn basis_round_trips((n, p) in word_set()) {
        let k = basis::encode(n, &p).unwrap();
        prop_assert_eq!(basis::decode(&k).unwrap(), (n, p));
    }

    #[test]
    fn basis_decodes_to_well_formed_pairs(k in 0u64..1_000_000) {
        let (n, p) = basis::decode(&BigUint::from(k)).unwrap();
        prop_assert!(!p.is_empty() && p.iter().all(|w| w.len() == n));
    }

    #[test]
    fn labels_round_trip_through_extension_words(s in label(3, 6), l in 0u64..40) {
        let b = beta(&s, l).unwrap();
        prop_assert_eq!(label_of(&s, &b).unwrap(), l);
        let child = b_word(&s.child(l)).unwrap();
        prop_assert_eq!(child, b_word(&s).unwrap().concat(&b));
    }

    #[test]
    fn extension_words_are_segmented(s in label(3, 6), l in 0u64..40) {
        let b = beta(&s, l).unwrap();
        let block = 1usize << s.len();
        prop_assert!(b.len() % block == 0 && !b.is_empty());
        prop_assert!(is_segmented(b.as_slice(), s.len() as u32));
    }

    #[test]
    fn heights_parse_back(s in label(4, 6), z in 0usize..6) {
        let mut q = h_word(&s);
        for _ in 0..z {
            q.push(Int::from(0));
        }
        prop_assert_eq!(parse_height(&q), (s, z));
    }

    #[test]
    fn label_text_round_trips(s in label(5, 1000)) {
        prop_assert_eq!(s.to_string().parse::<Label>().unwrap(), s);
    }

    #[test]
    fn refinements_stay_inside(s in label(2, 3), steps in prop::collection::vec(0usize..4, 0..6)) {
        let c = c_set(&s).unwrap();
        let mut w = Word::empty();
        for pick in steps {
            let Some(next) = c.prefix_set(w.len() + 1).into_iter().filter(|v| w.is_prefix_of(v)).nth(pick) else { break };
            w = next;
        }
        let piece = c.restrict_to_cylinder(&w).unwrap();
        for l in refine_into(&s, &w).unwrap().take(3) {
            prop_assert!(c_set(&s.child(l)).unwrap().subset_of(&piece));
        }
    }

    #[test]
    fn prefix_sets_cohere(seed in any::<u64>(), n in 0usize..8) {
        let k = compact(seed);
        let cut: BTreeSet<Word> = k.prefix_set(n + 1).iter().map(|w| w.prefix(n)).collect();
        prop_assert_eq!(cut, k.prefix_set(n));
    }

    #[test]
    fn notation_round_trips(seed in any::<u64>()) {
        let k = compact(seed);
        prop_assert_eq!(k.to_string().parse::<RegularCompact>().unwrap(), k);
    }

    #[test]
    fn set_algebra_laws(a in any::<u64>(), b in any::<u64>()) {
        let (ka, kb) = (compact(a), compact(b));
        let u = ka.union(&kb);
        prop_assert!(ka.subset_of(&u) && kb.subset_of(&u));
        if let Some(i) = ka.intersect(&kb) {
            prop_assert!(i.subset_of(&ka) && i.subset_of(&kb));
        } else {
            prop_assert!(ka.intersection_is_empty(&kb));
        }
        let zero = RegularCompact::singleton(&RegularPoint::zero());
        prop_assert!(ka.msum(&zero).equals_semantic(&ka));
        let g = Corpus::new(b, CorpusParams::default()).point(3, 3);
        prop_assert!(ka.translate(&g).translate(&g.neg()).equals_semantic(&ka));
        prop_assert_eq!(ka.subset_of(&kb), ka.escape_word(&kb).is_none());
    }

    #[test]
    fn own_prefix_set_sets_its_bit(seed in any::<u64>(), n in 0usize..5) {
        let k = compact(seed);
        let index = basis::encode(n, &k.prefix_set(n)).unwrap();
        prop_assert_eq!(embed_bit(&k, &index).unwrap(), Bit::Plus);
    }

    #[test]
    fn adversary_branches_are_excluded(seed in any::<u64>(), s in label(1, 2), ell in 0u64..3, depth in 0usize..4) {
        let k = compact(seed);
        let w0 = k.prefix_set(depth).into_iter().next().unwrap();
        let adv = adversary_point(&k, &s, &w0).unwrap();
        prop_assert!(w0.is_prefix_of(&adv.branch().prefix(depth)));
        let cert = adversary_certificate(&adv, ell).unwrap();
        prop_assert!(verify_exclusion(&adv, ell, &cert).unwrap());
        prop_assert_eq!(cert.j_prime, cert.j + (1 << s.len()));
        prop_assert_eq!(in_ts_plus(&adv.cert, &s, ell).unwrap(), None);
    }

    #[test]
    fn fixpoint_witnesses_verify(seed in any::<u64>(), s in label(1, 2), ell in 0u64..3) {
        let mut corpus = Corpus::new(seed, CorpusParams::default());
        let (_, k) = corpus.compact();
        let x = corpus.branch_of(&k);
        let cert = FiberCertificate::new(k, x).unwrap();
        if let Some(c) = in_ts_plus(&cert, &s, ell).unwrap() {
            prop_assert!(verify_ts_witness(&cert, &s, ell, &c).unwrap());
        }
    }
}
