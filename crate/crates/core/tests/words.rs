use proptest::prelude::*;
use trisection_core::word::{Alphabet, GeneratorMapping, Word};

/// Repeatedly deletes the first adjacent inverse pair.
fn naive_reduce(mut letters: Vec<i32>) -> Vec<i32> {
    while let Some(i) = letters.windows(2).position(|w| w[0] == -w[1]) {
        letters.drain(i..i + 2);
    }
    letters
}

fn raw(rank: i32, max_len: usize) -> impl Strategy<Value = Vec<i32>> {
    prop::collection::vec((1..=rank, any::<bool>()).prop_map(|(g, s)| if s { g } else { -g }), 0..=max_len)
}

fn word(alphabet: Alphabet, rank: i32, max_len: usize) -> impl Strategy<Value = Word> {
    raw(rank, max_len).prop_map(move |l| Word::reduce(alphabet, l))
}

proptest! {
    #[test]
    fn reduction_matches_naive_and_is_idempotent(letters in raw(4, 24)) {
        let w = Word::reduce(Alphabet::Handle, letters.clone());
        prop_assert_eq!(w.letters().to_vec(), naive_reduce(letters));
        prop_assert_eq!(Word::reduce(Alphabet::Handle, w.letters().to_vec()), w.clone());
        prop_assert!(w.letters().windows(2).all(|p| p[0] != -p[1]));
    }

    #[test]
    fn inverses_cancel(u in word(Alphabet::Surface, 6, 16)) {
        prop_assert!(u.concat(&u.inverse()).unwrap().is_identity());
        prop_assert!(u.inverse().concat(&u).unwrap().is_identity());
        prop_assert_eq!(u.inverse().inverse(), u);
    }

    #[test]
    fn mapping_is_a_homomorphism(
        images in prop::collection::vec(word(Alphabet::Handle, 3, 4), 6),
        u in word(Alphabet::Surface, 6, 10),
        v in word(Alphabet::Surface, 6, 10),
    ) {
        let f = GeneratorMapping::new(Alphabet::Surface, Alphabet::Handle, images).unwrap();
        let lhs = f.apply(&u.concat(&v).unwrap()).unwrap();
        let rhs = f.apply(&u).unwrap().concat(&f.apply(&v).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(f.apply(&u.inverse()).unwrap(), f.apply(&u).unwrap().inverse());
    }

    #[test]
    fn cyclic_reduction_reassembles(u in word(Alphabet::Free, 3, 20)) {
        let (core, conj) = u.cyclically_reduce();
        prop_assert!(core.is_cyclically_reduced());
        let back = conj.concat(&core).unwrap().concat(&conj.inverse()).unwrap();
        prop_assert_eq!(back, u);
    }

    #[test]
    fn text_round_trip(u in word(Alphabet::Surface, 8, 16), v in word(Alphabet::Handle, 5, 16)) {
        prop_assert_eq!(Word::parse(&u.to_string(), Alphabet::Surface).unwrap(), u);
        prop_assert_eq!(Word::parse(&v.to_string(), Alphabet::Handle).unwrap(), v);
    }

    #[test]
    fn parser_never_panics(text in "[abxz0-9 ^\\-1]{0,24}") {
        let _ = Word::parse(&text, Alphabet::Surface);
        let _ = Word::parse(&text, Alphabet::Handle);
    }
}

#[test]
fn documented_examples() {
    let s = |t| Word::parse(t, Alphabet::Surface).unwrap();
    assert!(s("a1 a1^-1").is_identity());
    assert_eq!(s("a1 b2 b2^-1 a1^-1 a3").to_string(), "a3");
    assert_eq!(s("b1 a2 a2^-1 b1").to_string(), "b1 b1");
    assert_eq!(s("a1 b2").inverse().to_string(), "b2^-1 a1^-1");
    let x = |t| Word::parse(t, Alphabet::Handle).unwrap();
    assert_eq!(x("x1 x2").concat(&x("x2^-1 x3")).unwrap().to_string(), "x1 x3");
    assert!(s("a1").concat(&x("x1")).is_err());
    let (core, conj) = s("a1 b1 a1^-1").cyclically_reduce();
    assert_eq!((core.to_string(), conj.to_string()), ("b1".into(), "a1".into()));
    let (core, conj) = s("b1 b1").cyclically_reduce();
    assert_eq!((core.to_string(), conj.to_string()), ("b1 b1".into(), "1".into()));
}
