use proptest::prelude::*;
use upword::*;

fn alphabet(a: usize) -> Alphabet {
    Alphabet::new(a).unwrap()
}

fn text(a: usize, max_len: usize) -> impl Strategy<Value = String> {
    prop::collection::vec(0..=a as u32, 1..=max_len)
        .prop_map(move |v| v.into_iter().map(|l| if l == a as u32 { '*' } else { char::from_digit(l, 36).unwrap() }).collect())
}

fn sized_text(max_len: usize) -> impl Strategy<Value = (usize, String)> {
    (2..=5usize).prop_flat_map(move |a| (Just(a), text(a, max_len)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2000))]

    #[test]
    fn parse_format_round_trip((a, s) in sized_text(20)) {
        let w = parse_partial_word(&s, alphabet(a)).unwrap();
        prop_assert_eq!(format_partial_word(&w), s);
    }

    #[test]
    fn rank_unrank_round_trip(a in 2..=6usize, n in 1..=6usize, seed in any::<u64>()) {
        let ctx = WordContext::new(alphabet(a), n).unwrap();
        let rank = seed % ctx.word_count();
        let w = word_unrank(rank, &ctx).unwrap();
        prop_assert!(w.is_total());
        prop_assert_eq!(word_rank(&w, &ctx).unwrap(), rank);
    }

    #[test]
    fn window_covers_a_to_the_diamonds((a, s) in (2..=3usize).prop_flat_map(|a| (Just(a), text(a, 5)))) {
        let w = parse_partial_word(&s, alphabet(a)).unwrap();
        let ctx = WordContext::new(alphabet(a), w.len()).unwrap();
        let covered = covered_words(&w, &ctx).unwrap();
        prop_assert_eq!(covered.len(), a.pow(w.diamond_count() as u32));
        prop_assert!(covered.windows(2).all(|p| p[0] < p[1]));
        for r in covered {
            prop_assert!(is_factor(&word_unrank(r, &ctx).unwrap(), &w).unwrap());
        }
    }

    #[test]
    fn factor_relation_is_reversal_closed((a, u, v) in (2..=3usize).prop_flat_map(|a| (Just(a), text(a, 5), text(a, 10)))) {
        let (u, v) = (parse_partial_word(&u, alphabet(a)).unwrap(), parse_partial_word(&v, alphabet(a)).unwrap());
        prop_assert_eq!(is_factor(&u, &v).unwrap(), is_factor(&reverse(&u), &reverse(&v)).unwrap());
    }

    #[test]
    fn every_word_is_its_own_factor((a, s) in sized_text(12)) {
        let w = parse_partial_word(&s, alphabet(a)).unwrap();
        prop_assert!(is_factor(&w, &w).unwrap());
    }
}

#[test]
fn parse_rejects_bad_input() {
    let a2 = alphabet(2);
    assert_eq!(parse_partial_word("", a2), Err(Error::Empty));
    assert!(matches!(parse_partial_word("012", a2), Err(Error::LetterOutOfRange { letter: 2, pos: 2, .. })));
    assert!(matches!(parse_partial_word("0?1", a2), Err(Error::InvalidChar { ch: '?', pos: 1 })));
    assert!(Alphabet::new(1).is_err());
    assert!(Alphabet::new(37).is_err());
    assert_eq!(parse_partial_word("z*", alphabet(36)).unwrap().to_string(), "z*");
}

#[test]
fn windows_and_ranks() {
    let w = parse_partial_word("01*1*", alphabet(2)).unwrap();
    let wins: Vec<String> = windows(&w, 3).unwrap().iter().map(ToString::to_string).collect();
    assert_eq!(wins, ["01*", "1*1", "*1*"]);
    assert!(windows(&parse_partial_word("01", alphabet(2)).unwrap(), 3).unwrap().is_empty());
    assert!(windows(&w, 0).is_err());
    let ctx = WordContext::new(alphabet(2), 3).unwrap();
    assert_eq!(word_rank(&parse_partial_word("111", alphabet(2)).unwrap(), &ctx).unwrap(), 7);
    assert!(word_rank(&parse_partial_word("1*1", alphabet(2)).unwrap(), &ctx).is_err());
    assert!(WordContext::new(alphabet(36), 8).is_err());
}
