use std::collections::BTreeSet;

use upword::*;

fn ctx(a: usize, n: usize) -> WordContext {
    WordContext::new(Alphabet::new(a).unwrap(), n).unwrap()
}

fn pw(s: &str, a: usize) -> PartialWord {
    PartialWord::parse(s, Alphabet::new(a).unwrap()).unwrap()
}

fn run(a: usize, n: usize, cfg: SearchConfig) -> Vec<PartialWord> {
    search_all(&ctx(a, n), &SearchConfig { override_budget: true, ..cfg }).unwrap()
}

#[test]
fn regression_counts() {
    let nontrivial = SearchConfig { require_nontrivial: true, ..Default::default() };
    assert_eq!(run(2, 3, nontrivial.clone()).len(), 18);
    assert_eq!(run(2, 3, SearchConfig::default()).len(), 35);
    assert_eq!(run(2, 4, nontrivial).len(), 128);
    assert_eq!(run(2, 4, SearchConfig::default()).len(), 385);
}

#[test]
fn named_binary_words_are_found() {
    let found: BTreeSet<String> = run(2, 3, SearchConfig { require_nontrivial: true, max_length: Some(10), ..Default::default() })
        .iter()
        .map(ToString::to_string)
        .collect();
    for w in ["**0111", "*001011*", "1110**", "**1000", "*110100*"] {
        assert!(found.contains(w), "{w}");
    }
}

#[test]
fn results_verify_and_come_out_sorted() {
    for (a, n) in [(2, 2), (2, 3), (2, 4), (3, 2)] {
        let found = run(a, n, SearchConfig::default());
        assert!(found.windows(2).all(|p| p[0] < p[1]));
        for w in &found {
            assert!(verify(w, &ctx(a, n)).unwrap().is_universal, "{w}");
        }
    }
}

#[test]
fn pruning_does_not_lose_words() {
    for (a, n, max_length) in [(2, 2, None), (2, 3, None), (2, 4, None), (3, 2, None), (3, 3, Some(14))] {
        for require_nontrivial in [false, true] {
            let base = SearchConfig { max_length, require_nontrivial, ..Default::default() };
            let plain = run(a, n, base.clone());
            let pruned = run(a, n, SearchConfig { use_structure_pruning: true, ..base });
            assert_eq!(plain, pruned, "a={a} n={n}");
        }
    }
}

#[test]
fn worker_count_does_not_change_output() {
    for (a, n) in [(2, 3), (2, 4), (3, 2)] {
        let single = run(a, n, SearchConfig::default());
        for workers in [2, 3, 8] {
            assert_eq!(run(a, n, SearchConfig { workers, ..Default::default() }), single, "a={a} n={n} workers={workers}");
        }
    }
}

#[test]
fn canonicalization_keeps_one_word_per_orbit() {
    let all = run(2, 4, SearchConfig::default());
    let orbits: BTreeSet<PartialWord> = all.iter().map(canonical_form).collect();
    let reps = run(2, 4, SearchConfig { canonicalize: true, ..Default::default() });
    assert_eq!(reps.iter().cloned().collect::<BTreeSet<_>>(), orbits);
    assert_eq!(reps.len(), orbits.len());

    let w = pw("**0111", 2);
    assert_eq!(canonical_form(&pw("1110**", 2)), canonical_form(&w));
    assert_eq!(canonical_form(&relabel(&w, &[1, 0]).unwrap()), canonical_form(&w));
    assert_eq!(canonical_form(&canonical_form(&w)), canonical_form(&w));
}

#[test]
fn limits_frames_and_budget() {
    assert_eq!(run(2, 4, SearchConfig { limit: Some(5), ..Default::default() }).len(), 5);
    assert_eq!(run(2, 4, SearchConfig { limit: Some(5), workers: 2, ..Default::default() }).len(), 5);

    let frame: Frame = "__*___*___*".parse().unwrap();
    let framed = run(2, 4, SearchConfig { fixed_frame: Some(frame.clone()), ..Default::default() });
    assert!(framed.iter().any(|w| w.to_string() == "01*110*001*"));
    assert!(framed.iter().all(|w| frame_of(w) == frame));

    let c = ctx(2, 3);
    let cfg = SearchConfig { max_length: Some(10), ..Default::default() };
    assert_eq!(estimate_space(&c, &cfg), (3..=10).map(|l| 3u128.pow(l)).sum::<u128>());
    let wide = SearchConfig { node_budget: 100, ..cfg };
    assert!(matches!(search(&c, &wide), Err(Error::OverBudget { .. })));
    assert!(search(&c, &SearchConfig { max_length: Some(2), ..Default::default() }).is_err());
}

#[test]
fn min_diamonds_filters() {
    let found = run(2, 3, SearchConfig { min_diamonds: 2, ..Default::default() });
    assert!(!found.is_empty());
    assert!(found.iter().all(|w| w.diamond_count() >= 2));
}
