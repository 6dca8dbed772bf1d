//! Oracle sweeps for the property layer: satisfaction against word-level
//! definitions, hierarchy laws, maximality cross-checks.

mod common;

use std::collections::BTreeSet;

use codeprops::{
    alphabet, build_fixed_property, build_transducer_property, conjunction, leq, maximal_witness,
    parse_nfa, parse_transducer, satisfies_witness, CodeProperty, FixedProperty, Nfa,
    PropertyKind, SatisfactionWitness, Word,
};
use common::{
    all_words, fixed_violation, is_proper_embedded, is_proper_infix, is_proper_outfix,
    is_proper_prefix, is_proper_suffix,
};

fn relation_for(f: FixedProperty) -> fn(&Word, &Word) -> bool {
    match f {
        FixedProperty::Prefix => is_proper_prefix,
        FixedProperty::Suffix => is_proper_suffix,
        FixedProperty::Infix => is_proper_infix,
        FixedProperty::Outfix => is_proper_outfix,
        FixedProperty::Hypercode => is_proper_embedded,
    }
}

fn subsets_of_size(words: &[Word], k: usize) -> Vec<BTreeSet<Word>> {
    let mut out = Vec::new();
    let n = words.len();
    let mut pick = vec![0usize; k];
    fn rec(
        words: &[Word],
        k: usize,
        start: usize,
        pick: &mut Vec<usize>,
        depth: usize,
        out: &mut Vec<BTreeSet<Word>>,
    ) {
        if depth == k {
            out.push(pick.iter().map(|&i| words[i].clone()).collect());
            return;
        }
        for i in start..words.len() {
            pick[depth] = i;
            rec(words, k, i + 1, pick, depth + 1, out);
        }
    }
    rec(words, k, 0, &mut pick, 0, &mut out);
    let _ = n;
    out
}

#[test]
fn fixed_property_satisfaction_sweep() {
    let sigma = alphabet("ab");
    let words = all_words(&sigma, 3);
    let properties: Vec<(FixedProperty, CodeProperty)> = FixedProperty::ALL
        .into_iter()
        .map(|f| (f, build_fixed_property(f, &sigma)))
        .collect();
    let mut languages = subsets_of_size(&words, 2);
    languages.extend(subsets_of_size(&words, 3));
    for language in &languages {
        let a = Nfa::from_words(language.iter(), sigma.clone());
        for (f, p) in &properties {
            let expected_violation = fixed_violation(relation_for(*f), language);
            let witness = satisfies_witness(p, &a).unwrap();
            assert_eq!(
                witness.is_some(),
                expected_violation.is_some(),
                "{} on {language:?}",
                f.name()
            );
            if let Some(SatisfactionWitness::Pair(u, v)) = witness {
                assert!(language.contains(&u) && language.contains(&v));
                assert!(relation_for(*f)(&v, &u), "{}: invalid witness ({u}, {v})", f.name());
            }
        }
    }
}

#[test]
fn hierarchy_laws() {
    let sigma = alphabet("ab");
    let one_sub = parse_transducer(
        "@Transducer 0 1 * 0\n0 a a 0\n0 b b 0\n0 b a 1\n0 a b 1\n1 a a 1\n1 b b 1\n",
    )
    .unwrap();
    let mut objects: Vec<CodeProperty> = FixedProperty::ALL
        .into_iter()
        .map(|f| build_fixed_property(f, &sigma))
        .collect();
    objects.push(build_transducer_property(PropertyKind::ErrorDetecting, &one_sub).unwrap());
    objects.push(build_transducer_property(PropertyKind::ErrorCorrecting, &one_sub).unwrap());
    // a couple of conjunction-built objects too
    objects.push(conjunction(&objects[0], &objects[5]).unwrap());
    objects.push(conjunction(&objects[4], &objects[6]).unwrap());

    for p in &objects {
        // idempotence at the object level
        assert!(conjunction(p, p).unwrap().same_object(p));
        assert!(leq(p, p).unwrap());
        for q in &objects {
            let pq = conjunction(p, q).unwrap();
            let qp = conjunction(q, p).unwrap();
            // commutativity and absorption at the name level
            assert_eq!(pq.names(), qp.names());
            assert!(leq(&pq, p).unwrap());
            assert!(leq(&pq, q).unwrap());
            // leq(p, q) iff conjunction(p, q) has p's names
            assert_eq!(leq(p, q).unwrap(), pq.names() == p.names());
            // antisymmetry
            if leq(p, q).unwrap() && leq(q, p).unwrap() {
                assert_eq!(
                    std::collections::BTreeSet::from_iter(p.names().iter().cloned()),
                    std::collections::BTreeSet::from_iter(q.names().iter().cloned())
                );
            }
            for r in &objects {
                // associativity at the name level
                let left = conjunction(&pq, r).unwrap();
                let right = conjunction(p, &conjunction(q, r).unwrap()).unwrap();
                assert_eq!(left.names(), right.names());
            }
        }
    }
}

#[test]
fn maximality_cross_checked_by_exhaustive_addition() {
    let sigma = alphabet("ab");
    let prefix = build_fixed_property(FixedProperty::Prefix, &sigma);

    // a*b is prefix-maximal: no word of length <= 5 can be added
    let astar_b = parse_nfa("@NFA 1 * 0\n0 a 0\n0 b 1\n").unwrap();
    assert_eq!(maximal_witness(&prefix, &astar_b, None).unwrap(), None);
    for w in all_words(&sigma, 5) {
        if astar_b.accepts(&w) {
            continue;
        }
        let extended = astar_b.union(&Nfa::for_word(&w, sigma.clone()));
        assert!(
            satisfies_witness(&prefix, &extended).unwrap().is_some(),
            "adding {w} should break the prefix property"
        );
    }

    // {ab} is not maximal; the witness re-validates and matches the
    // enumeration of addable words
    let ab = Nfa::from_words([Word::from_chars("ab")].iter(), sigma.clone());
    let witness = maximal_witness(&prefix, &ab, None).unwrap().expect("not maximal");
    let extended = ab.union(&Nfa::for_word(&witness, sigma.clone()));
    assert_eq!(satisfies_witness(&prefix, &extended).unwrap(), None);
    let addable: Vec<Word> = all_words(&sigma, 5)
        .into_iter()
        .filter(|w| !ab.accepts(w))
        .filter(|w| {
            let l = ab.union(&Nfa::for_word(w, sigma.clone()));
            satisfies_witness(&prefix, &l).unwrap().is_none()
        })
        .collect();
    assert!(addable.contains(&witness));
    // the returned witness is a shortest addable word
    assert!(addable.iter().all(|w| witness.len() <= w.len()));
}

#[test]
fn maximality_respects_the_universe_language() {
    let sigma = alphabet("ab");
    let prefix = build_fixed_property(FixedProperty::Prefix, &sigma);
    let ab = Nfa::from_words([Word::from_chars("ab")].iter(), sigma.clone());
    // within the universe (ab)*, {ab} is maximal: adding any other (ab)^k
    // creates a prefix pair
    let universe = Nfa::from_words([Word::from_chars("ab")].iter(), sigma.clone()).star();
    assert_eq!(maximal_witness(&prefix, &ab, Some(&universe)).unwrap(), None);
}
