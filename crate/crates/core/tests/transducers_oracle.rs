//! Relation-level oracle checks for transducer operations, against direct
//! path enumeration.

mod common;

use std::collections::BTreeSet;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use codeprops::{alphabet, Nfa, RationalOp, TdTransition, Transducer, Word};
use common::{all_words, oracle_outputs, oracle_pairs, random_transducer};

const BOUND: usize = 3;

fn library_pairs(t: &Transducer, bound: usize) -> BTreeSet<(Word, Word)> {
    let mut out = BTreeSet::new();
    for u in all_words(t.input_alphabet(), bound) {
        for v in all_words(t.output_alphabet(), bound) {
            if t.eval_pair(&u, &v) {
                out.insert((u.clone(), v));
            }
        }
    }
    out
}

#[test]
fn eval_pair_matches_path_enumeration() {
    let sigma = alphabet("ab");
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for _ in 0..60 {
        let t = random_transducer(&mut rng, 3, &sigma, true);
        assert_eq!(library_pairs(&t, BOUND), oracle_pairs(&t, BOUND));
    }
}

#[test]
fn inverse_swaps_the_relation() {
    let sigma = alphabet("ab");
    let mut rng = ChaCha8Rng::seed_from_u64(22);
    for _ in 0..40 {
        let t = random_transducer(&mut rng, 3, &sigma, true);
        let swapped: BTreeSet<(Word, Word)> =
            oracle_pairs(&t, BOUND).into_iter().map(|(u, v)| (v, u)).collect();
        assert_eq!(library_pairs(&t.inverse(), BOUND), swapped);
    }
}

#[test]
fn intersections_only_shrink() {
    let sigma = alphabet("ab");
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for _ in 0..40 {
        let t = random_transducer(&mut rng, 3, &sigma, true);
        let a = common::random_nfa(&mut rng, 3, &sigma);
        let before = library_pairs(&t, BOUND);
        for (u, v) in library_pairs(&t.in_intersection(&a), BOUND) {
            assert!(before.contains(&(u.clone(), v.clone())));
            assert!(a.accepts(&u));
        }
        for (u, v) in library_pairs(&t.out_intersection(&a), BOUND) {
            assert!(before.contains(&(u.clone(), v.clone())));
            assert!(a.accepts(&v));
        }
    }
}

#[test]
fn union_is_commutative_and_idempotent() {
    let sigma = alphabet("ab");
    let mut rng = ChaCha8Rng::seed_from_u64(24);
    for _ in 0..30 {
        let t = random_transducer(&mut rng, 3, &sigma, true);
        let s = random_transducer(&mut rng, 3, &sigma, true);
        let ts = Transducer::rational_combine(RationalOp::Union, &t, Some(&s));
        let st = Transducer::rational_combine(RationalOp::Union, &s, Some(&t));
        assert_eq!(library_pairs(&ts, BOUND), library_pairs(&st, BOUND));
        let tt = Transducer::rational_combine(RationalOp::Union, &t, Some(&t));
        assert_eq!(library_pairs(&tt, BOUND), library_pairs(&t, BOUND));
    }
}

#[test]
fn run_on_nfa_matches_per_word_runs() {
    let sigma = alphabet("ab");
    let mut rng = ChaCha8Rng::seed_from_u64(25);
    for _ in 0..30 {
        let t = random_transducer(&mut rng, 3, &sigma, true);
        let a = common::random_nfa(&mut rng, 3, &sigma);
        let finite: Vec<Word> = a.enumerate_words(BOUND).into_iter().collect();
        let a_fin = Nfa::from_words(finite.iter(), sigma.clone());
        let mut expected = BTreeSet::new();
        for w in &finite {
            expected.extend(
                oracle_outputs(&t, w, BOUND).into_iter().filter(|v| v.len() <= BOUND),
            );
        }
        assert_eq!(t.run_on_nfa(&a_fin).enumerate_words(BOUND), expected);
    }
}

#[test]
fn standard_form_preserves_the_relation() {
    let sigma = alphabet("ab");
    let mut rng = ChaCha8Rng::seed_from_u64(26);
    let symbols: Vec<_> = sigma.iter().cloned().collect();
    for _ in 0..30 {
        // general-form machine with labels up to length 3
        use rand::Rng;
        let n = rng.gen_range(1..=3);
        let mut transitions = Vec::new();
        for _ in 0..rng.gen_range(1..=2 * n) {
            let word = |rng: &mut ChaCha8Rng| {
                let len = rng.gen_range(0..=3);
                Word::from_symbols(
                    (0..len).map(|_| symbols[rng.gen_range(0..symbols.len())].clone()).collect(),
                )
            };
            transitions.push(TdTransition {
                from: rng.gen_range(0..n),
                input: word(&mut rng),
                output: word(&mut rng),
                to: rng.gen_range(0..n),
            });
        }
        let t = Transducer::new(
            n,
            sigma.clone(),
            sigma.clone(),
            transitions,
            BTreeSet::from([0]),
            BTreeSet::from([n - 1]),
        )
        .unwrap();
        let s = t.to_standard_form();
        assert!(s.is_standard_form());
        assert!(s.size() <= 3 * t.size().max(1));
        assert_eq!(oracle_pairs(&t, BOUND), oracle_pairs(&s, BOUND));
    }
}
