//! Language-level oracle checks for the automaton operations: every
//! construction is compared against the set-theoretic definition applied to
//! brute-force word enumerations.

mod common;

use std::collections::BTreeSet;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use codeprops::{alphabet, Nfa, Word};
use common::{all_words, random_nfa};

const BOUND: usize = 5;

fn language(a: &Nfa) -> BTreeSet<Word> {
    a.enumerate_words(BOUND)
}

/// Words of `base*` up to the bound, computed by closure at the word level.
fn star_language(base: &BTreeSet<Word>) -> BTreeSet<Word> {
    let mut out = BTreeSet::from([Word::empty()]);
    loop {
        let mut grew = false;
        for w in out.clone() {
            for b in base {
                let c = w.concat(b);
                if c.len() <= BOUND && out.insert(c) {
                    grew = true;
                }
            }
        }
        if !grew {
            return out;
        }
    }
}

#[test]
fn operations_match_word_level_definitions() {
    let sigma = alphabet("ab");
    let universe: BTreeSet<Word> = all_words(&sigma, BOUND).into_iter().collect();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..150 {
        let a = random_nfa(&mut rng, 4, &sigma);
        let b = random_nfa(&mut rng, 4, &sigma);
        let (la, lb) = (language(&a), language(&b));

        let inter = a.eliminate_epsilon().intersect(&b.eliminate_epsilon()).unwrap();
        assert_eq!(language(&inter), la.intersection(&lb).cloned().collect::<BTreeSet<_>>());
        assert!(inter.n_states() <= a.n_states() * b.n_states());

        assert_eq!(language(&a.union(&b)), la.union(&lb).cloned().collect::<BTreeSet<_>>());

        assert_eq!(language(&a.star()), star_language(&la));

        let complement = a.complement(&sigma).unwrap();
        assert_eq!(
            language(&complement),
            universe.difference(&la).cloned().collect::<BTreeSet<_>>()
        );

        // normalizations preserve the language
        assert_eq!(language(&a.trim()), la);
        assert_eq!(language(&a.eliminate_epsilon()), la);

        // emptiness: the shortest accepted word needs at most n_states symbols
        let shortest = a.shortest_accepted_word();
        assert_eq!(shortest.is_none(), a.enumerate_words(a.n_states()).is_empty());
        if let Some(w) = shortest {
            assert!(a.accepts(&w));
            assert!(language(&a).iter().all(|v| w.len() <= v.len() || v.len() > BOUND));
        }
    }
}

#[test]
fn accepts_agrees_with_enumeration() {
    let sigma = alphabet("ab");
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..100 {
        let a = random_nfa(&mut rng, 4, &sigma);
        let l = language(&a);
        for w in all_words(&sigma, BOUND) {
            assert_eq!(a.accepts(&w), l.contains(&w));
        }
    }
}
