//! Brute-force oracles and random machine generators shared by the
//! integration tests. Everything here recomputes results from first
//! principles (word-level definitions, explicit path enumeration) so that the
//! library's algebraic constructions are checked against independent code.

#![allow(dead_code)]

use std::collections::{BTreeSet, VecDeque};

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use codeprops::{
    Alphabet, Nfa, NfaTransition, Symbol, TdTransition, Transducer, Word,
};

/// All words over `alphabet` of length at most `n`.
pub fn all_words(alphabet: &Alphabet, n: usize) -> Vec<Word> {
    let mut out = vec![Word::empty()];
    let mut layer = vec![Word::empty()];
    for _ in 0..n {
        let mut next = Vec::new();
        for w in &layer {
            for s in alphabet {
                let mut v = w.clone();
                v.push(s.clone());
                next.push(v);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

pub fn random_nfa(rng: &mut ChaCha8Rng, max_states: usize, alphabet: &Alphabet) -> Nfa {
    let n = rng.gen_range(1..=max_states);
    let symbols: Vec<Symbol> = alphabet.iter().cloned().collect();
    let n_transitions = rng.gen_range(0..=2 * n);
    let mut transitions = Vec::new();
    for _ in 0..n_transitions {
        let label = if rng.gen_range(0..5) == 0 {
            None
        } else {
            Some(symbols[rng.gen_range(0..symbols.len())].clone())
        };
        transitions.push(NfaTransition {
            from: rng.gen_range(0..n),
            label,
            to: rng.gen_range(0..n),
        });
    }
    let initials: BTreeSet<usize> = (0..n).filter(|_| rng.gen_bool(0.5)).collect();
    let finals: BTreeSet<usize> = (0..n).filter(|_| rng.gen_bool(0.5)).collect();
    let initials = if initials.is_empty() { BTreeSet::from([0]) } else { initials };
    Nfa::new(n, alphabet.clone(), transitions, initials, finals).unwrap()
}

/// Random standard-form transducer; `with_epsilon_inputs` allows empty input
/// labels (which make relations infinite in general).
pub fn random_transducer(
    rng: &mut ChaCha8Rng,
    max_states: usize,
    alphabet: &Alphabet,
    with_epsilon_inputs: bool,
) -> Transducer {
    let n = rng.gen_range(1..=max_states);
    let symbols: Vec<Symbol> = alphabet.iter().cloned().collect();
    let label = |rng: &mut ChaCha8Rng, allow_eps: bool| {
        if allow_eps && rng.gen_range(0..4) == 0 {
            Word::empty()
        } else {
            Word::from_symbols(vec![symbols[rng.gen_range(0..symbols.len())].clone()])
        }
    };
    let n_transitions = rng.gen_range(1..=3 * n);
    let mut transitions = Vec::new();
    for _ in 0..n_transitions {
        transitions.push(TdTransition {
            from: rng.gen_range(0..n),
            input: label(rng, with_epsilon_inputs),
            output: label(rng, true),
            to: rng.gen_range(0..n),
        });
    }
    let initials: BTreeSet<usize> = (0..n).filter(|_| rng.gen_bool(0.5)).collect();
    let finals: BTreeSet<usize> = (0..n).filter(|_| rng.gen_bool(0.5)).collect();
    let initials = if initials.is_empty() { BTreeSet::from([0]) } else { initials };
    let finals = if finals.is_empty() { BTreeSet::from([n - 1]) } else { finals };
    Transducer::new(n, alphabet.clone(), alphabet.clone(), transitions, initials, finals).unwrap()
}

/// Outputs of `t` on `w` found by direct path enumeration, truncated to
/// outputs of length at most `out_cap`. Independent of the library's product
/// constructions.
pub fn oracle_outputs(t: &Transducer, w: &Word, out_cap: usize) -> BTreeSet<Word> {
    let t = t.to_standard_form();
    let mut results = BTreeSet::new();
    // configurations: (state, input position, output so far)
    let mut seen: BTreeSet<(usize, usize, Word)> = BTreeSet::new();
    let mut queue: VecDeque<(usize, usize, Word)> = VecDeque::new();
    for &i in t.initials() {
        let c = (i, 0usize, Word::empty());
        if seen.insert(c.clone()) {
            queue.push_back(c);
        }
    }
    while let Some((state, pos, out)) = queue.pop_front() {
        if pos == w.len() && t.finals().contains(&state) {
            results.insert(out.clone());
        }
        for tr in t.transitions() {
            if tr.from != state {
                continue;
            }
            let next_pos = if tr.input.is_empty() {
                pos
            } else if pos < w.len() && tr.input.symbols()[0] == w.symbols()[pos] {
                pos + 1
            } else {
                continue;
            };
            let next_out = out.concat(&tr.output);
            if next_out.len() > out_cap {
                continue;
            }
            let c = (tr.to, next_pos, next_out);
            if seen.insert(c.clone()) {
                queue.push_back(c);
            }
        }
    }
    results
}

/// The pairs `(u, v)` with `|u|, |v| <= bound` related by `t`, by path
/// enumeration.
pub fn oracle_pairs(t: &Transducer, bound: usize) -> BTreeSet<(Word, Word)> {
    let mut out = BTreeSet::new();
    for u in all_words(t.input_alphabet(), bound) {
        for v in oracle_outputs(t, &u, bound) {
            if v.len() <= bound {
                out.insert((u.clone(), v));
            }
        }
    }
    out
}

// --- word-level relations defining the five fixed properties ---

pub fn is_proper_prefix(v: &Word, u: &Word) -> bool {
    v.len() < u.len() && v.symbols() == &u.symbols()[..v.len()]
}

pub fn is_proper_suffix(v: &Word, u: &Word) -> bool {
    v.len() < u.len() && v.symbols() == &u.symbols()[u.len() - v.len()..]
}

pub fn is_proper_infix(v: &Word, u: &Word) -> bool {
    v.len() < u.len()
        && (0..=u.len() - v.len()).any(|i| v.symbols() == &u.symbols()[i..i + v.len()])
}

/// `v` arises from `u` by deleting one nonempty contiguous block.
pub fn is_proper_outfix(v: &Word, u: &Word) -> bool {
    if v.len() >= u.len() {
        return false;
    }
    (0..=v.len()).any(|i| {
        v.symbols()[..i] == u.symbols()[..i]
            && v.symbols()[i..] == u.symbols()[u.len() - (v.len() - i)..]
    })
}

/// `v` is a proper scattered subword of `u`.
pub fn is_proper_embedded(v: &Word, u: &Word) -> bool {
    if v.len() >= u.len() {
        return false;
    }
    let mut i = 0;
    for s in u.symbols() {
        if i < v.len() && v.symbols()[i] == *s {
            i += 1;
        }
    }
    i == v.len()
}

/// A violating pair `(u, v)` (v in relation(u)) for a fixed property on a
/// finite language, if any.
pub fn fixed_violation(
    relation: impl Fn(&Word, &Word) -> bool,
    language: &BTreeSet<Word>,
) -> Option<(Word, Word)> {
    for u in language {
        for v in language {
            if relation(v, u) {
                return Some((u.clone(), v.clone()));
            }
        }
    }
    None
}
