//! Unique decipherability: satisfaction reduced to transducer functionality,
//! maximality via the Schützenberger infix criterion.

use std::collections::BTreeSet;

use crate::alphabet::{alphabet, Symbol, Word};
use crate::error::{Error, Result};
use crate::functionality::non_functional_witness;
use crate::nfa::{Nfa, NfaTransition};
use crate::property::infix_transducer;
use crate::transducer::{TdTransition, Transducer};

/// Two different factorizations over `L` of the same word.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UdWitness {
    pub left: Vec<Word>,
    pub right: Vec<Word>,
}

impl UdWitness {
    pub fn concatenation(factors: &[Word]) -> Word {
        factors.iter().fold(Word::empty(), |acc, f| acc.concat(f))
    }
}

/// Rebuilds `a` so that no transition enters an initial state: fresh copies
/// of the initial states become the only initials. The factorization encoder
/// below needs every accepting path to end with an explicit factor boundary.
fn start_separated(a: &Nfa) -> Nfa {
    let n = a.n_states();
    let old_initials: Vec<usize> = a.initials().iter().copied().collect();
    let copy_of = |i: usize| n + old_initials.iter().position(|&x| x == i).unwrap();
    let mut transitions = a.transitions().to_vec();
    for t in a.transitions() {
        if a.initials().contains(&t.from) {
            transitions.push(NfaTransition {
                from: copy_of(t.from),
                label: t.label.clone(),
                to: t.to,
            });
        }
    }
    let initials: BTreeSet<usize> = old_initials.iter().map(|&i| copy_of(i)).collect();
    let finals: BTreeSet<usize> = a
        .finals()
        .iter()
        .copied()
        .chain(a.finals().iter().filter(|f| a.initials().contains(f)).map(|&f| copy_of(f)))
        .collect();
    Nfa::new(n + old_initials.len(), a.alphabet().clone(), transitions, initials, finals)
        .expect("start separation is well-formed")
        .trim()
}

/// Splits `w` according to the binary encoding `0^{r_1}1⋯0^{r_n}1`: the i-th
/// factor has length `r_i + 1`.
fn decode_factors(w: &Word, encoding: &Word) -> Vec<Word> {
    let one = Symbol::from_char('1');
    let mut factors = Vec::new();
    let mut start = 0;
    let mut len = 0;
    for s in encoding.symbols() {
        len += 1;
        if *s == one {
            factors.push(Word::from_symbols(w.symbols()[start..start + len].to_vec()));
            start += len;
            len = 0;
        }
    }
    debug_assert_eq!(start, w.len(), "encoding must consume the whole word");
    debug_assert_eq!(len, 0, "encoding must end on a factor boundary");
    factors
}

/// Decides whether `L(a)` is a UD code; otherwise returns two different
/// factorizations of the same word. The automaton must be free of
/// empty-label transitions.
pub fn ud_satisfies_witness(a: &Nfa) -> Result<Option<UdWitness>> {
    if a.has_epsilon_transitions() {
        return Err(Error::EpsilonTransitions);
    }
    let a = a.trim();
    if a.initials().iter().any(|i| a.finals().contains(i)) {
        // the empty word is in L: [ε] and [ε, ε] factor it differently
        return Ok(Some(UdWitness {
            left: vec![Word::empty()],
            right: vec![Word::empty(), Word::empty()],
        }));
    }
    let a = start_separated(&a);
    let zero = Word::from_chars("0");
    let one = Word::from_chars("1");
    let mut transitions = Vec::new();
    for t in a.transitions() {
        let label = t.label.clone().expect("start separation preserves epsilon-freeness");
        let input = Word::from_symbols(vec![label]);
        transitions.push(TdTransition {
            from: t.from,
            input: input.clone(),
            output: zero.clone(),
            to: t.to,
        });
        if a.finals().contains(&t.to) {
            for &i in a.initials() {
                transitions.push(TdTransition {
                    from: t.from,
                    input: input.clone(),
                    output: one.clone(),
                    to: i,
                });
            }
        }
    }
    let t = Transducer::new(
        a.n_states(),
        a.alphabet().clone(),
        alphabet("01"),
        transitions,
        a.initials().clone(),
        a.initials().clone(),
    )
    .expect("factorization encoder is well-formed");
    Ok(non_functional_witness(&t).map(|(w, x, y)| UdWitness {
        left: decode_factors(&w, &x),
        right: decode_factors(&w, &y),
    }))
}

/// Whether a UD code `L(a)` is maximal: true iff the infixes of `L(a)*`
/// cover the whole of `Σ*` (Schützenberger). Errors on non-UD input.
pub fn ud_is_maximal(a: &Nfa) -> Result<bool> {
    if ud_satisfies_witness(a)?.is_some() {
        return Err(Error::NotUdCode);
    }
    let t = infix_transducer(a.alphabet(), true);
    let infixes = t.run_on_nfa(&a.star());
    Ok(infixes.complement(a.alphabet())?.shortest_accepted_word().is_none())
}
