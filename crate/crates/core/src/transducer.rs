//! Finite transducers and the product constructions they support.
//!
//! General-form transducers are accepted at the API boundary; every algorithm
//! normalizes to standard form (each label side of length at most one) first.
//! Operations are pure and never mutate their operands; the empty-loop
//! augmentations required by the product constructions are performed on
//! copies.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::alphabet::{Alphabet, Symbol, Word};
use crate::error::{Error, Result};
use crate::nfa::{Nfa, NfaTransition, StateId};

/// A transition `(from, input/output, to)` with word labels.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct TdTransition {
    pub from: StateId,
    pub input: Word,
    pub output: Word,
    pub to: StateId,
}

impl TdTransition {
    /// `1 + |input| + |output|`.
    pub fn size(&self) -> usize {
        1 + self.input.len() + self.output.len()
    }
}

/// Which side of a transducer to project onto.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Input,
    Output,
}

/// A rational operation over transducer relations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RationalOp {
    Union,
    Concat,
    Star,
    Plus,
}

/// A finite transducer `(Q, Sigma, Delta, T, I, F)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Transducer {
    n_states: usize,
    input_alphabet: Alphabet,
    output_alphabet: Alphabet,
    transitions: Vec<TdTransition>,
    initials: BTreeSet<StateId>,
    finals: BTreeSet<StateId>,
    standard: bool,
}

impl Transducer {
    pub fn new(
        n_states: usize,
        input_alphabet: Alphabet,
        output_alphabet: Alphabet,
        mut transitions: Vec<TdTransition>,
        initials: BTreeSet<StateId>,
        finals: BTreeSet<StateId>,
    ) -> Result<Transducer> {
        for t in &transitions {
            if t.from >= n_states || t.to >= n_states {
                return Err(Error::InvalidMachine(format!(
                    "transition endpoint out of range: {} -> {}",
                    t.from, t.to
                )));
            }
            for s in t.input.symbols() {
                if !input_alphabet.contains(s) {
                    return Err(Error::InvalidMachine(format!(
                        "input label symbol `{s}` not in input alphabet"
                    )));
                }
            }
            for s in t.output.symbols() {
                if !output_alphabet.contains(s) {
                    return Err(Error::InvalidMachine(format!(
                        "output label symbol `{s}` not in output alphabet"
                    )));
                }
            }
        }
        if initials.iter().chain(finals.iter()).any(|&s| s >= n_states) {
            return Err(Error::InvalidMachine("initial/final state out of range".into()));
        }
        transitions.sort();
        transitions.dedup();
        let standard = transitions.iter().all(|t| t.input.len() <= 1 && t.output.len() <= 1);
        Ok(Transducer {
            n_states,
            input_alphabet,
            output_alphabet,
            transitions,
            initials,
            finals,
            standard,
        })
    }

    /// The identity relation over `alphabet`, including the empty word.
    pub fn identity(alphabet: &Alphabet) -> Transducer {
        let transitions = alphabet
            .iter()
            .map(|s| TdTransition {
                from: 0,
                input: Word::from_symbols(vec![s.clone()]),
                output: Word::from_symbols(vec![s.clone()]),
                to: 0,
            })
            .collect();
        Transducer::new(
            1,
            alphabet.clone(),
            alphabet.clone(),
            transitions,
            BTreeSet::from([0]),
            BTreeSet::from([0]),
        )
        .expect("identity transducer is well-formed")
    }

    pub fn n_states(&self) -> usize {
        self.n_states
    }

    pub fn input_alphabet(&self) -> &Alphabet {
        &self.input_alphabet
    }

    pub fn output_alphabet(&self) -> &Alphabet {
        &self.output_alphabet
    }

    pub fn transitions(&self) -> &[TdTransition] {
        &self.transitions
    }

    pub fn initials(&self) -> &BTreeSet<StateId> {
        &self.initials
    }

    pub fn finals(&self) -> &BTreeSet<StateId> {
        &self.finals
    }

    pub fn is_standard_form(&self) -> bool {
        self.standard
    }

    /// State count plus the sizes of all transitions.
    pub fn size(&self) -> usize {
        self.n_states + self.transitions.iter().map(TdTransition::size).sum::<usize>()
    }

    pub fn has_epsilon_input(&self) -> bool {
        self.transitions.iter().any(|t| t.input.is_empty())
    }

    /// An equivalent standard-form transducer. A long-label transition is
    /// split into a fresh chain pairing the i-th input symbol with the i-th
    /// output symbol; the shorter side is padded with empty labels at the tail.
    pub fn to_standard_form(&self) -> Transducer {
        if self.standard {
            return self.clone();
        }
        let mut transitions = Vec::new();
        let mut next = self.n_states;
        for t in &self.transitions {
            let steps = t.input.len().max(t.output.len());
            if steps <= 1 {
                transitions.push(t.clone());
                continue;
            }
            let mut prev = t.from;
            for i in 0..steps {
                let state = if i + 1 == steps {
                    t.to
                } else {
                    next += 1;
                    next - 1
                };
                let input = t.input.symbols().get(i).cloned();
                let output = t.output.symbols().get(i).cloned();
                transitions.push(TdTransition {
                    from: prev,
                    input: Word::from_symbols(input.into_iter().collect()),
                    output: Word::from_symbols(output.into_iter().collect()),
                    to: state,
                });
                prev = state;
            }
        }
        Transducer::new(
            next,
            self.input_alphabet.clone(),
            self.output_alphabet.clone(),
            transitions,
            self.initials.clone(),
            self.finals.clone(),
        )
        .expect("standard form construction is well-formed")
    }

    fn standardized(&self) -> Transducer {
        self.to_standard_form()
    }

    /// Swaps the input and output parts; realizes the inverse relation.
    pub fn inverse(&self) -> Transducer {
        let transitions = self
            .transitions
            .iter()
            .map(|t| TdTransition {
                from: t.from,
                input: t.output.clone(),
                output: t.input.clone(),
                to: t.to,
            })
            .collect();
        Transducer::new(
            self.n_states,
            self.output_alphabet.clone(),
            self.input_alphabet.clone(),
            transitions,
            self.initials.clone(),
            self.finals.clone(),
        )
        .expect("inverse is well-formed")
    }

    /// Adds `(p, eps/eps, p)` loops on every state.
    pub fn with_epsilon_loops(&self) -> Transducer {
        let mut transitions = self.transitions.clone();
        for p in 0..self.n_states {
            transitions.push(TdTransition {
                from: p,
                input: Word::empty(),
                output: Word::empty(),
                to: p,
            });
        }
        Transducer::new(
            self.n_states,
            self.input_alphabet.clone(),
            self.output_alphabet.clone(),
            transitions,
            self.initials.clone(),
            self.finals.clone(),
        )
        .expect("epsilon loops are well-formed")
    }

    /// Removes states off every accepting path, renumbering densely.
    pub fn trim(&self) -> Transducer {
        let forward = {
            let mut seen = self.initials.clone();
            let mut stack: Vec<StateId> = seen.iter().copied().collect();
            while let Some(p) = stack.pop() {
                for t in &self.transitions {
                    if t.from == p && seen.insert(t.to) {
                        stack.push(t.to);
                    }
                }
            }
            seen
        };
        let backward = {
            let mut seen = self.finals.clone();
            let mut stack: Vec<StateId> = seen.iter().copied().collect();
            while let Some(p) = stack.pop() {
                for t in &self.transitions {
                    if t.to == p && seen.insert(t.from) {
                        stack.push(t.from);
                    }
                }
            }
            seen
        };
        let keep: Vec<StateId> = (0..self.n_states)
            .filter(|s| forward.contains(s) && backward.contains(s))
            .collect();
        let index: BTreeMap<StateId, StateId> =
            keep.iter().enumerate().map(|(i, &s)| (s, i)).collect();
        let transitions = self
            .transitions
            .iter()
            .filter(|t| index.contains_key(&t.from) && index.contains_key(&t.to))
            .map(|t| TdTransition {
                from: index[&t.from],
                input: t.input.clone(),
                output: t.output.clone(),
                to: index[&t.to],
            })
            .collect();
        Transducer::new(
            keep.len(),
            self.input_alphabet.clone(),
            self.output_alphabet.clone(),
            transitions,
            self.initials.iter().filter_map(|s| index.get(s).copied()).collect(),
            self.finals.iter().filter_map(|s| index.get(s).copied()).collect(),
        )
        .expect("trim preserves well-formedness")
    }

    /// Pairs the transducer against an automaton; `on_input` selects which
    /// label side must match the automaton's labels. Uses the empty-loop
    /// discipline: if the matched side has empty labels, the automaton copy
    /// gets empty loops; if the automaton has empty transitions, the
    /// transducer copy gets empty/empty loops.
    fn product_with_nfa(&self, a: &Nfa, on_input: bool) -> Transducer {
        let t = self.standardized();
        let t_has_eps = t
            .transitions
            .iter()
            .any(|tr| if on_input { tr.input.is_empty() } else { tr.output.is_empty() });
        let a2 = if t_has_eps { a.with_epsilon_loops() } else { a.clone() };
        let t2 = if a.has_epsilon_transitions() { t.with_epsilon_loops() } else { t };

        let na = a2.n_states();
        let pair = |q: StateId, p: StateId| q * na + p;
        let mut transitions = Vec::new();
        for tt in &t2.transitions {
            let matched = if on_input { &tt.input } else { &tt.output };
            let label: Option<&Symbol> = matched.symbols().first();
            for ta in a2.transitions() {
                if ta.label.as_ref() == label {
                    transitions.push(TdTransition {
                        from: pair(tt.from, ta.from),
                        input: tt.input.clone(),
                        output: tt.output.clone(),
                        to: pair(tt.to, ta.to),
                    });
                }
            }
        }
        let mut initials = BTreeSet::new();
        for &q in &t2.initials {
            for &p in a2.initials() {
                initials.insert(pair(q, p));
            }
        }
        let mut finals = BTreeSet::new();
        for &q in &t2.finals {
            for &p in a2.finals() {
                finals.insert(pair(q, p));
            }
        }
        Transducer::new(
            t2.n_states * na,
            t2.input_alphabet.clone(),
            t2.output_alphabet.clone(),
            transitions,
            initials,
            finals,
        )
        .expect("product is well-formed")
        .trim()
    }

    /// The relation restricted to pairs whose input is accepted by `a`.
    pub fn in_intersection(&self, a: &Nfa) -> Transducer {
        self.product_with_nfa(a, true)
    }

    /// The relation restricted to pairs whose output is accepted by `a`.
    pub fn out_intersection(&self, a: &Nfa) -> Transducer {
        self.product_with_nfa(a, false)
    }

    /// The automaton accepting the union of `t(w)` over all `w` accepted by `a`.
    pub fn run_on_nfa(&self, a: &Nfa) -> Nfa {
        let product = self.in_intersection(a);
        product.project(Side::Output)
    }

    /// The automaton accepting `t(w)`.
    pub fn run_on_word(&self, w: &Word) -> Nfa {
        self.run_on_nfa(&Nfa::for_word(w, self.input_alphabet.clone()))
    }

    /// Whether `(u, v)` belongs to the realized relation. Symbols outside the
    /// alphabets make the answer trivially false.
    pub fn eval_pair(&self, u: &Word, v: &Word) -> bool {
        if u.symbols().iter().any(|s| !self.input_alphabet.contains(s))
            || v.symbols().iter().any(|s| !self.output_alphabet.contains(s))
        {
            return false;
        }
        let au = Nfa::for_word(u, self.input_alphabet.clone());
        let av = Nfa::for_word(v, self.output_alphabet.clone());
        self.in_intersection(&au).out_intersection(&av).nonempty_witness().is_some()
    }

    /// Drops one label side, leaving the domain or range automaton.
    pub fn project(&self, side: Side) -> Nfa {
        let t = self.standardized();
        let alphabet = match side {
            Side::Input => t.input_alphabet.clone(),
            Side::Output => t.output_alphabet.clone(),
        };
        let transitions = t
            .transitions
            .iter()
            .map(|tr| {
                let label = match side {
                    Side::Input => tr.input.symbols().first().cloned(),
                    Side::Output => tr.output.symbols().first().cloned(),
                };
                NfaTransition { from: tr.from, label, to: tr.to }
            })
            .collect();
        Nfa::new(t.n_states, alphabet, transitions, t.initials.clone(), t.finals.clone())
            .expect("projection is well-formed")
    }

    /// Composition of relations in diagrammatic order: `(x, z)` is related iff
    /// some `y` has `(x, y)` in `self` and `(y, z)` in `other`.
    pub fn compose(&self, other: &Transducer) -> Result<Transducer> {
        if !self.output_alphabet.is_subset(&other.input_alphabet) {
            return Err(Error::AlphabetMismatch(
                "output alphabet of the first operand must be contained in the input alphabet of the second".into(),
            ));
        }
        let t = self.standardized().with_epsilon_loops();
        let s = other.standardized().with_epsilon_loops();
        let ns = s.n_states;
        let pair = |p: StateId, q: StateId| p * ns + q;
        let mut transitions = Vec::new();
        for tt in &t.transitions {
            for ts in &s.transitions {
                if tt.output == ts.input {
                    transitions.push(TdTransition {
                        from: pair(tt.from, ts.from),
                        input: tt.input.clone(),
                        output: ts.output.clone(),
                        to: pair(tt.to, ts.to),
                    });
                }
            }
        }
        let mut initials = BTreeSet::new();
        for &p in &t.initials {
            for &q in &s.initials {
                initials.insert(pair(p, q));
            }
        }
        let mut finals = BTreeSet::new();
        for &p in &t.finals {
            for &q in &s.finals {
                finals.insert(pair(p, q));
            }
        }
        Ok(Transducer::new(
            t.n_states * ns,
            t.input_alphabet.clone(),
            s.output_alphabet.clone(),
            transitions,
            initials,
            finals,
        )
        .expect("composition is well-formed")
        .trim())
    }

    /// Union, concatenation, Kleene star, or plus of relations. `other` must
    /// be present exactly for the binary operations.
    pub fn rational_combine(op: RationalOp, t: &Transducer, other: Option<&Transducer>) -> Transducer {
        match op {
            RationalOp::Union => {
                let s = other.expect("union takes two operands");
                let offset = t.n_states;
                let mut transitions = t.transitions.clone();
                transitions.extend(s.transitions.iter().map(|tr| TdTransition {
                    from: tr.from + offset,
                    input: tr.input.clone(),
                    output: tr.output.clone(),
                    to: tr.to + offset,
                }));
                let mut initials = t.initials.clone();
                initials.extend(s.initials.iter().map(|&x| x + offset));
                let mut finals = t.finals.clone();
                finals.extend(s.finals.iter().map(|&x| x + offset));
                Transducer::new(
                    t.n_states + s.n_states,
                    t.input_alphabet.union(&s.input_alphabet).cloned().collect(),
                    t.output_alphabet.union(&s.output_alphabet).cloned().collect(),
                    transitions,
                    initials,
                    finals,
                )
                .expect("union is well-formed")
            }
            RationalOp::Concat => {
                let s = other.expect("concatenation takes two operands");
                let offset = t.n_states;
                let mut transitions = t.transitions.clone();
                transitions.extend(s.transitions.iter().map(|tr| TdTransition {
                    from: tr.from + offset,
                    input: tr.input.clone(),
                    output: tr.output.clone(),
                    to: tr.to + offset,
                }));
                for &f in &t.finals {
                    for &i in &s.initials {
                        transitions.push(TdTransition {
                            from: f,
                            input: Word::empty(),
                            output: Word::empty(),
                            to: i + offset,
                        });
                    }
                }
                Transducer::new(
                    t.n_states + s.n_states,
                    t.input_alphabet.union(&s.input_alphabet).cloned().collect(),
                    t.output_alphabet.union(&s.output_alphabet).cloned().collect(),
                    transitions,
                    t.initials.clone(),
                    s.finals.iter().map(|&x| x + offset).collect(),
                )
                .expect("concatenation is well-formed")
            }
            RationalOp::Plus => {
                let mut transitions = t.transitions.clone();
                for &f in &t.finals {
                    for &i in &t.initials {
                        transitions.push(TdTransition {
                            from: f,
                            input: Word::empty(),
                            output: Word::empty(),
                            to: i,
                        });
                    }
                }
                Transducer::new(
                    t.n_states,
                    t.input_alphabet.clone(),
                    t.output_alphabet.clone(),
                    transitions,
                    t.initials.clone(),
                    t.finals.clone(),
                )
                .expect("plus is well-formed")
            }
            RationalOp::Star => {
                let plus = Transducer::rational_combine(RationalOp::Plus, t, None);
                let hub = plus.n_states;
                let mut transitions = plus.transitions.clone();
                for &i in &plus.initials {
                    transitions.push(TdTransition {
                        from: hub,
                        input: Word::empty(),
                        output: Word::empty(),
                        to: i,
                    });
                }
                Transducer::new(
                    plus.n_states + 1,
                    plus.input_alphabet.clone(),
                    plus.output_alphabet.clone(),
                    transitions,
                    BTreeSet::from([hub]),
                    plus.finals.iter().copied().chain([hub]).collect(),
                )
                .expect("star is well-formed")
            }
        }
    }

    /// A word pair labeling a shortest accepting path (fewest transitions,
    /// ties by canonical transition order); `None` iff the relation is empty.
    pub fn nonempty_witness(&self) -> Option<(Word, Word)> {
        let t = self.standardized();
        let mut visited = vec![false; t.n_states];
        let mut queue: VecDeque<(StateId, Word, Word)> = VecDeque::new();
        for &i in &t.initials {
            if t.finals.contains(&i) {
                return Some((Word::empty(), Word::empty()));
            }
            if !visited[i] {
                visited[i] = true;
                queue.push_back((i, Word::empty(), Word::empty()));
            }
        }
        while let Some((p, u, v)) = queue.pop_front() {
            for tr in &t.transitions {
                if tr.from == p && !visited[tr.to] {
                    visited[tr.to] = true;
                    let nu = u.concat(&tr.input);
                    let nv = v.concat(&tr.output);
                    if t.finals.contains(&tr.to) {
                        return Some((nu, nv));
                    }
                    queue.push_back((tr.to, nu, nv));
                }
            }
        }
        None
    }
}

/// The proper-suffix transducer over an alphabet: on input `x` it outputs any
/// proper suffix of `x`.
pub fn proper_suffix_transducer(alphabet: &Alphabet) -> Transducer {
    let mut transitions = Vec::new();
    for s in alphabet {
        let sym = Word::from_symbols(vec![s.clone()]);
        transitions.push(TdTransition { from: 0, input: sym.clone(), output: Word::empty(), to: 0 });
        transitions.push(TdTransition { from: 0, input: sym.clone(), output: Word::empty(), to: 1 });
        transitions.push(TdTransition { from: 1, input: sym.clone(), output: sym.clone(), to: 1 });
    }
    Transducer::new(
        2,
        alphabet.clone(),
        alphabet.clone(),
        transitions,
        BTreeSet::from([0]),
        BTreeSet::from([1]),
    )
    .expect("suffix transducer is well-formed")
}
