//! Nondeterministic finite automata with optional empty-label transitions.
//!
//! States are canonical dense indexes `0..n`. All operations are pure and
//! return new machines; iteration order over states and transitions is
//! deterministic, which makes every downstream witness reproducible.
//! Degenerate machines (no states, or no initial states) are valid and
//! denote the empty language.

use std::cmp::Reverse;
use std::collections::{BTreeMap, BTreeSet, BinaryHeap};

use crate::alphabet::{Alphabet, Symbol, Word};
use crate::error::{Error, Result};

/// Dense state index.
pub type StateId = usize;

/// A transition `(from, label, to)`; `label == None` is the empty label.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct NfaTransition {
    pub from: StateId,
    pub label: Option<Symbol>,
    pub to: StateId,
}

/// A finite automaton `(Q, Sigma, T, I, F)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Nfa {
    n_states: usize,
    alphabet: Alphabet,
    transitions: Vec<NfaTransition>,
    initials: BTreeSet<StateId>,
    finals: BTreeSet<StateId>,
}

impl Nfa {
    /// Builds an automaton, validating that every transition endpoint is a
    /// declared state, every non-empty label is in the alphabet, and the
    /// initial/final sets are subsets of the states.
    pub fn new(
        n_states: usize,
        alphabet: Alphabet,
        mut transitions: Vec<NfaTransition>,
        initials: BTreeSet<StateId>,
        finals: BTreeSet<StateId>,
    ) -> Result<Nfa> {
        for t in &transitions {
            if t.from >= n_states || t.to >= n_states {
                return Err(Error::InvalidMachine(format!(
                    "transition endpoint out of range: {} -> {}",
                    t.from, t.to
                )));
            }
            if let Some(sym) = &t.label {
                if !alphabet.contains(sym) {
                    return Err(Error::InvalidMachine(format!(
                        "transition label `{sym}` not in alphabet"
                    )));
                }
            }
        }
        if initials.iter().chain(finals.iter()).any(|&s| s >= n_states) {
            return Err(Error::InvalidMachine("initial/final state out of range".into()));
        }
        transitions.sort();
        transitions.dedup();
        Ok(Nfa { n_states, alphabet, transitions, initials, finals })
    }

    /// The empty language over the given alphabet.
    pub fn empty(alphabet: Alphabet) -> Nfa {
        Nfa {
            n_states: 0,
            alphabet,
            transitions: Vec::new(),
            initials: BTreeSet::new(),
            finals: BTreeSet::new(),
        }
    }

    /// `Sigma*` over the given alphabet.
    pub fn universal(alphabet: Alphabet) -> Nfa {
        let transitions = alphabet
            .iter()
            .map(|s| NfaTransition { from: 0, label: Some(s.clone()), to: 0 })
            .collect();
        Nfa {
            n_states: 1,
            alphabet,
            transitions,
            initials: BTreeSet::from([0]),
            finals: BTreeSet::from([0]),
        }
    }

    /// The singleton language `{w}`; the alphabet is extended with `w`'s symbols.
    pub fn for_word(w: &Word, alphabet: Alphabet) -> Nfa {
        let mut alphabet = alphabet;
        alphabet.extend(w.symbols().iter().cloned());
        let transitions = w
            .symbols()
            .iter()
            .enumerate()
            .map(|(i, s)| NfaTransition { from: i, label: Some(s.clone()), to: i + 1 })
            .collect();
        Nfa {
            n_states: w.len() + 1,
            alphabet,
            transitions,
            initials: BTreeSet::from([0]),
            finals: BTreeSet::from([w.len()]),
        }
    }

    /// A trie automaton for a finite language.
    pub fn from_words<'a, I>(words: I, alphabet: Alphabet) -> Nfa
    where
        I: IntoIterator<Item = &'a Word>,
    {
        let mut alphabet = alphabet;
        let mut transitions: Vec<NfaTransition> = Vec::new();
        let mut finals = BTreeSet::new();
        // trie nodes keyed by word prefix
        let mut nodes: BTreeMap<Word, StateId> = BTreeMap::new();
        nodes.insert(Word::empty(), 0);
        let mut next = 1;
        for w in words {
            alphabet.extend(w.symbols().iter().cloned());
            let mut prefix = Word::empty();
            let mut state = 0;
            for s in w.symbols() {
                let parent = state;
                prefix.push(s.clone());
                state = *nodes.entry(prefix.clone()).or_insert_with(|| {
                    let id = next;
                    next += 1;
                    id
                });
                let tr = NfaTransition { from: parent, label: Some(s.clone()), to: state };
                if !transitions.contains(&tr) {
                    transitions.push(tr);
                }
            }
            finals.insert(state);
        }
        let mut transitions = transitions;
        transitions.sort();
        Nfa {
            n_states: next,
            alphabet,
            transitions,
            initials: BTreeSet::from([0]),
            finals,
        }
    }

    pub fn n_states(&self) -> usize {
        self.n_states
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn transitions(&self) -> &[NfaTransition] {
        &self.transitions
    }

    pub fn initials(&self) -> &BTreeSet<StateId> {
        &self.initials
    }

    pub fn finals(&self) -> &BTreeSet<StateId> {
        &self.finals
    }

    pub fn has_epsilon_transitions(&self) -> bool {
        self.transitions.iter().any(|t| t.label.is_none())
    }

    /// Adds `(p, eps, p)` loops on every state.
    pub fn with_epsilon_loops(&self) -> Nfa {
        let mut out = self.clone();
        for p in 0..self.n_states {
            out.transitions.push(NfaTransition { from: p, label: None, to: p });
        }
        out.transitions.sort();
        out.transitions.dedup();
        out
    }

    fn closure(&self, states: &BTreeSet<StateId>) -> BTreeSet<StateId> {
        let mut seen = states.clone();
        let mut stack: Vec<StateId> = states.iter().copied().collect();
        while let Some(p) = stack.pop() {
            for t in &self.transitions {
                if t.from == p && t.label.is_none() && seen.insert(t.to) {
                    stack.push(t.to);
                }
            }
        }
        seen
    }

    fn step(&self, states: &BTreeSet<StateId>, sym: &Symbol) -> BTreeSet<StateId> {
        let mut next = BTreeSet::new();
        for t in &self.transitions {
            if t.label.as_ref() == Some(sym) && states.contains(&t.from) {
                next.insert(t.to);
            }
        }
        next
    }

    /// Whether `w` labels an accepting path. Symbols outside the alphabet make
    /// acceptance trivially false, not an error.
    pub fn accepts(&self, w: &Word) -> bool {
        let mut current = self.closure(&self.initials);
        for sym in w.symbols() {
            if !self.alphabet.contains(sym) {
                return false;
            }
            current = self.closure(&self.step(&current, sym));
            if current.is_empty() {
                return false;
            }
        }
        current.iter().any(|s| self.finals.contains(s))
    }

    /// An equivalent automaton with no empty-label transitions.
    pub fn eliminate_epsilon(&self) -> Nfa {
        if !self.has_epsilon_transitions() {
            return self.clone();
        }
        let mut transitions = Vec::new();
        let mut finals = BTreeSet::new();
        for p in 0..self.n_states {
            let cl = self.closure(&BTreeSet::from([p]));
            if cl.iter().any(|s| self.finals.contains(s)) {
                finals.insert(p);
            }
            for t in &self.transitions {
                if let Some(sym) = &t.label {
                    if cl.contains(&t.from) {
                        transitions.push(NfaTransition {
                            from: p,
                            label: Some(sym.clone()),
                            to: t.to,
                        });
                    }
                }
            }
        }
        transitions.sort();
        transitions.dedup();
        Nfa {
            n_states: self.n_states,
            alphabet: self.alphabet.clone(),
            transitions,
            initials: self.initials.clone(),
            finals,
        }
    }

    /// Keeps only states that lie on some accepting path, renumbering densely
    /// in old index order.
    pub fn trim(&self) -> Nfa {
        let reachable = self.reach(&self.initials, false);
        let coreachable = self.reach(&self.finals, true);
        let keep: Vec<StateId> = (0..self.n_states)
            .filter(|s| reachable.contains(s) && coreachable.contains(s))
            .collect();
        let index: BTreeMap<StateId, StateId> =
            keep.iter().enumerate().map(|(i, &s)| (s, i)).collect();
        let transitions = self
            .transitions
            .iter()
            .filter(|t| index.contains_key(&t.from) && index.contains_key(&t.to))
            .map(|t| NfaTransition { from: index[&t.from], label: t.label.clone(), to: index[&t.to] })
            .collect();
        Nfa {
            n_states: keep.len(),
            alphabet: self.alphabet.clone(),
            transitions,
            initials: self.initials.iter().filter_map(|s| index.get(s).copied()).collect(),
            finals: self.finals.iter().filter_map(|s| index.get(s).copied()).collect(),
        }
    }

    fn reach(&self, from: &BTreeSet<StateId>, reverse: bool) -> BTreeSet<StateId> {
        let mut seen = from.clone();
        let mut stack: Vec<StateId> = from.iter().copied().collect();
        while let Some(p) = stack.pop() {
            for t in &self.transitions {
                let (src, dst) = if reverse { (t.to, t.from) } else { (t.from, t.to) };
                if src == p && seen.insert(dst) {
                    stack.push(dst);
                }
            }
        }
        seen
    }

    /// Pairwise product accepting the intersection. Both operands must be free
    /// of empty-label transitions; product states are pairs in row-major order.
    pub fn intersect(&self, other: &Nfa) -> Result<Nfa> {
        if self.has_epsilon_transitions() || other.has_epsilon_transitions() {
            return Err(Error::EpsilonTransitions);
        }
        let nb = other.n_states;
        let pair = |p: StateId, q: StateId| p * nb + q;
        let mut transitions = Vec::new();
        for ta in &self.transitions {
            for tb in &other.transitions {
                if ta.label == tb.label {
                    transitions.push(NfaTransition {
                        from: pair(ta.from, tb.from),
                        label: ta.label.clone(),
                        to: pair(ta.to, tb.to),
                    });
                }
            }
        }
        let mut initials = BTreeSet::new();
        let mut finals = BTreeSet::new();
        for &p in &self.initials {
            for &q in &other.initials {
                initials.insert(pair(p, q));
            }
        }
        for &p in &self.finals {
            for &q in &other.finals {
                finals.insert(pair(p, q));
            }
        }
        let alphabet: Alphabet = self.alphabet.union(&other.alphabet).cloned().collect();
        transitions.sort();
        transitions.dedup();
        Ok(Nfa {
            n_states: self.n_states * nb,
            alphabet,
            transitions,
            initials,
            finals,
        })
    }

    /// Disjoint union accepting `L(self) ∪ L(other)` over the union alphabet.
    pub fn union(&self, other: &Nfa) -> Nfa {
        let offset = self.n_states;
        let mut transitions = self.transitions.clone();
        transitions.extend(other.transitions.iter().map(|t| NfaTransition {
            from: t.from + offset,
            label: t.label.clone(),
            to: t.to + offset,
        }));
        transitions.sort();
        let mut initials = self.initials.clone();
        initials.extend(other.initials.iter().map(|&s| s + offset));
        let mut finals = self.finals.clone();
        finals.extend(other.finals.iter().map(|&s| s + offset));
        Nfa {
            n_states: self.n_states + other.n_states,
            alphabet: self.alphabet.union(&other.alphabet).cloned().collect(),
            transitions,
            initials,
            finals,
        }
    }

    /// Kleene star, including the empty word. A fresh initial-final state is
    /// linked by empty labels to the old initials and from the old finals.
    pub fn star(&self) -> Nfa {
        let hub = self.n_states;
        let mut transitions = self.transitions.clone();
        for &i in &self.initials {
            transitions.push(NfaTransition { from: hub, label: None, to: i });
        }
        for &f in &self.finals {
            transitions.push(NfaTransition { from: f, label: None, to: hub });
        }
        transitions.sort();
        Nfa {
            n_states: self.n_states + 1,
            alphabet: self.alphabet.clone(),
            transitions,
            initials: BTreeSet::from([hub]),
            finals: BTreeSet::from([hub]),
        }
    }

    /// `alphabet* \ L(self)`. The alphabet parameter must contain the
    /// machine's own alphabet; the complement is taken relative to it.
    pub fn complement(&self, alphabet: &Alphabet) -> Result<Nfa> {
        if !self.alphabet.is_subset(alphabet) {
            return Err(Error::AlphabetMismatch(
                "complement alphabet must contain the machine's alphabet".into(),
            ));
        }
        let base = self.eliminate_epsilon();
        // subset construction, complete by construction (the empty subset is the sink)
        let symbols: Vec<&Symbol> = alphabet.iter().collect();
        let start: BTreeSet<StateId> = base.initials.clone();
        let mut ids: BTreeMap<BTreeSet<StateId>, StateId> = BTreeMap::new();
        ids.insert(start.clone(), 0);
        let mut order = vec![start];
        let mut transitions = Vec::new();
        let mut i = 0;
        while i < order.len() {
            let subset = order[i].clone();
            for sym in &symbols {
                let next = base.step(&subset, sym);
                let next_id = *ids.entry(next.clone()).or_insert_with(|| {
                    order.push(next.clone());
                    order.len() - 1
                });
                transitions.push(NfaTransition {
                    from: i,
                    label: Some((*sym).clone()),
                    to: next_id,
                });
            }
            i += 1;
        }
        let finals: BTreeSet<StateId> = order
            .iter()
            .enumerate()
            .filter(|(_, subset)| !subset.iter().any(|s| base.finals.contains(s)))
            .map(|(id, _)| id)
            .collect();
        transitions.sort();
        Ok(Nfa {
            n_states: order.len(),
            alphabet: alphabet.clone(),
            transitions,
            initials: BTreeSet::from([0]),
            finals,
        })
    }

    /// Exactly the accepted words of length at most `n`.
    pub fn enumerate_words(&self, n: usize) -> BTreeSet<Word> {
        let base = self.eliminate_epsilon();
        let mut out = BTreeSet::new();
        let start: BTreeSet<StateId> = base.initials.clone();
        let mut frontier: Vec<(Word, BTreeSet<StateId>)> = vec![(Word::empty(), start)];
        for depth in 0..=n {
            let mut next_frontier = Vec::new();
            for (word, states) in &frontier {
                if states.iter().any(|s| base.finals.contains(s)) {
                    out.insert(word.clone());
                }
                if depth < n {
                    for sym in &base.alphabet {
                        let next = base.step(states, sym);
                        if !next.is_empty() {
                            next_frontier.push((word.append_opt(Some(sym)), next));
                        }
                    }
                }
            }
            frontier = next_frontier;
        }
        out
    }

    /// A shortest accepted word, ties broken by canonical symbol order; `None`
    /// iff the language is empty.
    pub fn shortest_accepted_word(&self) -> Option<Word> {
        let base = self.eliminate_epsilon();
        // settle each state once in radix order of its cheapest incoming word
        let mut heap: BinaryHeap<Reverse<(usize, Word, StateId)>> = BinaryHeap::new();
        let mut settled = vec![false; base.n_states];
        for &i in &base.initials {
            heap.push(Reverse((0, Word::empty(), i)));
        }
        while let Some(Reverse((len, word, state))) = heap.pop() {
            if settled[state] {
                continue;
            }
            settled[state] = true;
            if base.finals.contains(&state) {
                return Some(word);
            }
            for t in &base.transitions {
                if t.from == state && !settled[t.to] {
                    heap.push(Reverse((len + 1, word.append_opt(t.label.as_ref()), t.to)));
                }
            }
        }
        None
    }
}
