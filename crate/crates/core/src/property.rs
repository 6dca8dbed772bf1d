//! Code properties: objects pairing a describing transducer with a kind and a
//! set of names, the conjunction lattice over those names, and the
//! witness-producing satisfaction and maximality procedures.
//!
//! Property objects are immutable and shared; conjunction returns an operand
//! unchanged (same object) whenever name normalization collapses the union to
//! it, so `&` is idempotent and absorbing at the object level.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sha2::{Digest, Sha256};

use crate::alphabet::{Alphabet, Symbol, Word};
use crate::error::{Error, Result};
use crate::fado::serialize_transducer;
use crate::functionality::non_functional_witness;
use crate::nfa::Nfa;
use crate::trajectory::compile_trajectory;
use crate::transducer::{RationalOp, Side, TdTransition, Transducer};

/// How the describing transducer defines the property.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PropertyKind {
    /// `t(L) ∩ L = ∅`; `t` is claimed to satisfy `w ∉ t(w)` for all `w`.
    InputAltering,
    /// No `L`-word maps under `t` to a different `L`-word; `t` is claimed
    /// input-preserving.
    ErrorDetecting,
    /// `t`-neighborhoods of distinct `L`-words are disjoint.
    ErrorCorrecting,
}

/// The five classic deletion-pattern properties.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum FixedProperty {
    Prefix,
    Suffix,
    Infix,
    Outfix,
    Hypercode,
}

impl FixedProperty {
    pub const ALL: [FixedProperty; 5] = [
        FixedProperty::Prefix,
        FixedProperty::Suffix,
        FixedProperty::Infix,
        FixedProperty::Outfix,
        FixedProperty::Hypercode,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FixedProperty::Prefix => "prefix",
            FixedProperty::Suffix => "suffix",
            FixedProperty::Infix => "infix",
            FixedProperty::Outfix => "outfix",
            FixedProperty::Hypercode => "hypercode",
        }
    }

    pub fn parse(name: &str) -> Option<FixedProperty> {
        FixedProperty::ALL.into_iter().find(|f| f.name() == name)
    }

    /// `self < other` in the containment order: every `self`-code is an
    /// `other`-code and not conversely.
    pub fn strictly_below(self, other: FixedProperty) -> bool {
        use FixedProperty::*;
        matches!(
            (self, other),
            (Hypercode, Infix)
                | (Hypercode, Outfix)
                | (Hypercode, Prefix)
                | (Hypercode, Suffix)
                | (Infix, Prefix)
                | (Infix, Suffix)
                | (Outfix, Prefix)
                | (Outfix, Suffix)
        )
    }
}

/// A property identity: a fixed name or a canonical digest of the describing
/// transducer's serialized text. Digest names never subsume each other.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum PropertyName {
    Fixed(FixedProperty),
    Digest(String),
}

impl fmt::Display for PropertyName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PropertyName::Fixed(p) => f.write_str(p.name()),
            PropertyName::Digest(d) => f.write_str(d),
        }
    }
}

#[derive(Debug)]
struct Inner {
    kind: PropertyKind,
    transducer: Transducer,
    alphabet: Alphabet,
    names: BTreeSet<PropertyName>,
}

/// An immutable code-property object.
#[derive(Debug, Clone)]
pub struct CodeProperty(Arc<Inner>);

/// A witness of non-satisfaction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SatisfactionWitness {
    /// `(u, v)`: both in `L`, `u ≠ v`, and `v ∈ t(u)`.
    Pair(Word, Word),
    /// `(z, u, v)`: `u, v ∈ L`, `u ≠ v`, `z ∈ t(u) ∩ t(v)`.
    Triple(Word, Word, Word),
}

/// Removes every fixed name that is implied by a strictly stronger fixed name
/// in the same set.
fn normalize_names(names: &BTreeSet<PropertyName>) -> BTreeSet<PropertyName> {
    names
        .iter()
        .filter(|n| {
            let PropertyName::Fixed(f) = n else { return true };
            !names.iter().any(
                |m| matches!(m, PropertyName::Fixed(g) if g.strictly_below(*f)),
            )
        })
        .cloned()
        .collect()
}

fn digest_name(t: &Transducer) -> PropertyName {
    let text = serialize_transducer(t);
    let hash = Sha256::digest(text.as_bytes());
    let hex: String = hash.iter().map(|b| format!("{b:02x}")).collect();
    PropertyName::Digest(hex[..16].to_string())
}

fn sym_word(s: &Symbol) -> Word {
    Word::from_symbols(vec![s.clone()])
}

/// The transducer outputting every infix of its input: reflexive includes the
/// whole word and the empty word, non-reflexive only proper infixes (at least
/// one symbol deleted).
pub fn infix_transducer(alphabet: &Alphabet, reflexive: bool) -> Transducer {
    let eps = Word::empty();
    if reflexive {
        // delete prefix / copy / delete suffix
        let mut transitions = vec![
            TdTransition { from: 0, input: eps.clone(), output: eps.clone(), to: 1 },
            TdTransition { from: 1, input: eps.clone(), output: eps.clone(), to: 2 },
        ];
        for s in alphabet {
            transitions.push(TdTransition { from: 0, input: sym_word(s), output: eps.clone(), to: 0 });
            transitions.push(TdTransition { from: 1, input: sym_word(s), output: sym_word(s), to: 1 });
            transitions.push(TdTransition { from: 2, input: sym_word(s), output: eps.clone(), to: 2 });
        }
        return Transducer::new(
            3,
            alphabet.clone(),
            alphabet.clone(),
            transitions,
            BTreeSet::from([0]),
            BTreeSet::from([2]),
        )
        .expect("infix transducer is well-formed");
    }
    // proper variant: same three phases crossed with a deleted-something flag;
    // states 2k = phase k without deletion, 2k+1 = with
    let mut transitions = vec![
        TdTransition { from: 0, input: eps.clone(), output: eps.clone(), to: 2 },
        TdTransition { from: 1, input: eps.clone(), output: eps.clone(), to: 3 },
        TdTransition { from: 2, input: eps.clone(), output: eps.clone(), to: 4 },
        TdTransition { from: 3, input: eps.clone(), output: eps.clone(), to: 5 },
    ];
    for s in alphabet {
        for pre in [0, 1] {
            transitions.push(TdTransition { from: pre, input: sym_word(s), output: eps.clone(), to: 1 });
        }
        for mid in [2, 3] {
            transitions.push(TdTransition { from: mid, input: sym_word(s), output: sym_word(s), to: mid });
        }
        for post in [4, 5] {
            transitions.push(TdTransition { from: post, input: sym_word(s), output: eps.clone(), to: 5 });
        }
    }
    Transducer::new(
        6,
        alphabet.clone(),
        alphabet.clone(),
        transitions,
        BTreeSet::from([0]),
        BTreeSet::from([5]),
    )
    .expect("proper infix transducer is well-formed")
}

fn fixed_transducer(f: FixedProperty, alphabet: &Alphabet) -> Transducer {
    let eps = Word::empty();
    let two_state = |copy_first: bool| {
        let mut transitions = Vec::new();
        for s in alphabet {
            let (loop0, loop1) = if copy_first {
                (sym_word(s), eps.clone()) // copy then delete: proper prefixes
            } else {
                (eps.clone(), sym_word(s)) // delete then copy: proper suffixes
            };
            transitions.push(TdTransition { from: 0, input: sym_word(s), output: loop0, to: 0 });
            transitions.push(TdTransition { from: 0, input: sym_word(s), output: eps.clone(), to: 1 });
            transitions.push(TdTransition { from: 1, input: sym_word(s), output: loop1, to: 1 });
        }
        Transducer::new(
            2,
            alphabet.clone(),
            alphabet.clone(),
            transitions,
            BTreeSet::from([0]),
            BTreeSet::from([1]),
        )
        .expect("fixed transducer is well-formed")
    };
    match f {
        FixedProperty::Prefix => two_state(true),
        FixedProperty::Suffix => two_state(false),
        FixedProperty::Infix => infix_transducer(alphabet, false),
        FixedProperty::Outfix => {
            // copy / delete a nonempty contiguous block / copy
            let mut transitions =
                vec![TdTransition { from: 1, input: eps.clone(), output: eps.clone(), to: 2 }];
            for s in alphabet {
                transitions.push(TdTransition { from: 0, input: sym_word(s), output: sym_word(s), to: 0 });
                transitions.push(TdTransition { from: 0, input: sym_word(s), output: eps.clone(), to: 1 });
                transitions.push(TdTransition { from: 1, input: sym_word(s), output: eps.clone(), to: 1 });
                transitions.push(TdTransition { from: 2, input: sym_word(s), output: sym_word(s), to: 2 });
            }
            Transducer::new(
                3,
                alphabet.clone(),
                alphabet.clone(),
                transitions,
                BTreeSet::from([0]),
                BTreeSet::from([2]),
            )
            .expect("outfix transducer is well-formed")
        }
        FixedProperty::Hypercode => {
            // copy-or-delete with a deleted-something flag
            let mut transitions = Vec::new();
            for s in alphabet {
                transitions.push(TdTransition { from: 0, input: sym_word(s), output: sym_word(s), to: 0 });
                transitions.push(TdTransition { from: 0, input: sym_word(s), output: eps.clone(), to: 1 });
                transitions.push(TdTransition { from: 1, input: sym_word(s), output: sym_word(s), to: 1 });
                transitions.push(TdTransition { from: 1, input: sym_word(s), output: eps.clone(), to: 1 });
            }
            Transducer::new(
                2,
                alphabet.clone(),
                alphabet.clone(),
                transitions,
                BTreeSet::from([0]),
                BTreeSet::from([1]),
            )
            .expect("hypercode transducer is well-formed")
        }
    }
}

/// Builds one of the five fixed properties over `alphabet`.
pub fn build_fixed_property(f: FixedProperty, alphabet: &Alphabet) -> CodeProperty {
    CodeProperty(Arc::new(Inner {
        kind: PropertyKind::InputAltering,
        transducer: fixed_transducer(f, alphabet).to_standard_form(),
        alphabet: alphabet.clone(),
        names: BTreeSet::from([PropertyName::Fixed(f)]),
    }))
}

/// Builds an input-altering property from a trajectory expression. The
/// compiled trajectory automaton (restricted to at least one deletion) is
/// relabeled: a 0-transition copies any symbol, a 1-transition deletes one.
pub fn build_trajectory_property(expr: &str, alphabet: &Alphabet) -> Result<CodeProperty> {
    let traj = compile_trajectory(expr)?;
    let keep = Symbol::from_char('0');
    let mut transitions = Vec::new();
    for tr in traj.transitions() {
        let copies = tr.label.as_ref() == Some(&keep);
        for s in alphabet {
            transitions.push(TdTransition {
                from: tr.from,
                input: sym_word(s),
                output: if copies { sym_word(s) } else { Word::empty() },
                to: tr.to,
            });
        }
    }
    let t = Transducer::new(
        traj.n_states(),
        alphabet.clone(),
        alphabet.clone(),
        transitions,
        traj.initials().clone(),
        traj.finals().clone(),
    )
    .expect("relabeled trajectory transducer is well-formed");
    let names = BTreeSet::from([digest_name(&t)]);
    Ok(CodeProperty(Arc::new(Inner {
        kind: PropertyKind::InputAltering,
        transducer: t,
        alphabet: alphabet.clone(),
        names,
    })))
}

/// Wraps a caller-supplied transducer as a property. The input-altering /
/// input-preserving claim implied by `kind` is trusted, not verified (see
/// [`input_altering_violation`] for a bounded diagnostic).
pub fn build_transducer_property(kind: PropertyKind, t: &Transducer) -> Result<CodeProperty> {
    if t.input_alphabet() != t.output_alphabet() {
        return Err(Error::AlphabetMismatch(
            "a property transducer needs equal input and output alphabets".into(),
        ));
    }
    let t = t.to_standard_form();
    let names = BTreeSet::from([digest_name(&t)]);
    Ok(CodeProperty(Arc::new(Inner {
        kind,
        alphabet: t.input_alphabet().clone(),
        transducer: t,
        names,
    })))
}

/// Bounded diagnostic for the unverifiable input-altering claim: returns a
/// word `w` with `|w| ≤ max_len` and `w ∈ t(w)`, if any.
pub fn input_altering_violation(t: &Transducer, max_len: usize) -> Option<Word> {
    let dom = t.project(Side::Input);
    dom.enumerate_words(max_len).into_iter().find(|w| t.eval_pair(w, w))
}

/// Converts an input-altering transducer to an input-preserving one defining
/// the same property in error-detecting form: union with the identity.
pub fn iat_to_ed(t: &Transducer) -> Transducer {
    let id = Transducer::identity(t.input_alphabet());
    Transducer::rational_combine(RationalOp::Union, t, Some(&id))
}

/// Converts an error-correcting channel to the error-detecting transducer
/// relating `(u, v)` iff `t(u) ∩ t(v) ≠ ∅`.
pub fn ec_to_ed(t: &Transducer) -> Transducer {
    t.compose(&t.inverse()).expect("t and its inverse compose")
}

impl CodeProperty {
    pub fn kind(&self) -> PropertyKind {
        self.0.kind
    }

    pub fn transducer(&self) -> &Transducer {
        &self.0.transducer
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.0.alphabet
    }

    pub fn names(&self) -> &BTreeSet<PropertyName> {
        &self.0.names
    }

    /// Object identity (not name equality).
    pub fn same_object(&self, other: &CodeProperty) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
    }
}

/// Conjunction of two properties over the same alphabet. Names are unioned
/// and normalized; if the result equals one operand's names, that operand is
/// returned unchanged. Otherwise the transducers are unioned, downgrading to
/// error-detecting form when the kinds are mixed.
pub fn conjunction(p: &CodeProperty, q: &CodeProperty) -> Result<CodeProperty> {
    if p.alphabet() != q.alphabet() {
        return Err(Error::AlphabetMismatch(
            "conjunction operands must share an alphabet".into(),
        ));
    }
    let union: BTreeSet<PropertyName> = p.names().union(q.names()).cloned().collect();
    let names = normalize_names(&union);
    if &names == p.names() {
        return Ok(p.clone());
    }
    if &names == q.names() {
        return Ok(q.clone());
    }
    use PropertyKind::*;
    let (kind, t) = if p.kind() == InputAltering && q.kind() == InputAltering {
        (
            InputAltering,
            Transducer::rational_combine(
                RationalOp::Union,
                p.transducer(),
                Some(q.transducer()),
            ),
        )
    } else {
        let to_ed = |r: &CodeProperty| match r.kind() {
            InputAltering => iat_to_ed(r.transducer()),
            ErrorDetecting => r.transducer().clone(),
            ErrorCorrecting => ec_to_ed(r.transducer()),
        };
        (
            ErrorDetecting,
            Transducer::rational_combine(RationalOp::Union, &to_ed(p), Some(&to_ed(q))),
        )
    };
    Ok(CodeProperty(Arc::new(Inner {
        kind,
        transducer: t.to_standard_form(),
        alphabet: p.alphabet().clone(),
        names,
    })))
}

/// Sound partial order on properties: `true` implies `property(p) ⊆
/// property(q)`; `false` does not imply non-containment except among the five
/// fixed properties.
pub fn leq(p: &CodeProperty, q: &CodeProperty) -> Result<bool> {
    if p.alphabet() != q.alphabet() {
        return Err(Error::AlphabetMismatch("leq operands must share an alphabet".into()));
    }
    let pn = normalize_names(p.names());
    let qn = normalize_names(q.names());
    Ok(qn.iter().all(|n| {
        pn.contains(n)
            || matches!(n, PropertyName::Fixed(f) if pn.iter().any(
                |m| matches!(m, PropertyName::Fixed(g) if g.strictly_below(*f))))
    }))
}

fn check_language_alphabet(p: &CodeProperty, a: &Nfa) -> Result<()> {
    if !a.alphabet().is_subset(p.alphabet()) {
        return Err(Error::AlphabetMismatch(
            "language alphabet must be contained in the property alphabet".into(),
        ));
    }
    Ok(())
}

/// Decides whether `L(a)` satisfies `p`, returning a concrete witness of
/// failure otherwise.
pub fn satisfies_witness(p: &CodeProperty, a: &Nfa) -> Result<Option<SatisfactionWitness>> {
    check_language_alphabet(p, a)?;
    let a = a.eliminate_epsilon().trim();
    let t = p.transducer();
    match p.kind() {
        PropertyKind::InputAltering => {
            let x = t.in_intersection(&a).out_intersection(&a);
            Ok(x.nonempty_witness().map(|(u, v)| SatisfactionWitness::Pair(u, v)))
        }
        PropertyKind::ErrorDetecting => {
            let x = t.in_intersection(&a).out_intersection(&a);
            Ok(non_functional_witness(&x).map(|(w, z, z2)| {
                if w == z {
                    SatisfactionWitness::Pair(w, z2)
                } else {
                    SatisfactionWitness::Pair(w, z)
                }
            }))
        }
        PropertyKind::ErrorCorrecting => {
            let x = t.inverse().out_intersection(&a);
            Ok(non_functional_witness(&x)
                .map(|(z, u, v)| SatisfactionWitness::Triple(z, u, v)))
        }
    }
}

/// Decides whether `L(a)` is `p`-maximal within `L(b)` (default: within
/// `Σ*`), returning a shortest addable word otherwise. Errors if `L(a)` does
/// not satisfy `p` in the first place.
pub fn maximal_witness(p: &CodeProperty, a: &Nfa, b: Option<&Nfa>) -> Result<Option<Word>> {
    if satisfies_witness(p, a)?.is_some() {
        return Err(Error::PropertyNotSatisfied);
    }
    let universe = match b {
        Some(b) => {
            check_language_alphabet(p, b)?;
            b.eliminate_epsilon()
        }
        None => Nfa::universal(p.alphabet().clone()),
    };
    let t = match p.kind() {
        PropertyKind::ErrorCorrecting => ec_to_ed(p.transducer()),
        _ => p.transducer().clone(),
    };
    let a = a.eliminate_epsilon().trim();
    let closed = a.union(&t.run_on_nfa(&a)).union(&t.inverse().run_on_nfa(&a));
    let addable = closed.complement(p.alphabet())?.intersect(&universe)?;
    Ok(addable.shortest_accepted_word())
}

/// Randomly grows a language of words of length `len` satisfying `p`, up to
/// `n` words, giving up after `max_trials` consecutive rejected candidates.
/// Deterministic for a fixed seed.
pub fn construct_language(
    p: &CodeProperty,
    n: usize,
    len: usize,
    max_trials: usize,
    seed: u64,
) -> BTreeSet<Word> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let symbols: Vec<Symbol> = p.alphabet().iter().cloned().collect();
    let sample = |rng: &mut ChaCha8Rng| {
        Word::from_symbols((0..len).map(|_| symbols[rng.gen_range(0..symbols.len())].clone()).collect())
    };
    let satisfied = |l: &BTreeSet<Word>| {
        let a = Nfa::from_words(l.iter(), p.alphabet().clone());
        matches!(satisfies_witness(p, &a), Ok(None))
    };
    let mut language = BTreeSet::new();
    let mut failures = 0;
    while language.len() < n && failures < max_trials {
        let w = sample(&mut rng);
        if language.contains(&w) {
            failures += 1;
            continue;
        }
        let mut candidate = language.clone();
        candidate.insert(w);
        if satisfied(&candidate) {
            language = candidate;
            failures = 0;
        } else {
            failures += 1;
        }
    }
    language
}
