//! Text format for automata and transducers.
//!
//! A document is a header line `@NFA f1 f2 ... * i1 i2 ...` (or `@Transducer`)
//! followed by transition rows: `p σ q` for automata, `p x y q` for
//! transducers, with `@epsilon` denoting the empty label. The document must
//! end with a line terminator. State names are arbitrary tokens not equal to
//! `*` and not starting with `@`, mapped to dense indexes in first-appearance
//! order.
//!
//! Serialization is canonical: states are renumbered by an iterated
//! in/out-signature refinement, so isomorphic machines produce identical text.
//! The canonical text also feeds property digest names.

use std::collections::{BTreeSet, HashMap};

use crate::alphabet::{Alphabet, Symbol, Word};
use crate::error::{Error, ParseErrorKind, Result};
use crate::nfa::{Nfa, NfaTransition, StateId};
use crate::transducer::{TdTransition, Transducer};

/// A parsed machine document.
#[derive(Debug, Clone)]
pub enum Machine {
    Automaton(Nfa),
    Transducer(Transducer),
}

struct StateNames {
    ids: HashMap<String, StateId>,
}

impl StateNames {
    fn new() -> StateNames {
        StateNames { ids: HashMap::new() }
    }

    fn intern(&mut self, token: &str, line: usize) -> Result<StateId> {
        if token == "*" {
            return Err(Error::Parse { line, kind: ParseErrorKind::BadToken(token.into()) });
        }
        if token.starts_with('@') {
            return Err(Error::Parse {
                line,
                kind: ParseErrorKind::UnknownDirective(token.into()),
            });
        }
        let next = self.ids.len();
        Ok(*self.ids.entry(token.to_string()).or_insert(next))
    }
}

fn parse_label(token: &str, line: usize) -> Result<Option<Symbol>> {
    if token == "@epsilon" {
        return Ok(None);
    }
    if token.starts_with('@') {
        return Err(Error::Parse { line, kind: ParseErrorKind::UnknownDirective(token.into()) });
    }
    match Symbol::new(token) {
        Ok(s) => Ok(Some(s)),
        Err(_) => Err(Error::Parse { line, kind: ParseErrorKind::BadToken(token.into()) }),
    }
}

fn label_word(token: &str, line: usize) -> Result<Word> {
    Ok(Word::from_symbols(parse_label(token, line)?.into_iter().collect()))
}

/// Parses a machine document; the header decides the kind.
pub fn parse_machine(text: &str) -> Result<Machine> {
    if !text.ends_with('\n') {
        return Err(Error::Parse {
            line: text.split('\n').count(),
            kind: ParseErrorKind::MissingLineTerminator,
        });
    }
    let mut lines = text
        .split('\n')
        .enumerate()
        .map(|(i, l)| (i + 1, l))
        .filter(|(_, l)| !l.trim().is_empty());

    let Some((header_line, header)) = lines.next() else {
        return Err(Error::Parse { line: 1, kind: ParseErrorKind::MissingHeader });
    };
    let tokens: Vec<&str> = header.split_whitespace().collect();
    let is_transducer = match tokens.first() {
        Some(&"@NFA") => false,
        Some(&"@Transducer") => true,
        _ => return Err(Error::Parse { line: header_line, kind: ParseErrorKind::MissingHeader }),
    };
    let Some(star) = tokens.iter().position(|&t| t == "*") else {
        return Err(Error::Parse {
            line: header_line,
            kind: ParseErrorKind::MissingStarSeparator,
        });
    };

    let mut names = StateNames::new();
    let mut finals = BTreeSet::new();
    for t in &tokens[1..star] {
        finals.insert(names.intern(t, header_line)?);
    }
    let mut initials = BTreeSet::new();
    for t in &tokens[star + 1..] {
        initials.insert(names.intern(t, header_line)?);
    }

    let mut nfa_rows: Vec<(StateId, Option<Symbol>, StateId)> = Vec::new();
    let mut td_rows: Vec<(StateId, Word, Word, StateId)> = Vec::new();
    for (line, row) in lines {
        let tokens: Vec<&str> = row.split_whitespace().collect();
        let expected = if is_transducer { 4 } else { 3 };
        if tokens.len() != expected {
            return Err(Error::Parse {
                line,
                kind: ParseErrorKind::WrongArity { expected, found: tokens.len() },
            });
        }
        let from = names.intern(tokens[0], line)?;
        let to = names.intern(tokens[expected - 1], line)?;
        if is_transducer {
            td_rows.push((from, label_word(tokens[1], line)?, label_word(tokens[2], line)?, to));
        } else {
            nfa_rows.push((from, parse_label(tokens[1], line)?, to));
        }
    }

    let n = names.ids.len();
    if is_transducer {
        let mut input_alphabet = Alphabet::new();
        let mut output_alphabet = Alphabet::new();
        for (_, x, y, _) in &td_rows {
            input_alphabet.extend(x.symbols().iter().cloned());
            output_alphabet.extend(y.symbols().iter().cloned());
        }
        let transitions = td_rows
            .into_iter()
            .map(|(from, input, output, to)| TdTransition { from, input, output, to })
            .collect();
        Ok(Machine::Transducer(Transducer::new(
            n,
            input_alphabet,
            output_alphabet,
            transitions,
            initials,
            finals,
        )?))
    } else {
        let mut alphabet = Alphabet::new();
        for (_, l, _) in &nfa_rows {
            alphabet.extend(l.iter().cloned());
        }
        let transitions = nfa_rows
            .into_iter()
            .map(|(from, label, to)| NfaTransition { from, label, to })
            .collect();
        Ok(Machine::Automaton(Nfa::new(n, alphabet, transitions, initials, finals)?))
    }
}

/// Parses a document that must be an automaton.
pub fn parse_nfa(text: &str) -> Result<Nfa> {
    match parse_machine(text)? {
        Machine::Automaton(a) => Ok(a),
        Machine::Transducer(_) => {
            Err(Error::InvalidMachine("expected an automaton, found a transducer".into()))
        }
    }
}

/// Parses a document that must be a transducer.
pub fn parse_transducer(text: &str) -> Result<Transducer> {
    match parse_machine(text)? {
        Machine::Transducer(t) => Ok(t),
        Machine::Automaton(_) => {
            Err(Error::InvalidMachine("expected a transducer, found an automaton".into()))
        }
    }
}

/// Canonical renumbering by color refinement. Colors start from the
/// (initial, final) status and are refined by sorted in/out label-color
/// signatures; residual ties fall back to the original index.
fn canonical_order(
    n: usize,
    edges: &[(StateId, String, StateId)],
    initials: &BTreeSet<StateId>,
    finals: &BTreeSet<StateId>,
) -> Vec<StateId> {
    let seed: Vec<(bool, bool)> =
        (0..n).map(|s| (!initials.contains(&s), finals.contains(&s))).collect();
    let mut color: Vec<usize> = {
        let mut keys: Vec<_> = seed.clone();
        keys.sort();
        keys.dedup();
        seed.iter().map(|k| keys.binary_search(k).unwrap()).collect()
    };
    for _ in 0..n {
        let mut sigs: Vec<(usize, Vec<(String, usize)>, Vec<(String, usize)>)> = (0..n)
            .map(|s| {
                let mut out: Vec<(String, usize)> = edges
                    .iter()
                    .filter(|e| e.0 == s)
                    .map(|e| (e.1.clone(), color[e.2]))
                    .collect();
                out.sort();
                let mut inc: Vec<(String, usize)> = edges
                    .iter()
                    .filter(|e| e.2 == s)
                    .map(|e| (e.1.clone(), color[e.0]))
                    .collect();
                inc.sort();
                (color[s], out, inc)
            })
            .collect();
        let mut keys = sigs.clone();
        keys.sort();
        keys.dedup();
        let next: Vec<usize> =
            sigs.drain(..).map(|sig| keys.binary_search(&sig).unwrap()).collect();
        if next == color {
            break;
        }
        color = next;
    }
    let mut order: Vec<StateId> = (0..n).collect();
    order.sort_by_key(|&s| (color[s], s));
    // perm[old] = new
    let mut perm = vec![0; n];
    for (new, &old) in order.iter().enumerate() {
        perm[old] = new;
    }
    perm
}

/// The format can only name states that occur in the header or in some row,
/// so isolated non-initial non-final states would be lost on re-parse. Drop
/// them up front; `compact[old]` is the dense id, and `kept` the new count.
fn compact_mentioned(
    n: usize,
    edges: &[(StateId, String, StateId)],
    initials: &BTreeSet<StateId>,
    finals: &BTreeSet<StateId>,
) -> (usize, Vec<Option<StateId>>) {
    let mut mentioned = vec![false; n];
    for &s in initials.iter().chain(finals) {
        mentioned[s] = true;
    }
    for (f, _, t) in edges {
        mentioned[*f] = true;
        mentioned[*t] = true;
    }
    let mut compact = vec![None; n];
    let mut kept = 0;
    for s in 0..n {
        if mentioned[s] {
            compact[s] = Some(kept);
            kept += 1;
        }
    }
    (kept, compact)
}

fn header(kind: &str, finals: &BTreeSet<StateId>, initials: &BTreeSet<StateId>) -> String {
    let mut out = String::from(kind);
    for f in finals {
        out.push_str(&format!(" {f}"));
    }
    out.push_str(" *");
    for i in initials {
        out.push_str(&format!(" {i}"));
    }
    out.push('\n');
    out
}

fn label_token(w: Option<&Symbol>) -> String {
    match w {
        Some(s) => s.as_str().to_string(),
        None => "@epsilon".to_string(),
    }
}

/// Canonical text of an automaton.
pub fn serialize_nfa(a: &Nfa) -> String {
    let mut edges: Vec<(StateId, String, StateId)> = a
        .transitions()
        .iter()
        .map(|t| (t.from, label_token(t.label.as_ref()), t.to))
        .collect();
    let (kept, compact) =
        compact_mentioned(a.n_states(), &edges, a.initials(), a.finals());
    for e in &mut edges {
        e.0 = compact[e.0].unwrap();
        e.2 = compact[e.2].unwrap();
    }
    let initials: BTreeSet<StateId> =
        a.initials().iter().map(|&s| compact[s].unwrap()).collect();
    let finals: BTreeSet<StateId> = a.finals().iter().map(|&s| compact[s].unwrap()).collect();
    let perm = canonical_order(kept, &edges, &initials, &finals);
    let finals: BTreeSet<StateId> = finals.iter().map(|&s| perm[s]).collect();
    let initials: BTreeSet<StateId> = initials.iter().map(|&s| perm[s]).collect();
    let mut rows: Vec<(StateId, String, StateId)> =
        edges.into_iter().map(|(f, l, t)| (perm[f], l, perm[t])).collect();
    rows.sort();
    rows.dedup();
    let mut out = header("@NFA", &finals, &initials);
    for (f, l, t) in rows {
        out.push_str(&format!("{f} {l} {t}\n"));
    }
    out
}

/// Canonical text of a transducer.
pub fn serialize_transducer(t: &Transducer) -> String {
    let word_token = |w: &Word| {
        if w.is_empty() {
            "@epsilon".to_string()
        } else {
            w.symbols().iter().map(Symbol::as_str).collect::<Vec<_>>().join(" ")
        }
    };
    // general-form labels of length > 1 would need multi-token rows; standardize
    let t = t.to_standard_form();
    let mut edges: Vec<(StateId, String, StateId)> = t
        .transitions()
        .iter()
        .map(|tr| (tr.from, format!("{} {}", word_token(&tr.input), word_token(&tr.output)), tr.to))
        .collect();
    let (kept, compact) =
        compact_mentioned(t.n_states(), &edges, t.initials(), t.finals());
    for e in &mut edges {
        e.0 = compact[e.0].unwrap();
        e.2 = compact[e.2].unwrap();
    }
    let initials: BTreeSet<StateId> =
        t.initials().iter().map(|&s| compact[s].unwrap()).collect();
    let finals: BTreeSet<StateId> = t.finals().iter().map(|&s| compact[s].unwrap()).collect();
    let perm = canonical_order(kept, &edges, &initials, &finals);
    let finals: BTreeSet<StateId> = finals.iter().map(|&s| perm[s]).collect();
    let initials: BTreeSet<StateId> = initials.iter().map(|&s| perm[s]).collect();
    let mut rows: Vec<(StateId, String, StateId)> =
        edges.into_iter().map(|(f, l, s)| (perm[f], l, perm[s])).collect();
    rows.sort();
    rows.dedup();
    let mut out = header("@Transducer", &finals, &initials);
    for (f, l, s) in rows {
        out.push_str(&format!("{f} {l} {s}\n"));
    }
    out
}
