//! Witness-producing transducer functionality test.
//!
//! The test runs over the *square machine*: the trimmed self-product of a
//! standard-form transducer pairing transitions with equal input labels. A
//! breadth-first pass assigns each square state a delay-path value; any of the
//! three failure conditions yields a concrete triple `(w, z, z')` with
//! `z != z'` and both outputs of `w`.

use std::collections::{BTreeSet, VecDeque};

use crate::alphabet::Word;
use crate::nfa::StateId;
use crate::transducer::Transducer;

/// A square-machine transition `((p,p'), (v, x, x'), (q,q'))`: `v` is the
/// shared input label and `x`, `x'` the two output labels.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct SquareTransition {
    pub from: usize,
    pub input: Word,
    pub out1: Word,
    pub out2: Word,
    pub to: usize,
}

/// The trimmed self-product of a transducer. States are pairs of transducer
/// states, indexed densely; `from`/`to` in transitions index into `states`.
#[derive(Debug, Clone)]
pub struct SquareMachine {
    pub states: Vec<(StateId, StateId)>,
    pub transitions: Vec<SquareTransition>,
    pub initials: BTreeSet<usize>,
    pub finals: BTreeSet<usize>,
}

/// Delay assigned to a square state: ZERO marks an unrecoverable output
/// mismatch; a lag pair always has at least one empty side.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Delay {
    Zero,
    Lag(Word, Word),
}

impl Delay {
    fn is_empty_pair(&self) -> bool {
        matches!(self, Delay::Lag(y, y2) if y.is_empty() && y2.is_empty())
    }
}

/// Builds the revised square machine of `t`. Empty/empty self-loops are added
/// to `t` first exactly when it has a transition with empty input label; the
/// result is trimmed.
pub fn build_square_machine(t: &Transducer) -> SquareMachine {
    let t = t.to_standard_form();
    let t = if t.has_epsilon_input() { t.with_epsilon_loops() } else { t };
    let n = t.n_states();
    let pair = |p: StateId, q: StateId| p * n + q;

    let mut transitions = Vec::new();
    for a in t.transitions() {
        for b in t.transitions() {
            if a.input == b.input {
                transitions.push(SquareTransition {
                    from: pair(a.from, b.from),
                    input: a.input.clone(),
                    out1: a.output.clone(),
                    out2: b.output.clone(),
                    to: pair(a.to, b.to),
                });
            }
        }
    }
    transitions.sort();
    transitions.dedup();
    let mut initials = BTreeSet::new();
    for &p in t.initials() {
        for &q in t.initials() {
            initials.insert(pair(p, q));
        }
    }
    let mut finals = BTreeSet::new();
    for &p in t.finals() {
        for &q in t.finals() {
            finals.insert(pair(p, q));
        }
    }

    // trim to states on some initial-to-final path, then renumber densely
    let total = n * n;
    let mut forward = vec![false; total];
    let mut stack: Vec<usize> = initials.iter().copied().collect();
    for &s in &initials {
        forward[s] = true;
    }
    while let Some(s) = stack.pop() {
        for tr in &transitions {
            if tr.from == s && !forward[tr.to] {
                forward[tr.to] = true;
                stack.push(tr.to);
            }
        }
    }
    let mut backward = vec![false; total];
    let mut stack: Vec<usize> = finals.iter().copied().collect();
    for &s in &finals {
        backward[s] = true;
    }
    while let Some(s) = stack.pop() {
        for tr in &transitions {
            if tr.to == s && !backward[tr.from] {
                backward[tr.from] = true;
                stack.push(tr.from);
            }
        }
    }
    let mut index = vec![usize::MAX; total];
    let mut states = Vec::new();
    for s in 0..total {
        if forward[s] && backward[s] {
            index[s] = states.len();
            states.push((s / n, s % n));
        }
    }
    let transitions = transitions
        .into_iter()
        .filter(|tr| index[tr.from] != usize::MAX && index[tr.to] != usize::MAX)
        .map(|tr| SquareTransition { from: index[tr.from], to: index[tr.to], ..tr })
        .collect();
    SquareMachine {
        states,
        transitions,
        initials: initials.iter().filter(|&&s| index[s] != usize::MAX).map(|&s| index[s]).collect(),
        finals: finals.iter().filter(|&&s| index[s] != usize::MAX).map(|&s| index[s]).collect(),
    }
}

/// Per-state lookup of a shortest path (fewest transitions) to a final state,
/// precomputed by one reverse breadth-first pass. `next[s]` is the index of
/// the first transition of that path; finals get `None`.
struct CompletePath {
    next: Vec<Option<usize>>,
}

impl CompletePath {
    fn build(m: &SquareMachine) -> CompletePath {
        let mut next = vec![None; m.states.len()];
        let mut settled = vec![false; m.states.len()];
        let mut queue: VecDeque<usize> = VecDeque::new();
        for &f in &m.finals {
            settled[f] = true;
            queue.push_back(f);
        }
        while let Some(s) = queue.pop_front() {
            for (i, tr) in m.transitions.iter().enumerate() {
                if tr.to == s && !settled[tr.from] {
                    settled[tr.from] = true;
                    next[tr.from] = Some(i);
                    queue.push_back(tr.from);
                }
            }
        }
        CompletePath { next }
    }

    /// Suffix triple `(w, z, z')` labeling the stored shortest path from `s`.
    fn suffix_triple(&self, m: &SquareMachine, mut s: usize) -> (Word, Word, Word) {
        let (mut w, mut z, mut z2) = (Word::empty(), Word::empty(), Word::empty());
        while let Some(i) = self.next[s] {
            let tr = &m.transitions[i];
            w = w.concat(&tr.input);
            z = z.concat(&tr.out1);
            z2 = z2.concat(&tr.out2);
            s = tr.to;
        }
        (w, z, z2)
    }
}

/// Delay of the target state given the source delay `(y, y')` and the two
/// output labels: one of `y·x`, `y'·x'` a prefix of the other gives the
/// leftover lag, a symbol mismatch gives ZERO.
fn step_delay(c: &Delay, x: &Word, x2: &Word) -> Delay {
    let Delay::Lag(y, y2) = c else { return Delay::Zero };
    let left = y.concat(x);
    let right = y2.concat(x2);
    if let Some(u) = left.strip_prefix_of(&right) {
        Delay::Lag(Word::empty(), u)
    } else if let Some(u) = right.strip_prefix_of(&left) {
        Delay::Lag(u, Word::empty())
    } else {
        Delay::Zero
    }
}

/// A witness of non-functionality: a triple `(w, z, z')` with `z != z'` and
/// both in `t(w)`; `None` exactly when `t` is functional.
pub fn non_functional_witness(t: &Transducer) -> Option<(Word, Word, Word)> {
    let m = build_square_machine(t);
    let paths = CompletePath::build(&m);

    // delay-path value per state: (delay, (w, z, z'))
    let mut value: Vec<Option<(Delay, (Word, Word, Word))>> = vec![None; m.states.len()];
    let mut queue: VecDeque<usize> = VecDeque::new();
    for &i in &m.initials {
        value[i] = Some((
            Delay::Lag(Word::empty(), Word::empty()),
            (Word::empty(), Word::empty(), Word::empty()),
        ));
        queue.push_back(i);
    }

    while let Some(s) = queue.pop_front() {
        let (c, (w, z, z2)) = value[s].clone().expect("queued states carry a value");
        for tr in &m.transitions {
            if tr.from != s {
                continue;
            }
            let d = step_delay(&c, &tr.out1, &tr.out2);
            let r = (w.concat(&tr.input), z.concat(&tr.out1), z2.concat(&tr.out2));
            if d == Delay::Zero {
                let (ws, zs, zs2) = paths.suffix_triple(&m, tr.to);
                return Some((r.0.concat(&ws), r.1.concat(&zs), r.2.concat(&zs2)));
            }
            if m.finals.contains(&tr.to) && !d.is_empty_pair() {
                return Some(r);
            }
            match &value[tr.to] {
                Some((d1, p1)) if *d1 != d => {
                    let (ws, zs, zs2) = paths.suffix_triple(&m, tr.to);
                    let cand = (r.0.concat(&ws), r.1.concat(&zs), r.2.concat(&zs2));
                    if cand.1 != cand.2 {
                        return Some(cand);
                    }
                    return Some((p1.0.concat(&ws), p1.1.concat(&zs), p1.2.concat(&zs2)));
                }
                Some(_) => {}
                None => {
                    value[tr.to] = Some((d, r));
                    queue.push_back(tr.to);
                }
            }
        }
    }
    None
}

pub fn is_functional(t: &Transducer) -> bool {
    non_functional_witness(t).is_none()
}

/// The transducer family with quadratic-size minimal witnesses: two cycles of
/// coprime lengths `p` and `p+1` over input `0`, one of which prepends a `1`
/// to its otherwise length-preserving output.
pub fn quadratic_witness_family(p: usize) -> Transducer {
    use crate::alphabet::{alphabet, Symbol};
    use crate::transducer::TdTransition;
    assert!(p >= 1);
    let zero = Word::from_symbols(vec![Symbol::from_char('0')]);
    let one = Word::from_symbols(vec![Symbol::from_char('1')]);
    // state 0 initial; top cycle 1..=p (copying), bottom cycle p+1..=2p+1
    let top = |i: usize| i; // 1-based
    let bot = |i: usize| p + i; // 1-based
    let mut transitions = vec![
        TdTransition { from: 0, input: zero.clone(), output: zero.clone(), to: top(1) },
        TdTransition { from: 0, input: zero.clone(), output: one, to: bot(1) },
    ];
    for i in 1..p {
        transitions.push(TdTransition {
            from: top(i),
            input: zero.clone(),
            output: zero.clone(),
            to: top(i + 1),
        });
    }
    transitions.push(TdTransition { from: top(p), input: zero.clone(), output: zero.clone(), to: top(1) });
    for i in 1..=p {
        transitions.push(TdTransition {
            from: bot(i),
            input: zero.clone(),
            output: zero.clone(),
            to: bot(i + 1),
        });
    }
    transitions.push(TdTransition {
        from: bot(p + 1),
        input: zero.clone(),
        output: zero.clone(),
        to: bot(1),
    });
    Transducer::new(
        2 * p + 2,
        alphabet("0"),
        alphabet("01"),
        transitions,
        BTreeSet::from([0]),
        BTreeSet::from([top(p), bot(p + 1)]),
    )
    .expect("family member is well-formed")
}
