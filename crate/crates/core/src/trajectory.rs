//! Trajectory expressions: regular expressions over {0,1} describing deletion
//! patterns. A 0 marks a kept input symbol, a 1 a deleted one.
//!
//! Grammar: atoms `0`, `1`; postfix `*`; infix `+` for union; juxtaposition
//! for concatenation; parentheses; whitespace ignored.

use std::collections::BTreeSet;

use crate::alphabet::{alphabet, Symbol};
use crate::error::{Error, Result};
use crate::nfa::{Nfa, NfaTransition, StateId};

#[derive(Debug, Clone, PartialEq, Eq)]
enum Expr {
    Atom(char),
    Star(Box<Expr>),
    Concat(Box<Expr>, Box<Expr>),
    Union(Box<Expr>, Box<Expr>),
}

struct Parser<'a> {
    chars: std::iter::Peekable<std::str::Chars<'a>>,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str) -> Parser<'a> {
        Parser { chars: text.chars().peekable() }
    }

    fn peek(&mut self) -> Option<char> {
        while let Some(&c) = self.chars.peek() {
            if c.is_whitespace() {
                self.chars.next();
            } else {
                return Some(c);
            }
        }
        None
    }

    fn bump(&mut self) -> Option<char> {
        self.peek()?;
        self.chars.next()
    }

    fn union(&mut self) -> Result<Expr> {
        let mut left = self.concat()?;
        while self.peek() == Some('+') {
            self.bump();
            let right = self.concat()?;
            left = Expr::Union(Box::new(left), Box::new(right));
        }
        Ok(left)
    }

    fn concat(&mut self) -> Result<Expr> {
        let mut left = self.postfix()?;
        while matches!(self.peek(), Some('0') | Some('1') | Some('(')) {
            let right = self.postfix()?;
            left = Expr::Concat(Box::new(left), Box::new(right));
        }
        Ok(left)
    }

    fn postfix(&mut self) -> Result<Expr> {
        let mut e = self.atom()?;
        while self.peek() == Some('*') {
            self.bump();
            e = Expr::Star(Box::new(e));
        }
        Ok(e)
    }

    fn atom(&mut self) -> Result<Expr> {
        match self.bump() {
            Some(c @ ('0' | '1')) => Ok(Expr::Atom(c)),
            Some('(') => {
                let e = self.union()?;
                if self.bump() != Some(')') {
                    return Err(Error::TrajectorySyntax("unbalanced parenthesis".into()));
                }
                Ok(e)
            }
            Some(c) => Err(Error::TrajectorySyntax(format!("unexpected character `{c}`"))),
            None => Err(Error::TrajectorySyntax("unexpected end of expression".into())),
        }
    }
}

fn parse(text: &str) -> Result<Expr> {
    let mut p = Parser::new(text);
    let e = p.union()?;
    if let Some(c) = p.peek() {
        return Err(Error::TrajectorySyntax(format!("trailing character `{c}`")));
    }
    Ok(e)
}

/// Thompson fragment: one initial, one final state.
struct Fragment {
    start: StateId,
    end: StateId,
}

struct Builder {
    n: usize,
    transitions: Vec<NfaTransition>,
}

impl Builder {
    fn state(&mut self) -> StateId {
        self.n += 1;
        self.n - 1
    }

    fn edge(&mut self, from: StateId, label: Option<Symbol>, to: StateId) {
        self.transitions.push(NfaTransition { from, label, to });
    }

    fn compile(&mut self, e: &Expr) -> Fragment {
        match e {
            Expr::Atom(c) => {
                let (s, t) = (self.state(), self.state());
                self.edge(s, Some(Symbol::from_char(*c)), t);
                Fragment { start: s, end: t }
            }
            Expr::Concat(a, b) => {
                let fa = self.compile(a);
                let fb = self.compile(b);
                self.edge(fa.end, None, fb.start);
                Fragment { start: fa.start, end: fb.end }
            }
            Expr::Union(a, b) => {
                let fa = self.compile(a);
                let fb = self.compile(b);
                let (s, t) = (self.state(), self.state());
                self.edge(s, None, fa.start);
                self.edge(s, None, fb.start);
                self.edge(fa.end, None, t);
                self.edge(fb.end, None, t);
                Fragment { start: s, end: t }
            }
            Expr::Star(a) => {
                let fa = self.compile(a);
                let (s, t) = (self.state(), self.state());
                self.edge(s, None, fa.start);
                self.edge(s, None, t);
                self.edge(fa.end, None, fa.start);
                self.edge(fa.end, None, t);
                Fragment { start: s, end: t }
            }
        }
    }
}

/// Compiles a trajectory expression to a trim, epsilon-free automaton over
/// {0,1} accepting only trajectories with at least one deletion (a `1`); the
/// zero-deletion trajectories never witness a proper relation.
pub fn compile_trajectory(text: &str) -> Result<Nfa> {
    let expr = parse(text)?;
    let mut b = Builder { n: 0, transitions: Vec::new() };
    let frag = b.compile(&expr);
    let raw = Nfa::new(
        b.n,
        alphabet("01"),
        b.transitions,
        BTreeSet::from([frag.start]),
        BTreeSet::from([frag.end]),
    )
    .expect("construction produces a well-formed automaton");
    let compiled = raw.eliminate_epsilon();
    let at_least_one_1 = Nfa::new(
        2,
        alphabet("01"),
        vec![
            NfaTransition { from: 0, label: Some(Symbol::from_char('0')), to: 0 },
            NfaTransition { from: 0, label: Some(Symbol::from_char('1')), to: 1 },
            NfaTransition { from: 1, label: Some(Symbol::from_char('0')), to: 1 },
            NfaTransition { from: 1, label: Some(Symbol::from_char('1')), to: 1 },
        ],
        BTreeSet::from([0]),
        BTreeSet::from([1]),
    )
    .expect("filter automaton is well-formed");
    Ok(compiled
        .intersect(&at_least_one_1)
        .expect("both operands are epsilon-free")
        .trim())
}
