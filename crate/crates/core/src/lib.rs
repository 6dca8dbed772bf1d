//! Finite automata, transducers, and decision procedures for code properties
//! of regular languages, with concrete witnesses for every negative verdict.
//!
//! The crate is organized around three layers:
//!
//! * machines: [`Nfa`] and [`Transducer`] with the usual rational operations;
//! * the functionality test ([`non_functional_witness`]) over the square
//!   machine, which powers most of the decision procedures;
//! * properties: [`CodeProperty`] objects (fixed, trajectory, or
//!   transducer-described), their conjunction lattice, satisfaction and
//!   maximality with witnesses, plus the UD-code property.
//!
//! Machines are read and written in a simple line-based text format (see
//! [`fado`]), which also provides the canonical serialization behind property
//! digest names.

pub mod alphabet;
pub mod error;
pub mod fado;
pub mod functionality;
pub mod nfa;
pub mod property;
pub mod trajectory;
pub mod transducer;
pub mod udcode;

pub use alphabet::{alphabet, Alphabet, Symbol, Word};
pub use error::{Error, ParseErrorKind, Result};
pub use fado::{parse_machine, parse_nfa, parse_transducer, serialize_nfa, serialize_transducer, Machine};
pub use functionality::{
    build_square_machine, is_functional, non_functional_witness, quadratic_witness_family,
    SquareMachine, SquareTransition,
};
pub use nfa::{Nfa, NfaTransition, StateId};
pub use property::{
    build_fixed_property, build_trajectory_property, build_transducer_property, conjunction,
    construct_language, ec_to_ed, iat_to_ed, infix_transducer, input_altering_violation, leq,
    maximal_witness, satisfies_witness, CodeProperty, FixedProperty, PropertyKind, PropertyName,
    SatisfactionWitness,
};
pub use trajectory::compile_trajectory;
pub use transducer::{proper_suffix_transducer, RationalOp, Side, TdTransition, Transducer};
pub use udcode::{ud_is_maximal, ud_satisfies_witness, UdWitness};
