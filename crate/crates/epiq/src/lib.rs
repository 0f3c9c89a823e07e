//! Workbench for a propositionally quantified logic of knowledge and awareness.
//!
//! The language has primitive propositions, propositional variables, negation,
//! conjunction, per-agent modal operators `K_i` (implicit knowledge), `A_i`
//! (awareness), `X_i` (explicit knowledge), and a universal quantifier over
//! quantifier-free sentences. The crate provides:
//!
//! - [`formula`]: AST, parser, printer, and syntactic operations.
//! - [`model`]: finite awareness structures and awareness-property checks.
//! - [`checker`]: the truth relation, with exact quantifier evaluation and an
//!   independent bounded-enumeration oracle.
//! - [`decider`]: a quantifier-elimination validity decider for the
//!   single-agent pure-knowledge fragment over Euclidean model classes.
//! - [`reduction`]: translations from first-order logic over one binary
//!   predicate into the modal language, with companion model constructions
//!   and a finite-instance equivalence harness.
//! - [`proofs`]: a Hilbert-style proof checker.
//! - [`gen`]: seeded random structure generation and bounded countermodel
//!   search.

pub mod checker;
pub mod decider;
pub mod formula;
pub mod gen;
pub mod model;
pub mod proofs;
pub mod reduction;
