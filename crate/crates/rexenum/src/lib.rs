//! Exact enumeration of regular expressions and their languages.
//!
//! The crate is organized around a counting pipeline for unambiguous
//! context-free grammars:
//!
//! * [`regex`] — regular-expression syntax trees, the three size measures
//!   (ordinary length, reverse polish length, alphabetic width), a strict
//!   validity parser, redundancy predicates, and strong star normal form.
//! * [`automata`] — NFA/DFA construction, minimization, canonical byte keys
//!   that fingerprint regular languages exactly, language operations, and
//!   reconstruction of starred tries from languages.
//! * [`grammar`] — weighted context-free grammars, the built-in grammar
//!   families used throughout, commutative images, and a small grammar DSL.
//! * [`series`] — exact truncated power-series solutions of polynomial
//!   systems (the counting sequences themselves).
//! * [`algebra`] — elimination to an annihilating bivariate polynomial,
//!   discriminants, Sturm real-root isolation, and exponential growth bounds.
//! * [`combinatorics`] — closed-form tree counting (Lagrange inversion,
//!   k-ary trees, leaf statistics).
//! * [`census`] — exact per-size counts of distinct regular languages via
//!   dynamic programming with canonical-DFA deduplication.
//!
//! The `examples/` directory contains one runnable program per major
//! capability; the `rexenum` binary exposes the same functionality as
//! subcommands.

pub mod algebra;
pub mod automata;
pub mod cancel;
pub mod census;
pub mod combinatorics;
pub mod grammar;
pub mod regex;
pub mod series;
