//! Repetition-avoidance laboratory for binary words.
//!
//! The crate answers questions of the form: which binary words
//! simultaneously avoid all squares `yy` with `|y| >= l` and all fractional
//! powers crossing a rational threshold? It provides
//!
//! - exact detection of large squares and forbidden powers ([`find_violation`],
//!   [`CheckerState`]),
//! - exhaustive searches of the tree of avoiding words ([`tree`]),
//! - uniform-morphism algebra with the finite verification checks that prove
//!   infinite avoidance ([`morphism`]),
//! - exact enumeration and eigenvalue growth bounds ([`enumeration`]),
//! - the block-filter heuristic for discovering candidate morphisms
//!   ([`discovery`]).
//!
//! All word values are immutable after construction and all operations are
//! pure, so everything here is safe to share across threads.

mod avoidance;
mod error;
mod rational;
mod word;

pub mod discovery;
pub mod enumeration;
pub mod morphism;
pub mod tree;

pub use avoidance::{
    find_violation, max_exponent, minimal_period, AvoidanceSpec, CheckerState, ExponentThreshold,
    Violation, ViolationKind,
};
pub use error::{Error, Result};
pub use rational::Rational;
pub use word::{Word, MAX_ALPHABET};
