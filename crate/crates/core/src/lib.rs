//! Discrete submodular meta-learning.
//!
//! A set `S_tr` of `l` elements is trained once over a family of monotone
//! submodular tasks; each new task then completes it with `k - l` greedy
//! picks of its own. The crate provides the training algorithms
//! ([`meta`]), the greedy engines they are built from ([`greedy`]), the
//! objectives used in the experiments ([`objectives`]), dataset ingestion and
//! task samplers ([`data`]), and exact brute-force oracles and bound checkers
//! for small instances ([`verify`]).

pub mod combin;
pub mod data;
pub mod error;
pub mod greedy;
pub mod meta;
pub mod objectives;
pub mod oracle;
pub mod set;
pub mod verify;

pub use error::{Error, Result};
pub use oracle::{Cursor, MarginalState, Oracle, SetFunction};
pub use set::{set_of, Budget, ElementId, ElementSet, GroundSet};
