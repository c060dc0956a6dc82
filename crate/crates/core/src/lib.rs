//! Partial-state lenses.
//!
//! A partial-state lens relates a source and a view that both live in an
//! *i-poset*: a partially ordered set whose order reads "is preserved in", with
//! a sub-relation `I` of identical updates. Views may carry partially-specified
//! states (deltas such as "add this task, delete that one"), and `put` turns
//! them back into source states. Several views of one source are synchronized
//! by duplicating the source and merging the view updates with a partial join.
//!
//! The crate is `no_std` (it needs `alloc`) and purely algorithmic:
//!
//! * [`iposet`]: the i-poset abstraction, explicit finite i-posets, standard
//!   constructions, joins and the duplicability check.
//! * [`lens`]: lenses, the primitive lenses and the combinators.
//! * [`laws`]: an exhaustive checker for the round-tripping laws and the
//!   lemmas derived from them, plus counterexample fixtures.
//! * [`recipe`]: i-posets generated from state/update pairs.
//! * [`tasks`]: the to-do domains, filters and the synchronization pipeline.
#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod iposet;
pub mod laws;
pub mod lens;
pub mod recipe;
mod report;
pub mod tasks;

pub use report::{Rule, ValidationReport, Violation};
