//! File formats, the interactive session and the command-line driver for
//! synchronizing a to-do list through two views.
//!
//! * [`format`]: TOML task tables and view edits.
//! * [`poset_format`]: TOML finite i-posets and update spaces.
//! * [`session`]: the command language and its state.
//! * [`suites`]: named law suites.

pub mod format;
pub mod poset_format;
pub mod session;
pub mod suites;
