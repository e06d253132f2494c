//! Spec-file format, quiver front-end, bundled corpus and the command runner behind the
//! `tiltkit` binary.

pub mod corpus;
pub mod format;
pub mod load;
pub mod quiver;
pub mod run;
