//! Brute-force reference implementations.
//!
//! Everything here works by enumerating finite objects from definitions and
//! shares no code paths with the automaton algorithms it is used to check.

pub mod coding;
pub mod k0;
pub mod sets;
pub mod ts;

pub use sets::{intersection_prefixes, spec_contains, spec_escape, spec_letters, spec_member, spec_prefixes, OracleSet};
