//! Experiment drivers behind the `itm` binary, exposed as a library so
//! integration tests can call them directly.

pub mod classify;
pub mod experiments;
