//! Configuration and the verification suite behind the `hecke` binary.

pub mod config;
pub mod suite;
