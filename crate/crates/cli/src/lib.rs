//! JSON formats, oracle suites and command implementations behind the
//! `kummer` binary.

pub mod dto;
pub mod commands;
pub mod oracle;
