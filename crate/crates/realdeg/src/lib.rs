//! File formats, the command-line front end and geometric degree oracles
//! around `realdeg-core`.

pub mod job;
pub mod oracle;
