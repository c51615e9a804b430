//! Scenario files, the `analyze | quotient | blowup | identities` commands and
//! their reports.

pub mod commands;
pub mod report;
pub mod scenario;
