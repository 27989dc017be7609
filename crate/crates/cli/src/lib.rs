//! Verification suites, serialisation and session plumbing on top of the
//! core algebra; the `psgl` binary is a thin command-line front end over
//! this library.

pub mod checks;
pub mod export;
pub mod report;
pub mod session;
