//! Library surface of the `ltbx` command-line tool, exposed so the
//! integration and acceptance suites drive the exact code paths the binary
//! runs.

pub mod commands;
pub mod config;
pub mod output;
pub mod verify;
