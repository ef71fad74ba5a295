//! Support crate for the `holonomy` binary: configuration, input loading,
//! and the paper-verification harness shared with the acceptance tests.

pub mod config;
pub mod input;
pub mod verify;
