//! Yang-Baxter state-model invariants of oriented classical and singular links.

pub mod braidrep;
pub mod cli;
pub mod diagram;
pub mod evaluator;
pub mod identities;
pub mod laurent;
pub mod spintensor;
