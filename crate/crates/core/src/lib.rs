//! Hall subgroup existence, conjugacy and class counts for finite simple groups.
//!
//! The symbolic side ([`classify`]) answers queries from arithmetic criteria on
//! the group parameters. The concrete side ([`bruteforce`]) builds small groups
//! explicitly and searches for Hall subgroups so the two can be compared.

pub mod arith;
pub mod bruteforce;
pub mod classify;
pub mod cli;
pub mod extension;
pub mod groups;

pub use arith::{PrimeSet, Sign};
pub use classify::{classify, HallReport};
pub use groups::GroupSpec;
