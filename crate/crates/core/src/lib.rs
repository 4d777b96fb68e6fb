//! Exact character theory for small permutation groups: Dixon–Schneider
//! character tables over cyclotomic integers, p-blocks and π-blocks,
//! defect groups of π-blocks in π-separable groups, and a checker for the
//! classical block-theoretic facts these satisfy.

pub mod arith;
pub mod blocks;
pub mod bsgs;
pub mod cache;
pub mod char_table;
pub mod cyclo;
pub mod defect;
pub mod error;
pub mod group;
pub mod harness;
pub mod landau;
pub mod perm;
pub mod properties;
pub mod structure;

pub use error::{Error, Result};
pub use group::{ConjClass, Group, Quotient};
pub use perm::Permutation;
