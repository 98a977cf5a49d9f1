//! Recoverable distributed storage codes, minrank, and index codes over
//! a shared side-information graph.
//!
//! A storage graph assigns each vertex the set of coordinates it may
//! read. The same graph supports two dual problems: storing as many
//! words as possible so that any single erased coordinate is
//! recoverable from its neighborhood (a storage code), and broadcasting
//! as few symbols as possible so that every receiver, holding its
//! neighborhood as side information, can decode its own coordinate (an
//! index code). This crate computes exact optima for both on small
//! instances and converts codes in either direction:
//!
//! - [`search::rdss_exact`] finds a maximum storage code by
//!   branch-and-bound over non-confusable sets;
//! - [`search::minrank`] finds the minimum rank of a fitting matrix,
//!   whose nullspace is a linear storage code and which yields a linear
//!   index code ([`duality::linear_index_from_fitting`]);
//! - [`duality::index_from_rdss`] turns any storage code into an index
//!   code by covering the word space with translates of the code;
//! - [`duality::duality_report`] checks the two-sided bound tying the
//!   optimal index code length to `n` minus the storage capacity.
//!
//! Words, codebooks, graphs, and covers all have plain-text file forms
//! and a CLI (`rdss`) wrapping the main entry points.

pub mod alphabet;
pub mod confusion;
pub mod covering;
pub mod duality;
pub mod error;
pub mod graph;
pub mod limits;
pub mod rng;
pub mod search;

pub use error::{Error, Result};
pub use limits::Limits;
