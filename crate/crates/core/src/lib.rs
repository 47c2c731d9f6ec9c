//! Linear network coding on combination networks and their sub-networks.
//!
//! The crate builds multicast networks (combination, Kneser, skeleton
//! reversals), verifies and searches scalar/vector linear solutions, and
//! computes the minimal scalar field size `q_s`, the minimal vector
//! alphabet `q_v` and their difference exactly on small instances, with
//! re-checkable certificates.

pub mod error;
pub mod gf;
pub mod subspace;
pub mod network;
pub mod lincode;
pub mod graph;
pub mod qkneser;
pub mod skeleton;
pub mod mds;
pub mod ic;
pub mod cert;
pub mod gap;
pub mod cli;

pub use error::{Error, Result};
