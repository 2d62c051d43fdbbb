//! Exact arithmetic for finite-rank free groups and their automorphisms.

pub mod abelian;
pub mod automorphisms;
pub mod characterization;
pub mod error;
pub mod harness;
pub mod involutions;
pub mod stallings;
pub mod whitehead;
pub mod words;

pub use automorphisms::{Automorphism, Endomorphism};
pub use error::{Error, Result};
pub use words::{Letter, Word};
