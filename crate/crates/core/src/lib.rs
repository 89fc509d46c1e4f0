//! Crystal operators, promotion and cyclic sieving on semistandard Young tableaux.
//!
//! The crate enumerates `SST_n(λ)`, implements the Kashiwara operators and the cactus
//! involutions `𝕤_i` through the signature rule, promotion through jeu de taquin and
//! Bender–Knuth involutions, and exact verifiers for cyclic and bicyclic sieving.

pub mod cache;
pub mod crystal;
pub mod cyclotomic;
pub mod enumerate;
pub mod error;
pub mod exec;
pub mod partition;
pub mod perm;
pub mod poly;
pub mod promotion;
pub mod qpoly;
pub mod sieving;
pub mod sweep;
pub mod tableau;

pub use enumerate::{enumerate_sst, TableauSet, DEFAULT_CAP};
pub use error::{Error, Result};
pub use exec::Execution;
pub use partition::Partition;
pub use perm::Permutation;
pub use poly::{BivariatePoly, LaurentPoly};
pub use tableau::{Content, Tableau};
