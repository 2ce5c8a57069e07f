//! Exact computations around strict unimodality of Gaussian binomial
//! coefficients.
//!
//! The crate is `no_std` (it needs `alloc`). It covers:
//!
//! * [`partition`]: partitions, boxes, complements and enumeration;
//! * [`qbinomial`]: the coefficient vector of `binom(l+m, m)_q` in exact
//!   arithmetic;
//! * [`unimodality`]: the strict unimodality predicate and the
//!   classification of `(l, m)` pairs;
//! * [`lr`]: Littlewood-Richardson coefficients by tableau enumeration;
//! * [`kronecker`]: Kronecker coefficients through the two-row formula and an
//!   independent character-table oracle;
//! * [`certify`]: additivity certificates that extend strict unimodality from
//!   a finite base to arbitrary pairs, plus an independent verifier.
//!
//! IO, parallelism and the command line live in the `qunimodal` crate.

#![no_std]

extern crate alloc;

pub mod certify;
pub mod kronecker;
pub mod lr;
pub mod partition;
pub mod qbinomial;
pub mod unimodality;

pub use certify::{BaseRegistry, Certificate, CertifyError, Node};
pub use kronecker::{CharacterTable, KroneckerError, KroneckerOracle, KroneckerValue, Route};
pub use lr::{LrCache, LrError, LrQuery};
pub use partition::{BoxShape, Partition, PartitionError};
pub use qbinomial::QPolynomial;
pub use unimodality::{PairClass, UnimodalityReport};
