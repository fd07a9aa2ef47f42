//! Desk-scale exact computation around preimages of iterated phi and sigma:
//! preimage enumeration and counting for arbitrary composition words, moment
//! sums with explicit Rankin-parameter exponents, smooth-number statistics
//! (Psi, Pi, Phi_k, Dickman rho), the L-growth gauges and the P/Q/R
//! preimage-set decomposition.
//!
//! Everything integer-valued is exact over u64 (128-bit intermediates where
//! products can spill); range scans share one immutable smallest-prime-factor
//! sieve and reduce deterministically, so results are bit-identical across
//! worker counts.
//!
//! ```
//! use phisig::{count_preimages, phi_preimages, ArithWord};
//!
//! assert_eq!(phi_preimages(4).unwrap(), vec![5, 8, 10, 12]);
//! let phi2 = ArithWord::phi_iterate(2).unwrap();
//! assert_eq!(count_preimages(&phi2, 1).unwrap(), 5);
//! ```

pub mod arith;
pub mod cli;
pub mod error;
pub mod inverse;
pub mod moments;
pub mod parallel;
pub mod prooflab;
pub mod report;
pub mod ser;
pub mod smooth;

pub use arith::{ArithWord, FactorSieve, Factorization, Func};
pub use error::{Error, Result};
pub use inverse::{
    count_preimages, iterated_preimages, phi_preimages, sigma_preimages, PreimageEngine,
    PreimageLevels,
};
