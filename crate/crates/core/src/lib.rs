//! Cyclic codes of length `2n` (`n` odd) over the chain ring
//! `R = F_{2^m}[u]/<u^k>`.
//!
//! A code is named by one ideal descriptor per irreducible factor of
//! `x^n - 1`; from those names the crate counts, enumerates and dualizes
//! codes, lists the self-dual ones, and expands codewords. The [`oracle`]
//! module recomputes the same objects by exhaustive search for small
//! parameters.

pub mod chain_ideals;
pub mod cli;
pub mod codes;
pub mod decomp;
pub mod error;
pub mod field;
pub mod linalg;
pub mod oracle;
pub mod poly;
mod splitting;

pub use chain_ideals::{
    card_log2, count_ideals, enumerate_ideals, gamma, generators, nth_ideal, omega1, omega2, ChainElement,
    FactorRing, IdealCase, IdealDescriptor, IdealKind, KElement,
};
pub use codes::{
    code_count, dual_code, enumerate_codes, euclidean_size_check, expand_codewords, sample_codes, selfdual_count,
    selfdual_enumerate, Codeword, CyclicCode,
};
pub use decomp::{compute_idempotents, psi_backward, psi_forward, reciprocal_permutation, Decomposition};
pub use error::{Error, Result};
pub use field::{FieldElement, FieldSpec, ModulusTable};
pub use poly::{extended_gcd, factor_xn_minus_1, reciprocal, Factorization, Polynomial};
