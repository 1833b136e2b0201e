//! Exact arithmetic and analytics over `F_q[x]`.
//!
//! The crate is `no_std` (with `alloc`). It covers:
//!
//! * [`algebra`]: the fields `F_q`, the ring `F_q[x]`, truncated Laurent
//!   series encoding linear forms, irreducible tables and factorization.
//! * [`characters`]: a finite abelian group decomposer and the Dirichlet,
//!   short-interval and degree-twist characters built on it.
//! * [`multiplicative`]: multiplicative functions evaluated through
//!   factorization.
//! * [`forms`]: polynomial phases, discrete derivatives, multilinear forms,
//!   bias and projective zero counts.
//! * [`analytics`]: correlations, Gowers norms, pretentious distances and the
//!   other exhaustive statistics.
//!
//! Enable the `parallel` feature (on by default) to spread exhaustive sums
//! over a rayon pool. Reductions use fixed block boundaries and pairwise
//! summation, so results do not depend on the worker count.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod algebra;
pub mod analytics;
pub mod characters;
pub mod descriptor;
mod error;
pub mod forms;
pub(crate) mod math;
pub mod multiplicative;
pub mod reduce;
pub mod value;

pub use algebra::{
    Degree, Factorization, Factorizer, Fe, Field, IrreducibleTable, LaurentTruncation, Polynomial,
};
pub use error::{Error, Result};
pub use num_complex::Complex64;
pub use value::{Turn, Value};

/// Default cap on the number of elementary evaluations an exhaustive
/// routine may perform before refusing.
pub const DEFAULT_BUDGET: u128 = 100_000_000;
