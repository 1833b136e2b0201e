//! Polynomial phases, their derivative forms, bias and zero counts.

pub mod form;
pub mod phase;
pub mod zeros;

pub use form::{Bias, BiasMode, FormOrigin, FormTerm, MultilinearForm, PartitionBlock, RankBounds};
pub use phase::{MonomialTerm, PolynomialPhase, ProductTerm};
pub use zeros::{projective_common_zeros, ZeroCount};
