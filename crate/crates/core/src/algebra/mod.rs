//! Exact arithmetic in `F_q` and `F_q[x]`.

pub mod codes;
pub mod enumerate;
pub mod field;
pub mod irreducible;
pub mod laurent;
pub mod poly;

pub use codes::CodeSpace;
pub use enumerate::{enumerate_sets, PolySet};
pub use field::{Fe, Field};
pub use irreducible::{
    irreducible_count, is_irreducible, Factorization, Factorizer, IrreducibleTable,
};
pub use laurent::LaurentTruncation;
pub use poly::{Degree, Polynomial};
