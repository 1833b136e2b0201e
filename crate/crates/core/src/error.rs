use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("extension degree must be at least 1")]
    ZeroExtensionDegree,
    #[error("field of order {p}^{r} exceeds the supported size of 256 elements")]
    FieldTooLarge { p: u32, r: u32 },
    #[error("modulus is not a monic irreducible polynomial of the requested degree")]
    ReducibleModulus,
    #[error("coefficient {0} is not an element of the field")]
    NotAnElement(u32),
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("the zero polynomial is not allowed here")]
    ZeroPolynomial,
    #[error("degree {degree} exceeds the factorization bound {bound}")]
    BeyondFactorBound { degree: usize, bound: usize },
    #[error("{what}: {requested} evaluations exceed the budget of {budget}")]
    BudgetExceeded {
        what: &'static str,
        requested: u128,
        budget: u128,
    },
    #[error("degree must be at least 1")]
    ZeroDegree,
    #[error("truncation of depth {depth} cannot evaluate a polynomial of degree {degree}")]
    DepthTooShallow { depth: usize, degree: usize },
    #[error("not a group: {0}")]
    NotAGroup(String),
    #[error("degree {m} is not below the characteristic {p}")]
    DegreeNotBelowCharacteristic { m: usize, p: u32 },
    #[error("progression length {k} is not below the characteristic {p}")]
    ProgressionTooLong { k: usize, p: u32 },
    #[error("degree mismatch: {0}")]
    DegreeMismatch(String),
    #[error("slot domains differ")]
    SlotDomainMismatch,
    #[error("phase is not homogeneous of positive degree")]
    NotHomogeneous,
    #[error("prime window ({low}, {high}) contains no irreducible polynomial")]
    EmptyWindow { low: usize, high: usize },
    #[error("arithmetic overflow while computing {0}")]
    Overflow(&'static str),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
