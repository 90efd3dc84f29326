//! Shared error type for field, polynomial, grid and analysis operations.

use std::fmt;

pub type Result<T> = std::result::Result<T, Error>;

/// Everything that can go wrong across the crate.
///
/// Variants are grouped by the subsystem that raises them. Input validation
/// errors (parse errors, caps, mismatched contexts) are ordinary and should be
/// reported to the user; internal invariant violations panic instead.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    // Field construction and arithmetic.
    NotPrime(u64),
    FieldTooLarge { order: u128, cap: u64 },
    InvalidModulus(String),
    MixedFields,
    DivisionByZero,
    InvalidSubfield { sub_degree: u32, extension_degree: u32 },
    InvalidElement(String),

    // Text input. `pos` is a byte offset into the parsed string.
    Parse { pos: usize, msg: String },

    // Monomials, orderings and polynomials.
    DimensionMismatch { left: usize, right: usize },
    InvalidOrder(String),
    ContextMismatch,
    ZeroPolynomial,
    ZeroDivisor,
    EmptyList,
    IndexOutOfRange { index: usize, num_vars: usize },
    ExponentTooLarge { var: usize, exponent: u32, size: u64 },

    // Grids.
    InvalidGrid(String),
    GridTooLarge { points: u128, cap: u64 },
    NotASubset { var: usize },
    EmptyFactor { var: usize },

    // Footprint analysis.
    LeadingDegreeTooLarge { var: usize, degree: u32, size: u64 },
    NotReduced { var: usize, degree: u32, size: u64 },
    HasLinearFactor,
    ConstantPolynomial,
    NotFullGrid,
    IrreducibilityUnverified(String),
    NotIrreducible { factor: String },
    NotSquareGrid,
    DegreeTooLarge { total_degree: u64, size: u64 },
    ReducesToZero,

    // Constructions and search.
    ZeroConstant,
    NotPrimePower(u64),
    DegenerateCase(String),
    BudgetExhausted,
    SearchSpaceTooLarge { candidates: u128, cap: u64 },

    // Verification suites.
    UnknownSuite(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NotPrime(p) => write!(f, "{} is not prime", p),
            Error::FieldTooLarge { order, cap } => {
                write!(f, "field order {} exceeds the cap {}", order, cap)
            }
            Error::InvalidModulus(msg) => write!(f, "invalid modulus: {}", msg),
            Error::MixedFields => write!(f, "elements belong to different fields"),
            Error::DivisionByZero => write!(f, "division by zero"),
            Error::InvalidSubfield {
                sub_degree,
                extension_degree,
            } => write!(
                f,
                "subfield degree {} does not divide extension degree {}",
                sub_degree, extension_degree
            ),
            Error::InvalidElement(msg) => write!(f, "invalid field element: {}", msg),
            Error::Parse { pos, msg } => write!(f, "parse error at byte {}: {}", pos, msg),
            Error::DimensionMismatch { left, right } => {
                write!(f, "dimension mismatch: {} vs {}", left, right)
            }
            Error::InvalidOrder(msg) => write!(f, "invalid monomial ordering: {}", msg),
            Error::ContextMismatch => {
                write!(f, "operands come from different rings (field or arity differ)")
            }
            Error::ZeroPolynomial => write!(f, "operation undefined for the zero polynomial"),
            Error::ZeroDivisor => write!(f, "division by the zero polynomial"),
            Error::EmptyList => write!(f, "empty input list"),
            Error::IndexOutOfRange { index, num_vars } => write!(
                f,
                "variable index {} out of range for {} variables",
                index, num_vars
            ),
            Error::ExponentTooLarge {
                var,
                exponent,
                size,
            } => write!(
                f,
                "exponent {} of X{} is not below the grid size {}",
                exponent,
                var + 1,
                size
            ),
            Error::InvalidGrid(msg) => write!(f, "invalid grid: {}", msg),
            Error::GridTooLarge { points, cap } => {
                write!(f, "grid has {} points, exceeding the cap {}", points, cap)
            }
            Error::NotASubset { var } => {
                write!(f, "subset for X{} is not contained in the grid factor", var + 1)
            }
            Error::EmptyFactor { var } => {
                write!(f, "grid factor for X{} became empty", var + 1)
            }
            Error::LeadingDegreeTooLarge { var, degree, size } => write!(
                f,
                "leading monomial degree {} in X{} is not below the grid size {}; \
                 reduce modulo the grid first",
                degree,
                var + 1,
                size
            ),
            Error::NotReduced { var, degree, size } => write!(
                f,
                "polynomial degree {} in X{} is not below the grid size {}; \
                 reduce modulo the grid first",
                degree,
                var + 1,
                size
            ),
            Error::HasLinearFactor => write!(
                f,
                "polynomial has a linear factor X-a over the grid; extract factors first"
            ),
            Error::ConstantPolynomial => {
                write!(f, "operation undefined for constant polynomials")
            }
            Error::NotFullGrid => write!(f, "grid must be the full field in every variable"),
            Error::IrreducibilityUnverified(msg) => {
                write!(f, "irreducibility not verified: {}", msg)
            }
            Error::NotIrreducible { factor } => {
                write!(f, "polynomial is reducible; factor found: {}", factor)
            }
            Error::NotSquareGrid => write!(f, "grid factors must all have the same size"),
            Error::DegreeTooLarge { total_degree, size } => write!(
                f,
                "total degree {} is not below the grid size {}",
                total_degree, size
            ),
            Error::ReducesToZero => write!(
                f,
                "polynomial vanishes identically on the grid (reduction is zero)"
            ),
            Error::ZeroConstant => write!(f, "leading constant must be nonzero"),
            Error::NotPrimePower(q) => write!(f, "{} is not a prime power", q),
            Error::DegenerateCase(msg) => write!(f, "degenerate case: {}", msg),
            Error::BudgetExhausted => write!(f, "search budget must be at least 1"),
            Error::SearchSpaceTooLarge { candidates, cap } => write!(
                f,
                "candidate space has {} polynomials, exceeding the exhaustive cap {}",
                candidates, cap
            ),
            Error::UnknownSuite(name) => write!(f, "unknown verification suite: {}", name),
        }
    }
}

impl std::error::Error for Error {}
