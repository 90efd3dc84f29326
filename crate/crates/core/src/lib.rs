//! Root counting and footprint-bound classification for multivariate
//! polynomials over finite grids.
//!
//! Given a nonzero polynomial over a finite field and a grid
//! `S_1 x ... x S_m` of per-variable value sets, the number of grid roots is
//! bounded by the footprint value of the leading monomial,
//! `D(X1^{i_1}...Xm^{i_m}) = s_1...s_m - (s_1-i_1)...(s_m-i_m)`,
//! for any monomial ordering with all `i_l < s_l`. The bound is always
//! attained by constants times products of linear factors `X_l - a`; this
//! crate additionally implements the machinery that decides when those
//! trivial products are the only attainers, classifies arbitrary inputs by
//! exhaustive root counting, and generates the classical nontrivial
//! attainers (the Hermitian polynomial and the trace difference).
//!
//! Everything is exact: field arithmetic is table-free modular arithmetic,
//! ordering questions quantified over "any monomial ordering" are decided by
//! rational weight vectors, and root counts come from enumeration over
//! capped grids.
//!
//! ```
//! use footprint::{classify, Classification, Field, Grid, MonomialOrder, Polynomial};
//!
//! let field = Field::parse("2^2")?;
//! let grid = Grid::full(&field, 2)?;
//! let poly = Polynomial::parse("X1^3+X2^2+X2", &field, 2)?;
//! let order = MonomialOrder::parse("lex:X2,X1", 2)?;
//! let report = classify(&poly, &grid, &order)?;
//! assert_eq!(report.root_count, 8);
//! assert_eq!(report.bound, 8);
//! assert_eq!(report.classification, Classification::NontrivialAttaining);
//! # Ok::<(), footprint::Error>(())
//! ```

pub mod analysis;
pub mod construct;
pub mod error;
mod feasibility;
pub mod field;
pub mod grid;
pub mod monomial;
pub mod poly;
pub mod suites;

pub use analysis::{
    check_irreducible_corollary, check_necessary_conditions, classify, extract_linear_factors,
    footprint_bound, is_monomial_ordering_invariant, omega_and_max_monomials,
    possible_leading_monomials, schwartz_zippel_bound, split_check, Classification,
    ConditionReport, FootprintReport, IrreducibleReport, SplitCheck,
};
pub use construct::{
    hermitian_polynomial, search_attaining, trace_difference_polynomial, trivial_polynomial,
    HermitianFixture, SearchMode, SearchOutcome, TraceDifferenceFixture,
};
pub use error::{Error, Result};
pub use field::{Field, FieldElement};
pub use grid::Grid;
pub use monomial::{monomial_gcd, Monomial, MonomialOrder, OrderKind};
pub use poly::Polynomial;
pub use suites::{run_suite, SuiteParams, SuiteReport, SUITE_NAMES};
