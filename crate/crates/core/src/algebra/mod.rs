//! Noncommutative polynomial kernel over finitely presented Lie algebras.
//!
//! Monomials are PBW normal words: generator powers in strictly ascending
//! generator order (translations P_k first, then rotations/boosts L_ij in
//! lexicographic index order), followed by powers of adjoined central symbols
//! (Y, then Z). Multiplication rewrites out-of-order adjacent pairs with
//!
//! ```text
//! x*a*b*y -> x*b*a*y + x*[a,b]*y        (a > b in generator order)
//! ```
//!
//! which terminates because each swap lowers the inversion count and each
//! bracket substitution lowers the degree. A central symbol Y carrying a
//! square relation Y^2 = s (s central) is reduced eagerly, so normal forms
//! have Y-exponent 0 or 1.

mod generator;
mod monomial;
mod poly;
mod presentation;

pub use generator::GeneratorId;
pub use monomial::Monomial;
pub use poly::NcPolynomial;
pub use presentation::{
    AlgebraPresentation, CentralRoot, JacobiFailure, SubstitutionMap, DEFAULT_TERM_LIMIT,
};

use thiserror::Error;

/// Errors from presentation construction and guarded expansion.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("generator {0} appears twice in the presentation")]
    DuplicateGenerator(String),
    #[error("bracket entry references {0}, which is not a generator of the presentation")]
    UnknownGenerator(String),
    #[error("bracket value for [{a},{b}] has degree {degree}; Lie brackets must be linear")]
    NonlinearBracket { a: String, b: String, degree: u32 },
    #[error("bracket for [{a},{b}] is listed twice")]
    DuplicateBracket { a: String, b: String },
    #[error("bracket [{a},{a}] must vanish by antisymmetry")]
    SelfBracket { a: String },
    #[error("Jacobi identity fails for ({a},{b},{c}); residual {residual}")]
    JacobiFailed { a: String, b: String, c: String, residual: String },
    #[error("cannot adjoin {symbol}: square is not central, [square,{generator}] != 0")]
    SquareNotCentral { symbol: String, generator: String },
    #[error("central symbol {0} is already present")]
    SymbolTaken(String),
    #[error("central square for {symbol} may not involve central symbols")]
    SquareInvolvesRoot { symbol: String },
    #[error("term guard tripped: intermediate polynomial exceeded {limit} terms")]
    TermLimitExceeded { limit: usize },
    #[error("substitution image missing for generator {0}")]
    UnmappedGenerator(String),
}
