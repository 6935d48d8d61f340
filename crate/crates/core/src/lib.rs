//! Exact verification engine for deformations of flat space-time symmetry
//! algebras into their curved counterparts.
//!
//! The crate machine-checks, in exact arithmetic, the operator identities that
//! deform a Poincare-type Lie algebra into a pseudo-orthogonal algebra of one
//! higher rank, the inverse ("anti-deformation") identities that reconstruct
//! the translations, and a q-deformed analogue on Fourier modes. Three
//! independent computational engines cross-check each other:
//!
//! * a PBW normal-ordering kernel over finitely presented Lie algebras
//!   ([`algebra`]), with exact Gaussian-rational coefficients ([`exact`]);
//! * a truncated multivariate Taylor-jet oracle realizing the same operators
//!   as differential operators on mass shells ([`shell`]);
//! * banded operators on a truncated Fourier-mode basis for the q-deformed
//!   case ([`qdeform`]).
//!
//! [`suite`] orchestrates the named verification suites and [`report`] emits
//! deterministic, byte-stable report documents.

pub mod algebra;
pub mod cache;
pub mod embedding;
pub mod exact;
pub mod fundamental;
pub mod presets;
pub mod qdeform;
pub mod report;
pub mod shell;
pub mod spectra;
pub mod suite;

pub use algebra::{AlgebraPresentation, GeneratorId, Monomial, NcPolynomial};
pub use exact::{GaussianRational, LaurentPoly, QBase, RationalFunction};
pub use report::{CheckOutcome, CheckStatus, VerificationReport};

/// Engine version string, embedded in reports and cache keys.
pub const ENGINE_VERSION: &str = env!("CARGO_PKG_VERSION");
