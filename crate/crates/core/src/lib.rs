//! Exact computation of Tutte polynomials of delta-matroids and ribbon graph
//! polynomials of embedded graphs, together with an irreducibility decision for
//! bivariate integer polynomials and an exhaustive verification harness relating
//! the two: the Tutte polynomial of an even delta-matroid is irreducible exactly
//! when the delta-matroid is connected.
//!
//! Everything is exact. Coefficients are arbitrary-precision integers and
//! subsets of a ground set are `u32` bitmasks.

pub mod deltamatroid;
pub mod error;
pub mod exec;
pub mod factor;
pub mod invariants;
pub mod poly;
pub mod ribbon;
pub mod verify;

pub use deltamatroid::{DeltaMatroid, ElementClass, ElementKind, Mask};
pub use ribbon::{RibbonGraph, SubgraphMetrics};
pub use error::{Error, Result};
pub use exec::Execution;
pub use factor::{factor_bivariate, factor_univariate, is_irreducible, Factorization};
pub use poly::{BiPoly, LaurentPoly, TriPoly};

