//! Scaffold-based computation of limits, colimits, and generalized ranks of
//! poset-indexed diagrams of vector spaces over a prime field.
//!
//! The central objects are *initial scaffolds*: minimal subposets of a finite
//! poset (or of an interval in the grid `N^d`) whose inclusion is an initial
//! functor, so that restricting a diagram to the scaffold preserves its limit.
//! Final scaffolds are the dual notion and preserve colimits.
//!
//! The crate is organized as follows:
//!
//! * [`poset`] - finite posets given by Hasse edges, order queries,
//!   connectivity, downsets and minima/maxima.
//! * [`grid`] - points and intervals in `N^d`, upset presentations,
//!   membership tests, and materialization to explicit posets.
//! * [`scaffold`] - initial/final scaffolds of arbitrary finite posets, plus
//!   the brute-force essential-point oracle and scaffold verification.
//! * [`grid_scaffold`] - specialized scaffold algorithms for grid intervals:
//!   the slice sweep for `d <= 3`, the pairwise-join algorithm for any `d`,
//!   and the Koszul-complex Betti-support oracle.
//! * [`linalg`] - exact dense linear algebra over `Z/p`.
//! * [`rep`] - matrix representations of poset modules, grade-labeled
//!   matrices, three-term complexes of free modules, and the restriction of
//!   their homology to a subposet.
//! * [`limits`] - presection bases (limits), copresentation bases
//!   (colimits), and generalized ranks, computed through scaffolds.
//! * [`instances`] - deterministic random instance generators used by tests
//!   and the benchmark harness.

pub mod error;
pub mod grid;
pub mod grid_scaffold;
pub mod instances;
pub mod limits;
pub mod linalg;
pub mod order;
pub mod poset;
pub mod rep;
pub mod scaffold;

pub use error::Error;

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;
