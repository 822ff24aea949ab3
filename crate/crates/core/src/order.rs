//! Order oracles: constant-time comparison of grades.
//!
//! Module-representation code never walks a poset; it asks one of these
//! oracles whether two grades are comparable. Finite posets answer from
//! their dense relation matrix, grid points by coordinatewise comparison.

use crate::grid::GridPoint;
use crate::poset::Poset;

pub trait OrderOracle<E> {
    /// True iff `a <= b`.
    fn leq(&self, a: &E, b: &E) -> bool;
}

impl OrderOracle<usize> for Poset {
    fn leq(&self, a: &usize, b: &usize) -> bool {
        Poset::leq(self, *a, *b)
    }
}

/// The product order on `N^d`.
#[derive(Clone, Copy, Debug, Default)]
pub struct ProductOrder;

impl OrderOracle<GridPoint> for ProductOrder {
    fn leq(&self, a: &GridPoint, b: &GridPoint) -> bool {
        a.leq(b)
    }
}
