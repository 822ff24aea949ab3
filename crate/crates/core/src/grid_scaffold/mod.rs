//! Scaffold algorithms specialized to intervals in `N^d`.
//!
//! Three routes compute the same element set (cross-validated in tests):
//!
//! * [`sweep`] - the `O(n log n)` slice sweep for `d <= 3`, which walks
//!   horizontal slices of the enclosing upset while maintaining the slice
//!   minima in a balanced search tree.
//! * [`joins`] - the general-`d` algorithm, which restricts attention to
//!   the minima and their pairwise joins and tests essentiality
//!   incrementally against the scaffold built so far.
//! * [`koszul`] - the Betti-support oracle: essential points are the
//!   degrees supporting the first Betti numbers of the associated monomial
//!   ideal, read off from component counts of upper Koszul complexes.

pub mod joins;
pub mod koszul;
pub mod sweep;

pub use joins::scaffold_joins;
pub use koszul::{essential_points_grid, koszul_beta1_support, BettiSupport};
pub use sweep::{scaffold_sweep, sweep_upset_scaffold, SweepLevel, UpsetSweep};

use crate::error::Error;
use crate::grid::{Boundary, GridInterval, GridPoint};
use crate::scaffold::{Direction, Scaffold};
use crate::Result;

/// Algorithm choice for grid scaffolds.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub enum GridAlgo {
    /// Sweep for `d <= 3`, joins otherwise.
    #[default]
    Auto,
    Sweep,
    Joins,
}

/// Initial scaffold of a grid interval with the requested algorithm.
pub fn initial_scaffold_grid(q: &GridInterval, algo: GridAlgo) -> Result<Scaffold<GridPoint>> {
    match algo {
        GridAlgo::Sweep => scaffold_sweep(q),
        GridAlgo::Joins => scaffold_joins(q),
        GridAlgo::Auto => {
            if q.dim() <= 3 && q.dim() >= 2 {
                scaffold_sweep(q)
            } else {
                scaffold_joins(q)
            }
        }
    }
}

/// Final scaffold of a finite grid interval, by reflecting through the top
/// corner of the bounding box, computing an initial scaffold there, and
/// reflecting back. Relations come out as `(w, p)` with `w` a maximum.
pub fn final_scaffold_grid(q: &GridInterval, algo: GridAlgo) -> Result<Scaffold<GridPoint>> {
    let maxima = q.maxima().ok_or_else(|| {
        Error::Unsupported("final scaffolds need a finite interval in extrema form".into())
    })?;
    let d = q.dim();
    let corner: Vec<u64> = (0..d)
        .map(|i| maxima.iter().map(|w| w.0[i]).max().unwrap())
        .collect();
    let reflect = |p: &GridPoint| -> GridPoint {
        GridPoint(p.0.iter().zip(&corner).map(|(c, top)| top - c).collect())
    };
    let r_minima: Vec<GridPoint> = maxima.iter().map(&reflect).collect();
    let r_maxima: Vec<GridPoint> = q.minima().iter().map(&reflect).collect();
    let reflected = GridInterval::new(d, r_minima, Boundary::Maxima(r_maxima), true)?;
    let s = initial_scaffold_grid(&reflected, algo)?;
    let mut elements: Vec<GridPoint> = s.elements.iter().map(&reflect).collect();
    elements.sort();
    let mut relations: Vec<(GridPoint, GridPoint)> = s
        .relations
        .iter()
        .map(|(m, p)| (reflect(m), reflect(p)))
        .collect();
    relations.sort();
    Ok(Scaffold {
        direction: Direction::Final,
        elements,
        relations,
    })
}
