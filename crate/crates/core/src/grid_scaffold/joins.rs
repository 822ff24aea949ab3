//! General-dimension scaffold computation via pairwise joins.
//!
//! Every essential point of an upset `U` in `N^d` is a pairwise join of
//! minima, so it suffices to work in the subposet `T` spanned by the minima
//! and their pairwise joins. Candidates are visited in lexicographic order
//! (a linear extension); for each, the components of its strict downset
//! intersected with the scaffold built so far decide essentiality and supply
//! one relation per component.

use std::collections::BTreeSet;

use crate::grid::{prune_to_minimal, GridInterval, GridPoint};
use crate::scaffold::{Direction, Scaffold};
use crate::Result;

/// Scaffold of `Up(minima)` in any dimension.
pub fn upset_scaffold_joins(minima: &[GridPoint]) -> Scaffold<GridPoint> {
    let minima = prune_to_minimal(minima);
    let min_set: BTreeSet<&GridPoint> = minima.iter().collect();

    let mut candidates: BTreeSet<GridPoint> = BTreeSet::new();
    for (i, a) in minima.iter().enumerate() {
        for b in &minima[i + 1..] {
            candidates.insert(a.join(b));
        }
    }

    // accepted scaffold points so far, in insertion (lexicographic) order
    let mut accepted: Vec<GridPoint> = minima.clone();
    let mut relations: Vec<(GridPoint, GridPoint)> = Vec::new();

    for t in candidates {
        // strict downset of t within the accepted scaffold points
        let below: Vec<usize> = accepted
            .iter()
            .enumerate()
            .filter(|(_, p)| **p != t && p.leq(&t))
            .map(|(i, _)| i)
            .collect();
        // components under comparability
        let k = below.len();
        let mut seen = vec![false; k];
        let mut comps: Vec<Vec<usize>> = Vec::new();
        for s in 0..k {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut stack = vec![s];
            let mut comp = Vec::new();
            while let Some(i) = stack.pop() {
                comp.push(below[i]);
                for j in 0..k {
                    if !seen[j] {
                        let (p, q) = (&accepted[below[i]], &accepted[below[j]]);
                        if p.leq(q) || q.leq(p) {
                            seen[j] = true;
                            stack.push(j);
                        }
                    }
                }
            }
            comp.sort_unstable();
            comps.push(comp);
        }
        if comps.len() != 1 {
            for comp in &comps {
                let rep = comp
                    .iter()
                    .map(|&i| &accepted[i])
                    .filter(|p| min_set.contains(*p))
                    .min()
                    .expect("every downset component contains a minimum")
                    .clone();
                relations.push((rep, t.clone()));
            }
            accepted.push(t);
        }
    }

    accepted.sort();
    relations.sort();
    Scaffold {
        direction: Direction::Initial,
        elements: accepted,
        relations,
    }
}

/// Initial scaffold of a grid interval in any dimension: the scaffold of
/// the enclosing upset intersected with the interval.
pub fn scaffold_joins(q: &GridInterval) -> Result<Scaffold<GridPoint>> {
    let upset = upset_scaffold_joins(q.minima());
    let elements: Vec<GridPoint> = upset
        .elements
        .into_iter()
        .filter(|p| q.contains(p))
        .collect();
    let relations: Vec<(GridPoint, GridPoint)> = upset
        .relations
        .into_iter()
        .filter(|(a, b)| q.contains(a) && q.contains(b))
        .collect();
    Ok(Scaffold {
        direction: Direction::Initial,
        elements,
        relations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid_scaffold::sweep::scaffold_sweep;

    fn pt(coords: &[u64]) -> GridPoint {
        GridPoint(coords.to_vec())
    }

    /// Minima of the quadratic-growth family in `N^4`.
    fn n4_minima(k: u64) -> Vec<GridPoint> {
        let mut m = Vec::new();
        for i in 0..=k {
            m.push(pt(&[i, k - i, 0, 0]));
            m.push(pt(&[0, 0, i, k - i]));
        }
        m
    }

    #[test]
    fn n4_family_cross_joins_essential() {
        let k = 2u64;
        let q = GridInterval::upset(4, n4_minima(k)).unwrap();
        let s = scaffold_joins(&q).unwrap();
        for i in 0..=k {
            for j in 0..=k {
                let e = pt(&[i, k - i, j, k - j]);
                assert!(s.elements.contains(&e), "missing {e}");
            }
        }
        // every scaffold point gets at most d relations
        for e in &s.elements {
            let count = s.relations.iter().filter(|(_, b)| b == e).count();
            assert!(count <= 4);
        }
    }

    #[test]
    fn single_minimum() {
        let q = GridInterval::upset(5, vec![pt(&[1, 2, 3, 4, 5])]).unwrap();
        let s = scaffold_joins(&q).unwrap();
        assert_eq!(s.elements, vec![pt(&[1, 2, 3, 4, 5])]);
        assert!(s.relations.is_empty());
    }

    #[test]
    fn agrees_with_sweep_on_plane_staircase() {
        let q = GridInterval::upset(2, vec![pt(&[0, 4]), pt(&[2, 2]), pt(&[4, 0])]).unwrap();
        let a = scaffold_joins(&q).unwrap();
        let b = scaffold_sweep(&q).unwrap();
        assert_eq!(a.elements, b.elements);
        // relation multisets may differ between algorithms, both verify
        assert_eq!(a.relations.len(), b.relations.len());
    }
}
