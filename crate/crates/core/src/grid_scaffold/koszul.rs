//! Betti-support oracle via upper Koszul complexes.
//!
//! For a monomial ideal `J` (equivalently, an upset of `N^d` given by its
//! generators) the degrees supporting the zeroth Betti numbers are the
//! generators, and a degree `z` supports a first Betti number exactly when
//! the simplicial complex
//!
//! ```text
//! K^z(J) = { s, a nonempty subset of the coordinate directions,
//!            with x^(z - e_s) in J }
//! ```
//!
//! is nonempty with at least two connected components. Essential points of
//! the upset are exactly the first-Betti support, so this gives an
//! independent route to scaffold element sets.

use std::collections::BTreeSet;

use crate::grid::{prune_to_minimal, GridInterval, GridPoint};

/// Supports of the zeroth and first Betti numbers of a monomial ideal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BettiSupport {
    pub beta0: Vec<GridPoint>,
    pub beta1: Vec<GridPoint>,
}

fn in_ideal(p: &[i64], generators: &[GridPoint]) -> bool {
    if p.iter().any(|&c| c < 0) {
        return false;
    }
    generators
        .iter()
        .any(|g| g.0.iter().zip(p).all(|(gc, pc)| *gc as i64 <= *pc))
}

/// Number of connected components of `K^z(J)`, from its 1-skeleton.
fn koszul_component_count(z: &GridPoint, generators: &[GridPoint]) -> usize {
    let d = z.dim();
    let base: Vec<i64> = z.0.iter().map(|&c| c as i64).collect();
    let vertices: Vec<usize> = (0..d)
        .filter(|&i| {
            let mut p = base.clone();
            p[i] -= 1;
            in_ideal(&p, generators)
        })
        .collect();
    if vertices.is_empty() {
        return 0;
    }
    let mut comp: Vec<usize> = (0..vertices.len()).collect();
    fn find(comp: &mut Vec<usize>, i: usize) -> usize {
        if comp[i] != i {
            let r = find(comp, comp[i]);
            comp[i] = r;
        }
        comp[i]
    }
    for a in 0..vertices.len() {
        for b in a + 1..vertices.len() {
            let mut p = base.clone();
            p[vertices[a]] -= 1;
            p[vertices[b]] -= 1;
            if in_ideal(&p, generators) {
                let (ra, rb) = (find(&mut comp, a), find(&mut comp, b));
                if ra != rb {
                    comp[ra] = rb;
                }
            }
        }
    }
    (0..vertices.len())
        .map(|i| find(&mut comp, i))
        .collect::<BTreeSet<_>>()
        .len()
}

/// Betti supports of the ideal generated by `generators`.
///
/// When `candidates` is not given, the pairwise joins of the generators are
/// used; every degree supporting a first Betti number is such a join.
pub fn koszul_beta1_support(
    generators: &[GridPoint],
    candidates: Option<&[GridPoint]>,
) -> BettiSupport {
    let beta0 = prune_to_minimal(generators);
    let candidate_set: BTreeSet<GridPoint> = match candidates {
        Some(c) => c.iter().cloned().collect(),
        None => {
            let mut joins = BTreeSet::new();
            for (i, a) in beta0.iter().enumerate() {
                for b in &beta0[i + 1..] {
                    joins.insert(a.join(b));
                }
            }
            joins
        }
    };
    let beta1: Vec<GridPoint> = candidate_set
        .into_iter()
        .filter(|z| koszul_component_count(z, &beta0) >= 2)
        .collect();
    BettiSupport { beta0, beta1 }
}

/// Essential points of a grid interval: the Betti-support points of its
/// enclosing upset that lie inside the interval. Together with the minima,
/// these are the elements of every initial scaffold of the interval.
pub fn essential_points_grid(q: &GridInterval) -> Vec<GridPoint> {
    let support = koszul_beta1_support(q.minima(), None);
    let mut out: Vec<GridPoint> = support
        .beta0
        .into_iter()
        .chain(support.beta1)
        .filter(|p| q.contains(p))
        .collect();
    out.sort();
    out
}
