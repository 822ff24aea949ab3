//! Deterministic random instance generators for tests and benchmarks.
//!
//! All generators take an explicit RNG so that seeds fully determine the
//! produced instances.

use rand::Rng;

use crate::grid::{Boundary, GridInterval, GridPoint};
use crate::linalg::{Matrix, PrimeField};
use crate::order::OrderOracle;
use crate::poset::Poset;
use crate::rep::{homology_rep, LabeledMatrix, ModuleRep, QrComplex};
use crate::Result;

/// Random DAG poset with up to `max_n` elements. Element names are
/// zero-padded so that name order refines index order.
pub fn random_poset<R: Rng>(rng: &mut R, max_n: usize) -> Poset {
    let n = rng.gen_range(1..=max_n.max(1));
    let names: Vec<String> = (0..n).map(|i| format!("e{i:03}")).collect();
    let density = rng.gen_range(0.8..2.5);
    let p = (density / n as f64).min(0.6);
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(p) {
                edges.push((names[i].clone(), names[j].clone()));
            }
        }
    }
    Poset::new(names, edges).expect("forward edges cannot cycle")
}

pub fn random_connected_poset<R: Rng>(rng: &mut R, max_n: usize) -> Poset {
    loop {
        let p = random_poset(rng, max_n);
        if p.is_connected() {
            return p;
        }
    }
}

/// Random finite interval in `N^d` with small coordinates, suitable for
/// materialization. Returned in extrema form.
pub fn random_interval<R: Rng>(rng: &mut R, d: usize, max_coord: u64) -> GridInterval {
    loop {
        let n_min = rng.gen_range(1..=5);
        let minima: Vec<GridPoint> = (0..n_min)
            .map(|_| GridPoint((0..d).map(|_| rng.gen_range(0..=max_coord)).collect()))
            .collect();
        let bump = |rng: &mut R, p: &GridPoint| {
            GridPoint(
                p.0.iter()
                    .map(|&c| c + rng.gen_range(0..=2))
                    .collect::<Vec<u64>>(),
            )
        };
        let mut maxima: Vec<GridPoint> = Vec::new();
        // joins of random pairs, bumped upward, plus coverage fallback
        for _ in 0..rng.gen_range(1..=4) {
            let a = &minima[rng.gen_range(0..minima.len())];
            let b = &minima[rng.gen_range(0..minima.len())];
            let j = a.join(b);
            maxima.push(bump(rng, &j));
        }
        let all_join = minima
            .iter()
            .skip(1)
            .fold(minima[0].clone(), |acc, m| acc.join(m));
        if rng.gen_bool(0.3) {
            maxima.push(all_join);
        } else {
            // ensure every minimum sits below some maximum
            for m in &minima {
                if !maxima.iter().any(|w| m.leq(w)) {
                    maxima.push(bump(rng, m));
                }
            }
        }
        if let Ok(q) = GridInterval::new(d, minima, Boundary::Maxima(maxima), false) {
            return q;
        }
    }
}

/// Random antichain in `N^3` of exactly `n` points: strictly increasing x,
/// strictly decreasing y, arbitrary heights.
pub fn random_staircase_minima_3d<R: Rng>(rng: &mut R, n: usize, height: u64) -> Vec<GridPoint> {
    let mut xs: Vec<u64> = Vec::with_capacity(n);
    let mut next = 0u64;
    for _ in 0..n {
        next += rng.gen_range(1..=3);
        xs.push(next);
    }
    let mut ys: Vec<u64> = Vec::with_capacity(n);
    let mut top = 0u64;
    for _ in 0..n {
        top += rng.gen_range(1..=3);
        ys.push(top);
    }
    ys.reverse();
    xs.iter()
        .zip(&ys)
        .map(|(&x, &y)| GridPoint(vec![x, y, rng.gen_range(0..=height)]))
        .collect()
}

/// Evenly spaced staircase antichain in `N^2`.
pub fn staircase_minima_2d(n: usize, step: u64) -> Vec<GridPoint> {
    (0..n)
        .map(|i| GridPoint(vec![i as u64 * step, (n - 1 - i) as u64 * step]))
        .collect()
}

/// A thickened staircase interval in `N^2`: staircase minima plus maxima
/// shifted up by `width` in both coordinates. Materializes to roughly
/// `n * width^2 / 2` points.
pub fn band_interval_2d(n: usize, width: u64) -> GridInterval {
    let minima = staircase_minima_2d(n, 2);
    let maxima: Vec<GridPoint> = minima
        .iter()
        .map(|m| GridPoint(vec![m.0[0] + width, m.0[1] + width]))
        .collect();
    GridInterval::new(2, minima, Boundary::Maxima(maxima), false)
        .expect("band interval is connected for width >= 2")
}

/// Minima of the quadratic-growth family in `N^4`: two antidiagonal
/// antichains in complementary coordinate pairs.
pub fn n4_family_minima(k: u64) -> Vec<GridPoint> {
    let mut m = Vec::with_capacity(2 * (k as usize + 1));
    for i in 0..=k {
        m.push(GridPoint(vec![i, k - i, 0, 0]));
    }
    for i in 0..=k {
        m.push(GridPoint(vec![0, 0, i, k - i]));
    }
    m
}

/// Random three-term complex of free modules over the given grade pool,
/// with the chain condition built in: each X-column is sampled from the
/// kernel of the corresponding fiber of `g`.
pub fn random_qr_complex<E, O, R>(
    rng: &mut R,
    grades: &[E],
    oracle: &O,
    field: PrimeField,
    max_y_rank: usize,
) -> QrComplex<E>
where
    E: Clone + Ord,
    O: OrderOracle<E>,
    R: Rng,
{
    let pick = |rng: &mut R| grades[rng.gen_range(0..grades.len())].clone();
    let y_rank = rng.gen_range(1..=max_y_rank.max(1));
    let z_rank = rng.gen_range(0..=max_y_rank / 2);
    let x_rank = rng.gen_range(0..=max_y_rank / 2 + 1);
    let p = field.modulus();

    let y_grades: Vec<E> = (0..y_rank).map(|_| pick(rng)).collect();
    let z_grades: Vec<E> = (0..z_rank).map(|_| pick(rng)).collect();

    let mut g = Matrix::zeros(z_rank, y_rank, field);
    for i in 0..z_rank {
        for j in 0..y_rank {
            if oracle.leq(&z_grades[i], &y_grades[j]) && rng.gen_bool(0.6) {
                g.set(i, j, rng.gen_range(0..p.min(64)));
            }
        }
    }
    let g = LabeledMatrix {
        row_grades: z_grades,
        col_grades: y_grades.clone(),
        entries: g,
    };

    // X-generators preferentially sit above some Y-generator so their
    // fibers are nonempty.
    let x_grades: Vec<E> = (0..x_rank)
        .map(|_| {
            let base = &y_grades[rng.gen_range(0..y_grades.len())];
            let above: Vec<&E> = grades.iter().filter(|q| oracle.leq(base, q)).collect();
            if above.is_empty() {
                pick(rng)
            } else {
                (*above[rng.gen_range(0..above.len())]).clone()
            }
        })
        .collect();

    let mut f = Matrix::zeros(y_rank, x_rank, field);
    for (j, xg) in x_grades.iter().enumerate() {
        let y_idx: Vec<usize> = (0..y_rank)
            .filter(|&i| oracle.leq(&y_grades[i], xg))
            .collect();
        if y_idx.is_empty() {
            continue;
        }
        let z_idx: Vec<usize> = (0..g.row_grades.len())
            .filter(|&i| oracle.leq(&g.row_grades[i], xg))
            .collect();
        let g_fiber = g.entries.submatrix(&z_idx, &y_idx);
        let kernel = g_fiber.kernel_basis();
        if kernel.cols() == 0 {
            continue;
        }
        let coeffs: Vec<u64> = (0..kernel.cols())
            .map(|_| rng.gen_range(0..p.min(64)))
            .collect();
        let v = kernel.apply(&coeffs);
        for (local, &yi) in y_idx.iter().enumerate() {
            f.set(yi, j, v[local]);
        }
    }
    let f = LabeledMatrix {
        row_grades: y_grades,
        col_grades: x_grades,
        entries: f,
    };
    QrComplex { f, g }
}

/// All strict relations of a finite poset, as index pairs.
pub fn all_strict_relations(poset: &Poset) -> Vec<(usize, usize)> {
    let mut rels = Vec::new();
    for a in 0..poset.len() {
        for b in 0..poset.len() {
            if a != b && poset.leq(a, b) {
                rels.push((a, b));
            }
        }
    }
    rels
}

/// Random module representation over the whole poset, with maps stored for
/// every strict relation: the homology of a random complex.
pub fn random_module_rep<R: Rng>(
    rng: &mut R,
    poset: &Poset,
    field: PrimeField,
    max_y_rank: usize,
) -> Result<ModuleRep<usize>> {
    let grades: Vec<usize> = (0..poset.len()).collect();
    let complex = random_qr_complex(rng, &grades, poset, field, max_y_rank);
    let relations = all_strict_relations(poset);
    homology_rep(&complex, &grades, &relations, poset, field)
}
