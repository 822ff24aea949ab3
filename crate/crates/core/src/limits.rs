//! Limits, colimits, and generalized ranks of poset modules.
//!
//! The limit of a module over a poset with finite downsets is the space of
//! presections: tuples over the fibers at the minima whose images agree at
//! every common upper bound. Restricting to an initial scaffold leaves the
//! presection space unchanged while shrinking the constraint system to one
//! block per scaffold relation pair. Colimits are computed dually from the
//! fibers at the maxima. The generalized rank of a module over a connected
//! poset is the rank of the composite `lim -> G_m -> G_w -> colim` for any
//! comparable pair `(m, w)`; it is computed here on the union of an initial
//! scaffold, a final scaffold, and that single extra relation.

use std::collections::BTreeMap;

use crate::error::Error;
use crate::linalg::Matrix;
use crate::rep::ModuleRep;
use crate::Result;

/// Basis of the limit as presections: vectors in the product of the fibers
/// over the minima, with cone maps reachable through a chosen structure map
/// per element.
#[derive(Clone, Debug)]
pub struct PresectionBasis<E: Ord> {
    pub minima: Vec<E>,
    pub fiber_dims: Vec<usize>,
    /// Columns are the basis presections, stacked minimum by minimum.
    pub basis: Matrix,
    /// Per element: the minimum chosen for its cone map and the composite
    /// structure-map matrix from that minimum.
    pub cone: BTreeMap<E, (E, Matrix)>,
}

impl<E: Clone + Ord> PresectionBasis<E> {
    pub fn dim(&self) -> usize {
        self.basis.cols()
    }

    pub fn offset(&self, m: &E) -> Option<usize> {
        let mut off = 0;
        for (i, mm) in self.minima.iter().enumerate() {
            if mm == m {
                return Some(off);
            }
            off += self.fiber_dims[i];
        }
        None
    }

    /// The cone map to `q` as a matrix from limit coordinates to the fiber
    /// at `q`: coordinate projection to a minimum below `q` composed with a
    /// structure map.
    pub fn cone_map(&self, q: &E) -> Result<Matrix> {
        let (l, step) = self
            .cone
            .get(q)
            .ok_or_else(|| Error::MissingMap("no cone data for element".into()))?;
        let off = self.offset(l).expect("cone minimum is a minimum");
        let rows: Vec<usize> = (off..off + step.cols()).collect();
        let cols: Vec<usize> = (0..self.basis.cols()).collect();
        Ok(step.multiply(&self.basis.submatrix(&rows, &cols)))
    }

    /// Extend one presection (given by its coordinate vector over the
    /// minima) to the fiber at `q`.
    pub fn extend(&self, presection: &[u64], q: &E) -> Result<Vec<u64>> {
        let (l, step) = self
            .cone
            .get(q)
            .ok_or_else(|| Error::MissingMap("no cone data for element".into()))?;
        let off = self.offset(l).expect("cone minimum is a minimum");
        let v = &presection[off..off + step.cols()];
        Ok(step.apply(v))
    }
}

/// Minima of a carrier: elements that never appear as the upper endpoint of
/// a stored relation.
fn carrier_minima<E: Clone + Ord>(rep: &ModuleRep<E>) -> Vec<E> {
    let uppers: std::collections::BTreeSet<&E> = rep.relations.iter().map(|(_, q)| q).collect();
    rep.elements
        .iter()
        .filter(|e| !uppers.contains(e))
        .cloned()
        .collect()
}

fn carrier_maxima<E: Clone + Ord>(rep: &ModuleRep<E>) -> Vec<E> {
    let lowers: std::collections::BTreeSet<&E> = rep.relations.iter().map(|(p, _)| p).collect();
    rep.elements
        .iter()
        .filter(|e| !lowers.contains(e))
        .cloned()
        .collect()
}

/// Compute a presection basis for a module given over an initial scaffold
/// (or over any carrier whose relations all run from minima upward).
///
/// For each element with incoming relations from minima `l_1 < ... < l_k`,
/// consecutive pairs contribute one block of equations
/// `G(l_i -> q) v_{l_i} = G(l_{i+1} -> q) v_{l_{i+1}}`; chaining consecutive
/// pairs spans the same constraints as all pairs. The kernel of the stacked
/// system is the limit.
pub fn limit_presections<E: Clone + Ord>(rep: &ModuleRep<E>) -> Result<PresectionBasis<E>> {
    let minima = carrier_minima(rep);
    let fiber_dims: Vec<usize> = minima.iter().map(|m| rep.dim(m)).collect();
    let total: usize = fiber_dims.iter().sum();
    let offsets: BTreeMap<&E, usize> = {
        let mut off = 0;
        minima
            .iter()
            .zip(&fiber_dims)
            .map(|(m, d)| {
                let o = off;
                off += d;
                (m, o)
            })
            .collect()
    };

    // incoming relations grouped by upper endpoint, in canonical order
    let mut incoming: BTreeMap<&E, Vec<&E>> = BTreeMap::new();
    for (p, q) in &rep.relations {
        if !offsets.contains_key(p) {
            return Err(Error::MissingMap(
                "carrier relation does not start at a minimum".into(),
            ));
        }
        incoming.entry(q).or_default().push(p);
    }

    let mut blocks: Vec<(usize, Vec<(usize, Matrix, bool)>)> = Vec::new();
    let mut total_rows = 0;
    for (q, lowers) in &incoming {
        let dq = rep.dim(q);
        if dq == 0 || lowers.len() < 2 {
            continue;
        }
        for pair in lowers.windows(2) {
            let (a, b) = (pair[0], pair[1]);
            let ma = rep.map(a, q)?;
            let mb = rep.map(b, q)?;
            blocks.push((
                total_rows,
                vec![(offsets[a], ma, false), (offsets[b], mb, true)],
            ));
            total_rows += dq;
        }
    }

    let field = rep.field;
    let mut system = Matrix::zeros(total_rows, total, field);
    for (row0, parts) in &blocks {
        for (col0, m, negate) in parts {
            for i in 0..m.rows() {
                for j in 0..m.cols() {
                    let v = m.get(i, j);
                    let v = if *negate { field.neg(v) } else { v };
                    if v != 0 {
                        system.set(
                            row0 + i,
                            col0 + j,
                            field.add(system.get(row0 + i, col0 + j), v),
                        );
                    }
                }
            }
        }
    }

    let basis = system.kernel_basis();

    // cone data: identity at minima, one stored incoming relation elsewhere
    let mut cone = BTreeMap::new();
    for m in &minima {
        cone.insert(m.clone(), (m.clone(), Matrix::identity(rep.dim(m), field)));
    }
    for (q, lowers) in &incoming {
        if cone.contains_key(*q) {
            continue;
        }
        let l = lowers[0];
        cone.insert((*q).clone(), (l.clone(), rep.map(l, q)?));
    }

    Ok(PresectionBasis {
        minima,
        fiber_dims,
        basis,
        cone,
    })
}

/// Basis of the space of sections over a fully materialized carrier: the
/// kernel of the complete equalizer system with one block per stored
/// relation. Used as an oracle against the presection route.
#[derive(Clone, Debug)]
pub struct SectionBasis<E: Ord> {
    pub elements: Vec<E>,
    pub fiber_dims: Vec<usize>,
    pub basis: Matrix,
}

impl<E: Clone + Ord> SectionBasis<E> {
    pub fn dim(&self) -> usize {
        self.basis.cols()
    }

    pub fn offset(&self, e: &E) -> Option<usize> {
        let mut off = 0;
        for (i, x) in self.elements.iter().enumerate() {
            if x == e {
                return Some(off);
            }
            off += self.fiber_dims[i];
        }
        None
    }
}

/// Solve the full section system `G(p -> q) v_p = v_q` over every stored
/// relation of the carrier.
pub fn limit_full_equalizer<E: Clone + Ord>(rep: &ModuleRep<E>) -> Result<SectionBasis<E>> {
    let elements = rep.elements.clone();
    let fiber_dims: Vec<usize> = elements.iter().map(|e| rep.dim(e)).collect();
    let total: usize = fiber_dims.iter().sum();
    let offsets: BTreeMap<&E, usize> = {
        let mut off = 0;
        elements
            .iter()
            .zip(&fiber_dims)
            .map(|(e, d)| {
                let o = off;
                off += d;
                (e, o)
            })
            .collect()
    };
    let field = rep.field;
    let total_rows: usize = rep.relations.iter().map(|(_, q)| rep.dim(q)).sum();
    let mut system = Matrix::zeros(total_rows, total, field);
    let mut row0 = 0;
    for (p, q) in &rep.relations {
        let m = rep.map(p, q)?;
        let (cp, cq) = (offsets[p], offsets[q]);
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                let v = m.get(i, j);
                if v != 0 {
                    system.set(row0 + i, cp + j, v);
                }
            }
            system.set(row0 + i, cq + i, field.neg(1));
        }
        row0 += m.rows();
    }
    Ok(SectionBasis {
        elements,
        fiber_dims,
        basis: system.kernel_basis(),
    })
}

/// Basis of the colimit as a quotient of the product of the fibers at the
/// maxima: a projection matrix onto representative coordinates, plus cocone
/// data per element.
#[derive(Clone, Debug)]
pub struct ColimitBasis<E: Ord> {
    pub maxima: Vec<E>,
    pub fiber_dims: Vec<usize>,
    /// Maps the stacked maxima coordinates onto colimit coordinates.
    pub projection: Matrix,
    /// Per element: the maximum chosen for its cocone map and the structure
    /// map into it.
    pub cocone: BTreeMap<E, (E, Matrix)>,
}

impl<E: Clone + Ord> ColimitBasis<E> {
    pub fn dim(&self) -> usize {
        self.projection.rows()
    }

    pub fn offset(&self, w: &E) -> Option<usize> {
        let mut off = 0;
        for (i, x) in self.maxima.iter().enumerate() {
            if x == w {
                return Some(off);
            }
            off += self.fiber_dims[i];
        }
        None
    }

    /// The cocone map from the fiber at `q` into the colimit.
    pub fn cocone_map(&self, q: &E) -> Result<Matrix> {
        let (w, step) = self
            .cocone
            .get(q)
            .ok_or_else(|| Error::MissingMap("no cocone data for element".into()))?;
        let off = self.offset(w).expect("cocone maximum is a maximum");
        let cols: Vec<usize> = (off..off + step.rows()).collect();
        let rows: Vec<usize> = (0..self.projection.rows()).collect();
        Ok(self.projection.submatrix(&rows, &cols).multiply(step))
    }
}

/// Shared core of the colimit computations: quotient the stacked fibers at
/// `maxima` by the span of the identification columns in `relation_blocks`.
fn colimit_from_identifications<E: Clone + Ord>(
    rep: &ModuleRep<E>,
    maxima: Vec<E>,
    identifications: Matrix,
) -> Result<ColimitBasis<E>> {
    let field = rep.field;
    let fiber_dims: Vec<usize> = maxima.iter().map(|w| rep.dim(w)).collect();
    let total: usize = fiber_dims.iter().sum();
    debug_assert_eq!(identifications.rows(), total);

    // echelon basis of the span, then project away pivot coordinates
    let span = identifications.transpose().row_space_echelon();
    let mut is_pivot = vec![false; total];
    let mut pivot_of_row = Vec::with_capacity(span.rows());
    for r in 0..span.rows() {
        let pc = (0..total).find(|&j| span.get(r, j) != 0).expect("nonzero");
        is_pivot[pc] = true;
        pivot_of_row.push(pc);
    }
    let free: Vec<usize> = (0..total).filter(|&j| !is_pivot[j]).collect();
    let mut projection = Matrix::zeros(free.len(), total, field);
    for (out, &j) in free.iter().enumerate() {
        projection.set(out, j, 1);
        for (r, &pc) in pivot_of_row.iter().enumerate() {
            let v = span.get(r, j);
            if v != 0 {
                projection.set(out, pc, field.neg(v));
            }
        }
    }
    // projection annihilates the identifications by construction
    debug_assert!(projection.multiply(&identifications).is_zero());

    let mut cocone = BTreeMap::new();
    for w in &maxima {
        cocone.insert(w.clone(), (w.clone(), Matrix::identity(rep.dim(w), field)));
    }
    for (p, q) in &rep.relations {
        if cocone.contains_key(p) {
            continue;
        }
        if maxima.contains(q) {
            cocone.insert(p.clone(), (q.clone(), rep.map(p, q)?));
        }
    }
    Ok(ColimitBasis {
        maxima,
        fiber_dims,
        projection,
        cocone,
    })
}

/// Compute the colimit of a module given over a final scaffold (or any
/// carrier whose relations all run up into maxima): identify the images of
/// each element's fiber across consecutive maxima above it.
pub fn colimit_copresentations<E: Clone + Ord>(rep: &ModuleRep<E>) -> Result<ColimitBasis<E>> {
    let maxima = carrier_maxima(rep);
    let field = rep.field;
    let total: usize = maxima.iter().map(|w| rep.dim(w)).sum();
    let offsets: BTreeMap<&E, usize> = {
        let mut off = 0;
        maxima
            .iter()
            .map(|w| {
                let o = off;
                off += rep.dim(w);
                (w, o)
            })
            .collect()
    };

    let mut outgoing: BTreeMap<&E, Vec<&E>> = BTreeMap::new();
    for (p, q) in &rep.relations {
        if !offsets.contains_key(q) {
            return Err(Error::MissingMap(
                "carrier relation does not end at a maximum".into(),
            ));
        }
        outgoing.entry(p).or_default().push(q);
    }

    let mut cols: Vec<Vec<(usize, Matrix, bool)>> = Vec::new();
    let mut total_cols = 0;
    for (p, uppers) in &outgoing {
        let dp = rep.dim(p);
        if dp == 0 || uppers.len() < 2 {
            continue;
        }
        for pair in uppers.windows(2) {
            let (a, b) = (pair[0], pair[1]);
            cols.push(vec![
                (offsets[a], rep.map(p, a)?, false),
                (offsets[b], rep.map(p, b)?, true),
            ]);
            total_cols += dp;
        }
    }
    let mut identifications = Matrix::zeros(total, total_cols, field);
    let mut col0 = 0;
    for parts in &cols {
        let width = parts[0].1.cols();
        for (row0, m, negate) in parts {
            for i in 0..m.rows() {
                for j in 0..width {
                    let v = m.get(i, j);
                    let v = if *negate { field.neg(v) } else { v };
                    if v != 0 {
                        identifications.set(row0 + i, col0 + j, v);
                    }
                }
            }
        }
        col0 += width;
    }
    colimit_from_identifications(rep, maxima, identifications)
}

/// Colimit over a fully materialized carrier: coequalizer identifications
/// for every stored relation. Oracle counterpart of
/// [`colimit_copresentations`].
pub fn colimit_full_coequalizer<E: Clone + Ord>(rep: &ModuleRep<E>) -> Result<ColimitBasis<E>> {
    let field = rep.field;
    let all = rep.elements.clone();
    let offsets: BTreeMap<&E, usize> = {
        let mut off = 0;
        all.iter()
            .map(|e| {
                let o = off;
                off += rep.dim(e);
                (e, o)
            })
            .collect()
    };
    let total: usize = all.iter().map(|e| rep.dim(e)).sum();
    let total_cols: usize = rep.relations.iter().map(|(p, _)| rep.dim(p)).sum();
    let mut identifications = Matrix::zeros(total, total_cols, field);
    let mut col0 = 0;
    for (p, q) in &rep.relations {
        let m = rep.map(p, q)?;
        let (rp, rq) = (offsets[p], offsets[q]);
        for j in 0..m.cols() {
            identifications.set(rp + j, col0 + j, 1);
            for i in 0..m.rows() {
                let v = m.get(i, j);
                if v != 0 {
                    identifications.set(rq + i, col0 + j, field.neg(v));
                }
            }
        }
        col0 += m.cols();
    }
    let mut basis = colimit_from_identifications(rep, all, identifications)?;
    // cocone maps: in the full carrier every element is its own entry point
    basis.cocone = rep
        .elements
        .iter()
        .map(|e| (e.clone(), (e.clone(), Matrix::identity(rep.dim(e), field))))
        .collect();
    Ok(basis)
}

/// Generalized-rank report: the rank of `lim -> G_m -> G_w -> colim`,
/// together with the surrounding dimensions and the chosen pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrankReport<E> {
    pub grank: usize,
    pub dim_lim: usize,
    pub dim_colim: usize,
    pub m: E,
    pub w: E,
}

/// Compute the generalized rank from a module given over the union of an
/// initial scaffold, a final scaffold, and one relation `m <= w` between a
/// minimum and a maximum.
///
/// `rep` must carry maps for all three relation families. The limit is
/// computed from the initial part, the colimit from the final part, and the
/// rank of `cocone_w . G(m -> w) . cone_m` is returned.
pub fn generalized_rank_on_scaffolds<E: Clone + Ord>(
    rep: &ModuleRep<E>,
    initial_elements: &[E],
    initial_relations: &[(E, E)],
    final_elements: &[E],
    final_relations: &[(E, E)],
    m: &E,
    w: &E,
) -> Result<GrankReport<E>> {
    let init_rep = rep.restrict(initial_elements, initial_relations)?;
    let fin_rep = rep.restrict(final_elements, final_relations)?;
    let lim = limit_presections(&init_rep)?;
    let colim = colimit_copresentations(&fin_rep)?;

    let delta_m = {
        // coordinate projection of the presection basis at m
        let off = lim
            .offset(m)
            .ok_or_else(|| Error::MissingMap("chosen minimum not in the limit carrier".into()))?;
        let rows: Vec<usize> = (off..off + rep.dim(m)).collect();
        let cols: Vec<usize> = (0..lim.basis.cols()).collect();
        lim.basis.submatrix(&rows, &cols)
    };
    let delta_w = {
        let off = colim
            .offset(w)
            .ok_or_else(|| Error::MissingMap("chosen maximum not in the colimit carrier".into()))?;
        let rows: Vec<usize> = (0..colim.projection.rows()).collect();
        let cols: Vec<usize> = (off..off + rep.dim(w)).collect();
        colim.projection.submatrix(&rows, &cols)
    };
    let h_mw = if m == w {
        Matrix::identity(rep.dim(m), rep.field)
    } else {
        rep.map(m, w)?
    };
    let composite = delta_w.multiply(&h_mw).multiply(&delta_m);
    Ok(GrankReport {
        grank: composite.rank(),
        dim_lim: lim.dim(),
        dim_colim: colim.dim(),
        m: m.clone(),
        w: w.clone(),
    })
}

/// Oracle counterpart of [`generalized_rank_on_scaffolds`]: the same rank
/// computed from the full section and coequalizer systems over the entire
/// materialized carrier, without scaffolds.
pub fn generalized_rank_full<E: Clone + Ord>(
    rep: &ModuleRep<E>,
    m: &E,
    w: &E,
) -> Result<GrankReport<E>> {
    let sections = limit_full_equalizer(rep)?;
    let colim = colimit_full_coequalizer(rep)?;
    let delta_m = {
        let off = sections
            .offset(m)
            .ok_or_else(|| Error::MissingMap("minimum missing from carrier".into()))?;
        let rows: Vec<usize> = (off..off + rep.dim(m)).collect();
        let cols: Vec<usize> = (0..sections.basis.cols()).collect();
        sections.basis.submatrix(&rows, &cols)
    };
    let delta_w = colim.cocone_map(w)?;
    let h_mw = if m == w {
        Matrix::identity(rep.dim(m), rep.field)
    } else {
        rep.map(m, w)?
    };
    let composite = delta_w.multiply(&h_mw).multiply(&delta_m);
    Ok(GrankReport {
        grank: composite.rank(),
        dim_lim: sections.dim(),
        dim_colim: colim.dim(),
        m: m.clone(),
        w: w.clone(),
    })
}

// ---------------------------------------------------------------------
// End-to-end pipelines: scaffold computation, module restriction, then the
// limit, colimit, or generalized-rank step.
// ---------------------------------------------------------------------

use crate::grid::{GridInterval, GridPoint};
use crate::grid_scaffold::{final_scaffold_grid, initial_scaffold_grid, GridAlgo};
use crate::order::ProductOrder;
use crate::poset::Poset;
use crate::rep::{homology_rep, QrComplex};
use crate::scaffold::{final_scaffold, initial_scaffold, Scaffold};

/// Union of an initial scaffold, a final scaffold, and one extra relation
/// `m <= w`, as a carrier (elements plus oriented relations).
fn union_carrier<E: Clone + Ord>(
    init: &Scaffold<E>,
    fin: &Scaffold<E>,
    m: &E,
    w: &E,
) -> (Vec<E>, Vec<(E, E)>) {
    let mut elements: Vec<E> = init
        .elements
        .iter()
        .chain(fin.elements.iter())
        .cloned()
        .collect();
    elements.sort();
    elements.dedup();
    let mut relations: Vec<(E, E)> = init
        .relations
        .iter()
        .cloned()
        .chain(fin.oriented_relations())
        .collect();
    if m != w {
        relations.push((m.clone(), w.clone()));
    }
    relations.sort();
    relations.dedup();
    (elements, relations)
}

/// Canonical comparable pair of a minimum and a maximum in a finite poset.
pub fn poset_extrema_pair(poset: &Poset) -> Result<(usize, usize)> {
    let minima = poset.minima();
    let maxima = poset.maxima();
    let m = *minima.first().ok_or(Error::Disconnected)?;
    if let Some(&w) = maxima.iter().find(|&&w| poset.leq(m, w)) {
        return Ok((m, w));
    }
    for &m in &minima {
        for &w in &maxima {
            if poset.leq(m, w) {
                return Ok((m, w));
            }
        }
    }
    Err(Error::Unsupported(
        "no comparable minimum/maximum pair found".into(),
    ))
}

/// Lexicographically least minimum of a finite interval together with the
/// least maximum above it.
pub fn interval_extrema_pair(q: &GridInterval) -> Result<(GridPoint, GridPoint)> {
    let maxima = q.maxima().ok_or_else(|| {
        Error::Unsupported("generalized rank needs a finite interval in extrema form".into())
    })?;
    let m = q.minima()[0].clone();
    if let Some(w) = maxima.iter().find(|w| m.leq(w)) {
        return Ok((m, w.clone()));
    }
    for m in q.minima() {
        for w in maxima {
            if m.leq(w) {
                return Ok((m.clone(), w.clone()));
            }
        }
    }
    Err(Error::Unsupported(
        "no comparable minimum/maximum pair found".into(),
    ))
}

/// Limit of the homology of a complex over a finite poset, through an
/// initial scaffold.
pub fn limit_poset_complex(
    poset: &Poset,
    complex: &QrComplex<usize>,
    field: crate::linalg::PrimeField,
) -> Result<(Scaffold<usize>, PresectionBasis<usize>)> {
    let s = initial_scaffold(poset);
    let rep = homology_rep(complex, &s.elements, &s.relations, poset, field)?;
    Ok((s, limit_presections(&rep)?))
}

/// Limit of an explicitly represented module over a finite poset. The
/// representation must store maps for the scaffold's relations.
pub fn limit_poset_rep(
    poset: &Poset,
    rep: &ModuleRep<usize>,
) -> Result<(Scaffold<usize>, PresectionBasis<usize>)> {
    let s = initial_scaffold(poset);
    let restricted = rep.restrict(&s.elements, &s.relations)?;
    Ok((s, limit_presections(&restricted)?))
}

/// Limit of the homology of a complex over a grid interval.
pub fn limit_interval_complex(
    q: &GridInterval,
    complex: &QrComplex<GridPoint>,
    field: crate::linalg::PrimeField,
    algo: GridAlgo,
) -> Result<(Scaffold<GridPoint>, PresectionBasis<GridPoint>)> {
    let s = initial_scaffold_grid(q, algo)?;
    let rep = homology_rep(complex, &s.elements, &s.relations, &ProductOrder, field)?;
    Ok((s, limit_presections(&rep)?))
}

pub fn limit_interval_rep(
    q: &GridInterval,
    rep: &ModuleRep<GridPoint>,
    algo: GridAlgo,
) -> Result<(Scaffold<GridPoint>, PresectionBasis<GridPoint>)> {
    let s = initial_scaffold_grid(q, algo)?;
    let restricted = rep.restrict(&s.elements, &s.relations)?;
    Ok((s, limit_presections(&restricted)?))
}

/// Colimit of the homology of a complex over a finite poset, through a
/// final scaffold.
pub fn colimit_poset_complex(
    poset: &Poset,
    complex: &QrComplex<usize>,
    field: crate::linalg::PrimeField,
) -> Result<(Scaffold<usize>, ColimitBasis<usize>)> {
    let s = final_scaffold(poset);
    let rels = s.oriented_relations();
    let rep = homology_rep(complex, &s.elements, &rels, poset, field)?;
    Ok((s, colimit_copresentations(&rep)?))
}

pub fn colimit_poset_rep(
    poset: &Poset,
    rep: &ModuleRep<usize>,
) -> Result<(Scaffold<usize>, ColimitBasis<usize>)> {
    let s = final_scaffold(poset);
    let rels = s.oriented_relations();
    let restricted = rep.restrict(&s.elements, &rels)?;
    Ok((s, colimit_copresentations(&restricted)?))
}

pub fn colimit_interval_complex(
    q: &GridInterval,
    complex: &QrComplex<GridPoint>,
    field: crate::linalg::PrimeField,
    algo: GridAlgo,
) -> Result<(Scaffold<GridPoint>, ColimitBasis<GridPoint>)> {
    let s = final_scaffold_grid(q, algo)?;
    let rels = s.oriented_relations();
    let rep = homology_rep(complex, &s.elements, &rels, &ProductOrder, field)?;
    Ok((s, colimit_copresentations(&rep)?))
}

pub fn colimit_interval_rep(
    q: &GridInterval,
    rep: &ModuleRep<GridPoint>,
    algo: GridAlgo,
) -> Result<(Scaffold<GridPoint>, ColimitBasis<GridPoint>)> {
    let s = final_scaffold_grid(q, algo)?;
    let rels = s.oriented_relations();
    let restricted = rep.restrict(&s.elements, &rels)?;
    Ok((s, colimit_copresentations(&restricted)?))
}

/// Generalized rank of the homology of a complex over a connected finite
/// poset, through initial and final scaffolds.
pub fn grank_poset_complex(
    poset: &Poset,
    complex: &QrComplex<usize>,
    field: crate::linalg::PrimeField,
) -> Result<GrankReport<usize>> {
    if !poset.is_connected() {
        return Err(Error::Disconnected);
    }
    let init = initial_scaffold(poset);
    let fin = final_scaffold(poset);
    let (m, w) = poset_extrema_pair(poset)?;
    let (elements, relations) = union_carrier(&init, &fin, &m, &w);
    let rep = homology_rep(complex, &elements, &relations, poset, field)?;
    generalized_rank_on_scaffolds(
        &rep,
        &init.elements,
        &init.relations,
        &fin.elements,
        &fin.oriented_relations(),
        &m,
        &w,
    )
}

/// Generalized rank of an explicitly represented module over a connected
/// finite poset. The representation must store maps for the scaffold
/// relations and the chosen extrema pair.
pub fn grank_poset_rep(poset: &Poset, rep: &ModuleRep<usize>) -> Result<GrankReport<usize>> {
    if !poset.is_connected() {
        return Err(Error::Disconnected);
    }
    let init = initial_scaffold(poset);
    let fin = final_scaffold(poset);
    let (m, w) = poset_extrema_pair(poset)?;
    let (elements, relations) = union_carrier(&init, &fin, &m, &w);
    let restricted = rep.restrict(&elements, &relations)?;
    generalized_rank_on_scaffolds(
        &restricted,
        &init.elements,
        &init.relations,
        &fin.elements,
        &fin.oriented_relations(),
        &m,
        &w,
    )
}

/// Generalized rank of the homology of a complex over a finite grid
/// interval.
pub fn grank_interval_complex(
    q: &GridInterval,
    complex: &QrComplex<GridPoint>,
    field: crate::linalg::PrimeField,
    algo: GridAlgo,
) -> Result<GrankReport<GridPoint>> {
    let init = initial_scaffold_grid(q, algo)?;
    let fin = final_scaffold_grid(q, algo)?;
    let (m, w) = interval_extrema_pair(q)?;
    let (elements, relations) = union_carrier(&init, &fin, &m, &w);
    let rep = homology_rep(complex, &elements, &relations, &ProductOrder, field)?;
    generalized_rank_on_scaffolds(
        &rep,
        &init.elements,
        &init.relations,
        &fin.elements,
        &fin.oriented_relations(),
        &m,
        &w,
    )
}

pub fn grank_interval_rep(
    q: &GridInterval,
    rep: &ModuleRep<GridPoint>,
    algo: GridAlgo,
) -> Result<GrankReport<GridPoint>> {
    let init = initial_scaffold_grid(q, algo)?;
    let fin = final_scaffold_grid(q, algo)?;
    let (m, w) = interval_extrema_pair(q)?;
    let (elements, relations) = union_carrier(&init, &fin, &m, &w);
    let restricted = rep.restrict(&elements, &relations)?;
    generalized_rank_on_scaffolds(
        &restricted,
        &init.elements,
        &init.relations,
        &fin.elements,
        &fin.oriented_relations(),
        &m,
        &w,
    )
}
