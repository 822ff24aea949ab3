//! Points and intervals in the grid `N^d` under the product order.
//!
//! An interval is encoded either by its upset presentation (minima of the
//! interval plus minima of the complementary upset, called cogenerators
//! here) or, in the finite case, by its minima and maxima. Both encodings
//! describe sets that are automatically convex; validation therefore checks
//! containment conditions and connectivity.

use crate::error::Error;
use crate::poset::Poset;
use crate::Result;

/// A point of `N^d`. The derived `Ord` is lexicographic, which is a linear
/// extension of the product order and serves as the canonical grid order.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct GridPoint(pub Vec<u64>);

impl GridPoint {
    pub fn dim(&self) -> usize {
        self.0.len()
    }

    /// Product-order comparison: `self <= other` coordinatewise.
    pub fn leq(&self, other: &GridPoint) -> bool {
        debug_assert_eq!(self.dim(), other.dim());
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn join(&self, other: &GridPoint) -> GridPoint {
        GridPoint(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| *a.max(b))
                .collect(),
        )
    }

    /// Render as a single token, e.g. `1,6,0`. Used for element names.
    pub fn token(&self) -> String {
        self.0
            .iter()
            .map(|c| c.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }

    pub fn parse_token(s: &str) -> Option<GridPoint> {
        let coords: Option<Vec<u64>> = s.split(',').map(|t| t.parse().ok()).collect();
        coords.map(GridPoint)
    }
}

impl std::fmt::Display for GridPoint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({})", self.token())
    }
}

/// Keep only the minimal points of a set (prune dominated ones, dedup).
pub fn prune_to_minimal(points: &[GridPoint]) -> Vec<GridPoint> {
    let mut sorted: Vec<GridPoint> = points.to_vec();
    sorted.sort();
    sorted.dedup();
    let mut out: Vec<GridPoint> = Vec::new();
    for p in &sorted {
        if !out.iter().any(|q| q.leq(p)) && !sorted.iter().any(|q| q != p && q.leq(p)) {
            out.push(p.clone());
        }
    }
    out
}

/// Keep only the maximal points of a set.
pub fn prune_to_maximal(points: &[GridPoint]) -> Vec<GridPoint> {
    let mut sorted: Vec<GridPoint> = points.to_vec();
    sorted.sort();
    sorted.dedup();
    sorted
        .iter()
        .filter(|p| !sorted.iter().any(|q| q != *p && p.leq(q)))
        .cloned()
        .collect()
}

/// Boundary description of a grid interval.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Boundary {
    /// Minima of the complementary upset `Up(Q) \ Q`. Empty means the whole
    /// upset of the minima.
    Cogenerators(Vec<GridPoint>),
    /// Maxima of a finite interval.
    Maxima(Vec<GridPoint>),
}

/// An interval in `N^d`: a connected, convex subposet.
#[derive(Clone, Debug)]
pub struct GridInterval {
    d: usize,
    minima: Vec<GridPoint>,
    boundary: Boundary,
}

/// Default cap on the number of materialized grid points.
pub const DEFAULT_MATERIALIZE_CAP: usize = 500_000;

impl GridInterval {
    /// Build and validate an interval. Generator lists are pruned to
    /// antichains first (inputs may be non-minimal). With `skip_validate`,
    /// containment and connectivity checks are skipped and the input is
    /// trusted.
    pub fn new(
        d: usize,
        minima: Vec<GridPoint>,
        boundary: Boundary,
        skip_validate: bool,
    ) -> Result<GridInterval> {
        if d == 0 {
            return Err(Error::InvalidInterval(
                "dimension must be at least 1".into(),
            ));
        }
        for p in minima.iter().chain(match &boundary {
            Boundary::Cogenerators(c) => c.iter(),
            Boundary::Maxima(m) => m.iter(),
        }) {
            if p.dim() != d {
                return Err(Error::InvalidInterval(format!(
                    "point {p} has dimension {} instead of {d}",
                    p.dim()
                )));
            }
        }
        let minima = prune_to_minimal(&minima);
        if minima.is_empty() {
            return Err(Error::InvalidInterval("no minima given".into()));
        }
        let boundary = match boundary {
            Boundary::Cogenerators(c) => Boundary::Cogenerators(prune_to_minimal(&c)),
            Boundary::Maxima(m) => Boundary::Maxima(prune_to_maximal(&m)),
        };
        let q = GridInterval {
            d,
            minima,
            boundary,
        };
        if !skip_validate {
            q.validate()?;
        }
        Ok(q)
    }

    /// An upset: the interval `Up(generators)` with no cogenerators.
    pub fn upset(d: usize, generators: Vec<GridPoint>) -> Result<GridInterval> {
        GridInterval::new(d, generators, Boundary::Cogenerators(Vec::new()), false)
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn minima(&self) -> &[GridPoint] {
        &self.minima
    }

    pub fn boundary(&self) -> &Boundary {
        &self.boundary
    }

    pub fn maxima(&self) -> Option<&[GridPoint]> {
        match &self.boundary {
            Boundary::Maxima(m) => Some(m),
            Boundary::Cogenerators(_) => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self.boundary, Boundary::Maxima(_))
    }

    /// Point membership: above some minimum, and not excluded by the
    /// boundary.
    pub fn contains(&self, p: &GridPoint) -> bool {
        debug_assert_eq!(p.dim(), self.d);
        if !self.minima.iter().any(|m| m.leq(p)) {
            return false;
        }
        match &self.boundary {
            Boundary::Cogenerators(c) => !c.iter().any(|g| g.leq(p)),
            Boundary::Maxima(m) => m.iter().any(|w| p.leq(w)),
        }
    }

    /// Containment and connectivity checks.
    ///
    /// Both encodings automatically describe convex sets (an upset minus an
    /// upset, or an upset intersected with a downset), so convexity needs no
    /// separate check. Connectivity is checked exactly through the join
    /// graph on the minima: by convexity, two minima `m, m'` lie in the same
    /// component of `Q` if and only if they are linked by a chain of minima
    /// whose consecutive pairwise joins lie in `Q`.
    fn validate(&self) -> Result<()> {
        match &self.boundary {
            Boundary::Cogenerators(cogens) => {
                for c in cogens {
                    if !self.minima.iter().any(|m| m.leq(c)) {
                        return Err(Error::InvalidInterval(format!(
                            "cogenerator {c} is not above any minimum"
                        )));
                    }
                    if self.minima.contains(c) {
                        return Err(Error::InvalidInterval(format!(
                            "cogenerator {c} excludes the minimum {c}"
                        )));
                    }
                }
            }
            Boundary::Maxima(maxima) => {
                if maxima.is_empty() {
                    return Err(Error::InvalidInterval("no maxima given".into()));
                }
                for w in maxima {
                    if !self.minima.iter().any(|m| m.leq(w)) {
                        return Err(Error::InvalidInterval(format!(
                            "maximum {w} is not above any minimum"
                        )));
                    }
                }
                for m in &self.minima {
                    if !maxima.iter().any(|w| m.leq(w)) {
                        return Err(Error::InvalidInterval(format!(
                            "minimum {m} is not below any maximum"
                        )));
                    }
                }
            }
        }
        if !self.join_graph_connected() {
            return Err(Error::InvalidInterval("interval is not connected".into()));
        }
        Ok(())
    }

    fn join_graph_connected(&self) -> bool {
        let n = self.minima.len();
        if n == 0 {
            return false;
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0usize];
        seen[0] = true;
        let mut count = 0;
        while let Some(i) = stack.pop() {
            count += 1;
            for j in 0..n {
                if !seen[j] {
                    let join = self.minima[i].join(&self.minima[j]);
                    if self.contains(&join) {
                        seen[j] = true;
                        stack.push(j);
                    }
                }
            }
        }
        count == n
    }

    /// Enumerate the points of the interval, truncated to `p <= bound` when
    /// a bound is given. Errors when the interval (or its truncation) has
    /// more than `cap` points. Points come out in lexicographic order.
    ///
    /// Enumeration walks upward by unit steps from the minima; convexity
    /// guarantees this reaches every point.
    pub fn enumerate(&self, bound: Option<&GridPoint>, cap: usize) -> Result<Vec<GridPoint>> {
        use std::collections::BTreeSet;
        if !self.is_finite() && bound.is_none() {
            if let Boundary::Cogenerators(c) = &self.boundary {
                // Finite iff every ray from a minimum is cut off; cheap
                // sufficient check: some cogenerator must bound each axis.
                let bounded = (0..self.d).all(|i| {
                    self.minima.iter().all(|m| {
                        c.iter()
                            .any(|g| (0..self.d).all(|j| j == i || g.0[j] <= m.0[j]))
                    })
                });
                if !bounded {
                    return Err(Error::InvalidInterval(
                        "interval is infinite; provide a truncation bound".into(),
                    ));
                }
            }
        }
        let in_range =
            |p: &GridPoint| -> bool { self.contains(p) && bound.is_none_or(|b| p.leq(b)) };
        let mut seen: BTreeSet<GridPoint> = BTreeSet::new();
        let mut stack: Vec<GridPoint> = Vec::new();
        for m in &self.minima {
            if in_range(m) && seen.insert(m.clone()) {
                stack.push(m.clone());
            }
        }
        while let Some(p) = stack.pop() {
            if seen.len() > cap {
                return Err(Error::SizeCap {
                    size: seen.len() as u128,
                    cap,
                });
            }
            for i in 0..self.d {
                let mut q = p.clone();
                q.0[i] += 1;
                if in_range(&q) && !seen.contains(&q) {
                    seen.insert(q.clone());
                    stack.push(q);
                }
            }
        }
        Ok(seen.into_iter().collect())
    }

    /// Materialize the interval as an explicit poset whose elements are the
    /// grid points (named by their tokens, in lexicographic order) and whose
    /// edges are the unit covering steps.
    pub fn to_poset(&self, bound: Option<&GridPoint>, cap: usize) -> Result<Poset> {
        let points = self.enumerate(bound, cap)?;
        let index: std::collections::HashMap<&GridPoint, usize> =
            points.iter().enumerate().map(|(i, p)| (p, i)).collect();
        let names = points.iter().map(|p| p.token()).collect();
        let mut edges = Vec::new();
        for (i, p) in points.iter().enumerate() {
            for c in 0..self.d {
                let mut q = p.clone();
                q.0[c] += 1;
                if let Some(&j) = index.get(&q) {
                    edges.push((i, j));
                }
            }
        }
        edges.sort_unstable();
        Ok(Poset::from_canonical(names, edges))
    }
}

/// Parse the grid text format:
///
/// ```text
/// interval d=2
/// min 0 2
/// min 1 0
/// cogen 2 3
/// ```
///
/// `cogen` and `max` lines are mutually exclusive.
pub fn parse_interval(text: &str, skip_validate: bool) -> Result<GridInterval> {
    let mut d: Option<usize> = None;
    let mut minima = Vec::new();
    let mut cogens = Vec::new();
    let mut maxima = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        let lineno = lineno + 1;
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut tok = line.split_whitespace();
        let head = tok.next().unwrap();
        let parse_point = |tok: std::str::SplitWhitespace<'_>, d: usize| -> Result<GridPoint> {
            let coords: std::result::Result<Vec<u64>, _> = tok.map(|t| t.parse::<u64>()).collect();
            let coords = coords.map_err(|_| Error::Parse {
                line: lineno,
                msg: "coordinates must be natural numbers".into(),
            })?;
            if coords.len() != d {
                return Err(Error::Parse {
                    line: lineno,
                    msg: format!("expected {d} coordinates, got {}", coords.len()),
                });
            }
            Ok(GridPoint(coords))
        };
        match head {
            "interval" => {
                let spec = tok.next().ok_or_else(|| Error::Parse {
                    line: lineno,
                    msg: "expected d=<dim>".into(),
                })?;
                let dim = spec
                    .strip_prefix("d=")
                    .and_then(|s| s.parse::<usize>().ok())
                    .ok_or_else(|| Error::Parse {
                        line: lineno,
                        msg: "expected d=<dim>".into(),
                    })?;
                d = Some(dim);
            }
            "min" | "cogen" | "max" => {
                let dim = d.ok_or_else(|| Error::Parse {
                    line: lineno,
                    msg: "point before 'interval d=<dim>' header".into(),
                })?;
                let p = parse_point(tok, dim)?;
                match head {
                    "min" => minima.push(p),
                    "cogen" => cogens.push(p),
                    _ => maxima.push(p),
                }
            }
            other => {
                return Err(Error::Parse {
                    line: lineno,
                    msg: format!("unexpected directive '{other}'"),
                })
            }
        }
    }
    let d = d.ok_or_else(|| Error::Parse {
        line: 1,
        msg: "missing 'interval d=<dim>' header".into(),
    })?;
    if !cogens.is_empty() && !maxima.is_empty() {
        return Err(Error::Parse {
            line: 1,
            msg: "cogen and max lines are mutually exclusive".into(),
        });
    }
    let boundary = if maxima.is_empty() {
        Boundary::Cogenerators(cogens)
    } else {
        Boundary::Maxima(maxima)
    };
    GridInterval::new(d, minima, boundary, skip_validate)
}

pub fn write_interval(q: &GridInterval) -> String {
    let mut out = format!("interval d={}\n", q.dim());
    let fmt = |p: &GridPoint| {
        p.0.iter()
            .map(|c| c.to_string())
            .collect::<Vec<_>>()
            .join(" ")
    };
    for m in q.minima() {
        out.push_str(&format!("min {}\n", fmt(m)));
    }
    match q.boundary() {
        Boundary::Cogenerators(c) => {
            for g in c {
                out.push_str(&format!("cogen {}\n", fmt(g)));
            }
        }
        Boundary::Maxima(m) => {
            for w in m {
                out.push_str(&format!("max {}\n", fmt(w)));
            }
        }
    }
    out
}
