//! Slice-sweep scaffold computation for intervals in `N^2` and `N^3`.
//!
//! Let `U` be the upset of the interval's minima. The sweep walks the
//! heights `z` at which new minima appear, maintaining the minima of the
//! planar slice `U_z` in a search tree ordered by x-coordinate (the slice
//! minima form an antichain, so ordering by x is the reverse of ordering by
//! y). Two families of essential points are discovered per slice:
//!
//! * W-points: joins of consecutive slice minima, when one of the pair was
//!   born at this height and nothing in the previous slice sat between it
//!   and the join;
//! * X-points: previous slice minima that stop being minimal at this
//!   height, lifted to the current slice.
//!
//! A point in both families receives three scaffold relations, a point in
//! one family receives two. Intersecting the resulting scaffold of `U` with
//! the interval itself yields a scaffold of the interval. Plane intervals
//! are handled by embedding `N^2` at height zero.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use crate::error::Error;
use crate::grid::{Boundary, GridInterval, GridPoint};
use crate::scaffold::{Direction, Scaffold};
use crate::Result;

type P3 = [u64; 3];

/// Per-slice record of discovered essential points (kept in `N^3` form).
#[derive(Clone, Debug)]
pub struct SweepLevel {
    pub z: u64,
    pub w_points: Vec<GridPoint>,
    pub x_points: Vec<GridPoint>,
}

/// Scaffold of the upset of the minima, plus the per-slice trace.
#[derive(Clone, Debug)]
pub struct UpsetSweep {
    pub elements: BTreeSet<P3>,
    pub relations: BTreeSet<(P3, P3)>,
    pub levels: Vec<SweepLevel>,
}

fn embed(p: &GridPoint, d: usize) -> Result<P3> {
    match (d, p.0.as_slice()) {
        (2, [x, y]) => Ok([*x, *y, 0]),
        (3, [x, y, z]) => Ok([*x, *y, *z]),
        _ => Err(Error::Unsupported(format!(
            "sweep requires d in {{2, 3}}, got a {}-dimensional point",
            p.dim()
        ))),
    }
}

fn unembed(p: &P3, d: usize) -> GridPoint {
    if d == 2 {
        GridPoint(vec![p[0], p[1]])
    } else {
        GridPoint(p.to_vec())
    }
}

/// Compute a scaffold of `Up(minima)` for points in `N^2` or `N^3`.
///
/// Dominated or duplicate generators are skipped on the fly, so the input
/// need not be an antichain.
pub fn sweep_upset_scaffold(d: usize, minima: &[GridPoint]) -> Result<UpsetSweep> {
    if d != 2 && d != 3 {
        return Err(Error::Unsupported(format!(
            "sweep requires d in {{2, 3}}, got d={d}"
        )));
    }
    let mut gens: Vec<P3> = minima
        .iter()
        .map(|p| embed(p, d))
        .collect::<Result<Vec<_>>>()?;
    // group by height, ascending x (then y) within a height
    gens.sort_by_key(|&[x, y, z]| (z, x, y));
    gens.dedup();

    let mut elements: BTreeSet<P3> = BTreeSet::new();
    let mut relations: BTreeSet<(P3, P3)> = BTreeSet::new();
    let mut levels: Vec<SweepLevel> = Vec::new();

    // frontier: x -> (y, birth height); projection is an antichain, so
    // ascending x means descending y
    let mut frontier: BTreeMap<u64, (u64, u64)> = BTreeMap::new();

    let mut i = 0;
    while i < gens.len() {
        let z = gens[i][2];
        let mut level_end = i;
        while level_end < gens.len() && gens[level_end][2] == z {
            level_end += 1;
        }
        let batch = &gens[i..level_end];
        i = level_end;

        // X-phase: insert this height's generators, recording the frontier
        // points they dominate.
        let mut kept: Vec<(u64, u64)> = Vec::new();
        let mut x_points: Vec<P3> = Vec::new();
        let mut xz_by_y: HashMap<u64, u64> = HashMap::new();
        let mut xz_by_x: HashMap<u64, u64> = HashMap::new();
        for &[mx, my, _] in batch {
            // skip generators dominated by the frontier so far
            if let Some((_, &(ey, _))) = frontier.range(..=mx).next_back() {
                if ey <= my {
                    continue;
                }
            }
            // frontier entries at or above (mx, my): a prefix of the suffix
            // x >= mx, because y decreases with x
            let dying: Vec<(u64, (u64, u64))> = frontier
                .range(mx..)
                .take_while(|&(_, &(ey, _))| ey >= my)
                .map(|(&ex, &e)| (ex, e))
                .collect();
            for (ex, (ey, et)) in dying {
                let xp = [ex, ey, z];
                elements.insert(xp);
                relations.insert(([ex, ey, et], xp));
                relations.insert(([mx, my, z], xp));
                x_points.push(xp);
                xz_by_y.insert(ey, ex);
                xz_by_x.insert(ex, ey);
                frontier.remove(&ex);
            }
            frontier.insert(mx, (my, z));
            elements.insert([mx, my, z]);
            kept.push((mx, my));
        }

        // W-phase: joins of consecutive slice minima around newborn ones.
        let mut w_points: Vec<P3> = Vec::new();
        let mut skip_x: Option<u64> = None;
        for &(mx, my) in &kept {
            if let Some((&sx, &(sy, st))) = frontier.range(mx + 1..).next() {
                let blocked = xz_by_y.get(&my).is_some_and(|&vx| vx < sx);
                if !blocked {
                    let p = [sx, my, z];
                    elements.insert(p);
                    relations.insert(([mx, my, z], p));
                    relations.insert(([sx, sy, st], p));
                    w_points.push(p);
                    skip_x = Some(sx);
                }
            }
            if skip_x != Some(mx) {
                if let Some((&px, &(py, pt))) = frontier.range(..mx).next_back() {
                    let blocked = xz_by_x.get(&mx).is_some_and(|&vy| vy < py);
                    if !blocked {
                        let p = [mx, py, z];
                        elements.insert(p);
                        relations.insert(([px, py, pt], p));
                        relations.insert(([mx, my, z], p));
                        w_points.push(p);
                    }
                }
            }
        }

        w_points.sort_unstable();
        w_points.dedup();
        if !w_points.is_empty() || !x_points.is_empty() || levels.is_empty() {
            levels.push(SweepLevel {
                z,
                w_points: w_points.iter().map(|p| GridPoint(p.to_vec())).collect(),
                x_points: x_points.iter().map(|p| GridPoint(p.to_vec())).collect(),
            });
        }
    }

    Ok(UpsetSweep {
        elements,
        relations,
        levels,
    })
}

/// Membership in `Up(gens)` for query points visited in ascending height,
/// maintaining the staircase of minimal slice points.
struct UpsetMembership {
    by_level: Vec<P3>, // sorted by (z, x)
    next: usize,
    staircase: BTreeMap<u64, u64>, // x -> y
}

impl UpsetMembership {
    fn new(gens: &[P3]) -> Self {
        let mut by_level = gens.to_vec();
        by_level.sort_by_key(|&[x, y, z]| (z, x, y));
        UpsetMembership {
            by_level,
            next: 0,
            staircase: BTreeMap::new(),
        }
    }

    fn advance(&mut self, z: u64) {
        while self.next < self.by_level.len() && self.by_level[self.next][2] <= z {
            let [gx, gy, _] = self.by_level[self.next];
            self.next += 1;
            if let Some((_, &ey)) = self.staircase.range(..=gx).next_back() {
                if ey <= gy {
                    continue; // dominated
                }
            }
            let dying: Vec<u64> = self
                .staircase
                .range(gx..)
                .take_while(|&(_, &ey)| ey >= gy)
                .map(|(&ex, _)| ex)
                .collect();
            for ex in dying {
                self.staircase.remove(&ex);
            }
            self.staircase.insert(gx, gy);
        }
    }

    /// Query points must arrive in ascending z.
    fn contains(&mut self, p: &P3) -> bool {
        self.advance(p[2]);
        match self.staircase.range(..=p[0]).next_back() {
            Some((_, &ey)) => ey <= p[1],
            None => false,
        }
    }
}

/// Membership in `Down(maxima)` for query points visited in descending
/// height, maintaining the staircase of maximal slice points.
struct DownsetMembership {
    by_level: Vec<P3>, // sorted descending by z
    next: usize,
    staircase: BTreeMap<u64, u64>, // x -> y, antichain of maximal points
}

impl DownsetMembership {
    fn new(maxima: &[P3]) -> Self {
        let mut by_level = maxima.to_vec();
        by_level.sort_by_key(|&[x, y, z]| (std::cmp::Reverse(z), x, y));
        DownsetMembership {
            by_level,
            next: 0,
            staircase: BTreeMap::new(),
        }
    }

    fn advance(&mut self, z: u64) {
        while self.next < self.by_level.len() && self.by_level[self.next][2] >= z {
            let [wx, wy, _] = self.by_level[self.next];
            self.next += 1;
            if let Some((_, &ey)) = self.staircase.range(wx..).next() {
                if ey >= wy {
                    continue; // dominated by an existing maximal point
                }
            }
            let dying: Vec<u64> = self
                .staircase
                .range(..=wx)
                .rev()
                .take_while(|&(_, &ey)| ey <= wy)
                .map(|(&ex, _)| ex)
                .collect();
            for ex in dying {
                self.staircase.remove(&ex);
            }
            self.staircase.insert(wx, wy);
        }
    }

    /// Query points must arrive in descending z.
    fn contains(&mut self, p: &P3) -> bool {
        self.advance(p[2]);
        match self.staircase.range(p[0]..).next() {
            Some((_, &ey)) => ey >= p[1],
            None => false,
        }
    }
}

/// Compute an initial scaffold of an interval in `N^2` or `N^3` by the
/// slice sweep, then intersect with the interval.
pub fn scaffold_sweep(q: &GridInterval) -> Result<Scaffold<GridPoint>> {
    let d = q.dim();
    let sweep = sweep_upset_scaffold(d, q.minima())?;

    // Decide membership for every scaffold point of the upset. Relations
    // survive iff both endpoints do.
    let mut member: BTreeMap<P3, bool> = BTreeMap::new();
    match q.boundary() {
        Boundary::Cogenerators(cogens) => {
            let cg: Vec<P3> = cogens
                .iter()
                .map(|p| embed(p, d))
                .collect::<Result<Vec<_>>>()?;
            let mut up = UpsetMembership::new(&cg);
            let mut pts: Vec<P3> = sweep.elements.iter().copied().collect();
            pts.sort_by_key(|&[x, _, z]| (z, x));
            for p in pts {
                member.insert(p, !up.contains(&p));
            }
        }
        Boundary::Maxima(maxima) => {
            let mx: Vec<P3> = maxima
                .iter()
                .map(|p| embed(p, d))
                .collect::<Result<Vec<_>>>()?;
            let mut down = DownsetMembership::new(&mx);
            let mut pts: Vec<P3> = sweep.elements.iter().copied().collect();
            pts.sort_by_key(|&[x, _, z]| (std::cmp::Reverse(z), x));
            for p in pts {
                member.insert(p, down.contains(&p));
            }
        }
    }

    let elements: Vec<GridPoint> = sweep
        .elements
        .iter()
        .filter(|p| member[*p])
        .map(|p| unembed(p, d))
        .collect();
    let relations: Vec<(GridPoint, GridPoint)> = sweep
        .relations
        .iter()
        .filter(|(a, b)| member[a] && member[b])
        .map(|(a, b)| (unembed(a, d), unembed(b, d)))
        .collect();
    Ok(Scaffold {
        direction: Direction::Initial,
        elements,
        relations,
    })
}
