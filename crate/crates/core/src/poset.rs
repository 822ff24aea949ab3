//! Finite posets presented by elements and a DAG of generating edges.
//!
//! Elements are interned strings mapped to dense indices; all hot loops run
//! on indices. The canonical element order is a topological order refined
//! lexicographically by identifier, so every downstream computation has a
//! deterministic tie-break. The full relation matrix (reflexive-transitive
//! closure of the edges) is computed lazily and cached.

use std::collections::{BinaryHeap, HashMap};
use std::sync::OnceLock;

use crate::error::Error;
use crate::Result;

/// Dense boolean relation matrix packed into 64-bit words.
#[derive(Clone, Debug)]
pub struct RelationMatrix {
    n: usize,
    words_per_row: usize,
    bits: Vec<u64>,
}

impl RelationMatrix {
    fn new(n: usize) -> Self {
        let words_per_row = n.div_ceil(64);
        RelationMatrix {
            n,
            words_per_row,
            bits: vec![0; n * words_per_row],
        }
    }

    #[inline]
    fn set(&mut self, a: usize, b: usize) {
        self.bits[a * self.words_per_row + b / 64] |= 1 << (b % 64);
    }

    /// True iff `a <= b`.
    #[inline]
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.bits[a * self.words_per_row + b / 64] >> (b % 64) & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// OR the row of `src` into the row of `dst` (used while closing).
    fn union_row(&mut self, dst: usize, src: usize) {
        let (d, s) = (dst * self.words_per_row, src * self.words_per_row);
        for w in 0..self.words_per_row {
            let v = self.bits[s + w];
            self.bits[d + w] |= v;
        }
    }
}

/// A finite poset. Immutable after construction; safe to share across
/// threads.
#[derive(Debug)]
pub struct Poset {
    names: Vec<String>,
    index: HashMap<String, usize>,
    edges: Vec<(usize, usize)>,
    up_adj: Vec<Vec<usize>>,
    down_adj: Vec<Vec<usize>>,
    relation: OnceLock<RelationMatrix>,
}

impl Poset {
    /// Build a poset from element names and generating edges `(lower, upper)`.
    ///
    /// Edges need not be covering pairs; any DAG generating the intended
    /// order is accepted. Elements are re-indexed into canonical order
    /// (topological, ties broken by name). Rejects cycles and duplicate or
    /// unknown names.
    pub fn new(elements: Vec<String>, edges: Vec<(String, String)>) -> Result<Poset> {
        let mut index = HashMap::new();
        for (i, name) in elements.iter().enumerate() {
            if index.insert(name.clone(), i).is_some() {
                return Err(Error::DuplicateElement(name.clone()));
            }
        }
        let mut raw_edges = Vec::with_capacity(edges.len());
        for (a, b) in &edges {
            let ia = *index
                .get(a)
                .ok_or_else(|| Error::UnknownElement(a.clone()))?;
            let ib = *index
                .get(b)
                .ok_or_else(|| Error::UnknownElement(b.clone()))?;
            if ia == ib {
                return Err(Error::Cycle { element: a.clone() });
            }
            raw_edges.push((ia, ib));
        }
        raw_edges.sort_unstable();
        raw_edges.dedup();

        // Kahn's algorithm; the ready set is a min-heap on names so the
        // resulting order is canonical.
        let n = elements.len();
        let mut indegree = vec![0usize; n];
        let mut succ: Vec<Vec<usize>> = vec![Vec::new(); n];
        for &(a, b) in &raw_edges {
            succ[a].push(b);
            indegree[b] += 1;
        }
        let mut heap: BinaryHeap<std::cmp::Reverse<(&str, usize)>> = (0..n)
            .filter(|&i| indegree[i] == 0)
            .map(|i| std::cmp::Reverse((elements[i].as_str(), i)))
            .collect();
        let mut order = Vec::with_capacity(n);
        while let Some(std::cmp::Reverse((_, i))) = heap.pop() {
            order.push(i);
            for &j in &succ[i] {
                indegree[j] -= 1;
                if indegree[j] == 0 {
                    heap.push(std::cmp::Reverse((elements[j].as_str(), j)));
                }
            }
        }
        if order.len() != n {
            let culprit = (0..n)
                .find(|&i| indegree[i] > 0)
                .map(|i| elements[i].clone())
                .unwrap_or_default();
            return Err(Error::Cycle { element: culprit });
        }

        let mut old_to_new = vec![0usize; n];
        for (new, &old) in order.iter().enumerate() {
            old_to_new[old] = new;
        }
        let names: Vec<String> = order.iter().map(|&old| elements[old].clone()).collect();
        let edges: Vec<(usize, usize)> = {
            let mut e: Vec<_> = raw_edges
                .iter()
                .map(|&(a, b)| (old_to_new[a], old_to_new[b]))
                .collect();
            e.sort_unstable();
            e
        };
        Ok(Self::from_canonical(names, edges))
    }

    /// Build directly from names already in a valid topological order with
    /// index edges `(lower, upper)`, `lower < upper`. Used by the grid
    /// materializer, where the canonical order is lexicographic on
    /// coordinates rather than on rendered names.
    pub(crate) fn from_canonical(names: Vec<String>, edges: Vec<(usize, usize)>) -> Poset {
        debug_assert!(edges.iter().all(|&(a, b)| a < b));
        let n = names.len();
        let index = names
            .iter()
            .enumerate()
            .map(|(i, s)| (s.clone(), i))
            .collect();
        let mut up_adj: Vec<Vec<usize>> = vec![Vec::new(); n];
        let mut down_adj: Vec<Vec<usize>> = vec![Vec::new(); n];
        for &(a, b) in &edges {
            up_adj[a].push(b);
            down_adj[b].push(a);
        }
        Poset {
            names,
            index,
            edges,
            up_adj,
            down_adj,
            relation: OnceLock::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// The reflexive-transitive closure of the edge set, computed on first
    /// use by sweeping rows in reverse canonical order.
    pub fn relation(&self) -> &RelationMatrix {
        self.relation.get_or_init(|| {
            let n = self.len();
            let mut rel = RelationMatrix::new(n);
            for v in (0..n).rev() {
                rel.set(v, v);
                // split_at_mut not needed: union via temporary of successors
                for idx in 0..self.up_adj[v].len() {
                    let u = self.up_adj[v][idx];
                    rel.union_row(v, u);
                }
            }
            rel
        })
    }

    /// True iff `a <= b` in the partial order.
    #[inline]
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.relation().leq(a, b)
    }

    /// The open downset `{p : p < q}`, in canonical order.
    pub fn open_downset(&self, q: usize) -> Vec<usize> {
        (0..self.len())
            .filter(|&p| p != q && self.leq(p, q))
            .collect()
    }

    /// The closed downset `{p : p <= q}`, in canonical order.
    pub fn closed_downset(&self, q: usize) -> Vec<usize> {
        (0..self.len()).filter(|&p| self.leq(p, q)).collect()
    }

    pub fn open_upset(&self, q: usize) -> Vec<usize> {
        (0..self.len())
            .filter(|&p| p != q && self.leq(q, p))
            .collect()
    }

    pub fn minima(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&q| self.down_adj[q].is_empty())
            .collect()
    }

    pub fn maxima(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&q| self.up_adj[q].is_empty())
            .collect()
    }

    /// Connected components of the full subposet induced on `subset`,
    /// via comparability between pairs. Components and their contents are
    /// sorted. The empty subset has zero components.
    pub fn components(&self, subset: &[usize]) -> Vec<Vec<usize>> {
        let k = subset.len();
        let mut seen = vec![false; k];
        let mut comps = Vec::new();
        for start in 0..k {
            if seen[start] {
                continue;
            }
            let mut stack = vec![start];
            seen[start] = true;
            let mut comp = Vec::new();
            while let Some(i) = stack.pop() {
                comp.push(subset[i]);
                for j in 0..k {
                    if !seen[j]
                        && (self.leq(subset[i], subset[j]) || self.leq(subset[j], subset[i]))
                    {
                        seen[j] = true;
                        stack.push(j);
                    }
                }
            }
            comp.sort_unstable();
            comps.push(comp);
        }
        comps.sort();
        comps
    }

    /// Components of the open downset of `q`, computed by DFS over the edge
    /// subgraph among elements `< q`. Edge paths between comparable elements
    /// of a downset stay inside the downset, so this matches
    /// `components(open_downset(q))` at `O(|E|)` cost.
    pub fn downset_components(&self, q: usize) -> Vec<Vec<usize>> {
        let below = self.open_downset(q);
        let mut in_set = vec![false; self.len()];
        for &p in &below {
            in_set[p] = true;
        }
        let mut seen = vec![false; self.len()];
        let mut comps = Vec::new();
        for &start in &below {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut stack = vec![start];
            let mut comp = Vec::new();
            while let Some(v) = stack.pop() {
                comp.push(v);
                for &u in self.up_adj[v].iter().chain(self.down_adj[v].iter()) {
                    if in_set[u] && !seen[u] {
                        seen[u] = true;
                        stack.push(u);
                    }
                }
            }
            comp.sort_unstable();
            comps.push(comp);
        }
        comps.sort();
        comps
    }

    /// The opposite poset, with its own canonical order.
    pub fn opposite(&self) -> Poset {
        let elements = self.names.clone();
        let edges = self
            .edges
            .iter()
            .map(|&(a, b)| (self.names[b].clone(), self.names[a].clone()))
            .collect();
        Poset::new(elements, edges).expect("opposite of a poset is a poset")
    }

    pub fn is_connected(&self) -> bool {
        if self.is_empty() {
            return false;
        }
        let all: Vec<usize> = (0..self.len()).collect();
        // Use the edge graph directly; comparability and edge reachability
        // give the same components on the whole poset.
        let mut seen = vec![false; self.len()];
        let mut stack = vec![0usize];
        seen[0] = true;
        let mut count = 0;
        while let Some(v) = stack.pop() {
            count += 1;
            for &u in self.up_adj[v].iter().chain(self.down_adj[v].iter()) {
                if !seen[u] {
                    seen[u] = true;
                    stack.push(u);
                }
            }
        }
        count == all.len()
    }
}

/// Parse the Hasse text format:
///
/// ```text
/// poset
/// elem t
/// edge t x
/// # comment
/// ```
pub fn parse_hasse(text: &str) -> Result<Poset> {
    let mut elements = Vec::new();
    let mut edges = Vec::new();
    let mut saw_header = false;
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        let lineno = lineno + 1;
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut tok = line.split_whitespace();
        let head = tok.next().unwrap();
        match head {
            "poset" => {
                saw_header = true;
            }
            "elem" => {
                let name = tok.next().ok_or_else(|| Error::Parse {
                    line: lineno,
                    msg: "elem requires a name".into(),
                })?;
                elements.push(name.to_string());
            }
            "edge" => {
                let a = tok.next().ok_or_else(|| Error::Parse {
                    line: lineno,
                    msg: "edge requires two names".into(),
                })?;
                let b = tok.next().ok_or_else(|| Error::Parse {
                    line: lineno,
                    msg: "edge requires two names".into(),
                })?;
                edges.push((a.to_string(), b.to_string()));
            }
            other => {
                return Err(Error::Parse {
                    line: lineno,
                    msg: format!("unexpected directive '{other}'"),
                })
            }
        }
    }
    if !saw_header {
        return Err(Error::Parse {
            line: 1,
            msg: "missing 'poset' header".into(),
        });
    }
    Poset::new(elements, edges)
}

/// Render a poset in the Hasse text format.
pub fn write_hasse(poset: &Poset) -> String {
    let mut out = String::from("poset\n");
    for name in poset.names() {
        out.push_str(&format!("elem {name}\n"));
    }
    for &(a, b) in poset.edges() {
        out.push_str(&format!("edge {} {}\n", poset.name(a), poset.name(b)));
    }
    out
}
