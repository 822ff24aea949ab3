//! Initial and final scaffolds of arbitrary finite posets.
//!
//! An initial scaffold of `Q` is a subposet whose elements are the minima
//! together with every element whose open downset is disconnected, and which
//! carries, for each such element `p` and each component of the open downset
//! of `p`, exactly one relation `m < p` with `m` a minimum in that
//! component. Its inclusion into `Q` is an initial functor of minimum
//! possible size, so restricting a diagram to it preserves the limit. Final
//! scaffolds are dual and preserve colimits.

use crate::grid::GridPoint;
use crate::poset::Poset;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Direction {
    Initial,
    Final,
}

/// A scaffold over an ambient poset or grid interval.
///
/// For `Direction::Initial`, relations are `(m, p)` with `m` a minimum of
/// the ambient poset and `m < p`. For `Direction::Final`, relations are
/// `(w, p)` with `w` a maximum and `w > p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Scaffold<E> {
    pub direction: Direction,
    pub elements: Vec<E>,
    pub relations: Vec<(E, E)>,
}

impl<E: Clone + Ord> Scaffold<E> {
    /// Relations as `(lower, upper)` pairs regardless of direction.
    pub fn oriented_relations(&self) -> Vec<(E, E)> {
        match self.direction {
            Direction::Initial => self.relations.clone(),
            Direction::Final => self
                .relations
                .iter()
                .map(|(w, p)| (p.clone(), w.clone()))
                .collect(),
        }
    }

    /// Number of relations including identities; the standard size measure
    /// for scaffolds.
    pub fn size(&self) -> usize {
        self.elements.len() + self.relations.len()
    }
}

/// Elements whose open downset has a number of components different from
/// one. The empty downset counts as disconnected, so minima are included.
pub fn brute_force_essential(poset: &Poset) -> Vec<usize> {
    (0..poset.len())
        .filter(|&q| poset.downset_components(q).len() != 1)
        .collect()
}

/// Compute an initial scaffold of a finite poset.
///
/// Elements are processed in canonical (topological) order. For each, the
/// components of its open downset are found by DFS over the edge subgraph
/// below it, and the canonically smallest element of each component (always
/// a minimum) is chosen as that component's representative.
pub fn initial_scaffold(poset: &Poset) -> Scaffold<usize> {
    let mut elements = Vec::new();
    let mut relations = Vec::new();
    for q in 0..poset.len() {
        let comps = poset.downset_components(q);
        if comps.len() != 1 {
            elements.push(q);
            for comp in &comps {
                // contents are sorted, so the representative is the head
                relations.push((comp[0], q));
            }
        }
    }
    relations.sort_unstable();
    Scaffold {
        direction: Direction::Initial,
        elements,
        relations,
    }
}

/// Compute a final scaffold: an initial scaffold of the opposite poset,
/// with relations stored as `(w, p)`, `w` a maximum of the original.
pub fn final_scaffold(poset: &Poset) -> Scaffold<usize> {
    let op = poset.opposite();
    let s = initial_scaffold(&op);
    let back = |i: usize| poset.index_of(op.name(i)).expect("same elements");
    let mut elements: Vec<usize> = s.elements.iter().map(|&i| back(i)).collect();
    elements.sort_unstable();
    let mut relations: Vec<(usize, usize)> = s
        .relations
        .iter()
        .map(|&(m, p)| (back(m), back(p)))
        .collect();
    relations.sort_unstable();
    Scaffold {
        direction: Direction::Final,
        elements,
        relations,
    }
}

/// Check the defining properties of a scaffold, plus initiality of its
/// inclusion:
///
/// (a) elements agree with the brute-force essential set,
/// (b) each element carries exactly one relation into each component of its
///     open downset, with the lower endpoint a minimum in that component,
/// (c) for every `q` in the ambient poset, the closed downset of `q`
///     intersected with the scaffold is connected under the scaffold's own
///     relations.
pub fn verify_scaffold(s: &Scaffold<usize>, poset: &Poset) -> bool {
    match s.direction {
        Direction::Initial => verify_initial(s, poset),
        Direction::Final => {
            let op = poset.opposite();
            let fwd = |i: usize| op.index_of(poset.name(i)).expect("same elements");
            let mut elements: Vec<usize> = s.elements.iter().map(|&i| fwd(i)).collect();
            elements.sort_unstable();
            let mut relations: Vec<(usize, usize)> =
                s.relations.iter().map(|&(w, p)| (fwd(w), fwd(p))).collect();
            relations.sort_unstable();
            verify_initial(
                &Scaffold {
                    direction: Direction::Initial,
                    elements,
                    relations,
                },
                &op,
            )
        }
    }
}

fn verify_initial(s: &Scaffold<usize>, poset: &Poset) -> bool {
    let mut elements = s.elements.clone();
    elements.sort_unstable();
    elements.dedup();
    if elements.len() != s.elements.len() {
        return false;
    }
    if elements != brute_force_essential(poset) {
        return false;
    }
    let in_scaffold = |q: usize| elements.binary_search(&q).is_ok();

    let minima = poset.minima();
    let is_minimum = |q: usize| minima.binary_search(&q).is_ok();

    // (b) per-element relation audit
    let mut rels = s.relations.clone();
    rels.sort_unstable();
    let had_dups = {
        let before = rels.len();
        rels.dedup();
        rels.len() != before
    };
    if had_dups {
        return false;
    }
    let mut incoming: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
    for &(m, p) in &rels {
        if !in_scaffold(m) || !in_scaffold(p) || !is_minimum(m) || !poset.leq(m, p) || m == p {
            return false;
        }
        incoming.entry(p).or_default().push(m);
    }
    for &q in &elements {
        let comps = poset.downset_components(q);
        let ms = incoming.get(&q).cloned().unwrap_or_default();
        if comps.len() <= 1 {
            if !ms.is_empty() {
                return false;
            }
            continue;
        }
        if ms.len() != comps.len() {
            return false;
        }
        // each relation's lower point lies in a distinct component
        let mut used = vec![false; comps.len()];
        for m in &ms {
            match comps.iter().position(|c| c.binary_search(m).is_ok()) {
                Some(i) if !used[i] => used[i] = true,
                _ => return false,
            }
        }
    }

    // (c) initiality: closed downsets meet the scaffold in connected pieces
    let rel_list: Vec<(usize, usize)> = rels;
    for q in 0..poset.len() {
        let verts: Vec<usize> = elements
            .iter()
            .copied()
            .filter(|&p| poset.leq(p, q))
            .collect();
        if verts.is_empty() {
            return false;
        }
        let pos: std::collections::HashMap<usize, usize> =
            verts.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); verts.len()];
        for &(a, b) in &rel_list {
            if let (Some(&ia), Some(&ib)) = (pos.get(&a), pos.get(&b)) {
                adj[ia].push(ib);
                adj[ib].push(ia);
            }
        }
        let mut seen = vec![false; verts.len()];
        let mut stack = vec![0usize];
        seen[0] = true;
        let mut count = 0;
        while let Some(v) = stack.pop() {
            count += 1;
            for &u in &adj[v] {
                if !seen[u] {
                    seen[u] = true;
                    stack.push(u);
                }
            }
        }
        if count != verts.len() {
            return false;
        }
    }
    true
}

/// Render a scaffold over a finite poset in the scaffold text format.
pub fn write_scaffold_poset(s: &Scaffold<usize>, poset: &Poset) -> String {
    let dir = match s.direction {
        Direction::Initial => "initial",
        Direction::Final => "final",
    };
    let mut out = format!("scaffold {dir}\n");
    for &e in &s.elements {
        out.push_str(&format!("elem {}\n", poset.name(e)));
    }
    for &(a, b) in &s.relations {
        out.push_str(&format!("rel {} {}\n", poset.name(a), poset.name(b)));
    }
    out
}

/// Render a scaffold over a grid interval; points become single tokens.
pub fn write_scaffold_grid(s: &Scaffold<GridPoint>) -> String {
    let dir = match s.direction {
        Direction::Initial => "initial",
        Direction::Final => "final",
    };
    let mut out = format!("scaffold {dir}\n");
    for e in &s.elements {
        out.push_str(&format!("elem {}\n", e.token()));
    }
    for (a, b) in &s.relations {
        out.push_str(&format!("rel {} {}\n", a.token(), b.token()));
    }
    out
}

/// Parse the scaffold text format back into name form.
pub fn parse_scaffold(
    text: &str,
) -> crate::Result<(Direction, Vec<String>, Vec<(String, String)>)> {
    use crate::error::Error;
    let mut direction = None;
    let mut elements = Vec::new();
    let mut relations = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        let lineno = lineno + 1;
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut tok = line.split_whitespace();
        match tok.next().unwrap() {
            "scaffold" => {
                direction = match tok.next() {
                    Some("initial") => Some(Direction::Initial),
                    Some("final") => Some(Direction::Final),
                    _ => {
                        return Err(Error::Parse {
                            line: lineno,
                            msg: "expected 'scaffold initial' or 'scaffold final'".into(),
                        })
                    }
                };
            }
            "elem" => {
                let name = tok.next().ok_or_else(|| Error::Parse {
                    line: lineno,
                    msg: "elem requires a name".into(),
                })?;
                elements.push(name.to_string());
            }
            "rel" => {
                let a = tok.next();
                let b = tok.next();
                match (a, b) {
                    (Some(a), Some(b)) => relations.push((a.to_string(), b.to_string())),
                    _ => {
                        return Err(Error::Parse {
                            line: lineno,
                            msg: "rel requires two names".into(),
                        })
                    }
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
    let direction = direction.ok_or(Error::Parse {
        line: 1,
        msg: "missing 'scaffold' header".into(),
    })?;
    Ok((direction, elements, relations))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::parse_hasse;

    fn fig1() -> Poset {
        parse_hasse(
            "poset\nelem t\nelem u\nelem v\nelem w\nelem x\nelem y\nelem z\n\
             edge t x\nedge u x\nedge u y\nedge v y\nedge x z\nedge y z\nedge w z\n",
        )
        .unwrap()
    }

    fn names(p: &Poset, ids: &[usize]) -> Vec<String> {
        ids.iter().map(|&i| p.name(i).to_string()).collect()
    }

    #[test]
    fn fig1_initial_scaffold() {
        let p = fig1();
        let s = initial_scaffold(&p);
        assert_eq!(
            names(&p, &s.elements),
            vec!["t", "u", "v", "w", "x", "y", "z"]
        );
        let rels: Vec<(String, String)> = s
            .relations
            .iter()
            .map(|&(a, b)| (p.name(a).to_string(), p.name(b).to_string()))
            .collect();
        let blue = [("t", "x"), ("u", "x"), ("u", "y"), ("v", "y"), ("w", "z")];
        for (a, b) in blue {
            assert!(rels.contains(&(a.to_string(), b.to_string())), "{a}<{b}");
        }
        assert_eq!(rels.len(), 6);
        let red: Vec<_> = rels
            .iter()
            .filter(|(a, b)| b == "z" && (a == "t" || a == "u" || a == "v"))
            .collect();
        assert_eq!(red.len(), 1);
        assert!(verify_scaffold(&s, &p));
    }

    #[test]
    fn chain_scaffold_is_bottom() {
        let p = parse_hasse("poset\nelem a\nelem b\nelem c\nedge a b\nedge b c\n").unwrap();
        let s = initial_scaffold(&p);
        assert_eq!(names(&p, &s.elements), vec!["a"]);
        assert!(s.relations.is_empty());
        assert!(verify_scaffold(&s, &p));
        let f = final_scaffold(&p);
        assert_eq!(names(&p, &f.elements), vec!["c"]);
        assert!(f.relations.is_empty());
    }

    #[test]
    fn fig1_brute_force_essential() {
        let p = fig1();
        assert_eq!(
            names(&p, &brute_force_essential(&p)),
            vec!["t", "u", "v", "w", "x", "y", "z"]
        );
    }

    #[test]
    fn complete_bipartite_is_its_own_scaffold() {
        // 2 minima, 3 maxima, every min below every max
        let p = Poset::new(
            vec![
                "m1".into(),
                "m2".into(),
                "q1".into(),
                "q2".into(),
                "q3".into(),
            ],
            vec![
                ("m1".into(), "q1".into()),
                ("m1".into(), "q2".into()),
                ("m1".into(), "q3".into()),
                ("m2".into(), "q1".into()),
                ("m2".into(), "q2".into()),
                ("m2".into(), "q3".into()),
            ],
        )
        .unwrap();
        let ess = brute_force_essential(&p);
        assert_eq!(ess.len(), 5);
        let s = initial_scaffold(&p);
        assert_eq!(s.elements.len(), 5);
        assert_eq!(s.relations.len(), 6);
        assert!(verify_scaffold(&s, &p));
    }

    #[test]
    fn diamond_final_scaffold() {
        let p = parse_hasse(
            "poset\nelem a\nelem b\nelem c\nelem d\nedge a b\nedge a c\nedge b d\nedge c d\n",
        )
        .unwrap();
        let f = final_scaffold(&p);
        assert_eq!(names(&p, &f.elements), vec!["d"]);
        assert!(f.relations.is_empty());
        assert!(verify_scaffold(&f, &p));
    }

    #[test]
    fn all_three_fig1_scaffolds_verify() {
        let p = fig1();
        let base = initial_scaffold(&p);
        let z = p.index_of("z").unwrap();
        let w = p.index_of("w").unwrap();
        for red in ["t", "u", "v"] {
            // swap which minimum of the big component points at z
            let r = p.index_of(red).unwrap();
            let mut s = base.clone();
            s.relations = base
                .relations
                .iter()
                .map(|&(a, b)| if b == z && a != w { (r, b) } else { (a, b) })
                .collect();
            s.relations.sort_unstable();
            assert!(verify_scaffold(&s, &p), "variant with ({red},z)");
        }
    }

    #[test]
    fn overfull_relation_set_fails_verification() {
        let p = fig1();
        let mut s = initial_scaffold(&p);
        let t = p.index_of("t").unwrap();
        let u = p.index_of("u").unwrap();
        let z = p.index_of("z").unwrap();
        s.relations.push((t, z));
        s.relations.push((u, z));
        s.relations.sort_unstable();
        s.relations.dedup();
        assert!(!verify_scaffold(&s, &p));
    }

    #[test]
    fn whole_chain_is_not_a_scaffold() {
        let p = parse_hasse("poset\nelem a\nelem b\nelem c\nedge a b\nedge b c\n").unwrap();
        let s = Scaffold {
            direction: Direction::Initial,
            elements: vec![0, 1, 2],
            relations: vec![(0, 1), (1, 2)],
        };
        assert!(!verify_scaffold(&s, &p));
    }

    #[test]
    fn scaffold_is_its_own_scaffold() {
        let p = fig1();
        let s = initial_scaffold(&p);
        // view the scaffold as a poset in its own right
        let elems: Vec<String> = s.elements.iter().map(|&i| p.name(i).to_string()).collect();
        let edges: Vec<(String, String)> = s
            .relations
            .iter()
            .map(|&(a, b)| (p.name(a).to_string(), p.name(b).to_string()))
            .collect();
        let sp = Poset::new(elems, edges).unwrap();
        let s2 = initial_scaffold(&sp);
        assert_eq!(s2.elements.len(), sp.len());
        let rels_named: Vec<(String, String)> = s2
            .relations
            .iter()
            .map(|&(a, b)| (sp.name(a).to_string(), sp.name(b).to_string()))
            .collect();
        let orig: Vec<(String, String)> = s
            .relations
            .iter()
            .map(|&(a, b)| (p.name(a).to_string(), p.name(b).to_string()))
            .collect();
        let mut lhs = rels_named.clone();
        let mut rhs = orig.clone();
        lhs.sort();
        rhs.sort();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn duality_via_opposite() {
        let p = fig1();
        let f = final_scaffold(&p);
        let op = p.opposite();
        let i_op = initial_scaffold(&op);
        let f_elems: Vec<String> = names(&p, &f.elements);
        let mut op_elems: Vec<String> = i_op
            .elements
            .iter()
            .map(|&i| op.name(i).to_string())
            .collect();
        op_elems.sort();
        let mut fe = f_elems.clone();
        fe.sort();
        assert_eq!(fe, op_elems);
    }

    #[test]
    fn scaffold_text_roundtrip() {
        let p = fig1();
        let s = initial_scaffold(&p);
        let text = write_scaffold_poset(&s, &p);
        let (dir, elems, rels) = parse_scaffold(&text).unwrap();
        assert_eq!(dir, Direction::Initial);
        assert_eq!(elems.len(), s.elements.len());
        assert_eq!(rels.len(), s.relations.len());
    }
}
