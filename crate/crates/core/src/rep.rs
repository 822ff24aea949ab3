//! Matrix representations of poset modules.
//!
//! A module `G` on a poset `Q` valued in finite-dimensional vector spaces is
//! represented by a choice of ordered basis per element and one matrix per
//! stored relation. Free modules are represented more compactly by
//! grade-labeled matrices; a three-term complex `X -> Y -> Z` of free
//! modules ([`QrComplex`]) presents its homology `ker g / im f`, and
//! [`homology_rep`] turns that implicit description into an explicit
//! [`ModuleRep`] on any subposet, one fiber at a time.

use std::collections::BTreeMap;

use crate::error::Error;
use crate::linalg::{Matrix, PrimeField};
use crate::order::OrderOracle;
use crate::Result;

/// A matrix between free modules, rows and columns labeled by grades.
///
/// Invariant: a nonzero entry at `(i, j)` requires
/// `row_grades[i] <= col_grades[j]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabeledMatrix<E> {
    pub row_grades: Vec<E>,
    pub col_grades: Vec<E>,
    pub entries: Matrix,
}

impl<E: Clone + Ord> LabeledMatrix<E> {
    pub fn validate_labels<O: OrderOracle<E>>(&self, oracle: &O) -> Result<()> {
        if self.entries.rows() != self.row_grades.len()
            || self.entries.cols() != self.col_grades.len()
        {
            return Err(Error::Dimension(
                "labeled matrix shape disagrees with its grade lists".into(),
            ));
        }
        for i in 0..self.entries.rows() {
            for j in 0..self.entries.cols() {
                if self.entries.get(i, j) != 0
                    && !oracle.leq(&self.row_grades[i], &self.col_grades[j])
                {
                    return Err(Error::Dimension(format!(
                        "nonzero entry at ({i}, {j}) violates grade compatibility"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Indices of rows with grade `<= p`.
    pub fn rows_at<O: OrderOracle<E>>(&self, p: &E, oracle: &O) -> Vec<usize> {
        (0..self.row_grades.len())
            .filter(|&i| oracle.leq(&self.row_grades[i], p))
            .collect()
    }

    pub fn cols_at<O: OrderOracle<E>>(&self, p: &E, oracle: &O) -> Vec<usize> {
        (0..self.col_grades.len())
            .filter(|&j| oracle.leq(&self.col_grades[j], p))
            .collect()
    }

    /// The fiber matrix at `p`: the submatrix of rows and columns with
    /// grades `<= p`.
    pub fn restrict<O: OrderOracle<E>>(&self, p: &E, oracle: &O) -> Matrix {
        self.entries
            .submatrix(&self.rows_at(p, oracle), &self.cols_at(p, oracle))
    }
}

/// A three-term complex `X -f-> Y -g-> Z` of free modules given by labeled
/// matrices, with `g . f = 0`. Its homology `ker g / im f` is the module of
/// interest.
#[derive(Clone, Debug)]
pub struct QrComplex<E> {
    pub f: LabeledMatrix<E>,
    pub g: LabeledMatrix<E>,
}

impl<E: Clone + Ord + std::fmt::Debug> QrComplex<E> {
    /// Check shapes, grade labels, and the chain condition. The chain
    /// condition `g . f = 0` is verified fiberwise at the grade of each
    /// X-generator, which suffices for all grades.
    pub fn validate<O: OrderOracle<E>>(&self, oracle: &O) -> Result<()> {
        if self.f.row_grades != self.g.col_grades {
            return Err(Error::Dimension(
                "row grades of f must equal column grades of g".into(),
            ));
        }
        self.f.validate_labels(oracle)?;
        self.g.validate_labels(oracle)?;
        let mut checked: Vec<&E> = Vec::new();
        for p in &self.f.col_grades {
            if checked.contains(&p) {
                continue;
            }
            checked.push(p);
            let gp = self.g.restrict(p, oracle);
            let fp = self.f.restrict(p, oracle);
            if !gp.multiply(&fp).is_zero() {
                return Err(Error::NotAComplex(format!(
                    "g . f is nonzero at grade {p:?}"
                )));
            }
        }
        Ok(())
    }

    /// Total rank of the three free modules.
    pub fn total_rank(&self) -> usize {
        self.f.col_grades.len() + self.f.row_grades.len() + self.g.row_grades.len()
    }
}

/// Explicit matrix representation of a module restricted to a subposet:
/// per-element dimensions and basis labels, per-relation matrices.
///
/// Relations are stored as `(lower, upper)` pairs; the matrix for `(p, q)`
/// has shape `dims[q] x dims[p]`. Zero-dimensional fibers keep their
/// degenerate matrices explicitly.
#[derive(Clone, Debug)]
pub struct ModuleRep<E: Ord> {
    pub field: PrimeField,
    pub elements: Vec<E>,
    pub relations: Vec<(E, E)>,
    pub dims: BTreeMap<E, usize>,
    pub maps: BTreeMap<(E, E), Matrix>,
    pub basis_labels: BTreeMap<E, Vec<String>>,
}

impl<E: Clone + Ord> ModuleRep<E> {
    pub fn dim(&self, e: &E) -> usize {
        self.dims.get(e).copied().unwrap_or(0)
    }

    /// The structure map for a stored relation. Identity relations are
    /// answered even when not stored.
    pub fn map(&self, p: &E, q: &E) -> Result<Matrix> {
        if let Some(m) = self.maps.get(&(p.clone(), q.clone())) {
            return Ok(m.clone());
        }
        if p == q {
            return Ok(Matrix::identity(self.dim(p), self.field));
        }
        Err(Error::MissingMap(
            "no stored map for the requested relation".into(),
        ))
    }

    /// Check functoriality on stored composable pairs whose composite is
    /// also stored, identity on stored identities, and shape agreement.
    pub fn validate(&self) -> bool {
        for ((p, q), m) in &self.maps {
            if m.rows() != self.dim(q) || m.cols() != self.dim(p) {
                return false;
            }
            if p == q && *m != Matrix::identity(self.dim(p), self.field) {
                return false;
            }
        }
        for (p, q) in &self.relations {
            if !self.maps.contains_key(&(p.clone(), q.clone())) && p != q {
                return false;
            }
        }
        for (p, q) in &self.relations {
            for (q2, r) in &self.relations {
                if q2 != q {
                    continue;
                }
                if let Some(pr) = self.maps.get(&(p.clone(), r.clone())) {
                    let pq = &self.maps[&(p.clone(), q.clone())];
                    let qr = &self.maps[&(q.clone(), r.clone())];
                    if &qr.multiply(pq) != pr {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Restriction to a smaller carrier. Every requested relation must
    /// either be stored or be an identity.
    pub fn restrict(&self, elements: &[E], relations: &[(E, E)]) -> Result<ModuleRep<E>> {
        let mut dims = BTreeMap::new();
        let mut labels = BTreeMap::new();
        for e in elements {
            dims.insert(e.clone(), self.dim(e));
            if let Some(l) = self.basis_labels.get(e) {
                labels.insert(e.clone(), l.clone());
            }
        }
        let mut maps = BTreeMap::new();
        for (p, q) in relations {
            maps.insert((p.clone(), q.clone()), self.map(p, q)?);
        }
        Ok(ModuleRep {
            field: self.field,
            elements: elements.to_vec(),
            relations: relations.to_vec(),
            dims,
            maps,
            basis_labels: labels,
        })
    }
}

/// The interval module: one-dimensional fibers with identity maps on the
/// carrier elements satisfying `member`, zero outside.
pub fn interval_module_rep<E: Clone + Ord>(
    member: impl Fn(&E) -> bool,
    elements: &[E],
    relations: &[(E, E)],
    field: PrimeField,
) -> ModuleRep<E> {
    let mut dims = BTreeMap::new();
    let mut labels = BTreeMap::new();
    for e in elements {
        let d = usize::from(member(e));
        dims.insert(e.clone(), d);
        labels.insert(
            e.clone(),
            if d == 1 {
                vec!["e".to_string()]
            } else {
                vec![]
            },
        );
    }
    let mut maps = BTreeMap::new();
    for (p, q) in relations {
        let (dp, dq) = (dims[p], dims[q]);
        let mut m = Matrix::zeros(dq, dp, field);
        if dp == 1 && dq == 1 {
            m.set(0, 0, 1);
        }
        maps.insert((p.clone(), q.clone()), m);
    }
    ModuleRep {
        field,
        elements: elements.to_vec(),
        relations: relations.to_vec(),
        dims,
        maps,
        basis_labels: labels,
    }
}

/// Free module on generators at the given grades: the fiber at `e` has one
/// basis vector per generator `<= e`, and structure maps are the evident
/// inclusions of index sets.
pub fn free_module_rep<E: Clone + Ord, O: OrderOracle<E>>(
    generators: &[E],
    elements: &[E],
    relations: &[(E, E)],
    oracle: &O,
    field: PrimeField,
) -> ModuleRep<E> {
    let gens_at = |e: &E| -> Vec<usize> {
        (0..generators.len())
            .filter(|&i| oracle.leq(&generators[i], e))
            .collect()
    };
    let mut dims = BTreeMap::new();
    let mut labels = BTreeMap::new();
    for e in elements {
        let g = gens_at(e);
        dims.insert(e.clone(), g.len());
        labels.insert(
            e.clone(),
            g.iter().map(|i| format!("g{i}")).collect::<Vec<_>>(),
        );
    }
    let mut maps = BTreeMap::new();
    for (p, q) in relations {
        let gp = gens_at(p);
        let gq = gens_at(q);
        let mut m = Matrix::zeros(gq.len(), gp.len(), field);
        for (col, gi) in gp.iter().enumerate() {
            let row = gq.iter().position(|x| x == gi).expect("p <= q");
            m.set(row, col, 1);
        }
        maps.insert((p.clone(), q.clone()), m);
    }
    ModuleRep {
        field,
        elements: elements.to_vec(),
        relations: relations.to_vec(),
        dims,
        maps,
        basis_labels: labels,
    }
}

/// Per-fiber data retained while building a homology representation.
struct Fiber {
    /// Original Y-basis indices with grade at or below the element.
    y_idx: Vec<usize>,
    /// Change of basis from (im-basis | homology-basis | complement) to the
    /// induced Y-basis; square of size `y_idx.len()`.
    section: Matrix,
    /// Rank of the image of `f` in this fiber.
    rank: usize,
    /// Dimension of the homology fiber.
    dim: usize,
}

/// Compute a matrix representation of the homology of a complex restricted
/// to the subposet with the given elements and relations.
///
/// Per element `p`, the fiber matrices `[f_p]` and `[g_p]` are the label
/// submatrices at `p`; a kernel basis of `[g_p]` in echelon form is extended
/// by standard vectors to a basis of the fiber of `Y`, the image of `[f_p]`
/// is put in echelon form inside the kernel coordinates, and the homology
/// basis is the set of kernel basis vectors at non-pivot positions of that
/// image. Per relation, the inclusion of induced Y-bases is conjugated into
/// these bases and the homology block is extracted.
pub fn homology_rep<E, O>(
    complex: &QrComplex<E>,
    elements: &[E],
    relations: &[(E, E)],
    oracle: &O,
    field: PrimeField,
) -> Result<ModuleRep<E>>
where
    E: Clone + Ord + std::fmt::Debug,
    O: OrderOracle<E>,
{
    complex.validate(oracle)?;
    for (p, q) in relations {
        if !oracle.leq(p, q) {
            return Err(Error::Dimension(
                "relation endpoints are not comparable in the ambient order".into(),
            ));
        }
    }

    let mut fibers: BTreeMap<E, Fiber> = BTreeMap::new();
    let mut dims = BTreeMap::new();
    let mut labels = BTreeMap::new();

    for p in elements {
        let y_idx = complex.g.cols_at(p, oracle);
        let l = y_idx.len();
        let gp = complex.g.restrict(p, oracle);
        let fp = complex.f.restrict(p, oracle);

        // kernel of g_p, echelon with distinct leading indices
        let kernel = gp.kernel_basis();
        let s = kernel.cols();
        let mut lead = vec![false; l];
        for c in 0..s {
            let li = (0..l).find(|&i| kernel.get(i, c) != 0).expect("nonzero");
            lead[li] = true;
        }
        let d_idx: Vec<usize> = (0..l).filter(|&i| !lead[i]).collect();

        // express f_p in the basis (kernel | complement)
        let mut kd = Matrix::zeros(l, l, field);
        kd.set_block(0, 0, &kernel);
        for (k, &i) in d_idx.iter().enumerate() {
            kd.set(i, s + k, 1);
        }
        let in_kd = if l > 0 {
            kd.solve_square(&fp)?
        } else {
            Matrix::zeros(0, fp.cols(), field)
        };
        // chain condition puts the image inside the kernel
        debug_assert!((s..l).all(|r| (0..in_kd.cols()).all(|c| in_kd.get(r, c) == 0)));
        let gamma = in_kd.submatrix(
            &(0..s).collect::<Vec<_>>(),
            &(0..fp.cols()).collect::<Vec<_>>(),
        );

        // image of f in kernel coordinates, echelon by rows
        let image = gamma.transpose().row_space_echelon();
        let rank = image.rows();
        let mut pivot = vec![false; s];
        for r in 0..rank {
            let pc = (0..s).find(|&j| image.get(r, j) != 0).expect("nonzero");
            pivot[pc] = true;
        }
        let c_idx: Vec<usize> = (0..s).filter(|&j| !pivot[j]).collect();
        let h = c_idx.len();

        // change of basis (B | C | D) -> induced Y-basis
        let mut section = Matrix::zeros(l, l, field);
        let b_in_y = kernel.multiply(&image.transpose());
        section.set_block(0, 0, &b_in_y);
        let c_in_y = kernel.submatrix(&(0..l).collect::<Vec<_>>(), &c_idx);
        section.set_block(0, rank, &c_in_y);
        for (k, &i) in d_idx.iter().enumerate() {
            section.set(i, rank + h + k, 1);
        }

        dims.insert(p.clone(), h);
        labels.insert(
            p.clone(),
            (0..h).map(|i| format!("h{i}")).collect::<Vec<String>>(),
        );
        fibers.insert(
            p.clone(),
            Fiber {
                y_idx,
                section,
                rank,
                dim: h,
            },
        );
    }

    let mut maps = BTreeMap::new();
    for (p, q) in relations {
        let fp = &fibers[p];
        let fq = &fibers[q];
        // inclusion of induced Y-bases: rows by q's indices, cols by p's
        let mut inc = Matrix::zeros(fq.y_idx.len(), fp.y_idx.len(), field);
        for (col, yi) in fp.y_idx.iter().enumerate() {
            let row = fq
                .y_idx
                .iter()
                .position(|x| x == yi)
                .expect("fiber bases are nested along relations");
            inc.set(row, col, 1);
        }
        let w = if fq.y_idx.is_empty() {
            Matrix::zeros(0, fp.y_idx.len(), field)
        } else {
            fq.section.solve_square(&inc.multiply(&fp.section))?
        };
        let rows: Vec<usize> = (fq.rank..fq.rank + fq.dim).collect();
        let cols: Vec<usize> = (fp.rank..fp.rank + fp.dim).collect();
        maps.insert((p.clone(), q.clone()), w.submatrix(&rows, &cols));
    }

    Ok(ModuleRep {
        field,
        elements: elements.to_vec(),
        relations: relations.to_vec(),
        dims,
        maps,
        basis_labels: labels,
    })
}

// ---------------------------------------------------------------------
// Text formats
// ---------------------------------------------------------------------

/// A parsed complex file, before grade resolution.
pub enum QrcGrades {
    Grid {
        d: usize,
        complex: QrComplex<crate::grid::GridPoint>,
    },
    Named(QrComplex<String>),
}

pub struct QrcFile {
    pub field: PrimeField,
    pub grades: QrcGrades,
}

/// Parse the complex text format:
///
/// ```text
/// qr-complex field=5 d=2
/// X 1
/// 1 1
/// Y 2
/// 1 0
/// 0 1
/// Z 0
/// f:
/// 0 0 1
/// 1 0 -1
/// g:
/// ```
///
/// Grade lines carry `d` coordinates, or an element name when the header
/// says `d=poset`. Entries are `row col value` with values reduced into the
/// field.
pub fn parse_qr_complex(text: &str) -> Result<QrcFile> {
    enum Section {
        None,
        Grades(usize), // 0 = X, 1 = Y, 2 = Z
        F,
        G,
    }
    let mut field: Option<PrimeField> = None;
    let mut grid_d: Option<usize> = None; // None once header says poset
    let mut saw_header = false;
    let mut grades: [Vec<String>; 3] = [Vec::new(), Vec::new(), Vec::new()];
    let mut want: [usize; 3] = [0, 0, 0];
    let mut entries_f: Vec<(usize, usize, i64)> = Vec::new();
    let mut entries_g: Vec<(usize, usize, i64)> = Vec::new();
    let mut section = Section::None;

    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        let lineno = lineno + 1;
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let err = |msg: String| Error::Parse { line: lineno, msg };
        let mut tok = line.split_whitespace();
        let head = tok.next().unwrap();
        match head {
            "qr-complex" => {
                saw_header = true;
                for part in tok {
                    if let Some(p) = part.strip_prefix("field=") {
                        let p: u64 = p
                            .parse()
                            .map_err(|_| err("field= expects a number".into()))?;
                        field = Some(PrimeField::new(p)?);
                    } else if let Some(dspec) = part.strip_prefix("d=") {
                        if dspec == "poset" {
                            grid_d = None;
                        } else {
                            grid_d = Some(
                                dspec
                                    .parse()
                                    .map_err(|_| err("d= expects a number or 'poset'".into()))?,
                            );
                        }
                    } else {
                        return Err(err(format!("unexpected header field '{part}'")));
                    }
                }
            }
            "X" | "Y" | "Z" => {
                let idx = match head {
                    "X" => 0,
                    "Y" => 1,
                    _ => 2,
                };
                want[idx] = tok
                    .next()
                    .and_then(|s| s.parse().ok())
                    .ok_or_else(|| err(format!("{head} expects a rank")))?;
                section = Section::Grades(idx);
            }
            "f:" => section = Section::F,
            "g:" => section = Section::G,
            _ => match section {
                Section::Grades(idx) => {
                    if grades[idx].len() == want[idx] {
                        return Err(err("more grade lines than the declared rank".into()));
                    }
                    grades[idx].push(line.to_string());
                }
                Section::F | Section::G => {
                    let row: usize = head
                        .parse()
                        .map_err(|_| err("entry expects 'row col value'".into()))?;
                    let col: usize = tok
                        .next()
                        .and_then(|s| s.parse().ok())
                        .ok_or_else(|| err("entry expects 'row col value'".into()))?;
                    let val: i64 = tok
                        .next()
                        .and_then(|s| s.parse().ok())
                        .ok_or_else(|| err("entry expects 'row col value'".into()))?;
                    if matches!(section, Section::F) {
                        entries_f.push((row, col, val));
                    } else {
                        entries_g.push((row, col, val));
                    }
                }
                Section::None => return Err(err(format!("unexpected line '{line}'"))),
            },
        }
    }
    if !saw_header {
        return Err(Error::Parse {
            line: 1,
            msg: "missing 'qr-complex' header".into(),
        });
    }
    let field = field.ok_or(Error::Parse {
        line: 1,
        msg: "header must set field=<p>".into(),
    })?;
    for idx in 0..3 {
        if grades[idx].len() != want[idx] {
            return Err(Error::Parse {
                line: 1,
                msg: format!(
                    "section {} declared rank {} but listed {} grades",
                    ["X", "Y", "Z"][idx],
                    want[idx],
                    grades[idx].len()
                ),
            });
        }
    }

    let build = |rows: &[String],
                 cols: &[String],
                 entries: &[(usize, usize, i64)]|
     -> Result<LabeledMatrix<String>> {
        let mut m = Matrix::zeros(rows.len(), cols.len(), field);
        for &(i, j, v) in entries {
            if i >= rows.len() || j >= cols.len() {
                return Err(Error::Parse {
                    line: 1,
                    msg: format!("entry ({i}, {j}) outside the declared ranks"),
                });
            }
            m.set(i, j, field.from_i64(v));
        }
        Ok(LabeledMatrix {
            row_grades: rows.to_vec(),
            col_grades: cols.to_vec(),
            entries: m,
        })
    };
    let f = build(&grades[1], &grades[0], &entries_f)?;
    let g = build(&grades[2], &grades[1], &entries_g)?;
    let named = QrComplex { f, g };

    let grades = match grid_d {
        Some(d) => {
            let conv =
                |lm: &LabeledMatrix<String>| -> Result<LabeledMatrix<crate::grid::GridPoint>> {
                    let parse_grade = |s: &String| -> Result<crate::grid::GridPoint> {
                        let coords: std::result::Result<Vec<u64>, _> =
                            s.split_whitespace().map(|t| t.parse()).collect();
                        let coords = coords.map_err(|_| Error::Parse {
                            line: 1,
                            msg: format!("bad grade line '{s}'"),
                        })?;
                        if coords.len() != d {
                            return Err(Error::Parse {
                                line: 1,
                                msg: format!("grade '{s}' does not have {d} coordinates"),
                            });
                        }
                        Ok(crate::grid::GridPoint(coords))
                    };
                    Ok(LabeledMatrix {
                        row_grades: lm
                            .row_grades
                            .iter()
                            .map(parse_grade)
                            .collect::<Result<_>>()?,
                        col_grades: lm
                            .col_grades
                            .iter()
                            .map(parse_grade)
                            .collect::<Result<_>>()?,
                        entries: lm.entries.clone(),
                    })
                };
            QrcGrades::Grid {
                d,
                complex: QrComplex {
                    f: conv(&named.f)?,
                    g: conv(&named.g)?,
                },
            }
        }
        None => QrcGrades::Named(named),
    };
    Ok(QrcFile { field, grades })
}

/// Resolve a name-graded complex against a poset's elements.
pub fn resolve_complex(
    c: &QrComplex<String>,
    poset: &crate::poset::Poset,
) -> Result<QrComplex<usize>> {
    let conv = |lm: &LabeledMatrix<String>| -> Result<LabeledMatrix<usize>> {
        let lookup = |s: &String| {
            poset
                .index_of(s)
                .ok_or_else(|| Error::UnknownElement(s.clone()))
        };
        Ok(LabeledMatrix {
            row_grades: lm.row_grades.iter().map(lookup).collect::<Result<_>>()?,
            col_grades: lm.col_grades.iter().map(lookup).collect::<Result<_>>()?,
            entries: lm.entries.clone(),
        })
    };
    Ok(QrComplex {
        f: conv(&c.f)?,
        g: conv(&c.g)?,
    })
}

fn write_qr_complex_with<E>(
    c: &QrComplex<E>,
    field: PrimeField,
    d_header: &str,
    token: impl Fn(&E) -> String,
) -> String {
    let mut out = format!("qr-complex field={} d={}\n", field.modulus(), d_header);
    let section = |name: &str, grades: &[E], out: &mut String| {
        out.push_str(&format!("{name} {}\n", grades.len()));
        for g in grades {
            out.push_str(&token(g));
            out.push('\n');
        }
    };
    section("X", &c.f.col_grades, &mut out);
    section("Y", &c.f.row_grades, &mut out);
    section("Z", &c.g.row_grades, &mut out);
    let entries = |m: &Matrix, out: &mut String| {
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                let v = m.get(i, j);
                if v != 0 {
                    out.push_str(&format!("{i} {j} {v}\n"));
                }
            }
        }
    };
    out.push_str("f:\n");
    entries(&c.f.entries, &mut out);
    out.push_str("g:\n");
    entries(&c.g.entries, &mut out);
    out
}

pub fn write_qr_complex_grid(
    c: &QrComplex<crate::grid::GridPoint>,
    d: usize,
    field: PrimeField,
) -> String {
    write_qr_complex_with(c, field, &d.to_string(), |p| {
        p.0.iter()
            .map(|c| c.to_string())
            .collect::<Vec<_>>()
            .join(" ")
    })
}

pub fn write_qr_complex_poset(
    c: &QrComplex<usize>,
    poset: &crate::poset::Poset,
    field: PrimeField,
) -> String {
    write_qr_complex_with(c, field, "poset", |i| poset.name(*i).to_string())
}

/// Render a module representation: `dim` lines then `map` blocks with dense
/// matrices.
fn write_module_rep_with<E: Clone + Ord>(
    rep: &ModuleRep<E>,
    token: impl Fn(&E) -> String,
) -> String {
    let mut out = String::new();
    for e in &rep.elements {
        out.push_str(&format!("dim {} {}\n", token(e), rep.dim(e)));
    }
    for (p, q) in &rep.relations {
        if let Some(m) = rep.maps.get(&(p.clone(), q.clone())) {
            out.push_str(&format!("map {} {}\n", token(p), token(q)));
            for i in 0..m.rows() {
                let row: Vec<String> = m.row(i).iter().map(|v| v.to_string()).collect();
                out.push_str(&row.join(" "));
                out.push('\n');
            }
        }
    }
    out
}

pub fn write_module_rep_grid(rep: &ModuleRep<crate::grid::GridPoint>) -> String {
    write_module_rep_with(rep, |p| p.token())
}

pub fn write_module_rep_poset(rep: &ModuleRep<usize>, poset: &crate::poset::Poset) -> String {
    write_module_rep_with(rep, |i| poset.name(*i).to_string())
}

/// Parse a module representation with token-valued element names; the
/// caller resolves tokens against a poset or parses them as grid points.
/// Matrix shapes come from the preceding `dim` lines.
pub fn parse_module_rep(text: &str, field: PrimeField) -> Result<ModuleRep<String>> {
    let mut elements: Vec<String> = Vec::new();
    let mut dims: BTreeMap<String, usize> = BTreeMap::new();
    let mut relations: Vec<(String, String)> = Vec::new();
    let mut maps: BTreeMap<(String, String), Matrix> = BTreeMap::new();
    let mut pending: Option<((String, String), Matrix, usize)> = None;

    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        let lineno = lineno + 1;
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let err = |msg: String| Error::Parse { line: lineno, msg };
        let mut tok = line.split_whitespace();
        let head = tok.next().unwrap();
        match head {
            "dim" => {
                if pending.is_some() {
                    return Err(err("matrix block ended early".into()));
                }
                let e = tok.next().ok_or_else(|| err("dim expects a name".into()))?;
                let n: usize = tok
                    .next()
                    .and_then(|s| s.parse().ok())
                    .ok_or_else(|| err("dim expects a size".into()))?;
                if dims.insert(e.to_string(), n).is_some() {
                    return Err(err(format!("duplicate dim for '{e}'")));
                }
                elements.push(e.to_string());
            }
            "map" => {
                if let Some((key, m, seen)) = pending.take() {
                    if seen != m.rows() {
                        return Err(err("matrix block ended early".into()));
                    }
                    maps.insert(key, m);
                }
                let p = tok
                    .next()
                    .ok_or_else(|| err("map expects two names".into()))?;
                let q = tok
                    .next()
                    .ok_or_else(|| err("map expects two names".into()))?;
                let dp = *dims
                    .get(p)
                    .ok_or_else(|| Error::UnknownElement(p.to_string()))?;
                let dq = *dims
                    .get(q)
                    .ok_or_else(|| Error::UnknownElement(q.to_string()))?;
                relations.push((p.to_string(), q.to_string()));
                let key = (p.to_string(), q.to_string());
                let m = Matrix::zeros(dq, dp, field);
                if dq == 0 {
                    maps.insert(key, m);
                } else {
                    pending = Some((key, m, 0));
                }
            }
            _ => {
                let Some((key, mut m, mut seen)) = pending.take() else {
                    return Err(err(format!("unexpected line '{line}'")));
                };
                let mut values: Vec<i64> = Vec::new();
                values.push(head.parse().map_err(|_| err("bad matrix entry".into()))?);
                for t in tok {
                    values.push(t.parse().map_err(|_| err("bad matrix entry".into()))?);
                }
                if values.len() != m.cols() {
                    return Err(err(format!(
                        "expected {} entries in matrix row, got {}",
                        m.cols(),
                        values.len()
                    )));
                }
                for (j, v) in values.iter().enumerate() {
                    m.set(seen, j, field.from_i64(*v));
                }
                seen += 1;
                if seen == m.rows() {
                    maps.insert(key, m);
                } else {
                    pending = Some((key, m, seen));
                }
            }
        }
    }
    if let Some((key, m, seen)) = pending {
        if seen != m.rows() {
            return Err(Error::Parse {
                line: text.lines().count(),
                msg: "matrix block ended early".into(),
            });
        }
        maps.insert(key, m);
    }
    let labels = elements
        .iter()
        .map(|e| {
            let n = dims[e];
            (e.clone(), (0..n).map(|i| format!("b{i}")).collect())
        })
        .collect();
    Ok(ModuleRep {
        field,
        elements,
        relations,
        dims,
        maps,
        basis_labels: labels,
    })
}

/// Resolve a token-keyed representation against a poset.
pub fn resolve_rep_poset(
    rep: &ModuleRep<String>,
    poset: &crate::poset::Poset,
) -> Result<ModuleRep<usize>> {
    let lookup = |s: &String| {
        poset
            .index_of(s)
            .ok_or_else(|| Error::UnknownElement(s.clone()))
    };
    let mut elements = Vec::new();
    for e in &rep.elements {
        elements.push(lookup(e)?);
    }
    elements.sort_unstable();
    let mut out = ModuleRep {
        field: rep.field,
        elements,
        relations: Vec::new(),
        dims: BTreeMap::new(),
        maps: BTreeMap::new(),
        basis_labels: BTreeMap::new(),
    };
    for (e, d) in &rep.dims {
        out.dims.insert(lookup(e)?, *d);
    }
    for (e, l) in &rep.basis_labels {
        out.basis_labels.insert(lookup(e)?, l.clone());
    }
    for (p, q) in &rep.relations {
        out.relations.push((lookup(p)?, lookup(q)?));
    }
    out.relations.sort_unstable();
    for ((p, q), m) in &rep.maps {
        out.maps.insert((lookup(p)?, lookup(q)?), m.clone());
    }
    Ok(out)
}

/// Interpret a token-keyed representation's names as grid points.
pub fn resolve_rep_grid(
    rep: &ModuleRep<String>,
    d: usize,
) -> Result<ModuleRep<crate::grid::GridPoint>> {
    let lookup = |s: &String| {
        crate::grid::GridPoint::parse_token(s)
            .filter(|p| p.dim() == d)
            .ok_or_else(|| Error::UnknownElement(s.clone()))
    };
    let mut elements = Vec::new();
    for e in &rep.elements {
        elements.push(lookup(e)?);
    }
    elements.sort();
    let mut out = ModuleRep {
        field: rep.field,
        elements,
        relations: Vec::new(),
        dims: BTreeMap::new(),
        maps: BTreeMap::new(),
        basis_labels: BTreeMap::new(),
    };
    for (e, dd) in &rep.dims {
        out.dims.insert(lookup(e)?, *dd);
    }
    for (e, l) in &rep.basis_labels {
        out.basis_labels.insert(lookup(e)?, l.clone());
    }
    for (p, q) in &rep.relations {
        out.relations.push((lookup(p)?, lookup(q)?));
    }
    out.relations.sort();
    for ((p, q), m) in &rep.maps {
        out.maps.insert((lookup(p)?, lookup(q)?), m.clone());
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::GridPoint;
    use crate::order::ProductOrder;

    fn f5() -> PrimeField {
        PrimeField::new(5).unwrap()
    }

    fn pt(coords: &[u64]) -> GridPoint {
        GridPoint(coords.to_vec())
    }

    fn labeled(
        row_grades: Vec<GridPoint>,
        col_grades: Vec<GridPoint>,
        rows: Vec<Vec<u64>>,
        field: PrimeField,
    ) -> LabeledMatrix<GridPoint> {
        let cols = col_grades.len();
        LabeledMatrix {
            row_grades,
            col_grades,
            entries: Matrix::from_rows(rows, cols, field),
        }
    }

    #[test]
    fn restrict_keeps_dominated_labels() {
        let f = labeled(
            vec![pt(&[1, 0])],
            vec![pt(&[0, 0]), pt(&[2, 0])],
            vec![vec![3, 1]],
            f5(),
        );
        let fib = f.restrict(&pt(&[1, 0]), &ProductOrder);
        assert_eq!((fib.rows(), fib.cols()), (1, 1));
        assert_eq!(fib.get(0, 0), 3);
        let none = f.restrict(&pt(&[0, 0]), &ProductOrder);
        assert_eq!((none.rows(), none.cols()), (0, 1));
        let all = f.restrict(&pt(&[5, 5]), &ProductOrder);
        assert_eq!((all.rows(), all.cols()), (1, 2));
    }

    #[test]
    fn free_rank_one_is_interval_on_upset() {
        // X = 0, g = 0, Y free of rank 1 at the origin
        let field = f5();
        let complex = QrComplex {
            f: labeled(vec![pt(&[0, 0])], vec![], vec![vec![]], field),
            g: labeled(vec![], vec![pt(&[0, 0])], vec![], field),
        };
        let elements = vec![pt(&[0, 0]), pt(&[1, 0]), pt(&[1, 1])];
        let relations = vec![
            (pt(&[0, 0]), pt(&[1, 0])),
            (pt(&[1, 0]), pt(&[1, 1])),
            (pt(&[0, 0]), pt(&[1, 1])),
        ];
        let rep = homology_rep(&complex, &elements, &relations, &ProductOrder, field).unwrap();
        for e in &elements {
            assert_eq!(rep.dim(e), 1);
        }
        for m in rep.maps.values() {
            assert_eq!(*m, Matrix::identity(1, field));
        }
        assert!(rep.validate());
    }

    #[test]
    fn exact_complex_has_zero_homology_above_both_grades() {
        // f the identity between rank-1 frees at grades (0,0) -> (1,0)
        let field = f5();
        let complex = QrComplex {
            f: labeled(vec![pt(&[1, 0])], vec![pt(&[1, 0])], vec![vec![1]], field),
            g: labeled(vec![], vec![pt(&[1, 0])], vec![], field),
        };
        let elements = vec![pt(&[0, 0]), pt(&[1, 0]), pt(&[2, 2])];
        let rep = homology_rep(&complex, &elements, &[], &ProductOrder, field).unwrap();
        assert_eq!(rep.dim(&pt(&[0, 0])), 0);
        assert_eq!(rep.dim(&pt(&[1, 0])), 0);
        assert_eq!(rep.dim(&pt(&[2, 2])), 0);
    }

    #[test]
    fn homology_of_small_complex_by_hand() {
        // Y has two generators at (1,0) and (0,1); X one generator at (1,1)
        // mapping to the difference; g = 0. At (1,1) the homology is the
        // 2-dimensional fiber modulo the line spanned by (1,-1).
        let field = f5();
        let complex = QrComplex {
            f: labeled(
                vec![pt(&[1, 0]), pt(&[0, 1])],
                vec![pt(&[1, 1])],
                vec![vec![1], vec![4]],
                field,
            ),
            g: labeled(vec![], vec![pt(&[1, 0]), pt(&[0, 1])], vec![], field),
        };
        let elements = vec![pt(&[1, 0]), pt(&[0, 1]), pt(&[1, 1]), pt(&[2, 2])];
        let relations = vec![
            (pt(&[1, 0]), pt(&[1, 1])),
            (pt(&[0, 1]), pt(&[1, 1])),
            (pt(&[1, 1]), pt(&[2, 2])),
        ];
        let rep = homology_rep(&complex, &elements, &relations, &ProductOrder, field).unwrap();
        assert_eq!(rep.dim(&pt(&[1, 0])), 1);
        assert_eq!(rep.dim(&pt(&[0, 1])), 1);
        assert_eq!(rep.dim(&pt(&[1, 1])), 1);
        assert_eq!(rep.dim(&pt(&[2, 2])), 1);
        assert!(rep.validate());
        // both generators hit the same homology class up to sign
        let a = rep.map(&pt(&[1, 0]), &pt(&[1, 1])).unwrap();
        let b = rep.map(&pt(&[0, 1]), &pt(&[1, 1])).unwrap();
        assert_eq!(a.rank(), 1);
        assert_eq!(b.rank(), 1);
    }

    #[test]
    fn chain_condition_rejected() {
        let field = f5();
        let complex = QrComplex {
            f: labeled(vec![pt(&[0, 0])], vec![pt(&[0, 0])], vec![vec![1]], field),
            g: labeled(vec![pt(&[0, 0])], vec![pt(&[0, 0])], vec![vec![1]], field),
        };
        assert!(matches!(
            complex.validate(&ProductOrder),
            Err(Error::NotAComplex(_))
        ));
    }

    #[test]
    fn label_compatibility_rejected() {
        let field = f5();
        let bad = labeled(vec![pt(&[2, 0])], vec![pt(&[1, 0])], vec![vec![1]], field);
        assert!(bad.validate_labels(&ProductOrder).is_err());
    }

    #[test]
    fn validate_rep_detects_corruption() {
        let field = f5();
        let elements = vec![pt(&[0, 0]), pt(&[1, 0]), pt(&[2, 0])];
        let relations = vec![
            (pt(&[0, 0]), pt(&[1, 0])),
            (pt(&[1, 0]), pt(&[2, 0])),
            (pt(&[0, 0]), pt(&[2, 0])),
        ];
        let mut rep = interval_module_rep(|_| true, &elements, &relations, field);
        assert!(rep.validate());
        let key = (pt(&[0, 0]), pt(&[2, 0]));
        let mut broken = Matrix::zeros(1, 1, field);
        broken.set(0, 0, 3);
        rep.maps.insert(key, broken);
        assert!(!rep.validate());
    }

    #[test]
    fn interval_rep_over_a_seven_element_scaffold() {
        // scaffold-shaped carrier of the running example: seven elements,
        // six relations, all fibers one-dimensional with identity maps
        let field = f5();
        let elements: Vec<u32> = (0..7).collect();
        // minima 0..=3, x=4 over {0,1}, y=5 over {1,2}, z=6 over {0,3}
        let relations: Vec<(u32, u32)> = vec![(0, 4), (1, 4), (1, 5), (2, 5), (0, 6), (3, 6)];
        let rep = interval_module_rep(|_| true, &elements, &relations, field);
        assert_eq!(rep.dims.values().filter(|&&d| d == 1).count(), 7);
        assert_eq!(rep.maps.len(), 6);
        for m in rep.maps.values() {
            assert_eq!(*m, Matrix::identity(1, field));
        }
    }

    #[test]
    fn interval_rep_zero_outside() {
        let field = f5();
        let elements = vec![pt(&[0, 0]), pt(&[9, 9])];
        let rep = interval_module_rep(
            |p: &GridPoint| p.0[0] < 5,
            &elements,
            &[(pt(&[0, 0]), pt(&[9, 9]))],
            field,
        );
        assert_eq!(rep.dim(&pt(&[0, 0])), 1);
        assert_eq!(rep.dim(&pt(&[9, 9])), 0);
        let m = rep.map(&pt(&[0, 0]), &pt(&[9, 9])).unwrap();
        assert_eq!((m.rows(), m.cols()), (0, 1));
    }

    #[test]
    fn qr_complex_text_roundtrip_grid() {
        let field = f5();
        let complex = QrComplex {
            f: labeled(
                vec![pt(&[1, 0]), pt(&[0, 1])],
                vec![pt(&[1, 1])],
                vec![vec![1], vec![4]],
                field,
            ),
            g: labeled(vec![], vec![pt(&[1, 0]), pt(&[0, 1])], vec![], field),
        };
        let text = write_qr_complex_grid(&complex, 2, field);
        let parsed = parse_qr_complex(&text).unwrap();
        assert_eq!(parsed.field.modulus(), 5);
        match parsed.grades {
            QrcGrades::Grid { d, complex: c2 } => {
                assert_eq!(d, 2);
                assert_eq!(c2.f.entries, complex.f.entries);
                assert_eq!(c2.f.col_grades, complex.f.col_grades);
                assert_eq!(c2.g.col_grades, complex.g.col_grades);
            }
            _ => panic!("expected grid grades"),
        }
    }

    #[test]
    fn qr_complex_negative_values_reduce() {
        let text = "qr-complex field=5 d=1\nX 1\n2\nY 1\n0\nZ 0\nf:\n0 0 -1\ng:\n";
        let parsed = parse_qr_complex(text).unwrap();
        match parsed.grades {
            QrcGrades::Grid { complex, .. } => assert_eq!(complex.f.entries.get(0, 0), 4),
            _ => panic!(),
        }
    }

    #[test]
    fn module_rep_text_roundtrip() {
        let field = f5();
        let elements = vec![pt(&[0, 0]), pt(&[1, 0]), pt(&[1, 1])];
        let relations = vec![
            (pt(&[0, 0]), pt(&[1, 0])),
            (pt(&[0, 0]), pt(&[1, 1])),
            (pt(&[1, 0]), pt(&[1, 1])),
        ];
        let rep = free_module_rep(
            &[pt(&[0, 0]), pt(&[1, 0])],
            &elements,
            &relations,
            &ProductOrder,
            field,
        );
        let text = write_module_rep_grid(&rep);
        let parsed = parse_module_rep(&text, field).unwrap();
        let back = resolve_rep_grid(&parsed, 2).unwrap();
        assert_eq!(back.dims, rep.dims);
        assert_eq!(back.maps, rep.maps);
    }

    #[test]
    fn module_rep_truncated_matrix_rejected() {
        let text = "dim a 2\ndim b 2\nmap a b\n1 0\n";
        assert!(parse_module_rep(text, f5()).is_err());
    }

    #[test]
    fn free_module_rep_is_functorial() {
        let field = f5();
        let gens = vec![pt(&[0, 2]), pt(&[1, 0]), pt(&[0, 0])];
        let elements = vec![pt(&[0, 0]), pt(&[1, 1]), pt(&[1, 2]), pt(&[2, 2])];
        let relations = vec![
            (pt(&[0, 0]), pt(&[1, 1])),
            (pt(&[1, 1]), pt(&[2, 2])),
            (pt(&[0, 0]), pt(&[2, 2])),
            (pt(&[1, 1]), pt(&[1, 2])),
        ];
        let rep = free_module_rep(&gens, &elements, &relations, &ProductOrder, field);
        assert!(rep.validate());
        assert_eq!(rep.dim(&pt(&[0, 0])), 1);
        assert_eq!(rep.dim(&pt(&[1, 1])), 2);
        assert_eq!(rep.dim(&pt(&[2, 2])), 3);
    }
}
