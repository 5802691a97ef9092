use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::error::{BratteliError, Result};
use crate::label::Label;
use crate::partition::{self, canonical_cmp, Partition};

/// Hard limit on the number of vertices a builder will create.
pub const MAX_VERTICES: usize = 2_000_000;
/// Default limit on path enumeration.
pub const DEFAULT_PATH_CAP: u64 = 5_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Vertex {
    pub id: usize,
    pub grade: usize,
    pub label: Label,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Edge {
    pub src: usize,
    pub dst: usize,
    pub mult: u32,
}

/// Directed multigraph with a grading that strictly increases along edges.
/// Vertex ids are indices into `vertices`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedQuiver {
    vertices: Vec<Vertex>,
    edges: Vec<Edge>,
}

impl GradedQuiver {
    pub fn new(vertices: Vec<Vertex>, edges: Vec<Edge>) -> Result<GradedQuiver> {
        for (i, v) in vertices.iter().enumerate() {
            if v.id != i {
                return Err(BratteliError::InvalidDiagram(format!("vertex id {} at position {i}", v.id)));
            }
        }
        for e in &edges {
            let (Some(s), Some(t)) = (vertices.get(e.src), vertices.get(e.dst)) else {
                return Err(BratteliError::UnknownVertex(format!("edge {}->{}", e.src, e.dst)));
            };
            if t.grade <= s.grade {
                return Err(BratteliError::InvalidDiagram(format!(
                    "edge {}->{} does not increase the grade",
                    e.src, e.dst
                )));
            }
            if e.mult == 0 {
                return Err(BratteliError::InvalidDiagram("zero multiplicity".into()));
            }
        }
        Ok(GradedQuiver { vertices, edges })
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DiagramFamily {
    Symmetric,
    Hyperoctahedral,
    TypeD,
    /// Divisor tower with a leading 1.
    Cyclic(Vec<u64>),
    Custom,
}

impl DiagramFamily {
    pub fn tag(&self) -> &'static str {
        match self {
            DiagramFamily::Symmetric => "S",
            DiagramFamily::Hyperoctahedral => "B",
            DiagramFamily::TypeD => "D",
            DiagramFamily::Cyclic(_) => "C",
            DiagramFamily::Custom => "custom",
        }
    }

    /// |G_i| for the group chain behind the diagram.
    pub fn group_order(&self, i: usize) -> Option<BigUint> {
        let fact = |m: usize| (1..=m as u64).fold(BigUint::one(), |acc, k| acc * k);
        match self {
            DiagramFamily::Symmetric => Some(fact(i)),
            DiagramFamily::Hyperoctahedral => Some(fact(i) << i),
            DiagramFamily::TypeD => Some(if i == 0 { BigUint::one() } else { fact(i) << (i - 1) }),
            DiagramFamily::Cyclic(t) => t.get(i).map(|&v| BigUint::from(v)),
            DiagramFamily::Custom => None,
        }
    }
}

/// A path from the root, stored both as its vertex sequence and as the
/// (edge id, copy) pairs it uses. Ordering is lexicographic on vertices.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PathRef {
    pub vertices: Vec<usize>,
    pub edges: Vec<(usize, u32)>,
}

impl PathRef {
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn end(&self) -> usize {
        *self.vertices.last().expect("paths contain the root")
    }

    /// Vertex at the given level.
    pub fn at(&self, level: usize) -> usize {
        self.vertices[level]
    }

    pub fn prefix(&self, level: usize) -> PathRef {
        PathRef { vertices: self.vertices[..=level].to_vec(), edges: self.edges[..level].to_vec() }
    }
}

#[derive(Clone, Debug)]
pub struct BratteliDiagram {
    family: DiagramFamily,
    n: usize,
    root: usize,
    quiver: GradedQuiver,
    levels: Vec<Vec<usize>>,
    pos: Vec<usize>,
    up: Vec<Vec<usize>>,
    down: Vec<Vec<usize>>,
    dims: Vec<BigUint>,
    by_label: HashMap<Label, usize>,
}

impl PartialEq for BratteliDiagram {
    fn eq(&self, other: &Self) -> bool {
        self.family == other.family && self.n == other.n && self.root == other.root && self.quiver == other.quiver
    }
}

impl BratteliDiagram {
    /// Validate the Bratteli axioms and build the lookup caches.
    pub fn from_quiver(family: DiagramFamily, quiver: GradedQuiver, root: usize) -> Result<BratteliDiagram> {
        let nv = quiver.vertices.len();
        if root >= nv {
            return Err(BratteliError::UnknownVertex(format!("root {root}")));
        }
        let n = quiver.vertices.iter().map(|v| v.grade).max().unwrap_or(0);
        let mut levels = vec![Vec::new(); n + 1];
        for v in &quiver.vertices {
            levels[v.grade].push(v.id);
        }
        if levels[0] != [root] {
            return Err(BratteliError::InvalidDiagram("grade 0 must hold exactly the root".into()));
        }
        let mut pos = vec![0; nv];
        for lvl in &levels {
            for (k, &v) in lvl.iter().enumerate() {
                pos[v] = k;
            }
        }
        let mut up = vec![Vec::new(); nv];
        let mut down = vec![Vec::new(); nv];
        let mut seen = std::collections::HashSet::new();
        for (eid, e) in quiver.edges.iter().enumerate() {
            if quiver.vertices[e.dst].grade != quiver.vertices[e.src].grade + 1 {
                return Err(BratteliError::InvalidDiagram(format!("edge {}->{} skips a level", e.src, e.dst)));
            }
            if !seen.insert((e.src, e.dst)) {
                return Err(BratteliError::InvalidDiagram(format!("parallel edge records {}->{}", e.src, e.dst)));
            }
            up[e.src].push(eid);
            down[e.dst].push(eid);
        }
        for v in &quiver.vertices {
            if v.grade > 0 && down[v.id].is_empty() {
                return Err(BratteliError::InvalidDiagram(format!("vertex {} has no incoming edge", v.id)));
            }
            if v.grade < n && up[v.id].is_empty() {
                return Err(BratteliError::InvalidDiagram(format!("vertex {} has no outgoing edge", v.id)));
            }
        }
        let mut dims = vec![BigUint::zero(); nv];
        dims[root] = BigUint::one();
        for lvl in levels.iter().skip(1) {
            for &v in lvl {
                let mut d = BigUint::zero();
                for &eid in &down[v] {
                    let e = &quiver.edges[eid];
                    d += &dims[e.src] * e.mult;
                }
                dims[v] = d;
            }
        }
        let by_label = quiver.vertices.iter().map(|v| (v.label.clone(), v.id)).collect();
        Ok(BratteliDiagram { family, n, root, quiver, levels, pos, up, down, dims, by_label })
    }

    pub fn family(&self) -> &DiagramFamily {
        &self.family
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn quiver(&self) -> &GradedQuiver {
        &self.quiver
    }

    pub fn num_vertices(&self) -> usize {
        self.quiver.vertices.len()
    }

    pub fn vertex(&self, id: usize) -> Result<&Vertex> {
        self.quiver.vertices.get(id).ok_or_else(|| BratteliError::UnknownVertex(id.to_string()))
    }

    pub fn grade(&self, id: usize) -> usize {
        self.quiver.vertices[id].grade
    }

    pub fn label(&self, id: usize) -> &Label {
        &self.quiver.vertices[id].label
    }

    pub fn find(&self, label: &Label) -> Option<usize> {
        self.by_label.get(label).copied()
    }

    /// Vertex ids at a level, in canonical order. Empty above the top.
    pub fn level(&self, i: usize) -> &[usize] {
        self.levels.get(i).map(|v| v.as_slice()).unwrap_or(&[])
    }

    /// Position of a vertex within its level.
    pub fn position(&self, id: usize) -> usize {
        self.pos[id]
    }

    pub fn edge(&self, eid: usize) -> &Edge {
        &self.quiver.edges[eid]
    }

    /// (target, multiplicity) for each edge out of `id`.
    pub fn children(&self, id: usize) -> impl Iterator<Item = (usize, u32)> + '_ {
        self.up[id].iter().map(move |&e| (self.quiver.edges[e].dst, self.quiver.edges[e].mult))
    }

    /// (source, multiplicity) for each edge into `id`.
    pub fn parents(&self, id: usize) -> impl Iterator<Item = (usize, u32)> + '_ {
        self.down[id].iter().map(move |&e| (self.quiver.edges[e].src, self.quiver.edges[e].mult))
    }

    pub fn up_edges(&self, id: usize) -> &[usize] {
        &self.up[id]
    }

    pub fn down_edges(&self, id: usize) -> &[usize] {
        &self.down[id]
    }

    /// M(hi, lo) for adjacent levels; 0 if there is no edge.
    pub fn multiplicity(&self, lo: usize, hi: usize) -> u32 {
        self.children(lo).find(|&(t, _)| t == hi).map(|(_, m)| m).unwrap_or(0)
    }

    pub fn is_multiplicity_free(&self) -> bool {
        self.quiver.edges.iter().all(|e| e.mult == 1)
    }

    /// Number of root paths ending at `id`.
    pub fn count_paths(&self, id: usize) -> Result<BigUint> {
        self.dims.get(id).cloned().ok_or_else(|| BratteliError::UnknownVertex(id.to_string()))
    }

    pub fn dim(&self, id: usize) -> &BigUint {
        &self.dims[id]
    }

    /// Σ d_α² over a level; the dimension of the level's path algebra.
    pub fn level_algebra_dim(&self, i: usize) -> BigUint {
        self.level(i).iter().map(|&v| &self.dims[v] * &self.dims[v]).sum()
    }

    /// Path count matrix between two levels: entry [a][b] is the number of
    /// paths from the b-th vertex of level `lo` to the a-th vertex of level `hi`.
    pub fn span_counts(&self, lo: usize, hi: usize) -> Vec<Vec<BigUint>> {
        if hi < lo {
            return Vec::new();
        }
        let lo_len = self.level(lo).len();
        let mut cur: Vec<Vec<BigUint>> = (0..lo_len)
            .map(|b| {
                let mut row = vec![BigUint::zero(); lo_len];
                row[b] = BigUint::one();
                row
            })
            .collect();
        for l in lo + 1..=hi {
            let next: Vec<Vec<BigUint>> = self
                .level(l)
                .iter()
                .map(|&v| {
                    let mut row = vec![BigUint::zero(); lo_len];
                    for (p, m) in self.parents(v) {
                        for (r, x) in row.iter_mut().zip(&cur[self.pos[p]]) {
                            if !x.is_zero() {
                                *r += x * m;
                            }
                        }
                    }
                    row
                })
                .collect();
            cur = next;
        }
        cur
    }

    /// All root paths ending at `id`, sorted lexicographically by vertex sequence.
    pub fn enumerate_paths(&self, id: usize) -> Result<Vec<PathRef>> {
        self.enumerate_paths_capped(id, DEFAULT_PATH_CAP)
    }

    pub fn enumerate_paths_capped(&self, id: usize, cap: u64) -> Result<Vec<PathRef>> {
        let d = self.count_paths(id)?;
        if d > BigUint::from(cap) {
            return Err(BratteliError::SizeCap { what: "path enumeration".into(), size: d.to_string(), cap });
        }
        let grade = self.grade(id);
        let mut out = Vec::new();
        let mut verts = vec![0usize; grade + 1];
        let mut edges = vec![(0usize, 0u32); grade];
        verts[grade] = id;
        self.paths_down(grade, &mut verts, &mut edges, &mut out);
        out.sort();
        Ok(out)
    }

    fn paths_down(&self, level: usize, verts: &mut [usize], edges: &mut [(usize, u32)], out: &mut Vec<PathRef>) {
        if level == 0 {
            out.push(PathRef { vertices: verts.to_vec(), edges: edges.to_vec() });
            return;
        }
        let v = verts[level];
        for &eid in &self.down[v] {
            let e = &self.quiver.edges[eid];
            verts[level - 1] = e.src;
            for c in 0..e.mult {
                edges[level - 1] = (eid, c);
                self.paths_down(level - 1, verts, edges, out);
            }
        }
    }

    /// Paths from `from` (any level) up to `to`, as vertex sequences, for
    /// multiplicity-free diagrams. Sorted lexicographically.
    pub fn paths_between(&self, from: usize, to: usize) -> Vec<Vec<usize>> {
        let (gl, gh) = (self.grade(from), self.grade(to));
        if gh < gl {
            return Vec::new();
        }
        let mut out = Vec::new();
        let mut cur = vec![to];
        fn go(d: &BratteliDiagram, gl: usize, from: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            let v = *cur.last().unwrap();
            if d.grade(v) == gl {
                if v == from {
                    let mut p = cur.clone();
                    p.reverse();
                    out.push(p);
                }
                return;
            }
            for (p, _) in d.parents(v) {
                cur.push(p);
                go(d, gl, from, cur, out);
                cur.pop();
            }
        }
        go(self, gl, from, &mut cur, &mut out);
        out.sort();
        out
    }

    /// The trivial representation's vertex at level i, for group families.
    pub fn trivial_vertex(&self, i: usize) -> Option<usize> {
        let row = |k: usize| if k == 0 { Vec::new() } else { vec![k as u32] };
        let label = match &self.family {
            DiagramFamily::Symmetric => Label::Partition(row(i)),
            DiagramFamily::Hyperoctahedral => Label::Pair(row(i), Vec::new()),
            DiagramFamily::TypeD => Label::Unordered { pair: (row(i), Vec::new()), sign: 0 },
            DiagramFamily::Cyclic(_) => Label::Residue(0),
            DiagramFamily::Custom => return None,
        };
        self.find_at(i, &label)
    }

    /// Find a label at a given level (cyclic labels repeat across levels).
    pub fn find_at(&self, level: usize, label: &Label) -> Option<usize> {
        self.level(level).iter().copied().find(|&v| self.label(v) == label)
    }

    pub fn group_order(&self, i: usize) -> Option<BigUint> {
        self.family.group_order(i)
    }

    /// Serialize to the diagram JSON schema with sorted keys.
    pub fn to_json(&self) -> String {
        let vertices: Vec<Value> = self
            .quiver
            .vertices
            .iter()
            .map(|v| json!({"id": v.id, "grade": v.grade, "label": serde_json::to_value(&v.label).unwrap()}))
            .collect();
        let edges: Vec<Value> =
            self.quiver.edges.iter().map(|e| json!({"src": e.src, "dst": e.dst, "mult": e.mult})).collect();
        let doc = json!({
            "family": self.family.tag(),
            "n": self.n,
            "root": self.root,
            "vertices": vertices,
            "edges": edges,
        });
        serde_json::to_string(&doc).unwrap()
    }

    pub fn from_json(text: &str) -> Result<BratteliDiagram> {
        #[derive(serde::Deserialize)]
        struct V {
            id: usize,
            grade: usize,
            label: Label,
        }
        #[derive(serde::Deserialize)]
        struct E {
            src: usize,
            dst: usize,
            mult: u32,
        }
        #[derive(serde::Deserialize)]
        struct Doc {
            family: String,
            n: usize,
            root: usize,
            vertices: Vec<V>,
            edges: Vec<E>,
        }
        let doc: Doc = serde_json::from_str(text).map_err(|e| BratteliError::Json(e.to_string()))?;
        let vertices = doc.vertices.into_iter().map(|v| Vertex { id: v.id, grade: v.grade, label: v.label }).collect();
        let edges = doc.edges.into_iter().map(|e| Edge { src: e.src, dst: e.dst, mult: e.mult }).collect();
        let quiver = GradedQuiver::new(vertices, edges)?;
        let family = match doc.family.as_str() {
            "S" => DiagramFamily::Symmetric,
            "B" => DiagramFamily::Hyperoctahedral,
            "D" => DiagramFamily::TypeD,
            "C" => {
                let mut tower = vec![0u64; doc.n + 1];
                for v in quiver.vertices() {
                    if v.grade <= doc.n {
                        tower[v.grade] += 1;
                    }
                }
                DiagramFamily::Cyclic(tower)
            }
            "custom" => DiagramFamily::Custom,
            other => return Err(BratteliError::Json(format!("unknown family {other}"))),
        };
        let d = BratteliDiagram::from_quiver(family, quiver, doc.root)?;
        if d.n != doc.n {
            return Err(BratteliError::Json(format!("declared n = {} but top grade is {}", doc.n, d.n)));
        }
        Ok(d)
    }
}

/// Assemble a diagram from per-level label lists and a rule giving each
/// vertex's (parent label, multiplicity) list.
fn assemble<F>(family: DiagramFamily, levels: Vec<Vec<Label>>, parents_of: F) -> Result<BratteliDiagram>
where
    F: Fn(usize, &Label) -> Vec<(Label, u32)>,
{
    let total: usize = levels.iter().map(|l| l.len()).sum();
    if total > MAX_VERTICES {
        return Err(BratteliError::SizeCap {
            what: "diagram".into(),
            size: total.to_string(),
            cap: MAX_VERTICES as u64,
        });
    }
    let mut vertices = Vec::with_capacity(total);
    let mut index: Vec<HashMap<Label, usize>> = Vec::with_capacity(levels.len());
    for (g, lvl) in levels.iter().enumerate() {
        let mut map = HashMap::with_capacity(lvl.len());
        for lab in lvl {
            let id = vertices.len();
            map.insert(lab.clone(), id);
            vertices.push(Vertex { id, grade: g, label: lab.clone() });
        }
        index.push(map);
    }
    let mut edges = Vec::new();
    for (g, lvl) in levels.iter().enumerate().skip(1) {
        for lab in lvl {
            let dst = index[g][lab];
            let mut acc: BTreeMap<usize, u32> = BTreeMap::new();
            for (p, m) in parents_of(g, lab) {
                let src = *index[g - 1]
                    .get(&p)
                    .ok_or_else(|| BratteliError::InvalidDiagram(format!("missing parent {p} of {lab}")))?;
                *acc.entry(src).or_insert(0) += m;
            }
            edges.extend(acc.into_iter().map(|(src, mult)| Edge { src, dst, mult }));
        }
    }
    edges.sort();
    BratteliDiagram::from_quiver(family, GradedQuiver::new(vertices, edges)?, 0)
}

/// Young's lattice up to rank n.
pub fn symmetric_diagram(n: usize) -> Result<BratteliDiagram> {
    let levels = (0..=n).map(|i| partition::partitions(i as u32).into_iter().map(Label::Partition).collect()).collect();
    assemble(DiagramFamily::Symmetric, levels, |_, lab| match lab {
        Label::Partition(p) => partition::remove_box(p).into_iter().map(|q| (Label::Partition(q), 1)).collect(),
        _ => unreachable!(),
    })
}

fn pairs_at(i: usize) -> Vec<(Partition, Partition)> {
    let mut out = Vec::new();
    for m in 0..=i {
        for mu in partition::partitions(m as u32) {
            for lam in partition::partitions((i - m) as u32) {
                out.push((lam.clone(), mu.clone()));
            }
        }
    }
    out.sort_by(|a, b| pair_cmp(a, b));
    out
}

/// Order on pairs: by |μ| ascending, then λ, then μ in canonical order.
fn pair_cmp(a: &(Partition, Partition), b: &(Partition, Partition)) -> Ordering {
    partition::size(&a.1)
        .cmp(&partition::size(&b.1))
        .then_with(|| canonical_cmp(&a.0, &b.0))
        .then_with(|| canonical_cmp(&a.1, &b.1))
}

fn pair_children_down(l: &Partition, m: &Partition) -> Vec<(Partition, Partition)> {
    let mut out: Vec<_> = partition::remove_box(l).into_iter().map(|q| (q, m.clone())).collect();
    out.extend(partition::remove_box(m).into_iter().map(|q| (l.clone(), q)));
    out
}

/// Bipartition lattice for the hyperoctahedral chain.
pub fn hyperoctahedral_diagram(n: usize) -> Result<BratteliDiagram> {
    let levels = (0..=n).map(|i| pairs_at(i).into_iter().map(|(l, m)| Label::Pair(l, m)).collect()).collect();
    assemble(DiagramFamily::Hyperoctahedral, levels, |_, lab| match lab {
        Label::Pair(l, m) => pair_children_down(l, m).into_iter().map(|(a, b)| (Label::Pair(a, b), 1)).collect(),
        _ => unreachable!(),
    })
}

/// Canonical representative of an unordered pair: the first entry is the
/// larger one (bigger size, then earlier in canonical order).
fn unordered(l: Partition, m: Partition) -> (Partition, Partition) {
    if canonical_cmp(&l, &m) == Ordering::Greater {
        (m, l)
    } else {
        (l, m)
    }
}

fn type_d_labels(i: usize) -> Vec<Label> {
    let mut reps: Vec<(Partition, Partition)> =
        pairs_at(i).into_iter().filter(|(l, m)| canonical_cmp(l, m) != Ordering::Greater).collect();
    reps.sort_by(|a, b| pair_cmp(a, b));
    let mut out = Vec::new();
    for (l, m) in reps {
        if l == m && i > 0 {
            out.push(Label::Unordered { pair: (l.clone(), m.clone()), sign: 1 });
            out.push(Label::Unordered { pair: (l, m), sign: -1 });
        } else {
            out.push(Label::Unordered { pair: (l, m), sign: 0 });
        }
    }
    out
}

/// Labels of the type D vertices that a bipartition (l, m) restricts to.
fn type_d_images(level: usize, l: Partition, m: Partition) -> Vec<Label> {
    if l == m && level > 0 {
        vec![
            Label::Unordered { pair: (l.clone(), m.clone()), sign: 1 },
            Label::Unordered { pair: (l, m), sign: -1 },
        ]
    } else {
        vec![Label::Unordered { pair: unordered(l, m), sign: 0 }]
    }
}

/// Diagram for the type D chain. Unordered bipartitions {λ, μ}; each
/// {λ, λ} above the root splits into two vertices tagged + and −.
pub fn type_d_diagram(n: usize) -> Result<BratteliDiagram> {
    let levels = (0..=n).map(type_d_labels).collect();
    assemble(DiagramFamily::TypeD, levels, |g, lab| {
        let Label::Unordered { pair: (l, m), sign } = lab else { unreachable!() };
        let mut out = Vec::new();
        if *sign != 0 {
            // Each half receives one copy of {λ−□, λ} per removable box.
            for q in partition::remove_box(l) {
                out.push((Label::Unordered { pair: unordered(l.clone(), q), sign: 0 }, 1));
            }
        } else {
            for (a, b) in pair_children_down(l, m) {
                out.extend(type_d_images(g - 1, a, b).into_iter().map(|x| (x, 1)));
            }
        }
        out
    })
}

/// Diagram for a cyclic tower 1 = N_0 | N_1 | ... | N_n. A tower that does
/// not start with 1 gets one prepended.
pub fn cyclic_diagram(tower: &[u64]) -> Result<BratteliDiagram> {
    let mut t = tower.to_vec();
    if t.first() != Some(&1) {
        t.insert(0, 1);
    }
    for w in t.windows(2) {
        if w[0] == 0 || w[1] % w[0] != 0 {
            return Err(BratteliError::InvalidChain(format!("{} does not divide {}", w[0], w[1])));
        }
    }
    let total: u64 = t.iter().sum();
    if total > MAX_VERTICES as u64 {
        return Err(BratteliError::SizeCap { what: "diagram".into(), size: total.to_string(), cap: MAX_VERTICES as u64 });
    }
    let levels = t.iter().map(|&nk| (0..nk).map(Label::Residue).collect()).collect();
    let tt = t.clone();
    assemble(DiagramFamily::Cyclic(t), levels, move |g, lab| match lab {
        Label::Residue(a) => vec![(Label::Residue(a % tt[g - 1]), 1)],
        _ => unreachable!(),
    })
}

/// Builder selected by family tag: "S", "B", "D" take `n`; "C" takes the tower.
pub fn build_diagram(family: &str, n: usize, tower: &[u64]) -> Result<BratteliDiagram> {
    match family {
        "S" => symmetric_diagram(n),
        "B" => hyperoctahedral_diagram(n),
        "D" => type_d_diagram(n),
        "C" => cyclic_diagram(tower),
        other => Err(BratteliError::InvalidChain(format!("unknown family {other}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_levels() {
        let s3 = symmetric_diagram(3).unwrap();
        let dims: Vec<u64> = s3.level(3).iter().map(|&v| s3.dim(v).try_into().unwrap()).collect();
        assert_eq!(dims, vec![1, 2, 1]);
        assert_eq!(hyperoctahedral_diagram(2).unwrap().level(2).len(), 5);
        let d3 = type_d_diagram(3).unwrap();
        assert_eq!(d3.level(2).len(), 4);
    }

    #[test]
    fn cyclic_edges() {
        let c = cyclic_diagram(&[1, 3, 6]).unwrap();
        let zero = c.level(1)[0];
        let kids: Vec<&Label> = c.children(zero).map(|(t, _)| c.label(t)).collect();
        assert_eq!(kids, vec![&Label::Residue(0), &Label::Residue(3)]);
        assert!(matches!(cyclic_diagram(&[1, 4, 6]), Err(BratteliError::InvalidChain(_))));
    }
}
