//! Gluing shape quivers.
//!
//! [`glue`] identifies explicit vertices and arrows of two quivers. For
//! products of interval factors, [`StrandGlue`] builds the whole glued
//! picture at once: one root-to-top path ("strand") per index of the
//! product, where consecutive strands share everything outside the
//! factor's interval.

use std::collections::BTreeSet;

use crate::error::{QuiverError, Result};
use crate::shape::ShapeQuiver;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Identification {
    /// Pairs (vertex of Q₁, vertex of Q₂).
    pub vertices: Vec<(usize, usize)>,
    /// Pairs (edge of Q₁, edge of Q₂).
    pub edges: Vec<(usize, usize)>,
}

impl Identification {
    /// Identify every vertex and edge of a quiver with itself.
    pub fn full(q: &ShapeQuiver) -> Identification {
        Identification {
            vertices: (0..q.num_vertices()).map(|v| (v, v)).collect(),
            edges: (0..q.edges().len()).map(|e| (e, e)).collect(),
        }
    }
}

fn injective(pairs: &[(usize, usize)]) -> bool {
    let a: BTreeSet<usize> = pairs.iter().map(|p| p.0).collect();
    let b: BTreeSet<usize> = pairs.iter().map(|p| p.1).collect();
    a.len() == pairs.len() && b.len() == pairs.len()
}

/// Glue two quivers along an identification. Returns the union and the
/// symmetric difference; the latter keeps the union as its ambient and
/// marks the arrows that are not shared, together with their endpoints
/// and the unshared vertices.
pub fn glue(q1: &ShapeQuiver, q2: &ShapeQuiver, ident: &Identification) -> Result<(ShapeQuiver, ShapeQuiver)> {
    if q1.has_ambient() || q2.has_ambient() {
        return Err(QuiverError::Gluing("gluing expects quivers without an ambient".into()));
    }
    let (n1, n2) = (q1.num_vertices(), q2.num_vertices());
    if !injective(&ident.vertices) || !injective(&ident.edges) {
        return Err(QuiverError::Gluing("identification is not injective".into()));
    }
    let mut map2 = vec![usize::MAX; n2];
    for &(a, b) in &ident.vertices {
        if a >= n1 || b >= n2 {
            return Err(QuiverError::Gluing(format!("unknown vertex pair ({a}, {b})")));
        }
        if q1.grades()[a] != q2.grades()[b] {
            return Err(QuiverError::Gluing(format!("vertices {a} and {b} have different grades")));
        }
        map2[b] = a;
    }
    let mut shared2 = vec![false; q2.edges().len()];
    let mut shared1 = vec![false; q1.edges().len()];
    for &(e1, e2) in &ident.edges {
        let (Some(&(s1, t1)), Some(&(s2, t2))) = (q1.edges().get(e1), q2.edges().get(e2)) else {
            return Err(QuiverError::Gluing(format!("unknown edge pair ({e1}, {e2})")));
        };
        if map2[s2] != s1 || map2[t2] != t1 {
            return Err(QuiverError::Gluing(format!("edges {e1} and {e2} have unidentified endpoints")));
        }
        shared1[e1] = true;
        shared2[e2] = true;
    }

    let mut grades = q1.grades().to_vec();
    let mut vshared = vec![false; n1];
    for &(a, _) in &ident.vertices {
        vshared[a] = true;
    }
    for v in 0..n2 {
        if map2[v] == usize::MAX {
            map2[v] = grades.len();
            grades.push(q2.grades()[v]);
            vshared.push(false);
        }
    }
    let mut edges = q1.edges().to_vec();
    let mut kept = shared1.iter().map(|s| !s).collect::<Vec<bool>>();
    for (e, &(s, t)) in q2.edges().iter().enumerate() {
        if !shared2[e] {
            edges.push((map2[s], map2[t]));
            kept.push(true);
        }
    }
    let union = ShapeQuiver::new(grades.clone(), edges.clone())?;
    let mut qv: Vec<bool> = vshared.iter().map(|s| !s).collect();
    for (e, &(s, t)) in edges.iter().enumerate() {
        if kept[e] {
            qv[s] = true;
            qv[t] = true;
        }
    }
    let symdiff = union.remark(qv, kept)?;
    Ok((union, symdiff))
}

/// How two intervals sit relative to each other.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IntervalCase {
    Nested,
    Overlapping,
    Disjoint,
}

/// Containment is tested first, so equal endpoints count as nested.
pub fn classify(a: (usize, usize), b: (usize, usize)) -> IntervalCase {
    if (a.0 <= b.0 && b.1 <= a.1) || (b.0 <= a.0 && a.1 <= b.1) {
        IntervalCase::Nested
    } else if a.0.max(b.0) < a.1.min(b.1) {
        IntervalCase::Overlapping
    } else {
        IntervalCase::Disjoint
    }
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut y = x;
        while self.0[y] != r {
            let next = self.0[y];
            self.0[y] = r;
            y = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// The glued quiver of a product F₀F₁⋯F_{m−1} of interval factors.
///
/// Strand s is a path 0 → 1 → ⋯ → n. Factor k joins strands k and k+1:
/// they share vertices at levels ≤ lo or ≥ hi and the arcs lying wholly in
/// those ranges. The ambient R is the quotient of all strands.
#[derive(Clone, Debug)]
pub struct StrandGlue {
    n: usize,
    intervals: Vec<(usize, usize)>,
    vclass: Vec<Vec<usize>>,
    aclass: Vec<Vec<usize>>,
    ambient: ShapeQuiver,
    factor_v: Vec<BTreeSet<usize>>,
    factor_a: Vec<BTreeSet<usize>>,
}

impl StrandGlue {
    pub fn new(n: usize, intervals: &[(usize, usize)]) -> Result<StrandGlue> {
        for &(lo, hi) in intervals {
            if lo > hi || hi > n {
                return Err(QuiverError::Gluing(format!("interval ({lo}, {hi}) outside 0..={n}")));
            }
        }
        let strands = intervals.len() + 1;
        let vid = |s: usize, l: usize| s * (n + 1) + l;
        let aid = |s: usize, l: usize| s * n + l;
        let mut vu = UnionFind((0..strands * (n + 1)).collect());
        let mut au = UnionFind((0..strands * n).collect());
        for (k, &(lo, hi)) in intervals.iter().enumerate() {
            for l in 0..=n {
                if l <= lo || l >= hi {
                    vu.union(vid(k, l), vid(k + 1, l));
                }
            }
            for l in 0..n {
                if l + 1 <= lo || l >= hi {
                    au.union(aid(k, l), aid(k + 1, l));
                }
            }
        }
        // Number classes in order of first appearance (strand-major).
        let mut vnum = vec![usize::MAX; strands * (n + 1)];
        let mut grades = Vec::new();
        let mut vclass = vec![vec![0; n + 1]; strands];
        for s in 0..strands {
            for l in 0..=n {
                let r = vu.find(vid(s, l));
                if vnum[r] == usize::MAX {
                    vnum[r] = grades.len();
                    grades.push(l);
                }
                vclass[s][l] = vnum[r];
            }
        }
        let mut anum = vec![usize::MAX; strands * n];
        let mut edges = Vec::new();
        let mut aclass = vec![vec![0; n]; strands];
        for s in 0..strands {
            for l in 0..n {
                let r = au.find(aid(s, l));
                if anum[r] == usize::MAX {
                    anum[r] = edges.len();
                    edges.push((vclass[s][l], vclass[s][l + 1]));
                }
                aclass[s][l] = anum[r];
            }
        }
        let nv = grades.len();
        let ne = edges.len();
        let ambient = ShapeQuiver::with_ambient(grades, edges, vec![false; nv], vec![false; ne])?;
        let mut factor_v = Vec::new();
        let mut factor_a = Vec::new();
        for (k, &(lo, hi)) in intervals.iter().enumerate() {
            let mut vs = BTreeSet::new();
            let mut as_ = BTreeSet::new();
            for s in [k, k + 1] {
                for l in lo..=hi {
                    vs.insert(vclass[s][l]);
                }
                for l in lo..hi {
                    as_.insert(aclass[s][l]);
                }
            }
            factor_v.push(vs);
            factor_a.push(as_);
        }
        Ok(StrandGlue { n, intervals: intervals.to_vec(), vclass, aclass, ambient, factor_v, factor_a })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn intervals(&self) -> &[(usize, usize)] {
        &self.intervals
    }

    /// R with nothing marked.
    pub fn ambient(&self) -> &ShapeQuiver {
        &self.ambient
    }

    pub fn vertex_class(&self, strand: usize, level: usize) -> usize {
        self.vclass[strand][level]
    }

    pub fn arc_class(&self, strand: usize, level: usize) -> usize {
        self.aclass[strand][level]
    }

    /// Vertex and arc classes touched by factor k.
    pub fn factor_classes(&self, k: usize) -> (&BTreeSet<usize>, &BTreeSet<usize>) {
        (&self.factor_v[k], &self.factor_a[k])
    }

    /// Classes on the outer strands that some factor touches; these index
    /// the entries of the full product.
    pub fn target(&self) -> (BTreeSet<usize>, BTreeSet<usize>) {
        let m = self.intervals.len();
        let outer_v: BTreeSet<usize> = [0, m].iter().flat_map(|&s| self.vclass[s].iter().copied()).collect();
        let outer_a: BTreeSet<usize> = [0, m].iter().flat_map(|&s| self.aclass[s].iter().copied()).collect();
        let touched_v: BTreeSet<usize> = self.factor_v.iter().flatten().copied().collect();
        let touched_a: BTreeSet<usize> = self.factor_a.iter().flatten().copied().collect();
        (
            outer_v.intersection(&touched_v).copied().collect(),
            outer_a.intersection(&touched_a).copied().collect(),
        )
    }

    /// Classes of the factors in `set` that are still needed by a factor
    /// outside `set` or by the target.
    pub fn boundary(&self, set: &[usize]) -> (BTreeSet<usize>, BTreeSet<usize>) {
        let inside: BTreeSet<usize> = set.iter().copied().collect();
        let (tv, ta) = self.target();
        let mut in_v = BTreeSet::new();
        let mut in_a = BTreeSet::new();
        let mut out_v = tv;
        let mut out_a = ta;
        for k in 0..self.intervals.len() {
            if inside.contains(&k) {
                in_v.extend(self.factor_v[k].iter().copied());
                in_a.extend(self.factor_a[k].iter().copied());
            } else {
                out_v.extend(self.factor_v[k].iter().copied());
                out_a.extend(self.factor_a[k].iter().copied());
            }
        }
        (in_v.intersection(&out_v).copied().collect(), in_a.intersection(&out_a).copied().collect())
    }

    /// R with the given classes marked.
    pub fn shape(&self, vs: &BTreeSet<usize>, arcs: &BTreeSet<usize>) -> Result<ShapeQuiver> {
        let qv = (0..self.ambient.num_vertices()).map(|v| vs.contains(&v)).collect();
        let qe = (0..self.ambient.edges().len()).map(|e| arcs.contains(&e)).collect();
        self.ambient.remark(qv, qe)
    }

    /// The shape Q_k of a single factor inside R.
    pub fn factor_shape(&self, k: usize) -> Result<ShapeQuiver> {
        self.shape(&self.factor_v[k], &self.factor_a[k])
    }

    /// Union of the factors in `set`.
    pub fn union_shape(&self, set: &[usize]) -> Result<ShapeQuiver> {
        let vs = set.iter().flat_map(|&k| self.factor_v[k].iter().copied()).collect();
        let arcs = set.iter().flat_map(|&k| self.factor_a[k].iter().copied()).collect();
        self.shape(&vs, &arcs)
    }

    /// The shape indexing one multiplication when factor `next` is applied
    /// to the partial product of `done`: the boundary of `done` together
    /// with Q_next.
    pub fn stage_shape(&self, done: &[usize], next: usize) -> Result<ShapeQuiver> {
        let (mut vs, mut arcs) = self.boundary(done);
        vs.extend(self.factor_v[next].iter().copied());
        arcs.extend(self.factor_a[next].iter().copied());
        self.shape(&vs, &arcs)
    }
}
