//! Generator matrices in path-indexed bases.
//!
//! S_n uses Young's orthogonal form. B_n uses a seminormal form on pairs of
//! partitions: the sign generator is diagonal, and the transpositions act as
//! in Young's form when both boxes land in the same partition and as a plain
//! swap of the two orders otherwise. Cyclic towers are handled through their
//! characters.

use std::collections::HashMap;
use std::f64::consts::PI;

use algebra_core::{group_op, Family, GroupChain, GroupElement};
use bratteli::partition::{added_box, content};
use bratteli::{cyclic_diagram, hyperoctahedral_diagram, symmetric_diagram, BratteliDiagram, Label, PathRef};
use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{RepError, Result};

pub type C64 = Complex64;
pub type CMatrix = DMatrix<Complex64>;

#[derive(Clone, Debug)]
pub struct AdaptedRep {
    chain: GroupChain,
    diagram: BratteliDiagram,
    paths: Vec<Vec<PathRef>>,
    index: Vec<HashMap<Vec<usize>, usize>>,
    /// gens[k][vertex] for every vertex at or above the generator's top level.
    gens: Vec<HashMap<usize, CMatrix>>,
}

/// Which partition (0 for S_n) and which content the box added at step `j`
/// of a path has.
fn step_box(d: &BratteliDiagram, verts: &[usize], j: usize) -> (usize, i64) {
    match (d.label(verts[j - 1]), d.label(verts[j])) {
        (Label::Partition(a), Label::Partition(b)) => (0, content(added_box(a, b).expect("one box added"))),
        (Label::Pair(l0, m0), Label::Pair(l1, m1)) => {
            if l0 == l1 {
                (1, content(added_box(m0, m1).expect("one box added")))
            } else {
                (0, content(added_box(l0, l1).expect("one box added")))
            }
        }
        (a, b) => panic!("no box structure between {a} and {b}"),
    }
}

/// The path through the other level-`j` vertex between verts[j−1] and verts[j+1], if any.
fn partner(d: &BratteliDiagram, index: &HashMap<Vec<usize>, usize>, verts: &[usize], j: usize) -> Option<usize> {
    let (below, above) = (verts[j - 1], verts[j + 1]);
    d.children(below)
        .map(|(c, _)| c)
        .filter(|&c| c != verts[j] && d.multiplicity(c, above) > 0)
        .find_map(|c| {
            let mut q = verts.to_vec();
            q[j] = c;
            index.get(&q).copied()
        })
}

fn build_generator(
    family: Family,
    d: &BratteliDiagram,
    paths: &[PathRef],
    index: &HashMap<Vec<usize>, usize>,
    k: usize,
) -> CMatrix {
    let dim = paths.len();
    let mut m = CMatrix::zeros(dim, dim);
    for (a, p) in paths.iter().enumerate() {
        let v = &p.vertices;
        match (family, k) {
            (Family::Hyperoctahedral, 1) => {
                let (comp, _) = step_box(d, v, 1);
                m[(a, a)] = C64::new(if comp == 0 { 1.0 } else { -1.0 }, 0.0);
            }
            _ => {
                // Steps whose boxes the generator swaps.
                let (j1, j2) = if family == Family::Symmetric { (k, k + 1) } else { (k - 1, k) };
                let (c1, x1) = step_box(d, v, j1);
                let (c2, x2) = step_box(d, v, j2);
                let (diag, off) = if c1 == c2 {
                    let r = (x2 - x1) as f64;
                    (1.0 / r, (1.0 - 1.0 / (r * r)).max(0.0).sqrt())
                } else {
                    (0.0, 1.0)
                };
                m[(a, a)] = C64::new(diag, 0.0);
                if off > 0.0 {
                    let b = partner(d, index, v, j1).expect("a non-degenerate swap has a partner path");
                    m[(a, b)] = C64::new(off, 0.0);
                }
            }
        }
    }
    m
}

fn coxeter_order(family: Family, i: usize, j: usize) -> usize {
    if i == j {
        return 1;
    }
    let (a, b) = (i.min(j), i.max(j));
    match family {
        Family::Hyperoctahedral if (a, b) == (1, 2) => 4,
        _ if b == a + 1 => 3,
        _ => 2,
    }
}

impl AdaptedRep {
    /// Supported chains: symmetric, hyperoctahedral and cyclic.
    pub fn new(chain: &GroupChain) -> Result<AdaptedRep> {
        let n = chain.len();
        let diagram = match chain.family() {
            Family::Symmetric => symmetric_diagram(n)?,
            Family::Hyperoctahedral => hyperoctahedral_diagram(n)?,
            Family::Cyclic => cyclic_diagram(chain.tower())?,
            f => return Err(RepError::Unsupported(format!("no explicit adapted matrices for family {}", f.tag()))),
        };
        let mut paths = Vec::with_capacity(diagram.num_vertices());
        let mut index = Vec::with_capacity(diagram.num_vertices());
        for id in 0..diagram.num_vertices() {
            let ps = diagram.enumerate_paths(id)?;
            index.push(ps.iter().enumerate().map(|(i, p)| (p.vertices.clone(), i)).collect());
            paths.push(ps);
        }
        let mut gens = vec![HashMap::new()];
        for g in chain.generators() {
            let mut per_vertex = HashMap::new();
            for level in g.levels.1..=n {
                for &v in diagram.level(level) {
                    per_vertex.insert(v, build_generator(chain.family(), &diagram, &paths[v], &index[v], g.index));
                }
            }
            debug_assert_eq!(gens.len(), g.index);
            gens.push(per_vertex);
        }
        Ok(AdaptedRep { chain: chain.clone(), diagram, paths, index, gens })
    }

    pub fn chain(&self) -> &GroupChain {
        &self.chain
    }

    pub fn diagram(&self) -> &BratteliDiagram {
        &self.diagram
    }

    pub fn n(&self) -> usize {
        self.chain.len()
    }

    pub fn paths(&self, vertex: usize) -> &[PathRef] {
        &self.paths[vertex]
    }

    pub fn path_index(&self, vertex: usize, vertices: &[usize]) -> Option<usize> {
        self.index[vertex].get(vertices).copied()
    }

    pub fn dim(&self, vertex: usize) -> usize {
        self.paths[vertex].len()
    }

    /// Number of simple reflections (0 for cyclic chains).
    pub fn num_generators(&self) -> usize {
        self.gens.len() - 1
    }

    /// The matrix of s_k at a vertex at or above the generator's top level.
    pub fn generator_matrix(&self, k: usize, vertex: usize) -> Result<&CMatrix> {
        self.gens
            .get(k)
            .filter(|_| k > 0)
            .ok_or_else(|| RepError::Mismatch(format!("no generator s_{k}")))?
            .get(&vertex)
            .ok_or_else(|| RepError::Mismatch(format!("s_{k} is not defined at vertex {vertex}")))
    }

    /// ρ_α(g) for α = `vertex`. Elements of lower groups of the chain are embedded first.
    pub fn matrix(&self, g: &GroupElement, vertex: usize) -> Result<CMatrix> {
        let m = self.diagram.grade(vertex);
        match g {
            GroupElement::Cyclic { order, value } => {
                let tower = self.chain.tower();
                if !tower[..=m].contains(order) {
                    return Err(RepError::Mismatch(format!("C_{order} is not in the chain below level {m}")));
                }
                let Label::Residue(a) = self.diagram.label(vertex) else {
                    return Err(RepError::Structure("cyclic vertex without a residue label".into()));
                };
                let top = tower[m];
                let v = (value % order) * (top / order);
                let turns = (a * v) % top;
                // Quarter turns are written exactly so that ±1 and ±i stay literal.
                let x = if (4 * turns) % top == 0 {
                    [C64::new(1.0, 0.0), C64::new(0.0, 1.0), C64::new(-1.0, 0.0), C64::new(0.0, -1.0)]
                        [(4 * turns / top) as usize]
                } else {
                    C64::from_polar(1.0, 2.0 * PI * turns as f64 / top as f64)
                };
                Ok(CMatrix::from_element(1, 1, x))
            }
            GroupElement::Perm(_) | GroupElement::Signed(_) => {
                let r = g.rank();
                if r > m {
                    return Err(RepError::Mismatch(format!("element of rank {r} at a level-{m} vertex")));
                }
                let g = self.chain.embed(g, r, m)?;
                let word = factor_into_generators(&self.chain, &g)?;
                let mut acc = CMatrix::identity(self.dim(vertex), self.dim(vertex));
                for k in word {
                    acc *= self.generator_matrix(k, vertex)?;
                }
                Ok(acc)
            }
            GroupElement::Matrix(_) => Err(RepError::Unsupported("matrix groups".into())),
        }
    }

    /// The same representation with the basis at one vertex reordered:
    /// new basis vector i is old basis vector perm[i]. Still a
    /// representation, generally no longer adapted.
    pub fn permute_basis(&self, vertex: usize, perm: &[usize]) -> Result<AdaptedRep> {
        let d = self.dim(vertex);
        let mut seen = vec![false; d];
        if perm.len() != d || !perm.iter().all(|&p| p < d && !std::mem::replace(&mut seen[p], true)) {
            return Err(RepError::Mismatch(format!("{perm:?} is not a permutation of {d} basis vectors")));
        }
        let mut out = self.clone();
        for per_vertex in out.gens.iter_mut().skip(1) {
            if let Some(m) = per_vertex.get_mut(&vertex) {
                *m = CMatrix::from_fn(d, d, |i, j| m[(perm[i], perm[j])]);
            }
        }
        Ok(out)
    }

    /// Largest deviation from the Coxeter relations and from orthogonality
    /// over all vertices where the generators involved are defined.
    pub fn relation_residual(&self) -> f64 {
        let fam = self.chain.family();
        let mut worst = 0.0f64;
        for v in 0..self.diagram.num_vertices() {
            let id = CMatrix::identity(self.dim(v), self.dim(v));
            let here: Vec<(usize, &CMatrix)> =
                (1..self.gens.len()).filter_map(|k| self.gens[k].get(&v).map(|m| (k, m))).collect();
            for &(i, a) in &here {
                worst = worst.max((a * a.adjoint() - &id).camax());
                for &(j, b) in &here {
                    if j < i {
                        continue;
                    }
                    let ab = a * b;
                    let mut p = id.clone();
                    for _ in 0..coxeter_order(fam, i, j) {
                        p *= &ab;
                    }
                    worst = worst.max((p - &id).camax());
                }
            }
        }
        worst
    }
}

/// The matrix of s_k at the top-level vertex with the given label.
pub fn generator_matrix(family: Family, n: usize, k: usize, vertex: &Label) -> Result<CMatrix> {
    let chain = match family {
        Family::Symmetric => GroupChain::symmetric(n),
        Family::Hyperoctahedral => GroupChain::hyperoctahedral(n),
        f => return Err(RepError::Unsupported(format!("generator matrices for family {}", f.tag()))),
    };
    let rep = AdaptedRep::new(&chain)?;
    let v = rep
        .diagram
        .find_at(n, vertex)
        .ok_or_else(|| RepError::Mismatch(format!("{vertex} is not a level-{n} vertex")))?;
    Ok(rep.generator_matrix(k, v)?.clone())
}

/// A word k_1 … k_m with g = s_{k_1} ⋯ s_{k_m} for S_n and B_n.
pub fn factor_into_generators(chain: &GroupChain, g: &GroupElement) -> Result<Vec<usize>> {
    let mut pushed = Vec::new();
    match (chain.family(), g) {
        (Family::Symmetric, GroupElement::Perm(p)) => {
            let mut w = p.clone();
            // Right-multiplying by s_{i+1} swaps entries i and i+1.
            while let Some(i) = (0..w.len().saturating_sub(1)).find(|&i| w[i] > w[i + 1]) {
                w.swap(i, i + 1);
                pushed.push(i + 1);
            }
        }
        (Family::Hyperoctahedral, GroupElement::Signed(s)) => {
            let mut w = s.clone();
            while let Some(j) = w.iter().position(|&x| x < 0) {
                for i in (0..j).rev() {
                    w.swap(i, i + 1);
                    pushed.push(i + 2);
                }
                w[0] = -w[0];
                pushed.push(1);
            }
            while let Some(i) = (0..w.len().saturating_sub(1)).find(|&i| w[i] > w[i + 1]) {
                w.swap(i, i + 1);
                pushed.push(i + 2);
            }
        }
        (f, _) => {
            return Err(RepError::Unsupported(format!("generator factorization of {g:?} in family {}", f.tag())))
        }
    }
    pushed.reverse();
    let check = word_product(chain, &pushed, g.rank())?;
    if &check != g {
        return Err(RepError::Factorization(format!("{g:?} factored to {check:?}")));
    }
    Ok(pushed)
}

/// s_{k_1} ⋯ s_{k_m} realized in G_rank.
pub(crate) fn word_product(chain: &GroupChain, word: &[usize], rank: usize) -> Result<GroupElement> {
    let mut acc = chain.group(rank).identity();
    for &k in word {
        let gen = chain.generator(k).ok_or_else(|| RepError::Mismatch(format!("no generator s_{k}")))?;
        if gen.levels.1 > rank {
            return Err(RepError::Mismatch(format!("s_{k} does not lie in level {rank}")));
        }
        acc = group_op(&acc, &chain.embed(&gen.element, gen.levels.1, rank)?)?;
    }
    Ok(acc)
}
