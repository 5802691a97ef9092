//! Elements of the path algebra C[B_n], stored as one dense block per
//! level-n vertex. Entry (P, Q) of the block at α is the coefficient of the
//! path pair (P, Q) ending at α.

use std::collections::BTreeMap;

use algebra_core::GroupElement;
use bratteli::PathRef;

use crate::error::{RepError, Result};
use crate::rep::{word_product, AdaptedRep, CMatrix, C64};

#[derive(Clone, Debug, PartialEq)]
pub struct PathAlgebraElement {
    pub level: usize,
    /// Absent vertices are zero blocks.
    pub blocks: BTreeMap<usize, CMatrix>,
}

impl PathAlgebraElement {
    pub fn zero(level: usize) -> PathAlgebraElement {
        PathAlgebraElement { level, blocks: BTreeMap::new() }
    }

    pub fn identity(rep: &AdaptedRep, level: usize) -> PathAlgebraElement {
        let blocks =
            rep.diagram().level(level).iter().map(|&v| (v, CMatrix::identity(rep.dim(v), rep.dim(v)))).collect();
        PathAlgebraElement { level, blocks }
    }

    /// The single pair (P, Q); both paths must end at the same vertex.
    pub fn pair(rep: &AdaptedRep, p: &PathRef, q: &PathRef, value: C64) -> Result<PathAlgebraElement> {
        PathAlgebraElement::from_entries(rep, p.len(), [(p.clone(), q.clone(), value)])
    }

    /// Build from (P, Q, value) triples; repeated pairs are summed.
    pub fn from_entries(
        rep: &AdaptedRep,
        level: usize,
        entries: impl IntoIterator<Item = (PathRef, PathRef, C64)>,
    ) -> Result<PathAlgebraElement> {
        let mut out = PathAlgebraElement::zero(level);
        for (p, q, x) in entries {
            if p.end() != q.end() || p.len() != level || q.len() != level {
                return Err(RepError::Structure(format!(
                    "pair {:?}, {:?} does not end at a common level-{level} vertex",
                    p.vertices, q.vertices
                )));
            }
            let v = p.end();
            let (i, j) = (rep.path_index(v, &p.vertices), rep.path_index(v, &q.vertices));
            let (Some(i), Some(j)) = (i, j) else {
                return Err(RepError::Structure(format!("unknown path {:?} or {:?}", p.vertices, q.vertices)));
            };
            let d = rep.dim(v);
            out.blocks.entry(v).or_insert_with(|| CMatrix::zeros(d, d))[(i, j)] += x;
        }
        Ok(out)
    }

    pub fn get(&self, rep: &AdaptedRep, p: &PathRef, q: &PathRef) -> C64 {
        if p.end() != q.end() {
            return C64::new(0.0, 0.0);
        }
        let v = p.end();
        match (self.blocks.get(&v), rep.path_index(v, &p.vertices), rep.path_index(v, &q.vertices)) {
            (Some(b), Some(i), Some(j)) => b[(i, j)],
            _ => C64::new(0.0, 0.0),
        }
    }

    /// Nonzero coefficients as (P, Q, value), blocks in vertex order.
    pub fn entries(&self, rep: &AdaptedRep) -> Vec<(PathRef, PathRef, C64)> {
        let mut out = Vec::new();
        for (&v, b) in &self.blocks {
            let ps = rep.paths(v);
            for i in 0..b.nrows() {
                for j in 0..b.ncols() {
                    if b[(i, j)] != C64::new(0.0, 0.0) {
                        out.push((ps[i].clone(), ps[j].clone(), b[(i, j)]));
                    }
                }
            }
        }
        out
    }

    /// Largest entrywise difference, treating absent blocks as zero.
    pub fn max_abs_diff(&self, other: &PathAlgebraElement) -> f64 {
        let mut worst = 0.0f64;
        for v in self.blocks.keys().chain(other.blocks.keys()) {
            let d = match (self.blocks.get(v), other.blocks.get(v)) {
                (Some(a), Some(b)) if a.shape() == b.shape() => (a - b).camax(),
                (Some(a), None) | (None, Some(a)) => a.camax(),
                _ => f64::INFINITY,
            };
            worst = worst.max(d);
        }
        worst
    }

    pub fn scale(&self, c: C64) -> PathAlgebraElement {
        PathAlgebraElement { level: self.level, blocks: self.blocks.iter().map(|(&v, b)| (v, b * c)).collect() }
    }

    pub fn add(&self, other: &PathAlgebraElement) -> Result<PathAlgebraElement> {
        if self.level != other.level {
            return Err(RepError::Mismatch(format!("levels {} and {}", self.level, other.level)));
        }
        let mut out = self.clone();
        for (&v, b) in &other.blocks {
            match out.blocks.get_mut(&v) {
                Some(a) if a.shape() == b.shape() => *a += b,
                Some(_) => return Err(RepError::Mismatch(format!("block shapes differ at vertex {v}"))),
                None => {
                    out.blocks.insert(v, b.clone());
                }
            }
        }
        Ok(out)
    }
}

/// (ab)_{P,Q'} = Σ_Q a_{P,Q} b_{Q,Q'}.
pub fn path_multiply(a: &PathAlgebraElement, b: &PathAlgebraElement) -> Result<PathAlgebraElement> {
    if a.level != b.level {
        return Err(RepError::Mismatch(format!("levels {} and {}", a.level, b.level)));
    }
    let mut out = PathAlgebraElement::zero(a.level);
    for (&v, x) in &a.blocks {
        if let Some(y) = b.blocks.get(&v) {
            if x.ncols() != y.nrows() {
                return Err(RepError::Mismatch(format!("block shapes differ at vertex {v}")));
            }
            out.blocks.insert(v, x * y);
        }
    }
    Ok(out)
}

/// s̃ at the given level: the block at α is ρ_α(g).
pub fn element_to_path_coords(rep: &AdaptedRep, g: &GroupElement, level: usize) -> Result<PathAlgebraElement> {
    let mut out = PathAlgebraElement::zero(level);
    for &v in rep.diagram().level(level) {
        out.blocks.insert(v, rep.matrix(g, v)?);
    }
    Ok(out)
}

/// s̃ from a supplied generator word, which must multiply to g.
pub fn word_to_path_coords(
    rep: &AdaptedRep,
    word: &[usize],
    g: &GroupElement,
    level: usize,
) -> Result<PathAlgebraElement> {
    let embedded = rep.chain().embed(g, g.rank(), level)?;
    let product = word_product(rep.chain(), word, level)?;
    if product != embedded {
        return Err(RepError::Factorization(format!("{word:?} multiplies to {product:?}, not {embedded:?}")));
    }
    let mut out = PathAlgebraElement::zero(level);
    for &v in rep.diagram().level(level) {
        let mut acc = CMatrix::identity(rep.dim(v), rep.dim(v));
        for &k in word {
            acc *= rep.generator_matrix(k, v)?;
        }
        out.blocks.insert(v, acc);
    }
    Ok(out)
}

/// The image of `a` under C[B_i] → C[B_level]: each block is repeated along
/// every path extension, so entry (P, Q) is a_{P|i, Q|i} when P and Q agree
/// above level i and zero otherwise.
pub fn embed_element(rep: &AdaptedRep, a: &PathAlgebraElement, level: usize) -> Result<PathAlgebraElement> {
    if level < a.level {
        return Err(RepError::Mismatch(format!("cannot embed level {} into level {level}", a.level)));
    }
    let i = a.level;
    let mut out = PathAlgebraElement::zero(level);
    for &v in rep.diagram().level(level) {
        let ps = rep.paths(v);
        let d = ps.len();
        let mut m = CMatrix::zeros(d, d);
        let mut any = false;
        for (r, p) in ps.iter().enumerate() {
            for (c, q) in ps.iter().enumerate() {
                if p.vertices[i..] != q.vertices[i..] {
                    continue;
                }
                let beta = p.at(i);
                if let Some(b) = a.blocks.get(&beta) {
                    let (x, y) = (rep.path_index(beta, &p.vertices[..=i]), rep.path_index(beta, &q.vertices[..=i]));
                    m[(r, c)] = b[(x.expect("prefix is a path"), y.expect("prefix is a path"))];
                    any = true;
                }
            }
        }
        if any {
            out.blocks.insert(v, m);
        }
    }
    Ok(out)
}
