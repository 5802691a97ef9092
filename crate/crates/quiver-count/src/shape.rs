use std::collections::{BTreeMap, BTreeSet};

use crate::error::{QuiverError, Result};

/// A graded quiver R together with a marked subquiver Q. Morphisms of Q
/// are counted only if they extend to R. With nothing unmarked, Q = R.
/// Pins fix the image of an R vertex to a given diagram vertex id.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShapeQuiver {
    grades: Vec<usize>,
    edges: Vec<(usize, usize)>,
    q_vertices: Vec<bool>,
    q_edges: Vec<bool>,
    pins: BTreeMap<usize, usize>,
}

impl ShapeQuiver {
    /// A quiver with no ambient: every vertex and edge is part of Q.
    pub fn new(grades: Vec<usize>, edges: Vec<(usize, usize)>) -> Result<ShapeQuiver> {
        let nv = grades.len();
        let ne = edges.len();
        ShapeQuiver::with_ambient(grades, edges, vec![true; nv], vec![true; ne])
    }

    /// R with the marked subquiver Q given by flags.
    pub fn with_ambient(
        grades: Vec<usize>,
        edges: Vec<(usize, usize)>,
        q_vertices: Vec<bool>,
        q_edges: Vec<bool>,
    ) -> Result<ShapeQuiver> {
        if q_vertices.len() != grades.len() || q_edges.len() != edges.len() {
            return Err(QuiverError::InvalidShape("marking length mismatch".into()));
        }
        for (k, &(s, t)) in edges.iter().enumerate() {
            if s >= grades.len() || t >= grades.len() {
                return Err(QuiverError::InvalidShape(format!("edge {k} has an unknown endpoint")));
            }
            if grades[t] <= grades[s] {
                return Err(QuiverError::InvalidShape(format!("edge {s}->{t} does not go up")));
            }
            if q_edges[k] && !(q_vertices[s] && q_vertices[t]) {
                return Err(QuiverError::InvalidShape(format!("marked edge {s}->{t} has an unmarked endpoint")));
            }
        }
        Ok(ShapeQuiver { grades, edges, q_vertices, q_edges, pins: BTreeMap::new() })
    }

    /// Fix the image of vertex `v` to diagram vertex `target`.
    pub fn pin(mut self, v: usize, target: usize) -> Result<ShapeQuiver> {
        if v >= self.grades.len() {
            return Err(QuiverError::InvalidShape(format!("pin on unknown vertex {v}")));
        }
        self.pins.insert(v, target);
        Ok(self)
    }

    pub fn grades(&self) -> &[usize] {
        &self.grades
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn pins(&self) -> &BTreeMap<usize, usize> {
        &self.pins
    }

    pub fn num_vertices(&self) -> usize {
        self.grades.len()
    }

    pub fn is_marked_vertex(&self, v: usize) -> bool {
        self.q_vertices[v]
    }

    pub fn is_marked_edge(&self, e: usize) -> bool {
        self.q_edges[e]
    }

    pub fn marked_vertices(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.grades.len()).filter(|&v| self.q_vertices[v])
    }

    pub fn marked_edges(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.edges.len()).filter(|&e| self.q_edges[e])
    }

    pub fn has_ambient(&self) -> bool {
        self.q_vertices.iter().any(|m| !m) || self.q_edges.iter().any(|m| !m)
    }

    pub fn max_grade(&self) -> usize {
        self.grades.iter().copied().max().unwrap_or(0)
    }

    /// The marked subquiver on its own, dropping the ambient.
    pub fn marked_part(&self) -> ShapeQuiver {
        let mut index = vec![usize::MAX; self.grades.len()];
        let mut grades = Vec::new();
        for v in self.marked_vertices() {
            index[v] = grades.len();
            grades.push(self.grades[v]);
        }
        let edges = self.marked_edges().map(|e| (index[self.edges[e].0], index[self.edges[e].1])).collect();
        let mut q = ShapeQuiver::new(grades, edges).expect("marked part of a valid shape is valid");
        for (&v, &t) in &self.pins {
            if index[v] != usize::MAX {
                q.pins.insert(index[v], t);
            }
        }
        q
    }

    /// Same R, different marking.
    pub fn remark(&self, q_vertices: Vec<bool>, q_edges: Vec<bool>) -> Result<ShapeQuiver> {
        let mut s = ShapeQuiver::with_ambient(self.grades.clone(), self.edges.clone(), q_vertices, q_edges)?;
        s.pins = self.pins.clone();
        Ok(s)
    }

    /// Canonical multiset description of the marked part: sorted vertex
    /// grades and sorted (src grade, dst grade) edge spans.
    pub fn signature(&self) -> (Vec<usize>, Vec<(usize, usize)>) {
        let mut g: Vec<usize> = self.marked_vertices().map(|v| self.grades[v]).collect();
        g.sort();
        let mut e: Vec<(usize, usize)> =
            self.marked_edges().map(|e| (self.grades[self.edges[e].0], self.grades[self.edges[e].1])).collect();
        e.sort();
        (g, e)
    }
}

/// Remove every vertex with exactly one incoming and one outgoing edge,
/// fusing the two edges. Vertices that are pinned, or whose marking
/// differs from that of their edges, are kept so that Hom counts are
/// unchanged.
pub fn smooth(q: &ShapeQuiver) -> ShapeQuiver {
    let mut grades = q.grades.clone();
    let mut edges: Vec<Option<(usize, usize, bool)>> =
        q.edges.iter().zip(&q.q_edges).map(|(&(s, t), &m)| Some((s, t, m))).collect();
    let mut alive = vec![true; grades.len()];
    loop {
        let mut changed = false;
        for v in 0..grades.len() {
            if !alive[v] || q.pins.contains_key(&v) {
                continue;
            }
            let ins: Vec<usize> = (0..edges.len()).filter(|&e| matches!(edges[e], Some((_, t, _)) if t == v)).collect();
            let outs: Vec<usize> = (0..edges.len()).filter(|&e| matches!(edges[e], Some((s, _, _)) if s == v)).collect();
            if ins.len() != 1 || outs.len() != 1 {
                continue;
            }
            let (u, _, m_in) = edges[ins[0]].unwrap();
            let (_, w, m_out) = edges[outs[0]].unwrap();
            if m_in != q.q_vertices[v] || m_out != q.q_vertices[v] {
                continue;
            }
            edges[ins[0]] = Some((u, w, m_in));
            edges[outs[0]] = None;
            alive[v] = false;
            changed = true;
        }
        if !changed {
            break;
        }
    }
    let mut index = vec![usize::MAX; grades.len()];
    let mut new_grades = Vec::new();
    let mut q_vertices = Vec::new();
    for v in 0..grades.len() {
        if alive[v] {
            index[v] = new_grades.len();
            new_grades.push(grades[v]);
            q_vertices.push(q.q_vertices[v]);
        }
    }
    grades.clear();
    let mut new_edges = Vec::new();
    let mut q_edges = Vec::new();
    for (s, t, m) in edges.into_iter().flatten() {
        new_edges.push((index[s], index[t]));
        q_edges.push(m);
    }
    let mut out = ShapeQuiver::with_ambient(new_grades, new_edges, q_vertices, q_edges).expect("smoothing keeps validity");
    out.pins = q.pins.iter().map(|(&v, &t)| (index[v], t)).collect();
    out
}

/// Vertices of a shape that lie in the same connected component as `v`
/// (ignoring edge direction).
pub fn component_of(q: &ShapeQuiver, v: usize) -> BTreeSet<usize> {
    let mut seen = BTreeSet::from([v]);
    let mut stack = vec![v];
    while let Some(x) = stack.pop() {
        for &(s, t) in &q.edges {
            let other = if s == x {
                t
            } else if t == x {
                s
            } else {
                continue;
            };
            if seen.insert(other) {
                stack.push(other);
            }
        }
    }
    seen
}
