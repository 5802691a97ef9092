//! Explicit listing of morphisms for multiplicity-free diagrams.
//!
//! When every arrow of the diagram is simple and every marked arrow of the
//! shape spans a single grade, a morphism is fixed by its vertex images.
//! The listing backtracks over the marked vertices; each connected piece of
//! the ambient is checked once all of its marked neighbours are placed, with
//! the answer memoized on those neighbours' images.

use std::collections::{BTreeSet, HashMap};

use bratteli::BratteliDiagram;
use num_traits::Zero;

use crate::count::{domains, SpanTable};
use crate::error::{QuiverError, Result};
use crate::shape::ShapeQuiver;

struct Ambient {
    vertices: Vec<usize>,
    boundary: Vec<usize>,
}

struct Search<'a> {
    doms: Vec<Vec<usize>>,
    // adj[v] = (other endpoint, edge index, v is the source)
    adj: Vec<Vec<(usize, usize, bool)>>,
    // tables[e][pos_t][pos_s] is true when the diagram has a path.
    tables: Vec<Vec<Vec<bool>>>,
    marked: &'a [bool],
    pieces: Vec<Ambient>,
    memo: HashMap<(usize, Vec<usize>), bool>,
}

impl Search<'_> {
    fn edge_ok(&self, e: usize, src_pos: usize, dst_pos: usize) -> bool {
        self.tables[e][dst_pos][src_pos]
    }

    /// Whether `v` can take `x` given the already placed vertices in `img`.
    fn fits(&self, v: usize, x: usize, img: &[usize], placed: &dyn Fn(usize) -> bool) -> bool {
        self.adj[v].iter().all(|&(w, e, v_is_src)| {
            if !placed(w) {
                return true;
            }
            if v_is_src {
                self.edge_ok(e, x, img[w])
            } else {
                self.edge_ok(e, img[w], x)
            }
        })
    }

    fn piece_feasible(&mut self, p: usize, img: &mut [usize]) -> bool {
        let key = (p, self.pieces[p].boundary.iter().map(|&v| img[v]).collect::<Vec<_>>());
        if let Some(&ok) = self.memo.get(&key) {
            return ok;
        }
        let verts = self.pieces[p].vertices.clone();
        let mut set = vec![false; img.len()];
        let ok = self.extend_piece(&verts, 0, img, &mut set);
        self.memo.insert(key, ok);
        ok
    }

    fn extend_piece(&self, verts: &[usize], k: usize, img: &mut [usize], set: &mut [bool]) -> bool {
        if k == verts.len() {
            return true;
        }
        let v = verts[k];
        for i in 0..self.doms[v].len() {
            let x = self.doms[v][i];
            let placed = |w: usize| self.marked[w] || set[w];
            if self.fits(v, x, img, &placed) {
                img[v] = x;
                set[v] = true;
                let ok = self.extend_piece(verts, k + 1, img, set);
                set[v] = false;
                if ok {
                    return true;
                }
            }
        }
        false
    }
}

/// Every morphism of the marked subquiver that extends to the ambient and
/// respects the pins, as the diagram vertex ids of the marked vertices in
/// ascending shape-vertex order. The list is sorted.
pub fn enumerate_homs(q: &ShapeQuiver, b: &BratteliDiagram) -> Result<Vec<Vec<usize>>> {
    if !b.is_multiplicity_free() {
        return Err(QuiverError::InvalidShape("morphism listing needs a multiplicity-free diagram".into()));
    }
    let grades = q.grades();
    for e in q.marked_edges() {
        let (s, t) = q.edges()[e];
        if grades[t] != grades[s] + 1 {
            return Err(QuiverError::InvalidShape(format!("marked edge {s}->{t} spans more than one grade")));
        }
    }
    let doms = domains(q, b)?;
    let nv = q.num_vertices();
    let mut spans = SpanTable::new(b);
    let tables: Vec<Vec<Vec<bool>>> = q
        .edges()
        .iter()
        .map(|&(s, t)| spans.get(grades[s], grades[t]).iter().map(|row| row.iter().map(|m| !m.is_zero()).collect()).collect())
        .collect();
    let mut adj = vec![Vec::new(); nv];
    for (e, &(s, t)) in q.edges().iter().enumerate() {
        adj[s].push((t, e, true));
        adj[t].push((s, e, false));
    }
    let marked: Vec<bool> = (0..nv).map(|v| q.is_marked_vertex(v)).collect();

    // Connected pieces of the unmarked part, each with its marked neighbours.
    let mut piece_of = vec![usize::MAX; nv];
    let mut pieces = Vec::new();
    for start in 0..nv {
        if marked[start] || piece_of[start] != usize::MAX {
            continue;
        }
        let id = pieces.len();
        let mut vertices = vec![start];
        let mut boundary = BTreeSet::new();
        piece_of[start] = id;
        let mut k = 0;
        while k < vertices.len() {
            let x = vertices[k];
            k += 1;
            for &(w, _, _) in &adj[x] {
                if marked[w] {
                    boundary.insert(w);
                } else if piece_of[w] == usize::MAX {
                    piece_of[w] = id;
                    vertices.push(w);
                }
            }
        }
        pieces.push(Ambient { vertices, boundary: boundary.into_iter().collect() });
    }

    // Place constrained vertices first.
    let mut order: Vec<usize> = Vec::new();
    let mut in_order = vec![false; nv];
    let marked_ids: Vec<usize> = q.marked_vertices().collect();
    while order.len() < marked_ids.len() {
        let best = marked_ids
            .iter()
            .copied()
            .filter(|&v| !in_order[v])
            .max_by_key(|&v| {
                let links = adj[v].iter().filter(|&&(w, _, _)| in_order[w]).count();
                (links, std::cmp::Reverse(doms[v].len()), std::cmp::Reverse(v))
            })
            .unwrap();
        in_order[best] = true;
        order.push(best);
    }
    let mut step_of = vec![0usize; nv];
    for (k, &v) in order.iter().enumerate() {
        step_of[v] = k + 1;
    }
    // Pieces to check after placing order[k - 1]; slot 0 holds pieces with no marked neighbour.
    let mut due = vec![Vec::new(); order.len() + 1];
    for (p, piece) in pieces.iter().enumerate() {
        let at = piece.boundary.iter().map(|&v| step_of[v]).max().unwrap_or(0);
        due[at].push(p);
    }

    let mut search = Search { doms, adj, tables, marked: &marked, pieces, memo: HashMap::new() };
    let mut img = vec![usize::MAX; nv];
    for p in due[0].clone() {
        if !search.piece_feasible(p, &mut img) {
            return Ok(Vec::new());
        }
    }
    let mut out = Vec::new();
    place(&mut search, &order, &step_of, &due, 0, &mut img, &mut out, &marked_ids);
    let levels: Vec<&[usize]> = marked_ids.iter().map(|&v| b.level(grades[v])).collect();
    let mut homs: Vec<Vec<usize>> =
        out.into_iter().map(|h: Vec<usize>| h.iter().zip(&levels).map(|(&p, l)| l[p]).collect()).collect();
    homs.sort();
    Ok(homs)
}

#[allow(clippy::too_many_arguments)]
fn place(
    s: &mut Search<'_>,
    order: &[usize],
    step_of: &[usize],
    due: &[Vec<usize>],
    k: usize,
    img: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
    marked_ids: &[usize],
) {
    if k == order.len() {
        out.push(marked_ids.iter().map(|&v| img[v]).collect());
        return;
    }
    let v = order[k];
    for i in 0..s.doms[v].len() {
        let x = s.doms[v][i];
        let placed = |w: usize| s.marked[w] && step_of[w] != 0 && step_of[w] <= k;
        if !s.fits(v, x, img, &placed) {
            continue;
        }
        img[v] = x;
        let mut ok = true;
        for &p in &due[k + 1] {
            if !s.piece_feasible(p, img) {
                ok = false;
                break;
            }
        }
        if ok {
            place(s, order, step_of, due, k + 1, img, out, marked_ids);
        }
    }
    img[v] = usize::MAX;
}
