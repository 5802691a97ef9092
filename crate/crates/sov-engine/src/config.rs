//! Configuration spaces: functions on the morphisms of a marked shape into
//! the Bratteli diagram, and the restricted product between them.
//!
//! Diagrams handled here are multiplicity-free, so a morphism is fixed by
//! the images of its marked vertices. Keys are those images, listed in
//! ascending shape-vertex order.

use std::collections::{BTreeMap, HashMap};

use bratteli::BratteliDiagram;
use gt_rep::{element_to_path_coords, AdaptedRep, PathAlgebraElement, C64};
use algebra_core::GroupElement;
use quiver_count::{enumerate_homs, ShapeQuiver, StrandGlue};

use crate::counter::OpCounter;
use crate::error::{Result, SovError};

const CONSISTENCY_TOL: f64 = 1e-12;

pub(crate) fn is_unit(x: C64) -> bool {
    x.im == 0.0 && (x.re == 1.0 || x.re == -1.0)
}

/// The morphisms of a shape, listed once and indexed.
#[derive(Clone, Debug)]
pub struct ConfigSpace {
    shape: ShapeQuiver,
    marked: Vec<usize>,
    keys: Vec<Vec<usize>>,
    index: HashMap<Vec<usize>, usize>,
}

impl ConfigSpace {
    pub fn new(shape: ShapeQuiver, b: &BratteliDiagram) -> Result<ConfigSpace> {
        let keys = enumerate_homs(&shape, b)?;
        let index = keys.iter().enumerate().map(|(i, k)| (k.clone(), i)).collect();
        let marked = shape.marked_vertices().collect();
        Ok(ConfigSpace { shape, marked, keys, index })
    }

    pub fn shape(&self) -> &ShapeQuiver {
        &self.shape
    }

    /// Marked shape vertices, ascending; key entry k is the image of marked[k].
    pub fn marked(&self) -> &[usize] {
        &self.marked
    }

    pub fn keys(&self) -> &[Vec<usize>] {
        &self.keys
    }

    pub fn len(&self) -> usize {
        self.keys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.keys.is_empty()
    }

    pub fn index_of(&self, key: &[usize]) -> Option<usize> {
        self.index.get(key).copied()
    }

    /// For each marked vertex of `self`, its position in `sup`, which must
    /// mark a superset.
    pub(crate) fn positions_in(&self, sup: &[usize]) -> Result<Vec<usize>> {
        self.marked
            .iter()
            .map(|v| {
                sup.binary_search(v)
                    .map_err(|_| SovError::Structure(format!("shape vertex {v} is not marked in the larger shape")))
            })
            .collect()
    }
}

/// A finitely supported function on the morphisms of `shape`. Absent keys
/// are zero. `structural` marks data-independent elements, such as the
/// coordinates of a group element, whose literal ±1 entries are free.
#[derive(Clone, Debug, PartialEq)]
pub struct ConfigElement {
    pub shape: ShapeQuiver,
    pub values: BTreeMap<Vec<usize>, C64>,
    pub structural: bool,
}

impl ConfigElement {
    pub fn get(&self, key: &[usize]) -> C64 {
        self.values.get(key).copied().unwrap_or_default()
    }

    pub fn max_abs_diff(&self, other: &ConfigElement) -> f64 {
        self.values
            .keys()
            .chain(other.values.keys())
            .map(|k| (self.get(k) - other.get(k)).norm())
            .fold(0.0, f64::max)
    }

    /// Drop exact zeros.
    pub fn prune_zeros(mut self) -> ConfigElement {
        self.values.retain(|_, x| *x != C64::new(0.0, 0.0));
        self
    }

    /// Mark as data-independent, dropping its zeros.
    pub fn into_structural(self) -> ConfigElement {
        let mut c = self.prune_zeros();
        c.structural = true;
        c
    }
}

/// Images of two strands as a key over `marked`, or None when the paths
/// disagree on a class the strands share. Marked classes off both strands
/// come out as usize::MAX.
fn strand_key(glue: &StrandGlue, marked: &[usize], strands: (usize, usize), p: &[usize], q: &[usize]) -> Option<Vec<usize>> {
    let mut img = vec![usize::MAX; glue.ambient().num_vertices()];
    for (strand, path) in [(strands.0, p), (strands.1, q)] {
        for (l, &x) in path.iter().enumerate() {
            let c = glue.vertex_class(strand, l);
            if img[c] != usize::MAX && img[c] != x {
                return None;
            }
            img[c] = x;
        }
    }
    Some(marked.iter().map(|&c| img[c]).collect())
}

/// Re-index an element of C[B_level] that lies in the interval algebra of
/// `spec` as a function on the morphisms of the factor shape. Every key is
/// present, zeros included.
pub fn lift_to_config(rep: &AdaptedRep, a: &PathAlgebraElement, spec: (usize, usize)) -> Result<ConfigElement> {
    if spec.0 > spec.1 || spec.1 > a.level {
        return Err(SovError::Structure(format!("interval {spec:?} outside 0..={}", a.level)));
    }
    lift_into(rep, a, &StrandGlue::new(a.level, &[spec])?, 0)
}

/// Lift `a` onto factor k of a larger glue, so that it can be multiplied
/// with the other factors there.
pub fn lift_into(rep: &AdaptedRep, a: &PathAlgebraElement, glue: &StrandGlue, k: usize) -> Result<ConfigElement> {
    let Some(&spec) = glue.intervals().get(k) else {
        return Err(SovError::Structure(format!("glue has no factor {k}")));
    };
    if glue.n() != a.level {
        return Err(SovError::Structure(format!("element has level {}, glue has {}", a.level, glue.n())));
    }
    let space = ConfigSpace::new(glue.factor_shape(k)?, rep.diagram())?;
    let mut seen: Vec<Option<C64>> = vec![None; space.len()];
    for &v in rep.diagram().level(a.level) {
        let ps = rep.paths(v);
        let block = a.blocks.get(&v);
        for (r, p) in ps.iter().enumerate() {
            for (c, q) in ps.iter().enumerate() {
                let x = block.map_or(C64::new(0.0, 0.0), |b| b[(r, c)]);
                let key = strand_key(glue, space.marked(), (k, k + 1), &p.vertices, &q.vertices);
                match key.and_then(|key| space.index_of(&key)) {
                    None if x != C64::new(0.0, 0.0) => {
                        return Err(SovError::Structure(format!(
                            "entry at {:?}, {:?} lies outside the interval {spec:?}",
                            p.vertices, q.vertices
                        )))
                    }
                    None => {}
                    Some(i) => match seen[i] {
                        Some(y) if (y - x).norm() > CONSISTENCY_TOL * (1.0 + y.norm()) => {
                            return Err(SovError::Structure(format!(
                                "entries for segment {:?} differ between path extensions",
                                space.keys()[i]
                            )))
                        }
                        Some(_) => {}
                        None => seen[i] = Some(x),
                    },
                }
            }
        }
    }
    let values = space.keys().iter().zip(seen).map(|(k, x)| (k.clone(), x.unwrap_or_default())).collect();
    Ok(ConfigElement { shape: space.shape().clone(), values, structural: false })
}

/// The coordinates of g ∈ G_level on the factor shape of `spec`, without
/// zeros and marked structural.
pub fn element_config(rep: &AdaptedRep, g: &GroupElement, level: usize, spec: (usize, usize)) -> Result<ConfigElement> {
    let a = element_to_path_coords(rep, g, level)?;
    Ok(lift_to_config(rep, &a, spec)?.into_structural())
}

/// Inverse of [`lift_to_config`].
pub fn unlift_config(rep: &AdaptedRep, c: &ConfigElement, spec: (usize, usize), level: usize) -> Result<PathAlgebraElement> {
    unlift_strands(rep, c, &StrandGlue::new(level, &[spec])?, (0, 1))
}

/// Read an element whose marked classes all lie on two strands of `glue`
/// back as an element of C[B_n], rows along the first strand.
pub fn unlift_strands(rep: &AdaptedRep, c: &ConfigElement, glue: &StrandGlue, strands: (usize, usize)) -> Result<PathAlgebraElement> {
    if !same_ambient(glue.ambient(), &c.shape) {
        return Err(SovError::Gluing("element does not live on this glue".into()));
    }
    let marked: Vec<usize> = c.shape.marked_vertices().collect();
    let level = glue.n();
    let mut out = PathAlgebraElement::zero(level);
    for &v in rep.diagram().level(level) {
        let ps = rep.paths(v);
        let mut block = gt_rep::CMatrix::zeros(ps.len(), ps.len());
        for (r, p) in ps.iter().enumerate() {
            for (col, q) in ps.iter().enumerate() {
                if let Some(key) = strand_key(glue, &marked, strands, &p.vertices, &q.vertices) {
                    if key.contains(&usize::MAX) {
                        return Err(SovError::Structure(format!("marked classes off strands {strands:?}")));
                    }
                    block[(r, col)] = c.get(&key);
                }
            }
        }
        out.blocks.insert(v, block);
    }
    Ok(out)
}

fn same_ambient(a: &ShapeQuiver, b: &ShapeQuiver) -> bool {
    a.grades() == b.grades() && a.edges() == b.edges()
}

/// f * g relative to their common ambient. The result lives on the
/// symmetric difference: arrows marked in exactly one factor, their
/// endpoints, and vertices marked in exactly one factor. Each extension to
/// the union costs one multiplication unless a structural operand is ±1;
/// each collision in the target costs one addition.
pub fn restricted_product(
    f: &ConfigElement,
    g: &ConfigElement,
    b: &BratteliDiagram,
    counter: &mut OpCounter,
) -> Result<ConfigElement> {
    if !same_ambient(&f.shape, &g.shape) {
        return Err(SovError::Gluing("factors do not share an ambient quiver".into()));
    }
    for (&v, &t) in g.shape.pins() {
        if f.shape.pins().get(&v).is_some_and(|&s| s != t) {
            return Err(SovError::Gluing(format!("vertex {v} is pinned to different images")));
        }
    }
    let nv = f.shape.num_vertices();
    let ne = f.shape.edges().len();
    let (fv, gv): (Vec<bool>, Vec<bool>) = (0..nv).map(|v| (f.shape.is_marked_vertex(v), g.shape.is_marked_vertex(v))).unzip();
    let (fe, ge): (Vec<bool>, Vec<bool>) = (0..ne).map(|e| (f.shape.is_marked_edge(e), g.shape.is_marked_edge(e))).unzip();
    let mut union = f.shape.remark((0..nv).map(|v| fv[v] || gv[v]).collect(), (0..ne).map(|e| fe[e] || ge[e]).collect())?;
    for (&v, &t) in g.shape.pins() {
        union = union.pin(v, t)?;
    }
    let kept: Vec<bool> = (0..ne).map(|e| fe[e] != ge[e]).collect();
    let mut tv: Vec<bool> = (0..nv).map(|v| fv[v] != gv[v]).collect();
    for (e, &(s, t)) in f.shape.edges().iter().enumerate() {
        if kept[e] {
            tv[s] = true;
            tv[t] = true;
        }
    }
    let target = union.remark(tv, kept)?;

    let um: Vec<usize> = union.marked_vertices().collect();
    let pos = |shape: &ShapeQuiver| -> Vec<usize> {
        shape.marked_vertices().map(|v| um.binary_search(&v).expect("subset of the union")).collect()
    };
    let (pf, pg, pt) = (pos(&f.shape), pos(&g.shape), pos(&target));
    let mut values: BTreeMap<Vec<usize>, C64> = BTreeMap::new();
    let (mut mults, mut adds) = (0u64, 0u64);
    for eta in enumerate_homs(&union, b)? {
        let kf: Vec<usize> = pf.iter().map(|&i| eta[i]).collect();
        let kg: Vec<usize> = pg.iter().map(|&i| eta[i]).collect();
        let (Some(&x), Some(&y)) = (f.values.get(&kf), g.values.get(&kg)) else {
            continue;
        };
        if !((f.structural && is_unit(x)) || (g.structural && is_unit(y))) {
            mults += 1;
        }
        let kt: Vec<usize> = pt.iter().map(|&i| eta[i]).collect();
        match values.get_mut(&kt) {
            Some(z) => {
                *z += x * y;
                adds += 1;
            }
            None => {
                values.insert(kt, x * y);
            }
        }
    }
    counter.add_mults(mults);
    counter.add_adds(adds);
    Ok(ConfigElement { shape: target, values, structural: f.structural && g.structural })
}
