//! Morphism counting by variable elimination.
//!
//! Each shape vertex is a variable ranging over its diagram level. Marked
//! arrows contribute the path-count table between their two levels, and
//! arrows of the ambient contribute a 0/1 "some path exists" table. Ambient
//! vertices are eliminated first with ∃, then marked vertices with Σ.

use std::collections::{BTreeMap, HashMap};

use bratteli::BratteliDiagram;
use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{QuiverError, Result};
use crate::shape::ShapeQuiver;

trait Semiring: Clone {
    fn sr_zero() -> Self;
    fn sr_one() -> Self;
    fn add_assign(&mut self, other: &Self);
    fn mul(&self, other: &Self) -> Self;
    fn sr_is_zero(&self) -> bool;
}

impl Semiring for bool {
    fn sr_zero() -> bool {
        false
    }
    fn sr_one() -> bool {
        true
    }
    fn add_assign(&mut self, other: &bool) {
        *self |= *other;
    }
    fn mul(&self, other: &bool) -> bool {
        *self && *other
    }
    fn sr_is_zero(&self) -> bool {
        !*self
    }
}

impl Semiring for BigUint {
    fn sr_zero() -> BigUint {
        Zero::zero()
    }
    fn sr_one() -> BigUint {
        One::one()
    }
    fn add_assign(&mut self, other: &BigUint) {
        *self += other;
    }
    fn mul(&self, other: &BigUint) -> BigUint {
        self * other
    }
    fn sr_is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
}

#[derive(Clone, Debug)]
struct Factor<T> {
    scope: Vec<usize>,
    data: Vec<T>,
}

impl<T: Semiring> Factor<T> {
    fn index(&self, assignment: &[usize], dims: &[usize]) -> usize {
        let mut idx = 0;
        for &v in &self.scope {
            idx = idx * dims[v] + assignment[v];
        }
        idx
    }
}

/// Sum-product elimination of `vars` (in greedy order) from `factors`.
/// Returns the product of the remaining scalar factors together with the
/// factors that still mention variables outside `vars`.
fn eliminate<T: Semiring>(mut factors: Vec<Factor<T>>, vars: &[usize], dims: &[usize]) -> Vec<Factor<T>> {
    let mut pending: Vec<usize> = vars.to_vec();
    let mut assignment = vec![0usize; dims.len()];
    while !pending.is_empty() {
        // Pick the variable whose combined scope has the fewest cells.
        let (slot, _) = pending
            .iter()
            .enumerate()
            .map(|(k, &v)| {
                let mut scope: Vec<usize> = factors
                    .iter()
                    .filter(|f| f.scope.contains(&v))
                    .flat_map(|f| f.scope.iter().copied())
                    .collect();
                scope.sort();
                scope.dedup();
                let cells = scope.iter().fold(1u128, |acc, &u| acc.saturating_mul(dims[u] as u128));
                (k, cells)
            })
            .min_by_key(|&(k, cells)| (cells, k))
            .unwrap();
        let v = pending.remove(slot);
        let (touching, rest): (Vec<_>, Vec<_>) = factors.into_iter().partition(|f| f.scope.contains(&v));
        factors = rest;
        let mut scope: Vec<usize> = touching.iter().flat_map(|f| f.scope.iter().copied()).filter(|&u| u != v).collect();
        scope.sort();
        scope.dedup();
        let size: usize = scope.iter().map(|&u| dims[u]).product();
        let mut out = Factor { scope: scope.clone(), data: vec![T::sr_zero(); size] };
        if size > 0 && dims[v] > 0 {
            for u in &scope {
                assignment[*u] = 0;
            }
            'outer: loop {
                let oi = out.index(&assignment, dims);
                for x in 0..dims[v] {
                    assignment[v] = x;
                    let mut p = T::sr_one();
                    for f in &touching {
                        p = p.mul(&f.data[f.index(&assignment, dims)]);
                        if p.sr_is_zero() {
                            break;
                        }
                    }
                    if !p.sr_is_zero() {
                        out.data[oi].add_assign(&p);
                    }
                }
                // Odometer over the output scope, last variable fastest.
                let mut k = scope.len();
                loop {
                    if k == 0 {
                        break 'outer;
                    }
                    k -= 1;
                    let u = scope[k];
                    assignment[u] += 1;
                    if assignment[u] < dims[u] {
                        break;
                    }
                    assignment[u] = 0;
                }
            }
        }
        factors.push(out);
    }
    factors
}

fn to_count(f: Factor<bool>) -> Factor<BigUint> {
    Factor { scope: f.scope, data: f.data.into_iter().map(|b| if b { BigUint::one() } else { BigUint::zero() }).collect() }
}

/// Path-count tables between level pairs, cached.
pub struct SpanTable<'a> {
    diagram: &'a BratteliDiagram,
    cache: HashMap<(usize, usize), Vec<Vec<BigUint>>>,
}

impl<'a> SpanTable<'a> {
    pub fn new(diagram: &'a BratteliDiagram) -> SpanTable<'a> {
        SpanTable { diagram, cache: HashMap::new() }
    }

    pub fn diagram(&self) -> &'a BratteliDiagram {
        self.diagram
    }

    /// Table indexed `[pos_hi][pos_lo]`.
    pub fn get(&mut self, lo: usize, hi: usize) -> &Vec<Vec<BigUint>> {
        let d = self.diagram;
        self.cache.entry((lo, hi)).or_insert_with(|| d.span_counts(lo, hi))
    }

    /// M_B(hi, lo) for two vertex ids.
    pub fn between(&mut self, lo_id: usize, hi_id: usize) -> BigUint {
        let d = self.diagram;
        let (gl, gh) = (d.grade(lo_id), d.grade(hi_id));
        if gh < gl {
            return BigUint::zero();
        }
        let (pl, ph) = (d.position(lo_id), d.position(hi_id));
        self.get(gl, gh)[ph][pl].clone()
    }
}

pub(crate) fn domains(q: &ShapeQuiver, b: &BratteliDiagram) -> Result<Vec<Vec<usize>>> {
    let n = b.n();
    let mut out = Vec::with_capacity(q.num_vertices());
    for (v, &g) in q.grades().iter().enumerate() {
        if g > n {
            return Err(QuiverError::Range { grade: g, max: n });
        }
        match q.pins().get(&v) {
            Some(&t) => {
                b.vertex(t)?;
                if b.grade(t) != g {
                    return Err(QuiverError::InvalidShape(format!(
                        "vertex {v} at grade {g} pinned to diagram vertex {t} at grade {}",
                        b.grade(t)
                    )));
                }
                out.push(vec![b.position(t)]);
            }
            None => out.push((0..b.level(g).len()).collect()),
        }
    }
    Ok(out)
}

fn edge_table<T: Semiring>(
    spans: &mut SpanTable<'_>,
    grades: &[usize],
    doms: &[Vec<usize>],
    (s, t): (usize, usize),
    f: impl Fn(&BigUint) -> T,
) -> Factor<T> {
    let table = spans.get(grades[s], grades[t]);
    let mut data = Vec::with_capacity(doms[s].len() * doms[t].len());
    // Scope is sorted so the first variable is the slower index.
    let (a, b) = if s < t { (s, t) } else { (t, s) };
    for &xa in &doms[a] {
        for &xb in &doms[b] {
            let (ps, pt) = if a == s { (xa, xb) } else { (xb, xa) };
            data.push(f(&table[pt][ps]));
        }
    }
    Factor { scope: vec![a, b], data }
}

/// #Hom(Q↑R; B): the number of morphisms of the marked subquiver that
/// extend to the ambient and respect the pins.
pub fn count_hom_bruteforce(q: &ShapeQuiver, b: &BratteliDiagram) -> Result<BigUint> {
    let mut spans = SpanTable::new(b);
    count_hom_with(q, &mut spans)
}

/// Same as [`count_hom_bruteforce`] with a shared span table.
pub fn count_hom_with(q: &ShapeQuiver, spans: &mut SpanTable<'_>) -> Result<BigUint> {
    let b = spans.diagram();
    let doms = domains(q, b)?;
    let dims: Vec<usize> = doms.iter().map(|d| d.len()).collect();
    let grades = q.grades();

    let mut bool_factors = Vec::new();
    let mut count_factors = Vec::new();
    for (e, &(s, t)) in q.edges().iter().enumerate() {
        if q.is_marked_edge(e) {
            count_factors.push(edge_table(spans, grades, &doms, (s, t), |m| m.clone()));
        } else {
            bool_factors.push(edge_table(spans, grades, &doms, (s, t), |m| !m.is_zero()));
        }
    }
    let ambient: Vec<usize> = (0..q.num_vertices()).filter(|&v| !q.is_marked_vertex(v)).collect();
    let marked: Vec<usize> = q.marked_vertices().collect();

    count_factors.extend(eliminate(bool_factors, &ambient, &dims).into_iter().map(to_count));
    let rest = eliminate(count_factors, &marked, &dims);
    let mut total = BigUint::one();
    for f in rest {
        debug_assert!(f.scope.is_empty());
        total *= &f.data[0];
    }
    Ok(total)
}

/// Direct enumeration of every vertex assignment of R. Exponential; used
/// to validate the eliminator on small shapes.
pub fn count_hom_naive(q: &ShapeQuiver, b: &BratteliDiagram) -> Result<BigUint> {
    let doms = domains(q, b)?;
    let nv = q.num_vertices();
    let mut spans = SpanTable::new(b);
    let grades = q.grades().to_vec();
    let tables: Vec<Vec<Vec<BigUint>>> =
        q.edges().iter().map(|&(s, t)| spans.get(grades[s], grades[t]).clone()).collect();
    let marked: Vec<usize> = q.marked_vertices().collect();
    // Group full assignments by their marked part; a marked assignment
    // counts once if any extension is valid.
    let mut seen: BTreeMap<Vec<usize>, BigUint> = BTreeMap::new();
    if doms.iter().any(|d| d.is_empty()) {
        return Ok(BigUint::zero());
    }
    let mut idx = vec![0usize; nv];
    loop {
        let phi: Vec<usize> = (0..nv).map(|v| doms[v][idx[v]]).collect();
        let mut ok = true;
        let mut weight = BigUint::one();
        for (e, &(s, t)) in q.edges().iter().enumerate() {
            let m = &tables[e][phi[t]][phi[s]];
            if m.is_zero() {
                ok = false;
                break;
            }
            if q.is_marked_edge(e) {
                weight *= m;
            }
        }
        if ok {
            let key: Vec<usize> = marked.iter().map(|&v| phi[v]).collect();
            seen.entry(key).or_insert(weight);
        }
        let mut k = nv;
        loop {
            if k == 0 {
                return Ok(seen.into_values().sum());
            }
            k -= 1;
            idx[k] += 1;
            if idx[k] < doms[k].len() {
                break;
            }
            idx[k] = 0;
        }
    }
}
