//! Quantities on the hyperoctahedral and type D diagrams that enter the
//! cost bounds: span multiplicities, partition jumps, and the H and K
//! shapes.

use bratteli::{BratteliDiagram, DiagramFamily, Label};
use num_bigint::BigUint;
use num_traits::Zero;

use crate::error::{QuiverError, Result};
use crate::shape::ShapeQuiver;

pub use bratteli::partition::jump;

/// max over α at level i and β at level i − span of M_B(α, β).
pub fn multiplicity_bound(b: &BratteliDiagram, i: usize, span: usize) -> Result<BigUint> {
    if span > i {
        return Err(QuiverError::InvalidShape(format!("span {span} exceeds level {i}")));
    }
    if i > b.n() {
        return Err(QuiverError::Range { grade: i, max: b.n() });
    }
    let table = b.span_counts(i - span, i);
    Ok(table.iter().flatten().max().cloned().unwrap_or_else(BigUint::zero))
}

/// Two parallel arrows from the root to level n.
pub fn k_shape(n: usize) -> Result<ShapeQuiver> {
    ShapeQuiver::new(vec![0, n], vec![(0, 1), (0, 1)])
}

/// The H_i^n shape. Vertices in order: root, β_{i−2}, β_{i−1}, α_{i−1},
/// α_i and, when n > i, β_{n−1}.
pub fn h_shape(i: usize, n: usize) -> Result<ShapeQuiver> {
    if i < 2 || n < i {
        return Err(QuiverError::InvalidShape(format!("H shape needs 2 <= i <= n, got i = {i}, n = {n}")));
    }
    let mut grades = vec![0, i - 2, i - 1, i - 1, i];
    let (root, b2, b1, a1, a0) = (0, 1, 2, 3, 4);
    let mut edges = vec![(b2, b1), (a1, a0), (b1, a0), (b2, a1), (root, a1)];
    if n > i {
        grades.push(n - 1);
        edges.push((b1, 5));
        edges.push((root, 5));
    } else {
        edges.push((root, b1));
    }
    ShapeQuiver::new(grades, edges)
}

fn pair_jump(label: &Label) -> Result<usize> {
    match label {
        Label::Pair(l, m) => Ok(jump(l) + jump(m)),
        other => Err(QuiverError::InvalidShape(format!("expected a bipartition, got {other}"))),
    }
}

/// 2(i−1)|B_{i−1}| + Σ_β J(J+1) d_β² over β at level i − 1, where J is the
/// total jump of the two partitions of β. Equals #Hom(H_i^i; B).
pub fn hform_closed_count(b: &BratteliDiagram, i: usize) -> Result<BigUint> {
    if !matches!(b.family(), DiagramFamily::Hyperoctahedral) {
        return Err(QuiverError::InvalidShape("hform_closed_count needs the hyperoctahedral diagram".into()));
    }
    if i < 2 || i > b.n() {
        return Err(QuiverError::Range { grade: i, max: b.n() });
    }
    let order = b.group_order(i - 1).expect("level exists");
    let mut total = BigUint::from(2 * (i - 1) as u64) * order;
    for &v in b.level(i - 1) {
        let j = pair_jump(b.label(v))? as u64;
        let d = b.dim(v);
        total += BigUint::from(j * (j + 1)) * d * d;
    }
    Ok(total)
}

/// The H_i^n count from the H_i^i count by the index ratio
/// |B_{n−1}| / |B_{i−1}|.
pub fn hform_scaled_count(b: &BratteliDiagram, i: usize, n: usize) -> Result<BigUint> {
    if n > b.n() || n < i {
        return Err(QuiverError::Range { grade: n, max: b.n() });
    }
    let base = hform_closed_count(b, i)?;
    let num = b.group_order(n - 1).expect("level exists");
    let den = b.group_order(i - 1).expect("level exists");
    Ok(base * num / den)
}
