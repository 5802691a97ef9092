//! Reference transforms: the matrix sum f̂(ρ) = Σ_s f(s)ρ(s) and Fourier
//! inversion, computed element by element.

use std::collections::HashMap;

use algebra_core::{enumerate_group, inverse, GroupElement, DEFAULT_SIZE_CAP};

use crate::error::Result;
use crate::path_algebra::PathAlgebraElement;
use crate::rep::{AdaptedRep, CMatrix, C64};

/// f̂ at every top-level vertex. Elements missing from `f` are zero.
pub fn naive_fourier(rep: &AdaptedRep, f: &HashMap<GroupElement, C64>) -> Result<PathAlgebraElement> {
    let n = rep.n();
    let mut support: Vec<(&GroupElement, &C64)> = f.iter().collect();
    support.sort_by(|a, b| a.0.cmp(b.0));
    let mut out = PathAlgebraElement::zero(n);
    for &v in rep.diagram().level(n) {
        let d = rep.dim(v);
        let mut acc = CMatrix::zeros(d, d);
        for &(g, &x) in &support {
            acc += rep.matrix(g, v)? * x;
        }
        out.blocks.insert(v, acc);
    }
    Ok(out)
}

/// f(g) = (1/|G|) Σ_α d_α tr(ρ_α(g⁻¹) f̂_α) on every element of G_n.
pub fn inverse_fourier(rep: &AdaptedRep, fhat: &PathAlgebraElement) -> Result<HashMap<GroupElement, C64>> {
    let n = rep.n();
    let elements = enumerate_group(&rep.chain().group(n), DEFAULT_SIZE_CAP)?;
    let order = elements.len() as f64;
    let mut out = HashMap::with_capacity(elements.len());
    for g in elements {
        let ginv = inverse(&g);
        let mut total = C64::new(0.0, 0.0);
        for (&v, block) in &fhat.blocks {
            let m = rep.matrix(&ginv, v)?;
            total += (m * block).trace() * rep.dim(v) as f64;
        }
        out.insert(g, total / order);
    }
    Ok(out)
}

/// max |a − b| divided by max(1, max |b|), over the union of supports.
pub fn max_rel_error(a: &HashMap<GroupElement, C64>, b: &HashMap<GroupElement, C64>) -> f64 {
    let zero = C64::new(0.0, 0.0);
    let scale = b.values().map(|x| x.norm()).fold(1.0f64, f64::max);
    let diff = a
        .keys()
        .chain(b.keys())
        .map(|g| (a.get(g).unwrap_or(&zero) - b.get(g).unwrap_or(&zero)).norm())
        .fold(0.0f64, f64::max);
    diff / scale
}

/// The same relative error for block elements.
pub fn block_rel_error(a: &PathAlgebraElement, b: &PathAlgebraElement) -> f64 {
    let scale = b.blocks.values().map(|m| m.camax()).fold(1.0f64, f64::max);
    a.max_abs_diff(b) / scale
}
