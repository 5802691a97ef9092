//! Coset representatives of GL_n(q) / GL_{n-1}(q) via the action on pairs
//! (x, y) with y·x = 1.
//!
//! GL_{n-1}(q) sits in the top-left corner, so it is exactly the stabilizer
//! of the base pair (e_n, e_n). A coset gGL_{n-1} is identified with g.(e_n, e_n),
//! and a factored representative comes from reducing a pair back to the base
//! with 2×2 blocks acting on adjacent coordinates.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::chain::{Factor, FactorKind, FactorWord};
use crate::error::{AlgebraError, Result};
use crate::field::{Field, FieldElement};
use crate::group::{enumerate_group, GroupDesc, GroupElement};
use crate::matrix::Matrix;

/// A point of the orbit: column vector x and row vector y with y·x = 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ZVector {
    pub x: Vec<FieldElement>,
    pub y: Vec<FieldElement>,
}

fn dot(field: Field, a: &[FieldElement], b: &[FieldElement]) -> FieldElement {
    a.iter().zip(b).fold(field.zero(), |acc, (&u, &v)| field.add(acc, field.mul(u, v)))
}

impl ZVector {
    pub fn new(field: Field, x: Vec<FieldElement>, y: Vec<FieldElement>) -> Result<ZVector> {
        if x.len() != y.len() {
            return Err(AlgebraError::Precondition("x and y differ in length".into()));
        }
        if dot(field, &y, &x) != field.one() {
            return Err(AlgebraError::Precondition("y·x must equal 1".into()));
        }
        Ok(ZVector { x, y })
    }

    /// The base point (e_n, e_n), whose products are (0, ..., 0, 1).
    pub fn base(field: Field, n: usize) -> ZVector {
        let mut x = vec![field.zero(); n];
        x[n - 1] = field.one();
        ZVector { y: x.clone(), x }
    }

    pub fn dim(&self) -> usize {
        self.x.len()
    }

    /// The products z_j = x_j y_j.
    pub fn products(&self, field: Field) -> Vec<FieldElement> {
        self.x.iter().zip(&self.y).map(|(&a, &b)| field.mul(a, b)).collect()
    }

    fn permuted(&self, perm: &[usize]) -> ZVector {
        ZVector { x: perm.iter().map(|&k| self.x[k]).collect(), y: perm.iter().map(|&k| self.y[k]).collect() }
    }
}

/// Every pair (x, y) over F_q^n with y·x = 1, in lexicographic order.
pub fn all_zvectors(field: Field, n: usize) -> Vec<ZVector> {
    let q = field.order() as u64;
    let total = q.pow(n as u32);
    let vec_of = |mut code: u64| {
        let mut v = vec![FieldElement(0); n];
        for slot in v.iter_mut().rev() {
            *slot = FieldElement((code % q) as u32);
            code /= q;
        }
        v
    };
    let mut out = Vec::new();
    for cx in 0..total {
        let x = vec_of(cx);
        for cy in 0..total {
            let y = vec_of(cy);
            if dot(field, &y, &x) == field.one() {
                out.push(ZVector { x: x.clone(), y });
            }
        }
    }
    out
}

/// A.(x, y) = (Ax, yA⁻¹).
pub fn gl_act(a: &Matrix, z: &ZVector) -> Result<ZVector> {
    if a.dim() != z.dim() {
        return Err(AlgebraError::DescriptorMismatch(format!("{}×{} matrix on length {}", a.dim(), a.dim(), z.dim())));
    }
    let inv = a.inverse().ok_or_else(|| AlgebraError::Precondition("singular matrix".into()))?;
    let field = a.field();
    if dot(field, &z.y, &z.x) != field.one() {
        return Err(AlgebraError::Precondition("y·x must equal 1".into()));
    }
    Ok(ZVector { x: a.apply(&z.x), y: inv.apply_row(&z.y) })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Normalized {
    /// Permutation matrix with π.z = z′; row k has its 1 in column `perm[k]`.
    pub pi: Matrix,
    pub perm: Vec<usize>,
    pub z: ZVector,
    /// Number of leading equal products (1-based length of the b-block).
    pub i: usize,
    pub b: FieldElement,
}

/// Permute so that partial product sums from position i onward are nonzero,
/// the first i products equal b, and p divides i − 1. Among admissible
/// entries the rightmost one is moved to the back, which leaves already
/// well-placed suffixes untouched.
pub fn gl_normalize(field: Field, z: &ZVector) -> Result<Normalized> {
    let n = z.dim();
    if n == 0 {
        return Err(AlgebraError::Precondition("empty vector".into()));
    }
    let prods = z.products(field);
    let total = prods.iter().fold(field.zero(), |a, &v| field.add(a, v));
    if total != field.one() {
        return Err(AlgebraError::Precondition("products must sum to 1".into()));
    }
    let mut remaining: Vec<usize> = (0..n).collect();
    let mut tail: Vec<usize> = Vec::new();
    let mut sum = total;
    while remaining.len() > 1 {
        let pick = remaining.iter().rposition(|&k| field.sub(sum, prods[k]) != field.zero());
        let Some(pos) = pick else { break };
        let k = remaining.remove(pos);
        sum = field.sub(sum, prods[k]);
        tail.push(k);
    }
    let i = remaining.len();
    let b = prods[remaining[0]];
    let mut perm = remaining;
    perm.extend(tail.into_iter().rev());
    let pi = Matrix::permutation(field, &perm);
    Ok(Normalized { z: z.permuted(&perm), pi, perm, i, b })
}

/// Checks conditions (i)–(iii) on a permuted vector; returns (i, b).
pub fn check_normalized(field: Field, z: &ZVector) -> Option<(usize, FieldElement)> {
    let prods = z.products(field);
    let b = prods[0];
    if b.is_zero() {
        return None;
    }
    let i = prods.iter().take_while(|&&v| v == b).count();
    // the block may be chosen shorter than the run of equal entries
    (1..=i).rev().find_map(|len| {
        let p = field.characteristic() as usize;
        if (len - 1) % p != 0 {
            return None;
        }
        let mut s = field.zero();
        for (j, &v) in prods.iter().enumerate() {
            s = field.add(s, v);
            if j + 1 >= len && s.is_zero() {
                return None;
            }
        }
        Some((len, b))
    })
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum GlStepKind {
    /// Two-by-two block combining the running sum with a b-entry.
    U,
    /// Two-by-two block on two untouched b-entries before a swap.
    UPrime,
    /// Transposition of adjacent coordinates.
    T,
    /// Two-by-two block absorbing a tail entry.
    V,
    /// Characteristic-two blocks.
    A,
    B,
    C,
    /// Final diagonal scaling of the last coordinate.
    Scale,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GlStep {
    pub kind: GlStepKind,
    /// 1-based index j; the block acts on coordinates (j−1, j) and lies in
    /// GL_j ∩ Centralizer(GL_{j−2}).
    pub j: usize,
    pub matrix: Matrix,
    pub levels: (usize, usize),
}

impl GlStep {
    pub fn label(&self) -> String {
        let base = match self.kind {
            GlStepKind::U => "u",
            GlStepKind::UPrime => "u'",
            GlStepKind::T => "t",
            GlStepKind::V => "v",
            GlStepKind::A => "a",
            GlStepKind::B => "b",
            GlStepKind::C => "c",
            GlStepKind::Scale => "d",
        };
        format!("{base}{}", self.j)
    }
}

#[derive(Clone, Debug)]
pub struct GlFactorization {
    /// Reduction steps in application order; their product maps z′ to the base.
    pub steps: Vec<GlStep>,
    /// The coset word s = step_1⁻¹ ⋯ step_k⁻¹ with s.(e_n, e_n) = z′.
    pub word: FactorWord,
}

impl GlFactorization {
    pub fn labels(&self) -> Vec<String> {
        self.steps.iter().map(GlStep::label).collect()
    }
}

struct Reducer {
    field: Field,
    n: usize,
    z: ZVector,
    steps: Vec<GlStep>,
}

impl Reducer {
    fn push(&mut self, kind: GlStepKind, j: usize, block: [[FieldElement; 2]; 2]) {
        let m = Matrix::two_by_two_at(self.field, self.n, j - 2, block);
        self.apply(kind, j, m);
    }

    fn apply(&mut self, kind: GlStepKind, j: usize, m: Matrix) {
        self.z = gl_act(&m, &self.z).expect("invertible step");
        let levels = if kind == GlStepKind::Scale { (self.n - 1, self.n) } else { (j - 2, j) };
        self.steps.push(GlStep { kind, j, matrix: m, levels });
    }

    /// Two-by-two block zeroing coordinate j−1 into coordinate j. Needs
    /// z_{j−1} + z_j ≠ 0.
    fn pair_block(&mut self, kind: GlStepKind, j: usize) {
        let f = self.field;
        let (x1, x2) = (self.z.x[j - 2], self.z.x[j - 1]);
        let (y1, y2) = (self.z.y[j - 2], self.z.y[j - 1]);
        let block = if x1.is_zero() {
            [[f.one(), f.zero()], [f.div(y1, y2).unwrap(), f.one()]]
        } else if y1.is_zero() {
            [[f.one(), f.neg(f.div(x1, x2).unwrap())], [f.zero(), f.one()]]
        } else {
            [[f.neg(f.div(x2, x1).unwrap()), f.one()], [f.one(), f.div(y2, y1).unwrap()]]
        };
        self.push(kind, j, block);
    }
}

/// Factor a normalized pair. For p ≠ 2 the steps are
/// u_2 ⋯ (u′_{j+1} t_j u_{j+1} whenever p | j) ⋯ u_i v_{i+1} ⋯ v_n;
/// for p = 2 they are a_3 b_2 c_3 ⋯ a_i b_{i−1} c_i v_{i+1} ⋯ v_n. A final
/// diagonal step d_n fixes the scale of the last coordinate, because the
/// products alone do not pin down the pair.
pub fn gl_factor(field: Field, z: &ZVector) -> Result<GlFactorization> {
    let n = z.dim();
    let (i, _b) = check_normalized(field, z)
        .ok_or_else(|| AlgebraError::NormalizationRequired(format!("{:?}", z.products(field))))?;
    let p = field.characteristic() as usize;
    let mut r = Reducer { field, n, z: z.clone(), steps: Vec::new() };
    if p != 2 {
        let mut j = 2;
        while j <= i {
            if j % p == 0 {
                r.pair_block(GlStepKind::UPrime, j + 1);
                let mut perm: Vec<usize> = (0..n).collect();
                perm.swap(j - 2, j - 1);
                r.apply(GlStepKind::T, j, Matrix::permutation(field, &perm));
                r.pair_block(GlStepKind::U, j + 1);
                j += 2;
            } else {
                r.pair_block(GlStepKind::U, j);
                j += 1;
            }
        }
    } else {
        let f = field;
        for j in (3..=i).step_by(2) {
            let ratio = f.div(r.z.x[j - 2], r.z.x[j - 1]).unwrap();
            r.push(GlStepKind::A, j, [[f.one(), f.zero()], [f.one(), ratio]]);
            r.pair_block(GlStepKind::B, j - 1);
            r.pair_block(GlStepKind::C, j);
        }
    }
    for j in i + 1..=n {
        r.pair_block(GlStepKind::V, j);
    }
    let c = r.z.x[n - 1];
    let mut scale = Matrix::identity(field, n);
    scale.set(n - 1, n - 1, field.inv(c).unwrap());
    r.apply(GlStepKind::Scale, n, scale);
    debug_assert_eq!(r.z, ZVector::base(field, n));

    let factors = r
        .steps
        .iter()
        .map(|s| {
            let inv = s.matrix.inverse().unwrap();
            let identity = inv == Matrix::identity(field, n);
            Factor {
                kind: if identity { FactorKind::Identity } else { FactorKind::Element },
                element: GroupElement::Matrix(inv),
                levels: s.levels,
            }
        })
        .collect();
    Ok(GlFactorization { steps: r.steps, word: FactorWord { factors } })
}

/// Representative π⁻¹s of the coset corresponding to z, with its factorization.
pub fn gl_coset_representative(field: Field, z: &ZVector) -> Result<(Matrix, Normalized, GlFactorization)> {
    let norm = gl_normalize(field, z)?;
    let fact = gl_factor(field, &norm.z)?;
    let n = z.dim();
    let s = fact
        .word
        .factors
        .iter()
        .fold(Matrix::identity(field, n), |acc, f| acc.mul(f.element.as_matrix().unwrap()));
    let rep = norm.pi.inverse().unwrap().mul(&s);
    Ok((rep, norm, fact))
}

/// True when m = I_{j−2} ⊕ A ⊕ I_{n−j} for some 2×2 block A (j ≥ 2), or
/// m = I_{n−1} ⊕ (c) when `levels = (n−1, n)`.
pub fn in_centralizer_block(m: &Matrix, levels: (usize, usize)) -> bool {
    let n = m.dim();
    let (lo, hi) = levels;
    let f = m.field();
    (0..n).all(|r| {
        (0..n).all(|c| {
            let inside = r >= lo && r < hi && c >= lo && c < hi;
            inside || m.get(r, c) == if r == c { f.one() } else { f.zero() }
        })
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct GlCosetReport {
    pub n: usize,
    pub q: u32,
    pub group_order: u64,
    pub expected_cosets: u64,
    pub cosets_found: u64,
    pub pairs: u64,
    pub covered: u64,
    pub reconstructed_all: bool,
    pub shapes_ok: bool,
    pub centralizer_ok: bool,
    pub p2_branch_used: bool,
    /// label → number of distinct matrices over all pairs
    pub census_total: BTreeMap<String, usize>,
    /// label → max over fixed product vectors of distinct matrices
    pub census_per_products: BTreeMap<String, usize>,
    /// as above, restricted to product vectors with no zero entry
    pub census_per_nonzero_products: BTreeMap<String, usize>,
    pub census_ok: bool,
    pub pass: bool,
}

/// Step labels the factorization should produce for a block of length i.
pub fn expected_labels(n: usize, i: usize, p: usize) -> Vec<String> {
    let mut out = Vec::new();
    if p != 2 {
        let mut j = 2;
        while j <= i {
            if j % p == 0 {
                out.extend([format!("u'{}", j + 1), format!("t{j}"), format!("u{}", j + 1)]);
                j += 2;
            } else {
                out.push(format!("u{j}"));
                j += 1;
            }
        }
    } else {
        for j in (3..=i).step_by(2) {
            out.extend([format!("a{j}"), format!("b{}", j - 1), format!("c{j}")]);
        }
    }
    out.extend((i + 1..=n).map(|j| format!("v{j}")));
    out.push(format!("d{n}"));
    out
}

/// Brute-force check that the factored representatives hit every coset of
/// GL_{n−1}(q) in GL_n(q), with the expected word shapes and census.
pub fn verify_gl_cosets(n: usize, field: Field, cap: u64) -> Result<GlCosetReport> {
    let desc = GroupDesc::GeneralLinear { n, field };
    let elements = enumerate_group(&desc, cap)?;
    let base = ZVector::base(field, n);
    let mut coset_of: BTreeMap<ZVector, usize> = BTreeMap::new();
    for g in &elements {
        let img = gl_act(g.as_matrix().unwrap(), &base)?;
        let next = coset_of.len();
        coset_of.entry(img).or_insert(next);
    }
    let q = field.order();
    let p = field.characteristic() as usize;
    let sub_order = GroupDesc::GeneralLinear { n: n - 1, field }.order();
    let expected = (desc.order() / sub_order).to_u64_digits().first().copied().unwrap_or(0);

    let pairs = all_zvectors(field, n);
    let mut covered = BTreeSet::new();
    let mut reconstructed_all = true;
    let mut shapes_ok = true;
    let mut centralizer_ok = true;
    let mut p2_branch_used = false;
    let mut total: BTreeMap<String, BTreeSet<Matrix>> = BTreeMap::new();
    let mut per: BTreeMap<(String, Vec<FieldElement>), BTreeSet<Matrix>> = BTreeMap::new();
    // a c-block must be a function of the preceding a- and b-blocks
    let mut c_given_ab: BTreeMap<(Matrix, Matrix), BTreeSet<Matrix>> = BTreeMap::new();

    for z in &pairs {
        let (rep, norm, fact) = gl_coset_representative(field, z)?;
        if gl_act(&rep, &base)? != *z {
            reconstructed_all = false;
        }
        if let Some(&k) = coset_of.get(z) {
            covered.insert(k);
        }
        let labels = fact.labels();
        if labels != expected_labels(n, norm.i, p) {
            shapes_ok = false;
        }
        if p == 2 && norm.i >= 3 {
            p2_branch_used = true;
        }
        let prods = norm.z.products(field);
        for (idx, step) in fact.steps.iter().enumerate() {
            if !in_centralizer_block(&step.matrix, step.levels) || step.levels.1 > n {
                centralizer_ok = false;
            }
            let label = step.label();
            total.entry(label.clone()).or_default().insert(step.matrix.clone());
            per.entry((label, prods.clone())).or_default().insert(step.matrix.clone());
            if step.kind == GlStepKind::C && idx >= 2 {
                let key = (fact.steps[idx - 2].matrix.clone(), fact.steps[idx - 1].matrix.clone());
                c_given_ab.entry(key).or_default().insert(step.matrix.clone());
            }
        }
    }

    // commutation with the embedded GL_{j−2}, by brute force where feasible
    if n >= 3 && centralizer_ok {
        for j in 3..=n {
            let sub = GroupDesc::GeneralLinear { n: j - 2, field };
            if sub.order() > num_bigint::BigUint::from(2000u32) {
                continue;
            }
            let sub_elems = enumerate_group(&sub, cap)?;
            for (label, mats) in &total {
                if !label.ends_with(&j.to_string()) || label.starts_with('d') {
                    continue;
                }
                for m in mats {
                    for h in &sub_elems {
                        let h = h.as_matrix().unwrap().embed_top_left(n);
                        if m.mul(&h) != h.mul(m) {
                            centralizer_ok = false;
                        }
                    }
                }
            }
        }
    }

    let census_total: BTreeMap<String, usize> = total.iter().map(|(k, v)| (k.clone(), v.len())).collect();
    let mut census_per_products: BTreeMap<String, usize> = BTreeMap::new();
    for ((label, _), mats) in &per {
        let e = census_per_products.entry(label.clone()).or_insert(0);
        *e = (*e).max(mats.len());
    }
    let mut census_per_nonzero_products: BTreeMap<String, usize> = BTreeMap::new();
    for ((label, prods), mats) in &per {
        if prods.iter().all(|v| !v.is_zero()) {
            let e = census_per_nonzero_products.entry(label.clone()).or_insert(0);
            *e = (*e).max(mats.len());
        }
    }
    let qm1 = (q - 1) as usize;
    let census_ok = census_total.iter().all(|(label, &count)| match label.chars().next().unwrap() {
        'u' => census_per_products[label] == qm1,
        'v' => {
            count <= (q * q) as usize && census_per_nonzero_products.get(label).map_or(true, |&c| c == qm1)
        }
        'a' | 'b' => count == qm1,
        _ => true,
    }) && c_given_ab.values().all(|s| s.len() == 1);

    let cosets_found = coset_of.len() as u64;
    let covered = covered.len() as u64;
    let pass = cosets_found == expected
        && covered == expected
        && pairs.len() as u64 == expected
        && reconstructed_all
        && shapes_ok
        && centralizer_ok
        && census_ok;
    Ok(GlCosetReport {
        n,
        q,
        group_order: elements.len() as u64,
        expected_cosets: expected,
        cosets_found,
        pairs: pairs.len() as u64,
        covered,
        reconstructed_all,
        shapes_ok,
        centralizer_ok,
        p2_branch_used,
        census_total,
        census_per_products,
        census_per_nonzero_products,
        census_ok,
        pass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fe(v: u32) -> FieldElement {
        FieldElement(v)
    }

    #[test]
    fn identity_acts_trivially() {
        let f = Field::prime(5).unwrap();
        let z = ZVector::new(f, vec![fe(1), fe(2)], vec![fe(3), fe(4)]).unwrap();
        assert_eq!(gl_act(&Matrix::identity(f, 2), &z).unwrap(), z);
    }

    #[test]
    fn permutation_permutes_products() {
        let f = Field::prime(5).unwrap();
        let z = ZVector::new(f, vec![fe(1), fe(2), fe(1)], vec![fe(1), fe(1), fe(3)]).unwrap();
        let perm = [2, 0, 1];
        let moved = gl_act(&Matrix::permutation(f, &perm), &z).unwrap();
        let before = z.products(f);
        let after = moved.products(f);
        for k in 0..3 {
            assert_eq!(after[k], before[perm[k]]);
        }
    }

    #[test]
    fn case_one_block_zeroes_first_product() {
        let f = Field::prime(3).unwrap();
        // x1 = 0, so the first product is already 0 and the block clears y1
        let z = ZVector::new(f, vec![fe(0), fe(1)], vec![fe(2), fe(1)]).unwrap();
        let a = Matrix::new(f, 2, vec![fe(1), fe(0), f.div(fe(2), fe(1)).unwrap(), fe(1)]).unwrap();
        let out = gl_act(&a, &z).unwrap();
        assert_eq!(out.products(f)[0], f.zero());
        assert_eq!(out.y[0], f.zero());
    }

    #[test]
    fn base_point_normalizes_to_front() {
        let f = Field::prime(3).unwrap();
        let norm = gl_normalize(f, &ZVector::base(f, 3)).unwrap();
        assert_eq!((norm.i, norm.b), (1, f.one()));
        assert_eq!(norm.z.products(f), vec![fe(1), fe(0), fe(0)]);
    }

    #[test]
    fn all_ones_over_f2() {
        let f = Field::prime(2).unwrap();
        let z = ZVector::new(f, vec![fe(1); 3], vec![fe(1); 3]).unwrap();
        let norm = gl_normalize(f, &z).unwrap();
        assert_eq!((norm.i, norm.b), (3, f.one()));
        assert_eq!(norm.perm, vec![0, 1, 2]);
        let fact = gl_factor(f, &norm.z).unwrap();
        assert_eq!(fact.labels(), vec!["a3", "b2", "c3", "d3"]);
    }

    #[test]
    fn unnormalized_input_is_rejected() {
        let f = Field::prime(3).unwrap();
        let z = ZVector::base(f, 3);
        assert!(matches!(gl_factor(f, &z), Err(AlgebraError::NormalizationRequired(_))));
    }

    #[test]
    fn normalize_exhaustive_f3() {
        let f = Field::prime(3).unwrap();
        for z in all_zvectors(f, 3) {
            let norm = gl_normalize(f, &z).unwrap();
            let prods = norm.z.products(f);
            assert!(prods[..norm.i].iter().all(|&v| v == norm.b));
            assert_eq!((norm.i - 1) % 3, 0);
            let mut s = f.zero();
            for (j, &v) in prods.iter().enumerate() {
                s = f.add(s, v);
                if j + 1 >= norm.i {
                    assert!(!s.is_zero());
                }
            }
            assert_eq!(gl_act(&norm.pi, &z).unwrap(), norm.z);
        }
    }

    #[test]
    fn gl2_over_f3_coset_report() {
        let f = Field::prime(3).unwrap();
        let r = verify_gl_cosets(2, f, 1_000_000).unwrap();
        assert_eq!(r.group_order, 48);
        assert_eq!(r.expected_cosets, 24);
        assert!(r.pass, "{r:?}");
    }
}
