//! Concrete finite groups: cyclic, symmetric, signed permutations (types B
//! and D) and general linear groups over F_q.
//!
//! Composition is right-to-left: `(a·b)(x) = a(b(x))`.

use std::fmt;

use num_bigint::BigUint;
use num_traits::One;

use crate::error::{AlgebraError, Result};
use crate::field::{Field, FieldElement};
use crate::matrix::Matrix;

pub const DEFAULT_SIZE_CAP: u64 = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    Cyclic,
    Symmetric,
    Hyperoctahedral,
    TypeD,
    GeneralLinear,
}

impl Family {
    pub fn tag(self) -> &'static str {
        match self {
            Family::Cyclic => "C",
            Family::Symmetric => "S",
            Family::Hyperoctahedral => "B",
            Family::TypeD => "D",
            Family::GeneralLinear => "GL",
        }
    }

    pub fn parse(s: &str) -> Option<Family> {
        match s.to_ascii_uppercase().as_str() {
            "C" | "CYCLIC" => Some(Family::Cyclic),
            "S" | "SYMMETRIC" => Some(Family::Symmetric),
            "B" | "HYPEROCTAHEDRAL" => Some(Family::Hyperoctahedral),
            "D" => Some(Family::TypeD),
            "GL" => Some(Family::GeneralLinear),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum GroupDesc {
    Cyclic { order: u64 },
    Symmetric { n: usize },
    Hyperoctahedral { n: usize },
    TypeD { n: usize },
    GeneralLinear { n: usize, field: Field },
}

fn factorial(n: usize) -> BigUint {
    (1..=n as u64).fold(BigUint::one(), |acc, k| acc * k)
}

impl GroupDesc {
    pub fn family(&self) -> Family {
        match self {
            GroupDesc::Cyclic { .. } => Family::Cyclic,
            GroupDesc::Symmetric { .. } => Family::Symmetric,
            GroupDesc::Hyperoctahedral { .. } => Family::Hyperoctahedral,
            GroupDesc::TypeD { .. } => Family::TypeD,
            GroupDesc::GeneralLinear { .. } => Family::GeneralLinear,
        }
    }

    pub fn order(&self) -> BigUint {
        match self {
            GroupDesc::Cyclic { order } => BigUint::from(*order),
            GroupDesc::Symmetric { n } => factorial(*n),
            GroupDesc::Hyperoctahedral { n } => factorial(*n) << *n,
            GroupDesc::TypeD { n } => {
                if *n <= 1 {
                    BigUint::one()
                } else {
                    factorial(*n) << (*n - 1)
                }
            }
            GroupDesc::GeneralLinear { n, field } => {
                let q = BigUint::from(field.order());
                let qn = q.pow(*n as u32);
                (0..*n as u32).fold(BigUint::one(), |acc, i| acc * (&qn - q.pow(i)))
            }
        }
    }

    pub fn identity(&self) -> GroupElement {
        match self {
            GroupDesc::Cyclic { order } => GroupElement::Cyclic { order: *order, value: 0 },
            GroupDesc::Symmetric { n } => GroupElement::Perm((0..*n).collect()),
            GroupDesc::Hyperoctahedral { n } | GroupDesc::TypeD { n } => {
                GroupElement::Signed((1..=*n as i32).collect())
            }
            GroupDesc::GeneralLinear { n, field } => GroupElement::Matrix(Matrix::identity(*field, *n)),
        }
    }

    /// Membership test, including the even-sign condition for type D.
    pub fn contains(&self, g: &GroupElement) -> bool {
        match (self, g) {
            (GroupDesc::Cyclic { order }, GroupElement::Cyclic { order: o, value }) => order == o && value < o,
            (GroupDesc::Symmetric { n }, GroupElement::Perm(p)) => p.len() == *n && is_bijection(p),
            (GroupDesc::Hyperoctahedral { n }, GroupElement::Signed(s)) => s.len() == *n && signed_valid(s),
            (GroupDesc::TypeD { n }, GroupElement::Signed(s)) => {
                s.len() == *n && signed_valid(s) && s.iter().filter(|&&v| v < 0).count() % 2 == 0
            }
            (GroupDesc::GeneralLinear { n, field }, GroupElement::Matrix(m)) => {
                m.dim() == *n && m.field() == *field && !m.determinant().is_zero()
            }
            _ => false,
        }
    }
}

impl fmt::Display for GroupDesc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupDesc::Cyclic { order } => write!(f, "C_{order}"),
            GroupDesc::Symmetric { n } => write!(f, "S_{n}"),
            GroupDesc::Hyperoctahedral { n } => write!(f, "B_{n}"),
            GroupDesc::TypeD { n } => write!(f, "D_{n}"),
            GroupDesc::GeneralLinear { n, field } => write!(f, "GL_{n}(F_{})", field.order()),
        }
    }
}

fn is_bijection(p: &[usize]) -> bool {
    let mut seen = vec![false; p.len()];
    p.iter().all(|&v| v < seen.len() && !std::mem::replace(&mut seen[v], true))
}

fn signed_valid(s: &[i32]) -> bool {
    let abs: Vec<usize> = s.iter().map(|&v| v.unsigned_abs() as usize).collect();
    abs.iter().all(|&v| v >= 1) && is_bijection(&abs.iter().map(|v| v - 1).collect::<Vec<_>>())
}

/// A group element. Permutations store 0-based images; signed permutations
/// store signed 1-based images, so `Signed(v)` sends e_i to sign(v_i)·e_|v_i|.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GroupElement {
    Cyclic { order: u64, value: u64 },
    Perm(Vec<usize>),
    Signed(Vec<i32>),
    Matrix(Matrix),
}

impl GroupElement {
    /// Permutation from a 1-based one-line array.
    pub fn from_one_line(images: &[usize]) -> Result<GroupElement> {
        let p: Vec<usize> = images.iter().map(|&v| v.wrapping_sub(1)).collect();
        if !is_bijection(&p) {
            return Err(AlgebraError::InvalidElement(format!("{images:?} is not a permutation")));
        }
        Ok(GroupElement::Perm(p))
    }

    /// Signed permutation from a 1-based one-line permutation and sign vector.
    pub fn signed_from_parts(images: &[usize], signs: &[i8]) -> Result<GroupElement> {
        if images.len() != signs.len() || signs.iter().any(|&s| s != 1 && s != -1) {
            return Err(AlgebraError::InvalidElement("bad sign vector".into()));
        }
        let v: Vec<i32> = images.iter().zip(signs).map(|(&i, &s)| i as i32 * s as i32).collect();
        if !signed_valid(&v) {
            return Err(AlgebraError::InvalidElement(format!("{images:?} is not a permutation")));
        }
        Ok(GroupElement::Signed(v))
    }

    pub fn one_line(&self) -> Option<Vec<usize>> {
        match self {
            GroupElement::Perm(p) => Some(p.iter().map(|v| v + 1).collect()),
            GroupElement::Signed(s) => Some(s.iter().map(|v| v.unsigned_abs() as usize).collect()),
            _ => None,
        }
    }

    pub fn signs(&self) -> Option<Vec<i8>> {
        match self {
            GroupElement::Signed(s) => Some(s.iter().map(|&v| if v < 0 { -1 } else { 1 }).collect()),
            _ => None,
        }
    }

    /// Degree for permutation-like elements, dimension for matrices.
    pub fn rank(&self) -> usize {
        match self {
            GroupElement::Cyclic { .. } => 1,
            GroupElement::Perm(p) => p.len(),
            GroupElement::Signed(s) => s.len(),
            GroupElement::Matrix(m) => m.dim(),
        }
    }

    pub fn is_identity(&self) -> bool {
        match self {
            GroupElement::Cyclic { value, .. } => *value == 0,
            GroupElement::Perm(p) => p.iter().enumerate().all(|(i, &v)| i == v),
            GroupElement::Signed(s) => s.iter().enumerate().all(|(i, &v)| v == i as i32 + 1),
            GroupElement::Matrix(m) => *m == Matrix::identity(m.field(), m.dim()),
        }
    }

    pub fn as_matrix(&self) -> Option<&Matrix> {
        match self {
            GroupElement::Matrix(m) => Some(m),
            _ => None,
        }
    }
}

fn mismatch(a: &GroupElement, b: &GroupElement) -> AlgebraError {
    AlgebraError::DescriptorMismatch(format!("{a:?} vs {b:?}"))
}

pub fn group_op(a: &GroupElement, b: &GroupElement) -> Result<GroupElement> {
    use GroupElement::*;
    match (a, b) {
        (Cyclic { order: n, value: x }, Cyclic { order: m, value: y }) if n == m => {
            Ok(Cyclic { order: *n, value: (x + y) % n })
        }
        (Perm(p), Perm(q)) if p.len() == q.len() => Ok(Perm(q.iter().map(|&i| p[i]).collect())),
        (Signed(p), Signed(q)) if p.len() == q.len() => Ok(Signed(
            q.iter()
                .map(|&v| {
                    let inner = p[v.unsigned_abs() as usize - 1];
                    if v < 0 {
                        -inner
                    } else {
                        inner
                    }
                })
                .collect(),
        )),
        (Matrix(x), Matrix(y)) if x.dim() == y.dim() && x.field() == y.field() => Ok(Matrix(x.mul(y))),
        _ => Err(mismatch(a, b)),
    }
}

pub fn inverse(a: &GroupElement) -> GroupElement {
    use GroupElement::*;
    match a {
        Cyclic { order, value } => Cyclic { order: *order, value: (order - value) % order },
        Perm(p) => {
            let mut inv = vec![0; p.len()];
            for (i, &v) in p.iter().enumerate() {
                inv[v] = i;
            }
            Perm(inv)
        }
        Signed(s) => {
            let mut inv = vec![0i32; s.len()];
            for (i, &v) in s.iter().enumerate() {
                let target = v.unsigned_abs() as usize - 1;
                inv[target] = if v < 0 { -(i as i32 + 1) } else { i as i32 + 1 };
            }
            Signed(inv)
        }
        Matrix(m) => Matrix(m.inverse().expect("group elements are invertible")),
    }
}

pub fn identity(desc: &GroupDesc) -> GroupElement {
    desc.identity()
}

/// Product of a sequence of elements, left to right.
pub fn product<'a>(desc: &GroupDesc, items: impl IntoIterator<Item = &'a GroupElement>) -> Result<GroupElement> {
    items.into_iter().try_fold(desc.identity(), |acc, g| group_op(&acc, g))
}

fn next_permutation(p: &mut [usize]) -> bool {
    let n = p.len();
    if n < 2 {
        return false;
    }
    let Some(i) = (0..n - 1).rev().find(|&i| p[i] < p[i + 1]) else {
        return false;
    };
    let j = (i + 1..n).rev().find(|&j| p[j] > p[i]).unwrap();
    p.swap(i, j);
    p[i + 1..].reverse();
    true
}

/// All permutations of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut p: Vec<usize> = (0..n).collect();
    let mut out = vec![p.clone()];
    while next_permutation(&mut p) {
        out.push(p.clone());
    }
    out
}

/// Every element of the group: identity first, then the rest in
/// lexicographic order on canonical coordinates.
pub fn enumerate_group(desc: &GroupDesc, cap: u64) -> Result<Vec<GroupElement>> {
    let order = desc.order();
    if order > BigUint::from(cap) {
        return Err(AlgebraError::SizeCap { order: order.to_string(), cap });
    }
    let mut out = match desc {
        GroupDesc::Cyclic { order } => {
            (0..*order).map(|value| GroupElement::Cyclic { order: *order, value }).collect()
        }
        GroupDesc::Symmetric { n } => permutations(*n).into_iter().map(GroupElement::Perm).collect(),
        GroupDesc::Hyperoctahedral { n } | GroupDesc::TypeD { n } => {
            let n = *n;
            let mut v = Vec::new();
            for p in permutations(n) {
                for mask in 0u32..(1 << n) {
                    // sign of coordinate i is the (n-1-i)th bit, so + sorts before -
                    let s: Vec<i32> = (0..n)
                        .map(|i| {
                            let img = p[i] as i32 + 1;
                            if mask >> (n - 1 - i) & 1 == 1 {
                                -img
                            } else {
                                img
                            }
                        })
                        .collect();
                    let g = GroupElement::Signed(s);
                    if desc.contains(&g) {
                        v.push(g);
                    }
                }
            }
            v
        }
        GroupDesc::GeneralLinear { n, field } => enumerate_gl(*n, *field),
    };
    let id = desc.identity();
    if let Some(pos) = out.iter().position(|g| *g == id) {
        out.remove(pos);
    }
    out.insert(0, id);
    Ok(out)
}

fn enumerate_gl(n: usize, field: Field) -> Vec<GroupElement> {
    let q = field.order() as u64;
    let total = q.pow((n * n) as u32);
    let mut out = Vec::new();
    for code in 0..total {
        let mut c = code;
        let mut entries = vec![FieldElement(0); n * n];
        for slot in entries.iter_mut().rev() {
            *slot = FieldElement((c % q) as u32);
            c /= q;
        }
        let m = Matrix::new(field, n, entries).unwrap();
        if !m.determinant().is_zero() {
            out.push(GroupElement::Matrix(m));
        }
    }
    out
}
