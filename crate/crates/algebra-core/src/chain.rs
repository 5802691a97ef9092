//! Subgroup chains G_0 < G_1 < ... < G_n and the factored coset
//! representatives that drive the separation-of-variables recursion.

use std::collections::BTreeMap;

use num_bigint::BigUint;

use crate::error::{AlgebraError, Result};
use crate::field::Field;
use crate::group::{group_op, Family, GroupDesc, GroupElement};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupChain {
    family: Family,
    n: usize,
    /// Cyclic orders N_0 = 1 | N_1 | ... | N_n; empty for other families.
    tower: Vec<u64>,
    field: Option<Field>,
}

/// A simple reflection of a Coxeter-type chain together with the level
/// interval (i⁻, i⁺) of the centralizer algebra it lives in.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub index: usize,
    /// Realized in G_{levels.1}.
    pub element: GroupElement,
    pub levels: (usize, usize),
}

/// What a factor is, independent of the level it has been embedded at.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FactorKind {
    Identity,
    /// Simple reflection s_k of the chain's Coxeter presentation.
    Reflection(usize),
    /// Residue y of the cyclic group at the slot's level.
    Residue(u64),
    /// An arbitrary group element, e.g. a matrix from the GL factorization.
    Element,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factor {
    pub kind: FactorKind,
    /// The factor embedded in the group the word lives in.
    pub element: GroupElement,
    pub levels: (usize, usize),
}

impl Factor {
    pub fn is_identity(&self) -> bool {
        self.kind == FactorKind::Identity || self.element.is_identity()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorWord {
    pub factors: Vec<Factor>,
}

impl FactorWord {
    pub fn product(&self, desc: &GroupDesc) -> Result<GroupElement> {
        self.factors.iter().try_fold(desc.identity(), |acc, f| group_op(&acc, &f.element))
    }

    pub fn non_identity_count(&self) -> usize {
        self.factors.iter().filter(|f| !f.is_identity()).count()
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }
}

/// One position of a factored coset word and the elements allowed there.
/// `choices[0]` is always the identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorSlot {
    pub name: String,
    pub levels: (usize, usize),
    pub choices: Vec<Factor>,
}

impl GroupChain {
    pub fn symmetric(n: usize) -> GroupChain {
        GroupChain { family: Family::Symmetric, n, tower: Vec::new(), field: None }
    }

    pub fn hyperoctahedral(n: usize) -> GroupChain {
        GroupChain { family: Family::Hyperoctahedral, n, tower: Vec::new(), field: None }
    }

    pub fn type_d(n: usize) -> GroupChain {
        GroupChain { family: Family::TypeD, n, tower: Vec::new(), field: None }
    }

    pub fn general_linear(n: usize, field: Field) -> GroupChain {
        GroupChain { family: Family::GeneralLinear, n, tower: Vec::new(), field: Some(field) }
    }

    /// Cyclic chain from a divisor tower. A leading 1 is optional: level 0
    /// is always the trivial group.
    pub fn cyclic(tower: &[u64]) -> Result<GroupChain> {
        let mut t: Vec<u64> = tower.to_vec();
        if t.first() != Some(&1) {
            t.insert(0, 1);
        }
        for w in t.windows(2) {
            if w[0] == 0 || w[1] % w[0] != 0 {
                return Err(AlgebraError::InvalidChain(format!("{} does not divide {}", w[0], w[1])));
            }
        }
        Ok(GroupChain { family: Family::Cyclic, n: t.len() - 1, tower: t, field: None })
    }

    /// The radix chain C_1 < C_r < C_{r^2} < ... < C_{r^k}.
    pub fn cyclic_power(radix: u64, k: usize) -> Result<GroupChain> {
        let tower: Vec<u64> = (0..=k as u32).map(|e| radix.pow(e)).collect();
        GroupChain::cyclic(&tower)
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn tower(&self) -> &[u64] {
        &self.tower
    }

    pub fn field(&self) -> Option<Field> {
        self.field
    }

    pub fn group(&self, i: usize) -> GroupDesc {
        match self.family {
            Family::Cyclic => GroupDesc::Cyclic { order: self.tower[i] },
            Family::Symmetric => GroupDesc::Symmetric { n: i },
            Family::Hyperoctahedral => GroupDesc::Hyperoctahedral { n: i },
            Family::TypeD => GroupDesc::TypeD { n: i },
            Family::GeneralLinear => GroupDesc::GeneralLinear { n: i, field: self.field.unwrap() },
        }
    }

    pub fn order(&self, i: usize) -> BigUint {
        self.group(i).order()
    }

    pub fn orders(&self) -> Vec<BigUint> {
        (0..=self.n).map(|i| self.order(i)).collect()
    }

    /// Embed an element of G_from into G_to (from ≤ to).
    pub fn embed(&self, g: &GroupElement, from: usize, to: usize) -> Result<GroupElement> {
        if from > to || to > self.n {
            return Err(AlgebraError::Precondition(format!("cannot embed level {from} into {to}")));
        }
        if !self.group(from).contains(g) {
            return Err(AlgebraError::DescriptorMismatch(format!("{g:?} not in {}", self.group(from))));
        }
        Ok(match g {
            GroupElement::Cyclic { value, .. } => {
                let scale = self.tower[to] / self.tower[from];
                GroupElement::Cyclic { order: self.tower[to], value: value * scale }
            }
            GroupElement::Perm(p) => {
                let mut q = p.clone();
                q.extend(p.len()..to);
                GroupElement::Perm(q)
            }
            GroupElement::Signed(s) => {
                let mut q = s.clone();
                q.extend(s.len() as i32 + 1..=to as i32);
                GroupElement::Signed(q)
            }
            GroupElement::Matrix(m) => GroupElement::Matrix(m.embed_top_left(to)),
        })
    }

    /// Simple reflections with their centralizer intervals, realized in
    /// their own level. Cyclic and GL chains have none.
    pub fn generators(&self) -> Vec<Generator> {
        let n = self.n;
        let signed = |k: usize, images: Vec<i32>| Generator {
            index: k,
            element: GroupElement::Signed(images),
            levels: if k == 1 { (0, 1) } else { (k - 2, k) },
        };
        match self.family {
            Family::Symmetric => (1..n)
                .map(|k| {
                    let mut p: Vec<usize> = (0..=k).collect();
                    p.swap(k - 1, k);
                    Generator { index: k, element: GroupElement::Perm(p), levels: (k - 1, k + 1) }
                })
                .collect(),
            Family::Hyperoctahedral => (1..=n)
                .map(|k| {
                    let mut s: Vec<i32> = (1..=k as i32).collect();
                    if k == 1 {
                        s[0] = -1;
                    } else {
                        s.swap(k - 2, k - 1);
                    }
                    signed(k, s)
                })
                .collect(),
            Family::TypeD => (1..=n)
                .filter(|&k| n >= 2 || k > 2)
                .map(|k| match k {
                    1 => Generator { index: 1, element: GroupElement::Signed(vec![-2, -1]), levels: (0, 2) },
                    2 => Generator { index: 2, element: GroupElement::Signed(vec![2, 1]), levels: (0, 2) },
                    _ => {
                        let mut s: Vec<i32> = (1..=k as i32).collect();
                        s.swap(k - 2, k - 1);
                        signed(k, s)
                    }
                })
                .collect(),
            Family::Cyclic | Family::GeneralLinear => Vec::new(),
        }
    }

    pub fn generator(&self, k: usize) -> Option<Generator> {
        self.generators().into_iter().find(|g| g.index == k)
    }

    fn reflection_slot(&self, name: String, k: usize, level: usize) -> Result<FactorSlot> {
        let g = self
            .generator(k)
            .ok_or_else(|| AlgebraError::Precondition(format!("no generator s_{k} in chain")))?;
        let element = self.embed(&g.element, g.levels.1, level)?;
        Ok(FactorSlot {
            name,
            levels: g.levels,
            choices: vec![
                Factor { kind: FactorKind::Identity, element: self.group(level).identity(), levels: g.levels },
                Factor { kind: FactorKind::Reflection(k), element, levels: g.levels },
            ],
        })
    }

    /// The factor positions of the coset words for G_i / G_{i-1}, in
    /// product order. Every product of one choice per slot lies in G_i.
    pub fn coset_factor_slots(&self, i: usize) -> Result<Vec<FactorSlot>> {
        if i == 0 || i > self.n {
            return Err(AlgebraError::Precondition(format!("level {i} outside 1..={}", self.n)));
        }
        let mut slots = Vec::new();
        match self.family {
            Family::Symmetric => {
                for j in 2..=i {
                    slots.push(self.reflection_slot(format!("a{j}"), j - 1, i)?);
                }
            }
            Family::Hyperoctahedral => {
                for j in (2..=i).rev() {
                    slots.push(self.reflection_slot(format!("a{j}"), j, i)?);
                }
                slots.push(self.reflection_slot("a1".into(), 1, i)?);
                for j in 2..=i {
                    slots.push(self.reflection_slot(format!("a{j}'"), j, i)?);
                }
            }
            Family::TypeD => {
                if i >= 2 {
                    for j in (3..=i).rev() {
                        slots.push(self.reflection_slot(format!("a{j}"), j, i)?);
                    }
                    slots.push(self.reflection_slot("a1".into(), 1, i)?);
                    slots.push(self.reflection_slot("a2".into(), 2, i)?);
                    for j in 3..=i {
                        slots.push(self.reflection_slot(format!("a{j}'"), j, i)?);
                    }
                }
            }
            Family::Cyclic => {
                let order = self.tower[i];
                let r = order / self.tower[i - 1];
                slots.push(FactorSlot {
                    name: "y".into(),
                    levels: (i, i),
                    choices: (0..r)
                        .map(|value| Factor {
                            kind: if value == 0 { FactorKind::Identity } else { FactorKind::Residue(value) },
                            element: GroupElement::Cyclic { order, value },
                            levels: (i, i),
                        })
                        .collect(),
                });
            }
            Family::GeneralLinear => {
                return Err(AlgebraError::Unsupported(
                    "GL coset words come from gl_factor, not a fixed slot pattern".into(),
                ))
            }
        }
        Ok(slots)
    }

    /// Which left coset of G_{i-1} in G_i the element g ∈ G_i belongs to,
    /// as a canonical integer key.
    pub fn coset_key(&self, g: &GroupElement, i: usize) -> Result<i64> {
        match g {
            GroupElement::Cyclic { value, .. } => Ok((value % (self.tower[i] / self.tower[i - 1])) as i64),
            GroupElement::Perm(p) => Ok(p[i - 1] as i64 + 1),
            GroupElement::Signed(s) => Ok(s[i - 1] as i64),
            GroupElement::Matrix(m) => {
                // g.1 = (g e_n, e_n^T g^{-1}); encode both as base-q digits
                let inv = m.inverse().expect("invertible");
                let q = m.field().order() as i64;
                let n = m.dim();
                let mut key = 0i64;
                for r in 0..n {
                    key = key * q + m.get(r, n - 1).value() as i64;
                }
                for c in 0..n {
                    key = key * q + inv.get(n - 1, c).value() as i64;
                }
                Ok(key)
            }
        }
    }

    /// Number of cosets |G_i| / |G_{i-1}|.
    pub fn index(&self, i: usize) -> BigUint {
        self.order(i) / self.order(i - 1)
    }
}

/// Every word formed by one choice per slot, in lexicographic slot order
/// with the identity choice first.
pub fn expand_slots(slots: &[FactorSlot]) -> Vec<FactorWord> {
    let mut words = vec![FactorWord { factors: Vec::new() }];
    for slot in slots {
        let mut next = Vec::with_capacity(words.len() * slot.choices.len());
        for w in &words {
            for c in &slot.choices {
                let mut f = w.factors.clone();
                f.push(c.clone());
                next.push(FactorWord { factors: f });
            }
        }
        words = next;
    }
    words
}

/// All factored words for G_i / G_{i-1}; their products contain a complete
/// set of coset representatives.
pub fn coset_factor_sets(chain: &GroupChain, i: usize) -> Result<Vec<FactorWord>> {
    Ok(expand_slots(&chain.coset_factor_slots(i)?))
}

/// Exactly one word per coset: the one with the fewest non-identity
/// factors, ties broken by the order of `coset_factor_sets`. Sorted by
/// coset key.
pub fn coset_representative_words(chain: &GroupChain, i: usize) -> Result<Vec<(i64, FactorWord)>> {
    let desc = chain.group(i);
    let mut best: BTreeMap<i64, FactorWord> = BTreeMap::new();
    for w in coset_factor_sets(chain, i)? {
        let g = w.product(&desc)?;
        let key = chain.coset_key(&g, i)?;
        match best.get(&key) {
            Some(b) if b.non_identity_count() <= w.non_identity_count() => {}
            _ => {
                best.insert(key, w);
            }
        }
    }
    Ok(best.into_iter().collect())
}
