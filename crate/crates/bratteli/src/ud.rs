//! Up and down operators on the vertex space of a diagram.
//!
//! U sends α to Σ_γ M(γ, α) γ over the level above; D is its adjoint for
//! the inner product in which vertices are orthonormal. U on the top level
//! and D on the root give zero.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};

use crate::diagram::BratteliDiagram;
use crate::error::{BratteliError, Result};

pub type VertexVector = BTreeMap<usize, BigInt>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Op {
    U,
    D,
}

/// A word in U and D, stored as runs written left to right. As an operator
/// the rightmost run acts first.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct UDWord {
    runs: Vec<(Op, u32)>,
}

impl UDWord {
    /// Merges adjacent runs of the same letter and drops empty runs.
    pub fn new(runs: impl IntoIterator<Item = (Op, u32)>) -> UDWord {
        let mut out: Vec<(Op, u32)> = Vec::new();
        for (op, k) in runs {
            if k == 0 {
                continue;
            }
            match out.last_mut() {
                Some((o, c)) if *o == op => *c += k,
                _ => out.push((op, k)),
            }
        }
        UDWord { runs: out }
    }

    pub fn runs(&self) -> &[(Op, u32)] {
        &self.runs
    }

    /// Letters in the order they act (rightmost first).
    pub fn letters_applied(&self) -> impl Iterator<Item = Op> + '_ {
        self.runs.iter().rev().flat_map(|&(op, k)| std::iter::repeat(op).take(k as usize))
    }

    pub fn len(&self) -> usize {
        self.runs.iter().map(|r| r.1 as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.runs.is_empty()
    }

    pub fn ups(&self) -> u64 {
        self.runs.iter().filter(|r| r.0 == Op::U).map(|r| r.1 as u64).sum()
    }

    pub fn downs(&self) -> u64 {
        self.runs.iter().filter(|r| r.0 == Op::D).map(|r| r.1 as u64).sum()
    }

    /// Level reached from level `start`; None if it would go negative.
    pub fn end_level(&self, start: usize) -> Option<usize> {
        (start as i64 + self.ups() as i64 - self.downs() as i64).try_into().ok()
    }

    /// Highest level visited when starting from `start`.
    pub fn peak(&self, start: usize) -> i64 {
        let mut h = start as i64;
        let mut top = h;
        for op in self.letters_applied() {
            h += if op == Op::U { 1 } else { -1 };
            top = top.max(h);
        }
        top
    }

    /// For every D, the number of U's minus the number of D's acting before
    /// it. Starting from the root this is the level the D is applied at.
    pub fn down_heights(&self) -> Vec<i64> {
        let mut h = 0i64;
        let mut out = Vec::new();
        for op in self.letters_applied() {
            match op {
                Op::U => h += 1,
                Op::D => {
                    out.push(h);
                    h -= 1;
                }
            }
        }
        out
    }

    /// Every D sees at least as many U's as D's acting before it.
    pub fn is_admissible(&self) -> bool {
        self.down_heights().iter().all(|&h| h >= 0)
    }
}

impl fmt::Display for UDWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.runs.is_empty() {
            return write!(f, "1");
        }
        for &(op, k) in &self.runs {
            let c = if op == Op::U { 'U' } else { 'D' };
            if k == 1 {
                write!(f, "{c}")?;
            } else {
                write!(f, "{c}^{k}")?;
            }
        }
        Ok(())
    }
}

impl FromStr for UDWord {
    type Err = BratteliError;

    /// Accepts forms like `D^5U^2DU^4`, `D5U2DU4`, `DDUU`, and `1` for the empty word.
    fn from_str(s: &str) -> Result<UDWord> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() || s == "1" {
            return Ok(UDWord::default());
        }
        let chars: Vec<char> = s.chars().collect();
        let mut runs = Vec::new();
        let mut i = 0;
        while i < chars.len() {
            let op = match chars[i] {
                'U' | 'u' => Op::U,
                'D' | 'd' => Op::D,
                c => return Err(BratteliError::Parse(format!("unexpected '{c}' in word {s}"))),
            };
            i += 1;
            if i < chars.len() && chars[i] == '^' {
                i += 1;
            }
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let k = if start == i {
                if chars[i - 1] == '^' {
                    return Err(BratteliError::Parse(format!("missing exponent in {s}")));
                }
                1
            } else {
                chars[start..i]
                    .iter()
                    .collect::<String>()
                    .parse()
                    .map_err(|e| BratteliError::Parse(format!("{e} in {s}")))?
            };
            runs.push((op, k));
        }
        Ok(UDWord::new(runs))
    }
}

fn add_to(v: &mut VertexVector, id: usize, c: BigInt) {
    if c.is_zero() {
        return;
    }
    let e = v.entry(id).or_insert_with(BigInt::zero);
    *e += c;
    if e.is_zero() {
        v.remove(&id);
    }
}

pub fn apply_u(d: &BratteliDiagram, v: &VertexVector) -> VertexVector {
    let mut out = VertexVector::new();
    for (&id, c) in v {
        for (t, m) in d.children(id) {
            add_to(&mut out, t, c * BigInt::from(m));
        }
    }
    out
}

pub fn apply_d(d: &BratteliDiagram, v: &VertexVector) -> VertexVector {
    let mut out = VertexVector::new();
    for (&id, c) in v {
        for (s, m) in d.parents(id) {
            add_to(&mut out, s, c * BigInt::from(m));
        }
    }
    out
}

pub fn apply_ud_word(d: &BratteliDiagram, word: &UDWord, start: &VertexVector) -> VertexVector {
    let mut v = start.clone();
    for op in word.letters_applied() {
        if v.is_empty() {
            break;
        }
        v = match op {
            Op::U => apply_u(d, &v),
            Op::D => apply_d(d, &v),
        };
    }
    v
}

pub fn inner(a: &VertexVector, b: &VertexVector) -> BigInt {
    let (small, large) = if a.len() <= b.len() { (a, b) } else { (b, a) };
    small.iter().filter_map(|(k, x)| large.get(k).map(|y| x * y)).sum()
}

pub fn coefficient_sum(v: &VertexVector) -> BigInt {
    v.values().sum()
}

pub fn root_vector(d: &BratteliDiagram) -> VertexVector {
    VertexVector::from([(d.root(), BigInt::one())])
}

/// Σ over a level of 1·α.
pub fn level_indicator(d: &BratteliDiagram, level: usize) -> VertexVector {
    d.level(level).iter().map(|&v| (v, BigInt::one())).collect()
}

/// d_i = Σ_α d_α α over level i.
pub fn dimension_vector(d: &BratteliDiagram, level: usize) -> VertexVector {
    d.level(level).iter().map(|&v| (v, BigInt::from(d.dim(v).clone()))).collect()
}

/// The eigenvalues λ_1..λ_n of DU on the dimension vectors. Checks both
/// D U d_{i-1} = λ_i d_{i-1} and D U^i 0̂ = λ_i U^{i-1} 0̂.
pub fn lambda_sequence(d: &BratteliDiagram) -> Result<Vec<BigUint>> {
    let mut out = Vec::with_capacity(d.n());
    let mut prev = root_vector(d);
    for i in 1..=d.n() {
        let cur = apply_u(d, &prev);
        let du = apply_d(d, &cur);
        // Ratio read off at the root-side entry of the previous level.
        let (&k0, c0) = prev.iter().next().ok_or(BratteliError::NotLocallyFree { level: i })?;
        let num = du.get(&k0).cloned().unwrap_or_default();
        if (&num % c0).is_positive() || num.is_zero() {
            return Err(BratteliError::NotLocallyFree { level: i });
        }
        let lam = &num / c0;
        let want: VertexVector = prev.iter().map(|(&k, c)| (k, c * &lam)).collect();
        if du != want {
            return Err(BratteliError::NotLocallyFree { level: i });
        }
        // Form (iii): DU applied to d_{i-1} built independently from path counts.
        let dim_prev = dimension_vector(d, i - 1);
        let du_dim = apply_d(d, &apply_u(d, &dim_prev));
        let want_dim: VertexVector = dim_prev.iter().map(|(&k, c)| (k, c * &lam)).collect();
        if du_dim != want_dim {
            return Err(BratteliError::NotLocallyFree { level: i });
        }
        out.push(lam.to_biguint().unwrap());
        prev = cur;
    }
    Ok(out)
}
