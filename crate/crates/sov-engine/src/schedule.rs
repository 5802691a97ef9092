//! The factored coset sum at one level of a chain: which factor sits in
//! which interval, which cosets use which choices, and the order σ in
//! which the factors are folded in.

use std::collections::BTreeSet;

use algebra_core::{coset_representative_words, group_op, Factor, Family, GroupChain, GroupElement};
use bratteli::BratteliDiagram;
use num_bigint::BigUint;
use num_traits::{One, Zero};
use quiver_count::{classify, count_hom_bruteforce, IntervalCase, ShapeQuiver, StrandGlue};

use crate::error::{Result, SovError};

/// One step of the recursion: folding factor `next` into the partial product.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StageInfo {
    pub next: usize,
    /// How the new factor's interval sits against the previous one.
    pub case: IntervalCase,
    /// Distinct choice tuples over σ[t..], i.e. |W_{t−1}|.
    pub tuples: usize,
    /// Those whose choice at σ[t] costs multiplications.
    pub paid_tuples: usize,
}

/// Positions 0..m−1 are the coset-word slots in product order and position
/// m is the subgroup transform F, with interval (0, level − 1).
#[derive(Clone, Debug)]
pub struct SovSchedule {
    family: Family,
    level: usize,
    names: Vec<String>,
    specs: Vec<(usize, usize)>,
    sigma: Vec<usize>,
    choices: Vec<Vec<Factor>>,
    free: Vec<Vec<bool>>,
    words: Vec<Vec<usize>>,
    coset_keys: Vec<i64>,
    cosets: Vec<GroupElement>,
    pin: Option<(usize, usize)>,
    glue: StrandGlue,
}

fn square_is_identity(g: &GroupElement) -> Result<bool> {
    Ok(group_op(g, g)?.is_identity())
}

impl SovSchedule {
    /// The schedule for G_level / G_{level−1}; `sigma` defaults to
    /// [`default_sigma`].
    pub fn for_chain(chain: &GroupChain, diagram: &BratteliDiagram, level: usize, sigma: Option<Vec<usize>>) -> Result<SovSchedule> {
        let slots = chain.coset_factor_slots(level)?;
        let m = slots.len();
        let desc = chain.group(level);
        let mut words = Vec::new();
        let mut coset_keys = Vec::new();
        let mut cosets = Vec::new();
        for (y, (key, word)) in coset_representative_words(chain, level)?.into_iter().enumerate() {
            let mut tuple = Vec::with_capacity(m + 1);
            for (slot, f) in slots.iter().zip(&word.factors) {
                let c = slot
                    .choices
                    .iter()
                    .position(|x| x.element == f.element)
                    .ok_or_else(|| SovError::Schedule(format!("factor of coset {key} is not a choice of slot {}", slot.name)))?;
                tuple.push(c);
            }
            tuple.push(y);
            words.push(tuple);
            coset_keys.push(key);
            cosets.push(word.product(&desc)?);
        }
        let mut free = Vec::with_capacity(m);
        for slot in &slots {
            let flat = diagram.level(slot.levels.1).iter().all(|&v| diagram.dim(v).is_one());
            let mut row = Vec::with_capacity(slot.choices.len());
            for c in &slot.choices {
                row.push(c.is_identity() || (flat && square_is_identity(&c.element)?));
            }
            free.push(row);
        }
        let mut specs: Vec<(usize, usize)> = slots.iter().map(|s| s.levels).collect();
        specs.push((0, level - 1));
        let mut names: Vec<String> = slots.iter().map(|s| s.name.clone()).collect();
        names.push("F".into());
        let sigma = match sigma {
            Some(s) => s,
            None => default_sigma(chain.family(), &names),
        };
        let mut seen = vec![false; m + 1];
        if sigma.len() != m + 1 || sigma.iter().any(|&p| p > m || std::mem::replace(&mut seen[p], true)) {
            return Err(SovError::Schedule(format!("{sigma:?} is not an ordering of {} factor positions", m + 1)));
        }
        let glue = StrandGlue::new(level, &specs)?;
        Ok(SovSchedule {
            family: chain.family(),
            level,
            names,
            specs,
            sigma,
            choices: slots.into_iter().map(|s| s.choices).collect(),
            free,
            words,
            coset_keys,
            cosets,
            pin: None,
            glue,
        })
    }

    /// Restrict every shape to morphisms whose last strand passes through
    /// diagram vertex `vertex` at level `at`.
    pub fn pinned(mut self, at: usize, vertex: usize) -> Result<SovSchedule> {
        if at + 1 > self.level {
            return Err(SovError::Schedule(format!("pin level {at} is not below level {}", self.level)));
        }
        self.pin = Some((at, vertex));
        Ok(self)
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn level(&self) -> usize {
        self.level
    }

    /// Number of factor positions, F included.
    pub fn positions(&self) -> usize {
        self.specs.len()
    }

    pub fn f_position(&self) -> usize {
        self.specs.len() - 1
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn specs(&self) -> &[(usize, usize)] {
        &self.specs
    }

    pub fn sigma(&self) -> &[usize] {
        &self.sigma
    }

    pub fn choices(&self, slot: usize) -> &[Factor] {
        &self.choices[slot]
    }

    /// Choice tuples per coset; the F entry is the coset index.
    pub fn words(&self) -> &[Vec<usize>] {
        &self.words
    }

    pub fn coset_keys(&self) -> &[i64] {
        &self.coset_keys
    }

    /// Coset representatives ŷ ∈ G_level, one per word.
    pub fn cosets(&self) -> &[GroupElement] {
        &self.cosets
    }

    pub fn pin(&self) -> Option<(usize, usize)> {
        self.pin
    }

    pub fn glue(&self) -> &StrandGlue {
        &self.glue
    }

    /// Whether choice c at position p needs no multiplications.
    pub fn is_free(&self, p: usize, c: usize) -> bool {
        p != self.f_position() && self.free[p][c]
    }

    fn apply_pin(&self, shape: ShapeQuiver) -> Result<ShapeQuiver> {
        match self.pin {
            Some((at, v)) => Ok(shape.pin(self.glue.vertex_class(self.positions(), at), v)?),
            None => Ok(shape),
        }
    }

    pub fn factor_shape(&self, p: usize) -> Result<ShapeQuiver> {
        self.apply_pin(self.glue.factor_shape(p)?)
    }

    /// Shape of the partial product after σ[0..=t] have been folded in.
    pub fn partial_shape(&self, t: usize) -> Result<ShapeQuiver> {
        if t == 0 {
            return self.factor_shape(self.sigma[0]);
        }
        let (vs, arcs) = self.glue.boundary(&self.sigma[..=t]);
        self.apply_pin(self.glue.shape(&vs, &arcs)?)
    }

    /// Shape indexing the multiplications of stage t ≥ 1.
    pub fn stage_shape(&self, t: usize) -> Result<ShapeQuiver> {
        let s = if t == 1 {
            self.glue.union_shape(&self.sigma[..2])?
        } else {
            self.glue.stage_shape(&self.sigma[..t], self.sigma[t])?
        };
        self.apply_pin(s)
    }

    /// Distinct choice tuples over σ[t..], optionally only those whose
    /// σ[t] choice is paid for.
    pub fn suffix_tuples(&self, t: usize, paid_only: bool) -> BTreeSet<Vec<usize>> {
        self.words
            .iter()
            .filter(|w| !paid_only || !self.is_free(self.sigma[t], w[self.sigma[t]]))
            .map(|w| self.sigma[t..].iter().map(|&p| w[p]).collect())
            .collect()
    }

    pub fn stages(&self) -> Vec<StageInfo> {
        (1..self.positions())
            .map(|t| StageInfo {
                next: self.sigma[t],
                case: classify(self.specs[self.sigma[t]], self.specs[self.sigma[t - 1]]),
                tuples: self.suffix_tuples(t, false).len(),
                paid_tuples: self.suffix_tuples(t, true).len(),
            })
            .collect()
    }
}

/// Folding order used when none is given. For S_n and cyclic towers F goes
/// first and the slots follow in product order. For B_n the middle factors
/// a2, a1, a2' come next and then the pairs (a_j', a_j) outward. For D_n the
/// central block a3, a1, a2, a3' is folded first, then the pairs (a_j', a_j).
pub fn default_sigma(family: Family, names: &[String]) -> Vec<usize> {
    let f = names.len() - 1;
    let pos = |s: &str| names.iter().position(|x| x == s);
    let mut sigma = vec![f];
    let mut push = |s: &str| {
        if let Some(p) = pos(s) {
            if !sigma.contains(&p) {
                sigma.push(p);
            }
        }
    };
    match family {
        Family::Hyperoctahedral => {
            push("a2");
            push("a1");
            push("a2'");
            for j in 3..=f {
                push(&format!("a{j}'"));
                push(&format!("a{j}"));
            }
        }
        Family::TypeD => {
            push("a3");
            push("a1");
            push("a2");
            push("a3'");
            for j in 4..=f {
                push(&format!("a{j}'"));
                push(&format!("a{j}"));
            }
        }
        _ => {}
    }
    for p in 0..f {
        if !sigma.contains(&p) {
            sigma.push(p);
        }
    }
    sigma
}

/// Predicted (multiplications, additions) of one sov_sum with this
/// schedule. Stage t costs #Hom(stage shape) per paid tuple over σ[t..];
/// additions are bounded by the products formed plus the merges of the
/// first factor.
pub fn predicted_cost(schedule: &SovSchedule, diagram: &BratteliDiagram) -> Result<(BigUint, BigUint)> {
    let mut mults = BigUint::zero();
    let mut adds = BigUint::zero();
    let n = schedule.positions();
    let first = count_hom_bruteforce(&schedule.factor_shape(schedule.sigma[0])?, diagram)?;
    let merged = schedule.words.len() - if n > 1 { schedule.suffix_tuples(1, false).len() } else { 1 };
    adds += &first * merged;
    for t in 1..n {
        let h = count_hom_bruteforce(&schedule.stage_shape(t)?, diagram)?;
        mults += &h * schedule.suffix_tuples(t, true).len();
        adds += &h * schedule.suffix_tuples(t, false).len();
    }
    Ok((mults, adds))
}
