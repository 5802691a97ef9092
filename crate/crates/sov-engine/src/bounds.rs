//! Closed-form operation bounds, evaluated exactly.

use algebra_core::{Family, GroupChain};
use bratteli::BratteliDiagram;
use num_bigint::BigUint;
use num_traits::{One, Zero};
use quiver_count::multiplicity_bound;

use crate::error::{Result, SovError};

/// Per-level inputs of the general chain bound.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GnStats {
    /// |G_i|, i = 0..=n.
    pub orders: Vec<BigUint>,
    /// |Ĝ_i|, the number of level-i vertices.
    pub classes: Vec<BigUint>,
    /// mult[i] = M_B(G_{i−1}, G_{i−2}) for i ≥ 2; zero below.
    pub mult: Vec<BigUint>,
    /// a_sizes[j] = |A_j|, the number of choices of the factors whose
    /// interval ends at level j; one for j < 2.
    pub a_sizes: Vec<BigUint>,
}

impl GnStats {
    pub fn from_chain(chain: &GroupChain, diagram: &BratteliDiagram) -> Result<GnStats> {
        let n = diagram.n();
        let orders = (0..=n).map(|i| chain.order(i)).collect();
        let classes = (0..=n).map(|i| BigUint::from(diagram.level(i).len())).collect();
        let mut mult = vec![BigUint::zero(); n + 1];
        let mut a_sizes = vec![BigUint::one(); n + 1];
        for i in 2..=n {
            mult[i] = multiplicity_bound(diagram, i - 1, 1)?;
            let slots = chain.coset_factor_slots(i)?;
            a_sizes[i] = slots.iter().filter(|s| s.levels.1 == i).map(|s| BigUint::from(s.choices.len())).product();
        }
        Ok(GnStats { orders, classes, mult, a_sizes })
    }

    pub fn n(&self) -> usize {
        self.orders.len() - 1
    }

    /// Σ_{i=2}^k M_i² |Ĝ_{i−2}| [G_i : G_{i−1}] Π_{j=i}^k |A_j|.
    fn inner(&self, k: usize) -> BigUint {
        let mut s = BigUint::zero();
        for i in 2..=k {
            let prod: BigUint = (i..=k).map(|j| &self.a_sizes[j]).product();
            s += &self.mult[i] * &self.mult[i] * &self.classes[i - 2] * (&self.orders[i] / &self.orders[i - 1]) * prod;
        }
        s
    }

    /// Bound on one sum at level k. The sum over i is empty at k = 1, where
    /// the naive count is used: each non-identity coset scales the
    /// |G_1|-dimensional level-1 algebra once. It vanishes when G_1 is trivial.
    pub fn level_bound(&self, k: usize) -> BigUint {
        match k {
            0 => BigUint::zero(),
            1 => (&self.orders[1] - 1u32) * &self.orders[1],
            _ => &self.orders[k - 1] * self.inner(k),
        }
    }

    /// Bound on one sum at level j of the transform on G_n / G_base.
    pub fn hom_level_bound(&self, j: usize, base: usize) -> BigUint {
        match j {
            j if j <= base => BigUint::zero(),
            1 => self.level_bound(1),
            _ => &self.orders[j - 1] / &self.orders[base] * self.inner(j),
        }
    }
}

/// Whole-transform bound Σ_k [G_n : G_k] · level_bound(k).
pub fn gn_bound(stats: &GnStats) -> BigUint {
    let n = stats.n();
    (1..=n).map(|k| &stats.orders[n] / &stats.orders[k] * stats.level_bound(k)).sum()
}

/// Bound for functions on G_n / G_{n−k}: levels n−k+1..n, each run
/// [G_n : G_j] times.
pub fn gn_hom_bound(stats: &GnStats, k: usize) -> Result<BigUint> {
    let n = stats.n();
    if k > n {
        return Err(SovError::Schedule(format!("k = {k} exceeds n = {n}")));
    }
    Ok((n - k + 1..=n).map(|j| &stats.orders[n] / &stats.orders[j] * stats.hom_level_bound(j, n - k)).sum())
}

fn b_order(n: usize) -> BigUint {
    GroupChain::hyperoctahedral(n).order(n)
}

fn d_order(n: usize) -> BigUint {
    GroupChain::type_d(n).order(n)
}

/// (4n − 3)|B_n|: one sum at the top level of B_n.
pub fn b_level_bound(n: usize) -> BigUint {
    if n == 0 {
        return BigUint::zero();
    }
    BigUint::from(4 * n - 3) * b_order(n)
}

/// n(2n − 1)|B_n|.
pub fn b_total_bound(n: usize) -> BigUint {
    if n == 0 {
        return BigUint::zero();
    }
    BigUint::from(n * (2 * n - 1)) * b_order(n)
}

/// (4i − 3)|B_i| / |B_base|: one sum at level i of the transform on B_n / B_base.
pub fn b_hom_level_bound(i: usize, base: usize) -> BigUint {
    if i <= base {
        return BigUint::zero();
    }
    b_level_bound(i) / b_order(base)
}

/// k(4n − 2k − 1)|B_n| / |B_{n−k}|.
pub fn b_hom_bound(n: usize, k: usize) -> Result<BigUint> {
    if k > n {
        return Err(SovError::Schedule(format!("k = {k} exceeds n = {n}")));
    }
    Ok(BigUint::from(k * (4 * n - 2 * k - 1)) * b_order(n) / b_order(n - k))
}

/// (13n − 12)|D_n|: one sum at the top level of D_n.
pub fn d_level_bound(n: usize) -> BigUint {
    if n == 0 {
        return BigUint::zero();
    }
    BigUint::from(13 * n - 12) * d_order(n)
}

/// Σ_{i ≤ n} (13i − 12)|D_n| = n(13n − 11)/2 · |D_n|.
pub fn d_total_bound(n: usize) -> BigUint {
    BigUint::from(n * (13 * n).saturating_sub(11) / 2) * d_order(n)
}

/// (4ⁿ q^{n+1} − q)/(4q − 1) · |GL_n(F_q)|.
pub fn gl_bound(n: usize, q: u64) -> BigUint {
    let qb = BigUint::from(q);
    let order: BigUint = (0..n as u32).map(|j| qb.pow(n as u32) - qb.pow(j)).product();
    let num = BigUint::from(4u32).pow(n as u32) * qb.pow(n as u32 + 1) - &qb;
    num / BigUint::from(4 * q - 1) * order
}

/// The closed-form whole-transform bound for families that have one.
pub fn closed_total_bound(family: Family, n: usize) -> Option<BigUint> {
    match family {
        Family::Hyperoctahedral => Some(b_total_bound(n)),
        Family::TypeD => Some(d_total_bound(n)),
        _ => None,
    }
}
