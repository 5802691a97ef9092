//! Arithmetic in F_q for q = p^k.
//!
//! Elements are stored as a single integer in `[0, q)`: the base-p digits
//! are the coefficients of a polynomial in the generator, lowest degree
//! first. For k = 1 this is the ordinary residue.

use serde::{Deserialize, Serialize};

use crate::error::{AlgebraError, Result};

/// Upper limit on q so that all encodings fit comfortably in `u32`.
pub const MAX_FIELD_ORDER: u32 = 1 << 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FieldElement(pub u32);

impl FieldElement {
    pub fn value(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

/// Field descriptor. `modulus` encodes the low coefficients c_0..c_{k-1}
/// of the monic irreducible x^k + c_{k-1}x^{k-1} + ... + c_0.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Field {
    p: u32,
    k: u32,
    q: u32,
    modulus: u32,
}

fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u32;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl Field {
    pub fn prime(p: u32) -> Result<Field> {
        if !is_prime(p) {
            return Err(AlgebraError::InvalidField(format!("{p} is not prime")));
        }
        if p > MAX_FIELD_ORDER {
            return Err(AlgebraError::InvalidField(format!("{p} exceeds field size limit")));
        }
        Ok(Field { p, k: 1, q: p, modulus: 0 })
    }

    /// Extension field with an explicit modulus, given as the low
    /// coefficients `[c_0, .., c_{k-1}]` of a monic polynomial of degree k.
    pub fn extension(p: u32, low_coeffs: &[u32]) -> Result<Field> {
        let base = Field::prime(p)?;
        let k = low_coeffs.len() as u32;
        if k == 0 {
            return Err(AlgebraError::InvalidField("empty modulus".into()));
        }
        if k == 1 {
            return Ok(base);
        }
        let q = (p as u64).checked_pow(k).filter(|&q| q <= MAX_FIELD_ORDER as u64).ok_or_else(|| {
            AlgebraError::InvalidField(format!("{p}^{k} exceeds field size limit"))
        })? as u32;
        if low_coeffs.iter().any(|&c| c >= p) {
            return Err(AlgebraError::InvalidField("modulus coefficient out of range".into()));
        }
        let mut poly: Vec<u32> = low_coeffs.to_vec();
        poly.push(1);
        if !poly_irreducible(&poly, p) {
            return Err(AlgebraError::InvalidField(format!("modulus {poly:?} is reducible over F_{p}")));
        }
        let modulus = low_coeffs.iter().rev().fold(0u32, |acc, &c| acc * p + c);
        Ok(Field { p, k, q, modulus })
    }

    /// F_q with the lexicographically smallest monic irreducible modulus.
    pub fn with_order(q: u32) -> Result<Field> {
        let (p, k) = prime_power(q)
            .ok_or_else(|| AlgebraError::InvalidField(format!("{q} is not a prime power")))?;
        if k == 1 {
            return Field::prime(p);
        }
        let count = p.pow(k);
        for code in 0..count {
            let low = digits(code, p, k as usize);
            if low[0] == 0 {
                continue;
            }
            let mut poly = low.clone();
            poly.push(1);
            if poly_irreducible(&poly, p) {
                return Field::extension(p, &low);
            }
        }
        unreachable!("irreducible polynomials exist in every degree")
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.k
    }

    pub fn order(&self) -> u32 {
        self.q
    }

    pub fn modulus_coeffs(&self) -> Vec<u32> {
        let mut c = digits(self.modulus, self.p, self.k as usize);
        c.push(1);
        c
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement(0)
    }

    pub fn one(&self) -> FieldElement {
        FieldElement(1)
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        (0..self.q).map(FieldElement)
    }

    pub fn contains(&self, a: FieldElement) -> bool {
        a.0 < self.q
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, v: i64) -> FieldElement {
        FieldElement(v.rem_euclid(self.p as i64) as u32)
    }

    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if self.k == 1 {
            return FieldElement((a.0 + b.0) % self.p);
        }
        let (mut x, mut y) = (a.0, b.0);
        let (mut out, mut scale) = (0u32, 1u32);
        for _ in 0..self.k {
            out += ((x % self.p + y % self.p) % self.p) * scale;
            x /= self.p;
            y /= self.p;
            scale *= self.p;
        }
        FieldElement(out)
    }

    pub fn neg(&self, a: FieldElement) -> FieldElement {
        if self.k == 1 {
            return FieldElement((self.p - a.0) % self.p);
        }
        let mut x = a.0;
        let (mut out, mut scale) = (0u32, 1u32);
        for _ in 0..self.k {
            out += ((self.p - x % self.p) % self.p) * scale;
            x /= self.p;
            scale *= self.p;
        }
        FieldElement(out)
    }

    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if self.k == 1 {
            return FieldElement(((a.0 as u64 * b.0 as u64) % self.p as u64) as u32);
        }
        let k = self.k as usize;
        let p = self.p as u64;
        let x = digits(a.0, self.p, k);
        let y = digits(b.0, self.p, k);
        let mut prod = vec![0u64; 2 * k - 1];
        for (i, &xi) in x.iter().enumerate() {
            for (j, &yj) in y.iter().enumerate() {
                prod[i + j] = (prod[i + j] + xi as u64 * yj as u64) % p;
            }
        }
        // x^k = -(c_0 + ... + c_{k-1} x^{k-1})
        let low = digits(self.modulus, self.p, k);
        for d in (k..prod.len()).rev() {
            let top = prod[d];
            if top == 0 {
                continue;
            }
            prod[d] = 0;
            for (i, &c) in low.iter().enumerate() {
                let idx = d - k + i;
                prod[idx] = (prod[idx] + (p - top) * c as u64) % p;
            }
        }
        let code = prod[..k].iter().rev().fold(0u64, |acc, &c| acc * p + c);
        FieldElement(code as u32)
    }

    pub fn pow(&self, a: FieldElement, mut e: u64) -> FieldElement {
        let mut base = a;
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: FieldElement) -> Option<FieldElement> {
        if a.is_zero() {
            None
        } else {
            Some(self.pow(a, self.q as u64 - 2))
        }
    }

    pub fn div(&self, a: FieldElement, b: FieldElement) -> Option<FieldElement> {
        self.inv(b).map(|bi| self.mul(a, bi))
    }
}

fn prime_power(q: u32) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q % d == 0)?;
    let (mut r, mut k) = (q, 0);
    while r % p == 0 {
        r /= p;
        k += 1;
    }
    (r == 1).then_some((p, k))
}

fn digits(mut v: u32, p: u32, len: usize) -> Vec<u32> {
    let mut out = Vec::with_capacity(len);
    for _ in 0..len {
        out.push(v % p);
        v /= p;
    }
    out
}

/// Remainder of `a` modulo the monic polynomial `m` over F_p.
fn poly_rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut r: Vec<u64> = a.iter().map(|&c| c as u64).collect();
    let dm = m.len() - 1;
    let p64 = p as u64;
    while r.len() > dm {
        let lead = r.pop().unwrap() % p64;
        if lead == 0 {
            continue;
        }
        let shift = r.len() - dm;
        for (i, &c) in m[..dm].iter().enumerate() {
            r[shift + i] = (r[shift + i] + (p64 - lead) * c as u64) % p64;
        }
    }
    r.into_iter().map(|c| c as u32).collect()
}

/// Trial division by every monic polynomial of degree 1..=deg/2.
fn poly_irreducible(poly: &[u32], p: u32) -> bool {
    let deg = poly.len() - 1;
    for d in 1..=deg / 2 {
        for code in 0..p.pow(d as u32) {
            let mut m = digits(code, p, d);
            m.push(1);
            if poly_rem(poly, &m, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverses_exist_for_small_fields() {
        for q in [2, 3, 4, 5, 7, 8, 9, 16, 25, 27, 32, 49, 64] {
            let f = Field::with_order(q).unwrap();
            for a in f.elements().skip(1) {
                let ai = f.inv(a).unwrap();
                assert_eq!(f.mul(a, ai), f.one(), "q={q} a={a:?}");
            }
        }
    }

    #[test]
    fn distributive_in_f8() {
        let f = Field::with_order(8).unwrap();
        for a in f.elements() {
            for b in f.elements() {
                for c in f.elements() {
                    assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                }
            }
        }
    }

    #[test]
    fn rejects_reducible_modulus() {
        // x^2 + 1 = (x + 1)^2 over F_2
        assert!(Field::extension(2, &[1, 0]).is_err());
        assert!(Field::extension(2, &[1, 1]).is_ok());
        assert!(Field::prime(6).is_err());
    }
}
