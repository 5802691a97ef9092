use crate::error::{AlgebraError, Result};
use crate::field::{Field, FieldElement};

/// Square matrix over a finite field, row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Matrix {
    field: Field,
    n: usize,
    entries: Vec<FieldElement>,
}

impl Matrix {
    pub fn new(field: Field, n: usize, entries: Vec<FieldElement>) -> Result<Matrix> {
        if entries.len() != n * n {
            return Err(AlgebraError::InvalidElement(format!(
                "expected {} entries, got {}",
                n * n,
                entries.len()
            )));
        }
        if entries.iter().any(|&e| !field.contains(e)) {
            return Err(AlgebraError::InvalidElement("entry outside field".into()));
        }
        Ok(Matrix { field, n, entries })
    }

    /// Build from small integers, reduced into the prime subfield.
    pub fn from_ints(field: Field, rows: &[&[i64]]) -> Result<Matrix> {
        let n = rows.len();
        let entries = rows.iter().flat_map(|r| r.iter().map(|&v| field.from_int(v))).collect();
        Matrix::new(field, n, entries)
    }

    pub fn identity(field: Field, n: usize) -> Matrix {
        let mut entries = vec![field.zero(); n * n];
        for i in 0..n {
            entries[i * n + i] = field.one();
        }
        Matrix { field, n, entries }
    }

    /// Permutation matrix whose row k has its 1 in column `perm[k]` (0-based).
    pub fn permutation(field: Field, perm: &[usize]) -> Matrix {
        let n = perm.len();
        let mut entries = vec![field.zero(); n * n];
        for (k, &c) in perm.iter().enumerate() {
            entries[k * n + c] = field.one();
        }
        Matrix { field, n, entries }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn entries(&self) -> &[FieldElement] {
        &self.entries
    }

    pub fn get(&self, r: usize, c: usize) -> FieldElement {
        self.entries[r * self.n + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: FieldElement) {
        self.entries[r * self.n + c] = v;
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        let f = self.field();
        let n = self.n;
        let mut entries = vec![f.zero(); n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let idx = i * n + j;
                    entries[idx] = f.add(entries[idx], f.mul(a, other.get(k, j)));
                }
            }
        }
        Matrix { field: self.field, n, entries }
    }

    /// Column vector product Ax.
    pub fn apply(&self, x: &[FieldElement]) -> Vec<FieldElement> {
        let f = self.field();
        (0..self.n)
            .map(|i| (0..self.n).fold(f.zero(), |acc, j| f.add(acc, f.mul(self.get(i, j), x[j]))))
            .collect()
    }

    /// Row vector product yA.
    pub fn apply_row(&self, y: &[FieldElement]) -> Vec<FieldElement> {
        let f = self.field();
        (0..self.n)
            .map(|j| (0..self.n).fold(f.zero(), |acc, i| f.add(acc, f.mul(y[i], self.get(i, j)))))
            .collect()
    }

    pub fn determinant(&self) -> FieldElement {
        let f = self.field();
        let n = self.n;
        let mut a = self.entries.clone();
        let mut det = f.one();
        for col in 0..n {
            let Some(piv) = (col..n).find(|&r| !a[r * n + col].is_zero()) else {
                return f.zero();
            };
            if piv != col {
                for j in 0..n {
                    a.swap(piv * n + j, col * n + j);
                }
                det = f.neg(det);
            }
            let pv = a[col * n + col];
            det = f.mul(det, pv);
            let pinv = f.inv(pv).unwrap();
            for r in col + 1..n {
                let factor = f.mul(a[r * n + col], pinv);
                if factor.is_zero() {
                    continue;
                }
                for j in col..n {
                    a[r * n + j] = f.sub(a[r * n + j], f.mul(factor, a[col * n + j]));
                }
            }
        }
        det
    }

    pub fn inverse(&self) -> Option<Matrix> {
        let f = self.field();
        let n = self.n;
        let mut a = self.entries.clone();
        let mut inv = Matrix::identity(f, n).entries;
        for col in 0..n {
            let piv = (col..n).find(|&r| !a[r * n + col].is_zero())?;
            for j in 0..n {
                a.swap(piv * n + j, col * n + j);
                inv.swap(piv * n + j, col * n + j);
            }
            let pinv = f.inv(a[col * n + col]).unwrap();
            for j in 0..n {
                a[col * n + j] = f.mul(a[col * n + j], pinv);
                inv[col * n + j] = f.mul(inv[col * n + j], pinv);
            }
            for r in 0..n {
                if r == col {
                    continue;
                }
                let factor = a[r * n + col];
                if factor.is_zero() {
                    continue;
                }
                for j in 0..n {
                    a[r * n + j] = f.sub(a[r * n + j], f.mul(factor, a[col * n + j]));
                    inv[r * n + j] = f.sub(inv[r * n + j], f.mul(factor, inv[col * n + j]));
                }
            }
        }
        Some(Matrix { field: self.field, n, entries: inv })
    }

    /// Block embedding diag(self, I_extra) into a larger matrix.
    pub fn embed_top_left(&self, size: usize) -> Matrix {
        let f = self.field();
        let mut m = Matrix::identity(f, size);
        for i in 0..self.n {
            for j in 0..self.n {
                m.set(i, j, self.get(i, j));
            }
        }
        m
    }

    /// I ⊕ block ⊕ I with the 2×2 `block` acting on coordinates (c, c+1), 0-based.
    pub fn two_by_two_at(field: Field, size: usize, c: usize, block: [[FieldElement; 2]; 2]) -> Matrix {
        let mut m = Matrix::identity(field, size);
        for (i, row) in block.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                m.set(c + i, c + j, v);
            }
        }
        m
    }

    pub fn is_permutation(&self) -> bool {
        let f = self.field();
        let n = self.n;
        (0..n).all(|i| {
            let row: Vec<_> = (0..n).map(|j| self.get(i, j)).collect();
            row.iter().filter(|&&v| v == f.one()).count() == 1 && row.iter().filter(|v| !v.is_zero()).count() == 1
        }) && (0..n).all(|j| (0..n).filter(|&i| !self.get(i, j).is_zero()).count() == 1)
    }
}
