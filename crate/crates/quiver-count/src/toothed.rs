//! Toothed quivers and their up/down words.

use bratteli::ud::{apply_ud_word, coefficient_sum, dimension_vector, level_indicator, root_vector};
use bratteli::{lambda_sequence, BratteliDiagram, Op, UDWord, VertexVector};
use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::error::{QuiverError, Result};
use crate::shape::ShapeQuiver;

/// γ_0, …, γ_n at levels l_0..l_n and β_1..β_n at levels m_1..m_n, with
/// arrows γ_{i−1} → β_i ← γ_i.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ToothedQuiver {
    l: Vec<usize>,
    m: Vec<usize>,
}

impl ToothedQuiver {
    pub fn new(l: Vec<usize>, m: Vec<usize>) -> Result<ToothedQuiver> {
        if l.len() != m.len() + 1 {
            return Err(QuiverError::InvalidShape(format!("{} teeth need {} low levels, got {}", m.len(), m.len() + 1, l.len())));
        }
        for (i, &mi) in m.iter().enumerate() {
            if mi <= l[i].max(l[i + 1]) {
                return Err(QuiverError::InvalidShape(format!("tooth {} at level {mi} does not rise above its base", i + 1)));
            }
        }
        Ok(ToothedQuiver { l, m })
    }

    pub fn teeth(&self) -> usize {
        self.m.len()
    }

    pub fn low_levels(&self) -> &[usize] {
        &self.l
    }

    pub fn high_levels(&self) -> &[usize] {
        &self.m
    }

    /// As a shape quiver: γ vertices first, then β vertices.
    pub fn to_shape(&self) -> ShapeQuiver {
        let t = self.teeth();
        let mut grades = self.l.clone();
        grades.extend_from_slice(&self.m);
        let mut edges = Vec::with_capacity(2 * t);
        for i in 0..t {
            edges.push((i, t + 1 + i));
            edges.push((i + 1, t + 1 + i));
        }
        ShapeQuiver::new(grades, edges).expect("toothed quiver arrows go up")
    }
}

/// w = D^{m_n−l_n} U^{m_n−l_{n−1}} ⋯ D^{m_1−l_1} U^{m_1−l_0}.
pub fn toothed_to_word(t: &ToothedQuiver) -> UDWord {
    let mut runs = Vec::with_capacity(2 * t.teeth());
    for i in (0..t.teeth()).rev() {
        runs.push((Op::D, (t.m[i] - t.l[i + 1]) as u32));
        runs.push((Op::U, (t.m[i] - t.l[i]) as u32));
    }
    UDWord::new(runs)
}

/// Inverse of [`toothed_to_word`] for a given l_0. The word must read
/// D^{d_n}U^{u_n}⋯D^{d_1}U^{u_1} with every exponent positive and every
/// intermediate low level nonnegative.
pub fn word_to_toothed(w: &UDWord, l0: usize) -> Option<ToothedQuiver> {
    let runs = w.runs();
    if runs.len() % 2 != 0 {
        return None;
    }
    let mut l = vec![l0];
    let mut m = Vec::new();
    for pair in runs.rchunks(2) {
        let [(Op::D, d), (Op::U, u)] = pair else { return None };
        let top = *l.last().unwrap() + *u as usize;
        m.push(top);
        l.push(top.checked_sub(*d as usize)?);
    }
    ToothedQuiver::new(l, m).ok()
}

/// #Hom(T; B) = ⟨1_{l_n}, w 1_{l_0}⟩ with 1_l the sum of the vertices on
/// level l. When l_0 = 0 this is the coefficient sum of w applied to the
/// root.
pub fn toothed_hom_count(t: &ToothedQuiver, b: &BratteliDiagram) -> Result<BigUint> {
    let top = t.l.iter().chain(&t.m).copied().max().unwrap_or(0);
    if top > b.n() {
        return Err(QuiverError::Range { grade: top, max: b.n() });
    }
    let w = toothed_to_word(t);
    let v = apply_ud_word(b, &w, &level_indicator(b, t.l[0]));
    let end = *t.l.last().unwrap();
    let s: BigInt = v.iter().filter(|(&id, _)| b.grade(id) == end).map(|(_, c)| c).sum();
    Ok(s.to_biguint().expect("path counts are nonnegative"))
}

/// The value of a word applied to the root.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WordValue {
    /// Sum of the coefficients of w0̂.
    pub total: BigUint,
    /// w0̂ itself, supported on the terminal level.
    pub vector: VertexVector,
    /// Whether the λ-product shortcut was used.
    pub closed_form: bool,
}

/// Evaluate w0̂ by the λ-product when the diagram is locally free and the
/// word stays inside the diagram; otherwise by applying the operators.
/// Non-admissible words are rejected.
pub fn eval_word(b: &BratteliDiagram, w: &UDWord) -> Result<WordValue> {
    if !w.is_admissible() {
        return Err(QuiverError::Admissibility(w.to_string()));
    }
    if w.peak(0) <= b.n() as i64 {
        if let Ok(lambdas) = lambda_sequence(b) {
            let c = BigInt::from(lambda_product(&lambdas, w).expect("heights are within the diagram"));
            let vector: VertexVector = match w.end_level(0) {
                Some(level) if !c.is_zero() => {
                    dimension_vector(b, level).into_iter().map(|(k, d)| (k, d * &c)).collect()
                }
                _ => VertexVector::new(),
            };
            let total = coefficient_sum(&vector).to_biguint().unwrap();
            return Ok(WordValue { total, vector, closed_form: true });
        }
    }
    let vector = eval_word_operator(b, w);
    let total = coefficient_sum(&vector).to_biguint().unwrap();
    Ok(WordValue { total, vector, closed_form: false })
}

/// w0̂ computed by applying U and D letter by letter.
pub fn eval_word_operator(b: &BratteliDiagram, w: &UDWord) -> VertexVector {
    apply_ud_word(b, w, &root_vector(b))
}

/// Π λ_h over the D letters of an admissible word, with λ_0 = 0.
pub fn lambda_product(lambdas: &[BigUint], w: &UDWord) -> Option<BigUint> {
    let mut p = BigUint::one();
    for h in w.down_heights() {
        match h {
            h if h < 0 => return None,
            0 => return Some(BigUint::zero()),
            h => p *= lambdas.get(h as usize - 1)?,
        }
    }
    Some(p)
}
