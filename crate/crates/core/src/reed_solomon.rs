//! Reed-Solomon parity checks as a compression matrix, and syndrome decoding.
//!
//! The parity-check matrix has entries α^(jℓ) for rows j = 1..m̃₁ and columns
//! ℓ = 0..n−1, so a sparse vector with values v at positions ℓ has syndromes
//! that are plain power sums S_j = Σ v·X^j with locators X = α^ℓ. Decoding is
//! the classic chain:
//!
//! 1. Berlekamp-Massey synthesizes the shortest LFSR generating S_1..S_m̃₁;
//!    its connection polynomial is the locator σ(z) = Π(1 − X_i z).
//! 2. Chien search finds the roots α^(−ℓ) of σ among the n code positions.
//! 3. Forney evaluates each value as −Ω(X⁻¹)/σ′(X⁻¹), with the evaluator
//!    Ω(z) = S(z)σ(z) mod z^m̃₁ and S(z) = Σ S_j z^(j−1).
//!
//! Every decode ends with a re-encode check, so a returned pattern always
//! reproduces its syndrome.

use std::sync::Arc;

use crate::error::{DecodeFailureKind, Error, Result};
use crate::finite_field::{ExtElement, ExtField, FpElement};
use crate::ops::OpCount;

/// Polynomial over GF(p^s), coefficient of z^0 first.
pub type Poly = Vec<ExtElement>;

/// An [n, b] Reed-Solomon code over GF(p^s).
#[derive(Debug, Clone)]
pub struct RsCode {
    field: Arc<ExtField>,
    n: usize,
    b: usize,
}

impl RsCode {
    pub fn new(field: Arc<ExtField>, n: usize, b: usize) -> Result<Self> {
        let q = field.order() as usize;
        if n > q - 1 {
            return Err(Error::FieldTooSmall { n, q });
        }
        if b == 0 || b >= n {
            return Err(Error::InvalidParameter(format!("RS dimension {b} must lie in (0, {n})")));
        }
        Ok(Self { field, n, b })
    }

    pub fn field(&self) -> &Arc<ExtField> {
        &self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn b(&self) -> usize {
        self.b
    }

    /// Number of parity-check rows, n − b.
    pub fn m_tilde1(&self) -> usize {
        self.n - self.b
    }

    pub fn d_min(&self) -> usize {
        self.m_tilde1() + 1
    }

    /// Largest sparsity with a unique syndrome, ⌊(d_min − 1)/2⌋.
    pub fn k_max(&self) -> usize {
        self.m_tilde1() / 2
    }

    pub fn parity_check(&self) -> ParityCheckMatrix {
        let rows = self.m_tilde1();
        let f = &self.field;
        let entries = (1..=rows).map(|j| (0..self.n).map(|l| f.alpha_pow((j * l) as i64)).collect()).collect();
        ParityCheckMatrix { entries }
    }

    /// Syndrome of a sparse GF(p^s)-valued vector given as (position, value) pairs.
    pub fn syndrome(&self, entries: &[(usize, ExtElement)]) -> Syndrome {
        let mut ops = OpCount::default();
        self.syndrome_counted(entries, &mut ops)
    }

    fn syndrome_counted(&self, entries: &[(usize, ExtElement)], ops: &mut OpCount) -> Syndrome {
        let f = &self.field;
        let mut values = vec![f.zero(); self.m_tilde1()];
        for &(pos, v) in entries {
            debug_assert!(pos < self.n);
            if v.is_zero() {
                continue;
            }
            let step = f.alpha_pow(pos as i64);
            let mut term = v;
            for s in values.iter_mut() {
                term = f.mul(term, step);
                *s = f.add(*s, term);
                ops.ext_field += 2;
            }
        }
        Syndrome { values }
    }

    /// Syndrome of a sparse F_p-valued vector, values embedded as constants.
    pub fn syndrome_fp(&self, entries: &[(usize, FpElement)]) -> Syndrome {
        let embedded: Vec<_> = entries.iter().map(|&(l, v)| (l, self.field.embed(v))).collect();
        self.syndrome(&embedded)
    }

    /// Full GF(p^s) error decoding: locator, roots, values, re-encode check.
    pub fn decode_syndrome(&self, syn: &Syndrome) -> Result<Vec<(usize, ExtElement)>> {
        let mut ops = OpCount::default();
        self.decode_syndrome_counted(syn, &mut ops)
    }

    pub fn decode_syndrome_counted(&self, syn: &Syndrome, ops: &mut OpCount) -> Result<Vec<(usize, ExtElement)>> {
        if syn.values.len() != self.m_tilde1() {
            return Err(Error::LengthMismatch { expected: self.m_tilde1(), actual: syn.values.len() });
        }
        if syn.is_zero() {
            return Ok(Vec::new());
        }
        let (sigma, l) = berlekamp_massey_counted(&self.field, &syn.values, ops);
        if l > self.k_max() || poly_degree(&sigma) != l {
            return Err(Error::DecodeFailure(DecodeFailureKind::BmDegreeOverflow));
        }
        let positions = chien_search_counted(&self.field, &sigma, self.n, ops)?;
        let values = forney_counted(&self.field, &sigma, &syn.values, &positions, ops)?;
        let pattern: Vec<_> = positions.into_iter().zip(values).collect();
        if pattern.iter().any(|(_, v)| v.is_zero()) {
            return Err(Error::DecodeFailure(DecodeFailureKind::ValueOutOfAlphabet));
        }
        if self.syndrome_counted(&pattern, ops) != *syn {
            return Err(Error::DecodeFailure(DecodeFailureKind::ReencodeMismatch));
        }
        Ok(pattern)
    }

    /// Recovers the unique F_p-valued vector of weight ≤ k_max with this syndrome.
    pub fn syndrome_decode(&self, syn: &Syndrome) -> Result<Vec<(usize, FpElement)>> {
        let mut ops = OpCount::default();
        self.syndrome_decode_counted(syn, &mut ops)
    }

    pub fn syndrome_decode_counted(&self, syn: &Syndrome, ops: &mut OpCount) -> Result<Vec<(usize, FpElement)>> {
        let pattern = self.decode_syndrome_counted(syn, ops)?;
        pattern
            .into_iter()
            .map(|(l, v)| match self.field.to_subfield(v) {
                Some(c) if !c.is_zero() => Ok((l, c)),
                _ => Err(Error::DecodeFailure(DecodeFailureKind::ValueOutOfAlphabet)),
            })
            .collect()
    }
}

/// The m̃₁ × n matrix H̃ with entries α^(jℓ).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParityCheckMatrix {
    entries: Vec<Vec<ExtElement>>,
}

impl ParityCheckMatrix {
    pub fn rows(&self) -> usize {
        self.entries.len()
    }

    pub fn cols(&self) -> usize {
        self.entries.first().map_or(0, Vec::len)
    }

    pub fn entry(&self, row: usize, col: usize) -> ExtElement {
        self.entries[row][col]
    }

    pub fn column(&self, col: usize) -> Vec<ExtElement> {
        self.entries.iter().map(|r| r[col]).collect()
    }

    /// Dense product H̃·x over GF(p^s).
    pub fn apply(&self, field: &ExtField, x: &[ExtElement]) -> Syndrome {
        let values = self
            .entries
            .iter()
            .map(|row| row.iter().zip(x).fold(field.zero(), |acc, (&h, &v)| field.add(acc, field.mul(h, v))))
            .collect();
        Syndrome { values }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Syndrome {
    pub values: Vec<ExtElement>,
}

impl Syndrome {
    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| v.is_zero())
    }

    pub fn add(&self, field: &ExtField, other: &Syndrome) -> Syndrome {
        let values = self.values.iter().zip(&other.values).map(|(&a, &b)| field.add(a, b)).collect();
        Syndrome { values }
    }
}

/// Degree of a polynomial, ignoring trailing zero coefficients. Zero has degree 0.
pub fn poly_degree(p: &[ExtElement]) -> usize {
    p.iter().rposition(|c| !c.is_zero()).unwrap_or(0)
}

pub fn poly_eval(field: &ExtField, p: &[ExtElement], z: ExtElement) -> ExtElement {
    p.iter().rev().fold(field.zero(), |acc, &c| field.add(field.mul(acc, z), c))
}

/// Error-locator polynomial from syndromes S_1..S_m, with its LFSR length.
pub fn berlekamp_massey(field: &ExtField, syndromes: &[ExtElement]) -> (Poly, usize) {
    let mut ops = OpCount::default();
    berlekamp_massey_counted(field, syndromes, &mut ops)
}

fn berlekamp_massey_counted(field: &ExtField, syndromes: &[ExtElement], ops: &mut OpCount) -> (Poly, usize) {
    let f = field;
    let mut c: Poly = vec![f.one()];
    let mut b: Poly = vec![f.one()];
    let mut l = 0usize;
    let mut shift = 1usize;
    let mut last_d = f.one();

    for n in 0..syndromes.len() {
        let mut d = syndromes[n];
        for i in 1..=l.min(c.len() - 1) {
            d = f.add(d, f.mul(c[i], syndromes[n - i]));
            ops.ext_field += 2;
        }
        if d.is_zero() {
            shift += 1;
            continue;
        }
        let coef = f.div(d, last_d).expect("discrepancy base is nonzero");
        ops.ext_field += 1;
        let prev = c.clone();
        if c.len() < b.len() + shift {
            c.resize(b.len() + shift, f.zero());
        }
        for (i, &bi) in b.iter().enumerate() {
            c[i + shift] = f.sub(c[i + shift], f.mul(coef, bi));
            ops.ext_field += 2;
        }
        if 2 * l <= n {
            l = n + 1 - l;
            b = prev;
            last_d = d;
            shift = 1;
        } else {
            shift += 1;
        }
    }
    c.truncate(poly_degree(&c) + 1);
    (c, l)
}

/// Positions ℓ in 0..n with σ(α^(−ℓ)) = 0. Fails unless every root is found.
pub fn chien_search(field: &ExtField, sigma: &[ExtElement], n: usize) -> Result<Vec<usize>> {
    let mut ops = OpCount::default();
    chien_search_counted(field, sigma, n, &mut ops)
}

fn chien_search_counted(field: &ExtField, sigma: &[ExtElement], n: usize, ops: &mut OpCount) -> Result<Vec<usize>> {
    let f = field;
    let deg = poly_degree(sigma);
    if deg == 0 {
        return Ok(Vec::new());
    }
    // terms[k] tracks σ_k·α^(−kℓ) as ℓ advances.
    let steps: Vec<ExtElement> = (0..=deg).map(|k| f.alpha_pow(-(k as i64))).collect();
    let mut terms: Vec<ExtElement> = sigma[..=deg].to_vec();
    let mut roots = Vec::with_capacity(deg);
    for l in 0..n {
        let mut acc = terms[0];
        for t in &terms[1..] {
            acc = f.add(acc, *t);
        }
        ops.ext_field += deg as u64;
        if acc.is_zero() {
            roots.push(l);
        }
        for (t, &st) in terms.iter_mut().zip(&steps).skip(1) {
            *t = f.mul(*t, st);
        }
        ops.ext_field += deg as u64;
    }
    if roots.len() != deg {
        return Err(Error::DecodeFailure(DecodeFailureKind::ChienMismatch));
    }
    Ok(roots)
}

/// Error values at the given positions by Forney's formula.
pub fn forney_values(
    field: &ExtField,
    sigma: &[ExtElement],
    syndromes: &[ExtElement],
    positions: &[usize],
) -> Result<Vec<ExtElement>> {
    let mut ops = OpCount::default();
    forney_counted(field, sigma, syndromes, positions, &mut ops)
}

fn forney_counted(
    field: &ExtField,
    sigma: &[ExtElement],
    syndromes: &[ExtElement],
    positions: &[usize],
    ops: &mut OpCount,
) -> Result<Vec<ExtElement>> {
    let f = field;
    let m = syndromes.len();
    let mut omega = vec![f.zero(); m];
    for (i, &si) in sigma.iter().enumerate() {
        for (j, &sj) in syndromes.iter().enumerate() {
            if i + j < m {
                omega[i + j] = f.add(omega[i + j], f.mul(si, sj));
                ops.ext_field += 2;
            }
        }
    }
    // Formal derivative: coefficient k·σ_k on z^(k−1), k reduced mod p.
    let base = f.base();
    let deriv: Poly = sigma.iter().enumerate().skip(1).map(|(k, &c)| f.mul(f.embed(base.elem(k as i64)), c)).collect();
    positions
        .iter()
        .map(|&l| {
            let x_inv = f.alpha_pow(-(l as i64));
            let num = poly_eval(f, &omega, x_inv);
            let den = poly_eval(f, &deriv, x_inv);
            ops.ext_field += 2 * (omega.len() + deriv.len()) as u64 + 2;
            if den.is_zero() {
                return Err(Error::DecodeFailure(DecodeFailureKind::ChienMismatch));
            }
            Ok(f.neg(f.div(num, den)?))
        })
        .collect()
}
