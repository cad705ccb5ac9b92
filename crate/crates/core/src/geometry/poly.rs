//! Polynomial differential forms `Σ c x^α dx_I` and polyvector fields
//! `Σ c x^α ∂_J` on `ℝᵐ`, without truncation.
//!
//! Index sets are bitmasks over variables `0..m`; `dx_I` and `∂_J` are ordered
//! by increasing index.

use std::collections::BTreeMap;
use std::fmt;
use std::marker::PhantomData;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::{int, Scalar};

pub type Exponent = Vec<u32>;
pub type Mask = u32;

/// `(−1)^{#{(i, j) : i ∈ a, j ∈ b, i > j}}`, the sign of `e_a ∧ e_b = ± e_{a∪b}`;
/// `None` when the sets overlap.
pub fn wedge_sign(a: Mask, b: Mask) -> Option<i64> {
    if a & b != 0 {
        return None;
    }
    let mut swaps = 0;
    let mut rest = b;
    while rest != 0 {
        let j = rest.trailing_zeros();
        swaps += (a >> (j + 1)).count_ones();
        rest &= rest - 1;
    }
    Some(if swaps % 2 == 0 { 1 } else { -1 })
}

/// Number of elements of `mask` below `j`.
pub fn below(mask: Mask, j: usize) -> u32 {
    (mask & ((1u32 << j) - 1)).count_ones()
}

/// Number of elements of `mask` above `j`.
pub fn above(mask: Mask, j: usize) -> u32 {
    (mask >> (j + 1)).count_ones()
}

pub fn indices(mask: Mask) -> Vec<usize> {
    (0..32).filter(|&j| mask & (1 << j) != 0).collect()
}

pub fn mask_of(indices: &[usize]) -> Mask {
    indices.iter().fold(0, |m, &j| m | (1 << j))
}

fn sign(s: i64) -> Scalar {
    int(s)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FormKind;
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VectorKind;

/// Sparse super-polynomial in commuting `x` and anticommuting generators.
pub struct ExteriorPoly<K> {
    m: usize,
    terms: BTreeMap<(Exponent, Mask), Scalar>,
    kind: PhantomData<K>,
}

impl<K> Clone for ExteriorPoly<K> {
    fn clone(&self) -> Self {
        ExteriorPoly { m: self.m, terms: self.terms.clone(), kind: PhantomData }
    }
}

impl<K> PartialEq for ExteriorPoly<K> {
    fn eq(&self, other: &Self) -> bool {
        self.m == other.m && self.terms == other.terms
    }
}

impl<K> Eq for ExteriorPoly<K> {}

impl<K> std::hash::Hash for ExteriorPoly<K> {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.m.hash(state);
        self.terms.hash(state);
    }
}

pub type PolyForm = ExteriorPoly<FormKind>;
pub type PolyVector = ExteriorPoly<VectorKind>;

impl<K> ExteriorPoly<K> {
    pub fn zero(m: usize) -> Self {
        assert!(m <= 16, "at most 16 variables");
        ExteriorPoly { m, terms: BTreeMap::new(), kind: PhantomData }
    }

    /// `c · x^α e_I` with `I` given as 0-based indices in any order; the sign
    /// of sorting them is applied.
    pub fn monomial(m: usize, c: Scalar, exponent: &[u32], idx: &[usize]) -> Self {
        assert_eq!(exponent.len(), m, "exponent length must equal the dimension");
        let mut out = Self::zero(m);
        let mut mask = 0;
        let mut s = 1;
        for &j in idx {
            assert!(j < m, "index {j} out of range");
            match wedge_sign(mask, 1 << j) {
                Some(t) => s *= t,
                None => return out,
            }
            mask |= 1 << j;
        }
        out.insert(exponent.to_vec(), mask, c * sign(s));
        out
    }

    /// `x^α e_I` with unit coefficient and sorted `I`.
    pub fn basis(m: usize, exponent: &[u32], mask: Mask) -> Self {
        let mut out = Self::zero(m);
        out.insert(exponent.to_vec(), mask, Scalar::one());
        out
    }

    pub fn constant(m: usize, c: Scalar) -> Self {
        Self::monomial(m, c, &vec![0; m], &[])
    }

    /// The generator `e_j` (0-based).
    pub fn generator(m: usize, j: usize) -> Self {
        Self::monomial(m, Scalar::one(), &vec![0; m], &[j])
    }

    /// The coordinate function `x_j` (0-based).
    pub fn coordinate(m: usize, j: usize) -> Self {
        let mut e = vec![0; m];
        e[j] = 1;
        Self::monomial(m, Scalar::one(), &e, &[])
    }

    pub fn dim(&self) -> usize {
        self.m
    }

    pub fn terms(&self) -> &BTreeMap<(Exponent, Mask), Scalar> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub(crate) fn insert(&mut self, exponent: Exponent, mask: Mask, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let key = (exponent, mask);
        let sum = match self.terms.remove(&key) {
            Some(old) => old + c,
            None => c,
        };
        if !sum.is_zero() {
            self.terms.insert(key, sum);
        }
    }

    fn check(&self, other: &Self) {
        assert_eq!(self.m, other.m, "operands live on different dimensions");
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check(other);
        let mut out = self.clone();
        for ((e, mask), c) in &other.terms {
            out.insert(e.clone(), *mask, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        let mut out = Self::zero(self.m);
        for ((e, mask), c) in &self.terms {
            out.insert(e.clone(), *mask, c * s);
        }
        out
    }

    pub fn neg(&self) -> Self {
        self.scale(&-Scalar::one())
    }

    /// Product of super-polynomials: `x` commute, generators anticommute.
    pub fn wedge(&self, other: &Self) -> Self {
        self.check(other);
        let mut out = Self::zero(self.m);
        for ((ea, ma), ca) in &self.terms {
            for ((eb, mb), cb) in &other.terms {
                if let Some(s) = wedge_sign(*ma, *mb) {
                    let e: Exponent = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                    out.insert(e, ma | mb, ca * cb * sign(s));
                }
            }
        }
        out
    }

    /// `Some(k)` if every term has exactly `k` generators.
    pub fn degree(&self) -> Option<usize> {
        let mut degrees = self.terms.keys().map(|(_, mask)| mask.count_ones() as usize);
        let first = degrees.next()?;
        degrees.all(|k| k == first).then_some(first)
    }

    /// Homogeneous degree, treating zero as homogeneous of `default`.
    pub fn degree_or(&self, default: usize) -> Result<usize> {
        if self.is_zero() {
            return Ok(default);
        }
        self.degree().ok_or(Error::Inhomogeneous)
    }

    /// Largest `|α|` among the terms.
    pub fn coefficient_degree(&self) -> u32 {
        self.terms.keys().map(|(e, _)| e.iter().sum::<u32>()).max().unwrap_or(0)
    }

    /// Components of fixed generator degree.
    pub fn homogeneous_parts(&self) -> BTreeMap<usize, Self> {
        let mut parts: BTreeMap<usize, Self> = BTreeMap::new();
        for ((e, mask), c) in &self.terms {
            parts
                .entry(mask.count_ones() as usize)
                .or_insert_with(|| Self::zero(self.m))
                .insert(e.clone(), *mask, c.clone());
        }
        parts
    }

    /// `∂/∂x_i` of the coefficients.
    pub fn partial(&self, i: usize) -> Self {
        let mut out = Self::zero(self.m);
        for ((e, mask), c) in &self.terms {
            if e[i] > 0 {
                let mut f = e.clone();
                f[i] -= 1;
                out.insert(f, *mask, c * int(e[i] as i64));
            }
        }
        out
    }

    /// Right derivative by the generator `e_i`: move `e_i` to the right end
    /// and delete it.
    pub fn right_derivative(&self, i: usize) -> Self {
        let mut out = Self::zero(self.m);
        for ((e, mask), c) in &self.terms {
            if mask & (1 << i) != 0 {
                let s = if above(*mask, i) % 2 == 0 { 1 } else { -1 };
                out.insert(e.clone(), mask & !(1 << i), c * sign(s));
            }
        }
        out
    }

    /// Left derivative by the generator `e_j`: move `e_j` to the left end and
    /// delete it.
    pub fn left_derivative(&self, j: usize) -> Self {
        let mut out = Self::zero(self.m);
        for ((e, mask), c) in &self.terms {
            if mask & (1 << j) != 0 {
                let s = if below(*mask, j) % 2 == 0 { 1 } else { -1 };
                out.insert(e.clone(), mask & !(1 << j), c * sign(s));
            }
        }
        out
    }

    fn fmt_with(&self, f: &mut fmt::Formatter<'_>, generator: &str) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (pos, ((e, mask), c)) in self.terms.iter().enumerate() {
            let negative = c < &Scalar::zero();
            match (pos, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let mut factors = Vec::new();
            let magnitude = if negative { -c.clone() } else { c.clone() };
            if !magnitude.is_one() {
                factors.push(magnitude.to_string());
            }
            for (i, &p) in e.iter().enumerate() {
                match p {
                    0 => {}
                    1 => factors.push(format!("x{}", i + 1)),
                    _ => factors.push(format!("x{}^{}", i + 1, p)),
                }
            }
            let wedge: Vec<String> = indices(*mask).iter().map(|j| format!("{generator}{}", j + 1)).collect();
            if !wedge.is_empty() {
                factors.push(wedge.join("∧"));
            }
            if factors.is_empty() {
                factors.push("1".into());
            }
            f.write_str(&factors.join(" "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for PolyForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_with(f, "dx")
    }
}

impl fmt::Display for PolyForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_with(f, "dx")
    }
}

impl fmt::Debug for PolyVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_with(f, "∂")
    }
}

impl fmt::Display for PolyVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_with(f, "∂")
    }
}

/// Order in which the single contractions of `∂_{j₁}∧⋯∧∂_{j_k}` are composed.
///
/// Only `LeftFirst` satisfies `i([P,Q]) = −[[i(Q), d], i(P)]` with the
/// bracket of [`PolyVector::schouten`]; `RightFirst` is kept as a negative
/// control.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum ContractionOrder {
    /// `i(∂_{j_k}) ∘ ⋯ ∘ i(∂_{j₁})`: `∂_{j₁}` acts first, so
    /// `i(∂₁∧∂₂)(dx₁∧dx₂) = 1`.
    #[default]
    LeftFirst,
    /// `i(∂_{j₁}) ∘ ⋯ ∘ i(∂_{j_k})`.
    RightFirst,
}

impl PolyForm {
    /// De Rham differential `d(x^α dx_I) = Σ_j α_j x^{α−e_j} dx_j ∧ dx_I`.
    pub fn d(&self) -> PolyForm {
        let mut out = PolyForm::zero(self.m);
        for ((e, mask), c) in &self.terms {
            for j in 0..self.m {
                if e[j] == 0 {
                    continue;
                }
                if let Some(s) = wedge_sign(1 << j, *mask) {
                    let mut f = e.clone();
                    f[j] -= 1;
                    out.insert(f, mask | (1 << j), c * int(e[j] as i64 * s));
                }
            }
        }
        out
    }

    /// `|α| + |I|` of every term, or `None` for zero.
    pub fn max_weight(&self) -> Option<u32> {
        self.terms
            .keys()
            .map(|(e, mask)| e.iter().sum::<u32>() + mask.count_ones())
            .max()
    }

    /// Contraction `i(P)`, extended linearly over the coefficients of `P`.
    pub fn contract(&self, p: &PolyVector, order: ContractionOrder) -> PolyForm {
        assert_eq!(self.m, p.m, "operands live on different dimensions");
        let mut out = PolyForm::zero(self.m);
        for ((eb, jmask), cb) in &p.terms {
            let mut ids = indices(*jmask);
            if order == ContractionOrder::RightFirst {
                ids.reverse();
            }
            let mut current = self.clone();
            for j in ids {
                current = current.left_derivative(j);
            }
            for ((ea, imask), ca) in current.terms {
                let e: Exponent = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.insert(e, imask, ca * cb);
            }
        }
        out
    }
}

impl PolyVector {
    /// Schouten–Nijenhuis bracket
    /// `[P, Q] = Σ_i (P ∂⃖_{θ_i})(∂_{x_i} Q) − (−1)^{(p−1)(q−1)} (Q ∂⃖_{θ_i})(∂_{x_i} P)`
    /// on homogeneous parts, extended bilinearly.
    pub fn schouten(&self, other: &PolyVector) -> PolyVector {
        assert_eq!(self.m, other.m, "operands live on different dimensions");
        let mut out = PolyVector::zero(self.m);
        for (p, pp) in self.homogeneous_parts() {
            for (q, qq) in other.homogeneous_parts() {
                let s = if (p + 1) * (q + 1) % 2 == 0 { 1 } else { -1 };
                for i in 0..self.m {
                    let a = pp.right_derivative(i).wedge(&qq.partial(i));
                    let b = qq.right_derivative(i).wedge(&pp.partial(i));
                    out = out.add(&a).sub(&b.scale(&int(s)));
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rational;

    fn vf(m: usize, c: i64, e: &[u32], idx: &[usize]) -> PolyVector {
        PolyVector::monomial(m, int(c), e, idx)
    }

    #[test]
    fn wedge_signs() {
        assert_eq!(wedge_sign(0b01, 0b10), Some(1));
        assert_eq!(wedge_sign(0b10, 0b01), Some(-1));
        assert_eq!(wedge_sign(0b110, 0b001), Some(1));
        assert_eq!(wedge_sign(0b01, 0b01), None);
    }

    #[test]
    fn d_of_simple_forms() {
        let m = 2;
        assert!(PolyForm::constant(m, int(1)).d().is_zero());
        let x1dx2 = PolyForm::monomial(m, int(1), &[1, 0], &[1]);
        assert_eq!(x1dx2.d(), PolyForm::monomial(m, int(1), &[0, 0], &[0, 1]));
    }

    #[test]
    fn d_squares_to_zero_on_basis() {
        let m = 3;
        for a in 0..=3u32 {
            for b in 0..=3 - a {
                for c in 0..=3 - a - b {
                    for mask in 0..8 {
                        let f = PolyForm::basis(m, &[a, b, c], mask);
                        assert!(f.d().d().is_zero());
                    }
                }
            }
        }
    }

    #[test]
    fn single_contractions() {
        let m = 3;
        let dx1 = PolyForm::generator(m, 0);
        assert_eq!(dx1.contract(&vf(m, 1, &[0, 0, 0], &[0]), ContractionOrder::LeftFirst), PolyForm::constant(m, int(1)));
        let dx3 = PolyForm::generator(m, 2);
        assert!(dx3.contract(&vf(m, 1, &[0, 0, 0], &[0, 1]), ContractionOrder::LeftFirst).is_zero());
        let dx12 = PolyForm::monomial(m, int(1), &[0, 0, 0], &[0, 1]);
        let p = vf(m, 1, &[0, 0, 0], &[0, 1]);
        let left = dx12.contract(&p, ContractionOrder::LeftFirst);
        let right = dx12.contract(&p, ContractionOrder::RightFirst);
        assert_eq!(left, PolyForm::constant(m, int(1)));
        assert_eq!(right, left.neg());
    }

    #[test]
    fn vector_contraction_is_odd_derivation() {
        let m = 3;
        let x = vf(m, 2, &[1, 0, 0], &[1]).add(&vf(m, -1, &[0, 0, 1], &[2]));
        let a = PolyForm::monomial(m, int(1), &[0, 1, 0], &[0, 1]);
        let b = PolyForm::monomial(m, rational(1, 2), &[1, 0, 0], &[2]);
        let lhs = a.wedge(&b).contract(&x, ContractionOrder::LeftFirst);
        let rhs = a
            .contract(&x, ContractionOrder::LeftFirst)
            .wedge(&b)
            .add(&a.wedge(&b.contract(&x, ContractionOrder::LeftFirst)));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn schouten_of_vector_fields_is_lie_bracket() {
        let m = 2;
        let d1 = vf(m, 1, &[0, 0], &[0]);
        let d2 = vf(m, 1, &[0, 0], &[1]);
        assert!(d1.schouten(&d2).is_zero());
        let x1d2 = vf(m, 1, &[1, 0], &[1]);
        assert_eq!(d1.schouten(&x1d2), d2);
    }

    #[test]
    fn so3_bracket_vanishes() {
        let m = 3;
        let w = vf(m, 1, &[0, 0, 1], &[0, 1])
            .add(&vf(m, 1, &[1, 0, 0], &[1, 2]))
            .add(&vf(m, 1, &[0, 1, 0], &[2, 0]));
        assert!(w.schouten(&w).is_zero());
    }

    #[test]
    fn unsorted_indices_pick_up_signs() {
        let m = 3;
        assert_eq!(vf(m, 1, &[0, 0, 0], &[2, 0]), vf(m, -1, &[0, 0, 0], &[0, 2]));
        assert!(vf(m, 1, &[0, 0, 0], &[1, 1]).is_zero());
    }

    #[test]
    fn display() {
        let m = 3;
        let w = vf(m, -1, &[0, 0, 0], &[0, 1]).add(&vf(m, 1, &[0, 1, 0], &[1, 2]));
        assert_eq!(w.to_string(), "-∂1∧∂2 + x2 ∂2∧∂3");
        let f = PolyForm::monomial(m, crate::linalg::rational(-3, 2), &[2, 0, 0], &[0]);
        assert_eq!(f.to_string(), "-3/2 x1^2 dx1");
        assert_eq!(PolyForm::constant(m, int(1)).to_string(), "1");
        assert_eq!(PolyForm::zero(m).to_string(), "0");
    }
}
