//! Symbolic operators on polynomial forms and their matrices on the
//! weight-truncated form algebra.

use std::collections::HashMap;

use num_traits::One;

use crate::error::{Error, Result};
use crate::graded::{GradedMap, GradedVectorSpace};
use crate::linalg::{int, Matrix, Scalar};

use super::poly::{indices, ContractionOrder, Exponent, Mask, PolyForm, PolyVector};

/// An operator on polynomial forms, built from `d`, contractions and left
/// wedge multiplications.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FormOp {
    Exterior,
    /// Contraction with a polyvector of the stated degree.
    Contract(PolyVector, usize, ContractionOrder),
    Multiply(PolyForm),
    /// `[A, B, C]` means `A ∘ B ∘ C`.
    Compose(Vec<FormOp>),
    Sum(Vec<(Scalar, FormOp)>),
}

impl FormOp {
    pub fn d() -> Self {
        FormOp::Exterior
    }

    /// `i(p)` for homogeneous `p`; a zero `p` has degree 0, see
    /// [`FormOp::contraction_of_degree`].
    pub fn contraction(p: &PolyVector) -> Self {
        Self::contraction_with(p, ContractionOrder::LeftFirst)
    }

    pub fn contraction_with(p: &PolyVector, order: ContractionOrder) -> Self {
        FormOp::Contract(p.clone(), p.degree().unwrap_or(0), order)
    }

    /// `i(p)` with `p` read as a polyvector of degree `k`, which matters
    /// when `p` is zero.
    pub fn contraction_of_degree(p: &PolyVector, k: usize) -> Result<Self> {
        if p.degree_or(k)? != k {
            return Err(Error::DegreeMismatch { expected: k as i32, found: p.degree().unwrap_or(0) as i32 });
        }
        Ok(FormOp::Contract(p.clone(), k, ContractionOrder::LeftFirst))
    }

    pub fn multiply(f: &PolyForm) -> Self {
        FormOp::Multiply(f.clone())
    }

    pub fn compose(ops: &[&FormOp]) -> Self {
        FormOp::Compose(ops.iter().map(|&o| o.clone()).collect())
    }

    pub fn then(&self, inner: &FormOp) -> Self {
        FormOp::compose(&[self, inner])
    }

    pub fn plus(&self, other: &FormOp) -> Self {
        FormOp::Sum(vec![(Scalar::one(), self.clone()), (Scalar::one(), other.clone())])
    }

    pub fn minus(&self, other: &FormOp) -> Self {
        FormOp::Sum(vec![(Scalar::one(), self.clone()), (-Scalar::one(), other.clone())])
    }

    pub fn scaled(&self, s: &Scalar) -> Self {
        FormOp::Sum(vec![(s.clone(), self.clone())])
    }

    /// Graded commutator `[A, B] = AB − (−1)^{|A||B|} BA`.
    pub fn commutator(a: &FormOp, b: &FormOp) -> Result<FormOp> {
        let s = if (a.form_degree()? * b.form_degree()?) % 2 == 0 { -1 } else { 1 };
        Ok(FormOp::Sum(vec![
            (Scalar::one(), a.then(b)),
            (int(s), b.then(a)),
        ]))
    }

    /// Change of form degree; an error for inhomogeneous operators.
    pub fn form_degree(&self) -> Result<i32> {
        match self {
            FormOp::Exterior => Ok(1),
            FormOp::Contract(_, k, _) => Ok(-(*k as i32)),
            FormOp::Multiply(f) => Ok(f.degree_or(0)? as i32),
            FormOp::Compose(ops) => ops.iter().map(FormOp::form_degree).sum(),
            FormOp::Sum(terms) => {
                let mut degree = None;
                for (_, op) in terms {
                    let k = op.form_degree()?;
                    if degree.is_some_and(|d| d != k) {
                        return Err(Error::Inhomogeneous);
                    }
                    degree = Some(k);
                }
                Ok(degree.unwrap_or(0))
            }
        }
    }

    /// Bound on the number of `x`-derivatives taken.
    pub fn x_order(&self) -> usize {
        match self {
            FormOp::Exterior => 1,
            FormOp::Contract(..) | FormOp::Multiply(_) => 0,
            FormOp::Compose(ops) => ops.iter().map(FormOp::x_order).sum(),
            FormOp::Sum(terms) => terms.iter().map(|(_, o)| o.x_order()).max().unwrap_or(0),
        }
    }

    pub fn apply(&self, f: &PolyForm) -> PolyForm {
        match self {
            FormOp::Exterior => f.d(),
            FormOp::Contract(p, _, order) => f.contract(p, *order),
            FormOp::Multiply(g) => g.wedge(f),
            FormOp::Compose(ops) => ops.iter().rev().fold(f.clone(), |acc, op| op.apply(&acc)),
            FormOp::Sum(terms) => terms
                .iter()
                .fold(PolyForm::zero(f.dim()), |acc, (s, op)| acc.add(&op.apply(f).scale(s))),
        }
    }
}

/// All `x^α dx_I` with `|α| ≤ max_degree`, every `I`.
pub fn window_basis(m: usize, max_degree: u32) -> Vec<PolyForm> {
    let mut out = Vec::new();
    for e in exponents(m, max_degree) {
        for mask in 0..(1u32 << m) {
            out.push(PolyForm::basis(m, &e, mask));
        }
    }
    out
}

/// Exponent vectors of length `m` with total degree at most `max`, by
/// increasing total degree then lexicographically.
pub fn exponents(m: usize, max: u32) -> Vec<Exponent> {
    fn rec(m: usize, remaining: u32, prefix: &mut Vec<u32>, out: &mut Vec<Exponent>) {
        if prefix.len() == m {
            out.push(prefix.clone());
            return;
        }
        for k in 0..=remaining {
            prefix.push(k);
            rec(m, remaining - k, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(m, max, &mut Vec::new(), &mut out);
    out.sort_by(|a, b| a.iter().sum::<u32>().cmp(&b.iter().sum::<u32>()).then_with(|| b.cmp(a)));
    out
}

/// True iff `op` kills every basis form in the window.
pub fn vanishes_on_window(op: &FormOp, m: usize, window: u32) -> bool {
    window_basis(m, window).iter().all(|f| op.apply(f).is_zero())
}

/// Differential-operator order `≤ k` with respect to left multiplication by
/// the generators `x₁ … x_m, dx₁ … dx_m`.
///
/// The nested commutators `[[P, L_{a₁}], …, L_{a_{k+1}}]` must all vanish.
/// The `L_a` graded-commute, so by the graded Jacobi identity only
/// nondecreasing sequences of generators need checking. Each nested commutator
/// takes at most `x_order(P)` derivatives, so it is zero iff it vanishes on
/// forms with coefficients of that degree.
pub fn operator_order(op: &FormOp, k: i32, m: usize) -> Result<bool> {
    op.form_degree()?;
    let window = op.x_order() as u32;
    if k < 0 {
        return Ok(vanishes_on_window(op, m, window));
    }
    let generators: Vec<FormOp> = (0..m)
        .map(|j| FormOp::multiply(&PolyForm::coordinate(m, j)))
        .chain((0..m).map(|j| FormOp::multiply(&PolyForm::generator(m, j))))
        .collect();
    fn rec(op: &FormOp, depth: usize, start: usize, generators: &[FormOp], m: usize, window: u32) -> Result<bool> {
        if depth == 0 {
            return Ok(vanishes_on_window(op, m, window));
        }
        for (g, generator) in generators.iter().enumerate().skip(start) {
            let next = FormOp::commutator(op, generator)?;
            if !rec(&next, depth - 1, g, generators, m, window)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
    rec(op, k as usize + 1, 0, &generators, m, window)
}

/// Least `k ≥ −1` with order `≤ k`, searching up to `max`.
pub fn exact_order(op: &FormOp, m: usize, max: i32) -> Result<Option<i32>> {
    for k in -1..=max {
        if operator_order(op, k, m)? {
            return Ok(Some(k));
        }
    }
    Ok(None)
}

/// Checks `i([P, Q]) = −[[i(Q), d], i(P)]` on every `x^α dx_I` with
/// `|α| ≤ window`. Both sides take at most one derivative of the
/// coefficients, so a window of at least 1 determines them.
pub fn check_contraction_identity(
    p: &PolyVector,
    q: &PolyVector,
    window: u32,
    order: ContractionOrder,
) -> Result<bool> {
    if window < 1 {
        return Err(Error::WindowTooSmall { window: window as usize, required: 1 });
    }
    let ip = FormOp::contraction_with(p, order);
    let iq = FormOp::contraction_with(q, order);
    let lhs = FormOp::contraction_with(&p.schouten(q), order);
    let inner = FormOp::commutator(&iq, &FormOp::d())?;
    let rhs = FormOp::commutator(&inner, &ip)?.scaled(&-Scalar::one());
    let diff = lhs.minus(&rhs);
    Ok(vanishes_on_window(&diff, p.dim(), window))
}

/// Forms `x^α dx_I` with weight `|α| + |I| ≤ D`, graded by homological degree
/// `−|I|`. This subspace is preserved by `d` and by contraction with any
/// polyvector whose terms `x^β ∂_J` satisfy `|β| ≤ |J|`.
#[derive(Clone, Debug)]
pub struct FormAlgebra {
    m: usize,
    truncation: u32,
    /// Basis per form degree `k`.
    basis: Vec<Vec<(Exponent, Mask)>>,
    index: HashMap<(Exponent, Mask), (usize, usize)>,
    space: GradedVectorSpace,
}

impl FormAlgebra {
    pub fn new(m: usize, truncation: u32) -> Self {
        assert!(m <= 16, "at most 16 variables");
        let mut basis = vec![Vec::new(); m + 1];
        for mask in 0..(1u32 << m) {
            let k = mask.count_ones() as usize;
            if k as u32 > truncation {
                continue;
            }
            for e in exponents(m, truncation - k as u32) {
                basis[k].push((e, mask));
            }
        }
        for b in &mut basis {
            b.sort_by(|(ea, ma), (eb, mb)| {
                ma.cmp(mb)
                    .then_with(|| ea.iter().sum::<u32>().cmp(&eb.iter().sum::<u32>()))
                    .then_with(|| eb.cmp(ea))
            });
        }
        let mut index = HashMap::new();
        for (k, b) in basis.iter().enumerate() {
            for (pos, key) in b.iter().enumerate() {
                index.insert(key.clone(), (k, pos));
            }
        }
        let space = GradedVectorSpace::new(basis.iter().enumerate().map(|(k, b)| (-(k as i32), b.len())));
        FormAlgebra { m, truncation, basis, index, space }
    }

    pub fn dim(&self) -> usize {
        self.m
    }

    pub fn truncation(&self) -> u32 {
        self.truncation
    }

    /// Exported graded space: `Ωᵏ` in homological degree `−k`.
    pub fn space(&self) -> &GradedVectorSpace {
        &self.space
    }

    pub fn basis(&self, form_degree: usize) -> &[(Exponent, Mask)] {
        self.basis.get(form_degree).map_or(&[], Vec::as_slice)
    }

    pub fn basis_form(&self, form_degree: usize, pos: usize) -> PolyForm {
        let (e, mask) = &self.basis[form_degree][pos];
        PolyForm::basis(self.m, e, *mask)
    }

    pub fn contains(&self, f: &PolyForm) -> bool {
        f.terms().keys().all(|key| self.index.contains_key(key))
    }

    /// Coordinates of a form of degree `k`; `TruncationEscape` if it leaves
    /// the truncation.
    pub fn coordinates(&self, f: &PolyForm, form_degree: usize) -> Result<Vec<Scalar>> {
        let mut v = vec![Scalar::default(); self.basis(form_degree).len()];
        for (key, c) in f.terms() {
            match self.index.get(key) {
                Some(&(k, pos)) if k == form_degree => v[pos] = c.clone(),
                _ => return Err(Error::TruncationEscape { element: f.to_string() }),
            }
        }
        Ok(v)
    }

    /// The form with the given coordinates in degree `k`.
    pub fn form(&self, form_degree: usize, coords: &[Scalar]) -> PolyForm {
        let mut out = PolyForm::zero(self.m);
        for ((e, mask), c) in self.basis(form_degree).iter().zip(coords) {
            out.insert(e.clone(), *mask, c.clone());
        }
        out
    }

    /// Matrix of `op` as a graded map of homological degree `−form_degree(op)`.
    pub fn matrix_of(&self, op: &FormOp) -> Result<GradedMap> {
        let shift = op.form_degree()?;
        let mut blocks = Vec::new();
        for (k, basis) in self.basis.iter().enumerate() {
            let target = k as i32 + shift;
            if basis.is_empty() {
                continue;
            }
            let rows = if target < 0 { 0 } else { self.basis(target as usize).len() };
            let mut entries = Vec::new();
            for (col, (e, mask)) in basis.iter().enumerate() {
                let image = op.apply(&PolyForm::basis(self.m, e, *mask));
                if image.is_zero() {
                    continue;
                }
                let coords = self.coordinates(&image, target.max(0) as usize)?;
                if rows == 0 {
                    return Err(Error::TruncationEscape { element: image.to_string() });
                }
                entries.extend(coords.into_iter().enumerate().map(|(row, c)| (row, col, c)));
            }
            blocks.push((-(k as i32), Matrix::from_entries(rows, basis.len(), entries)));
        }
        GradedMap::from_blocks(&self.space, &self.space, -shift, blocks)
    }
}

/// `#{I : |I| = k}`-weighted count `C(m, k) · #{α : |α| ≤ D − k}` of the
/// exported dimension in homological degree `−k`.
pub fn expected_dimension(m: usize, truncation: u32, k: usize) -> usize {
    if k as u32 > truncation || k > m {
        return 0;
    }
    let binom = |n: usize, r: usize| -> usize { (0..r).fold(1, |acc, i| acc * (n - i) / (i + 1)) };
    binom(m, k) * binom(m + (truncation as usize - k), m)
}

/// Indices `I` of a mask, 1-based, for reports.
pub fn one_based(mask: Mask) -> Vec<usize> {
    indices(mask).into_iter().map(|j| j + 1).collect()
}
