//! The total complex of a multicomplex, its row filtration and the pages of
//! the associated spectral sequence.
//!
//! Slot `(p, q)` holds `A_{p−q}`, so total degree `n = p + q` meets the rows
//! `q` with `A_{n−2q} ≠ 0`. The operator `Δ_r` sends row `q` to row `q − r`.
//! The filtration `F_s` is spanned by rows `q ≤ −s`; entries of a page are
//! keyed by `(s, n)` and `d^r` goes from `(s, n)` to `(s + r, n − 1)`.
//!
//! Shifting every row by one raises the total degree by two and commutes with
//! `∂`, so the whole spectral sequence is determined by total degrees `0` and
//! `1` together with their neighbours.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::{induced_map, Matrix, Scalar, Subquotient, Subspace};
use crate::multicomplex::Multicomplex;

/// Total degrees whose outgoing differentials are computed.
const SOURCE_DEGREES: [i32; 3] = [0, 1, 2];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Slot {
    pub row: i32,
    /// Degree in `A` of the slot's space.
    pub degree: i32,
    pub offset: usize,
    pub dim: usize,
}

#[derive(Clone, Debug)]
pub struct TotalComplex {
    source: Multicomplex,
}

impl TotalComplex {
    pub fn source(&self) -> &Multicomplex {
        &self.source
    }

    /// Nonzero slots of total degree `n`, by increasing row.
    pub fn slots(&self, n: i32) -> Vec<Slot> {
        let space = self.source.space();
        let (Some(lo), Some(hi)) = (space.min_degree(), space.max_degree()) else {
            return Vec::new();
        };
        let mut out = Vec::new();
        let mut offset = 0;
        for row in (n - hi).div_euclid(2)..=(n - lo).div_euclid(2) + 1 {
            let degree = n - 2 * row;
            let dim = space.dim(degree);
            if dim > 0 {
                out.push(Slot { row, degree, offset, dim });
                offset += dim;
            }
        }
        out
    }

    pub fn dim(&self, n: i32) -> usize {
        self.slots(n).iter().map(|s| s.dim).sum()
    }

    pub fn rows(&self, n: i32) -> Vec<i32> {
        self.slots(n).iter().map(|s| s.row).collect()
    }

    /// `∂ : Tot_n → Tot_{n−1}`.
    pub fn boundary(&self, n: i32) -> Matrix {
        let src = self.slots(n);
        let dst = self.slots(n - 1);
        let mut entries = Vec::new();
        for s in &src {
            for (r, delta) in self.source.deltas().iter().enumerate() {
                let Some(t) = dst.iter().find(|t| t.row == s.row - r as i32) else {
                    continue;
                };
                for (i, j, v) in delta.block(s.degree).entries() {
                    entries.push((t.offset + i, s.offset + j, v.clone()));
                }
            }
        }
        Matrix::from_entries(self.dim(n - 1), self.dim(n), entries)
    }

    /// `F_s` in total degree `n`: the coordinate subspace of rows `q ≤ −s`.
    pub fn filtration(&self, n: i32, s: i32) -> Subspace {
        let total = self.dim(n);
        let columns: Vec<Vec<Scalar>> = self
            .slots(n)
            .iter()
            .filter(|slot| slot.row <= -s)
            .flat_map(|slot| (0..slot.dim).map(move |k| slot.offset + k))
            .map(|idx| unit(total, idx))
            .collect();
        Subspace::span(total, &columns)
    }

    /// The row-`q` component of a vector of `Tot_n`, as a vector of `A_{n−2q}`.
    pub fn row_component(&self, n: i32, row: i32, v: &[Scalar]) -> Vec<Scalar> {
        match self.slots(n).into_iter().find(|s| s.row == row) {
            Some(s) => v[s.offset..s.offset + s.dim].to_vec(),
            None => Vec::new(),
        }
    }

    /// Embeds a vector of `A_{n−2q}` into `Tot_n` at row `q`.
    pub fn embed(&self, n: i32, row: i32, a: &[Scalar]) -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(); self.dim(n)];
        if let Some(s) = self.slots(n).into_iter().find(|s| s.row == row) {
            out[s.offset..s.offset + s.dim].clone_from_slice(a);
        }
        out
    }

    /// `Z^r_s = {x ∈ F_s : ∂x ∈ F_{s+r}}` in total degree `n`.
    pub fn cycles(&self, n: i32, s: i32, r: i32) -> Subspace {
        let f = self.filtration(n, s);
        if f.dim() == 0 {
            return f;
        }
        let target = self.slots(n - 1);
        let escaping: Vec<usize> = target
            .iter()
            .filter(|slot| slot.row > -(s + r))
            .flat_map(|slot| slot.offset..slot.offset + slot.dim)
            .collect();
        let leak = &self.boundary(n).select_rows(&escaping) * f.basis();
        let kernel = leak.kernel();
        Subspace::column_space(&(f.basis() * kernel.basis()))
    }

    /// `E^r_s = Z^r_s / (Z^{r−1}_{s+1} + ∂ Z^{r−1}_{s−r+1})` in total degree `n`.
    pub fn entry(&self, n: i32, s: i32, r: i32) -> Subquotient {
        let numerator = self.cycles(n, s, r);
        let lower = self.cycles(n, s + 1, r - 1);
        let from_above = self.cycles(n + 1, s - r + 1, r - 1);
        let boundaries = Subspace::column_space(&(&self.boundary(n + 1) * from_above.basis()));
        Subquotient::new(numerator, lower.sum(&boundaries)).expect("page denominators lie in the numerator")
    }

    /// Number of rows meeting total degree `n`, plus one.
    pub fn stabilization_bound(&self, n: i32) -> usize {
        self.slots(n).len() + 1
    }

    /// Largest stabilization bound over all total degrees.
    pub fn max_stabilization_bound(&self) -> usize {
        [0, 1].iter().map(|&n| self.stabilization_bound(n)).max().unwrap_or(1)
    }
}

fn unit(len: usize, idx: usize) -> Vec<Scalar> {
    let mut v = vec![Scalar::zero(); len];
    v[idx] = Scalar::one();
    v
}

/// Builds the total complex, checking the multicomplex relations and `∂² = 0`.
pub fn total_complex(m: &Multicomplex) -> Result<TotalComplex> {
    if let Some(n) = m.validate().violated_indices().first() {
        return Err(Error::InvalidMulticomplex { n: *n });
    }
    let t = TotalComplex { source: m.clone() };
    for n in [1, 2] {
        if !(&t.boundary(n - 1) * &t.boundary(n)).is_zero() {
            return Err(Error::InvalidMulticomplex { n: 0 });
        }
    }
    Ok(t)
}

#[derive(Clone, Debug)]
pub struct SpectralPage {
    pub r: usize,
    /// `E^r_s` in total degree `n`, keyed by `(s, n)`.
    pub entries: BTreeMap<(i32, i32), Subquotient>,
    /// `d^r : E^r_{s,n} → E^r_{s+r,n−1}`, keyed by the source.
    pub differentials: BTreeMap<(i32, i32), Matrix>,
}

impl SpectralPage {
    pub fn dim(&self, s: i32, n: i32) -> usize {
        self.entries.get(&(s, n)).map_or(0, Subquotient::dim)
    }

    /// Dimension of `E^r` in total degree `n`, summed over filtration degrees.
    pub fn total_dim(&self, n: i32) -> usize {
        self.entries
            .iter()
            .filter(|((_, m), _)| *m == n)
            .map(|(_, e)| e.dim())
            .sum()
    }

    /// Nonzero dimensions keyed by `(s, n)`.
    pub fn dims(&self) -> BTreeMap<(i32, i32), usize> {
        self.entries
            .iter()
            .filter(|(_, e)| e.dim() > 0)
            .map(|(k, e)| (*k, e.dim()))
            .collect()
    }

    pub fn differential(&self, s: i32, n: i32) -> Matrix {
        self.differentials.get(&(s, n)).cloned().unwrap_or_else(|| {
            Matrix::zeros(self.dim(s + self.r as i32, n - 1), self.dim(s, n))
        })
    }

    pub fn differential_is_zero(&self) -> bool {
        self.differentials.values().all(Matrix::is_zero)
    }

    /// `d^r ∘ d^r = 0` wherever both factors were computed.
    pub fn squares_to_zero(&self) -> bool {
        let r = self.r as i32;
        self.differentials.iter().all(|(&(s, n), d)| match self.differentials.get(&(s + r, n - 1)) {
            Some(next) => (next * d).is_zero(),
            None => true,
        })
    }

    /// Dimension of the homology of `(E^r, d^r)` at `(s, n)`, when both the
    /// incoming and outgoing differential are known.
    pub fn homology_dim(&self, s: i32, n: i32) -> Option<usize> {
        let r = self.r as i32;
        let out = self.differentials.get(&(s, n))?;
        let incoming = self.differentials.get(&(s - r, n + 1))?;
        Some(self.dim(s, n) - out.rank() - incoming.rank())
    }
}

/// The page `E^r` for total degrees `−1 … 2`, with `d^r` out of degrees
/// `0, 1, 2`.
pub fn page(t: &TotalComplex, r: usize) -> SpectralPage {
    let ri = r as i32;
    let mut entries = BTreeMap::new();
    for n in -1..=2 {
        for row in t.rows(n) {
            entries.insert((-row, n), t.entry(n, -row, ri));
        }
    }
    let mut differentials = BTreeMap::new();
    for n in SOURCE_DEGREES {
        let boundary = t.boundary(n);
        for row in t.rows(n) {
            let s = -row;
            let src = &entries[&(s, n)];
            let m = match entries.get(&(s + ri, n - 1)) {
                Some(dst) => induced_map(&boundary, src, dst).expect("∂ induces d^r on every page"),
                None => Matrix::zeros(0, src.dim()),
            };
            differentials.insert((s, n), m);
        }
    }
    SpectralPage { r, entries, differentials }
}

/// Pages `E^0 … E^{r_max}`.
pub fn pages(t: &TotalComplex, r_max: usize) -> Vec<SpectralPage> {
    (0..=r_max).map(|r| page(t, r)).collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegenerationVerdict {
    pub degenerate: bool,
    /// Least `r ≥ 1` with `d^r ≠ 0`.
    pub witness: Option<usize>,
    /// Pages `1 … pages_checked` were examined.
    pub pages_checked: usize,
}

/// `d^r = 0` for every `1 ≤ r ≤ r_stab`.
pub fn degenerates_at_one(t: &TotalComplex) -> DegenerationVerdict {
    let bound = t.max_stabilization_bound();
    for r in 1..=bound {
        if !page(t, r).differential_is_zero() {
            return DegenerationVerdict { degenerate: false, witness: Some(r), pages_checked: r };
        }
    }
    DegenerationVerdict { degenerate: true, witness: None, pages_checked: bound }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graded::{homology, GradedMap, GradedVectorSpace};

    fn map(a: &GradedVectorSpace, degree: i32, blocks: &[(i32, usize, usize, &[i64])]) -> GradedMap {
        GradedMap::from_blocks(
            a,
            a,
            degree,
            blocks.iter().map(|&(k, r, c, v)| (k, Matrix::from_i64(r, c, v))),
        )
        .unwrap()
    }

    #[test]
    fn zero_multicomplex_has_no_slots() {
        let m = Multicomplex::zero(&GradedVectorSpace::zero());
        let t = total_complex(&m).unwrap();
        assert_eq!(t.dim(0), 0);
        assert!(degenerates_at_one(&t).degenerate);
    }

    #[test]
    fn line_slots() {
        let a = GradedVectorSpace::new([(0, 1), (1, 1)]);
        let m = Multicomplex::trivial(map(&a, -1, &[(1, 1, 1, &[1])])).unwrap();
        let t = total_complex(&m).unwrap();
        for n in -3..4 {
            let slots = t.slots(n);
            assert_eq!(slots.len(), 1);
            assert_eq!(slots[0].degree, n.rem_euclid(2));
        }
        let e1 = page(&t, 1);
        assert!(e1.dims().is_empty());
    }

    #[test]
    fn e1_is_homology_along_rows() {
        let a = GradedVectorSpace::new([(0, 2), (1, 1), (2, 1)]);
        let d = map(&a, -1, &[(1, 2, 1, &[1, 1])]);
        let h = homology(&d).unwrap();
        let t = total_complex(&Multicomplex::trivial(d).unwrap()).unwrap();
        let e1 = page(&t, 1);
        for n in -1..=2 {
            let expected: usize = t.slots(n).iter().map(|s| h.dim(s.degree)).sum();
            assert_eq!(e1.total_dim(n), expected);
        }
        assert!(degenerates_at_one(&t).degenerate);
    }

    #[test]
    fn pure_operator_does_not_degenerate() {
        let a = GradedVectorSpace::new([(0, 1), (1, 1)]);
        let delta = map(&a, 1, &[(0, 1, 1, &[1])]);
        let m = Multicomplex::new(a.clone(), vec![GradedMap::zero(&a, &a, -1), delta]).unwrap();
        let t = total_complex(&m).unwrap();
        let v = degenerates_at_one(&t);
        assert_eq!(v, DegenerationVerdict { degenerate: false, witness: Some(1), pages_checked: 1 });
        let e1 = page(&t, 1);
        let e2 = page(&t, 2);
        assert_ne!(e1.total_dim(0), e2.total_dim(0));
        assert_eq!(e2.total_dim(0), 0);
    }

    #[test]
    fn invalid_multicomplex_rejected() {
        let a = GradedVectorSpace::new([(0, 1), (1, 1)]);
        let delta = map(&a, 1, &[(0, 1, 1, &[1])]);
        let d = map(&a, -1, &[(1, 1, 1, &[1])]);
        // dΔ + Δd = 2 id ≠ 0.
        let m = Multicomplex::new(a, vec![d, delta]).unwrap();
        assert!(matches!(total_complex(&m), Err(Error::InvalidMulticomplex { n: 1 })));
    }

    #[test]
    fn second_page_differential() {
        // Δu = dy and Δy = v, so d¹ = 0 and d² ≠ 0 from u to v.
        let a = GradedVectorSpace::new([(0, 1), (1, 1), (2, 1), (3, 1)]);
        // basis: u (0), t (1), y (2), v (3); dy = t, Δu = t, Δy = v.
        let d = map(&a, -1, &[(2, 1, 1, &[1])]);
        let delta = map(&a, 1, &[(0, 1, 1, &[1]), (2, 1, 1, &[1])]);
        let m = Multicomplex::new(a, vec![d, delta]).unwrap();
        assert!(m.validate().is_valid());
        let t = total_complex(&m).unwrap();
        let e1 = page(&t, 1);
        assert!(e1.differential_is_zero());
        let e2 = page(&t, 2);
        assert!(!e2.differential_is_zero());
        assert!(e2.squares_to_zero());
        let v = degenerates_at_one(&t);
        assert_eq!(v.witness, Some(2));
    }
}
