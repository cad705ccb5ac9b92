//! Finitely supported ℤ-graded vector spaces and degree-homogeneous maps.
//!
//! Gradings are homological: differentials have degree −1.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::{Matrix, Scalar};

#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct GradedVectorSpace {
    dims: BTreeMap<i32, usize>,
}

impl fmt::Debug for GradedVectorSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.dims.iter()).finish()
    }
}

impl GradedVectorSpace {
    pub fn new(dims: impl IntoIterator<Item = (i32, usize)>) -> Self {
        let mut out = BTreeMap::new();
        for (k, n) in dims {
            if n > 0 {
                *out.entry(k).or_insert(0) += n;
            }
        }
        GradedVectorSpace { dims: out }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn dim(&self, degree: i32) -> usize {
        self.dims.get(&degree).copied().unwrap_or(0)
    }

    pub fn dims(&self) -> &BTreeMap<i32, usize> {
        &self.dims
    }

    pub fn degrees(&self) -> impl Iterator<Item = i32> + '_ {
        self.dims.keys().copied()
    }

    pub fn is_zero(&self) -> bool {
        self.dims.is_empty()
    }

    pub fn total_dim(&self) -> usize {
        self.dims.values().sum()
    }

    pub fn min_degree(&self) -> Option<i32> {
        self.dims.keys().next().copied()
    }

    pub fn max_degree(&self) -> Option<i32> {
        self.dims.keys().next_back().copied()
    }

    /// `max degree − min degree`, or 0 for the zero space.
    pub fn width(&self) -> i32 {
        match (self.min_degree(), self.max_degree()) {
            (Some(lo), Some(hi)) => hi - lo,
            _ => 0,
        }
    }

    /// Degreewise direct sum; coordinates of `self` come first.
    pub fn direct_sum(&self, other: &Self) -> Self {
        Self::new(self.dims.iter().chain(other.dims.iter()).map(|(&k, &n)| (k, n)))
    }

    /// Σ (−1)ᵏ dim Aₖ.
    pub fn euler_characteristic(&self) -> i64 {
        self.dims
            .iter()
            .map(|(&k, &n)| if k.rem_euclid(2) == 0 { n as i64 } else { -(n as i64) })
            .sum()
    }
}

/// Largest `n ≥ 0` such that a map of degree `2n + shift` from `source` to
/// `target` can be nonzero, or `None` when every such map vanishes.
pub fn max_power(source: &GradedVectorSpace, target: &GradedVectorSpace, shift: i32) -> Option<usize> {
    let (Some(lo), Some(hi)) = (source.min_degree(), target.max_degree()) else {
        return None;
    };
    let reach = hi - lo - shift;
    (reach >= 0).then(|| (reach / 2) as usize)
}

/// A linear map `source → target` raising degree by `degree`, stored as one
/// matrix per source degree. Zero blocks are never stored.
#[derive(Clone, PartialEq, Eq)]
pub struct GradedMap {
    source: GradedVectorSpace,
    target: GradedVectorSpace,
    degree: i32,
    blocks: BTreeMap<i32, Matrix>,
}

impl fmt::Debug for GradedMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GradedMap")
            .field("degree", &self.degree)
            .field("blocks", &self.blocks)
            .finish()
    }
}

impl GradedMap {
    pub fn zero(source: &GradedVectorSpace, target: &GradedVectorSpace, degree: i32) -> Self {
        GradedMap {
            source: source.clone(),
            target: target.clone(),
            degree,
            blocks: BTreeMap::new(),
        }
    }

    pub fn identity(space: &GradedVectorSpace) -> Self {
        Self::scalar(space, &Scalar::one())
    }

    pub fn scalar(space: &GradedVectorSpace, s: &Scalar) -> Self {
        let blocks = if s.is_zero() {
            BTreeMap::new()
        } else {
            space
                .dims
                .iter()
                .map(|(&k, &n)| (k, Matrix::scalar_identity(n, s)))
                .collect()
        };
        GradedMap {
            source: space.clone(),
            target: space.clone(),
            degree: 0,
            blocks,
        }
    }

    /// Blocks keyed by source degree, each of shape `dims(k+degree) × dims(k)`.
    pub fn from_blocks(
        source: &GradedVectorSpace,
        target: &GradedVectorSpace,
        degree: i32,
        blocks: impl IntoIterator<Item = (i32, Matrix)>,
    ) -> Result<Self> {
        let mut map = Self::zero(source, target, degree);
        for (k, m) in blocks {
            let expected = (target.dim(k + degree), source.dim(k));
            if m.shape() != expected {
                return Err(Error::ShapeMismatch(format!(
                    "block at source degree {k} has shape {:?}, expected {:?}",
                    m.shape(),
                    expected
                )));
            }
            if !m.is_zero() {
                if map.blocks.insert(k, m).is_some() {
                    return Err(Error::ShapeMismatch(format!("duplicate block at degree {k}")));
                }
            }
        }
        Ok(map)
    }

    pub fn source(&self) -> &GradedVectorSpace {
        &self.source
    }

    pub fn target(&self) -> &GradedVectorSpace {
        &self.target
    }

    pub fn degree(&self) -> i32 {
        self.degree
    }

    pub fn is_endomorphism(&self) -> bool {
        self.source == self.target
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn blocks(&self) -> &BTreeMap<i32, Matrix> {
        &self.blocks
    }

    /// Block at source degree `k`, zero-filled when absent.
    pub fn block(&self, k: i32) -> Matrix {
        self.blocks
            .get(&k)
            .cloned()
            .unwrap_or_else(|| Matrix::zeros(self.target.dim(k + self.degree), self.source.dim(k)))
    }

    pub fn first_nonzero(&self) -> Option<(i32, usize, usize, Scalar)> {
        self.blocks
            .iter()
            .find_map(|(&k, m)| m.first_nonzero().map(|(r, c, v)| (k, r, c, v)))
    }

    /// `self ∘ rhs`.
    pub fn compose(&self, rhs: &GradedMap) -> Result<GradedMap> {
        if rhs.target != self.source {
            return Err(Error::ShapeMismatch("composition: target of inner map differs from source of outer map".into()));
        }
        let mut blocks = BTreeMap::new();
        for (&k, inner) in &rhs.blocks {
            if let Some(outer) = self.blocks.get(&(k + rhs.degree)) {
                let m = outer * inner;
                if !m.is_zero() {
                    blocks.insert(k, m);
                }
            }
        }
        Ok(GradedMap {
            source: rhs.source.clone(),
            target: self.target.clone(),
            degree: self.degree + rhs.degree,
            blocks,
        })
    }

    fn check_compatible(&self, other: &GradedMap) -> Result<()> {
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch { expected: self.degree, found: other.degree });
        }
        if self.source != other.source || self.target != other.target {
            return Err(Error::ShapeMismatch("maps live on different spaces".into()));
        }
        Ok(())
    }

    pub fn add(&self, other: &GradedMap) -> Result<GradedMap> {
        self.check_compatible(other)?;
        let mut blocks = self.blocks.clone();
        for (&k, m) in &other.blocks {
            let sum = match blocks.remove(&k) {
                Some(a) => &a + m,
                None => m.clone(),
            };
            if !sum.is_zero() {
                blocks.insert(k, sum);
            }
        }
        Ok(GradedMap { blocks, ..self.clone() })
    }

    pub fn sub(&self, other: &GradedMap) -> Result<GradedMap> {
        self.add(&other.neg())
    }

    pub fn scale(&self, s: &Scalar) -> GradedMap {
        let blocks = if s.is_zero() {
            BTreeMap::new()
        } else {
            self.blocks.iter().map(|(&k, m)| (k, m.scale(s))).collect()
        };
        GradedMap { blocks, ..self.clone() }
    }

    pub fn neg(&self) -> GradedMap {
        self.scale(&-Scalar::one())
    }

    /// Graded commutator `[a, b] = ab − (−1)^{|a||b|} ba` of endomorphisms.
    pub fn commutator(&self, other: &GradedMap) -> Result<GradedMap> {
        let ab = self.compose(other)?;
        let ba = other.compose(self)?;
        if (self.degree * other.degree).rem_euclid(2) == 0 {
            ab.sub(&ba)
        } else {
            ab.add(&ba)
        }
    }

    /// Applies the map to a vector sitting in source degree `k`.
    pub fn apply(&self, k: i32, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.source.dim(k));
        match self.blocks.get(&k) {
            Some(m) => m.mul_vec(v),
            None => vec![Scalar::zero(); self.target.dim(k + self.degree)],
        }
    }

    /// `f ⊕ g : A ⊕ B → C ⊕ D`.
    pub fn direct_sum(&self, other: &GradedMap) -> Result<GradedMap> {
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch { expected: self.degree, found: other.degree });
        }
        let source = self.source.direct_sum(&other.source);
        let target = self.target.direct_sum(&other.target);
        let blocks = source
            .degrees()
            .map(|k| (k, Matrix::block_diag(&self.block(k), &other.block(k))))
            .collect::<Vec<_>>();
        GradedMap::from_blocks(&source, &target, self.degree, blocks)
    }

    /// `(f, g) : A → C ⊕ D`, stacking the outputs.
    pub fn stack(&self, other: &GradedMap) -> Result<GradedMap> {
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch { expected: self.degree, found: other.degree });
        }
        if self.source != other.source {
            return Err(Error::ShapeMismatch("stack: sources differ".into()));
        }
        let target = self.target.direct_sum(&other.target);
        let blocks = self
            .source
            .degrees()
            .map(|k| (k, Matrix::vstack(&[&self.block(k), &other.block(k)])))
            .collect::<Vec<_>>();
        GradedMap::from_blocks(&self.source, &target, self.degree, blocks)
    }

    /// `[f g] : A ⊕ B → C`, summing the inputs.
    pub fn join(&self, other: &GradedMap) -> Result<GradedMap> {
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch { expected: self.degree, found: other.degree });
        }
        if self.target != other.target {
            return Err(Error::ShapeMismatch("join: targets differ".into()));
        }
        let source = self.source.direct_sum(&other.source);
        let blocks = source
            .degrees()
            .map(|k| (k, Matrix::hstack(&[&self.block(k), &other.block(k)])))
            .collect::<Vec<_>>();
        GradedMap::from_blocks(&source, &self.target, self.degree, blocks)
    }

    /// Inverse of a degree-0 map that is bijective in every degree.
    pub fn inverse(&self) -> Result<GradedMap> {
        if self.degree != 0 {
            return Err(Error::DegreeMismatch { expected: 0, found: self.degree });
        }
        let degrees: std::collections::BTreeSet<i32> =
            self.source.degrees().chain(self.target.degrees()).collect();
        let mut blocks = Vec::new();
        for k in degrees {
            let m = self.block(k);
            let inv = m.inverse().ok_or(Error::NotInvertible { degree: k })?;
            blocks.push((k, inv));
        }
        GradedMap::from_blocks(&self.target, &self.source, 0, blocks)
    }
}

/// `Σ cᵢ fᵢ` over maps of one degree between one pair of spaces.
pub fn lincomb(
    source: &GradedVectorSpace,
    target: &GradedVectorSpace,
    degree: i32,
    terms: &[(Scalar, &GradedMap)],
) -> Result<GradedMap> {
    let mut acc = GradedMap::zero(source, target, degree);
    for (c, f) in terms {
        acc = acc.add(&f.scale(c))?;
    }
    Ok(acc)
}

/// `g ∘ f` as a free function.
pub fn compose(g: &GradedMap, f: &GradedMap) -> Result<GradedMap> {
    g.compose(f)
}

/// Homology of a square-zero degree −1 endomorphism.
pub fn homology(d: &GradedMap) -> Result<GradedVectorSpace> {
    if d.degree() != -1 {
        return Err(Error::DegreeMismatch { expected: -1, found: d.degree() });
    }
    if !d.is_endomorphism() {
        return Err(Error::ShapeMismatch("differential must be an endomorphism".into()));
    }
    let square = d.compose(d)?;
    if let Some((k, ..)) = square.first_nonzero() {
        return Err(Error::NotSquareZero { degree: k });
    }
    let space = d.source();
    Ok(GradedVectorSpace::new(space.degrees().map(|k| {
        let cycles = space.dim(k) - d.block(k).rank();
        let boundaries = d.block(k + 1).rank();
        (k, cycles - boundaries)
    })))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::int;

    fn two_degree_space() -> GradedVectorSpace {
        GradedVectorSpace::new([(0, 2), (1, 2)])
    }

    #[test]
    fn zero_dims_are_dropped() {
        let a = GradedVectorSpace::new([(0, 0), (1, 3)]);
        assert_eq!(a.degrees().collect::<Vec<_>>(), vec![1]);
        assert_eq!(a.width(), 0);
    }

    #[test]
    fn compose_with_identity_and_zero() {
        let a = two_degree_space();
        let f = GradedMap::from_blocks(&a, &a, -1, [(1, Matrix::from_i64(2, 2, &[1, 2, 3, 4]))]).unwrap();
        assert_eq!(GradedMap::identity(&a).compose(&f).unwrap(), f);
        let z = GradedMap::zero(&a, &a, 1);
        assert!(f.compose(&z).unwrap().is_zero());
    }

    #[test]
    fn compose_matches_matrix_product() {
        let a = two_degree_space();
        let down = Matrix::from_i64(2, 2, &[1, 2, 0, 1]);
        let up = Matrix::from_i64(2, 2, &[0, 1, 1, 1]);
        let f = GradedMap::from_blocks(&a, &a, -1, [(1, down.clone())]).unwrap();
        let g = GradedMap::from_blocks(&a, &a, 1, [(0, up.clone())]).unwrap();
        let gf = g.compose(&f).unwrap();
        assert_eq!(gf.degree(), 0);
        assert_eq!(gf.block(1), &up * &down);
        assert_eq!(gf.block(0), Matrix::zeros(2, 2));
    }

    #[test]
    fn lincomb_examples() {
        let a = GradedVectorSpace::new([(0, 1)]);
        let f = GradedMap::from_blocks(&a, &a, 0, [(0, Matrix::from_i64(1, 1, &[5]))]).unwrap();
        let g = GradedMap::from_blocks(&a, &a, 0, [(0, Matrix::from_i64(1, 1, &[7]))]).unwrap();
        let cancel = lincomb(&a, &a, 0, &[(int(1), &f), (int(-1), &f)]).unwrap();
        assert!(cancel.is_zero());
        assert!(lincomb(&a, &a, 3, &[]).unwrap().is_zero());
        let combo = lincomb(&a, &a, 0, &[(int(2), &f), (int(3), &g)]).unwrap();
        assert_eq!(combo.block(0), Matrix::from_i64(1, 1, &[31]));
        let wrong = GradedMap::zero(&a, &a, 1);
        assert!(matches!(
            lincomb(&a, &a, 0, &[(int(1), &wrong)]),
            Err(Error::DegreeMismatch { .. })
        ));
    }

    #[test]
    fn homology_examples() {
        let a = two_degree_space();
        assert_eq!(homology(&GradedMap::zero(&a, &a, -1)).unwrap(), a);

        let line = GradedVectorSpace::new([(0, 1), (1, 1)]);
        let d = GradedMap::from_blocks(&line, &line, -1, [(1, Matrix::from_i64(1, 1, &[1]))]).unwrap();
        assert!(homology(&d).unwrap().is_zero());

        let d = GradedMap::from_blocks(&a, &a, -1, [(1, Matrix::from_i64(2, 2, &[1, 0, 0, 0]))]).unwrap();
        assert_eq!(homology(&d).unwrap(), GradedVectorSpace::new([(0, 1), (1, 1)]));
    }

    #[test]
    fn homology_rejects_non_square_zero() {
        let a = GradedVectorSpace::new([(0, 1), (1, 1), (2, 1)]);
        let d = GradedMap::from_blocks(
            &a,
            &a,
            -1,
            [(1, Matrix::from_i64(1, 1, &[1])), (2, Matrix::from_i64(1, 1, &[1]))],
        )
        .unwrap();
        assert_eq!(homology(&d), Err(Error::NotSquareZero { degree: 2 }));
    }

    #[test]
    fn inverse_per_degree() {
        let a = two_degree_space();
        let f = GradedMap::from_blocks(
            &a,
            &a,
            0,
            [(0, Matrix::from_i64(2, 2, &[2, 0, 0, 1])), (1, Matrix::identity(2))],
        )
        .unwrap();
        let g = f.inverse().unwrap();
        assert_eq!(g.compose(&f).unwrap(), GradedMap::identity(&a));
        let singular = GradedMap::from_blocks(&a, &a, 0, [(0, Matrix::identity(2))]).unwrap();
        assert_eq!(singular.inverse(), Err(Error::NotInvertible { degree: 1 }));
    }
}
