//! Multicomplexes `(A, Δ₀, Δ₁, …)` with `|Δₙ| = 2n − 1` and
//! `Σᵢ Δᵢ Δₙ₋ᵢ = 0`, and ∞-morphisms `{fₙ}` with `|fₙ| = 2n`.

use std::fmt;

use crate::error::{Error, Result};
use crate::graded::{max_power, GradedMap, GradedVectorSpace};
use crate::linalg::Scalar;

/// The first nonzero entry of a relation that should vanish.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Obstruction {
    /// Relation (or operator) index.
    pub n: usize,
    /// Source degree of the offending block.
    pub degree: i32,
    pub row: usize,
    pub col: usize,
    pub value: Scalar,
}

impl Obstruction {
    pub(crate) fn from_map(n: usize, map: &GradedMap) -> Option<Self> {
        map.first_nonzero()
            .map(|(degree, row, col, value)| Obstruction { n, degree, row, col, value })
    }
}

impl fmt::Display for Obstruction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "n = {}, source degree {}, entry ({}, {}) = {}",
            self.n, self.degree, self.row, self.col, self.value
        )
    }
}

/// Result of checking a family of relations; empty means valid.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RelationReport {
    pub violations: Vec<Obstruction>,
}

impl RelationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn violated_indices(&self) -> Vec<usize> {
        self.violations.iter().map(|o| o.n).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Multicomplex {
    space: GradedVectorSpace,
    /// `Δ₀, …, Δ_N`, trailing zero operators (n ≥ 1) removed.
    deltas: Vec<GradedMap>,
}

impl Multicomplex {
    /// Checks shapes and degrees only; use [`Multicomplex::validate`] for the
    /// relations.
    pub fn new(space: GradedVectorSpace, mut deltas: Vec<GradedMap>) -> Result<Self> {
        if deltas.is_empty() {
            deltas.push(GradedMap::zero(&space, &space, -1));
        }
        for (n, delta) in deltas.iter().enumerate() {
            let expected = 2 * n as i32 - 1;
            if delta.degree() != expected {
                return Err(Error::DegreeMismatch { expected, found: delta.degree() });
            }
            if delta.source() != &space || delta.target() != &space {
                return Err(Error::ShapeMismatch(format!("Δ{n} is not an endomorphism of the space")));
            }
        }
        while deltas.len() > 1 && deltas.last().is_some_and(GradedMap::is_zero) {
            deltas.pop();
        }
        Ok(Multicomplex { space, deltas })
    }

    pub fn zero(space: &GradedVectorSpace) -> Self {
        Multicomplex {
            space: space.clone(),
            deltas: vec![GradedMap::zero(space, space, -1)],
        }
    }

    /// `(A, d, 0, 0, …)`.
    pub fn trivial(d: GradedMap) -> Result<Self> {
        let space = d.source().clone();
        Self::new(space, vec![d])
    }

    pub fn space(&self) -> &GradedVectorSpace {
        &self.space
    }

    pub fn deltas(&self) -> &[GradedMap] {
        &self.deltas
    }

    /// `Δₙ`, zero beyond the stored list.
    pub fn delta(&self, n: usize) -> GradedMap {
        self.deltas
            .get(n)
            .cloned()
            .unwrap_or_else(|| GradedMap::zero(&self.space, &self.space, 2 * n as i32 - 1))
    }

    pub fn differential(&self) -> &GradedMap {
        &self.deltas[0]
    }

    /// Index of the last stored operator.
    pub fn top(&self) -> usize {
        self.deltas.len() - 1
    }

    /// Largest n for which Δₙ can be nonzero: ⌊(width + 1)/2⌋.
    pub fn n_max(&self) -> usize {
        max_power(&self.space, &self.space, -1).unwrap_or(0)
    }

    pub fn is_mixed(&self) -> bool {
        self.deltas.len() <= 2
    }

    pub fn is_minimal(&self) -> bool {
        self.deltas[0].is_zero()
    }

    pub fn has_trivial_higher_operators(&self) -> bool {
        self.deltas.len() == 1
    }

    /// `Σ_{i=0}^{n} Δᵢ Δ_{n−i}`.
    pub fn relation(&self, n: usize) -> GradedMap {
        let mut acc = GradedMap::zero(&self.space, &self.space, 2 * n as i32 - 2);
        for i in 0..=n {
            if i > self.top() || n - i > self.top() {
                continue;
            }
            let term = self.deltas[i]
                .compose(&self.deltas[n - i])
                .expect("endomorphisms of one space compose");
            acc = acc.add(&term).expect("terms share a degree");
        }
        acc
    }

    /// Every violated relation index with its first nonzero entry.
    pub fn validate(&self) -> RelationReport {
        let violations = (0..=2 * self.top())
            .filter_map(|n| Obstruction::from_map(n, &self.relation(n)))
            .collect();
        RelationReport { violations }
    }

    /// Same data with explicit zero operators appended; validation must not
    /// change.
    pub fn padded_deltas(&self, extra: usize) -> Vec<GradedMap> {
        let mut out = self.deltas.clone();
        for k in 0..extra {
            let n = self.deltas.len() + k;
            out.push(GradedMap::zero(&self.space, &self.space, 2 * n as i32 - 1));
        }
        out
    }
}

/// Degreewise direct sum with the strict injections and projections.
pub struct Product {
    pub multicomplex: Multicomplex,
    pub inj1: InfinityMorphism,
    pub inj2: InfinityMorphism,
    pub proj1: InfinityMorphism,
    pub proj2: InfinityMorphism,
}

pub fn product(m1: &Multicomplex, m2: &Multicomplex) -> Result<Product> {
    let top = m1.top().max(m2.top());
    let deltas = (0..=top)
        .map(|n| m1.delta(n).direct_sum(&m2.delta(n)))
        .collect::<Result<Vec<_>>>()?;
    let space = m1.space.direct_sum(&m2.space);
    let multicomplex = Multicomplex::new(space.clone(), deltas)?;
    let id1 = GradedMap::identity(&m1.space);
    let id2 = GradedMap::identity(&m2.space);
    let zero12 = GradedMap::zero(&m1.space, &m2.space, 0);
    let zero21 = GradedMap::zero(&m2.space, &m1.space, 0);
    let inj1 = InfinityMorphism::strict(m1.clone(), multicomplex.clone(), id1.stack(&zero12)?)?;
    let inj2 = InfinityMorphism::strict(m2.clone(), multicomplex.clone(), zero21.stack(&id2)?)?;
    let proj1 = InfinityMorphism::strict(multicomplex.clone(), m1.clone(), id1.join(&zero21)?)?;
    let proj2 = InfinityMorphism::strict(multicomplex.clone(), m2.clone(), zero12.join(&id2)?)?;
    Ok(Product { multicomplex, inj1, inj2, proj1, proj2 })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InfinityMorphism {
    source: Multicomplex,
    target: Multicomplex,
    /// `f₀, …, f_M`, trailing zero components (n ≥ 1) removed.
    comps: Vec<GradedMap>,
}

impl InfinityMorphism {
    pub fn new(source: Multicomplex, target: Multicomplex, mut comps: Vec<GradedMap>) -> Result<Self> {
        if comps.is_empty() {
            comps.push(GradedMap::zero(source.space(), target.space(), 0));
        }
        for (n, f) in comps.iter().enumerate() {
            let expected = 2 * n as i32;
            if f.degree() != expected {
                return Err(Error::DegreeMismatch { expected, found: f.degree() });
            }
            if f.source() != source.space() || f.target() != target.space() {
                return Err(Error::ShapeMismatch(format!("f{n} does not map source to target")));
            }
        }
        while comps.len() > 1 && comps.last().is_some_and(GradedMap::is_zero) {
            comps.pop();
        }
        Ok(InfinityMorphism { source, target, comps })
    }

    pub fn strict(source: Multicomplex, target: Multicomplex, f0: GradedMap) -> Result<Self> {
        Self::new(source, target, vec![f0])
    }

    pub fn identity(m: &Multicomplex) -> Self {
        InfinityMorphism {
            source: m.clone(),
            target: m.clone(),
            comps: vec![GradedMap::identity(m.space())],
        }
    }

    pub fn source(&self) -> &Multicomplex {
        &self.source
    }

    pub fn target(&self) -> &Multicomplex {
        &self.target
    }

    pub fn components(&self) -> &[GradedMap] {
        &self.comps
    }

    pub fn component(&self, n: usize) -> GradedMap {
        self.comps.get(n).cloned().unwrap_or_else(|| {
            GradedMap::zero(self.source.space(), self.target.space(), 2 * n as i32)
        })
    }

    pub fn is_isotopy(&self) -> bool {
        self.source.space() == self.target.space()
            && self.comps[0] == GradedMap::identity(self.source.space())
    }

    /// `Σ_{k+l=n} fₖ Δˢʳᶜ_l − Σ_{k+l=n} Δᵗᵍᵗ_k f_l`.
    pub fn relation(&self, n: usize) -> GradedMap {
        let mut acc = GradedMap::zero(self.source.space(), self.target.space(), 2 * n as i32 - 1);
        for k in 0..=n {
            let l = n - k;
            if k < self.comps.len() && l <= self.source.top() {
                let t = self.comps[k].compose(&self.source.delta(l)).expect("spaces match");
                acc = acc.add(&t).expect("degrees match");
            }
            if l < self.comps.len() && k <= self.target.top() {
                let t = self.target.delta(k).compose(&self.comps[l]).expect("spaces match");
                acc = acc.sub(&t).expect("degrees match");
            }
        }
        acc
    }

    pub fn validate(&self) -> RelationReport {
        let bound = self.comps.len() - 1 + self.source.top().max(self.target.top());
        let violations = (0..=bound)
            .filter_map(|n| Obstruction::from_map(n, &self.relation(n)))
            .collect();
        RelationReport { violations }
    }

    /// `self ∘ f`, i.e. `(self f)ₙ = Σ_{k+l=n} selfₖ f_l`.
    pub fn compose(&self, f: &InfinityMorphism) -> Result<InfinityMorphism> {
        if f.target != self.source {
            return Err(Error::SourceTargetMismatch);
        }
        let top = self.comps.len() + f.comps.len() - 2;
        let mut comps = Vec::with_capacity(top + 1);
        for n in 0..=top {
            let mut acc = GradedMap::zero(f.source.space(), self.target.space(), 2 * n as i32);
            for k in 0..=n.min(self.comps.len() - 1) {
                if let Some(fl) = f.comps.get(n - k) {
                    acc = acc.add(&self.comps[k].compose(fl)?)?;
                }
            }
            comps.push(acc);
        }
        InfinityMorphism::new(f.source.clone(), self.target.clone(), comps)
    }

    /// Two-sided inverse of an ∞-isomorphism: `g₀ = f₀⁻¹`,
    /// `gₙ = −f₀⁻¹ Σ_{k=1}^{n} fₖ g_{n−k}`.
    pub fn invert(&self) -> Result<InfinityMorphism> {
        let g0 = self.comps[0].inverse()?;
        let top = max_power(self.target.space(), self.source.space(), 0).unwrap_or(0);
        let mut g = vec![g0.clone()];
        for n in 1..=top {
            let mut acc = GradedMap::zero(self.target.space(), self.target.space(), 2 * n as i32);
            for k in 1..=n.min(self.comps.len() - 1) {
                acc = acc.add(&self.comps[k].compose(&g[n - k])?)?;
            }
            g.push(g0.compose(&acc)?.neg());
        }
        InfinityMorphism::new(self.target.clone(), self.source.clone(), g)
    }
}

pub fn validate_multicomplex(m: &Multicomplex) -> RelationReport {
    m.validate()
}

pub fn validate_infinity_morphism(f: &InfinityMorphism) -> RelationReport {
    f.validate()
}

pub fn compose_infinity(g: &InfinityMorphism, f: &InfinityMorphism) -> Result<InfinityMorphism> {
    g.compose(f)
}

pub fn invert_infinity(f: &InfinityMorphism) -> Result<InfinityMorphism> {
    f.invert()
}
