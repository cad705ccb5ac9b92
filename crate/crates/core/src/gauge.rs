//! Truncated power series in `End(A)[[z]]` and the gauge Hodge condition
//! `e^{R(z)} d e^{−R(z)} = d + Δ₁z + Δ₂z² + ⋯`.
//!
//! The coefficient of `zⁿ` is homogeneous of degree `2n + shift`. Since `A` is
//! bounded, coefficients vanish once that degree exceeds the grading width, so
//! every series is stored exactly up to its last possibly nonzero power.

use num_traits::One;

use crate::error::{Error, Result};
use crate::graded::{max_power, GradedMap, GradedVectorSpace};
use crate::linalg::{int, rational, Scalar};
use crate::multicomplex::{InfinityMorphism, Multicomplex, Obstruction};
use crate::transfer::{build_retract, check_hodge_data, minimal_model, DeformationRetract};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OperatorSeries {
    space: GradedVectorSpace,
    /// 0 for ∞-isotopy-type series, −1 for differential-type series.
    shift: i32,
    /// Coefficients of `z⁰ … z^top`; exactly `top + 1` entries.
    coeffs: Vec<GradedMap>,
}

impl OperatorSeries {
    /// Last power whose coefficient can be nonzero.
    fn top_power(space: &GradedVectorSpace, shift: i32) -> Option<usize> {
        max_power(space, space, shift)
    }

    pub fn zero(space: &GradedVectorSpace, shift: i32) -> Self {
        let coeffs = match Self::top_power(space, shift) {
            Some(top) => (0..=top)
                .map(|n| GradedMap::zero(space, space, 2 * n as i32 + shift))
                .collect(),
            None => Vec::new(),
        };
        OperatorSeries { space: space.clone(), shift, coeffs }
    }

    /// The unit series `id · z⁰`.
    pub fn unit(space: &GradedVectorSpace) -> Self {
        let mut s = Self::zero(space, 0);
        if let Some(c) = s.coeffs.first_mut() {
            *c = GradedMap::identity(space);
        }
        s
    }

    /// Coefficients from `z⁰` upward; missing ones are zero, and extra ones
    /// must be zero.
    pub fn from_coeffs(space: &GradedVectorSpace, shift: i32, coeffs: Vec<GradedMap>) -> Result<Self> {
        let mut s = Self::zero(space, shift);
        for (n, c) in coeffs.into_iter().enumerate() {
            let expected = 2 * n as i32 + shift;
            if c.degree() != expected {
                return Err(Error::DegreeMismatch { expected, found: c.degree() });
            }
            if c.source() != space || c.target() != space {
                return Err(Error::SpaceMismatch);
            }
            match s.coeffs.get_mut(n) {
                Some(slot) => *slot = c,
                None if c.is_zero() => {}
                None => unreachable!("a nonzero map of degree {expected} cannot exist on this space"),
            }
        }
        Ok(s)
    }

    /// `Σ_{n≥1} Rₙ zⁿ` from `[R₁, R₂, …]`.
    pub fn from_positive(space: &GradedVectorSpace, coeffs: Vec<GradedMap>) -> Result<Self> {
        let mut all = vec![GradedMap::zero(space, space, 0)];
        all.extend(coeffs);
        Self::from_coeffs(space, 0, all)
    }

    /// `d + Δ₁z + Δ₂z² + ⋯` of a multicomplex.
    pub fn from_multicomplex(m: &Multicomplex) -> Self {
        Self::from_coeffs(m.space(), -1, m.deltas().to_vec()).expect("multicomplex operators have the right degrees")
    }

    /// A single map placed at power `n` (its degree fixes the shift).
    pub fn monomial(space: &GradedVectorSpace, n: usize, map: GradedMap) -> Result<Self> {
        let shift = map.degree() - 2 * n as i32;
        let mut coeffs: Vec<GradedMap> = (0..n)
            .map(|k| GradedMap::zero(space, space, 2 * k as i32 + shift))
            .collect();
        coeffs.push(map);
        Self::from_coeffs(space, shift, coeffs)
    }

    pub fn space(&self) -> &GradedVectorSpace {
        &self.space
    }

    pub fn shift(&self) -> i32 {
        self.shift
    }

    pub fn coeffs(&self) -> &[GradedMap] {
        &self.coeffs
    }

    pub fn coeff(&self, n: usize) -> GradedMap {
        self.coeffs
            .get(n)
            .cloned()
            .unwrap_or_else(|| GradedMap::zero(&self.space, &self.space, 2 * n as i32 + self.shift))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(GradedMap::is_zero)
    }

    pub fn has_zero_constant_term(&self) -> bool {
        self.coeffs.first().is_none_or(GradedMap::is_zero)
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.space != other.space {
            return Err(Error::SpaceMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        if self.shift != other.shift {
            return Err(Error::DegreeMismatch { expected: self.shift, found: other.shift });
        }
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a.add(b))
            .collect::<Result<Vec<_>>>()?;
        Ok(OperatorSeries { coeffs, ..self.clone() })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        OperatorSeries {
            coeffs: self.coeffs.iter().map(|c| c.scale(s)).collect(),
            ..self.clone()
        }
    }

    pub fn neg(&self) -> Self {
        self.scale(&-Scalar::one())
    }

    /// Cauchy product `(ab)ₙ = Σ_k a_k b_{n−k}`, truncated exactly.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let shift = self.shift + other.shift;
        let mut out = Self::zero(&self.space, shift);
        for n in 0..out.coeffs.len() {
            let mut acc = out.coeffs[n].clone();
            for k in 0..=n {
                if let (Some(a), Some(b)) = (self.coeffs.get(k), other.coeffs.get(n - k)) {
                    acc = acc.add(&a.compose(b)?)?;
                }
            }
            out.coeffs[n] = acc;
        }
        Ok(out)
    }

    /// `exp(r) = Σ rᵏ/k!` for `r` with zero constant term.
    pub fn exp(&self) -> Result<Self> {
        if self.shift != 0 || !self.has_zero_constant_term() {
            return Err(Error::BadConstantTerm("exp needs an isotopy-type series with zero constant term"));
        }
        let mut result = Self::unit(&self.space);
        let mut power = Self::unit(&self.space);
        for k in 1..=self.coeffs.len() {
            power = power.mul(self)?.scale(&rational(1, k as i64));
            if power.is_zero() {
                break;
            }
            result = result.add(&power)?;
        }
        Ok(result)
    }

    /// `log(1 + x) = Σ (−1)^{k+1} xᵏ/k` for a series with constant term id.
    pub fn log(&self) -> Result<Self> {
        if self.shift != 0 || self.coeff(0) != GradedMap::identity(&self.space) {
            return Err(Error::BadConstantTerm("log needs constant term equal to the identity"));
        }
        let x = self.sub(&Self::unit(&self.space))?;
        let mut result = Self::zero(&self.space, 0);
        let mut power = Self::unit(&self.space);
        for k in 1..=self.coeffs.len() {
            power = power.mul(&x)?;
            if power.is_zero() {
                break;
            }
            let sign = if k % 2 == 1 { 1 } else { -1 };
            result = result.add(&power.scale(&rational(sign, k as i64)))?;
        }
        Ok(result)
    }

    /// `[self, other] = self·other − other·self`; `self` is isotopy-type, so
    /// its coefficients are even and the graded commutator has no sign.
    pub fn bracket(&self, other: &Self) -> Result<Self> {
        self.mul(other)?.sub(&other.mul(self)?)
    }
}

/// `e^{ad_R}(D) = Σ ad_Rᵏ(D)/k!`.
pub fn conjugate_series(r: &OperatorSeries, d: &OperatorSeries) -> Result<OperatorSeries> {
    if r.shift != 0 || !r.has_zero_constant_term() {
        return Err(Error::BadConstantTerm("gauge series must have zero constant term"));
    }
    let mut result = d.clone();
    let mut term = d.clone();
    for k in 1..=d.coeffs.len() {
        term = r.bracket(&term)?.scale(&rational(1, k as i64));
        if term.is_zero() {
            break;
        }
        result = result.add(&term)?;
    }
    Ok(result)
}

/// `e^{R} D e^{−R}` computed with series products.
pub fn conjugate_series_by_products(r: &OperatorSeries, d: &OperatorSeries) -> Result<OperatorSeries> {
    let e = r.exp()?;
    let e_inv = r.neg().exp()?;
    e.mul(d)?.mul(&e_inv)
}

/// `D(z) = e^{R(z)} d e^{−R(z)}`, computed both via the adjoint expansion and
/// via series products; the two must agree exactly.
pub fn conjugate_differential(r: &OperatorSeries, d: &GradedMap) -> Result<OperatorSeries> {
    let d_series = OperatorSeries::monomial(r.space(), 0, d.clone())?;
    let by_adjoint = conjugate_series(r, &d_series)?;
    let by_products = conjugate_series_by_products(r, &d_series)?;
    if by_adjoint != by_products {
        return Err(Error::IdentityViolated("e^R d e^-R differs from e^{ad R}(d)".into()));
    }
    Ok(by_adjoint)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaugeVerdict {
    pub holds: bool,
    /// First power where `e^R d e^{−R}` and `d + Σ Δₙ zⁿ` differ.
    pub witness: Option<Obstruction>,
}

/// Checks `e^{R(z)} d e^{−R(z)} = d + Δ₁z + Δ₂z² + ⋯` coefficientwise.
pub fn check_gauge_hodge(r: &OperatorSeries, m: &Multicomplex) -> Result<GaugeVerdict> {
    if r.space() != m.space() {
        return Err(Error::SpaceMismatch);
    }
    let conjugated = conjugate_differential(r, m.differential())?;
    let expected = OperatorSeries::from_multicomplex(m);
    let witness = conjugated
        .coeffs
        .iter()
        .zip(&expected.coeffs)
        .enumerate()
        .find_map(|(n, (a, b))| Obstruction::from_map(n, &a.sub(b).expect("same degree")));
    Ok(GaugeVerdict { holds: witness.is_none(), witness })
}

/// The multicomplex with `Δₙ` the coefficient of `zⁿ` in `e^R d e^{−R}`.
pub fn gauge_construct(d: &GradedMap, r: &OperatorSeries) -> Result<Multicomplex> {
    if let Some((degree, ..)) = d.compose(d)?.first_nonzero() {
        return Err(Error::NotSquareZero { degree });
    }
    let conjugated = conjugate_differential(r, d)?;
    Multicomplex::new(r.space().clone(), conjugated.coeffs)
}

/// `Σ fₙ zⁿ` for an ∞-endomorphism of one space.
pub fn morphism_to_series(f: &InfinityMorphism) -> Result<OperatorSeries> {
    if f.source().space() != f.target().space() {
        return Err(Error::SpaceMismatch);
    }
    OperatorSeries::from_coeffs(f.source().space(), 0, f.components().to_vec())
}

/// The ∞-morphism `source ⇝ target` with components the series coefficients.
pub fn series_to_morphism(
    s: &OperatorSeries,
    source: &Multicomplex,
    target: &Multicomplex,
) -> Result<InfinityMorphism> {
    if s.shift != 0 {
        return Err(Error::DegreeMismatch { expected: 0, found: s.shift });
    }
    InfinityMorphism::new(source.clone(), target.clone(), s.coeffs.clone())
}

/// `(hΔ)ⁿ/n − Σ_{l=1}^{n} (hΔ)^{l−1} i p (Δh)^{n−l+1} / l`, the coefficient of
/// `zⁿ` in `−log(1 − hΔz + Σ ip(Δh)ᵏ zᵏ)` once `hh = 0`, `hi = 0` and `ph = 0`
/// are used to kill every word with a factor `ip(Δh)ᵏ` that is not last.
pub fn mixed_r_coefficient(r: &DeformationRetract, delta: &GradedMap, n: usize) -> Result<GradedMap> {
    let space = &r.big;
    let h_delta = r.h.compose(delta)?;
    let delta_h = delta.compose(&r.h)?;
    let ip = r.i.compose(&r.p)?;
    let power = |m: &GradedMap, k: usize| -> Result<GradedMap> {
        let mut acc = GradedMap::identity(space);
        for _ in 0..k {
            acc = acc.compose(m)?;
        }
        Ok(acc)
    };
    let mut out = power(&h_delta, n)?.scale(&rational(1, n as i64));
    for l in 1..=n {
        let term = power(&h_delta, l - 1)?.compose(&ip.compose(&power(&delta_h, n - l + 1)?)?)?;
        out = out.sub(&term.scale(&rational(1, l as i64)))?;
    }
    Ok(out)
}

/// `−log(1 − hΔz + Σ_{n≥1} ip(Δh)ⁿ zⁿ)`.
pub fn mixed_r_from_log(r: &DeformationRetract, delta: &GradedMap) -> Result<OperatorSeries> {
    let space = &r.big;
    let unit = OperatorSeries::unit(space);
    let top = unit.coeffs.len();
    let h_delta = r.h.compose(delta)?;
    let delta_h = delta.compose(&r.h)?;
    let ip = r.i.compose(&r.p)?;
    let mut coeffs = vec![GradedMap::identity(space)];
    let mut power = GradedMap::identity(space);
    for n in 1..top {
        power = power.compose(&delta_h)?;
        let mut c = ip.compose(&power)?;
        if n == 1 {
            c = c.sub(&h_delta)?;
        }
        coeffs.push(c);
    }
    Ok(OperatorSeries::from_coeffs(space, 0, coeffs)?.log()?.neg())
}

/// The explicit gauge of a mixed complex `(A, d, Δ)` carrying Hodge data.
pub fn mixed_r_from_hodge(r: &DeformationRetract, delta: &GradedMap) -> Result<OperatorSeries> {
    let m = Multicomplex::new(r.big.clone(), vec![r.d_big.clone(), delta.clone()])?;
    let verdict = check_hodge_data(r, &m)?;
    if let Some(w) = verdict.witness {
        return Err(Error::HodgeDataFails { n: w.n });
    }
    let top = OperatorSeries::top_power(&r.big, 0).unwrap_or(0);
    let coeffs = (1..=top)
        .map(|n| mixed_r_coefficient(r, delta, n))
        .collect::<Result<Vec<_>>>()?;
    let series = OperatorSeries::from_positive(&r.big, coeffs)?;
    let check = check_gauge_hodge(&series, &m)?;
    if !check.holds {
        return Err(Error::IdentityViolated(format!(
            "explicit mixed gauge fails at power {}",
            check.witness.map_or(0, |w| w.n)
        )));
    }
    Ok(series)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GaugeSearch {
    Found(OperatorSeries),
    /// No gauge exists; the witness is the least nonzero transferred operator.
    NoGaugeExists { witness: Obstruction },
}

impl GaugeSearch {
    pub fn is_found(&self) -> bool {
        matches!(self, GaugeSearch::Found(_))
    }
}

/// Finds `R` with `e^R d e^{−R} = D(z)` whenever one exists.
///
/// With Hodge data, `φ = r⁻¹ ∘ (p + q)` is an ∞-isotopy `(A, d, 0, …) ⇝ m`
/// and `R = log φ`. Without it, no gauge exists.
pub fn general_r_from_hodge(m: &Multicomplex) -> Result<GaugeSearch> {
    let splitting = build_retract(m.differential())?;
    let verdict = check_hodge_data(&splitting.retract, m)?;
    if let Some(witness) = verdict.witness {
        return Ok(GaugeSearch::NoGaugeExists { witness });
    }
    let model = minimal_model(m)?;
    let trivial_a = Multicomplex::trivial(m.differential().clone())?;
    let strict = InfinityMorphism::strict(trivial_a, model.product.clone(), model.r.component(0))?;
    let phi = model.r_inverse.compose(&strict)?;
    debug_assert!(phi.is_isotopy());
    let r = morphism_to_series(&phi)?.log()?;
    let check = check_gauge_hodge(&r, m)?;
    if !check.holds {
        return Err(Error::IdentityViolated("gauge from the minimal model fails".into()));
    }
    Ok(GaugeSearch::Found(r))
}

/// Helper for tests and generators: `c · id` at power zero.
pub fn scalar_series(space: &GradedVectorSpace, c: i64) -> OperatorSeries {
    OperatorSeries::unit(space).scale(&int(c))
}
