//! Truncated polynomial de Rham complexes of Poisson and Jacobi structures.
//!
//! A bivector `ω` gives the Koszul operator `Δ = [i(ω), d]`. For Poisson `ω`
//! the triple `(Ω, d, Δ)` is a mixed complex with gauge `R(z) = i(ω) z`. For a
//! Jacobi pair `(ω, E)` the same gauge produces the multicomplex
//! `(d, Δ, i(E) i(ω))`, and basic forms carry a mixed complex.

pub mod ops;
pub mod poly;
pub mod structures;

use crate::error::{Error, Result};
use crate::gauge::{check_gauge_hodge, OperatorSeries};
use crate::graded::GradedMap;
use crate::linalg::{int, Matrix, Subspace};
use crate::multicomplex::Multicomplex;

pub use ops::{check_contraction_identity, exact_order, operator_order, FormAlgebra, FormOp};
pub use poly::{ContractionOrder, PolyForm, PolyVector};

pub fn d_de_rham(a: &FormAlgebra) -> GradedMap {
    a.matrix_of(&FormOp::d()).expect("d preserves the weight truncation")
}

pub fn contraction(p: &PolyVector, a: &FormAlgebra) -> Result<GradedMap> {
    a.matrix_of(&FormOp::contraction(p))
}

fn contraction_of_degree(p: &PolyVector, k: usize, a: &FormAlgebra) -> Result<GradedMap> {
    a.matrix_of(&FormOp::contraction_of_degree(p, k)?)
}

/// `Δ = [i(ω), d] = i(ω) d − d i(ω)` as a symbolic operator.
pub fn koszul_op(w: &PolyVector) -> Result<FormOp> {
    FormOp::commutator(&FormOp::contraction_of_degree(w, 2)?, &FormOp::d())
}

pub fn koszul_delta(w: &PolyVector, a: &FormAlgebra) -> Result<GradedMap> {
    a.matrix_of(&koszul_op(w)?)
}

fn check_bivector(w: &PolyVector) -> Result<()> {
    if w.degree_or(2)? != 2 {
        return Err(Error::DegreeMismatch { expected: 2, found: w.degree().unwrap_or(0) as i32 });
    }
    Ok(())
}

fn check_vector(e: &PolyVector) -> Result<()> {
    if e.degree_or(1)? != 1 {
        return Err(Error::DegreeMismatch { expected: 1, found: e.degree().unwrap_or(0) as i32 });
    }
    Ok(())
}

pub fn is_poisson(w: &PolyVector) -> bool {
    w.schouten(w).is_zero()
}

pub fn verify_poisson(w: &PolyVector) -> Result<()> {
    check_bivector(w)?;
    let bracket = w.schouten(w);
    if !bracket.is_zero() {
        return Err(Error::NotPoisson { bracket: bracket.to_string() });
    }
    Ok(())
}

/// `[ω, ω] = 2 E∧ω` and `[E, ω] = 0`.
pub fn verify_jacobi(w: &PolyVector, e: &PolyVector) -> Result<()> {
    check_bivector(w)?;
    check_vector(e)?;
    let first = w.schouten(w).sub(&e.wedge(w).scale(&int(2)));
    if !first.is_zero() {
        return Err(Error::NotJacobi { identity: "[ω,ω] = 2E∧ω", residue: first.to_string() });
    }
    let second = e.schouten(w);
    if !second.is_zero() {
        return Err(Error::NotJacobi { identity: "[E,ω] = 0", residue: second.to_string() });
    }
    Ok(())
}

pub fn is_jacobi(w: &PolyVector, e: &PolyVector) -> bool {
    verify_jacobi(w, e).is_ok()
}

/// Outcome of one operator identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityCheck {
    pub name: &'static str,
    pub holds: bool,
}

fn record(checks: &mut Vec<IdentityCheck>, name: &'static str, holds: bool) {
    checks.push(IdentityCheck { name, holds });
}

fn require(checks: &[IdentityCheck]) -> Result<()> {
    match checks.iter().find(|c| !c.holds) {
        Some(c) => Err(Error::IdentityViolated(c.name.to_string())),
        None => Ok(()),
    }
}

fn anticommutator(a: &GradedMap, b: &GradedMap) -> Result<GradedMap> {
    a.compose(b)?.add(&b.compose(a)?)
}

/// Geometric multicomplex together with its gauge and the identities checked.
#[derive(Clone, Debug)]
pub struct GeometricComplex {
    pub multicomplex: Multicomplex,
    /// `R(z) = i(ω) z`.
    pub gauge: OperatorSeries,
    pub checks: Vec<IdentityCheck>,
}

fn gauge_series(a: &FormAlgebra, w: &PolyVector) -> Result<OperatorSeries> {
    OperatorSeries::from_positive(a.space(), vec![contraction_of_degree(w, 2, a)?])
}

/// `(Ω, d, Δ)` for a Poisson bivector.
pub fn poisson_mixed_complex(w: &PolyVector, a: &FormAlgebra) -> Result<GeometricComplex> {
    verify_poisson(w)?;
    let d = d_de_rham(a);
    let delta = koszul_delta(w, a)?;
    let iw = contraction_of_degree(w, 2, a)?;
    let mut checks = Vec::new();
    record(&mut checks, "[ω,ω] = 0", true);
    record(&mut checks, "Δ² = 0", delta.compose(&delta)?.is_zero());
    record(&mut checks, "dΔ + Δd = 0", anticommutator(&d, &delta)?.is_zero());
    record(&mut checks, "[i(ω), Δ] = 0", iw.commutator(&delta)?.is_zero());
    let multicomplex = Multicomplex::new(a.space().clone(), vec![d, delta])?;
    let gauge = gauge_series(a, w)?;
    record(
        &mut checks,
        "e^{i(ω)z} d e^{−i(ω)z} = d + Δz",
        check_gauge_hodge(&gauge, &multicomplex)?.holds,
    );
    require(&checks)?;
    Ok(GeometricComplex { multicomplex, gauge, checks })
}

/// `(Ω, Δ₀ = d, Δ₁ = Δ, Δ₂ = i(E) i(ω))` for a Jacobi pair.
pub fn jacobi_multicomplex(w: &PolyVector, e: &PolyVector, a: &FormAlgebra) -> Result<GeometricComplex> {
    verify_jacobi(w, e)?;
    let d = d_de_rham(a);
    let delta = koszul_delta(w, a)?;
    let iw = contraction_of_degree(w, 2, a)?;
    let ie = contraction_of_degree(e, 1, a)?;
    let delta2 = ie.compose(&iw)?;
    let two = int(2);
    let mut checks = Vec::new();
    record(&mut checks, "Δ₀² = 0", d.compose(&d)?.is_zero());
    record(&mut checks, "Δ₀Δ₁ + Δ₁Δ₀ = 0", anticommutator(&d, &delta)?.is_zero());
    record(
        &mut checks,
        "Δ₁² + Δ₀Δ₂ + Δ₂Δ₀ = 0",
        delta.compose(&delta)?.add(&anticommutator(&d, &delta2)?)?.is_zero(),
    );
    record(&mut checks, "Δ₁Δ₂ + Δ₂Δ₁ = 0", anticommutator(&delta, &delta2)?.is_zero());
    record(&mut checks, "Δ₂² = 0", delta2.compose(&delta2)?.is_zero());
    record(&mut checks, "[i(ω), Δ] = 2 i(E) i(ω)", iw.commutator(&delta)? == delta2.scale(&two));
    record(&mut checks, "[i(ω), i(E) i(ω)] = 0", iw.commutator(&delta2)?.is_zero());
    let iwiw = iw.compose(&iw)?;
    let lhs = iw.compose(&d)?.compose(&iw)?.scale(&two);
    let rhs = iwiw.compose(&d)?.add(&d.compose(&iwiw)?)?.sub(&delta2.scale(&two))?;
    record(&mut checks, "2 i(ω) d i(ω) = i(ω)² d + d i(ω)² − 2 i(E) i(ω)", lhs == rhs);
    record(&mut checks, "i(E)Δ + Δi(E) = 0", anticommutator(&ie, &delta)?.is_zero());
    let multicomplex = Multicomplex::new(a.space().clone(), vec![d, delta, delta2])?;
    let gauge = gauge_series(a, w)?;
    record(
        &mut checks,
        "e^{i(ω)z} d e^{−i(ω)z} = Δ₀ + Δ₁z + Δ₂z²",
        check_gauge_hodge(&gauge, &multicomplex)?.holds,
    );
    require(&checks)?;
    Ok(GeometricComplex { multicomplex, gauge, checks })
}

/// Basic forms `Ω_B = ker i(E) ∩ ker i(E)d` with the mixed complex `(Ω_B, d, Δ)`.
#[derive(Clone, Debug)]
pub struct BasicComplex {
    pub multicomplex: Multicomplex,
    /// `Ω_B → Ω`, degree 0.
    pub inclusion: GradedMap,
    pub checks: Vec<IdentityCheck>,
}

pub fn basic_subcomplex(w: &PolyVector, e: &PolyVector, a: &FormAlgebra) -> Result<BasicComplex> {
    verify_jacobi(w, e)?;
    let d = d_de_rham(a);
    let delta = koszul_delta(w, a)?;
    let ie = contraction_of_degree(e, 1, a)?;
    let ied = ie.compose(&d)?;
    let space = a.space();

    let mut subspaces = Vec::new();
    for k in space.degrees() {
        let n = space.dim(k);
        let stacked = Matrix::vstack(&[&ie.block(k), &ied.block(k)]);
        let kernel = if stacked.nrows() == 0 { Subspace::full(n) } else { stacked.kernel() };
        subspaces.push((k, kernel));
    }
    let basic_space = crate::graded::GradedVectorSpace::new(subspaces.iter().map(|(k, s)| (*k, s.dim())));
    let inclusion = GradedMap::from_blocks(
        &basic_space,
        space,
        0,
        subspaces.iter().map(|(k, s)| (*k, s.basis().clone())),
    )?;

    // Restricts an endomorphism of Ω of the given degree to Ω_B, if it
    // preserves Ω_B.
    let restrict = |f: &GradedMap| -> Option<GradedMap> {
        let mut blocks = Vec::new();
        for (k, sub) in &subspaces {
            let target = k + f.degree();
            let image = &f.block(*k) * sub.basis();
            let coords = match subspaces.iter().find(|(t, _)| *t == target) {
                Some((_, dst)) => dst.solver().coordinates_of_columns(&image)?,
                None if image.is_zero() => continue,
                None => return None,
            };
            blocks.push((*k, coords));
        }
        Some(GradedMap::from_blocks(&basic_space, &basic_space, f.degree(), blocks).expect("restricted blocks fit"))
    };

    let mut checks = Vec::new();
    let d_b = restrict(&d);
    record(&mut checks, "d(Ω_B) ⊆ Ω_B", d_b.is_some());
    let delta_b = restrict(&delta);
    record(&mut checks, "Δ(Ω_B) ⊆ Ω_B", delta_b.is_some());
    record(&mut checks, "i(E)Δ + Δi(E) = 0", anticommutator(&ie, &delta)?.is_zero());
    require(&checks)?;
    let (d_b, delta_b) = (d_b.expect("checked"), delta_b.expect("checked"));
    record(&mut checks, "Δ²|_B = 0", delta_b.compose(&delta_b)?.is_zero());
    record(&mut checks, "dΔ + Δd = 0 on Ω_B", anticommutator(&d_b, &delta_b)?.is_zero());
    require(&checks)?;
    let multicomplex = Multicomplex::new(basic_space, vec![d_b, delta_b])?;
    Ok(BasicComplex { multicomplex, inclusion, checks })
}

/// Matrices of the given operators, `ops[n]` becoming `Δₙ`.
pub fn export_multicomplex(a: &FormAlgebra, ops: &[FormOp]) -> Result<Multicomplex> {
    let deltas = ops.iter().map(|op| a.matrix_of(op)).collect::<Result<Vec<_>>>()?;
    if deltas.is_empty() {
        return Ok(Multicomplex::zero(a.space()));
    }
    Multicomplex::new(a.space().clone(), deltas)
}

/// Orders of `d`, `Δ` and `i(E) i(ω)` as found by [`exact_order`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderLadder {
    pub d: Option<i32>,
    pub delta1: Option<i32>,
    pub delta2: Option<i32>,
}

pub fn order_ladder(w: &PolyVector, e: &PolyVector) -> Result<OrderLadder> {
    let m = w.dim();
    let delta1 = koszul_op(w)?;
    let delta2 = FormOp::contraction_of_degree(e, 1)?.then(&FormOp::contraction_of_degree(w, 2)?);
    Ok(OrderLadder {
        d: exact_order(&FormOp::d(), m, 4)?,
        delta1: exact_order(&delta1, m, 4)?,
        delta2: exact_order(&delta2, m, 4)?,
    })
}

#[cfg(test)]
mod tests {
    use super::structures::*;
    use super::*;
    use crate::linalg::int;

    #[test]
    fn zero_bivector_gives_trivial_mixed_complex() {
        let a = FormAlgebra::new(2, 2);
        let out = poisson_mixed_complex(&PolyVector::zero(2), &a).unwrap();
        assert!(out.multicomplex.has_trivial_higher_operators());
        assert!(out.gauge.is_zero());
    }

    #[test]
    fn koszul_on_symplectic_plane() {
        let a = FormAlgebra::new(2, 3);
        let w = symplectic(2);
        let delta = koszul_op(&w).unwrap();
        // d(x₁ dx₁∧dx₂) = 0 and i(ω)(x₁ dx₁∧dx₂) = x₁.
        let f = PolyForm::monomial(2, int(1), &[1, 0], &[0, 1]);
        assert_eq!(delta.apply(&f), PolyForm::generator(2, 0).neg());
        assert!(koszul_delta(&w, &a).is_ok());
    }

    #[test]
    fn not_poisson_is_rejected() {
        let m = 3;
        let w = PolyVector::monomial(m, int(1), &[0, 0, 0], &[0, 1])
            .add(&PolyVector::monomial(m, int(1), &[0, 1, 0], &[1, 2]));
        let a = FormAlgebra::new(m, 2);
        assert!(!is_poisson(&w));
        assert!(matches!(poisson_mixed_complex(&w, &a), Err(Error::NotPoisson { .. })));
    }

    #[test]
    fn anticommutation_for_any_bivector() {
        let m = 3;
        let w = PolyVector::monomial(m, int(1), &[0, 0, 1], &[0, 1])
            .add(&PolyVector::monomial(m, int(1), &[0, 0, 0], &[1, 2]));
        let a = FormAlgebra::new(m, 3);
        let d = d_de_rham(&a);
        let delta = koszul_delta(&w, &a).unwrap();
        assert!(anticommutator(&d, &delta).unwrap().is_zero());
    }

    #[test]
    fn jacobi_with_zero_reeb_field_is_mixed() {
        let a = FormAlgebra::new(3, 2);
        let out = jacobi_multicomplex(&so3(), &PolyVector::zero(3), &a).unwrap();
        assert!(out.multicomplex.is_mixed());
        let basic = basic_subcomplex(&so3(), &PolyVector::zero(3), &a).unwrap();
        assert_eq!(basic.multicomplex.space(), a.space());
    }

    #[test]
    fn export_of_empty_list() {
        let a = FormAlgebra::new(2, 1);
        assert_eq!(export_multicomplex(&a, &[]).unwrap(), Multicomplex::zero(a.space()));
    }
}
