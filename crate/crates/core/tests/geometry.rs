//! Worked examples for the polynomial de Rham builder.

use hodgegauge_core::geometry::ops::expected_dimension;
use hodgegauge_core::geometry::structures::{contact_jacobi, so3, symplectic};
use hodgegauge_core::geometry::{
    basic_subcomplex, contraction, d_de_rham, export_multicomplex, is_jacobi, is_poisson, jacobi_multicomplex,
    koszul_delta, koszul_op, poisson_mixed_complex, FormAlgebra, FormOp, PolyForm, PolyVector,
};
use hodgegauge_core::linalg::int;
use hodgegauge_core::multicomplex::validate_multicomplex;
use hodgegauge_core::spectral::{degenerates_at_one, total_complex};
use hodgegauge_core::Error;

fn vf(m: usize, c: i64, e: &[u32], idx: &[usize]) -> PolyVector {
    PolyVector::monomial(m, int(c), e, idx)
}

#[test]
fn de_rham_examples() {
    assert!(PolyForm::constant(2, int(1)).d().is_zero());
    let f = PolyForm::monomial(2, int(1), &[1, 0], &[1]);
    assert_eq!(f.d(), PolyForm::monomial(2, int(1), &[0, 0], &[0, 1]));
    let a = FormAlgebra::new(3, 3);
    let d = d_de_rham(&a);
    assert!(d.compose(&d).unwrap().is_zero());
}

#[test]
fn exported_dimensions() {
    let a = FormAlgebra::new(3, 2);
    let dims: Vec<usize> = (0..=3).map(|k| a.space().dim(-k)).collect();
    // 0-forms of degree ≤ 2, 1-forms of degree ≤ 1, constant 2-forms.
    assert_eq!(dims, vec![10, 12, 3, 0]);
    for k in 0..=3 {
        assert_eq!(dims[k], expected_dimension(3, 2, k));
    }
}

#[test]
fn contraction_examples() {
    let m = 3;
    let dx1 = PolyForm::generator(m, 0);
    let a = FormAlgebra::new(m, 2);
    let i1 = contraction(&vf(m, 1, &[0, 0, 0], &[0]), &a).unwrap();
    assert_eq!(i1.degree(), 1);
    assert_eq!(FormOp::contraction(&vf(m, 1, &[0, 0, 0], &[0])).apply(&dx1), PolyForm::constant(m, int(1)));
    let dx3 = PolyForm::generator(m, 2);
    assert!(FormOp::contraction(&vf(m, 1, &[0, 0, 0], &[0, 1])).apply(&dx3).is_zero());
    let dx12 = PolyForm::monomial(m, int(1), &[0, 0, 0], &[0, 1]);
    assert_eq!(FormOp::contraction(&symplectic(2)).apply(&PolyForm::monomial(2, int(1), &[0, 0], &[0, 1])), PolyForm::constant(2, int(1)));
    assert_eq!(FormOp::contraction(&vf(m, 1, &[0, 0, 0], &[1, 0])).apply(&dx12), PolyForm::constant(m, int(-1)));
}

#[test]
fn schouten_examples() {
    let m = 2;
    assert!(vf(m, 1, &[0, 0], &[0]).schouten(&vf(m, 1, &[0, 0], &[1])).is_zero());
    assert_eq!(vf(m, 1, &[0, 0], &[0]).schouten(&vf(m, 1, &[1, 0], &[1])), vf(m, 1, &[0, 0], &[1]));
    assert!(so3().schouten(&so3()).is_zero());
}

#[test]
fn poisson_examples() {
    assert!(is_poisson(&PolyVector::zero(3)));
    assert!(is_poisson(&symplectic(2)));
    assert!(is_poisson(&so3()));
    let a = FormAlgebra::new(2, 2);
    let zero = koszul_delta(&PolyVector::zero(2), &a).unwrap();
    assert!(zero.is_zero());

    let plane = poisson_mixed_complex(&symplectic(2), &a).unwrap();
    assert!(plane.checks.iter().all(|c| c.holds));
    assert!(validate_multicomplex(&plane.multicomplex).is_valid());

    let a3 = FormAlgebra::new(3, 2);
    let lie = poisson_mixed_complex(&so3(), &a3).unwrap();
    assert!(degenerates_at_one(&total_complex(&lie.multicomplex).unwrap()).degenerate);
    let exported = export_multicomplex(&a3, &[FormOp::d(), koszul_op(&so3()).unwrap()]).unwrap();
    assert_eq!(exported, lie.multicomplex);
}

#[test]
fn anticommutation_holds_for_any_bivector() {
    let m = 3;
    let w = vf(m, 1, &[0, 0, 0], &[0, 1]).add(&vf(m, 1, &[0, 1, 0], &[1, 2])).add(&vf(m, 2, &[1, 0, 0], &[0, 2]));
    assert!(!is_poisson(&w));
    let a = FormAlgebra::new(m, 3);
    let d = d_de_rham(&a);
    let delta = koszul_delta(&w, &a).unwrap();
    assert!(d.compose(&delta).unwrap().add(&delta.compose(&d).unwrap()).unwrap().is_zero());
    assert!(matches!(poisson_mixed_complex(&w, &a), Err(Error::NotPoisson { .. })));
}

#[test]
fn jacobi_examples() {
    assert!(is_jacobi(&PolyVector::zero(3), &vf(3, 1, &[0, 0, 0], &[2])));
    assert!(is_jacobi(&so3(), &PolyVector::zero(3)));
    let a = FormAlgebra::new(3, 2);
    let poisson = jacobi_multicomplex(&so3(), &PolyVector::zero(3), &a).unwrap();
    assert!(poisson.multicomplex.delta(2).is_zero());

    let (w, e) = contact_jacobi();
    let a = FormAlgebra::new(3, 3);
    let out = jacobi_multicomplex(&w, &e, &a).unwrap();
    let names: Vec<_> = out.checks.iter().map(|c| c.name).collect();
    assert!(names.contains(&"2 i(ω) d i(ω) = i(ω)² d + d i(ω)² − 2 i(E) i(ω)"));
    assert!(out.checks.iter().all(|c| c.holds));
    assert!(validate_multicomplex(&out.multicomplex).is_valid());

    let not_jacobi = jacobi_multicomplex(&w, &PolyVector::zero(3), &a);
    assert!(matches!(not_jacobi, Err(Error::NotJacobi { .. })));
}

#[test]
fn basic_forms() {
    let a = FormAlgebra::new(3, 2);
    let all = basic_subcomplex(&so3(), &PolyVector::zero(3), &a).unwrap();
    assert_eq!(all.multicomplex.space(), a.space());

    let (w, e) = contact_jacobi();
    let basic = basic_subcomplex(&w, &e, &a).unwrap();
    // Basic forms do not involve x₃ or dx₃.
    let ie = contraction(&e, &a).unwrap();
    let d = d_de_rham(&a);
    for k in basic.multicomplex.space().degrees() {
        let incl = basic.inclusion.block(k);
        assert!((&ie.block(k) * &incl).is_zero());
        assert!((&ie.block(k - 1) * &(&d.block(k) * &incl)).is_zero());
    }
    assert!(degenerates_at_one(&total_complex(&basic.multicomplex).unwrap()).degenerate);
}
