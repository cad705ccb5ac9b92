//! Standard Poisson and Jacobi structures.

use crate::linalg::int;

use super::poly::PolyVector;

/// `Σ_i ∂_{2i−1} ∧ ∂_{2i}` on `ℝᵐ`, `m` even.
pub fn symplectic(m: usize) -> PolyVector {
    assert!(m % 2 == 0, "symplectic structures need even dimension");
    let zero = vec![0; m];
    (0..m / 2).fold(PolyVector::zero(m), |acc, i| {
        acc.add(&PolyVector::monomial(m, int(1), &zero, &[2 * i, 2 * i + 1]))
    })
}

/// Lie–Poisson structure of `so(3)`: `x₃ ∂₁∧∂₂ + x₁ ∂₂∧∂₃ + x₂ ∂₃∧∂₁`.
pub fn so3() -> PolyVector {
    PolyVector::monomial(3, int(1), &[0, 0, 1], &[0, 1])
        .add(&PolyVector::monomial(3, int(1), &[1, 0, 0], &[1, 2]))
        .add(&PolyVector::monomial(3, int(1), &[0, 1, 0], &[2, 0]))
}

/// Contact-type Jacobi pair on `ℝ³`: `ω = ∂₂∧∂₁ + x₂ ∂₂∧∂₃`, `E = ∂₃`.
///
/// Found by exhausting coefficients in `{−1, 0, 1}` over constant and linear
/// terms; `E∧ω = −∂₁∧∂₂∧∂₃` so the pair is nondegenerate.
pub fn contact_jacobi() -> (PolyVector, PolyVector) {
    let w = PolyVector::monomial(3, int(1), &[0, 0, 0], &[1, 0])
        .add(&PolyVector::monomial(3, int(1), &[0, 1, 0], &[1, 2]));
    (w, PolyVector::generator(3, 2))
}
