//! Oracles shared by the integration tests.

#![allow(dead_code)]

use hodgegauge_core::graded::GradedMap;
use hodgegauge_core::linalg::Matrix;
use hodgegauge_core::spectral::{SpectralPage, TotalComplex};
use hodgegauge_core::transfer::DeformationRetract;
use hodgegauge_core::Multicomplex;

/// All compositions of `n` into positive parts.
pub fn compositions(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for first in 1..=n {
        for mut rest in compositions(n - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// `Σ_{i₁+⋯+i_k=n} Δ_{i₁} h ⋯ h Δ_{i_k}` by direct enumeration.
pub fn enumerate_sum(m: &Multicomplex, h: &GradedMap, n: usize) -> GradedMap {
    let mut total: Option<GradedMap> = None;
    for parts in compositions(n) {
        let mut word = m.delta(parts[0]);
        for &i in &parts[1..] {
            word = word.compose(h).unwrap().compose(&m.delta(i)).unwrap();
        }
        total = Some(match total {
            None => word,
            Some(t) => t.add(&word).unwrap(),
        });
    }
    total.unwrap()
}

/// `E^r_{s,n} → H_{n+2s}`: top-row component followed by `p`.
pub fn identification(t: &TotalComplex, e: &SpectralPage, r: &DeformationRetract, s: i32, n: i32) -> Matrix {
    let entry = &e.entries[&(s, n)];
    let columns: Vec<_> = entry
        .representatives()
        .columns()
        .iter()
        .map(|x| r.p.apply(n + 2 * s, &t.row_component(n, -s, x)))
        .collect();
    Matrix::from_columns(r.small.dim(n + 2 * s), &columns)
}

/// Checks `d^r = Δ'_r` under the identification for `r = 1`, and for `r = 2`
/// when `d¹ = 0`. Returns whether a nonzero `d²` was compared.
pub fn check_low_differentials(m: &Multicomplex, r: &DeformationRetract, transferred: &Multicomplex) -> Result<bool, String> {
    let t = hodgegauge_core::spectral::total_complex(m).map_err(|e| e.to_string())?;
    let e1 = hodgegauge_core::spectral::page(&t, 1);
    for (&(f, n), d) in &e1.differentials {
        if !e1.entries.contains_key(&(f + 1, n - 1)) {
            continue;
        }
        let src = identification(&t, &e1, r, f, n);
        let dst = identification(&t, &e1, r, f + 1, n - 1);
        if &dst * d != &transferred.delta(1).block(n + 2 * f) * &src {
            return Err(format!("d¹ ≠ Δ'₁ out of (s, n) = ({f}, {n})"));
        }
    }
    if !e1.differential_is_zero() {
        return Ok(false);
    }
    let e2 = hodgegauge_core::spectral::page(&t, 2);
    let mut nonzero = false;
    for (&(f, n), d) in &e2.differentials {
        if !e2.entries.contains_key(&(f + 2, n - 1)) {
            continue;
        }
        nonzero |= !d.is_zero();
        let src = identification(&t, &e2, r, f, n);
        let dst = identification(&t, &e2, r, f + 2, n - 1);
        if &dst * d != &transferred.delta(2).block(n + 2 * f) * &src {
            return Err(format!("d² ≠ Δ'₂ out of (s, n) = ({f}, {n})"));
        }
    }
    Ok(nonzero)
}
