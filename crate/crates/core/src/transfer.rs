//! Deformation retracts onto homology, homotopy transfer of multicomplex
//! structures, the Hodge-to-de Rham degeneration check and the minimal model.
//!
//! Conventions: a deformation retract satisfies `ip − id = d h + h d` and
//! `p i = id`. Retracts built here also satisfy `h i = 0`, `p h = 0`, `h h = 0`.

use rand::Rng;

use crate::error::{Error, Result};
use crate::graded::{GradedMap, GradedVectorSpace};
use crate::linalg::{Matrix, Subspace};
use crate::multicomplex::{product, InfinityMorphism, Multicomplex, Obstruction};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeformationRetract {
    pub big: GradedVectorSpace,
    pub small: GradedVectorSpace,
    /// `A → H`, degree 0.
    pub p: GradedMap,
    /// `H → A`, degree 0.
    pub i: GradedMap,
    /// `A → A`, degree +1.
    pub h: GradedMap,
    pub d_big: GradedMap,
    pub d_small: GradedMap,
}

impl DeformationRetract {
    /// Names of the retract identities that fail; empty when all hold.
    pub fn failed_identities(&self) -> Vec<&'static str> {
        let mut failed = Vec::new();
        let id_a = GradedMap::identity(&self.big);
        let id_h = GradedMap::identity(&self.small);
        let c = |g: &GradedMap, f: &GradedMap| g.compose(f).expect("retract maps compose");

        if c(&self.p, &self.d_big) != c(&self.d_small, &self.p) {
            failed.push("p is a chain map");
        }
        if c(&self.i, &self.d_small) != c(&self.d_big, &self.i) {
            failed.push("i is a chain map");
        }
        let lhs = c(&self.i, &self.p).sub(&id_a).expect("same shape");
        let rhs = c(&self.d_big, &self.h).add(&c(&self.h, &self.d_big)).expect("same shape");
        if lhs != rhs {
            failed.push("ip - id = dh + hd");
        }
        if c(&self.p, &self.i) != id_h {
            failed.push("pi = id");
        }
        if !c(&self.h, &self.i).is_zero() {
            failed.push("hi = 0");
        }
        if !c(&self.p, &self.h).is_zero() {
            failed.push("ph = 0");
        }
        if !c(&self.h, &self.h).is_zero() {
            failed.push("hh = 0");
        }
        failed
    }
}

/// A retract together with the complement `K = B ⊕ C` of the chosen homology
/// representatives: `A = H ⊕ K`.
#[derive(Clone, Debug)]
pub struct RetractSplitting {
    pub retract: DeformationRetract,
    pub complement: GradedVectorSpace,
    /// Projection `A → K` along `H`.
    pub q: GradedMap,
    /// Inclusion `K → A`.
    pub j: GradedMap,
    /// Differential of `K` (acyclic).
    pub d_complement: GradedMap,
}

struct DegreeSplitting {
    homology: Matrix,
    boundaries: Matrix,
    complement: Matrix,
    /// Inverse of `[H | B | C]`.
    inverse: Matrix,
}

fn random_matrix<R: Rng + ?Sized>(rng: &mut R, rows: usize, cols: usize) -> Matrix {
    let values: Vec<i64> = (0..rows * cols).map(|_| rng.gen_range(-2..=2)).collect();
    Matrix::from_i64(rows, cols, &values)
}

fn check_differential(d: &GradedMap) -> Result<()> {
    if d.degree() != -1 {
        return Err(Error::DegreeMismatch { expected: -1, found: d.degree() });
    }
    if !d.is_endomorphism() {
        return Err(Error::ShapeMismatch("differential must be an endomorphism".into()));
    }
    if let Some((degree, ..)) = d.compose(d)?.first_nonzero() {
        return Err(Error::NotSquareZero { degree });
    }
    Ok(())
}

/// The canonical retract: per degree `A = H ⊕ B ⊕ C` with `B = im d`,
/// `Z = ker d`, `H` a complement of `B` in `Z`, `C` a complement of `Z`, and
/// `h = −(d|_C)⁻¹` on `B`, zero on `H ⊕ C`.
pub fn build_retract(d: &GradedMap) -> Result<RetractSplitting> {
    build(d, None::<&mut rand_chacha::ChaCha8Rng>)
}

/// Like [`build_retract`], but with randomly perturbed representatives
/// `H' = H + B X` and complement `C' = C + (H ⊕ B) Y`.
pub fn build_perturbed_retract<R: Rng + ?Sized>(d: &GradedMap, rng: &mut R) -> Result<RetractSplitting> {
    build(d, Some(rng))
}

fn build<R: Rng + ?Sized>(d: &GradedMap, mut rng: Option<&mut R>) -> Result<RetractSplitting> {
    check_differential(d)?;
    let space = d.source().clone();
    let mut split = std::collections::BTreeMap::new();
    for k in space.degrees() {
        let n = space.dim(k);
        let cycles = d.block(k).kernel();
        let boundaries = d.block(k + 1).image();
        let mut homology = boundaries.complement_in(&cycles)?.basis().clone();
        let mut complement = cycles.complement_in(&Subspace::full(n))?.basis().clone();
        let boundaries = boundaries.basis().clone();
        if let Some(rng) = rng.as_deref_mut() {
            let x = random_matrix(rng, boundaries.ncols(), homology.ncols());
            homology = &homology + &(&boundaries * &x);
            let hb = Matrix::hstack(&[&homology, &boundaries]);
            let y = random_matrix(rng, hb.ncols(), complement.ncols());
            complement = &complement + &(&hb * &y);
        }
        let inverse = Matrix::hstack(&[&homology, &boundaries, &complement])
            .inverse()
            .expect("H ⊕ B ⊕ C spans A");
        split.insert(k, DegreeSplitting { homology, boundaries, complement, inverse });
    }

    let small = GradedVectorSpace::new(split.iter().map(|(&k, s)| (k, s.homology.ncols())));
    let complement_space = GradedVectorSpace::new(
        split.iter().map(|(&k, s)| (k, s.boundaries.ncols() + s.complement.ncols())),
    );

    let mut p_blocks = Vec::new();
    let mut i_blocks = Vec::new();
    let mut q_blocks = Vec::new();
    let mut j_blocks = Vec::new();
    let mut h_blocks = Vec::new();
    for (&k, s) in &split {
        let (nh, nb) = (s.homology.ncols(), s.boundaries.ncols());
        let n = space.dim(k);
        p_blocks.push((k, s.inverse.row_range(0, nh)));
        i_blocks.push((k, s.homology.clone()));
        q_blocks.push((k, s.inverse.row_range(nh, n)));
        j_blocks.push((k, Matrix::hstack(&[&s.boundaries, &s.complement])));
        if let Some(up) = split.get(&(k + 1)) {
            if nb > 0 {
                let to_b = s.inverse.row_range(nh, nh + nb);
                let restricted = &to_b * &(&d.block(k + 1) * &up.complement);
                let inv = restricted.inverse().expect("d restricts to an isomorphism C → B");
                h_blocks.push((k, -&(&up.complement * &(&inv * &to_b))));
            }
        }
    }
    let p = GradedMap::from_blocks(&space, &small, 0, p_blocks)?;
    let i = GradedMap::from_blocks(&small, &space, 0, i_blocks)?;
    let h = GradedMap::from_blocks(&space, &space, 1, h_blocks)?;
    let q = GradedMap::from_blocks(&space, &complement_space, 0, q_blocks)?;
    let j = GradedMap::from_blocks(&complement_space, &space, 0, j_blocks)?;
    let d_complement = q.compose(&d.compose(&j)?)?;
    let retract = DeformationRetract {
        big: space.clone(),
        small: small.clone(),
        p,
        i,
        h,
        d_big: d.clone(),
        d_small: GradedMap::zero(&small, &small, -1),
    };
    Ok(RetractSplitting { retract, complement: complement_space, q, j, d_complement })
}

#[derive(Clone, Debug)]
pub struct TransferOutput {
    pub transferred: Multicomplex,
    pub i_inf: InfinityMorphism,
    pub p_inf: InfinityMorphism,
    /// `qₙ = −(id − ip) h Δₙ` for n ≥ 1 (index 0 holds n = 1), as maps
    /// `A → A` landing in the complement of the homology representatives.
    pub q_comps: Vec<GradedMap>,
}

/// `Tₙ = Σ_{i₁+⋯+i_k=n} Δ_{i₁} h Δ_{i₂} h ⋯ h Δ_{i_k}` for n = 1..=top, via
/// `Tₙ = Δₙ + Σ_{j=1}^{n−1} Δ_j h T_{n−j}`.
fn composition_sums(m: &Multicomplex, h: &GradedMap, top: usize) -> Result<Vec<GradedMap>> {
    let mut sums: Vec<GradedMap> = Vec::with_capacity(top);
    for n in 1..=top {
        let mut acc = m.delta(n);
        for j in 1..n {
            let tail = &sums[n - j - 1];
            acc = acc.add(&m.delta(j).compose(&h.compose(tail)?)?)?;
        }
        sums.push(acc);
    }
    Ok(sums)
}

fn check_match(r: &DeformationRetract, m: &Multicomplex) -> Result<()> {
    if m.space() != &r.big {
        return Err(Error::Mismatch("multicomplex space differs from the retract's big space".into()));
    }
    if m.differential() != &r.d_big {
        return Err(Error::Mismatch("Δ₀ differs from the retract's differential".into()));
    }
    Ok(())
}

/// Transferred operators `Δ'ₙ = Σ p Δ_{i₁} h ⋯ h Δ_{i_k} i` together with the
/// extensions `i_∞`, `p_∞`.
pub fn transfer_structure(r: &DeformationRetract, m: &Multicomplex) -> Result<TransferOutput> {
    check_match(r, m)?;
    let top = m.n_max();
    let sums = composition_sums(m, &r.h, top)?;
    let mut deltas = vec![r.d_small.clone()];
    let mut i_comps = vec![r.i.clone()];
    let mut p_comps = vec![r.p.clone()];
    let mut q_comps = Vec::new();
    let projector = GradedMap::identity(&r.big).sub(&r.i.compose(&r.p)?)?;
    for (idx, t) in sums.iter().enumerate() {
        let n = idx + 1;
        deltas.push(r.p.compose(&t.compose(&r.i)?)?);
        i_comps.push(r.h.compose(&t.compose(&r.i)?)?);
        p_comps.push(r.p.compose(&t.compose(&r.h)?)?);
        q_comps.push(projector.compose(&r.h.compose(&m.delta(n))?)?.neg());
    }
    let transferred = Multicomplex::new(r.small.clone(), deltas)?;
    let i_inf = InfinityMorphism::new(transferred.clone(), m.clone(), i_comps)?;
    let p_inf = InfinityMorphism::new(m.clone(), transferred.clone(), p_comps)?;
    Ok(TransferOutput { transferred, i_inf, p_inf, q_comps })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HodgeVerdict {
    pub holds: bool,
    /// Least n with `Δ'ₙ ≠ 0` and its first nonzero entry.
    pub witness: Option<Obstruction>,
}

/// True iff every transferred higher operator vanishes.
pub fn check_hodge_data(r: &DeformationRetract, m: &Multicomplex) -> Result<HodgeVerdict> {
    let out = transfer_structure(r, m)?;
    let witness = out
        .transferred
        .deltas()
        .iter()
        .enumerate()
        .skip(1)
        .find_map(|(n, delta)| Obstruction::from_map(n, delta));
    Ok(HodgeVerdict { holds: witness.is_none(), witness })
}

#[derive(Clone, Debug)]
pub struct MinimalModel {
    /// `(H, 0, Δ'₁, Δ'₂, …)`.
    pub minimal: Multicomplex,
    /// `(K, d_K, 0, …)`, acyclic.
    pub trivial: Multicomplex,
    pub product: Multicomplex,
    /// `A ⇝ H ⊕ K` with `r₀ = p + q` and `rₙ = pₙ + qₙ`.
    pub r: InfinityMorphism,
    pub r_inverse: InfinityMorphism,
    pub splitting: RetractSplitting,
    pub transfer: TransferOutput,
}

pub fn minimal_model(m: &Multicomplex) -> Result<MinimalModel> {
    let splitting = build_retract(m.differential())?;
    minimal_model_with(m, splitting)
}

/// Minimal model relative to a given splitting of `Δ₀`.
pub fn minimal_model_with(m: &Multicomplex, splitting: RetractSplitting) -> Result<MinimalModel> {
    let r = &splitting.retract;
    let transfer = transfer_structure(r, m)?;
    let minimal = transfer.transferred.clone();
    let trivial = Multicomplex::trivial(splitting.d_complement.clone())?;
    let prod = product(&minimal, &trivial)?.multicomplex;

    let mut comps = vec![r.p.stack(&splitting.q)?];
    let top = transfer.p_inf.components().len().max(transfer.q_comps.len() + 1);
    for n in 1..top {
        let pn = transfer.p_inf.component(n);
        let qn = match transfer.q_comps.get(n - 1) {
            Some(q) => splitting.q.compose(q)?,
            None => GradedMap::zero(&r.big, &splitting.complement, 2 * n as i32),
        };
        comps.push(pn.stack(&qn)?);
    }
    let r_inf = InfinityMorphism::new(m.clone(), prod.clone(), comps)?;
    let r_inverse = r_inf.invert()?;
    Ok(MinimalModel {
        minimal,
        trivial,
        product: prod,
        r: r_inf,
        r_inverse,
        splitting,
        transfer,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graded::homology;

    fn line() -> GradedVectorSpace {
        GradedVectorSpace::new([(0, 1), (1, 1)])
    }

    #[test]
    fn zero_differential_gives_identity_retract() {
        let a = GradedVectorSpace::new([(0, 2), (1, 1)]);
        let s = build_retract(&GradedMap::zero(&a, &a, -1)).unwrap();
        let r = &s.retract;
        assert_eq!(r.small, a);
        assert!(r.h.is_zero());
        assert_eq!(r.p, GradedMap::identity(&a));
        assert_eq!(r.i, GradedMap::identity(&a));
        assert!(r.failed_identities().is_empty());
    }

    #[test]
    fn acyclic_line_has_inverse_homotopy() {
        let a = line();
        let d = GradedMap::from_blocks(&a, &a, -1, [(1, Matrix::from_i64(1, 1, &[1]))]).unwrap();
        let s = build_retract(&d).unwrap();
        assert!(s.retract.small.is_zero());
        // ip − id = dh + hd forces h = −d⁻¹.
        assert_eq!(s.retract.h.block(0), Matrix::from_i64(1, 1, &[-1]));
        assert!(s.retract.failed_identities().is_empty());
    }

    #[test]
    fn rank_one_differential() {
        let a = GradedVectorSpace::new([(0, 2), (1, 2)]);
        let d = GradedMap::from_blocks(&a, &a, -1, [(1, Matrix::from_i64(2, 2, &[1, 0, 0, 0]))]).unwrap();
        let s = build_retract(&d).unwrap();
        assert_eq!(s.retract.small, GradedVectorSpace::new([(0, 1), (1, 1)]));
        assert_eq!(s.retract.small, homology(&d).unwrap());
        assert!(s.retract.failed_identities().is_empty());
        assert!(homology(&s.d_complement).unwrap().is_zero());
    }

    #[test]
    fn rejects_non_square_zero() {
        let a = GradedVectorSpace::new([(0, 1), (1, 1), (2, 1)]);
        let d = GradedMap::from_blocks(
            &a,
            &a,
            -1,
            [(1, Matrix::from_i64(1, 1, &[1])), (2, Matrix::from_i64(1, 1, &[1]))],
        )
        .unwrap();
        assert!(matches!(build_retract(&d), Err(Error::NotSquareZero { .. })));
    }

    #[test]
    fn hodge_fails_for_zero_differential_with_delta() {
        let a = line();
        let delta = GradedMap::from_blocks(&a, &a, 1, [(0, Matrix::from_i64(1, 1, &[1]))]).unwrap();
        let m = Multicomplex::new(a.clone(), vec![GradedMap::zero(&a, &a, -1), delta]).unwrap();
        let s = build_retract(m.differential()).unwrap();
        let v = check_hodge_data(&s.retract, &m).unwrap();
        assert!(!v.holds);
        assert_eq!(v.witness.unwrap().n, 1);
    }

    #[test]
    fn transfer_rejects_mismatched_differential() {
        let a = line();
        let d = GradedMap::from_blocks(&a, &a, -1, [(1, Matrix::from_i64(1, 1, &[1]))]).unwrap();
        let s = build_retract(&GradedMap::zero(&a, &a, -1)).unwrap();
        let m = Multicomplex::trivial(d).unwrap();
        assert!(matches!(transfer_structure(&s.retract, &m), Err(Error::Mismatch(_))));
    }
}
