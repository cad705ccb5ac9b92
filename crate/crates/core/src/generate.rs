//! Seeded random multicomplexes.
//!
//! * Profile `a`: `e^{R} d e^{−R}` for random `d` and `R`; always Hodge.
//! * Profile `b`: a minimal part `(H, 0, …, Δ_k, …)` with `Δ_k² = 0`, `Δ_k ≠ 0`,
//!   plus an acyclic summand, conjugated by a random `e^R`; never Hodge.
//! * Profile `c`: sums of small hand-built mixed complexes.
//!
//! Every instance has grading width at most 6 and dimension at most 4 in each
//! degree. All instances are finally written in a random basis.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::gauge::{conjugate_series, gauge_construct, OperatorSeries};
use crate::graded::{max_power, GradedMap, GradedVectorSpace};
use crate::linalg::{int, Matrix};
use crate::multicomplex::{product, Multicomplex};

pub const MAX_WIDTH: i32 = 6;
pub const MAX_DIM: usize = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Profile {
    A,
    B,
    C,
}

impl Profile {
    pub const ALL: [Profile; 3] = [Profile::A, Profile::B, Profile::C];

    pub fn as_str(self) -> &'static str {
        match self {
            Profile::A => "a",
            Profile::B => "b",
            Profile::C => "c",
        }
    }
}

impl fmt::Display for Profile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Profile {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "a" | "A" => Ok(Profile::A),
            "b" | "B" => Ok(Profile::B),
            "c" | "C" => Ok(Profile::C),
            other => Err(format!("unknown profile {other:?}, expected a, b or c")),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Instance {
    pub multicomplex: Multicomplex,
    pub profile: Profile,
    pub seed: u64,
    /// Whether the construction guarantees Hodge data; `None` if not known
    /// in advance.
    pub expected_hodge: Option<bool>,
    pub description: String,
}

pub fn rng_for(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn generate(profile: Profile, seed: u64) -> Instance {
    let mut rng = rng_for(seed);
    let (multicomplex, expected_hodge, description) = match profile {
        Profile::A => {
            let (d, r) = random_gauge_pair(&mut rng);
            let m = gauge_construct(&d, &r).expect("conjugating a differential gives a multicomplex");
            (m, Some(true), "gauge orbit of a random differential".to_string())
        }
        Profile::B => {
            let (m, k) = random_nondegenerate(&mut rng);
            (m, Some(false), format!("minimal part with square-zero operator at z^{k}, gauge-conjugated"))
        }
        Profile::C => {
            let (m, hodge, names) = random_block_sum(&mut rng, false);
            (m, Some(hodge), format!("sum of blocks: {}", names.join(", ")))
        }
    };
    Instance { multicomplex, profile, seed, expected_hodge, description }
}

/// Profile-`c` instances built only from blocks carrying Hodge data.
pub fn generate_mixed_hodge(seed: u64) -> Instance {
    let mut rng = rng_for(seed);
    let (multicomplex, _, names) = random_block_sum(&mut rng, true);
    Instance {
        multicomplex,
        profile: Profile::C,
        seed,
        expected_hodge: Some(true),
        description: format!("sum of blocks: {}", names.join(", ")),
    }
}

/// `count` instances cycling through the profiles, seeds `base, base+1, …`.
pub fn corpus(count: usize, base_seed: u64) -> Vec<Instance> {
    (0..count)
        .map(|k| generate(Profile::ALL[k % 3], base_seed + k as u64))
        .collect()
}

/// Grading window `lo ..= lo + width` with dims in `0..=max_dim`, nonzero total.
pub fn random_space<R: Rng + ?Sized>(rng: &mut R, max_width: i32, max_dim: usize) -> GradedVectorSpace {
    loop {
        let lo = rng.gen_range(-2..=1);
        let width = rng.gen_range(1..=max_width);
        let space = GradedVectorSpace::new((lo..=lo + width).map(|k| (k, rng.gen_range(0..=max_dim))));
        if space.total_dim() > 0 {
            return space;
        }
    }
}

/// Unit-triangular factors give an invertible integer matrix with integer
/// inverse and small entries.
pub fn random_invertible<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Matrix {
    let mut lower = Vec::new();
    let mut upper = Vec::new();
    for i in 0..n {
        lower.push((i, i, int(1)));
        upper.push((i, i, int(1)));
        for j in 0..i {
            lower.push((i, j, int(rng.gen_range(-1..=1))));
            upper.push((j, i, int(rng.gen_range(-1..=1))));
        }
    }
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let p = Matrix::from_entries(n, n, perm.iter().enumerate().map(|(i, &j)| (i, j, int(1))));
    &p * &(&Matrix::from_entries(n, n, lower) * &Matrix::from_entries(n, n, upper))
}

/// A random degree-zero automorphism of `space`.
pub fn random_automorphism<R: Rng + ?Sized>(rng: &mut R, space: &GradedVectorSpace) -> GradedMap {
    let blocks: Vec<(i32, Matrix)> = space
        .dims()
        .iter()
        .map(|(&k, &n)| (k, random_invertible(rng, n)))
        .collect();
    GradedMap::from_blocks(space, space, 0, blocks).expect("square blocks")
}

/// Random map of the given degree with entries in `−1..=1`.
pub fn random_map<R: Rng + ?Sized>(rng: &mut R, space: &GradedVectorSpace, degree: i32) -> GradedMap {
    let blocks: Vec<(i32, Matrix)> = space
        .dims()
        .iter()
        .filter_map(|(&k, &n)| {
            let rows = space.dim(k + degree);
            (rows > 0).then(|| {
                let values: Vec<i64> = (0..rows * n)
                    .map(|_| if rng.gen_bool(0.5) { rng.gen_range(-1..=1) } else { 0 })
                    .collect();
                (k, Matrix::from_i64(rows, n, &values))
            })
        })
        .collect();
    GradedMap::from_blocks(space, space, degree, blocks).expect("blocks fit")
}

/// A random square-zero map of odd degree in a standard form: per degree,
/// images first, then untouched vectors, then the vectors that map.
pub fn random_square_zero<R: Rng + ?Sized>(rng: &mut R, space: &GradedVectorSpace, degree: i32) -> GradedMap {
    assert!(degree % 2 != 0, "square-zero maps here have odd degree");
    let mut degrees: Vec<i32> = space.degrees().collect();
    if degree < 0 {
        degrees.reverse();
    }
    let mut used = std::collections::BTreeMap::<i32, usize>::new();
    let mut blocks = Vec::new();
    for k in degrees {
        let n = space.dim(k);
        let target = k + degree;
        let free = n - used.get(&k).copied().unwrap_or(0);
        let rank = rng.gen_range(0..=free.min(space.dim(target)));
        if rank == 0 {
            continue;
        }
        used.insert(target, rank);
        let entries = (0..rank).map(|t| (t, n - rank + t, int(1)));
        blocks.push((k, Matrix::from_entries(space.dim(target), n, entries)));
    }
    GradedMap::from_blocks(space, space, degree, blocks).expect("standard blocks fit")
}

/// `g f g⁻¹`.
pub fn conjugate_map(g: &GradedMap, g_inv: &GradedMap, f: &GradedMap) -> GradedMap {
    g.compose(f).and_then(|gf| gf.compose(g_inv)).expect("endomorphisms of one space")
}

/// Rewrites every operator in the basis given by `g`.
pub fn change_basis(m: &Multicomplex, g: &GradedMap) -> Multicomplex {
    let g_inv = g.inverse().expect("automorphism");
    let deltas = m.deltas().iter().map(|f| conjugate_map(g, &g_inv, f)).collect();
    Multicomplex::new(m.space().clone(), deltas).expect("conjugation preserves degrees")
}

/// `R = Σ_{n≥1} Rₙ zⁿ` with random `Rₙ`.
pub fn random_gauge<R: Rng + ?Sized>(rng: &mut R, space: &GradedVectorSpace) -> OperatorSeries {
    let top = max_power(space, space, 0).unwrap_or(0);
    let coeffs = (1..=top).map(|n| random_map(rng, space, 2 * n as i32)).collect();
    OperatorSeries::from_positive(space, coeffs).expect("degrees 2n")
}

/// A random differential `d` in a random basis together with a random gauge.
pub fn random_gauge_pair<R: Rng + ?Sized>(rng: &mut R) -> (GradedMap, OperatorSeries) {
    let space = random_space(rng, MAX_WIDTH, MAX_DIM);
    let d = random_square_zero(rng, &space, -1);
    let g = random_automorphism(rng, &space);
    let d = conjugate_map(&g, &g.inverse().expect("automorphism"), &d);
    let r = random_gauge(rng, &space);
    (d, r)
}

/// An acyclic differential on a random window: `dim_k = ρ_k + ρ_{k+1}` with
/// `ρ_k ≤ 1` the rank of `d` out of degree `k`.
fn random_acyclic<R: Rng + ?Sized>(rng: &mut R, lo: i32, hi: i32) -> Multicomplex {
    let ranks: Vec<usize> = (lo..=hi + 1)
        .map(|k| if k == lo || k == hi + 1 { 0 } else { rng.gen_range(0..=1) })
        .collect();
    let space = GradedVectorSpace::new((lo..=hi).map(|k| {
        let i = (k - lo) as usize;
        (k, ranks[i] + ranks[i + 1])
    }));
    // In degree k the first ρ_{k+1} vectors are boundaries, the last ρ_k map.
    let blocks: Vec<(i32, Matrix)> = (lo..=hi)
        .filter_map(|k| {
            let rank = ranks[(k - lo) as usize];
            (rank > 0).then(|| {
                let n = space.dim(k);
                let entries = (0..rank).map(|t| (t, n - rank + t, int(1)));
                (k, Matrix::from_entries(space.dim(k - 1), n, entries))
            })
        })
        .collect();
    let d = GradedMap::from_blocks(&space, &space, -1, blocks).expect("standard blocks fit");
    Multicomplex::trivial(d).expect("square-zero")
}

/// Profile `b`; returns the instance and the power `k` of its minimal operator.
pub fn random_nondegenerate<R: Rng + ?Sized>(rng: &mut R) -> (Multicomplex, usize) {
    loop {
        let lo = rng.gen_range(-2..=1);
        let width = rng.gen_range(1..=MAX_WIDTH);
        let max_k = ((width + 1) / 2) as usize;
        let k = if rng.gen_bool(0.7) { 1 } else { rng.gen_range(1..=max_k) };
        let h_space = GradedVectorSpace::new((lo..=lo + width).map(|j| (j, rng.gen_range(0..=2))));
        let delta = random_square_zero(rng, &h_space, 2 * k as i32 - 1);
        if delta.is_zero() {
            continue;
        }
        let mut deltas = vec![GradedMap::zero(&h_space, &h_space, -1)];
        for n in 1..k {
            deltas.push(GradedMap::zero(&h_space, &h_space, 2 * n as i32 - 1));
        }
        deltas.push(delta);
        let minimal = Multicomplex::new(h_space, deltas).expect("minimal operators have the right degrees");
        let acyclic = random_acyclic(rng, lo, lo + width);
        let sum = product(&minimal, &acyclic).expect("product of multicomplexes").multicomplex;
        if sum.space().dims().values().any(|&n| n > MAX_DIM) {
            continue;
        }
        let r = random_gauge(rng, sum.space());
        let conjugated = conjugate_series(&r, &OperatorSeries::from_multicomplex(&sum)).expect("gauge series");
        let m = Multicomplex::new(sum.space().clone(), conjugated.coeffs().to_vec()).expect("degrees preserved");
        let g = random_automorphism(rng, m.space());
        return (change_basis(&m, &g), k);
    }
}

/// A small mixed complex: dims by degree, `d` and `Δ` as lists of
/// `(source degree, row, col, value)` on a window starting at degree 0.
struct Block {
    name: &'static str,
    dims: &'static [usize],
    d: &'static [(i32, usize, usize, i64)],
    delta: &'static [(i32, usize, usize, i64)],
    hodge: bool,
}

const BLOCKS: &[Block] = &[
    Block { name: "dot", dims: &[1], d: &[], delta: &[], hodge: true },
    Block { name: "d-arrow", dims: &[1, 1], d: &[(1, 0, 0, 1)], delta: &[], hodge: true },
    Block { name: "delta-arrow", dims: &[1, 1], d: &[], delta: &[(0, 0, 0, 1)], hodge: false },
    // x in degree 1 with dx = y, Δx = z, dz = w = −Δy; degree 1 basis (x, w).
    Block {
        name: "square",
        dims: &[1, 2, 1],
        d: &[(1, 0, 0, 1), (2, 1, 0, 1)],
        delta: &[(0, 1, 0, -1), (1, 0, 0, 1)],
        hodge: true,
    },
    // a, Δa = db.
    Block { name: "zigzag", dims: &[1, 1, 1], d: &[(2, 0, 0, 1)], delta: &[(0, 0, 0, 1)], hodge: true },
    // a, Δa = db, Δb = dc.
    Block {
        name: "staircase",
        dims: &[1, 1, 1, 1, 1],
        d: &[(2, 0, 0, 1), (4, 0, 0, 1)],
        delta: &[(0, 0, 0, 1), (2, 0, 0, 1)],
        hodge: true,
    },
    // u, Δu = dy, Δy = v: the first page differential vanishes, the second does not.
    Block {
        name: "zigzag-v",
        dims: &[1, 1, 1, 1],
        d: &[(2, 0, 0, 1)],
        delta: &[(0, 0, 0, 1), (2, 0, 0, 1)],
        hodge: false,
    },
];

fn block_multicomplex(block: &Block, shift: i32) -> Multicomplex {
    let space = GradedVectorSpace::new(block.dims.iter().enumerate().map(|(k, &n)| (k as i32 + shift, n)));
    let build = |degree: i32, entries: &[(i32, usize, usize, i64)]| {
        let mut by_degree = std::collections::BTreeMap::<i32, Vec<_>>::new();
        for &(k, r, c, v) in entries {
            by_degree.entry(k + shift).or_default().push((r, c, int(v)));
        }
        let blocks: Vec<(i32, Matrix)> = by_degree
            .into_iter()
            .map(|(k, e)| (k, Matrix::from_entries(space.dim(k + degree), space.dim(k), e)))
            .collect();
        GradedMap::from_blocks(&space, &space, degree, blocks).expect("block tables fit")
    };
    let d = build(-1, block.d);
    let delta = build(1, block.delta);
    Multicomplex::new(space.clone(), vec![d, delta]).expect("block operators have the right degrees")
}

/// Profile `c`: one to four blocks at random shifts, in a random basis.
/// Returns the instance, whether it carries Hodge data, and the block names.
pub fn random_block_sum<R: Rng + ?Sized>(rng: &mut R, hodge_only: bool) -> (Multicomplex, bool, Vec<&'static str>) {
    let pool: Vec<&Block> = BLOCKS.iter().filter(|b| b.hodge || !hodge_only).collect();
    loop {
        let count = rng.gen_range(1..=4);
        let mut sum: Option<Multicomplex> = None;
        let mut names = Vec::new();
        let mut hodge = true;
        for _ in 0..count {
            let block = *pool.choose(rng).expect("nonempty pool");
            let span = block.dims.len() as i32 - 1;
            let shift = rng.gen_range(-2..=(MAX_WIDTH - 2 - span).max(-2));
            let m = block_multicomplex(block, shift);
            names.push(block.name);
            hodge &= block.hodge;
            sum = Some(match sum {
                None => m,
                Some(acc) => product(&acc, &m).expect("product of multicomplexes").multicomplex,
            });
        }
        let m = sum.expect("at least one block");
        let space = m.space();
        if space.width() > MAX_WIDTH || space.dims().values().any(|&n| n > MAX_DIM) {
            continue;
        }
        let g = random_automorphism(rng, space);
        return (change_basis(&m, &g), hodge, names);
    }
}
