//! Acceptance suite: one line per criterion, exit status 1 if any fails.
//!
//! Runs with `harness = false` so every criterion reports even when an
//! earlier one fails. Criteria run on separate threads.

mod common;

use std::time::{Duration, Instant};

use hodgegauge_core::gauge::{check_gauge_hodge, gauge_construct, general_r_from_hodge, mixed_r_from_hodge};
use hodgegauge_core::generate::{corpus, generate_mixed_hodge, random_gauge_pair, rng_for};
use hodgegauge_core::geometry::structures::{contact_jacobi, so3, symplectic};
use hodgegauge_core::geometry::{
    basic_subcomplex, check_contraction_identity, d_de_rham, is_jacobi, is_poisson, jacobi_multicomplex,
    operator_order, order_ladder, poisson_mixed_complex, ContractionOrder, FormAlgebra, FormOp, PolyVector,
};
use hodgegauge_core::graded::homology;
use hodgegauge_core::linalg::int;
use hodgegauge_core::multicomplex::{validate_infinity_morphism, validate_multicomplex};
use hodgegauge_core::spectral::{degenerates_at_one, total_complex};
use hodgegauge_core::transfer::{build_perturbed_retract, build_retract, check_hodge_data, minimal_model, transfer_structure};
use hodgegauge_core::{GaugeSearch, InfinityMorphism, Multicomplex, Profile};

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

macro_rules! attempt {
    ($e:expr) => {
        $e.map_err(|err| err.to_string())?
    };
}

const CORPUS_SIZE: usize = 200;
const CORPUS_SEED: u64 = 10_000;

fn htt_correctness() -> Outcome {
    let instances = corpus(CORPUS_SIZE, CORPUS_SEED);
    for inst in &instances {
        let m = &inst.multicomplex;
        let r = attempt!(build_retract(m.differential())).retract;
        let out = attempt!(transfer_structure(&r, m));
        ensure!(validate_multicomplex(&out.transferred).is_valid(), "transferred structure invalid: seed {}", inst.seed);
        ensure!(validate_infinity_morphism(&out.i_inf).is_valid(), "i∞ invalid: seed {}", inst.seed);
        ensure!(validate_infinity_morphism(&out.p_inf).is_valid(), "p∞ invalid: seed {}", inst.seed);
    }
    Ok(format!("{} instances", instances.len()))
}

fn minimal_model_check() -> Outcome {
    let instances = corpus(CORPUS_SIZE, CORPUS_SEED);
    for inst in &instances {
        let m = &inst.multicomplex;
        let mm = attempt!(minimal_model(m));
        ensure!(mm.r.validate().is_valid(), "r invalid: seed {}", inst.seed);
        ensure!(mm.r_inverse.validate().is_valid(), "r⁻¹ invalid: seed {}", inst.seed);
        let right = attempt!(mm.r.compose(&mm.r_inverse));
        let left = attempt!(mm.r_inverse.compose(&mm.r));
        ensure!(right == InfinityMorphism::identity(&mm.product), "r ∘ r⁻¹ ≠ id: seed {}", inst.seed);
        ensure!(left == InfinityMorphism::identity(m), "r⁻¹ ∘ r ≠ id: seed {}", inst.seed);
        let h = attempt!(homology(m.differential()));
        ensure!(mm.minimal.space() == &h, "dims(H_min) ≠ dims(H): seed {}", inst.seed);
        ensure!(attempt!(homology(mm.trivial.differential())).is_zero(), "K_triv not acyclic: seed {}", inst.seed);
    }
    Ok(format!("{} instances", instances.len()))
}

fn gauge_forward() -> Outcome {
    let mut rng = rng_for(20_000);
    let pairs = 200;
    for k in 0..pairs {
        let (d, r) = random_gauge_pair(&mut rng);
        let m = attempt!(gauge_construct(&d, &r));
        ensure!(attempt!(check_gauge_hodge(&r, &m)).holds, "constructing gauge fails: pair {k}");
        match attempt!(general_r_from_hodge(&m)) {
            GaugeSearch::Found(found) => {
                ensure!(attempt!(check_gauge_hodge(&found, &m)).holds, "recovered gauge fails: pair {k}")
            }
            GaugeSearch::NoGaugeExists { witness } => return Err(format!("no gauge found for pair {k}: {witness:?}")),
        }
    }
    Ok(format!("{pairs} pairs"))
}

fn three_way() -> Outcome {
    let instances = corpus(CORPUS_SIZE, CORPUS_SEED);
    let mut negatives = 0;
    for inst in &instances {
        let m = &inst.multicomplex;
        let r = attempt!(build_retract(m.differential())).retract;
        let hodge = attempt!(check_hodge_data(&r, m)).holds;
        let degenerate = degenerates_at_one(&attempt!(total_complex(m))).degenerate;
        let gauge = attempt!(general_r_from_hodge(m)).is_found();
        ensure!(
            hodge == degenerate && hodge == gauge,
            "disagreement on seed {} ({}): hodge {hodge}, degenerate {degenerate}, gauge {gauge}",
            inst.seed,
            inst.description
        );
        if let Some(expected) = inst.expected_hodge {
            ensure!(expected == hodge, "seed {} expected hodge {expected}", inst.seed);
        }
        if inst.profile == Profile::B && !hodge {
            negatives += 1;
        }
    }
    ensure!(negatives > 0, "no profile b instance in the corpus");
    Ok(format!("{} instances, {negatives} all-false profile b", instances.len()))
}

fn uniform_vanishing() -> Outcome {
    let mut rng = rng_for(30_000);
    let orbit: Vec<_> = corpus(CORPUS_SIZE, CORPUS_SEED).into_iter().filter(|i| i.profile == Profile::A).collect();
    for inst in &orbit {
        let m = &inst.multicomplex;
        for _ in 0..20 {
            let s = attempt!(build_perturbed_retract(m.differential(), &mut rng));
            ensure!(s.retract.failed_identities().is_empty(), "perturbed retract is not a retract: seed {}", inst.seed);
            let verdict = attempt!(check_hodge_data(&s.retract, m));
            ensure!(verdict.holds, "transferred operator survives on seed {}: {:?}", inst.seed, verdict.witness);
        }
    }
    Ok(format!("{} instances × 20 retracts", orbit.len()))
}

fn explicit_mixed() -> Outcome {
    let count = 100;
    for seed in 0..count {
        let m = generate_mixed_hodge(40_000 + seed).multicomplex;
        let r = attempt!(build_retract(m.differential())).retract;
        let delta = m.delta(1);
        let series = attempt!(mixed_r_from_hodge(&r, &delta));
        ensure!(attempt!(check_gauge_hodge(&series, &m)).holds, "gauge equation fails: seed {seed}");
        let ip = attempt!(r.i.compose(&r.p));
        let r1 = attempt!(attempt!(r.h.compose(&delta)).sub(&attempt!(attempt!(ip.compose(&delta)).compose(&r.h))));
        ensure!(series.coeff(1) == r1, "r₁ ≠ hΔ − ipΔh: seed {seed}");
    }
    Ok(format!("{count} mixed complexes"))
}

fn spectral_cross_oracle() -> Outcome {
    let instances: Vec<Multicomplex> = corpus(CORPUS_SIZE, CORPUS_SEED)
        .into_iter()
        .map(|i| i.multicomplex)
        .chain((0..100).map(|s| generate_mixed_hodge(40_000 + s).multicomplex))
        .filter(Multicomplex::is_mixed)
        .collect();
    let mut second = 0;
    for m in &instances {
        let r = attempt!(build_retract(m.differential())).retract;
        let transferred = attempt!(transfer_structure(&r, m)).transferred;
        if common::check_low_differentials(m, &r, &transferred)? {
            second += 1;
        }
    }
    ensure!(second > 0, "no instance with d¹ = 0 and d² ≠ 0");
    Ok(format!("{} mixed complexes, {second} with nonzero d²", instances.len()))
}

fn timed_case(name: &str, budget: Duration, f: impl FnOnce() -> Result<(), String>) -> Result<(), String> {
    let start = Instant::now();
    f().map_err(|e| format!("{name}: {e}"))?;
    let elapsed = start.elapsed();
    ensure!(elapsed < budget, "{name} took {elapsed:?}");
    Ok(())
}

fn poisson_pipeline() -> Outcome {
    let cases = [("symplectic ℝ²", symplectic(2)), ("symplectic ℝ⁴", symplectic(4)), ("so(3)", so3())];
    for (name, w) in &cases {
        timed_case(name, Duration::from_secs(30), || {
            ensure!(is_poisson(w), "[ω,ω] ≠ 0");
            let a = FormAlgebra::new(w.dim(), 2);
            let out = attempt!(poisson_mixed_complex(w, &a));
            for c in &out.checks {
                ensure!(c.holds, "{} fails", c.name);
            }
            let m = &out.multicomplex;
            let d = m.delta(0);
            let delta = m.delta(1);
            ensure!(attempt!(delta.compose(&delta)).is_zero(), "Δ² ≠ 0");
            ensure!(attempt!(attempt!(d.compose(&delta)).add(&attempt!(delta.compose(&d)))).is_zero(), "dΔ + Δd ≠ 0");
            ensure!(attempt!(check_gauge_hodge(&out.gauge, m)).holds, "gauge identity fails");
            ensure!(degenerates_at_one(&attempt!(total_complex(m))).degenerate, "no page-1 degeneration");
            Ok(())
        })?;
    }
    Ok("symplectic ℝ², ℝ⁴ and so(3) at D = 2".into())
}

fn jacobi_pipeline() -> Outcome {
    let (w, e) = contact_jacobi();
    ensure!(!e.is_zero(), "E = 0");
    ensure!(w.schouten(&w) == e.wedge(&w).scale(&int(2)), "[ω,ω] ≠ 2E∧ω");
    ensure!(e.schouten(&w).is_zero(), "[E,ω] ≠ 0");
    ensure!(is_jacobi(&w, &e), "pair rejected");
    let mut basic_dims = Vec::new();
    for truncation in [2, 3] {
        let a = FormAlgebra::new(3, truncation);
        let out = attempt!(jacobi_multicomplex(&w, &e, &a));
        for c in &out.checks {
            ensure!(c.holds, "{} fails at D = {truncation}", c.name);
        }
        let m = &out.multicomplex;
        let report = validate_multicomplex(m);
        ensure!(report.is_valid(), "relations fail at {:?}, D = {truncation}", report.violated_indices());
        ensure!(attempt!(check_gauge_hodge(&out.gauge, m)).holds, "quadratic gauge identity fails at D = {truncation}");
        // Below D = 3 there are no 3-forms and i(E) i(ω) vanishes.
        ensure!(truncation < 3 || !m.delta(2).is_zero(), "Δ₂ vanishes at D = {truncation}");
        let basic = attempt!(basic_subcomplex(&w, &e, &a));
        for c in &basic.checks {
            ensure!(c.holds, "{} fails at D = {truncation}", c.name);
        }
        let b = &basic.multicomplex;
        ensure!(b.space().total_dim() > 0, "no basic forms at D = {truncation}");
        ensure!(attempt!(b.delta(1).compose(&b.delta(1))).is_zero(), "Δ²|_B ≠ 0 at D = {truncation}");
        ensure!(
            degenerates_at_one(&attempt!(total_complex(b))).degenerate,
            "basic complex does not degenerate at D = {truncation}"
        );
        basic_dims.push(b.space().total_dim());
    }
    Ok(format!("ω = {w}, E = {e}, D = 2, 3, dim Ω_B = {basic_dims:?}"))
}

fn order_ladder_check() -> Outcome {
    let (w, e) = contact_jacobi();
    let ladder = attempt!(order_ladder(&w, &e));
    ensure!(ladder.d == Some(1), "order of d is {:?}", ladder.d);
    ensure!(ladder.delta1.is_some_and(|k| k <= 2), "order of Δ₁ is {:?}", ladder.delta1);
    ensure!(ladder.delta2.is_some_and(|k| k <= 3), "order of Δ₂ is {:?}", ladder.delta2);
    ensure!(!attempt!(operator_order(&FormOp::d(), 0, 3)), "d has order ≤ 0");
    let poisson = attempt!(hodgegauge_core::geometry::koszul_op(&so3()));
    ensure!(attempt!(operator_order(&poisson, 2, 3)), "so(3) Δ order > 2");
    ensure!(!attempt!(operator_order(&poisson, 1, 3)), "so(3) Δ has order ≤ 1");
    let a = FormAlgebra::new(3, 2);
    ensure!(attempt!(d_de_rham(&a).compose(&d_de_rham(&a))).is_zero(), "d² ≠ 0");
    Ok(format!("orders d = {:?}, Δ₁ = {:?}, Δ₂ = {:?}", ladder.d, ladder.delta1, ladder.delta2))
}

/// `x^α ∂_J` with `|J| ∈ {2, 3}` and `|α| ≤ 1`.
fn low_degree_basis(m: usize) -> Vec<PolyVector> {
    let mut exponents = vec![vec![0; m]];
    for i in 0..m {
        let mut e = vec![0; m];
        e[i] = 1;
        exponents.push(e);
    }
    let mut out = Vec::new();
    for mask in 0u32..(1 << m) {
        if !(2..=3).contains(&mask.count_ones()) {
            continue;
        }
        let idx: Vec<usize> = (0..m).filter(|j| mask >> j & 1 == 1).collect();
        for e in &exponents {
            out.push(PolyVector::monomial(m, int(1), e, &idx));
        }
    }
    out
}

fn convention_pin() -> Outcome {
    let mut pairs = 0;
    let mut controls = 0;
    for m in 2..=3 {
        let basis = low_degree_basis(m);
        for p in &basis {
            for q in &basis {
                for window in 1..=3 {
                    ensure!(
                        attempt!(check_contraction_identity(p, q, window, ContractionOrder::LeftFirst)),
                        "identity fails for P = {p}, Q = {q}, D = {window}"
                    );
                }
                pairs += 1;
                if !p.schouten(q).is_zero() {
                    ensure!(
                        !attempt!(check_contraction_identity(p, q, 3, ContractionOrder::RightFirst)),
                        "reversed order passes for P = {p}, Q = {q}"
                    );
                    controls += 1;
                }
            }
        }
    }
    ensure!(controls > 0, "no pair with a nonzero bracket");
    Ok(format!("{pairs} basis pairs (bilinear, so all pairs), {controls} negative controls"))
}

type Criterion = (usize, &'static str, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 11] = [
        (1, "HTT correctness", htt_correctness),
        (2, "minimal model", minimal_model_check),
        (3, "gauge theorem, forward", gauge_forward),
        (4, "gauge converse and degeneration", three_way),
        (5, "uniform vanishing", uniform_vanishing),
        (6, "explicit mixed R", explicit_mixed),
        (7, "spectral cross-oracle", spectral_cross_oracle),
        (8, "Poisson pipeline", poisson_pipeline),
        (9, "Jacobi pipeline", jacobi_pipeline),
        (10, "order ladder", order_ladder_check),
        (11, "convention pin", convention_pin),
    ];
    let results: Vec<(Outcome, Duration)> = std::thread::scope(|scope| {
        let handles: Vec<_> = criteria
            .iter()
            .map(|&(_, _, f)| {
                scope.spawn(move || {
                    let start = Instant::now();
                    let outcome = std::panic::catch_unwind(f).unwrap_or_else(|_| Err("panicked".into()));
                    (outcome, start.elapsed())
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("criterion thread")).collect()
    });
    let mut failed = 0;
    for ((number, name, _), (outcome, elapsed)) in criteria.iter().zip(results) {
        match outcome {
            Ok(detail) => println!("criterion {number:>2} PASS  {name} ({detail}; {:.2}s)", elapsed.as_secs_f64()),
            Err(reason) => {
                failed += 1;
                println!("criterion {number:>2} FAIL  {name}: {reason}");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
