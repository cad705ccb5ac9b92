//! The four subcommands. Each returns a report and, where it produces one, a
//! multicomplex document.

use std::fmt;

use hodgegauge_core::gauge::{check_gauge_hodge, general_r_from_hodge};
use hodgegauge_core::generate::{generate as generate_instance, rng_for};
use hodgegauge_core::geometry::{
    basic_subcomplex, jacobi_multicomplex, koszul_op, operator_order, poisson_mixed_complex, verify_jacobi,
    verify_poisson, FormAlgebra, FormOp, IdentityCheck, PolyVector,
};
use hodgegauge_core::graded::homology;
use hodgegauge_core::spectral::{degenerates_at_one, pages, total_complex};
use hodgegauge_core::transfer::{build_perturbed_retract, build_retract, check_hodge_data, transfer_structure};
use hodgegauge_core::{Error, GaugeSearch, GradedMap, GradedVectorSpace, Multicomplex, Profile};
use serde_json::json;

use crate::error::CliError;
use crate::format::{entries_of, Metadata, MulticomplexFile, OperatorBlock, StructureFile};
use crate::report::{Report, Witness};

pub struct Outcome {
    pub report: Report,
    /// Multicomplex document and its default file name.
    pub document: Option<(String, String)>,
}

impl Outcome {
    fn report(report: Report) -> Self {
        Outcome { report, document: None }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum GeometryKind {
    Poisson,
    Jacobi,
    Basic,
}

impl fmt::Display for GeometryKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GeometryKind::Poisson => "poisson",
            GeometryKind::Jacobi => "jacobi",
            GeometryKind::Basic => "basic",
        })
    }
}

pub fn read(path: &str) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_string(), source })
}

pub fn load_multicomplex(path: &str) -> Result<Multicomplex, CliError> {
    MulticomplexFile::parse(path, &read(path)?)?.to_multicomplex(path)
}

fn dims(space: &GradedVectorSpace) -> serde_json::Value {
    json!(space.dims())
}

fn blocks<'a>(maps: impl IntoIterator<Item = (usize, &'a GradedMap)>) -> Vec<OperatorBlock> {
    maps.into_iter()
        .map(|(n, map)| OperatorBlock { n, entries: entries_of(map) })
        .filter(|b| !b.entries.is_empty())
        .collect()
}

fn relations_check(report: &mut Report, m: &Multicomplex) -> bool {
    let relations = m.validate();
    report.check_witness("Σ Δᵢ Δₙ₋ᵢ = 0 for all n", relations.violations.first());
    if relations.violations.len() > 1 {
        let violated: Vec<String> = relations.violated_indices().iter().map(usize::to_string).collect();
        report.checks.last_mut().expect("just added").detail = Some(format!("violated at n = {}", violated.join(", ")));
    }
    relations.is_valid()
}

pub fn validate(path: &str) -> Result<Outcome, CliError> {
    let m = load_multicomplex(path)?;
    let mut report = Report::new("validate");
    relations_check(&mut report, &m);
    report.put("degrees", dims(m.space()));
    report.put("operators", m.deltas().len());
    Ok(Outcome::report(report))
}

pub fn analyze(path: &str, max_page: Option<usize>, seed: Option<u64>) -> Result<Outcome, CliError> {
    let m = load_multicomplex(path)?;
    let mut report = Report::new("analyze");
    if !relations_check(&mut report, &m) {
        return Ok(Outcome::report(report));
    }
    report.put("degrees", dims(m.space()));
    report.put("homology", dims(&homology(m.differential())?));

    let splitting = match seed {
        Some(s) => build_perturbed_retract(m.differential(), &mut rng_for(s))?,
        None => build_retract(m.differential())?,
    };
    let retract = &splitting.retract;
    report.put("retract", seed.map_or("canonical".to_string(), |s| format!("randomized, seed {s}")));
    let failed = retract.failed_identities();
    report.check("deformation retract identities", failed.is_empty()).detail =
        (!failed.is_empty()).then(|| failed.join(", "));

    let transfer = transfer_structure(retract, &m)?;
    report.check_witness("transferred structure is a multicomplex", transfer.transferred.validate().violations.first());
    report.put("transferred", blocks(transfer.transferred.deltas().iter().enumerate().skip(1)));
    let hodge = check_hodge_data(retract, &m)?;
    report.put("hodge_data", json!({ "holds": hodge.holds, "witness": hodge.witness.as_ref().map(Witness::from) }));

    let t = total_complex(&m)?;
    let r_max = max_page.unwrap_or_else(|| t.max_stabilization_bound());
    let table: Vec<_> = pages(&t, r_max)
        .iter()
        .map(|p| {
            let entries: Vec<_> = p.dims().iter().filter(|(_, &d)| d > 0).map(|(&(s, n), &d)| [s, n, d as i32]).collect();
            json!({ "r": p.r, "dims": entries })
        })
        .collect();
    report.put("pages", table);
    let degeneration = degenerates_at_one(&t);
    report.put(
        "degeneration",
        json!({
            "degenerate": degeneration.degenerate,
            "witness_page": degeneration.witness,
            "pages_checked": degeneration.pages_checked,
        }),
    );

    let gauge = general_r_from_hodge(&m)?;
    match &gauge {
        GaugeSearch::Found(r) => {
            report.check_witness("e^R d e^{−R} = d + Σ Δₙ zⁿ", check_gauge_hodge(r, &m)?.witness.as_ref());
            report.put("gauge", json!({ "found": true, "R": blocks(r.coeffs().iter().enumerate().skip(1)) }));
        }
        GaugeSearch::NoGaugeExists { witness } => {
            report.put("gauge", json!({ "found": false, "witness": Witness::from(witness) }));
        }
    }
    let agree = hodge.holds == degeneration.degenerate && hodge.holds == gauge.is_found();
    report.check("Hodge data ⇔ page-1 degeneration ⇔ gauge", agree).detail = Some(format!(
        "hodge data {}, degenerate {}, gauge {}",
        hodge.holds,
        degeneration.degenerate,
        gauge.is_found()
    ));
    Ok(Outcome::report(report))
}

/// Records failed structure identities as checks instead of errors.
fn structure_verdict(report: &mut Report, result: Result<(), Error>) -> Result<bool, CliError> {
    match result {
        Ok(()) => Ok(true),
        Err(Error::NotPoisson { bracket }) => {
            report.check("[ω,ω] = 0", false).detail = Some(format!("[ω,ω] = {bracket}"));
            Ok(false)
        }
        Err(Error::NotJacobi { identity, residue }) => {
            report.check(identity, false).detail = Some(format!("residue {residue}"));
            Ok(false)
        }
        Err(other) => Err(other.into()),
    }
}

fn record_checks(report: &mut Report, checks: &[IdentityCheck]) {
    for c in checks {
        report.check(c.name, c.holds);
    }
}

/// Identity suites that fail surface as `IdentityViolated`; report them.
fn suite<T>(report: &mut Report, result: Result<T, Error>) -> Result<Option<T>, CliError> {
    match result {
        Ok(t) => Ok(Some(t)),
        Err(Error::IdentityViolated(name)) => {
            report.check(name, false);
            Ok(None)
        }
        Err(other) => Err(other.into()),
    }
}

pub fn geometry(kind: GeometryKind, m: usize, truncation: u32, structure_path: &str) -> Result<Outcome, CliError> {
    let structure = StructureFile::parse(structure_path, &read(structure_path)?)?;
    if structure.dim != m {
        return Err(CliError::Usage(format!(
            "{structure_path} describes a structure on ℝ^{} but --dim is {m}",
            structure.dim
        )));
    }
    let (w, e) = structure.to_polyvectors(structure_path)?;
    if kind == GeometryKind::Poisson && !e.is_zero() {
        return Err(CliError::Usage("a Poisson structure takes no vector field; use --kind jacobi".into()));
    }
    let a = FormAlgebra::new(m, truncation);
    let mut report = Report::new("geometry");
    report.put("kind", kind.to_string());
    report.put("dim", m);
    report.put("truncation", truncation);
    report.put("bivector", w.to_string());
    if kind != GeometryKind::Poisson {
        report.put("vector", e.to_string());
    }
    report.put("form_degrees", dims(a.space()));

    let verified = match kind {
        GeometryKind::Poisson => verify_poisson(&w),
        GeometryKind::Jacobi | GeometryKind::Basic => verify_jacobi(&w, &e),
    };
    if !structure_verdict(&mut report, verified)? {
        return Ok(Outcome::report(report));
    }
    let multicomplex = match kind {
        GeometryKind::Poisson => suite(&mut report, poisson_mixed_complex(&w, &a))?.map(|out| {
            record_checks(&mut report, &out.checks);
            out.multicomplex
        }),
        GeometryKind::Jacobi => suite(&mut report, jacobi_multicomplex(&w, &e, &a))?.map(|out| {
            record_checks(&mut report, &out.checks);
            out.multicomplex
        }),
        GeometryKind::Basic => suite(&mut report, basic_subcomplex(&w, &e, &a))?.map(|out| {
            record_checks(&mut report, &out.checks);
            out.multicomplex
        }),
    };
    let Some(multicomplex) = multicomplex else {
        return Ok(Outcome::report(report));
    };
    if kind == GeometryKind::Basic {
        report.put("basic_degrees", dims(multicomplex.space()));
    }
    relations_check(&mut report, &multicomplex);
    order_checks(&mut report, &w, &e, m)?;
    let degeneration = degenerates_at_one(&total_complex(&multicomplex)?);
    report.check("page-1 degeneration", degeneration.degenerate).detail =
        degeneration.witness.map(|r| format!("first nonzero differential on page {r}"));

    let metadata = Metadata {
        provenance: Some(format!("geometry {kind} m={m} D={truncation}")),
        description: Some(match kind {
            GeometryKind::Poisson => format!("ω = {w}"),
            _ => format!("ω = {w}, E = {e}"),
        }),
        ..Metadata::default()
    };
    let document = MulticomplexFile::from_multicomplex(&multicomplex, metadata).to_json();
    Ok(Outcome { report, document: Some((format!("geometry-{kind}-m{m}-D{truncation}.json"), document)) })
}

/// `Δₙ` has order at most `n + 1`, and `d` has order exactly 1.
fn order_checks(report: &mut Report, w: &PolyVector, e: &PolyVector, m: usize) -> Result<(), CliError> {
    let d = FormOp::d();
    report.check("order(Δ₀) = 1", operator_order(&d, 1, m)? && !operator_order(&d, 0, m)?);
    report.check("order(Δ₁) ≤ 2", operator_order(&koszul_op(w)?, 2, m)?);
    let delta2 = FormOp::contraction_of_degree(e, 1)?.then(&FormOp::contraction_of_degree(w, 2)?);
    report.check("order(Δ₂) ≤ 3", operator_order(&delta2, 3, m)?);
    Ok(())
}

pub fn generate(profile: Profile, seed: u64) -> Result<Outcome, CliError> {
    let inst = generate_instance(profile, seed);
    let mut report = Report::new("generate");
    relations_check(&mut report, &inst.multicomplex);
    report.put("profile", profile.as_str());
    report.put("seed", seed);
    report.put("expected_hodge", inst.expected_hodge);
    let metadata = Metadata {
        provenance: Some("generate".into()),
        profile: Some(profile.as_str().into()),
        seed: Some(seed),
        description: Some(inst.description.clone()),
    };
    let document = MulticomplexFile::from_multicomplex(&inst.multicomplex, metadata).to_json();
    Ok(Outcome { report, document: Some((format!("generate-{profile}-{seed}.json"), document)) })
}
