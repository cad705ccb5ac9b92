//! Versioned JSON documents for multicomplexes and polyvector structures.
//!
//! Rationals are always strings `"p/q"` in lowest terms. Operator entries are
//! `[source degree, row, col, "p/q"]`, with `Δₙ` mapping degree `k` to
//! `k + 2n − 1`.

use std::collections::{BTreeMap, BTreeSet};

use hodgegauge_core::linalg::{format_scalar, int, parse_scalar};
use hodgegauge_core::{GradedMap, GradedVectorSpace, Matrix, Multicomplex, PolyVector, Scalar};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

pub const MULTICOMPLEX_FORMAT: &str = "hodgegauge/multicomplex";
pub const STRUCTURE_FORMAT: &str = "hodgegauge/structure";
pub const VERSION: u32 = 1;
pub const MAX_STRUCTURE_DIM: usize = 8;

/// One nonzero matrix entry: source degree, row, column, value.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Entry(pub i32, pub usize, pub usize, pub String);

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OperatorBlock {
    pub n: usize,
    pub entries: Vec<Entry>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Metadata {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub provenance: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub profile: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub description: Option<String>,
}

impl Metadata {
    pub fn is_empty(&self) -> bool {
        *self == Metadata::default()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MulticomplexFile {
    pub format: String,
    pub version: u32,
    /// Degree to dimension; zero dimensions may be omitted.
    pub degrees: BTreeMap<i32, usize>,
    pub operators: Vec<OperatorBlock>,
    #[serde(default, skip_serializing_if = "Metadata::is_empty")]
    pub metadata: Metadata,
}

/// Nonzero entries of a graded map, sorted by degree, row, column.
pub fn entries_of(map: &GradedMap) -> Vec<Entry> {
    let mut out: Vec<Entry> = map
        .blocks()
        .iter()
        .flat_map(|(&k, block)| block.entries().map(move |(r, c, v)| Entry(k, r, c, format_scalar(v))))
        .collect();
    out.sort_by(|a, b| (a.0, a.1, a.2).cmp(&(b.0, b.1, b.2)));
    out
}

impl MulticomplexFile {
    pub fn from_multicomplex(m: &Multicomplex, metadata: Metadata) -> Self {
        let operators = m
            .deltas()
            .iter()
            .enumerate()
            .map(|(n, delta)| OperatorBlock { n, entries: entries_of(delta) })
            .collect();
        MulticomplexFile {
            format: MULTICOMPLEX_FORMAT.to_string(),
            version: VERSION,
            degrees: m.space().dims().clone(),
            operators,
            metadata,
        }
    }

    pub fn parse(path: &str, text: &str) -> Result<Self, CliError> {
        let file: MulticomplexFile = serde_json::from_str(text).map_err(|e| CliError::parse(path, &e))?;
        check_header(path, &file.format, file.version, MULTICOMPLEX_FORMAT)?;
        Ok(file)
    }

    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("plain data serializes");
        text.push('\n');
        text
    }

    pub fn to_multicomplex(&self, path: &str) -> Result<Multicomplex, CliError> {
        let invalid = |location: String, message: String| CliError::Invalid { path: path.to_string(), location, message };
        let space = GradedVectorSpace::new(self.degrees.iter().map(|(&k, &d)| (k, d)));
        let mut seen = BTreeSet::new();
        let top = self.operators.iter().map(|b| b.n).max().unwrap_or(0);
        let mut deltas: Vec<GradedMap> =
            (0..=top).map(|n| GradedMap::zero(&space, &space, 2 * n as i32 - 1)).collect();
        for (b, block) in self.operators.iter().enumerate() {
            if !seen.insert(block.n) {
                return Err(invalid(format!("operators[{b}]"), format!("operator {} given twice", block.n)));
            }
            let shift = 2 * block.n as i32 - 1;
            let mut per_degree: BTreeMap<i32, Vec<(usize, usize, Scalar)>> = BTreeMap::new();
            let mut positions = BTreeSet::new();
            for (e, Entry(k, row, col, value)) in block.entries.iter().enumerate() {
                let location = format!("operators[{b}].entries[{e}]");
                let (rows, cols) = (space.dim(k + shift), space.dim(*k));
                if *col >= cols {
                    return Err(invalid(location, format!("column {col} out of range for source degree {k} (dim {cols})")));
                }
                if *row >= rows {
                    let target = k + shift;
                    return Err(invalid(location, format!("row {row} out of range for target degree {target} (dim {rows})")));
                }
                let Some(v) = parse_scalar(value) else {
                    return Err(invalid(location, format!("{value:?} is not a rational \"p/q\"")));
                };
                if !positions.insert((*k, *row, *col)) {
                    return Err(invalid(location, format!("duplicate entry ({k}, {row}, {col})")));
                }
                if v != int(0) {
                    per_degree.entry(*k).or_default().push((*row, *col, v));
                }
            }
            let blocks = per_degree
                .into_iter()
                .map(|(k, entries)| (k, Matrix::from_entries(space.dim(k + shift), space.dim(k), entries)));
            deltas[block.n] = GradedMap::from_blocks(&space, &space, shift, blocks)
                .map_err(|e| invalid(format!("operators[{b}]"), e.to_string()))?;
        }
        Multicomplex::new(space, deltas).map_err(|e| invalid("operators".into(), e.to_string()))
    }
}

fn check_header(path: &str, format: &str, version: u32, expected: &str) -> Result<(), CliError> {
    if format != expected {
        return Err(CliError::Invalid {
            path: path.to_string(),
            location: "format".into(),
            message: format!("expected {expected:?}, found {format:?}"),
        });
    }
    if version != VERSION {
        return Err(CliError::Invalid {
            path: path.to_string(),
            location: "version".into(),
            message: format!("unsupported version {version}, expected {VERSION}"),
        });
    }
    Ok(())
}

/// `coefficient · x^monomial ∂_{indices}`, indices 1-based and increasing.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Term {
    pub coefficient: String,
    pub monomial: Vec<u32>,
    pub indices: Vec<usize>,
}

/// A bivector `ω` and, for Jacobi structures, a vector field `E`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StructureFile {
    pub format: String,
    pub version: u32,
    pub dim: usize,
    pub bivector: Vec<Term>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub vector: Vec<Term>,
}

impl StructureFile {
    pub fn new(dim: usize, bivector: &PolyVector, vector: &PolyVector) -> Self {
        let terms = |p: &PolyVector| -> Vec<Term> {
            p.terms()
                .iter()
                .map(|((e, mask), c)| Term {
                    coefficient: format_scalar(c),
                    monomial: e.clone(),
                    indices: hodgegauge_core::geometry::ops::one_based(*mask),
                })
                .collect()
        };
        StructureFile {
            format: STRUCTURE_FORMAT.to_string(),
            version: VERSION,
            dim,
            bivector: terms(bivector),
            vector: terms(vector),
        }
    }

    pub fn parse(path: &str, text: &str) -> Result<Self, CliError> {
        let file: StructureFile = serde_json::from_str(text).map_err(|e| CliError::parse(path, &e))?;
        check_header(path, &file.format, file.version, STRUCTURE_FORMAT)?;
        Ok(file)
    }

    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("plain data serializes");
        text.push('\n');
        text
    }

    /// `(ω, E)`; `E` is zero when absent.
    pub fn to_polyvectors(&self, path: &str) -> Result<(PolyVector, PolyVector), CliError> {
        if !(1..=MAX_STRUCTURE_DIM).contains(&self.dim) {
            return Err(CliError::Invalid {
                path: path.to_string(),
                location: "dim".into(),
                message: format!("dimension must lie in 1..={MAX_STRUCTURE_DIM}"),
            });
        }
        let w = self.polyvector(path, "bivector", &self.bivector, 2)?;
        let e = self.polyvector(path, "vector", &self.vector, 1)?;
        Ok((w, e))
    }

    fn polyvector(&self, path: &str, field: &str, terms: &[Term], degree: usize) -> Result<PolyVector, CliError> {
        let m = self.dim;
        let mut out = PolyVector::zero(m);
        for (t, term) in terms.iter().enumerate() {
            let invalid = |message: String| CliError::Invalid {
                path: path.to_string(),
                location: format!("{field}[{t}]"),
                message,
            };
            if term.monomial.len() != m {
                return Err(invalid(format!("monomial has {} exponents, expected {m}", term.monomial.len())));
            }
            if term.indices.len() != degree {
                return Err(invalid(format!("expected {degree} indices, found {}", term.indices.len())));
            }
            if term.indices.windows(2).any(|w| w[0] >= w[1]) {
                return Err(invalid("indices must be strictly increasing".into()));
            }
            if term.indices.iter().any(|&j| j == 0 || j > m) {
                return Err(invalid(format!("indices must lie in 1..={m}")));
            }
            let c = parse_scalar(&term.coefficient)
                .ok_or_else(|| invalid(format!("{:?} is not a rational \"p/q\"", term.coefficient)))?;
            let idx: Vec<usize> = term.indices.iter().map(|j| j - 1).collect();
            out = out.add(&PolyVector::monomial(m, c, &term.monomial, &idx));
        }
        Ok(out)
    }
}
