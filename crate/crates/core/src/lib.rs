//! Exact computational homological algebra for multicomplexes.
//!
//! Everything is computed over the rationals with arbitrary precision:
//! linear algebra on sparse matrices, graded maps, multicomplexes and their
//! ∞-morphisms, homotopy transfer onto homology, the minimal model
//! decomposition, the spectral sequence of the row filtration, and the gauge
//! condition `e^{R(z)} d e^{-R(z)} = d + Δ₁z + Δ₂z² + …`. The [`geometry`]
//! module instantiates the theory on truncated polynomial de Rham complexes of
//! Poisson and Jacobi structures.

pub mod error;
pub mod gauge;
pub mod generate;
pub mod geometry;
pub mod graded;
pub mod linalg;
pub mod multicomplex;
pub mod spectral;
pub mod transfer;

pub use error::{Error, Result};
pub use gauge::{GaugeSearch, GaugeVerdict, OperatorSeries};
pub use generate::{Instance, Profile};
pub use geometry::{FormAlgebra, FormOp, PolyForm, PolyVector};
pub use graded::{GradedMap, GradedVectorSpace};
pub use linalg::{Matrix, Scalar, Subquotient, Subspace};
pub use multicomplex::{InfinityMorphism, Multicomplex, Obstruction, RelationReport};
pub use spectral::{DegenerationVerdict, SpectralPage, TotalComplex};
pub use transfer::{DeformationRetract, HodgeVerdict, MinimalModel, RetractSplitting, TransferOutput};
