//! Laplacian spectra of caterpillar trees `T(q_1, ..., q_k)` through the line
//! graph / H-join reduction, with exact characteristic polynomials and
//! certified bounds on the algebraic connectivity.
//!
//! The [`oracle`] module is an independent brute-force reference (dense
//! eigensolver, exact determinants) used to cross-check everything else.

pub mod bounds;
pub mod charpoly;
pub mod error;
pub mod graph;
pub mod matrix;
pub mod model;
pub mod oracle;
pub mod poly;
pub mod rational;
pub mod reference;
pub mod spectrum;
pub mod verify;

pub use bounds::{
    bounds_report, bounds_trace, cardano_roots, trace_inv, trace_inv_deleted, ub_cardano,
    ub_trace, ub_trace_terms, BoundsReport, CardanoBound, CubicSolution, IndexedBound,
};
pub use charpoly::{
    build_c, charpoly_p, deleted_c, laplacian_charpoly, laplacian_spectrum, linegraph_spectrum,
    p_minus2, pprime_minus2, StructuredC,
};
pub use error::{Error, Result};
pub use graph::{build_caterpillar, h_join, linegraph_as_hjoin, Graph};
pub use matrix::{DenseMatrix, IntMatrix};
pub use model::{derive_params, CaterpillarSpec, DerivedParams};
pub use poly::IntPolynomial;
pub use rational::Rational;
pub use spectrum::SpectrumMultiset;
pub use verify::{verify_many, verify_spec, VerifyConfig, VerifyReport};
