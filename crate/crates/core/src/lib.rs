//! Exact analysis of multivariate Hermite interpolation of type total degree.
//!
//! The crate decides singularity and almost-regularity of interpolation
//! schemes, builds explicit witness polynomials for singular schemes,
//! computes minimal interpolation spaces through the dual (functional)
//! description of the vanishing ideal, and checks every claim with exact
//! generalized Vandermonde ranks. All arithmetic is over the rationals.
//!
//! Modules, bottom-up:
//! - [`poly`]: rationals, multi-indices, sparse polynomials, linear forms, points.
//! - [`linalg`]: exact matrices, fraction-free rank, nullspaces, linear solves.
//! - [`scheme`]: schemes, the cardinality equation and the classifier.
//! - [`witness`]: constructive singularity witnesses.
//! - [`functional`]: Hermite functional matrices and regularity sampling.
//! - [`ideal`]: quotient (standard monomial) bases and border bases.
//!
//! Batch work (sampling trials, atlas rows) runs on rayon when the
//! `parallel` feature is enabled and falls back to a plain loop otherwise;
//! see [`exec`].

pub mod error;
pub mod exec;
pub mod functional;
pub mod ideal;
pub mod linalg;
pub mod poly;
pub mod scheme;
pub mod witness;

pub use error::{Error, Result};
pub use exec::Execution;
pub use poly::{
    grlex_compare, hyperplane_through, LinearForm, MultiIndex, NodeSet, Point, Polynomial, Rational,
};
pub use scheme::{classify, solve_degree, ClassificationResult, Rule, Scheme, Status, WitnessRecipe};
