//! Exact multivariate polynomial kernel.

mod linear;
mod multi_index;
mod point;
mod polynomial;
mod rational;

pub use linear::{hyperplane_through, LinearForm};
pub use multi_index::{grlex_compare, monomials_of_degree, monomials_up_to, MultiIndex};
pub use point::{NodeSet, Point};
pub use polynomial::Polynomial;
pub use rational::{format_rational, int, parse_rational, ratio, Rational};
