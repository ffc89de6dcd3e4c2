//! Exact computation of local topological degrees of real polynomial map
//! germs, and of the Euler characteristics of Milnor fibres and links that
//! are expressed through them.
//!
//! The crate is `no_std` and needs only `alloc`. Everything is exact: the
//! coefficients are arbitrary-precision rationals and every answer is an
//! integer.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod algebra;
pub mod basis;
pub mod degree;
pub mod error;
pub mod link;
pub mod matrix;
pub mod milnor;
pub mod monomial;
pub mod parse;
pub mod polynomial;
pub mod rational;
pub mod signature;
pub mod weighted;

pub use algebra::{quotient_basis, LocalAlgebra};
pub use basis::{compute_standard_basis, normal_form, quotient_dimension, PairStrategy, StandardBasis};
pub use degree::{gradient, jacobian_determinant, local_degree, MapGerm};
pub use error::{Error, Result};
pub use monomial::{Monomial, TermOrder};
pub use parse::{parse_polynomial, parse_rational};
pub use polynomial::{variables, Polynomial, Variables};
pub use rational::Rational;
pub use signature::{exact_signature, SignatureResult};
pub use weighted::{check_weighted_type, WeightedType};
