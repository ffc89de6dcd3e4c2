//! Weighted homogeneity.

use alloc::vec::Vec;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::polynomial::Polynomial;
use crate::rational::Rational;

/// Type `(d_1, ..., d_n; d)` of a weighted homogeneous polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedType {
    weights: Vec<u32>,
    degree: u32,
}

impl WeightedType {
    pub fn new(weights: Vec<u32>, degree: u32) -> Result<Self> {
        if weights.contains(&0) || degree == 0 {
            return Err(Error::InvalidArgument(alloc::string::String::from(
                "weights and weighted degree must be positive",
            )));
        }
        Ok(WeightedType { weights, degree })
    }

    /// All weights one.
    pub fn homogeneous(nvars: usize, degree: u32) -> Result<Self> {
        Self::new(alloc::vec![1; nvars], degree)
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }
}

fn check_arity(p: &Polynomial, w: &WeightedType) -> Result<()> {
    if w.weights.len() != p.nvars() {
        return Err(Error::DimensionMismatch { expected: p.nvars(), found: w.weights.len() });
    }
    Ok(())
}

/// Every monomial has weighted degree `d`.
pub fn is_weighted_homogeneous(p: &Polynomial, w: &WeightedType) -> Result<bool> {
    check_arity(p, w)?;
    Ok(p.terms().all(|(m, _)| m.weighted_degree(&w.weights) == u64::from(w.degree)))
}

/// `Σ d_i x_i ∂p/∂x_i - d·p` is the zero polynomial.
pub fn satisfies_euler_relation(p: &Polynomial, w: &WeightedType) -> Result<bool> {
    Ok(euler_defect(p, w)?.is_zero())
}

/// `Σ d_i x_i ∂p/∂x_i - d·p`.
pub fn euler_defect(p: &Polynomial, w: &WeightedType) -> Result<Polynomial> {
    check_arity(p, w)?;
    let vars = p.vars();
    let mut acc = -&p.scale(&Rational::from_integer(BigInt::from(w.degree)));
    for (i, &di) in w.weights.iter().enumerate() {
        let xi = Polynomial::var(vars, i).scale(&Rational::from_integer(BigInt::from(di)));
        acc = &acc + &(&xi * &p.derivative(i));
    }
    Ok(acc)
}

/// Weighted homogeneity of type `w`, decided both term-wise and through the
/// Euler relation. The two answers always agree.
pub fn check_weighted_type(p: &Polynomial, w: &WeightedType) -> Result<bool> {
    let termwise = is_weighted_homogeneous(p, w)?;
    let euler = satisfies_euler_relation(p, w)?;
    assert_eq!(termwise, euler, "term-wise and Euler-relation homogeneity checks disagree");
    Ok(termwise)
}
