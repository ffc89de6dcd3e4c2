//! Finite-dimensional local algebras `R/I` and their multiplication tables.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::basis::StandardBasis;
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::monomial::Monomial;
use crate::polynomial::Polynomial;
use crate::rational::Rational;

/// The quotient `R/I` for a standard basis with finitely many standard
/// monomials, together with one multiplication matrix per variable.
///
/// Column `b` of `multiplication_matrix(i)` holds the coordinates of
/// `x_i * m_b`.
#[derive(Clone, Debug)]
pub struct LocalAlgebra {
    sb: StandardBasis,
    basis: Vec<Monomial>,
    index: BTreeMap<Monomial, usize>,
    mult: Vec<Matrix>,
}

/// Builds the quotient algebra. Fails with `NotFinite` when some variable has
/// no pure power among the leading monomials and with `UnitIdeal` when the
/// quotient is zero.
pub fn quotient_basis(sb: &StandardBasis) -> Result<LocalAlgebra> {
    let basis = sb.standard_monomials()?;
    if basis.is_empty() {
        return Err(Error::UnitIdeal);
    }
    let index: BTreeMap<Monomial, usize> = basis.iter().cloned().enumerate().map(|(k, m)| (m, k)).collect();
    let n = sb.vars().len();
    let mu = basis.len();
    let mut mult = Vec::with_capacity(n);
    for i in 0..n {
        let xi = Monomial::var(n, i);
        let mut m = Matrix::zeros(mu, mu);
        for (b, mb) in basis.iter().enumerate() {
            let prod = mb.mul(&xi);
            if let Some(&a) = index.get(&prod) {
                m[(a, b)] = Rational::one();
                continue;
            }
            let nf = sb.normal_form(&Polynomial::term(sb.vars(), prod, Rational::one()));
            for (mono, c) in nf.terms() {
                let a = *index.get(mono).expect("normal form supported on standard monomials");
                m[(a, b)] = c.clone();
            }
        }
        mult.push(m);
    }
    Ok(LocalAlgebra { sb: sb.clone(), basis, index, mult })
}

impl LocalAlgebra {
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    /// Standard monomials, `1` first.
    pub fn basis(&self) -> &[Monomial] {
        &self.basis
    }

    pub fn standard_basis(&self) -> &StandardBasis {
        &self.sb
    }

    pub fn multiplication_matrix(&self, i: usize) -> &Matrix {
        &self.mult[i]
    }

    pub fn position(&self, m: &Monomial) -> Option<usize> {
        self.index.get(m).copied()
    }

    /// Coordinates of the class of `p`.
    pub fn coordinates(&self, p: &Polynomial) -> Vec<Rational> {
        let nf = self.sb.normal_form(p);
        let mut v = alloc::vec![Rational::zero(); self.basis.len()];
        for (m, c) in nf.terms() {
            v[self.index[m]] = c.clone();
        }
        v
    }

    pub fn from_coordinates(&self, v: &[Rational]) -> Polynomial {
        Polynomial::from_terms(
            self.sb.vars(),
            self.basis.iter().zip(v).filter(|(_, c)| !c.is_zero()).map(|(m, c)| (m.clone(), c.clone())),
        )
    }

    /// Coordinates of `m * v` for a monomial `m`, by repeated application of
    /// the multiplication matrices.
    pub fn mul_monomial(&self, m: &Monomial, v: &[Rational]) -> Vec<Rational> {
        let mut out = v.to_vec();
        for (i, &e) in m.exps().iter().enumerate() {
            for _ in 0..e {
                out = self.mult[i].mul_vec(&out);
            }
        }
        out
    }
}
