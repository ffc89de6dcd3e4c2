//! Local topological degree of a map germ `(R^n, 0) -> (R^n, 0)` as the
//! signature of the Eisenbud-Levine-Khimshiashvili bilinear form.
//!
//! With `Q = R[[x]]/(H_1..H_n)` finite-dimensional and `J` the class of the
//! Jacobian determinant, any linear form `φ` on `Q` with `φ(J) > 0` gives a
//! nondegenerate pairing `<a, b> = φ(ab)` whose signature is `deg_0 H`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_traits::Zero;

use crate::algebra::{quotient_basis, LocalAlgebra};
use crate::basis::compute_standard_basis;
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::monomial::{Monomial, TermOrder};
use crate::polynomial::{Polynomial, Variables};
use crate::rational::{sign, Rational};
use crate::signature::{exact_signature, SignatureResult};

/// `n` polynomials in `n` variables, vanishing at the origin.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MapGerm {
    components: Vec<Polynomial>,
}

impl MapGerm {
    pub fn new(components: Vec<Polynomial>) -> Result<Self> {
        let Some(first) = components.first() else {
            return Err(Error::InvalidArgument(String::from("a map germ needs at least one component")));
        };
        let vars = first.vars().clone();
        if components.iter().any(|c| !c.same_vars_list(&vars)) {
            return Err(Error::VariableMismatch);
        }
        if components.len() != vars.len() {
            return Err(Error::DimensionMismatch { expected: vars.len(), found: components.len() });
        }
        if let Some(k) = components.iter().position(|c| !c.constant_term().is_zero()) {
            return Err(Error::ConstantTerm { component: k });
        }
        Ok(MapGerm { components })
    }

    pub fn components(&self) -> &[Polynomial] {
        &self.components
    }

    pub fn vars(&self) -> &Variables {
        self.components[0].vars()
    }

    pub fn nvars(&self) -> usize {
        self.components.len()
    }
}

/// `∇p`, as a map germ. Fails if some partial derivative does not vanish at 0.
pub fn gradient(p: &Polynomial) -> Result<MapGerm> {
    MapGerm::new(p.partials())
}

/// Determinant of a square matrix of polynomials by Laplace expansion along
/// rows, memoising minors on the set of columns used.
pub fn determinant(rows: &[Vec<Polynomial>], vars: &Variables) -> Polynomial {
    let n = rows.len();
    assert!(rows.iter().all(|r| r.len() == n), "matrix must be square");
    assert!(n < 32, "too many rows");
    if n == 0 {
        return Polynomial::one(vars);
    }
    // memo[mask] = det of the last popcount(mask) rows restricted to columns in mask
    let mut memo: BTreeMap<u32, Polynomial> = BTreeMap::new();
    for (j, p) in rows[n - 1].iter().enumerate() {
        memo.insert(1 << j, p.clone());
    }
    for r in (0..n - 1).rev() {
        let size = n - r;
        let mut next: BTreeMap<u32, Polynomial> = BTreeMap::new();
        for mask in 0u32..(1 << n) {
            if mask.count_ones() as usize != size {
                continue;
            }
            let mut acc = Polynomial::zero(vars);
            let mut pos = 0;
            for j in 0..n {
                if mask & (1 << j) == 0 {
                    continue;
                }
                let a = &rows[r][j];
                let minor = &memo[&(mask & !(1 << j))];
                if !a.is_zero() && !minor.is_zero() {
                    let t = a * minor;
                    acc = if pos % 2 == 0 { &acc + &t } else { &acc - &t };
                }
                pos += 1;
            }
            next.insert(mask, acc);
        }
        memo = next;
    }
    memo.remove(&((1u32 << n) - 1)).unwrap()
}

/// `det(∂H_i/∂x_j)`, expanded.
pub fn jacobian_determinant(h: &MapGerm) -> Polynomial {
    let rows: Vec<Vec<Polynomial>> = h.components.iter().map(Polynomial::partials).collect();
    determinant(&rows, h.vars())
}

/// Which linear form on the local algebra defines the pairing.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Functional {
    /// Sign-adjusted dual of the support monomial of `J` of highest degree
    /// (the smallest one in the local order).
    #[default]
    Standard,
    /// Sign-adjusted dual of the `k`-th support monomial of `J`, counted in
    /// descending term order.
    Support(usize),
}

/// The bilinear form `<m_a, m_b> = φ(m_a m_b)` on the standard monomials.
#[derive(Clone, Debug)]
pub struct GramForm {
    pub basis: Vec<Monomial>,
    pub matrix: Matrix,
    /// Basis index of the monomial whose dual (times `functional_sign`) is `φ`.
    pub functional_index: usize,
    pub functional_sign: i32,
    /// Coordinates of the Jacobian class.
    pub jacobian: Vec<Rational>,
}

impl GramForm {
    pub fn signature(&self) -> Result<SignatureResult> {
        exact_signature(&self.matrix)
    }
}

/// Local algebra of the germ, mapping an infinite quotient to
/// `NonIsolatedZero`.
pub fn germ_algebra(h: &MapGerm, order: TermOrder) -> Result<LocalAlgebra> {
    let sb = compute_standard_basis(h.components(), order)?;
    quotient_basis(&sb).map_err(|e| match e {
        Error::NotFinite { .. } => Error::NonIsolatedZero { context: describe(h) },
        other => other,
    })
}

fn describe(h: &MapGerm) -> String {
    let parts: Vec<String> = h.components.iter().map(|c| format!("{}", c)).collect();
    format!("({})", parts.join(", "))
}

/// Number of monomials in the support of the Jacobian class, i.e. the number
/// of admissible [`Functional::Support`] indices.
pub fn support_size(alg: &LocalAlgebra, h: &MapGerm) -> usize {
    alg.coordinates(&jacobian_determinant(h)).iter().filter(|c| !c.is_zero()).count()
}

/// Builds the Gram matrix on an already computed algebra.
pub fn gram_form_on(alg: &LocalAlgebra, h: &MapGerm, functional: Functional) -> Result<GramForm> {
    let jac = alg.coordinates(&jacobian_determinant(h));
    let support: Vec<usize> = (0..jac.len()).filter(|&k| !jac[k].is_zero()).collect();
    let idx = match functional {
        Functional::Standard => *support
            .iter()
            .max_by_key(|&&k| (alg.basis()[k].degree(), k))
            .ok_or_else(|| Error::ConsistencyFail(String::from("Jacobian class vanishes in the local algebra")))?,
        Functional::Support(k) => *support.get(k).ok_or_else(|| {
            Error::InvalidArgument(format!("Jacobian class has only {} support monomials", support.len()))
        })?,
    };
    let s = sign(&jac[idx]);

    let mut phi = alloc::vec![Rational::zero(); alg.dimension()];
    phi[idx] = Rational::from_integer(s.into());
    let matrix = gram_matrix(alg, &phi);
    let basis = alg.basis().to_vec();
    Ok(GramForm { basis, matrix, functional_index: idx, functional_sign: s, jacobian: jac })
}

/// `G_ab = φ(m_a m_b)` for the functional with coordinates `phi` in the dual
/// of the standard monomial basis.
pub fn gram_matrix(alg: &LocalAlgebra, phi: &[Rational]) -> Matrix {
    // Row a is φᵀ M(m_a), where M(m) multiplies by m. The standard monomials
    // form an order ideal, so each row extends an earlier one by one
    // multiplication matrix.
    let mu = alg.dimension();
    assert_eq!(phi.len(), mu, "functional has the wrong length");
    let basis = alg.basis();
    let mut rows: Vec<Option<Vec<Rational>>> = alloc::vec![None; mu];
    let mut order: Vec<usize> = (0..mu).collect();
    order.sort_by_key(|&k| basis[k].degree());
    for &a in &order {
        let m = &basis[a];
        let row = match m.exps().iter().position(|&e| e > 0) {
            None => phi.to_vec(),
            Some(i) => {
                let mut prev = m.clone();
                prev.exps_mut()[i] -= 1;
                let pa = alg.position(&prev).expect("standard monomials form an order ideal");
                let base = rows[pa].as_ref().expect("rows computed by increasing degree");
                alg.multiplication_matrix(i).vec_mul(base)
            }
        };
        rows[a] = Some(row);
    }
    Matrix::from_rows(rows.into_iter().map(Option::unwrap).collect())
}

/// Builds the Gram form of `h` for the given functional.
pub fn gram_form(h: &MapGerm, functional: Functional) -> Result<GramForm> {
    let alg = germ_algebra(h, TermOrder::LocalNegDegRevLex)?;
    gram_form_on(&alg, h, functional)
}

/// Signature of a Gram form, rejecting degenerate pairings.
pub fn degree_of_form(g: &GramForm) -> Result<i64> {
    let s = g.signature()?;
    if s.n_zero > 0 {
        return Err(Error::DegeneratePairing { n_zero: s.n_zero });
    }
    Ok(s.signature())
}

/// `deg_0 H`.
pub fn local_degree(h: &MapGerm) -> Result<i64> {
    local_degree_with(h, TermOrder::LocalNegDegRevLex, Functional::Standard)
}

/// Degree computed with an explicit order and functional.
///
/// With the global order the algebra is `R[x]/(H)`, which sees every complex
/// zero of `H`; its signature is then the sum of the local degrees over the
/// real zeros (when the form is nondegenerate). Intended for debugging.
pub fn local_degree_with(h: &MapGerm, order: TermOrder, functional: Functional) -> Result<i64> {
    let alg = germ_algebra(h, order)?;
    degree_of_form(&gram_form_on(&alg, h, functional)?)
}

/// Multiplicity `μ = dim Q` of the germ.
pub fn multiplicity(h: &MapGerm) -> Result<usize> {
    Ok(germ_algebra(h, TermOrder::LocalNegDegRevLex)?.dimension())
}

/// `φ(J)`; positive for every admissible functional.
pub fn functional_value(g: &GramForm) -> Rational {
    &g.jacobian[g.functional_index] * Rational::from_integer(g.functional_sign.into())
}
