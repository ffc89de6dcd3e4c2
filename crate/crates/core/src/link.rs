//! Euler characteristics of links through local degrees: Szafraniec's
//! formulas for weighted homogeneous functions and the sum-of-squares
//! construction for arbitrary varieties.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use crate::degree::{gradient, local_degree, MapGerm};
use crate::error::{Error, Result};
use crate::monomial::Monomial;
use crate::polynomial::Polynomial;
use crate::rational::Rational;
use crate::weighted::{check_weighted_type, WeightedType};

/// The auxiliary functions attached to a weighted homogeneous `f`.
#[derive(Clone, Debug)]
pub struct SzafraniecData {
    pub p: u32,
    pub a: Vec<u32>,
    pub omega: Polynomial,
    pub g1: Polynomial,
    pub g2: Polynomial,
    pub h1: MapGerm,
    pub h2: MapGerm,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinkEulerResult {
    pub chi: i64,
    pub deg1: i64,
    pub deg2: i64,
    pub sphere_chi: i64,
}

/// `χ(S^m)`.
pub fn sphere_chi(m: usize) -> i64 {
    if m.is_multiple_of(2) {
        2
    } else {
        0
    }
}

/// Least `p` with `2p > d` and every weight dividing `p`.
pub fn szafraniec_p(w: &WeightedType) -> u32 {
    let l = w.weights().iter().fold(1u32, |acc, &di| acc.lcm(&di));
    l * (w.degree() / (2 * l) + 1)
}

/// `p`, `a_i = p / d_i`, `ω = Σ x_i^{2a_i} / 2a_i`, `g_1 = f - ω`,
/// `g_2 = -f - ω` and `H_i = ∇g_i`.
pub fn szafraniec_setup(f: &Polynomial, w: &WeightedType) -> Result<SzafraniecData> {
    if !check_weighted_type(f, w)? {
        return Err(Error::NotWeightedHomogeneous);
    }
    if f.terms().any(|(m, _)| m.degree() <= 1) {
        return Err(Error::DifferentialNonzero);
    }
    let n = f.nvars();
    let p = szafraniec_p(w);
    let a: Vec<u32> = w.weights().iter().map(|&di| p / di).collect();
    let omega = Polynomial::from_terms(
        f.vars(),
        a.iter()
            .enumerate()
            .map(|(i, &ai)| (Monomial::pure_power(n, i, 2 * ai), Rational::new(BigInt::from(1), BigInt::from(2 * ai)))),
    );
    let g1 = f - &omega;
    let g2 = &(-f) - &omega;
    let h1 = gradient(&g1)?;
    let h2 = gradient(&g2)?;
    Ok(SzafraniecData { p, a, omega, g1, g2, h1, h2 })
}

/// `χ(L) = 2 - (deg_0 H_1 + deg_0 H_2 + χ(S^{n-1}))`.
pub fn two_degree_formula(deg1: i64, deg2: i64, n: usize) -> i64 {
    2 - (deg1 + deg2 + sphere_chi(n - 1))
}

/// `χ(L) = 2 (1 - deg_0 H_1) - χ(S^{n-1})`, valid for odd `d`.
pub fn odd_degree_formula(deg1: i64, n: usize) -> i64 {
    2 * (1 - deg1) - sphere_chi(n - 1)
}

/// Euler characteristic of the link `f^{-1}(0) ∩ S^{n-1}` from both degrees.
pub fn link_euler(f: &Polynomial, w: &WeightedType) -> Result<LinkEulerResult> {
    let data = szafraniec_setup(f, w)?;
    let deg1 = local_degree(&data.h1)?;
    let deg2 = local_degree(&data.h2)?;
    let n = f.nvars();
    Ok(LinkEulerResult { chi: two_degree_formula(deg1, deg2, n), deg1, deg2, sphere_chi: sphere_chi(n - 1) })
}

/// The odd-degree specialisation. Both degrees are still computed and must
/// agree.
pub fn link_euler_odd(f: &Polynomial, w: &WeightedType) -> Result<LinkEulerResult> {
    if w.degree().is_multiple_of(2) {
        return Err(Error::DegreeEven { degree: w.degree() });
    }
    let data = szafraniec_setup(f, w)?;
    let deg1 = local_degree(&data.h1)?;
    let deg2 = local_degree(&data.h2)?;
    if deg1 != deg2 {
        return Err(Error::ConsistencyFail(alloc::format!(
            "deg H1 = {} differs from deg H2 = {} although d is odd",
            deg1,
            deg2
        )));
    }
    let n = f.nvars();
    Ok(LinkEulerResult { chi: odd_degree_formula(deg1, n), deg1, deg2, sphere_chi: sphere_chi(n - 1) })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VarietyLinkResult {
    pub chi: i64,
    pub k: u32,
    pub degree: i64,
}

pub const DEFAULT_K_MAX: u32 = 20;

/// Link of `{f_1 = ... = f_s = 0}`: with `f = Σ f_i²` and
/// `g = f - (Σ x_i²)^k`, the least admissible `k <= k_max` for which `∇g`
/// has an isolated zero gives `χ = 1 - deg_0 ∇g`.
///
/// Exponents with `2k <= ord f` are skipped: there the lowest-degree part of
/// `g` is `-(Σ x_i²)^k`, so `∇g` always has an isolated zero and the formula
/// returns `χ(S^{n-1})` whatever `f` is.
pub fn variety_link_euler(f_list: &[Polynomial], k_max: u32) -> Result<VarietyLinkResult> {
    let Some(first) = f_list.first() else {
        return Err(Error::InvalidArgument(alloc::string::String::from("no polynomials given")));
    };
    let vars = first.vars().clone();
    if f_list.iter().any(|f| !f.same_vars_list(&vars)) {
        return Err(Error::VariableMismatch);
    }
    if let Some(k) = f_list.iter().position(|f| !f.constant_term().is_zero()) {
        return Err(Error::ConstantTerm { component: k });
    }
    let f = f_list.iter().fold(Polynomial::zero(&vars), |acc, fi| &acc + &(fi * fi));
    let r2 = (0..vars.len()).fold(Polynomial::zero(&vars), |acc, i| {
        let xi = Polynomial::var(&vars, i);
        &acc + &(&xi * &xi)
    });
    let k_min = f_list.iter().filter_map(Polynomial::order).min().unwrap_or(0) + 1;
    for k in k_min..=k_max {
        let g = &f - &r2.pow(k);
        if g.is_zero() {
            continue;
        }
        let h = gradient(&g)?;
        match local_degree(&h) {
            Ok(degree) => return Ok(VarietyLinkResult { chi: 1 - degree, k, degree }),
            Err(Error::NonIsolatedZero { .. }) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(Error::KExhausted { k_max })
}

/// `χ` of the link of a function whose differential at 0 is nonzero: a
/// sphere `S^{n-2}`.
pub fn smooth_link_chi(n: usize) -> i64 {
    sphere_chi(n - 2)
}

/// True if `f` has a nonzero linear part.
pub fn has_nonzero_differential(f: &Polynomial) -> bool {
    f.terms().any(|(m, c)| m.degree() == 1 && !c.is_zero())
}
