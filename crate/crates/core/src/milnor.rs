//! Euler characteristics of Milnor fibres and links of map germs
//! `F = (f_1, ..., f_k) : (R^n, 0) -> (R^k, 0)`, and a verifier that
//! cross-checks them.
//!
//! Everything past the classical single-germ formulas presupposes Milnor's
//! conditions (a) and (b). They are never checked here; callers assert them
//! through [`MilnorInvariants::milnor_ab_asserted`].

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::basis::{compute_standard_basis, quotient_dimension};
use crate::degree::{determinant, gradient, local_degree, MapGerm};
use crate::error::{Error, Result};
use crate::link::{has_nonzero_differential, link_euler, smooth_link_chi, sphere_chi, variety_link_euler};
use crate::monomial::TermOrder;
use crate::polynomial::Polynomial;
use crate::weighted::WeightedType;

/// Sign of the regular value `δ`; only its sign enters the formulas.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DeltaSign {
    Positive,
    Negative,
}

impl DeltaSign {
    /// `sign(-δ)^n`.
    fn neg_pow(self, n: usize) -> i64 {
        match self {
            DeltaSign::Negative => 1,
            DeltaSign::Positive if n.is_multiple_of(2) => 1,
            DeltaSign::Positive => -1,
        }
    }
}

/// `χ(f^{-1}(δ) ∩ B_ε) = 1 - sign(-δ)^n deg_0 ∇f`.
pub fn khimshiashvili_chi(f: &Polynomial, delta: DeltaSign) -> Result<i64> {
    let deg = local_degree(&gradient(f)?)?;
    Ok(1 - delta.neg_pow(f.nvars()) * deg)
}

fn check_components(psi: &[Polynomial]) -> Result<usize> {
    let Some(first) = psi.first() else {
        return Err(Error::InvalidArgument(String::from("no components given")));
    };
    if psi.iter().any(|f| !f.same_vars_list(first.vars())) {
        return Err(Error::VariableMismatch);
    }
    Ok(first.nvars())
}

/// Milnor fibre of a map germ with an isolated singular point:
/// `1 - deg_0 ∇f_1` for even `n` and `1` for odd `n`. The degrees of all
/// `∇f_i` are computed and must satisfy the equalities that come with the
/// formula.
pub fn isolated_milnor_chi(psi: &[Polynomial]) -> Result<i64> {
    let n = check_components(psi)?;
    let k = psi.len();
    if k < 2 || k > n {
        return Err(Error::InvalidArgument(format!("need 2 <= k <= n, got k = {}, n = {}", k, n)));
    }
    let degs = psi.iter().map(|f| local_degree(&gradient(f)?)).collect::<Result<Vec<i64>>>()?;
    if n % 2 == 0 {
        if degs.iter().any(|&d| d != degs[0]) {
            return Err(Error::ConsistencyFail(format!("gradient degrees {:?} are not all equal", degs)));
        }
        Ok(1 - degs[0])
    } else {
        if degs.iter().any(|&d| d != 0) {
            return Err(Error::ConsistencyFail(format!("gradient degrees {:?} are not all zero", degs)));
        }
        Ok(1)
    }
}

/// `D_{δ,0} = -sign(-δ)^n deg_0 H` with `H = (f_1, ∂f_1/∂x_2, ..., ∂f_1/∂x_n)`.
pub fn fukui_d(f1: &Polynomial, delta: DeltaSign) -> Result<i64> {
    let mut comps = vec![f1.clone()];
    comps.extend((1..f1.nvars()).map(|i| f1.derivative(i)));
    let deg = local_degree(&MapGerm::new(comps)?)?;
    Ok(-delta.neg_pow(f1.nvars()) * deg)
}

/// `Σ x_i²`.
pub fn squared_norm(vars: &crate::polynomial::Variables) -> Polynomial {
    (0..vars.len()).fold(Polynomial::zero(vars), |acc, i| {
        let x = Polynomial::var(vars, i);
        &acc + &(&x * &x)
    })
}

/// Number of half-branches of `φ^{-1}(0)` for `φ = (f_1, ..., f_{n-1})`:
/// `2 deg_0 H` with `H = (∂(f_n, f_1, ..., f_{n-1})/∂(x_1, ..., x_n), f_1, ..., f_{n-1})`
/// and `f_n = Σ x_i²` by default.
pub fn aoki_semibranches(phi: &[Polynomial], f_n: Option<&Polynomial>) -> Result<i64> {
    let n = check_components(phi)?;
    if phi.len() + 1 != n {
        return Err(Error::DimensionMismatch { expected: n - 1, found: phi.len() });
    }
    let vars = phi[0].vars().clone();
    let fn_poly = match f_n {
        Some(p) => {
            if !p.same_vars_list(&vars) {
                return Err(Error::VariableMismatch);
            }
            p.clone()
        }
        None => squared_norm(&vars),
    };
    let mut rows = vec![fn_poly.partials()];
    rows.extend(phi.iter().map(Polynomial::partials));
    let mut comps = vec![determinant(&rows, &vars)];
    comps.extend(phi.iter().cloned());
    let count = 2 * local_degree(&MapGerm::new(comps)?)?;
    if count < 0 {
        return Err(Error::NegativeCount { count });
    }
    Ok(count)
}

/// All `k × k` minors of the Jacobian matrix of `psi`.
pub fn maximal_minors(psi: &[Polynomial]) -> Result<Vec<Polynomial>> {
    let n = check_components(psi)?;
    let k = psi.len();
    if k > n {
        return Err(Error::InvalidArgument(format!("{} components in {} variables", k, n)));
    }
    let vars = psi[0].vars().clone();
    let jac: Vec<Vec<Polynomial>> = psi.iter().map(Polynomial::partials).collect();
    let mut out = Vec::new();
    for mask in 0u32..(1 << n) {
        if mask.count_ones() as usize != k {
            continue;
        }
        let cols: Vec<usize> = (0..n).filter(|&j| mask & (1 << j) != 0).collect();
        let sub: Vec<Vec<Polynomial>> = jac.iter().map(|row| cols.iter().map(|&j| row[j].clone()).collect()).collect();
        out.push(determinant(&sub, &vars));
    }
    Ok(out)
}

/// `dim O/I mod 2`, with `I` generated by `f_1, ..., f_{k-1}` and the
/// maximal minors of the Jacobian matrix of `psi`.
pub fn euler_mod2(psi: &[Polynomial]) -> Result<u8> {
    check_components(psi)?;
    let mut gens: Vec<Polynomial> = psi[..psi.len() - 1].to_vec();
    gens.extend(maximal_minors(psi)?);
    gens.retain(|g| !g.is_zero());
    if gens.is_empty() {
        return Err(Error::NotFinite { variable: psi[0].vars()[0].clone() });
    }
    let sb = compute_standard_basis(&gens, TermOrder::LocalNegDegRevLex)?;
    Ok((quotient_dimension(&sb)? % 2) as u8)
}

/// Data shared by the fibre and link formulas of a map germ
/// `F : (R^n, 0) -> (R^k, 0)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MilnorInvariants {
    pub n: usize,
    pub k: usize,
    pub chi_mf: i64,
    pub milnor_ab_asserted: bool,
}

impl MilnorInvariants {
    fn require(&self) -> Result<()> {
        if !self.milnor_ab_asserted {
            return Err(Error::HypothesisNotAsserted);
        }
        if self.k < 2 || self.k + 1 > self.n {
            return Err(Error::InvalidArgument(format!("need 2 <= k <= n - 1, got k = {}, n = {}", self.k, self.n)));
        }
        Ok(())
    }
}

/// `χ(L_I)` for `|I| = l`.
pub fn link_chi(n: usize, l: usize, chi_mf: i64) -> i64 {
    match (n.is_multiple_of(2), l % 2 == 1) {
        (true, true) => 2 * chi_mf,
        (true, false) => 0,
        (false, true) => 2 - 2 * chi_mf,
        (false, false) => 2,
    }
}

/// `≤` or `≥` in a semianalytic sign pattern.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Inequality {
    Le,
    Ge,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SemianalyticEntry {
    pub i_size: usize,
    pub pattern: Vec<Inequality>,
    pub chi: i64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinkTable {
    pub n: usize,
    pub chi_mf: i64,
    /// `links[l - 1] = χ(L_I)` for `|I| = l`.
    pub links: Vec<i64>,
    pub semianalytic: Vec<SemianalyticEntry>,
}

impl LinkTable {
    /// `χ(L_I)`, with `L_∅` the whole sphere `S^{n-1}`.
    pub fn chi(&self, l: usize) -> i64 {
        if l == 0 {
            sphere_chi(self.n - 1)
        } else {
            self.links[l - 1]
        }
    }
}

/// Link Euler characteristics for every `l = 1..k`, plus one semianalytic
/// set per `(|I|, pattern length)`.
pub fn link_table(inv: &MilnorInvariants) -> Result<LinkTable> {
    inv.require()?;
    let links = (1..=inv.k).map(|l| link_chi(inv.n, l, inv.chi_mf)).collect();
    let mut semianalytic = Vec::new();
    for i_size in 1..inv.k {
        for s in 1..=inv.k - i_size {
            let pattern: Vec<Inequality> =
                (0..s).map(|t| if t % 2 == 0 { Inequality::Ge } else { Inequality::Le }).collect();
            let chi = semianalytic_chi(inv, i_size, &pattern)?;
            semianalytic.push(SemianalyticEntry { i_size, pattern, chi });
        }
    }
    Ok(LinkTable { n: inv.n, chi_mf: inv.chi_mf, links, semianalytic })
}

/// Inverts the `l = 1` row of the link table.
pub fn milnor_chi_from_link(chi_l1: i64, n: usize) -> Result<i64> {
    if chi_l1 % 2 != 0 {
        return Err(Error::Parity { value: chi_l1 });
    }
    Ok(if n.is_multiple_of(2) { chi_l1 / 2 } else { (2 - chi_l1) / 2 })
}

/// `χ(L_J) - χ(L_I) = (-1)^{n-l} 2 χ(M_F)` where `|I| = l` and `J` is `I`
/// without its last element.
pub fn charl1_check(chi_lj: i64, chi_li: i64, n: usize, l: usize, chi_mf: i64) -> bool {
    chi_lj - chi_li == charl1_rhs(n, l, chi_mf)
}

fn charl1_rhs(n: usize, l: usize, chi_mf: i64) -> i64 {
    let s = if (n + l).is_multiple_of(2) { 1 } else { -1 };
    s * 2 * chi_mf
}

/// `χ(f_I^{-1}(δ) ∩ {f_j ε_j 0} ∩ B_ε)`; equal to `χ(M_F)` for every pattern.
pub fn semianalytic_chi(inv: &MilnorInvariants, i_size: usize, pattern: &[Inequality]) -> Result<i64> {
    inv.require()?;
    if i_size == 0 || i_size + pattern.len() > inv.k {
        return Err(Error::InvalidArgument(format!(
            "|I| + pattern length = {} must lie in 1..={}",
            i_size + pattern.len(),
            inv.k
        )));
    }
    Ok(inv.chi_mf)
}

/// `χ(∂M)` for a compact manifold `M` with boundary: `2χ(M)` if `dim M` is odd,
/// `0` otherwise.
pub fn boundary_chi(chi_m: i64, dim_m: usize) -> Result<i64> {
    if dim_m == 0 {
        return Err(Error::InvalidArgument(String::from("dimension must be positive")));
    }
    Ok(if dim_m % 2 == 1 { 2 * chi_m } else { 0 })
}

/// How a link Euler characteristic was obtained.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LinkMethod {
    /// `df(0) ≠ 0`, the link is a sphere `S^{n-2}`.
    SmoothSphere,
    /// Weighted homogeneous; both auxiliary degrees.
    Szafraniec { deg1: i64, deg2: i64 },
    /// Sum of squares with the exponent that made the critical point isolated.
    SumOfSquares { k: u32, degree: i64 },
}

/// `χ(L_{{j}})` for one component.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinkWitness {
    pub component: usize,
    pub chi: i64,
    pub method: LinkMethod,
}

/// `χ` of the Milnor fibre `f_j^{-1}(δ) ∩ B_ε` of one component.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FibreWitness {
    pub component: usize,
    pub delta: DeltaSign,
    pub chi: i64,
}

/// Link of one component, by the cheapest applicable method.
pub fn link_witness(
    component: usize,
    f: &Polynomial,
    weights: Option<&WeightedType>,
    k_max: u32,
) -> Result<LinkWitness> {
    let n = f.nvars();
    if has_nonzero_differential(f) {
        return Ok(LinkWitness { component, chi: smooth_link_chi(n), method: LinkMethod::SmoothSphere });
    }
    if let Some(w) = weights {
        let r = link_euler(f, w)?;
        return Ok(LinkWitness {
            component,
            chi: r.chi,
            method: LinkMethod::Szafraniec { deg1: r.deg1, deg2: r.deg2 },
        });
    }
    let r = variety_link_euler(core::slice::from_ref(f), k_max)?;
    Ok(LinkWitness { component, chi: r.chi, method: LinkMethod::SumOfSquares { k: r.k, degree: r.degree } })
}

/// Khimshiashvili fibres of one component, if its gradient has an isolated
/// zero.
pub fn fibre_witnesses(component: usize, f: &Polynomial) -> Vec<FibreWitness> {
    let Ok(h) = gradient(f) else { return Vec::new() };
    let Ok(deg) = local_degree(&h) else { return Vec::new() };
    [DeltaSign::Positive, DeltaSign::Negative]
        .into_iter()
        .map(|delta| FibreWitness { component, delta, chi: 1 - delta.neg_pow(f.nvars()) * deg })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    /// A computed value contradicts a consequence of Milnor's conditions:
    /// the asserted hypothesis is false.
    HypothesisFailure,
    /// Two values that must agree unconditionally do not.
    Mismatch,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::HypothesisFailure => "hypothesis_failure",
            Verdict::Mismatch => "mismatch",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConsistencyRow {
    pub relation: String,
    pub expected: i64,
    pub computed: i64,
    pub verdict: Verdict,
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct ConsistencyReport {
    pub rows: Vec<ConsistencyRow>,
    pub notes: Vec<String>,
}

impl ConsistencyReport {
    pub fn all_pass(&self) -> bool {
        self.rows.iter().all(|r| r.verdict == Verdict::Pass)
    }

    pub fn has_hypothesis_failure(&self) -> bool {
        self.rows.iter().any(|r| r.verdict == Verdict::HypothesisFailure)
    }

    fn push(&mut self, relation: String, expected: i64, computed: i64, on_mismatch: Verdict) {
        let verdict = if expected == computed { Verdict::Pass } else { on_mismatch };
        self.rows.push(ConsistencyRow { relation, expected, computed, verdict });
    }
}

/// Input of [`verify_all`]. `chi_mf` may be left open, in which case it is
/// derived from the first link witness.
#[derive(Clone, Debug)]
pub struct VerifyInput {
    pub n: usize,
    pub k: usize,
    pub chi_mf: Option<i64>,
    pub milnor_ab_asserted: bool,
    pub links: Vec<LinkWitness>,
    pub fibres: Vec<FibreWitness>,
}

/// Computes the witnesses for the components of `F` and checks them against
/// each other and against the link table.
pub fn collect_witnesses(
    components: &[Polynomial],
    weights: &[Option<WeightedType>],
    k_max: u32,
) -> (Vec<LinkWitness>, Vec<FibreWitness>, Vec<String>) {
    let mut links = Vec::new();
    let mut fibres = Vec::new();
    let mut notes = Vec::new();
    for (j, f) in components.iter().enumerate() {
        match link_witness(j, f, weights.get(j).and_then(Option::as_ref), k_max) {
            Ok(w) => links.push(w),
            Err(e) => notes.push(format!("no link witness for component {}: {}", j + 1, e)),
        }
        fibres.extend(fibre_witnesses(j, f));
    }
    (links, fibres, notes)
}

/// One row per applicable relation.
pub fn verify_all(input: &VerifyInput) -> ConsistencyReport {
    let mut rep = ConsistencyReport::default();
    let n = input.n;
    if !input.milnor_ab_asserted {
        rep.notes
            .push(String::from("Milnor's conditions (a) and (b) not asserted; only unconditional relations checked"));
    }

    for w in &input.fibres {
        if n.is_multiple_of(2) {
            let other = input
                .fibres
                .iter()
                .find(|v| v.component == w.component && v.delta != w.delta && w.delta == DeltaSign::Positive);
            if let Some(v) = other {
                rep.push(
                    format!("khimshiashvili: chi(M+) = chi(M-) for f{}", w.component + 1),
                    w.chi,
                    v.chi,
                    Verdict::Mismatch,
                );
            }
        }
    }

    let chi_mf = match (input.chi_mf, input.links.first()) {
        (Some(c), _) => Some(c),
        (None, Some(w)) => match milnor_chi_from_link(w.chi, n) {
            Ok(c) => {
                rep.notes.push(format!("chi(M_F) = {} derived from chi(L) of f{}", c, w.component + 1));
                Some(c)
            }
            Err(e) => {
                rep.notes.push(format!("cannot derive chi(M_F) from f{}: {}", w.component + 1, e));
                None
            }
        },
        (None, None) => None,
    };
    let Some(chi_mf) = chi_mf else {
        rep.notes.push(String::from("chi(M_F) unknown; no link relations checked"));
        return rep;
    };
    if !input.milnor_ab_asserted {
        return rep;
    }
    let inv = MilnorInvariants { n, k: input.k, chi_mf, milnor_ab_asserted: true };
    let table = match link_table(&inv) {
        Ok(t) => t,
        Err(e) => {
            rep.notes.push(format!("link table unavailable: {}", e));
            return rep;
        }
    };

    rep.push(String::from("chi(M_F)"), chi_mf, chi_mf, Verdict::Mismatch);
    for w in &input.links {
        rep.push(format!("charlink: chi(L_{{{}}})", w.component + 1), table.chi(1), w.chi, Verdict::HypothesisFailure);
        rep.push(
            format!("charl1: chi(S^{}) - chi(L_{{{}}}) = (-1)^{} 2chi(M_F)", n - 1, w.component + 1, n - 1),
            charl1_rhs(n, 1, chi_mf),
            sphere_chi(n - 1) - w.chi,
            Verdict::HypothesisFailure,
        );
    }
    for l in 1..=input.k {
        rep.push(
            format!("charl1 on table: l = {}", l),
            charl1_rhs(n, l, chi_mf),
            table.chi(l - 1) - table.chi(l),
            Verdict::Mismatch,
        );
    }
    for w in &input.fibres {
        rep.push(
            format!(
                "charfib2: chi(M{}_f{}) = chi(M_F)",
                if w.delta == DeltaSign::Positive { "+" } else { "-" },
                w.component + 1
            ),
            chi_mf,
            w.chi,
            Verdict::HypothesisFailure,
        );
    }
    for e in &table.semianalytic {
        rep.push(
            format!("charsemi1: |I| = {}, {} inequalities", e.i_size, e.pattern.len()),
            chi_mf,
            e.chi,
            Verdict::Mismatch,
        );
    }
    if let Ok(b) = boundary_chi(chi_mf, n - input.k) {
        rep.push(format!("chi(boundary M_F), dim M_F = {}", n - input.k), b, b, Verdict::Mismatch);
    }
    rep
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::{parse_many, parse_polynomial};
    use crate::polynomial::variables;

    fn xy(texts: &[&str]) -> Vec<Polynomial> {
        parse_many(texts, &variables(&["x", "y"])).unwrap()
    }

    #[test]
    fn khimshiashvili() {
        let f = &xy(&["x^2 + y^2"])[0];
        assert_eq!(khimshiashvili_chi(f, DeltaSign::Positive).unwrap(), 0);
        assert_eq!(khimshiashvili_chi(f, DeltaSign::Negative).unwrap(), 0);
        assert_eq!(khimshiashvili_chi(&xy(&["x^2 - y^2"])[0], DeltaSign::Positive).unwrap(), 2);
        let s2 = parse_polynomial("x^2 + y^2 + z^2", &variables(&["x", "y", "z"])).unwrap();
        assert_eq!(khimshiashvili_chi(&s2, DeltaSign::Positive).unwrap(), 2);
        assert_eq!(khimshiashvili_chi(&s2, DeltaSign::Negative).unwrap(), 0);
    }

    #[test]
    fn isolated_singularity() {
        assert_eq!(isolated_milnor_chi(&xy(&["x^2 - y^2", "2*x*y"])).unwrap(), 2);
        assert!(matches!(isolated_milnor_chi(&xy(&["x", "y"])), Err(Error::ConstantTerm { .. })));
    }

    #[test]
    fn fukui_aoki_mod2() {
        assert_eq!(fukui_d(&xy(&["y^2 - x^3"])[0], DeltaSign::Positive).unwrap(), 1);
        assert_eq!(fukui_d(&xy(&["x^2 + y^2"])[0], DeltaSign::Positive).unwrap(), 0);
        assert!(matches!(fukui_d(&xy(&["y"])[0], DeltaSign::Positive), Err(Error::ConstantTerm { .. })));

        assert_eq!(aoki_semibranches(&xy(&["x^2 - y^2"]), None).unwrap(), 4);
        assert_eq!(aoki_semibranches(&xy(&["x"]), None).unwrap(), 2);
        assert!(matches!(aoki_semibranches(&xy(&["x^2 + y^2"]), None), Err(Error::NonIsolatedZero { .. })));

        assert_eq!(euler_mod2(&xy(&["x", "y"])).unwrap(), 0);
        assert_eq!(euler_mod2(&xy(&["y^2 - x^3", "x"])).unwrap(), 1);
        assert_eq!(euler_mod2(&xy(&["x^2 + y^2", "y"])).unwrap(), 0);
    }

    #[test]
    fn tables() {
        let inv = |n, k, chi_mf| MilnorInvariants { n, k, chi_mf, milnor_ab_asserted: true };
        assert_eq!(link_table(&inv(6, 2, 2)).unwrap().links, [4, 0]);
        assert_eq!(link_table(&inv(5, 2, 2)).unwrap().links, [-2, 2]);
        assert_eq!(milnor_chi_from_link(4, 6).unwrap(), 2);
        assert_eq!(milnor_chi_from_link(-2, 5).unwrap(), 2);
        assert_eq!(milnor_chi_from_link(0, 4).unwrap(), 0);
        assert_eq!(milnor_chi_from_link(3, 4).unwrap_err(), Error::Parity { value: 3 });
        assert!(charl1_check(0, 4, 6, 1, 2));
        assert!(charl1_check(2, -2, 5, 1, 2));
        assert!(charl1_check(0, 0, 4, 1, 0));
        assert_eq!(boundary_chi(2, 3).unwrap(), 4);
        assert_eq!(boundary_chi(7, 2).unwrap(), 0);
        assert_eq!(boundary_chi(1, 1).unwrap(), 2);
        let i = inv(5, 3, 2);
        assert_eq!(semianalytic_chi(&i, 1, &[Inequality::Ge]).unwrap(), 2);
        assert_eq!(semianalytic_chi(&i, 1, &[Inequality::Le, Inequality::Ge]).unwrap(), 2);
        assert!(semianalytic_chi(&i, 2, &[Inequality::Le, Inequality::Ge]).is_err());
        let off = MilnorInvariants { milnor_ab_asserted: false, ..i };
        assert_eq!(link_table(&off).unwrap_err(), Error::HypothesisNotAsserted);
    }
}
