//! Standard bases under global and local degree orders.
//!
//! Global bases are computed with Buchberger's algorithm. Local bases use the
//! same pair loop with Mora's weak normal form: among the reducers whose
//! leading monomial divides the current one, the one of minimal écart is
//! taken, and the current polynomial is kept as an extra reducer whenever
//! the chosen one has larger écart. Intermediate polynomials are kept
//! primitive over the integers.

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt::Write as _;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Num, One, Signed, Zero};

use crate::error::{Error, Result};
use crate::monomial::{Monomial, TermOrder};
use crate::polynomial::{Polynomial, Variables};
use crate::rational::Rational;

/// Terms sorted ascending in a term order; the leading term is last.
#[derive(Clone, Debug)]
pub(crate) struct OrdPoly<C> {
    pub(crate) terms: Vec<(Monomial, C)>,
}

impl<C: Num + Clone> OrdPoly<C> {
    pub(crate) fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub(crate) fn lead(&self) -> &(Monomial, C) {
        self.terms.last().expect("leading term of zero polynomial")
    }

    pub(crate) fn max_degree(&self) -> u32 {
        self.terms.iter().map(|(m, _)| m.degree()).max().unwrap_or(0)
    }

    pub(crate) fn ecart(&self) -> u32 {
        self.max_degree() - self.lead().0.degree()
    }
}

/// `ca * a - cb * m * b`, with the leading terms of `a` and `b` assumed to
/// cancel and therefore skipped. Terms of degree `>= trunc` are dropped.
fn cancel_leads<C: Num + Clone>(
    a: &[(Monomial, C)],
    ca: &C,
    b: &[(Monomial, C)],
    m: &Monomial,
    cb: &C,
    order: TermOrder,
    trunc: Option<u32>,
) -> Vec<(Monomial, C)> {
    let a = &a[..a.len() - 1];
    let b = &b[..b.len() - 1];
    let keep = |mono: &Monomial| trunc.is_none_or(|t| mono.degree() < t);
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    let mut bm: Option<Monomial> = b.first().map(|t| t.0.mul(m));
    while i < a.len() || j < b.len() {
        let take = match (a.get(i), &bm) {
            (Some(ta), Some(mb)) => order.cmp(&ta.0, mb),
            (Some(_), None) => Ordering::Less,
            (None, Some(_)) => Ordering::Greater,
            (None, None) => unreachable!(),
        };
        match take {
            Ordering::Less => {
                if keep(&a[i].0) {
                    out.push((a[i].0.clone(), ca.clone() * a[i].1.clone()));
                }
                i += 1;
            }
            Ordering::Greater => {
                let mb = bm.take().unwrap();
                if keep(&mb) {
                    out.push((mb, C::zero() - cb.clone() * b[j].1.clone()));
                }
                j += 1;
                bm = b.get(j).map(|t| t.0.mul(m));
            }
            Ordering::Equal => {
                let mb = bm.take().unwrap();
                let c = ca.clone() * a[i].1.clone() - cb.clone() * b[j].1.clone();
                if !c.is_zero() && keep(&mb) {
                    out.push((mb, c));
                }
                i += 1;
                j += 1;
                bm = b.get(j).map(|t| t.0.mul(m));
            }
        }
    }
    out
}

pub(crate) type IntPoly = OrdPoly<BigInt>;
pub(crate) type RatPoly = OrdPoly<Rational>;

impl IntPoly {
    /// Primitive integer multiple of `p` with positive leading coefficient.
    fn from_polynomial(p: &Polynomial, order: TermOrder) -> IntPoly {
        let den = p.terms().fold(BigInt::one(), |acc, (_, c)| acc.lcm(c.denom()));
        let mut terms: Vec<(Monomial, BigInt)> =
            p.terms().map(|(m, c)| (m.clone(), (c * Rational::from_integer(den.clone())).to_integer())).collect();
        terms.sort_by(|x, y| order.cmp(&x.0, &y.0));
        let mut q = OrdPoly { terms };
        q.normalize();
        q
    }

    fn normalize(&mut self) {
        if self.terms.is_empty() {
            return;
        }
        let mut g = BigInt::zero();
        for (_, c) in &self.terms {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        if self.lead().1.is_negative() {
            g = -g;
        }
        if !g.is_one() {
            for (_, c) in self.terms.iter_mut() {
                *c = &*c / &g;
            }
        }
    }

    /// S-polynomial style reduction of `self` by `g`, whose leading monomial
    /// divides the leading monomial of `self`.
    fn reduce_by(&self, g: &IntPoly, order: TermOrder, trunc: Option<u32>) -> IntPoly {
        let (lm, lc) = self.lead();
        let (gm, gc) = g.lead();
        let m = lm.div(gm).expect("reducer must divide leading monomial");
        let d = lc.gcd(gc);
        let mut r = OrdPoly { terms: cancel_leads(&self.terms, &(gc / &d), &g.terms, &m, &(lc / &d), order, trunc) };
        r.normalize();
        r
    }

    fn to_polynomial(&self, vars: &Variables) -> Polynomial {
        Polynomial::from_terms(vars, self.terms.iter().map(|(m, c)| (m.clone(), Rational::from_integer(c.clone()))))
    }
}

impl RatPoly {
    pub(crate) fn from_polynomial(p: &Polynomial, order: TermOrder, trunc: Option<u32>) -> RatPoly {
        let mut terms: Vec<(Monomial, Rational)> = p
            .terms()
            .filter(|(m, _)| trunc.is_none_or(|t| m.degree() < t))
            .map(|(m, c)| (m.clone(), c.clone()))
            .collect();
        terms.sort_by(|x, y| order.cmp(&x.0, &y.0));
        OrdPoly { terms }
    }

    fn from_int_monic(p: &IntPoly) -> RatPoly {
        let lc = p.lead().1.clone();
        OrdPoly { terms: p.terms.iter().map(|(m, c)| (m.clone(), Rational::new(c.clone(), lc.clone()))).collect() }
    }
}

/// Pair-selection rule of the completion loop.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum PairStrategy {
    /// Smallest lcm degree first, first-in-first-out among ties.
    #[default]
    Normal,
    /// Plain first-in-first-out.
    Fifo,
}

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    seq: usize,
}

struct Reducer {
    poly: IntPoly,
    ecart: u32,
}

/// Mora's weak normal form (for a global degree order every écart is zero
/// and this is ordinary top-reduction).
///
/// With `trunc = Some(D)` all monomials of degree `>= D` are known to lie in
/// the ideal; they are dropped and reduction is plain top-reduction, which
/// terminates because only finitely many monomials remain.
fn weak_normal_form(mut h: IntPoly, basis: &[Reducer], order: TermOrder, trunc: Option<u32>) -> IntPoly {
    if let Some(t) = trunc {
        h.terms.retain(|(m, _)| m.degree() < t);
        h.normalize();
    }
    let use_extra = order.is_local() && trunc.is_none();
    let mut extra: Vec<Reducer> = Vec::new();
    while !h.is_zero() {
        let lm = h.lead().0.clone();
        let mut best: Option<(bool, usize, u32)> = None;
        for (k, g) in basis.iter().enumerate() {
            if g.poly.lead().0.divides(&lm) && best.is_none_or(|b| g.ecart < b.2) {
                best = Some((false, k, g.ecart));
            }
        }
        if use_extra {
            for (k, g) in extra.iter().enumerate() {
                if g.poly.lead().0.divides(&lm) && best.is_none_or(|b| g.ecart < b.2) {
                    best = Some((true, k, g.ecart));
                }
            }
        }
        let Some((is_extra, k, e)) = best else { break };
        if use_extra {
            let he = h.ecart();
            if e > he {
                extra.push(Reducer { poly: h.clone(), ecart: he });
            }
        }
        let g = if is_extra { &extra[k].poly } else { &basis[k].poly };
        h = h.reduce_by(g, order, trunc);
    }
    h
}

/// A standard basis of an ideal, reduced and monic.
#[derive(Clone, Debug)]
pub struct StandardBasis {
    vars: Variables,
    order: TermOrder,
    generators: Vec<Polynomial>,
    leading: Vec<Monomial>,
    sorted: Vec<RatPoly>,
    /// Degree from which all monomials were found to lie in the ideal during
    /// the computation (local orders only).
    cap: Option<u32>,
    /// For a local order with finite quotient: every monomial of at least this
    /// degree lies in the ideal.
    corner: Option<u32>,
}

/// Standard basis of the ideal generated by `gens` with the normal pair
/// strategy.
pub fn compute_standard_basis(gens: &[Polynomial], order: TermOrder) -> Result<StandardBasis> {
    compute_standard_basis_with(gens, order, PairStrategy::Normal)
}

pub fn compute_standard_basis_with(
    gens: &[Polynomial],
    order: TermOrder,
    strategy: PairStrategy,
) -> Result<StandardBasis> {
    let vars = match gens.first() {
        Some(g) => g.vars().clone(),
        None => return Err(Error::InvalidArgument(String::from("no generators"))),
    };
    if gens.iter().any(|g| *g.vars() != vars) {
        return Err(Error::VariableMismatch);
    }
    let gens: Vec<IntPoly> = gens.iter().filter(|g| !g.is_zero()).map(|g| IntPoly::from_polynomial(g, order)).collect();

    // Local orders: probe I + m^(d+1) for growing d. Everything is truncated
    // there, so each probe terminates quickly; once no standard monomial of
    // degree d is left, m^d ⊆ I + m^(d+1), hence m^d ⊆ I by Nakayama and the
    // probe is a standard basis of I itself.
    if order.is_local() {
        let mut d = gens.iter().map(|g| g.lead().0.degree()).max().unwrap_or(0).max(2) + 1;
        while d <= MAX_PROBE_DEGREE {
            let (polys, cap) = complete(&gens, order, strategy, Some(d + 1));
            if cap.is_some_and(|c| c <= d) {
                return Ok(finish(vars, order, polys, cap));
            }
            d += d / 2 + 1;
        }
    }
    let (polys, cap) = complete(&gens, order, strategy, None);
    Ok(finish(vars, order, polys, cap))
}

/// Past this truncation degree the probe gives up and plain Mora completion
/// (which also detects infinite quotients) takes over.
const MAX_PROBE_DEGREE: u32 = 60;

/// Completion loop. With `cap = Some(D)`, computes modulo `m^D`.
fn complete(
    gens: &[IntPoly],
    order: TermOrder,
    strategy: PairStrategy,
    mut cap: Option<u32>,
) -> (Vec<IntPoly>, Option<u32>) {
    let mut basis: Vec<Reducer> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();
    let mut pending: BTreeSet<(usize, usize)> = BTreeSet::new();
    let mut seq = 0usize;

    let mut insert =
        |h: IntPoly, basis: &mut Vec<Reducer>, pairs: &mut Vec<Pair>, pending: &mut BTreeSet<(usize, usize)>| {
            let j = basis.len();
            let lj = h.lead().0.clone();
            for (i, g) in basis.iter().enumerate() {
                let li = &g.poly.lead().0;
                if li.is_coprime(&lj) {
                    continue;
                }
                pairs.push(Pair { i, j, lcm: li.lcm(&lj), seq });
                pending.insert((i, j));
                seq += 1;
            }
            let ecart = h.ecart();
            basis.push(Reducer { poly: h, ecart });
        };

    for g in gens {
        let h = weak_normal_form(g.clone(), &basis, order, cap);
        if !h.is_zero() {
            insert(h, &mut basis, &mut pairs, &mut pending);
            update_cap(&mut cap, &mut basis, order);
        }
    }

    while !pairs.is_empty() {
        let pos = match strategy {
            PairStrategy::Normal => (0..pairs.len()).min_by_key(|&k| (pairs[k].lcm.degree(), pairs[k].seq)).unwrap(),
            PairStrategy::Fifo => (0..pairs.len()).min_by_key(|&k| pairs[k].seq).unwrap(),
        };
        let pair = pairs.swap_remove(pos);
        pending.remove(&(pair.i, pair.j));

        // Chain criterion: some k with LM_k | lcm whose pairs with i and j are done.
        let key = |a: usize, b: usize| if a < b { (a, b) } else { (b, a) };
        let redundant = (0..basis.len()).any(|k| {
            k != pair.i
                && k != pair.j
                && basis[k].poly.lead().0.divides(&pair.lcm)
                && !pending.contains(&key(pair.i, k))
                && !pending.contains(&key(pair.j, k))
        });
        if redundant {
            continue;
        }

        let s = spoly(&basis[pair.i].poly, &basis[pair.j].poly, &pair.lcm, order);
        let h = weak_normal_form(s, &basis, order, cap);
        if !h.is_zero() {
            insert(h, &mut basis, &mut pairs, &mut pending);
            update_cap(&mut cap, &mut basis, order);
        }
    }

    (basis.into_iter().map(|r| r.poly).collect(), cap)
}

/// Monomials outside the ideal generated by `leads` and of degree below
/// `cap`, or `None` if there are infinitely many. Found by walking the order
/// ideal from `1`, raising one variable at a time in non-decreasing index.
fn standard_set(leads: &[&Monomial], nvars: usize, cap: Option<u32>) -> Option<Vec<Monomial>> {
    if cap.is_none() && !leads.iter().any(|l| l.is_one()) {
        for i in 0..nvars {
            if !leads.iter().any(|l| l.as_pure_power().is_some_and(|(j, _)| j == i)) {
                return None;
            }
        }
    }
    let mut out = Vec::new();
    let mut stack = alloc::vec![(Monomial::one(nvars), 0usize)];
    while let Some((m, first)) = stack.pop() {
        if cap.is_some_and(|c| m.degree() >= c) || leads.iter().any(|l| l.divides(&m)) {
            continue;
        }
        for i in first..nvars {
            let mut next = m.clone();
            next.exps_mut()[i] += 1;
            stack.push((next, i));
        }
        out.push(m);
    }
    Some(out)
}

/// Degree `D` such that every monomial of degree `>= D` lies in the monomial
/// ideal generated by `leads` (and in `m^cap`), if the quotient is finite.
fn monomial_cap(leads: &[&Monomial], nvars: usize, cap: Option<u32>) -> Option<u32> {
    let set = standard_set(leads, nvars, cap)?;
    Some(set.iter().map(|m| m.degree() + 1).max().unwrap_or(0))
}

/// In a local degree order, once the leading monomials found so far have a
/// finite-colength ideal, every monomial of degree `>= D` lies in the ideal
/// (its normal form only involves monomials of degree `>= D`, none of them
/// standard). From then on all polynomials are truncated below `D`.
fn update_cap(cap: &mut Option<u32>, basis: &mut [Reducer], order: TermOrder) {
    if !order.is_local() {
        return;
    }
    let nvars = basis[0].poly.lead().0.nvars();
    let leads: Vec<&Monomial> = basis.iter().map(|r| &r.poly.lead().0).collect();
    let Some(d) = monomial_cap(&leads, nvars, *cap) else { return };
    if cap.is_some_and(|c| c <= d) {
        return;
    }
    *cap = Some(d);
    for r in basis.iter_mut() {
        let n = r.poly.terms.len();
        let lead = r.poly.terms[n - 1].clone();
        r.poly.terms.truncate(n - 1);
        r.poly.terms.retain(|(m, _)| m.degree() < d);
        r.poly.terms.push(lead);
        r.poly.normalize();
        r.ecart = r.poly.ecart();
    }
}

fn spoly(f: &IntPoly, g: &IntPoly, lcm: &Monomial, order: TermOrder) -> IntPoly {
    let (fm, fc) = f.lead();
    let (gm, gc) = g.lead();
    let mf = lcm.div(fm).unwrap();
    let mg = lcm.div(gm).unwrap();
    let d = fc.gcd(gc);
    // (gc/d) * mf * f - (fc/d) * mg * g
    let f_shift = OrdPoly { terms: f.terms.iter().map(|(m, c)| (m.mul(&mf), c.clone())).collect::<Vec<_>>() };
    let mut r = OrdPoly { terms: cancel_leads(&f_shift.terms, &(gc / &d), &g.terms, &mg, &(fc / &d), order, None) };
    r.normalize();
    r
}

/// Minimize, make monic and tail-reduce.
fn finish(vars: Variables, order: TermOrder, polys: Vec<IntPoly>, cap: Option<u32>) -> StandardBasis {
    let mut keep: Vec<IntPoly> = Vec::new();
    for (k, p) in polys.iter().enumerate() {
        let lm = &p.lead().0;
        let dominated = polys.iter().enumerate().any(|(l, q)| {
            let lq = &q.lead().0;
            l != k && lq.divides(lm) && (lq != lm || l < k)
        });
        if !dominated {
            keep.push(p.clone());
        }
    }
    keep.sort_by(|a, b| order.cmp(&b.lead().0, &a.lead().0));

    let leading: Vec<Monomial> = keep.iter().map(|p| p.lead().0.clone()).collect();
    let mut sb = StandardBasis {
        vars: vars.clone(),
        order,
        generators: Vec::new(),
        leading,
        sorted: keep.iter().map(RatPoly::from_int_monic).collect(),
        cap,
        corner: None,
    };
    if order.is_local() {
        sb.corner = sb.standard_monomials().ok().map(|s| s.iter().map(Monomial::degree).max().unwrap_or(0) + 1);
    }
    let can_tail_reduce = !order.is_local() || sb.corner.is_some();
    if can_tail_reduce {
        let reduced: Vec<RatPoly> = (0..sb.sorted.len())
            .map(|k| {
                let g = &sb.sorted[k];
                let tail = OrdPoly { terms: g.terms[..g.terms.len() - 1].to_vec() };
                let mut r = sb.reduce_full(tail);
                r.terms.push(g.lead().clone());
                r
            })
            .collect();
        sb.sorted = reduced;
    }
    sb.generators = sb
        .sorted
        .iter()
        .map(|g| Polynomial::from_terms(&vars, g.terms.iter().map(|(m, c)| (m.clone(), c.clone()))))
        .collect();
    sb
}

impl StandardBasis {
    pub fn vars(&self) -> &Variables {
        &self.vars
    }

    pub fn order(&self) -> TermOrder {
        self.order
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn leading_monomials(&self) -> &[Monomial] {
        &self.leading
    }

    /// Not divisible by any leading monomial (and, for local orders, below
    /// the degree from which every monomial lies in the ideal).
    pub fn is_standard(&self, m: &Monomial) -> bool {
        self.cap.is_none_or(|c| m.degree() < c) && !self.leading.iter().any(|l| l.divides(m))
    }

    /// The ideal contains a unit (for local orders: a polynomial not vanishing
    /// at the origin).
    pub fn is_unit_ideal(&self) -> bool {
        self.leading.iter().any(Monomial::is_one)
    }

    /// For each variable, the least `e` such that `x_i^e` lies in the
    /// leading ideal; the first variable without one is reported as an error.
    pub fn pure_power_bounds(&self) -> Result<Vec<u32>> {
        let n = self.vars.len();
        let mut bounds = alloc::vec![self.cap; n];
        for l in &self.leading {
            if l.is_one() {
                return Ok(alloc::vec![0; n]);
            }
            if let Some((i, e)) = l.as_pure_power() {
                bounds[i] = Some(bounds[i].map_or(e, |b: u32| b.min(e)));
            }
        }
        bounds
            .into_iter()
            .enumerate()
            .map(|(i, b)| b.ok_or_else(|| Error::NotFinite { variable: self.vars[i].clone() }))
            .collect()
    }

    /// Standard monomials, descending in the term order (so `1` comes first).
    pub fn standard_monomials(&self) -> Result<Vec<Monomial>> {
        self.pure_power_bounds()?;
        let leads: Vec<&Monomial> = self.leading.iter().collect();
        let mut out = standard_set(&leads, self.vars.len(), self.cap).expect("finite by the bounds check");
        out.sort_by(|a, b| self.order.cmp(b, a));
        Ok(out)
    }

    /// Degree from which all monomials lie in the ideal (local orders with a
    /// finite quotient only).
    pub fn corner_degree(&self) -> Option<u32> {
        self.corner
    }

    /// Full reduction; requires termination (global order, or local order
    /// with a known corner).
    fn reduce_full(&self, mut h: RatPoly) -> RatPoly {
        let trunc = self.corner;
        if let Some(t) = trunc {
            h.terms.retain(|(m, _)| m.degree() < t);
        }
        let mut rest: Vec<(Monomial, Rational)> = Vec::new();
        while let Some((lm, lc)) = h.terms.last().cloned() {
            match self.sorted.iter().find(|g| g.lead().0.divides(&lm)) {
                None => {
                    rest.push((lm, lc));
                    h.terms.pop();
                }
                Some(g) => {
                    let m = lm.div(&g.lead().0).unwrap();
                    h = OrdPoly {
                        terms: cancel_leads(&h.terms, &Rational::one(), &g.terms, &m, &lc, self.order, trunc),
                    };
                }
            }
        }
        rest.reverse();
        OrdPoly { terms: rest }
    }

    /// Normal form of `p`: supported on standard monomials and congruent to
    /// `p` modulo the ideal.
    ///
    /// For a local order whose quotient is infinite-dimensional a complete
    /// reduction need not exist; the result is then Mora's weak normal form,
    /// which agrees with `p` only up to a unit factor.
    pub fn normal_form(&self, p: &Polynomial) -> Polynomial {
        assert!(p.same_vars_list(&self.vars), "polynomial over different variables");
        if self.order.is_local() && self.corner.is_none() {
            let basis: Vec<Reducer> = self
                .sorted
                .iter()
                .map(|g| {
                    let ip = IntPoly::from_polynomial(&rat_to_poly(g, &self.vars), self.order);
                    let ecart = ip.ecart();
                    Reducer { poly: ip, ecart }
                })
                .collect();
            let h = weak_normal_form(IntPoly::from_polynomial(p, self.order), &basis, self.order, None);
            return h.to_polynomial(&self.vars);
        }
        let r = self.reduce_full(RatPoly::from_polynomial(p, self.order, None));
        rat_to_poly(&r, &self.vars)
    }

    /// One generator per line in canonical printing.
    pub fn dump(&self) -> String {
        let mut s = String::new();
        for g in &self.generators {
            let _ = writeln!(s, "{}", g);
        }
        s
    }
}

fn rat_to_poly(p: &RatPoly, vars: &Variables) -> Polynomial {
    Polynomial::from_terms(vars, p.terms.iter().map(|(m, c)| (m.clone(), c.clone())))
}

/// Free function form of [`StandardBasis::normal_form`].
pub fn normal_form(p: &Polynomial, sb: &StandardBasis) -> Polynomial {
    sb.normal_form(p)
}

/// `dim R/I` (local or global according to the basis order); zero for the
/// unit ideal.
pub fn quotient_dimension(sb: &StandardBasis) -> Result<usize> {
    Ok(sb.standard_monomials()?.len())
}
