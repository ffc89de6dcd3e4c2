//! Shared by the integration tests and the acceptance harness: the oracle
//! corpus and the randomised law checks.

#![allow(dead_code)]

use proptest::prelude::*;
use proptest::test_runner::{Config, TestCaseError, TestRunner};
use realdeg_core::degree::{
    degree_of_form, functional_value, germ_algebra, gram_form_on, gram_matrix, jacobian_determinant, support_size,
    Functional, MapGerm,
};
use realdeg_core::link::{link_euler, link_euler_odd};
use realdeg_core::milnor::{
    charl1_check, khimshiashvili_chi, link_table, milnor_chi_from_link, DeltaSign, MilnorInvariants,
};
use realdeg_core::parse::parse_many;
use realdeg_core::rational::{frac, sign};
use realdeg_core::weighted::{euler_defect, is_weighted_homogeneous};
use realdeg_core::{
    check_weighted_type, exact_signature, local_degree, variables, Monomial, Polynomial, Rational, TermOrder,
    Variables, WeightedType,
};

/// Germs in the plane. Expected degrees are hand-derived (complex powers,
/// reflections, products of one-variable germs); the oracle and the engine
/// must both reproduce them.
pub const PLANE: &[(&str, &str, i64)] = &[
    ("x", "y", 1),
    ("y", "x", -1),
    ("2*x", "-2*y", -1),
    ("3*x + 4*y", "-4*x + 3*y", 1),
    ("x^2 - y^2", "2*x*y", 2),
    ("x^2 - y^2", "-2*x*y", -2),
    ("x^3 - 3*x*y^2", "3*x^2*y - y^3", 3),
    ("x^4 - 6*x^2*y^2 + y^4 + x^5", "4*x^3*y - 4*x*y^3", 4),
    ("x^2", "y", 0),
    ("x^3", "y", 1),
    ("-x^3", "y", -1),
    ("x^3 + y^2", "y", 1),
    ("x^2 + y^2", "y", 0),
    ("x + y^2", "y - x^2", 1),
    ("-3*x^2", "2*y", 0),
    ("2*x", "2*y", 1),
    ("3*x^2*y - y^3", "x^3 - 3*x*y^2", -3),
    ("x^3 - y", "x + y^3", 1),
    ("x*y", "x^2 - y^2 + x^3", -2),
    ("x^5 + y", "y^3 - x", 1),
    ("x^2 - y^3", "x*y", 1),
    ("x^3 + x*y^2", "y^3 + x^2*y + x^4", 1),
];

/// Germs in space; the last two are the gradients of `g_1` and `g_2` for
/// `zx² + zy² + y³`.
pub const SPACE: &[(&str, &str, &str, i64)] = &[
    ("x", "y", "z", 1),
    ("x", "y", "-z", -1),
    ("x^2 - y^2", "2*x*y", "z", 2),
    ("x^2 - y^2", "2*x*y", "-z^3", -2),
    ("2*x", "2*y", "-2*z", -1),
    ("x^3 + y*z", "y + x^2", "z - x*y", 1),
    ("2*x*z - x^3", "3*y^2 + 2*y*z - y^3", "x^2 + y^2 - z^3", -1),
    ("-2*x*z - x^3", "-3*y^2 - 2*y*z - y^3", "-x^2 - y^2 - z^3", -1),
];

pub fn plane_germ(a: &str, b: &str) -> MapGerm {
    MapGerm::new(parse_many(&[a, b], &variables(&["x", "y"])).unwrap()).unwrap()
}

pub fn space_germ(a: &str, b: &str, c: &str) -> MapGerm {
    MapGerm::new(parse_many(&[a, b, c], &variables(&["x", "y", "z"])).unwrap()).unwrap()
}

fn vars(n: usize) -> Variables {
    let names: Vec<String> = (0..n).map(|i| format!("x{}", i + 1)).collect();
    variables(&names)
}

fn poly_from(v: &Variables, terms: &[(Vec<u32>, i64)]) -> Polynomial {
    Polynomial::from_terms(v, terms.iter().map(|(e, c)| (Monomial::new(e.clone()), frac(*c, 1))))
}

fn terms(n: usize, max_exp: u32, max_terms: usize) -> impl Strategy<Value = Vec<(Vec<u32>, i64)>> {
    prop::collection::vec((prop::collection::vec(0..=max_exp, n), -3i64..=3), 0..=max_terms)
}

fn nonzero() -> impl Strategy<Value = i64> {
    prop_oneof![Just(-2i64), Just(-1), Just(1), Just(3)]
}

/// A finite germ with a known degree: `H_i = c_i x_i^{k_i} + (higher
/// weighted order)`, composed with a unimodular change of coordinates.
/// Its degree is `det A · Π_i (sign c_i if k_i is odd, else 0)`.
#[derive(Clone, Debug)]
pub struct KnownGerm {
    pub h: MapGerm,
    pub expected: i64,
}

pub fn known_germ(n: usize, max_k: u32) -> impl Strategy<Value = KnownGerm> {
    let comps = prop::collection::vec((1..=max_k, nonzero(), terms(n, 3, 2)), n);
    let mixing = prop::collection::vec((0..n, 0..n, -2i64..=2), 0..=3);
    (comps, mixing, any::<bool>()).prop_map(move |(comps, mixing, flip)| {
        let v = vars(n);
        let ks: Vec<u32> = comps.iter().map(|c| c.0).collect();
        let l: u32 = ks.iter().product();
        let base: Vec<Polynomial> = comps
            .iter()
            .enumerate()
            .map(|(i, (k, c, extra))| {
                let higher: Vec<_> = extra
                    .iter()
                    .filter(|(e, _)| e.iter().zip(&ks).map(|(&ej, &kj)| ej * (l / kj)).sum::<u32>() > l)
                    .cloned()
                    .collect();
                &Polynomial::term(&v, Monomial::pure_power(n, i, *k), frac(*c, 1)) + &poly_from(&v, &higher)
            })
            .collect();
        let mut expected: i64 = comps.iter().map(|(k, c, _)| if k % 2 == 1 { c.signum() } else { 0 }).product();
        // A = (elementary row operations) · (optional reflection).
        let mut a: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
        if flip {
            a[0][0] = -1;
            expected = -expected;
        }
        for (i, j, c) in mixing {
            if i != j {
                let row = a[j].clone();
                for (x, y) in a[i].iter_mut().zip(row) {
                    *x += c * y;
                }
            }
        }
        let h = MapGerm::new(compose_linear(&base, &a)).unwrap();
        KnownGerm { h, expected }
    })
}

/// `H(A x)`.
pub fn compose_linear(h: &[Polynomial], a: &[Vec<i64>]) -> Vec<Polynomial> {
    let v = h[0].vars().clone();
    let images: Vec<Polynomial> = a
        .iter()
        .map(|row| {
            row.iter()
                .enumerate()
                .fold(Polynomial::zero(&v), |acc, (j, &c)| &acc + &Polynomial::var(&v, j).scale(&frac(c, 1)))
        })
        .collect();
    h.iter().map(|f| f.compose(&images).unwrap()).collect()
}

/// `A H`.
pub fn linear_after(h: &[Polynomial], a: &[Vec<i64>]) -> Vec<Polynomial> {
    let v = h[0].vars().clone();
    a.iter()
        .map(|row| row.iter().zip(h).fold(Polynomial::zero(&v), |acc, (&c, f)| &acc + &f.scale(&frac(c, 1))))
        .collect()
}

pub fn det(a: &[Vec<i64>]) -> i64 {
    let n = a.len();
    if n == 1 {
        return a[0][0];
    }
    (0..n)
        .map(|j| {
            let minor: Vec<Vec<i64>> = a[1..]
                .iter()
                .map(|r| r.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, &x)| x).collect())
                .collect();
            let s = if j % 2 == 0 { 1 } else { -1 };
            s * a[0][j] * det(&minor)
        })
        .sum()
}

fn matrix(n: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec(prop::collection::vec(-2i64..=2, n), n).prop_filter("singular", |a| det(a) != 0)
}

fn runner(cases: u32) -> TestRunner {
    TestRunner::new(Config { cases, failure_persistence: None, ..Config::default() })
}

fn finish(r: Result<(), proptest::test_runner::TestError<impl std::fmt::Debug>>) -> Result<(), String> {
    r.map_err(|e| e.to_string())
}

fn engine<T>(r: realdeg_core::Result<T>) -> Result<T, TestCaseError> {
    r.map_err(|e| TestCaseError::fail(e.to_string()))
}

/// Every functional positive on the Jacobian class gives the same
/// signature: the duals of its support monomials and random ones.
pub fn phi_invariance(cases: u32) -> Result<(), String> {
    let strat = ((2usize..=3).prop_flat_map(|n| known_germ(n, 3)), prop::collection::vec(-3i64..=3, 32));
    finish(runner(cases).run(&strat, |(g, seeds)| {
        let alg = engine(germ_algebra(&g.h, TermOrder::LocalNegDegRevLex))?;
        let s = support_size(&alg, &g.h);
        prop_assert!(s >= 1);
        for k in 0..s {
            let form = engine(gram_form_on(&alg, &g.h, Functional::Support(k)))?;
            prop_assert!(sign(&functional_value(&form)) > 0);
            prop_assert_eq!(engine(degree_of_form(&form))?, g.expected, "functional {} of {}", k, s);
        }
        let jac = alg.coordinates(&jacobian_determinant(&g.h));
        let mut phi: Vec<Rational> = (0..alg.dimension()).map(|k| frac(seeds[k % seeds.len()], 1)).collect();
        let at_j = phi.iter().zip(&jac).fold(frac(0, 1), |acc, (a, b)| acc + a * b);
        if sign(&at_j) == 0 {
            return Ok(());
        }
        if sign(&at_j) < 0 {
            phi.iter_mut().for_each(|c| *c = -c.clone());
        }
        let sig = engine(exact_signature(&gram_matrix(&alg, &phi)))?;
        prop_assert_eq!(sig.n_zero, 0);
        prop_assert_eq!(sig.signature(), g.expected, "random functional");
        Ok(())
    }))
}

/// `deg(H ∘ A) = deg(A ∘ H) = sign(det A) · deg H`.
pub fn orientation_law(cases: u32) -> Result<(), String> {
    let strat = (2usize..=3).prop_flat_map(|n| (known_germ(n, 2), matrix(n)));
    finish(runner(cases).run(&strat, |(g, a)| {
        let s = det(&a).signum();
        let source = MapGerm::new(compose_linear(g.h.components(), &a)).unwrap();
        let target = MapGerm::new(linear_after(g.h.components(), &a)).unwrap();
        prop_assert_eq!(engine(local_degree(&source))?, s * g.expected);
        prop_assert_eq!(engine(local_degree(&target))?, s * g.expected);
        Ok(())
    }))
}

/// `deg(H × G) = deg H · deg G` on disjoint variables.
pub fn split_multiplicativity(cases: u32) -> Result<(), String> {
    let strat = (1usize..=2, 1usize..=2).prop_flat_map(|(p, q)| (known_germ(p, 3), known_germ(q, 3)));
    finish(runner(cases).run(&strat, |(h, g)| {
        let (p, q) = (h.h.nvars(), g.h.nvars());
        let v = vars(p + q);
        let left: Vec<usize> = (0..p).collect();
        let right: Vec<usize> = (p..p + q).collect();
        let mut comps: Vec<Polynomial> = h.h.components().iter().map(|f| f.embed(&v, &left)).collect();
        comps.extend(g.h.components().iter().map(|f| f.embed(&v, &right)));
        let dh = engine(local_degree(&h.h))?;
        let dg = engine(local_degree(&g.h))?;
        prop_assert_eq!(engine(local_degree(&MapGerm::new(comps).unwrap()))?, dh * dg);
        prop_assert_eq!(dh * dg, h.expected * g.expected);
        Ok(())
    }))
}

/// `deg(c x^k + ...) = sign(c)` for odd `k` and `0` for even `k`.
pub fn univariate_law(cases: u32) -> Result<(), String> {
    let strat = (1u32..=9, nonzero(), prop::collection::vec((1u32..=6, -3i64..=3), 0..=3));
    finish(runner(cases).run(&strat, |(k, c, extra)| {
        let v = vars(1);
        let x = Polynomial::var(&v, 0);
        let pure = MapGerm::new(vec![x.pow(k)]).unwrap();
        prop_assert_eq!(engine(local_degree(&pure))?, i64::from(k % 2));
        let mut f = x.pow(k).scale(&frac(c, 1));
        for (e, a) in extra {
            f = &f + &x.pow(k + e).scale(&frac(a, 1));
        }
        let expected = if k % 2 == 1 { c.signum() } else { 0 };
        prop_assert_eq!(engine(local_degree(&MapGerm::new(vec![f]).unwrap()))?, expected);
        Ok(())
    }))
}

/// All monomials in `n` variables of weighted degree exactly `d`.
pub fn monomials_of_weighted_degree(weights: &[u32], d: u32) -> Vec<Vec<u32>> {
    fn go(weights: &[u32], d: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        match weights.split_first() {
            None => {
                if d == 0 {
                    out.push(prefix.clone());
                }
            }
            Some((&w, rest)) => {
                for e in 0..=d / w {
                    prefix.push(e);
                    go(rest, d - e * w, prefix, out);
                    prefix.pop();
                }
            }
        }
    }
    let mut out = Vec::new();
    go(weights, d, &mut Vec::new(), &mut out);
    out
}

/// A random nonzero weighted homogeneous polynomial, or `None` if the type
/// admits no monomials of degree at least two.
fn weighted_poly(weights: &[u32], d: u32, coeffs: &[i64]) -> Option<Polynomial> {
    let v = vars(weights.len());
    let monos: Vec<Vec<u32>> =
        monomials_of_weighted_degree(weights, d).into_iter().filter(|e| e.iter().sum::<u32>() >= 2).collect();
    if monos.is_empty() {
        return None;
    }
    let terms: Vec<(Vec<u32>, i64)> = monos.iter().zip(coeffs.iter().cycle()).map(|(e, &c)| (e.clone(), c)).collect();
    let p = poly_from(&v, &terms);
    if p.is_zero() {
        // Force one term so the polynomial is never zero.
        Some(poly_from(&v, &[(monos[0].clone(), 1)]))
    } else {
        Some(p)
    }
}

/// Term-wise weighted homogeneity, the Euler relation and the checker agree,
/// and a stray monomial breaks all three.
pub fn euler_relation(cases: u32) -> Result<(), String> {
    let strat = (
        prop::collection::vec(1u32..=3, 1..=4),
        2u32..=9,
        prop::collection::vec(-3i64..=3, 1..=12),
        prop::collection::vec(0u32..=3, 4),
    );
    finish(runner(cases).run(&strat, |(weights, d, coeffs, stray)| {
        let Some(p) = weighted_poly(&weights, d, &coeffs) else { return Ok(()) };
        let w = WeightedType::new(weights.clone(), d).unwrap();
        prop_assert!(engine(is_weighted_homogeneous(&p, &w))?);
        prop_assert!(engine(euler_defect(&p, &w))?.is_zero());
        prop_assert!(engine(check_weighted_type(&p, &w))?);
        let e: Vec<u32> = stray[..weights.len()].to_vec();
        if Monomial::new(e.clone()).weighted_degree(&weights) != u64::from(d) {
            let q = &p + &poly_from(p.vars(), &[(e, 1)]);
            prop_assert!(!engine(check_weighted_type(&q, &w))?);
            prop_assert!(!engine(euler_defect(&q, &w))?.is_zero());
        }
        Ok(())
    }))
}

/// `M_i M_j = M_j M_i` on the local algebra.
pub fn commuting_matrices(cases: u32) -> Result<(), String> {
    let strat = (2usize..=3).prop_flat_map(|n| known_germ(n, 3));
    finish(runner(cases).run(&strat, |g| {
        let alg = engine(germ_algebra(&g.h, TermOrder::LocalNegDegRevLex))?;
        let n = g.h.nvars();
        for i in 0..n {
            for j in 0..i {
                let (a, b) = (alg.multiplication_matrix(i), alg.multiplication_matrix(j));
                prop_assert_eq!(a.mul(b), b.mul(a));
            }
        }
        Ok(())
    }))
}

/// For odd weighted degree the two-degree and the one-degree link formulas
/// give the same answer.
pub fn odd_degree_agreement(cases: u32) -> Result<(), String> {
    let strat = (
        prop_oneof![
            Just((vec![1u32, 1], 3u32)),
            Just((vec![1, 1, 1], 3)),
            Just((vec![1, 2], 5)),
            Just((vec![1, 1], 5)),
            Just((vec![2, 1, 1], 3)),
            Just((vec![1, 1, 2], 5)),
        ],
        prop::collection::vec(-3i64..=3, 1..=10),
    );
    finish(runner(cases).run(&strat, |((weights, d), coeffs)| {
        let Some(f) = weighted_poly(&weights, d, &coeffs) else { return Ok(()) };
        let w = WeightedType::new(weights, d).unwrap();
        let two = engine(link_euler(&f, &w))?;
        let one = engine(link_euler_odd(&f, &w))?;
        prop_assert_eq!(two.deg1, two.deg2);
        prop_assert_eq!(two.chi, one.chi, "f = {}", f);
        Ok(())
    }))
}

/// `χ(L_J) - χ(L_I) = (-1)^{n-l} 2χ(M_F)` for `l = 1..k-1` along the table,
/// and the `l = 1` row inverts back to `χ(M_F)`.
pub fn charl1_identity(cases: u32) -> Result<(), String> {
    let strat = (3usize..=12).prop_flat_map(|n| (Just(n), 2usize..n, -40i64..=40));
    finish(runner(cases).run(&strat, |(n, k, chi_mf)| {
        let inv = MilnorInvariants { n, k, chi_mf, milnor_ab_asserted: true };
        let t = engine(link_table(&inv))?;
        for l in 1..k {
            prop_assert!(charl1_check(t.chi(l - 1), t.chi(l), n, l, chi_mf), "n = {}, l = {}", n, l);
        }
        prop_assert_eq!(engine(milnor_chi_from_link(t.chi(1), n))?, chi_mf);
        Ok(())
    }))
}

/// In even dimension the Khimshiashvili formula does not depend on the sign
/// of `δ`.
pub fn even_sign_independence(cases: u32) -> Result<(), String> {
    let strat = prop_oneof![Just(2usize), Just(4)]
        .prop_flat_map(|n| (Just(n), prop::collection::vec((2u32..=4, nonzero()), n), terms(n, 4, 3)));
    finish(runner(cases).run(&strat, |(n, leads, extra)| {
        let v = vars(n);
        let ks: Vec<u32> = leads.iter().map(|l| l.0).collect();
        let l: u32 = ks.iter().product();
        let mut f = Polynomial::zero(&v);
        for (i, (k, c)) in leads.iter().enumerate() {
            f = &f + &Polynomial::term(&v, Monomial::pure_power(n, i, *k), frac(*c, 1));
        }
        let higher: Vec<_> = extra
            .into_iter()
            .filter(|(e, _)| e.iter().zip(&ks).map(|(&ej, &kj)| ej * (l / kj)).sum::<u32>() > l)
            .collect();
        f = &f + &poly_from(&v, &higher);
        let plus = engine(khimshiashvili_chi(&f, DeltaSign::Positive))?;
        let minus = engine(khimshiashvili_chi(&f, DeltaSign::Negative))?;
        prop_assert_eq!(plus, minus, "f = {}", f);
        Ok(())
    }))
}

/// The property suite, in acceptance order.
pub type Property = fn(u32) -> Result<(), String>;

pub const PROPERTIES: &[(&str, Property)] = &[
    ("phi-invariance of the signature", phi_invariance),
    ("orientation law", orientation_law),
    ("multiplicativity on split variables", split_multiplicativity),
    ("univariate law", univariate_law),
    ("Euler relation", euler_relation),
    ("commuting multiplication matrices", commuting_matrices),
    ("odd-degree link formulas agree", odd_degree_agreement),
    ("CharL1 along the link table", charl1_identity),
    ("even-n sign independence", even_sign_independence),
];
