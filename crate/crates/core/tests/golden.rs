//! The three worked examples: Szafraniec data, degrees and link Euler
//! characteristics.

use std::time::Instant;

use realdeg_core::link::{link_euler, link_euler_odd, szafraniec_setup};
use realdeg_core::milnor::{boundary_chi, milnor_chi_from_link};
use realdeg_core::parse::parse_many;
use realdeg_core::{local_degree, parse_polynomial, variables, WeightedType};

fn strings(ps: &[realdeg_core::Polynomial]) -> Vec<String> {
    ps.iter().map(|p| p.to_string()).collect()
}

#[test]
fn cubic_in_three_variables() {
    let t = Instant::now();
    let v = variables(&["x", "y", "z"]);
    let p = parse_polynomial("z*x^2 + z*y^2 + y^3", &v).unwrap();
    let w = WeightedType::homogeneous(3, 3).unwrap();
    let data = szafraniec_setup(&p, &w).unwrap();
    assert_eq!(data.p, 2);
    let shown = parse_many(&["2*x*z - x^3", "3*y^2 + 2*y*z - y^3", "x^2 + y^2 - z^3"], &v).unwrap();
    assert_eq!(strings(data.h1.components()), strings(&shown));
    assert_eq!(local_degree(&data.h1).unwrap(), -1);
    let r = link_euler_odd(&p, &w).unwrap();
    assert_eq!(r.chi, 2);
    assert!(t.elapsed().as_secs_f64() < 5.0);
}

#[test]
fn real_part_in_six_variables() {
    let t = Instant::now();
    let v = variables(&["x1", "x2", "y1", "y2", "z1", "z2"]);
    let g = parse_polynomial("z1*(x1^2 - x2^2) - 2*z2*x1*x2 + y1^2 - y2^2", &v).unwrap();
    let w = WeightedType::new(vec![2, 2, 3, 3, 2, 2], 6).unwrap();
    let data = szafraniec_setup(&g, &w).unwrap();
    assert_eq!(data.p, 6);
    assert_eq!(data.a, [3, 3, 2, 2, 3, 3]);
    let omega = parse_polynomial("x1^6/6 + x2^6/6 + y1^4/4 + y2^4/4 + z1^6/6 + z2^6/6", &v);
    // `/` is only allowed between literals, so build ω from rational coefficients.
    assert!(omega.is_err());
    let omega = parse_polynomial("1/6*x1^6 + 1/6*x2^6 + 1/4*y1^4 + 1/4*y2^4 + 1/6*z1^6 + 1/6*z2^6", &v).unwrap();
    assert_eq!(data.omega, omega);
    let h1 = parse_many(
        &[
            "2*x1*z1 - 2*z2*x2 - x1^5",
            "-2*x2*z1 - 2*x1*z2 - x2^5",
            "2*y1 - y1^3",
            "-2*y2 - y2^3",
            "x1^2 - x2^2 - z1^5",
            "-2*x1*x2 - z2^5",
        ],
        &v,
    )
    .unwrap();
    let h2 = parse_many(
        &[
            "-2*x1*z1 + 2*z2*x2 - x1^5",
            "2*x2*z1 + 2*x1*z2 - x2^5",
            "-2*y1 - y1^3",
            "2*y2 - y2^3",
            "-x1^2 + x2^2 - z1^5",
            "2*x1*x2 - z2^5",
        ],
        &v,
    )
    .unwrap();
    assert_eq!(data.h1.components(), &h1[..]);
    assert_eq!(data.h2.components(), &h2[..]);
    let r = link_euler(&g, &w).unwrap();
    assert_eq!((r.deg1, r.deg2, r.sphere_chi, r.chi), (-1, -1, 0, 4));
    eprintln!("six-variable example: {:?}", t.elapsed());
    assert!(t.elapsed().as_secs_f64() < 120.0);
}

#[test]
fn pair_in_five_variables() {
    let t = Instant::now();
    let v = variables(&["x", "y", "z", "u", "v"]);
    let q = parse_polynomial("x*y + 2*u*v", &v).unwrap();
    let w = WeightedType::homogeneous(5, 2).unwrap();
    let r = link_euler(&q, &w).unwrap();
    // The printed values are deg = 1 and chi(L_Q) = -2. In R^5 the germ H_1
    // splits as (y - x^3, x - y^3) x (-z^3) x (2v - u^3, 2u - v^3), of degree
    // (-1)(-1)(-1) = -1, and L_Q is the suspension of a torus, so chi = 2.
    assert_eq!((r.deg1, r.deg2, r.sphere_chi, r.chi), (-1, -1, 2, 2));

    // Leaving out z (which Q does not involve) reproduces the printed degree.
    let v4 = variables(&["x", "y", "u", "v"]);
    let q4 = parse_polynomial("x*y + 2*u*v", &v4).unwrap();
    let r4 = link_euler(&q4, &WeightedType::homogeneous(4, 2).unwrap()).unwrap();
    assert_eq!((r4.deg1, r4.deg2), (1, 1));

    let chi_mf = milnor_chi_from_link(r.chi, 5).unwrap();
    assert_eq!(chi_mf, 0);
    assert_eq!(boundary_chi(chi_mf, 5 - 2).unwrap(), 0);
    // The relations themselves give the printed chain from chi(L_Q) = -2.
    assert_eq!(milnor_chi_from_link(-2, 5).unwrap(), 2);
    assert_eq!(boundary_chi(2, 3).unwrap(), 4);

    let p = parse_polynomial("y^4 - z^2*x^2 - x^4 + u^2 - v^2", &v).unwrap();
    let rp = link_euler(&p, &WeightedType::new(vec![1, 1, 1, 2, 2], 4).unwrap()).unwrap();
    assert_eq!(rp.chi, 2);
    eprintln!("five-variable example: {:?}", t.elapsed());
    assert!(t.elapsed().as_secs_f64() < 120.0);
}
