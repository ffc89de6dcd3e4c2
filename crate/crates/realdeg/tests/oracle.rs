//! The engine against the geometric oracles.

mod support;

use std::time::Instant;

use realdeg::oracle::{pl_sphere_degree, winding_degree, OracleConfig};
use realdeg_core::local_degree;
use realdeg_core::rational::frac;
use support::{plane_germ, space_germ, PLANE, SPACE};

#[test]
fn plane_corpus() {
    let cfg = OracleConfig::default();
    assert!(PLANE.len() >= 20);
    for &(a, b, expected) in PLANE {
        let h = plane_germ(a, b);
        assert_eq!(local_degree(&h).unwrap(), expected, "engine on ({}, {})", a, b);
        assert_eq!(winding_degree(&h, &cfg).unwrap(), expected, "oracle on ({}, {})", a, b);
    }
}

#[test]
fn space_corpus() {
    let t = Instant::now();
    let cfg = OracleConfig::default();
    assert!(SPACE.len() >= 5);
    for &(a, b, c, expected) in SPACE {
        let h = space_germ(a, b, c);
        assert_eq!(local_degree(&h).unwrap(), expected, "engine on ({}, {}, {})", a, b, c);
        assert_eq!(pl_sphere_degree(&h, &cfg).unwrap(), expected, "oracle on ({}, {}, {})", a, b, c);
    }
    assert!(t.elapsed().as_secs_f64() < 60.0);
}

#[test]
fn cubic_cone_gradient_and_its_second_zero() {
    // H vanishes again at (0, 2 - √5, (3 - √5)/2), at distance 0.449 from 0.
    // Spheres inside that radius see deg_0 H = -1; the sphere of radius 1/2
    // encloses both zeros and sees the sum -1 + 1.
    let h = space_germ("2*x*z - x^3", "3*y^2 + 2*y*z - y^3", "x^2 + y^2 - z^3");
    let at = |r| pl_sphere_degree(&h, &OracleConfig { radius: r, ..OracleConfig::default() }).unwrap();
    assert_eq!(at(frac(1, 4)), -1);
    assert_eq!(at(frac(2, 5)), -1);
    assert_eq!(at(frac(1, 2)), 0);
    let s5 = 5f64.sqrt();
    let (y, z) = (2.0 - s5, (3.0 - s5) / 2.0);
    assert!((3.0 * y * y + 2.0 * y * z - y * y * y).abs() < 1e-12);
    assert!((y * y - z * z * z).abs() < 1e-12);
    assert!((y * y + z * z).sqrt() < 0.45);
}

#[test]
fn radius_does_not_matter_for_quasi_homogeneous_germs() {
    let plane = [("x^2 - y^2", "2*x*y"), ("x^3 - 3*x*y^2", "3*x^2*y - y^3"), ("2*x", "-2*y"), ("x^3", "y")];
    let space = [("x^2 - y^2", "2*x*y", "z"), ("x", "y", "-z^3")];
    for r in [frac(1, 2), frac(1, 4), frac(1, 8)] {
        let cfg = OracleConfig { radius: r.clone(), depth: 4, ..OracleConfig::default() };
        for (a, b) in plane {
            let h = plane_germ(a, b);
            assert_eq!(winding_degree(&h, &cfg).unwrap(), local_degree(&h).unwrap(), "r = {}", r);
        }
        for (a, b, c) in space {
            let h = space_germ(a, b, c);
            assert_eq!(pl_sphere_degree(&h, &cfg).unwrap(), local_degree(&h).unwrap(), "r = {}", r);
        }
    }
}
