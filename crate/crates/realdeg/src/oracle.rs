//! Geometric degree oracles for germs in two and three variables.
//!
//! Both work on a rational approximation of the sphere of radius `ε` and use
//! exact arithmetic for every sign: the winding number of the image polygon
//! for `n = 2`, and for `n = 3` the signed count of image triangles whose
//! cone contains a fixed generic direction. A result is accepted once two
//! successive refinements agree.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use realdeg_core::degree::MapGerm;
use realdeg_core::rational::frac;
use realdeg_core::Rational;

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("the oracle handles {expected} variables, the germ has {found}")]
    Dimension { expected: usize, found: usize },
    #[error("the germ vanishes at a mesh vertex")]
    ZeroOnMesh,
    #[error("degree not stable after {refinements} refinements (last values {values:?})")]
    Unstable { refinements: u32, values: Vec<i64> },
    #[error("no generic target direction found")]
    DegenerateTarget,
}

impl OracleError {
    pub fn code(&self) -> &'static str {
        match self {
            OracleError::Dimension { .. } => "DIMENSION_MISMATCH",
            OracleError::ZeroOnMesh => "ZERO_ON_MESH",
            OracleError::Unstable { .. } => "UNSTABLE",
            OracleError::DegenerateTarget => "DEGENERATE_TARGET",
        }
    }
}

pub type OracleResult<T> = Result<T, OracleError>;

#[derive(Clone, Debug)]
pub struct OracleConfig {
    /// Radius `ε` of the sphere.
    pub radius: Rational,
    /// Initial number of points on the circle (`n = 2`).
    pub samples: usize,
    /// Initial icosahedral subdivision depth (`n = 3`).
    pub depth: u32,
    /// Refinements tried before giving up.
    pub max_refinements: u32,
    /// Seed for the target direction (`n = 3`).
    pub seed: u64,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig { radius: frac(1, 4), samples: 1024, depth: 5, max_refinements: 4, seed: 0x5eed }
    }
}

const GRID: i64 = 1 << 30;

fn grid(v: f64) -> BigInt {
    BigInt::from((v * GRID as f64).round() as i64)
}

fn check_arity(h: &MapGerm, n: usize) -> OracleResult<()> {
    if h.nvars() != n || h.components().len() != n {
        return Err(OracleError::Dimension { expected: n, found: h.nvars() });
    }
    Ok(())
}

/// The germ with all coefficients scaled to integers by one common positive
/// factor, evaluated at points `a / D` after clearing `D` as well. Positive
/// scalings leave every sign and direction unchanged.
struct IntGerm {
    comps: Vec<Vec<(Vec<u32>, BigInt)>>,
    max_degree: u32,
}

impl IntGerm {
    fn new(h: &MapGerm) -> Self {
        let den = h
            .components()
            .iter()
            .flat_map(|f| f.terms().map(|(_, c)| c.denom().clone()))
            .fold(BigInt::from(1), |acc, d| acc.lcm(&d));
        let comps: Vec<Vec<(Vec<u32>, BigInt)>> = h
            .components()
            .iter()
            .map(|f| f.terms().map(|(m, c)| (m.exps().to_vec(), c.numer() * (&den / c.denom()))).collect())
            .collect();
        let max_degree = h.components().iter().filter_map(|f| f.total_degree()).max().unwrap_or(0);
        IntGerm { comps, max_degree }
    }

    /// `D^max_degree · den · H(nums / D)`.
    fn image(&self, nums: &[BigInt], d: &BigInt) -> OracleResult<Vec<BigInt>> {
        let top = self.max_degree as usize;
        let powers = |b: &BigInt| {
            let mut v = Vec::with_capacity(top + 1);
            v.push(BigInt::from(1));
            for k in 0..top {
                let next = &v[k] * b;
                v.push(next);
            }
            v
        };
        let xp: Vec<Vec<BigInt>> = nums.iter().map(powers).collect();
        let dp = powers(d);
        let vals: Vec<BigInt> = self
            .comps
            .iter()
            .map(|terms| {
                terms.iter().fold(BigInt::zero(), |acc, (e, c)| {
                    let deg: u32 = e.iter().sum();
                    let mut t = c * &dp[(self.max_degree - deg) as usize];
                    for (i, &k) in e.iter().enumerate() {
                        if k > 0 {
                            t *= &xp[i][k as usize];
                        }
                    }
                    acc + t
                })
            })
            .collect();
        if vals.iter().all(Zero::is_zero) {
            return Err(OracleError::ZeroOnMesh);
        }
        Ok(vals)
    }
}

/// Point of the circle of radius `r` at angle `θ` as numerators over a common
/// denominator. It lies exactly on the circle: with `t = k/G ≈ tan(θ/2)`,
/// `(x, y) = r ((G² - k²), 2kG) / (G² + k²)`.
fn circle_point(r: &Rational, theta: f64) -> (Vec<BigInt>, BigInt) {
    let k = grid((theta / 2.0).tan());
    let g = BigInt::from(GRID);
    let (p, q) = (r.numer(), r.denom());
    let nums = vec![p * (&g * &g - &k * &k), p * BigInt::from(2) * &k * &g];
    (nums, q * (&g * &g + &k * &k))
}

fn winding_once(h: &IntGerm, radius: &Rational, samples: usize) -> OracleResult<Option<i64>> {
    // Offset by half a step so that θ = π (t = ∞) is never sampled.
    let pts: Vec<Vec<BigInt>> = (0..samples)
        .map(|k| {
            let theta = std::f64::consts::TAU * (k as f64 + 0.5) / samples as f64;
            let (nums, d) = circle_point(radius, theta);
            h.image(&nums, &d)
        })
        .collect::<OracleResult<_>>()?;
    let mut w = 0i64;
    for k in 0..samples {
        let a = &pts[k];
        let b = &pts[(k + 1) % samples];
        let cross = &a[0] * &b[1] - &a[1] * &b[0];
        let up = !a[1].is_positive() && b[1].is_positive();
        let down = a[1].is_positive() && !b[1].is_positive();
        if (up || down) && cross.is_zero() {
            // The chord passes through the origin; this resolution says nothing.
            return Ok(None);
        }
        if up && cross.is_positive() {
            w += 1;
        } else if down && cross.is_negative() {
            w -= 1;
        }
    }
    Ok(Some(w))
}

/// Degree of `H/|H|` on the circle of radius `cfg.radius`.
pub fn winding_degree(h: &MapGerm, cfg: &OracleConfig) -> OracleResult<i64> {
    check_arity(h, 2)?;
    let h = &IntGerm::new(h);
    let mut samples = cfg.samples;
    let mut values = Vec::new();
    for _ in 0..=cfg.max_refinements + 1 {
        let v = winding_once(h, &cfg.radius, samples)?;
        if let (Some(v), Some(Some(prev))) = (v, values.last()) {
            if v == *prev {
                return Ok(v);
            }
        }
        values.push(v);
        samples *= 2;
    }
    Err(OracleError::Unstable { refinements: cfg.max_refinements, values: values.into_iter().flatten().collect() })
}

/// Icosahedral triangulation of the unit sphere. Faces are counterclockwise
/// seen from outside; the vertices of each level are a prefix of the next.
#[derive(Clone, Debug)]
pub struct SphereMesh {
    pub vertices: Vec<[f64; 3]>,
    pub faces: Vec<[usize; 3]>,
}

impl SphereMesh {
    pub fn icosahedron() -> Self {
        let g = (1.0 + 5f64.sqrt()) / 2.0;
        let raw = [
            [-1.0, g, 0.0],
            [1.0, g, 0.0],
            [-1.0, -g, 0.0],
            [1.0, -g, 0.0],
            [0.0, -1.0, g],
            [0.0, 1.0, g],
            [0.0, -1.0, -g],
            [0.0, 1.0, -g],
            [g, 0.0, -1.0],
            [g, 0.0, 1.0],
            [-g, 0.0, -1.0],
            [-g, 0.0, 1.0],
        ];
        let faces = vec![
            [0, 11, 5],
            [0, 5, 1],
            [0, 1, 7],
            [0, 7, 10],
            [0, 10, 11],
            [1, 5, 9],
            [5, 11, 4],
            [11, 10, 2],
            [10, 7, 6],
            [7, 1, 8],
            [3, 9, 4],
            [3, 4, 2],
            [3, 2, 6],
            [3, 6, 8],
            [3, 8, 9],
            [4, 9, 5],
            [2, 4, 11],
            [6, 2, 10],
            [8, 6, 7],
            [9, 8, 1],
        ];
        SphereMesh { vertices: raw.iter().map(normalize).collect(), faces }
    }

    /// Splits every face into four.
    pub fn subdivide(&self) -> Self {
        let mut vertices = self.vertices.clone();
        let mut mid: HashMap<(usize, usize), usize> = HashMap::new();
        let mut midpoint = |a: usize, b: usize, vertices: &mut Vec<[f64; 3]>| {
            *mid.entry((a.min(b), a.max(b))).or_insert_with(|| {
                let (p, q) = (vertices[a], vertices[b]);
                vertices.push(normalize(&[p[0] + q[0], p[1] + q[1], p[2] + q[2]]));
                vertices.len() - 1
            })
        };
        let mut faces = Vec::with_capacity(self.faces.len() * 4);
        for &[a, b, c] in &self.faces {
            let ab = midpoint(a, b, &mut vertices);
            let bc = midpoint(b, c, &mut vertices);
            let ca = midpoint(c, a, &mut vertices);
            faces.extend([[a, ab, ca], [b, bc, ab], [c, ca, bc], [ab, bc, ca]]);
        }
        SphereMesh { vertices, faces }
    }

    pub fn at_depth(depth: u32) -> Self {
        (0..depth).fold(Self::icosahedron(), |m, _| m.subdivide())
    }
}

fn normalize(v: &[f64; 3]) -> [f64; 3] {
    let r = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
    [v[0] / r, v[1] / r, v[2] / r]
}

fn det3(a: &[BigInt], b: &[BigInt], c: &[BigInt]) -> BigInt {
    &a[0] * (&b[1] * &c[2] - &b[2] * &c[1]) - &a[1] * (&b[0] * &c[2] - &b[2] * &c[0])
        + &a[2] * (&b[0] * &c[1] - &b[1] * &c[0])
}

fn sign(x: &BigInt) -> i8 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

/// Signed count of faces whose image cone contains the ray through `t`,
/// or `None` if the ray meets the boundary of some cone.
fn pl_count(faces: &[[usize; 3]], images: &[Vec<BigInt>], t: &[BigInt]) -> Option<i64> {
    let mut deg = 0i64;
    for &[a, b, c] in faces {
        let (pa, pb, pc) = (&images[a], &images[b], &images[c]);
        let d = sign(&det3(pa, pb, pc));
        if d == 0 {
            continue;
        }
        let s = [sign(&det3(t, pb, pc)), sign(&det3(pa, t, pc)), sign(&det3(pa, pb, t))];
        if s.iter().all(|&x| x == d) {
            deg += i64::from(d);
        } else if s.iter().all(|&x| x == d || x == 0) {
            return None;
        }
    }
    Some(deg)
}

fn random_direction(rng: &mut ChaCha8Rng) -> Vec<BigInt> {
    loop {
        let v: [f64; 3] = [rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)];
        let r2 = v[0] * v[0] + v[1] * v[1] + v[2] * v[2];
        if r2 > 0.01 && r2 <= 1.0 {
            let u = normalize(&v);
            return u.iter().map(|x| grid(*x)).collect();
        }
    }
}

const TARGET_ATTEMPTS: usize = 16;

/// Degree of `H/|H|` on the sphere of radius `cfg.radius` in `R^3`.
pub fn pl_sphere_degree(h: &MapGerm, cfg: &OracleConfig) -> OracleResult<i64> {
    check_arity(h, 3)?;
    let h = &IntGerm::new(h);
    let scale = cfg.radius.numer();
    let den = cfg.radius.denom() * BigInt::from(GRID);
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut mesh = SphereMesh::at_depth(cfg.depth);
    let mut images: Vec<Vec<BigInt>> = Vec::new();
    let mut values = Vec::new();
    let mut target = random_direction(&mut rng);
    for _ in 0..=cfg.max_refinements + 1 {
        for v in &mesh.vertices[images.len()..] {
            let nums: Vec<BigInt> = v.iter().map(|x| scale * grid(*x)).collect();
            images.push(h.image(&nums, &den)?);
        }
        let mut count = pl_count(&mesh.faces, &images, &target);
        let mut attempts = 1;
        while count.is_none() {
            if attempts == TARGET_ATTEMPTS {
                return Err(OracleError::DegenerateTarget);
            }
            target = random_direction(&mut rng);
            count = pl_count(&mesh.faces, &images, &target);
            attempts += 1;
        }
        let v = count.expect("loop exits with a count");
        if values.last() == Some(&v) {
            return Ok(v);
        }
        values.push(v);
        mesh = mesh.subdivide();
    }
    Err(OracleError::Unstable { refinements: cfg.max_refinements, values })
}

/// Dispatches on the number of variables.
pub fn oracle_degree(h: &MapGerm, cfg: &OracleConfig) -> OracleResult<i64> {
    match h.nvars() {
        2 => winding_degree(h, cfg),
        3 => pl_sphere_degree(h, cfg),
        n => Err(OracleError::Dimension { expected: 3, found: n }),
    }
}
