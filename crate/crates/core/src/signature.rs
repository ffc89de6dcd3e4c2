//! Inertia of symmetric rational matrices by congruence (Lagrange reduction).

use alloc::vec::Vec;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::rational::{sign, Rational};

/// Inertia `(n_plus, n_minus, n_zero)` of a quadratic form.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct SignatureResult {
    pub n_plus: usize,
    pub n_minus: usize,
    pub n_zero: usize,
}

impl SignatureResult {
    pub fn signature(&self) -> i64 {
        self.n_plus as i64 - self.n_minus as i64
    }

    pub fn rank(&self) -> usize {
        self.n_plus + self.n_minus
    }
}

/// Exact inertia of a symmetric matrix.
///
/// Diagonal pivots are eliminated by symmetric Gaussian steps. When every
/// remaining diagonal entry is zero but some off-diagonal entry `a_ij` is
/// not, the hyperbolic block on `{i, j}` is split off; it contributes one
/// positive and one negative direction.
pub fn exact_signature(m: &Matrix) -> Result<SignatureResult> {
    if !m.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    let n = m.rows();
    let mut a: Vec<Vec<Rational>> = (0..n).map(|i| m.row(i).to_vec()).collect();
    let mut alive: Vec<usize> = (0..n).collect();
    let mut out = SignatureResult::default();

    while !alive.is_empty() {
        if let Some(pos) = alive.iter().position(|&i| !a[i][i].is_zero()) {
            let p = alive.swap_remove(pos);
            let d = a[p][p].clone();
            if sign(&d) > 0 {
                out.n_plus += 1;
            } else {
                out.n_minus += 1;
            }
            let col: Vec<Rational> = alive.iter().map(|&i| &a[i][p] / &d).collect();
            for (ki, &i) in alive.iter().enumerate() {
                if col[ki].is_zero() {
                    continue;
                }
                for &j in &alive {
                    if a[p][j].is_zero() {
                        continue;
                    }
                    let delta = &col[ki] * &a[p][j];
                    a[i][j] -= delta;
                }
            }
            continue;
        }
        let pair = alive
            .iter()
            .enumerate()
            .find_map(|(ki, &i)| alive[ki + 1..].iter().find(|&&j| !a[i][j].is_zero()).map(|&j| (i, j)));
        let Some((p, q)) = pair else {
            out.n_zero += alive.len();
            break;
        };
        // Pivot block [[0, b], [b, 0]] has inverse [[0, 1/b], [1/b, 0]];
        // the Schur complement is A - (u_i v_j + v_i u_j) / b with u = A[.,p], v = A[.,q].
        let b = a[p][q].clone();
        out.n_plus += 1;
        out.n_minus += 1;
        alive.retain(|&i| i != p && i != q);
        let u: Vec<Rational> = alive.iter().map(|&i| a[i][p].clone()).collect();
        let v: Vec<Rational> = alive.iter().map(|&i| a[i][q].clone()).collect();
        for (ki, &i) in alive.iter().enumerate() {
            for (kj, &j) in alive.iter().enumerate() {
                let t = &u[ki] * &v[kj] + &v[ki] * &u[kj];
                if !t.is_zero() {
                    a[i][j] -= t / &b;
                }
            }
        }
    }
    Ok(out)
}
