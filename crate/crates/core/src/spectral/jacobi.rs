use alloc::vec;
use alloc::vec::Vec;

use super::SymMatrix;
use crate::{Error, Result};

/// Sweep budget before giving up with [`Error::ConvergenceFailure`].
pub const MAX_SWEEPS: usize = 100;

/// Full spectrum of a symmetric matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct EigenResult {
    /// Ascending.
    pub values: Vec<f64>,
    /// `vectors[i]` is the unit eigenvector of `values[i]`; the set is orthonormal.
    pub vectors: Vec<Vec<f64>>,
    pub sweeps: usize,
}

impl EigenResult {
    /// `max_i ‖A v_i − λ_i v_i‖∞`.
    pub fn max_residual(&self, mat: &SymMatrix) -> f64 {
        self.values
            .iter()
            .zip(&self.vectors)
            .map(|(&lambda, v)| mat.mul_vec(v).iter().zip(v).map(|(av, x)| (av - lambda * x).abs()).fold(0.0, f64::max))
            .fold(0.0, f64::max)
    }

    /// `max_ij |v_i · v_j − δ_ij|`.
    pub fn max_orthogonality_error(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for (i, a) in self.vectors.iter().enumerate() {
            for (j, b) in self.vectors.iter().enumerate().skip(i) {
                let dot: f64 = a.iter().zip(b).map(|(x, y)| x * y).sum();
                let want = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((dot - want).abs());
            }
        }
        worst
    }
}

/// Cyclic Jacobi eigensolver.
///
/// Rotations visit the strict upper triangle in row-major order every sweep, so identical
/// input gives bitwise-identical output. Once past the fourth sweep an off-diagonal entry
/// that no longer changes either diagonal entry in floating point is set to zero; the
/// iteration stops when the whole off-diagonal part is zero.
pub fn eigen_symmetric(mat: &SymMatrix) -> Result<EigenResult> {
    let n = mat.order();
    let mut a = mat.as_slice().to_vec();
    let mut v = vec![0.0; n * n];
    for i in 0..n {
        v[i * n + i] = 1.0;
    }

    let mut sweeps = 0;
    loop {
        let off: f64 = (0..n).flat_map(|p| (p + 1..n).map(move |q| (p, q))).map(|(p, q)| a[p * n + q].abs()).sum();
        if off == 0.0 {
            break;
        }
        if sweeps == MAX_SWEEPS {
            return Err(Error::ConvergenceFailure { sweeps });
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                let app = a[p * n + p];
                let aqq = a[q * n + q];
                let g = 100.0 * apq.abs();
                if sweeps > 3 && app.abs() + g == app.abs() && aqq.abs() + g == aqq.abs() {
                    a[p * n + q] = 0.0;
                    a[q * n + p] = 0.0;
                    continue;
                }
                let h = aqq - app;
                let t = if h.abs() + g == h.abs() {
                    apq / h
                } else {
                    let theta = 0.5 * h / apq;
                    let t = 1.0 / (theta.abs() + libm::sqrt(1.0 + theta * theta));
                    if theta < 0.0 {
                        -t
                    } else {
                        t
                    }
                };
                let c = 1.0 / libm::sqrt(1.0 + t * t);
                let s = t * c;
                for r in 0..n {
                    if r == p || r == q {
                        continue;
                    }
                    let arp = a[r * n + p];
                    let arq = a[r * n + q];
                    let new_rp = c * arp - s * arq;
                    let new_rq = s * arp + c * arq;
                    a[r * n + p] = new_rp;
                    a[p * n + r] = new_rp;
                    a[r * n + q] = new_rq;
                    a[q * n + r] = new_rq;
                }
                a[p * n + p] = app - t * apq;
                a[q * n + q] = aqq + t * apq;
                a[p * n + q] = 0.0;
                a[q * n + p] = 0.0;
                for r in 0..n {
                    let vrp = v[r * n + p];
                    let vrq = v[r * n + q];
                    v[r * n + p] = c * vrp - s * vrq;
                    v[r * n + q] = s * vrp + c * vrq;
                }
            }
        }
        sweeps += 1;
    }

    let mut idx: Vec<usize> = (0..n).collect();
    idx.sort_by(|&i, &j| a[i * n + i].total_cmp(&a[j * n + j]));
    let values = idx.iter().map(|&i| a[i * n + i]).collect();
    let vectors = idx.iter().map(|&j| (0..n).map(|r| v[r * n + j]).collect()).collect();
    Ok(EigenResult { values, vectors, sweeps })
}
