//! Laplacian spectra of trees: dense eigensolving, Fiedler vectors and the FED verdict.

mod fiedler;
mod jacobi;

use alloc::vec;
use alloc::vec::Vec;

use crate::{Error, Result, Tree};

pub use fiedler::{
    check_fed, check_fed_with, classify_tree_type, degenerate_fed_heuristic, fiedler, fiedler_with, Characteristic,
    DegeneratePolicy, FedOptions, FedReason, FedVerdict, FiedlerReport, TiePolicy, TreeType,
};
pub use jacobi::{eigen_symmetric, EigenResult, MAX_SWEEPS};

/// Numerical thresholds shared by the spectral pipeline.
#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Tolerances {
    /// Entries with `|x| <= zero * max|x|` are zero; extrema within the same band are tied.
    pub zero: f64,
    /// Eigenvalues within `mult` of λ₂ belong to its cluster.
    pub mult: f64,
    /// Residual budget per matrix order: `‖Lv − λv‖∞ <= residual * n`.
    pub residual: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances { zero: 1e-8, mult: 1e-9, residual: 1e-11 }
    }
}

/// Dense symmetric matrix, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct SymMatrix {
    order: usize,
    data: Vec<f64>,
}

impl SymMatrix {
    /// Wraps row-major data; the matrix must be exactly symmetric.
    pub fn new(order: usize, data: Vec<f64>) -> Result<SymMatrix> {
        if data.len() != order * order {
            return Err(Error::BadParam("matrix data length is not order^2"));
        }
        for i in 0..order {
            for j in 0..i {
                if data[i * order + j] != data[j * order + i] {
                    return Err(Error::BadParam("matrix is not symmetric"));
                }
            }
        }
        Ok(SymMatrix { order, data })
    }

    pub fn identity(order: usize) -> SymMatrix {
        let mut data = vec![0.0; order * order];
        for i in 0..order {
            data[i * order + i] = 1.0;
        }
        SymMatrix { order, data }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Entry at 0-based `(i, j)`.
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.order + j]
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn mul_vec(&self, x: &[f64]) -> Vec<f64> {
        self.data.chunks_exact(self.order).map(|row| row.iter().zip(x).map(|(a, b)| a * b).sum()).collect()
    }
}

/// `L = D − A`.
pub fn laplacian(tree: &Tree) -> SymMatrix {
    let n = tree.order();
    let mut data = vec![0.0; n * n];
    for (u, list) in tree.adjacency0().iter().enumerate() {
        data[u * n + u] = list.len() as f64;
        for &w in list {
            data[u * n + w] = -1.0;
        }
    }
    SymMatrix { order: n, data }
}

/// λ₂ of the Laplacian.
pub fn algebraic_connectivity(tree: &Tree) -> Result<f64> {
    if tree.order() < 2 {
        return Err(Error::TooSmall { n: tree.order(), min: 2 });
    }
    Ok(eigen_symmetric(&laplacian(tree))?.values[1])
}
