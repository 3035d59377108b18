use alloc::vec;
use alloc::vec::Vec;

use super::{eigen_symmetric, laplacian, Tolerances};
use crate::{Error, Result, Tree};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum TreeType {
    /// Nonempty zero set with a single characteristic vertex.
    TypeI,
    /// No zero entries, a single sign-change edge.
    TypeII,
    /// λ₂ is not simple, so there is no distinguished Fiedler vector.
    Degenerate,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum Characteristic {
    Vertex(usize),
    /// `positive` carries Φ > 0 and `negative` carries Φ < 0.
    Edge {
        positive: usize,
        negative: usize,
    },
    None,
}

/// What to do when λ₂ has multiplicity above one.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum DegeneratePolicy {
    /// Report FED as not satisfied.
    Strict,
    /// Look for a diametral leaf pair whose projected indicator satisfies FED.
    #[default]
    Projection,
}

/// How near-equal extremal entries are read.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum TiePolicy {
    /// Tied minimizers (maximizers) form a set; FED needs every min/max pair at diameter distance.
    #[default]
    Tolerate,
    /// Any tie at the minimum or maximum fails FED.
    Reject,
}

#[derive(Clone, Copy, Debug, Default, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct FedOptions {
    pub policy: DegeneratePolicy,
    pub ties: TiePolicy,
    pub tol: Tolerances,
}

impl FedOptions {
    pub fn with_policy(policy: DegeneratePolicy) -> Self {
        FedOptions { policy, ..Default::default() }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum FedReason {
    Ok,
    MultipleMinima,
    MultipleMaxima,
    DistanceBelowDiameter,
    DegenerateEigenspace,
}

#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct FedVerdict {
    pub satisfied: bool,
    /// Smallest label among the minimizers.
    pub m: usize,
    /// Smallest label among the maximizers.
    #[cfg_attr(feature = "serde", serde(rename = "M"))]
    pub big_m: usize,
    /// Shortest distance over all (minimizer, maximizer) pairs.
    pub extrema_distance: usize,
    pub diameter: usize,
    pub reason: FedReason,
    pub minima: Vec<usize>,
    pub maxima: Vec<usize>,
    /// The verdict came from the degenerate-eigenspace path.
    pub via_projection: bool,
}

#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct FiedlerReport {
    pub lambda2: f64,
    pub multiplicity: usize,
    /// Unit norm; the first entry above the zero threshold is positive.
    pub vector: Vec<f64>,
    pub tree_type: TreeType,
    pub characteristic: Characteristic,
    pub zero_set: Vec<usize>,
    pub argmin_set: Vec<usize>,
    pub argmax_set: Vec<usize>,
    pub fed: FedVerdict,
}

fn inf_norm(x: &[f64]) -> f64 {
    x.iter().fold(0.0, |m, v| m.max(v.abs()))
}

/// Labels of the tied minimizers and maximizers of `x`.
fn extrema_sets(x: &[f64], tol_zero: f64) -> (Vec<usize>, Vec<usize>) {
    let band = tol_zero * inf_norm(x);
    let lo = x.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = x.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let minima = (0..x.len()).filter(|&i| x[i] <= lo + band).map(|i| i + 1).collect();
    let maxima = (0..x.len()).filter(|&i| x[i] >= hi - band).map(|i| i + 1).collect();
    (minima, maxima)
}

/// Reads FED off one vector. `dist_cache` holds BFS rows per 0-based source.
fn verdict_from_vector(
    tree: &Tree,
    x: &[f64],
    diameter: usize,
    opts: &FedOptions,
    dist_cache: &mut [Option<Vec<usize>>],
) -> FedVerdict {
    let (minima, maxima) = extrema_sets(x, opts.tol.zero);
    let mut extrema_distance = usize::MAX;
    for &m in &minima {
        let row = dist_cache[m - 1].get_or_insert_with(|| tree.bfs0(m - 1));
        for &big in &maxima {
            extrema_distance = extrema_distance.min(row[big - 1]);
        }
    }
    let reason = match opts.ties {
        TiePolicy::Reject if minima.len() > 1 => FedReason::MultipleMinima,
        TiePolicy::Reject if maxima.len() > 1 => FedReason::MultipleMaxima,
        _ if extrema_distance != diameter => FedReason::DistanceBelowDiameter,
        _ => FedReason::Ok,
    };
    FedVerdict {
        satisfied: reason == FedReason::Ok,
        m: minima[0],
        big_m: maxima[0],
        extrema_distance,
        diameter,
        reason,
        minima,
        maxima,
        via_projection: false,
    }
}

/// Type I / type II reading of a simple Fiedler vector.
pub fn classify_tree_type(tree: &Tree, phi: &[f64], tol_zero: f64) -> Result<(TreeType, Characteristic)> {
    let adj = tree.adjacency0();
    let band = tol_zero * inf_norm(phi);
    let is_zero: Vec<bool> = phi.iter().map(|v| v.abs() <= band).collect();
    let zeros: Vec<usize> = (0..phi.len()).filter(|&i| is_zero[i]).collect();

    if zeros.is_empty() {
        let mut found = None;
        for (u, list) in adj.iter().enumerate() {
            for &w in list {
                if phi[u] > 0.0 && phi[w] < 0.0 {
                    if found.is_some() {
                        return Err(Error::StructureViolation("more than one sign-change edge"));
                    }
                    found = Some((u + 1, w + 1));
                }
            }
        }
        let (positive, negative) = found.ok_or(Error::StructureViolation("no sign-change edge"))?;
        return Ok((TreeType::TypeII, Characteristic::Edge { positive, negative }));
    }

    // the zero set must induce a connected subtree
    let mut seen = vec![false; phi.len()];
    let mut stack = vec![zeros[0]];
    seen[zeros[0]] = true;
    let mut reached = 1;
    while let Some(u) = stack.pop() {
        for &w in &adj[u] {
            if is_zero[w] && !seen[w] {
                seen[w] = true;
                reached += 1;
                stack.push(w);
            }
        }
    }
    if reached != zeros.len() {
        return Err(Error::StructureViolation("zero set is disconnected"));
    }
    let mut boundary = zeros.iter().filter(|&&z| adj[z].iter().any(|&w| !is_zero[w]));
    match (boundary.next(), boundary.next()) {
        (Some(&v), None) => Ok((TreeType::TypeI, Characteristic::Vertex(v + 1))),
        _ => Err(Error::StructureViolation("zero set needs exactly one vertex with a nonzero neighbor")),
    }
}

/// FED through the λ₂ eigenspace when it is not one-dimensional.
///
/// For every leaf pair `(u, v)` at diameter distance, `e_u − e_v` is projected onto the span
/// of `basis`; the first projection whose maximizers contain `u`, minimizers contain `v`, and
/// which satisfies FED under the tie policy is the witness.
pub fn degenerate_fed_heuristic(tree: &Tree, basis: &[Vec<f64>], opts: &FedOptions) -> FedVerdict {
    let n = tree.order();
    let diameter = tree.diameter();
    let leaves = tree.leaves();
    let mut dist_cache: Vec<Option<Vec<usize>>> = vec![None; n];
    let mut fallback = None;

    for (i, &u) in leaves.iter().enumerate() {
        let row = dist_cache[u - 1].get_or_insert_with(|| tree.bfs0(u - 1)).clone();
        for &v in &leaves[i + 1..] {
            if row[v - 1] != diameter {
                continue;
            }
            let mut y = vec![0.0; n];
            for b in basis {
                let coef = b[u - 1] - b[v - 1];
                for (yk, bk) in y.iter_mut().zip(b) {
                    *yk += coef * bk;
                }
            }
            let mut verdict = verdict_from_vector(tree, &y, diameter, opts, &mut dist_cache);
            verdict.via_projection = true;
            // projection of e_v - e_u is -y, so one orientation covers both
            let oriented = (verdict.maxima.contains(&u) && verdict.minima.contains(&v))
                || (verdict.maxima.contains(&v) && verdict.minima.contains(&u));
            if oriented && verdict.satisfied {
                return verdict;
            }
            fallback.get_or_insert(verdict);
        }
    }

    let mut verdict = fallback.unwrap_or_else(|| {
        let mut v = verdict_from_vector(tree, &basis[0], diameter, opts, &mut dist_cache);
        v.via_projection = true;
        v
    });
    verdict.satisfied = false;
    verdict.reason = FedReason::DegenerateEigenspace;
    verdict
}

pub fn fiedler(tree: &Tree) -> Result<FiedlerReport> {
    fiedler_with(tree, &FedOptions::default())
}

pub fn fiedler_with(tree: &Tree, opts: &FedOptions) -> Result<FiedlerReport> {
    let n = tree.order();
    if n < 2 {
        return Err(Error::TooSmall { n, min: 2 });
    }
    let eig = eigen_symmetric(&laplacian(tree))?;
    let lambda2 = eig.values[1];
    let multiplicity = eig.values[1..].iter().take_while(|&&v| (v - lambda2).abs() <= opts.tol.mult).count();

    let mut vector = eig.vectors[1].clone();
    let norm = libm::sqrt(vector.iter().map(|x| x * x).sum::<f64>());
    let band = opts.tol.zero * inf_norm(&vector) / norm;
    vector.iter_mut().for_each(|x| *x /= norm);
    if vector.iter().find(|x| x.abs() > band).is_some_and(|&x| x < 0.0) {
        vector.iter_mut().for_each(|x| *x = -*x);
    }

    let zero_band = opts.tol.zero * inf_norm(&vector);
    let zero_set = (0..n).filter(|&i| vector[i].abs() <= zero_band).map(|i| i + 1).collect();
    let (argmin_set, argmax_set) = extrema_sets(&vector, opts.tol.zero);

    let (tree_type, characteristic, fed) = if multiplicity == 1 {
        let (ty, ch) = classify_tree_type(tree, &vector, opts.tol.zero)
            .or_else(|_| classify_tree_type(tree, &vector, opts.tol.zero * 10.0))?;
        let mut cache = vec![None; n];
        (ty, ch, verdict_from_vector(tree, &vector, tree.diameter(), opts, &mut cache))
    } else {
        let fed = match opts.policy {
            DegeneratePolicy::Projection => degenerate_fed_heuristic(tree, &eig.vectors[1..1 + multiplicity], opts),
            DegeneratePolicy::Strict => {
                let mut cache = vec![None; n];
                let mut v = verdict_from_vector(tree, &vector, tree.diameter(), opts, &mut cache);
                v.satisfied = false;
                v.reason = FedReason::DegenerateEigenspace;
                v
            }
        };
        (TreeType::Degenerate, Characteristic::None, fed)
    };

    Ok(FiedlerReport {
        lambda2,
        multiplicity,
        vector,
        tree_type,
        characteristic,
        zero_set,
        argmin_set,
        argmax_set,
        fed,
    })
}

pub fn check_fed(tree: &Tree, policy: DegeneratePolicy) -> Result<FedVerdict> {
    check_fed_with(tree, &FedOptions::with_policy(policy))
}

pub fn check_fed_with(tree: &Tree, opts: &FedOptions) -> Result<FedVerdict> {
    Ok(fiedler_with(tree, opts)?.fed)
}
