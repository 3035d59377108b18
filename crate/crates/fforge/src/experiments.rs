//! Rose-tree sweeps, threshold tables and the conjecture probes.

use std::ops::RangeInclusive;
use std::path::Path;

use fforge_core::enumeration::free_trees;
use fforge_core::rose::{asymptotic_ratio, predict_fed_rose, r_of_s, threshold_f, Prediction};
use fforge_core::spectral::{fiedler_with, FedOptions, FiedlerReport, TreeType};
use fforge_core::{RoseParams, Tree};
use serde::Serialize;

use crate::formats::read_edge_list;
use crate::output::fmt_real;
use crate::{Config, Result};

fn rose(s: usize, t: usize, p: usize) -> Result<Tree> {
    Ok(Tree::rose(RoseParams::new(s, t, p)?)?)
}

pub fn rose_fed(s: usize, t: usize, p: usize, opts: &FedOptions) -> Result<bool> {
    Ok(fiedler_with(&rose(s, t, p)?, opts)?.fed.satisfied)
}

/// Fiedler report for the tree in an edge-list file.
pub fn analyze_file(path: &Path, config: &Config) -> Result<FiedlerReport> {
    Ok(fiedler_with(&read_edge_list(path)?, &config.fed)?)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RoseSweepRow {
    pub s: usize,
    pub t: usize,
    pub p: usize,
    pub alpha_numeric: f64,
    pub alpha_analytic: f64,
    pub fed_numeric: bool,
    pub fed_predicted: Prediction,
    /// A definite prediction matches the eigensolver.
    pub agreement: bool,
}

impl RoseSweepRow {
    pub const HEADER: [&'static str; 8] =
        ["s", "t", "p", "alpha_numeric", "alpha_analytic", "fed_numeric", "fed_predicted", "agreement"];

    pub fn record(&self) -> Vec<String> {
        vec![
            self.s.to_string(),
            self.t.to_string(),
            self.p.to_string(),
            fmt_real(self.alpha_numeric),
            fmt_real(self.alpha_analytic),
            self.fed_numeric.to_string(),
            format!("{:?}", self.fed_predicted),
            self.agreement.to_string(),
        ]
    }
}

pub fn run_rose_sweep(
    s_range: RangeInclusive<usize>,
    t_range: RangeInclusive<usize>,
    p_range: RangeInclusive<usize>,
    config: &Config,
) -> Result<Vec<RoseSweepRow>> {
    let mut rows = Vec::new();
    for s in s_range {
        for t in t_range.clone() {
            for p in p_range.clone() {
                let report = fiedler_with(&rose(s, t, p)?, &config.fed)?;
                let verdict = predict_fed_rose(s, t, p)?;
                let fed_numeric = report.fed.satisfied;
                let agreement = match verdict.prediction {
                    Prediction::FedTrue => fed_numeric,
                    Prediction::FedFalse => !fed_numeric,
                    Prediction::Indeterminate => true,
                };
                rows.push(RoseSweepRow {
                    s,
                    t,
                    p,
                    alpha_numeric: report.lambda2,
                    alpha_analytic: verdict.alpha_analytic,
                    fed_numeric,
                    fed_predicted: verdict.prediction,
                    agreement,
                });
            }
        }
    }
    Ok(rows)
}

/// Where FED switches off along `p` for fixed `(s, t)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Flip {
    /// Largest `p` with FED true; `p + 1` is false.
    LastTrue(usize),
    /// FED already fails at `p = 0`.
    NeverTrue,
    /// FED still holds at the probe limit.
    AboveProbe,
}

impl Flip {
    pub fn last_true(self) -> Option<usize> {
        match self {
            Flip::LastTrue(p) => Some(p),
            _ => None,
        }
    }
}

/// Bisection over integer `p ∈ [0, p_max]`, assuming FED is monotone in `p`.
pub fn empirical_flip(s: usize, t: usize, p_max: usize, opts: &FedOptions) -> Result<Flip> {
    if !rose_fed(s, t, 0, opts)? {
        return Ok(Flip::NeverTrue);
    }
    if rose_fed(s, t, p_max, opts)? {
        return Ok(Flip::AboveProbe);
    }
    let (mut lo, mut hi) = (0, p_max);
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if rose_fed(s, t, mid, opts)? {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(Flip::LastTrue(lo))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ThresholdRow {
    pub s: usize,
    pub r_s: f64,
    pub f_ss: f64,
    pub floor_f: usize,
    /// `None` when the bisection would need trees above the order cap.
    pub empirical_flip: Option<usize>,
    pub asymptotic_ratio: f64,
}

impl ThresholdRow {
    pub const HEADER: [&'static str; 6] = ["s", "r_s", "f_ss", "floor_f", "empirical_flip", "asymptotic_ratio"];

    pub fn record(&self) -> Vec<String> {
        vec![
            self.s.to_string(),
            fmt_real(self.r_s),
            fmt_real(self.f_ss),
            self.floor_f.to_string(),
            self.empirical_flip.map(|p| p.to_string()).unwrap_or_default(),
            fmt_real(self.asymptotic_ratio),
        ]
    }
}

/// Dense eigensolves above this order are skipped in the threshold table.
pub const DEFAULT_MAX_ORDER: usize = 200;

pub fn run_threshold_table(
    s_range: RangeInclusive<usize>,
    max_order: usize,
    config: &Config,
) -> Result<Vec<ThresholdRow>> {
    let mut rows = Vec::new();
    for s in s_range {
        let f = threshold_f(s);
        let p_max = 2 * f.ceil() as usize + 2;
        let empirical_flip =
            if 2 * s + p_max + 2 <= max_order { empirical_flip(s, s, p_max, &config.fed)?.last_true() } else { None };
        rows.push(ThresholdRow {
            s,
            r_s: r_of_s(s),
            f_ss: f,
            floor_f: f.floor() as usize,
            empirical_flip,
            asymptotic_ratio: asymptotic_ratio(s),
        });
    }
    Ok(rows)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuptestRow {
    pub t: usize,
    pub flip: Flip,
    /// `⌊f(s,s) − 1⌋`
    pub lower_bound: usize,
    /// `⌈f(t+2,t+2)⌉`
    pub upper_bound: usize,
    pub within_bounds: bool,
    /// `flip <= s(s+1)/2 − 2`
    pub below_conjectured_bound: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuptestReport {
    pub s: usize,
    pub t_max: usize,
    pub p_probe: usize,
    pub conjectured_bound: f64,
    pub max_flip: Option<usize>,
    pub rows: Vec<SuptestRow>,
}

/// Empirical FED flip points of `R(s, t, ·)` for `t = s+1..=t_max`.
pub fn run_suptest(s: usize, t_max: usize, p_probe: usize, config: &Config) -> Result<SuptestReport> {
    let conjectured_bound = (s * (s + 1)) as f64 / 2.0 - 2.0;
    let lower_bound = (threshold_f(s) - 1.0).floor().max(0.0) as usize;
    let mut rows = Vec::new();
    for t in s + 1..=t_max {
        let flip = empirical_flip(s, t, p_probe, &config.fed)?;
        let upper_bound = threshold_f(t + 2).ceil() as usize;
        let within_bounds = flip.last_true().is_some_and(|p| (lower_bound..=upper_bound).contains(&p));
        let below_conjectured_bound = flip.last_true().is_some_and(|p| p as f64 <= conjectured_bound);
        rows.push(SuptestRow { t, flip, lower_bound, upper_bound, within_bounds, below_conjectured_bound });
    }
    let max_flip = rows.iter().filter_map(|r| r.flip.last_true()).max();
    Ok(SuptestReport { s, t_max, p_probe, conjectured_bound, max_flip, rows })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Direction {
    /// FED tree, pendant added at an extremum, FED lost.
    Grow,
    /// Non-FED tree, extremal leaf removed, FED gained.
    Shrink,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub direction: Direction,
    pub code: String,
    /// Vertex (label in the original tree) that was extended or deleted.
    pub at: usize,
    pub result_code: String,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct GrowthReport {
    pub n_max: usize,
    pub trees_checked: usize,
    pub grow_checks: usize,
    pub shrink_checks: usize,
    pub counterexamples: Vec<Counterexample>,
}

fn code_string(t: &Tree) -> String {
    String::from_utf8(t.canonical_code()).expect("canonical codes are ASCII")
}

/// Tests both extremum-growth conjectures on every tree up to `n_max` vertices with simple λ₂.
pub fn run_conjecture_growth(n_max: usize, config: &Config) -> Result<GrowthReport> {
    let mut report = GrowthReport { n_max, ..Default::default() };
    for n in 3..=n_max {
        for seq in free_trees(n)? {
            let tree = seq.decode()?;
            let base = fiedler_with(&tree, &config.fed)?;
            if base.tree_type == TreeType::Degenerate {
                continue;
            }
            report.trees_checked += 1;
            let mut ends = vec![base.fed.m, base.fed.big_m];
            ends.dedup();
            for at in ends {
                if base.fed.satisfied {
                    let grown = tree.add_pendant(at)?;
                    report.grow_checks += 1;
                    if !fiedler_with(&grown, &config.fed)?.fed.satisfied {
                        report.counterexamples.push(Counterexample {
                            direction: Direction::Grow,
                            code: code_string(&tree),
                            at,
                            result_code: code_string(&grown),
                        });
                    }
                } else if tree.is_leaf(at)? && tree.order() > 2 {
                    let shrunk = tree.remove_leaf(at)?;
                    report.shrink_checks += 1;
                    if fiedler_with(&shrunk, &config.fed)?.fed.satisfied {
                        report.counterexamples.push(Counterexample {
                            direction: Direction::Shrink,
                            code: code_string(&tree),
                            at,
                            result_code: code_string(&shrunk),
                        });
                    }
                }
            }
        }
    }
    Ok(report)
}

/// Reports for the trees left after deleting each extremal leaf of `tree`.
pub fn shrink_at_extremum(tree: &Tree, config: &Config) -> Result<Vec<(usize, FiedlerReport)>> {
    let base = fiedler_with(tree, &config.fed)?;
    let mut out = Vec::new();
    for at in [base.fed.m, base.fed.big_m] {
        if tree.is_leaf(at)? {
            out.push((at, fiedler_with(&tree.remove_leaf(at)?, &config.fed)?));
        }
    }
    Ok(out)
}
