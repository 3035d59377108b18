//! Exhaustive FED census over free trees.

use std::io::Write;

use fforge_core::enumeration::{free_trees_shard, ShardSpec, MAX_ORDER};
use fforge_core::spectral::{fiedler_with, DegeneratePolicy, FedReason};
use serde::Serialize;

use crate::formats::format_level_sequence;
use crate::{Config, Error, Result};

/// `(n, free trees, trees without FED)` for n = 11..=20.
pub const KNOWN_COUNTS: [(usize, usize, usize); 10] = [
    (11, 235, 0),
    (12, 551, 1),
    (13, 1301, 5),
    (14, 3159, 21),
    (15, 7741, 72),
    (16, 19320, 240),
    (17, 48629, 757),
    (18, 123867, 2331),
    (19, 317955, 7012),
    (20, 823065, 20807),
];

pub fn known_counts(n: usize) -> Option<(usize, usize)> {
    KNOWN_COUNTS.iter().find(|r| r.0 == n).map(|&(_, t, v)| (t, v))
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct ViolatorDetail {
    /// Canonical code as ASCII parentheses.
    pub code: String,
    pub level_sequence: String,
    pub multiplicity: usize,
    pub via_projection: bool,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CensusRow {
    pub n: usize,
    pub trees: usize,
    pub violations: usize,
    pub ratio_percent: f64,
    pub policy: DegeneratePolicy,
    /// Trees whose λ₂ is not simple; under `Strict` these are all violations.
    pub degenerate: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub violator_codes: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub violators: Option<Vec<ViolatorDetail>>,
}

impl CensusRow {
    /// The percentage rounded half-up to two decimals.
    pub fn ratio_display(&self) -> String {
        // the nudge keeps decimal halves such as 0.185 from falling below .5 in binary
        format!("{:.2}", (self.ratio_percent * 100.0 + 0.5 + 1e-9).floor() / 100.0)
    }
}

#[derive(Default)]
struct ShardTally {
    trees: usize,
    degenerate: usize,
    violators: Vec<ViolatorDetail>,
    sequences: Vec<(usize, String)>,
}

fn run_shard(n: usize, shard: ShardSpec, config: &Config, keep_sequences: bool) -> Result<ShardTally> {
    let mut tally = ShardTally::default();
    for (index, seq) in free_trees_shard(n, shard)? {
        let tree = seq.decode()?;
        let report = fiedler_with(&tree, &config.fed)?;
        tally.trees += 1;
        if report.multiplicity > 1 {
            tally.degenerate += 1;
        }
        if keep_sequences {
            tally.sequences.push((index, format_level_sequence(&seq)));
        }
        if !report.fed.satisfied {
            tally.violators.push(ViolatorDetail {
                code: String::from_utf8(tree.canonical_code()).expect("canonical codes are ASCII"),
                level_sequence: format_level_sequence(&seq),
                multiplicity: report.multiplicity,
                via_projection: report.fed.via_projection,
                reason: reason_name(report.fed.reason).into(),
            });
        }
    }
    Ok(tally)
}

pub fn reason_name(reason: FedReason) -> &'static str {
    match reason {
        FedReason::Ok => "ok",
        FedReason::MultipleMinima => "multiple_minima",
        FedReason::MultipleMaxima => "multiple_maxima",
        FedReason::DistanceBelowDiameter => "distance_below_diameter",
        FedReason::DegenerateEigenspace => "degenerate_eigenspace",
    }
}

/// Census plus the enumerated sequences in generator order, when requested.
pub struct CensusOutput {
    pub row: CensusRow,
    pub sequences: Option<Vec<String>>,
}

/// Runs FED on every free tree with `n` vertices.
///
/// Shards run on up to [`Config::worker_count`] threads; the merge sorts violators by
/// canonical code so the result does not depend on shard count or scheduling.
pub fn run_census(n: usize, config: &Config, list_violators: bool) -> Result<CensusRow> {
    Ok(run_census_full(n, config, list_violators, false)?.row)
}

pub fn run_census_full(n: usize, config: &Config, list_violators: bool, keep_sequences: bool) -> Result<CensusOutput> {
    if !(4..=MAX_ORDER).contains(&n) {
        return Err(Error::Usage(format!("census needs 4 <= n <= {MAX_ORDER}")));
    }
    let shards = config.shards.max(1);
    let workers = config.worker_count();
    let tallies: Vec<Result<ShardTally>> = std::thread::scope(|scope| {
        let handles: Vec<_> = (0..workers)
            .map(|w| {
                scope.spawn(move || {
                    (w..shards)
                        .step_by(workers)
                        .map(|k| run_shard(n, ShardSpec { index: k, count: shards }, config, keep_sequences))
                        .collect::<Vec<_>>()
                })
            })
            .collect();
        handles.into_iter().flat_map(|h| h.join().expect("census worker panicked")).collect()
    });

    let mut trees = 0;
    let mut degenerate = 0;
    let mut violators = Vec::new();
    let mut sequences = Vec::new();
    for tally in tallies {
        let tally = tally?;
        trees += tally.trees;
        degenerate += tally.degenerate;
        violators.extend(tally.violators);
        sequences.extend(tally.sequences);
    }
    violators.sort();
    sequences.sort();
    let violations = violators.len();
    let row = CensusRow {
        n,
        trees,
        violations,
        ratio_percent: violations as f64 / trees as f64 * 100.0,
        policy: config.fed.policy,
        degenerate,
        violator_codes: list_violators.then(|| violators.iter().map(|v| v.code.clone()).collect()),
        violators: list_violators.then_some(violators),
    };
    Ok(CensusOutput { row, sequences: keep_sequences.then(|| sequences.into_iter().map(|(_, s)| s).collect()) })
}

/// Compares a row with [`KNOWN_COUNTS`]; rows outside n = 11..=20 pass.
pub fn verify_row(row: &CensusRow) -> Result<()> {
    match known_counts(row.n) {
        Some((want_trees, want_violations)) if (want_trees, want_violations) != (row.trees, row.violations) => {
            Err(Error::FixtureMismatch {
                n: row.n,
                got_trees: row.trees,
                got_violations: row.violations,
                want_trees,
                want_violations,
            })
        }
        _ => Ok(()),
    }
}

pub fn write_census_csv(rows: &[CensusRow], w: impl Write) -> Result<()> {
    let mut out = csv::Writer::from_writer(w);
    out.write_record(["n", "trees", "violations", "ratio_percent", "policy"])?;
    for r in rows {
        let policy = match r.policy {
            DegeneratePolicy::Strict => "strict",
            DegeneratePolicy::Projection => "projection",
        };
        out.write_record([
            r.n.to_string(),
            r.trees.to_string(),
            r.violations.to_string(),
            r.ratio_display(),
            policy.to_string(),
        ])?;
    }
    out.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_census() {
        let row = run_census(8, &Config::new(), true).unwrap();
        assert_eq!((row.trees, row.violations), (23, 0));
        assert_eq!(row.violator_codes.as_deref(), Some(&[][..]));
        assert_eq!(row.ratio_display(), "0.00");
    }

    #[test]
    fn strict_counts_degenerate_trees() {
        let strict = run_census(9, &Config::new().with_policy(DegeneratePolicy::Strict), false).unwrap();
        let proj = run_census(9, &Config::new(), false).unwrap();
        assert_eq!(strict.degenerate, proj.degenerate);
        assert_eq!(strict.violations, proj.violations + proj.degenerate);
    }

    #[test]
    fn ratio_rounds_half_up() {
        let row = CensusRow {
            n: 0,
            trees: 1,
            violations: 0,
            ratio_percent: 0.185,
            policy: DegeneratePolicy::Projection,
            degenerate: 0,
            violator_codes: None,
            violators: None,
        };
        assert_eq!(row.ratio_display(), "0.19");
    }

    #[test]
    fn rejects_tiny_orders() {
        assert!(matches!(run_census(3, &Config::new(), false), Err(Error::Usage(_))));
    }

    #[test]
    fn verify_against_known_counts() {
        let mut row = run_census(11, &Config::new(), false).unwrap();
        verify_row(&row).unwrap();
        row.violations += 1;
        let err = verify_row(&row).unwrap_err();
        assert_eq!(err.exit_code(), 3);
    }
}
