use std::io::Write;
use std::ops::RangeInclusive;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use fforge::census::{run_census_full, verify_row, write_census_csv};
use fforge::experiments::{
    analyze_file, run_conjecture_growth, run_rose_sweep, run_suptest, run_threshold_table, RoseSweepRow, ThresholdRow,
    DEFAULT_MAX_ORDER,
};
use fforge::output::{fmt_real, open_output, write_csv, write_json};
use fforge::{Config, Error, OutputFormat, Result};
use fforge_core::spectral::{DegeneratePolicy, TiePolicy};

#[derive(Parser)]
#[command(name = "fforge", version, about = "Fiedler vectors, Rose trees and FED censuses")]
struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Csv)]
    format: OutputFormat,
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true)]
    tol_zero: Option<f64>,
    #[arg(long, global = true)]
    tol_mult: Option<f64>,
    #[arg(long, global = true, value_enum, default_value_t = Ties::Tolerate)]
    ties: Ties,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Ties {
    Tolerate,
    Reject,
}

#[derive(Clone, Copy, ValueEnum)]
enum Policy {
    Strict,
    Projection,
}

#[derive(Subcommand)]
enum Command {
    /// Fiedler report for an edge-list file.
    Analyze { file: PathBuf },
    /// Numeric and analytic λ₂ over a Rose-tree grid.
    Rose {
        #[arg(long, value_parser = parse_range)]
        s: RangeInclusive<usize>,
        #[arg(long, value_parser = parse_range)]
        t: RangeInclusive<usize>,
        #[arg(long, value_parser = parse_range)]
        p: RangeInclusive<usize>,
    },
    /// Threshold values and empirical flips for symmetric Rose trees.
    Threshold {
        #[arg(long, value_parser = parse_range)]
        s: RangeInclusive<usize>,
        #[arg(long, default_value_t = DEFAULT_MAX_ORDER)]
        max_order: usize,
    },
    /// FED over every free tree on n vertices.
    Census {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        shards: usize,
        #[arg(long, value_enum, default_value_t = Policy::Projection)]
        policy: Policy,
        #[arg(long)]
        verify: bool,
        #[arg(long)]
        list_violators: bool,
        /// Print the enumerated level sequences instead of the summary.
        #[arg(long)]
        dump_sequences: bool,
    },
    /// Pendant growth and leaf removal at the Fiedler extrema.
    Conjecture {
        #[arg(long)]
        n_max: usize,
    },
    /// Flip points of R(s, t, ·) as t grows.
    Suptest {
        #[arg(long)]
        s: usize,
        #[arg(long)]
        t_max: usize,
        #[arg(long)]
        p_probe: usize,
    },
}

fn parse_range(text: &str) -> std::result::Result<RangeInclusive<usize>, String> {
    let bad = || format!("expected N or A..B, got {text:?}");
    match text.split_once("..") {
        Some((a, b)) => {
            let a: usize = a.trim().parse().map_err(|_| bad())?;
            let b: usize = b.trim_start_matches('=').trim().parse().map_err(|_| bad())?;
            if a > b {
                return Err(bad());
            }
            Ok(a..=b)
        }
        None => {
            let n = text.trim().parse().map_err(|_| bad())?;
            Ok(n..=n)
        }
    }
}

fn config_from(cli: &Cli) -> Result<Config> {
    let mut config = Config::new();
    config.format = cli.format;
    config.out = cli.out.clone();
    config.fed.ties = match cli.ties {
        Ties::Tolerate => TiePolicy::Tolerate,
        Ties::Reject => TiePolicy::Reject,
    };
    for (name, value, slot) in
        [("--tol-zero", cli.tol_zero, &mut config.fed.tol.zero), ("--tol-mult", cli.tol_mult, &mut config.fed.tol.mult)]
    {
        if let Some(v) = value {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::Usage(format!("{name} must be a positive number")));
            }
            *slot = v;
        }
    }
    Ok(config)
}

fn run(cli: Cli) -> Result<()> {
    let mut config = config_from(&cli)?;
    let json = config.format == OutputFormat::Json;
    match cli.command {
        Command::Analyze { file } => {
            let report = analyze_file(&file, &config)?;
            let mut w = open_output(config.out.as_deref())?;
            if json {
                write_json(&report, &mut w)?;
            } else {
                let join = |v: &[usize]| v.iter().map(usize::to_string).collect::<Vec<_>>().join(" ");
                let rows = vec![
                    vec!["order".into(), report.vector.len().to_string()],
                    vec!["diameter".into(), report.fed.diameter.to_string()],
                    vec!["lambda2".into(), fmt_real(report.lambda2)],
                    vec!["multiplicity".into(), report.multiplicity.to_string()],
                    vec!["tree_type".into(), format!("{:?}", report.tree_type)],
                    vec!["characteristic".into(), format!("{:?}", report.characteristic)],
                    vec!["argmin".into(), join(&report.argmin_set)],
                    vec!["argmax".into(), join(&report.argmax_set)],
                    vec!["extrema_distance".into(), report.fed.extrema_distance.to_string()],
                    vec!["fed".into(), report.fed.satisfied.to_string()],
                    vec!["reason".into(), fforge::census::reason_name(report.fed.reason).into()],
                    vec!["vector".into(), report.vector.iter().map(|&x| fmt_real(x)).collect::<Vec<_>>().join(" ")],
                ];
                write_csv(&["field", "value"], rows, &mut w)?;
            }
            w.flush()?;
        }
        Command::Rose { s, t, p } => {
            let rows = run_rose_sweep(s, t, p, &config)?;
            let mut w = open_output(config.out.as_deref())?;
            if json {
                write_json(&rows, &mut w)?;
            } else {
                write_csv(&RoseSweepRow::HEADER, rows.iter().map(RoseSweepRow::record), &mut w)?;
            }
            w.flush()?;
        }
        Command::Threshold { s, max_order } => {
            if *s.start() < 1 {
                return Err(Error::Usage("--s must start at 1 or above".into()));
            }
            let rows = run_threshold_table(s, max_order, &config)?;
            let mut w = open_output(config.out.as_deref())?;
            if json {
                write_json(&rows, &mut w)?;
            } else {
                write_csv(&ThresholdRow::HEADER, rows.iter().map(ThresholdRow::record), &mut w)?;
            }
            w.flush()?;
        }
        Command::Census { n, shards, policy, verify, list_violators, dump_sequences } => {
            if shards == 0 {
                return Err(Error::Usage("--shards must be at least 1".into()));
            }
            config.shards = shards;
            config.fed.policy = match policy {
                Policy::Strict => DegeneratePolicy::Strict,
                Policy::Projection => DegeneratePolicy::Projection,
            };
            let output = run_census_full(n, &config, list_violators, dump_sequences)?;
            let mut w = open_output(config.out.as_deref())?;
            if let Some(seqs) = &output.sequences {
                for s in seqs {
                    writeln!(w, "{s}")?;
                }
            } else if json {
                write_json(&output.row, &mut w)?;
            } else {
                write_census_csv(std::slice::from_ref(&output.row), &mut w)?;
                if let Some(codes) = &output.row.violator_codes {
                    for code in codes {
                        writeln!(w, "# {code}")?;
                    }
                }
            }
            w.flush()?;
            if verify {
                verify_row(&output.row)?;
            }
        }
        Command::Conjecture { n_max } => {
            if !(3..=14).contains(&n_max) {
                return Err(Error::Usage("--n-max must be in 3..=14".into()));
            }
            let report = run_conjecture_growth(n_max, &config)?;
            let mut w = open_output(config.out.as_deref())?;
            if json {
                write_json(&report, &mut w)?;
            } else {
                let rows = report.counterexamples.iter().map(|c| {
                    vec![format!("{:?}", c.direction), c.code.clone(), c.at.to_string(), c.result_code.clone()]
                });
                write_csv(&["direction", "code", "vertex", "result_code"], rows, &mut w)?;
                writeln!(
                    w,
                    "# trees={} grow_checks={} shrink_checks={} counterexamples={}",
                    report.trees_checked,
                    report.grow_checks,
                    report.shrink_checks,
                    report.counterexamples.len()
                )?;
            }
            w.flush()?;
        }
        Command::Suptest { s, t_max, p_probe } => {
            if s < 3 {
                return Err(Error::Usage("--s must be at least 3".into()));
            }
            let report = run_suptest(s, t_max, p_probe, &config)?;
            let mut w = open_output(config.out.as_deref())?;
            if json {
                write_json(&report, &mut w)?;
            } else {
                let rows = report.rows.iter().map(|r| {
                    vec![
                        r.t.to_string(),
                        r.flip.last_true().map(|p| p.to_string()).unwrap_or_else(|| format!("{:?}", r.flip)),
                        r.lower_bound.to_string(),
                        r.upper_bound.to_string(),
                        r.within_bounds.to_string(),
                        r.below_conjectured_bound.to_string(),
                    ]
                });
                write_csv(
                    &["t", "flip", "lower_bound", "upper_bound", "within_bounds", "below_conjectured_bound"],
                    rows,
                    &mut w,
                )?;
                let max = report.max_flip.map(|p| p.to_string()).unwrap_or_default();
                writeln!(w, "# max_flip={max} conjectured_bound={}", fmt_real(report.conjectured_bound))?;
            }
            w.flush()?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("fforge: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
