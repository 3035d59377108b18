use std::path::PathBuf;

use fforge_core::spectral::{DegeneratePolicy, FedOptions, TiePolicy, Tolerances};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, clap::ValueEnum)]
pub enum OutputFormat {
    #[default]
    Csv,
    Json,
}

/// Run-wide settings shared by every subcommand.
#[derive(Clone, Debug, PartialEq)]
pub struct Config {
    pub fed: FedOptions,
    /// Census partitions; each one reruns the generator and keeps its own indices.
    pub shards: usize,
    /// Worker cap; `None` means `FFORGE_THREADS` or the available parallelism.
    pub threads: Option<usize>,
    pub format: OutputFormat,
    pub out: Option<PathBuf>,
}

pub const THREADS_ENV: &str = "FFORGE_THREADS";

impl Default for Config {
    fn default() -> Self {
        Config { fed: FedOptions::default(), shards: 1, threads: None, format: OutputFormat::Csv, out: None }
    }
}

impl Config {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_policy(mut self, policy: DegeneratePolicy) -> Self {
        self.fed.policy = policy;
        self
    }

    pub fn with_ties(mut self, ties: TiePolicy) -> Self {
        self.fed.ties = ties;
        self
    }

    pub fn with_shards(mut self, shards: usize) -> Self {
        self.shards = shards;
        self
    }

    pub fn with_tolerances(mut self, tol: Tolerances) -> Self {
        self.fed.tol = tol;
        self
    }

    pub fn worker_count(&self) -> usize {
        let cap = self
            .threads
            .or_else(|| std::env::var(THREADS_ENV).ok()?.parse().ok())
            .unwrap_or_else(|| std::thread::available_parallelism().map(usize::from).unwrap_or(1));
        cap.clamp(1, self.shards.max(1))
    }
}
