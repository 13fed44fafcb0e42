//! Process datasets: definition, validation, parsing, generation, and the
//! bundled example sets.
//!
//! A [`Workload`] is an ordered list of [`ProcessSpec`]s with unique ids and
//! positive bursts. All times are integer time units; there are no fractional
//! times anywhere in the simulator.

use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Default burst range upper bound for generated workloads.
pub const DEFAULT_BURST_MAX: u64 = 50;

/// Default arrival range upper bound for a generated workload of `count`
/// processes. Twice the process count keeps arrivals overlapping enough to
/// produce contention at any size.
pub fn default_arrival_max(count: u64) -> u64 {
    2 * count
}

/// Ids accepted by [`Workload::bundled`].
pub const BUNDLED_IDS: [&str; 11] = [
    "table1", "ds1", "ds2", "ds3", "ds4", "ds5", "ds6", "ds7", "ds8", "ds9", "ds10",
];

/// One process: identity, arrival time, and CPU burst length.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProcessSpec {
    /// Unique short identifier, e.g. `"P1"`.
    pub id: String,
    /// Time unit at which the process enters the ready queue.
    pub arrival: u64,
    /// Total CPU time the process requires; always >= 1.
    pub burst: u64,
}

impl ProcessSpec {
    pub fn new(id: impl Into<String>, arrival: u64, burst: u64) -> Self {
        Self {
            id: id.into(),
            arrival,
            burst,
        }
    }
}

/// Input formats understood by [`Workload::parse`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WorkloadFormat {
    /// Rows of `id,arrival,burst`; a leading `id,arrival,burst` header line
    /// is skipped. LF or CRLF line endings.
    Csv,
    /// An array of objects with keys `id`, `arrival`, `burst`.
    Json,
}

/// Errors from parsing, validating, or generating workloads.
#[derive(Debug, Error)]
pub enum WorkloadError {
    #[error("dataset is empty")]
    Empty,

    #[error("row {row}: duplicate process id `{id}`")]
    DuplicateId { row: usize, id: String },

    #[error("row {row}, field `{field}`: {reason} (got `{value}`)")]
    InvalidField {
        row: usize,
        field: &'static str,
        value: String,
        reason: &'static str,
    },

    #[error("row {row}: expected `id,arrival,burst`, got {count} fields")]
    FieldCount { row: usize, count: usize },

    #[error("invalid JSON workload: {0}")]
    Json(#[from] serde_json::Error),

    #[error("process count must be at least 1")]
    ZeroCount,

    #[error("burst_max must be at least 1")]
    ZeroBurstMax,

    #[error("unknown bundled dataset `{0}`")]
    UnknownDataset(String),
}

/// A validated, ordered collection of processes.
///
/// Invariants enforced at construction: non-empty, all ids unique, every
/// burst >= 1. Instances are immutable after construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Workload {
    processes: Vec<ProcessSpec>,
}

impl Workload {
    /// Validates and wraps a list of processes, preserving order.
    ///
    /// Row numbers in errors are 1-based positions in `processes`.
    pub fn new(processes: Vec<ProcessSpec>) -> Result<Self, WorkloadError> {
        if processes.is_empty() {
            return Err(WorkloadError::Empty);
        }
        let mut seen = HashSet::new();
        for (i, p) in processes.iter().enumerate() {
            if p.id.is_empty() {
                return Err(WorkloadError::InvalidField {
                    row: i + 1,
                    field: "id",
                    value: String::new(),
                    reason: "id must be non-empty",
                });
            }
            if p.burst == 0 {
                return Err(WorkloadError::InvalidField {
                    row: i + 1,
                    field: "burst",
                    value: "0".to_string(),
                    reason: "burst must be at least 1",
                });
            }
            if !seen.insert(p.id.as_str()) {
                return Err(WorkloadError::DuplicateId {
                    row: i + 1,
                    id: p.id.clone(),
                });
            }
        }
        Ok(Self { processes })
    }

    /// Parses a workload from text, preserving file order.
    pub fn parse(input: &str, format: WorkloadFormat) -> Result<Self, WorkloadError> {
        match format {
            WorkloadFormat::Csv => Self::parse_csv(input),
            WorkloadFormat::Json => Self::parse_json(input),
        }
    }

    fn parse_csv(input: &str) -> Result<Self, WorkloadError> {
        let mut processes = Vec::new();
        let mut seen: HashSet<String> = HashSet::new();
        for (lineno, raw) in input.lines().enumerate() {
            let row = lineno + 1;
            let line = raw.trim();
            if line.is_empty() {
                continue;
            }
            if processes.is_empty() && line.eq_ignore_ascii_case("id,arrival,burst") {
                continue; // optional header
            }
            let fields: Vec<&str> = line.split(',').map(str::trim).collect();
            if fields.len() != 3 {
                return Err(WorkloadError::FieldCount {
                    row,
                    count: fields.len(),
                });
            }
            let id = fields[0].to_string();
            if id.is_empty() {
                return Err(WorkloadError::InvalidField {
                    row,
                    field: "id",
                    value: id,
                    reason: "id must be non-empty",
                });
            }
            let arrival = parse_time_field(fields[1], row, "arrival")?;
            let burst = parse_time_field(fields[2], row, "burst")?;
            if burst == 0 {
                return Err(WorkloadError::InvalidField {
                    row,
                    field: "burst",
                    value: fields[2].to_string(),
                    reason: "burst must be at least 1",
                });
            }
            if !seen.insert(id.clone()) {
                return Err(WorkloadError::DuplicateId { row, id });
            }
            processes.push(ProcessSpec { id, arrival, burst });
        }
        if processes.is_empty() {
            return Err(WorkloadError::Empty);
        }
        Ok(Self { processes })
    }

    fn parse_json(input: &str) -> Result<Self, WorkloadError> {
        let processes: Vec<ProcessSpec> = serde_json::from_str(input)?;
        Self::new(processes)
    }

    /// Renders the workload as CSV with a header row.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("id,arrival,burst\n");
        for p in &self.processes {
            out.push_str(&format!("{},{},{}\n", p.id, p.arrival, p.burst));
        }
        out
    }

    /// Renders the workload as a JSON array.
    pub fn to_json(&self) -> String {
        let mut out =
            serde_json::to_string_pretty(&self.processes).expect("workload serialization");
        out.push('\n');
        out
    }

    /// Generates `count` processes with uniformly random arrivals in
    /// `[0, arrival_max]` and bursts in `[1, burst_max]`, named `P1..Pcount`.
    ///
    /// Draws come from a ChaCha8 stream keyed by `seed` (arrival then burst,
    /// per process in index order), so identical arguments yield an identical
    /// workload on every platform.
    pub fn generate(
        count: u64,
        seed: u64,
        arrival_max: u64,
        burst_max: u64,
    ) -> Result<Self, WorkloadError> {
        if count == 0 {
            return Err(WorkloadError::ZeroCount);
        }
        if burst_max == 0 {
            return Err(WorkloadError::ZeroBurstMax);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let processes = (1..=count)
            .map(|i| ProcessSpec {
                id: format!("P{i}"),
                arrival: rng.gen_range(0..=arrival_max),
                burst: rng.gen_range(1..=burst_max),
            })
            .collect();
        Ok(Self { processes })
    }

    /// Returns one of the bundled datasets.
    ///
    /// `table1` (alias `ds5`) is the fixed six-process worked example used
    /// throughout the docs and the `reproduce` command. The remaining
    /// `ds1..ds10` are seeded synthetic stand-ins of increasing size
    /// (4, 5, 5, 6, 6, 10, 10, 15, 15, 20 processes), generated with the
    /// default ranges and `seed = <dataset number>`.
    pub fn bundled(id: &str) -> Result<Self, WorkloadError> {
        let generated = |count: u64, seed: u64| {
            Self::generate(count, seed, default_arrival_max(count), DEFAULT_BURST_MAX)
        };
        match id {
            "table1" | "ds5" => Ok(Self::table1()),
            "ds1" => generated(4, 1),
            "ds2" => generated(5, 2),
            "ds3" => generated(5, 3),
            "ds4" => generated(6, 4),
            "ds6" => generated(10, 6),
            "ds7" => generated(10, 7),
            "ds8" => generated(15, 8),
            "ds9" => generated(15, 9),
            "ds10" => generated(20, 10),
            other => Err(WorkloadError::UnknownDataset(other.to_string())),
        }
    }

    /// The fixed six-process worked example dataset.
    pub fn table1() -> Self {
        let processes = vec![
            ProcessSpec::new("P1", 5, 5),
            ProcessSpec::new("P2", 4, 6),
            ProcessSpec::new("P3", 3, 7),
            ProcessSpec::new("P4", 1, 9),
            ProcessSpec::new("P5", 2, 2),
            ProcessSpec::new("P6", 6, 3),
        ];
        Self { processes }
    }

    pub fn processes(&self) -> &[ProcessSpec] {
        &self.processes
    }

    pub fn len(&self) -> usize {
        self.processes.len()
    }

    pub fn is_empty(&self) -> bool {
        // A constructed workload is never empty; kept for interface symmetry.
        self.processes.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, ProcessSpec> {
        self.processes.iter()
    }

    /// Sum of all bursts: the total CPU demand.
    pub fn total_burst(&self) -> u64 {
        self.processes.iter().map(|p| p.burst).sum()
    }
}

impl<'a> IntoIterator for &'a Workload {
    type Item = &'a ProcessSpec;
    type IntoIter = std::slice::Iter<'a, ProcessSpec>;

    fn into_iter(self) -> Self::IntoIter {
        self.processes.iter()
    }
}

fn parse_time_field(value: &str, row: usize, field: &'static str) -> Result<u64, WorkloadError> {
    value
        .parse::<u64>()
        .map_err(|_| WorkloadError::InvalidField {
            row,
            field,
            value: value.to_string(),
            reason: "must be a non-negative integer",
        })
}
