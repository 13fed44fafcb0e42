//! Deterministic CPU-scheduling simulation.
//!
//! The crate simulates a workload of processes (arrival time + CPU burst)
//! under one of three policies and reports the classic scheduling criteria:
//! per-process completion, turnaround, and waiting times, their exact
//! rational averages, and the context-switch count.
//!
//! - `fcfs` — first come, first served.
//! - `srr` — standard round robin with a fixed quantum.
//! - `drq` — round robin with a dynamic per-round quantum (median of the
//!   live remaining bursts), a ready-queue-wait priority order, and a
//!   finish-early threshold for processes near completion.
//!
//! Everything is exact integer/rational arithmetic and single-threaded per
//! run; identical inputs give byte-identical results on every platform. A
//! tick-level reference simulator ([`oracle`]) double-checks the segment
//! engine in the test suites.

pub mod engine;
pub mod metrics;
pub mod oracle;
pub mod policies;
pub mod report;
pub mod workload;

pub use engine::{context_switches, simulate, EngineTrace, GanttSegment, Schedule};
pub use metrics::{compute_metrics, improvement, Aggregates, ProcMetrics, Rational, SimResult};
pub use policies::{DrqMode, DrqParams, PolicyConfig, TrqMode};
pub use report::{
    comparison_table, export_result, render_comparison, render_gantt, ComparisonReport,
    GanttStyle, ReportFormat,
};
pub use workload::{ProcessSpec, Workload, WorkloadError, WorkloadFormat};
