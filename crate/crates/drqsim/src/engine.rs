//! Deterministic dispatch loop: turns a workload and a policy into a
//! schedule of contiguous execution segments.
//!
//! The loop advances in whole dispatches (one dispatch = one Gantt segment),
//! consulting [`PolicyState`] at every boundary. All arithmetic is exact
//! integer time units; two runs of the same inputs produce identical
//! schedules on any platform.

use std::collections::BTreeMap;

use crate::policies::{PolicyConfig, PolicyState};
use crate::workload::Workload;

/// One contiguous execution interval of a single process.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GanttSegment {
    pub id: String,
    pub start: u64,
    /// Exclusive end; always greater than `start`.
    pub end: u64,
}

impl GanttSegment {
    pub fn len(&self) -> u64 {
        self.end - self.start
    }
}

/// The full simulation trace: non-overlapping segments sorted by start, plus
/// each process's completion time (the end of its last segment).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Schedule {
    pub segments: Vec<GanttSegment>,
    pub completion: BTreeMap<String, u64>,
}

impl Schedule {
    /// Total CPU-busy time across all segments.
    pub fn busy_time(&self) -> u64 {
        self.segments.iter().map(GanttSegment::len).sum()
    }

    /// Time at which the last process completes.
    pub fn makespan(&self) -> u64 {
        self.completion.values().copied().max().unwrap_or(0)
    }

    pub(crate) fn from_segments(segments: Vec<GanttSegment>) -> Self {
        let completion = segments
            .iter()
            .map(|s| (s.id.clone(), s.end))
            .collect::<BTreeMap<_, _>>();
        Self {
            segments,
            completion,
        }
    }
}

/// Per-round log of what the dispatcher decided.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EngineTrace {
    pub rounds: Vec<RoundLog>,
}

/// One round as executed: its quantum, when it began running, and the
/// dispatches it issued in order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RoundLog {
    pub round: u64,
    /// Quantum governing the round; `None` under fcfs.
    pub quantum: Option<u64>,
    /// Clock at which the round's first dispatch started running.
    pub clock_start: u64,
    pub dispatches: Vec<DispatchLog>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DispatchLog {
    pub id: String,
    /// Remaining burst when the dispatch was issued.
    pub remaining_before: u64,
    pub start: u64,
    pub run: u64,
}

/// Simulates `workload` under `config` from clock 0 until every process has
/// completed.
///
/// The CPU idles (producing no segment) whenever nothing is dispatchable;
/// under offline `drq` it also waits for the planned head's arrival. Each
/// dispatch runs `min(max_run, remaining)` contiguous units.
///
/// # Panics
///
/// Panics if `config` fails [`PolicyConfig::validate`].
pub fn simulate(workload: &Workload, config: &PolicyConfig) -> (Schedule, EngineTrace) {
    config.validate().expect("invalid policy configuration");
    let n = workload.len();
    let mut remaining: Vec<u64> = workload.iter().map(|p| p.burst).collect();
    let mut unfinished = n;
    let mut clock = 0u64;
    let mut segments: Vec<GanttSegment> = Vec::new();
    let mut rounds: Vec<RoundLog> = Vec::new();
    let mut policy = PolicyState::new(config, n);

    while unfinished > 0 {
        let Some(dispatch) = policy.next_dispatch(clock, workload, &remaining) else {
            // Nothing dispatchable: jump to the next arrival.
            clock = workload
                .iter()
                .enumerate()
                .filter(|&(i, p)| remaining[i] > 0 && p.arrival > clock)
                .map(|(_, p)| p.arrival)
                .min()
                .expect("idle with no future arrival");
            continue;
        };
        let proc = &workload.processes()[dispatch.index];
        if proc.arrival > clock {
            clock = proc.arrival;
        }
        let before = remaining[dispatch.index];
        let run = dispatch.max_run.min(before);
        debug_assert!(run >= 1, "a dispatch always runs at least one unit");
        segments.push(GanttSegment {
            id: proc.id.clone(),
            start: clock,
            end: clock + run,
        });
        if rounds.last().map(|r| r.round) != Some(dispatch.round) {
            rounds.push(RoundLog {
                round: dispatch.round,
                quantum: dispatch.quantum,
                clock_start: clock,
                dispatches: Vec::new(),
            });
        }
        rounds
            .last_mut()
            .expect("round log was just pushed")
            .dispatches
            .push(DispatchLog {
                id: proc.id.clone(),
                remaining_before: before,
                start: clock,
                run,
            });
        remaining[dispatch.index] = before - run;
        if remaining[dispatch.index] == 0 {
            unfinished -= 1;
        }
        clock += run;
    }

    (Schedule::from_segments(segments), EngineTrace { rounds })
}

/// Number of context switches: dispatch boundaries counted fence-post, i.e.
/// segments + 1 (initial dispatch and final termination included).
pub fn context_switches(schedule: &Schedule) -> u64 {
    schedule.segments.len() as u64 + 1
}
