//! Brute-force tick-level reference simulator.
//!
//! Advances the clock one time unit at a time and re-derives every dispatch
//! decision at the boundaries, merging the ticks of each dispatch into one
//! segment. It shares the policy decision logic with the engine but none of
//! its loop mechanics, so differential runs catch loop bugs on either side.
//! Output must equal [`crate::engine::simulate`]'s schedule exactly.
//!
//! This is a testing surface (plus the CLI's hidden `--engine tick` flag);
//! it makes no attempt to be fast and runs in O(makespan).

use crate::engine::{GanttSegment, Schedule};
use crate::policies::{Dispatch, PolicyConfig, PolicyState};
use crate::workload::Workload;

/// Simulates one tick at a time; same contract as [`crate::engine::simulate`]
/// minus the trace.
///
/// # Panics
///
/// Panics if `config` fails [`PolicyConfig::validate`].
pub fn tick_simulate(workload: &Workload, config: &PolicyConfig) -> Schedule {
    config.validate().expect("invalid policy configuration");
    let n = workload.len();
    let mut remaining: Vec<u64> = workload.iter().map(|p| p.burst).collect();
    let mut unfinished = n;
    let mut clock = 0u64;
    let mut policy = PolicyState::new(config, n);
    let mut segments: Vec<GanttSegment> = Vec::new();

    // The dispatch currently on the CPU: (workload index, budget left,
    // segment start). A decided dispatch whose process has not arrived yet
    // (offline drq) parks in `pending` while the CPU idles.
    let mut running: Option<(usize, u64, u64)> = None;
    let mut pending: Option<Dispatch> = None;

    while unfinished > 0 {
        if running.is_none() {
            if pending.is_none() {
                pending = policy.next_dispatch(clock, workload, &remaining);
            }
            if let Some(d) = pending {
                if workload.processes()[d.index].arrival <= clock {
                    running = Some((d.index, d.max_run, clock));
                    pending = None;
                }
            }
        }
        match running.take() {
            None => clock += 1, // idle tick
            Some((index, budget, start)) => {
                clock += 1;
                remaining[index] -= 1;
                let budget = budget - 1;
                if remaining[index] == 0 || budget == 0 {
                    segments.push(GanttSegment {
                        id: workload.processes()[index].id.clone(),
                        start,
                        end: clock,
                    });
                    if remaining[index] == 0 {
                        unfinished -= 1;
                    }
                } else {
                    running = Some((index, budget, start));
                }
            }
        }
    }

    Schedule::from_segments(segments)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::simulate;
    use crate::policies::{DrqMode, DrqParams};
    use crate::workload::{ProcessSpec, Workload};

    #[test]
    fn matches_engine_on_worked_example() {
        let w = Workload::table1();
        for config in [
            PolicyConfig::Fcfs,
            PolicyConfig::Srr { quantum: 3 },
            PolicyConfig::drq_default(),
            PolicyConfig::Drq(DrqParams {
                mode: DrqMode::Online,
                ..DrqParams::default()
            }),
        ] {
            let (engine, _) = simulate(&w, &config);
            let oracle = tick_simulate(&w, &config);
            assert_eq!(engine, oracle, "{config}");
        }
    }

    #[test]
    fn worked_example_segment_counts() {
        let w = Workload::table1();
        assert_eq!(
            tick_simulate(&w, &PolicyConfig::Srr { quantum: 3 })
                .segments
                .len(),
            12
        );
        assert_eq!(
            tick_simulate(&w, &PolicyConfig::drq_default()).segments.len(),
            8
        );
    }

    #[test]
    fn single_process_is_one_segment() {
        let w = Workload::new(vec![ProcessSpec::new("P1", 0, 7)]).unwrap();
        let schedule = tick_simulate(&w, &PolicyConfig::drq_default());
        assert_eq!(schedule.segments.len(), 1);
        assert_eq!(schedule.segments[0].start, 0);
        assert_eq!(schedule.segments[0].end, 7);
    }

    #[test]
    fn idles_through_gaps_like_the_engine() {
        let w = Workload::new(vec![
            ProcessSpec::new("P1", 3, 2),
            ProcessSpec::new("P2", 40, 5),
        ])
        .unwrap();
        for config in [PolicyConfig::Fcfs, PolicyConfig::Srr { quantum: 2 }] {
            let (engine, _) = simulate(&w, &config);
            assert_eq!(engine, tick_simulate(&w, &config), "{config}");
        }
    }
}
