//! Scheduling policy math and the dispatch-decision state machine.
//!
//! Three policies are supported:
//!
//! - `fcfs`: non-preemptive first come, first served.
//! - `srr`: round robin with a fixed quantum and round-based rotation —
//!   within a round, the earliest-arrived unserved process runs next, and a
//!   new round begins once every arrived, unfinished process has been served.
//! - `drq`: round robin with a per-round dynamic quantum (the median of the
//!   live remaining bursts) and a per-round priority order driven by each
//!   process's accumulated ready-queue wait, plus a finish-early threshold
//!   rule for processes close to completion.
//!
//! The pure functions ([`median_quantum`], [`trq_update`], [`round_order`],
//! [`threshold_qualifies`], [`remaining_after_round`]) carry all of the
//! policy arithmetic; [`PolicyState`] owns the round bookkeeping and is the
//! single decision point both the segment engine and the tick oracle consult,
//! so the two simulators cannot drift on policy decisions, only on loop
//! mechanics.

use std::collections::{HashSet, VecDeque};
use std::fmt;

use num_rational::Ratio;
use thiserror::Error;

use crate::workload::Workload;

/// Fraction of the original burst at or below which a process is considered
/// on the verge of completion.
pub type ThresholdFraction = Ratio<u64>;

/// The default finish-early threshold: 4% of the original burst.
pub fn default_threshold() -> ThresholdFraction {
    Ratio::new(4, 100)
}

/// Whether the dynamic-quantum policy plans rounds over every unfinished
/// process or only over those that have already arrived.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DrqMode {
    /// All processes are known at time 0; every round covers every
    /// unfinished process and the CPU waits for the planned head's arrival
    /// if it has not arrived yet.
    #[default]
    Offline,
    /// Rounds cover only processes arrived by the round's start; mid-round
    /// arrivals wait for the next round.
    Online,
}

/// How the per-process ready-queue wait (TRQ) is obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TrqMode {
    /// Accumulate `quantum * (k - 1)` per completed round the process was a
    /// member of, where `k` is that round's member count.
    #[default]
    Formula,
    /// Derive the wait from the clock at ordering time:
    /// `clock - arrival - cpu_consumed`, floored at zero.
    Measured,
}

/// Dynamic-quantum policy parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DrqParams {
    pub threshold: ThresholdFraction,
    pub mode: DrqMode,
    pub trq_mode: TrqMode,
}

impl Default for DrqParams {
    fn default() -> Self {
        Self {
            threshold: default_threshold(),
            mode: DrqMode::default(),
            trq_mode: TrqMode::default(),
        }
    }
}

/// Scheduler selection and parameters for one simulation run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PolicyConfig {
    Fcfs,
    Srr { quantum: u64 },
    Drq(DrqParams),
}

impl PolicyConfig {
    /// The dynamic-quantum policy with default parameters
    /// (offline, formula TRQ, 4% threshold).
    pub fn drq_default() -> Self {
        Self::Drq(DrqParams::default())
    }

    /// Checks the parameter invariants: `srr` needs a quantum of at least 1,
    /// `drq` needs a threshold fraction below 1.
    pub fn validate(&self) -> Result<(), PolicyError> {
        match self {
            Self::Fcfs => Ok(()),
            Self::Srr { quantum } => {
                if *quantum == 0 {
                    Err(PolicyError::ZeroQuantum)
                } else {
                    Ok(())
                }
            }
            Self::Drq(params) => {
                if params.threshold >= Ratio::new(1, 1) {
                    Err(PolicyError::ThresholdOutOfRange)
                } else {
                    Ok(())
                }
            }
        }
    }
}

impl fmt::Display for PolicyConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Fcfs => write!(f, "fcfs"),
            Self::Srr { quantum } => write!(f, "srr:{quantum}"),
            Self::Drq(params) => {
                match params.mode {
                    DrqMode::Offline => write!(f, "drq:offline")?,
                    DrqMode::Online => write!(f, "drq:online")?,
                }
                if params.trq_mode == TrqMode::Measured {
                    write!(f, ":measured")?;
                }
                if params.threshold != default_threshold() {
                    write!(
                        f,
                        ":t={}/{}",
                        params.threshold.numer(),
                        params.threshold.denom()
                    )?;
                }
                Ok(())
            }
        }
    }
}

/// Invalid policy parameters.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum PolicyError {
    #[error("srr requires a quantum of at least 1")]
    ZeroQuantum,

    #[error("threshold fraction must be below 1")]
    ThresholdOutOfRange,
}

/// Snapshot of one live process as the ordering functions see it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProcView {
    pub id: String,
    pub arrival: u64,
    pub original_burst: u64,
    pub remaining: u64,
    /// Accumulated time spent waiting in the ready queue.
    pub trq: u64,
}

/// One planned round: its index, quantum, and dispatch order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RoundPlan {
    pub round_index: u64,
    pub quantum: u64,
    pub order: Vec<String>,
}

/// One dispatch decision handed to a simulation loop.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Dispatch {
    /// Position of the chosen process in the workload.
    pub index: usize,
    /// Upper bound on contiguous time units this dispatch may run; the loop
    /// runs `min(max_run, remaining)`.
    pub max_run: u64,
    /// 1-based round this dispatch belongs to.
    pub round: u64,
    /// Quantum governing the round; `None` under fcfs.
    pub quantum: Option<u64>,
}

/// Median of the remaining bursts, used as the round quantum.
///
/// Sorts ascending and takes the element at zero-based index `n / 2`: the
/// middle element for odd `n`, the upper median for even `n`. Returns `None`
/// on an empty slice.
pub fn median_quantum(remaining_bursts: &[u64]) -> Option<u64> {
    if remaining_bursts.is_empty() {
        return None;
    }
    let mut sorted = remaining_bursts.to_vec();
    sorted.sort_unstable();
    Some(sorted[sorted.len() / 2])
}

/// Remaining burst after one slice of `quantum`, floored at zero.
pub fn remaining_after_round(remaining: u64, quantum: u64) -> u64 {
    remaining.saturating_sub(quantum)
}

/// Adds one round's ready-queue wait: a process sharing a round with `k - 1`
/// others waits `quantum * (k - 1)` units in it.
pub fn trq_update(trq_prev: u64, quantum: u64, k: u64) -> u64 {
    debug_assert!(k >= 1, "a round has at least one member");
    trq_prev + quantum * k.saturating_sub(1)
}

/// True when `remaining <= fraction * original_burst`, compared exactly in
/// integer arithmetic.
pub fn threshold_qualifies(remaining: u64, original_burst: u64, fraction: ThresholdFraction) -> bool {
    debug_assert!(remaining >= 1 && remaining <= original_burst);
    u128::from(remaining) * u128::from(*fraction.denom())
        <= u128::from(*fraction.numer()) * u128::from(original_burst)
}

/// Priority order for one round of the dynamic-quantum policy.
///
/// Threshold-qualifying processes come first (ascending arrival, ties by id)
/// so they can finish and leave the queue. The rest follow, sorted by
/// ascending arrival in round 1 and by ascending `trq - arrival` in later
/// rounds, with ties broken by ascending arrival and then id.
pub fn round_order(
    round_index: u64,
    procs: &[ProcView],
    threshold: ThresholdFraction,
) -> Vec<String> {
    let (mut verge, mut rest): (Vec<&ProcView>, Vec<&ProcView>) = procs
        .iter()
        .partition(|p| threshold_qualifies(p.remaining, p.original_burst, threshold));
    verge.sort_by(|a, b| (a.arrival, a.id.as_str()).cmp(&(b.arrival, b.id.as_str())));
    if round_index <= 1 {
        rest.sort_by(|a, b| (a.arrival, a.id.as_str()).cmp(&(b.arrival, b.id.as_str())));
    } else {
        let key = |p: &ProcView| {
            (
                i128::from(p.trq) - i128::from(p.arrival),
                p.arrival,
                p.id.clone(),
            )
        };
        rest.sort_by_key(|p| key(p));
    }
    verge
        .into_iter()
        .chain(rest)
        .map(|p| p.id.clone())
        .collect()
}

/// Mutable decision state for one simulation run.
///
/// Both the segment engine and the tick oracle drive one instance each
/// through [`PolicyState::next_dispatch`]; the state derives what is visible
/// to the policy from the workload and the live remaining bursts, so the
/// callers only track the clock and remaining time.
///
/// Calls that return `None` leave the state untouched, which lets a
/// tick-level loop poll every time unit while an event-level loop polls only
/// at dispatch boundaries, with identical outcomes.
#[derive(Debug, Clone)]
pub enum PolicyState {
    Fcfs,
    Srr(SrrState),
    Drq(DrqState),
}

impl PolicyState {
    pub fn new(config: &PolicyConfig, process_count: usize) -> Self {
        match config {
            PolicyConfig::Fcfs => Self::Fcfs,
            PolicyConfig::Srr { quantum } => Self::Srr(SrrState {
                quantum: *quantum,
                round: 1,
                served: HashSet::new(),
            }),
            PolicyConfig::Drq(params) => Self::Drq(DrqState {
                params: *params,
                round: 0,
                quantum: 0,
                plan: VecDeque::new(),
                members: Vec::new(),
                member_count: 0,
                trq: vec![0; process_count],
            }),
        }
    }

    /// Picks the next process to run at `clock`, or `None` when nothing is
    /// dispatchable yet.
    ///
    /// `remaining[i]` is the unfinished burst of `workload.processes()[i]`
    /// (0 = finished). The returned process may not have arrived yet under
    /// offline `drq`; the caller then idles until its arrival.
    pub fn next_dispatch(
        &mut self,
        clock: u64,
        workload: &Workload,
        remaining: &[u64],
    ) -> Option<Dispatch> {
        debug_assert_eq!(workload.len(), remaining.len());
        match self {
            Self::Fcfs => fcfs_dispatch(clock, workload, remaining),
            Self::Srr(state) => state.next_dispatch(clock, workload, remaining),
            Self::Drq(state) => state.next_dispatch(clock, workload, remaining),
        }
    }
}

/// Earliest arrival wins; ties go to workload order. Runs to completion.
fn fcfs_dispatch(clock: u64, workload: &Workload, remaining: &[u64]) -> Option<Dispatch> {
    let mut pick: Option<(usize, u64)> = None;
    for (i, p) in workload.iter().enumerate() {
        if remaining[i] == 0 || p.arrival > clock {
            continue;
        }
        match pick {
            Some((_, best)) if p.arrival >= best => {}
            _ => pick = Some((i, p.arrival)),
        }
    }
    pick.map(|(index, _)| Dispatch {
        index,
        max_run: remaining[index],
        round: 1,
        quantum: None,
    })
}

/// Round-based rotation state for standard round robin.
#[derive(Debug, Clone)]
pub struct SrrState {
    quantum: u64,
    round: u64,
    served: HashSet<usize>,
}

impl SrrState {
    fn next_dispatch(
        &mut self,
        clock: u64,
        workload: &Workload,
        remaining: &[u64],
    ) -> Option<Dispatch> {
        let ready: Vec<usize> = (0..workload.len())
            .filter(|&i| remaining[i] > 0 && workload.processes()[i].arrival <= clock)
            .collect();
        if ready.is_empty() {
            return None;
        }
        let mut pool: Vec<usize> = ready
            .iter()
            .copied()
            .filter(|i| !self.served.contains(i))
            .collect();
        if pool.is_empty() {
            // Every arrived, unfinished process has been served: next round.
            self.round += 1;
            self.served.clear();
            pool = ready;
        }
        let mut pick = pool[0];
        for &i in &pool[1..] {
            if workload.processes()[i].arrival < workload.processes()[pick].arrival {
                pick = i;
            }
        }
        self.served.insert(pick);
        Some(Dispatch {
            index: pick,
            max_run: self.quantum,
            round: self.round,
            quantum: Some(self.quantum),
        })
    }
}

/// Round planning and queue-wait bookkeeping for the dynamic-quantum policy.
#[derive(Debug, Clone)]
pub struct DrqState {
    params: DrqParams,
    round: u64,
    quantum: u64,
    plan: VecDeque<usize>,
    members: Vec<usize>,
    member_count: u64,
    trq: Vec<u64>,
}

impl DrqState {
    fn next_dispatch(
        &mut self,
        clock: u64,
        workload: &Workload,
        remaining: &[u64],
    ) -> Option<Dispatch> {
        if self.plan.is_empty() && !self.form_round(clock, workload, remaining) {
            return None;
        }
        let head = self.plan.pop_front().expect("round plan is non-empty");
        let rem = remaining[head];
        let burst = workload.processes()[head].burst;
        let threshold = self.params.threshold;
        let max_run = if threshold_qualifies(rem, burst, threshold) {
            // Already on the verge of completion: run it out.
            rem
        } else {
            let residue = remaining_after_round(rem, self.quantum);
            if residue > 0 && threshold_qualifies(residue, burst, threshold) {
                // A full slice would leave a qualifying residue; extending the
                // dispatch to completion saves the extra switch.
                rem
            } else {
                self.quantum
            }
        };
        if self.plan.is_empty() {
            self.close_round();
        }
        Some(Dispatch {
            index: head,
            max_run,
            round: self.round,
            quantum: Some(self.quantum),
        })
    }

    /// Plans the next round from the processes currently visible to the
    /// policy. Returns false (leaving the state untouched) when none are.
    fn form_round(&mut self, clock: u64, workload: &Workload, remaining: &[u64]) -> bool {
        let candidates: Vec<usize> = (0..workload.len())
            .filter(|&i| {
                remaining[i] > 0
                    && (self.params.mode == DrqMode::Offline
                        || workload.processes()[i].arrival <= clock)
            })
            .collect();
        if candidates.is_empty() {
            return false;
        }
        self.round += 1;
        let remainings: Vec<u64> = candidates.iter().map(|&i| remaining[i]).collect();
        self.quantum = median_quantum(&remainings).expect("candidates are non-empty");
        let views: Vec<ProcView> = candidates
            .iter()
            .map(|&i| {
                let p = &workload.processes()[i];
                ProcView {
                    id: p.id.clone(),
                    arrival: p.arrival,
                    original_burst: p.burst,
                    remaining: remaining[i],
                    trq: match self.params.trq_mode {
                        TrqMode::Formula => self.trq[i],
                        TrqMode::Measured => measured_trq(clock, p.arrival, p.burst, remaining[i]),
                    },
                }
            })
            .collect();
        let order = round_order(self.round, &views, self.params.threshold);
        self.plan = order
            .iter()
            .map(|id| {
                candidates
                    .iter()
                    .copied()
                    .find(|&i| workload.processes()[i].id == *id)
                    .expect("ordered id comes from the candidate set")
            })
            .collect();
        self.members = candidates;
        self.member_count = self.members.len() as u64;
        true
    }

    /// Settles the formula-mode queue-wait accounting for the round whose
    /// last dispatch was just issued. No later decision in the round reads
    /// trq, so closing here keeps `next_dispatch` the only mutation point.
    fn close_round(&mut self) {
        if self.params.trq_mode == TrqMode::Formula {
            for &m in &self.members {
                self.trq[m] = trq_update(self.trq[m], self.quantum, self.member_count);
            }
        }
        self.members.clear();
    }
}

/// Ready-queue wait derived from the clock: time since arrival minus CPU
/// already consumed, floored at zero (a process that has not arrived has
/// waited nothing).
fn measured_trq(clock: u64, arrival: u64, burst: u64, remaining: u64) -> u64 {
    let consumed = burst - remaining;
    clock.saturating_sub(arrival).saturating_sub(consumed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::workload::Workload;
    use proptest::prelude::*;

    fn view(id: &str, arrival: u64, original_burst: u64, remaining: u64, trq: u64) -> ProcView {
        ProcView {
            id: id.to_string(),
            arrival,
            original_burst,
            remaining,
            trq,
        }
    }

    #[test]
    fn median_matches_worked_cycles() {
        assert_eq!(median_quantum(&[5, 6, 7, 9, 2, 3]), Some(6));
        assert_eq!(median_quantum(&[1, 3]), Some(3));
        assert_eq!(median_quantum(&[7]), Some(7));
        assert_eq!(median_quantum(&[4, 8, 15]), Some(8));
        assert_eq!(median_quantum(&[]), None);
    }

    #[test]
    fn remaining_after_round_examples() {
        assert_eq!(remaining_after_round(9, 6), 3);
        assert_eq!(remaining_after_round(7, 6), 1);
        assert_eq!(remaining_after_round(2, 6), 0);
    }

    #[test]
    fn remaining_after_round_reaches_zero_in_ceil_div_rounds() {
        for remaining in 1u64..=60 {
            for quantum in 1u64..=10 {
                let mut r = remaining;
                let mut rounds = 0;
                while r > 0 {
                    r = remaining_after_round(r, quantum);
                    rounds += 1;
                }
                assert_eq!(rounds, remaining.div_ceil(quantum));
            }
        }
    }

    #[test]
    fn trq_update_examples() {
        assert_eq!(trq_update(0, 6, 6), 30);
        assert_eq!(trq_update(30, 3, 2), 33);
        for q in [1, 3, 17] {
            assert_eq!(trq_update(0, q, 1), 0);
        }
    }

    #[test]
    fn threshold_examples() {
        let four_percent = default_threshold();
        assert!(!threshold_qualifies(1, 7, four_percent));
        assert!(threshold_qualifies(4, 100, four_percent));
        assert!(!threshold_qualifies(5, 100, four_percent));
    }

    #[test]
    fn round_one_orders_by_arrival() {
        let procs: Vec<ProcView> = Workload::table1()
            .iter()
            .map(|p| view(&p.id, p.arrival, p.burst, p.burst, 0))
            .collect();
        let order = round_order(1, &procs, default_threshold());
        assert_eq!(order, ["P4", "P5", "P3", "P2", "P1", "P6"]);
    }

    #[test]
    fn later_rounds_order_by_wait_minus_arrival() {
        // Worked example, round 2: equal waits, so keys are 30-3=27 and 30-1=29.
        let procs = vec![view("P3", 3, 7, 1, 30), view("P4", 1, 9, 3, 30)];
        let order = round_order(2, &procs, default_threshold());
        assert_eq!(order, ["P3", "P4"]);
    }

    #[test]
    fn single_process_orders_alone() {
        let procs = vec![view("P9", 4, 12, 6, 17)];
        assert_eq!(round_order(3, &procs, default_threshold()), ["P9"]);
    }

    #[test]
    fn qualifiers_jump_to_the_head() {
        // P2 is at 2 of 100 (within 4%), so it leads despite arriving last;
        // the rest sort by trq - arrival (39 for P3, 40 for P1).
        let procs = vec![
            view("P1", 0, 10, 10, 40),
            view("P2", 9, 100, 2, 0),
            view("P3", 1, 10, 10, 40),
        ];
        let order = round_order(2, &procs, default_threshold());
        assert_eq!(order, ["P2", "P3", "P1"]);
    }

    #[test]
    fn equal_wait_cohort_orders_by_descending_arrival() {
        let procs = vec![
            view("A", 2, 9, 5, 12),
            view("B", 7, 9, 5, 12),
            view("C", 4, 9, 5, 12),
        ];
        let order = round_order(2, &procs, default_threshold());
        assert_eq!(order, ["B", "C", "A"]);
    }

    #[test]
    fn fcfs_dispatch_picks_earliest_arrival() {
        let w = Workload::table1();
        let mut state = PolicyState::new(&PolicyConfig::Fcfs, w.len());
        let remaining: Vec<u64> = w.iter().map(|p| p.burst).collect();
        let d = state.next_dispatch(1, &w, &remaining).unwrap();
        assert_eq!(w.processes()[d.index].id, "P4");
        assert_eq!(d.max_run, 9);
        assert_eq!(d.quantum, None);
    }

    #[test]
    fn fcfs_dispatch_none_before_first_arrival() {
        let w = Workload::table1();
        let mut state = PolicyState::new(&PolicyConfig::Fcfs, w.len());
        let remaining: Vec<u64> = w.iter().map(|p| p.burst).collect();
        assert_eq!(state.next_dispatch(0, &w, &remaining), None);
    }

    #[test]
    fn drq_offline_first_dispatch_uses_median_quantum() {
        let w = Workload::table1();
        let mut state = PolicyState::new(&PolicyConfig::drq_default(), w.len());
        let remaining: Vec<u64> = w.iter().map(|p| p.burst).collect();
        let d = state.next_dispatch(1, &w, &remaining).unwrap();
        assert_eq!(w.processes()[d.index].id, "P4");
        assert_eq!(d.max_run, 6);
        assert_eq!(d.round, 1);
        assert_eq!(d.quantum, Some(6));
    }

    #[test]
    fn drq_runs_verge_process_to_completion_first() {
        // P1 sits at 2 of 100 remaining (within 4%): it leads the round and
        // its dispatch covers the full remainder, ignoring the quantum.
        let w = Workload::new(vec![
            crate::workload::ProcessSpec::new("P1", 0, 100),
            crate::workload::ProcessSpec::new("P2", 1, 40),
        ])
        .unwrap();
        let mut state = PolicyState::new(&PolicyConfig::drq_default(), w.len());
        let d = state.next_dispatch(200, &w, &[2, 40]).unwrap();
        assert_eq!(w.processes()[d.index].id, "P1");
        assert_eq!(d.max_run, 2);
        assert_eq!(d.quantum, Some(40));
    }

    #[test]
    fn srr_round_rotation_matches_worked_trace() {
        let w = Workload::table1();
        let mut state = PolicyState::new(&PolicyConfig::Srr { quantum: 3 }, w.len());
        let mut remaining: Vec<u64> = w.iter().map(|p| p.burst).collect();

        let d = state.next_dispatch(1, &w, &remaining).unwrap();
        assert_eq!(w.processes()[d.index].id, "P4");
        remaining[d.index] -= 3;

        // After P4's slice ends at t=4, P2 (arrived exactly at 4) is visible
        // and P5 is the earliest unserved arrival.
        let d = state.next_dispatch(4, &w, &remaining).unwrap();
        assert_eq!(w.processes()[d.index].id, "P5");
        assert_eq!(d.max_run, 3);
    }

    #[test]
    fn policy_display_is_canonical() {
        assert_eq!(PolicyConfig::Fcfs.to_string(), "fcfs");
        assert_eq!(PolicyConfig::Srr { quantum: 3 }.to_string(), "srr:3");
        assert_eq!(PolicyConfig::drq_default().to_string(), "drq:offline");
        let online = PolicyConfig::Drq(DrqParams {
            mode: DrqMode::Online,
            ..DrqParams::default()
        });
        assert_eq!(online.to_string(), "drq:online");
        let custom = PolicyConfig::Drq(DrqParams {
            mode: DrqMode::Online,
            trq_mode: TrqMode::Measured,
            threshold: Ratio::new(1, 10),
        });
        assert_eq!(custom.to_string(), "drq:online:measured:t=1/10");
    }

    #[test]
    fn validate_rejects_bad_parameters() {
        assert_eq!(
            PolicyConfig::Srr { quantum: 0 }.validate(),
            Err(PolicyError::ZeroQuantum)
        );
        let bad = PolicyConfig::Drq(DrqParams {
            threshold: Ratio::new(3, 2),
            ..DrqParams::default()
        });
        assert_eq!(bad.validate(), Err(PolicyError::ThresholdOutOfRange));
        assert!(PolicyConfig::drq_default().validate().is_ok());
    }

    proptest! {
        #[test]
        fn median_is_a_member(values in prop::collection::vec(1u64..=100, 1..=25)) {
            let m = median_quantum(&values).unwrap();
            prop_assert!(values.contains(&m));
        }

        #[test]
        fn median_is_permutation_invariant(
            values in prop::collection::vec(1u64..=100, 1..=25),
            seed in any::<u64>(),
        ) {
            use rand::seq::SliceRandom;
            use rand::SeedableRng;
            let mut shuffled = values.clone();
            shuffled.shuffle(&mut rand_chacha::ChaCha8Rng::seed_from_u64(seed));
            prop_assert_eq!(median_quantum(&values), median_quantum(&shuffled));
        }

        #[test]
        fn trq_update_is_monotone(
            trq in 0u64..10_000,
            quantum in 1u64..100,
            k in 1u64..30,
            d_trq in 0u64..100,
            d_q in 0u64..10,
            d_k in 0u64..5,
        ) {
            let base = trq_update(trq, quantum, k);
            prop_assert!(trq_update(trq + d_trq, quantum, k) >= base);
            prop_assert!(trq_update(trq, quantum + d_q, k) >= base);
            prop_assert!(trq_update(trq, quantum, k + d_k) >= base);
        }

        #[test]
        fn round_order_is_a_permutation(
            specs in prop::collection::vec((0u64..=50, 1u64..=50, 0u64..=200), 1..=20),
            round in 1u64..=4,
        ) {
            let procs: Vec<ProcView> = specs
                .iter()
                .enumerate()
                .map(|(i, &(arrival, burst, trq))| {
                    let remaining = 1 + (trq % burst.max(1)).min(burst - 1);
                    view(&format!("P{}", i + 1), arrival, burst, remaining, trq)
                })
                .collect();
            let order = round_order(round, &procs, default_threshold());
            let mut expected: Vec<String> = procs.iter().map(|p| p.id.clone()).collect();
            let mut got = order.clone();
            expected.sort();
            got.sort();
            prop_assert_eq!(expected, got);
        }
    }
}
