//! Per-process and aggregate scheduling criteria, analytic cross-checks, and
//! improvement percentages.
//!
//! Averages are kept as exact rationals; nothing in this module touches
//! floating point, so equality checks against recomputed values are exact.
//! [`format_fixed2`] renders a rational at two decimal places for reports.

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::engine::{self, Schedule};
use crate::workload::Workload;

/// Exact rational used for averages and percentages.
pub type Rational = Ratio<i64>;

/// Widens a machine rational to an arbitrary-precision one. Sums of many
/// rationals (e.g. improvement columns) need this: their reduced common
/// denominator can outgrow `i64`.
pub fn widen(value: Rational) -> BigRational {
    BigRational::new(BigInt::from(*value.numer()), BigInt::from(*value.denom()))
}

/// Scheduling criteria for one process.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProcMetrics {
    pub id: String,
    pub arrival: u64,
    pub burst: u64,
    pub completion: u64,
    /// `completion - arrival`.
    pub turnaround: u64,
    /// `turnaround - burst`; never negative.
    pub waiting: u64,
}

/// Aggregate criteria over a whole simulation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Aggregates {
    pub avg_turnaround: Rational,
    pub avg_waiting: Rational,
    pub ncs: u64,
    pub makespan: u64,
}

/// A schedule together with its per-process and aggregate metrics.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimResult {
    pub schedule: Schedule,
    pub per_process: Vec<ProcMetrics>,
    pub aggregates: Aggregates,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MetricsError {
    #[error("improvement base must be positive, got {0}")]
    NonPositiveBase(Rational),

    #[error("process `{id}` arrives at {arrival}; the analytic formula assumes all arrivals are 0")]
    NonZeroArrival { id: String, arrival: u64 },

    #[error("process index {index} out of range 1..={len}")]
    IndexOutOfRange { index: usize, len: usize },
}

/// Computes per-process and aggregate metrics for a schedule produced from
/// `workload`. Metrics are listed in workload order.
///
/// # Panics
///
/// Panics if the schedule does not cover every workload process.
pub fn compute_metrics(workload: &Workload, schedule: Schedule) -> SimResult {
    let per_process: Vec<ProcMetrics> = workload
        .iter()
        .map(|p| {
            let completion = *schedule
                .completion
                .get(&p.id)
                .expect("schedule covers every workload process");
            debug_assert!(completion >= p.arrival + p.burst);
            let turnaround = completion - p.arrival;
            ProcMetrics {
                id: p.id.clone(),
                arrival: p.arrival,
                burst: p.burst,
                completion,
                turnaround,
                waiting: turnaround - p.burst,
            }
        })
        .collect();

    let n = per_process.len() as i64;
    let sum_tat: i64 = per_process.iter().map(|m| m.turnaround as i64).sum();
    let sum_wt: i64 = per_process.iter().map(|m| m.waiting as i64).sum();
    let aggregates = Aggregates {
        avg_turnaround: Rational::new(sum_tat, n),
        avg_waiting: Rational::new(sum_wt, n),
        ncs: engine::context_switches(&schedule),
        makespan: schedule.makespan(),
    };
    SimResult {
        schedule,
        per_process,
        aggregates,
    }
}

/// Completion time of the `index`-th process (1-based, dataset order) under
/// fcfs with a saturated queue: the prefix sum of bursts.
///
/// Only defined when every arrival is 0.
pub fn fcfs_completion_analytic(workload: &Workload, index: usize) -> Result<u64, MetricsError> {
    if let Some(p) = workload.iter().find(|p| p.arrival != 0) {
        return Err(MetricsError::NonZeroArrival {
            id: p.id.clone(),
            arrival: p.arrival,
        });
    }
    if index == 0 || index > workload.len() {
        return Err(MetricsError::IndexOutOfRange {
            index,
            len: workload.len(),
        });
    }
    Ok(workload.processes()[..index].iter().map(|p| p.burst).sum())
}

/// Percentage improvement of `candidate` over `base`:
/// `(base - candidate) / base * 100`. Negative when the candidate is worse.
pub fn improvement(base: Rational, candidate: Rational) -> Result<Rational, MetricsError> {
    if base <= Rational::zero() {
        return Err(MetricsError::NonPositiveBase(base));
    }
    Ok((base - candidate) / base * Rational::from_integer(100))
}

/// Renders a rational at two decimal places, rounding halves away from zero.
pub fn format_fixed2(value: Rational) -> String {
    format_fixed2_big(&widen(value))
}

/// [`format_fixed2`] for arbitrary-precision rationals.
pub fn format_fixed2_big(value: &BigRational) -> String {
    let numer = value.numer() * 100;
    let denom = value.denom().clone(); // always positive
    let cents = if numer.is_negative() {
        -((2 * -&numer + &denom) / (2 * &denom))
    } else {
        (2 * &numer + &denom) / (2 * &denom)
    };
    let sign = if cents.is_negative() { "-" } else { "" };
    let cents = cents.abs();
    let hundred = BigInt::from(100);
    format!(
        "{sign}{}.{:0>2}",
        &cents / &hundred,
        (&cents % &hundred).to_string()
    )
}
