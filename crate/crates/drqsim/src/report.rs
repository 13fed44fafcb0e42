//! Rendering: Gantt charts, per-run result exports, and side-by-side policy
//! comparison reports.
//!
//! Every number in rendered output is the exact rational rounded at two
//! decimal places (see [`format_fixed2`]); integers stay integers. Output is
//! byte-deterministic for fixed inputs.

use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::engine::{simulate, Schedule};
use crate::metrics::{
    compute_metrics, format_fixed2, format_fixed2_big, improvement, widen, Aggregates,
    MetricsError, Rational, SimResult,
};
use crate::policies::PolicyConfig;
use crate::workload::Workload;

/// Gantt chart flavors.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GanttStyle {
    Ascii,
    Svg,
}

/// Text formats for result and comparison documents.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Json,
    Csv,
    Markdown,
}

#[derive(Debug, Error)]
pub enum ReportError {
    #[error("comparison needs at least one dataset")]
    NoDatasets,

    #[error("dataset `{dataset}`: {source}")]
    Improvement {
        dataset: String,
        source: MetricsError,
    },
}

/// One dataset's aggregates under both policies plus the improvement of the
/// candidate over the base.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComparisonRow {
    pub dataset: String,
    pub base: Aggregates,
    pub candidate: Aggregates,
    pub improvement_turnaround: Rational,
    pub improvement_waiting: Rational,
    pub improvement_ncs: Rational,
}

/// Arithmetic means of the improvement columns. Arbitrary precision: the
/// reduced common denominator of many per-dataset percentages can exceed
/// any machine integer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ImprovementSummary {
    pub turnaround: BigRational,
    pub waiting: BigRational,
    pub ncs: BigRational,
}

/// A full comparison: one row per dataset plus the column means.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComparisonReport {
    pub base_policy: String,
    pub candidate_policy: String,
    pub rows: Vec<ComparisonRow>,
    pub summary: ImprovementSummary,
}

/// Renders a schedule as a Gantt chart.
///
/// ASCII charts are one timeline row (`|P4 |P5 |...`) with the boundary
/// timestamps beneath; SVG charts place one `rect` per segment with x scaled
/// by time. Idle gaps show as unlabeled space in both.
pub fn render_gantt(schedule: &Schedule, style: GanttStyle) -> String {
    match style {
        GanttStyle::Ascii => render_gantt_ascii(schedule),
        GanttStyle::Svg => render_gantt_svg(schedule),
    }
}

fn render_gantt_ascii(schedule: &Schedule) -> String {
    let mut bars = String::new();
    let mut times = String::new();
    let mut push_cell = |label: &str, time: u64| {
        let time = time.to_string();
        let width = label.len().max(time.len()) + 1;
        bars.push('|');
        bars.push_str(label);
        bars.push_str(&" ".repeat(width - label.len()));
        times.push_str(&time);
        times.push_str(&" ".repeat(width + 1 - time.len()));
    };

    let mut cursor = schedule.segments.first().map(|s| s.start).unwrap_or(0);
    for segment in &schedule.segments {
        if segment.start > cursor {
            push_cell("", cursor); // idle gap
        }
        push_cell(&segment.id, segment.start);
        cursor = segment.end;
    }
    bars.push('|');
    times.push_str(&cursor.to_string());
    format!("{}\n{}\n", bars, times.trim_end())
}

const SVG_SCALE: u64 = 10;
const SVG_MARGIN: u64 = 10;
const SVG_PALETTE: [&str; 10] = [
    "#4e79a7", "#f28e2b", "#e15759", "#76b7b2", "#59a14f", "#edc949", "#b07aa1", "#ff9da7",
    "#9c755f", "#bab0ac",
];

fn render_gantt_svg(schedule: &Schedule) -> String {
    let makespan = schedule.makespan();
    let width = makespan * SVG_SCALE + 2 * SVG_MARGIN;
    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    out.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{width}\" height=\"72\" \
         viewBox=\"0 0 {width} 72\" font-family=\"monospace\" font-size=\"11\">\n"
    ));

    // Color by order of first appearance so reruns stay identical.
    let mut seen: Vec<&str> = Vec::new();
    for segment in &schedule.segments {
        let color_index = match seen.iter().position(|&id| id == segment.id) {
            Some(i) => i,
            None => {
                seen.push(&segment.id);
                seen.len() - 1
            }
        };
        let x = SVG_MARGIN + segment.start * SVG_SCALE;
        let w = segment.len() * SVG_SCALE;
        out.push_str(&format!(
            "  <rect x=\"{x}\" y=\"16\" width=\"{w}\" height=\"24\" fill=\"{}\" stroke=\"#333\"/>\n",
            SVG_PALETTE[color_index % SVG_PALETTE.len()],
        ));
        out.push_str(&format!(
            "  <text x=\"{}\" y=\"32\" text-anchor=\"middle\">{}</text>\n",
            x + w / 2,
            escape_xml(&segment.id),
        ));
    }

    let mut boundaries: Vec<u64> = schedule.segments.iter().map(|s| s.start).collect();
    boundaries.push(makespan);
    boundaries.dedup();
    for t in boundaries {
        out.push_str(&format!(
            "  <text x=\"{}\" y=\"56\" text-anchor=\"middle\">{t}</text>\n",
            SVG_MARGIN + t * SVG_SCALE,
        ));
    }
    out.push_str("</svg>\n");
    out
}

fn escape_xml(text: &str) -> String {
    text.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

#[derive(Serialize, Deserialize)]
struct ResultDoc {
    policy: String,
    dataset: String,
    processes: Vec<ProcessRow>,
    aggregates: AggregatesDoc,
    gantt: Vec<SegmentDoc>,
}

#[derive(Serialize, Deserialize)]
struct ProcessRow {
    id: String,
    arrival: u64,
    burst: u64,
    completion: u64,
    turnaround: u64,
    waiting: u64,
}

#[derive(Serialize, Deserialize)]
struct AggregatesDoc {
    avg_tat: String,
    avg_wt: String,
    ncs: u64,
    makespan: u64,
}

#[derive(Serialize, Deserialize)]
struct SegmentDoc {
    id: String,
    start: u64,
    end: u64,
}

fn result_doc(result: &SimResult, policy: &str, dataset: &str) -> ResultDoc {
    ResultDoc {
        policy: policy.to_string(),
        dataset: dataset.to_string(),
        processes: result
            .per_process
            .iter()
            .map(|m| ProcessRow {
                id: m.id.clone(),
                arrival: m.arrival,
                burst: m.burst,
                completion: m.completion,
                turnaround: m.turnaround,
                waiting: m.waiting,
            })
            .collect(),
        aggregates: AggregatesDoc {
            avg_tat: format_fixed2(result.aggregates.avg_turnaround),
            avg_wt: format_fixed2(result.aggregates.avg_waiting),
            ncs: result.aggregates.ncs,
            makespan: result.aggregates.makespan,
        },
        gantt: result
            .schedule
            .segments
            .iter()
            .map(|s| SegmentDoc {
                id: s.id.clone(),
                start: s.start,
                end: s.end,
            })
            .collect(),
    }
}

/// Renders one simulation result as JSON, CSV, or markdown.
///
/// All times are integers; averages are decimal strings at two places. The
/// CSV form is one row per process plus an aggregate footer; the markdown
/// form mirrors the JSON content as tables.
pub fn export_result(
    result: &SimResult,
    policy: &str,
    dataset: &str,
    format: ReportFormat,
) -> String {
    let doc = result_doc(result, policy, dataset);
    match format {
        ReportFormat::Json => {
            let mut out = serde_json::to_string_pretty(&doc).expect("result serialization");
            out.push('\n');
            out
        }
        ReportFormat::Csv => {
            let mut out = String::from("id,arrival,burst,completion,turnaround,waiting\n");
            for p in &doc.processes {
                out.push_str(&format!(
                    "{},{},{},{},{},{}\n",
                    p.id, p.arrival, p.burst, p.completion, p.turnaround, p.waiting
                ));
            }
            out.push_str("aggregate,value\n");
            out.push_str(&format!("avg_tat,{}\n", doc.aggregates.avg_tat));
            out.push_str(&format!("avg_wt,{}\n", doc.aggregates.avg_wt));
            out.push_str(&format!("ncs,{}\n", doc.aggregates.ncs));
            out.push_str(&format!("makespan,{}\n", doc.aggregates.makespan));
            out
        }
        ReportFormat::Markdown => {
            let mut out = format!("# {} under {}\n\n", doc.dataset, doc.policy);
            out.push_str("| id | arrival | burst | completion | turnaround | waiting |\n");
            out.push_str("|---|---:|---:|---:|---:|---:|\n");
            for p in &doc.processes {
                out.push_str(&format!(
                    "| {} | {} | {} | {} | {} | {} |\n",
                    p.id, p.arrival, p.burst, p.completion, p.turnaround, p.waiting
                ));
            }
            out.push_str("\n| avg_tat | avg_wt | ncs | makespan |\n|---:|---:|---:|---:|\n");
            out.push_str(&format!(
                "| {} | {} | {} | {} |\n",
                doc.aggregates.avg_tat, doc.aggregates.avg_wt, doc.aggregates.ncs,
                doc.aggregates.makespan
            ));
            out.push_str("\n| segment | start | end |\n|---|---:|---:|\n");
            for s in &doc.gantt {
                out.push_str(&format!("| {} | {} | {} |\n", s.id, s.start, s.end));
            }
            out
        }
    }
}

/// Simulates every dataset under both policies and tabulates the candidate's
/// improvement over the base, dataset order preserved.
///
/// The summary is the arithmetic mean of the per-dataset improvement
/// percentages (not an improvement recomputed from averaged aggregates).
pub fn comparison_table(
    datasets: &[(String, Workload)],
    base: &PolicyConfig,
    candidate: &PolicyConfig,
) -> Result<ComparisonReport, ReportError> {
    if datasets.is_empty() {
        return Err(ReportError::NoDatasets);
    }
    let mut rows = Vec::with_capacity(datasets.len());
    for (name, workload) in datasets {
        let (base_schedule, _) = simulate(workload, base);
        let (candidate_schedule, _) = simulate(workload, candidate);
        let base_result = compute_metrics(workload, base_schedule);
        let candidate_result = compute_metrics(workload, candidate_schedule);
        let improve = |b: Rational, c: Rational| {
            improvement(b, c).map_err(|source| ReportError::Improvement {
                dataset: name.clone(),
                source,
            })
        };
        let b = &base_result.aggregates;
        let c = &candidate_result.aggregates;
        rows.push(ComparisonRow {
            dataset: name.clone(),
            improvement_turnaround: improve(b.avg_turnaround, c.avg_turnaround)?,
            improvement_waiting: improve(b.avg_waiting, c.avg_waiting)?,
            improvement_ncs: improve(
                Rational::from_integer(b.ncs as i64),
                Rational::from_integer(c.ncs as i64),
            )?,
            base: base_result.aggregates,
            candidate: candidate_result.aggregates,
        });
    }
    let n = BigRational::from_integer(rows.len().into());
    let mean = |pick: fn(&ComparisonRow) -> Rational| {
        rows.iter()
            .map(|row| widen(pick(row)))
            .fold(BigRational::zero(), |a, b| a + b)
            / &n
    };
    let summary = ImprovementSummary {
        turnaround: mean(|r| r.improvement_turnaround),
        waiting: mean(|r| r.improvement_waiting),
        ncs: mean(|r| r.improvement_ncs),
    };
    Ok(ComparisonReport {
        base_policy: base.to_string(),
        candidate_policy: candidate.to_string(),
        rows,
        summary,
    })
}

/// Renders a comparison report as markdown, CSV, or JSON.
pub fn render_comparison(report: &ComparisonReport, format: ReportFormat) -> String {
    match format {
        ReportFormat::Markdown => {
            let mut out = format!(
                "| dataset | {cand} avg TAT | {cand} avg WT | {cand} NCS | {base} avg TAT | \
                 {base} avg WT | {base} NCS | TAT impr % | WT impr % | NCS impr % |\n",
                cand = report.candidate_policy,
                base = report.base_policy,
            );
            out.push_str("|---|---:|---:|---:|---:|---:|---:|---:|---:|---:|\n");
            for row in &report.rows {
                out.push_str(&format!(
                    "| {} | {} | {} | {} | {} | {} | {} | {} | {} | {} |\n",
                    row.dataset,
                    format_fixed2(row.candidate.avg_turnaround),
                    format_fixed2(row.candidate.avg_waiting),
                    row.candidate.ncs,
                    format_fixed2(row.base.avg_turnaround),
                    format_fixed2(row.base.avg_waiting),
                    row.base.ncs,
                    format_fixed2(row.improvement_turnaround),
                    format_fixed2(row.improvement_waiting),
                    format_fixed2(row.improvement_ncs),
                ));
            }
            out.push_str(&format!(
                "| average |  |  |  |  |  |  | {} | {} | {} |\n",
                format_fixed2_big(&report.summary.turnaround),
                format_fixed2_big(&report.summary.waiting),
                format_fixed2_big(&report.summary.ncs),
            ));
            out
        }
        ReportFormat::Csv => {
            let mut out = String::from(
                "dataset,candidate_avg_tat,candidate_avg_wt,candidate_ncs,\
                 base_avg_tat,base_avg_wt,base_ncs,improvement_tat,improvement_wt,improvement_ncs\n",
            );
            for row in &report.rows {
                out.push_str(&format!(
                    "{},{},{},{},{},{},{},{},{},{}\n",
                    row.dataset,
                    format_fixed2(row.candidate.avg_turnaround),
                    format_fixed2(row.candidate.avg_waiting),
                    row.candidate.ncs,
                    format_fixed2(row.base.avg_turnaround),
                    format_fixed2(row.base.avg_waiting),
                    row.base.ncs,
                    format_fixed2(row.improvement_turnaround),
                    format_fixed2(row.improvement_waiting),
                    format_fixed2(row.improvement_ncs),
                ));
            }
            out.push_str(&format!(
                "average,,,,,,,{},{},{}\n",
                format_fixed2_big(&report.summary.turnaround),
                format_fixed2_big(&report.summary.waiting),
                format_fixed2_big(&report.summary.ncs),
            ));
            out
        }
        ReportFormat::Json => {
            #[derive(Serialize)]
            struct RowDoc<'a> {
                dataset: &'a str,
                candidate: AggregatesDoc,
                base: AggregatesDoc,
                improvement: ImprovementDoc,
            }
            #[derive(Serialize)]
            struct ImprovementDoc {
                tat: String,
                wt: String,
                ncs: String,
            }
            #[derive(Serialize)]
            struct ReportDoc<'a> {
                base_policy: &'a str,
                candidate_policy: &'a str,
                rows: Vec<RowDoc<'a>>,
                summary: ImprovementDoc,
            }
            let agg = |a: &Aggregates| AggregatesDoc {
                avg_tat: format_fixed2(a.avg_turnaround),
                avg_wt: format_fixed2(a.avg_waiting),
                ncs: a.ncs,
                makespan: a.makespan,
            };
            let doc = ReportDoc {
                base_policy: &report.base_policy,
                candidate_policy: &report.candidate_policy,
                rows: report
                    .rows
                    .iter()
                    .map(|row| RowDoc {
                        dataset: &row.dataset,
                        candidate: agg(&row.candidate),
                        base: agg(&row.base),
                        improvement: ImprovementDoc {
                            tat: format_fixed2(row.improvement_turnaround),
                            wt: format_fixed2(row.improvement_waiting),
                            ncs: format_fixed2(row.improvement_ncs),
                        },
                    })
                    .collect(),
                summary: ImprovementDoc {
                    tat: format_fixed2_big(&report.summary.turnaround),
                    wt: format_fixed2_big(&report.summary.waiting),
                    ncs: format_fixed2_big(&report.summary.ncs),
                },
            };
            let mut out = serde_json::to_string_pretty(&doc).expect("report serialization");
            out.push('\n');
            out
        }
    }
}
