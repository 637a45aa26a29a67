//! Deterministic analysis reports.
//!
//! [`AnalysisReport`] gathers everything the library can say about one
//! matrix: verification status, the commuting-square check, the equivalence
//! fingerprint, the second relative commutant with its partition, higher
//! commutant dimensions on request, and block-structure results when a
//! composition was analyzed. Serialization is byte-stable for fixed input,
//! tolerance and version: struct field order fixes the JSON key order, maps
//! are ordered, and floats print in shortest-roundtrip form. Timings are
//! excluded unless explicitly requested, since they would break stability.

use std::collections::BTreeMap;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::commutants::{
    relative_commutant_dim, relative_commutant_dim_forced, second_commutant, Partition,
};
use crate::error::Result;
use crate::hadamard::{equivalence_fingerprint, fingerprint_digits, fingerprint_hash, HadamardMatrix};
use crate::tower::verify_commuting_square;

/// Summary of the commuting-square verification.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CommutingSquareSummary {
    pub passed: bool,
    pub worst_defect: f64,
    pub irreducible: bool,
    pub intersection_dim: usize,
}

/// The second relative commutant: dimension and the partition of the
/// `n²` graph vertices (1-based labels, blocks sorted, smallest first).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SecondSummary {
    pub dim: usize,
    pub partition: Vec<Vec<usize>>,
}

/// A higher relative commutant: dimension plus the eigenvalue-gap evidence
/// behind the rank decision.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HigherSummary {
    pub dim: usize,
    /// Ratio between the smallest kept and largest discarded eigenvalue;
    /// absent when the Gram matrix had no kernel or was entirely zero.
    pub gap: Option<f64>,
    pub ambiguous: bool,
}

/// Block-structure results, present when a composition was analyzed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DitaSummary {
    /// `[n, m, k]` of the verified layout.
    pub shape: [usize; 3],
    /// Bisch projection membership in the second relative commutant.
    pub membership: bool,
    /// Whether the intermediate decomposition closed forms held.
    pub intermediate_ok: bool,
}

/// Full analysis of one matrix. Field order is the JSON key order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub n: usize,
    /// Where the matrix came from: a file path or a family with parameters.
    pub source: String,
    pub is_hadamard: bool,
    pub commuting_square: CommutingSquareSummary,
    /// Hex digest of the rounded fingerprint multiset.
    pub fingerprint_hash: String,
    pub second: SecondSummary,
    /// Keyed by order (`"3"`, `"4"`); absent below order 3.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub higher: Option<BTreeMap<String, HigherSummary>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dita: Option<DitaSummary>,
    pub tool_version: String,
    pub tol: f64,
    /// Stage durations in seconds; only on request, as they vary run to run.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings: Option<BTreeMap<String, f64>>,
}

/// Options for [`build_report`].
#[derive(Debug, Clone)]
pub struct ReportOptions {
    /// Highest relative-commutant order to compute (2, 3 or 4).
    pub max_order: usize,
    /// Override size guards and ambiguous-rank bailouts for orders 3/4.
    pub force: bool,
    /// Record per-stage durations.
    pub with_timings: bool,
}

impl Default for ReportOptions {
    fn default() -> Self {
        ReportOptions { max_order: 2, force: false, with_timings: false }
    }
}

/// Runs the full analysis pipeline on a certified matrix. `source` is
/// recorded verbatim. Orders above 2 propagate size-guard and
/// ambiguous-rank errors unless `force` is set. The `dita` field is left
/// empty; composition analyses fill it in themselves.
pub fn build_report(h: &HadamardMatrix, source: &str, opts: &ReportOptions) -> Result<AnalysisReport> {
    let mut timings = BTreeMap::new();
    let clock = Instant::now();
    let square = verify_commuting_square(h);
    let mut mark = stage(&mut timings, "commuting_square", clock, opts.with_timings);

    let digits = fingerprint_digits(h.tol());
    let hash = fingerprint_hash(&equivalence_fingerprint(h), digits);
    mark = stage(&mut timings, "fingerprint", mark, opts.with_timings);

    let sc = second_commutant(h);
    mark = stage(&mut timings, "second", mark, opts.with_timings);

    let mut higher = BTreeMap::new();
    for order in 3..=opts.max_order.min(4) {
        let dim = if opts.force {
            relative_commutant_dim_forced(h, order)?
        } else {
            relative_commutant_dim(h, order)?
        };
        higher.insert(
            order.to_string(),
            HigherSummary { dim: dim.dim, gap: dim.gap.gap_ratio, ambiguous: dim.gap.ambiguous },
        );
        mark = stage(&mut timings, &format!("order{order}"), mark, opts.with_timings);
    }
    let _ = mark;

    Ok(AnalysisReport {
        n: h.size(),
        source: source.to_string(),
        is_hadamard: true,
        commuting_square: CommutingSquareSummary {
            passed: square.passed,
            worst_defect: square.worst_defect,
            irreducible: square.irreducible,
            intersection_dim: square.intersection_dim,
        },
        fingerprint_hash: hash,
        second: SecondSummary { dim: sc.dim, partition: sc.partition.blocks().to_vec() },
        higher: if higher.is_empty() { None } else { Some(higher) },
        dita: None,
        tool_version: env!("CARGO_PKG_VERSION").to_string(),
        tol: h.tol(),
        timings: if opts.with_timings { Some(timings) } else { None },
    })
}

fn stage(timings: &mut BTreeMap<String, f64>, name: &str, since: Instant, keep: bool) -> Instant {
    if keep {
        timings.insert(name.to_string(), since.elapsed().as_secs_f64());
    }
    Instant::now()
}

/// Output format of [`write_report`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Json,
    Text,
}

/// Renders a report. JSON uses the stable schema; text renders the
/// partition in set notation, one block after another.
pub fn write_report(report: &AnalysisReport, format: ReportFormat) -> String {
    match format {
        ReportFormat::Json => {
            let mut out = serde_json::to_string_pretty(report).expect("report serializes");
            out.push('\n');
            out
        }
        ReportFormat::Text => render_text(report),
    }
}

fn render_text(report: &AnalysisReport) -> String {
    use std::fmt::Write;
    let mut out = String::new();
    let _ = writeln!(out, "matrix: {} (n = {})", report.source, report.n);
    let _ = writeln!(
        out,
        "hadamard: {} at tol {:e}",
        if report.is_hadamard { "yes" } else { "no" },
        report.tol
    );
    let sq = &report.commuting_square;
    let _ = writeln!(
        out,
        "commuting square: {} (worst defect {:.3e}, {}, intersection dim {})",
        if sq.passed { "pass" } else { "FAIL" },
        sq.worst_defect,
        if sq.irreducible { "irreducible" } else { "reducible" },
        sq.intersection_dim
    );
    let _ = writeln!(out, "fingerprint: {}", report.fingerprint_hash);
    let partition = Partition::new(report.second.partition.clone());
    let _ = writeln!(out, "second relative commutant: dim {}", report.second.dim);
    let _ = writeln!(out, "  partition {partition}");
    if let Some(higher) = &report.higher {
        for (order, h) in higher {
            let gap = match h.gap {
                Some(g) => format!("{g:.3e}"),
                None => "-".to_string(),
            };
            let flag = if h.ambiguous { ", AMBIGUOUS" } else { "" };
            let _ = writeln!(out, "order-{order} relative commutant: dim {} (gap {gap}{flag})", h.dim);
        }
    }
    if let Some(dita) = &report.dita {
        let _ = writeln!(
            out,
            "block structure: shape ({}, {}, {}), membership {}, intermediate {}",
            dita.shape[0],
            dita.shape[1],
            dita.shape[2],
            if dita.membership { "yes" } else { "no" },
            if dita.intermediate_ok { "ok" } else { "FAIL" }
        );
    }
    let _ = writeln!(out, "tool version {}", report.tool_version);
    out
}
