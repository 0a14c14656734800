//! Corpus scanning over graph6 streams: the algebraic-connectivity
//! conjecture, the exact identity suite, containment, and pairing, each
//! emitting JSON-lines reports (header, one record per input graph, trailing
//! summary).
//!
//! Scans are parallel over input lines but deterministic: records are keyed
//! by line number and serialized in input order, and every per-record
//! computation is pure, so worker count never changes a byte of output.

use rayon::prelude::*;
use serde::Serialize;

use crate::combinatorics::binom;
use crate::graph::Graph;
use crate::identities;
use crate::spectral::{
    algebraic_connectivity, pairing_decomposition, spectrum_contains,
    token_algebraic_connectivity, token_spectrum, PAIRING_TOL,
};
use crate::token::TokenGraph;
use crate::{Error, Result, MAX_EIGEN_DIM, MAX_TOKEN_VERTICES};

/// Default tolerance for the conjecture scan |α(F_k(G)) − α(G)| ≤ tol.
pub const CONJECTURE_TOL_DEFAULT: f64 = 1e-7;

/// Default tolerance for containment scans.
pub const CONTAINMENT_TOL_DEFAULT: f64 = 1e-7;

/// Rounds to 12 significant digits for stable, diff-able report floats.
pub fn sig12(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return if x == 0.0 { 0.0 } else { x };
    }
    format!("{x:.11e}").parse().expect("scientific notation roundtrip")
}

/// Leading report line: scan parameters, so archived reports are
/// self-describing.
#[derive(Clone, Debug, Serialize)]
pub struct ScanHeader {
    pub corpus: String,
    pub op: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub h: Option<usize>,
    pub k: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tol: Option<f64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RecordStatus {
    /// Fully computed.
    Checked,
    /// The claim holds for structural reasons (disconnected input);
    /// recorded without eigencomputation.
    Trivial,
    /// Parameters or caps rule the graph out; nothing computed.
    Skipped,
}

/// Exact identity outcomes for one graph.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct IdentityFlags {
    pub gram: bool,
    pub intertwining: bool,
    pub projection: bool,
    pub general_projection: bool,
    pub adjacency_relation: bool,
    pub commutation: bool,
    pub incidence_factorization: bool,
    pub lower_recovery: bool,
    pub all_hold: bool,
}

/// One report line per input graph. Sections not applicable to the running
/// operation stay absent from the JSON.
#[derive(Clone, Debug, Serialize)]
pub struct ScanRecord {
    pub line: usize,
    pub graph6: String,
    pub n: usize,
    pub k: usize,
    pub status: RecordStatus,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha_g: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha_fk: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha_diff: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub identities: Option<IdentityFlags>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub containment_ok: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pairing_ok: Option<bool>,
    pub violation: bool,
}

impl ScanRecord {
    fn skeleton(line: usize, graph6: &str, n: usize, k: usize) -> Self {
        ScanRecord {
            line,
            graph6: graph6.to_string(),
            n,
            k,
            status: RecordStatus::Checked,
            reason: None,
            alpha_g: None,
            alpha_fk: None,
            alpha_diff: None,
            identities: None,
            containment_ok: None,
            pairing_ok: None,
            violation: false,
        }
    }

    fn skipped(mut self, reason: String) -> Self {
        self.status = RecordStatus::Skipped;
        self.reason = Some(reason);
        self
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ViolationRef {
    pub line: usize,
    pub graph6: String,
}

/// Trailing report line.
#[derive(Clone, Debug, Serialize)]
pub struct ScanSummary {
    pub graphs: usize,
    pub checked: usize,
    pub trivial: usize,
    pub skipped: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_alpha_diff: Option<f64>,
    pub violations: Vec<ViolationRef>,
}

#[derive(Clone, Debug)]
pub struct ScanReport {
    pub header: ScanHeader,
    pub records: Vec<ScanRecord>,
    pub summary: ScanSummary,
}

impl ScanReport {
    /// Serializes header, records, and summary as JSON lines.
    pub fn to_jsonl(&self) -> String {
        let mut out = String::new();
        out.push_str(&serde_json::to_string(&self.header).expect("serializable header"));
        out.push('\n');
        for r in &self.records {
            out.push_str(&serde_json::to_string(r).expect("serializable record"));
            out.push('\n');
        }
        out.push_str(&serde_json::to_string(&self.summary).expect("serializable summary"));
        out.push('\n');
        out
    }

    pub fn violation_count(&self) -> usize {
        self.summary.violations.len()
    }
}

/// Resolves the worker count: explicit request, else `TOKENLAP_JOBS`, else 0
/// (library default, one worker per core).
pub fn effective_jobs(requested: Option<usize>) -> usize {
    requested
        .or_else(|| {
            std::env::var("TOKENLAP_JOBS")
                .ok()
                .and_then(|s| s.parse().ok())
        })
        .unwrap_or(0)
}

fn parse_corpus(corpus: &str) -> Result<Vec<(usize, String, Graph)>> {
    corpus
        .lines()
        .enumerate()
        .map(|(i, line)| (i + 1, line.trim()))
        .filter(|&(_, line)| !line.is_empty())
        .map(|(lineno, line)| match Graph::parse_graph6(line) {
            Ok(g) => Ok((lineno, line.to_string(), g)),
            Err(Error::Graph6 { offset, reason }) => Err(Error::Graph6 {
                offset,
                reason: format!("line {lineno}: {reason}"),
            }),
            Err(e) => Err(e),
        })
        .collect()
}

fn run_scan<F>(
    corpus: &str,
    header: ScanHeader,
    jobs: usize,
    per_graph: F,
) -> Result<ScanReport>
where
    F: Fn(usize, &str, &Graph) -> Result<ScanRecord> + Sync,
{
    let inputs = parse_corpus(corpus)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| Error::InvalidParameter(format!("worker pool: {e}")))?;
    let records: Vec<ScanRecord> = pool.install(|| {
        inputs
            .par_iter()
            .map(|(line, g6, g)| per_graph(*line, g6, g))
            .collect::<Result<Vec<_>>>()
    })?;

    let checked = records
        .iter()
        .filter(|r| r.status == RecordStatus::Checked)
        .count();
    let trivial = records
        .iter()
        .filter(|r| r.status == RecordStatus::Trivial)
        .count();
    let skipped = records
        .iter()
        .filter(|r| r.status == RecordStatus::Skipped)
        .count();
    let max_alpha_diff = records
        .iter()
        .filter_map(|r| r.alpha_diff)
        .max_by(f64::total_cmp);
    let violations = records
        .iter()
        .filter(|r| r.violation)
        .map(|r| ViolationRef {
            line: r.line,
            graph6: r.graph6.clone(),
        })
        .collect();
    Ok(ScanReport {
        header,
        summary: ScanSummary {
            graphs: records.len(),
            checked,
            trivial,
            skipped,
            max_alpha_diff,
            violations,
        },
        records,
    })
}

/// Reason string when (n, k) rules a record out, or None when computable
/// within the eigensolver caps.
fn skip_reason(n: usize, k: usize) -> Option<String> {
    if k == 0 || k >= n {
        return Some(format!("k={k} outside 1..=n-1 for n={n}"));
    }
    match binom(n as u64, k as i64) {
        Ok(dim) if dim <= MAX_EIGEN_DIM as u64 => None,
        Ok(dim) => Some(format!(
            "token dimension {dim} exceeds eigensolver cap {MAX_EIGEN_DIM}"
        )),
        Err(_) => Some(format!("C({n},{k}) overflows")),
    }
}

/// Scans a corpus for the conjecture α(F_k(G)) = α(G).
///
/// Disconnected graphs are recorded as trivial with α = 0 on both sides.
/// Out-of-range (n, k) records are skipped. Any unparsable line aborts the
/// scan.
pub fn scan_conjecture(
    corpus: &str,
    corpus_id: &str,
    k: usize,
    tol: f64,
    jobs: usize,
) -> Result<ScanReport> {
    let header = ScanHeader {
        corpus: corpus_id.to_string(),
        op: "conjecture",
        h: None,
        k,
        tol: Some(tol),
    };
    run_scan(corpus, header, jobs, |line, g6, g| {
        let mut rec = ScanRecord::skeleton(line, g6, g.n(), k);
        if let Some(reason) = skip_reason(g.n(), k) {
            return Ok(rec.skipped(reason));
        }
        if !g.is_connected() {
            rec.status = RecordStatus::Trivial;
            rec.reason = Some("disconnected: both sides have α = 0".to_string());
            rec.alpha_g = Some(0.0);
            rec.alpha_fk = Some(0.0);
            rec.alpha_diff = Some(0.0);
            return Ok(rec);
        }
        let alpha_g = algebraic_connectivity(g)?;
        let alpha_fk = token_algebraic_connectivity(g, k)?;
        let diff = (alpha_fk - alpha_g).abs();
        rec.alpha_g = Some(sig12(alpha_g));
        rec.alpha_fk = Some(sig12(alpha_fk));
        rec.alpha_diff = Some(sig12(diff));
        rec.violation = diff > tol;
        Ok(rec)
    })
}

/// Runs every exact identity over a corpus for fixed (h, k).
pub fn run_identity_suite(
    corpus: &str,
    corpus_id: &str,
    h: usize,
    k: usize,
    jobs: usize,
) -> Result<ScanReport> {
    if h == 0 || h > k {
        return Err(Error::InvalidParameter(format!(
            "identity suite needs 1 <= h <= k, got h={h}, k={k}"
        )));
    }
    let header = ScanHeader {
        corpus: corpus_id.to_string(),
        op: "identities",
        h: Some(h),
        k,
        tol: None,
    };
    run_scan(corpus, header, jobs, |line, g6, g| {
        let n = g.n();
        let mut rec = ScanRecord::skeleton(line, g6, n, k);
        if k >= n {
            return Ok(rec.skipped(format!("k={k} outside 1..=n-1 for n={n}")));
        }
        match binom(n as u64, k as i64) {
            Ok(dim) if dim <= MAX_TOKEN_VERTICES as u64 => {}
            _ => {
                return Ok(rec.skipped(format!(
                    "token graph exceeds the {MAX_TOKEN_VERTICES}-vertex cap"
                )))
            }
        }
        let flags = IdentityFlags {
            gram: identities::verify_gram(n, k)?.holds,
            intertwining: identities::verify_intertwining(g, h, k)?.holds,
            projection: identities::verify_projection(g, k)?.holds,
            general_projection: identities::verify_general_projection(g, h, k)?.holds,
            adjacency_relation: identities::verify_adjacency_relation(g, h, k)?.holds,
            commutation: identities::verify_commutation(g, k)?.holds,
            incidence_factorization: identities::verify_incidence_factorization(g, k)?.holds,
            lower_recovery: identities::recover_lower_laplacian(g, h, k)?
                == TokenGraph::new(g, h)?.laplacian(),
            all_hold: false,
        };
        let all_hold = flags.gram
            && flags.intertwining
            && flags.projection
            && flags.general_projection
            && flags.adjacency_relation
            && flags.commutation
            && flags.incidence_factorization
            && flags.lower_recovery;
        rec.identities = Some(IdentityFlags { all_hold, ..flags });
        rec.violation = !all_hold;
        Ok(rec)
    })
}

/// Scans a corpus for spectral containment spec(F_h) ⊆ spec(F_k).
pub fn scan_containment(
    corpus: &str,
    corpus_id: &str,
    h: usize,
    k: usize,
    tol: f64,
    jobs: usize,
) -> Result<ScanReport> {
    if h == 0 || h > k {
        return Err(Error::InvalidParameter(format!(
            "containment scan needs 1 <= h <= k, got h={h}, k={k}"
        )));
    }
    let header = ScanHeader {
        corpus: corpus_id.to_string(),
        op: "containment",
        h: Some(h),
        k,
        tol: Some(tol),
    };
    run_scan(corpus, header, jobs, |line, g6, g| {
        let mut rec = ScanRecord::skeleton(line, g6, g.n(), k);
        if let Some(reason) = skip_reason(g.n(), k) {
            return Ok(rec.skipped(reason));
        }
        let sub = token_spectrum(g, h)?;
        let sup = token_spectrum(g, k)?;
        let ok = spectrum_contains(&sub, &sup, tol);
        rec.containment_ok = Some(ok);
        rec.violation = !ok;
        Ok(rec)
    })
}

/// Scans a corpus for the complement pairing: residuals within tolerance and
/// eigenvalue sums matching the Johnson closed form.
pub fn scan_pairing(corpus: &str, corpus_id: &str, k: usize, jobs: usize) -> Result<ScanReport> {
    let header = ScanHeader {
        corpus: corpus_id.to_string(),
        op: "pairing",
        h: None,
        k,
        tol: Some(PAIRING_TOL),
    };
    run_scan(corpus, header, jobs, |line, g6, g| {
        let mut rec = ScanRecord::skeleton(line, g6, g.n(), k);
        if let Some(reason) = skip_reason(g.n(), k) {
            return Ok(rec.skipped(reason));
        }
        match pairing_decomposition(g, k) {
            Ok(p) => {
                let ok = p.johnson_match && p.max_residual <= PAIRING_TOL;
                rec.pairing_ok = Some(ok);
                rec.violation = !ok;
            }
            Err(Error::PairingResidual { residual, tol }) => {
                rec.pairing_ok = Some(false);
                rec.reason = Some(format!("residual {residual:e} exceeds {tol:e}"));
                rec.violation = true;
            }
            Err(e) => return Err(e),
        }
        Ok(rec)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate::{all_graphs, connected_graphs};

    fn corpus_of(graphs: &[Graph]) -> String {
        graphs
            .iter()
            .map(|g| g.write_graph6())
            .collect::<Vec<_>>()
            .join("\n")
    }

    #[test]
    fn sig12_rounds_to_twelve_significant_digits() {
        assert_eq!(sig12(0.5857864376269049), 0.585786437627);
        assert_eq!(sig12(0.0), 0.0);
        assert_eq!(sig12(-0.0), 0.0);
        assert_eq!(sig12(4.0), 4.0);
        assert_eq!(sig12(1.0 / 3.0), 0.333333333333);
        assert_eq!(sig12(-123456.789012345), -123456.789012);
    }

    #[test]
    fn conjecture_scan_mixed_corpus() {
        // P_4, K_4, the empty 4-vertex graph (disconnected), and K_3 with
        // k = 2 valid for all but none skipped.
        let corpus = "Ch\nC~\nC?\nBw\n";
        let report = scan_conjecture(corpus, "mixed", 2, 1e-7, 1).unwrap();
        assert_eq!(report.summary.graphs, 4);
        assert_eq!(report.summary.checked, 3);
        assert_eq!(report.summary.trivial, 1);
        assert_eq!(report.summary.skipped, 0);
        assert!(report.summary.violations.is_empty());

        // Records stay in input order.
        let lines: Vec<usize> = report.records.iter().map(|r| r.line).collect();
        assert_eq!(lines, vec![1, 2, 3, 4]);
        // The disconnected graph is marked trivial with zeros.
        let trivial = &report.records[2];
        assert_eq!(trivial.status, RecordStatus::Trivial);
        assert_eq!(trivial.alpha_g, Some(0.0));
        assert_eq!(trivial.alpha_fk, Some(0.0));
        // P_4: α = 2 - √2 on both sides.
        let p4 = &report.records[0];
        assert_eq!(p4.alpha_g, Some(0.585786437627));
        assert!(p4.alpha_diff.unwrap() <= 1e-7);
    }

    #[test]
    fn skip_markers_for_out_of_range_k() {
        // K_3 cannot host k = 3.
        let report = scan_conjecture("Bw\n", "skip", 3, 1e-7, 1).unwrap();
        assert_eq!(report.summary.skipped, 1);
        assert_eq!(report.records[0].status, RecordStatus::Skipped);
        assert!(report.records[0].reason.as_deref().unwrap().contains("k=3"));
        assert!(!report.records[0].violation);
    }

    #[test]
    fn empty_corpus_gives_empty_report() {
        let report = scan_conjecture("", "empty", 2, 1e-7, 1).unwrap();
        assert_eq!(report.summary.graphs, 0);
        assert!(report.records.is_empty());
        let jsonl = report.to_jsonl();
        assert_eq!(jsonl.lines().count(), 2); // header + summary
    }

    #[test]
    fn malformed_line_aborts_with_position() {
        let err = scan_conjecture("Ch\nC!\n", "bad", 2, 1e-7, 1).unwrap_err();
        match err {
            Error::Graph6 { offset, reason } => {
                assert_eq!(offset, 1);
                assert!(reason.contains("line 2"), "{reason}");
            }
            other => panic!("expected graph6 error, got {other:?}"),
        }
    }

    #[test]
    fn determinism_across_worker_counts() {
        let corpus = corpus_of(&connected_graphs(5).unwrap());
        let one = scan_conjecture(&corpus, "c5", 2, 1e-7, 1).unwrap();
        let eight = scan_conjecture(&corpus, "c5", 2, 1e-7, 8).unwrap();
        assert_eq!(one.to_jsonl(), eight.to_jsonl());
    }

    #[test]
    fn conjecture_holds_on_connected_five_vertex_graphs() {
        let corpus = corpus_of(&connected_graphs(5).unwrap());
        let report = scan_conjecture(&corpus, "c5", 2, 1e-7, 0).unwrap();
        assert_eq!(report.summary.checked, 21);
        assert!(report.summary.violations.is_empty());
        assert!(report.summary.max_alpha_diff.unwrap() <= 1e-7);
    }

    #[test]
    fn zero_tolerance_flags_floating_point_residue() {
        // With tol = 0 any nonzero float difference counts; the invariant
        // under test is violations == records with alpha_diff > tol.
        let corpus = "Ch\nDhc\nC~\n";
        let report = scan_conjecture(corpus, "strict", 2, 0.0, 1).unwrap();
        let from_records: Vec<usize> = report
            .records
            .iter()
            .filter(|r| r.violation)
            .map(|r| r.line)
            .collect();
        let from_summary: Vec<usize> = report.summary.violations.iter().map(|v| v.line).collect();
        assert_eq!(from_records, from_summary);
        assert!(!from_summary.is_empty(), "expected some nonzero α residue");
    }

    #[test]
    fn identity_suite_over_all_four_vertex_graphs() {
        let corpus = corpus_of(&all_graphs(4).unwrap());
        let report = run_identity_suite(&corpus, "n4", 1, 2, 2).unwrap();
        assert_eq!(report.summary.graphs, 11);
        assert_eq!(report.summary.checked, 11);
        assert!(report.summary.violations.is_empty());
        for r in &report.records {
            assert!(r.identities.unwrap().all_hold);
        }
        assert!(run_identity_suite(&corpus, "n4", 2, 1, 1).is_err());
    }

    #[test]
    fn containment_scan_and_forced_failure() {
        let corpus = corpus_of(&connected_graphs(4).unwrap());
        let ok = scan_containment(&corpus, "n4", 1, 2, 1e-7, 1).unwrap();
        assert!(ok.summary.violations.is_empty());

        // F_2 has 6 vertices, F_3 only 4: containment is impossible, giving
        // a deterministic failing corpus for the exit-code contract.
        let fail = scan_containment(&corpus, "n4", 2, 3, 1e-7, 1).unwrap();
        assert_eq!(fail.violation_count(), fail.summary.checked);
        assert!(fail.violation_count() > 0);
    }

    #[test]
    fn pairing_scan_small_corpus() {
        let corpus = corpus_of(&all_graphs(4).unwrap());
        let report = scan_pairing(&corpus, "n4", 2, 1).unwrap();
        assert_eq!(report.summary.graphs, 11);
        assert!(report.summary.violations.is_empty());
        for r in &report.records {
            assert_eq!(r.pairing_ok, Some(true));
        }
    }

    #[test]
    fn jsonl_shape() {
        let report = scan_conjecture("Ch\n", "shape", 2, 1e-7, 1).unwrap();
        let jsonl = report.to_jsonl();
        let lines: Vec<&str> = jsonl.lines().collect();
        assert_eq!(lines.len(), 3);
        let header: serde_json::Value = serde_json::from_str(lines[0]).unwrap();
        assert_eq!(header["op"], "conjecture");
        assert_eq!(header["tol"], 1e-7);
        let record: serde_json::Value = serde_json::from_str(lines[1]).unwrap();
        assert_eq!(record["graph6"], "Ch");
        assert_eq!(record["status"], "checked");
        assert!(record.get("identities").is_none());
        let summary: serde_json::Value = serde_json::from_str(lines[2]).unwrap();
        assert_eq!(summary["graphs"], 1);
    }

    #[test]
    fn effective_jobs_priority() {
        // Explicit beats environment; this test avoids mutating the
        // process environment and only checks the explicit/default paths.
        assert_eq!(effective_jobs(Some(3)), 3);
        if std::env::var("TOKENLAP_JOBS").is_err() {
            assert_eq!(effective_jobs(None), 0);
        }
    }
}
