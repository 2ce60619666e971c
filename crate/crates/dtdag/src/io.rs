//! Instance file format and machine-readable result documents.
//!
//! Instances are plain text: a header `n m`, then `m` lines `u v` (the
//! directed edge `u -> v`, 0-based ids), then optional `label <id> <text>`
//! lines. Blank lines and `#` comments are skipped. Parsing and emitting
//! round-trip byte-for-byte (edges are kept in canonical sorted order).
//!
//! Results are single JSON documents, one per invocation; certificates embed
//! enough data to re-verify after a parse round-trip.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::dag::Dag;
use crate::error::Error as CoreError;
use crate::feasibility::{ForcingCycle, StepKind, Thresholds, UtilityAssignment};
use crate::{Assignment64, Ratio64, Thresholds64};

/// Parse failures, with 1-based line numbers where applicable.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}: expected {expected}, got '{got}'")]
    Malformed {
        line: usize,
        expected: &'static str,
        got: String,
    },
    #[error("line {line}: {source}")]
    BadEdge {
        line: usize,
        #[source]
        source: CoreError,
    },
    #[error("header declares {declared} edges, found {found}")]
    EdgeCountMismatch { declared: usize, found: usize },
    #[error("{0}")]
    Graph(#[from] CoreError),
    #[error("missing 'n m' header")]
    MissingHeader,
}

/// Parses the instance format, attributing edge-level failures to their line.
pub fn parse_instance(text: &str) -> Result<Dag, ParseError> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let mut edge_lines: Vec<usize> = Vec::new();
    let mut labels: Vec<(usize, String, usize)> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if header.is_none() {
            let mut it = line.split_whitespace();
            let n = parse_field(it.next(), line_no, "vertex count", line)?;
            let m = parse_field(it.next(), line_no, "edge count", line)?;
            if it.next().is_some() {
                return Err(ParseError::Malformed {
                    line: line_no,
                    expected: "header 'n m'",
                    got: line.to_string(),
                });
            }
            header = Some((n, m));
            continue;
        }
        if let Some(rest) = line.strip_prefix("label ") {
            let mut it = rest.splitn(2, char::is_whitespace);
            let v: usize = parse_field(it.next(), line_no, "label vertex id", line)?;
            let text = it.next().unwrap_or("").trim().to_string();
            labels.push((v, text, line_no));
            continue;
        }
        let mut it = line.split_whitespace();
        let u = parse_field(it.next(), line_no, "edge tail", line)?;
        let v = parse_field(it.next(), line_no, "edge head", line)?;
        if it.next().is_some() {
            return Err(ParseError::Malformed {
                line: line_no,
                expected: "edge 'u v'",
                got: line.to_string(),
            });
        }
        edges.push((u, v));
        edge_lines.push(line_no);
    }
    let (n, m) = header.ok_or(ParseError::MissingHeader)?;
    if edges.len() != m {
        return Err(ParseError::EdgeCountMismatch {
            declared: m,
            found: edges.len(),
        });
    }
    // Per-edge validation first, so the error names the offending line.
    let mut seen = std::collections::HashSet::new();
    for (&(u, v), &line) in edges.iter().zip(&edge_lines) {
        let err = if u >= n {
            Some(CoreError::VertexOutOfRange { v: u, n })
        } else if v >= n {
            Some(CoreError::VertexOutOfRange { v, n })
        } else if u == v {
            Some(CoreError::SelfLoop(u))
        } else if !seen.insert((u, v)) {
            Some(CoreError::DuplicateEdge(u, v))
        } else {
            None
        };
        if let Some(source) = err {
            return Err(ParseError::BadEdge { line, source });
        }
    }
    let mut dag = Dag::from_edges(n, &edges)?;
    for (v, text, line) in labels {
        dag = dag
            .with_label(v, text)
            .map_err(|source| ParseError::BadEdge { line, source })?;
    }
    Ok(dag)
}

fn parse_field<T: std::str::FromStr>(
    field: Option<&str>,
    line: usize,
    expected: &'static str,
    whole: &str,
) -> Result<T, ParseError> {
    field
        .and_then(|f| f.parse().ok())
        .ok_or_else(|| ParseError::Malformed {
            line,
            expected,
            got: whole.to_string(),
        })
}

/// Canonical text form; `parse_instance(emit_instance(d)) == d`.
pub fn emit_instance(dag: &Dag) -> String {
    let mut out = format!("{} {}\n", dag.n(), dag.m());
    for &(u, v) in dag.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    for (&v, label) in dag.labels() {
        out.push_str(&format!("label {v} {label}\n"));
    }
    out
}

// ---------------------------------------------------------------------------
// Result documents
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RatioDoc {
    pub num: i64,
    pub den: i64,
}

impl RatioDoc {
    pub fn from_ratio(r: Ratio64) -> Self {
        RatioDoc {
            num: *r.numer(),
            den: *r.denom(),
        }
    }

    pub fn to_ratio(self) -> Ratio64 {
        Ratio64::new(self.num, self.den)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceMeta {
    pub n: usize,
    pub m: usize,
}

impl InstanceMeta {
    pub fn of(dag: &Dag) -> Self {
        InstanceMeta {
            n: dag.n(),
            m: dag.m(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Instrumentation {
    pub passes: usize,
    pub table_cells: usize,
    pub elapsed_ms: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AssignmentDoc {
    pub t1: i64,
    pub t2: i64,
    pub alpha: Vec<i64>,
}

impl AssignmentDoc {
    pub fn from_parts(th: Thresholds64, alpha: &Assignment64) -> Self {
        AssignmentDoc {
            t1: th.t1(),
            t2: th.t2(),
            alpha: alpha.values().to_vec(),
        }
    }

    pub fn to_parts(&self) -> Result<(Thresholds64, Assignment64), CoreError> {
        Ok((
            Thresholds::new(self.t1, self.t2)?,
            UtilityAssignment::new(self.alpha.clone()),
        ))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StepDoc {
    Edge,
    Hop,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycleStepDoc {
    pub vertex: usize,
    pub step: StepDoc,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycleDoc {
    pub steps: Vec<CycleStepDoc>,
    pub edges: usize,
    pub hops: usize,
    pub ratio: RatioDoc,
}

impl CycleDoc {
    pub fn from_cycle(cycle: &ForcingCycle) -> Self {
        CycleDoc {
            steps: cycle
                .steps()
                .iter()
                .map(|&(vertex, kind)| CycleStepDoc {
                    vertex,
                    step: match kind {
                        StepKind::Edge => StepDoc::Edge,
                        StepKind::Hop => StepDoc::Hop,
                    },
                })
                .collect(),
            edges: cycle.edge_count(),
            hops: cycle.hop_count(),
            ratio: RatioDoc::from_ratio(cycle.ratio()),
        }
    }

    pub fn to_cycle(&self) -> ForcingCycle {
        ForcingCycle::new(
            self.steps
                .iter()
                .map(|s| {
                    (
                        s.vertex,
                        match s.step {
                            StepDoc::Edge => StepKind::Edge,
                            StepDoc::Hop => StepKind::Hop,
                        },
                    )
                })
                .collect(),
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BenchRow {
    pub family: String,
    pub n: usize,
    pub m: usize,
    pub lambda: RatioDoc,
    pub lambda_passes: usize,
    pub lambda_pass_bound: usize,
    pub lambda_table_cells: usize,
    pub lambda_elapsed_ms: u64,
    /// Feasibility run at the lambda thresholds; absent for degenerate dags.
    pub check_passes: Option<usize>,
    pub check_pass_bound: Option<usize>,
    pub check_elapsed_ms: Option<u64>,
    pub within_bounds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SelftestCheck {
    pub name: String,
    pub instances: usize,
    pub mismatches: usize,
    pub pass: bool,
}

/// One structured document per CLI invocation, tagged by subcommand.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "command", rename_all = "snake_case")]
pub enum ResultDocument {
    Lambda {
        instance: InstanceMeta,
        degenerate: bool,
        lambda: RatioDoc,
        instrumentation: Option<Instrumentation>,
    },
    Check {
        instance: InstanceMeta,
        t1: i64,
        t2: i64,
        feasible: bool,
        assignment: Option<AssignmentDoc>,
        cycle: Option<CycleDoc>,
        instrumentation: Instrumentation,
    },
    Certify {
        instance: InstanceMeta,
        lambda: RatioDoc,
        assignment: AssignmentDoc,
        cycle: CycleDoc,
        instrumentation: Instrumentation,
    },
    Clique {
        instance: InstanceMeta,
        strict: bool,
        factor: Option<usize>,
        vertices: Vec<usize>,
        size: usize,
    },
    Mis {
        instance: InstanceMeta,
        lambda: RatioDoc,
        k: usize,
        vertices: Vec<usize>,
    },
    Color {
        instance: InstanceMeta,
        lambda: RatioDoc,
        k: usize,
        classes: Vec<Vec<usize>>,
    },
    Cover {
        instance: InstanceMeta,
        lambda: RatioDoc,
        k: usize,
        cliques: Vec<Vec<usize>>,
    },
    Bench {
        rows: Vec<BenchRow>,
    },
    Selftest {
        checks: Vec<SelftestCheck>,
        passed: bool,
    },
}

impl ResultDocument {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents serialize")
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::feasibility::{verify_assignment, verify_forcing_cycle};
    use crate::oracle;

    #[test]
    fn emit_matches_format_definition() {
        let p3 = oracle::path(3).unwrap();
        assert_eq!(emit_instance(&p3), "3 2\n0 1\n1 2\n");
    }

    #[test]
    fn parse_emit_round_trip() {
        let d = oracle::random_dag(7, 0.4, 99)
            .unwrap()
            .with_label(0, "source")
            .unwrap();
        let text = emit_instance(&d);
        let back = parse_instance(&text).unwrap();
        assert_eq!(back, d);
        assert_eq!(emit_instance(&back), text);
    }

    #[test]
    fn parse_reports_line_numbers() {
        match parse_instance("2 1\n0 0\n") {
            Err(ParseError::BadEdge { line, source }) => {
                assert_eq!(line, 2);
                assert_eq!(source, CoreError::SelfLoop(0));
            }
            other => panic!("expected self-loop at line 2, got {other:?}"),
        }
        match parse_instance("2 1\nx y\n") {
            Err(ParseError::Malformed { line, .. }) => assert_eq!(line, 2),
            other => panic!("expected malformed line, got {other:?}"),
        }
        match parse_instance("2 2\n0 1\n") {
            Err(ParseError::EdgeCountMismatch { declared, found }) => {
                assert_eq!((declared, found), (2, 1));
            }
            other => panic!("expected count mismatch, got {other:?}"),
        }
    }

    #[test]
    fn parse_rejects_cycles_with_witness() {
        let err = parse_instance("2 2\n0 1\n1 0\n").unwrap_err();
        match err {
            ParseError::Graph(CoreError::CycleDetected(cycle)) => {
                assert!(!cycle.is_empty());
            }
            other => panic!("expected cycle, got {other:?}"),
        }
    }

    #[test]
    fn comments_and_blanks_are_skipped() {
        let d = parse_instance("# a path\n\n3 2\n0 1\n# middle\n1 2\n").unwrap();
        assert_eq!(d.edges(), &[(0, 1), (1, 2)]);
    }

    #[test]
    fn certificate_documents_reverify_after_round_trip() {
        let p4 = oracle::path(4).unwrap();
        let cert = crate::certify_lambda::<i64>(&p4).unwrap();
        let doc = ResultDocument::Certify {
            instance: InstanceMeta::of(&p4),
            lambda: RatioDoc::from_ratio(cert.lambda),
            assignment: AssignmentDoc::from_parts(cert.thresholds, &cert.assignment),
            cycle: CycleDoc::from_cycle(&cert.cycle),
            instrumentation: Instrumentation {
                passes: 0,
                table_cells: 0,
                elapsed_ms: 0,
            },
        };
        let json = doc.to_json();
        let back = ResultDocument::from_json(&json).unwrap();
        assert_eq!(back, doc);
        if let ResultDocument::Certify {
            assignment, cycle, ..
        } = back
        {
            let (th, alpha) = assignment.to_parts().unwrap();
            assert!(verify_assignment(&p4, th, &alpha).unwrap().is_empty());
            let fc = cycle.to_cycle();
            assert_eq!(
                verify_forcing_cycle::<i64>(&p4, &fc).unwrap(),
                Ratio64::new(3, 1)
            );
        } else {
            unreachable!()
        }
    }
}
