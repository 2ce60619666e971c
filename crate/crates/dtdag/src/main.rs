//! Command-line front end.
//!
//! Exit codes: 0 success, 1 infeasible (`check` only), 2 input error,
//! 3 internal assertion. Documents go to stdout, diagnostics to stderr.

use std::panic::AssertUnwindSafe;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use num::Zero;

use dtdag::approx::{clique_cover_approx, coloring_approx, independent_set_approx, verify};
use dtdag::clique::{check_k_clique_extendable, is_clique, max_clique_approx, max_clique_exact};
use dtdag::feasibility::{check_feasible_with_stats, RelaxStats};
use dtdag::io::{
    emit_instance, parse_instance, AssignmentDoc, BenchRow, CycleDoc, InstanceMeta,
    Instrumentation, RatioDoc, ResultDocument, SelftestCheck,
};
use dtdag::lambda::{compute_lambda_with_stats, LambdaStats};
use dtdag::oracle;
use dtdag::{
    certify_lambda, compute_lambda, verify_assignment, verify_forcing_cycle, Dag, Error,
    Feasibility, Thresholds, Thresholds64,
};

#[derive(Parser)]
#[command(
    name = "dtdag",
    version,
    about = "Double-threshold digraph toolkit: representability, minimum satisfiable ratio with certificates, and ratio-parameterized optimization"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Compute the minimum satisfiable ratio lambda of an instance
    Lambda { file: PathBuf },
    /// Decide (t1, t2)-representability; exit 1 with a forcing cycle if not
    Check {
        file: PathBuf,
        /// Lower threshold, integer or rational like 3/2
        #[arg(long)]
        t1: String,
        /// Upper threshold, integer or rational like 5/2
        #[arg(long)]
        t2: String,
    },
    /// Certify lambda with a satisfying assignment plus a forcing cycle
    Certify { file: PathBuf },
    /// Maximum clique, exact or within a factor via --approx
    Clique {
        file: PathBuf,
        /// Approximation factor i (1 <= i <= lambda)
        #[arg(long)]
        approx: Option<usize>,
        /// Skip the k = 2, 3 stages and run the guaranteed stage only
        #[arg(long)]
        strict: bool,
    },
    /// Approximate maximum independent set (factor floor(lambda) + 1)
    Mis { file: PathBuf },
    /// Approximate minimum coloring (factor floor(lambda) + 1)
    Color { file: PathBuf },
    /// Approximate minimum clique cover (factor floor(lambda) + 1)
    Cover { file: PathBuf },
    /// Generate an instance and print it in the instance format
    Gen {
        /// Family: path | chain | random | colored3 | all | tight53
        #[arg(long)]
        family: String,
        #[arg(long)]
        n: Option<usize>,
        /// Edge probability for the random families
        #[arg(long, default_value_t = 0.5)]
        p: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Index into exhaustive families (family = all)
        #[arg(long, default_value_t = 0)]
        index: usize,
    },
    /// Run lambda and feasibility across sizes and report instrumentation
    Bench {
        /// Family: path | chain | random | colored3
        #[arg(long)]
        family: String,
        #[arg(long, value_delimiter = ',', required = true)]
        sizes: Vec<usize>,
        #[arg(long, default_value_t = 0.5)]
        p: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Cross-check the fast algorithms against brute-force oracles
    Selftest {
        /// Exhaustive enumeration covers all dags up to this size (max 4)
        #[arg(long, default_value_t = 4)]
        max_n: usize,
    },
}

enum CliError {
    Input(String),
    Internal(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Internal(_) => CliError::Internal(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}

impl From<dtdag::io::ParseError> for CliError {
    fn from(e: dtdag::io::ParseError) -> Self {
        CliError::Input(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match std::panic::catch_unwind(AssertUnwindSafe(|| run(cli))) {
        Ok(Ok(code)) => ExitCode::from(code),
        Ok(Err(CliError::Input(msg))) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Ok(Err(CliError::Internal(msg))) => {
            eprintln!("internal error: {msg}");
            ExitCode::from(3)
        }
        Err(_) => {
            eprintln!("internal error: assertion failed");
            ExitCode::from(3)
        }
    }
}

fn load(path: &Path) -> Result<Dag, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    Ok(parse_instance(&text)?)
}

fn emit(doc: &ResultDocument) {
    println!("{}", doc.to_json());
}

fn run(cli: Cli) -> Result<u8, CliError> {
    match cli.cmd {
        Cmd::Lambda { file } => {
            let dag = load(&file)?;
            let start = Instant::now();
            let (lambda, stats) = compute_lambda_with_stats::<i64>(&dag);
            let elapsed = start.elapsed().as_millis() as u64;
            emit(&ResultDocument::Lambda {
                instance: InstanceMeta::of(&dag),
                degenerate: stats.is_none(),
                lambda: RatioDoc::from_ratio(lambda),
                instrumentation: stats.map(|s| Instrumentation {
                    passes: s.passes,
                    table_cells: s.table_cells,
                    elapsed_ms: elapsed,
                }),
            });
            Ok(0)
        }
        Cmd::Check { file, t1, t2 } => {
            let dag = load(&file)?;
            let th = parse_thresholds(&t1, &t2)?;
            let start = Instant::now();
            let (outcome, stats) = check_feasible_with_stats(&dag, th)?;
            let instrumentation = Instrumentation {
                passes: stats.passes,
                table_cells: stats.table_cells,
                elapsed_ms: start.elapsed().as_millis() as u64,
            };
            let instance = InstanceMeta::of(&dag);
            match outcome {
                Feasibility::Feasible(alpha) => {
                    emit(&ResultDocument::Check {
                        instance,
                        t1: th.t1(),
                        t2: th.t2(),
                        feasible: true,
                        assignment: Some(AssignmentDoc::from_parts(th, &alpha)),
                        cycle: None,
                        instrumentation,
                    });
                    Ok(0)
                }
                Feasibility::Infeasible(cycle) => {
                    emit(&ResultDocument::Check {
                        instance,
                        t1: th.t1(),
                        t2: th.t2(),
                        feasible: false,
                        assignment: None,
                        cycle: Some(CycleDoc::from_cycle(&cycle)),
                        instrumentation,
                    });
                    Ok(1)
                }
            }
        }
        Cmd::Certify { file } => {
            let dag = load(&file)?;
            let start = Instant::now();
            let cert = certify_lambda::<i64>(&dag)?;
            let (_, stats) = compute_lambda_with_stats::<i64>(&dag);
            emit(&ResultDocument::Certify {
                instance: InstanceMeta::of(&dag),
                lambda: RatioDoc::from_ratio(cert.lambda),
                assignment: AssignmentDoc::from_parts(cert.thresholds, &cert.assignment),
                cycle: CycleDoc::from_cycle(&cert.cycle),
                instrumentation: Instrumentation {
                    passes: stats.map_or(0, |s| s.passes),
                    table_cells: stats.map_or(0, |s| s.table_cells),
                    elapsed_ms: start.elapsed().as_millis() as u64,
                },
            });
            Ok(0)
        }
        Cmd::Clique {
            file,
            approx,
            strict,
        } => {
            let dag = load(&file)?;
            let vertices = match approx {
                Some(factor) => max_clique_approx::<i64>(&dag, factor)?,
                None => max_clique_exact(&dag, strict),
            };
            emit(&ResultDocument::Clique {
                instance: InstanceMeta::of(&dag),
                strict,
                factor: approx,
                size: vertices.len(),
                vertices,
            });
            Ok(0)
        }
        Cmd::Mis { file } => {
            let dag = load(&file)?;
            let r = independent_set_approx::<i64>(&dag)?;
            emit(&ResultDocument::Mis {
                instance: InstanceMeta::of(&dag),
                lambda: RatioDoc::from_ratio(r.lambda),
                k: r.k,
                vertices: r.solution,
            });
            Ok(0)
        }
        Cmd::Color { file } => {
            let dag = load(&file)?;
            let r = coloring_approx::<i64>(&dag)?;
            emit(&ResultDocument::Color {
                instance: InstanceMeta::of(&dag),
                lambda: RatioDoc::from_ratio(r.lambda),
                k: r.k,
                classes: r.solution,
            });
            Ok(0)
        }
        Cmd::Cover { file } => {
            let dag = load(&file)?;
            let r = clique_cover_approx::<i64>(&dag)?;
            emit(&ResultDocument::Cover {
                instance: InstanceMeta::of(&dag),
                lambda: RatioDoc::from_ratio(r.lambda),
                k: r.k,
                cliques: r.solution,
            });
            Ok(0)
        }
        Cmd::Gen {
            family,
            n,
            p,
            seed,
            index,
        } => {
            let dag = generate(&family, n, p, seed, index)?;
            print!("{}", emit_instance(&dag));
            Ok(0)
        }
        Cmd::Bench {
            family,
            sizes,
            p,
            seed,
        } => {
            let rows = bench(&family, &sizes, p, seed)?;
            let ok = rows.iter().all(|r| r.within_bounds);
            emit(&ResultDocument::Bench { rows });
            if ok {
                Ok(0)
            } else {
                Err(CliError::Internal("instrumented pass bound violated".into()))
            }
        }
        Cmd::Selftest { max_n } => {
            let checks = selftest(max_n)?;
            let passed = checks.iter().all(|c| c.pass);
            emit(&ResultDocument::Selftest { checks, passed });
            if passed {
                Ok(0)
            } else {
                Err(CliError::Internal("self-test found mismatches".into()))
            }
        }
    }
}

/// Accepts integers or rationals `p/q`; the pair is rescaled to the smallest
/// integer thresholds with the same ratio.
fn parse_thresholds(t1: &str, t2: &str) -> Result<Thresholds64, CliError> {
    let (a, b) = parse_rational(t1)?;
    let (c, d) = parse_rational(t2)?;
    let mut x = a
        .checked_mul(d)
        .ok_or_else(|| CliError::Input("t1 too large".into()))?;
    let mut y = c
        .checked_mul(b)
        .ok_or_else(|| CliError::Input("t2 too large".into()))?;
    if x > 0 && y > 0 {
        let g = num::integer::gcd(x, y);
        x /= g;
        y /= g;
    }
    Ok(Thresholds::new(x, y)?)
}

fn parse_rational(s: &str) -> Result<(i64, i64), CliError> {
    let bad = || CliError::Input(format!("'{s}' is not an integer or rational p/q"));
    match s.split_once('/') {
        Some((p, q)) => {
            let p: i64 = p.trim().parse().map_err(|_| bad())?;
            let q: i64 = q.trim().parse().map_err(|_| bad())?;
            if q <= 0 {
                return Err(CliError::Input(format!("denominator of '{s}' must be positive")));
            }
            Ok((p, q))
        }
        None => Ok((s.trim().parse().map_err(|_| bad())?, 1)),
    }
}

fn generate(
    family: &str,
    n: Option<usize>,
    p: f64,
    seed: u64,
    index: usize,
) -> Result<Dag, CliError> {
    let need_n = || n.ok_or_else(|| CliError::Input(format!("family '{family}' needs --n")));
    let dag = match family {
        "path" => oracle::path(need_n()?)?,
        "chain" => oracle::chain_plus_isolated(need_n()?)?,
        "random" => oracle::random_dag(need_n()?, p, seed)?,
        "colored3" => oracle::random_colored3(need_n()?, p, seed)?.0,
        "all" => {
            let dags = oracle::all_dags(need_n()?)?;
            dags.get(index)
                .cloned()
                .ok_or_else(|| {
                    CliError::Input(format!("index {index} out of range ({} dags)", dags.len()))
                })?
        }
        "tight53" => oracle::tight_five_thirds(),
        other => {
            return Err(CliError::Input(format!(
                "unknown family '{other}' (path | chain | random | colored3 | all | tight53)"
            )))
        }
    };
    Ok(dag)
}

fn bench(family: &str, sizes: &[usize], p: f64, seed: u64) -> Result<Vec<BenchRow>, CliError> {
    let mut rows = Vec::new();
    for (i, &n) in sizes.iter().enumerate() {
        let dag = generate(family, Some(n), p, seed + i as u64, 0)?;
        let start = Instant::now();
        let (lambda, stats) = compute_lambda_with_stats::<i64>(&dag);
        let lambda_elapsed = start.elapsed().as_millis() as u64;
        let (lambda_passes, lambda_cells) = stats.map_or((0, 0), |s| (s.passes, s.table_cells));
        let lambda_bound = if stats.is_some() {
            LambdaStats::pass_bound(dag.n(), lambda)
        } else {
            2
        };
        let mut within = lambda_passes <= lambda_bound;
        let (mut check_passes, mut check_bound, mut check_ms) = (None, None, None);
        if !lambda.is_zero() {
            let th = Thresholds::new(*lambda.denom(), *lambda.numer())?;
            let start = Instant::now();
            let (outcome, stats) = check_feasible_with_stats(&dag, th)?;
            check_ms = Some(start.elapsed().as_millis() as u64);
            check_passes = Some(stats.passes);
            let bound = RelaxStats::pass_bound(dag.n(), th);
            check_bound = Some(bound);
            within &= stats.passes <= bound && outcome.is_feasible();
        }
        rows.push(BenchRow {
            family: family.to_string(),
            n: dag.n(),
            m: dag.m(),
            lambda: RatioDoc::from_ratio(lambda),
            lambda_passes,
            lambda_pass_bound: lambda_bound,
            lambda_table_cells: lambda_cells,
            lambda_elapsed_ms: lambda_elapsed,
            check_passes,
            check_pass_bound: check_bound,
            check_elapsed_ms: check_ms,
            within_bounds: within,
        });
    }
    Ok(rows)
}

fn selftest(max_n: usize) -> Result<Vec<SelftestCheck>, CliError> {
    let max_n = max_n.clamp(1, 4);
    let mut corpus: Vec<Dag> = Vec::new();
    for n in 1..=max_n {
        corpus.extend(oracle::all_dags(n)?);
    }
    for n in 5..=6usize {
        for k in 0..30 {
            corpus.push(oracle::random_dag(n, [0.2, 0.4, 0.6][k % 3], 7000 + k as u64)?);
        }
    }
    let mut checks = Vec::new();
    let push = |name: &str, instances: usize, mismatches: usize, checks: &mut Vec<SelftestCheck>| {
        checks.push(SelftestCheck {
            name: name.to_string(),
            instances,
            mismatches,
            pass: mismatches == 0,
        });
    };

    let mut bad = 0;
    for d in &corpus {
        let fast = compute_lambda::<i64>(d);
        if fast != oracle::brute_lambda(d)? || fast != oracle::binary_search_lambda(d) {
            bad += 1;
        }
    }
    push("lambda agreement (fast = enumeration = binary search)", corpus.len(), bad, &mut checks);

    let pairs = [(1i64, 1i64), (1, 2), (2, 3), (1, 3)];
    let mut bad = 0;
    let mut total = 0;
    for d in &corpus {
        for (a, b) in pairs {
            total += 1;
            let th = Thresholds::new(a, b)?;
            let fast = dtdag::check_feasible(d, th)?;
            let slow = oracle::brute_feasible(d, th);
            let ok = match (&fast, &slow) {
                (Feasibility::Feasible(alpha), oracle::BruteVerdict::Feasible(_)) => {
                    verify_assignment(d, th, alpha)?.is_empty()
                }
                (Feasibility::Infeasible(cycle), oracle::BruteVerdict::Infeasible) => {
                    verify_forcing_cycle::<i64>(d, cycle)? > th.ratio()
                }
                _ => false,
            };
            if !ok {
                bad += 1;
            }
        }
    }
    push("feasibility split matches oracle with valid certificates", total, bad, &mut checks);

    let mut bad = 0;
    let mut total = 0;
    for d in &corpus {
        if d.is_degenerate() {
            continue;
        }
        total += 1;
        let cert = certify_lambda::<i64>(d)?;
        let shape_ok = cert.lambda.denom() <= cert.lambda.numer()
            && cert.lambda.numer() + cert.lambda.denom() <= d.n() as i64;
        let ratio = verify_forcing_cycle::<i64>(d, &cert.cycle)?;
        // Clamped certificates carry the best cycle that exists; the t1 <= t2
        // model constraint supplies the rest of the lower bound.
        let cycle_ok = if cert.clamped {
            cert.lambda == dtdag::Ratio64::new(1, 1)
                && ratio == oracle::brute_max_forcing_ratio(d)?
        } else {
            ratio == cert.lambda
        };
        let ok = shape_ok
            && verify_assignment(d, cert.thresholds, &cert.assignment)?.is_empty()
            && cycle_ok;
        if !ok {
            bad += 1;
        }
    }
    push("lambda certificates verify on both sides", total, bad, &mut checks);

    let mut bad = 0;
    for d in &corpus {
        let fast = max_clique_exact(d, false);
        let brute = oracle::brute_max_clique(d)?;
        if !is_clique(d, &fast) || fast.len() != brute.len() {
            bad += 1;
        }
    }
    push("maximum clique matches exhaustive search", corpus.len(), bad, &mut checks);

    let mut bad = 0;
    for d in &corpus {
        let k = dtdag::lambda::clique_parameter(compute_lambda::<i64>(d));
        if !check_k_clique_extendable(d, &d.topological_sort(), k) {
            bad += 1;
        }
    }
    push("topological sorts are clique-extendable at floor(lambda) + 1", corpus.len(), bad, &mut checks);

    let mut bad = 0;
    for d in &corpus {
        let is = independent_set_approx::<i64>(d)?;
        let col = coloring_approx::<i64>(d)?;
        let cov = clique_cover_approx::<i64>(d)?;
        let feasible = verify::is_independent(d, &is.solution)
            && verify::is_proper_coloring(d, &col.solution)
            && verify::is_clique_cover(d, &cov.solution);
        let bounds = oracle::brute_independent_set(d)?.len() <= is.k * is.solution.len()
            && col.solution.len() <= col.k * oracle::brute_chromatic(d)?.len()
            && cov.solution.len() <= cov.k * oracle::brute_clique_cover(d)?.len();
        if !feasible || !bounds {
            bad += 1;
        }
    }
    push("approximations feasible and within factor", corpus.len(), bad, &mut checks);

    Ok(checks)
}
