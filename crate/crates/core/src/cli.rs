//! Command implementations behind the `mobius` binary, usable directly.
//!
//! Exit codes: 0 for success or proven optima, 2 when some solve ended with
//! bounds only, 1 for bad input or a failed verification.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::time::Duration;

use anyhow::{anyhow, bail, Context, Result};
use serde::Serialize;

use crate::certificate::{Certificate, Claim, SolveRecord, Status};
use crate::constructions::{
    build_s1, build_s1_s2, evaluate_bounds, greedy_blocking_set, BoundTable, LogBase, Quantity,
};
use crate::instance::{blocking_instance, resolve_all_instance, split_instances, CoverInstance};
use crate::metric::Vertex;
use crate::plane::{AxiomReport, CountReport, MobiusPlane, PlaneDocument, PlaneModel};
use crate::solver::{exact_min_hitting_set, greedy_cover, Budget, SolveOutcome};

/// Overrides the default solver budget, in seconds.
pub const BUDGET_ENV: &str = "MOBIUS_BUDGET_SECS";

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_BOUNDED: i32 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Problem {
    Resolve,
    Split,
    Blocking,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConstructKind {
    S1,
    S1S2,
    BlockingGreedy,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Json,
    Csv,
    Human,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Command {
    Build,
    Solve(Problem),
    Construct(ConstructKind),
    Report,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    /// One order, or the report range.
    pub qs: Vec<u32>,
    pub model: PlaneModel,
    /// Wall-clock cap; `None` takes [`default_budget`].
    pub budget: Option<Duration>,
    pub nodes: Option<u64>,
    pub output: Option<PathBuf>,
    pub format: OutputFormat,
}

/// 60 s up to order 3 and an hour beyond, unless [`BUDGET_ENV`] is set.
pub fn default_budget(q: u32) -> Result<Duration> {
    if let Ok(raw) = std::env::var(BUDGET_ENV) {
        return parse_duration(&raw).with_context(|| format!("invalid {BUDGET_ENV}"));
    }
    Ok(Duration::from_secs(if q <= 3 { 60 } else { 3600 }))
}

/// Durations like `600`, `600s`, `10m`, `1h`, `2.5s`.
pub fn parse_duration(raw: &str) -> Result<Duration> {
    let raw = raw.trim();
    let (num, scale) = match raw.char_indices().last() {
        Some((i, 's')) => (&raw[..i], 1.0),
        Some((i, 'm')) => (&raw[..i], 60.0),
        Some((i, 'h')) => (&raw[..i], 3600.0),
        _ => (raw, 1.0),
    };
    let secs: f64 = num
        .trim()
        .parse()
        .map_err(|_| anyhow!("cannot parse duration {raw:?}"))?;
    if !secs.is_finite() || secs <= 0.0 {
        bail!("duration must be positive, got {raw:?}");
    }
    Ok(Duration::from_secs_f64(secs * scale))
}

/// `3`, `2..5` (inclusive), `2..=5`, `3,4,7`. A decreasing range is empty.
pub fn parse_q_range(raw: &str) -> Result<Vec<u32>> {
    let raw = raw.trim();
    if raw.is_empty() {
        return Ok(Vec::new());
    }
    if let Some((a, b)) = raw.split_once("..") {
        let b = b.strip_prefix('=').unwrap_or(b);
        let lo: u32 = a
            .trim()
            .parse()
            .with_context(|| format!("bad range start in {raw:?}"))?;
        let hi: u32 = b
            .trim()
            .parse()
            .with_context(|| format!("bad range end in {raw:?}"))?;
        return Ok((lo..=hi).collect());
    }
    raw.split(',')
        .map(|s| s.trim().parse().with_context(|| format!("bad order {s:?}")))
        .collect()
}

pub fn build_plane(q: u32, model: PlaneModel) -> Result<MobiusPlane> {
    match model {
        PlaneModel::Miquelian => Ok(MobiusPlane::miquelian(q)?),
        PlaneModel::Order2Subsets if q == 2 => Ok(MobiusPlane::order2_subsets()),
        PlaneModel::Order2Subsets => bail!("the subset model only exists for order 2"),
        PlaneModel::Explicit => bail!("explicit planes are loaded from documents, not built"),
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct BuildOutput {
    pub document: PlaneDocument,
    pub axioms: AxiomReport,
    pub counts: CountReport,
}

impl BuildOutput {
    pub fn passed(&self) -> bool {
        self.axioms.all_passed() && self.counts.all_passed()
    }
}

pub fn cmd_build(q: u32, model: PlaneModel) -> Result<BuildOutput> {
    let plane = build_plane(q, model)?;
    Ok(BuildOutput {
        document: plane.to_document(),
        axioms: plane.verify_axioms(),
        counts: plane.verify_counts(),
    })
}

fn solve(instance: &CoverInstance, budget: Budget) -> Result<(SolveOutcome, SolveRecord)> {
    let out = exact_min_hitting_set(instance, budget, None)?;
    let rec = SolveRecord::new(instance, &out);
    Ok((out, rec))
}

/// Exact solve of `problem`; split problems solve both sides, each under
/// the full budget.
pub fn cmd_solve(problem: Problem, plane: &MobiusPlane, budget: Budget) -> Result<Certificate> {
    let cert = match problem {
        Problem::Resolve => {
            let inst = resolve_all_instance(plane);
            let (out, rec) = solve(&inst, budget)?;
            let w = rec.witness.clone();
            Certificate::new(
                plane,
                Claim::Resolving,
                inst.kind.tag(),
                out.status.into(),
                out.lower,
                w,
                vec![rec],
            )
        }
        Problem::Split => {
            let (a, b) = split_instances(plane);
            let (oa, ra) = solve(&a, budget)?;
            let (ob, rb) = solve(&b, budget)?;
            let status = if oa.is_optimal() && ob.is_optimal() {
                Status::Optimal
            } else {
                Status::Bounded
            };
            let mut w = ra.witness.clone();
            w.extend(&rb.witness);
            Certificate::new(
                plane,
                Claim::SplitResolving,
                "split",
                status,
                oa.lower + ob.lower,
                w,
                vec![ra, rb],
            )
        }
        Problem::Blocking => {
            let inst = blocking_instance(plane);
            let (out, rec) = solve(&inst, budget)?;
            let w = rec.witness.clone();
            Certificate::new(
                plane,
                Claim::Blocking,
                inst.kind.tag(),
                out.status.into(),
                out.lower,
                w,
                vec![rec],
            )
        }
    };
    Ok(cert)
}

/// A construction size compared against a closed-form bound.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundCheck {
    pub bound: String,
    pub value: f64,
    pub size: usize,
    pub holds: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct ConstructOutput {
    pub certificate: Certificate,
    pub checks: Vec<BoundCheck>,
}

impl ConstructOutput {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }
}

pub fn cmd_construct(kind: ConstructKind, plane: &MobiusPlane) -> Result<ConstructOutput> {
    let q = plane.order();
    let qf = f64::from(q);
    let table = evaluate_bounds(q);
    let mut checks = Vec::new();
    let (claim, name, witness) = match kind {
        ConstructKind::S1 => {
            let s1 = build_s1(plane, 0, None, None)?;
            let size = s1.circles.len();
            checks.push(BoundCheck {
                bound: "size = 2q-2".into(),
                value: 2.0 * qf - 2.0,
                size,
                holds: size == 2 * q as usize - 2,
            });
            (Claim::PointResolving, "s1", s1.vertices())
        }
        ConstructKind::S1S2 => {
            let c = build_s1_s2(plane)?;
            let all = c.vertices();
            if let Some(upper) = table.upper(Quantity::MetricDimension, LogBase::Natural) {
                checks.push(BoundCheck {
                    bound: "size < metric-dimension upper (ln)".into(),
                    value: upper,
                    size: all.len(),
                    holds: (all.len() as f64) < upper,
                });
            }
            if let Some(lower) = table.lower(Quantity::MetricDimension) {
                checks.push(BoundCheck {
                    bound: "size >= metric-dimension lower".into(),
                    value: lower,
                    size: all.len(),
                    holds: all.len() as f64 >= lower,
                });
            }
            (Claim::Resolving, "s1s2", all)
        }
        ConstructKind::BlockingGreedy => {
            let b = greedy_blocking_set(plane)?;
            let size = b.len();
            if let Some(upper) = table.upper(Quantity::Blocking, LogBase::Natural) {
                checks.push(BoundCheck {
                    bound: "size < blocking upper (ln)".into(),
                    value: upper,
                    size,
                    holds: (size as f64) < upper,
                });
            }
            if let Some(lower) = table.lower(Quantity::Blocking) {
                checks.push(BoundCheck {
                    bound: "size >= 2q".into(),
                    value: lower,
                    size,
                    holds: size as f64 >= lower,
                });
            }
            (
                Claim::Blocking,
                "blocking-greedy",
                b.into_iter().map(Vertex::Point).collect(),
            )
        }
    };
    let certificate = Certificate::new(
        plane,
        claim,
        name,
        Status::Constructed,
        0,
        witness,
        Vec::new(),
    );
    Ok(ConstructOutput {
        certificate,
        checks,
    })
}

/// A certified range for one optimum.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Interval {
    pub lower: usize,
    pub upper: usize,
}

impl Interval {
    fn of(out: &SolveOutcome) -> Self {
        Interval {
            lower: out.lower,
            upper: out.upper,
        }
    }

    pub fn is_exact(&self) -> bool {
        self.lower == self.upper
    }

    pub fn contains(&self, v: usize) -> bool {
        self.lower <= v && v <= self.upper
    }

    fn add(self, other: Interval) -> Interval {
        Interval {
            lower: self.lower + other.lower,
            upper: self.upper + other.upper,
        }
    }
}

impl std::fmt::Display for Interval {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_exact() {
            write!(f, "{}", self.lower)
        } else {
            write!(f, "{}..{}", self.lower, self.upper)
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ReportRow {
    pub q: u32,
    pub points: usize,
    pub circles: usize,
    pub resolving: Interval,
    pub split: Interval,
    pub split_points: Interval,
    pub split_circles: Interval,
    pub blocking: Interval,
    pub greedy_resolving: usize,
    pub greedy_blocking: usize,
    /// `|S₁ ∪ S₂|`, for orders where S₁ exists.
    pub s1s2: Option<usize>,
    pub bounds: BoundTable,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub rows: Vec<ReportRow>,
}

impl Report {
    pub fn all_exact(&self) -> bool {
        self.rows.iter().all(|r| {
            [r.resolving, r.split, r.blocking]
                .iter()
                .all(Interval::is_exact)
        })
    }

    pub fn row(&self, q: u32) -> Option<&ReportRow> {
        self.rows.iter().find(|r| r.q == q)
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from(
            "q,points,circles,resolving,split,split_points,split_circles,blocking,greedy_resolving,greedy_blocking,s1s2\n",
        );
        for r in &self.rows {
            let _ = writeln!(
                out,
                "{},{},{},{},{},{},{},{},{},{},{}",
                r.q,
                r.points,
                r.circles,
                r.resolving,
                r.split,
                r.split_points,
                r.split_circles,
                r.blocking,
                r.greedy_resolving,
                r.greedy_blocking,
                r.s1s2.map_or(String::new(), |s| s.to_string())
            );
        }
        out
    }
}

/// The reproduction table; `budget_for(q)` caps each exact solve.
pub fn cmd_report(qs: &[u32], budget_for: impl Fn(u32) -> Budget) -> Result<Report> {
    let mut rows = Vec::new();
    for &q in qs {
        let plane = MobiusPlane::miquelian(q)?;
        let budget = budget_for(q);
        let resolve = resolve_all_instance(&plane);
        let (a, b) = split_instances(&plane);
        let block = blocking_instance(&plane);
        let r = exact_min_hitting_set(&resolve, budget, None)?;
        let sa = exact_min_hitting_set(&a, budget, None)?;
        let sb = exact_min_hitting_set(&b, budget, None)?;
        let bl = exact_min_hitting_set(&block, budget, None)?;
        let s1s2 = if q >= 3 {
            Some(build_s1_s2(&plane)?.vertices().len())
        } else {
            None
        };
        rows.push(ReportRow {
            q,
            points: plane.num_points(),
            circles: plane.num_circles(),
            resolving: Interval::of(&r),
            split: Interval::of(&sa).add(Interval::of(&sb)),
            split_points: Interval::of(&sb),
            split_circles: Interval::of(&sa),
            blocking: Interval::of(&bl),
            greedy_resolving: greedy_cover(&resolve)?.len(),
            greedy_blocking: greedy_cover(&block)?.len(),
            s1s2,
            bounds: evaluate_bounds(q),
        });
    }
    Ok(Report { rows })
}

fn budget_of(config: &RunConfig, q: u32) -> Result<Budget> {
    let time = match config.budget {
        Some(t) => t,
        None => default_budget(q)?,
    };
    Ok(Budget {
        time: Some(time),
        nodes: config.nodes,
    })
}

fn single_q(config: &RunConfig) -> Result<u32> {
    match config.qs.as_slice() {
        [q] => Ok(*q),
        _ => bail!("this command takes exactly one order"),
    }
}

fn emit(config: &RunConfig, text: &str) -> Result<()> {
    match &config.output {
        Some(path) => {
            std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))
        }
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn json<T: Serialize>(value: &T) -> Result<String> {
    Ok(serde_json::to_string_pretty(value)? + "\n")
}

fn certificate_text(cert: &Certificate, format: OutputFormat) -> Result<String> {
    match format {
        OutputFormat::Human => {
            let w: Vec<String> = cert.witness.iter().map(Vertex::to_string).collect();
            Ok(format!(
                "{} q={} status={:?} size={} lower={} nodes={} elapsed={:.3}s\nwitness: {}\n",
                cert.instance,
                cert.q,
                cert.status,
                cert.upper,
                cert.lower,
                cert.nodes,
                cert.elapsed,
                w.join(" ")
            ))
        }
        _ => json(cert),
    }
}

/// Runs one command, writing its output; returns the exit code. Errors are
/// reported on stderr.
pub fn run(config: &RunConfig) -> i32 {
    match run_inner(config) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            EXIT_FAILURE
        }
    }
}

fn run_inner(config: &RunConfig) -> Result<i32> {
    match config.command {
        Command::Build => {
            let q = single_q(config)?;
            let out = cmd_build(q, config.model)?;
            let text = match config.format {
                OutputFormat::Human => format!(
                    "order {}: {} points, {} circles, axioms {}, counts {}\n",
                    q,
                    out.document.points.len(),
                    out.document.circles.len(),
                    pass(out.axioms.all_passed()),
                    pass(out.counts.all_passed())
                ),
                _ => json(&out.document)?,
            };
            emit(config, &text)?;
            if !out.passed() {
                eprintln!(
                    "plane checks failed: {}",
                    json(&(&out.axioms, &out.counts))?
                );
                return Ok(EXIT_FAILURE);
            }
            Ok(EXIT_OK)
        }
        Command::Solve(problem) => {
            let q = single_q(config)?;
            let plane = build_plane(q, config.model)?;
            let cert = cmd_solve(problem, &plane, budget_of(config, q)?)?;
            emit(config, &certificate_text(&cert, config.format)?)?;
            if let Err(e) = cert.verify(&plane) {
                eprintln!("certificate failed verification: {e}");
                return Ok(EXIT_FAILURE);
            }
            Ok(if cert.status == Status::Optimal {
                EXIT_OK
            } else {
                EXIT_BOUNDED
            })
        }
        Command::Construct(kind) => {
            let q = single_q(config)?;
            let plane = build_plane(q, config.model)?;
            let out = cmd_construct(kind, &plane)?;
            let text = match config.format {
                OutputFormat::Human => {
                    let mut t = certificate_text(&out.certificate, config.format)?;
                    for c in &out.checks {
                        let _ = writeln!(
                            t,
                            "{}: size {} vs {:.3} {}",
                            c.bound,
                            c.size,
                            c.value,
                            pass(c.holds)
                        );
                    }
                    t
                }
                _ => json(&out)?,
            };
            emit(config, &text)?;
            if let Err(e) = out.certificate.verify(&plane) {
                eprintln!("construction failed verification: {e}");
                return Ok(EXIT_FAILURE);
            }
            Ok(if out.passed() { EXIT_OK } else { EXIT_FAILURE })
        }
        Command::Report => {
            let mut budgets = Vec::new();
            for &q in &config.qs {
                budgets.push((q, budget_of(config, q)?));
            }
            let report = cmd_report(&config.qs, |q| {
                budgets
                    .iter()
                    .find(|(x, _)| *x == q)
                    .expect("budget per order")
                    .1
            })?;
            let text = match config.format {
                OutputFormat::Json => json(&report)?,
                _ => report.to_csv(),
            };
            emit(config, &text)?;
            Ok(if report.all_exact() {
                EXIT_OK
            } else {
                EXIT_BOUNDED
            })
        }
    }
}

fn pass(ok: bool) -> &'static str {
    if ok {
        "pass"
    } else {
        "FAIL"
    }
}
