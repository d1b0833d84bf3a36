//! Command-line front-end for `farkas-core`.
//!
//! Every command produces a [`Report`]: an exit code, line-oriented text and
//! an equivalent JSON object. [`run`] renders one of the two.

pub mod format;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use farkas_core::farkas::{
    integer_feasible, is_farkas_related, rational_feasible, Decision, FeasibilityProblem, LatticeWitness, Solution,
};
use farkas_core::graphs::{
    d_indecomposables, directed_incidence, g_indecomposables, gale_ryser_feasible, gz_indecomposables, incidence,
    landau_flow_feasible, nonbipartite_feasible, orientation_scores_violation, orientation_system,
    orientation_with_scores, signed_graphical, signed_graphical_realization, Cut, Digraph, Graph, Realization,
    Violation,
};
use farkas_core::indecomp::{enumerate_indecomposables, IndecomposablePoint};
use farkas_core::oracle::{box_size, brute_force_box, BoxSearchBudget};
use farkas_core::{Error, IntVector, Rational};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde_json::{json, Value};

use format::{GraphFile, GraphKind, MatrixFile};

pub const EXIT_YES: i32 = 0;
pub const EXIT_NO: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_PRECONDITION: i32 = 3;
pub const EXIT_INTERNAL: i32 = 4;

#[derive(Debug, Parser)]
#[command(name = "farkas", version, about = "Exact integer feasibility for Farkas-related vectors")]
pub struct Cli {
    /// Emit a JSON object instead of text.
    #[arg(long, global = true)]
    pub json: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decide whether the matrix columns are Farkas-related.
    CheckFarkas {
        /// Matrix file.
        file: PathBuf,
    },
    /// Decide integer (or rational) feasibility of a problem file.
    Solve {
        /// Matrix file with `bounds:` and `target:` sections.
        file: PathBuf,
        /// Cross-check the verdict by exhaustive search when the box is small enough.
        #[arg(long)]
        verify: bool,
        /// Largest box the exhaustive search may scan.
        #[arg(long, default_value_t = 1_000_000)]
        budget: u64,
        /// Decide rational feasibility instead.
        #[arg(long)]
        rational: bool,
    },
    /// List the indecomposable points of a matrix or graph.
    Indecomposables {
        /// Matrix or graph file.
        file: PathBuf,
        /// Use the closed forms for graph inputs.
        #[arg(long)]
        closed_form: bool,
        /// For a graph input, use the orientation system instead of the incidence matrix.
        #[arg(long)]
        orientation: bool,
    },
    /// Degree and score sequence realization.
    #[command(subcommand)]
    Realize(Realize),
}

#[derive(Debug, Subcommand)]
pub enum Realize {
    /// Edge values with prescribed degree sums on a graph (`s:` vector, optional bounds, default 0..1).
    GaleRyser {
        file: PathBuf,
    },
    /// Arc values with prescribed net outflow on a digraph (`r:` vector, optional bounds, default 0..1).
    Landau(LandauArgs),
    /// Signed degree sequence of an oriented graph, given as a nonincreasing list.
    SignedSeq {
        #[arg(allow_hyphen_values = true)]
        sequence: String,
    },
    /// Orientation of a graph with out-degrees given by its `r:` (or `s:`) vector.
    Scores {
        file: PathBuf,
    },
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct LandauArgs {
    /// Digraph file.
    pub file: Option<PathBuf>,
    /// Out-degree sequence of a tournament, e.g. "0 1 2".
    #[arg(long, allow_hyphen_values = true)]
    pub tournament: Option<String>,
}

/// The outcome of one command.
#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub exit: i32,
    pub lines: Vec<String>,
    pub json: Value,
}

impl Report {
    fn new(exit: i32, lines: Vec<String>, json: Value) -> Self {
        Report { exit, lines, json }
    }

    fn text(&self) -> String {
        let mut s = self.lines.join("\n");
        s.push('\n');
        s
    }
}

/// A failure before a verdict could be reached.
#[derive(Debug)]
pub struct Failure {
    pub exit: i32,
    pub message: String,
}

impl Failure {
    fn parse(message: impl Into<String>) -> Self {
        Failure {
            exit: EXIT_PARSE,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let exit = match e {
            Error::Dimension(_) => EXIT_PARSE,
            Error::Domain(_) | Error::Precondition(_) => EXIT_PRECONDITION,
            Error::Resource(_) | Error::Internal(_) => EXIT_INTERNAL,
        };
        Failure {
            exit,
            message: e.to_string(),
        }
    }
}

type Outcome = std::result::Result<Report, Failure>;

fn num(x: &BigInt) -> Value {
    Value::Number(x.to_string().parse().expect("integers are valid JSON numbers"))
}

fn nums(xs: &[BigInt]) -> Value {
    Value::Array(xs.iter().map(num).collect())
}

fn rat(x: &Rational) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

fn join<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

fn one_based(xs: &[usize]) -> Vec<usize> {
    xs.iter().map(|x| x + 1).collect()
}

fn read(path: &Path) -> std::result::Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::parse(format!("{}: {e}", path.display())))
}

fn read_matrix(path: &Path) -> std::result::Result<MatrixFile, Failure> {
    format::parse_matrix(&read(path)?).map_err(|e| Failure::parse(format!("{}: {e}", path.display())))
}

fn read_graph(path: &Path) -> std::result::Result<GraphFile, Failure> {
    format::parse_graph(&read(path)?).map_err(|e| Failure::parse(format!("{}: {e}", path.display())))
}

fn parse_sequence(text: &str) -> std::result::Result<Vec<BigInt>, Failure> {
    text.split(|c: char| c.is_whitespace() || c == ',')
        .filter(|t| !t.is_empty())
        .map(|t| t.parse().map_err(|_| Failure::parse(format!("expected an integer, found `{t}`"))))
        .collect()
}

fn circuit_report(exit: i32, verdict: &str, coeffs: &IntVector, support: &[usize]) -> Report {
    Report::new(
        exit,
        vec![verdict.to_string(), format!("circuit: {}", join(coeffs))],
        json!({
            "verdict": verdict.to_lowercase(),
            "farkas_related": false,
            "circuit": nums(coeffs),
            "support": one_based(support),
        }),
    )
}

pub fn check_farkas(file: &Path) -> Outcome {
    let m = read_matrix(file)?;
    Ok(match is_farkas_related(&m.columns()) {
        (true, _) => Report::new(EXIT_YES, vec!["YES".into()], json!({"verdict": "yes", "farkas_related": true})),
        (false, Some(c)) => circuit_report(EXIT_NO, "NO", &c.coeffs, &c.support),
        (false, None) => return Err(Failure::from(Error::Internal("missing circuit".into()))),
    })
}

fn problem_of(m: &MatrixFile) -> std::result::Result<FeasibilityProblem, Failure> {
    let bounds = m.bounds.as_ref().ok_or_else(|| Failure::parse("missing `bounds:` section"))?;
    let target = m.target.clone().ok_or_else(|| Failure::parse("missing `target:` section"))?;
    let (lower, upper) = bounds.iter().cloned().unzip();
    Ok(FeasibilityProblem::new(m.columns(), lower, upper, target)?)
}

fn decision_report(d: &Decision) -> Report {
    match d {
        Decision::Feasible(Solution::Integer(x)) => Report::new(
            EXIT_YES,
            vec!["FEASIBLE".into(), format!("x: {}", join(x))],
            json!({"verdict": "feasible", "x": nums(x)}),
        ),
        Decision::Feasible(Solution::Rational(x)) => {
            let xs: Vec<String> = x.iter().map(rat).collect();
            Report::new(
                EXIT_YES,
                vec!["FEASIBLE".into(), format!("x: {}", xs.join(" "))],
                json!({"verdict": "feasible", "x": xs}),
            )
        }
        Decision::InfeasibleLattice(LatticeWitness::HnfRow { row }) => Report::new(
            EXIT_NO,
            vec!["INFEASIBLE lattice".into(), format!("hnf-row: {}", row + 1)],
            json!({"verdict": "infeasible", "reason": "lattice", "hnf_row": row + 1}),
        ),
        Decision::InfeasibleLattice(LatticeWitness::OutsideSpan { normal }) => Report::new(
            EXIT_NO,
            vec!["INFEASIBLE span".into(), format!("normal: {}", join(normal))],
            json!({"verdict": "infeasible", "reason": "span", "normal": nums(normal)}),
        ),
        Decision::InfeasibleInequality(w) => Report::new(
            EXIT_NO,
            vec![
                "INFEASIBLE inequality".into(),
                format!("u: {}", join(&w.point.rep)),
                format!("lhs: {}", rat(&w.lhs)),
                format!("rhs: {}", rat(&w.rhs)),
            ],
            json!({
                "verdict": "infeasible",
                "reason": "inequality",
                "u": nums(&w.point.rep),
                "lhs": rat(&w.lhs),
                "rhs": rat(&w.rhs),
            }),
        ),
    }
}

pub fn solve(file: &Path, verify: bool, budget: u64, rational: bool) -> Outcome {
    let prob = problem_of(&read_matrix(file)?)?;
    let decision = if rational {
        rational_feasible(&prob)?
    } else {
        if let (false, Some(c)) = is_farkas_related(prob.columns()) {
            let mut r = circuit_report(EXIT_PRECONDITION, "NOT-FARKAS", &c.coeffs, &c.support);
            r.lines[0] = "ERROR columns are not Farkas-related".into();
            return Ok(r);
        }
        integer_feasible(&prob)?
    };
    let mut report = decision_report(&decision);
    if verify && !rational {
        let status = if box_size(&prob) > budget {
            "skipped"
        } else {
            let found = brute_force_box(&prob, BoxSearchBudget::new(budget)?)?;
            if found.is_some() == decision.is_feasible() {
                "agree"
            } else {
                report.exit = EXIT_INTERNAL;
                "mismatch"
            }
        };
        report.lines.push(format!("verify: {status}"));
        report.json["verify"] = json!(status);
    }
    Ok(report)
}

fn points_report(points: &[IndecomposablePoint]) -> Report {
    let mut reps: Vec<&IntVector> = points.iter().map(|p| &p.rep).collect();
    reps.sort();
    Report::new(
        EXIT_YES,
        reps.iter().map(|r| join(r)).collect(),
        json!({"points": reps.iter().map(|r| nums(r)).collect::<Vec<_>>()}),
    )
}

fn graph_of(f: &GraphFile) -> std::result::Result<Graph, Failure> {
    Ok(Graph::new(f.n, &f.edges)?)
}

fn digraph_of(f: &GraphFile) -> std::result::Result<Digraph, Failure> {
    Ok(Digraph::new(f.n, &f.edges)?)
}

pub fn indecomposables(file: &Path, closed_form: bool, orientation: bool) -> Outcome {
    let text = read(file)?;
    if !format::is_graph_text(&text) {
        if closed_form || orientation {
            return Err(Failure::parse("--closed-form and --orientation need a graph file"));
        }
        let m = format::parse_matrix(&text).map_err(|e| Failure::parse(format!("{}: {e}", file.display())))?;
        return Ok(points_report(&enumerate_indecomposables(&m.columns())?));
    }
    let f = format::parse_graph(&text).map_err(|e| Failure::parse(format!("{}: {e}", file.display())))?;
    let points = match (f.kind, orientation) {
        (GraphKind::Digraph, true) => return Err(Failure::parse("--orientation needs an undirected graph")),
        (GraphKind::Digraph, false) => {
            let d = digraph_of(&f)?;
            if closed_form {
                d_indecomposables(&d)?
            } else {
                enumerate_indecomposables(&directed_incidence(&d).columns())?
            }
        }
        (GraphKind::Graph, false) => {
            let g = graph_of(&f)?;
            if closed_form {
                g_indecomposables(&g)?
            } else {
                enumerate_indecomposables(&incidence(&g).columns())?
            }
        }
        (GraphKind::Graph, true) => {
            let g = graph_of(&f)?;
            if closed_form {
                gz_indecomposables(&g)?
            } else {
                enumerate_indecomposables(&orientation_system(&g))?
            }
        }
    };
    Ok(points_report(&points))
}

fn set_text(s: &[usize]) -> String {
    let items: Vec<String> = one_based(s).iter().map(|x| x.to_string()).collect();
    format!("{{{}}}", items.join(","))
}

fn violation_parts(v: &Violation) -> (String, Value) {
    match v {
        Violation::Balance { lhs, rhs } => (
            format!("violation: balance {lhs} != {rhs}"),
            json!({"kind": "balance", "lhs": num(lhs), "rhs": num(rhs)}),
        ),
        Violation::Parity { sum } => (
            format!("violation: parity sum {sum} is odd"),
            json!({"kind": "parity", "sum": num(sum)}),
        ),
        Violation::Cut { cut, lhs, rhs } => {
            let (text, sets) = match cut {
                Cut::Set(i) => (format!("I={}", set_text(i)), json!({"I": one_based(i)})),
                Cut::Pair(i, j) => (
                    format!("I={} J={}", set_text(i), set_text(j)),
                    json!({"I": one_based(i), "J": one_based(j)}),
                ),
            };
            (
                format!("violation: cut {text} lhs {lhs} > rhs {rhs}"),
                json!({"kind": "cut", "cut": sets, "lhs": num(lhs), "rhs": num(rhs)}),
            )
        }
    }
}

fn no_report(v: &Violation) -> Report {
    let (line, value) = violation_parts(v);
    Report::new(EXIT_NO, vec!["NO".into(), line], json!({"verdict": "no", "violation": value}))
}

fn realization_report(r: &Realization) -> Report {
    match r {
        Realization::Feasible(x) => Report::new(
            EXIT_YES,
            vec!["YES".into(), format!("x: {}", join(x))],
            json!({"verdict": "yes", "x": nums(x)}),
        ),
        Realization::Infeasible(v) => no_report(v),
    }
}

fn arcs_report(d: &Digraph) -> Report {
    let arcs: Vec<String> = d.arcs().iter().map(|(i, j)| format!("{}>{}", i + 1, j + 1)).collect();
    let pairs: Vec<[usize; 2]> = d.arcs().iter().map(|&(i, j)| [i + 1, j + 1]).collect();
    Report::new(
        EXIT_YES,
        vec!["YES".into(), format!("arcs: {}", arcs.join(" "))],
        json!({"verdict": "yes", "arcs": pairs}),
    )
}

fn edge_bounds(f: &GraphFile) -> (IntVector, IntVector) {
    match &f.bounds {
        Some(b) => b.iter().cloned().unzip(),
        None => (vec![BigInt::zero(); f.edges.len()], vec![BigInt::one(); f.edges.len()]),
    }
}

fn vector_of(f: &GraphFile, label: &str) -> std::result::Result<IntVector, Failure> {
    f.vector.clone().ok_or_else(|| Failure::parse(format!("missing `{label}:` vector")))
}

fn expect_kind(f: &GraphFile, kind: GraphKind) -> std::result::Result<(), Failure> {
    if f.kind == kind {
        Ok(())
    } else {
        Err(Failure::parse(match kind {
            GraphKind::Graph => "expected a `graph` file",
            GraphKind::Digraph => "expected a `digraph` file",
        }))
    }
}

fn scores_report(g: &Graph, r: &[BigInt]) -> Outcome {
    if let Some(v) = orientation_scores_violation(g, r)? {
        return Ok(no_report(&v));
    }
    match orientation_with_scores(g, r)? {
        Some(d) => Ok(arcs_report(&d)),
        None => Err(Failure::from(Error::Internal("score conditions hold but no orientation was built".into()))),
    }
}

pub fn realize(cmd: &Realize) -> Outcome {
    match cmd {
        Realize::GaleRyser { file } => {
            let f = read_graph(file)?;
            expect_kind(&f, GraphKind::Graph)?;
            let g = graph_of(&f)?;
            let s = vector_of(&f, "s")?;
            let (lower, upper) = edge_bounds(&f);
            let r = match g.bipartition() {
                Some(left) => gale_ryser_feasible(&g, &left, &s, &lower, &upper)?,
                None => nonbipartite_feasible(&g, &s, &lower, &upper)?,
            };
            Ok(realization_report(&r))
        }
        Realize::Landau(LandauArgs { file: Some(file), .. }) => {
            let f = read_graph(file)?;
            expect_kind(&f, GraphKind::Digraph)?;
            let d = digraph_of(&f)?;
            let r = vector_of(&f, "r")?;
            let (lower, upper) = edge_bounds(&f);
            Ok(realization_report(&landau_flow_feasible(&d, &r, &lower, &upper)?))
        }
        Realize::Landau(LandauArgs { tournament, .. }) => {
            let seq = parse_sequence(tournament.as_deref().unwrap_or_default())?;
            if seq.is_empty() {
                return Err(Failure::parse("empty score sequence"));
            }
            scores_report(&Graph::complete(seq.len()), &seq)
        }
        Realize::SignedSeq { sequence } => {
            let seq: Vec<i64> = parse_sequence(sequence)?
                .iter()
                .map(|x| i64::try_from(x).map_err(|_| Failure::parse(format!("{x} is out of range"))))
                .collect::<std::result::Result<_, _>>()?;
            if !signed_graphical(&seq)? {
                let sum: i64 = seq.iter().sum();
                let line = if sum != 0 {
                    format!("violation: sum {sum} != 0")
                } else {
                    "violation: prefix bound".to_string()
                };
                return Ok(Report::new(EXIT_NO, vec!["NO".into(), line], json!({"verdict": "no", "sum": sum})));
            }
            match signed_graphical_realization(&seq)? {
                Some(d) => Ok(arcs_report(&d)),
                None => Err(Failure::from(Error::Internal("conditions hold but no oriented graph was built".into()))),
            }
        }
        Realize::Scores { file } => {
            let f = read_graph(file)?;
            expect_kind(&f, GraphKind::Graph)?;
            let g = graph_of(&f)?;
            let r = vector_of(&f, "r")?;
            scores_report(&g, &r)
        }
    }
}

pub fn execute(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::CheckFarkas { file } => check_farkas(file),
        Command::Solve {
            file,
            verify,
            budget,
            rational,
        } => solve(file, *verify, *budget, *rational),
        Command::Indecomposables {
            file,
            closed_form,
            orientation,
        } => indecomposables(file, *closed_form, *orientation),
        Command::Realize(r) => realize(r),
    }
}

/// Parses `args`, runs the command and writes the report. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_PARSE } else { EXIT_YES };
            let _ = if e.use_stderr() {
                write!(err, "{}", e.render())
            } else {
                write!(out, "{}", e.render())
            };
            return code;
        }
    };
    match execute(&cli) {
        Ok(report) => {
            let _ = if cli.json {
                writeln!(out, "{}", report.json)
            } else {
                write!(out, "{}", report.text())
            };
            report.exit
        }
        Err(f) => {
            if cli.json {
                let _ = writeln!(out, "{}", json!({"error": f.message, "exit": f.exit}));
            }
            let _ = writeln!(err, "error: {}", f.message);
            f.exit
        }
    }
}
