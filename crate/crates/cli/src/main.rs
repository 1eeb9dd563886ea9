//! `graphvn`: classify weighted graphs, evaluate moments and run the
//! acceptance suite. Reports are JSON on stdout; diagnostics go to stderr.
//!
//! Exit status: 0 on success, 1 for invalid input, 2 when a computation
//! fails or a requested check does not hold.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use graphvn::classify::{self, ClassifyOptions};
use graphvn::fock;
use graphvn::graph::{self, GraphDocument, VertexId, WeightedGraph};
use graphvn::lattice::{self, TracialData};
use graphvn::moments::{self, Word};
use graphvn::report::{
    ClassifyJson, EigenJson, FloatJson, GroupJson, MomentJson, StateJson, SurdJson, TlCheckJson,
    ValidateJson, SCHEMA,
};
use graphvn::selftest;
use graphvn::tl::{self, Pointed};

#[derive(Parser)]
#[command(
    name = "graphvn",
    version,
    about = "Weighted-graph von Neumann algebra toolkit"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct BaseArg {
    /// Base vertex of the state (default: the document's `base`, else the
    /// base-loop rule).
    #[arg(long)]
    base: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Check the weighting axioms and list every violation.
    Validate { file: PathBuf },
    /// Report H, the tracial state, the diffuse part and the atoms.
    Classify {
        file: PathBuf,
        /// Divide all masses by the total state.
        #[arg(long)]
        normalize: bool,
        #[command(flatten)]
        base: BaseArg,
    },
    /// Report the loop-weight group H in Hermite normal form.
    CycleGroup { file: PathBuf },
    /// Report the tracial subgraph, vertex state and edge eigenvalues.
    State {
        file: PathBuf,
        #[command(flatten)]
        base: BaseArg,
    },
    /// Evaluate φ on a word exactly and cross-check it in the Fock space.
    Moment {
        file: PathBuf,
        /// Comma-separated edge ids, `*` marking an adjoint, e.g. `e1,e1^op*`.
        #[arg(long, allow_hyphen_values = true)]
        word: String,
        /// Restrict to the corner at this vertex.
        #[arg(long)]
        vertex: Option<String>,
        #[arg(long, default_value_t = 6)]
        depth: usize,
        #[arg(long, default_value_t = 1e-9, value_parser = positive_float)]
        tol: f64,
        /// Write the Fock basis as `index<TAB>path` lines to this file.
        #[arg(long)]
        dump_basis: Option<PathBuf>,
        #[command(flatten)]
        base: BaseArg,
    },
    /// Check φ(Y_e Q) = λ_e φ(Q Y_e) for one edge and word.
    EigenCheck {
        file: PathBuf,
        #[arg(long)]
        edge: String,
        #[arg(long, default_value = "")]
        word: String,
        #[command(flatten)]
        base: BaseArg,
    },
    /// Calibrate and verify the Temperley-Lieb inclusion on two balanced graphs.
    TlCheck {
        first: PathBuf,
        second: PathBuf,
        #[arg(long, default_value_t = 3)]
        max_n: usize,
        /// Base vertex in the first graph.
        #[arg(long)]
        v1: Option<String>,
        /// Base vertex in the second graph.
        #[arg(long)]
        v2: Option<String>,
    },
    /// Run the nine acceptance checks.
    Selftest {
        #[arg(long, default_value_t = selftest::DEFAULT_SEED)]
        seed: u64,
    },
}

fn positive_float(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(x) if x > 0.0 && x.is_finite() => Ok(x),
        _ => Err(format!("`{s}` is not a positive number")),
    }
}

/// A failure with its exit status.
struct Failure {
    code: u8,
    message: String,
}

impl From<graphvn::Error> for Failure {
    fn from(e: graphvn::Error) -> Self {
        let mut message = e.to_string();
        if let graphvn::Error::Invalid(violations) = &e {
            for v in violations {
                message.push_str(&format!("\n  {v}"));
            }
        }
        Self {
            code: if e.is_input_error() { 1 } else { 2 },
            message,
        }
    }
}

fn input_failure(message: String) -> Failure {
    Failure { code: 1, message }
}

fn check_failure(message: &str) -> Failure {
    Failure {
        code: 2,
        message: message.to_string(),
    }
}

type Outcome = Result<(), Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path)
        .map_err(|e| input_failure(format!("cannot read {}: {e}", path.display())))
}

fn load(path: &Path) -> Result<WeightedGraph, Failure> {
    Ok(WeightedGraph::from_json(&read(path)?)?)
}

fn emit<T: Serialize>(value: &T) {
    let text = serde_json::to_string_pretty(value).expect("reports serialize");
    // A closed pipe downstream is not an error of ours.
    let _ = writeln!(std::io::stdout().lock(), "{text}");
}

fn base_vertex(graph: &WeightedGraph, arg: &BaseArg) -> Result<Option<VertexId>, Failure> {
    Ok(match &arg.base {
        Some(name) => Some(graph.vertex(name)?),
        None => graph.document_base(),
    })
}

fn tracial_data(graph: &WeightedGraph, arg: &BaseArg) -> Result<TracialData, Failure> {
    let options = ClassifyOptions {
        normalize: false,
        base: base_vertex(graph, arg)?,
    };
    Ok(classify::classify_with(graph, &options)?.tracial)
}

fn validate(file: &Path) -> Outcome {
    let doc: GraphDocument = serde_json::from_str(&read(file)?)
        .map_err(|e| input_failure(format!("malformed graph document: {e}")))?;
    let graph = WeightedGraph::from_document(&doc)?;
    let violations = graph::validate(&graph);
    emit(&ValidateJson::new(&graph, &violations));
    for v in &violations {
        eprintln!("{v}");
    }
    if violations.is_empty() {
        Ok(())
    } else {
        Err(input_failure(format!("{} violation(s)", violations.len())))
    }
}

fn classify_cmd(file: &Path, normalize: bool, base: &BaseArg) -> Outcome {
    let graph = load(file)?;
    let options = ClassifyOptions {
        normalize,
        base: base_vertex(&graph, base)?,
    };
    let report = classify::classify_with(&graph, &options)?;
    emit(&ClassifyJson::new(&graph, &report));
    Ok(())
}

#[derive(Serialize)]
struct CycleGroupJson {
    schema: &'static str,
    trivial: bool,
    group: GroupJson,
}

fn cycle_group(file: &Path) -> Outcome {
    let graph = load(file)?;
    let group = lattice::cycle_group(&graph)?;
    emit(&CycleGroupJson {
        schema: SCHEMA,
        trivial: group.is_trivial(),
        group: GroupJson::new(&group),
    });
    Ok(())
}

fn state(file: &Path, base: &BaseArg) -> Outcome {
    let graph = load(file)?;
    let td = tracial_data(&graph, base)?;
    emit(&StateJson::new(&graph, &td));
    Ok(())
}

struct MomentRequest<'a> {
    word: &'a str,
    vertex: Option<&'a str>,
    depth: usize,
    tol: f64,
    dump_basis: Option<&'a Path>,
}

fn moment(file: &Path, request: &MomentRequest<'_>, base: &BaseArg) -> Outcome {
    let graph = load(file)?;
    let mut word = Word::parse(&graph, request.word)?;
    if let Some(v) = request.vertex {
        word = word.anchored(graph.vertex(v)?);
    }
    let td = tracial_data(&graph, base)?;
    let coefficient = moments::expectation_coefficient(&graph, &word)?;
    let exact = moments::phi_moment(&graph, &td, &word)?;
    let basis = fock::build_basis(&graph, request.depth)?;
    if let Some(path) = request.dump_basis {
        fs::write(path, basis.dump(&graph))
            .map_err(|e| input_failure(format!("cannot write {}: {e}", path.display())))?;
    }
    let simulated = fock::state_expectation(&graph, &td, &basis, &word)?;
    let deviation = (exact.to_f64() - simulated).abs();
    let agrees = deviation <= request.tol;
    emit(&MomentJson {
        schema: SCHEMA,
        word: word.display(&graph).to_string(),
        coefficient: SurdJson::new(&coefficient),
        moment: SurdJson::new(&exact),
        fock: FloatJson::new(simulated),
        depth: request.depth,
        deviation,
        tol: request.tol,
        agrees,
    });
    if agrees {
        Ok(())
    } else {
        Err(check_failure("exact and Fock-space values disagree"))
    }
}

fn eigen_check(file: &Path, edge: &str, word: &str, base: &BaseArg) -> Outcome {
    let graph = load(file)?;
    let e = graph.edge_id(edge)?;
    let q = Word::parse(&graph, word)?;
    let td = tracial_data(&graph, base)?;
    let check = moments::check_eigen_identity(&graph, &td, e, &q)?;
    emit(&EigenJson::new(edge, q.display(&graph).to_string(), &check));
    if check.holds {
        Ok(())
    } else {
        Err(check_failure("eigenoperator identity fails"))
    }
}

fn pointed_vertex(graph: &WeightedGraph, name: Option<&str>) -> Result<VertexId, Failure> {
    match name {
        Some(n) => Ok(graph.vertex(n)?),
        None => Ok(graph.document_base().unwrap_or(0)),
    }
}

fn tl_check(
    first: &Path,
    second: &Path,
    max_n: usize,
    v1: Option<&str>,
    v2: Option<&str>,
) -> Outcome {
    let g1 = load(first)?;
    let g2 = load(second)?;
    let p1 = Pointed {
        graph: &g1,
        vertex: pointed_vertex(&g1, v1)?,
    };
    let p2 = Pointed {
        graph: &g2,
        vertex: pointed_vertex(&g2, v2)?,
    };
    let calibration = tl::calibrate(p1, p2)?;
    let calibrated = tl::verify_inclusion(
        p1,
        p2,
        max_n,
        calibration.exponent,
        calibration.normalization,
    )?;
    let control = tl::verify_inclusion(
        p1,
        p2,
        max_n.min(1),
        calibration.exponent.other(),
        calibration.normalization,
    )?;
    let traciality = tl::traciality(p1, max_n, calibration.exponent)?;
    let report = TlCheckJson::new(&calibration, &calibrated, &control, &traciality);
    let ok = calibrated.passed && report.traciality.holds;
    emit(&report);
    if ok {
        Ok(())
    } else {
        Err(check_failure("inclusion is not trace preserving"))
    }
}

#[derive(Serialize)]
struct CriterionJson {
    id: usize,
    title: &'static str,
    passed: bool,
    detail: String,
}

#[derive(Serialize)]
struct SelftestJson {
    schema: &'static str,
    seed: u64,
    passed: bool,
    criteria: Vec<CriterionJson>,
}

fn selftest_cmd(seed: u64) -> Outcome {
    let outcomes = selftest::run_all(seed);
    for o in &outcomes {
        eprintln!("{o}");
    }
    let passed = outcomes.iter().all(|o| o.passed);
    emit(&SelftestJson {
        schema: SCHEMA,
        seed,
        passed,
        criteria: outcomes
            .into_iter()
            .map(|o| CriterionJson {
                id: o.id,
                title: o.title,
                passed: o.passed,
                detail: o.detail,
            })
            .collect(),
    });
    if passed {
        Ok(())
    } else {
        Err(check_failure("acceptance criteria failed"))
    }
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Validate { file } => validate(&file),
        Command::Classify {
            file,
            normalize,
            base,
        } => classify_cmd(&file, normalize, &base),
        Command::CycleGroup { file } => cycle_group(&file),
        Command::State { file, base } => state(&file, &base),
        Command::Moment {
            file,
            word,
            vertex,
            depth,
            tol,
            dump_basis,
            base,
        } => {
            let request = MomentRequest {
                word: &word,
                vertex: vertex.as_deref(),
                depth,
                tol,
                dump_basis: dump_basis.as_deref(),
            };
            moment(&file, &request, &base)
        }
        Command::EigenCheck {
            file,
            edge,
            word,
            base,
        } => eigen_check(&file, &edge, &word, &base),
        Command::TlCheck {
            first,
            second,
            max_n,
            v1,
            v2,
        } => tl_check(&first, &second, max_n, v1.as_deref(), v2.as_deref()),
        Command::Selftest { seed } => selftest_cmd(seed),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
