//! Command-line front end: batch computation and inspection.
//!
//! One command per invocation, deterministic output (JSON by default, DOT
//! for windows, a table for Hom matrices). Exit codes: 0 success, 1
//! validation or parse failure (structured diagnostic on stderr), 2 when
//! `--strict` is set and an oracle cutoff failed to stabilize.

use crate::arquiver::{self, BlockEnv};
use crate::delta::{
    self, cone_minimal, cone_proj_map, normalize, stabilize, DeltaEngine, DeltaError, Indec,
    NormalForm,
};
use crate::field::{F32003, Rat, Scalar};
use crate::komplex::oracle::OraclePolicy;
use crate::komplex::{ProjComplex, CONVENTION};
use crate::strings::{parse_dsl, StringSpec};
use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::json;
use std::io::Read;
use std::path::PathBuf;

#[derive(Parser)]
#[command(
    name = "deltand",
    about = "Exact engine for the relative singularity category of a nodal point",
    version
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Coefficient field: the default prime field or `q` for exact rationals.
    #[arg(long, global = true, default_value = "32003")]
    field: String,
    /// Override the oracle degree cutoff.
    #[arg(long, global = true)]
    cutoff: Option<usize>,
    /// Stability window: trailing zero degrees required of oracle reports.
    #[arg(long, global = true)]
    window: Option<usize>,
    /// Exit with code 2 when an oracle report does not stabilize.
    #[arg(long, global = true)]
    strict: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Reduce strings (walk DSL or JSON) to their canonical atom multiset.
    Normalize(InputArgs),
    /// Hom dimension between two atoms, or the full matrix of two forms.
    Hom(HomArgs),
    /// Class in the free group on the projective generators.
    K0(InputArgs),
    /// Are two objects isomorphic?
    Iso {
        /// First object (file or inline DSL/JSON).
        #[arg(long)]
        left: String,
        /// Second object.
        #[arg(long)]
        right: String,
        #[arg(long, default_value_t = 1)]
        node: u32,
    },
    /// Auslander-Reiten translate of a minimal-string atom.
    Tau {
        #[arg(long)]
        atom: String,
    },
    /// Auslander-Reiten mesh ending at a minimal-string atom.
    Mesh {
        #[arg(long)]
        end: String,
    },
    /// Finite window of a translation component.
    Window {
        #[arg(long)]
        seed: String,
        #[arg(long, default_value_t = 3)]
        rows: u32,
        #[arg(long, default_value_t = 4)]
        cols: u32,
        /// Emit DOT instead of JSON.
        #[arg(long)]
        dot: bool,
    },
    /// Image in the stable Cohen-Macaulay category of the node.
    Stabilize(InputArgs),
    /// Graded homotopy-category Hom between two complexes.
    OracleHom {
        /// First complex: file or inline (walk DSL/JSON or complex JSON).
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
        #[arg(long, default_value_t = 0)]
        shift: i64,
    },
    /// Cone classes: of the canonical minimal-string map, or of the unique
    /// map between projective stalks.
    Cone {
        /// Minimal-string atom `S(t,l)[0]` or projective pair `P(s) P(t)[n]`.
        #[arg(long)]
        of: String,
        #[arg(long)]
        to: Option<String>,
    },
    /// Assemble per-node normal forms into a multi-node block environment.
    Blocks {
        #[arg(long)]
        p: u32,
        /// Normal-form JSON files, one per node.
        #[arg(long = "input", num_args = 0..)]
        inputs: Vec<PathBuf>,
    },
}

#[derive(Args)]
struct InputArgs {
    /// File path, `-` for stdin, or inline DSL/JSON.
    #[arg(long)]
    input: String,
    #[arg(long, default_value_t = 1)]
    node: u32,
}

#[derive(Args)]
struct HomArgs {
    /// Source atom, e.g. "P(+)[0]".
    #[arg(long)]
    from: Option<String>,
    /// Target atom, e.g. "P(-)[-1]".
    #[arg(long)]
    to: Option<String>,
    /// Normal-form JSON (file or inline) for the matrix form.
    #[arg(long)]
    left: Option<String>,
    #[arg(long)]
    right: Option<String>,
    /// Emit JSON instead of the table.
    #[arg(long)]
    json: bool,
}

pub enum Outcome {
    Ok,
    Unstable,
}

#[derive(Debug)]
pub struct CliFailure {
    pub message: String,
    pub detail: Option<String>,
}

impl CliFailure {
    fn new(message: impl Into<String>) -> CliFailure {
        CliFailure {
            message: message.into(),
            detail: None,
        }
    }
}

impl<E: std::error::Error> From<E> for CliFailure {
    fn from(e: E) -> CliFailure {
        CliFailure {
            message: e.to_string(),
            detail: e.source().map(|s| s.to_string()),
        }
    }
}

/// Entry point used by the binary; returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            // clap renders its own message; --help and --version exit 0,
            // usage errors exit 1.
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let strict = cli.strict;
    match dispatch(cli) {
        Ok(Outcome::Ok) => 0,
        Ok(Outcome::Unstable) => {
            if strict {
                2
            } else {
                0
            }
        }
        Err(f) => {
            let diag = json!({ "error": f.message, "detail": f.detail });
            eprintln!("{}", serde_json::to_string_pretty(&diag).unwrap());
            1
        }
    }
}

fn dispatch(cli: Cli) -> Result<Outcome, CliFailure> {
    match cli.field.as_str() {
        "32003" => run_typed::<F32003>(cli),
        "q" | "Q" => run_typed::<Rat>(cli),
        other => Err(CliFailure::new(format!(
            "unsupported field {other:?}: use 32003 or q"
        ))),
    }
}

pub fn read_payload(spec: &str) -> Result<String, CliFailure> {
    if spec == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| CliFailure::new(format!("reading stdin: {e}")))?;
        return Ok(buf);
    }
    let path = std::path::Path::new(spec);
    if path.exists() {
        return std::fs::read_to_string(path)
            .map_err(|e| CliFailure::new(format!("reading {spec:?}: {e}")));
    }
    // Inline payload.
    Ok(spec.to_string())
}

/// Walks from a payload: JSON (single spec or array) or DSL (one walk per
/// nonempty line).
pub fn parse_walks(payload: &str) -> Result<Vec<StringSpec>, CliFailure> {
    let trimmed = payload.trim();
    if trimmed.starts_with('{') {
        let one: StringSpec = serde_json::from_str(trimmed)?;
        return Ok(vec![one]);
    }
    if trimmed.starts_with('[') {
        let many: Vec<StringSpec> = serde_json::from_str(trimmed)?;
        return Ok(many);
    }
    let mut out = Vec::new();
    for line in trimmed.lines() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        out.push(parse_dsl(line)?);
    }
    if out.is_empty() {
        return Err(CliFailure::new("payload holds no walks"));
    }
    Ok(out)
}

/// A normal form from a payload: normal-form JSON, or walks to normalize.
pub fn parse_form(payload: &str, node: u32) -> Result<NormalForm, CliFailure> {
    let trimmed = payload.trim();
    if trimmed.starts_with('{') {
        if let Ok(nf) = serde_json::from_str::<NormalForm>(trimmed) {
            nf.validate()?;
            return Ok(nf);
        }
    }
    let walks = parse_walks(payload)?;
    Ok(normalize(node, &walks)?)
}

pub fn parse_complex<S: Scalar>(payload: &str) -> Result<ProjComplex<S>, CliFailure> {
    let trimmed = payload.trim();
    if trimmed.starts_with('{') {
        if let Ok(c) = serde_json::from_str::<ProjComplex<S>>(trimmed) {
            c.validate()?;
            return Ok(c);
        }
    }
    let walks = parse_walks(payload)?;
    let mut acc = ProjComplex::empty();
    for w in &walks {
        w.validate()?;
        acc = acc.direct_sum(&w.compile());
    }
    acc.validate()?;
    Ok(acc)
}

fn emit<T: Serialize>(value: &T) -> Result<(), CliFailure> {
    println!("{}", serde_json::to_string_pretty(value)?);
    Ok(())
}

fn run_typed<S: Scalar>(cli: Cli) -> Result<Outcome, CliFailure> {
    let mut policy = OraclePolicy::default();
    if let Some(w) = cli.window {
        if w == 0 {
            return Err(CliFailure::new("stability window must be positive"));
        }
        policy.window = w;
    }
    let engine: DeltaEngine<S> = DeltaEngine::new(policy);
    match cli.command {
        Command::Normalize(args) => {
            let payload = read_payload(&args.input)?;
            let walks = parse_walks(&payload)?;
            let nf = normalize(args.node, &walks)?;
            emit(&nf)?;
            Ok(Outcome::Ok)
        }
        Command::K0(args) => {
            let payload = read_payload(&args.input)?;
            let nf = parse_form(&payload, args.node)?;
            emit(&delta::k0(&nf))?;
            Ok(Outcome::Ok)
        }
        Command::Stabilize(args) => {
            let payload = read_payload(&args.input)?;
            let nf = parse_form(&payload, args.node)?;
            let mcm = stabilize(&nf);
            emit(&json!({
                "convention": delta::STABILIZE_CONVENTION,
                "branch_u": mcm.branch_u,
                "branch_v": mcm.branch_v,
            }))?;
            Ok(Outcome::Ok)
        }
        Command::Iso { left, right, node } => {
            let l = parse_form(&read_payload(&left)?, node)?;
            let r = parse_form(&read_payload(&right)?, node)?;
            emit(&json!({ "iso": l.is_iso(&r) }))?;
            Ok(Outcome::Ok)
        }
        Command::Tau { atom } => {
            let a = Indec::parse(&atom)?;
            let t = arquiver::tau(&a)?;
            emit(&json!({ "atom": t.id() }))?;
            Ok(Outcome::Ok)
        }
        Command::Mesh { end } => {
            let e = Indec::parse(&end)?;
            let mesh = arquiver::ar_mesh(&e)?;
            emit(&json!({
                "start": mesh.start.id(),
                "middle": mesh.middle.iter().map(|a| a.id()).collect::<Vec<_>>(),
                "end": mesh.end.id(),
            }))?;
            Ok(Outcome::Ok)
        }
        Command::Window {
            seed,
            rows,
            cols,
            dot,
        } => {
            let s = Indec::parse(&seed)?;
            let w = arquiver::component_window(&s, rows, cols)?;
            if dot {
                print!("{}", arquiver::window_to_dot(&w));
            } else {
                emit(&json!({
                    "component": w.component,
                    "nodes": w.nodes.iter().map(|n| json!({
                        "id": n.id, "x": n.x, "y": n.y,
                    })).collect::<Vec<_>>(),
                    "solid": w.solid,
                    "dashed": w.dashed,
                }))?;
            }
            Ok(Outcome::Ok)
        }
        Command::Cone { of, to } => {
            let first = Indec::parse(&of)?;
            let result = match (first, to) {
                (Indec::MinString { tau, l, shift }, None) => {
                    if shift != 0 {
                        return Err(CliFailure::new(
                            "cone of the canonical map is taken at shift 0",
                        ));
                    }
                    cone_minimal(tau, l)?
                }
                (Indec::Proj { sign, shift: 0 }, Some(to)) => {
                    let Indec::Proj {
                        sign: tsign,
                        shift: n,
                    } = Indec::parse(&to)?
                    else {
                        return Err(CliFailure::new("--to must be a projective atom"));
                    };
                    cone_proj_map(sign, tsign, n)?
                }
                _ => {
                    return Err(CliFailure::new(
                        "cone takes S(t,l)[0], or P(s)[0] with --to P(t)[n]",
                    ))
                }
            };
            emit(&json!({ "cone": result.id() }))?;
            Ok(Outcome::Ok)
        }
        Command::Hom(args) => run_hom(&engine, args),
        Command::OracleHom { x, y, shift } => {
            let xc: ProjComplex<S> = parse_complex(&read_payload(&x)?)?;
            let yc: ProjComplex<S> = parse_complex(&read_payload(&y)?)?;
            let report = engine.oracle_hom(&xc, &yc, shift, cli.cutoff)?;
            let stable = report.stable;
            emit(&json!({
                "field": S::field_name(),
                "convention": CONVENTION,
                "report": report,
            }))?;
            Ok(if stable { Outcome::Ok } else { Outcome::Unstable })
        }
        Command::Blocks { p, inputs } => {
            let mut forms = Vec::new();
            for path in &inputs {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| CliFailure::new(format!("reading {path:?}: {e}")))?;
                let nf: NormalForm = serde_json::from_str(&text)?;
                nf.validate()?;
                forms.push(nf);
            }
            let env = BlockEnv::assemble(p, forms)?;
            let rank = arquiver::int_rank(&env.generator_matrix());
            emit(&json!({
                "p": env.p,
                "k0_rank": env.k0_rank(),
                "k0_rank_verified": rank,
                "k0": env.k0(),
            }))?;
            Ok(Outcome::Ok)
        }
    }
}

fn run_hom<S: Scalar>(engine: &DeltaEngine<S>, args: HomArgs) -> Result<Outcome, CliFailure> {
    match (&args.from, &args.to, &args.left, &args.right) {
        (Some(from), Some(to), None, None) => {
            let a = Indec::parse(from)?;
            let b = Indec::parse(to)?;
            match engine.hom_dim(&a, &b) {
                Ok(dim) => {
                    if args.json {
                        emit(&json!({ "from": a.id(), "to": b.id(), "dim": dim }))?;
                    } else {
                        println!("{dim}");
                    }
                    Ok(Outcome::Ok)
                }
                Err(DeltaError::CutoffNotStabilized { report }) => {
                    emit(&json!({
                        "warning": "cutoff not stabilized",
                        "report": report,
                    }))?;
                    Ok(Outcome::Unstable)
                }
                Err(e) => Err(e.into()),
            }
        }
        (None, None, Some(left), Some(right)) => {
            let l = parse_form(&read_payload(left)?, 1)?;
            let r = parse_form(&read_payload(right)?, 1)?;
            let m = engine.hom_matrix(&l, &r)?;
            if args.json {
                emit(&json!({
                    "rows": l.atoms.iter().map(|a| a.id()).collect::<Vec<_>>(),
                    "cols": r.atoms.iter().map(|a| a.id()).collect::<Vec<_>>(),
                    "matrix": m,
                }))?;
            } else {
                let header: Vec<String> = r.atoms.iter().map(|a| a.id()).collect();
                println!("hom\t{}", header.join("\t"));
                for (i, a) in l.atoms.iter().enumerate() {
                    let row: Vec<String> = m[i].iter().map(|v| v.to_string()).collect();
                    println!("{}\t{}", a.id(), row.join("\t"));
                }
            }
            Ok(Outcome::Ok)
        }
        _ => Err(CliFailure::new(
            "hom needs either --from/--to atoms or --left/--right forms",
        )),
    }
}
