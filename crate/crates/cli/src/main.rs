//! `knotcolor`: exact invariants of link diagrams from the command line.
//!
//! Exit codes: 0 success, 1 input or argument error, 2 crossing cap
//! exceeded, 3 internal check failure; `verify` exits with the number of
//! failing check groups.

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use knotcolor::codec::{emit_pd, emit_structured, parse_any};
use knotcolor::coloring::{bounds, coloring_group, count_colorings, kfold_count};
use knotcolor::fixtures::builtin;
use knotcolor::groups::{abelianization, alexander, core_group, polynomial_text, wirtinger};
use knotcolor::moves::{apply_move, parse_move_log};
use knotcolor::polynomials::{f_at_one_minus_one, homflypt, jones_at_zeta, q_polynomial, Limits};
use knotcolor::verify::{run_suite, Scope};
use knotcolor::{Diagram, KnotError, Orientation};

#[derive(Parser)]
#[command(name = "knotcolor", version, about = "Exact invariants of link diagrams")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute invariants of one diagram.
    Invariants(InvariantsArgs),
    /// Run the verification suite.
    Verify(VerifyArgs),
    /// Apply a move log and compare invariants before and after.
    Moves(MovesArgs),
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct Input {
    /// Built-in diagram, e.g. `trefoil`, `torus2_n(5)`.
    #[arg(long)]
    name: Option<String>,
    /// PD code, e.g. `X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]`.
    #[arg(long)]
    pd: Option<String>,
    /// File holding a PD code or a structured (JSON) diagram.
    #[arg(long)]
    file: Option<std::path::PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutputFormat {
    Text,
    Structured,
}

#[derive(Args)]
struct Common {
    #[arg(long, value_enum, default_value = "text")]
    format: OutputFormat,
    /// Crossing cap for the exponential-time evaluators.
    #[arg(long, env = "KNOT_CAP", default_value_t = 24)]
    cap: usize,
}

#[derive(Args)]
struct InvariantsArgs {
    #[command(flatten)]
    input: Input,
    #[command(flatten)]
    common: Common,
    /// Number of Fox n-colorings (comma-separated list allowed).
    #[arg(long, value_delimiter = ',')]
    colorings: Vec<u64>,
    /// k-fold colorings with coefficients in Z_m.
    #[arg(long, num_args = 2, value_names = ["K", "M"])]
    kfold: Option<Vec<u64>>,
    /// V(e^{2πi/6}) and its (ε, r) decomposition.
    #[arg(long)]
    jones_zeta: bool,
    /// The Q polynomial.
    #[arg(long)]
    q: bool,
    /// F(1, −1).
    #[arg(long)]
    f11: bool,
    /// The HOMFLYPT polynomial.
    #[arg(long)]
    homfly: bool,
    /// Abelianized group presentations and the Alexander polynomial.
    #[arg(long)]
    groups: bool,
    /// Unknotting and bridge bounds from col_n, n prime.
    #[arg(long)]
    bound: Option<u64>,
    /// Everything above with default parameters.
    #[arg(long)]
    all: bool,
}

#[derive(Args)]
struct VerifyArgs {
    /// `all` or a comma-separated list of fixtures, codec, coloring,
    /// polynomials, moves, groups, statmech.
    #[arg(long, default_value = "all")]
    scope: String,
    /// Scramble seeds for the move-invariance checks.
    #[arg(long, value_delimiter = ',', default_values_t = [1u64, 2, 3, 4, 5, 6, 7, 8, 9, 10])]
    seeds: Vec<u64>,
    /// List every check, not only failing ones.
    #[arg(long)]
    verbose: bool,
}

#[derive(Args)]
struct MovesArgs {
    #[command(flatten)]
    input: Input,
    #[command(flatten)]
    common: Common,
    /// Move log, one move per line (`r1+ e1`, `nmove 2 e1 e2`, ...).
    #[arg(long, conflicts_with = "moves")]
    log: Option<std::path::PathBuf>,
    /// Inline moves separated by `;`.
    #[arg(long)]
    moves: Option<String>,
}

/// Error carrying its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl From<KnotError> for Failure {
    fn from(e: KnotError) -> Self {
        let code = match e {
            KnotError::CapExceeded { .. } => 2,
            KnotError::CheckFailed(_) => 3,
            _ => 1,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn input_error(message: String) -> Failure {
    Failure { code: 1, message }
}

type CliResult<T> = Result<T, Failure>;

fn read_input(input: &Input) -> CliResult<(String, Diagram)> {
    if let Some(name) = &input.name {
        return Ok((name.clone(), builtin(name)?.diagram));
    }
    let text = match (&input.pd, &input.file) {
        (Some(pd), _) => pd.clone(),
        (None, Some(path)) => std::fs::read_to_string(path)
            .map_err(|e| input_error(format!("cannot read {}: {e}", path.display())))?,
        (None, None) => return Err(input_error("no input given".into())),
    };
    let d = parse_any(&text)?;
    let code: String = d.canonical_code()?.iter().map(|b| format!("{b:02x}")).collect();
    Ok((format!("code:{code}"), d))
}

/// Ordered (invariant, exact value) pairs for one diagram.
struct InvariantReport {
    diagram: String,
    entries: Vec<(String, String)>,
}

impl InvariantReport {
    fn push(&mut self, k: impl Into<String>, v: impl ToString) {
        self.entries.push((k.into(), v.to_string()));
    }

    fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Text => {
                let mut out = format!("diagram: {}\n", self.diagram);
                for (k, v) in &self.entries {
                    out.push_str(&format!("{k}: {v}\n"));
                }
                out
            }
            OutputFormat::Structured => {
                let inv: Vec<Value> = self
                    .entries
                    .iter()
                    .map(|(k, v)| json!({"name": k, "value": v}))
                    .collect();
                format!("{}\n", json!({"diagram": self.diagram, "invariants": inv}))
            }
        }
    }
}

fn invariants(args: &InvariantsArgs) -> CliResult<String> {
    let (id, d) = read_input(&args.input)?;
    let limits = Limits::new(args.common.cap);
    let o = Orientation::default();
    let mut r = InvariantReport {
        diagram: id,
        entries: Vec::new(),
    };
    r.push("crossings", d.crossing_count());
    r.push("components", d.component_count());
    let mut colorings = args.colorings.clone();
    if args.all {
        r.push("writhe", d.writhe(&o)?);
        r.push("lk", d.linking_number(&o)?);
        for n in [3, 5] {
            if !colorings.contains(&n) {
                colorings.push(n);
            }
        }
    }
    colorings.sort_unstable();
    for n in colorings {
        let key = if n == 3 { "tri".to_string() } else { format!("col_{n}") };
        r.push(key, count_colorings(&d, n)?);
    }
    if args.all {
        let h = coloring_group(&d)?;
        r.push("coloring_group", &h.group);
        r.push("det", &h.determinant);
    }
    if let Some(km) = &args.kfold {
        let (k, m) = (km[0] as usize, km[1]);
        r.push(format!("kfold({k},{m})"), kfold_count(&d, k, m)?);
    }
    if args.jones_zeta || args.all {
        let j = jones_at_zeta(&d, &o, &limits)?;
        r.push("jones_zeta", j.value);
        r.push("jones_zeta_epsilon", j.epsilon);
        r.push("jones_zeta_r", j.r);
    }
    if args.q || args.all {
        r.push("q", q_polynomial(&d, &limits)?.to_text("x"));
    }
    if args.f11 || args.all {
        r.push("f(1,-1)", f_at_one_minus_one(&d, &limits)?);
    }
    if args.homfly || args.all {
        r.push("homflypt", homflypt(&d, &o, &limits)?);
    }
    if args.groups || args.all {
        let w = wirtinger(&d, &o)?;
        r.push("wirtinger_abelian", abelianization(&w));
        r.push("core_abelian", abelianization(&core_group(&d)?));
        if let Some(p) = alexander(&d, &o)?.polynomial {
            r.push("alexander", polynomial_text(&p));
        }
        if args.groups {
            r.push("wirtinger", w.export().trim_end().replace('\n', "; "));
        }
    }
    let bound = args.bound.or(args.all.then_some(3));
    if let Some(n) = bound {
        let b = bounds(&d, n)?;
        r.push(format!("log_{n}(col_{n})"), b.log_n);
        if let Some(u) = b.unknotting_lower {
            r.push("unknotting_lower", u);
        }
        r.push("bridge_lower", b.log_n.max(1));
    }
    Ok(r.render(args.common.format))
}

fn table(d: &Diagram, limits: &Limits) -> CliResult<Vec<(String, String)>> {
    let o = Orientation::default();
    let h = coloring_group(d)?;
    let mut rows = vec![
        ("crossings".to_string(), d.crossing_count().to_string()),
        ("components".into(), d.component_count().to_string()),
        ("writhe".into(), d.writhe(&o)?.to_string()),
        ("lk".into(), d.linking_number(&o)?.to_string()),
        ("tri".into(), count_colorings(d, 3)?.to_string()),
        ("col_5".into(), count_colorings(d, 5)?.to_string()),
        ("coloring_group".into(), h.group.to_string()),
        ("det".into(), h.determinant.to_string()),
    ];
    let jz = match jones_at_zeta(d, &o, limits) {
        Ok(j) => j.value.to_string(),
        Err(KnotError::CapExceeded { .. }) => "over cap".to_string(),
        Err(e) => return Err(e.into()),
    };
    rows.push(("jones_zeta".into(), jz));
    Ok(rows)
}

fn moves(args: &MovesArgs) -> CliResult<String> {
    let (id, d) = read_input(&args.input)?;
    let limits = Limits::new(args.common.cap);
    let text = match (&args.log, &args.moves) {
        (Some(path), _) => std::fs::read_to_string(path)
            .map_err(|e| input_error(format!("cannot read {}: {e}", path.display())))?,
        (None, Some(inline)) => inline.replace(';', "\n"),
        (None, None) => return Err(input_error("give --log FILE or --moves TEXT".into())),
    };
    let log = parse_move_log(&text)?;
    let mut cur = d.clone();
    for (line, mv) in &log {
        cur = apply_move(&cur, mv).map_err(|e| {
            let f = Failure::from(e);
            Failure {
                code: f.code,
                message: format!("line {line}: {mv}: {}", f.message),
            }
        })?;
    }
    let before = table(&d, &limits)?;
    let after = table(&cur, &limits)?;
    Ok(match args.common.format {
        OutputFormat::Text => {
            let mut out = format!("diagram: {id}\nmoves: {}\nresult: {}\n", log.len(), emit_pd(&cur));
            let w = before.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
            let bw = before.iter().map(|(_, v)| v.len()).max().unwrap_or(0).max(6);
            out.push_str(&format!("{:w$}  {:bw$}  after\n", "invariant", "before"));
            for ((k, b), (_, a)) in before.iter().zip(&after) {
                let mark = if a == b { "" } else { "  (changed)" };
                out.push_str(&format!("{k:w$}  {b:bw$}  {a}{mark}\n"));
            }
            out
        }
        OutputFormat::Structured => {
            let rows: Vec<Value> = before
                .iter()
                .zip(&after)
                .map(|((k, b), (_, a))| json!({"name": k, "before": b, "after": a}))
                .collect();
            let result: Value = serde_json::from_str(&emit_structured(&cur, None))
                .map_err(|e| Failure { code: 3, message: e.to_string() })?;
            format!(
                "{}\n",
                json!({"diagram": id, "moves": log.len(), "result": result, "invariants": rows})
            )
        }
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = match &cli.command {
        Command::Invariants(a) => invariants(a),
        Command::Moves(a) => moves(a),
        Command::Verify(a) => {
            let scopes = match Scope::parse_list(&a.scope) {
                Ok(s) => s,
                Err(e) => {
                    eprintln!("error: {e}");
                    return ExitCode::from(1);
                }
            };
            let report = run_suite(&scopes, &a.seeds);
            print!("{}", report.render(a.verbose));
            return ExitCode::from(report.exit_code() as u8);
        }
    };
    match out {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
