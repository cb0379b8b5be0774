use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use quivalg::analysis::{cartan, CartanMatrix};
use quivalg::field::{FieldKind, FieldSpec, Scalar};
use quivalg::homotopy::{build_tilting_complex, euler_hom_dimension, hom_complexes};
use quivalg::presets::{parse_presentation, Preset, PresetParams};
use quivalg::report::{run_verification, Budget, Status, Suite, VerifyOptions, SCHEMA_VERSION};
use quivalg::rep::omega_orbit;
use quivalg::rewrite::QuotientAlgebra;
use quivalg::Error;

const EXIT_FAIL: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_BUDGET: u8 = 3;

#[derive(Parser)]
#[command(name = "quivalg", version, about = "Bound quiver algebras: build, verify, resolve, compare")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build an algebra and print its dimension and Cartan matrix
    Build(BuildArgs),
    /// Run a verification suite
    Verify(VerifyArgs),
    /// Iterated syzygies of a simple module
    Resolve(ResolveArgs),
    /// Hom spaces between summands of the tilting complex
    Hom(HomArgs),
    /// Every suite, continuing past failures
    Report(ReportArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Md,
    Json,
}

#[derive(Args)]
struct Common {
    /// Field: Q or Fp:<p>
    #[arg(long, default_value = "Q")]
    field: String,
    /// Nonzero deformation parameter, an integer or fraction
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    lambda: String,
    /// Initial degree cap for completion
    #[arg(long)]
    cap: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value = "md")]
    format: Format,
}

#[derive(Args)]
struct BuildArgs {
    #[arg(long, conflicts_with = "file", required_unless_present = "file")]
    preset: Option<String>,
    /// Presentation file
    #[arg(long)]
    file: Option<PathBuf>,
    #[arg(long, default_value_t = 2)]
    m: usize,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, default_value = "all")]
    suite: String,
    /// One or more values of m, comma separated; defaults to 2,3
    #[arg(long, value_delimiter = ',')]
    m: Vec<usize>,
    #[arg(long)]
    keep_going: bool,
    /// Include wall-clock timings (makes output nondeterministic)
    #[arg(long)]
    timings: bool,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct ResolveArgs {
    #[arg(long, default_value = "spherical")]
    preset: String,
    #[arg(long, default_value_t = 2)]
    m: usize,
    /// Vertex name of the simple module
    #[arg(long, default_value = "1")]
    vertex: String,
    #[arg(long, default_value_t = 4)]
    steps: usize,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct HomArgs {
    #[arg(long, default_value_t = 2)]
    m: usize,
    /// Source summand, 1 to 6; all pairs when omitted
    #[arg(long, requires = "to")]
    from: Option<usize>,
    #[arg(long, requires = "from")]
    to: Option<usize>,
    #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
    shift: i32,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct ReportArgs {
    #[arg(long, value_delimiter = ',')]
    m: Vec<usize>,
    #[arg(long)]
    timings: bool,
    #[command(flatten)]
    common: Common,
}

/// Failure of a command, mapped to an exit code.
enum Failure {
    Usage(String),
    Budget(String),
    Check(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            e if e.is_budget() => Failure::Budget(e.to_string()),
            Error::Syntax { .. }
            | Error::InvalidParams(_)
            | Error::InvalidField(_)
            | Error::InvalidScalar(_)
            | Error::NotPrime(_)
            | Error::ZeroLambda
            | Error::UnknownVertex(_)
            | Error::UnknownArrow(_)
            | Error::DuplicateName(_)
            | Error::NotComposable(_)
            | Error::MalformedRelation(_)
            | Error::NonParallelRelation(_)
            | Error::DivisionByZero => Failure::Usage(e.to_string()),
            e => Failure::Check(e.to_string()),
        }
    }
}

type Outcome = Result<Status, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = budget().and_then(|b| match cli.command {
        Command::Build(a) => cmd_build(a, b),
        Command::Verify(a) => cmd_verify(a, b),
        Command::Resolve(a) => cmd_resolve(a, b),
        Command::Hom(a) => cmd_hom(a, b),
        Command::Report(a) => cmd_report(a, b),
    });
    match result {
        Ok(Status::Pass) => ExitCode::SUCCESS,
        Ok(Status::Fail) => ExitCode::from(EXIT_FAIL),
        Ok(Status::Inconclusive) => ExitCode::from(EXIT_BUDGET),
        Err(f) => {
            let (code, msg) = match f {
                Failure::Usage(m) => (EXIT_USAGE, m),
                Failure::Budget(m) => (EXIT_BUDGET, m),
                Failure::Check(m) => (EXIT_FAIL, m),
            };
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}

/// `QUIVALG_BUDGET` overrides both the completion and the search budget.
fn budget() -> Result<Budget, Failure> {
    match std::env::var("QUIVALG_BUDGET") {
        Ok(v) => v
            .trim()
            .parse::<usize>()
            .map(Budget::uniform)
            .map_err(|_| Failure::Usage(format!("QUIVALG_BUDGET must be a positive integer, got '{v}'"))),
        Err(_) => Ok(Budget::default()),
    }
}

fn field_of(c: &Common) -> Result<FieldSpec, Failure> {
    let kind: FieldKind = c.field.parse()?;
    let lambda = FieldSpec::new(kind, Scalar::one())?.parse_scalar(&c.lambda)?;
    Ok(FieldSpec::new(kind, lambda)?)
}

fn preset_of(name: &str) -> Result<Preset, Failure> {
    name.parse::<Preset>()
        .map_err(|_| Failure::Usage(format!("unknown preset '{name}' (expected spherical or tetrahedral)")))
}

fn build_named(preset: Preset, m: usize, c: &Common, b: Budget) -> Result<(PresetParams, QuotientAlgebra), Failure> {
    let params = PresetParams::new(m, field_of(c)?)?;
    let cap = c.cap.unwrap_or_else(|| params.default_cap());
    let a = preset.presentation(&params).build(params.field(), cap, b.rules)?;
    Ok((params, a))
}

/// Writes to stdout; a closed pipe is not an error.
fn out(text: &str) {
    use std::io::Write;
    let mut stdout = std::io::stdout().lock();
    let _ = stdout.write_all(text.as_bytes()).and_then(|_| stdout.flush());
}

fn emit(format: Format, value: &Value, markdown: String) {
    match format {
        Format::Json => out(&(serde_json::to_string_pretty(value).expect("serializable") + "\n")),
        Format::Md => out(&markdown),
    }
}

fn md_matrix(header: &str, rows: &[Vec<String>]) -> String {
    let n = rows.first().map_or(0, Vec::len);
    let mut s = format!("| {header} |");
    for j in 1..=n {
        let _ = write!(s, " {j} |");
    }
    s += "\n|---|";
    s += &"---|".repeat(n);
    s += "\n";
    for (i, r) in rows.iter().enumerate() {
        let _ = writeln!(s, "| {} | {} |", i + 1, r.join(" | "));
    }
    s
}

fn cartan_md(c: &CartanMatrix) -> String {
    let rows: Vec<Vec<String>> = c.0.iter().map(|r| r.iter().map(usize::to_string).collect()).collect();
    md_matrix("C", &rows)
}

fn cmd_build(args: BuildArgs, b: Budget) -> Outcome {
    let c = &args.common;
    let field = field_of(c)?;
    let (name, m, a) = match (&args.preset, &args.file) {
        (Some(p), _) => {
            let (params, a) = build_named(preset_of(p)?, args.m, c, b)?;
            (p.clone(), Some(params.m()), a)
        }
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
            let pres = parse_presentation(&text, &field)?;
            let deg = pres
                .elements()
                .iter()
                .filter_map(|x| x.max_degree())
                .max()
                .unwrap_or(1)
                .max(1);
            let a = pres.build(&field, c.cap.unwrap_or(deg), b.rules)?;
            (path.display().to_string(), None, a)
        }
        (None, None) => return Err(Failure::Usage("either --preset or --file is required".into())),
    };
    let cm = cartan(a.structure());
    let value = json!({
        "schema_version": SCHEMA_VERSION,
        "command": "build",
        "source": name,
        "m": m,
        "field": field.kind().to_string(),
        "lambda": field.lambda().to_string(),
        "degree_cap": a.degree_cap(),
        "dim": a.dim(),
        "rules": a.system().num_rules(),
        "added_rules": a.system().num_added(),
        "loewy_length": a.loewy_length(),
        "cartan": cm,
        "notes": [field.closure_note(), "Cartan convention: C[i][j] = dim e_i A e_j"],
    });
    let mut md = format!("# {name}\n\n");
    if let Some(m) = m {
        let _ = writeln!(md, "- m: {m}");
    }
    let _ = writeln!(md, "- field: {field}");
    let _ = writeln!(md, "- dimension: {}", a.dim());
    let _ = writeln!(
        md,
        "- rewriting rules: {} ({} added by completion)",
        a.system().num_rules(),
        a.system().num_added()
    );
    let _ = writeln!(md, "- Loewy length: {}", a.loewy_length());
    let _ = writeln!(md, "- degree cap: {}\n", a.degree_cap());
    md += "Cartan matrix, C[i][j] = dim e_i A e_j:\n\n";
    md += &cartan_md(&cm);
    emit(c.format, &value, md);
    Ok(Status::Pass)
}

fn verify_options(suite: Suite, ms: Vec<usize>, c: &Common, b: Budget) -> Result<VerifyOptions, Failure> {
    let ms = if ms.is_empty() { vec![2, 3] } else { ms };
    let mut opts = VerifyOptions::new(suite, ms, field_of(c)?);
    opts.seed = c.seed;
    opts.cap = c.cap;
    opts.budget = b;
    Ok(opts)
}

fn run_and_emit(opts: VerifyOptions, format: Format) -> Outcome {
    let report = run_verification(&opts)?;
    match format {
        Format::Json => out(&(report.to_json() + "\n")),
        Format::Md => out(&report.to_markdown()),
    }
    Ok(report.status())
}

fn cmd_verify(args: VerifyArgs, b: Budget) -> Outcome {
    let suite: Suite = args.suite.parse()?;
    let mut opts = verify_options(suite, args.m, &args.common, b)?;
    opts.keep_going = args.keep_going;
    opts.timings = args.timings;
    run_and_emit(opts, args.common.format)
}

fn cmd_report(args: ReportArgs, b: Budget) -> Outcome {
    let mut opts = verify_options(Suite::All, args.m, &args.common, b)?;
    opts.keep_going = true;
    opts.timings = args.timings;
    run_and_emit(opts, args.common.format)
}

fn cmd_resolve(args: ResolveArgs, b: Budget) -> Outcome {
    let c = &args.common;
    let preset = preset_of(&args.preset)?;
    if args.steps == 0 {
        return Err(Failure::Usage("--steps must be at least 1".into()));
    }
    let (params, a) = build_named(preset, args.m, c, b)?;
    let v = a.quiver().vertex(&args.vertex)?;
    let orbit = omega_orbit(&a, v, args.steps, c.seed, b.search);
    let value = json!({
        "schema_version": SCHEMA_VERSION,
        "command": "resolve",
        "preset": preset.to_string(),
        "m": params.m(),
        "field": params.field().kind().to_string(),
        "lambda": params.field().lambda().to_string(),
        "vertex": args.vertex,
        "steps": orbit,
    });
    let mut md = format!(
        "# Syzygies of the simple at vertex {} over {preset}, m = {}\n\n| step | dimension vector | isomorphic to the simple |\n|---|---|---|\n",
        args.vertex,
        params.m()
    );
    for s in &orbit {
        let _ = writeln!(md, "| {} | {:?} | {} |", s.step, s.dims, s.isomorphic_to_start);
    }
    emit(c.format, &value, md);
    Ok(Status::Pass)
}

fn cmd_hom(args: HomArgs, b: Budget) -> Outcome {
    let c = &args.common;
    let (params, lam) = build_named(Preset::Tetrahedral, args.m, c, b)?;
    let ts = build_tilting_complex(&lam)?;
    let st = lam.structure();
    let cm = cartan(st);
    let check_index = |i: usize| {
        if (1..=ts.len()).contains(&i) {
            Ok(i - 1)
        } else {
            Err(Failure::Usage(format!("summand index {i} is not between 1 and {}", ts.len())))
        }
    };
    let header = json!({
        "schema_version": SCHEMA_VERSION,
        "command": "hom",
        "m": params.m(),
        "field": params.field().kind().to_string(),
        "lambda": params.field().lambda().to_string(),
        "shift": args.shift,
    });
    if let (Some(from), Some(to)) = (args.from, args.to) {
        let (i, j) = (check_index(from)?, check_index(to)?);
        let h = hom_complexes(st, &ts[i], &ts[j], args.shift);
        let euler = (args.shift == 0).then(|| euler_hom_dimension(&ts[i], &ts[j], &cm));
        let mut value = header;
        value["from"] = json!(from);
        value["to"] = json!(to);
        value["dim"] = json!(h.dim());
        value["chain_maps"] = json!(h.chain_map_dim());
        value["null_homotopic"] = json!(h.null_homotopic_dim());
        value["euler"] = json!(euler);
        let mut md = format!(
            "dim Hom(T{from}, T{to}[{}]) = {}\n\nchain maps: {}, null-homotopic: {}\n",
            args.shift,
            h.dim(),
            h.chain_map_dim(),
            h.null_homotopic_dim()
        );
        if let Some(e) = euler {
            let _ = writeln!(md, "alternating Cartan sum: {e}");
        }
        emit(c.format, &value, md);
        return Ok(Status::Pass);
    }
    let table: Vec<Vec<usize>> = ts
        .iter()
        .map(|x| ts.iter().map(|y| hom_complexes(st, x, y, args.shift).dim()).collect())
        .collect();
    let mut value = header;
    value["table"] = json!(table);
    let rows: Vec<Vec<String>> = table.iter().map(|r| r.iter().map(usize::to_string).collect()).collect();
    let md = format!(
        "dim Hom(T_i, T_j[{}]) over the tetrahedral algebra, m = {} (row i, column j):\n\n{}",
        args.shift,
        params.m(),
        md_matrix("i \\ j", &rows)
    );
    emit(c.format, &value, md);
    Ok(Status::Pass)
}
