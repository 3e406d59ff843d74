use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};
use zdlab::constructions::{
    direct_product, endomorphism_pn_semiring, expectation_semiring, localize, matrix_semiring,
    power_series_truncated, regular_bisemimodule, sigma_expectation, triangular_semiring,
    Bisemimodule, BisemimoduleFile, EndoPnOutcome, Endomorphism,
};
use zdlab::properties::PROPERTY_NAMES;
use zdlab::rule::{
    rule_is_eversible, rule_left_zero_divisor, rule_right_within_left, rule_right_zero_divisor,
    NaturalTriangular, Tri,
};
use zdlab::search::{
    default_order, enumerate_structures, evaluate_atom, find_counterexample, parse_expression,
    random_structure, run_suite, standard_corpus, Context, EnumerationSpec, HuntOutcome,
};
use zdlab::zdgraph::{
    build_graph, calibrate_connectivity_notion, calibration_corpus, connectivity, diameter,
    resolve_notion, to_dot,
};
use zdlab::{named, AlgebraError, FiniteStructure, Kind};

/// Zero-divisor workbench for finite semigroups with zero, PN-semirings
/// and semirings.
///
/// Structure arguments are JSON files, or `@name` for a built-in structure
/// (`@boolean`, `@z:N`, `@capped:N`, `@null:N`).
#[derive(Parser)]
#[command(name = "zdlab", version)]
struct Cli {
    /// Worker threads (default: available cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Seed for random structures.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Window bound for rule-defined structures.
    #[arg(long, global = true, default_value_t = 50)]
    bound: usize,
    /// Degree bound for polynomial checks.
    #[arg(long, global = true, default_value_t = 2)]
    degree: usize,
    /// Load structure files without checking the axioms.
    #[arg(long, global = true)]
    no_validate: bool,
    /// Write the JSON report (or, for `enumerate`, the structure files) here.
    #[arg(short = 'o', long = "output", global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the axioms of a structure file.
    Validate { file: String },
    /// Evaluate properties of a structure, or of a rule-defined structure.
    Props(PropsArgs),
    /// Build a derived structure.
    #[command(subcommand)]
    Construct(Construct),
    /// Zero-divisor graph of a structure, or the connectivity calibration.
    Graph(GraphArgs),
    /// List every structure of a kind and order, or random samples.
    Enumerate(EnumerateArgs),
    /// Run a theorem suite.
    Verify(VerifyArgs),
    /// Find the smallest structure satisfying a property expression.
    Hunt(HuntArgs),
}

#[derive(Args)]
struct PropsArgs {
    /// Structure file; omit when using `--rule`.
    file: Option<String>,
    /// Comma-separated property names (default: every applicable one).
    #[arg(long, value_delimiter = ',')]
    props: Vec<String>,
    /// A rule-defined structure: `natural-triangular`.
    #[arg(long)]
    rule: Option<String>,
    /// Element `a,b,c` of the rule structure to classify.
    #[arg(long, value_delimiter = ',')]
    element: Vec<u64>,
}

#[derive(Subcommand)]
enum Construct {
    /// A built-in structure by name.
    Named { name: String },
    /// A random structure, deterministic in `--seed`.
    Random {
        #[arg(long)]
        kind: String,
        #[arg(long)]
        order: usize,
    },
    /// Square matrices over a semiring.
    Matrix {
        file: String,
        #[arg(long, default_value_t = 2)]
        size: usize,
    },
    /// Direct product.
    Product { files: Vec<String> },
    /// Upper triangular matrices `[[S, M], [0, T]]`.
    Triangular {
        s: String,
        t: String,
        /// Bisemimodule file; defaults to the regular module when S = T.
        #[arg(long)]
        module: Option<PathBuf>,
    },
    /// `S ⊕̃ M` over a bisemimodule (default: the regular one).
    Expectation {
        file: String,
        #[arg(long)]
        module: Option<PathBuf>,
    },
    /// `(S ⊕̃ S)_σ` for an endomorphism given as its list of images.
    Sigma {
        file: String,
        #[arg(long, value_delimiter = ',')]
        map: Vec<usize>,
    },
    /// Power series truncated after `--terms` coefficients.
    Series {
        file: String,
        #[arg(long, default_value_t = 3)]
        terms: usize,
    },
    /// Fractions with denominators from a central cancellable set.
    Localize {
        file: String,
        #[arg(long, value_delimiter = ',')]
        denominators: Vec<usize>,
    },
    /// The endomorphisms of the additive magma with pointwise sum and composition.
    Endo { file: String },
}

#[derive(Args)]
struct GraphArgs {
    file: Option<String>,
    /// Also write the graph as DOT to this path (`-` for stdout).
    #[arg(long)]
    dot: Option<String>,
    /// weak, semi, strong or calibrated.
    #[arg(long, default_value = "calibrated")]
    notion: String,
    /// Recompute the connectivity calibration over semigroups up to this order.
    #[arg(long)]
    calibrate: Option<usize>,
}

#[derive(Args)]
struct EnumerateArgs {
    #[arg(long)]
    kind: String,
    #[arg(long)]
    order: usize,
    #[arg(long)]
    up_to_iso: bool,
    /// Comma-separated properties that must hold.
    #[arg(long, value_delimiter = ',')]
    filter: Vec<String>,
    /// Allow one order beyond the default cap.
    #[arg(long)]
    big: bool,
    /// Draw this many random structures instead of enumerating.
    #[arg(long)]
    random: Option<usize>,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    suite: String,
    /// Corpus of all structures up to this order (default per suite).
    #[arg(long, conflicts_with = "corpus")]
    order: Option<usize>,
    /// Directory of structure files to use as the corpus.
    #[arg(long)]
    corpus: Option<PathBuf>,
    #[arg(long, default_value = "calibrated")]
    notion: String,
}

#[derive(Args)]
struct HuntArgs {
    #[arg(long)]
    expr: String,
    #[arg(long)]
    kind: String,
    #[arg(long)]
    max_order: usize,
}

enum Failure {
    Algebra(AlgebraError),
    Io(String),
    Invalid(Value),
}

impl From<AlgebraError> for Failure {
    fn from(e: AlgebraError) -> Self {
        Failure::Algebra(e)
    }
}

type CliResult<T> = Result<T, Failure>;

/// What a successful command produced: a report and whether a suite
/// reported violations.
struct Done {
    report: Value,
    violations: bool,
}

impl Done {
    fn ok(report: Value) -> CliResult<Done> {
        Ok(Done { report, violations: false })
    }
}

fn to_value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("reports serialize")
}

fn read_text(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn write_text(path: &Path, text: &str) -> CliResult<()> {
    fs::write(path, text).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn load(spec: &str, validate: bool) -> CliResult<FiniteStructure> {
    if let Some(name) = spec.strip_prefix('@') {
        return named::by_name(name)
            .ok_or_else(|| AlgebraError::input(format!("no built-in structure `{name}`")).into());
    }
    Ok(FiniteStructure::from_json(&read_text(Path::new(spec))?, validate)?)
}

fn load_module(path: &Path) -> CliResult<Bisemimodule> {
    let file: BisemimoduleFile = serde_json::from_str(&read_text(path)?)
        .map_err(|e| AlgebraError::input(format!("malformed bisemimodule file: {e}")))?;
    Ok(Bisemimodule::from_file(&file)?)
}

fn structure_value(s: &FiniteStructure) -> Value {
    to_value(&s.to_file())
}

fn context(cli: &Cli, notion: &str) -> CliResult<Context> {
    Ok(Context { degree: cli.degree, notion: resolve_notion(notion)?, ..Context::default() })
}

fn default_props(s: &FiniteStructure) -> Vec<String> {
    PROPERTY_NAMES
        .iter()
        .filter(|p| match **p {
            "zerosumfree" | "armendariz" => s.kind() == Kind::Semiring,
            "eversible_condition2" => s.kind().is_distributive(),
            _ => true,
        })
        .map(|p| p.to_string())
        .collect()
}

fn props(cli: &Cli, args: &PropsArgs) -> CliResult<Done> {
    if let Some(rule) = &args.rule {
        return rule_props(cli, rule, &args.element);
    }
    let file = args.file.as_deref().ok_or_else(|| AlgebraError::input("give a structure file or --rule"))?;
    let s = load(file, !cli.no_validate)?;
    let names = if args.props.is_empty() { default_props(&s) } else { args.props.clone() };
    let ctx = context(cli, "calibrated")?;
    let reports = names
        .iter()
        .map(|p| evaluate_atom(&s, p, &ctx).map(|r| to_value(&r)))
        .collect::<Result<Vec<_>, _>>()?;
    for r in &reports {
        eprintln!("{}: {}", r["property"].as_str().unwrap_or("?"), r["verdict"]);
    }
    Done::ok(json!({ "kind": s.kind().name(), "order": s.order(), "reports": reports }))
}

fn rule_props(cli: &Cli, rule: &str, element: &[u64]) -> CliResult<Done> {
    if rule != "natural-triangular" {
        return Err(AlgebraError::input(format!("unknown rule structure `{rule}`")).into());
    }
    let r = NaturalTriangular;
    let bound = cli.bound;
    let mut report = json!({
        "rule": rule,
        "bound": bound,
        "reports": [to_value(&rule_is_eversible(&r, bound)), to_value(&rule_right_within_left(&r, bound))],
    });
    if !element.is_empty() {
        let [a, b, c] = element[..] else {
            return Err(AlgebraError::input("--element takes a,b,c").into());
        };
        let x = Tri::new(a, b as u8, c as u8);
        let membership = |m: zdlab::rule::Membership<Tri>| {
            json!({ "verdict": to_value(&m.verdict), "witness": m.witness.map(|w| [w.a, w.b as u64, w.c as u64]) })
        };
        report["element"] = json!({
            "value": [x.a, x.b as u64, x.c as u64],
            "left_zero_divisor": membership(rule_left_zero_divisor(&r, &x, bound)),
            "right_zero_divisor": membership(rule_right_zero_divisor(&r, &x, bound)),
        });
    }
    Done::ok(report)
}

fn construct(cli: &Cli, what: &Construct) -> CliResult<Done> {
    let validate = !cli.no_validate;
    let s = match what {
        Construct::Named { name } => named::by_name(name)
            .ok_or_else(|| AlgebraError::input(format!("no built-in structure `{name}`")))?,
        Construct::Random { kind, order } => random_structure(Kind::parse(kind)?, *order, cli.seed)?,
        Construct::Matrix { file, size } => matrix_semiring(&load(file, validate)?, *size)?.structure,
        Construct::Product { files } => {
            let parts = files.iter().map(|f| load(f, validate)).collect::<CliResult<Vec<_>>>()?;
            direct_product(&parts)?.structure
        }
        Construct::Triangular { s, t, module } => {
            let (s, t) = (load(s, validate)?, load(t, validate)?);
            let m = match module {
                Some(p) => load_module(p)?,
                None if s == t => regular_bisemimodule(&s)?,
                None => return Err(AlgebraError::input("S and T differ; pass --module").into()),
            };
            triangular_semiring(&s, &m, &t)?.structure
        }
        Construct::Expectation { file, module } => {
            let s = load(file, validate)?;
            let m = match module {
                Some(p) => load_module(p)?,
                None => regular_bisemimodule(&s)?,
            };
            expectation_semiring(&s, &m)?.structure
        }
        Construct::Sigma { file, map } => {
            let s = load(file, validate)?;
            if map.len() != s.order() || map.iter().any(|&x| x >= s.order()) {
                return Err(AlgebraError::input("--map lists one image in range per element").into());
            }
            sigma_expectation(&s, &Endomorphism { map: map.clone() })?.structure
        }
        Construct::Series { file, terms } => power_series_truncated(&load(file, validate)?, *terms)?.structure,
        Construct::Localize { file, denominators } => {
            localize(&load(file, validate)?, denominators)?.constructed.structure
        }
        Construct::Endo { file } => {
            let s = load(file, validate)?;
            let add = s.add_table().ok_or_else(|| AlgebraError::input("the structure has no addition"))?;
            match endomorphism_pn_semiring(add)? {
                EndoPnOutcome::PnSemiring(c) => c.structure,
                EndoPnOutcome::ClosureFailure { f, g, x, y } => {
                    eprintln!("pointwise sum of endomorphisms is not additive");
                    return Done::ok(json!({
                        "closure_failure": { "f": f.map, "g": g.map, "x": x, "y": y }
                    }));
                }
            }
        }
    };
    eprintln!("constructed a {} of order {}", s.kind(), s.order());
    Done::ok(structure_value(&s))
}

fn graph(cli: &Cli, args: &GraphArgs) -> CliResult<Done> {
    if let Some(order) = args.calibrate {
        let corpus = calibration_corpus(order)?;
        let c = calibrate_connectivity_notion(&corpus);
        let exact: Vec<&str> = c.exact.iter().map(|n| n.name()).collect();
        eprintln!("{} structures; exact notions: {}", c.structures, exact.join(", "));
        return Done::ok(to_value(&c));
    }
    let file = args.file.as_deref().ok_or_else(|| AlgebraError::input("give a structure file or --calibrate"))?;
    let s = load(file, !cli.no_validate)?;
    let notion = resolve_notion(&args.notion)?;
    let g = build_graph(&s);
    if let Some(dot) = &args.dot {
        let text = to_dot(&g);
        if dot == "-" {
            print!("{text}");
            println!();
        } else {
            write_text(Path::new(dot), &text)?;
        }
    }
    let connected = connectivity(&g, notion);
    eprintln!("{} vertices, {} edges, {notion}ly connected: {connected}", g.len(), g.edges().len());
    Done::ok(json!({
        "notion": notion.name(),
        "vertices": g.vertices,
        "edges": g.edges(),
        "connected": connected,
        "diameter": diameter(&g, notion),
        "eversible": zdlab::properties::is_eversible(&s).is_holds(),
    }))
}

fn enumerate(cli: &Cli, args: &EnumerateArgs) -> CliResult<Done> {
    let kind = Kind::parse(&args.kind)?;
    let structures = match args.random {
        Some(n) => (0..n as u64)
            .map(|i| random_structure(kind, args.order, cli.seed.wrapping_add(i)))
            .collect::<Result<Vec<_>, _>>()?,
        None => {
            let spec = EnumerationSpec {
                kind,
                order: args.order,
                up_to_iso: args.up_to_iso,
                filters: args.filter.clone(),
                big: args.big,
            };
            enumerate_structures(&spec)?
        }
    };
    eprintln!("{} structures", structures.len());
    if let Some(dir) = &cli.output {
        fs::create_dir_all(dir).map_err(|e| Failure::Io(format!("{}: {e}", dir.display())))?;
        for (i, s) in structures.iter().enumerate() {
            let path = dir.join(format!("{}-{}-{:05}.json", kind.name(), args.order, i));
            write_text(&path, &(s.to_json() + "\n"))?;
        }
        return Done::ok(json!({ "written": structures.len(), "directory": dir }));
    }
    Done::ok(Value::Array(structures.iter().map(structure_value).collect()))
}

fn load_corpus(dir: &Path, validate: bool) -> CliResult<Vec<FiniteStructure>> {
    let entries = fs::read_dir(dir).map_err(|e| Failure::Io(format!("{}: {e}", dir.display())))?;
    let mut paths: Vec<PathBuf> = entries
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    paths.sort();
    paths.iter().map(|p| Ok(FiniteStructure::from_json(&read_text(p)?, validate)?)).collect()
}

fn verify(cli: &Cli, args: &VerifyArgs) -> CliResult<Done> {
    let corpus = match &args.corpus {
        Some(dir) => load_corpus(dir, !cli.no_validate)?,
        None => {
            let order = match args.order {
                Some(o) => o,
                None => default_order(&args.suite)?,
            };
            standard_corpus(&args.suite, order)?
        }
    };
    let report = run_suite(&args.suite, &corpus, &context(cli, &args.notion)?)?;
    eprintln!(
        "{}: {} structures, {} violations, {:.2?}",
        report.suite,
        report.structures_checked,
        report.violations.len(),
        report.elapsed
    );
    Ok(Done { violations: !report.passed(), report: to_value(&report) })
}

fn hunt(cli: &Cli, args: &HuntArgs) -> CliResult<Done> {
    let expr = parse_expression(&args.expr)?;
    let out = find_counterexample(&expr, Kind::parse(&args.kind)?, args.max_order, &context(cli, "calibrated")?)?;
    match &out {
        HuntOutcome::Found { order, scanned, .. } => {
            eprintln!("found at order {order} after {scanned} structures")
        }
        HuntOutcome::Exhausted { scanned, .. } => eprintln!("none among {scanned} structures"),
    }
    Done::ok(to_value(&out))
}

fn validate(cli: &Cli, file: &str) -> CliResult<Done> {
    let s = load(file, false)?;
    let report = s.validate();
    eprintln!("{} of order {}: {}", s.kind(), s.order(), if report.valid { "valid" } else { "invalid" });
    if !report.valid {
        return Err(Failure::Invalid(to_value(&report)));
    }
    let _ = cli;
    Done::ok(to_value(&report))
}

fn run(cli: &Cli) -> CliResult<Done> {
    match &cli.command {
        Command::Validate { file } => validate(cli, file),
        Command::Props(args) => props(cli, args),
        Command::Construct(what) => construct(cli, what),
        Command::Graph(args) => graph(cli, args),
        Command::Enumerate(args) => enumerate(cli, args),
        Command::Verify(args) => verify(cli, args),
        Command::Hunt(args) => hunt(cli, args),
    }
}

fn emit(cli: &Cli, report: &Value) -> CliResult<()> {
    let text = serde_json::to_string_pretty(report).expect("reports serialize") + "\n";
    match &cli.output {
        Some(path) if !matches!(cli.command, Command::Enumerate(_)) => write_text(path, &text),
        _ => {
            print!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(jobs.max(1)).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let start = Instant::now();
    let outcome = run(&cli).and_then(|done| emit(&cli, &done.report).map(|()| done.violations));
    match outcome {
        Ok(violations) => {
            eprintln!("done in {:.2?}", start.elapsed());
            ExitCode::from(u8::from(violations))
        }
        Err(Failure::Invalid(report)) => {
            let _ = emit(&cli, &report);
            ExitCode::from(2)
        }
        Err(Failure::Algebra(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_resource() { 3 } else { 2 })
        }
        Err(Failure::Io(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
