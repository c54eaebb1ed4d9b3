use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use bzcrystal::affine_fold::{generate_affine_binf, generate_affine_blambda};
use bzcrystal::bz_finite::validate;
use bzcrystal::crystal_finite::{generate_binf, generate_blambda};
use bzcrystal::verify::{check_stembridge, compare_character, CONDITIONS};
use bzcrystal::{
    BzError, ChamberWeight, CrystalGraph, DominantWeight, FiniteBZDatum, FoldContext, GenError,
    Interval, LazyBZElement,
};
use clap::{Parser, Subcommand, ValueEnum};

const DEFAULT_BUDGET: usize = 100_000;
const BUDGET_ENV: &str = "BZCLI_BUDGET_NODES";

const EXIT_FAILURE: u8 = 1;
const EXIT_CAPACITY: u8 = 2;
const EXIT_USAGE: u8 = 64;

#[derive(Parser, Debug)]
#[command(
    name = "bzcli",
    version,
    about = "BZ data and their crystals in types A and affine A"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check the edge inequalities and Plücker relations of a datum.
    Validate { file: PathBuf },
    /// Generate a crystal graph.
    Gen(GenArgs),
    /// Evaluate one component of a folded element.
    Component {
        #[arg(long)]
        ell: i64,
        /// Lowering colors, applied left to right.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        word: Vec<i64>,
        /// Chamber weight as JSON, e.g. {"anchor":0,"extras":[2]}.
        #[arg(long)]
        gamma: String,
    },
    /// Check Stembridge's axioms on a graph.
    CheckStembridge {
        file: PathBuf,
        #[arg(long, value_delimiter = ',')]
        lambda: Option<Vec<i64>>,
    },
    /// Compare weight multiplicities with Kostant or Freudenthal.
    Char {
        file: PathBuf,
        #[arg(long, value_enum)]
        oracle: Oracle,
        #[arg(long, value_delimiter = ',')]
        lambda: Option<Vec<i64>>,
    },
    /// Re-emit a graph in canonical JSON or DOT.
    Export {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(clap::Args, Debug)]
struct GenArgs {
    #[arg(long = "type", value_enum)]
    kind: Kind,
    /// Finite type only, as lo:hi.
    #[arg(long, allow_hyphen_values = true)]
    interval: Option<String>,
    /// Affine type only.
    #[arg(long)]
    ell: Option<i64>,
    #[arg(long)]
    depth: Option<usize>,
    #[arg(long, value_delimiter = ',')]
    lambda: Option<Vec<i64>>,
    /// Node budget; overrides BZCLI_BUDGET_NODES.
    #[arg(long)]
    budget: Option<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    dot: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Kind {
    Finite,
    Affine,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Oracle {
    Kostant,
    Freudenthal,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Format {
    Json,
    Dot,
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Core(BzError),
}

impl From<BzError> for Failure {
    fn from(e: BzError) -> Self {
        Failure::Core(e)
    }
}

type Run = Result<u8, Failure>;

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

fn exit_code(e: &BzError) -> u8 {
    match e {
        BzError::Capacity { .. } | BzError::Stabilization { .. } | BzError::Evaluation(_) => {
            EXIT_CAPACITY
        }
        BzError::Integrity(_) | BzError::Overflow => EXIT_FAILURE,
        BzError::Domain(_) | BzError::Parse(_) => EXIT_USAGE,
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn budget(flag: Option<usize>) -> Result<usize, Failure> {
    let b = match flag {
        Some(b) => b,
        None => match std::env::var(BUDGET_ENV) {
            Ok(v) => v
                .trim()
                .parse()
                .map_err(|_| usage(format!("{BUDGET_ENV}={v} is not a count")))?,
            Err(_) => DEFAULT_BUDGET,
        },
    };
    if b == 0 {
        return Err(usage("budget must be positive"));
    }
    Ok(b)
}

fn parse_interval(s: &str) -> Result<Interval, Failure> {
    let (a, b) = s
        .split_once(':')
        .ok_or_else(|| usage(format!("interval {s:?} is not lo:hi")))?;
    let lo = a
        .trim()
        .parse()
        .map_err(|_| usage(format!("bad bound {a:?}")))?;
    let hi = b
        .trim()
        .parse()
        .map_err(|_| usage(format!("bad bound {b:?}")))?;
    Interval::new(lo, hi).map_err(|e| usage(e.to_string()))
}

fn dominant(coeffs: &[i64], rank: usize) -> Result<DominantWeight, Failure> {
    if coeffs.len() != rank {
        return Err(usage(format!(
            "lambda needs {rank} coefficients, got {}",
            coeffs.len()
        )));
    }
    DominantWeight::new(coeffs.to_vec()).map_err(|e| usage(e.to_string()))
}

fn load_graph(path: &Path) -> Result<CrystalGraph, Failure> {
    CrystalGraph::from_json(&read(path)?).map_err(|e| usage(format!("{}: {e}", path.display())))
}

/// λ from the flag, else the one stored with the graph.
fn graph_lambda(
    g: &CrystalGraph,
    flag: Option<Vec<i64>>,
) -> Result<Option<DominantWeight>, Failure> {
    match flag.or_else(|| g.lambda.clone()) {
        Some(c) => Ok(Some(dominant(&c, g.cartan.rank())?)),
        None => Ok(None),
    }
}

fn run_validate(file: &Path) -> Run {
    let m: FiniteBZDatum = serde_json::from_str(&read(file)?)
        .map_err(|e| usage(format!("{}: {e}", file.display())))?;
    let rep = validate(&m);
    println!("checked {} relations on {}", rep.checked, m.interval());
    for v in rep.violations.iter().take(20) {
        println!("violation: {v:?}");
    }
    if rep.passed() {
        println!("valid");
        Ok(0)
    } else {
        println!("{} violations", rep.violations.len());
        Ok(EXIT_FAILURE)
    }
}

fn emit(g: &CrystalGraph, out: Option<&Path>, dot: Option<&Path>) -> Result<(), Failure> {
    match out {
        Some(p) => write(p, &g.to_json())?,
        None if dot.is_none() => println!("{}", g.to_json()),
        None => {}
    }
    if let Some(p) = dot {
        write(p, &g.to_dot())?;
    }
    Ok(())
}

fn finish<T>(res: Result<T, GenError<T>>, graph: impl Fn(&T) -> &CrystalGraph, a: &GenArgs) -> Run {
    match res {
        Ok(c) => {
            let g = graph(&c);
            emit(g, a.out.as_deref(), a.dot.as_deref())?;
            eprintln!("{} nodes, {} edges", g.nodes.len(), g.edges.len());
            Ok(0)
        }
        Err(GenError { error, partial }) => {
            if let Some(c) = partial {
                let g = graph(&*c);
                emit(g, a.out.as_deref(), a.dot.as_deref())?;
                eprintln!("partial graph with {} nodes written", g.nodes.len());
            }
            Err(Failure::Core(error))
        }
    }
}

fn run_gen(a: &GenArgs) -> Run {
    let budget = budget(a.budget)?;
    match a.kind {
        Kind::Finite => {
            let iv = parse_interval(
                a.interval
                    .as_deref()
                    .ok_or_else(|| usage("--type finite needs --interval"))?,
            )?;
            if a.ell.is_some() {
                return Err(usage("--ell applies to --type affine"));
            }
            match &a.lambda {
                Some(l) => {
                    let l = dominant(l, iv.rank())?;
                    finish(generate_blambda(iv, &l, budget), |c| &c.graph, a)
                }
                None => {
                    let d = a.depth.ok_or_else(|| usage("B(inf) needs --depth"))?;
                    finish(generate_binf(iv, d, budget), |c| &c.graph, a)
                }
            }
        }
        Kind::Affine => {
            let ell = a.ell.ok_or_else(|| usage("--type affine needs --ell"))?;
            if ell < 2 {
                return Err(usage("--ell must be at least 2"));
            }
            if a.interval.is_some() {
                return Err(usage("--interval applies to --type finite"));
            }
            let d = a
                .depth
                .ok_or_else(|| usage("--type affine needs --depth"))?;
            match &a.lambda {
                Some(l) => {
                    let l = dominant(l, (ell + 1) as usize)?;
                    finish(generate_affine_blambda(ell, &l, d, budget), |c| &c.graph, a)
                }
                None => finish(generate_affine_binf(ell, d, budget), |c| &c.graph, a),
            }
        }
    }
}

fn run_component(ell: i64, word: &[i64], gamma: &str) -> Run {
    let g: ChamberWeight =
        serde_json::from_str(gamma).map_err(|e| usage(format!("--gamma: {e}")))?;
    let mut ctx = FoldContext::new(ell).map_err(|e| usage(e.to_string()))?;
    let m = LazyBZElement::from_word(ell, word)?;
    println!("{}", ctx.component(&m, &g)?);
    Ok(0)
}

fn run_stembridge(file: &Path, lambda: Option<Vec<i64>>) -> Run {
    let g = load_graph(file)?;
    let l = graph_lambda(&g, lambda)?;
    let rep = check_stembridge(&g, l.as_ref())?;
    for c in CONDITIONS {
        let t = rep.tally(c);
        println!(
            "{c}: passed {} failed {} skipped {}",
            t.passed, t.failed, t.skipped
        );
        for w in t.witnesses.iter().take(5) {
            println!("  witness: node {} p {} q {}", w.node, w.p, w.q);
        }
    }
    println!("connected: {}", rep.connected);
    Ok(if rep.passed() { 0 } else { EXIT_FAILURE })
}

fn run_char(file: &Path, oracle: Oracle, lambda: Option<Vec<i64>>) -> Run {
    let g = load_graph(file)?;
    let l = match oracle {
        Oracle::Kostant => {
            if lambda.is_some() {
                return Err(usage("--lambda applies to --oracle freudenthal"));
            }
            if g.lambda.is_some() {
                return Err(usage(
                    "graph has a highest weight; use --oracle freudenthal",
                ));
            }
            None
        }
        Oracle::Freudenthal => Some(
            graph_lambda(&g, lambda)?
                .ok_or_else(|| usage("--oracle freudenthal needs --lambda"))?,
        ),
    };
    let rep = compare_character(&g, l.as_ref())?;
    println!(
        "depth {}: {} weights, {} nodes, {} mismatches",
        rep.depth,
        rep.weights_checked,
        rep.nodes_checked,
        rep.mismatches.len()
    );
    for m in &rep.mismatches {
        println!(
            "  beta {:?}: expected {} found {}",
            m.beta, m.expected, m.found
        );
    }
    Ok(if rep.passed() { 0 } else { EXIT_FAILURE })
}

fn run_export(file: &Path, format: Format, out: Option<&Path>) -> Run {
    let g = load_graph(file)?;
    let text = match format {
        Format::Json => g.to_json(),
        Format::Dot => g.to_dot(),
    };
    match out {
        Some(p) => write(p, &text)?,
        None => println!("{text}"),
    }
    Ok(0)
}

fn run(cli: Cli) -> Run {
    match cli.command {
        Command::Validate { file } => run_validate(&file),
        Command::Gen(a) => run_gen(&a),
        Command::Component { ell, word, gamma } => run_component(ell, &word, &gamma),
        Command::CheckStembridge { file, lambda } => run_stembridge(&file, lambda),
        Command::Char {
            file,
            oracle,
            lambda,
        } => run_char(&file, oracle, lambda),
        Command::Export { file, format, out } => run_export(&file, format, out.as_deref()),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(Failure::Usage(msg)) => {
            eprintln!("bzcli: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Core(e)) => {
            eprintln!("bzcli: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
