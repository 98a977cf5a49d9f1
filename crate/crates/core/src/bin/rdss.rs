//! Command-line front end: deterministic `key = value` reports over the
//! library pipelines, with file formats shared by the graph, codebook,
//! and cover parsers.
//!
//! Exit codes: 0 success (and, for reports, all verdicts passing),
//! 1 input or feasibility error, 2 budget exhaustion or an incomplete
//! randomized cover.

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};

use rdss_core::alphabet::format_word;
use rdss_core::confusion::{parse_codebook, Codebook};
use rdss_core::covering::parse_cover;
use rdss_core::duality::{
    duality_report, index_from_rdss, vector_report, verify_index_code, IndexCodeSpec, IndexMethod,
};
use rdss_core::graph::{
    complete_graph, cycle_graph, empty_graph, fig1_graph, parse_graph, StorageGraph,
};
use rdss_core::search::{dimension, minrank, rdss_exact};
use rdss_core::{Error, Limits};

#[derive(Parser)]
#[command(
    name = "rdss",
    version,
    about = "Storage codes, index codes, and the bounds tying them together"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Alphabet size.
    #[arg(long, default_value_t = 2)]
    q: u32,
    /// Seed for randomized methods; all randomness flows from it.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Abort before materializing more than this many words.
    #[arg(long, default_value_t = 1 << 20)]
    max_space: u64,
    /// Time budget in seconds for exhaustive searches.
    #[arg(long, default_value_t = 60.0)]
    time_budget: f64,
    /// Also write the primary artifact (codebook, matrix, cover,
    /// graph, or report) to this path.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Human-readable table instead of key = value lines.
    #[arg(long)]
    pretty: bool,
}

impl Common {
    fn limits(&self) -> Limits {
        Limits::default()
            .with_max_space(self.max_space)
            .with_time_budget(Duration::from_secs_f64(self.time_budget.max(0.0)))
    }
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    Greedy,
    Hybrid,
    Random,
}

#[derive(Subcommand)]
enum Command {
    /// Exact maximum storage code for a graph (branch and bound).
    Rdss {
        graph: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Minimum rank over F_q of any matrix fitting the graph.
    Minrank {
        graph: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Build an index code from a storage code by translate covering.
    Index {
        graph: PathBuf,
        /// Codebook file; omit with --auto to search for one first.
        codebook: Option<PathBuf>,
        /// Find the maximum storage code first and use it as the base.
        #[arg(long)]
        auto: bool,
        /// Cover construction.
        #[arg(long, value_enum, default_value_t = MethodArg::Greedy)]
        method: MethodArg,
        /// Translate count for the random method.
        #[arg(long)]
        m: Option<u64>,
        #[command(flatten)]
        common: Common,
    },
    /// Check a serialized index code (graph + codebook + cover).
    Verify {
        graph: PathBuf,
        codebook: PathBuf,
        cover: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Full two-sided report: search, minrank, cover, verdicts.
    Report {
        graph: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// The report over the lifted alphabet q^p.
    VectorReport {
        graph: PathBuf,
        /// Block length of the lift; 1 reproduces `report`.
        #[arg(long, default_value_t = 1)]
        p: u32,
        #[command(flatten)]
        common: Common,
    },
    /// Write a named family graph in the canonical file format.
    Gen {
        /// cycle, complete, empty, or fig1.
        family: String,
        /// Vertex count; fig1 is fixed at 5.
        n: Option<usize>,
        #[command(flatten)]
        common: Common,
    },
}

enum Failure {
    Core(Error),
    Io(PathBuf, std::io::Error),
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Core(e) => write!(f, "{e}"),
            Failure::Io(path, e) => write!(f, "{}: {e}", path.display()),
            Failure::Usage(msg) => write!(f, "{msg}"),
        }
    }
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::Core(Error::TimeBudgetExceeded)
            | Failure::Core(Error::IncompleteCover { .. }) => 2,
            _ => 1,
        }
    }
}

fn read_file(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Io(path.to_path_buf(), e))
}

fn write_file(path: &Path, content: &str) -> Result<(), Failure> {
    std::fs::write(path, content).map_err(|e| Failure::Io(path.to_path_buf(), e))
}

fn load_graph(path: &Path) -> Result<StorageGraph, Failure> {
    Ok(parse_graph(&read_file(path)?)?)
}

fn load_codebook(path: &Path) -> Result<Codebook, Failure> {
    Ok(parse_codebook(&read_file(path)?)?)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(failure) => {
            eprintln!("error: {failure}");
            ExitCode::from(failure.exit_code())
        }
    }
}

fn run(command: Command) -> Result<u8, Failure> {
    match command {
        Command::Rdss { graph, common } => cmd_rdss(&graph, &common),
        Command::Minrank { graph, common } => cmd_minrank(&graph, &common),
        Command::Index {
            graph,
            codebook,
            auto,
            method,
            m,
            common,
        } => cmd_index(&graph, codebook.as_deref(), auto, method, m, &common),
        Command::Verify {
            graph,
            codebook,
            cover,
            common,
        } => cmd_verify(&graph, &codebook, &cover, &common),
        Command::Report { graph, common } => cmd_report(&graph, 1, &common),
        Command::VectorReport { graph, p, common } => cmd_report(&graph, p, &common),
        Command::Gen { family, n, common } => cmd_gen(&family, n, &common),
    }
}

fn cmd_rdss(graph: &Path, common: &Common) -> Result<u8, Failure> {
    let g = load_graph(graph)?;
    let limits = common.limits();
    let result = rdss_exact(&g, common.q, &limits)?;
    println!("n = {}", g.n());
    println!("q = {}", common.q);
    println!("rdss_size = {}", result.size);
    println!("rdss_dim = {:.6}", dimension(result.size, common.q));
    println!("rdss_exact = {}", result.exact);
    println!("nodes_explored = {}", result.nodes_explored);
    eprintln!("elapsed_ms = {}", result.elapsed.as_millis());
    if let Some(out) = &common.out {
        write_file(out, &result.codebook.to_file_string())?;
    }
    Ok(if result.exact { 0 } else { 2 })
}

fn cmd_minrank(graph: &Path, common: &Common) -> Result<u8, Failure> {
    let g = load_graph(graph)?;
    let limits = common.limits();
    let result = minrank(&g, common.q, &limits)?;
    println!("n = {}", g.n());
    println!("q = {}", common.q);
    println!("minrank = {}", result.rank);
    println!("linear_dim = {}", g.n() as u32 - result.rank);
    for row in result.witness.to_display_string().lines() {
        println!("witness_row = {row}");
    }
    if let Some(out) = &common.out {
        write_file(out, &result.witness.to_display_string())?;
    }
    Ok(0)
}

fn method_of(method: MethodArg, m: Option<u64>, seed: u64) -> Result<IndexMethod, Failure> {
    Ok(match method {
        MethodArg::Greedy => IndexMethod::Greedy,
        MethodArg::Hybrid => IndexMethod::Hybrid,
        MethodArg::Random => IndexMethod::Random {
            seed,
            m: m.ok_or_else(|| Failure::Usage("--method random requires --m <count>".to_string()))?,
        },
    })
}

fn method_tag(method: MethodArg) -> &'static str {
    match method {
        MethodArg::Greedy => "greedy",
        MethodArg::Hybrid => "hybrid",
        MethodArg::Random => "random",
    }
}

fn cmd_index(
    graph: &Path,
    codebook: Option<&Path>,
    auto: bool,
    method: MethodArg,
    m: Option<u64>,
    common: &Common,
) -> Result<u8, Failure> {
    let g = load_graph(graph)?;
    let limits = common.limits();
    let (base, base_ref) = match (codebook, auto) {
        (Some(path), false) => (load_codebook(path)?, path.display().to_string()),
        (None, true) => {
            let result = rdss_exact(&g, common.q, &limits)?;
            eprintln!("auto base: {} words, exact = {}", result.size, result.exact);
            (result.codebook, "auto".to_string())
        }
        _ => {
            return Err(Failure::Usage(
                "provide a codebook file or --auto, not both".to_string(),
            ))
        }
    };
    if base.q() != common.q {
        return Err(Failure::Usage(format!(
            "codebook alphabet {} does not match --q {}",
            base.q(),
            common.q
        )));
    }
    let spec = index_from_rdss(&base, &g, method_of(method, m, common.seed)?, &limits)?;
    let verification = verify_index_code(&spec, &limits)?;
    if !verification.valid {
        let (word, receiver) = verification.failure.expect("invalid outcome has witness");
        return Err(Failure::Usage(format!(
            "constructed index code failed verification at word {} receiver {}",
            format_word(&word, base.q()),
            receiver + 1
        )));
    }
    println!("n = {}", g.n());
    println!("q = {}", common.q);
    println!("base_size = {}", base.len());
    println!("method = {}", method_tag(method));
    println!("index_classes = {}", spec.m());
    println!("index_length_symbols = {}", spec.length_symbols());
    println!("verified = true");
    if let Some(out) = &common.out {
        write_file(out, &spec.cover().to_file_string(&base_ref))?;
        if base_ref == "auto" {
            let mut base_path = out.as_os_str().to_owned();
            base_path.push(".base");
            write_file(Path::new(&base_path), &base.to_file_string())?;
        }
    }
    Ok(0)
}

fn cmd_verify(graph: &Path, codebook: &Path, cover: &Path, common: &Common) -> Result<u8, Failure> {
    let g = load_graph(graph)?;
    let base = load_codebook(codebook)?;
    let limits = common.limits();
    let cover = parse_cover(&read_file(cover)?, &base, &limits)?;
    let spec = IndexCodeSpec::new(&g, cover)?;
    let verification = verify_index_code(&spec, &limits)?;
    println!("index_classes = {}", spec.m());
    println!("index_length_symbols = {}", spec.length_symbols());
    println!("valid = {}", verification.valid);
    if let Some((word, receiver)) = verification.failure {
        println!("witness_word = {}", format_word(&word, base.q()));
        println!("witness_receiver = {}", receiver + 1);
    }
    Ok(if verification.valid { 0 } else { 1 })
}

fn cmd_report(graph: &Path, p: u32, common: &Common) -> Result<u8, Failure> {
    let g = load_graph(graph)?;
    let limits = common.limits();
    let report = if p == 1 {
        duality_report(&g, common.q, &limits)?
    } else {
        vector_report(&g, common.q, p, &limits)?
    };
    let text = if common.pretty {
        report.to_pretty_string()
    } else {
        report.to_report_string()
    };
    print!("{text}");
    if let Some(out) = &common.out {
        write_file(out, &text)?;
    }
    Ok(if report.all_verdicts_pass() { 0 } else { 1 })
}

fn cmd_gen(family: &str, n: Option<usize>, common: &Common) -> Result<u8, Failure> {
    let g = match family {
        "cycle" => cycle_graph(n.ok_or_else(usage_n)?)?,
        "complete" => complete_graph(n.ok_or_else(usage_n)?)?,
        "empty" => empty_graph(n.ok_or_else(usage_n)?)?,
        "fig1" => {
            if let Some(n) = n {
                if n != 5 {
                    return Err(Failure::Usage(format!(
                        "fig1 is a fixed 5-vertex graph, not {n}"
                    )));
                }
            }
            fig1_graph()
        }
        other => {
            return Err(Failure::Usage(format!(
                "unknown family '{other}': expected cycle, complete, empty, or fig1"
            )))
        }
    };
    let text = g.to_file_string();
    match &common.out {
        Some(out) => write_file(out, &text)?,
        None => print!("{text}"),
    }
    Ok(0)
}

fn usage_n() -> Failure {
    Failure::Usage("this family requires a vertex count".to_string())
}
