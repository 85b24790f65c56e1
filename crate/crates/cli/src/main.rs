//! `ssc`: solve, verify, generate and benchmark subset square colouring
//! instances.
//!
//! Exit codes: 0 YES / valid, 1 NO / invalid, 2 bad input, 3 resource
//! budget exceeded, 4 disagreement between solvers.

mod bench;
mod family;

use std::fs;
use std::io::{self, Write as _};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use ssc_core::families::{generate, parse_x3c, vc_to_chordal, x3c_to_ssc};
use ssc_core::param::{nd_kernelize, parse_structural_sets, type_partition};
use ssc_core::treewidth::parse_td;
use ssc_core::{
    chromatic_number, parse_coloring, parse_graph, solve, verify, Algorithm, Coloring, Graph, OracleBudget,
    SolveOptions, SscError, ViolationKind,
};

const MISMATCH: u8 = 4;

#[derive(Parser)]
#[command(name = "ssc", version, about = "Subset square colouring solvers")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Csv,
}

#[derive(Args)]
struct SolverFlags {
    /// oracle, twdp, vc, nd, cluster, twincover, mw or auto.
    #[arg(long, default_value = "auto")]
    algo: Algorithm,
    /// Largest graph (or component) the brute-force oracle accepts.
    #[arg(long)]
    budget_n: Option<usize>,
    /// Tree decomposition for twdp, PACE `.td` format.
    #[arg(long)]
    td_file: Option<PathBuf>,
    /// Structural sets (`vc`, `tc`, `cd` lines) for the parameterized solvers.
    #[arg(long)]
    sets: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether the graph has a subset square colouring with q colours.
    Solve {
        graph: PathBuf,
        #[arg(long)]
        q: usize,
        #[command(flatten)]
        solver: SolverFlags,
        /// Write the witness colouring here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        /// Re-decide with this algorithm too; exit 4 if the answers differ.
        #[arg(long)]
        check: Option<Algorithm>,
    },
    /// Smallest q admitting a subset square colouring.
    Chi {
        graph: PathBuf,
        #[command(flatten)]
        solver: SolverFlags,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Check a colouring file against a graph; violations one per line.
    Verify { graph: PathBuf, coloring: PathBuf },
    /// Emit a family instance, or reduce an X3C instance (`x3c-reduce FILE`)
    /// or a vertex cover instance (`vc-chordal GRAPH`).
    Gen {
        family: String,
        args: Vec<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Colour count for the reductions (k for vc-chordal).
        #[arg(long, default_value_t = 2)]
        q: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Neighbourhood-diversity kernel for (graph, q).
    Kernelize {
        graph: PathBuf,
        #[arg(long)]
        q: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a matrix file of `<family> <sizes> <algos> <qs>` lines.
    Bench {
        matrix: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        budget_n: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
    },
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn read_graph(path: &Path) -> Result<Graph> {
    parse_graph(&read(path)?).with_context(|| format!("parsing {}", path.display()))
}

/// Writes to stdout; a reader that went away (`| head`) is not an error.
fn say(text: &str) -> Result<()> {
    match io::stdout().lock().write_all(text.as_bytes()) {
        Err(e) if e.kind() != io::ErrorKind::BrokenPipe => Err(e.into()),
        _ => Ok(()),
    }
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => say(text),
    }
}

fn options(flags: &SolverFlags) -> Result<SolveOptions> {
    let mut opts = SolveOptions::default();
    if let Some(n) = flags.budget_n {
        opts.budget = OracleBudget::with_max_vertices(n);
    }
    if let Some(p) = &flags.td_file {
        opts.td = Some(parse_td(&read(p)?).with_context(|| format!("parsing {}", p.display()))?);
    }
    if let Some(p) = &flags.sets {
        opts.sets = parse_structural_sets(&read(p)?).with_context(|| format!("parsing {}", p.display()))?;
    }
    Ok(opts)
}

fn witness_ok(g: &Graph, q: usize, w: &Coloring) -> bool {
    verify(g, w).map(|r| r.valid).unwrap_or(false) && w.num_colors_used() <= q
}

fn code(yes: bool) -> ExitCode {
    ExitCode::from(if yes { 0 } else { 1 })
}

fn cmd_solve(
    graph: &Path,
    q: usize,
    flags: &SolverFlags,
    out: Option<&Path>,
    format: Format,
    check: Option<Algorithm>,
) -> Result<ExitCode> {
    let g = read_graph(graph)?;
    let opts = options(flags)?;
    let start = Instant::now();
    let rep = solve(&g, q, flags.algo, &opts)?;
    let ms = start.elapsed().as_secs_f64() * 1e3;
    if let Some(w) = &rep.witness {
        if !witness_ok(&g, q, w) {
            eprintln!("error: {} returned an invalid witness", rep.algorithm);
            return Ok(ExitCode::from(MISMATCH));
        }
    }
    if let Some(other) = check {
        let second = solve(&g, q, other, &opts)?;
        if second.witness.is_some() != rep.witness.is_some() {
            eprintln!("mismatch: {} and {} disagree at q={q}", rep.algorithm, second.algorithm);
            return Ok(ExitCode::from(MISMATCH));
        }
    }
    let yes = rep.witness.is_some();
    let answer = if yes { "YES" } else { "NO" };
    let colors = rep.witness.as_ref().map(|w| w.num_colors_used().to_string()).unwrap_or_default();
    match format {
        Format::Text => say(&format!("{answer}\nalgorithm: {}\ntime_ms: {ms:.3}\n", rep.algorithm))?,
        Format::Csv => say(&format!(
            "answer,algo,q,n,m,colors,wall_ms\n{answer},{},{q},{},{},{colors},{ms:.3}\n",
            rep.algorithm,
            g.n(),
            g.m()
        ))?,
    }
    if let Some(w) = &rep.witness {
        if out.is_some() || format == Format::Text {
            emit(out, &w.to_text())?;
        }
    }
    Ok(code(yes))
}

fn cmd_chi(graph: &Path, flags: &SolverFlags, out: Option<&Path>, format: Format) -> Result<ExitCode> {
    let g = read_graph(graph)?;
    let opts = options(flags)?;
    let start = Instant::now();
    let (k, w, algo) = chromatic_number(&g, flags.algo, &opts)?;
    let ms = start.elapsed().as_secs_f64() * 1e3;
    if !witness_ok(&g, k.max(1), &w) && g.n() > 0 {
        eprintln!("error: {algo} returned an invalid witness");
        return Ok(ExitCode::from(MISMATCH));
    }
    match format {
        Format::Text => say(&format!("chi {k}\nalgorithm: {algo}\ntime_ms: {ms:.3}\n"))?,
        Format::Csv => say(&format!("chi,algo,n,m,wall_ms\n{k},{algo},{},{},{ms:.3}\n", g.n(), g.m()))?,
    }
    if out.is_some() || format == Format::Text {
        emit(out, &w.to_text())?;
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(graph: &Path, coloring: &Path) -> Result<ExitCode> {
    let g = read_graph(graph)?;
    let col = parse_coloring(&read(coloring)?, g.n()).with_context(|| format!("parsing {}", coloring.display()))?;
    let report = verify(&g, &col)?;
    let mut text = String::new();
    for (v, kind) in &report.violations {
        text.push_str(&match kind {
            ViolationKind::Undominated => format!("vertex {v}: no coloured vertex in N[{v}]\n"),
            ViolationKind::ColourRepeated(c) => format!("vertex {v}: colour {c} repeated in N[{v}]\n"),
        });
    }
    if report.valid {
        text.push_str(&format!("valid ({} colours)\n", col.num_colors_used()));
    }
    say(&text)?;
    Ok(code(report.valid))
}

fn cmd_gen(name: &str, args: &[String], seed: u64, q: usize, out: Option<&Path>) -> Result<ExitCode> {
    let one_path = || -> Result<&Path> {
        match args {
            [p] => Ok(Path::new(p)),
            _ => anyhow::bail!("{name} takes one input file"),
        }
    };
    let g = match name {
        "x3c-reduce" => {
            let p = one_path()?;
            let inst = parse_x3c(&read(p)?).with_context(|| format!("parsing {}", p.display()))?;
            x3c_to_ssc(&inst, q)?.0
        }
        "vc-chordal" => vc_to_chordal(&read_graph(one_path()?)?, q)?.0,
        _ => generate(&family::parse_family(name, args, seed)?)?.graph,
    };
    emit(out, &g.to_text())?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_kernelize(graph: &Path, q: usize, out: Option<&Path>) -> Result<ExitCode> {
    let g = read_graph(graph)?;
    let (kernel, mapping) = nd_kernelize(&g, q);
    let mut text = format!(
        "# nd kernel for q={q}: {} of {} vertices kept, {} types\n",
        kernel.n(),
        g.n(),
        type_partition(&g).len()
    );
    for (v, k) in mapping.iter().enumerate() {
        if let Some(k) = k {
            text.push_str(&format!("# keep {v} -> {k}\n"));
        }
    }
    text.push_str(&kernel.to_text());
    emit(out, &text)?;
    Ok(ExitCode::SUCCESS)
}

fn threads() -> Result<Option<usize>> {
    match std::env::var("SSC_THREADS") {
        Ok(v) => Ok(Some(v.parse().with_context(|| format!("SSC_THREADS='{v}'"))?)),
        Err(_) => Ok(None),
    }
}

fn cmd_bench(matrix: &Path, seed: u64, budget_n: Option<usize>, out: Option<&Path>, format: Format) -> Result<ExitCode> {
    let matrix = bench::parse_matrix(&read(matrix)?)?;
    let mut opts = SolveOptions::default();
    if let Some(n) = budget_n {
        opts.budget = OracleBudget::with_max_vertices(n);
    }
    let records = bench::run(&matrix, seed, &opts, threads()?)?;
    let mut text = String::new();
    if format == Format::Csv {
        text.push_str(bench::HEADER);
        text.push('\n');
    }
    for r in &records {
        text.push_str(&match format {
            Format::Csv => r.to_csv(),
            Format::Text => r.to_text(),
        });
        text.push('\n');
    }
    emit(out, &text)?;
    let bad = bench::mismatches(&records);
    for (inst, q) in &bad {
        eprintln!("mismatch: algorithms disagree on {inst} at q={q}");
    }
    Ok(if bad.is_empty() { ExitCode::SUCCESS } else { ExitCode::from(MISMATCH) })
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Solve { graph, q, solver, out, format, check } => {
            cmd_solve(&graph, q, &solver, out.as_deref(), format, check)
        }
        Command::Chi { graph, solver, out, format } => cmd_chi(&graph, &solver, out.as_deref(), format),
        Command::Verify { graph, coloring } => cmd_verify(&graph, &coloring),
        Command::Gen { family, args, seed, q, out } => cmd_gen(&family, &args, seed, q, out.as_deref()),
        Command::Kernelize { graph, q, out } => cmd_kernelize(&graph, q, out.as_deref()),
        Command::Bench { matrix, seed, budget_n, out, format } => {
            cmd_bench(&matrix, seed, budget_n, out.as_deref(), format)
        }
    }
}

fn exit_code(err: &anyhow::Error) -> u8 {
    match err.chain().find_map(|e| e.downcast_ref::<SscError>()) {
        Some(SscError::Resource(_)) => 3,
        _ => 2,
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(exit_code(&err))
        }
    }
}
