use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use outbranch::digraph::{parse_instance, serialize_instance, ParsedInstance};
use outbranch::harness::{self, BenchCase, GeneratorSpec, Problem};
use outbranch::iob::{solve_iob, IobOptions, Passthrough};
use outbranch::kpath::{solve_kpath_ballcover, KpathOptions};
use outbranch::lob::{solve_lob, LobOptions};
use outbranch::{Error, Result};

#[derive(Parser)]
#[command(
    name = "outbranch",
    version,
    about = "Out-branching and directed path solvers"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Args)]
struct Common {
    /// Instance file; stdin when omitted.
    #[arg(long)]
    input: Option<PathBuf>,
    #[arg(long)]
    k: usize,
    /// Overrides the instance's root line.
    #[arg(long)]
    root: Option<usize>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    /// Zero all timing fields.
    #[arg(long)]
    deterministic: bool,
}

#[derive(Subcommand)]
enum Command {
    /// k-Leaf Out-Branching.
    SolveLob {
        #[command(flatten)]
        common: Common,
        /// Largest decomposition width to solve.
        #[arg(long)]
        budget: Option<usize>,
        /// Also write the per-root structure report to stderr.
        #[arg(long, value_enum)]
        report: Option<Format>,
    },
    /// k-Internal Out-Branching.
    SolveIob {
        #[command(flatten)]
        common: Common,
        /// Most sub-instances per root.
        #[arg(long)]
        budget: Option<u128>,
    },
    /// Directed path with at least k arcs.
    SolveKpath {
        #[command(flatten)]
        common: Common,
        /// Number of balls.
        #[arg(long)]
        b: usize,
        /// Most centre subsets.
        #[arg(long)]
        budget: Option<u128>,
    },
    /// Compare a solver with brute force.
    Verify {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        problem: Problem,
        #[arg(long, default_value_t = 1)]
        b: usize,
    },
    /// Structure of the leaf reduction and treewidth before/after.
    Analyze {
        #[command(flatten)]
        common: Common,
    },
    /// Write a generated instance.
    Generate {
        #[arg(long, default_value = "grid")]
        family: String,
        #[arg(long, default_value_t = 4)]
        rows: usize,
        #[arg(long, default_value_t = 4)]
        cols: usize,
        #[arg(long, default_value_t = 20)]
        n: usize,
        #[arg(long, default_value_t = 30)]
        m: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 0.5)]
        p2: f64,
        #[arg(long)]
        root: Option<usize>,
    },
    /// Run a suite and print CSV.
    Bench {
        /// JSON array of cases; a small grid suite when omitted.
        #[arg(long)]
        suite: Option<PathBuf>,
        #[arg(long)]
        deterministic: bool,
    },
}

fn read_input(path: &Option<PathBuf>) -> Result<ParsedInstance> {
    let text = match path {
        Some(p) => std::fs::read_to_string(p)?,
        None => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s)?;
            s
        }
    };
    parse_instance(&text)
}

fn elapsed(start: Instant, deterministic: bool) -> f64 {
    if deterministic {
        0.0
    } else {
        (start.elapsed().as_secs_f64() * 1e6).round() / 1e3
    }
}

fn csv_line(fields: &[String]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(fields)
        .map_err(|e| Error::Io(e.to_string()))?;
    let bytes = w.into_inner().map_err(|e| Error::Io(e.to_string()))?;
    Ok(String::from_utf8_lossy(&bytes).into_owned())
}

fn render(value: &Value, format: Format, columns: &[&str]) -> Result<String> {
    match format {
        Format::Json => Ok(serde_json::to_string_pretty(value)
            .map_err(|e| Error::Internal(e.to_string()))?
            + "\n"),
        Format::Csv => {
            let header: Vec<String> = columns.iter().map(|c| c.to_string()).collect();
            let row: Vec<String> = columns
                .iter()
                .map(|c| match &value[*c] {
                    Value::Null => String::new(),
                    Value::String(s) => s.clone(),
                    v => v.to_string(),
                })
                .collect();
            Ok(csv_line(&header)? + &csv_line(&row)?)
        }
    }
}

fn default_suite() -> Vec<BenchCase> {
    (3..=5)
        .map(|side| BenchCase {
            generator: GeneratorSpec::grid(side, side, 1, 0.5),
            problems: vec![Problem::Lob, Problem::Iob, Problem::Kpath],
            k: 3,
            b: 2,
            root: Some(0),
        })
        .collect()
}

fn run(cli: Cli) -> Result<String> {
    const SOLVE_COLUMNS: [&str; 6] = ["problem", "k", "answer", "root", "value", "elapsed_ms"];
    match cli.command {
        Command::SolveLob {
            common,
            budget,
            report,
        } => {
            let inst = read_input(&common.input)?;
            let root = common.root.or(inst.root);
            let mut opts = LobOptions::default();
            if let Some(w) = budget {
                opts.max_width = w;
            }
            let start = Instant::now();
            let sol = solve_lob(&inst.digraph, common.k, root, &opts)?;
            let t = elapsed(start, common.deterministic);
            if let Some(fmt) = report {
                let text = match fmt {
                    Format::Json => serde_json::to_string_pretty(&sol.trace)
                        .map_err(|e| Error::Internal(e.to_string()))?,
                    Format::Csv => {
                        let mut out = csv_line(
                            &[
                                "root",
                                "status",
                                "alpha",
                                "beta",
                                "s_geq2",
                                "s_eq1",
                                "s",
                                "guarantee",
                                "width",
                                "max_leaves",
                            ]
                            .map(String::from),
                        )?;
                        for tr in &sol.trace {
                            let r = tr.report.as_ref();
                            let f = |x: Option<usize>| x.map(|v| v.to_string()).unwrap_or_default();
                            out += &csv_line(&[
                                tr.root.to_string(),
                                format!("{:?}", tr.status).to_lowercase(),
                                f(r.map(|r| r.alpha)),
                                f(r.map(|r| r.beta)),
                                f(r.map(|r| r.s_geq2_size)),
                                f(r.map(|r| r.s_eq1_size)),
                                f(r.map(|r| r.extracted_s.len())),
                                r.map(|r| {
                                    serde_json::to_value(r.guarantee)
                                        .unwrap()
                                        .as_str()
                                        .unwrap_or("")
                                        .to_string()
                                })
                                .unwrap_or_default(),
                                f(tr.width),
                                f(tr.max_leaves),
                            ])?;
                        }
                        out
                    }
                };
                eprintln!("{}", text.trim_end());
            }
            let v = json!({
                "problem": "lob",
                "k": common.k,
                "answer": sol.answer,
                "root": sol.root,
                "value": sol.witness.as_ref().map(|w| w.leaf_count()),
                "certificate": sol.certificate,
                "witness": sol.witness.as_ref().map(|w| w.arcs().collect::<Vec<_>>()),
                "elapsed_ms": t,
            });
            render(&v, common.format, &SOLVE_COLUMNS)
        }
        Command::SolveIob { common, budget } => {
            let inst = read_input(&common.input)?;
            let root = common.root.or(inst.root);
            let mut opts = IobOptions::default();
            if let Some(b) = budget {
                opts.budget = b;
            }
            let start = Instant::now();
            let sol = solve_iob(&inst.digraph, common.k, root, &Passthrough, &opts)?;
            let t = elapsed(start, common.deterministic);
            let v = json!({
                "problem": "iob",
                "k": common.k,
                "answer": sol.answer,
                "root": sol.root,
                "value": sol.witness.as_ref().map(|w| w.internal_count()),
                "witness": sol.witness.as_ref().map(|w| w.arcs().collect::<Vec<_>>()),
                "provenance": sol.provenance,
                "stats": sol.stats,
                "elapsed_ms": t,
            });
            render(&v, common.format, &SOLVE_COLUMNS)
        }
        Command::SolveKpath { common, b, budget } => {
            let inst = read_input(&common.input)?;
            let mut opts = KpathOptions::default();
            if let Some(x) = budget {
                opts.budget = x;
            }
            let start = Instant::now();
            let sol = solve_kpath_ballcover(&inst.digraph, common.k, b, &opts)?;
            let t = elapsed(start, common.deterministic);
            let v = json!({
                "problem": "kpath",
                "k": common.k,
                "answer": sol.answer,
                "root": Value::Null,
                "value": sol.path.as_ref().map(|p| p.len() - 1),
                "path": sol.path,
                "centres": sol.centres,
                "stats": sol.stats,
                "elapsed_ms": t,
            });
            render(&v, common.format, &SOLVE_COLUMNS)
        }
        Command::Verify { common, problem, b } => {
            let inst = read_input(&common.input)?;
            let root = common.root.or(inst.root);
            let rep = harness::verify(&inst.digraph, problem, common.k, root, b)?;
            let v = serde_json::to_value(&rep).map_err(|e| Error::Internal(e.to_string()))?;
            render(
                &v,
                common.format,
                &[
                    "problem",
                    "k",
                    "solver_answer",
                    "oracle_answer",
                    "oracle_value",
                    "witness_valid",
                    "agree",
                ],
            )
        }
        Command::Analyze { common } => {
            let inst = read_input(&common.input)?;
            let root = common.root.or(inst.root).unwrap_or(0);
            let rep = harness::analyze(&inst.digraph, root, common.k)?;
            let v = serde_json::to_value(&rep).map_err(|e| Error::Internal(e.to_string()))?;
            let cols: Vec<&str> = v
                .as_object()
                .map(|o| o.keys().map(|k| k.as_str()).collect())
                .unwrap_or_default();
            render(&v, common.format, &cols)
        }
        Command::Generate {
            family,
            rows,
            cols,
            n,
            m,
            seed,
            p2,
            root,
        } => {
            let spec = match family.as_str() {
                "grid" => GeneratorSpec::grid(rows, cols, seed, p2),
                "random-sparse" => GeneratorSpec::random_sparse(n, m, seed, p2),
                other => return Err(Error::Generator(format!("unknown family {other:?}"))),
            };
            let d = harness::generate(&spec)?;
            if let Some(r) = root {
                if r >= d.n() {
                    return Err(Error::Precondition(format!("root {r} is not a vertex")));
                }
            }
            Ok(serialize_instance(&d, root))
        }
        Command::Bench {
            suite,
            deterministic,
        } => {
            let cases: Vec<BenchCase> = match suite {
                Some(p) => serde_json::from_str(&std::fs::read_to_string(p)?).map_err(|e| {
                    Error::Parse {
                        line: e.line(),
                        msg: e.to_string(),
                    }
                })?,
                None => default_suite(),
            };
            harness::bench_csv(&harness::bench(&cases, deterministic)?)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            let line = json!({ "error": e.kind(), "message": e.to_string() });
            eprintln!("{line}");
            ExitCode::from(2)
        }
    }
}
