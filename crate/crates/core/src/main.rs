use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use kempe3k1::brooks::brooks_color_components;
use kempe3k1::canon::corpus_3k1_free;
use kempe3k1::chromatic::{chromatic_number, greedy_dsatur, Coloring};
use kempe3k1::graph::Graph;
use kempe3k1::graph6::{from_graph6, to_graph6};
use kempe3k1::harness::{
    read_graph6, read_records_file, report, verify_corpus, write_records, CorpusSource,
};
use kempe3k1::kempe::{color_3k1_free, SearchBudget};

const EXIT_VIOLATION: u8 = 1;
const EXIT_USAGE: u8 = 2;

#[derive(Parser)]
#[command(name = "kempe3k1", version, about = "Coloring experiments on 3K1-free graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write canonical graph6 of every 3K1-free graph on N vertices.
    Enumerate {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        min_delta: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Check the coloring bounds on a corpus and write JSON-lines records.
    Verify {
        #[command(flatten)]
        input: VerifyInput,
        #[arg(long, default_value_t = 0)]
        min_delta: usize,
        #[arg(long)]
        report: PathBuf,
        /// Depth of the move search.
        #[arg(long)]
        budget: Option<usize>,
    },
    /// Color graphs and print one JSON line per graph.
    Color {
        #[command(flatten)]
        input: ColorInput,
        #[arg(long, value_enum)]
        method: Method,
        #[arg(long)]
        budget: Option<usize>,
    },
    /// Summarize a records file.
    Stats {
        #[arg(long)]
        report: PathBuf,
        #[arg(long)]
        csv: bool,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct VerifyInput {
    #[arg(long)]
    n: Option<usize>,
    #[arg(long = "in")]
    input: Option<PathBuf>,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct ColorInput {
    #[arg(long)]
    graph6: Option<String>,
    #[arg(long = "in")]
    input: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum Method {
    Exact,
    Brooks,
    Dsatur,
    Extend,
}

#[derive(Serialize)]
struct ColorLine<'a> {
    graph6: String,
    method: Method,
    colors_used: usize,
    coloring: &'a [usize],
}

fn budget(depth: Option<usize>) -> SearchBudget {
    let mut b = SearchBudget::default();
    if let Some(d) = depth {
        b.depth = d;
    }
    b
}

fn create(path: &PathBuf) -> Result<BufWriter<File>, String> {
    File::create(path)
        .map(BufWriter::new)
        .map_err(|e| format!("{}: {e}", path.display()))
}

fn color(g: &Graph, method: Method, b: SearchBudget) -> Result<Coloring, String> {
    if g.order() == 0 {
        return Ok(Coloring::uncolored(0, 1));
    }
    match method {
        Method::Exact => chromatic_number(g).map(|(_, c)| c).map_err(|e| e.to_string()),
        Method::Brooks => brooks_color_components(g).map_err(|e| e.to_string()),
        Method::Dsatur => Ok(greedy_dsatur(g)),
        Method::Extend => color_3k1_free(g, b).map(|e| e.coloring).map_err(|e| e.to_string()),
    }
}

fn run(cli: Cli) -> Result<u8, String> {
    match cli.command {
        Command::Enumerate { n, min_delta, out } => {
            let corpus = corpus_3k1_free(n, min_delta).map_err(|e| e.to_string())?;
            let mut w = create(&out)?;
            for c in &corpus {
                writeln!(w, "{}", c.id).map_err(|e| e.to_string())?;
            }
            w.flush().map_err(|e| e.to_string())?;
            eprintln!("{} graphs", corpus.len());
            Ok(0)
        }
        Command::Verify { input, min_delta, report: path, budget: depth } => {
            let source = match (input.n, input.input) {
                (Some(n), _) => CorpusSource::Enumerate { n },
                (None, Some(p)) => CorpusSource::File(p),
                (None, None) => unreachable!("clap requires one input"),
            };
            let run = verify_corpus(&source, min_delta, budget(depth)).map_err(|e| e.to_string())?;
            write_records(create(&path)?, &run.records).map_err(|e| e.to_string())?;
            print!("{}", report(&run.records).to_text());
            Ok(if run.summary.has_violations() { EXIT_VIOLATION } else { 0 })
        }
        Command::Color { input, method, budget: depth } => {
            let graphs = match (input.graph6, input.input) {
                (Some(s), _) => vec![from_graph6(s.trim()).map_err(|e| e.to_string())?],
                (None, Some(p)) => {
                    let f = File::open(&p).map_err(|e| format!("{}: {e}", p.display()))?;
                    read_graph6(io::BufReader::new(f)).map_err(|e| e.to_string())?
                }
                (None, None) => unreachable!("clap requires one input"),
            };
            let stdout = io::stdout();
            let mut out = stdout.lock();
            for g in &graphs {
                let c = color(g, method, budget(depth))?;
                let line = ColorLine {
                    graph6: to_graph6(g),
                    method,
                    colors_used: c.used_colors(),
                    coloring: c.colors(),
                };
                let json = serde_json::to_string(&line).map_err(|e| e.to_string())?;
                writeln!(out, "{json}").map_err(|e| e.to_string())?;
            }
            Ok(0)
        }
        Command::Stats { report: path, csv } => {
            let records = read_records_file(&path).map_err(|e| e.to_string())?;
            let rep = report(&records);
            if csv {
                print!("{}", rep.to_csv());
            } else {
                print!("{}", rep.to_text());
            }
            Ok(if rep.summary.has_violations() { EXIT_VIOLATION } else { 0 })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}
