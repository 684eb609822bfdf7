//! `seqgraph`: build sequence graphs, decide realizability, count
//! realizations, run the exhaustive oracle, emit gadgets and ILP models.
//!
//! Exit codes: 0 success (realizable, verified, found), 1 negative answer,
//! 2 unsupported (outside what the algorithms or budgets can settle),
//! 3 error (bad input, malformed files, usage).

use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use seqgraph::gadgets::{
    clique_gadget, du_chain, dw_ham, expo_capped, find_hamiltonian_path, gw_ham, hamiltonian_witness, hp1, hp2,
    optional_instance, pendant_ends, DEFAULT_EXPO_CAP,
};
use seqgraph::oracle::{self, Constraints, FirstOutcome, Mode, SearchResult, DEFAULT_BUDGET};
use seqgraph::{
    build_words, dpcount, format, gu, ilp, realizes, w2, BigCount, BuildOptions, Error, SeqGraph, Sequence,
};

#[derive(Parser)]
#[command(name = "seqgraph", version, about = "Sequence graph (graph-of-words) toolkit")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Build the graph of a token sequence (all lines of the file, in order).
    Build {
        #[arg(long)]
        window: usize,
        #[arg(long)]
        directed: bool,
        #[arg(long)]
        weighted: bool,
        seq_file: PathBuf,
    },
    /// Decide realizability; exit 0 if realizable, 1 if not, 2 if undecided.
    Realizable {
        #[arg(long)]
        window: usize,
        graph: PathBuf,
        /// Print a verified realization.
        #[arg(long)]
        witness: bool,
        /// Search horizon for directed unweighted graphs at window ≥ 3.
        #[arg(long, default_value_t = 64)]
        max_len: usize,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Print the number of realizations, or "inf".
    Count {
        #[arg(long)]
        window: usize,
        graph: PathBuf,
        /// Count unweighted realizations up to this length only. Weighted
        /// graphs ignore it: their length is forced.
        #[arg(long)]
        max_len: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Exhaustive search over sequences up to a length.
    Oracle {
        #[arg(value_enum)]
        mode: OracleMode,
        #[arg(long)]
        window: usize,
        #[arg(long)]
        max_len: usize,
        graph: PathBuf,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Hardness and lower-bound instance generators.
    Gadget {
        #[command(subcommand)]
        kind: GadgetCmd,
    },
    /// Emit the realizability ILP in LP format.
    ExportIlp {
        #[arg(long)]
        window: usize,
        graph: PathBuf,
    },
    /// Exit 0 iff every sequence in the file realizes the graph.
    Verify {
        #[arg(long)]
        window: usize,
        graph: PathBuf,
        seq_file: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum OracleMode {
    Count,
    First,
    All,
}

#[derive(Subcommand)]
enum GadgetCmd {
    /// G plus two looped vertices joined to everything; prints the window as a comment.
    Clique {
        graph: PathBuf,
        #[arg(long)]
        k: usize,
    },
    /// Split vertex 0 of a digraph into an out-copy and an in-copy.
    Hp1 { graph: PathBuf },
    /// Duplicate vertex 0 of a graph and hang pendants on both copies.
    Hp2 { graph: PathBuf },
    /// Optional-arc instance of a digraph with a source.
    Optional {
        #[arg(long)]
        window: usize,
        graph: PathBuf,
    },
    /// Directed unweighted chain graph; `--witness-out` receives the forced prefix.
    DuChain {
        #[arg(long)]
        window: usize,
        graph: PathBuf,
        #[arg(long)]
        witness_out: Option<PathBuf>,
    },
    /// Weighted digraph from a graph with two pendant vertices.
    DwHam {
        #[arg(long)]
        window: usize,
        graph: PathBuf,
        #[arg(long)]
        witness_out: Option<PathBuf>,
    },
    /// Undirected weight-summed version of `dw-ham`.
    GwHam {
        #[arg(long)]
        window: usize,
        graph: PathBuf,
        #[arg(long)]
        witness_out: Option<PathBuf>,
    },
    /// Digraph whose realizations at window k + 1 are long; `--filtered`
    /// keeps only the arcs of the counting walk.
    Expo {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        filtered: bool,
        #[arg(long, default_value_t = DEFAULT_EXPO_CAP)]
        cap: usize,
        #[arg(long)]
        witness_out: Option<PathBuf>,
    },
    /// Random token sequence, one line, for feeding `build`.
    Random {
        #[arg(long)]
        vertices: usize,
        #[arg(long)]
        length: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

enum Outcome {
    Yes,
    No,
    Unsupported(String),
}

fn read(path: &Path) -> anyhow::Result<String> {
    if path == Path::new("-") {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).context("reading stdin")?;
        return Ok(s);
    }
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn load_graph(path: &Path) -> anyhow::Result<SeqGraph> {
    format::parse_graph(&read(path)?).with_context(|| format!("parsing {}", path.display()))
}

fn write_file(path: &Path, text: &str) -> anyhow::Result<()> {
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

/// Prints `x` only after checking it against `g`.
fn emit_witness(out: &mut impl Write, x: &Sequence, g: &SeqGraph, w: usize) -> anyhow::Result<()> {
    if !realizes(x, g, w) {
        bail!("internal error: witness {x} does not realize the graph");
    }
    writeln!(out, "{}", x.display_with(g))?;
    Ok(())
}

enum Decision {
    Yes(Option<Sequence>),
    No,
    Unknown(String),
}

fn decide(g: &SeqGraph, w: usize, want_witness: bool, max_len: usize, budget: u64) -> anyhow::Result<Decision> {
    if w < 2 {
        return Err(Error::InvalidWindow(w).into());
    }
    let found = |x: Option<Sequence>| match x {
        Some(x) => Decision::Yes(Some(x)),
        None => Decision::No,
    };
    Ok(match (g.is_directed(), g.is_weighted()) {
        (_, true) if w == 2 && !want_witness => {
            if w2::w2_weighted_realizable(g)? {
                Decision::Yes(None)
            } else {
                Decision::No
            }
        }
        (_, true) => found(dpcount::enumerate(g, w, None, 1)?.into_iter().next()),
        (false, false) => found(gu::gu_realizable(g, w)?),
        (true, false) if w == 2 => found(w2::du2_witness(g)?),
        (true, false) => match oracle::first(g, w, max_len, &Constraints::default(), budget) {
            Ok(FirstOutcome::Found(x)) => Decision::Yes(Some(x)),
            Ok(FirstOutcome::Exhausted) => Decision::No,
            Ok(FirstOutcome::Inconclusive) => Decision::Unknown(format!(
                "no realization up to length {max_len}; longer ones are not ruled out"
            )),
            Err(Error::BudgetExceeded(b)) => Decision::Unknown(format!("search budget of {b} expansions exceeded")),
            Err(e) => return Err(e.into()),
        },
    })
}

fn count(g: &SeqGraph, w: usize, max_len: Option<usize>, budget: u64) -> anyhow::Result<Option<BigCount>> {
    if w < 2 {
        return Err(Error::InvalidWindow(w).into());
    }
    Ok(Some(match (g.is_directed(), g.is_weighted(), max_len) {
        (_, true, _) if w == 2 => w2::count_w2(g, budget)?.count,
        (_, true, _) => dpcount::count(g, w, None)?,
        (false, false, Some(l)) => gu::gu_count_bounded(g, w, l)?,
        (false, false, None) if w == 2 => w2::gu2_count(g)?,
        (false, false, None) => gu::gu_count(g, w)?,
        (true, false, Some(l)) => BigCount::Finite(oracle::count_by_length(g, w, l, budget)?.into_iter().sum()),
        (true, false, None) if w == 2 => w2::du2_count(g)?,
        (true, false, None) => return Ok(None),
    }))
}

fn run(cmd: Cmd, out: &mut impl Write) -> anyhow::Result<Outcome> {
    match cmd {
        Cmd::Build {
            window,
            directed,
            weighted,
            seq_file,
        } => {
            let text = read(&seq_file)?;
            let words: Vec<&str> = format::parse_word_lines(&text).into_iter().flatten().collect();
            let (g, _) = build_words(&words.join(" "), BuildOptions::new(window, directed, weighted))?;
            write!(out, "{}", format::write_graph(&g))?;
            Ok(Outcome::Yes)
        }
        Cmd::Realizable {
            window,
            graph,
            witness,
            max_len,
            budget,
        } => {
            let g = load_graph(&graph)?;
            match decide(&g, window, witness, max_len, budget)? {
                Decision::Yes(x) => {
                    if witness {
                        let x = x.context("no witness available")?;
                        emit_witness(out, &x, &g, window)?;
                    }
                    Ok(Outcome::Yes)
                }
                Decision::No => Ok(Outcome::No),
                Decision::Unknown(why) => Ok(Outcome::Unsupported(why)),
            }
        }
        Cmd::Count {
            window,
            graph,
            max_len,
            budget,
        } => {
            let g = load_graph(&graph)?;
            match count(&g, window, max_len, budget)? {
                Some(c) => {
                    writeln!(out, "{c}")?;
                    Ok(Outcome::Yes)
                }
                None => Ok(Outcome::Unsupported(
                    "exact counting for directed unweighted graphs at window >= 3 needs --max-len".into(),
                )),
            }
        }
        Cmd::Oracle {
            mode,
            window,
            max_len,
            graph,
            budget,
        } => {
            let g = load_graph(&graph)?;
            let mode = match mode {
                OracleMode::Count => Mode::Count,
                OracleMode::First => Mode::First,
                OracleMode::All => Mode::All,
            };
            match oracle::search_budget(&g, window, max_len, mode, budget)? {
                SearchResult::Count(c) => writeln!(out, "{c}")?,
                SearchResult::First(None) => return Ok(Outcome::No),
                SearchResult::First(Some(x)) => emit_witness(out, &x, &g, window)?,
                SearchResult::All(xs) => {
                    for x in &xs {
                        emit_witness(out, x, &g, window)?;
                    }
                }
            }
            Ok(Outcome::Yes)
        }
        Cmd::Gadget { kind } => gadget(kind, out),
        Cmd::ExportIlp { window, graph } => {
            let g = load_graph(&graph)?;
            write!(out, "{}", ilp::emit(&g, window)?)?;
            Ok(Outcome::Yes)
        }
        Cmd::Verify {
            window,
            graph,
            seq_file,
        } => {
            let g = load_graph(&graph)?;
            let xs = format::parse_sequences(&read(&seq_file)?, &g)
                .with_context(|| format!("parsing {}", seq_file.display()))?;
            if xs.is_empty() {
                bail!("{} holds no sequences", seq_file.display());
            }
            let mut all = true;
            for (i, x) in xs.iter().enumerate() {
                if !realizes(x, &g, window) {
                    eprintln!("sequence {} does not realize the graph: {}", i + 1, x.display_with(&g));
                    all = false;
                }
            }
            Ok(if all { Outcome::Yes } else { Outcome::No })
        }
    }
}

fn gadget(kind: GadgetCmd, out: &mut impl Write) -> anyhow::Result<Outcome> {
    let (g, w, witness): Generated = match kind {
        GadgetCmd::Clique { graph, k } => {
            let (h, w) = clique_gadget(&load_graph(&graph)?, k)?;
            (h, Some(w), None)
        }
        GadgetCmd::Hp1 { graph } => (hp1(&load_graph(&graph)?)?, None, None),
        GadgetCmd::Hp2 { graph } => (hp2(&load_graph(&graph)?)?, None, None),
        GadgetCmd::Optional { window, graph } => {
            let inst = optional_instance(&load_graph(&graph)?, window)?;
            let h = &inst.graph;
            writeln!(out, "# window {window}")?;
            for &(u, v) in &inst.compulsory {
                writeln!(out, "# compulsory {} {}", h.label(u), h.label(v))?;
            }
            let start = Sequence::new(inst.start.clone());
            writeln!(out, "# start {}", start.display_with(h))?;
            write!(out, "{}", format::write_graph(h))?;
            return Ok(Outcome::Yes);
        }
        GadgetCmd::DuChain {
            window,
            graph,
            witness_out,
        } => {
            let chain = du_chain(&optional_instance(&load_graph(&graph)?, window)?)?;
            let prefix = format!("{}\n", chain.prefix.display_with(&chain.graph));
            (chain.graph, Some(window), witness_out.map(|p| (p, prefix)))
        }
        GadgetCmd::DwHam {
            window,
            graph,
            witness_out,
        } => ham(true, window, &graph, witness_out)?,
        GadgetCmd::GwHam {
            window,
            graph,
            witness_out,
        } => ham(false, window, &graph, witness_out)?,
        GadgetCmd::Expo {
            n,
            k,
            filtered,
            cap,
            witness_out,
        } => {
            let e = expo_capped(n, k, filtered, cap)?;
            let w = e.window();
            let text = e.witness.as_ref().map(|x| format!("{}\n", x.display_with(&e.graph)));
            let witness = match (witness_out, text) {
                (Some(p), Some(t)) => Some((p, t)),
                (Some(_), None) => bail!("only the filtered construction carries a witness"),
                _ => None,
            };
            (e.graph, Some(w), witness)
        }
        GadgetCmd::Random { vertices, length, seed } => {
            if vertices == 0 || length == 0 {
                bail!("need at least one vertex and one token");
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let toks: Vec<String> = (0..length)
                .map(|_| format!("t{}", rng.gen_range(0..vertices)))
                .collect();
            writeln!(out, "{}", toks.join(" "))?;
            return Ok(Outcome::Yes);
        }
    };
    if let Some(w) = w {
        writeln!(out, "# window {w}")?;
    }
    write!(out, "{}", format::write_graph(&g))?;
    if let Some((path, text)) = witness {
        write_file(&path, &text)?;
    }
    Ok(Outcome::Yes)
}

type Generated = (SeqGraph, Option<usize>, Option<(PathBuf, String)>);

/// The explicit realization exists only when G has a Hamiltonian path
/// between its pendants; otherwise no witness file is written.
fn ham(directed: bool, w: usize, graph: &Path, witness_out: Option<PathBuf>) -> anyhow::Result<Generated> {
    let g = load_graph(graph)?;
    let h = if directed { dw_ham(&g, w)? } else { gw_ham(&g, w)? };
    let mut witness = None;
    if let Some(p) = witness_out {
        let (s, t) = pendant_ends(&g)?;
        match find_hamiltonian_path(&g, s, t) {
            Some(path) => {
                let x = hamiltonian_witness(&g, w, &path)?;
                witness = Some((p, format!("{}\n", x.display_with(&h))));
            }
            None => eprintln!("no Hamiltonian path between the pendants; no witness written"),
        }
    }
    Ok((h, Some(w), witness))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 3 } else { 0 });
        }
    };
    let stdout = io::stdout();
    let mut out = io::BufWriter::new(stdout.lock());
    let res = run(cli.cmd, &mut out);
    let flushed = out.flush();
    match res {
        Ok(Outcome::Yes) if flushed.is_ok() => ExitCode::SUCCESS,
        Ok(Outcome::No) => ExitCode::from(1),
        Ok(Outcome::Unsupported(why)) => {
            eprintln!("unsupported: {why}");
            ExitCode::from(2)
        }
        Ok(Outcome::Yes) => {
            eprintln!("error: writing output failed");
            ExitCode::from(3)
        }
        Err(e) => match e.downcast_ref::<Error>() {
            Some(Error::BudgetExceeded(_) | Error::SizeLimit(_)) => {
                eprintln!("unsupported: {e:#}");
                ExitCode::from(2)
            }
            _ => {
                eprintln!("error: {e:#}");
                ExitCode::from(3)
            }
        },
    }
}
