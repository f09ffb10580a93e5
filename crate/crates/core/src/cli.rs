//! The `ratgraph` command line. Library calls only; the binary forwards
//! its arguments here.

use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use crate::conversions::{self as conv, ConversionReport};
use crate::equiv::{equiv, language, member};
use crate::error::{Error, Result};
use crate::format::{load, save, to_json, Formalism};
use crate::letter::{format_word, parse_word, Word};

#[derive(Parser, Debug)]
#[command(name = "ratgraph", version, about = "Rational graphs, tiling systems and cellular acceptors")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Exact membership; exit code 0 accepts, 1 rejects.
    Member {
        file: PathBuf,
        /// Letters are single characters; `{name}` for longer ones.
        word: String,
    },
    /// Runs a conversion and writes the output file.
    Convert {
        #[arg(value_enum)]
        name: ConversionName,
        file: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Counter growth factor (synch2ratfd).
        #[arg(long)]
        k: Option<usize>,
        /// Height slope (squarets2graph).
        #[arg(long, default_value_t = 2)]
        c: usize,
        /// Determinism probe width (seq-from-star).
        #[arg(long, default_value_t = 4)]
        width: usize,
    },
    /// Compares the languages of two files up to a length.
    Equiv {
        a: PathBuf,
        b: PathBuf,
        #[arg(long, default_value_t = 6)]
        max_len: usize,
    },
    /// Syntactic classes of a transducer or of every relation of a graph.
    Classify { file: PathBuf },
    /// Largest out-degree at each distance from a vertex.
    Degree {
        file: PathBuf,
        vertex: String,
        #[arg(long, default_value_t = 2)]
        radius: usize,
        #[arg(long, default_value_t = 64)]
        max_vertex_len: usize,
    },
    /// Bounded ambiguity, determinism or functionality probes.
    Probe {
        file: PathBuf,
        #[arg(value_enum)]
        kind: ProbeKind,
        #[arg(long, default_value_t = 6)]
        max_len: usize,
        #[arg(long, default_value_t = 8)]
        max_vertex_len: usize,
        #[arg(long, default_value_t = 4)]
        width: usize,
    },
    /// Accepted words up to a length, shortlex, one per line (`ε` for the
    /// empty word).
    Enumerate {
        file: PathBuf,
        #[arg(long, default_value_t = 6)]
        max_len: usize,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ConversionName {
    Rat2synch,
    Ts2synch,
    Startostar,
    Synch2ts,
    Ts2seq,
    Onepoint,
    Synch2ratfd,
    #[value(name = "squarets2graph")]
    SquareTs2Graph,
    #[value(name = "graph2squarets")]
    Graph2SquareTs,
    Ca2graph,
    #[value(name = "check-globdet")]
    CheckGlobDet,
    #[value(name = "seq-from-star")]
    SeqFromStar,
}

impl std::str::FromStr for ConversionName {
    type Err = Error;

    fn from_str(s: &str) -> Result<ConversionName> {
        <ConversionName as ValueEnum>::from_str(s, false).map_err(|_| Error::Input(format!("unknown conversion {s:?}")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ProbeKind {
    Ambiguity,
    Determinism,
    Functional,
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Input(_) => 2,
        Error::Class(_) | Error::Precondition(_) => 3,
        Error::FreshSymbol(_) => 4,
        Error::Limit(_) => 5,
    }
}

fn show(w: &Word) -> String {
    if w.is_empty() {
        "ε".into()
    } else {
        format_word(w)
    }
}

fn automaton(f: Formalism) -> Result<crate::graph::InfiniteAutomaton> {
    match f {
        Formalism::Automaton(m) => Ok(m),
        other => Err(Error::Input(format!("expected a graph file with initial and final sets, got {}", other.kind()))),
    }
}

fn tiling(f: Formalism) -> Result<crate::tiling::TilingSystem> {
    match f {
        Formalism::Tiling(t) => Ok(t),
        other => Err(Error::Input(format!("expected a tiling file, got {}", other.kind()))),
    }
}

fn graph_of(f: Formalism) -> Result<crate::graph::RationalGraph> {
    match f {
        Formalism::Graph(g) => Ok(g),
        Formalism::Automaton(m) => Ok(m.graph),
        other => Err(Error::Input(format!("expected a graph file, got {}", other.kind()))),
    }
}

/// Runs one conversion. `Ok((None, report, verdict))` for checks that
/// produce no file.
pub fn convert(name: ConversionName, input: Formalism, k: Option<usize>, c: usize, width: usize) -> Result<(Option<Formalism>, ConversionReport, Option<bool>)> {
    use ConversionName::*;
    let auto = |x: conv::Converted<crate::graph::InfiniteAutomaton>| (Some(Formalism::Automaton(x.output)), x.report, None);
    let tiles = |x: conv::Converted<crate::tiling::TilingSystem>| (Some(Formalism::Tiling(x.output)), x.report, None);
    Ok(match name {
        Rat2synch => auto(conv::rat2synch(&automaton(input)?, "#")?),
        Ts2synch => auto(conv::ts2synch(&tiling(input)?)?),
        Startostar => auto(conv::startostar(&automaton(input)?, &Default::default())?),
        Synch2ts => tiles(conv::synch2ts(&automaton(input)?, &Default::default())?),
        Ts2seq => auto(conv::ts2seq(&tiling(input)?, &Default::default())?),
        Onepoint => auto(conv::onepoint(&automaton(input)?, &Default::default())?),
        Synch2ratfd => auto(conv::synch2ratfd(&automaton(input)?, &conv::RatFdOptions { k, ..Default::default() })?),
        SquareTs2Graph => auto(conv::squarets2synchgraph(&tiling(input)?, c)?),
        Graph2SquareTs => tiles(conv::synchfd2squarets(&automaton(input)?)?),
        Ca2graph => match input {
            Formalism::Ca(ca) => auto(conv::ca2graph(&ca)?),
            other => return Err(Error::Input(format!("expected a cellular automaton file, got {}", other.kind()))),
        },
        CheckGlobDet => {
            let m = automaton(input)?;
            let mut report = ConversionReport::new("check-globdet", 0);
            let witness = conv::global_det_witness(&m)?;
            report.notes.extend(witness.clone());
            (None, report, Some(witness.is_none()))
        }
        SeqFromStar => {
            let (x, det) = conv::seq_from_astar_is_det(&automaton(input)?, width)?;
            let mut report = x.report;
            report.notes.push(format!("deterministic up to width {width}: {det}"));
            (Some(Formalism::Tiling(x.output)), report, Some(det))
        }
    })
}

fn dispatch(cmd: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    let io = |e: std::io::Error| Error::Input(e.to_string());
    match cmd {
        Command::Member { file, word } => {
            let ok = member(&load(&file)?, &parse_word(&word)?)?;
            writeln!(out, "{}", if ok { "accept" } else { "reject" }).map_err(io)?;
            Ok(if ok { 0 } else { 1 })
        }
        Command::Convert { name, file, out: path, k, c, width } => {
            let (result, report, verdict) = convert(name, load(&file)?, k, c, width)?;
            write!(err, "{report}").map_err(io)?;
            if let Some(f) = result {
                match path {
                    Some(p) => save(&f, &p)?,
                    None => write!(out, "{}", to_json(&f)).map_err(io)?,
                }
            }
            if name == ConversionName::CheckGlobDet {
                let det = verdict == Some(true);
                writeln!(out, "{}", if det { "globally deterministic" } else { "not globally deterministic" }).map_err(io)?;
                return Ok(if det { 0 } else { 1 });
            }
            Ok(0)
        }
        Command::Equiv { a, b, max_len } => {
            let v = equiv(&load(&a)?, &load(&b)?, max_len)?;
            match &v.first_divergence {
                None => writeln!(out, "equal up to {max_len}").map_err(io)?,
                Some(w) => writeln!(out, "differ at {}", show(w)).map_err(io)?,
            }
            writeln!(out, "words checked: {}", v.checked).map_err(io)?;
            Ok(if v.first_divergence.is_none() { 0 } else { 1 })
        }
        Command::Classify { file } => {
            match load(&file)? {
                Formalism::Transducer(t) => writeln!(out, "{}", t.classify()).map_err(io)?,
                other => {
                    for (a, c) in graph_of(other)?.classify() {
                        writeln!(out, "{a}: {c}").map_err(io)?;
                    }
                }
            }
            Ok(0)
        }
        Command::Degree { file, vertex, radius, max_vertex_len } => {
            let g = graph_of(load(&file)?)?;
            let v = parse_word(&vertex)?;
            crate::letter::check_word(&v, &g.vertex_alphabet)?;
            for (d, c) in g.degree_table(&v, radius, max_vertex_len).iter().enumerate() {
                writeln!(out, "{d} {c}").map_err(io)?;
            }
            Ok(0)
        }
        Command::Probe { file, kind, max_len, max_vertex_len, width } => {
            let f = load(&file)?;
            match (kind, f) {
                (ProbeKind::Ambiguity, Formalism::Automaton(m)) => {
                    writeln!(out, "{}", m.ambiguity_probe(max_len, max_vertex_len)).map_err(io)?;
                }
                (ProbeKind::Determinism, Formalism::Tiling(ts)) => {
                    writeln!(out, "deterministic up to width {width}: {}", ts.det_probe(width)).map_err(io)?;
                }
                (ProbeKind::Determinism, f @ (Formalism::Graph(_) | Formalism::Automaton(_))) => {
                    let d = graph_of(f)?.is_deterministic(max_len);
                    writeln!(out, "deterministic: {} (exact: {})", d.deterministic, d.exact).map_err(io)?;
                }
                (ProbeKind::Functional, Formalism::Transducer(t)) => {
                    let (ok, exact) = functional(&t, max_len);
                    writeln!(out, "functional: {ok} (exact: {exact})").map_err(io)?;
                }
                (ProbeKind::Functional, f @ (Formalism::Graph(_) | Formalism::Automaton(_))) => {
                    for (a, t) in graph_of(f)?.relations {
                        let (ok, exact) = functional(&t, max_len);
                        writeln!(out, "{a}: functional: {ok} (exact: {exact})").map_err(io)?;
                    }
                }
                (k, f) => return Err(Error::Input(format!("no {k:?} probe for a {} file", f.kind()))),
            }
            Ok(0)
        }
        Command::Enumerate { file, max_len } => {
            for w in language(&load(&file)?, max_len)? {
                writeln!(out, "{}", show(&w)).map_err(io)?;
            }
            Ok(0)
        }
    }
}

fn functional(t: &crate::transducer::Transducer, max_len: usize) -> (bool, bool) {
    match t.is_functional_synchronized() {
        Ok(b) => (b, true),
        Err(_) => (t.functional_probe(max_len), false),
    }
}

/// Parses `args` (program name first) and runs the command. Returns the
/// process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = write!(err, "{e}");
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match dispatch(cli.command, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "{e}");
            exit_code(&e)
        }
    }
}
