//! JSON files with a `kind` tag. Letters are strings, `""` is ε. Nested
//! automata and transducers may be given inline or as a path relative to
//! the referring file.

use std::collections::{BTreeMap, BTreeSet};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::cellular::CellularAutomaton;
use crate::error::{Error, Result};
use crate::graph::{InfiniteAutomaton, RationalGraph};
use crate::letter::{Alphabet, Letter};
use crate::nfa::Nfa;
use crate::tiling::TilingSystem;
use crate::transducer::Transducer;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Formalism {
    Nfa(Nfa),
    Transducer(Transducer),
    /// A graph file without initial and final sets.
    Graph(RationalGraph),
    Automaton(InfiniteAutomaton),
    Tiling(TilingSystem),
    Ca(CellularAutomaton),
}

impl Formalism {
    pub fn kind(&self) -> &'static str {
        match self {
            Formalism::Nfa(_) => "nfa",
            Formalism::Transducer(_) => "transducer",
            Formalism::Graph(_) | Formalism::Automaton(_) => "graph",
            Formalism::Tiling(_) => "tiling",
            Formalism::Ca(_) => "ca",
        }
    }
}

#[derive(Serialize, Deserialize)]
struct NfaRepr {
    alphabet: Vec<String>,
    states: usize,
    initial: usize,
    finals: Vec<usize>,
    transitions: Vec<(usize, String, usize)>,
}

#[derive(Serialize, Deserialize)]
struct TransducerRepr {
    alphabet: Vec<String>,
    states: usize,
    initial: usize,
    finals: Vec<usize>,
    transitions: Vec<(usize, String, String, usize)>,
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum Nested<T> {
    Path(String),
    Inline(T),
}

#[derive(Serialize, Deserialize)]
struct GraphRepr {
    vertex_alphabet: Vec<String>,
    relations: BTreeMap<String, Nested<TransducerRepr>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    initial: Option<Nested<NfaRepr>>,
    #[serde(default, rename = "final", skip_serializing_if = "Option::is_none")]
    final_: Option<Nested<NfaRepr>>,
}

#[derive(Serialize, Deserialize)]
struct TilingRepr {
    gamma: Vec<String>,
    sigma: Vec<String>,
    frame: String,
    /// `[[top-left, top-right], [bottom-left, bottom-right]]`.
    tiles: Vec<[[String; 2]; 2]>,
}

fn yes() -> bool {
    true
}

#[derive(Serialize, Deserialize)]
struct CaRepr {
    gamma: Vec<String>,
    sigma: Vec<String>,
    finals: Vec<String>,
    left: String,
    right: String,
    #[serde(default = "yes")]
    reflexive: bool,
    rules: Vec<[String; 4]>,
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
enum FileRepr {
    Nfa(NfaRepr),
    Transducer(TransducerRepr),
    Graph(GraphRepr),
    Tiling(TilingRepr),
    Ca(CaRepr),
}

fn letters(v: &[String]) -> Result<Alphabet> {
    let mut out = BTreeSet::new();
    for s in v {
        if s.is_empty() {
            return Err(Error::Input("the empty string is not a letter".into()));
        }
        out.insert(Letter::new(s));
    }
    Ok(out)
}

fn side(s: &str) -> Option<Letter> {
    (!s.is_empty()).then(|| Letter::new(s))
}

fn show(l: &Option<Letter>) -> String {
    l.as_ref().map(|l| l.as_str().to_string()).unwrap_or_default()
}

fn state_check(what: &str, states: usize, ids: impl IntoIterator<Item = usize>) -> Result<()> {
    if states == 0 {
        return Err(Error::Input(format!("{what} needs at least one state")));
    }
    match ids.into_iter().find(|&s| s >= states) {
        Some(s) => Err(Error::Input(format!("{what} refers to state {s} of {states}"))),
        None => Ok(()),
    }
}

fn letter_check(what: &str, alphabet: &Alphabet, ls: impl IntoIterator<Item = Option<Letter>>) -> Result<()> {
    match ls.into_iter().flatten().find(|l| !alphabet.contains(l)) {
        Some(l) => Err(Error::Input(format!("{what} uses letter {l} outside its alphabet"))),
        None => Ok(()),
    }
}

fn nfa_from(r: NfaRepr) -> Result<Nfa> {
    let alphabet = letters(&r.alphabet)?;
    state_check("automaton", r.states, [r.initial].into_iter().chain(r.finals.iter().copied()).chain(r.transitions.iter().flat_map(|t| [t.0, t.2])))?;
    letter_check("automaton", &alphabet, r.transitions.iter().map(|t| side(&t.1)))?;
    let mut a = Nfa::empty(alphabet);
    for _ in 1..r.states {
        a.add_state(false);
    }
    a.initial = r.initial;
    for f in r.finals {
        a.finals[f] = true;
    }
    for (s, l, d) in r.transitions {
        a.add_transition(s, side(&l), d);
    }
    Ok(a)
}

fn nfa_to(a: &Nfa) -> NfaRepr {
    NfaRepr {
        alphabet: a.alphabet.iter().map(|l| l.as_str().to_string()).collect(),
        states: a.num_states(),
        initial: a.initial,
        finals: (0..a.num_states()).filter(|&s| a.finals[s]).collect(),
        transitions: a.transitions().map(|(s, l, d)| (s, show(&l.cloned()), d)).collect(),
    }
}

fn transducer_from(r: TransducerRepr) -> Result<Transducer> {
    let alphabet = letters(&r.alphabet)?;
    state_check("transducer", r.states, [r.initial].into_iter().chain(r.finals.iter().copied()).chain(r.transitions.iter().flat_map(|t| [t.0, t.3])))?;
    letter_check("transducer", &alphabet, r.transitions.iter().flat_map(|t| [side(&t.1), side(&t.2)]))?;
    let mut t = Transducer::empty(alphabet);
    for _ in 1..r.states {
        t.add_state(false);
    }
    t.initial = r.initial;
    for f in r.finals {
        t.finals[f] = true;
    }
    for (s, x, y, d) in r.transitions {
        t.add_transition(s, side(&x), side(&y), d);
    }
    Ok(t)
}

fn transducer_to(t: &Transducer) -> TransducerRepr {
    TransducerRepr {
        alphabet: t.alphabet.iter().map(|l| l.as_str().to_string()).collect(),
        states: t.num_states(),
        initial: t.initial,
        finals: (0..t.num_states()).filter(|&s| t.finals[s]).collect(),
        transitions: t.transitions().map(|(s, x, y, d)| (s, show(x), show(y), d)).collect(),
    }
}

fn resolve<T: for<'de> Deserialize<'de>>(n: Nested<T>, base: Option<&Path>) -> Result<T> {
    match n {
        Nested::Inline(t) => Ok(t),
        Nested::Path(p) => {
            let path = base.map(|b| b.join(&p)).unwrap_or_else(|| PathBuf::from(&p));
            let text = std::fs::read_to_string(&path).map_err(|e| Error::Input(format!("{}: {e}", path.display())))?;
            serde_json::from_str(&text).map_err(|e| Error::Input(format!("{}: {e}", path.display())))
        }
    }
}

/// Parses a file body; `base` resolves nested paths.
pub fn parse(text: &str, base: Option<&Path>) -> Result<Formalism> {
    let repr: FileRepr = serde_json::from_str(text).map_err(|e| Error::Input(e.to_string()))?;
    Ok(match repr {
        FileRepr::Nfa(r) => Formalism::Nfa(nfa_from(r)?),
        FileRepr::Transducer(r) => Formalism::Transducer(transducer_from(r)?),
        FileRepr::Graph(r) => {
            let va = letters(&r.vertex_alphabet)?;
            let mut rels = BTreeMap::new();
            for (a, t) in r.relations {
                if a.is_empty() {
                    return Err(Error::Input("the empty string is not an edge label".into()));
                }
                rels.insert(Letter::new(&a), transducer_from(resolve(t, base)?)?);
            }
            let g = RationalGraph::new(va, rels)?;
            match (r.initial, r.final_) {
                (None, None) => Formalism::Graph(g),
                (Some(i), Some(f)) => {
                    let i = nfa_from(resolve(i, base)?)?;
                    let f = nfa_from(resolve(f, base)?)?;
                    Formalism::Automaton(InfiniteAutomaton::new(g, i, f)?)
                }
                _ => return Err(Error::Input("a graph needs both an initial and a final set, or neither".into())),
            }
        }
        FileRepr::Tiling(r) => {
            let tiles = r
                .tiles
                .iter()
                .map(|[[a, b], [c, d]]| [Letter::new(a), Letter::new(b), Letter::new(c), Letter::new(d)])
                .collect();
            Formalism::Tiling(TilingSystem::new(letters(&r.gamma)?, letters(&r.sigma)?, Letter::new(&r.frame), tiles)?)
        }
        FileRepr::Ca(r) => {
            let rules = r.rules.iter().map(|[a, b, c, d]| [Letter::new(a), Letter::new(b), Letter::new(c), Letter::new(d)]).collect();
            let ca = CellularAutomaton::new(
                letters(&r.gamma)?,
                letters(&r.sigma)?,
                letters(&r.finals)?,
                Letter::new(&r.left),
                Letter::new(&r.right),
                rules,
            )?;
            Formalism::Ca(ca.with_reflexive(r.reflexive))
        }
    })
}

pub fn load(path: &Path) -> Result<Formalism> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Input(format!("{}: {e}", path.display())))?;
    parse(&text, path.parent())
}

fn names(a: &Alphabet) -> Vec<String> {
    a.iter().map(|l| l.as_str().to_string()).collect()
}

fn graph_repr(g: &RationalGraph) -> GraphRepr {
    GraphRepr {
        vertex_alphabet: names(&g.vertex_alphabet),
        relations: g.relations.iter().map(|(a, t)| (a.as_str().to_string(), Nested::Inline(transducer_to(t)))).collect(),
        initial: None,
        final_: None,
    }
}

/// Pretty JSON with every nested object inline.
pub fn to_json(f: &Formalism) -> String {
    let repr = match f {
        Formalism::Nfa(a) => FileRepr::Nfa(nfa_to(a)),
        Formalism::Transducer(t) => FileRepr::Transducer(transducer_to(t)),
        Formalism::Graph(g) => FileRepr::Graph(graph_repr(g)),
        Formalism::Automaton(m) => {
            let mut r = graph_repr(&m.graph);
            r.initial = Some(Nested::Inline(nfa_to(&m.initial)));
            r.final_ = Some(Nested::Inline(nfa_to(&m.final_)));
            FileRepr::Graph(r)
        }
        Formalism::Tiling(ts) => FileRepr::Tiling(TilingRepr {
            gamma: names(&ts.gamma),
            sigma: names(&ts.sigma),
            frame: ts.frame.as_str().to_string(),
            tiles: ts
                .tiles
                .iter()
                .map(|[a, b, c, d]| [[a.to_string(), b.to_string()], [c.to_string(), d.to_string()]])
                .collect(),
        }),
        Formalism::Ca(ca) => FileRepr::Ca(CaRepr {
            gamma: names(&ca.gamma),
            sigma: names(&ca.sigma),
            finals: names(&ca.finals),
            left: ca.left.to_string(),
            right: ca.right.to_string(),
            reflexive: ca.reflexive,
            rules: ca.rules.iter().map(|r| r.clone().map(|l| l.to_string())).collect(),
        }),
    };
    let mut s = serde_json::to_string_pretty(&repr).expect("serializable");
    s.push('\n');
    s
}

pub fn save(f: &Formalism, path: &Path) -> Result<()> {
    std::fs::write(path, to_json(f)).map_err(|e| Error::Input(format!("{}: {e}", path.display())))
}
