//! Small worked examples used by tests, the CLI and the fixture files.

use std::collections::{BTreeMap, BTreeSet};

use crate::cellular::{CellularAutomaton, Rule};
use crate::graph::{InfiniteAutomaton, RationalGraph};
use crate::letter::{alphabet, letter, Alphabet, Letter};
use crate::nfa::Nfa;
use crate::tiling::{tile, TilingSystem};
use crate::transducer::Transducer;

fn l(s: &str) -> Option<Letter> {
    Some(letter(s))
}

fn graph(vertices: &Alphabet, rels: Vec<(&str, Transducer)>) -> RationalGraph {
    let rels: BTreeMap<Letter, Transducer> = rels.into_iter().map(|(a, t)| (letter(a), t)).collect();
    RationalGraph::new(vertices.clone(), rels).expect("fixture graph")
}

/// Vertices `A^i B^j`; `a` adds an `A`, `b` adds a `B`. Initial `{ε}`,
/// final `A*B*`.
pub fn grid() -> InfiniteAutomaton {
    let g = alphabet(["A", "B"]);
    let rel = |x: &str| {
        let mut t = Transducer::empty(g.clone());
        let q1 = t.add_state(true);
        t.add_transition(0, l("A"), l("A"), 0);
        t.add_transition(0, None, l(x), q1);
        t.add_transition(q1, l("B"), l("B"), q1);
        t
    };
    let graph = graph(&g, vec![("a", rel("A")), ("b", rel("B"))]);
    let fin = Nfa::star_of(g.clone(), &[letter("A")]).concat(&Nfa::star_of(g.clone(), &[letter("B")]));
    InfiniteAutomaton::new(graph, Nfa::epsilon(g), fin).expect("grid")
}

/// Doubling graph over `{A, B}`: a vertex of length `n` has `4^n`
/// successors of length `2n`.
pub fn doubling() -> RationalGraph {
    let g = alphabet(["A", "B"]);
    let mut t = Transducer::empty(g.clone());
    t.finals[0] = true;
    let mid = t.add_state(false);
    for x in ["A", "B"] {
        for y in ["A", "B"] {
            t.add_transition(0, l(x), l(y), mid);
        }
        t.add_transition(mid, None, l(x), 0);
    }
    graph(&g, vec![("a", t)])
}

/// Tiling system for `a^n b^n`, `n >= 1`. Pictures have `n + 1` rows.
pub fn anbn_tiling() -> TilingSystem {
    let rows = [
        ["#", "#", "#", "a"],
        ["#", "#", "a", "a"],
        ["#", "#", "a", "b"],
        ["#", "#", "b", "b"],
        ["#", "#", "b", "#"],
        ["#", "a", "#", "a"],
        ["a", "a", "a", "a"],
        ["a", "b", "⊥", "⊥"],
        ["b", "b", "b", "b"],
        ["b", "#", "b", "#"],
        ["#", "a", "#", "⊥"],
        ["a", "a", "a", "⊥"],
        ["⊥", "⊥", "⊥", "⊥"],
        ["b", "b", "⊥", "b"],
        ["b", "#", "⊥", "#"],
        ["#", "⊥", "#", "#"],
        ["a", "⊥", "⊥", "⊥"],
        ["⊥", "⊥", "#", "#"],
        ["⊥", "b", "⊥", "⊥"],
        ["⊥", "#", "#", "#"],
    ];
    let tiles = rows.iter().map(|r| tile(r[0], r[1], r[2], r[3])).collect();
    TilingSystem::new(alphabet(["a", "b", "⊥"]), alphabet(["a", "b"]), letter("#"), tiles).expect("anbn tiling")
}

/// The column graph of [`anbn_tiling`], written by hand. Initial
/// `#^n` (n >= 2), final `b* ⊥`.
pub fn anbn_columns() -> InfiniteAutomaton {
    let g = alphabet(["#", "a", "b", "⊥"]);
    let mut ta = Transducer::empty(g.clone());
    let [ha, hbot, aa, abot, bot] = [false, true, false, false, true].map(|f| ta.add_state(f));
    ta.add_transition(0, l("#"), l("a"), ha);
    ta.add_transition(ha, l("#"), l("a"), ha);
    ta.add_transition(ha, l("#"), l("⊥"), hbot);
    ta.add_transition(0, l("a"), l("a"), aa);
    ta.add_transition(aa, l("a"), l("a"), aa);
    ta.add_transition(aa, l("a"), l("⊥"), abot);
    ta.add_transition(abot, l("⊥"), l("⊥"), bot);
    ta.add_transition(bot, l("⊥"), l("⊥"), bot);

    let mut tb = Transducer::empty(g.clone());
    let [ab, bb, botb, bot] = [false, false, false, true].map(|f| tb.add_state(f));
    tb.add_transition(0, l("a"), l("b"), ab);
    tb.add_transition(0, l("b"), l("b"), bb);
    tb.add_transition(ab, l("⊥"), l("⊥"), bot);
    tb.add_transition(bb, l("b"), l("b"), bb);
    tb.add_transition(bb, l("⊥"), l("b"), botb);
    tb.add_transition(botb, l("⊥"), l("⊥"), bot);
    tb.add_transition(bot, l("⊥"), l("⊥"), bot);

    let graph = graph(&g, vec![("a", ta), ("b", tb)]);
    let hash = [letter("#"), letter("#")];
    let init = Nfa::from_word(g.clone(), &hash).concat(&Nfa::star_of(g.clone(), &hash[..1]));
    let fin = Nfa::star_of(g.clone(), &[letter("b")]).concat(&Nfa::from_word(g.clone(), &[letter("⊥")]));
    InfiniteAutomaton::new(graph, init, fin).expect("anbn columns")
}

/// Deterministic cellular automaton for `a^n b^n`: the outermost `a` and
/// `b` are struck out each round; struck cells spread `z`.
pub fn anbn_ca() -> CellularAutomaton {
    let gamma = alphabet(["a", "b", "o", "z"]);
    let mut rules: BTreeSet<Rule> = BTreeSet::new();
    let mut add = |ls: &[&str], c: &str, rs: &[&str], d: &str| {
        for x in ls {
            for y in rs {
                rules.insert([letter(x), letter(c), letter(y), letter(d)]);
            }
        }
    };
    add(&["[", "o", "z"], "a", &["a", "b"], "o");
    add(&["a"], "a", &["a", "b"], "a");
    add(&["a", "b"], "b", &["]", "o", "z"], "o");
    add(&["a", "b"], "b", &["b"], "b");
    add(&["[", "z", "a", "b"], "o", &["]", "z", "a", "b"], "z");
    add(&["[", "z", "o"], "z", &["]", "z", "o"], "z");
    CellularAutomaton::new(gamma, alphabet(["a", "b"]), alphabet(["o", "z"]), letter("["), letter("]"), rules).expect("anbn ca")
}

/// Left-synchronized, deterministic and of finite out-degree from the
/// single vertex `s`: `a` appends a `c`, `b` trades the `c`s for `d`s one
/// at a time. Accepts `a^n b^n`, `n >= 1`.
pub fn anbn_counter() -> InfiniteAutomaton {
    let g = alphabet(["s", "c", "t", "d"]);
    let mut ta = Transducer::empty(g.clone());
    let loop_ = ta.add_state(false);
    let end = ta.add_state(true);
    ta.add_transition(0, l("s"), l("s"), loop_);
    ta.add_transition(loop_, l("c"), l("c"), loop_);
    ta.add_transition(loop_, None, l("c"), end);

    let mut tb = Transducer::empty(g.clone());
    let first = tb.add_state(false);
    let later = tb.add_state(false);
    let end = tb.add_state(true);
    tb.add_transition(0, l("s"), l("t"), first);
    tb.add_transition(first, l("c"), l("d"), first);
    tb.add_transition(first, l("c"), None, end);
    tb.add_transition(0, l("t"), l("t"), later);
    tb.add_transition(later, l("d"), l("d"), later);
    tb.add_transition(later, l("d"), None, end);

    let graph = graph(&g, vec![("a", ta), ("b", tb)]);
    let init = Nfa::from_word(g.clone(), &[letter("s")]);
    let fin = Nfa::from_word(g.clone(), &[letter("t")]);
    InfiniteAutomaton::new(graph, init, fin).expect("anbn counter")
}

/// Sequential and synchronous from `o*`: `a` keeps `o^n`, `b` rewrites
/// it to `p^n`. Accepts `a* b+`.
pub fn sequential_star() -> InfiniteAutomaton {
    let g = alphabet(["o", "p"]);
    let ta = Transducer::identity(g.clone(), &[letter("o")]);
    let mut tb = Transducer::empty(g.clone());
    let op = tb.add_state(true);
    let pp = tb.add_state(true);
    tb.add_transition(0, l("o"), l("p"), op);
    tb.add_transition(op, l("o"), l("p"), op);
    tb.add_transition(0, l("p"), l("p"), pp);
    tb.add_transition(pp, l("p"), l("p"), pp);
    let graph = graph(&g, vec![("a", ta), ("b", tb)]);
    let init = Nfa::star_of(g.clone(), &[letter("o")]);
    let p = [letter("p")];
    let fin = Nfa::from_word(g.clone(), &p).concat(&Nfa::star_of(g.clone(), &p));
    InfiniteAutomaton::new(graph, init, fin).expect("sequential star")
}

/// A finite automaton for `a+ b+` drawn as a graph on the vertices `p`,
/// `q`, `r`.
pub fn aplus_bplus() -> InfiniteAutomaton {
    let g = alphabet(["p", "q", "r"]);
    let step = |pairs: &[(&str, &str)]| {
        let mut t = Transducer::empty(g.clone());
        let end = t.add_state(true);
        for (x, y) in pairs {
            t.add_transition(0, l(x), l(y), end);
        }
        t
    };
    let graph = graph(&g, vec![("a", step(&[("p", "q"), ("q", "q")])), ("b", step(&[("q", "r"), ("r", "r")]))]);
    let init = Nfa::from_word(g.clone(), &[letter("p")]);
    let fin = Nfa::from_word(g.clone(), &[letter("r")]);
    InfiniteAutomaton::new(graph, init, fin).expect("a+ b+")
}

/// Not globally deterministic: `s` may write `b` or `c` after reading
/// `a`, and `t` reads both.
pub fn two_letters() -> InfiniteAutomaton {
    let g = alphabet(["a", "b", "c", "x", "y"]);
    let mut s = Transducer::empty(g.clone());
    let q = s.add_state(true);
    s.add_transition(0, l("a"), l("b"), q);
    s.add_transition(0, l("a"), l("c"), q);
    let mut t = Transducer::empty(g.clone());
    let q = t.add_state(true);
    t.add_transition(0, l("b"), l("x"), q);
    t.add_transition(0, l("c"), l("y"), q);
    let graph = graph(&g, vec![("s", s), ("t", t)]);
    let init = Nfa::star_of(g.clone(), &[letter("a")]);
    InfiniteAutomaton::new(graph, init, Nfa::universal(g)).expect("two letters")
}
