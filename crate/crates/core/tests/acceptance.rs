//! The acceptance run: eleven criteria, one line each.
//!
//! `cargo test --release --test acceptance -- --nocapture` shows the
//! lines; the test fails if any criterion does.

mod common;

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use common::*;
use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};
use ratgraph::cellular::CellularAutomaton;
use ratgraph::conversions::*;
use ratgraph::fixtures;
use ratgraph::letter::{alphabet, format_word, letter, word, Letter, Word};
use ratgraph::nfa::{Count, Nfa};
use ratgraph::InfiniteAutomaton;

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn anbn(max_len: usize) -> BTreeSet<Word> {
    (1..=max_len / 2).map(|n| word(&format!("{}{}", "a".repeat(n), "b".repeat(n)))).collect()
}

fn set(ws: Vec<Word>) -> BTreeSet<Word> {
    ws.into_iter().collect()
}

fn show(ws: &BTreeSet<Word>) -> String {
    ws.iter().map(|w| format_word(w)).collect::<Vec<_>>().join(",")
}

fn all_words(sigma: &[&str], max_len: usize) -> Vec<Word> {
    let mut all = vec![Vec::new()];
    let mut layer: Vec<Word> = vec![Vec::new()];
    for _ in 0..max_len {
        layer = layer
            .iter()
            .flat_map(|w| sigma.iter().map(move |c| [w.clone(), vec![letter(c)]].concat()))
            .collect();
        all.extend(layer.iter().cloned());
    }
    all
}

fn is_anbn(w: &[Letter]) -> bool {
    anbn(w.len()).contains(w)
}

fn tiling_member() -> Outcome {
    let ts = fixtures::anbn_tiling();
    let words = all_words(&["a", "b"], 10);
    for w in &words[1..] {
        ensure!(ts.member(w).map_err(|e| e.to_string())? == is_anbn(w), "disagrees on {}", format_word(w));
    }
    Ok(format!("{} words", words.len() - 1))
}

fn column_language() -> Outcome {
    let g = ts2synch(&fixtures::anbn_tiling()).map_err(|e| e.to_string())?.output.graph;
    let va = g.vertex_alphabet.clone();
    let h = [letter("#")];
    let init = Nfa::from_word(va.clone(), &[h[0].clone(), h[0].clone()]).concat(&Nfa::star_of(va.clone(), &h));
    let fin = Nfa::star_of(va.clone(), &[letter("b")]).concat(&Nfa::from_word(va, &[letter("⊥")]));
    let m = InfiniteAutomaton::new(g, init, fin).map_err(|e| e.to_string())?;
    let got = set(m.enumerate(8));
    ensure!(got == anbn(8), "got {}", show(&got));
    Ok(show(&got))
}

fn grid_synchronized() -> Outcome {
    let g = fixtures::grid();
    let c = rat2synch(&g, "#").map_err(|e| e.to_string())?;
    let (a, b) = (set(g.enumerate(6)), set(c.output.enumerate(6)));
    ensure!(a == b, "languages differ: {} vs {}", show(&a), show(&b));
    let classes = c.output.graph.classify();
    ensure!(classes.values().all(|k| k.synchronous), "not synchronous: {classes:?}");
    Ok(format!("{} words, {} synchronous relations", a.len(), classes.len()))
}

fn doubling_degree() -> Outcome {
    let t = fixtures::doubling().degree_table(&word("A"), 2, 64);
    let f = Count::Finite;
    ensure!(t == vec![f(4), f(16), f(256)], "got {t:?}");
    Ok("4 16 256".into())
}

fn round_trip() -> Outcome {
    let ts = fixtures::anbn_tiling();
    let g = ts2synch(&ts).map_err(|e| e.to_string())?.output;
    let s = synch2ts(&g, &Synch2TsOptions::default()).map_err(|e| e.to_string())?.output;
    let got = set(s.enumerate(8));
    ensure!(got == anbn(8), "got {}", show(&got));
    for w in &got {
        let wit = g.witness(w, 8).map_err(|e| e.to_string())?.ok_or("no witness")?;
        let h = s.min_height(w).map_err(|e| e.to_string())?;
        ensure!(h == Some(wit.max_vertex_len() + 1), "{}: height {h:?}, vertex length {}", format_word(w), wit.max_vertex_len());
    }
    Ok(format!("{} tiles, {} witnesses", s.tiles.len(), got.len()))
}

/// The initial vertex of the sequential automaton for a picture of the
/// given width, marks in the first column.
fn seq_vertex(width: usize, rows: &[Vec<u8>]) -> Word {
    let gamma = ["a", "b", "⊥"];
    let mut v = word("[#");
    v.push(letter("#~"));
    v.extend(std::iter::repeat_n(letter("#"), width));
    v.push(letter("]"));
    for r in rows {
        v.push(letter("["));
        v.push(letter("#"));
        for (j, &x) in r.iter().enumerate() {
            let x = gamma[x as usize];
            v.push(if j == 0 { letter(&format!("{x}~")) } else { letter(x) });
        }
        v.extend(word("#]"));
    }
    v.extend(word("[#"));
    v.push(letter("#~"));
    v.extend(std::iter::repeat_n(letter("#"), width));
    v.push(letter("]"));
    v
}

fn sequential() -> Outcome {
    let c = ts2seq(&fixtures::anbn_tiling(), &SeqOptions::default()).map_err(|e| e.to_string())?;
    let m = &c.output;
    let classes = m.graph.classify();
    ensure!(classes.values().all(|k| k.sequential && k.synchronous), "{classes:?}");

    // vertices within radius 8, each with at most one out-edge
    let walk = |v: Word| -> Result<(usize, bool), String> {
        let mut seen = HashSet::from([v.clone()]);
        let mut queue = VecDeque::from([(v, 0usize)]);
        let mut reached_final = false;
        while let Some((u, d)) = queue.pop_front() {
            reached_final |= m.final_.accepts(&u);
            let edges = m.graph.out_edges(&u, u.len());
            ensure!(edges.len() <= 1, "out-degree {} at {}", edges.len(), format_word(&u));
            if d < 8 {
                for (_, t) in edges {
                    if seen.insert(t.clone()) {
                        queue.push_back((t, d + 1));
                    }
                }
            }
        }
        Ok((seen.len(), reached_final))
    };
    let visited = std::cell::Cell::new(0usize);

    // the pictures of accepted words make walks that get somewhere
    let ts = fixtures::anbn_tiling();
    let gamma = ["a", "b", "⊥"];
    for n in 1..=3 {
        let w = word(&format!("{}{}", "a".repeat(n), "b".repeat(n)));
        let pic = ts.min_picture(&w).map_err(|e| e.to_string())?.ok_or("no picture")?;
        let rows: Vec<Vec<u8>> = pic
            .rows()
            .iter()
            .map(|r| r.iter().map(|x| gamma.iter().position(|g| *g == x.as_str()).unwrap() as u8).collect())
            .collect();
        let v = seq_vertex(2 * n, &rows);
        ensure!(m.initial.accepts(&v), "not initial: {}", format_word(&v));
        let (k, fin) = walk(v)?;
        ensure!(fin, "the walk for {} never reaches a final vertex", format_word(&w));
        visited.set(visited.get() + k);
    }

    let strategy = (1usize..=6, 0usize..=2).prop_flat_map(|(w, h)| (Just(w), prop::collection::vec(prop::collection::vec(0u8..3, w), h)));
    let mut runner = TestRunner::new(Config { cases: 200, failure_persistence: None, ..Config::default() });
    runner
        .run(&strategy, |(w, rows)| {
            let v = seq_vertex(w, &rows);
            prop_assert!(m.initial.accepts(&v), "not initial: {}", format_word(&v));
            let (k, _) = walk(v).map_err(TestCaseError::fail)?;
            visited.set(visited.get() + k);
            Ok(())
        })
        .map_err(|e| e.to_string())?;

    let got = set(m.enumerate(8));
    ensure!(got == anbn(8), "got {}", show(&got));
    Ok(format!("{} vertices visited, language {}", visited.get(), show(&got)))
}

fn one_point() -> Outcome {
    let m = fixtures::anbn_columns();
    let c = onepoint(&m, &OnePointOptions::default()).map_err(|e| e.to_string())?;
    let init = ratgraph::graph::single_word(&c.output.initial);
    ensure!(init.is_some(), "initial set is not a single vertex");
    ensure!(c.report.check_claims(&c.output.graph), "class claims fail: {}", c.report.class_claims);
    let before = m.graph.classify();
    let after = c.output.graph.classify();
    for (a, k) in &before {
        ensure!(!k.left_synchronized || after[a].left_synchronized, "{a} lost left-synchronization");
    }
    let (x, y) = (set(m.enumerate(8)), set(c.output.enumerate(8)));
    ensure!(x == y, "{} vs {}", show(&x), show(&y));
    Ok(format!("initial {}, language {}", format_word(&init.unwrap()), show(&y)))
}

fn finite_degree() -> Outcome {
    let m = fixtures::anbn_columns();
    let c = synch2ratfd(&m, &RatFdOptions { k: Some(2), ..RatFdOptions::default() }).map_err(|e| e.to_string())?;
    let init = ratgraph::graph::single_word(&c.output.initial).ok_or("initial set is not a single vertex")?;
    ensure!(init == word("|$"), "initial vertex {}", format_word(&init));
    let sample = c.output.graph.sample_reachable(&[init], 100, 40);
    ensure!(sample.len() == 100, "only {} reachable vertices sampled", sample.len());
    for v in &sample {
        ensure!(c.output.graph.out_degree(v).is_finite(), "infinite degree at {}", format_word(v));
    }
    let got = set(c.output.enumerate(4));
    ensure!(got == anbn(4), "got {}", show(&got));
    Ok(format!("initial |$, {} vertices sampled", sample.len()))
}

/// Every `a^n`, `n >= 1`, by turning all cells into `f` at once.
fn flood_ca() -> CellularAutomaton {
    let mut rules = BTreeSet::new();
    for l in ["[", "a", "f"] {
        for r in ["]", "a", "f"] {
            for c in ["a", "f"] {
                rules.insert([letter(l), letter(c), letter(r), letter("f")]);
            }
        }
    }
    CellularAutomaton::new(alphabet(["a", "f"]), alphabet(["a"]), alphabet(["f"]), letter("["), letter("]"), rules).unwrap()
}

fn global_det() -> Outcome {
    let ca = fixtures::anbn_ca();
    let cas = [ca.clone(), ca.clone().with_reflexive(false), flood_ca(), flood_ca().with_reflexive(false)];
    for (i, x) in cas.iter().enumerate() {
        let g = ca2graph(x).map_err(|e| e.to_string())?.output;
        let w = global_det_witness(&g).map_err(|e| e.to_string())?;
        ensure!(w.is_none(), "automaton {i}: {}", w.unwrap());
        let (p, q) = (set(x.enumerate(6)), set(g.enumerate(6)));
        ensure!(p == q, "automaton {i}: {} vs {}", show(&p), show(&q));
    }
    let bad = check_global_det(&fixtures::two_letters()).map_err(|e| e.to_string())?;
    ensure!(!bad, "counterexample passes");
    Ok(format!("{} automata, counterexample rejected", cas.len()))
}

fn unambiguous_chain() -> Outcome {
    let g = ca2graph(&fixtures::anbn_ca()).map_err(|e| e.to_string())?.output;
    let s = synch2ts(&g, &Synch2TsOptions::default()).map_err(|e| e.to_string())?.output;
    ensure!(s.det_probe(4), "tiling not deterministic up to width 4");
    let back = ts2synch(&s).map_err(|e| e.to_string())?.output;
    let amb = back.ambiguity_probe(6, 8);
    ensure!(amb == 1, "ambiguity {amb}");
    Ok(format!("{} tiles, ambiguity 1", s.tiles.len()))
}

fn algebra() -> Outcome {
    let strategy = (edges(true, false), finals(), transducer(), nfa(), edges(true, true), finals());
    let mut runner = TestRunner::new(Config { cases: 64, failure_persistence: None, ..Config::default() });
    runner
        .run(&strategy, |(ea, fa, b, l, es, fs)| {
            let a = build(&ea, &fa);
            let (pa, pb) = (pairs(&a, BOUND, BOUND), pairs(&b, BOUND, BOUND));
            let union: Pairs = pa.union(&pb).cloned().collect();
            prop_assert_eq!(pairs(&a.union(&b), BOUND, BOUND), union);
            let product: Pairs = pa
                .iter()
                .flat_map(|(u, v)| pb.iter().filter(move |(v2, _)| v2 == v).map(move |(_, w)| (u.clone(), w.clone())))
                .collect();
            prop_assert_eq!(pairs(&a.compose(&b), BOUND, BOUND), product);
            let mut cat = Pairs::new();
            for (u1, v1) in &pa {
                for (u2, v2) in &pb {
                    if u1.len() + u2.len() <= BOUND && v1.len() + v2.len() <= BOUND {
                        cat.insert(([u1.clone(), u2.clone()].concat(), [v1.clone(), v2.clone()].concat()));
                    }
                }
            }
            prop_assert_eq!(pairs(&a.concat(&b), BOUND, BOUND), cat);
            let dom: Pairs = pb.iter().filter(|(u, _)| l.accepts(u)).cloned().collect();
            prop_assert_eq!(pairs(&b.restrict_domain(&l), BOUND, BOUND), dom);
            let ran: Pairs = pb.iter().filter(|(_, v)| l.accepts(v)).cloned().collect();
            prop_assert_eq!(pairs(&b.restrict_range(&l), BOUND, BOUND), ran);

            let s = build(&es, &fs);
            let u = s.unambiguize_synchronized().unwrap();
            let ps = pairs(&s, BOUND, BOUND);
            prop_assert_eq!(pairs(&u, BOUND, BOUND), ps.clone());
            for (x, y) in &ps {
                prop_assert_eq!(runs(&u, x, y), 1);
            }
            Ok(())
        })
        .map_err(|e| e.to_string())?;
    Ok("64 cases".into())
}

#[test]
fn acceptance() {
    let criteria: [(fn() -> Outcome, Duration); 11] = [
        (tiling_member, Duration::from_secs(10)),
        (column_language, Duration::from_secs(10)),
        (grid_synchronized, Duration::from_secs(30)),
        (doubling_degree, Duration::from_secs(5)),
        (round_trip, Duration::from_secs(60)),
        (sequential, Duration::from_secs(60)),
        (one_point, Duration::from_secs(30)),
        (finite_degree, Duration::from_secs(300)),
        (global_det, Duration::from_secs(60)),
        (unambiguous_chain, Duration::from_secs(60)),
        (algebra, Duration::from_secs(300)),
    ];
    let mut failed = Vec::new();
    println!();
    for (i, (check, budget)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".into()));
        let took = start.elapsed();
        let outcome = match outcome {
            Ok(_) if took > *budget => Err(format!("over budget ({:.1?} > {budget:?})", took)),
            o => o,
        };
        match outcome {
            Ok(detail) => println!("criterion {}: pass ({took:.1?}) {detail}", i + 1),
            Err(why) => {
                println!("criterion {}: fail ({took:.1?}) {why}", i + 1);
                failed.push(i + 1);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
