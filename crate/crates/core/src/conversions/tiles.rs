use std::collections::{BTreeMap, BTreeSet, HashMap};

use super::{startostar, ConversionReport, Converted, StarOptions};
use crate::error::{Error, Result};
use crate::graph::{InfiniteAutomaton, RationalGraph};
use crate::letter::{fresh, Alphabet, Letter};
use crate::nfa::Nfa;
use crate::tiling::{Tile, TilingSystem};
use crate::transducer::{Transducer, TransducerClass};

/// Reads pictures column by column: a vertex is a column, and the relation
/// for a label maps a column to the next one whose top letter is that
/// label. Vertex length equals picture height.
pub fn ts2synch(ts: &TilingSystem) -> Result<Converted<InfiniteAutomaton>> {
    let hash = ts.frame.clone();
    let mut alphabet = ts.gamma.clone();
    alphabet.insert(hash.clone());

    let mut ids: HashMap<(Letter, Letter), usize> = HashMap::new();
    let mut base = Transducer::empty(alphabet.clone());
    ids.insert((hash.clone(), hash.clone()), 0);
    let mut state = |t: &mut Transducer, k: (Letter, Letter)| -> usize {
        if let Some(&s) = ids.get(&k) {
            return s;
        }
        let s = t.add_state(false);
        ids.insert(k, s);
        s
    };
    for [a, b, c, d] in &ts.tiles {
        if *b != hash && *d != hash {
            let src = state(&mut base, (a.clone(), b.clone()));
            let dst = state(&mut base, (c.clone(), d.clone()));
            base.add_transition(src, Some(c.clone()), Some(d.clone()), dst);
        }
        if *c == hash && *d == hash && *b != hash {
            let s = state(&mut base, (a.clone(), b.clone()));
            base.finals[s] = true;
        }
    }
    let mut rels = BTreeMap::new();
    for e in &ts.sigma {
        let mut t = base.clone();
        for [a, b, c, d] in &ts.tiles {
            if *a == hash && *b == hash && d == e {
                let dst = state(&mut t, (c.clone(), d.clone()));
                t.add_transition(0, Some(c.clone()), Some(d.clone()), dst);
            }
        }
        rels.insert(e.clone(), t.trim());
    }
    let graph = RationalGraph::new(alphabet.clone(), rels)?;

    // the last column, read top to bottom
    let mut last = Nfa::empty(alphabet.clone());
    let mut col: HashMap<Letter, usize> = HashMap::from([(hash.clone(), 0)]);
    let mut cstate = |n: &mut Nfa, l: &Letter| -> usize {
        if let Some(&s) = col.get(l) {
            return s;
        }
        let s = n.add_state(false);
        col.insert(l.clone(), s);
        s
    };
    for [a, b, c, d] in &ts.tiles {
        if *b != hash || *d != hash || *c == hash {
            if *b == hash && *c == hash && *d == hash && *a != hash {
                let s = cstate(&mut last, a);
                last.finals[s] = true;
            }
            continue;
        }
        let src = cstate(&mut last, a);
        let dst = cstate(&mut last, c);
        last.add_transition(src, Some(c.clone()), dst);
    }
    let initial = Nfa::star_of(alphabet.clone(), std::slice::from_ref(&hash));
    let mut report = ConversionReport::new("ts2synch", 8);
    report.class_claims = TransducerClass { synchronous: true, left_synchronized: true, right_synchronized: true, sequential: false };
    Ok(Converted { output: InfiniteAutomaton::new(graph, initial, last.trim())?, report })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Synch2TsOptions {
    pub initial: String,
    pub final_: String,
    pub frame: String,
}

impl Default for Synch2TsOptions {
    fn default() -> Synch2TsOptions {
        Synch2TsOptions { initial: "i".into(), final_: "f".into(), frame: "#".into() }
    }
}

/// A tiling system whose pictures are accepting paths of a synchronous
/// automaton laid out column by column under their labels. Each cell
/// carries the vertex letter and the state of the unambiguous transducer
/// that produced it. The empty word is never represented.
pub fn synch2ts(m: &InfiniteAutomaton, opts: &Synch2TsOptions) -> Result<Converted<TilingSystem>> {
    let star = startostar(m, &StarOptions { initial: opts.initial.clone(), final_: Some(opts.final_.clone()) })?;
    let h = star.output;
    let (i, f) = (star.report.fresh_symbols[0].clone(), star.report.fresh_symbols[1].clone());
    let sigma: Alphabet = m.graph.edge_labels.clone();
    let hash = fresh(&opts.frame, &[&sigma])?;
    let eps_word = m.initial.accepts(&[]) && m.final_.accepts(&[]);

    let mut u: BTreeMap<Letter, Transducer> = BTreeMap::new();
    for (a, t) in &h.graph.relations {
        u.insert(a.clone(), t.unambiguize_synchronized()?);
    }

    // cells (vertex letter, label, state)
    let mut cells: BTreeMap<(Letter, Letter, usize), Letter> = BTreeMap::new();
    let mut names: BTreeSet<Letter> = BTreeSet::new();
    for (a, t) in &u {
        for (_, _, y, q) in t.transitions() {
            let y = y.clone().ok_or_else(|| Error::Class("startostar output must be synchronous".into()))?;
            let key = (y.clone(), a.clone(), q);
            if cells.contains_key(&key) {
                continue;
            }
            let name = Letter::from(format!("{y}@{a}:{q}"));
            if sigma.contains(&name) || name == hash || !names.insert(name.clone()) {
                return Err(Error::FreshSymbol(name.to_string()));
            }
            cells.insert(key, name);
        }
    }
    let cell = |x: &Letter, a: &Letter, q: usize| cells[&(x.clone(), a.clone(), q)].clone();
    // letters that may sit in a cell of state q of label a
    let mut at: BTreeMap<(Letter, usize), Vec<Letter>> = BTreeMap::new();
    for (x, a, q) in cells.keys() {
        at.entry((a.clone(), *q)).or_default().push(x.clone());
    }
    // transitions by output letter: y -> (label, q, q')
    let mut producing: HashMap<Letter, Vec<(Letter, usize, usize)>> = HashMap::new();
    for (a, t) in &u {
        for (q, _, y, q2) in t.transitions() {
            producing.entry(y.clone().expect("synchronous")).or_default().push((a.clone(), q, q2));
        }
    }
    let none: Vec<Letter> = Vec::new();

    let mut tiles: BTreeSet<Tile> = BTreeSet::new();
    let h4 = |a: &Letter, b: &Letter, c: &Letter, d: &Letter| [a.clone(), b.clone(), c.clone(), d.clone()];
    for a in &sigma {
        tiles.insert(h4(&hash, &hash, &hash, a));
        tiles.insert(h4(&hash, &hash, a, &hash));
        for b in &sigma {
            tiles.insert(h4(&hash, &hash, b, a));
        }
    }
    for (a, t) in &u {
        let q0 = t.initial;
        for (src, x, y, dst) in t.transitions() {
            let (x, y) = (x.clone().expect("synchronous"), y.clone().expect("synchronous"));
            let below = cell(&y, a, dst);
            if src == q0 && x == i {
                tiles.insert(h4(&hash, a, &hash, &below));
            }
            if src == q0 && x != i {
                // the left neighbour is a cell holding x
                for (e, _, q2) in producing.get(&x).unwrap_or(&Vec::new()) {
                    let left = cell(&x, e, *q2);
                    for b in &sigma {
                        tiles.insert(h4(b, a, &left, &below));
                    }
                }
            }
            if x == i {
                for z in at.get(&(a.clone(), src)).unwrap_or(&none) {
                    tiles.insert(h4(&hash, &cell(z, a, src), &hash, &below));
                }
            } else {
                // r -x/y-> r' under the cell (z, a, r); the left column moves
                // from a cell (w, e, q) to (x, e, q') with q -?/x-> q'
                for z in at.get(&(a.clone(), src)).unwrap_or(&none) {
                    let up = cell(z, a, src);
                    for (e, q, q2) in producing.get(&x).unwrap_or(&Vec::new()) {
                        let left_below = cell(&x, e, *q2);
                        for w in at.get(&(e.clone(), *q)).unwrap_or(&none) {
                            tiles.insert(h4(&cell(w, e, *q), &up, &left_below, &below));
                        }
                    }
                }
            }
            if y == f {
                // right column: the first f cell and the ones below it
                if src == q0 {
                    tiles.insert(h4(a, &hash, &below, &hash));
                }
                if at.get(&(a.clone(), src)).is_some_and(|v| v.contains(&f)) {
                    tiles.insert(h4(&cell(&f, a, src), &hash, &below, &hash));
                }
            }
        }
        if eps_word && t.finals[q0] {
            tiles.insert(h4(&hash, a, &hash, &hash));
            tiles.insert(h4(a, &hash, &hash, &hash));
            for b in &sigma {
                tiles.insert(h4(b, a, &hash, &hash));
            }
        }
    }

    // bottom row: every cell in a final state, f cells on the right
    let finals: Vec<(&Letter, &Letter)> = cells
        .iter()
        .filter(|((_, a, q), _)| u[a].finals[*q])
        .map(|((x, _, _), name)| (x, name))
        .collect();
    for (x, name) in &finals {
        tiles.insert(h4(&hash, name, &hash, &hash));
        if **x == f {
            tiles.insert(h4(name, &hash, &hash, &hash));
        }
        for (_, left) in &finals {
            tiles.insert(h4(left, name, &hash, &hash));
        }
    }

    let mut gamma = sigma.clone();
    gamma.extend(cells.values().cloned());
    let k = gamma.len() as u64;
    let ts = TilingSystem::new(gamma, sigma, hash.clone(), tiles)?;
    let mut report = ConversionReport::new("synch2ts", 6);
    report.fresh_symbols = vec![i, f, hash];
    report.constants.insert("work_alphabet".into(), k);
    report.constants.insert("tiles".into(), ts.tiles.len() as u64);
    if !m.initial.intersect(&m.final_).is_empty() {
        report.notes.push("the empty word is accepted by the automaton but not by the tiling system".into());
    }
    Ok(Converted { output: ts, report })
}
