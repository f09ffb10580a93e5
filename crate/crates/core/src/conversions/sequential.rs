use std::collections::{BTreeMap, HashMap, VecDeque};

use super::{synch2ts, ConversionReport, Converted, Synch2TsOptions};
use crate::error::{Error, Result};
use crate::graph::{InfiniteAutomaton, RationalGraph};
use crate::letter::{fresh, Alphabet, Letter};
use crate::nfa::Nfa;
use crate::tiling::TilingSystem;
use crate::transducer::{Transducer, TransducerClass};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeqOptions {
    pub left: String,
    pub right: String,
    /// Appended to a letter to mark it.
    pub mark: String,
}

impl Default for SeqOptions {
    fn default() -> SeqOptions {
        SeqOptions { left: "[".into(), right: "]".into(), mark: "~".into() }
    }
}

struct Letters {
    lambda: Vec<Letter>,
    marked: HashMap<Letter, Letter>,
    unmarked: HashMap<Letter, Letter>,
    left: Letter,
    right: Letter,
    alphabet: Alphabet,
}

#[derive(Clone, PartialEq, Eq, Hash)]
enum Check {
    Start,
    Before { rc: u8, prev: Option<(Letter, Letter)>, last: Option<Letter> },
    After { rc: u8, cur: (Letter, Letter) },
    Between { rc: u8, cur: (Letter, Letter) },
}

/// Rows `[ ... ]` of a bordered picture with one marked letter per row.
/// Accepts when, for every pair of consecutive rows, the window made of
/// the marked column and the one before it is a tile; with a label, the
/// marked letter of the first inner row must be that label.
fn window_check(ts: &TilingSystem, l: &Letters, label: Option<&Letter>) -> Nfa {
    let mut n = Nfa::empty(l.alphabet.clone());
    let mut ids: HashMap<Check, usize> = HashMap::from([(Check::Start, 0)]);
    let mut queue = VecDeque::from([Check::Start]);
    while let Some(k) = queue.pop_front() {
        let src = ids[&k];
        let mut moves: Vec<(Letter, Check)> = Vec::new();
        match &k {
            Check::Start => moves.push((l.left.clone(), Check::Before { rc: 1, prev: None, last: None })),
            Check::Before { rc, prev, last } => {
                for x in &l.lambda {
                    moves.push((x.clone(), Check::Before { rc: *rc, prev: prev.clone(), last: Some(x.clone()) }));
                    let Some(y) = last else { continue };
                    if *rc >= 2 {
                        let Some((p, q)) = prev else { continue };
                        if !ts.has_tile(&[p.clone(), q.clone(), y.clone(), x.clone()]) {
                            continue;
                        }
                    }
                    if *rc == 2 && label.is_some_and(|a| a != x) {
                        continue;
                    }
                    moves.push((l.marked[x].clone(), Check::After { rc: *rc, cur: (y.clone(), x.clone()) }));
                }
            }
            Check::After { rc, cur } => {
                for x in &l.lambda {
                    moves.push((x.clone(), k.clone()));
                }
                moves.push((l.right.clone(), Check::Between { rc: (*rc + 1).min(3), cur: cur.clone() }));
            }
            Check::Between { rc, cur } => {
                moves.push((l.left.clone(), Check::Before { rc: *rc, prev: Some(cur.clone()), last: None }));
            }
        }
        for (x, k2) in moves {
            let dst = match ids.get(&k2) {
                Some(&d) => d,
                None => {
                    let fin = matches!(k2, Check::Between { rc: 3, .. });
                    let d = n.add_state(fin);
                    ids.insert(k2.clone(), d);
                    queue.push_back(k2);
                    d
                }
            };
            n.add_transition(src, Some(x), dst);
        }
    }
    n
}

/// Moves every mark one letter to the right, row by row.
fn shift(l: &Letters) -> Transducer {
    let mut t = Transducer::empty(l.alphabet.clone());
    t.finals[0] = true;
    let before = t.add_state(false);
    let pending = t.add_state(false);
    let after = t.add_state(false);
    let (lb, rb) = (Some(l.left.clone()), Some(l.right.clone()));
    t.add_transition(0, lb.clone(), lb, before);
    for x in &l.lambda {
        let (u, m) = (Some(x.clone()), Some(l.marked[x].clone()));
        t.add_transition(before, u.clone(), u.clone(), before);
        t.add_transition(before, m, u.clone(), pending);
        t.add_transition(pending, u.clone(), Some(l.marked[x].clone()), after);
        t.add_transition(after, u.clone(), u, after);
    }
    t.add_transition(after, rb.clone(), rb, 0);
    t
}

/// A sequential synchronous automaton whose vertices are bordered
/// pictures written row after row. The edge for a label moves a column
/// mark one step right after checking the tiles it passes.
pub fn ts2seq(ts: &TilingSystem, opts: &SeqOptions) -> Result<Converted<InfiniteAutomaton>> {
    let hash = ts.frame.clone();
    let mut base = ts.gamma.clone();
    base.insert(hash.clone());
    let left = fresh(&opts.left, &[&base])?;
    let right = fresh(&opts.right, &[&base])?;
    if left == right {
        return Err(Error::FreshSymbol(opts.right.clone()));
    }
    let mut alphabet = base.clone();
    alphabet.insert(left.clone());
    alphabet.insert(right.clone());
    let mut marked = HashMap::new();
    let mut unmarked = HashMap::new();
    for x in &base {
        let m = fresh(&format!("{x}{}", opts.mark), &[&alphabet])?;
        marked.insert(x.clone(), m.clone());
        unmarked.insert(m, x.clone());
    }
    alphabet.extend(unmarked.keys().cloned());
    let l = Letters { lambda: base.iter().cloned().collect(), marked, unmarked, left, right, alphabet: alphabet.clone() };

    let sh = shift(&l);
    let mut rels = BTreeMap::new();
    for a in &ts.sigma {
        rels.insert(a.clone(), sh.restrict_domain(&window_check(ts, &l, Some(a))).trim());
    }
    let graph = RationalGraph::new(alphabet.clone(), rels)?;

    let one = |x: &Letter| Nfa::from_word(alphabet.clone(), std::slice::from_ref(x));
    let any = |xs: &[Letter]| xs.iter().fold(Nfa::empty(alphabet.clone()), |acc, x| acc.union(&one(x)));
    let star = |xs: &[Letter]| Nfa::star_of(alphabet.clone(), xs);
    let cat = |parts: &[Nfa]| parts.iter().fold(Nfa::epsilon(alphabet.clone()), |acc, p| acc.concat(p));
    let gamma: Vec<Letter> = ts.gamma.iter().cloned().collect();
    let gamma_m: Vec<Letter> = gamma.iter().map(|x| l.marked[x].clone()).collect();
    let (lb, rb, h, hm) = (one(&l.left), one(&l.right), one(&hash), one(&l.marked[&hash]));
    let hs = star(std::slice::from_ref(&hash));

    let frame_row_i = cat(&[lb.clone(), h.clone(), hm.clone(), hs.clone(), rb.clone()]);
    let inner_i = cat(&[lb.clone(), h.clone(), any(&gamma_m), star(&gamma), h.clone(), rb.clone()]);
    let initial = cat(&[frame_row_i.clone(), inner_i.star(), frame_row_i]);

    let frame_row_f = cat(&[lb.clone(), hs, hm.clone(), rb.clone()]);
    let inner_f = cat(&[lb, h, star(&gamma), hm, rb]);
    let shape = cat(&[frame_row_f.clone(), inner_f.star(), frame_row_f]);
    let final_ = shape.intersect(&window_check(ts, &l, None));

    let mut report = ConversionReport::new("ts2seq", 6);
    report.fresh_symbols = vec![l.left.clone(), l.right.clone()];
    report.fresh_symbols.extend(l.unmarked.keys().cloned());
    report.class_claims = TransducerClass { synchronous: true, left_synchronized: true, right_synchronized: true, sequential: true };
    Ok(Converted { output: InfiniteAutomaton::new(graph, initial, final_.trim())?, report })
}

/// For a sequential synchronous automaton started from `x*` for a single
/// letter `x`, builds the tiling system and probes its determinism up to
/// `width`.
pub fn seq_from_astar_is_det(m: &InfiniteAutomaton, width: usize) -> Result<(Converted<TilingSystem>, bool)> {
    for (a, c) in m.graph.classify() {
        if !(c.sequential && c.synchronous) {
            return Err(Error::Class(format!("relation {a} is not sequential and synchronous")));
        }
    }
    let d = m.initial.minimal_dfa();
    let one_letter_star =
        d.num_states() == 1 && d.finals[d.initial] && d.delta[d.initial].len() == 1 && d.delta[d.initial].values().all(|&s| s == d.initial);
    if !one_letter_star {
        return Err(Error::Precondition("the initial set must be the star of a single letter".into()));
    }
    let c = synch2ts(m, &Synch2TsOptions::default())?;
    let det = c.output.det_probe(width);
    Ok((c, det))
}
