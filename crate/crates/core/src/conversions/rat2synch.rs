use std::collections::BTreeMap;

use super::{ConversionReport, Converted};
use crate::error::{Error, Result};
use crate::graph::{InfiniteAutomaton, RationalGraph};
use crate::letter::{fresh, Alphabet, Letter};
use crate::nfa::{Dfa, Nfa};
use crate::transducer::{Transducer, TransducerClass};

/// Pads every relation with a fresh letter so that it becomes synchronous:
/// each ε side is replaced by the padding letter and every state gets a
/// padding loop. Initial and final sets are closed under padding too.
pub fn rat2synch(m: &InfiniteAutomaton, pad: &str) -> Result<Converted<InfiniteAutomaton>> {
    let gamma = &m.graph.vertex_alphabet;
    let p = fresh(pad, &[gamma])?;
    let mut alphabet = gamma.clone();
    alphabet.insert(p.clone());

    let mut rels = BTreeMap::new();
    for (a, t) in &m.graph.relations {
        let t = t.normalize();
        let mut out = Transducer { alphabet: alphabet.clone(), initial: t.initial, finals: t.finals.clone(), trans: Vec::new() };
        out.trans = vec![Vec::new(); t.num_states()];
        for (s, x, y, d) in t.transitions() {
            let x = x.clone().unwrap_or_else(|| p.clone());
            let y = y.clone().unwrap_or_else(|| p.clone());
            out.trans[s].push((Some(x), Some(y), d));
        }
        for s in 0..out.num_states() {
            out.trans[s].push((Some(p.clone()), Some(p.clone()), s));
        }
        rels.insert(a.clone(), out);
    }
    let graph = RationalGraph::new(alphabet.clone(), rels)?;
    let initial = pad_closure(&m.initial, &alphabet, &p);
    let final_ = pad_closure(&m.final_, &alphabet, &p);
    let mut report = ConversionReport::new("rat2synch", 6);
    report.fresh_symbols.push(p);
    report.class_claims = TransducerClass { synchronous: true, left_synchronized: true, right_synchronized: true, sequential: false };
    Ok(Converted { output: InfiniteAutomaton::new(graph, initial, final_)?, report })
}

fn pad_closure(a: &Nfa, alphabet: &Alphabet, p: &Letter) -> Nfa {
    let mut out = a.with_alphabet(alphabet);
    for s in 0..out.num_states() {
        out.add_transition(s, Some(p.clone()), s);
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StarOptions {
    pub initial: String,
    /// `None` keeps the final set and only rewrites the initial side.
    pub final_: Option<String>,
}

impl Default for StarOptions {
    fn default() -> StarOptions {
        StarOptions { initial: "i".into(), final_: Some("f".into()) }
    }
}

/// `{(s^n, u) : u in L(d), |u| = n >= 1}` when `reading`, otherwise
/// `{(u, s^n) : u in L(d), |u| = n >= 1}`.
fn counter_transducer(d: &Dfa, alphabet: &Alphabet, s: &Letter, reading: bool) -> Transducer {
    let n = d.num_states();
    let mut t = Transducer::empty(alphabet.clone());
    t.trans = vec![Vec::new(); n + 1];
    t.finals = std::iter::once(false).chain(d.finals.iter().copied()).collect();
    t.initial = 0;
    for (src, row) in d.delta.iter().enumerate() {
        for (l, dst) in row {
            let (x, y) = if reading { (s.clone(), l.clone()) } else { (l.clone(), s.clone()) };
            t.trans[src + 1].push((Some(x.clone()), Some(y.clone()), dst + 1));
            if src == d.initial {
                t.trans[0].push((Some(x), Some(y), dst + 1));
            }
        }
    }
    t.trim()
}

/// Rewrites a synchronous automaton so that its initial set becomes a
/// star over one fresh letter and (optionally) its final set a star over
/// another.
pub fn startostar(m: &InfiniteAutomaton, opts: &StarOptions) -> Result<Converted<InfiniteAutomaton>> {
    let gamma = m.graph.vertex_alphabet.clone();
    for (a, c) in m.graph.classify() {
        if !c.synchronous {
            return Err(Error::Class(format!("relation {a} is not synchronous")));
        }
    }
    let i = fresh(&opts.initial, &[&gamma])?;
    let f = match &opts.final_ {
        Some(name) => {
            let f = fresh(name, &[&gamma])?;
            if f == i {
                return Err(Error::FreshSymbol(name.clone()));
            }
            Some(f)
        }
        None => None,
    };
    let mut alphabet = gamma.clone();
    alphabet.insert(i.clone());
    alphabet.extend(f.iter().cloned());

    let t_i = counter_transducer(&m.initial.minimal_dfa(), &alphabet, &i, true);
    let t_f = f.as_ref().map(|f| counter_transducer(&m.final_.minimal_dfa(), &alphabet, f, false));
    let mut rels = BTreeMap::new();
    for (a, k) in &m.graph.relations {
        let k = k.with_alphabet(&alphabet);
        let ik = t_i.compose(&k);
        let mut parts = vec![ik.clone(), k.clone()];
        if let Some(t_f) = &t_f {
            parts.push(k.compose(t_f));
            parts.push(ik.compose(t_f));
        }
        rels.insert(a.clone(), Transducer::union_all(alphabet.clone(), parts.iter()));
    }
    let graph = RationalGraph::new(alphabet.clone(), rels)?;

    let eps = Nfa::epsilon(alphabet.clone());
    let i_plus = Nfa::star_of(alphabet.clone(), std::slice::from_ref(&i)).difference(&eps);
    let mut initial = i_plus.clone();
    if m.initial.accepts(&[]) {
        initial = initial.union(&eps);
    }
    // empty word: an initial vertex that is also final, kept by length
    let both = m.initial.intersect(&m.final_).with_alphabet(&alphabet);
    let both_len = both.map_letters(alphabet.clone(), |_| i.clone()).difference(&eps);
    let final_ = match &f {
        Some(f) => {
            let mut fin = Nfa::star_of(alphabet.clone(), std::slice::from_ref(f)).difference(&eps).union(&both_len);
            if m.final_.accepts(&[]) {
                fin = fin.union(&eps);
            }
            fin
        }
        None => m.final_.with_alphabet(&alphabet).union(&both_len),
    };

    let mut report = ConversionReport::new("startostar", 6);
    report.fresh_symbols.push(i);
    report.fresh_symbols.extend(f);
    report.class_claims = TransducerClass { synchronous: true, left_synchronized: true, right_synchronized: true, sequential: false };
    Ok(Converted { output: InfiniteAutomaton::new(graph, initial, final_)?, report })
}
