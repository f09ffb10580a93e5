use std::collections::{BTreeMap, BTreeSet, HashMap};

use super::{ConversionReport, Converted};
use crate::cellular::{CellularAutomaton, Rule};
use crate::error::{Error, Result};
use crate::graph::{InfiniteAutomaton, RationalGraph};
use crate::letter::{fresh, Alphabet, Letter};
use crate::nfa::Nfa;
use crate::transducer::{Side, Transducer, TransducerClass};

/// Column `i` of a run becomes a vertex: the input letter at `i` followed
/// by the rules applied at `i`, one per step. The left bracket column is
/// `[^(T+1)`. The relation for a label checks that neighbouring columns
/// agree on their rules.
pub fn ca2graph(ca: &CellularAutomaton) -> Result<Converted<InfiniteAutomaton>> {
    if !ca.is_deterministic() {
        return Err(Error::Precondition("the cellular automaton must be deterministic".into()));
    }
    let (lb, rb) = (ca.left.clone(), ca.right.clone());
    let mut used: Alphabet = ca.gamma.clone();
    used.insert(lb.clone());
    used.insert(rb.clone());
    let mut name: BTreeMap<Rule, Letter> = BTreeMap::new();
    for r in &ca.rules {
        let l = fresh(&format!("({},{},{},{})", r[0], r[1], r[2], r[3]), &[&used])?;
        name.insert(r.clone(), l);
    }
    let mut alphabet: Alphabet = ca.sigma.clone();
    alphabet.insert(lb.clone());
    alphabet.insert(rb.clone());
    alphabet.extend(name.values().cloned());

    let accepting = |a: &Letter| ca.finals.contains(a);
    let mut rels = BTreeMap::new();
    for a in &ca.sigma {
        let mut t = Transducer::empty(alphabet.clone());
        let mut ids: HashMap<(Letter, Letter), usize> = HashMap::new();
        let mut st = |t: &mut Transducer, x: &Letter, y: &Letter| -> usize {
            if let Some(&s) = ids.get(&(x.clone(), y.clone())) {
                return s;
            }
            let fin = (*x == lb || accepting(x)) && accepting(y);
            let s = t.add_state(fin);
            ids.insert((x.clone(), y.clone()), s);
            s
        };
        let out: Side = Some(a.clone());
        let d = st(&mut t, &lb, a);
        t.add_transition(0, Some(lb.clone()), out.clone(), d);
        for b in &ca.sigma {
            let d = st(&mut t, b, a);
            t.add_transition(0, Some(b.clone()), out.clone(), d);
        }
        for r1 in &ca.rules {
            if r1[0] == lb {
                let (s, d) = (st(&mut t, &lb, &r1[1]), st(&mut t, &lb, &r1[3]));
                t.add_transition(s, Some(lb.clone()), Some(name[r1].clone()), d);
            }
            if r1[2] == rb {
                continue;
            }
            for r2 in ca.rules.iter().filter(|r2| r2[0] == r1[1] && r2[1] == r1[2]) {
                let (s, d) = (st(&mut t, &r1[1], &r1[2]), st(&mut t, &r1[3], &r2[3]));
                t.add_transition(s, Some(name[r1].clone()), Some(name[r2].clone()), d);
            }
        }
        rels.insert(a.clone(), t.trim());
    }
    let graph = RationalGraph::new(alphabet.clone(), rels)?;

    let brackets = Nfa::star_of(alphabet.clone(), std::slice::from_ref(&lb));
    let initial = if ca.reflexive {
        brackets
    } else {
        let two = Nfa::from_word(alphabet.clone(), &[lb.clone(), lb.clone()]);
        two.concat(&brackets)
    };
    let last: Vec<Letter> = ca
        .rules
        .iter()
        .filter(|r| r[2] == rb)
        .map(|r| name[r].clone())
        .collect();
    let sigma: Vec<Letter> = ca.sigma.iter().cloned().collect();
    let first = sigma.iter().fold(Nfa::empty(alphabet.clone()), |acc, x| acc.union(&Nfa::from_word(alphabet.clone(), std::slice::from_ref(x))));
    let final_ = first.concat(&Nfa::star_of(alphabet.clone(), &last));

    let mut report = ConversionReport::new("ca2graph", 8);
    report.fresh_symbols = name.values().cloned().collect();
    report.class_claims = TransducerClass { synchronous: true, left_synchronized: true, right_synchronized: true, sequential: false };
    Ok(Converted { output: InfiniteAutomaton::new(graph, initial, final_)?, report })
}

/// The first violation of global determinism, if any. Relations must be
/// synchronous. Two kinds of violation exist: a state with two
/// transitions on one label leading to different states, and a pair of
/// states (the first from a relation or the initial set, the second from
/// a relation or the final set) sharing more than one letter between the
/// outputs of the first and the inputs of the second.
pub fn global_det_witness(m: &InfiniteAutomaton) -> Result<Option<String>> {
    let mut rels: Vec<(String, Transducer)> = Vec::new();
    for (a, t) in &m.graph.relations {
        if !t.classify().synchronous {
            return Err(Error::Class(format!("relation {a} is not synchronous")));
        }
        let t = t.trim();
        for (q, row) in t.trans.iter().enumerate() {
            let mut seen: HashMap<(&Side, &Side), usize> = HashMap::new();
            for (x, y, d) in row {
                if let Some(&d0) = seen.get(&(x, y)) {
                    if d0 != *d {
                        let show = |s: &Side| s.as_ref().map(Letter::to_string).unwrap_or_default();
                        return Ok(Some(format!("relation {a}: state {q} has two {}/{} transitions", show(x), show(y))));
                    }
                }
                seen.insert((x, y), *d);
            }
        }
        rels.push((format!("relation {a}"), t));
    }
    let mut left = rels.clone();
    left.push(("initial set".into(), Transducer::identity_on(&m.initial)));
    let mut right = rels;
    right.push(("final set".into(), Transducer::identity_on(&m.final_)));

    let letters = |t: &Transducer, q: usize, out: bool| -> BTreeSet<Letter> {
        t.trans[q]
            .iter()
            .filter_map(|(x, y, _)| if out { y.clone() } else { x.clone() })
            .collect()
    };
    for (n1, t1) in &left {
        let outs: Vec<BTreeSet<Letter>> = (0..t1.num_states()).map(|q| letters(t1, q, true)).collect();
        for (n2, t2) in &right {
            for q2 in 0..t2.num_states() {
                let ins = letters(t2, q2, false);
                for (q1, o) in outs.iter().enumerate() {
                    let shared: Vec<&Letter> = o.intersection(&ins).take(2).collect();
                    if shared.len() > 1 {
                        return Ok(Some(format!(
                            "{n1} state {q1} and {n2} state {q2} share letters {} and {}",
                            shared[0], shared[1]
                        )));
                    }
                }
            }
        }
    }
    Ok(None)
}

pub fn check_global_det(m: &InfiniteAutomaton) -> Result<bool> {
    Ok(global_det_witness(m)?.is_none())
}
