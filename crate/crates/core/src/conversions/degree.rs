use std::collections::BTreeMap;

use super::{rat2synch, startostar, synch2ts, ts2synch, ConversionReport, Converted, StarOptions, Synch2TsOptions};
use crate::error::{Error, Result};
use crate::graph::{growth_bound, single_word, InfiniteAutomaton, RationalGraph};
use crate::letter::{fresh, Alphabet, Letter};
use crate::nfa::{Count, Nfa};
use crate::tiling::TilingSystem;
use crate::transducer::{Transducer, TransducerClass};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OnePointOptions {
    pub initial: String,
}

impl Default for OnePointOptions {
    fn default() -> OnePointOptions {
        OnePointOptions { initial: "i".into() }
    }
}

/// Replaces the initial set by one fresh vertex whose out-edges reach
/// every image of the old initial set. The new vertex may have infinite
/// out-degree.
pub fn onepoint(m: &InfiniteAutomaton, opts: &OnePointOptions) -> Result<Converted<InfiniteAutomaton>> {
    let gamma = &m.graph.vertex_alphabet;
    let i = fresh(&opts.initial, &[gamma])?;
    let mut alphabet = gamma.clone();
    alphabet.insert(i.clone());
    let mut rels = BTreeMap::new();
    for (a, t) in &m.graph.relations {
        let d = t.apply_lang(&m.initial).minimal_dfa();
        let mut p = Transducer::empty(alphabet.clone());
        let off = p.num_states();
        for s in 0..d.num_states() {
            p.add_state(d.finals[s]);
        }
        // `i` pairs with the first output letter so the relation stays
        // left-synchronized; the rest is an output tail
        for (l, dst) in &d.delta[d.initial] {
            p.add_transition(0, Some(i.clone()), Some(l.clone()), off + dst);
        }
        if d.finals[d.initial] {
            let e = p.add_state(true);
            p.add_transition(0, Some(i.clone()), None, e);
        }
        for (s, row) in d.delta.iter().enumerate() {
            for (l, dst) in row {
                p.add_transition(off + s, None, Some(l.clone()), off + dst);
            }
        }
        rels.insert(a.clone(), t.with_alphabet(&alphabet).union(&p.trim()));
    }
    let graph = RationalGraph::new(alphabet.clone(), rels)?;
    let initial = Nfa::from_word(alphabet.clone(), std::slice::from_ref(&i));
    let mut final_ = m.final_.with_alphabet(&alphabet);
    if !m.initial.intersect(&m.final_).is_empty() {
        final_ = final_.union(&initial);
    }
    let mut report = ConversionReport::new("onepoint", 6);
    report.fresh_symbols.push(i);
    Ok(Converted { output: InfiniteAutomaton::new(graph, initial, final_)?, report })
}

/// `{(c^n, c^m) : 1 <= m <= n}`.
fn shrink(alphabet: &Alphabet, c: &Letter) -> Transducer {
    let mut t = Transducer::empty(alphabet.clone());
    let s1 = t.add_state(true);
    let s2 = t.add_state(true);
    let x = Some(c.clone());
    t.add_transition(0, x.clone(), x.clone(), s1);
    t.add_transition(s1, x.clone(), x.clone(), s1);
    t.add_transition(s1, x.clone(), None, s2);
    t.add_transition(s2, x, None, s2);
    t
}

/// `{(c^n, c^(kn))}`.
fn stretch(alphabet: &Alphabet, c: &Letter, k: usize) -> Transducer {
    let mut t = Transducer::empty(alphabet.clone());
    t.finals[0] = true;
    let x = Some(c.clone());
    let mut cur = 0;
    for j in 0..k.max(1) {
        let next = if j + 1 == k.max(1) { 0 } else { t.add_state(false) };
        let input = if j == 0 { x.clone() } else { None };
        t.add_transition(cur, input, x.clone(), next);
        cur = next;
    }
    t
}

/// `{(c^n, c^(n+k))}`, left-synchronized.
fn extend(alphabet: &Alphabet, c: &Letter, k: usize) -> Transducer {
    let mut t = Transducer::empty(alphabet.clone());
    let x = Some(c.clone());
    t.add_transition(0, x.clone(), x.clone(), 0);
    let mut cur = 0;
    for _ in 0..k {
        let next = t.add_state(false);
        t.add_transition(cur, None, x.clone(), next);
        cur = next;
    }
    t.finals[cur] = true;
    t
}

/// Everything needed to assemble the bounded-degree relations.
struct Queue<'a> {
    alphabet: Alphabet,
    sigma: Vec<Letter>,
    /// Vertex letters of the simulated automaton, counter excluded.
    gamma: Vec<Letter>,
    counter: Letter,
    bar: Letter,
    rels: &'a BTreeMap<Letter, Transducer>,
    /// Counter growth applied once per stored letter.
    grow: Transducer,
}

impl Queue<'_> {
    fn pair(&self, u: &[Letter], v: &[Letter]) -> Transducer {
        Transducer::pair(self.alphabet.clone(), u, v)
    }

    fn rel(&self, a: &Letter) -> Transducer {
        self.rels[a].with_alphabet(&self.alphabet)
    }

    /// Vertices `u|x` store pending labels `u` on the left of the bar.
    /// While `x` is a counter, labels are stored and the counter grows;
    /// then a prefix of the counter starts a run, and each later edge
    /// applies two stored labels while storing one, until one is left.
    fn relation(&self, a: &Letter) -> Transducer {
        let al = &self.alphabet;
        let id = Transducer::identity(al.clone(), &self.sigma);
        let bar = self.pair(std::slice::from_ref(&self.bar), std::slice::from_ref(&self.bar));
        let push = self.pair(&[], std::slice::from_ref(a));
        let counters = Nfa::star_of(al.clone(), std::slice::from_ref(&self.counter));
        let words = Nfa::star_of(al.clone(), &self.gamma);
        let shrink = shrink(al, &self.counter);
        let grow_shrink = self.grow.compose(&shrink);
        let mut parts: Vec<Transducer> = Vec::new();

        // store a, grow the counter twice
        let grow2 = self.grow.compose(&self.grow);
        parts.push(Transducer::concat_all(al.clone(), [&id, &push, &bar, &grow2]));
        // a single label: |c -a-> run of length at most one growth
        let only = grow_shrink.compose(&self.rel(a)).restrict_domain(&Nfa::from_word(al.clone(), std::slice::from_ref(&self.counter)));
        parts.push(self.pair(std::slice::from_ref(&self.bar), &[]).concat(&only));
        for b in &self.sigma {
            let rb = self.rel(b);
            let pop_b = self.pair(std::slice::from_ref(b), &[]);
            // start the run with b, queue length unchanged
            let start = grow_shrink.compose(&rb).restrict_domain(&counters);
            parts.push(Transducer::concat_all(al.clone(), [&pop_b, &id, &push, &bar, &start]));
            // last stored label: apply b then a, drop the bar
            let pop_bar = self.pair(&[b.clone(), self.bar.clone()], &[]);
            let fin = rb.compose(&self.rel(a)).restrict_domain(&words);
            parts.push(pop_bar.concat(&fin));
            let fin2 = shrink.compose(&rb).compose(&self.rel(a)).restrict_domain(&counters);
            parts.push(pop_bar.concat(&fin2));
            for c in &self.sigma {
                let pop_bc = self.pair(&[b.clone(), c.clone()], &[]);
                let bc = rb.compose(&self.rel(c));
                let start2 = shrink.compose(&bc).restrict_domain(&counters);
                parts.push(Transducer::concat_all(al.clone(), [&pop_bc, &id, &push, &bar, &start2]));
                let step = bc.restrict_domain(&words);
                parts.push(Transducer::concat_all(al.clone(), [&pop_bc, &id, &push, &bar, &step]));
            }
        }
        Transducer::union_all(al.clone(), parts.iter())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatFdOptions {
    pub counter: String,
    pub bar: String,
    /// Counter growth factor; defaults to the work alphabet size of the
    /// tiling system built from the input.
    pub k: Option<usize>,
}

impl Default for RatFdOptions {
    fn default() -> RatFdOptions {
        RatFdOptions { counter: "$".into(), bar: "|".into(), k: None }
    }
}

/// A rational graph of finite out-degree with a single initial vertex
/// accepting the same nonempty words as a synchronous automaton whose
/// initial and final sets are disjoint.
pub fn synch2ratfd(m: &InfiniteAutomaton, opts: &RatFdOptions) -> Result<Converted<InfiniteAutomaton>> {
    if !m.initial.intersect(&m.final_).is_empty() {
        return Err(Error::Precondition("initial and final sets must be disjoint".into()));
    }
    let gamma = m.graph.vertex_alphabet.clone();
    let sigma = m.graph.edge_labels.clone();
    let counter = fresh(&opts.counter, &[&gamma, &sigma])?;
    let bar = fresh(&opts.bar, &[&gamma, &sigma])?;
    if bar == counter {
        return Err(Error::FreshSymbol(opts.bar.clone()));
    }
    let k = match opts.k {
        Some(k) => k,
        None => synch2ts(m, &Synch2TsOptions::default())?.report.constants["work_alphabet"] as usize,
    };
    let r = startostar(m, &StarOptions { initial: counter.as_str().to_string(), final_: None })?.output;
    let mut alphabet: Alphabet = gamma.union(&sigma).cloned().collect();
    alphabet.insert(counter.clone());
    alphabet.insert(bar.clone());
    let q = Queue {
        alphabet: alphabet.clone(),
        sigma: sigma.iter().cloned().collect(),
        gamma: gamma.iter().cloned().collect(),
        counter: counter.clone(),
        bar: bar.clone(),
        rels: &r.graph.relations,
        grow: stretch(&alphabet, &counter, k),
    };
    let rels: BTreeMap<Letter, Transducer> = sigma.iter().map(|a| (a.clone(), q.relation(a))).collect();
    let graph = RationalGraph::new(alphabet.clone(), rels)?;
    let initial = Nfa::from_word(alphabet.clone(), &[bar.clone(), counter.clone()]);
    let final_ = m.final_.with_alphabet(&alphabet);
    let mut report = ConversionReport::new("synch2ratfd", 4);
    report.fresh_symbols = vec![counter, bar];
    report.constants.insert("k".into(), k as u64);
    Ok(Converted { output: InfiniteAutomaton::new(graph, initial, final_)?, report })
}

/// A left-synchronized graph of finite out-degree for a tiling system
/// whose minimal pictures have height at most `c` times the word length.
pub fn squarets2synchgraph(ts: &TilingSystem, c: usize) -> Result<Converted<InfiniteAutomaton>> {
    let g = ts2synch(ts)?.output;
    let sigma = ts.sigma.clone();
    let gamma = ts.gamma.clone();
    let counter = ts.frame.clone();
    let bar = fresh("|", &[&gamma, &sigma, &g.graph.vertex_alphabet])?;
    let mut alphabet: Alphabet = g.graph.vertex_alphabet.union(&sigma).cloned().collect();
    alphabet.insert(bar.clone());
    let q = Queue {
        alphabet: alphabet.clone(),
        sigma: sigma.iter().cloned().collect(),
        gamma: gamma.iter().cloned().collect(),
        counter: counter.clone(),
        bar: bar.clone(),
        rels: &g.graph.relations,
        grow: extend(&alphabet, &counter, c),
    };
    let max_delay = 2 * c + 4;
    let mut rels = BTreeMap::new();
    for a in &sigma {
        rels.insert(a.clone(), q.relation(a).synchronize(max_delay)?);
    }
    let graph = RationalGraph::new(alphabet.clone(), rels)?;
    let initial = Nfa::from_word(alphabet.clone(), &[bar.clone(), counter]);
    let final_ = g.final_.with_alphabet(&alphabet);
    let mut report = ConversionReport::new("squarets2synchgraph", 6);
    report.fresh_symbols.push(bar);
    report.class_claims = TransducerClass { synchronous: false, left_synchronized: true, right_synchronized: false, sequential: false };
    report.constants.insert("c".into(), c as u64);
    Ok(Converted { output: InfiniteAutomaton::new(graph, initial, final_)?, report })
}

/// A tiling system for a left-synchronized automaton of finite out-degree
/// with one initial vertex. Minimal picture heights are bounded by
/// `k * |w| + offset`, both reported.
pub fn synchfd2squarets(m: &InfiniteAutomaton) -> Result<Converted<TilingSystem>> {
    let start = single_word(&m.initial).ok_or_else(|| Error::Precondition("the initial set must be a single vertex".into()))?;
    let mut k = 1u64;
    for (a, t) in &m.graph.relations {
        match growth_bound(t)? {
            Count::Finite(c) => k = k.max(c as u64),
            Count::Infinite => return Err(Error::Precondition(format!("relation {a} has unbounded growth"))),
        }
    }
    let padded = rat2synch(m, "#")?;
    let mut out = synch2ts(&padded.output, &Synch2TsOptions::default())?;
    out.report.conversion = "synchfd2squarets".into();
    out.report.fresh_symbols.insert(0, padded.report.fresh_symbols[0].clone());
    out.report.constants.insert("k".into(), k);
    out.report.constants.insert("offset".into(), start.len() as u64 + 1);
    Ok(out)
}
