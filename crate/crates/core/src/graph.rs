//! Rational graphs (one transducer per edge label) and infinite automata
//! over them.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use crate::error::{Error, Result};
use crate::letter::{check_word, format_word, shortlex, Alphabet, Letter, Word};
use crate::nfa::{Count, Dfa, Nfa};
use crate::transducer::{TailSide, Transducer, TransducerClass};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalGraph {
    pub vertex_alphabet: Alphabet,
    pub edge_labels: Alphabet,
    pub relations: BTreeMap<Letter, Transducer>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InfiniteAutomaton {
    pub graph: RationalGraph,
    pub initial: Nfa,
    pub final_: Nfa,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathWitness {
    pub vertices: Vec<Word>,
    pub labels: Vec<Letter>,
}

impl PathWitness {
    pub fn max_vertex_len(&self) -> usize {
        self.vertices.iter().map(Vec::len).max().unwrap_or(0)
    }
}

impl std::fmt::Display for PathWitness {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let show = |v: &Word| if v.is_empty() { "ε".to_string() } else { format_word(v) };
        write!(f, "{}", show(&self.vertices[0]))?;
        for (l, v) in self.labels.iter().zip(&self.vertices[1..]) {
            write!(f, " -{l}-> {}", show(v))?;
        }
        Ok(())
    }
}

/// Result of a determinism check: `exact` is false when only a bounded
/// probe could be run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Determinism {
    pub deterministic: bool,
    pub exact: bool,
}

impl RationalGraph {
    /// Checks that every relation is over the vertex alphabet and that the
    /// label set matches.
    pub fn new(vertex_alphabet: Alphabet, relations: BTreeMap<Letter, Transducer>) -> Result<RationalGraph> {
        if relations.is_empty() {
            return Err(Error::Input("a graph needs at least one edge label".into()));
        }
        let mut rels = BTreeMap::new();
        for (a, t) in relations {
            if !t.alphabet.is_subset(&vertex_alphabet) {
                return Err(Error::Input(format!("transducer for {a} uses letters outside the vertex alphabet")));
            }
            rels.insert(a, t.with_alphabet(&vertex_alphabet));
        }
        let edge_labels = rels.keys().cloned().collect();
        Ok(RationalGraph { vertex_alphabet, edge_labels, relations: rels })
    }

    pub fn relation(&self, a: &Letter) -> Option<&Transducer> {
        self.relations.get(a)
    }

    /// All edges leaving `v` whose target has length at most
    /// `max_target_len`.
    pub fn out_edges(&self, v: &[Letter], max_target_len: usize) -> BTreeSet<(Letter, Word)> {
        let mut out = BTreeSet::new();
        for (a, t) in &self.relations {
            for w in t.apply_word(v).enumerate(max_target_len) {
                out.insert((a.clone(), w));
            }
        }
        out
    }

    /// Image of `v` under all relations at once.
    pub fn successors(&self, v: &[Letter]) -> Nfa {
        let mut acc = Nfa::empty(self.vertex_alphabet.clone());
        for t in self.relations.values() {
            acc = acc.union(&t.apply_word(v));
        }
        acc
    }

    pub fn out_degree(&self, v: &[Letter]) -> Count {
        self.successors(v).cardinality()
    }

    pub fn classify(&self) -> BTreeMap<Letter, TransducerClass> {
        self.relations.iter().map(|(a, t)| (a.clone(), t.classify())).collect()
    }

    /// Every relation functional. Exact when every transducer is
    /// left-synchronized, otherwise a probe up to `probe_len`.
    pub fn is_deterministic(&self, probe_len: usize) -> Determinism {
        let mut exact = true;
        for t in self.relations.values() {
            let ok = match t.is_functional_synchronized() {
                Ok(b) => b,
                Err(_) => {
                    exact = false;
                    t.functional_probe(probe_len)
                }
            };
            if !ok {
                // a witness of non-functionality is conclusive either way
                return Determinism { deterministic: false, exact: true };
            }
        }
        Determinism { deterministic: true, exact }
    }

    /// Merges labels along `mapping`; relations with the same image label
    /// are united.
    pub fn project_labels(&self, mapping: &BTreeMap<Letter, Letter>) -> Result<RationalGraph> {
        let mut rels: BTreeMap<Letter, Transducer> = BTreeMap::new();
        for (a, t) in &self.relations {
            let b = mapping
                .get(a)
                .ok_or_else(|| Error::Input(format!("projection is undefined on label {a}")))?;
            let merged = match rels.remove(b) {
                Some(prev) => prev.union(t),
                None => t.clone(),
            };
            rels.insert(b.clone(), merged);
        }
        RationalGraph::new(self.vertex_alphabet.clone(), rels)
    }

    /// Largest out-degree at each distance `0..=radius` from `v`,
    /// breadth-first on the unlabelled graph. Targets longer than
    /// `max_target_len` are not explored (they still count towards the
    /// degree of their source).
    pub fn degree_table(&self, v: &[Letter], radius: usize, max_target_len: usize) -> Vec<Count> {
        let mut seen: BTreeSet<Word> = BTreeSet::from([v.to_vec()]);
        let mut layer: Vec<Word> = vec![v.to_vec()];
        let mut table = Vec::new();
        for d in 0..=radius {
            let mut best = Count::Finite(0);
            let mut next = Vec::new();
            for u in &layer {
                let succ = self.successors(u);
                let c = succ.cardinality();
                best = best.max(c);
                if d < radius {
                    for w in succ.enumerate(max_target_len) {
                        if seen.insert(w.clone()) {
                            next.push(w);
                        }
                    }
                }
            }
            table.push(best);
            layer = next;
        }
        table
    }

    /// Breadth-first sample of vertices reachable from `starts`, keeping
    /// only vertices of length at most `max_vertex_len`.
    pub fn sample_reachable(&self, starts: &[Word], limit: usize, max_vertex_len: usize) -> Vec<Word> {
        let mut seen: BTreeSet<Word> = BTreeSet::new();
        let mut queue = std::collections::VecDeque::new();
        let mut out = Vec::new();
        for s in starts {
            if seen.insert(s.clone()) {
                queue.push_back(s.clone());
            }
        }
        while let Some(v) = queue.pop_front() {
            if out.len() >= limit {
                break;
            }
            for w in self.successors(&v).enumerate(max_vertex_len) {
                if seen.insert(w.clone()) {
                    queue.push_back(w);
                }
            }
            out.push(v);
        }
        out
    }
}

impl InfiniteAutomaton {
    pub fn new(graph: RationalGraph, initial: Nfa, final_: Nfa) -> Result<InfiniteAutomaton> {
        for (name, a) in [("initial", &initial), ("final", &final_)] {
            if !a.alphabet.is_subset(&graph.vertex_alphabet) {
                return Err(Error::Input(format!("{name} set uses letters outside the vertex alphabet")));
            }
        }
        let initial = initial.with_alphabet(&graph.vertex_alphabet);
        let final_ = final_.with_alphabet(&graph.vertex_alphabet);
        Ok(InfiniteAutomaton { graph, initial, final_ })
    }

    pub fn labels(&self) -> &Alphabet {
        &self.graph.edge_labels
    }

    fn step(&self, current: &Nfa, a: &Letter) -> Nfa {
        match self.graph.relations.get(a) {
            Some(t) => t.apply_lang(current).determinize_minimize(false),
            None => Nfa::empty(self.graph.vertex_alphabet.clone()),
        }
    }

    /// Exact membership by iterated images of the initial set.
    pub fn member(&self, w: &[Letter]) -> Result<bool> {
        check_word(w, &self.graph.edge_labels)?;
        let mut cur = self.initial.determinize_minimize(false);
        for a in w {
            if cur.is_empty() {
                return Ok(false);
            }
            cur = self.step(&cur, a);
        }
        Ok(!cur.intersect(&self.final_).is_empty())
    }

    /// All accepted words of length at most `max_len`, in shortlex order.
    /// Images are shared between words with a common prefix and empty
    /// images prune the whole subtree.
    pub fn enumerate(&self, max_len: usize) -> Vec<Word> {
        let labels: Vec<Letter> = self.graph.edge_labels.iter().cloned().collect();
        let mut out = Vec::new();
        let mut stack: Vec<(Word, Nfa)> = vec![(Vec::new(), self.initial.determinize_minimize(false))];
        while let Some((w, cur)) = stack.pop() {
            if !cur.intersect(&self.final_).is_empty() {
                out.push(w.clone());
            }
            if w.len() == max_len {
                continue;
            }
            for a in &labels {
                let next = self.step(&cur, a);
                if !next.is_empty() {
                    let mut w2 = w.clone();
                    w2.push(a.clone());
                    stack.push((w2, next));
                }
            }
        }
        out.sort_by(|a, b| shortlex(a, b));
        out
    }

    /// Exact sets of vertices from which the rest of `w` leads into F.
    fn backward_sets(&self, w: &[Letter]) -> Vec<Nfa> {
        let mut sets = vec![self.final_.determinize_minimize(false)];
        for a in w.iter().rev() {
            let prev = match self.graph.relations.get(a) {
                Some(t) => t.inverse().apply_lang(sets.last().unwrap()).determinize_minimize(false),
                None => Nfa::empty(self.graph.vertex_alphabet.clone()),
            };
            sets.push(prev);
        }
        sets.reverse();
        sets
    }

    /// Layers of bounded vertices along `w`, each restricted to vertices
    /// that can still finish the word. Returns per layer the vertices with
    /// their predecessor indices.
    fn layers(&self, w: &[Letter], max_vertex_len: usize) -> Vec<Vec<(Word, Vec<usize>)>> {
        let back = self.backward_sets(w);
        let mut layers: Vec<Vec<(Word, Vec<usize>)>> = Vec::new();
        let first: Vec<(Word, Vec<usize>)> = self
            .initial
            .intersect(&back[0])
            .enumerate(max_vertex_len)
            .into_iter()
            .map(|v| (v, Vec::new()))
            .collect();
        layers.push(first);
        for (k, a) in w.iter().enumerate() {
            let t = &self.graph.relations[a];
            let mut index: HashMap<Word, usize> = HashMap::new();
            let mut next: Vec<(Word, Vec<usize>)> = Vec::new();
            for (pi, (v, _)) in layers[k].iter().enumerate() {
                let img = t.apply_word(v).intersect(&back[k + 1]);
                for u in img.enumerate(max_vertex_len) {
                    match index.get(&u) {
                        Some(&i) => next[i].1.push(pi),
                        None => {
                            index.insert(u.clone(), next.len());
                            next.push((u, vec![pi]));
                        }
                    }
                }
            }
            let empty = next.is_empty();
            layers.push(next);
            if empty {
                break;
            }
        }
        layers
    }

    /// An accepting path for `w` whose vertices all have length at most
    /// `max_vertex_len`, if one exists.
    pub fn witness(&self, w: &[Letter], max_vertex_len: usize) -> Result<Option<PathWitness>> {
        check_word(w, &self.graph.edge_labels)?;
        let layers = self.layers(w, max_vertex_len);
        if layers.len() < w.len() + 1 || layers[w.len()].is_empty() {
            return Ok(None);
        }
        let mut vertices = Vec::new();
        let mut i = 0;
        for k in (0..=w.len()).rev() {
            let (v, preds) = &layers[k][i];
            vertices.push(v.clone());
            if k > 0 {
                i = preds[0];
            }
        }
        vertices.reverse();
        Ok(Some(PathWitness { vertices, labels: w.to_vec() }))
    }

    /// Number of distinct accepting paths for `w` with bounded vertices.
    pub fn count_paths(&self, w: &[Letter], max_vertex_len: usize) -> Result<u128> {
        check_word(w, &self.graph.edge_labels)?;
        let layers = self.layers(w, max_vertex_len);
        if layers.len() < w.len() + 1 {
            return Ok(0);
        }
        let mut counts: Vec<u128> = vec![1; layers[0].len()];
        for layer in &layers[1..] {
            counts = layer
                .iter()
                .map(|(_, preds)| preds.iter().fold(0u128, |s, &p| s.saturating_add(counts[p])))
                .collect();
        }
        Ok(counts.iter().fold(0u128, |s, c| s.saturating_add(*c)))
    }

    /// Largest number of bounded accepting paths over words of length at
    /// most `max_len`.
    pub fn ambiguity_probe(&self, max_len: usize, max_vertex_len: usize) -> u128 {
        self.enumerate(max_len)
            .iter()
            .map(|w| self.count_paths(w, max_vertex_len).unwrap_or(0))
            .max()
            .unwrap_or(0)
    }

    /// Membership on a deterministic graph from the single initial vertex
    /// `i`, following the unique successor at each step.
    pub fn det_member(&self, i: &[Letter], w: &[Letter]) -> Result<bool> {
        check_word(w, &self.graph.edge_labels)?;
        check_word(i, &self.graph.vertex_alphabet)?;
        let det = self.graph.is_deterministic(6);
        if !det.deterministic || !det.exact {
            return Err(Error::Class("deterministic evaluation needs a graph whose relations are provably functional".into()));
        }
        let mut v = i.to_vec();
        for a in w {
            let t = match self.graph.relations.get(a) {
                Some(t) => t,
                None => return Ok(false),
            };
            match single_word(&t.apply_word(&v)) {
                Some(u) => v = u,
                None => return Ok(false),
            }
        }
        Ok(self.final_.accepts(&v))
    }

    /// Replaces the initial set by a single vertex.
    pub fn with_initial_vertex(&self, i: &[Letter]) -> InfiniteAutomaton {
        let mut m = self.clone();
        m.initial = Nfa::from_word(self.graph.vertex_alphabet.clone(), i);
        m
    }
}

/// The unique word of a language with exactly one word.
pub fn single_word(a: &Nfa) -> Option<Word> {
    let d: Dfa = a.minimal_dfa();
    let mut s = d.initial;
    let mut w = Vec::new();
    for _ in 0..=d.num_states() {
        let row = &d.delta[s];
        match (d.finals[s], row.len()) {
            (true, 0) => return Some(w),
            (false, 1) => {
                let (l, t) = row.iter().next().unwrap();
                w.push(l.clone());
                s = *t;
            }
            _ => return None,
        }
    }
    None
}

/// Imbalance bound: the largest `|x| - |y|` over pairs of a
/// left-synchronized transducer.
pub fn imbalance_bound(t: &Transducer) -> Result<Count> {
    t.tail_bound(TailSide::Input)
}

/// Growth bound: the largest `|y| - |x|`.
pub fn growth_bound(t: &Transducer) -> Result<Count> {
    t.tail_bound(TailSide::Output)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::letter::{alphabet, letter, word};

    fn g0() -> RationalGraph {
        let g = alphabet(["A", "B"]);
        let mut t = Transducer::empty(g.clone());
        t.finals[0] = true;
        let mid = t.add_state(false);
        for x in ["A", "B"] {
            for y in ["A", "B"] {
                t.add_transition(0, Some(letter(x)), Some(letter(y)), mid);
            }
            t.add_transition(mid, None, Some(letter(x)), 0);
        }
        RationalGraph::new(g, BTreeMap::from([(letter("a"), t)])).unwrap()
    }

    #[test]
    fn doubling_degrees() {
        let g = g0();
        assert_eq!(g.out_degree(&word("A")), Count::Finite(4));
        let table = g.degree_table(&word("A"), 2, 8);
        assert_eq!(table, vec![Count::Finite(4), Count::Finite(16), Count::Finite(256)]);
        assert!(!g.is_deterministic(2).deterministic);
    }

    #[test]
    fn single_word_extraction() {
        let g = alphabet(["a", "b"]);
        assert_eq!(single_word(&Nfa::from_word(g.clone(), &word("ab"))), Some(word("ab")));
        assert_eq!(single_word(&Nfa::from_words(g.clone(), [&word("a"), &word("b")])), None);
        assert_eq!(single_word(&Nfa::empty(g)), None);
    }
}
