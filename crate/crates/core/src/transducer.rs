//! Word transducers: rational relations with their algebra and the
//! syntactic classes (synchronous, left/right-synchronized, sequential).

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt;

use crate::error::{Error, Result};
use crate::letter::{Alphabet, Letter, Word};
use crate::nfa::{Count, Nfa};

pub type Side = Option<Letter>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Transducer {
    pub alphabet: Alphabet,
    pub initial: usize,
    pub finals: Vec<bool>,
    /// Outgoing transitions `(input, output, target)` per state.
    pub trans: Vec<Vec<(Side, Side, usize)>>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct TransducerClass {
    pub synchronous: bool,
    pub left_synchronized: bool,
    pub right_synchronized: bool,
    pub sequential: bool,
}

impl fmt::Display for TransducerClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "synchronous={} left_synchronized={} right_synchronized={} sequential={}",
            self.synchronous, self.left_synchronized, self.right_synchronized, self.sequential
        )
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
enum Phase {
    Pairs,
    InTail,
    OutTail,
}

impl Transducer {
    /// A single non-final state: the empty relation.
    pub fn empty(alphabet: Alphabet) -> Transducer {
        Transducer { alphabet, initial: 0, finals: vec![false], trans: vec![Vec::new()] }
    }

    /// Identity on `letters*`.
    pub fn identity(alphabet: Alphabet, letters: &[Letter]) -> Transducer {
        let mut t = Transducer::empty(alphabet);
        t.finals[0] = true;
        for l in letters {
            t.add_transition(0, Some(l.clone()), Some(l.clone()), 0);
        }
        t
    }

    /// Identity on the language of `a`, built on its minimal automaton
    /// (each a-transition becomes a/a).
    pub fn identity_on(a: &Nfa) -> Transducer {
        let d = a.minimal_dfa();
        let mut t = Transducer::empty(a.alphabet.clone());
        t.finals = d.finals.clone();
        t.trans = vec![Vec::new(); d.num_states()];
        t.initial = d.initial;
        for (s, row) in d.delta.iter().enumerate() {
            for (l, dst) in row {
                t.trans[s].push((Some(l.clone()), Some(l.clone()), *dst));
            }
        }
        t
    }

    /// The single pair `(u, v)`, written as a left-synchronized path.
    pub fn pair(alphabet: Alphabet, u: &[Letter], v: &[Letter]) -> Transducer {
        let mut t = Transducer::empty(alphabet);
        let mut cur = 0;
        for k in 0..u.len().max(v.len()) {
            let next = t.add_state(false);
            t.add_transition(cur, u.get(k).cloned(), v.get(k).cloned(), next);
            cur = next;
        }
        t.finals[cur] = true;
        t
    }

    pub fn num_states(&self) -> usize {
        self.finals.len()
    }

    pub fn num_transitions(&self) -> usize {
        self.trans.iter().map(Vec::len).sum()
    }

    pub fn add_state(&mut self, is_final: bool) -> usize {
        self.finals.push(is_final);
        self.trans.push(Vec::new());
        self.finals.len() - 1
    }

    /// Panics on letters outside the alphabet.
    pub fn add_transition(&mut self, src: usize, input: Side, output: Side, dst: usize) {
        for l in input.iter().chain(output.iter()) {
            assert!(self.alphabet.contains(l), "letter {l} outside the transducer alphabet");
        }
        self.trans[src].push((input, output, dst));
    }

    pub fn transitions(&self) -> impl Iterator<Item = (usize, &Side, &Side, usize)> + '_ {
        self.trans
            .iter()
            .enumerate()
            .flat_map(|(s, ts)| ts.iter().map(move |(x, y, d)| (s, x, y, *d)))
    }

    pub fn with_alphabet(&self, alphabet: &Alphabet) -> Transducer {
        assert!(self.alphabet.is_subset(alphabet), "alphabet can only be extended");
        let mut t = self.clone();
        t.alphabet = alphabet.clone();
        t
    }

    pub fn map_letters(&self, alphabet: Alphabet, f: impl Fn(&Letter) -> Letter) -> Transducer {
        let mut t = Transducer { alphabet, initial: self.initial, finals: self.finals.clone(), trans: Vec::new() };
        t.trans = vec![Vec::new(); self.num_states()];
        for (s, x, y, d) in self.transitions() {
            t.add_transition(s, x.as_ref().map(&f), y.as_ref().map(&f), d);
        }
        t
    }

    fn reachable(&self) -> Vec<bool> {
        let mut seen = vec![false; self.num_states()];
        let mut stack = vec![self.initial];
        seen[self.initial] = true;
        while let Some(s) = stack.pop() {
            for (_, _, d) in &self.trans[s] {
                if !seen[*d] {
                    seen[*d] = true;
                    stack.push(*d);
                }
            }
        }
        seen
    }

    fn coaccessible(&self) -> Vec<bool> {
        let n = self.num_states();
        let mut rev = vec![Vec::new(); n];
        for (s, _, _, d) in self.transitions() {
            rev[d].push(s);
        }
        let mut seen = self.finals.clone();
        let mut stack: Vec<usize> = (0..n).filter(|&s| seen[s]).collect();
        while let Some(s) = stack.pop() {
            for &p in &rev[s] {
                if !seen[p] {
                    seen[p] = true;
                    stack.push(p);
                }
            }
        }
        seen
    }

    /// Reachable and co-reachable part (the initial state always stays).
    pub fn trim(&self) -> Transducer {
        let r = self.reachable();
        let c = self.coaccessible();
        let n = self.num_states();
        let keep: Vec<bool> = (0..n).map(|s| (r[s] && c[s]) || s == self.initial).collect();
        let mut map = vec![usize::MAX; n];
        let mut out = Transducer { alphabet: self.alphabet.clone(), initial: 0, finals: Vec::new(), trans: Vec::new() };
        let order = std::iter::once(self.initial).chain((0..n).filter(|&s| s != self.initial));
        for s in order {
            if keep[s] {
                map[s] = out.add_state(self.finals[s]);
            }
        }
        for (s, x, y, d) in self.transitions() {
            if keep[s] && keep[d] {
                out.trans[map[s]].push((x.clone(), y.clone(), map[d]));
            }
        }
        out.dedup();
        out
    }

    fn dedup(&mut self) {
        for ts in &mut self.trans {
            let mut seen = BTreeSet::new();
            ts.retain(|t| seen.insert(t.clone()));
        }
    }

    /// Removes ε/ε transitions by closure. The relation is unchanged.
    pub fn remove_eps_eps(&self) -> Transducer {
        let has = self.trans.iter().flatten().any(|(x, y, _)| x.is_none() && y.is_none());
        if !has {
            return self.clone();
        }
        let n = self.num_states();
        let mut out = Transducer { alphabet: self.alphabet.clone(), initial: self.initial, finals: self.finals.clone(), trans: vec![Vec::new(); n] };
        for s in 0..n {
            let mut closure = BTreeSet::from([s]);
            let mut stack = vec![s];
            while let Some(p) = stack.pop() {
                for (x, y, d) in &self.trans[p] {
                    if x.is_none() && y.is_none() && closure.insert(*d) {
                        stack.push(*d);
                    }
                }
            }
            for &p in &closure {
                if self.finals[p] {
                    out.finals[s] = true;
                }
                for (x, y, d) in &self.trans[p] {
                    if x.is_some() || y.is_some() {
                        out.trans[s].push((x.clone(), y.clone(), *d));
                    }
                }
            }
        }
        out.dedup();
        out
    }

    /// ε/ε removed, then trimmed.
    pub fn normalize(&self) -> Transducer {
        self.remove_eps_eps().trim()
    }

    pub fn inverse(&self) -> Transducer {
        let mut t = self.clone();
        for ts in &mut t.trans {
            for tr in ts.iter_mut() {
                std::mem::swap(&mut tr.0, &mut tr.1);
            }
        }
        t
    }

    /// Reversed transducer (reads both words backwards).
    pub fn reverse(&self) -> Transducer {
        let mut t = Transducer::empty(self.alphabet.clone());
        let off = t.num_states();
        for s in 0..self.num_states() {
            t.add_state(s == self.initial);
        }
        for (s, x, y, d) in self.transitions() {
            t.trans[off + d].push((x.clone(), y.clone(), off + s));
        }
        for s in 0..self.num_states() {
            if self.finals[s] {
                t.trans[0].push((None, None, off + s));
            }
        }
        t
    }

    pub fn domain(&self) -> Nfa {
        let mut a = Nfa { alphabet: self.alphabet.clone(), initial: self.initial, finals: self.finals.clone(), trans: Vec::new() };
        a.trans = self.trans.iter().map(|ts| ts.iter().map(|(x, _, d)| (x.clone(), *d)).collect()).collect();
        a.trim()
    }

    pub fn range(&self) -> Nfa {
        self.inverse().domain()
    }

    /// Image of a language: product on the input side, projection on the
    /// output side.
    pub fn apply_lang(&self, a: &Nfa) -> Nfa {
        let alphabet = self.alphabet.clone();
        let mut out = Nfa { alphabet, initial: 0, finals: Vec::new(), trans: Vec::new() };
        // index automaton moves by letter
        let mut amoves: Vec<HashMap<&Letter, Vec<usize>>> = vec![HashMap::new(); a.num_states()];
        let mut aeps: Vec<Vec<usize>> = vec![Vec::new(); a.num_states()];
        for (p, l, d) in a.transitions() {
            match l {
                Some(l) => amoves[p].entry(l).or_default().push(d),
                None => aeps[p].push(d),
            }
        }
        let mut index: HashMap<(usize, usize), usize> = HashMap::new();
        let mut queue = VecDeque::new();
        let start = (self.initial, a.initial);
        index.insert(start, out.add_state(self.finals[start.0] && a.finals[start.1]));
        queue.push_back(start);
        while let Some((q, p)) = queue.pop_front() {
            let src = index[&(q, p)];
            let mut moves: Vec<(Side, (usize, usize))> = Vec::new();
            for (x, y, q2) in &self.trans[q] {
                match x {
                    None => moves.push((y.clone(), (*q2, p))),
                    Some(x) => {
                        if let Some(ds) = amoves[p].get(x) {
                            for &p2 in ds {
                                moves.push((y.clone(), (*q2, p2)));
                            }
                        }
                    }
                }
            }
            for &p2 in &aeps[p] {
                moves.push((None, (q, p2)));
            }
            for (y, key) in moves {
                let dst = match index.get(&key) {
                    Some(&d) => d,
                    None => {
                        let d = out.add_state(self.finals[key.0] && a.finals[key.1]);
                        index.insert(key, d);
                        queue.push_back(key);
                        d
                    }
                };
                out.trans[src].push((y, dst));
            }
        }
        out.trim()
    }

    pub fn apply_word(&self, u: &[Letter]) -> Nfa {
        self.apply_lang(&Nfa::from_word(self.alphabet.clone(), u))
    }

    /// Diagrammatic composition: `(u, w)` iff `(u, v)` in `self` and
    /// `(v, w)` in `other` for some `v`.
    pub fn compose(&self, other: &Transducer) -> Transducer {
        let alphabet: Alphabet = self.alphabet.union(&other.alphabet).cloned().collect();
        let mut out = Transducer { alphabet, initial: 0, finals: Vec::new(), trans: Vec::new() };
        let mut by_input: Vec<HashMap<&Letter, Vec<(&Side, usize)>>> = vec![HashMap::new(); other.num_states()];
        let mut eps_in: Vec<Vec<(&Side, usize)>> = vec![Vec::new(); other.num_states()];
        for (s, x, y, d) in other.transitions() {
            match x {
                Some(x) => by_input[s].entry(x).or_default().push((y, d)),
                None => eps_in[s].push((y, d)),
            }
        }
        let mut index: HashMap<(usize, usize), usize> = HashMap::new();
        let mut queue = VecDeque::new();
        let start = (self.initial, other.initial);
        index.insert(start, out.add_state(self.finals[start.0] && other.finals[start.1]));
        queue.push_back(start);
        while let Some((p, q)) = queue.pop_front() {
            let src = index[&(p, q)];
            let mut moves: Vec<(Side, Side, (usize, usize))> = Vec::new();
            for (x, y, p2) in &self.trans[p] {
                match y {
                    None => moves.push((x.clone(), None, (*p2, q))),
                    Some(b) => {
                        if let Some(ms) = by_input[q].get(b) {
                            for (z, q2) in ms {
                                moves.push((x.clone(), (*z).clone(), (*p2, *q2)));
                            }
                        }
                    }
                }
            }
            for (z, q2) in &eps_in[q] {
                moves.push((None, (*z).clone(), (p, *q2)));
            }
            for (x, z, key) in moves {
                let dst = match index.get(&key) {
                    Some(&d) => d,
                    None => {
                        let d = out.add_state(self.finals[key.0] && other.finals[key.1]);
                        index.insert(key, d);
                        queue.push_back(key);
                        d
                    }
                };
                out.trans[src].push((x, z, dst));
            }
        }
        out.normalize()
    }

    /// Union by a fresh initial state that copies both initial states'
    /// outgoing transitions (no ε/ε transition is introduced).
    pub fn union(&self, other: &Transducer) -> Transducer {
        let alphabet: Alphabet = self.alphabet.union(&other.alphabet).cloned().collect();
        let mut out = Transducer::empty(alphabet);
        let a = out.embed(self);
        let b = out.embed(other);
        out.finals[0] = self.finals[self.initial] || other.finals[other.initial];
        let mut first: Vec<(Side, Side, usize)> = out.trans[a].clone();
        first.extend(out.trans[b].iter().cloned());
        out.trans[0] = first;
        out.trim()
    }

    pub fn union_all<'a, I: IntoIterator<Item = &'a Transducer>>(alphabet: Alphabet, ts: I) -> Transducer {
        let mut acc = Transducer::empty(alphabet);
        for t in ts {
            acc = acc.union(t);
        }
        acc
    }

    fn embed(&mut self, other: &Transducer) -> usize {
        let off = self.num_states();
        for s in 0..other.num_states() {
            self.add_state(other.finals[s]);
        }
        for (s, x, y, d) in other.transitions() {
            self.trans[off + s].push((x.clone(), y.clone(), off + d));
        }
        off + other.initial
    }

    /// Pairwise concatenation `{(u1 u2, v1 v2)}`.
    pub fn concat(&self, other: &Transducer) -> Transducer {
        let alphabet: Alphabet = self.alphabet.union(&other.alphabet).cloned().collect();
        let mut out = Transducer::empty(alphabet);
        let off = out.num_states();
        let a = out.embed(self);
        let b = out.embed(other);
        out.trans[0].push((None, None, a));
        for s in 0..self.num_states() {
            if self.finals[s] {
                out.finals[off + s] = false;
                out.trans[off + s].push((None, None, b));
            }
        }
        out.normalize()
    }

    pub fn concat_all<'a, I: IntoIterator<Item = &'a Transducer>>(alphabet: Alphabet, ts: I) -> Transducer {
        let mut acc = Transducer::identity(alphabet, &[]);
        for t in ts {
            acc = acc.concat(t);
        }
        acc
    }

    /// Restriction to inputs in `L(a)`; sequential and synchronous
    /// transducers stay so, since the product is taken with a
    /// deterministic automaton.
    pub fn restrict_domain(&self, a: &Nfa) -> Transducer {
        let d = a.minimal_dfa();
        let alphabet: Alphabet = self.alphabet.union(&a.alphabet).cloned().collect();
        let mut out = Transducer { alphabet, initial: 0, finals: Vec::new(), trans: Vec::new() };
        let mut index: HashMap<(usize, usize), usize> = HashMap::new();
        let mut queue = VecDeque::new();
        let start = (self.initial, d.initial);
        index.insert(start, out.add_state(self.finals[start.0] && d.finals[start.1]));
        queue.push_back(start);
        while let Some((q, p)) = queue.pop_front() {
            let src = index[&(q, p)];
            for (x, y, q2) in &self.trans[q] {
                let p2 = match x {
                    None => p,
                    Some(l) => match d.delta[p].get(l) {
                        Some(&p2) => p2,
                        None => continue,
                    },
                };
                let key = (*q2, p2);
                let dst = match index.get(&key) {
                    Some(&s) => s,
                    None => {
                        let s = out.add_state(self.finals[key.0] && d.finals[key.1]);
                        index.insert(key, s);
                        queue.push_back(key);
                        s
                    }
                };
                out.trans[src].push((x.clone(), y.clone(), dst));
            }
        }
        out.trim()
    }

    pub fn restrict_range(&self, a: &Nfa) -> Transducer {
        self.inverse().restrict_domain(a).inverse()
    }

    /// Syntactic classification on the normalized (ε/ε-free, trim)
    /// transducer.
    pub fn classify(&self) -> TransducerClass {
        let t = self.normalize();
        let synchronous = t.transitions().all(|(_, x, y, _)| x.is_some() && y.is_some());
        let left_synchronized = t.left_synchronized_raw();
        let right_synchronized = t.reverse().left_synchronized_raw();
        let sequential = t.is_sequential_raw();
        TransducerClass { synchronous, left_synchronized, right_synchronized, sequential }
    }

    /// Phase annotation over reachable and co-reachable states: once a
    /// one-sided label is read only labels of that same side may follow.
    fn left_synchronized_raw(&self) -> bool {
        let c = self.coaccessible();
        let mut seen: BTreeSet<(usize, Phase)> = BTreeSet::new();
        let mut stack = vec![(self.initial, Phase::Pairs)];
        while let Some((q, ph)) = stack.pop() {
            if !seen.insert((q, ph)) {
                continue;
            }
            for (x, y, d) in &self.trans[q] {
                if !c[*d] {
                    continue;
                }
                let next = match (x.is_some(), y.is_some(), ph) {
                    (false, false, ph) => ph,
                    (true, true, Phase::Pairs) => Phase::Pairs,
                    (true, true, _) => return false,
                    (true, false, Phase::OutTail) => return false,
                    (true, false, _) => Phase::InTail,
                    (false, true, Phase::InTail) => return false,
                    (false, true, _) => Phase::OutTail,
                };
                stack.push((*d, next));
            }
        }
        true
    }

    fn is_sequential_raw(&self) -> bool {
        self.trans.iter().all(|ts| {
            let distinct: BTreeSet<&(Side, Side, usize)> = ts.iter().collect();
            if distinct.len() <= 1 {
                return true;
            }
            let mut inputs = BTreeSet::new();
            distinct.iter().all(|(x, _, _)| x.is_some() && inputs.insert(x.clone()))
        })
    }

    fn require_left_synchronized(&self, what: &str) -> Result<Transducer> {
        let t = self.normalize();
        if !t.left_synchronized_raw() {
            return Err(Error::Class(format!("{what} needs a left-synchronized transducer")));
        }
        Ok(t)
    }

    /// Subset construction over composite labels. Each accepted pair has
    /// a unique label sequence in a left-synchronized transducer, so the
    /// deterministic result has at most one accepting run per pair.
    pub fn unambiguize_synchronized(&self) -> Result<Transducer> {
        let t = self.require_left_synchronized("unambiguization")?;
        let (labels, enc) = t.label_automaton();
        let d = enc.minimal_dfa();
        let mut out = Transducer { alphabet: self.alphabet.clone(), initial: d.initial, finals: d.finals.clone(), trans: Vec::new() };
        out.trans = vec![Vec::new(); d.num_states()];
        for (s, row) in d.delta.iter().enumerate() {
            for (l, dst) in row {
                let (x, y) = labels[l.as_str().parse::<usize>().expect("label index")].clone();
                out.trans[s].push((x, y, *dst));
            }
        }
        Ok(out.trim())
    }

    /// Views the transducer as an automaton over label indices.
    fn label_automaton(&self) -> (Vec<(Side, Side)>, Nfa) {
        let mut labels: Vec<(Side, Side)> = Vec::new();
        let mut ids: HashMap<(Side, Side), usize> = HashMap::new();
        for (_, x, y, _) in self.transitions() {
            let key = (x.clone(), y.clone());
            if !ids.contains_key(&key) {
                ids.insert(key.clone(), labels.len());
                labels.push(key);
            }
        }
        let alphabet: Alphabet = (0..labels.len()).map(|i| Letter::from(i.to_string())).collect();
        let mut a = Nfa { alphabet, initial: self.initial, finals: self.finals.clone(), trans: vec![Vec::new(); self.num_states()] };
        for (s, x, y, d) in self.transitions() {
            let id = ids[&(x.clone(), y.clone())];
            a.trans[s].push((Some(Letter::from(id.to_string())), d));
        }
        (labels, a)
    }

    /// Exact functionality test for left-synchronized transducers.
    ///
    /// Both runs are padded into a synchronous form (a fresh padding
    /// letter fills the short side, and finals may keep reading padding),
    /// then a self-product on equal inputs looks for two accepting runs
    /// whose outputs differ somewhere.
    pub fn is_functional_synchronized(&self) -> Result<bool> {
        let t = self.require_left_synchronized("exact functionality")?;
        let pad = pad_letter(&t.alphabet);
        let n = t.num_states();
        let end = n;
        let mut moves: Vec<Vec<(Letter, Letter, usize)>> = vec![Vec::new(); n + 1];
        for (s, x, y, d) in t.transitions() {
            moves[s].push((x.clone().unwrap_or_else(|| pad.clone()), y.clone().unwrap_or_else(|| pad.clone()), d));
        }
        for s in 0..n {
            if t.finals[s] {
                moves[s].push((pad.clone(), pad.clone(), end));
            }
        }
        moves[end].push((pad.clone(), pad.clone(), end));
        let is_final = |s: usize| s == end || t.finals[s];
        let mut seen = BTreeSet::new();
        let mut stack = vec![(t.initial, t.initial, false)];
        while let Some((p, q, diff)) = stack.pop() {
            if !seen.insert((p, q, diff)) {
                continue;
            }
            if diff && is_final(p) && is_final(q) {
                return Ok(false);
            }
            for (a, b, p2) in &moves[p] {
                for (a2, c, q2) in &moves[q] {
                    if a == a2 {
                        stack.push((*p2, *q2, diff || b != c));
                    }
                }
            }
        }
        Ok(true)
    }

    /// Bounded functionality check valid for any transducer: no input of
    /// length at most `max_len` has two distinct images.
    pub fn functional_probe(&self, max_len: usize) -> bool {
        for u in self.domain().enumerate(max_len) {
            match self.apply_word(&u).cardinality() {
                Count::Finite(n) if n <= 1 => {}
                _ => return false,
            }
        }
        true
    }

    /// Number of accepting runs labelled `(u, v)`; `u64::MAX` when a
    /// useful ε/ε cycle makes it infinite.
    pub fn run_count(&self, u: &[Letter], v: &[Letter]) -> u64 {
        let n = self.num_states();
        let (lu, lv) = (u.len(), v.len());
        let node = |q: usize, i: usize, j: usize| (q * (lu + 1) + i) * (lv + 1) + j;
        let total = n * (lu + 1) * (lv + 1);
        let succ = |q: usize, i: usize, j: usize| -> Vec<(usize, usize, usize)> {
            let mut out = Vec::new();
            for (x, y, d) in &self.trans[q] {
                let i2 = match x {
                    None => i,
                    Some(l) if i < lu && &u[i] == l => i + 1,
                    _ => continue,
                };
                let j2 = match y {
                    None => j,
                    Some(l) if j < lv && &v[j] == l => j + 1,
                    _ => continue,
                };
                out.push((*d, i2, j2));
            }
            out
        };
        // forward reachability in the run graph
        let mut fwd = vec![false; total];
        let mut stack = vec![(self.initial, 0, 0)];
        fwd[node(self.initial, 0, 0)] = true;
        let mut edges: Vec<Vec<usize>> = vec![Vec::new(); total];
        let mut order = Vec::new();
        while let Some((q, i, j)) = stack.pop() {
            order.push((q, i, j));
            for (d, i2, j2) in succ(q, i, j) {
                let id = node(d, i2, j2);
                edges[node(q, i, j)].push(id);
                if !fwd[id] {
                    fwd[id] = true;
                    stack.push((d, i2, j2));
                }
            }
        }
        // count paths to accepting nodes with cycle detection
        let mut state = vec![0u8; total];
        let mut memo = vec![0u64; total];
        fn visit(
            id: usize,
            edges: &[Vec<usize>],
            accept: &dyn Fn(usize) -> bool,
            state: &mut [u8],
            memo: &mut [u64],
        ) -> Option<u64> {
            match state[id] {
                1 => return None,
                2 => return Some(memo[id]),
                _ => {}
            }
            state[id] = 1;
            let mut c = u64::from(accept(id));
            let mut cyclic = false;
            for &e in &edges[id] {
                match visit(e, edges, accept, state, memo) {
                    Some(k) => c = c.saturating_add(k),
                    None => cyclic = true,
                }
            }
            state[id] = 2;
            // a cycle only matters if it can still reach acceptance
            memo[id] = if cyclic && c > 0 { u64::MAX } else { c };
            if cyclic && c == 0 {
                // unknown yet: treat as zero, refined by productivity below
                memo[id] = 0;
            }
            Some(memo[id])
        }
        let accept = |id: usize| {
            let q = id / ((lu + 1) * (lv + 1));
            let rest = id % ((lu + 1) * (lv + 1));
            self.finals[q] && rest / (lv + 1) == lu && rest % (lv + 1) == lv
        };
        // productive nodes on a cycle make the count infinite
        let mut prod = vec![false; total];
        let mut rev: Vec<Vec<usize>> = vec![Vec::new(); total];
        for (id, es) in edges.iter().enumerate() {
            for &e in es {
                rev[e].push(id);
            }
        }
        let mut st: Vec<usize> = (0..total).filter(|&id| fwd[id] && accept(id)).collect();
        for &id in &st {
            prod[id] = true;
        }
        while let Some(id) = st.pop() {
            for &p in &rev[id] {
                if fwd[p] && !prod[p] {
                    prod[p] = true;
                    st.push(p);
                }
            }
        }
        if has_cycle_among(&edges, &prod) {
            return u64::MAX;
        }
        let _ = order;
        visit(node(self.initial, 0, 0), &edges, &accept, &mut state, &mut memo).unwrap_or(u64::MAX)
    }

    /// Longest one-sided tail on the given side over accepting paths of a
    /// left-synchronized transducer. `Input` bounds `|x| - |y|`, `Output`
    /// bounds `|y| - |x|`.
    pub fn tail_bound(&self, side: TailSide) -> Result<Count> {
        let t = self.require_left_synchronized("tail bounds")?;
        let c = t.coaccessible();
        // nodes (state, phase) reachable from the start
        let mut ids: HashMap<(usize, Phase), usize> = HashMap::new();
        let mut nodes: Vec<(usize, Phase)> = Vec::new();
        let mut edges: Vec<Vec<(usize, u64)>> = Vec::new();
        let start = (t.initial, Phase::Pairs);
        ids.insert(start, 0);
        nodes.push(start);
        edges.push(Vec::new());
        let mut i = 0;
        while i < nodes.len() {
            let (q, ph) = nodes[i];
            for (x, y, d) in &t.trans[q] {
                if !c[*d] {
                    continue;
                }
                let next = match (x.is_some(), y.is_some()) {
                    (true, true) | (false, false) => ph,
                    (true, false) => Phase::InTail,
                    (false, true) => Phase::OutTail,
                };
                let w = match side {
                    TailSide::Input => u64::from(x.is_some() && y.is_none()),
                    TailSide::Output => u64::from(x.is_none() && y.is_some()),
                };
                let key = (*d, next);
                let id = match ids.get(&key) {
                    Some(&id) => id,
                    None => {
                        ids.insert(key, nodes.len());
                        nodes.push(key);
                        edges.push(Vec::new());
                        nodes.len() - 1
                    }
                };
                edges[i].push((id, w));
            }
            i += 1;
        }
        let m = nodes.len();
        let sccs = tarjan(m, |v| edges[v].iter().map(|e| e.0).collect());
        let mut comp = vec![0; m];
        for (k, scc) in sccs.iter().enumerate() {
            for &v in scc {
                comp[v] = k;
            }
        }
        for v in 0..m {
            for &(e, w) in &edges[v] {
                if w > 0 && comp[e] == comp[v] {
                    return Ok(Count::Infinite);
                }
            }
        }
        // tarjan yields components in reverse topological order
        let mut best = vec![None::<u64>; sccs.len()];
        for (k, scc) in sccs.iter().enumerate() {
            let mut b: Option<u64> = None;
            for &v in scc {
                if t.finals[nodes[v].0] {
                    b = Some(b.unwrap_or(0));
                }
                for &(e, w) in &edges[v] {
                    if comp[e] != k {
                        if let Some(x) = best[comp[e]] {
                            b = Some(b.unwrap_or(0).max(x + w));
                        }
                    }
                }
            }
            // edges inside the component all have weight zero here
            best[k] = b;
        }
        Ok(Count::Finite(u128::from(best[comp[0]].unwrap_or(0))))
    }

    /// Rewrites a transducer into left-synchronized form by buffering the
    /// side that runs ahead. Fails when a useful path needs a buffer longer
    /// than `max_delay`. Once the remaining runs can only read (or only
    /// write), the buffer is flushed as a one-sided tail.
    pub fn synchronize(&self, max_delay: usize) -> Result<Transducer> {
        let t = self.normalize();
        let n = t.num_states();
        // states from which no output (resp. input) letter can follow
        let mut out_free = vec![true; n];
        let mut in_free = vec![true; n];
        {
            let mut rev = vec![Vec::new(); n];
            for (s, _, _, d) in t.transitions() {
                rev[d].push(s);
            }
            for (flags, pick) in [(&mut out_free, 1usize), (&mut in_free, 0usize)] {
                let mut stack: Vec<usize> = Vec::new();
                for (s, x, y, _) in t.transitions() {
                    let has = if pick == 1 { y.is_some() } else { x.is_some() };
                    if has && flags[s] {
                        flags[s] = false;
                        stack.push(s);
                    }
                }
                while let Some(s) = stack.pop() {
                    for &p in &rev[s] {
                        if flags[p] {
                            flags[p] = false;
                            stack.push(p);
                        }
                    }
                }
            }
        }

        #[derive(Clone, PartialEq, Eq, Hash)]
        enum Key {
            Sync(usize, Vec<Letter>, bool),
            TailIn(usize),
            TailOut(usize),
        }
        let mut out = Transducer::empty(t.alphabet.clone());
        out.trans.clear();
        out.finals.clear();
        let mut ids: HashMap<Key, usize> = HashMap::new();
        let mut queue: VecDeque<Key> = VecDeque::new();

        // where a state with a given buffer settles, plus the flush letters
        let settle = |q: usize, buf: Vec<Letter>, buf_is_input: bool| -> (Key, Vec<(Side, Side)>) {
            if (buf.is_empty() || buf_is_input) && out_free[q] {
                let flush = buf.into_iter().map(|l| (Some(l), None)).collect();
                (Key::TailIn(q), flush)
            } else if (buf.is_empty() || !buf_is_input) && in_free[q] {
                let flush = buf.into_iter().map(|l| (None, Some(l))).collect();
                (Key::TailOut(q), flush)
            } else {
                (Key::Sync(q, buf, buf_is_input), Vec::new())
            }
        };
        let get = |key: Key, out: &mut Transducer, ids: &mut HashMap<Key, usize>, queue: &mut VecDeque<Key>| -> usize {
            if let Some(&id) = ids.get(&key) {
                return id;
            }
            let fin = match &key {
                Key::Sync(q, buf, _) => t.finals[*q] && buf.is_empty(),
                Key::TailIn(q) | Key::TailOut(q) => t.finals[*q],
            };
            let id = out.add_state(fin);
            ids.insert(key.clone(), id);
            queue.push_back(key);
            id
        };
        let chain = |out: &mut Transducer, src: usize, labels: Vec<(Side, Side)>, dst: usize| {
            let mut cur = src;
            let k = labels.len();
            for (idx, (x, y)) in labels.into_iter().enumerate() {
                let next = if idx + 1 == k { dst } else { out.add_state(false) };
                out.trans[cur].push((x, y, next));
                cur = next;
            }
            if k == 0 {
                out.trans[src].push((None, None, dst));
            }
        };

        let (k0, flush0) = settle(t.initial, Vec::new(), true);
        debug_assert!(flush0.is_empty());
        let init = get(k0, &mut out, &mut ids, &mut queue);
        out.initial = init;
        while let Some(key) = queue.pop_front() {
            let src = ids[&key];
            match key {
                Key::TailIn(q) | Key::TailOut(q) => {
                    let tail_in = matches!(key, Key::TailIn(_));
                    for (x, y, d) in t.trans[q].clone() {
                        let k2 = if tail_in { Key::TailIn(d) } else { Key::TailOut(d) };
                        let dst = get(k2, &mut out, &mut ids, &mut queue);
                        out.trans[src].push((x, y, dst));
                    }
                }
                Key::Sync(q, buf, buf_is_input) => {
                    if t.finals[q] && !buf.is_empty() {
                        let fin = out.add_state(true);
                        let labels = buf
                            .iter()
                            .map(|l| if buf_is_input { (Some(l.clone()), None) } else { (None, Some(l.clone())) })
                            .collect();
                        chain(&mut out, src, labels, fin);
                    }
                    for (x, y, d) in t.trans[q].clone() {
                        let (mut ins, mut outs) = if buf_is_input { (buf.clone(), Vec::new()) } else { (Vec::new(), buf.clone()) };
                        ins.extend(x);
                        outs.extend(y);
                        let mut labels = Vec::new();
                        if !ins.is_empty() && !outs.is_empty() {
                            labels.push((Some(ins.remove(0)), Some(outs.remove(0))));
                        }
                        let (nbuf, nin) = if ins.is_empty() { (outs, false) } else { (ins, true) };
                        let (k2, flush) = settle(d, nbuf, nin);
                        if let Key::Sync(_, b, _) = &k2 {
                            if b.len() > max_delay {
                                return Err(Error::Limit(format!(
                                    "delay between input and output exceeds {max_delay}; no synchronized form found"
                                )));
                            }
                        }
                        labels.extend(flush);
                        let dst = get(k2, &mut out, &mut ids, &mut queue);
                        chain(&mut out, src, labels, dst);
                    }
                }
            }
        }
        Ok(out.normalize())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TailSide {
    Input,
    Output,
}

/// A letter guaranteed not to be in `alphabet`.
pub(crate) fn pad_letter(alphabet: &Alphabet) -> Letter {
    let mut name = String::from("\u{2400}pad");
    while alphabet.contains(&Letter::new(&name)) {
        name.push('\'');
    }
    Letter::from(name)
}

fn has_cycle_among(edges: &[Vec<usize>], keep: &[bool]) -> bool {
    let n = edges.len();
    let mut state = vec![0u8; n];
    for s in 0..n {
        if !keep[s] || state[s] != 0 {
            continue;
        }
        let mut stack = vec![(s, 0usize)];
        state[s] = 1;
        while let Some(&mut (v, ref mut i)) = stack.last_mut() {
            if *i < edges[v].len() {
                let w = edges[v][*i];
                *i += 1;
                if !keep[w] {
                    continue;
                }
                match state[w] {
                    0 => {
                        state[w] = 1;
                        stack.push((w, 0));
                    }
                    1 => return true,
                    _ => {}
                }
            } else {
                state[v] = 2;
                stack.pop();
            }
        }
    }
    false
}

/// Strongly connected components, in reverse topological order.
pub(crate) fn tarjan(n: usize, succ: impl Fn(usize) -> Vec<usize>) -> Vec<Vec<usize>> {
    let mut index = vec![usize::MAX; n];
    let mut low = vec![0; n];
    let mut on_stack = vec![false; n];
    let mut stack = Vec::new();
    let mut out = Vec::new();
    let mut counter = 0;
    for root in 0..n {
        if index[root] != usize::MAX {
            continue;
        }
        let mut call: Vec<(usize, Vec<usize>, usize)> = vec![(root, succ(root), 0)];
        index[root] = counter;
        low[root] = counter;
        counter += 1;
        stack.push(root);
        on_stack[root] = true;
        while let Some((v, ss, i)) = call.last_mut() {
            if *i < ss.len() {
                let w = ss[*i];
                *i += 1;
                if index[w] == usize::MAX {
                    index[w] = counter;
                    low[w] = counter;
                    counter += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    let sw = succ(w);
                    call.push((w, sw, 0));
                } else if on_stack[w] {
                    let v = *v;
                    low[v] = low[v].min(index[w]);
                }
            } else {
                let v = *v;
                call.pop();
                if let Some((p, _, _)) = call.last() {
                    low[*p] = low[*p].min(low[v]);
                }
                if low[v] == index[v] {
                    let mut comp = Vec::new();
                    loop {
                        let w = stack.pop().expect("tarjan stack");
                        on_stack[w] = false;
                        comp.push(w);
                        if w == v {
                            break;
                        }
                    }
                    out.push(comp);
                }
            }
        }
    }
    out
}

/// Images of every input word up to `max_len`, as a map from input to
/// the finite set of outputs (used by probes and tests).
pub fn images_up_to(t: &Transducer, max_len: usize, max_out: usize) -> BTreeMap<Word, BTreeSet<Word>> {
    let mut out = BTreeMap::new();
    for u in t.domain().enumerate(max_len) {
        let img: BTreeSet<Word> = t.apply_word(&u).enumerate(max_out).into_iter().collect();
        out.insert(u, img);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::letter::{alphabet, letter, word};

    fn ab() -> Alphabet {
        alphabet(["a", "b", "c"])
    }

    #[test]
    fn identity_classes() {
        let id = Transducer::identity(ab(), &[letter("a"), letter("b")]);
        let c = id.classify();
        assert!(c.synchronous && c.left_synchronized && c.right_synchronized && c.sequential);
        assert_eq!(id.run_count(&word("a"), &word("a")), 1);
        assert_eq!(id.run_count(&word("a"), &word("b")), 0);
    }

    #[test]
    fn two_images_not_functional() {
        let mut t = Transducer::empty(ab());
        let f = t.add_state(true);
        t.add_transition(0, Some(letter("a")), Some(letter("b")), f);
        t.add_transition(0, Some(letter("a")), Some(letter("c")), f);
        assert_eq!(t.is_functional_synchronized(), Ok(false));
        assert!(!t.functional_probe(1));
        assert!(Transducer::identity(ab(), &[letter("a")]).is_functional_synchronized().unwrap());
    }

    #[test]
    fn duplicated_runs_collapse() {
        let mut t = Transducer::empty(ab());
        let f1 = t.add_state(true);
        let f2 = t.add_state(true);
        t.add_transition(0, Some(letter("a")), Some(letter("b")), f1);
        t.add_transition(0, Some(letter("a")), Some(letter("b")), f2);
        assert_eq!(t.run_count(&word("a"), &word("b")), 2);
        let u = t.unambiguize_synchronized().unwrap();
        assert_eq!(u.run_count(&word("a"), &word("b")), 1);
    }

    #[test]
    fn tail_bound_of_shrinker() {
        // (#^{n+2}, #^n)
        let g = alphabet(["#"]);
        let h = Some(letter("#"));
        let mut t = Transducer::empty(g);
        let p = t.add_state(false);
        let f = t.add_state(true);
        t.add_transition(0, h.clone(), h.clone(), 0);
        t.add_transition(0, h.clone(), None, p);
        t.add_transition(p, h.clone(), None, f);
        assert_eq!(t.tail_bound(TailSide::Input), Ok(Count::Finite(2)));
        assert_eq!(t.tail_bound(TailSide::Output), Ok(Count::Finite(0)));
        let mut l = t.clone();
        l.add_transition(f, h.clone(), None, f);
        assert_eq!(l.tail_bound(TailSide::Input), Ok(Count::Infinite));
    }

    #[test]
    fn concat_pairs() {
        let g = ab();
        let ia = Transducer::identity(g.clone(), &[letter("a")]);
        let one_a = ia.restrict_domain(&Nfa::from_word(g.clone(), &word("a")));
        let one_b = Transducer::identity(g.clone(), &[letter("b")]).restrict_domain(&Nfa::from_word(g.clone(), &word("b")));
        let c = one_a.concat(&one_b);
        assert_eq!(c.apply_word(&word("ab")).enumerate(3), vec![word("ab")]);
        assert!(c.apply_word(&word("ba")).is_empty());
    }

    #[test]
    fn synchronize_shifted_copy() {
        // (b u, u a) over {a, b}: needs a one-letter buffer
        let g = alphabet(["a", "b"]);
        let drop_b = Transducer::pair(g.clone(), &word("b"), &[]);
        let copy = Transducer::identity(g.clone(), &[letter("a"), letter("b")]);
        let add_a = Transducer::pair(g.clone(), &[], &word("a"));
        let t = Transducer::concat_all(g.clone(), [&drop_b, &copy, &add_a]);
        assert!(!t.classify().left_synchronized);
        let s = t.synchronize(4).unwrap();
        assert!(s.classify().synchronous);
        assert_eq!(s.apply_word(&word("bab")).enumerate(4), vec![word("aba")]);
    }
}
