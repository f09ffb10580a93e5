//! Finite automata over explicit alphabets.
//!
//! An [`Nfa`] has one initial state and may use ε-transitions. Every
//! letter on a transition must belong to the declared alphabet; the
//! alphabet never grows as a side effect of an operation, except that
//! binary operations work over the union of both alphabets.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

use crate::letter::{Alphabet, Letter, Word};

/// Cardinality of a language or a set of successors.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Count {
    Finite(u128),
    Infinite,
}

impl Count {
    pub fn is_finite(self) -> bool {
        matches!(self, Count::Finite(_))
    }
}

impl std::fmt::Display for Count {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Count::Finite(n) => write!(f, "{n}"),
            Count::Infinite => f.write_str("infinite"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SetOp {
    Union,
    Concat,
    Star,
    Intersect,
    Difference,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Nfa {
    pub alphabet: Alphabet,
    pub initial: usize,
    pub finals: Vec<bool>,
    /// Outgoing transitions per state; `None` is ε.
    pub trans: Vec<Vec<(Option<Letter>, usize)>>,
}

impl Nfa {
    /// One non-final state: the empty language.
    pub fn empty(alphabet: Alphabet) -> Nfa {
        Nfa { alphabet, initial: 0, finals: vec![false], trans: vec![Vec::new()] }
    }

    /// The language {ε}.
    pub fn epsilon(alphabet: Alphabet) -> Nfa {
        Nfa { alphabet, initial: 0, finals: vec![true], trans: vec![Vec::new()] }
    }

    pub fn from_word(alphabet: Alphabet, w: &[Letter]) -> Nfa {
        let mut a = Nfa::empty(alphabet);
        let mut cur = 0;
        for l in w {
            let next = a.add_state(false);
            a.add_transition(cur, Some(l.clone()), next);
            cur = next;
        }
        a.finals[cur] = true;
        a
    }

    pub fn from_words<'a, I>(alphabet: Alphabet, words: I) -> Nfa
    where
        I: IntoIterator<Item = &'a Word>,
    {
        let mut a = Nfa::empty(alphabet.clone());
        for w in words {
            let b = Nfa::from_word(alphabet.clone(), w);
            a = a.union(&b);
        }
        a
    }

    /// `letters*` over the given alphabet.
    pub fn star_of(alphabet: Alphabet, letters: &[Letter]) -> Nfa {
        let mut a = Nfa::epsilon(alphabet);
        for l in letters {
            a.add_transition(0, Some(l.clone()), 0);
        }
        a
    }

    /// All words over the alphabet.
    pub fn universal(alphabet: Alphabet) -> Nfa {
        let letters: Vec<Letter> = alphabet.iter().cloned().collect();
        Nfa::star_of(alphabet, &letters)
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

    /// Panics if the letter is not in the alphabet.
    pub fn add_transition(&mut self, src: usize, l: Option<Letter>, dst: usize) {
        if let Some(x) = &l {
            assert!(self.alphabet.contains(x), "letter {x} outside the automaton alphabet");
        }
        self.trans[src].push((l, dst));
    }

    pub fn transitions(&self) -> impl Iterator<Item = (usize, Option<&Letter>, usize)> + '_ {
        self.trans
            .iter()
            .enumerate()
            .flat_map(|(s, ts)| ts.iter().map(move |(l, d)| (s, l.as_ref(), *d)))
    }

    /// Same automaton over a larger alphabet.
    pub fn with_alphabet(&self, alphabet: &Alphabet) -> Nfa {
        assert!(self.alphabet.is_subset(alphabet), "alphabet can only be extended");
        let mut a = self.clone();
        a.alphabet = alphabet.clone();
        a
    }

    pub fn has_epsilon(&self) -> bool {
        self.trans.iter().flatten().any(|(l, _)| l.is_none())
    }

    pub fn eps_closure(&self, states: &mut BTreeSet<usize>) {
        let mut stack: Vec<usize> = states.iter().copied().collect();
        while let Some(s) = stack.pop() {
            for (l, d) in &self.trans[s] {
                if l.is_none() && states.insert(*d) {
                    stack.push(*d);
                }
            }
        }
    }

    fn step(&self, states: &BTreeSet<usize>, l: &Letter) -> BTreeSet<usize> {
        let mut next = BTreeSet::new();
        for &s in states {
            for (m, d) in &self.trans[s] {
                if m.as_ref() == Some(l) {
                    next.insert(*d);
                }
            }
        }
        self.eps_closure(&mut next);
        next
    }

    /// Membership by subset simulation. Letters outside the alphabet are
    /// rejected by the caller-facing wrapper [`crate::nfa_member`].
    pub fn accepts(&self, w: &[Letter]) -> bool {
        let mut cur = BTreeSet::from([self.initial]);
        self.eps_closure(&mut cur);
        for l in w {
            if cur.is_empty() {
                return false;
            }
            cur = self.step(&cur, l);
        }
        cur.iter().any(|&s| self.finals[s])
    }

    fn reachable(&self) -> Vec<bool> {
        let mut seen = vec![false; self.num_states()];
        let mut stack = vec![self.initial];
        seen[self.initial] = true;
        while let Some(s) = stack.pop() {
            for (_, d) in &self.trans[s] {
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
        for (s, _, d) in self.transitions() {
            rev[d].push(s);
        }
        let mut seen: Vec<bool> = self.finals.clone();
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

    pub fn is_empty(&self) -> bool {
        let r = self.reachable();
        !(0..self.num_states()).any(|s| r[s] && self.finals[s])
    }

    /// Keeps reachable and co-reachable states. The initial state is kept
    /// even when useless so the result is always well formed.
    pub fn trim(&self) -> Nfa {
        let r = self.reachable();
        let c = self.coaccessible();
        let keep: Vec<bool> = (0..self.num_states()).map(|s| (r[s] && c[s]) || s == self.initial).collect();
        self.restrict_states(&keep)
    }

    fn restrict_states(&self, keep: &[bool]) -> Nfa {
        let mut map = vec![usize::MAX; self.num_states()];
        let mut out = Nfa { alphabet: self.alphabet.clone(), initial: 0, finals: Vec::new(), trans: Vec::new() };
        // initial first so it keeps index 0
        let order = std::iter::once(self.initial).chain((0..self.num_states()).filter(|&s| s != self.initial));
        for s in order {
            if keep[s] {
                map[s] = out.add_state(self.finals[s]);
            }
        }
        for (s, l, d) in self.transitions() {
            if keep[s] && keep[d] {
                out.trans[map[s]].push((l.cloned(), map[d]));
            }
        }
        out
    }

    pub fn union(&self, other: &Nfa) -> Nfa {
        let alphabet: Alphabet = self.alphabet.union(&other.alphabet).cloned().collect();
        let mut out = Nfa::empty(alphabet);
        let a = out.embed(self);
        let b = out.embed(other);
        out.trans[0].push((None, a));
        out.trans[0].push((None, b));
        out
    }

    pub fn concat(&self, other: &Nfa) -> Nfa {
        let alphabet: Alphabet = self.alphabet.union(&other.alphabet).cloned().collect();
        let mut out = Nfa::empty(alphabet);
        let off_a = out.num_states();
        let a = out.embed(self);
        let b = out.embed(other);
        out.trans[0].push((None, a));
        for s in 0..self.num_states() {
            if self.finals[s] {
                out.finals[off_a + s] = false;
                out.trans[off_a + s].push((None, b));
            }
        }
        out
    }

    pub fn star(&self) -> Nfa {
        let mut out = Nfa::epsilon(self.alphabet.clone());
        let off = out.num_states();
        let a = out.embed(self);
        out.trans[0].push((None, a));
        for s in 0..self.num_states() {
            if self.finals[s] {
                out.finals[off + s] = false;
                out.trans[off + s].push((None, 0));
            }
        }
        out
    }

    /// Copies `other` into `self` and returns the index of its initial
    /// state. Finals of `other` stay final.
    fn embed(&mut self, other: &Nfa) -> usize {
        let off = self.num_states();
        for s in 0..other.num_states() {
            self.add_state(other.finals[s]);
        }
        for (s, l, d) in other.transitions() {
            self.trans[off + s].push((l.cloned(), off + d));
        }
        off + other.initial
    }

    /// Product construction; ε-moves of either side interleave freely.
    pub fn intersect(&self, other: &Nfa) -> Nfa {
        let alphabet: Alphabet = self.alphabet.union(&other.alphabet).cloned().collect();
        let mut out = Nfa { alphabet, initial: 0, finals: Vec::new(), trans: Vec::new() };
        let mut index: HashMap<(usize, usize), usize> = HashMap::new();
        let mut queue = VecDeque::new();
        let start = (self.initial, other.initial);
        index.insert(start, out.add_state(self.finals[start.0] && other.finals[start.1]));
        queue.push_back(start);
        while let Some((p, q)) = queue.pop_front() {
            let src = index[&(p, q)];
            let mut moves: Vec<(Option<Letter>, (usize, usize))> = Vec::new();
            for (l, d) in &self.trans[p] {
                match l {
                    None => moves.push((None, (*d, q))),
                    Some(x) => {
                        for (m, e) in &other.trans[q] {
                            if m.as_ref() == Some(x) {
                                moves.push((Some(x.clone()), (*d, *e)));
                            }
                        }
                    }
                }
            }
            for (m, e) in &other.trans[q] {
                if m.is_none() {
                    moves.push((None, (p, *e)));
                }
            }
            for (l, key) in moves {
                let dst = match index.get(&key) {
                    Some(&d) => d,
                    None => {
                        let d = out.add_state(self.finals[key.0] && other.finals[key.1]);
                        index.insert(key, d);
                        queue.push_back(key);
                        d
                    }
                };
                out.trans[src].push((l, dst));
            }
        }
        out.trim()
    }

    /// Complement relative to the automaton's own alphabet.
    pub fn complement(&self) -> Nfa {
        let d = Dfa::from_nfa(self).complete();
        let mut n = d.to_nfa();
        for f in n.finals.iter_mut() {
            *f = !*f;
        }
        n
    }

    pub fn difference(&self, other: &Nfa) -> Nfa {
        let alphabet: Alphabet = self.alphabet.union(&other.alphabet).cloned().collect();
        self.with_alphabet(&alphabet).intersect(&other.with_alphabet(&alphabet).complement())
    }

    pub fn reverse(&self) -> Nfa {
        let mut out = Nfa::empty(self.alphabet.clone());
        let off = out.num_states();
        for s in 0..self.num_states() {
            out.add_state(s == self.initial);
        }
        for (s, l, d) in self.transitions() {
            out.trans[off + d].push((l.cloned(), off + s));
        }
        for s in 0..self.num_states() {
            if self.finals[s] {
                out.trans[0].push((None, off + s));
            }
        }
        out
    }

    /// Renames letters; the new alphabet must contain every image.
    pub fn map_letters(&self, alphabet: Alphabet, f: impl Fn(&Letter) -> Letter) -> Nfa {
        let mut out = Nfa { alphabet, initial: self.initial, finals: self.finals.clone(), trans: Vec::new() };
        out.trans = vec![Vec::new(); self.num_states()];
        for (s, l, d) in self.transitions() {
            out.add_transition(s, l.map(&f), d);
        }
        out
    }

    /// Deterministic, minimal and trim; `complete` adds a sink.
    pub fn determinize_minimize(&self, complete: bool) -> Nfa {
        let d = Dfa::from_nfa(self).minimize();
        if complete {
            d.complete().to_nfa()
        } else {
            d.to_nfa()
        }
    }

    pub fn minimal_dfa(&self) -> Dfa {
        Dfa::from_nfa(self).minimize()
    }

    pub fn is_deterministic(&self) -> bool {
        self.trans.iter().all(|ts| {
            let mut seen = BTreeSet::new();
            ts.iter().all(|(l, _)| l.is_some() && seen.insert(l.clone()))
        })
    }

    /// Exact language equality through the product of the two minimal
    /// automata, looking for a reachable pair that disagrees on
    /// acceptance.
    pub fn equal(&self, other: &Nfa) -> bool {
        let a = self.minimal_dfa();
        let b = other.minimal_dfa();
        let mut seen = BTreeSet::new();
        let mut stack = vec![(Some(a.initial), Some(b.initial))];
        while let Some((p, q)) = stack.pop() {
            if !seen.insert((p, q)) {
                continue;
            }
            let fa = p.is_some_and(|p| a.finals[p]);
            let fb = q.is_some_and(|q| b.finals[q]);
            if fa != fb {
                return false;
            }
            let mut letters: BTreeSet<&Letter> = BTreeSet::new();
            if let Some(p) = p {
                letters.extend(a.delta[p].keys());
            }
            if let Some(q) = q {
                letters.extend(b.delta[q].keys());
            }
            for l in letters {
                let np = p.and_then(|p| a.delta[p].get(l).copied());
                let nq = q.and_then(|q| b.delta[q].get(l).copied());
                stack.push((np, nq));
            }
        }
        true
    }

    /// Words of length at most `max_len`, in length-lexicographic order.
    pub fn enumerate(&self, max_len: usize) -> Vec<Word> {
        self.enumerate_limit(max_len, usize::MAX)
    }

    /// Like [`Nfa::enumerate`] but stops after `limit` words.
    pub fn enumerate_limit(&self, max_len: usize, limit: usize) -> Vec<Word> {
        let d = self.minimal_dfa();
        let dist = d.distance_to_final();
        let mut out = Vec::new();
        if limit == 0 || dist[d.initial] == usize::MAX {
            return out;
        }
        let mut level: Vec<(Word, usize)> = vec![(Vec::new(), d.initial)];
        for len in 0..=max_len {
            for (w, s) in &level {
                if d.finals[*s] {
                    out.push(w.clone());
                    if out.len() >= limit {
                        return out;
                    }
                }
            }
            if len == max_len {
                break;
            }
            let budget = max_len - len - 1;
            let mut next = Vec::new();
            for (w, s) in &level {
                for (l, t) in &d.delta[*s] {
                    if dist[*t] <= budget {
                        let mut w2 = w.clone();
                        w2.push(l.clone());
                        next.push((w2, *t));
                    }
                }
            }
            if next.is_empty() {
                break;
            }
            level = next;
        }
        out
    }

    /// Number of words; infinite iff the trim minimal automaton has a
    /// cycle.
    pub fn cardinality(&self) -> Count {
        self.minimal_dfa().cardinality()
    }

    /// Lengths of accepted words, as a boolean table up to `max_len`.
    pub fn lengths(&self, max_len: usize) -> Vec<bool> {
        let mut out = vec![false; max_len + 1];
        let mut cur = BTreeSet::from([self.initial]);
        self.eps_closure(&mut cur);
        for (len, slot) in out.iter_mut().enumerate() {
            *slot = cur.iter().any(|&s| self.finals[s]);
            if len == max_len {
                break;
            }
            let mut next = BTreeSet::new();
            for &s in &cur {
                for (l, d) in &self.trans[s] {
                    if l.is_some() {
                        next.insert(*d);
                    }
                }
            }
            self.eps_closure(&mut next);
            cur = next;
        }
        out
    }
}

/// Deterministic automaton with a partial transition function.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dfa {
    pub alphabet: Alphabet,
    pub initial: usize,
    pub finals: Vec<bool>,
    pub delta: Vec<BTreeMap<Letter, usize>>,
}

impl Dfa {
    pub fn from_nfa(a: &Nfa) -> Dfa {
        let closures: Vec<Vec<usize>> = if a.has_epsilon() {
            (0..a.num_states())
                .map(|s| {
                    let mut c = BTreeSet::from([s]);
                    a.eps_closure(&mut c);
                    c.into_iter().collect()
                })
                .collect()
        } else {
            (0..a.num_states()).map(|s| vec![s]).collect()
        };
        let close = |set: &BTreeSet<usize>| -> Vec<usize> {
            let mut out = BTreeSet::new();
            for &s in set {
                out.extend(closures[s].iter().copied());
            }
            out.into_iter().collect()
        };
        let start = close(&BTreeSet::from([a.initial]));
        let mut index: HashMap<Vec<usize>, usize> = HashMap::new();
        let mut subsets = vec![start.clone()];
        index.insert(start, 0);
        let mut d = Dfa { alphabet: a.alphabet.clone(), initial: 0, finals: Vec::new(), delta: Vec::new() };
        let mut i = 0;
        while i < subsets.len() {
            let cur = subsets[i].clone();
            d.finals.push(cur.iter().any(|&s| a.finals[s]));
            let mut moves: BTreeMap<&Letter, BTreeSet<usize>> = BTreeMap::new();
            for &s in &cur {
                for (l, t) in &a.trans[s] {
                    if let Some(l) = l {
                        moves.entry(l).or_default().insert(*t);
                    }
                }
            }
            let mut row = BTreeMap::new();
            for (l, targets) in moves {
                let key = close(&targets);
                let id = match index.get(&key) {
                    Some(&id) => id,
                    None => {
                        let id = subsets.len();
                        index.insert(key.clone(), id);
                        subsets.push(key);
                        id
                    }
                };
                row.insert(l.clone(), id);
            }
            d.delta.push(row);
            i += 1;
        }
        d
    }

    pub fn num_states(&self) -> usize {
        self.finals.len()
    }

    /// Shortest distance from each state to a final state
    /// (`usize::MAX` when none is reachable).
    pub fn distance_to_final(&self) -> Vec<usize> {
        let n = self.num_states();
        let mut rev = vec![Vec::new(); n];
        for (s, row) in self.delta.iter().enumerate() {
            for &t in row.values() {
                rev[t].push(s);
            }
        }
        let mut dist = vec![usize::MAX; n];
        let mut queue = VecDeque::new();
        for s in 0..n {
            if self.finals[s] {
                dist[s] = 0;
                queue.push_back(s);
            }
        }
        while let Some(s) = queue.pop_front() {
            for &p in &rev[s] {
                if dist[p] == usize::MAX {
                    dist[p] = dist[s] + 1;
                    queue.push_back(p);
                }
            }
        }
        dist
    }

    /// Minimal trim DFA (dead states removed), states numbered in
    /// breadth-first order from the initial state so the result is
    /// canonical.
    pub fn minimize(&self) -> Dfa {
        let n = self.num_states();
        let dist = self.distance_to_final();
        let alive: Vec<bool> = dist.iter().map(|&d| d != usize::MAX).collect();
        if !alive[self.initial] {
            return Dfa { alphabet: self.alphabet.clone(), initial: 0, finals: vec![false], delta: vec![BTreeMap::new()] };
        }
        // Moore refinement over live states; transitions into dead states
        // count as missing.
        let mut class: Vec<usize> = (0..n).map(|s| usize::from(self.finals[s])).collect();
        let mut num_classes = 0;
        loop {
            let mut sigs: HashMap<(usize, Vec<(&Letter, usize)>), usize> = HashMap::new();
            let mut next = vec![usize::MAX; n];
            for s in 0..n {
                if !alive[s] {
                    continue;
                }
                let row: Vec<(&Letter, usize)> = self.delta[s]
                    .iter()
                    .filter(|(_, t)| alive[**t])
                    .map(|(l, t)| (l, class[*t]))
                    .collect();
                let key = (class[s], row);
                let len = sigs.len();
                next[s] = *sigs.entry(key).or_insert(len);
            }
            let count = sigs.len();
            class = next;
            if count == num_classes {
                break;
            }
            num_classes = count;
        }
        // canonical renumbering
        let mut order = vec![usize::MAX; num_classes];
        let mut reps: Vec<usize> = Vec::new();
        let mut queue = VecDeque::from([self.initial]);
        order[class[self.initial]] = 0;
        reps.push(self.initial);
        while let Some(s) = queue.pop_front() {
            for t in self.delta[s].values() {
                if alive[*t] && order[class[*t]] == usize::MAX {
                    order[class[*t]] = reps.len();
                    reps.push(*t);
                    queue.push_back(*t);
                }
            }
        }
        let mut out = Dfa { alphabet: self.alphabet.clone(), initial: 0, finals: Vec::new(), delta: Vec::new() };
        for &r in &reps {
            out.finals.push(self.finals[r]);
            let row = self.delta[r]
                .iter()
                .filter(|(_, t)| alive[**t])
                .map(|(l, t)| (l.clone(), order[class[*t]]))
                .collect();
            out.delta.push(row);
        }
        out
    }

    /// Adds a sink so every letter of the alphabet is defined everywhere.
    pub fn complete(&self) -> Dfa {
        let mut out = self.clone();
        let sink = out.num_states();
        out.finals.push(false);
        out.delta.push(BTreeMap::new());
        let mut used_sink = false;
        for s in 0..=sink {
            for l in &self.alphabet {
                if !out.delta[s].contains_key(l) {
                    out.delta[s].insert(l.clone(), sink);
                    if s != sink {
                        used_sink = true;
                    }
                }
            }
        }
        if !used_sink {
            out.finals.pop();
            out.delta.pop();
        }
        out
    }

    pub fn to_nfa(&self) -> Nfa {
        let mut a = Nfa { alphabet: self.alphabet.clone(), initial: self.initial, finals: self.finals.clone(), trans: Vec::new() };
        a.trans = self.delta.iter().map(|row| row.iter().map(|(l, t)| (Some(l.clone()), *t)).collect()).collect();
        a
    }

    pub fn run(&self, w: &[Letter]) -> Option<usize> {
        let mut s = self.initial;
        for l in w {
            s = *self.delta[s].get(l)?;
        }
        Some(s)
    }

    pub fn cardinality(&self) -> Count {
        let m = self.minimize();
        if m.finals.iter().all(|f| !f) {
            return Count::Finite(0);
        }
        // minimized automata are trim, so any cycle is useful
        let n = m.num_states();
        let mut state = vec![0u8; n];
        let mut memo = vec![0u128; n];
        fn visit(m: &Dfa, s: usize, state: &mut [u8], memo: &mut [u128]) -> Option<u128> {
            match state[s] {
                1 => return None,
                2 => return Some(memo[s]),
                _ => {}
            }
            state[s] = 1;
            let mut total = u128::from(m.finals[s]);
            for &t in m.delta[s].values() {
                total = total.saturating_add(visit(m, t, state, memo)?);
            }
            state[s] = 2;
            memo[s] = total;
            Some(total)
        }
        match visit(&m, m.initial, &mut state, &mut memo) {
            Some(c) => Count::Finite(c),
            None => Count::Infinite,
        }
    }
}

/// Applies one of the rational/boolean operations. `b` is ignored for
/// `Star` and required otherwise.
pub fn combine(op: SetOp, a: &Nfa, b: Option<&Nfa>) -> crate::error::Result<Nfa> {
    let need = || b.ok_or_else(|| crate::error::Error::Input(format!("{op:?} needs two automata")));
    Ok(match op {
        SetOp::Union => a.union(need()?),
        SetOp::Concat => a.concat(need()?),
        SetOp::Star => a.star(),
        SetOp::Intersect => a.intersect(need()?),
        SetOp::Difference => a.difference(need()?),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::letter::{alphabet, letter, word};

    fn astar_bstar() -> Nfa {
        let sig = alphabet(["a", "b"]);
        let a = Nfa::star_of(sig.clone(), &[letter("a")]);
        let b = Nfa::star_of(sig, &[letter("b")]);
        a.concat(&b)
    }

    #[test]
    fn membership_basics() {
        let l = astar_bstar();
        assert!(l.accepts(&word("aab")));
        assert!(l.accepts(&[]));
        assert!(!l.accepts(&word("ba")));
    }

    #[test]
    fn enumerate_shortlex() {
        let got = astar_bstar().enumerate(2);
        let want: Vec<Word> = ["", "a", "b", "aa", "ab", "bb"].iter().map(|s| word(s)).collect();
        assert_eq!(got, want);
        assert!(Nfa::empty(alphabet(["a"])).enumerate(5).is_empty());
    }

    #[test]
    fn empty_and_epsilon_minimize() {
        let e = Nfa::empty(alphabet(["a"])).determinize_minimize(false);
        assert_eq!(e.num_states(), 1);
        assert!(e.is_empty());
        let eps = Nfa::epsilon(alphabet(["a"])).determinize_minimize(false);
        assert_eq!(eps.num_states(), 1);
        assert!(eps.finals[0]);
        assert_eq!(eps.num_transitions(), 0);
    }

    #[test]
    fn equality() {
        let sig = alphabet(["a", "b"]);
        let a1 = Nfa::star_of(sig.clone(), &[letter("a")]);
        let a2 = Nfa::from_word(sig.clone(), &word("a")).star().union(&Nfa::epsilon(sig.clone()));
        assert!(a1.equal(&a2));
        let ab = astar_bstar();
        let ba = Nfa::star_of(sig.clone(), &[letter("b")]).concat(&Nfa::star_of(sig, &[letter("a")]));
        assert!(!ab.equal(&ba));
    }

    #[test]
    fn intersect_and_difference() {
        let sig = alphabet(["a", "b"]);
        let abstar = Nfa::from_word(sig.clone(), &word("ab")).star();
        let i = astar_bstar().intersect(&abstar);
        assert!(i.accepts(&word("ab")));
        assert!(!i.accepts(&word("ba")));
        assert!(!i.accepts(&word("abab")));
        let d = Nfa::universal(sig).difference(&astar_bstar());
        assert!(d.accepts(&word("ba")));
        assert!(!d.accepts(&word("aabb")));
    }

    #[test]
    fn cardinality_counts() {
        let sig = alphabet(["a", "b"]);
        let w: Vec<Word> = ["aa", "ab", "ba", "bb"].iter().map(|s| word(s)).collect();
        assert_eq!(Nfa::from_words(sig.clone(), &w).cardinality(), Count::Finite(4));
        assert_eq!(astar_bstar().cardinality(), Count::Infinite);
        assert_eq!(Nfa::empty(sig).cardinality(), Count::Finite(0));
    }

    #[test]
    #[should_panic]
    fn no_implicit_alphabet_growth() {
        let mut a = Nfa::empty(alphabet(["a"]));
        a.add_transition(0, Some(letter("z")), 0);
    }
}
