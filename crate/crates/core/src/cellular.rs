//! Cellular automata used as word acceptors on bracketed configurations.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};

use crate::error::{Error, Result};
use crate::letter::{check_word, Alphabet, Letter, Word};

/// `(left, centre, right, new centre)`.
pub type Rule = [Letter; 4];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellularAutomaton {
    pub gamma: Alphabet,
    pub sigma: Alphabet,
    pub finals: Alphabet,
    pub left: Letter,
    pub right: Letter,
    pub rules: BTreeSet<Rule>,
    /// Whether the start configuration itself may accept.
    pub reflexive: bool,
    index: HashMap<(Letter, Letter, Letter), Vec<Letter>>,
}

impl CellularAutomaton {
    pub fn new(
        gamma: Alphabet,
        sigma: Alphabet,
        finals: Alphabet,
        left: Letter,
        right: Letter,
        rules: BTreeSet<Rule>,
    ) -> Result<CellularAutomaton> {
        if !sigma.is_subset(&gamma) || !finals.is_subset(&gamma) {
            return Err(Error::Input("input and accepting letters must be work letters".into()));
        }
        if gamma.contains(&left) || gamma.contains(&right) || left == right {
            return Err(Error::Input("brackets must be two distinct letters outside the work alphabet".into()));
        }
        for [a, b, c, d] in &rules {
            let ok = (gamma.contains(a) || *a == left)
                && gamma.contains(b)
                && (gamma.contains(c) || *c == right)
                && gamma.contains(d);
            if !ok {
                return Err(Error::Input(format!("malformed rule ({a},{b},{c},{d})")));
            }
        }
        let mut index: HashMap<(Letter, Letter, Letter), Vec<Letter>> = HashMap::new();
        for [a, b, c, d] in &rules {
            index.entry((a.clone(), b.clone(), c.clone())).or_default().push(d.clone());
        }
        Ok(CellularAutomaton { gamma, sigma, finals, left, right, rules, reflexive: true, index })
    }

    pub fn with_reflexive(mut self, reflexive: bool) -> CellularAutomaton {
        self.reflexive = reflexive;
        self
    }

    pub fn is_deterministic(&self) -> bool {
        self.index.values().all(|ds| ds.len() <= 1)
    }

    /// Successors of the configuration `[u]`, given by its inner word.
    pub fn successors(&self, u: &[Letter]) -> Vec<Word> {
        let n = u.len();
        let mut partial: Vec<Word> = vec![Vec::new()];
        for i in 0..n {
            let l = if i == 0 { self.left.clone() } else { u[i - 1].clone() };
            let r = if i + 1 == n { self.right.clone() } else { u[i + 1].clone() };
            let ds = match self.index.get(&(l, u[i].clone(), r)) {
                Some(ds) => ds,
                None => return Vec::new(),
            };
            partial = partial
                .into_iter()
                .flat_map(|p| {
                    ds.iter().map(move |d| {
                        let mut p2 = p.clone();
                        p2.push(d.clone());
                        p2
                    })
                })
                .collect();
        }
        partial.sort();
        partial.dedup();
        partial
    }

    fn accepting(&self, u: &[Letter]) -> bool {
        u.iter().all(|l| self.finals.contains(l))
    }

    /// Breadth-first search over configurations of length `|w|`. The
    /// empty word is never accepted.
    pub fn member(&self, w: &[Letter]) -> Result<bool> {
        check_word(w, &self.sigma)?;
        if w.is_empty() {
            return Ok(false);
        }
        if self.reflexive && self.accepting(w) {
            return Ok(true);
        }
        let mut seen: HashSet<Word> = HashSet::from([w.to_vec()]);
        let mut queue = VecDeque::from([w.to_vec()]);
        while let Some(u) = queue.pop_front() {
            for v in self.successors(&u) {
                if self.accepting(&v) {
                    return Ok(true);
                }
                if seen.insert(v.clone()) {
                    queue.push_back(v);
                }
            }
        }
        Ok(false)
    }

    /// Accepted words of length `1..=max_len`.
    pub fn enumerate(&self, max_len: usize) -> Vec<Word> {
        let sigma: Vec<Letter> = self.sigma.iter().cloned().collect();
        let mut out = Vec::new();
        let mut layer: Vec<Word> = vec![Vec::new()];
        for _ in 0..max_len {
            layer = layer
                .iter()
                .flat_map(|w| {
                    sigma.iter().map(move |a| {
                        let mut w2 = w.clone();
                        w2.push(a.clone());
                        w2
                    })
                })
                .collect();
            out.extend(layer.iter().filter(|w| self.member(w).unwrap_or(false)).cloned());
        }
        out
    }

    /// The orbit of a deterministic automaton from `[w]`, until it halts
    /// or repeats a configuration.
    pub fn orbit(&self, w: &[Letter]) -> Result<Vec<Word>> {
        if !self.is_deterministic() {
            return Err(Error::Class("orbits are defined for deterministic automata".into()));
        }
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        let mut cur = w.to_vec();
        while seen.insert(cur.clone()) {
            out.push(cur.clone());
            match self.successors(&cur).into_iter().next() {
                Some(next) => cur = next,
                None => break,
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::letter::{alphabet, letter, word};

    fn rule(s: &str) -> Rule {
        let c: Vec<Letter> = s.chars().map(|c| letter(&c.to_string())).collect();
        [c[0].clone(), c[1].clone(), c[2].clone(), c[3].clone()]
    }

    #[test]
    fn empty_rules() {
        let g = alphabet(["a", "b"]);
        let ca = CellularAutomaton::new(g.clone(), g.clone(), alphabet(["b"]), letter("["), letter("]"), BTreeSet::new()).unwrap();
        assert!(ca.is_deterministic());
        assert!(ca.successors(&word("ab")).is_empty());
        assert!(!ca.member(&word("a")).unwrap());
        assert!(ca.member(&word("bb")).unwrap());
        assert!(!ca.clone().with_reflexive(false).member(&word("bb")).unwrap());
    }

    #[test]
    fn nondeterministic_rules() {
        let g = alphabet(["a", "b", "c"]);
        let rules = BTreeSet::from([rule("aaab"), rule("aaac")]);
        let ca = CellularAutomaton::new(g.clone(), g, alphabet(["a"]), letter("["), letter("]"), rules).unwrap();
        assert!(!ca.is_deterministic());
    }
}
