//! Random small machines and brute-force oracles shared by the
//! property tests and the acceptance run.
#![allow(dead_code)]

use std::collections::{BTreeSet, HashSet};

use proptest::prelude::*;
use ratgraph::letter::{alphabet, letter, Alphabet, Letter, Word};
use ratgraph::nfa::Nfa;
use ratgraph::transducer::Transducer;

pub const N: usize = 3;
pub const BOUND: usize = 4;

pub type Pairs = BTreeSet<(Word, Word)>;

pub fn sigma() -> Alphabet {
    alphabet(["a", "b"])
}

pub fn side(x: Option<u8>) -> Option<Letter> {
    x.map(|i| letter(["a", "b"][i as usize]))
}

pub type Edge = (usize, Option<u8>, Option<u8>, usize);

pub fn build(edges: &[Edge], finals: &[bool]) -> Transducer {
    let mut t = Transducer::empty(sigma());
    for _ in 1..N {
        t.add_state(false);
    }
    t.finals = finals.to_vec();
    for &(s, x, y, d) in edges {
        t.add_transition(s, side(x), side(y), d);
    }
    t
}

pub fn edges(input_required: bool, synchronous: bool) -> impl Strategy<Value = Vec<Edge>> {
    let some = || (0u8..2).prop_map(Some).boxed();
    let letter_opt = if synchronous { some() } else { prop::option::of(0u8..2).boxed() };
    let input = if input_required || synchronous { some() } else { prop::option::of(0u8..2).boxed() };
    prop::collection::vec((0..N, input, letter_opt, 0..N), 0..7)
}

pub fn finals() -> impl Strategy<Value = Vec<bool>> {
    prop::collection::vec(any::<bool>(), N)
}

pub fn transducer() -> impl Strategy<Value = Transducer> {
    (edges(false, false), finals()).prop_map(|(e, f)| build(&e, &f))
}

/// All pairs with both sides within the bounds, by exhaustive search
/// over configurations.
pub fn pairs(t: &Transducer, max_in: usize, max_out: usize) -> Pairs {
    let mut seen: HashSet<(usize, Word, Word)> = HashSet::new();
    let mut stack = vec![(t.initial, Vec::new(), Vec::new())];
    let mut out = Pairs::new();
    while let Some((q, u, v)) = stack.pop() {
        if !seen.insert((q, u.clone(), v.clone())) {
            continue;
        }
        if t.finals[q] {
            out.insert((u.clone(), v.clone()));
        }
        for (x, y, d) in &t.trans[q] {
            let mut u2 = u.clone();
            let mut v2 = v.clone();
            u2.extend(x.iter().cloned());
            v2.extend(y.iter().cloned());
            if u2.len() <= max_in && v2.len() <= max_out {
                stack.push((*d, u2, v2));
            }
        }
    }
    out
}

pub fn words(max_len: usize) -> Vec<Word> {
    let mut all = vec![Vec::new()];
    let mut layer: Vec<Word> = vec![Vec::new()];
    for _ in 0..max_len {
        layer = layer
            .iter()
            .flat_map(|w| ["a", "b"].iter().map(move |c| [w.clone(), vec![letter(c)]].concat()))
            .collect();
        all.extend(layer.iter().cloned());
    }
    all
}

pub fn nfa() -> impl Strategy<Value = Nfa> {
    (prop::collection::vec((0..N, prop::option::of(0u8..2), 0..N), 0..7), finals()).prop_map(|(e, f)| {
        let mut a = Nfa::empty(sigma());
        for _ in 1..N {
            a.add_state(false);
        }
        a.finals = f;
        for (s, l, d) in e {
            a.add_transition(s, side(l), d);
        }
        a
    })
}

/// Accepting runs on `(u, v)` of a transducer without ε sides.
pub fn runs(t: &Transducer, u: &[Letter], v: &[Letter]) -> u64 {
    let mut cur = vec![0u64; t.num_states()];
    cur[t.initial] = 1;
    for (x, y) in u.iter().zip(v) {
        let mut next = vec![0u64; t.num_states()];
        for (q, c) in cur.iter().enumerate() {
            for (a, b, d) in &t.trans[q] {
                if a.as_ref() == Some(x) && b.as_ref() == Some(y) {
                    next[*d] += c;
                }
            }
        }
        cur = next;
    }
    (0..t.num_states()).filter(|&q| t.finals[q]).map(|q| cur[q]).sum()
}
