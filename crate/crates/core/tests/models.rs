//! The acceptors on their own, against direct descriptions of the
//! languages they are meant to recognize.

use ratgraph::fixtures;
use ratgraph::letter::{format_word, letter, parse_word, word, Letter, Word};
use ratgraph::nfa::{Count, Nfa};
use ratgraph::tiling::Picture;

fn all_words(sigma: &[&str], max_len: usize) -> Vec<Word> {
    let mut all = vec![Vec::new()];
    let mut layer: Vec<Word> = vec![Vec::new()];
    for _ in 0..max_len {
        layer = layer
            .iter()
            .flat_map(|w| sigma.iter().map(move |c| [w.clone(), vec![letter(c)]].concat()))
            .collect();
        all.extend(layer.iter().cloned());
    }
    all
}

fn is_anbn(w: &[Letter]) -> bool {
    let n = w.len() / 2;
    n >= 1 && w.len() == 2 * n && w[..n].iter().all(|l| l.as_str() == "a") && w[n..].iter().all(|l| l.as_str() == "b")
}

fn is_aplus_bplus(w: &[Letter]) -> bool {
    let s = format_word(w);
    let a = s.chars().take_while(|&c| c == 'a').count();
    a >= 1 && a < s.len() && s[a..].chars().all(|c| c == 'b')
}

#[test]
fn tiling_accepts_anbn() {
    let ts = fixtures::anbn_tiling();
    for w in all_words(&["a", "b"], 10).into_iter().skip(1) {
        assert_eq!(ts.member(&w).unwrap(), is_anbn(&w), "{}", format_word(&w));
    }
    assert!(ts.member(&[]).is_err());
}

#[test]
fn tiling_pictures() {
    let ts = fixtures::anbn_tiling();
    for n in 1..=5 {
        let w = word(&format!("{}{}", "a".repeat(n), "b".repeat(n)));
        assert_eq!(ts.min_height(&w).unwrap(), Some(n + 1));
        assert_eq!(ts.count_pictures(&w, 2 * n + 2).unwrap(), 1);
        let p = ts.min_picture(&w).unwrap().unwrap();
        assert_eq!(p.frontier(), w);
        assert!(ts.accepts_picture(&p));
        let framed = p.border(&ts.frame).unwrap();
        assert!(framed.tiles().unwrap().iter().all(|t| ts.has_tile(t)));
    }
    assert!(ts.member(&word("abx")).is_err());
    assert!(ts.det_probe(5));
    let bad = Picture::new(vec![word("ab"), word("ab")]).unwrap();
    assert!(!ts.accepts_picture(&bad));
    assert!(Picture::new(vec![word("ab"), word("a")]).is_err());
}

#[test]
fn tiling_enumeration_is_shortlex() {
    let ts = fixtures::anbn_tiling();
    assert_eq!(ts.enumerate(6), vec![word("ab"), word("aabb"), word("aaabbb")]);
}

#[test]
fn cellular_accepts_anbn() {
    let ca = fixtures::anbn_ca();
    assert!(ca.is_deterministic());
    for w in all_words(&["a", "b"], 10) {
        assert_eq!(ca.member(&w).unwrap(), is_anbn(&w), "{}", format_word(&w));
    }
    let strict = ca.clone().with_reflexive(false);
    for w in all_words(&["a", "b"], 6) {
        assert_eq!(strict.member(&w).unwrap(), is_anbn(&w));
    }
}

#[test]
fn cellular_orbit() {
    let ca = fixtures::anbn_ca();
    assert_eq!(ca.successors(&word("ab")), vec![word("oo")]);
    let orbit = ca.orbit(&word("aabb")).unwrap();
    assert_eq!(orbit[0], word("aabb"));
    assert_eq!(orbit[1], word("oabo"));
    assert!(orbit.last().unwrap().iter().all(|l| l.as_str() == "o" || l.as_str() == "z"));
    assert!(ca.successors(&word("ba")).is_empty());
}

#[test]
fn grid_accepts_everything() {
    let m = fixtures::grid();
    assert_eq!(m.enumerate(4), all_words(&["a", "b"], 4));
    assert_eq!(m.count_paths(&word("abba"), 8).unwrap(), 1);
    let w = m.witness(&word("ab"), 8).unwrap().unwrap();
    assert_eq!(w.vertices, vec![word(""), word("A"), word("AB")]);
    let edges = m.graph.out_edges(&word("AB"), 8);
    let want = [(letter("a"), word("AAB")), (letter("b"), word("ABB"))];
    assert_eq!(edges.into_iter().collect::<Vec<_>>(), want.to_vec());
}

#[test]
fn doubling_degrees() {
    let g = fixtures::doubling();
    assert_eq!(g.out_degree(&word("A")), Count::Finite(4));
    assert_eq!(g.out_degree(&word("AB")), Count::Finite(16));
    assert_eq!(g.out_degree(&word("")), Count::Finite(1));
    let t = g.relation(&letter("a")).unwrap();
    let images = t.apply_word(&word("AB")).enumerate(4);
    assert_eq!(images.len(), 16);
    assert_eq!(images, all_words(&["A", "B"], 4).into_iter().filter(|v| v.len() == 4).collect::<Vec<_>>());
}

#[test]
fn finite_automaton_as_graph() {
    let m = fixtures::aplus_bplus();
    for w in all_words(&["a", "b"], 7) {
        assert_eq!(m.member(&w).unwrap(), is_aplus_bplus(&w), "{}", format_word(&w));
    }
    assert!(m.graph.is_deterministic(4).deterministic);
}

#[test]
fn counter_graph() {
    let m = fixtures::anbn_counter();
    for w in all_words(&["a", "b"], 8) {
        assert_eq!(m.member(&w).unwrap(), is_anbn(&w), "{}", format_word(&w));
        assert_eq!(m.det_member(&word("s"), &w).unwrap(), is_anbn(&w));
    }
    assert_eq!(m.ambiguity_probe(8, 16), 1);
    let classes = m.graph.classify();
    assert!(classes[&letter("a")].left_synchronized);
    assert!(!classes[&letter("a")].synchronous);
    // `s c^n` has one `a` and one `b` successor, `t d^n` only a `b` one
    let f = Count::Finite;
    assert_eq!(m.graph.degree_table(&word("s"), 3, 16), vec![f(1), f(2), f(2), f(2)]);
}

#[test]
fn sequential_star_language() {
    let m = fixtures::sequential_star();
    let want: Vec<Word> = all_words(&["a", "b"], 5)
        .into_iter()
        .filter(|w| {
            let s = format_word(w);
            let a = s.chars().take_while(|&c| c == 'a').count();
            a < s.len() && s[a..].chars().all(|c| c == 'b')
        })
        .collect();
    let mut got = m.enumerate(5);
    got.sort_by(|a, b| ratgraph::letter::shortlex(a, b));
    assert_eq!(got, want);
    assert!(m.graph.classify().values().all(|c| c.synchronous && c.sequential));
}

#[test]
fn words_round_trip() {
    let w = parse_word("a{xp}\\{b").unwrap();
    assert_eq!(w, vec![letter("a"), letter("xp"), letter("{"), letter("b")]);
    assert_eq!(parse_word(&format_word(&w)).unwrap(), w);
    assert!(parse_word("{}").is_err());
    assert!(parse_word("a\\").is_err());
    assert!(parse_word("{ab").is_err());
}

#[test]
fn nfa_counts() {
    let g = ratgraph::letter::alphabet(["a", "b"]);
    let ab = Nfa::from_words(g.clone(), &[word("a"), word("ab"), word("ba")]);
    assert_eq!(ab.cardinality(), Count::Finite(3));
    assert_eq!(ab.lengths(3), vec![false, true, true, false]);
    assert_eq!(Nfa::universal(g.clone()).cardinality(), Count::Infinite);
    assert_eq!(ab.star().enumerate(2).len(), 1 + 1 + 3);
    assert!(Nfa::empty(g).is_empty());
}
