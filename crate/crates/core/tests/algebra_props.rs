//! Transducer and automaton algebra against brute-force pair sets on
//! small random machines.

mod common;

use common::*;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn union_is_set_union(a in transducer(), b in transducer()) {
        let want: Pairs = pairs(&a, BOUND, BOUND).union(&pairs(&b, BOUND, BOUND)).cloned().collect();
        prop_assert_eq!(pairs(&a.union(&b), BOUND, BOUND), want);
    }

    #[test]
    fn compose_is_relational_product(ea in edges(true, false), fa in finals(), b in transducer()) {
        // every transition of the first reads a letter, so the middle
        // word is never longer than the input
        let a = build(&ea, &fa);
        let pa = pairs(&a, BOUND, BOUND);
        let pb = pairs(&b, BOUND, BOUND);
        let want: Pairs = pa
            .iter()
            .flat_map(|(u, v)| pb.iter().filter(move |(v2, _)| v2 == v).map(move |(_, w)| (u.clone(), w.clone())))
            .collect();
        prop_assert_eq!(pairs(&a.compose(&b), BOUND, BOUND), want);
    }

    #[test]
    fn concat_is_pairwise(a in transducer(), b in transducer()) {
        let pa = pairs(&a, BOUND, BOUND);
        let pb = pairs(&b, BOUND, BOUND);
        let mut want = Pairs::new();
        for (u1, v1) in &pa {
            for (u2, v2) in &pb {
                if u1.len() + u2.len() <= BOUND && v1.len() + v2.len() <= BOUND {
                    want.insert(([u1.clone(), u2.clone()].concat(), [v1.clone(), v2.clone()].concat()));
                }
            }
        }
        prop_assert_eq!(pairs(&a.concat(&b), BOUND, BOUND), want);
    }

    #[test]
    fn restrictions_filter(t in transducer(), l in nfa()) {
        let p = pairs(&t, BOUND, BOUND);
        let dom: Pairs = p.iter().filter(|(u, _)| l.accepts(u)).cloned().collect();
        prop_assert_eq!(pairs(&t.restrict_domain(&l), BOUND, BOUND), dom);
        let ran: Pairs = p.iter().filter(|(_, v)| l.accepts(v)).cloned().collect();
        prop_assert_eq!(pairs(&t.restrict_range(&l), BOUND, BOUND), ran);
    }

    #[test]
    fn inverse_swaps(t in transducer()) {
        let want: Pairs = pairs(&t, BOUND, BOUND).into_iter().map(|(u, v)| (v, u)).collect();
        prop_assert_eq!(pairs(&t.inverse(), BOUND, BOUND), want);
    }

    #[test]
    fn normalize_keeps_pairs(t in transducer()) {
        prop_assert_eq!(pairs(&t.normalize(), BOUND, BOUND), pairs(&t, BOUND, BOUND));
    }

    #[test]
    fn unambiguize_keeps_pairs_with_one_run(e in edges(true, true), f in finals()) {
        let t = build(&e, &f);
        let u = t.unambiguize_synchronized().unwrap();
        let p = pairs(&t, BOUND, BOUND);
        prop_assert_eq!(pairs(&u, BOUND, BOUND), p.clone());
        for (x, y) in &p {
            prop_assert_eq!(runs(&u, x, y), 1);
            prop_assert_eq!(u.run_count(x, y), 1);
            prop_assert_eq!(t.run_count(x, y), runs(&t, x, y));
        }
    }

    #[test]
    fn domain_and_range(t in transducer()) {
        let p = pairs(&t, BOUND, BOUND);
        let d = t.domain();
        let r = t.range();
        for (u, v) in &p {
            prop_assert!(d.accepts(u));
            prop_assert!(r.accepts(v));
        }
    }

    #[test]
    fn nfa_operations(a in nfa(), b in nfa()) {
        let m = a.determinize_minimize(false);
        let c = a.complement();
        let i = a.intersect(&b);
        let u = a.union(&b);
        let cat = a.concat(&b);
        let rev = a.reverse();
        for w in words(5) {
            let (x, y) = (a.accepts(&w), b.accepts(&w));
            prop_assert_eq!(m.accepts(&w), x);
            prop_assert_eq!(c.accepts(&w), !x);
            prop_assert_eq!(i.accepts(&w), x && y);
            prop_assert_eq!(u.accepts(&w), x || y);
            let split = (0..=w.len()).any(|k| a.accepts(&w[..k]) && b.accepts(&w[k..]));
            prop_assert_eq!(cat.accepts(&w), split);
            let mut r = w.clone();
            r.reverse();
            prop_assert_eq!(rev.accepts(&r), x);
        }
        prop_assert!(m.is_deterministic());
        prop_assert_eq!(a.equal(&m), true);
    }
}
