use std::collections::BTreeSet;

use proptest::prelude::*;
use spanrel::classes::{carrier, FactSystem, MorClass};
use spanrel::instances::finset::{FinFn, RelationJson};
use spanrel::instances::{FinCat, FinSet};
use spanrel::quotient::{Equivalence, QuotientView};
use spanrel::span::{class_canonical, rel_compose, sim_e_fast, sim_e_search};
use spanrel::sweep::Exec;
use spanrel::{Category, Outcome, Span, Verdict, Witness};

type Pairs = BTreeSet<(usize, usize)>;

fn relation(a: usize, b: usize) -> impl Strategy<Value = Pairs> {
    proptest::collection::vec(any::<bool>(), a * b)
        .prop_map(move |bits| bits.iter().enumerate().filter(|(_, &x)| x).map(|(i, _)| (i / b, i % b)).collect())
}

fn function(m: usize, n: usize) -> impl Strategy<Value = FinFn> {
    proptest::collection::vec(0..n.max(1), m).prop_map(move |t| FinFn::new(n, t).unwrap())
}

/// A span `a ← x → b` with `a, b ≥ 1` and apex `x ≤ 4`.
fn span(a: usize, b: usize) -> impl Strategy<Value = Span<FinFn>> {
    (0..=4usize).prop_flat_map(move |x| (function(x, a), function(x, b)).prop_map(|(l, r)| Span::new(l, r)))
}

/// Composable relations `a → b → d` with sizes up to 4.
fn composable() -> impl Strategy<Value = (usize, usize, usize, Pairs, Pairs)> {
    (1..=4usize, 1..=4usize, 1..=4usize)
        .prop_flat_map(|(a, b, d)| (Just((a, b, d)), relation(a, b), relation(b, d)))
        .prop_map(|((a, b, d), r, s)| (a, b, d, r, s))
}

/// Relations `r: a → b`, `s: b → d`, `t: a → d` for the modular law.
fn triangle() -> impl Strategy<Value = (usize, usize, usize, Pairs, Pairs, Pairs)> {
    (1..=4usize, 1..=3usize, 1..=4usize)
        .prop_flat_map(|(a, b, d)| (Just((a, b, d)), relation(a, b), relation(b, d), relation(a, d)))
        .prop_map(|((a, b, d), r, s, t)| (a, b, d, r, s, t))
}

fn to_span(a: usize, b: usize, r: &Pairs) -> Span<FinFn> {
    RelationJson { dom: a, cod: b, pairs: r.iter().copied().collect() }.to_span()
}

fn pairs(s: &Span<FinFn>) -> Pairs {
    RelationJson::from_span(s).pairs.into_iter().collect()
}

fn compose(r1: &Pairs, r2: &Pairs) -> Pairs {
    r1.iter()
        .flat_map(|&(a, b)| r2.iter().filter(move |&&(b2, _)| b2 == b).map(move |&(_, c)| (a, c)))
        .collect()
}

fn rel() -> (FinSet, FactSystem<FinFn>) {
    let c = FinSet::new(4);
    let sys = FactSystem::named(&c, "surj-inj").unwrap();
    (c, sys)
}

fn verdict() -> impl Strategy<Value = Verdict> {
    prop_oneof![
        Just(Verdict::Holds),
        (0..3u8).prop_map(|i| Verdict::unknown(format!("u{i}"))),
        (0..3u8).prop_map(|i| Verdict::fails(Witness::new(format!("w{i}")))),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn relational_composite_matches_pairs((a, b, d, r, s) in composable()) {
        let (c, sys) = rel();
        let got = rel_compose(&c, &sys, &to_span(a, b, &r), &to_span(b, d, &s)).unwrap();
        prop_assert_eq!(pairs(&got), compose(&r, &s));
    }

    #[test]
    fn relation_json_round_trips(r in (1..=4usize, 1..=4usize).prop_flat_map(|(a, b)| relation(a, b).prop_map(move |r| (a, b, r)))) {
        let (a, b, pairs_in) = r;
        let json = RelationJson { dom: a, cod: b, pairs: pairs_in.iter().copied().collect() };
        let text = serde_json::to_string(&json).unwrap();
        let back = RelationJson::from_json_str(&text).unwrap();
        prop_assert_eq!(pairs(&back.to_span()), pairs_in);
    }

    #[test]
    fn canonical_form_is_an_idempotent_class_member(s in (1..=3usize, 1..=3usize).prop_flat_map(|(a, b)| span(a, b))) {
        let (c, sys) = rel();
        let k = class_canonical(&c, &sys, &s).unwrap();
        prop_assert_eq!(class_canonical(&c, &sys, &k).unwrap(), k.clone());
        prop_assert!(sim_e_fast(&c, &sys, &s, &k).unwrap().is_holds());
        prop_assert_eq!(pairs(&k), pairs(&s));
    }

    #[test]
    fn involution_reverses_composites((a, b, d, r, s) in composable()) {
        let (c, sys) = rel();
        let v = QuotientView::new(&c, Equivalence::Factorization(sys), "simE", 2);
        let (r, s) = (to_span(a, b, &r), to_span(b, d, &s));
        let lhs = v.inv(&v.compose(&s, &r).unwrap()).unwrap();
        let rhs = v.compose(&v.inv(&r).unwrap(), &v.inv(&s).unwrap()).unwrap();
        prop_assert!(v.eq(&lhs, &rhs).unwrap().is_holds());
    }

    #[test]
    fn modular_law_beyond_the_exhaustive_region((a, b, d, r, s, t) in triangle()) {
        // (s∘r) ∧ t ⊆ s∘(r ∧ (s°∘t)) on pair sets.
        let s_inv: Pairs = s.iter().map(|&(x, y)| (y, x)).collect();
        let lhs: Pairs = compose(&r, &s).intersection(&t).copied().collect();
        let inner: Pairs = r.intersection(&compose(&t, &s_inv)).copied().collect();
        let rhs = compose(&inner, &s);
        prop_assert!(lhs.is_subset(&rhs));
        let (c, sys) = rel();
        let v = QuotientView::new(&c, Equivalence::Factorization(sys), "simE", 2);
        let (rs, ss, ts) = (to_span(a, b, &r), to_span(b, d, &s), to_span(a, d, &t));
        let left = v.meet(&v.compose(&ss, &rs).unwrap(), &ts).unwrap();
        let right = v.compose(&ss, &v.meet(&rs, &v.compose(&v.inv(&ss).unwrap(), &ts).unwrap()).unwrap()).unwrap();
        prop_assert!(v.le(&left, &right).unwrap().is_holds());
        prop_assert_eq!(pairs(&left), lhs);
    }

    #[test]
    fn injective_equivalence_is_symmetric(x in (1..=2usize, 1..=2usize).prop_flat_map(|(a, b)| (span(a, b), span(a, b)))) {
        let c = FinSet::new(4);
        let inj = MorClass::builtin(&c, "injective").unwrap();
        let (s1, s2) = x;
        let there = sim_e_search(&c, &inj, &s1, &s2, 4).unwrap().0;
        let back = sim_e_search(&c, &inj, &s2, &s1, 4).unwrap().0;
        prop_assert_eq!(there.outcome(), back.outcome());
    }

    #[test]
    fn verdict_fold_is_dominance(vs in proptest::collection::vec(verdict(), 0..12)) {
        let folded = Verdict::all(vs.clone());
        let expected = vs.iter().map(|v| v.outcome()).max().unwrap_or(Outcome::Holds);
        prop_assert_eq!(folded.outcome(), expected);
        if let Some(first) = vs.iter().find(|v| v.is_fails()) {
            prop_assert_eq!(folded.witness(), first.witness());
        }
    }

    #[test]
    fn executors_agree(vs in proptest::collection::vec(verdict(), 0..40)) {
        let par = Exec::Parallel.all(&vs, |v| v.clone());
        let seq = Exec::Sequential.all(&vs, |v| v.clone());
        prop_assert_eq!(par, seq);
    }

    #[test]
    fn fincat_pullback_squares_commute(i in 0usize..1000, j in 0usize..1000) {
        let c = FinCat::new(2, 3);
        let mors = carrier(&c, 3);
        let f = &mors[i % mors.len()];
        let same_cod: Vec<_> = mors.iter().filter(|g| c.cod(g) == c.cod(f)).collect();
        let g = same_cod[j % same_cod.len()];
        let pb = c.pullback(f, g).unwrap();
        prop_assert!(pb.p1.is_valid() && pb.p2.is_valid());
        prop_assert_eq!(c.compose_raw(f, &pb.p1), c.compose_raw(g, &pb.p2));
    }
}
