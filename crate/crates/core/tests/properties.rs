mod common;

use ehresmann::algebra::{mul_category, mul_semigroup, verify_isomorphism, AlgebraElement, BasisKind};
use ehresmann::ehresmann::{check_variety, maximal_subsemilattices};
use ehresmann::partition::Partition;
use ehresmann::rep::{ei_report, invertible_by_search, invertible_morphisms, radical_span, reg_e};
use ehresmann::semigroup::SemigroupError;
use ehresmann::zoo::{self, ZooSpec};
use ehresmann::{
    build_category, derive_structure, EhresmannStructure, FinitePoset, FiniteSemigroup, Order, Rational,
};
use num_bigint::BigInt;
use num_traits::Zero;
use proptest::prelude::*;

fn members() -> Vec<(ZooSpec, EhresmannStructure)> {
    ZooSpec::small_members().into_iter().map(|s| (s.clone(), s.build().unwrap())).collect()
}

fn q(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

fn table(max: usize) -> impl Strategy<Value = Vec<Vec<usize>>> {
    (1..=max).prop_flat_map(|n| prop::collection::vec(prop::collection::vec(0..n, n), n))
}

fn relabel_sources() -> Vec<FiniteSemigroup> {
    vec![
        zoo::partial_transformations(2).unwrap(),
        zoo::six_element_example().unwrap().semigroup().clone(),
        zoo::t_n(2).unwrap(),
        FiniteSemigroup::left_zero(4),
        zoo::chain_of_groups(&[2, 3]).unwrap().semigroup().clone(),
    ]
}

/// A substructure of `PT_2`, `T_3` or `B_2` generated by random elements,
/// with `E` generated by a random part of one of its maximal
/// subsemilattices.
fn random_candidate() -> impl Strategy<Value = (FiniteSemigroup, Vec<usize>)> {
    let parents = [
        zoo::partial_transformations(2).unwrap(),
        zoo::t_n(3).unwrap(),
        zoo::b_n(2).unwrap().semigroup().clone(),
    ];
    (
        0..parents.len(),
        prop::collection::vec(any::<prop::sample::Index>(), 1..4),
        any::<prop::sample::Index>(),
        any::<u64>(),
    )
        .prop_map(move |(p, gens, pick, mask)| {
            let parent = &parents[p];
            let gens: Vec<usize> = gens.iter().map(|i| i.index(parent.size())).collect();
            let sub = parent.subsemigroup(&common::generated(parent, &gens)).unwrap();
            let maximal = maximal_subsemilattices(&sub);
            let m = &maximal[pick.index(maximal.len())];
            let chosen: Vec<usize> =
                m.iter().enumerate().filter(|(i, _)| mask >> (i % 64) & 1 == 1).map(|(_, &x)| x).collect();
            let e = if chosen.is_empty() { vec![m[0]] } else { common::generated(&sub, &chosen) };
            (sub, e)
        })
}

/// Intersection-closed family of subsets of a 5-element set: a commutative band.
fn random_commutative_band() -> impl Strategy<Value = FiniteSemigroup> {
    prop::collection::vec(0u8..32, 1..8).prop_map(|sets| {
        let mut family: Vec<u8> = sets;
        loop {
            let mut grew = false;
            for i in 0..family.len() {
                for j in 0..family.len() {
                    let m = family[i] & family[j];
                    if !family.contains(&m) {
                        family.push(m);
                        grew = true;
                    }
                }
            }
            if !grew {
                break;
            }
        }
        family.sort_unstable();
        family.dedup();
        let rows = (0..family.len())
            .map(|i| {
                (0..family.len())
                    .map(|j| family.iter().position(|&x| x == family[i] & family[j]).unwrap())
                    .collect()
            })
            .collect();
        FiniteSemigroup::new(rows).unwrap()
    })
}

fn random_element(kind: BasisKind, n: usize) -> impl Strategy<Value = AlgebraElement> {
    prop::collection::vec((0..n, -3i64..=3, 1i64..=3), 0..5).prop_map(move |terms| {
        AlgebraElement::from_terms(kind, terms.into_iter().map(|(i, a, b)| (i, q(a, b))))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn validate_reports_a_genuine_triple(t in table(5)) {
        match FiniteSemigroup::new(t.clone()) {
            Err(SemigroupError::NotAssociative { i, j, k }) => prop_assert_ne!(t[t[i][j]][k], t[i][t[j][k]]),
            Ok(s) => prop_assert!(s.associativity_failure().is_none()),
            Err(e) => prop_assert!(false, "unexpected {e:?}"),
        }
    }

    #[test]
    fn green_is_invariant_under_relabelling(
        (k, perm) in (0..relabel_sources().len()).prop_flat_map(|k| {
            let n = relabel_sources()[k].size();
            (Just(k), Just((0..n).collect::<Vec<usize>>()).prop_shuffle())
        })
    ) {
        let s = &relabel_sources()[k];
        let t = s.relabel(&perm);
        let (gs, gt) = (s.green(), t.green());
        let moved = |p: &Partition| Partition::from_class_ids(&{
            let mut ids = vec![0; p.len()];
            for x in 0..p.len() {
                ids[perm[x]] = p.class_of(x);
            }
            ids
        });
        prop_assert_eq!(moved(&gs.r), gt.r);
        prop_assert_eq!(moved(&gs.l), gt.l);
        prop_assert_eq!(moved(&gs.h), gt.h);
        prop_assert_eq!(moved(&gs.d), gt.d);
    }

    #[test]
    fn commutative_bands_have_trivial_green_relations(s in random_commutative_band()) {
        let g = s.green();
        let eq = Partition::discrete(s.size());
        prop_assert_eq!(&g.r, &eq);
        prop_assert_eq!(&g.l, &eq);
        prop_assert_eq!(&g.h, &eq);
        prop_assert_eq!(&g.d, &eq);
    }

    #[test]
    fn derived_structures_satisfy_the_variety((s, e) in random_candidate()) {
        if let Ok(es) = derive_structure(&s, &e) {
            prop_assert!(es.check_variety().passed);
            prop_assert!(es.leq_r().is_partial_order() && es.leq_l().is_partial_order());
            let c = build_category(&es);
            prop_assert!(c.verify_axioms().passed);
            let rebuilt = c.rebuild_semigroup().unwrap();
            prop_assert_eq!(rebuilt.semigroup(), es.semigroup());
            let r = verify_isomorphism(&es, Order::Right, 1).unwrap();
            prop_assert!(r.bijection);
            prop_assert!(r.hom_case1_failures.is_empty());
            if es.is_left_restriction() {
                prop_assert!(r.passed());
            }
        }
    }

    #[test]
    fn variety_assignments_round_trip((s, e) in random_candidate()) {
        if let Ok(es) = derive_structure(&s, &e) {
            // any assignment passing the identities is reproduced from its image
            let report = check_variety(&s, es.plus_map(), es.star_map());
            prop_assert!(report.passed);
            let mut image: Vec<usize> = es.plus_map().to_vec();
            image.sort_unstable();
            image.dedup();
            let again = derive_structure(&s, &image).unwrap();
            prop_assert_eq!(again.plus_map(), es.plus_map());
            prop_assert_eq!(again.star_map(), es.star_map());
        }
    }

    #[test]
    fn semigroup_algebra_is_associative(
        k in 0usize..3,
        seeds in prop::collection::vec(random_element(BasisKind::Semigroup, 6), 3)
    ) {
        let es = [zoo::pt_n(2).unwrap(), zoo::b_n(2).unwrap(), zoo::six_element_example().unwrap()][k].clone();
        let [u, v, w] = [&seeds[0], &seeds[1], &seeds[2]];
        let m = |x: &AlgebraElement, y: &AlgebraElement| mul_semigroup(&es, x, y).unwrap();
        prop_assert_eq!(m(&m(u, v), w), m(u, &m(v, w)));
        // bilinearity
        prop_assert_eq!(m(&u.add(v).unwrap(), w), m(u, w).add(&m(v, w)).unwrap());
    }

    #[test]
    fn category_algebra_is_associative(
        k in 0usize..3,
        seeds in prop::collection::vec(random_element(BasisKind::Category, 6), 3)
    ) {
        let es = [zoo::pt_n(2).unwrap(), zoo::b_n(2).unwrap(), zoo::six_element_example().unwrap()][k].clone();
        let c = build_category(&es);
        let [u, v, w] = [&seeds[0], &seeds[1], &seeds[2]];
        let m = |x: &AlgebraElement, y: &AlgebraElement| mul_category(&c, x, y).unwrap();
        prop_assert_eq!(m(&m(u, v), w), m(u, &m(v, w)));
    }

    #[test]
    fn moebius_values_are_integers_and_satisfy_the_recursion(seed in any::<u64>(), m in 1usize..=8) {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let p = common::random_poset(&mut rng, m);
        let mu = p.moebius();
        for ((x, y), v) in mu.iter() {
            prop_assert!(v.is_integer());
            let s: Rational = (0..m).filter(|&z| p.leq(x, z) && p.leq(z, y)).map(|z| mu.mu(x, z).unwrap().clone()).sum();
            prop_assert_eq!(s.is_zero(), x != y);
        }
    }
}

#[test]
fn natural_orders_on_zoo_members() {
    for (spec, es) in members() {
        for order in [Order::Right, Order::Left] {
            assert!(FinitePoset::new(es.order(order).clone()).is_ok(), "{spec} {order}");
        }
        let n = es.size();
        for a in 0..n {
            for b in 0..n {
                let r = es.leq_r().holds(a, b);
                // a = a⁺b agrees with a = eb for some e ∈ E
                assert_eq!(r, es.e().iter().any(|&e| es.mul(e, b) == a), "{spec}");
                assert_eq!(es.leq_l().holds(a, b), es.e().iter().any(|&e| es.mul(b, e) == a), "{spec}");
                if r {
                    assert!(es.e_leq(es.plus(a), es.plus(b)), "{spec}");
                }
            }
        }
    }
}

#[test]
fn category_invariants_on_zoo_members() {
    for (spec, es) in members() {
        let c = build_category(&es);
        for &e in c.objects() {
            assert_eq!((c.dom(e), c.cod(e)), (e, e), "{spec}");
            for &f in c.objects() {
                assert_eq!(c.leq_r().holds(e, f), c.leq_l().holds(e, f), "{spec}");
            }
        }
        for x in 0..c.size() {
            for &e in c.objects() {
                if let Ok(y) = c.restriction(e, x) {
                    assert!(c.dom(y) == e && c.leq_r().holds(y, x), "{spec}");
                }
                if let Ok(y) = c.corestriction(x, e) {
                    assert!(c.cod(y) == e && c.leq_l().holds(y, x), "{spec}");
                }
            }
        }
    }
}

#[test]
fn isomorphism_sweep_invariants() {
    for (spec, es) in members() {
        let r = verify_isomorphism(&es, Order::Right, 2).unwrap();
        assert!(r.bijection, "{spec}");
        assert!(r.hom_case1_failures.is_empty(), "{spec}");
        if es.is_left_restriction() {
            assert!(r.hom_case2_failures.is_empty(), "{spec}");
        }
    }
    let b2 = zoo::b_n(2).unwrap();
    let first = verify_isomorphism(&b2, Order::Right, 1).unwrap();
    assert!(!first.hom_case2_failures.is_empty());
    for workers in [1, 3, 8] {
        assert_eq!(verify_isomorphism(&b2, Order::Right, workers).unwrap(), first);
    }
}

#[test]
fn representation_invariants() {
    for (spec, es) in members() {
        let g = es.semigroup().green();
        let c = build_category(&es);
        assert_eq!(invertible_morphisms(&es, &g), invertible_by_search(&c), "{spec}");
        let reg = reg_e(&es, &g).unwrap();
        assert!(reg.closure_chain_holds, "{spec}");
        let ei = ei_report(&es, &c, &g);
        assert_eq!(ei.is_ei, ei.is_ei_by_search, "{spec}");
        assert_eq!(ei.object_iso_classes, ei.d_classes_on_e, "{spec}");
        assert_eq!(ei.is_groupoid, ei.inverse_with_full_e, "{spec}");
        if ei.is_ei {
            let rad = radical_span(&es, &c, &g).unwrap();
            assert!(rad.agrees(), "{spec}: {rad:?}");
            assert!(rad.nilpotency_index.unwrap() <= rad.dim + 1, "{spec}");
        }
    }
}
