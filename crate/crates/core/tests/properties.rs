use proptest::prelude::*;

use deltagroup::catalog::{bundled_desk_catalog, parse_catalog, Catalog};
use deltagroup::constructors::{build, family_specs, GroupSpec};
use deltagroup::invariants::{delta, order_census};
use deltagroup::iso::{is_isomorphic, IsoData};
use deltagroup::{Group, Permutation};

fn small_specs() -> Vec<&'static str> {
    vec![
        "C1", "C6", "C2xC4", "D8", "Q8", "S3", "A4", "C3:C4@2", "D10", "C2^3", "QD16", "C4:C4@3", "C2xQ8", "D12",
        "SL(2,3)", "S4", "C5:C4@2", "C3xS3",
    ]
}

fn spec_strategy() -> impl Strategy<Value = &'static str> {
    proptest::sample::select(small_specs())
}

fn permutation_strategy(degree: usize) -> impl Strategy<Value = Permutation> {
    Just((1..=degree).collect::<Vec<_>>())
        .prop_shuffle()
        .prop_map(|images| Permutation::from_images(&images).unwrap())
}

/// A spec together with a random relabeling of its points.
fn relabeled() -> impl Strategy<Value = (&'static str, Permutation)> {
    spec_strategy().prop_flat_map(|s| (Just(s), permutation_strategy(built(s).degree())))
}

fn built(spec: &str) -> Group {
    build(&spec.parse::<GroupSpec>().unwrap()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn relabeling_preserves_invariants((spec, sigma) in relabeled()) {
        let g = built(spec);
        let h = g.relabel(&sigma).unwrap();
        prop_assert_eq!(h.order(), g.order());
        prop_assert_eq!(delta(&h).unwrap(), delta(&g).unwrap());
        prop_assert_eq!(order_census(&h).counts, order_census(&g).counts);
        prop_assert!(is_isomorphic(&g, &h));
    }

    #[test]
    fn isomorphism_is_symmetric(a in spec_strategy(), b in spec_strategy()) {
        let (g, h) = (built(a), built(b));
        let ab = is_isomorphic(&g, &h);
        prop_assert_eq!(ab, is_isomorphic(&h, &g));
        if a == b {
            prop_assert!(ab);
        }
        if ab {
            prop_assert_eq!(delta(&g).unwrap(), delta(&h).unwrap());
        }
    }

    #[test]
    fn found_isomorphisms_are_homomorphisms((spec, sigma) in relabeled()) {
        let g = built(spec);
        let h = g.relabel(&sigma).unwrap();
        let (dg, dh) = (IsoData::from_group(&g), IsoData::from_group(&h));
        let map = dg.find_isomorphism(&dh).expect("relabeled copy is isomorphic");
        let (tg, th) = (dg.table(), dh.table());
        for x in 0..g.order() {
            for y in 0..g.order() {
                prop_assert_eq!(map[tg.mul(x, y)], th.mul(map[x], map[y]));
            }
        }
    }

    #[test]
    fn star_identities_hold_for_products(a in spec_strategy(), b in spec_strategy()) {
        let g = built(a);
        let h = built(b);
        prop_assume!(g.order() * h.order() <= 600);
        let spec = GroupSpec::direct(a.parse().unwrap(), b.parse().unwrap());
        let p = build(&spec).unwrap();
        prop_assert_eq!(p.order(), g.order() * h.order());
        let star = order_census(&p).star_identity().unwrap();
        prop_assert!(star.holds(), "{:?}", star);
    }

    #[test]
    fn catalog_text_round_trips(keep in proptest::collection::vec(any::<bool>(), 40)) {
        let desk = bundled_desk_catalog();
        let mut sub = Catalog {
            entries: desk.entries.iter().filter(|e| keep[e.order - 1]).cloned().collect(),
            complete_orders: desk.complete_orders.iter().copied().filter(|&o| keep[o - 1]).collect(),
            comments: vec!["subset".into()],
        };
        sub.sort();
        let text = sub.write();
        let back = parse_catalog(&text).unwrap();
        prop_assert_eq!(back.write(), text);
        prop_assert_eq!(back.entries.len(), sub.entries.len());
        prop_assert_eq!(&back.complete_orders, &sub.complete_orders);
    }
}

#[test]
fn family_specs_match_catalog_ids() {
    let desk = bundled_desk_catalog();
    for entry in family_specs() {
        let g = build(&entry.spec).unwrap();
        let listed = desk.entry(entry.id).unwrap().group().unwrap();
        assert!(is_isomorphic(&g, &listed), "{} is not {}", entry.spec, entry.id);
        assert_eq!(delta(&g).unwrap(), entry.delta, "{}", entry.spec);
    }
}

#[test]
fn named_constructors_match_catalog_names() {
    let desk = bundled_desk_catalog();
    let pairs = [
        ("Q16", "Q16"),
        ("QD16", "QD16"),
        ("SL(2,3)", "SL(2,3)"),
        ("S4", "S4"),
        ("C2xA4", "C2xA4"),
        ("D20", "D20"),
    ];
    for (spec, name) in pairs {
        let g = built(spec);
        let matches: Vec<_> = desk.entries.iter().filter(|e| e.name == name).collect();
        assert_eq!(matches.len(), 1, "{name}");
        assert!(is_isomorphic(&g, &matches[0].group().unwrap()), "{spec} vs {name}");
    }
    // two classes of order 20 share the name C5:C4; the Frobenius group is [20,3]
    let frobenius = desk.entry(deltagroup::GroupId { order: 20, index: 3 }).unwrap();
    assert!(is_isomorphic(&built("C5:C4@2"), &frobenius.group().unwrap()));
}

#[test]
fn abelian_groups_of_complete_orders_are_distinct_catalog_classes() {
    // Every abelian invariant-factor decomposition up to 40 appears once.
    let desk = bundled_desk_catalog();
    fn partitions(n: usize, max: usize) -> Vec<Vec<usize>> {
        if n == 1 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for d in (2..=max.min(n)).rev() {
            if n.is_multiple_of(d) {
                for mut rest in partitions(n / d, d) {
                    if rest.first().is_none_or(|&r| d % r == 0) {
                        rest.insert(0, d);
                        out.push(rest);
                    }
                }
            }
        }
        out
    }
    for n in 2..=40 {
        let data: Vec<IsoData> = desk
            .entries_of_order(n)
            .map(|e| IsoData::from_group(&e.group().unwrap()))
            .collect();
        for factors in partitions(n, n) {
            let g = build(&GroupSpec::Abelian(factors.clone())).unwrap();
            let d = IsoData::from_group(&g);
            let hits = data.iter().filter(|x| x.is_isomorphic(&d)).count();
            assert_eq!(hits, 1, "abelian {factors:?} of order {n}");
        }
    }
}
