mod common;

use std::collections::{HashMap, HashSet};

use coherence::graph::{
    canonical_form, canonical_key, is_chordal, join_factors, parse_graph, to_json, AbelianGroupLabel,
    LabeledGraph,
};
use proptest::prelude::*;
use rand::Rng;

use common::*;

const CAP: usize = 12;

#[test]
fn isomorphism_classes_match_known_counts() {
    for (n, want) in [(1, 1), (2, 2), (3, 4), (4, 11), (5, 34), (6, 156)] {
        let keys: HashSet<String> = (0u64..1 << pairs(n).len())
            .map(|m| canonical_key(&racg_from_mask(n, m), CAP).unwrap())
            .collect();
        assert_eq!(keys.len(), want, "n = {n}");
    }
}

/// The key partition equals the brute-force partition: same key exactly
/// when the permutation-minimised strings agree.
fn assert_same_partition(graphs: &[LabeledGraph]) {
    let mut by_key: HashMap<String, String> = HashMap::new();
    let mut by_brute: HashMap<String, String> = HashMap::new();
    for g in graphs {
        let k = canonical_key(g, CAP).unwrap();
        let b = brute_canonical(g);
        assert_eq!(by_key.entry(k.clone()).or_insert_with(|| b.clone()), &b);
        assert_eq!(by_brute.entry(b).or_insert(k.clone()), &k);
    }
}

#[test]
fn keys_agree_with_brute_force_on_racgs() {
    for n in 1..=5 {
        let gs: Vec<_> = (0u64..1 << pairs(n).len()).map(|m| racg_from_mask(n, m)).collect();
        assert_same_partition(&gs);
    }
}

#[test]
fn keys_agree_with_brute_force_on_mixed_labels() {
    let mut r = rng(11);
    let groups = [AbelianGroupLabel::z2(), AbelianGroupLabel::cyclic(3), AbelianGroupLabel::z()];
    let mut gs = Vec::new();
    for _ in 0..400 {
        let n = r.gen_range(2..=5);
        let base = random_racg(&mut r, n, 0.5);
        let gr: Vec<_> = (0..n).map(|_| groups[r.gen_range(0..3)].clone()).collect();
        let edges: Vec<_> = base.edges().map(|(u, v, _)| (u, v, r.gen_range(2..=4))).collect();
        gs.push(LabeledGraph::from_indexed(gr, &edges, |i| i.to_string()).unwrap());
        // Keep the isomorphic twin in the sample so classes are non-trivial.
        let g = gs.last().unwrap().clone();
        gs.push(permute(&g, &random_permutation(&mut r, n)));
    }
    assert_same_partition(&gs);
}

fn arb_graph() -> impl Strategy<Value = LabeledGraph> {
    (1usize..=8)
        .prop_flat_map(|n| {
            let m = n * (n - 1) / 2;
            (
                prop::collection::vec(0usize..4, n),
                prop::collection::vec(prop_oneof![Just(0u32), Just(2), Just(3), Just(5)], m),
                Just(n),
            )
        })
        .prop_map(|(gs, labels, n)| {
            let table = [
                AbelianGroupLabel::z2(),
                AbelianGroupLabel::z(),
                AbelianGroupLabel::cyclic(3),
                AbelianGroupLabel::new(1, &[2]).unwrap(),
            ];
            let edges: Vec<_> = pairs(n)
                .into_iter()
                .zip(labels)
                .filter(|(_, l)| *l != 0)
                .map(|((u, v), l)| (u, v, l))
                .collect();
            LabeledGraph::from_indexed(gs.iter().map(|&i| table[i].clone()).collect(), &edges, |i| {
                format!("v{i}")
            })
            .unwrap()
        })
}

proptest! {
    #[test]
    fn key_is_permutation_invariant(g in arb_graph(), seed in any::<u64>()) {
        let mut r = rng(seed);
        let h = permute(&g, &random_permutation(&mut r, g.vertex_count()));
        prop_assert_eq!(canonical_key(&g, CAP).unwrap(), canonical_key(&h, CAP).unwrap());
    }

    #[test]
    fn representative_has_the_same_key(g in arb_graph()) {
        let f = canonical_form(&g, CAP).unwrap();
        let rep = LabeledGraph::from_canonical_key(&f.key).unwrap();
        prop_assert_eq!(canonical_key(&rep, CAP).unwrap(), f.key.clone());
        // `order` really maps g onto the representative.
        for i in 0..g.vertex_count() {
            prop_assert_eq!(g.group(f.order[i]), rep.group(i));
            for j in 0..g.vertex_count() {
                if i != j {
                    prop_assert_eq!(g.label(f.order[i], f.order[j]), rep.label(i, j));
                }
            }
        }
    }

    #[test]
    fn json_round_trip(g in arb_graph()) {
        let h = parse_graph(&to_json(&g)).unwrap();
        prop_assert_eq!(canonical_key(&g, CAP).unwrap(), canonical_key(&h, CAP).unwrap());
        prop_assert_eq!(g.vertices(), h.vertices());
    }

    #[test]
    fn join_factors_partition_and_are_joined(g in arb_graph()) {
        let fs = join_factors(&g);
        let mut all: Vec<usize> = fs.concat();
        all.sort_unstable();
        prop_assert_eq!(all, (0..g.vertex_count()).collect::<Vec<_>>());
        for (i, a) in fs.iter().enumerate() {
            for b in &fs[i + 1..] {
                for &u in a {
                    for &v in b {
                        prop_assert_eq!(g.label(u, v), Some(2));
                    }
                }
            }
            // Each factor is connected in the "not a 2-edge" graph, so it
            // cannot split further.
            if a.len() > 1 {
                let sub = g.induced_subgraph(a).unwrap();
                prop_assert_eq!(join_factors(&sub).len(), 1);
            }
        }
    }

    #[test]
    fn chordality_evidence_verifies(g in arb_graph()) {
        let (chordal, ev) = is_chordal(&g);
        prop_assert!(ev.verify(&g));
        prop_assert_eq!(chordal, !has_long_induced_cycle(&g));
    }
}


