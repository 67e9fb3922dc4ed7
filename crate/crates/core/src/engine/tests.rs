use super::*;
use crate::graph::AbelianGroupLabel;

fn cycle_edges(n: usize) -> Vec<(usize, usize)> {
    (0..n).map(|i| (i, (i + 1) % n)).collect()
}

fn racg_cycle(n: usize) -> LabeledGraph {
    LabeledGraph::racg(n, &cycle_edges(n)).unwrap()
}

fn z3_cycle(n: usize) -> LabeledGraph {
    let e: Vec<_> = cycle_edges(n).into_iter().map(|(u, v)| (u, v, 2)).collect();
    LabeledGraph::uniform(n, AbelianGroupLabel::cyclic(3), &e).unwrap()
}

fn checked(g: &LabeledGraph, config: &EngineConfig) -> Verdict {
    let v = classify_coherence(g, config).unwrap();
    verify_verdict(g, &v).unwrap();
    v
}

#[test]
fn racg_cycles_split_over_two_vertices() {
    for n in 5..=8 {
        let g = racg_cycle(n);
        let Verdict::Coherent(t) = checked(&g, &EngineConfig::default()) else {
            panic!("C{n}")
        };
        let RuleData::Amalgam { split, .. } = &t.data else {
            panic!("C{n}: {:?}", t.rule())
        };
        assert_eq!(split.separator.len(), 2);
    }
}

#[test]
fn four_cycle_two_ways() {
    let g = racg_cycle(4);
    let Verdict::Coherent(t) = checked(&g, &EngineConfig::default()) else {
        panic!()
    };
    let RuleData::Slender { certificate } = &t.data else {
        panic!()
    };
    assert_eq!(certificate.right_angled_exponents(), Some((0, 2)));
    let v = checked(&g, &EngineConfig::default().without(&[Rule::Slender]));
    assert!(matches!(v, Verdict::Coherent(ProofNode { data: RuleData::Amalgam { .. }, .. })));
}

#[test]
fn z3_cycles() {
    let v = checked(&z3_cycle(4), &EngineConfig::default());
    assert!(matches!(v, Verdict::Incoherent(Witness::JoinEmbedding { .. })));
    let v = checked(&z3_cycle(5), &EngineConfig::default());
    let Verdict::Unknown(notes) = v else { panic!() };
    assert_eq!(notes[0].code, NoteCode::OpenHyperbolicCycle);
    assert_eq!(notes[0].vertices.len(), 5);
}

#[test]
fn raag_droms() {
    let g = LabeledGraph::artin(5, &cycle_edges(5).iter().map(|&(u, v)| (u, v, 2)).collect::<Vec<_>>()).unwrap();
    let v = checked(&g, &EngineConfig::default());
    assert!(matches!(v, Verdict::Incoherent(Witness::DromsCycle { .. })));
}

#[test]
fn braid_figure() {
    let g = LabeledGraph::artin(
        4,
        &[(0, 1, 3), (1, 2, 3), (2, 3, 3), (0, 2, 2), (0, 3, 2), (1, 3, 2)],
    )
    .unwrap();
    let v = checked(&g, &EngineConfig::default());
    assert!(matches!(
        v,
        Verdict::Incoherent(Witness::WiseGordonViolation {
            violation: WiseGordonKind::Clique,
            ..
        })
    ));
}

#[test]
fn affine_triangle_two_ways() {
    let g = LabeledGraph::coxeter(3, &[(0, 1, 3), (1, 2, 3), (0, 2, 3)]).unwrap();
    let a = checked(&g, &EngineConfig::default());
    assert_eq!(a.rule_summary(), "slender");
    let b = checked(&g, &EngineConfig::default().without(&[Rule::Slender]));
    assert_eq!(b.rule_summary(), "mccammond_wise");
}

#[test]
fn ids_are_mapped_back() {
    let g = LabeledGraph::from_indexed(
        vec![AbelianGroupLabel::z2(); 5],
        &[(0, 1, 2), (1, 2, 2), (2, 3, 2), (3, 4, 2), (4, 0, 2)],
        |i| ["p", "q", "r", "s", "t"][i].to_string(),
    )
    .unwrap();
    let v = checked(&g, &EngineConfig::default());
    let json = serde_json::to_string(&v).unwrap();
    assert!(json.contains("\"p\""));
    let back: Verdict = serde_json::from_str(&json).unwrap();
    assert_eq!(back, v);
}

#[test]
fn disconnected_free_product() {
    let g = LabeledGraph::racg(5, &[(0, 1), (2, 3), (3, 4)]).unwrap();
    let v = checked(&g, &EngineConfig::default());
    // Three pairwise non-adjacent vertices make the whole thing non-slender.
    assert_eq!(v.rule_summary(), "free_product");
}

#[test]
fn cache_transparent() {
    let g = racg_cycle(6);
    let with = checked(&g, &EngineConfig::default());
    let without = checked(
        &g,
        &EngineConfig {
            use_cache: false,
            ..EngineConfig::default()
        },
    );
    assert_eq!(with, without);
}

#[test]
fn tampered_separator_rejected() {
    let g = racg_cycle(5);
    let Verdict::Coherent(mut t) = checked(&g, &EngineConfig::default()) else {
        panic!()
    };
    if let RuleData::Amalgam { split, .. } = &mut t.data {
        split.separator = vec![split.separator[0].clone()];
    }
    assert!(verify_proof(&g, &t).is_err());
}

#[test]
fn unsupported_flavor() {
    let g = LabeledGraph::uniform(2, AbelianGroupLabel::cyclic(3), &[(0, 1, 3)]).unwrap();
    assert_eq!(
        classify_coherence(&g, &EngineConfig::default()),
        Err(EngineError::UnsupportedFlavor)
    );
}
