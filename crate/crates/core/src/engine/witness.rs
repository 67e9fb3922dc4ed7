use crate::graph::{is_chordal, verify_induced_cycle, ChordalityEvidence, LabeledGraph};
use crate::group::{contains_f2_certificate, detect_flavor};

use super::proof::{WiseGordonKind, Witness};
use super::verify::{Failure, Path};

/// Vertex sets carrying an F₂ certificate on their own: certified pairs,
/// then independent triples, each in lexicographic order.
fn certified_sets(g: &LabeledGraph) -> Vec<Vec<usize>> {
    let n = g.vertex_count();
    let mut out = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if !g.adjacent(u, v)
                && crate::graph::free_product_contains_f2(g.group(u), g.group(v))
            {
                out.push(vec![u, v]);
            }
        }
    }
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                if g.is_independent(&[a, b, c]) {
                    out.push(vec![a, b, c]);
                }
            }
        }
    }
    out
}

/// Looks for `A`, `B` with every cross pair joined by label 2 and an F₂
/// certificate inside each. `A` runs over certified sets in order; `B` is
/// the first certificate inside the label-2 common neighbourhood of `A`.
pub fn witness_join_incoherence(g: &LabeledGraph) -> Option<Witness> {
    let n = g.vertex_count();
    for a in certified_sets(g) {
        let common: Vec<usize> = (0..n)
            .filter(|&w| a.iter().all(|&u| g.label(u, w) == Some(2)))
            .collect();
        if common.len() < 2 {
            continue;
        }
        let sub = g.induced_subgraph(&common).expect("nonempty");
        let Some(cert_b) = contains_f2_certificate(&sub) else {
            continue;
        };
        let side_a = g.induced_subgraph(&a).expect("nonempty");
        let cert_a = contains_f2_certificate(&side_a).expect("certified set");
        let mut side_b: Vec<String> = cert_b.vertices().into_iter().map(String::from).collect();
        let idx = g.indices_of(&side_b).expect("ids from g");
        side_b = g.ids(&idx);
        return Some(Witness::JoinEmbedding {
            side_a: g.ids(&a),
            side_b,
            cert_a,
            cert_b,
        });
    }
    None
}

/// First violation of the three Wise–Gordon conditions, or a perfect
/// elimination ordering when all hold.
pub fn wise_gordon_check(g: &LabeledGraph) -> Result<Vec<usize>, (WiseGordonKind, Vec<usize>)> {
    let peo = match is_chordal(g) {
        (true, ChordalityEvidence::EliminationOrder(o)) => o,
        (_, ChordalityEvidence::InducedCycle(c)) => return Err((WiseGordonKind::LongCycle, c)),
        (false, ChordalityEvidence::EliminationOrder(_)) => unreachable!(),
    };
    if let Some(c) = big_label_clique(g) {
        return Err((WiseGordonKind::Clique, c));
    }
    if let Some(sq) = forbidden_square(g) {
        return Err((WiseGordonKind::ForbiddenSquare, sq));
    }
    Ok(peo)
}

fn big_labels(g: &LabeledGraph, set: &[usize]) -> usize {
    let mut k = 0;
    for (i, &u) in set.iter().enumerate() {
        for &v in &set[i + 1..] {
            if g.label(u, v).is_some_and(|l| l > 2) {
                k += 1;
            }
        }
    }
    k
}

/// Triangles first, then 4-cliques, each lexicographically.
fn big_label_clique(g: &LabeledGraph) -> Option<Vec<usize>> {
    let n = g.vertex_count();
    let nb = |u: usize| g.neighbors(u).iter().copied().filter(move |&w| w > u);
    for a in 0..n {
        for b in nb(a) {
            for c in nb(b) {
                if g.adjacent(a, c) && big_labels(g, &[a, b, c]) >= 2 {
                    return Some(vec![a, b, c]);
                }
            }
        }
    }
    for a in 0..n {
        for b in nb(a) {
            for c in nb(b) {
                if !g.adjacent(a, c) {
                    continue;
                }
                for d in nb(c) {
                    if g.is_clique(&[a, b, c, d]) && big_labels(g, &[a, b, c, d]) >= 2 {
                        return Some(vec![a, b, c, d]);
                    }
                }
            }
        }
    }
    None
}

/// Returned as `[x, y, p, q]` with the big label on `x`–`y`.
fn forbidden_square(g: &LabeledGraph) -> Option<Vec<usize>> {
    for (x, y, m) in g.edges() {
        if m <= 2 {
            continue;
        }
        let common: Vec<usize> = g
            .neighbors(x)
            .iter()
            .copied()
            .filter(|&w| g.label(x, w) == Some(2) && g.label(y, w) == Some(2))
            .collect();
        for (i, &p) in common.iter().enumerate() {
            for &q in &common[i + 1..] {
                if !g.adjacent(p, q) {
                    return Some(vec![x, y, p, q]);
                }
            }
        }
    }
    None
}

fn is_forbidden_square(g: &LabeledGraph, v: &[usize]) -> bool {
    let [x, y, p, q] = v else { return false };
    let distinct = {
        let mut s = v.to_vec();
        s.sort_unstable();
        s.dedup();
        s.len() == 4
    };
    distinct
        && g.label(*x, *y).is_some_and(|m| m > 2)
        && !g.adjacent(*p, *q)
        && [(*x, *p), (*x, *q), (*y, *p), (*y, *q)]
            .iter()
            .all(|&(a, b)| g.label(a, b) == Some(2))
}

/// Structural check of a witness against `g`.
pub fn verify_witness(g: &LabeledGraph, w: &Witness) -> Result<(), Failure> {
    check_witness(g, w, &mut Path::default())
}

fn check_witness(g: &LabeledGraph, w: &Witness, path: &mut Path) -> Result<(), Failure> {
    let fail = |path: &Path, reason: &str| Err(Failure::new(path, reason));
    match w {
        Witness::JoinEmbedding {
            side_a,
            side_b,
            cert_a,
            cert_b,
        } => {
            let (Ok(a), Ok(b)) = (g.indices_of(side_a), g.indices_of(side_b)) else {
                return fail(path, "unknown vertex in join sides");
            };
            if a.is_empty() || b.is_empty() || a.iter().any(|v| b.contains(v)) {
                return fail(path, "join sides must be nonempty and disjoint");
            }
            if a.iter().any(|&u| b.iter().any(|&v| g.label(u, v) != Some(2))) {
                return fail(path, "a cross pair is not joined by label 2");
            }
            for (side, cert) in [(&a, cert_a), (&b, cert_b)] {
                let sub = g.induced_subgraph(side).expect("nonempty");
                if !cert.verify(&sub) {
                    return fail(path, "F2 certificate does not hold on its side");
                }
            }
            Ok(())
        }
        Witness::DromsCycle { cycle } => {
            if !detect_flavor(g).is_raag() {
                return fail(path, "Droms cycle needs a right-angled Artin graph");
            }
            match indices_in_order(g, cycle) {
                Some(c) if verify_induced_cycle(g, &c) => Ok(()),
                _ => fail(path, "not an induced cycle of length at least 4"),
            }
        }
        Witness::WiseGordonViolation {
            violation,
            vertices,
        } => {
            if !detect_flavor(g).artin {
                return fail(path, "Wise-Gordon violation needs an Artin graph");
            }
            let Some(v) = indices_in_order(g, vertices) else {
                return fail(path, "unknown vertex in violation");
            };
            let ok = match violation {
                WiseGordonKind::LongCycle => verify_induced_cycle(g, &v),
                WiseGordonKind::Clique => {
                    let mut s = v.clone();
                    s.sort_unstable();
                    s.dedup();
                    (s.len() == 3 || s.len() == 4) && s.len() == v.len()
                        && g.is_clique(&s)
                        && big_labels(g, &s) >= 2
                }
                WiseGordonKind::ForbiddenSquare => is_forbidden_square(g, &v),
            };
            if ok {
                Ok(())
            } else {
                fail(path, "violation does not hold")
            }
        }
        Witness::IncoherentFactor {
            vertices, inner, ..
        } => {
            let Ok(idx) = g.indices_of(vertices) else {
                return fail(path, "unknown vertex in factor");
            };
            if idx.is_empty() || idx.len() != vertices.len() {
                return fail(path, "factor vertex set is empty or repeats");
            }
            let sub = g.induced_subgraph(&idx).expect("nonempty");
            path.push(0);
            let r = check_witness(&sub, inner, path);
            path.pop();
            r
        }
    }
}

/// Indices in the given order, rejecting unknown ids.
pub(super) fn indices_in_order(g: &LabeledGraph, ids: &[String]) -> Option<Vec<usize>> {
    ids.iter().map(|s| g.index_of(s)).collect()
}
