//! Slenderness (every subgroup finitely generated) and graph-level evidence
//! of free subgroups of rank two.

use serde::{Deserialize, Serialize};

use super::coxeter::{classify_components, coxeter_matrix, IrreducibleType};
use super::detect_flavor;
use crate::graph::{free_product_contains_f2, join_factors, IdMap, LabeledGraph};

/// Graph-level evidence that a parabolic subgroup contains `F₂`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum F2Certificate {
    /// Non-adjacent `u, v` with `(|φ(u)| - 1)(|φ(v)| - 1) ≥ 2`.
    LargePair { u: String, v: String },
    /// Three pairwise non-adjacent vertices.
    IndependentTriple { a: String, b: String, c: String },
}

impl F2Certificate {
    pub fn vertices(&self) -> Vec<&str> {
        match self {
            F2Certificate::LargePair { u, v } => vec![u, v],
            F2Certificate::IndependentTriple { a, b, c } => vec![a, b, c],
        }
    }

    pub fn verify(&self, g: &LabeledGraph) -> bool {
        let Ok(idx) = g.indices_of(&self.vertices()) else {
            return false;
        };
        match self {
            F2Certificate::LargePair { .. } => {
                idx.len() == 2
                    && !g.adjacent(idx[0], idx[1])
                    && free_product_contains_f2(g.group(idx[0]), g.group(idx[1]))
            }
            F2Certificate::IndependentTriple { .. } => idx.len() == 3 && g.is_independent(&idx),
        }
    }

    pub fn relabel(&mut self, map: &IdMap) {
        let mut ids: Vec<String> = self.vertices().into_iter().map(String::from).collect();
        map.set(&mut ids);
        match self {
            F2Certificate::LargePair { u, v } => {
                [*u, *v] = [ids[0].clone(), ids[1].clone()];
            }
            F2Certificate::IndependentTriple { a, b, c } => {
                [*a, *b, *c] = [ids[0].clone(), ids[1].clone(), ids[2].clone()];
            }
        }
    }
}

/// First certificate in a fixed order: pairs `(u < v)` lexicographically,
/// then triples. `None` does not rule out a free subgroup.
pub fn contains_f2_certificate(g: &LabeledGraph) -> Option<F2Certificate> {
    let n = g.vertex_count();
    for u in 0..n {
        for v in u + 1..n {
            if !g.adjacent(u, v) && free_product_contains_f2(g.group(u), g.group(v)) {
                return Some(F2Certificate::LargePair {
                    u: g.id(u).to_string(),
                    v: g.id(v).to_string(),
                });
            }
        }
    }
    for a in 0..n {
        for b in a + 1..n {
            if g.adjacent(a, b) {
                continue;
            }
            for c in b + 1..n {
                if !g.adjacent(a, c) && !g.adjacent(b, c) {
                    return Some(F2Certificate::IndependentTriple {
                        a: g.id(a).to_string(),
                        b: g.id(b).to_string(),
                        c: g.id(c).to_string(),
                    });
                }
            }
        }
    }
    None
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Slenderness {
    Slender,
    NotSlender,
    Unknown,
}

/// What a direct factor of a slender group is.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind", content = "type")]
pub enum FactorKind {
    /// Finite irreducible Coxeter group.
    Finite(IrreducibleType),
    /// Irreducible Euclidean reflection group.
    Affine(IrreducibleType),
    /// A single vertex group.
    Abelian,
    /// Two non-adjacent `Z/2` vertices.
    InfiniteDihedral,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SlenderFactor {
    pub vertices: Vec<String>,
    pub kind: FactorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum NotSlenderReason {
    F2 { certificate: F2Certificate },
    /// `left` and `right` span no edge between them and
    /// `(|G(left)| - 1)(|G(right)| - 1) ≥ 2`, so their free product contains
    /// `F₂`. Used for a join factor of three or more vertices whose complement
    /// has no independent triple.
    LargeFreeFactor { left: Vec<String>, right: Vec<String> },
    /// A Coxeter diagram component of neither finite nor affine type.
    IndefiniteComponent { vertices: Vec<String> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "verdict")]
pub enum SlenderCertificate {
    /// The group is the direct product of the listed factors.
    Slender { factors: Vec<SlenderFactor> },
    NotSlender { reason: NotSlenderReason },
    Unknown { reason: String },
}

impl SlenderCertificate {
    pub fn verdict(&self) -> Slenderness {
        match self {
            SlenderCertificate::Slender { .. } => Slenderness::Slender,
            SlenderCertificate::NotSlender { .. } => Slenderness::NotSlender,
            SlenderCertificate::Unknown { .. } => Slenderness::Unknown,
        }
    }

    pub fn is_slender(&self) -> bool {
        self.verdict() == Slenderness::Slender
    }

    /// `(n, k)` with `G ≅ Z₂ⁿ × (Z₂ ∗ Z₂)ᵏ`, when every factor is a single
    /// `Z/2` or an infinite dihedral group.
    pub fn right_angled_exponents(&self) -> Option<(usize, usize)> {
        let SlenderCertificate::Slender { factors } = self else {
            return None;
        };
        let (mut n, mut k) = (0, 0);
        for f in factors {
            match f.kind {
                FactorKind::Finite(IrreducibleType::A(1)) => n += 1,
                FactorKind::Affine(IrreducibleType::AffineA(1)) | FactorKind::InfiniteDihedral => {
                    k += 1
                }
                _ => return None,
            }
        }
        Some((n, k))
    }

    pub fn relabel(&mut self, map: &IdMap) {
        match self {
            SlenderCertificate::Slender { factors } => {
                factors.iter_mut().for_each(|x| map.set(&mut x.vertices))
            }
            SlenderCertificate::NotSlender { reason } => match reason {
                NotSlenderReason::F2 { certificate } => certificate.relabel(map),
                NotSlenderReason::LargeFreeFactor { left, right } => {
                    map.set(left);
                    map.set(right);
                }
                NotSlenderReason::IndefiniteComponent { vertices } => map.set(vertices),
            },
            SlenderCertificate::Unknown { .. } => {}
        }
    }

    /// Re-checks the certificate against `g`. `Unknown` is never accepted.
    pub fn verify(&self, g: &LabeledGraph) -> bool {
        match self {
            SlenderCertificate::Slender { factors } => verify_factors(g, factors),
            SlenderCertificate::NotSlender { reason } => verify_reason(g, reason),
            SlenderCertificate::Unknown { .. } => false,
        }
    }
}

fn verify_factors(g: &LabeledGraph, factors: &[SlenderFactor]) -> bool {
    let n = g.vertex_count();
    let mut owner = vec![usize::MAX; n];
    let mut sets = Vec::with_capacity(factors.len());
    for (i, f) in factors.iter().enumerate() {
        let Ok(idx) = g.indices_of(&f.vertices) else {
            return false;
        };
        if idx.is_empty() || idx.len() != f.vertices.len() {
            return false;
        }
        for &v in &idx {
            if owner[v] != usize::MAX {
                return false;
            }
            owner[v] = i;
        }
        sets.push(idx);
    }
    if owner.contains(&usize::MAX) {
        return false;
    }
    for u in 0..n {
        for v in u + 1..n {
            if owner[u] != owner[v] && g.label(u, v) != Some(2) {
                return false;
            }
        }
    }
    factors.iter().zip(&sets).all(|(f, idx)| match f.kind {
        FactorKind::Abelian => idx.len() == 1,
        FactorKind::InfiniteDihedral => {
            idx.len() == 2
                && !g.adjacent(idx[0], idx[1])
                && g.group(idx[0]).is_z2()
                && g.group(idx[1]).is_z2()
        }
        FactorKind::Finite(t) | FactorKind::Affine(t) => {
            let expected = match f.kind {
                FactorKind::Finite(_) => t.is_finite(),
                _ => t.is_affine(),
            };
            expected && classify_parabolic(g, idx) == Some(t)
        }
    })
}

/// Type of the parabolic on `idx` when it is Coxeter with a connected
/// diagram.
fn classify_parabolic(g: &LabeledGraph, idx: &[usize]) -> Option<IrreducibleType> {
    let sub = g.induced_subgraph(idx).ok()?;
    let m = coxeter_matrix(&sub).ok()?;
    match classify_components(&m).as_slice() {
        [(_, t)] => Some(*t),
        _ => None,
    }
}

fn verify_reason(g: &LabeledGraph, reason: &NotSlenderReason) -> bool {
    match reason {
        NotSlenderReason::F2 { certificate } => certificate.verify(g),
        NotSlenderReason::LargeFreeFactor { left, right } => {
            let (Ok(l), Ok(r)) = (g.indices_of(left), g.indices_of(right)) else {
                return false;
            };
            if l.is_empty() || r.is_empty() || !g.all_labels_two() {
                return false;
            }
            if l.iter().any(|u| r.iter().any(|v| u == v || g.adjacent(*u, *v))) {
                return false;
            }
            // Orders of the two parabolics; either may be infinite.
            let order = |set: &[usize]| -> Option<u128> {
                if !g.is_clique(set) {
                    return None;
                }
                set.iter()
                    .try_fold(1u128, |acc, &v| g.group(v).order().map(|o| acc.saturating_mul(o as u128)))
            };
            match (order(&l), order(&r)) {
                (Some(a), Some(b)) => (a - 1).saturating_mul(b - 1) >= 2,
                _ => true,
            }
        }
        NotSlenderReason::IndefiniteComponent { vertices } => {
            let Ok(idx) = g.indices_of(vertices) else {
                return false;
            };
            let Ok(m) = coxeter_matrix(g) else {
                return false;
            };
            classify_components(&m)
                .into_iter()
                .any(|(c, t)| c == idx && t == IrreducibleType::Indefinite)
        }
    }
}

/// Slenderness per flavor. Coxeter graphs follow the diagram
/// classification, graph products the join-factor decomposition, Artin
/// graphs are decided except for complete graphs with a label `≥ 3`.
pub fn is_slender(g: &LabeledGraph) -> SlenderCertificate {
    let flavor = detect_flavor(g);
    if flavor.coxeter {
        coxeter_slender(g)
    } else if flavor.graph_product {
        graph_product_slender(g)
    } else if flavor.artin {
        artin_slender(g)
    } else {
        SlenderCertificate::Unknown {
            reason: "no_group".into(),
        }
    }
}

fn coxeter_slender(g: &LabeledGraph) -> SlenderCertificate {
    let m = coxeter_matrix(g).expect("caller checked the flavor");
    let components = classify_components(&m);
    if let Some((c, _)) = components
        .iter()
        .find(|(_, t)| *t == IrreducibleType::Indefinite)
    {
        let reason = match contains_f2_certificate(g) {
            Some(certificate) => NotSlenderReason::F2 { certificate },
            None => NotSlenderReason::IndefiniteComponent { vertices: g.ids(c) },
        };
        return SlenderCertificate::NotSlender { reason };
    }
    let factors = components
        .into_iter()
        .map(|(c, t)| SlenderFactor {
            vertices: g.ids(&c),
            kind: if t.is_finite() {
                FactorKind::Finite(t)
            } else {
                FactorKind::Affine(t)
            },
        })
        .collect();
    SlenderCertificate::Slender { factors }
}

fn graph_product_slender(g: &LabeledGraph) -> SlenderCertificate {
    if let Some(certificate) = contains_f2_certificate(g) {
        return SlenderCertificate::NotSlender {
            reason: NotSlenderReason::F2 { certificate },
        };
    }
    let mut factors = Vec::new();
    for f in join_factors(g) {
        match f.len() {
            1 => factors.push(SlenderFactor {
                vertices: g.ids(&f),
                kind: FactorKind::Abelian,
            }),
            // No certificate, so a non-adjacent pair is Z/2 and Z/2.
            2 => factors.push(SlenderFactor {
                vertices: g.ids(&f),
                kind: FactorKind::InfiniteDihedral,
            }),
            _ => {
                return SlenderCertificate::NotSlender {
                    reason: large_factor_reason(g, &f),
                }
            }
        }
    }
    SlenderCertificate::Slender { factors }
}

/// A join factor with at least three vertices and no F₂ certificate: the
/// complement restricted to it is connected, so it has a path `u, v, w`
/// with `u`–`w` an edge. Then `G({u, w})` has order at least 4 and is freely
/// multiplied with `G(v)`.
fn large_factor_reason(g: &LabeledGraph, factor: &[usize]) -> NotSlenderReason {
    for &v in factor {
        for &u in factor {
            for &w in factor {
                if u < w
                    && u != v
                    && w != v
                    && !g.adjacent(u, v)
                    && !g.adjacent(v, w)
                    && g.adjacent(u, w)
                {
                    return NotSlenderReason::LargeFreeFactor {
                        left: g.ids(&[u, w]),
                        right: g.ids(&[v]),
                    };
                }
            }
        }
    }
    unreachable!("a connected complement on three or more vertices has such a path")
}

fn artin_slender(g: &LabeledGraph) -> SlenderCertificate {
    if let Some(certificate) = contains_f2_certificate(g) {
        return SlenderCertificate::NotSlender {
            reason: NotSlenderReason::F2 { certificate },
        };
    }
    // No certificate: every pair is adjacent.
    if g.all_labels_two() {
        let factors = (0..g.vertex_count())
            .map(|v| SlenderFactor {
                vertices: g.ids(&[v]),
                kind: FactorKind::Abelian,
            })
            .collect();
        SlenderCertificate::Slender { factors }
    } else {
        SlenderCertificate::Unknown {
            reason: "artin_complete_with_large_label".into(),
        }
    }
}
