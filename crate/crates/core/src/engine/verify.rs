use std::fmt;

use serde::{Deserialize, Serialize};

use crate::graph::{canonical_key, verify_elimination_order, LabeledGraph};
use crate::group::{detect_flavor, Slenderness};

use super::proof::{ProofNode, RuleData, SplitSource};
use super::witness::{indices_in_order, wise_gordon_check};

/// Child indices from the root down to a node.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Path(pub Vec<usize>);

impl Path {
    pub(super) fn push(&mut self, i: usize) {
        self.0.push(i);
    }

    pub(super) fn pop(&mut self) {
        self.0.pop();
    }
}

impl fmt::Display for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("root")?;
        for i in &self.0 {
            write!(f, "/{i}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize, thiserror::Error)]
#[error("{path}: {reason}")]
pub struct Failure {
    pub path: Path,
    pub reason: String,
}

impl Failure {
    pub(super) fn new(path: &Path, reason: &str) -> Self {
        Failure {
            path: path.clone(),
            reason: reason.to_string(),
        }
    }
}

/// Re-checks every premise of a proof tree against `g`: vertex sets and
/// keys, rule preconditions, split invariants, separator certificates, and
/// that the children are exactly the subgraphs the rule consumes.
pub fn verify_proof(g: &LabeledGraph, tree: &ProofNode) -> Result<(), Failure> {
    check_node(g, tree, &mut Path::default())
}

fn check_node(g: &LabeledGraph, node: &ProofNode, path: &mut Path) -> Result<(), Failure> {
    let fail = |path: &Path, reason: &str| Err(Failure::new(path, reason));
    let mut ids = node.vertices.clone();
    let mut own: Vec<String> = g.vertices().iter().map(|v| v.id.clone()).collect();
    ids.sort();
    own.sort();
    if ids != own {
        return fail(path, "node vertices differ from the graph");
    }
    if let Some(key) = &node.key {
        match canonical_key(g, g.vertex_count().max(1)) {
            Ok(k) if &k == key => {}
            _ => return fail(path, "canonical key mismatch"),
        }
    }
    let flavor = detect_flavor(g);
    let n = g.vertex_count();
    let expected_children: Vec<&Vec<String>> = match &node.data {
        RuleData::Droms { peo } => {
            if !flavor.is_raag() {
                return fail(path, "Droms rule needs a right-angled Artin graph");
            }
            check_peo(g, peo, path)?;
            Vec::new()
        }
        RuleData::WiseGordon { peo } => {
            if !flavor.artin {
                return fail(path, "Wise-Gordon rule needs an Artin graph");
            }
            check_peo(g, peo, path)?;
            if wise_gordon_check(g).is_err() {
                return fail(path, "Wise-Gordon conditions fail");
            }
            Vec::new()
        }
        RuleData::Abelian => {
            if !(g.is_complete() && g.all_labels_two()) {
                return fail(path, "abelian rule needs a complete graph with labels 2");
            }
            Vec::new()
        }
        RuleData::Slender { certificate } => {
            if certificate.verdict() != Slenderness::Slender || !certificate.verify(g) {
                return fail(path, "slender certificate does not verify");
            }
            Vec::new()
        }
        RuleData::McCammondWise => {
            if !flavor.coxeter || g.edges().any(|(_, _, l)| (l as usize) < n) {
                return fail(path, "McCammond-Wise needs a Coxeter graph with labels at least #V");
            }
            Vec::new()
        }
        RuleData::FreeProduct { components } => {
            let mut actual: Vec<Vec<String>> =
                g.components().iter().map(|c| sorted(g.ids(c))).collect();
            let mut claimed: Vec<Vec<String>> = components.iter().cloned().map(sorted).collect();
            actual.sort();
            claimed.sort();
            if actual.len() < 2 || actual != claimed {
                return fail(path, "components do not match");
            }
            components.iter().collect()
        }
        RuleData::Amalgam {
            split,
            separator_certificate,
            source,
        } => {
            let Ok(s) = split.to_split(g) else {
                return fail(path, "unknown vertex in split");
            };
            if let Err(e) = s.check(g) {
                return fail(path, &format!("split invalid: {e}"));
            }
            if *source == SplitSource::Dirac && !g.is_clique(&s.separator) {
                return fail(path, "Dirac separator is not a clique");
            }
            let sep = match g.induced_subgraph(&s.separator) {
                Ok(sep) => sep,
                Err(_) => return fail(path, "empty separator"),
            };
            if separator_certificate.verdict() != Slenderness::Slender
                || !separator_certificate.verify(&sep)
            {
                return fail(path, "separator is not certified slender");
            }
            vec![&split.left, &split.right]
        }
    };
    if node.children.len() != expected_children.len() {
        return fail(path, "wrong number of children");
    }
    for (i, (child, want)) in node.children.iter().zip(expected_children).enumerate() {
        path.push(i);
        if sorted(child.vertices.clone()) != sorted(want.clone()) {
            return fail(path, "child does not cover the required subgraph");
        }
        let sub = match g.induced_by_ids(&child.vertices) {
            Ok(sub) => sub,
            Err(_) => return fail(path, "child names unknown vertices"),
        };
        check_node(&sub, child, path)?;
        path.pop();
    }
    Ok(())
}

fn check_peo(g: &LabeledGraph, peo: &[String], path: &Path) -> Result<(), Failure> {
    let order = indices_in_order(g, peo).filter(|o| {
        let mut s = o.clone();
        s.sort_unstable();
        s.dedup();
        s.len() == g.vertex_count() && o.len() == s.len()
    });
    match order {
        Some(o) if verify_elimination_order(g, &o).is_ok() => Ok(()),
        _ => Err(Failure::new(path, "not a perfect elimination ordering")),
    }
}

fn sorted(mut v: Vec<String>) -> Vec<String> {
    v.sort();
    v
}
