//! Coherence classification with checkable proofs and witnesses.
//!
//! Rules are tried in a fixed order: the iff criteria for right-angled Artin
//! graphs (Droms) and Artin graphs (Wise–Gordon), a scan for an embedded
//! `F₂ × F₂`, the abelian and slender base cases, McCammond–Wise for Coxeter
//! graphs, free products over components, clique-separator amalgams for
//! chordal graphs, and finally a search over all splits whose separator is
//! slender. Every subgraph is classified on the representative of its
//! canonical key, so results are cached per isomorphism class and do not
//! depend on evaluation order.

mod proof;
mod verify;
mod witness;

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use dashmap::DashMap;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::decomposition::{dirac_split, enumerate_separator_splits, Split};
use crate::graph::{
    canonical_form, canonical_key, is_chordal, shape_classify, ChordalityEvidence, IdMap, LabeledGraph, Shape,
    DEFAULT_CANONICAL_CAP,
};
use crate::group::{detect_flavor, is_slender};

pub use proof::{
    Axiom, IdSplit, Note, NoteCode, ProofNode, Rule, RuleData, SplitSource, WiseGordonKind,
    Witness,
};
pub use verify::{verify_proof, Failure, Path};
pub use witness::{verify_witness, wise_gordon_check, witness_join_incoherence};

pub const DEFAULT_SEARCH_CAP: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EngineConfig {
    /// Graphs above this size only get the non-recursive rules. Also the
    /// canonical-key cap, so larger graphs are not cached.
    pub max_search_vertices: usize,
    /// Rules to skip, for cross-checking one derivation against another.
    pub disabled: BTreeSet<Rule>,
    /// Whether to scan for an embedded `F₂ × F₂` before the coherence rules.
    pub join_witness: bool,
    pub use_cache: bool,
}

impl Default for EngineConfig {
    fn default() -> Self {
        EngineConfig {
            max_search_vertices: DEFAULT_SEARCH_CAP,
            disabled: BTreeSet::new(),
            join_witness: true,
            use_cache: true,
        }
    }
}

impl EngineConfig {
    pub fn without(mut self, rules: &[Rule]) -> Self {
        self.disabled.extend(rules.iter().copied());
        self
    }

    fn on(&self, r: Rule) -> bool {
        !self.disabled.contains(&r)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EngineError {
    #[error("no group is attached to this graph: edge labels above 2 need all vertex groups Z or all Z/2")]
    UnsupportedFlavor,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VerdictKind {
    Coherent,
    Incoherent,
    Unknown,
}

impl fmt::Display for VerdictKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            VerdictKind::Coherent => "COHERENT",
            VerdictKind::Incoherent => "INCOHERENT",
            VerdictKind::Unknown => "UNKNOWN",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "VerdictRecord", try_from = "VerdictRecord")]
pub enum Verdict {
    Coherent(ProofNode),
    Incoherent(Witness),
    Unknown(Vec<Note>),
}

/// Serialized form of a [`Verdict`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerdictRecord {
    pub verdict: VerdictKind,
    pub trace: Option<ProofNode>,
    pub witness: Option<Witness>,
    #[serde(default)]
    pub notes: Vec<Note>,
}

impl From<Verdict> for VerdictRecord {
    fn from(v: Verdict) -> Self {
        let verdict = v.kind();
        let (trace, witness, notes) = match v {
            Verdict::Coherent(t) => (Some(t), None, Vec::new()),
            Verdict::Incoherent(w) => (None, Some(w), Vec::new()),
            Verdict::Unknown(n) => (None, None, n),
        };
        VerdictRecord {
            verdict,
            trace,
            witness,
            notes,
        }
    }
}

impl TryFrom<VerdictRecord> for Verdict {
    type Error = String;

    fn try_from(r: VerdictRecord) -> Result<Self, String> {
        match (r.verdict, r.trace, r.witness) {
            (VerdictKind::Coherent, Some(t), None) => Ok(Verdict::Coherent(t)),
            (VerdictKind::Incoherent, None, Some(w)) => Ok(Verdict::Incoherent(w)),
            (VerdictKind::Unknown, None, None) => Ok(Verdict::Unknown(r.notes)),
            (k, ..) => Err(format!("{k} verdict with mismatched trace or witness")),
        }
    }
}

impl Verdict {
    pub fn kind(&self) -> VerdictKind {
        match self {
            Verdict::Coherent(_) => VerdictKind::Coherent,
            Verdict::Incoherent(_) => VerdictKind::Incoherent,
            Verdict::Unknown(_) => VerdictKind::Unknown,
        }
    }

    /// Rule at the root of the proof, or the witness kind.
    pub fn rule_summary(&self) -> String {
        match self {
            Verdict::Coherent(t) => t.rule().name().to_string(),
            Verdict::Incoherent(w) => witness_name(w.core()).to_string(),
            Verdict::Unknown(notes) => notes
                .first()
                .map_or("no_rule_applied".into(), |n| note_name(n.code).to_string()),
        }
    }

    pub fn relabel(&mut self, map: &IdMap) {
        match self {
            Verdict::Coherent(t) => t.relabel(map),
            Verdict::Incoherent(w) => w.relabel(map),
            Verdict::Unknown(notes) => notes.iter_mut().for_each(|n| n.relabel(map)),
        }
    }

    pub fn notes(&self) -> &[Note] {
        match self {
            Verdict::Unknown(n) => n,
            _ => &[],
        }
    }
}

pub fn witness_name(w: &Witness) -> &'static str {
    match w {
        Witness::JoinEmbedding { .. } => "join_embedding",
        Witness::DromsCycle { .. } => "droms_cycle",
        Witness::WiseGordonViolation { .. } => "wise_gordon_violation",
        Witness::IncoherentFactor { .. } => "incoherent_factor",
    }
}

pub fn note_name(code: NoteCode) -> &'static str {
    match code {
        NoteCode::OpenHyperbolicCycle => "open_hyperbolic_cycle",
        NoteCode::SearchCapExceeded => "search_cap_exceeded",
        NoteCode::NoRuleApplied => "no_rule_applied",
        NoteCode::UnresolvedSubgraph => "unresolved_subgraph",
    }
}

/// Checks a verdict against `g`: proofs and witnesses must verify, unknown
/// verdicts are accepted as they are.
pub fn verify_verdict(g: &LabeledGraph, v: &Verdict) -> Result<(), Failure> {
    match v {
        Verdict::Coherent(t) => verify_proof(g, t),
        Verdict::Incoherent(w) => verify_witness(g, w),
        Verdict::Unknown(_) => Ok(()),
    }
}

/// Classifier with a shared cache of verdicts on canonical representatives.
/// Safe to share between threads.
#[derive(Debug, Default)]
pub struct Engine {
    config: EngineConfig,
    cache: DashMap<String, Arc<Verdict>>,
}

impl Engine {
    pub fn new(config: EngineConfig) -> Self {
        Engine {
            config,
            cache: DashMap::new(),
        }
    }

    pub fn config(&self) -> &EngineConfig {
        &self.config
    }

    /// Number of cached isomorphism classes.
    pub fn cache_len(&self) -> usize {
        self.cache.len()
    }

    pub fn classify(&self, g: &LabeledGraph) -> Result<Verdict, EngineError> {
        if !detect_flavor(g).has_group() {
            return Err(EngineError::UnsupportedFlavor);
        }
        Ok(self.classify_inner(g))
    }

    fn classify_inner(&self, g: &LabeledGraph) -> Verdict {
        let n = g.vertex_count();
        let cap = self.config.max_search_vertices;
        if n > cap {
            return self.compute(g, None);
        }
        let form = canonical_form(g, cap).expect("within cap");
        let rep_verdict = if self.config.use_cache {
            match self.cache.get(&form.key).map(|v| Arc::clone(v.value())) {
                Some(v) => v,
                None => {
                    let v = Arc::new(self.compute_rep(&form.key));
                    Arc::clone(self.cache.entry(form.key.clone()).or_insert(v).value())
                }
            }
        } else {
            Arc::new(self.compute_rep(&form.key))
        };
        let mut position = vec![0; n];
        for (i, &v) in form.order.iter().enumerate() {
            position[v] = i;
        }
        let map = IdMap::new((0..n).map(|v| (position[v].to_string(), g.id(v).to_string())));
        let mut out = (*rep_verdict).clone();
        out.relabel(&map);
        out
    }

    fn compute_rep(&self, key: &str) -> Verdict {
        let rep = LabeledGraph::from_canonical_key(key).expect("keys decode");
        self.compute(&rep, Some(key))
    }

    fn compute(&self, g: &LabeledGraph, key: Option<&str>) -> Verdict {
        let cfg = &self.config;
        let n = g.vertex_count();
        let flavor = detect_flavor(g);
        let all: Vec<usize> = (0..n).collect();
        let node = |data: RuleData, children: Vec<ProofNode>| ProofNode {
            key: key.map(str::to_string),
            vertices: g.ids(&all),
            data,
            children,
        };

        if flavor.is_raag() && cfg.on(Rule::Droms) {
            return match is_chordal(g) {
                (true, ChordalityEvidence::EliminationOrder(o)) => {
                    Verdict::Coherent(node(RuleData::Droms { peo: g.ids(&o) }, Vec::new()))
                }
                (_, ChordalityEvidence::InducedCycle(c)) => {
                    Verdict::Incoherent(Witness::DromsCycle { cycle: g.ids(&c) })
                }
                (false, ChordalityEvidence::EliminationOrder(_)) => unreachable!(),
            };
        }
        if flavor.artin && cfg.on(Rule::WiseGordon) {
            return match wise_gordon_check(g) {
                Ok(o) => Verdict::Coherent(node(RuleData::WiseGordon { peo: g.ids(&o) }, Vec::new())),
                Err((violation, v)) => Verdict::Incoherent(Witness::WiseGordonViolation {
                    violation,
                    vertices: g.ids(&v),
                }),
            };
        }
        if cfg.join_witness {
            if let Some(w) = witness_join_incoherence(g) {
                return Verdict::Incoherent(w);
            }
        }
        if cfg.on(Rule::Abelian) && g.is_complete() && g.all_labels_two() {
            return Verdict::Coherent(node(RuleData::Abelian, Vec::new()));
        }
        if cfg.on(Rule::Slender) {
            let certificate = is_slender(g);
            if certificate.is_slender() {
                return Verdict::Coherent(node(RuleData::Slender { certificate }, Vec::new()));
            }
        }
        if cfg.on(Rule::McCammondWise)
            && flavor.coxeter
            && g.edges().all(|(_, _, l)| l as usize >= n)
        {
            return Verdict::Coherent(node(RuleData::McCammondWise, Vec::new()));
        }
        if n > cfg.max_search_vertices {
            return Verdict::Unknown(vec![Note {
                code: NoteCode::SearchCapExceeded,
                vertices: g.ids(&all),
            }]);
        }

        let components = g.components();
        if components.len() > 1 {
            if cfg.on(Rule::FreeProduct) {
                return self.free_product(g, &components, node);
            }
        } else if cfg.on(Rule::Amalgam) {
            if let Some(v) = self.amalgam(g, node) {
                return v;
            }
        }
        Verdict::Unknown(vec![unknown_note(g)])
    }

    fn free_product(
        &self,
        g: &LabeledGraph,
        components: &[Vec<usize>],
        node: impl Fn(RuleData, Vec<ProofNode>) -> ProofNode,
    ) -> Verdict {
        let mut children = Vec::new();
        let mut notes = Vec::new();
        for c in components {
            let sub = g.induced_subgraph(c).expect("nonempty");
            match self.classify_inner(&sub) {
                Verdict::Coherent(t) => children.push(t),
                Verdict::Incoherent(w) => return factor_witness(g, c, w),
                Verdict::Unknown(inner) => {
                    notes.push(Note {
                        code: NoteCode::UnresolvedSubgraph,
                        vertices: g.ids(c),
                    });
                    notes.extend(inner);
                }
            }
        }
        if !notes.is_empty() {
            return Verdict::Unknown(notes);
        }
        let components = components.iter().map(|c| g.ids(c)).collect();
        Verdict::Coherent(node(RuleData::FreeProduct { components }, children))
    }

    /// Clique separator first when the graph is chordal, then every split
    /// with a slender separator in enumeration order.
    fn amalgam(
        &self,
        g: &LabeledGraph,
        node: impl Fn(RuleData, Vec<ProofNode>) -> ProofNode,
    ) -> Option<Verdict> {
        if !g.is_complete() && is_chordal(g).0 {
            let split = dirac_split(g).expect("connected chordal non-complete");
            if let Some(v) = self.try_split(g, &split, SplitSource::Dirac, &node) {
                return Some(v);
            }
        }
        let n = g.vertex_count();
        for split in enumerate_separator_splits(g, n.saturating_sub(2)) {
            if let Some(v) = self.try_split(g, &split, SplitSource::Search, &node) {
                return Some(v);
            }
        }
        None
    }

    fn try_split(
        &self,
        g: &LabeledGraph,
        split: &Split,
        source: SplitSource,
        node: &impl Fn(RuleData, Vec<ProofNode>) -> ProofNode,
    ) -> Option<Verdict> {
        let sep = g.induced_subgraph(&split.separator).ok()?;
        let separator_certificate = is_slender(&sep);
        if !separator_certificate.is_slender() {
            return None;
        }
        let mut children = Vec::with_capacity(2);
        for side in [&split.left, &split.right] {
            let sub = g.induced_subgraph(side).expect("nonempty");
            match self.classify_inner(&sub) {
                Verdict::Coherent(t) => children.push(t),
                Verdict::Incoherent(w) => return Some(factor_witness(g, side, w)),
                Verdict::Unknown(_) => return None,
            }
        }
        let data = RuleData::Amalgam {
            split: IdSplit::from_split(g, split),
            separator_certificate,
            source,
        };
        Some(Verdict::Coherent(node(data, children)))
    }
}

fn factor_witness(g: &LabeledGraph, set: &[usize], inner: Witness) -> Verdict {
    let key = g
        .induced_subgraph(set)
        .ok()
        .and_then(|s| canonical_key(&s, DEFAULT_CANONICAL_CAP).ok());
    Verdict::Incoherent(Witness::IncoherentFactor {
        axiom: Axiom::SubgroupClosure,
        vertices: g.ids(set),
        key,
        inner: Box::new(inner),
    })
}

/// Cycle of length at least 5 whose vertex groups are finite of order at
/// least 3 gets its own reason code.
fn unknown_note(g: &LabeledGraph) -> Note {
    let n = g.vertex_count();
    let open = detect_flavor(g).graph_product
        && matches!(shape_classify(g).shape, Shape::Cycle(k) if k >= 5)
        && g.vertices().iter().all(|v| v.group.order().is_some_and(|o| o >= 3));
    if open {
        let mut cycle = vec![0usize];
        let mut prev = usize::MAX;
        while cycle.len() < n {
            let cur = *cycle.last().unwrap();
            let next = g.neighbors(cur).iter().copied().find(|&w| w != prev).unwrap();
            prev = cur;
            cycle.push(next);
        }
        Note {
            code: NoteCode::OpenHyperbolicCycle,
            vertices: g.ids(&cycle),
        }
    } else {
        Note {
            code: NoteCode::NoRuleApplied,
            vertices: g.ids(&(0..n).collect::<Vec<_>>()),
        }
    }
}

/// One-shot classification with a fresh cache.
pub fn classify_coherence(g: &LabeledGraph, config: &EngineConfig) -> Result<Verdict, EngineError> {
    Engine::new(config.clone()).classify(g)
}

#[cfg(test)]
mod tests;
