use serde::{Deserialize, Serialize};

use crate::decomposition::Split;
use crate::graph::{GraphError, IdMap, LabeledGraph};
use crate::group::{F2Certificate, SlenderCertificate};

/// Rule identifiers. They double as the names accepted by
/// [`EngineConfig::disabled`](super::EngineConfig).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Rule {
    Droms,
    WiseGordon,
    Abelian,
    Slender,
    McCammondWise,
    FreeProduct,
    Amalgam,
}

impl Rule {
    pub fn name(self) -> &'static str {
        match self {
            Rule::Droms => "droms",
            Rule::WiseGordon => "wise_gordon",
            Rule::Abelian => "abelian",
            Rule::Slender => "slender",
            Rule::McCammondWise => "mccammond_wise",
            Rule::FreeProduct => "free_product",
            Rule::Amalgam => "amalgam",
        }
    }
}

/// A split written with vertex ids.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdSplit {
    pub left: Vec<String>,
    pub right: Vec<String>,
    pub separator: Vec<String>,
}

impl IdSplit {
    pub fn from_split(g: &LabeledGraph, s: &Split) -> Self {
        IdSplit {
            left: g.ids(&s.left),
            right: g.ids(&s.right),
            separator: g.ids(&s.separator),
        }
    }

    pub fn to_split(&self, g: &LabeledGraph) -> Result<Split, GraphError> {
        Ok(Split {
            left: g.indices_of(&self.left)?,
            right: g.indices_of(&self.right)?,
            separator: g.indices_of(&self.separator)?,
        })
    }

    fn relabel(&mut self, map: &IdMap) {
        map.set(&mut self.left);
        map.set(&mut self.right);
        map.set(&mut self.separator);
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SplitSource {
    /// Clique separator of a chordal graph.
    Dirac,
    /// Found by the separator search.
    Search,
}

/// Rule name plus the evidence its premise needs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "rule", content = "data")]
pub enum RuleData {
    Droms {
        peo: Vec<String>,
    },
    WiseGordon {
        peo: Vec<String>,
    },
    Abelian,
    Slender {
        certificate: SlenderCertificate,
    },
    McCammondWise,
    FreeProduct {
        components: Vec<Vec<String>>,
    },
    Amalgam {
        split: IdSplit,
        separator_certificate: SlenderCertificate,
        source: SplitSource,
    },
}

impl RuleData {
    pub fn rule(&self) -> Rule {
        match self {
            RuleData::Droms { .. } => Rule::Droms,
            RuleData::WiseGordon { .. } => Rule::WiseGordon,
            RuleData::Abelian => Rule::Abelian,
            RuleData::Slender { .. } => Rule::Slender,
            RuleData::McCammondWise => Rule::McCammondWise,
            RuleData::FreeProduct { .. } => Rule::FreeProduct,
            RuleData::Amalgam { .. } => Rule::Amalgam,
        }
    }

    fn relabel(&mut self, map: &IdMap) {
        match self {
            RuleData::Droms { peo } | RuleData::WiseGordon { peo } => map.seq(peo),
            RuleData::Abelian | RuleData::McCammondWise => {}
            RuleData::Slender { certificate } => certificate.relabel(map),
            RuleData::FreeProduct { components } => {
                components.iter_mut().for_each(|c| map.set(c));
            }
            RuleData::Amalgam {
                split,
                separator_certificate,
                ..
            } => {
                split.relabel(map);
                separator_certificate.relabel(map);
            }
        }
    }
}

/// One rule application. `vertices` names the subgraph the node is about,
/// and `key` is its canonical key when it was within the canonical cap.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProofNode {
    pub key: Option<String>,
    pub vertices: Vec<String>,
    #[serde(flatten)]
    pub data: RuleData,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub children: Vec<ProofNode>,
}

impl ProofNode {
    pub fn rule(&self) -> Rule {
        self.data.rule()
    }

    /// Number of nodes in the tree.
    pub fn size(&self) -> usize {
        1 + self.children.iter().map(ProofNode::size).sum::<usize>()
    }

    pub fn relabel(&mut self, map: &IdMap) {
        // Components and their proofs move together into target order.
        if let RuleData::FreeProduct { components } = &mut self.data {
            let rank = |c: &Vec<String>| c.iter().filter_map(|s| map.position(s)).min();
            let mut paired: Vec<(Vec<String>, ProofNode)> =
                std::mem::take(components).into_iter().zip(std::mem::take(&mut self.children)).collect();
            paired.sort_by_key(|(c, _)| rank(c));
            (*components, self.children) = paired.into_iter().unzip();
        }
        map.set(&mut self.vertices);
        self.data.relabel(map);
        for c in &mut self.children {
            c.relabel(map);
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WiseGordonKind {
    /// Induced cycle of length at least 4.
    LongCycle,
    /// Clique on 3 or 4 vertices with two labels above 2.
    Clique,
    /// `x, y, p, q` with `m(x, y) > 2`, `p, q` non-adjacent, and all four
    /// other pairs joined by label 2.
    ForbiddenSquare,
}

/// Named axiom behind [`Witness::IncoherentFactor`]: a finitely generated
/// subgroup of a parabolic subgroup is one of the whole group.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Axiom {
    SubgroupClosure,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum Witness {
    /// `G(A) × G(B)` is a parabolic subgroup and each factor contains `F₂`,
    /// so `F₂ × F₂` embeds.
    JoinEmbedding {
        side_a: Vec<String>,
        side_b: Vec<String>,
        cert_a: F2Certificate,
        cert_b: F2Certificate,
    },
    /// Induced cycle of length at least 4 in a right-angled Artin graph.
    DromsCycle { cycle: Vec<String> },
    WiseGordonViolation {
        violation: WiseGordonKind,
        vertices: Vec<String>,
    },
    /// The parabolic subgroup on `vertices` is incoherent.
    IncoherentFactor {
        axiom: Axiom,
        vertices: Vec<String>,
        key: Option<String>,
        inner: Box<Witness>,
    },
}

impl Witness {
    pub fn relabel(&mut self, map: &IdMap) {
        match self {
            Witness::JoinEmbedding {
                side_a,
                side_b,
                cert_a,
                cert_b,
            } => {
                map.set(side_a);
                map.set(side_b);
                cert_a.relabel(map);
                cert_b.relabel(map);
            }
            Witness::DromsCycle { cycle } => map.seq(cycle),
            Witness::WiseGordonViolation {
                violation,
                vertices,
            } => match violation {
                WiseGordonKind::Clique => map.set(vertices),
                _ => map.seq(vertices),
            },
            Witness::IncoherentFactor {
                vertices, inner, ..
            } => {
                map.set(vertices);
                inner.relabel(map);
            }
        }
    }

    /// The innermost witness, past any subgroup-closure steps.
    pub fn core(&self) -> &Witness {
        match self {
            Witness::IncoherentFactor { inner, .. } => inner.core(),
            w => w,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NoteCode {
    /// Cycle of length at least 5 with finite vertex groups of order at
    /// least 3: hyperbolic, so no `F₂ × F₂`, and coherence is open.
    OpenHyperbolicCycle,
    /// The graph exceeds the search cap; only the non-recursive rules ran.
    SearchCapExceeded,
    /// No rule produced a verdict.
    NoRuleApplied,
    /// A subgraph the decomposition needs was left unresolved; its own
    /// notes follow.
    UnresolvedSubgraph,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Note {
    pub code: NoteCode,
    pub vertices: Vec<String>,
}

impl Note {
    pub fn relabel(&mut self, map: &IdMap) {
        match self.code {
            NoteCode::OpenHyperbolicCycle => map.seq(&mut self.vertices),
            _ => map.set(&mut self.vertices),
        }
    }
}
