//! Group-theoretic semantics of a labelled graph.

mod coxeter;
mod presentation;
mod slender;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::LabeledGraph;

pub use coxeter::{
    classify_components, coxeter_matrix, cosine_definiteness, finiteness, graph_product_finiteness,
    is_finite, CoxeterMatrix, Definiteness, Finiteness, IrreducibleType, MOrder,
};
pub use presentation::emit_presentation;
pub use slender::{
    contains_f2_certificate, is_slender, F2Certificate, FactorKind, NotSlenderReason,
    SlenderCertificate, SlenderFactor, Slenderness,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("graph is not a Coxeter graph (every vertex group must be Z/2)")]
    NotCoxeter,
    #[error("edge labels above 2 need all vertex groups Z or all Z/2")]
    UnsupportedFlavor,
}

/// Which of the three group constructions the graph admits. Computed from
/// the labels, never asserted by the user.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Flavor {
    /// Every edge label is 2.
    pub graph_product: bool,
    /// Every vertex group is `Z`.
    pub artin: bool,
    /// Every vertex group is `Z/2`.
    pub coxeter: bool,
}

impl Flavor {
    pub fn is_raag(&self) -> bool {
        self.graph_product && self.artin
    }

    pub fn is_racg(&self) -> bool {
        self.graph_product && self.coxeter
    }

    /// True when some group is attached to the graph.
    pub fn has_group(&self) -> bool {
        self.graph_product || self.artin || self.coxeter
    }

    pub fn tags(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        if self.graph_product {
            out.push("graph_product");
        }
        if self.artin {
            out.push("artin");
        }
        if self.coxeter {
            out.push("coxeter");
        }
        out
    }

    /// Short human name: `racg`, `raag`, `coxeter`, `artin`, `graph_product`
    /// or `none`.
    pub fn name(&self) -> &'static str {
        if self.is_racg() {
            "racg"
        } else if self.is_raag() {
            "raag"
        } else if self.coxeter {
            "coxeter"
        } else if self.artin {
            "artin"
        } else if self.graph_product {
            "graph_product"
        } else {
            "none"
        }
    }
}

pub fn detect_flavor(g: &LabeledGraph) -> Flavor {
    Flavor {
        graph_product: g.all_labels_two(),
        artin: g.vertices().iter().all(|v| v.group.is_z()),
        coxeter: g.vertices().iter().all(|v| v.group.is_z2()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::AbelianGroupLabel;

    #[test]
    fn flavors() {
        let racg = LabeledGraph::racg(3, &[(0, 1), (1, 2)]).unwrap();
        let f = detect_flavor(&racg);
        assert!(f.graph_product && f.coxeter && !f.artin);
        assert!(f.is_racg());

        let artin = LabeledGraph::artin(3, &[(0, 1, 3), (1, 2, 2)]).unwrap();
        let f = detect_flavor(&artin);
        assert_eq!(
            f,
            Flavor {
                graph_product: false,
                artin: true,
                coxeter: false
            }
        );

        let z3 = LabeledGraph::uniform(3, AbelianGroupLabel::cyclic(3), &[(0, 1, 2)]).unwrap();
        let f = detect_flavor(&z3);
        assert_eq!(f.tags(), vec!["graph_product"]);

        let odd = LabeledGraph::uniform(2, AbelianGroupLabel::cyclic(3), &[(0, 1, 3)]).unwrap();
        assert!(!detect_flavor(&odd).has_group());
    }
}
