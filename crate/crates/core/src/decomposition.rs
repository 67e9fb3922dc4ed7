//! Graph splittings that induce free products and amalgams.
//!
//! A [`Split`] of `Γ` into induced subgraphs `Γ₁ ∪ Γ₂` with no edge between
//! `Γ₁ ∖ Γ₂` and `Γ₂ ∖ Γ₁` presents the group of `Γ` as the amalgam of the
//! groups of the two sides over the group of the separator `Γ₁ ∩ Γ₂`.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{is_chordal, LabeledGraph};

/// Two proper induced sides and their intersection, as sorted vertex
/// indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Split {
    pub left: Vec<usize>,
    pub right: Vec<usize>,
    pub separator: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SplitViolation {
    #[error("vertex {0} is out of range")]
    OutOfRange(usize),
    #[error("sides do not cover the graph")]
    NotCovering,
    #[error("separator is not the intersection of the sides")]
    WrongIntersection,
    #[error("a side is the whole graph")]
    NotProper,
    #[error("edge {0}--{1} crosses the separator")]
    CrossingEdge(usize, usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecompositionError {
    #[error("graph is complete")]
    Complete,
    #[error("graph is disconnected")]
    Disconnected,
    #[error("graph is not chordal")]
    NotChordal,
}

impl Split {
    /// Builds a split from a separator and the vertices on the left of it
    /// (excluding the separator).
    fn from_parts(n: usize, separator: &[usize], left_only: &[usize]) -> Split {
        let mut side = vec![0u8; n];
        for &s in separator {
            side[s] = 3;
        }
        for &v in left_only {
            side[v] = 1;
        }
        let left = (0..n).filter(|&v| side[v] & 1 == 1).collect();
        let right = (0..n).filter(|&v| side[v] != 1).collect();
        let mut separator = separator.to_vec();
        separator.sort_unstable();
        Split {
            left,
            right,
            separator,
        }
    }

    /// Checks the covering, intersection, properness and no-crossing-edge
    /// conditions against `g`.
    pub fn check(&self, g: &LabeledGraph) -> Result<(), SplitViolation> {
        let n = g.vertex_count();
        let mut in_left = vec![false; n];
        let mut in_right = vec![false; n];
        let mut in_sep = vec![false; n];
        for (set, mark) in [
            (&self.left, &mut in_left),
            (&self.right, &mut in_right),
            (&self.separator, &mut in_sep),
        ] {
            for &v in set.iter() {
                if v >= n {
                    return Err(SplitViolation::OutOfRange(v));
                }
                mark[v] = true;
            }
        }
        if (0..n).any(|v| !in_left[v] && !in_right[v]) {
            return Err(SplitViolation::NotCovering);
        }
        if (0..n).any(|v| (in_left[v] && in_right[v]) != in_sep[v]) {
            return Err(SplitViolation::WrongIntersection);
        }
        if in_left.iter().all(|&b| b) || in_right.iter().all(|&b| b) {
            return Err(SplitViolation::NotProper);
        }
        for (u, v, _) in g.edges() {
            let left_only = |x: usize| in_left[x] && !in_sep[x];
            let right_only = |x: usize| in_right[x] && !in_sep[x];
            if (left_only(u) && right_only(v)) || (right_only(u) && left_only(v)) {
                return Err(SplitViolation::CrossingEdge(u, v));
            }
        }
        Ok(())
    }
}

/// Connected components; the group is the free product of their groups.
pub fn free_split(g: &LabeledGraph) -> Vec<Vec<usize>> {
    g.components()
}

/// Splits a connected, non-complete chordal graph along a minimal separator,
/// which is then a clique.
pub fn dirac_split(g: &LabeledGraph) -> Result<Split, DecompositionError> {
    if g.is_complete() {
        return Err(DecompositionError::Complete);
    }
    if !g.is_connected() {
        return Err(DecompositionError::Disconnected);
    }
    if !is_chordal(g).0 {
        return Err(DecompositionError::NotChordal);
    }
    Ok(minimal_separator_split(g))
}

/// Split along the minimal separator between the first non-universal vertex
/// `a` and its first non-neighbour `b`.
fn minimal_separator_split(g: &LabeledGraph) -> Split {
    let n = g.vertex_count();
    let a = (0..n)
        .find(|&v| g.degree(v) < n - 1)
        .expect("non-complete graph has a non-universal vertex");
    let b = (0..n)
        .find(|&v| v != a && !g.adjacent(a, v))
        .expect("non-universal vertex has a non-neighbour");

    let mut removed = vec![false; n];
    for &w in g.neighbors(a) {
        removed[w] = true;
    }
    let comp_b = g
        .components_avoiding(&removed)
        .into_iter()
        .find(|c| c.contains(&b))
        .expect("b survives removal of a's neighbourhood");
    let mut in_comp_b = vec![false; n];
    for &v in &comp_b {
        in_comp_b[v] = true;
    }
    let separator: Vec<usize> = g
        .neighbors(a)
        .iter()
        .copied()
        .filter(|&s| g.neighbors(s).iter().any(|&w| in_comp_b[w]))
        .collect();

    let mut removed = vec![false; n];
    for &s in &separator {
        removed[s] = true;
    }
    let comp_a = g
        .components_avoiding(&removed)
        .into_iter()
        .find(|c| c.contains(&a))
        .expect("a survives removal of the separator");
    Split::from_parts(n, &separator, &comp_a)
}

/// Components with more members than this only produce one-vs-rest splits.
pub const MAX_BIPARTITION_COMPONENTS: usize = 6;

/// Lazily enumerates every split whose separator has at most `max_sep`
/// vertices, by separator size and then lexicographically. For each
/// separator the single-component lefts come first, then larger unions of
/// components (only when there are at most
/// [`MAX_BIPARTITION_COMPONENTS`] components).
pub fn enumerate_separator_splits(g: &LabeledGraph, max_sep: usize) -> SeparatorSplits<'_> {
    let n = g.vertex_count();
    let max_sep = max_sep.min(n.saturating_sub(2));
    SeparatorSplits {
        g,
        max_sep,
        combo: if max_sep >= 1 { Some(vec![0]) } else { None },
        pending: VecDeque::new(),
    }
}

pub struct SeparatorSplits<'a> {
    g: &'a LabeledGraph,
    max_sep: usize,
    combo: Option<Vec<usize>>,
    pending: VecDeque<Split>,
}

impl SeparatorSplits<'_> {
    fn advance_combo(&mut self) {
        let n = self.g.vertex_count();
        let Some(c) = self.combo.as_mut() else { return };
        let k = c.len();
        let mut i = k;
        while i > 0 {
            i -= 1;
            if c[i] < n - k + i {
                c[i] += 1;
                for j in i + 1..k {
                    c[j] = c[j - 1] + 1;
                }
                return;
            }
        }
        if k < self.max_sep {
            *c = (0..k + 1).collect();
        } else {
            self.combo = None;
        }
    }

    fn expand(&mut self, separator: &[usize]) {
        let n = self.g.vertex_count();
        let mut removed = vec![false; n];
        for &s in separator {
            removed[s] = true;
        }
        let comps = self.g.components_avoiding(&removed);
        let k = comps.len();
        if k < 2 {
            return;
        }
        let mut groups: Vec<Vec<usize>> = if k <= MAX_BIPARTITION_COMPONENTS {
            (1u32..(1 << k) - 1)
                .map(|m| (0..k).filter(|i| m >> i & 1 == 1).collect())
                .collect()
        } else {
            (0..k).map(|i| vec![i]).collect()
        };
        groups.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        for chosen in groups {
            let left_only: Vec<usize> = chosen
                .iter()
                .flat_map(|&i| comps[i].iter().copied())
                .collect();
            self.pending
                .push_back(Split::from_parts(n, separator, &left_only));
        }
    }
}

impl Iterator for SeparatorSplits<'_> {
    type Item = Split;

    fn next(&mut self) -> Option<Split> {
        loop {
            if let Some(s) = self.pending.pop_front() {
                return Some(s);
            }
            let separator = self.combo.clone()?;
            self.advance_combo();
            self.expand(&separator);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> LabeledGraph {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        LabeledGraph::racg(n, &edges).unwrap()
    }

    fn complete(n: usize) -> LabeledGraph {
        let edges: Vec<_> = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .collect();
        LabeledGraph::racg(n, &edges).unwrap()
    }

    #[test]
    fn free_split_counts_components() {
        let g = LabeledGraph::artin(4, &[]).unwrap();
        assert_eq!(free_split(&g).len(), 4);
        assert_eq!(free_split(&cycle(5)), vec![vec![0, 1, 2, 3, 4]]);
        let two = LabeledGraph::racg(6, &[(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]).unwrap();
        assert_eq!(free_split(&two), vec![vec![0, 1, 2], vec![3, 4, 5]]);
    }

    #[test]
    fn dirac_split_of_path_uses_middle_vertex() {
        let p = LabeledGraph::racg(3, &[(0, 1), (1, 2)]).unwrap();
        let s = dirac_split(&p).unwrap();
        assert_eq!(s.separator, vec![1]);
        assert_eq!(s.left, vec![0, 1]);
        assert_eq!(s.right, vec![1, 2]);
        s.check(&p).unwrap();
    }

    #[test]
    fn dirac_split_of_two_triangles_sharing_an_edge() {
        // triangle 0-1-2 with apex 3 over edge 1-2
        let g = LabeledGraph::racg(4, &[(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)]).unwrap();
        let s = dirac_split(&g).unwrap();
        assert_eq!(s.separator, vec![1, 2]);
        assert!(g.is_clique(&s.separator));
        s.check(&g).unwrap();
    }

    #[test]
    fn dirac_split_preconditions() {
        assert_eq!(dirac_split(&complete(3)), Err(DecompositionError::Complete));
        assert_eq!(
            dirac_split(&LabeledGraph::racg(2, &[]).unwrap()),
            Err(DecompositionError::Disconnected)
        );
        assert_eq!(dirac_split(&cycle(4)), Err(DecompositionError::NotChordal));
    }

    #[test]
    fn five_cycle_splits_into_two_paths() {
        let c5 = cycle(5);
        let found = enumerate_separator_splits(&c5, 2).any(|s| {
            s.separator.len() == 2
                && !c5.adjacent(s.separator[0], s.separator[1])
                && crate::graph::shape_classify(&c5.induced_subgraph(&s.left).unwrap()).tree
                && crate::graph::shape_classify(&c5.induced_subgraph(&s.right).unwrap()).tree
        });
        assert!(found);
    }

    #[test]
    fn complete_graph_has_no_separators() {
        assert_eq!(enumerate_separator_splits(&complete(5), 4).count(), 0);
    }

    #[test]
    fn four_cycle_separators_are_opposite_pairs() {
        let c4 = cycle(4);
        let mut seps: Vec<Vec<usize>> = enumerate_separator_splits(&c4, 2)
            .map(|s| s.separator)
            .collect();
        seps.dedup();
        assert_eq!(seps, vec![vec![0, 2], vec![1, 3]]);
        // brute force over all subsets of size ≤ 2
        let mut brute = Vec::new();
        for mask in 1u32..16 {
            if mask.count_ones() > 2 {
                continue;
            }
            let removed: Vec<bool> = (0..4).map(|v| mask >> v & 1 == 1).collect();
            if c4.components_avoiding(&removed).len() >= 2 {
                brute.push((0..4).filter(|&v| removed[v]).collect::<Vec<_>>());
            }
        }
        brute.sort();
        assert_eq!(seps, brute);
    }

    #[test]
    fn splits_are_valid_and_deduplicated() {
        let g = LabeledGraph::racg(
            7,
            &[(0, 1), (0, 2), (0, 3), (1, 4), (2, 5), (3, 6), (4, 5)],
        )
        .unwrap();
        let splits: Vec<Split> = enumerate_separator_splits(&g, 6).collect();
        assert!(!splits.is_empty());
        let mut keys = std::collections::HashSet::new();
        for s in &splits {
            s.check(&g).unwrap();
            assert!(keys.insert((s.separator.clone(), s.left.clone())));
        }
        let sizes: Vec<usize> = splits.iter().map(|s| s.separator.len()).collect();
        assert!(sizes.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn tampered_split_is_rejected() {
        let p = LabeledGraph::racg(3, &[(0, 1), (1, 2)]).unwrap();
        let mut s = dirac_split(&p).unwrap();
        s.separator = vec![0];
        assert!(s.check(&p).is_err());
        let bad = Split {
            left: vec![0, 1],
            right: vec![0, 2],
            separator: vec![0],
        };
        assert_eq!(bad.check(&p), Err(SplitViolation::CrossingEdge(1, 2)));
    }
}
