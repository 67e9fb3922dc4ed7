//! Vertex-edge-labelled simplicial graphs and their structural predicates.

pub(crate) mod canonical;
mod chordal;
mod idmap;
mod label;
mod parse;
mod shape;

use std::collections::{HashMap, VecDeque};

use thiserror::Error;

pub use canonical::{
    canonical_form, canonical_key, CanonicalForm, DEFAULT_CANONICAL_CAP,
};
pub use chordal::{is_chordal, verify_elimination_order, verify_induced_cycle, ChordalityEvidence};
pub use idmap::IdMap;
pub use label::{free_product_contains_f2, AbelianGroupLabel};
pub use parse::{parse_dot, parse_graph, parse_json, to_json, GraphDocument};
pub use shape::{join_factors, shape_classify, Shape, ShapeClass};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("graph must have at least one vertex")]
    Empty,
    #[error("vertex set must be nonempty")]
    EmptyVertexSet,
    #[error("duplicate vertex id `{0}`")]
    DuplicateVertex(String),
    #[error("self-loop at vertex `{0}`")]
    SelfLoop(String),
    #[error("duplicate edge `{0}`--`{1}`")]
    DuplicateEdge(String, String),
    #[error("edge label must be ≥ 2 (edge `{u}`--`{v}` has label {label})")]
    EdgeLabelTooSmall { u: String, v: String, label: i64 },
    #[error("vertex group must be non-trivial")]
    TrivialVertexGroup,
    #[error("torsion entries must be ≥ 2, got {0}")]
    InvalidTorsion(u64),
    #[error("unknown vertex `{0}` referenced by an edge")]
    UnknownVertex(String),
    #[error("vertex `{0}` has no group and the flavor does not fix one")]
    MissingGroup(String),
    #[error("vertex `{id}` has group {group}, which contradicts flavor `{flavor}`")]
    FlavorConflict {
        id: String,
        group: String,
        flavor: String,
    },
    #[error("flavor `graph_product` requires edge label 2 (edge `{0}`--`{1}`)")]
    GraphProductLabel(String, String),
    #[error("cannot parse group `{0}`")]
    InvalidGroupSyntax(String),
    #[error("byte-order mark is not allowed")]
    ByteOrderMark,
    #[error("invalid JSON graph document: {0}")]
    Json(String),
    #[error("invalid DOT input at line {line}: {message}")]
    Dot { line: usize, message: String },
    #[error("malformed canonical key `{0}`")]
    KeyDecode(String),
    #[error("graph has {n} vertices, canonical form cap is {cap}")]
    CanonicalCapExceeded { n: usize, cap: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Vertex {
    pub id: String,
    pub group: AbelianGroupLabel,
}

/// An edge given by vertex ids, used when building graphs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeSpec {
    pub u: String,
    pub v: String,
    pub label: i64,
}

impl EdgeSpec {
    pub fn new(u: impl Into<String>, v: impl Into<String>, label: i64) -> Self {
        EdgeSpec {
            u: u.into(),
            v: v.into(),
            label,
        }
    }
}

/// A finite simplicial graph with a non-trivial abelian group on every vertex
/// and an integer label `≥ 2` on every edge.
///
/// A missing edge carries no relation. Vertices keep their input order; all
/// index-based APIs refer to that order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledGraph {
    vertices: Vec<Vertex>,
    index: HashMap<String, usize>,
    // 0 = no edge
    labels: Vec<u32>,
    neighbors: Vec<Vec<usize>>,
}

impl LabeledGraph {
    pub fn new(vertices: Vec<Vertex>, edges: &[EdgeSpec]) -> Result<Self, GraphError> {
        if vertices.is_empty() {
            return Err(GraphError::Empty);
        }
        let n = vertices.len();
        let mut index = HashMap::with_capacity(n);
        for (i, v) in vertices.iter().enumerate() {
            if index.insert(v.id.clone(), i).is_some() {
                return Err(GraphError::DuplicateVertex(v.id.clone()));
            }
        }
        let mut graph = LabeledGraph {
            vertices,
            index,
            labels: vec![0; n * n],
            neighbors: vec![Vec::new(); n],
        };
        for e in edges {
            let u = graph.require(&e.u)?;
            let v = graph.require(&e.v)?;
            if u == v {
                return Err(GraphError::SelfLoop(e.u.clone()));
            }
            if graph.labels[u * n + v] != 0 {
                return Err(GraphError::DuplicateEdge(e.u.clone(), e.v.clone()));
            }
            if e.label < 2 || e.label > u32::MAX as i64 {
                return Err(GraphError::EdgeLabelTooSmall {
                    u: e.u.clone(),
                    v: e.v.clone(),
                    label: e.label,
                });
            }
            graph.set_edge(u, v, e.label as u32);
        }
        for nb in &mut graph.neighbors {
            nb.sort_unstable();
        }
        Ok(graph)
    }

    /// Builds a graph from vertex groups and index-based edges `(u, v, label)`,
    /// naming vertices by `id(i)`.
    pub fn from_indexed(
        groups: Vec<AbelianGroupLabel>,
        edges: &[(usize, usize, u32)],
        id: impl Fn(usize) -> String,
    ) -> Result<Self, GraphError> {
        let vertices: Vec<Vertex> = groups
            .into_iter()
            .enumerate()
            .map(|(i, group)| Vertex { id: id(i), group })
            .collect();
        let specs: Vec<EdgeSpec> = edges
            .iter()
            .map(|&(u, v, l)| {
                let name = |i: usize| {
                    vertices
                        .get(i)
                        .map(|v| v.id.clone())
                        .unwrap_or_else(|| format!("#{i}"))
                };
                EdgeSpec::new(name(u), name(v), l as i64)
            })
            .collect();
        LabeledGraph::new(vertices, &specs)
    }

    /// Uniform vertex group on `n` vertices named `0..n`.
    pub fn uniform(
        n: usize,
        group: AbelianGroupLabel,
        edges: &[(usize, usize, u32)],
    ) -> Result<Self, GraphError> {
        Self::from_indexed(vec![group; n], edges, |i| i.to_string())
    }

    /// Coxeter graph (all vertex groups `Z/2`) on vertices `0..n`.
    pub fn coxeter(n: usize, edges: &[(usize, usize, u32)]) -> Result<Self, GraphError> {
        Self::uniform(n, AbelianGroupLabel::z2(), edges)
    }

    /// Right-angled Coxeter graph on vertices `0..n`.
    pub fn racg(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let e: Vec<_> = edges.iter().map(|&(u, v)| (u, v, 2)).collect();
        Self::coxeter(n, &e)
    }

    /// Artin graph (all vertex groups `Z`) on vertices `0..n`.
    pub fn artin(n: usize, edges: &[(usize, usize, u32)]) -> Result<Self, GraphError> {
        Self::uniform(n, AbelianGroupLabel::z(), edges)
    }

    fn require(&self, id: &str) -> Result<usize, GraphError> {
        self.index
            .get(id)
            .copied()
            .ok_or_else(|| GraphError::UnknownVertex(id.to_string()))
    }

    fn set_edge(&mut self, u: usize, v: usize, label: u32) {
        let n = self.vertices.len();
        self.labels[u * n + v] = label;
        self.labels[v * n + u] = label;
        self.neighbors[u].push(v);
        self.neighbors[v].push(u);
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.neighbors.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn id(&self, v: usize) -> &str {
        &self.vertices[v].id
    }

    pub fn ids(&self, set: &[usize]) -> Vec<String> {
        set.iter().map(|&v| self.id(v).to_string()).collect()
    }

    pub fn group(&self, v: usize) -> &AbelianGroupLabel {
        &self.vertices[v].group
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.index.get(id).copied()
    }

    /// Resolves a list of ids to sorted indices.
    pub fn indices_of<S: AsRef<str>>(&self, ids: &[S]) -> Result<Vec<usize>, GraphError> {
        let mut out = ids
            .iter()
            .map(|id| self.require(id.as_ref()))
            .collect::<Result<Vec<_>, _>>()?;
        out.sort_unstable();
        Ok(out)
    }

    /// Edge label between `u` and `v`, `None` for non-edges (and `u == v`).
    pub fn label(&self, u: usize, v: usize) -> Option<u32> {
        match self.labels[u * self.vertices.len() + v] {
            0 => None,
            l => Some(l),
        }
    }

    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.label(u, v).is_some()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.neighbors[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.neighbors[v].len()
    }

    /// Edges `(u, v, label)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, u32)> + '_ {
        (0..self.vertex_count()).flat_map(move |u| {
            self.neighbors[u]
                .iter()
                .filter(move |&&v| v > u)
                .map(move |&v| (u, v, self.labels[u * self.vertices.len() + v]))
        })
    }

    pub fn is_complete(&self) -> bool {
        let n = self.vertex_count();
        self.neighbors.iter().all(|nb| nb.len() == n - 1)
    }

    pub fn is_clique(&self, set: &[usize]) -> bool {
        set.iter()
            .enumerate()
            .all(|(i, &u)| set[i + 1..].iter().all(|&v| self.adjacent(u, v)))
    }

    pub fn is_independent(&self, set: &[usize]) -> bool {
        set.iter()
            .enumerate()
            .all(|(i, &u)| set[i + 1..].iter().all(|&v| !self.adjacent(u, v)))
    }

    pub fn all_labels_two(&self) -> bool {
        self.edges().all(|(_, _, l)| l == 2)
    }

    /// Subgraph induced by the vertex indices in `set`; vertex order follows
    /// the original graph and ids are kept.
    pub fn induced_subgraph(&self, set: &[usize]) -> Result<LabeledGraph, GraphError> {
        if set.is_empty() {
            return Err(GraphError::EmptyVertexSet);
        }
        let mut sorted = set.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        let n = sorted.len();
        let vertices: Vec<Vertex> = sorted.iter().map(|&v| self.vertices[v].clone()).collect();
        let index = vertices
            .iter()
            .enumerate()
            .map(|(i, v)| (v.id.clone(), i))
            .collect();
        let mut sub = LabeledGraph {
            vertices,
            index,
            labels: vec![0; n * n],
            neighbors: vec![Vec::new(); n],
        };
        for (i, &u) in sorted.iter().enumerate() {
            for (j, &v) in sorted.iter().enumerate().skip(i + 1) {
                if let Some(l) = self.label(u, v) {
                    sub.set_edge(i, j, l);
                }
            }
        }
        Ok(sub)
    }

    /// Subgraph induced by the vertices with the given ids.
    pub fn induced_by_ids<S: AsRef<str>>(&self, ids: &[S]) -> Result<LabeledGraph, GraphError> {
        let set = self.indices_of(ids)?;
        self.induced_subgraph(&set)
    }

    /// The same graph with vertices reordered: vertex `order[i]` becomes
    /// vertex `i`, renamed to `rename(i)`.
    pub fn reorder(&self, order: &[usize], rename: impl Fn(usize) -> String) -> LabeledGraph {
        let n = self.vertex_count();
        assert_eq!(order.len(), n);
        let mut position = vec![usize::MAX; n];
        for (i, &v) in order.iter().enumerate() {
            position[v] = i;
        }
        let groups = order.iter().map(|&v| self.group(v).clone()).collect();
        let edges: Vec<_> = self
            .edges()
            .map(|(u, v, l)| (position[u], position[v], l))
            .collect();
        Self::from_indexed(groups, &edges, rename).expect("reordering preserves validity")
    }

    /// Connected components as sorted index lists, ordered by smallest member.
    pub fn components(&self) -> Vec<Vec<usize>> {
        self.components_avoiding(&vec![false; self.vertex_count()])
    }

    /// Components of the graph with the `removed` vertices deleted.
    pub fn components_avoiding(&self, removed: &[bool]) -> Vec<Vec<usize>> {
        let n = self.vertex_count();
        let mut seen = removed.to_vec();
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut comp = vec![start];
            let mut queue = VecDeque::from([start]);
            while let Some(u) = queue.pop_front() {
                for &w in &self.neighbors[u] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        queue.push_back(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() == 1
    }

    /// Shortest path from `from` to `to` inside the vertices where `allowed`
    /// is true (both endpoints must be allowed).
    pub fn shortest_path_within(&self, from: usize, to: usize, allowed: &[bool]) -> Option<Vec<usize>> {
        let n = self.vertex_count();
        let mut parent = vec![usize::MAX; n];
        parent[from] = from;
        let mut queue = VecDeque::from([from]);
        while let Some(u) = queue.pop_front() {
            if u == to {
                let mut path = vec![to];
                let mut cur = to;
                while cur != from {
                    cur = parent[cur];
                    path.push(cur);
                }
                path.reverse();
                return Some(path);
            }
            for &w in &self.neighbors[u] {
                if allowed[w] && parent[w] == usize::MAX {
                    parent[w] = u;
                    queue.push_back(w);
                }
            }
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> LabeledGraph {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        LabeledGraph::racg(n, &edges).unwrap()
    }

    #[test]
    fn validation_errors_are_distinct() {
        let z2 = || Vertex {
            id: "a".into(),
            group: AbelianGroupLabel::z2(),
        };
        let b = Vertex {
            id: "b".into(),
            group: AbelianGroupLabel::z2(),
        };
        assert_eq!(
            LabeledGraph::new(vec![z2(), b.clone()], &[EdgeSpec::new("a", "a", 2)]),
            Err(GraphError::SelfLoop("a".into()))
        );
        assert_eq!(
            LabeledGraph::new(
                vec![z2(), b.clone()],
                &[EdgeSpec::new("a", "b", 2), EdgeSpec::new("b", "a", 3)]
            ),
            Err(GraphError::DuplicateEdge("b".into(), "a".into()))
        );
        assert!(matches!(
            LabeledGraph::new(vec![z2(), b.clone()], &[EdgeSpec::new("a", "b", 1)]),
            Err(GraphError::EdgeLabelTooSmall { label: 1, .. })
        ));
        assert_eq!(
            LabeledGraph::new(vec![z2(), b], &[EdgeSpec::new("a", "c", 2)]),
            Err(GraphError::UnknownVertex("c".into()))
        );
        assert_eq!(LabeledGraph::new(vec![], &[]), Err(GraphError::Empty));
        assert_eq!(
            LabeledGraph::new(vec![z2(), z2()], &[]),
            Err(GraphError::DuplicateVertex("a".into()))
        );
    }

    #[test]
    fn induced_subgraph_of_cycle_is_path() {
        let c5 = cycle(5);
        let p = c5.induced_subgraph(&[0, 1, 2]).unwrap();
        assert_eq!(p.vertex_count(), 3);
        assert_eq!(p.edges().collect::<Vec<_>>(), vec![(0, 1, 2), (1, 2, 2)]);
        assert_eq!(c5.induced_subgraph(&[0, 1, 2, 3, 4]).unwrap(), c5);
        assert_eq!(c5.induced_subgraph(&[]), Err(GraphError::EmptyVertexSet));
    }

    #[test]
    fn induced_subgraph_keeps_ids_and_labels() {
        let g = LabeledGraph::coxeter(3, &[(0, 1, 5), (1, 2, 3)]).unwrap();
        let s = g.induced_by_ids(&["2", "1"]).unwrap();
        assert_eq!(s.id(0), "1");
        assert_eq!(s.label(0, 1), Some(3));
    }

    #[test]
    fn components_and_connectivity() {
        let g = LabeledGraph::racg(6, &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)]).unwrap();
        assert_eq!(g.components(), vec![vec![0, 1, 2], vec![3, 4, 5]]);
        assert!(!g.is_connected());
        assert!(cycle(4).is_connected());
    }

    #[test]
    fn reorder_moves_edges() {
        let g = LabeledGraph::coxeter(3, &[(0, 1, 4)]).unwrap();
        let r = g.reorder(&[2, 1, 0], |i| format!("x{i}"));
        assert_eq!(r.label(1, 2), Some(4));
        assert_eq!(r.id(0), "x0");
    }
}
