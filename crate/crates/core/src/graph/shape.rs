use serde::{Deserialize, Serialize};

use super::LabeledGraph;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "tag", content = "n")]
pub enum Shape {
    Discrete,
    Complete,
    Tree,
    /// Path with the given number of edges.
    Path(usize),
    /// Cycle with the given number of vertices.
    Cycle(usize),
    Other,
}

/// The most specific shape plus the flags that overlap with it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShapeClass {
    pub shape: Shape,
    pub discrete: bool,
    pub tree: bool,
}

pub fn shape_classify(g: &LabeledGraph) -> ShapeClass {
    let n = g.vertex_count();
    let m = g.edge_count();
    let connected = g.is_connected();
    let discrete = m == 0;
    let tree = connected && m + 1 == n;
    let max_degree = (0..n).map(|v| g.degree(v)).max().unwrap_or(0);

    let shape = if g.is_complete() {
        Shape::Complete
    } else if discrete {
        Shape::Discrete
    } else if tree && max_degree <= 2 {
        Shape::Path(n - 1)
    } else if connected && n >= 4 && (0..n).all(|v| g.degree(v) == 2) {
        Shape::Cycle(n)
    } else if tree {
        Shape::Tree
    } else {
        Shape::Other
    };
    ShapeClass {
        shape,
        discrete,
        tree,
    }
}

/// Splits the vertices into the classes of the direct-product decomposition:
/// connected components of the graph joining two vertices when they are
/// non-adjacent or joined by a label `≥ 3`. Vertices in different classes are
/// always joined by an edge labelled 2.
pub fn join_factors(g: &LabeledGraph) -> Vec<Vec<usize>> {
    let n = g.vertex_count();
    let mut class = vec![usize::MAX; n];
    let mut out: Vec<Vec<usize>> = Vec::new();
    for start in 0..n {
        if class[start] != usize::MAX {
            continue;
        }
        let id = out.len();
        class[start] = id;
        let mut members = vec![start];
        let mut stack = vec![start];
        while let Some(u) = stack.pop() {
            for w in 0..n {
                if w != u && class[w] == usize::MAX && g.label(u, w) != Some(2) {
                    class[w] = id;
                    members.push(w);
                    stack.push(w);
                }
            }
        }
        members.sort_unstable();
        out.push(members);
    }
    out
}
