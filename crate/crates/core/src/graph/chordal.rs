//! Chordality via lexicographic breadth-first search.

use serde::{Deserialize, Serialize};

use super::LabeledGraph;

/// Evidence returned by [`is_chordal`]; it is always checkable on its own.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ChordalityEvidence {
    /// A perfect elimination ordering: every vertex's later neighbours form
    /// a clique.
    EliminationOrder(Vec<usize>),
    /// A chordless cycle of length at least four, in cycle order.
    InducedCycle(Vec<usize>),
}

impl ChordalityEvidence {
    pub fn verify(&self, g: &LabeledGraph) -> bool {
        match self {
            ChordalityEvidence::EliminationOrder(order) => verify_elimination_order(g, order).is_ok(),
            ChordalityEvidence::InducedCycle(cycle) => verify_induced_cycle(g, cycle),
        }
    }
}

/// Lexicographic BFS visiting order. Ties are broken by the smallest index.
fn lex_bfs(g: &LabeledGraph) -> Vec<usize> {
    let n = g.vertex_count();
    let mut labels: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut visited = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for step in 0..n {
        let next = (0..n)
            .filter(|&v| !visited[v])
            .fold(None::<usize>, |best, v| match best {
                Some(b) if labels[b] >= labels[v] => Some(b),
                _ => Some(v),
            })
            .expect("unvisited vertex remains");
        visited[next] = true;
        order.push(next);
        for &w in g.neighbors(next) {
            if !visited[w] {
                labels[w].push(n - step);
            }
        }
    }
    order
}

/// Checks the perfect-elimination property. On failure returns a vertex `v`
/// together with two of its later neighbours that are not adjacent.
pub fn verify_elimination_order(
    g: &LabeledGraph,
    order: &[usize],
) -> Result<(), (usize, usize, usize)> {
    let n = g.vertex_count();
    let mut pos = vec![usize::MAX; n];
    for (i, &v) in order.iter().enumerate() {
        if v >= n || pos[v] != usize::MAX {
            return Err((v, v, v));
        }
        pos[v] = i;
    }
    if order.len() != n {
        return Err((0, 0, 0));
    }
    for &v in order {
        let later: Vec<usize> = g
            .neighbors(v)
            .iter()
            .copied()
            .filter(|&w| pos[w] > pos[v])
            .collect();
        for (i, &a) in later.iter().enumerate() {
            for &b in &later[i + 1..] {
                if !g.adjacent(a, b) {
                    return Err((v, a, b));
                }
            }
        }
    }
    Ok(())
}

/// True if `cycle` lists at least four distinct vertices forming a chordless
/// cycle in the given order.
pub fn verify_induced_cycle(g: &LabeledGraph, cycle: &[usize]) -> bool {
    let k = cycle.len();
    if k < 4 || cycle.iter().any(|&v| v >= g.vertex_count()) {
        return false;
    }
    let mut sorted = cycle.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != k {
        return false;
    }
    for i in 0..k {
        for j in i + 1..k {
            let consecutive = j == i + 1 || (i == 0 && j == k - 1);
            if g.adjacent(cycle[i], cycle[j]) != consecutive {
                return false;
            }
        }
    }
    true
}

/// A chordless cycle through `v`, `a`, `b` where `a`, `b` are non-adjacent
/// neighbours of `v`, if one exists.
fn cycle_through(g: &LabeledGraph, v: usize, a: usize, b: usize) -> Option<Vec<usize>> {
    let n = g.vertex_count();
    let mut allowed = vec![true; n];
    allowed[v] = false;
    for &w in g.neighbors(v) {
        allowed[w] = false;
    }
    allowed[a] = true;
    allowed[b] = true;
    let path = g.shortest_path_within(a, b, &allowed)?;
    let mut cycle = vec![v];
    cycle.extend(path);
    Some(cycle)
}

fn find_induced_cycle(g: &LabeledGraph, hint: (usize, usize, usize)) -> Option<Vec<usize>> {
    if let Some(c) = cycle_through(g, hint.0, hint.1, hint.2) {
        return Some(c);
    }
    for v in 0..g.vertex_count() {
        let nb = g.neighbors(v);
        for (i, &a) in nb.iter().enumerate() {
            for &b in &nb[i + 1..] {
                if !g.adjacent(a, b) {
                    if let Some(c) = cycle_through(g, v, a, b) {
                        return Some(c);
                    }
                }
            }
        }
    }
    None
}

/// Decides chordality. Returns a perfect elimination ordering when chordal
/// and a chordless cycle of length ≥ 4 otherwise.
pub fn is_chordal(g: &LabeledGraph) -> (bool, ChordalityEvidence) {
    let mut order = lex_bfs(g);
    order.reverse();
    match verify_elimination_order(g, &order) {
        Ok(()) => (true, ChordalityEvidence::EliminationOrder(order)),
        Err(hint) => {
            let cycle = find_induced_cycle(g, hint)
                .expect("a failed LexBFS ordering implies an induced cycle");
            (false, ChordalityEvidence::InducedCycle(cycle))
        }
    }
}
