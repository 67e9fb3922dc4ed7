//! Brute-force oracles and generators shared by the integration tests.
#![allow(dead_code)]

use std::collections::HashSet;

use coherence::graph::LabeledGraph;
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    rand::SeedableRng::seed_from_u64(seed)
}

/// Edge subsets of `K_n` in mask order: bit `k` is the `k`-th pair `(i < j)`
/// in lexicographic order.
pub fn pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect()
}

pub fn racg_from_mask(n: usize, mask: u64) -> LabeledGraph {
    let edges: Vec<_> = pairs(n)
        .into_iter()
        .enumerate()
        .filter(|(k, _)| mask >> k & 1 == 1)
        .map(|(_, p)| p)
        .collect();
    LabeledGraph::racg(n, &edges).unwrap()
}

pub fn raag_from_mask(n: usize, mask: u64) -> LabeledGraph {
    let edges: Vec<_> = pairs(n)
        .into_iter()
        .enumerate()
        .filter(|(k, _)| mask >> k & 1 == 1)
        .map(|(_, (u, v))| (u, v, 2))
        .collect();
    LabeledGraph::artin(n, &edges).unwrap()
}

/// Every vertex subset of size at least 4 that induces a cycle.
pub fn has_long_induced_cycle(g: &LabeledGraph) -> bool {
    let n = g.vertex_count();
    (0u32..1 << n).any(|s| {
        let set: Vec<usize> = (0..n).filter(|&v| s >> v & 1 == 1).collect();
        set.len() >= 4 && induces_cycle(g, &set)
    })
}

fn induces_cycle(g: &LabeledGraph, set: &[usize]) -> bool {
    let deg_two = set
        .iter()
        .all(|&u| set.iter().filter(|&&w| g.adjacent(u, w)).count() == 2);
    if !deg_two {
        return false;
    }
    // Connected: walk from the first vertex.
    let mut seen = vec![set[0]];
    let mut stack = vec![set[0]];
    while let Some(u) = stack.pop() {
        for &w in set {
            if g.adjacent(u, w) && !seen.contains(&w) {
                seen.push(w);
                stack.push(w);
            }
        }
    }
    seen.len() == set.len()
}

/// Lexicographically least upper-triangle label string over all `n!`
/// orderings, prefixed by the vertex group sequence.
pub fn brute_canonical(g: &LabeledGraph) -> String {
    let n = g.vertex_count();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut best: Option<String> = None;
    loop {
        let mut s: String = perm.iter().map(|&v| format!("{};", g.group(v))).collect();
        for i in 0..n {
            for j in i + 1..n {
                s.push_str(&format!("{},", g.label(perm[i], perm[j]).unwrap_or(0)));
            }
        }
        if best.as_ref().is_none_or(|b| s < *b) {
            best = Some(s);
        }
        if !next_permutation(&mut perm) {
            break;
        }
    }
    best.unwrap()
}

pub fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
        return false;
    };
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).unwrap();
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// Random simple graph on `n` vertices with edge probability `p`.
pub fn random_racg(rng: &mut impl Rng, n: usize, p: f64) -> LabeledGraph {
    let edges: Vec<_> = pairs(n).into_iter().filter(|_| rng.gen_bool(p)).collect();
    LabeledGraph::racg(n, &edges).unwrap()
}

/// Random connected chordal graph: vertices are added in a random order,
/// each joined to a random clique among the earlier ones (a neighbour of
/// some earlier vertex together with part of its earlier neighbourhood), so
/// the reverse insertion order is a perfect elimination ordering.
pub fn random_chordal(rng: &mut impl Rng, n: usize) -> LabeledGraph {
    let mut adj = vec![vec![false; n]; n];
    let mut edges = Vec::new();
    for v in 1..n {
        let anchor = rng.gen_range(0..v);
        let mut clique = vec![anchor];
        let mut candidates: Vec<usize> = (0..v).filter(|&w| adj[anchor][w]).collect();
        candidates.shuffle(rng);
        for w in candidates {
            if rng.gen_bool(0.6) && clique.iter().all(|&c| adj[c][w]) {
                clique.push(w);
            }
        }
        for &c in &clique {
            adj[c][v] = true;
            adj[v][c] = true;
            edges.push((c, v));
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let relabelled: Vec<_> = edges.iter().map(|&(a, b)| (order[a], order[b])).collect();
    LabeledGraph::racg(n, &relabelled).unwrap()
}

/// Applies a vertex permutation: vertex `v` of `g` becomes `perm[v]`.
pub fn permute(g: &LabeledGraph, perm: &[usize]) -> LabeledGraph {
    let n = g.vertex_count();
    let mut inverse = vec![0; n];
    for (v, &p) in perm.iter().enumerate() {
        inverse[p] = v;
    }
    let groups = (0..n).map(|i| g.group(inverse[i]).clone()).collect();
    let edges: Vec<_> = g.edges().map(|(u, v, l)| (perm[u], perm[v], l)).collect();
    LabeledGraph::from_indexed(groups, &edges, |i| i.to_string()).unwrap()
}

pub fn random_permutation(rng: &mut impl Rng, n: usize) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    p.shuffle(rng);
    p
}

/// Size of the group generated by `gens`, acting as permutations, by
/// breadth-first closure.
pub fn closure_size(gens: &[Vec<usize>]) -> usize {
    let n = gens[0].len();
    let id: Vec<usize> = (0..n).collect();
    let mut seen: HashSet<Vec<usize>> = HashSet::from([id.clone()]);
    let mut frontier = vec![id];
    while let Some(p) = frontier.pop() {
        for g in gens {
            let q: Vec<usize> = p.iter().map(|&x| g[x]).collect();
            if seen.insert(q.clone()) {
                frontier.push(q);
            }
        }
    }
    seen.len()
}

/// Adjacent transpositions generating `Sym(n + 1)`, the model of `A(n)`.
pub fn type_a_generators(n: usize) -> Vec<Vec<usize>> {
    (0..n)
        .map(|i| {
            let mut p: Vec<usize> = (0..=n).collect();
            p.swap(i, i + 1);
            p
        })
        .collect()
}

/// Signed permutations of `±1..±n` encoded on `2n` points (`i` and `i + n`
/// are negatives of each other).
fn signed(n: usize, f: impl Fn(usize) -> (usize, bool)) -> Vec<usize> {
    let mut p = vec![0; 2 * n];
    for i in 0..n {
        let (j, neg) = f(i);
        let (a, b) = if neg { (j + n, j) } else { (j, j + n) };
        p[i] = a;
        p[i + n] = b;
    }
    p
}

fn swap_gen(n: usize, i: usize) -> Vec<usize> {
    signed(n, |k| {
        if k == i {
            (i + 1, false)
        } else if k == i + 1 {
            (i, false)
        } else {
            (k, false)
        }
    })
}

/// Type B: adjacent swaps plus the sign change of the last coordinate.
pub fn type_b_generators(n: usize) -> Vec<Vec<usize>> {
    let mut gens: Vec<_> = (0..n - 1).map(|i| swap_gen(n, i)).collect();
    gens.push(signed(n, |k| (k, k == n - 1)));
    gens
}

/// Type D: adjacent swaps plus `x_{n-1} ↔ -x_n`.
pub fn type_d_generators(n: usize) -> Vec<Vec<usize>> {
    let mut gens: Vec<_> = (0..n - 1).map(|i| swap_gen(n, i)).collect();
    gens.push(signed(n, |k| {
        if k == n - 2 {
            (n - 1, true)
        } else if k == n - 1 {
            (n - 2, true)
        } else {
            (k, false)
        }
    }));
    gens
}

/// Two reflections of the regular `m`-gon acting on its vertices.
pub fn dihedral_generators(m: usize) -> Vec<Vec<usize>> {
    let s: Vec<usize> = (0..m).map(|i| (m - i) % m).collect();
    let t: Vec<usize> = (0..m).map(|i| (m + 1 - i) % m).collect();
    vec![s, t]
}
