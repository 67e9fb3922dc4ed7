//! Isomorphism-invariant keys for labelled graphs.
//!
//! The key is the lexicographically smallest serialisation of the edge-label
//! matrix over all vertex orderings compatible with an equitable refinement
//! of the vertex-group partition. Orderings are explored by individualising
//! one vertex of the first non-singleton cell at a time; interchangeable
//! twins are only tried once.

use super::{AbelianGroupLabel, GraphError, LabeledGraph};

pub const DEFAULT_CANONICAL_CAP: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CanonicalForm {
    pub key: String,
    /// `order[i]` is the original vertex placed at canonical position `i`.
    pub order: Vec<usize>,
}

pub fn canonical_key(g: &LabeledGraph, cap: usize) -> Result<String, GraphError> {
    canonical_form(g, cap).map(|c| c.key)
}

pub fn canonical_form(g: &LabeledGraph, cap: usize) -> Result<CanonicalForm, GraphError> {
    let n = g.vertex_count();
    if n > cap {
        return Err(GraphError::CanonicalCapExceeded { n, cap });
    }
    let mut groups: Vec<&AbelianGroupLabel> = g.vertices().iter().map(|v| &v.group).collect();
    groups.sort();
    groups.dedup();
    let colors: Vec<u32> = (0..n)
        .map(|v| groups.binary_search(&g.group(v)).unwrap() as u32)
        .collect();
    let matrix: Vec<u32> = (0..n * n)
        .map(|i| g.label(i / n, i % n).unwrap_or(0))
        .collect();
    let order = canonical_order(n, &colors, &matrix);
    let key = encode_key(g, &order);
    Ok(CanonicalForm { key, order })
}

/// Canonical vertex order for an `n`-vertex graph with initial vertex colours
/// and a symmetric `n × n` edge-colour matrix (0 = no edge).
pub(crate) fn canonical_order(n: usize, colors: &[u32], matrix: &[u32]) -> Vec<usize> {
    if n == 0 {
        return Vec::new();
    }
    let twins = twin_matrix(n, colors, matrix);
    let mut search = Search {
        n,
        matrix,
        twins,
        best: None,
    };
    let mut start = colors.to_vec();
    rank(&mut start);
    search.descend(start);
    search.best.expect("search reaches at least one leaf").1
}

struct Search<'a> {
    n: usize,
    matrix: &'a [u32],
    twins: Vec<bool>,
    best: Option<(Vec<u32>, Vec<usize>)>,
}

impl Search<'_> {
    fn descend(&mut self, mut colors: Vec<u32>) {
        refine(self.n, self.matrix, &mut colors);
        let n = self.n;
        let mut counts = vec![0usize; n];
        for &c in &colors {
            counts[c as usize] += 1;
        }
        let Some(target) = counts.iter().position(|&k| k > 1) else {
            self.leaf(&colors);
            return;
        };
        let cell: Vec<usize> = (0..n).filter(|&v| colors[v] as usize == target).collect();
        for (i, &v) in cell.iter().enumerate() {
            if cell[..i].iter().any(|&u| self.twins[u * n + v]) {
                continue;
            }
            let next: Vec<u32> = (0..n)
                .map(|w| 2 * colors[w] + u32::from(w != v))
                .collect();
            self.descend(next);
        }
    }

    fn leaf(&mut self, colors: &[u32]) {
        let n = self.n;
        let mut order = vec![0usize; n];
        for (v, &c) in colors.iter().enumerate() {
            order[c as usize] = v;
        }
        let mut cert = Vec::with_capacity(n * (n - 1) / 2);
        for i in 0..n {
            for j in i + 1..n {
                cert.push(self.matrix[order[i] * n + order[j]]);
            }
        }
        if self.best.as_ref().is_none_or(|(b, _)| cert < *b) {
            self.best = Some((cert, order));
        }
    }
}

/// `twins[u*n+v]` iff swapping `u` and `v` is an automorphism.
fn twin_matrix(n: usize, colors: &[u32], matrix: &[u32]) -> Vec<bool> {
    let mut twins = vec![false; n * n];
    for u in 0..n {
        for v in u + 1..n {
            let same = colors[u] == colors[v]
                && (0..n)
                    .filter(|&w| w != u && w != v)
                    .all(|w| matrix[u * n + w] == matrix[v * n + w]);
            twins[u * n + v] = same;
            twins[v * n + u] = same;
        }
    }
    twins
}

/// Replaces colours by their dense rank, preserving order.
fn rank(colors: &mut [u32]) -> usize {
    let mut distinct = colors.to_vec();
    distinct.sort_unstable();
    distinct.dedup();
    for c in colors.iter_mut() {
        *c = distinct.binary_search(c).unwrap() as u32;
    }
    distinct.len()
}

/// Colour refinement until the partition is equitable. New colours are
/// ranks of `(old colour, sorted neighbour signature)`, so the order between
/// existing cells never changes.
fn refine(n: usize, matrix: &[u32], colors: &mut [u32]) {
    let mut cells = rank(colors);
    loop {
        let mut sigs: Vec<(u32, Vec<(u32, u32)>, usize)> = (0..n)
            .map(|v| {
                let mut nb: Vec<(u32, u32)> = (0..n)
                    .filter(|&w| matrix[v * n + w] != 0)
                    .map(|w| (colors[w], matrix[v * n + w]))
                    .collect();
                nb.sort_unstable();
                (colors[v], nb, v)
            })
            .collect();
        sigs.sort();
        let mut next = 0u32;
        for i in 0..n {
            if i > 0 && (sigs[i].0 != sigs[i - 1].0 || sigs[i].1 != sigs[i - 1].1) {
                next += 1;
            }
            colors[sigs[i].2] = next;
        }
        let count = next as usize + 1;
        if count == cells {
            return;
        }
        cells = count;
    }
}

fn encode_key(g: &LabeledGraph, order: &[usize]) -> String {
    let n = order.len();
    let mut runs: Vec<(String, usize)> = Vec::new();
    for &v in order {
        let s = g.group(v).to_string();
        match runs.last_mut() {
            Some((last, k)) if *last == s => *k += 1,
            _ => runs.push((s, 1)),
        }
    }
    let groups: Vec<String> = runs
        .into_iter()
        .map(|(s, k)| if k == 1 { s } else { format!("{s}*{k}") })
        .collect();
    let mut edges = String::with_capacity(n * n / 2);
    for i in 0..n {
        for j in i + 1..n {
            match g.label(order[i], order[j]) {
                None => edges.push('0'),
                Some(l) if l <= 9 => edges.push(char::from(b'0' + l as u8)),
                Some(l) => edges.push_str(&format!("({l})")),
            }
        }
    }
    format!("{n}|{}|{edges}", groups.join(","))
}

impl LabeledGraph {
    /// Rebuilds the representative graph of a canonical key, with vertices
    /// named `"0"`, `"1"`, ….
    pub fn from_canonical_key(key: &str) -> Result<LabeledGraph, GraphError> {
        let bad = || GraphError::KeyDecode(key.to_string());
        let mut parts = key.splitn(3, '|');
        let n: usize = parts.next().and_then(|s| s.parse().ok()).ok_or_else(bad)?;
        let groups_part = parts.next().ok_or_else(bad)?;
        let edges_part = parts.next().ok_or_else(bad)?;
        let mut groups = Vec::with_capacity(n);
        for run in groups_part.split(',') {
            let (g, k) = match run.split_once('*') {
                Some((g, k)) => (g, k.parse::<usize>().map_err(|_| bad())?),
                None => (run, 1),
            };
            let label: AbelianGroupLabel = g.parse().map_err(|_| bad())?;
            groups.extend(std::iter::repeat_n(label, k));
        }
        if groups.len() != n {
            return Err(bad());
        }
        let mut labels = Vec::with_capacity(n * n.saturating_sub(1) / 2);
        let mut chars = edges_part.chars();
        while let Some(c) = chars.next() {
            if c == '(' {
                let digits: String = chars.by_ref().take_while(|&c| c != ')').collect();
                labels.push(digits.parse::<u32>().map_err(|_| bad())?);
            } else {
                labels.push(c.to_digit(10).ok_or_else(bad)?);
            }
        }
        if labels.len() != n * n.saturating_sub(1) / 2 {
            return Err(bad());
        }
        let mut edges = Vec::new();
        let mut it = labels.into_iter();
        for i in 0..n {
            for j in i + 1..n {
                let l = it.next().unwrap();
                if l != 0 {
                    edges.push((i, j, l));
                }
            }
        }
        LabeledGraph::from_indexed(groups, &edges, |i| i.to_string()).map_err(|_| bad())
    }
}
