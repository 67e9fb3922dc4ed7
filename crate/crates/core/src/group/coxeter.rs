//! Coxeter matrices and the classification of irreducible finite and affine
//! Coxeter diagrams.

use std::fmt;

use nalgebra::DMatrix;
use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use super::{detect_flavor, GroupError};
use crate::graph::{canonical::canonical_order, LabeledGraph};

/// Entry `m_{vw}` of a Coxeter matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MOrder {
    Finite(u32),
    Infinite,
}

impl MOrder {
    /// Whether the standard diagram draws a bond for this entry.
    pub fn is_bond(self) -> bool {
        !matches!(self, MOrder::Finite(1) | MOrder::Finite(2))
    }
}

impl fmt::Display for MOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MOrder::Finite(m) => write!(f, "{m}"),
            MOrder::Infinite => f.write_str("∞"),
        }
    }
}

/// Symmetric matrix of orders `m_{vw}`; the diagonal is 1 and a non-edge of
/// the graph is `∞`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoxeterMatrix {
    n: usize,
    entries: Vec<MOrder>,
}

impl CoxeterMatrix {
    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> MOrder {
        self.entries[i * self.n + j]
    }

    /// Matrix from an explicit list of bonds on `n` generators; every pair
    /// not listed commutes (`m = 2`). This is the classical diagram
    /// convention and is only used for the encoded type tables.
    pub fn from_bonds(n: usize, bonds: &[(usize, usize, MOrder)]) -> Self {
        let mut entries = vec![MOrder::Finite(2); n * n];
        for i in 0..n {
            entries[i * n + i] = MOrder::Finite(1);
        }
        for &(i, j, m) in bonds {
            entries[i * n + j] = m;
            entries[j * n + i] = m;
        }
        CoxeterMatrix { n, entries }
    }

    /// Principal submatrix on `set`.
    pub fn restrict(&self, set: &[usize]) -> CoxeterMatrix {
        let k = set.len();
        let entries = (0..k * k)
            .map(|idx| self.get(set[idx / k], set[idx % k]))
            .collect();
        CoxeterMatrix { n: k, entries }
    }

    /// Connected components of the standard diagram (bonds where `m ≥ 3`
    /// or `m = ∞`).
    pub fn diagram_components(&self) -> Vec<Vec<usize>> {
        let n = self.n;
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut stack = vec![s];
            while let Some(u) = stack.pop() {
                for w in 0..n {
                    if !seen[w] && w != u && self.get(u, w).is_bond() {
                        seen[w] = true;
                        comp.push(w);
                        stack.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// The cosine (Schläfli) matrix `-cos(π/m)`, with `-1` for `m = ∞`.
    pub fn cosine_matrix(&self) -> DMatrix<f64> {
        DMatrix::from_fn(self.n, self.n, |i, j| match self.get(i, j) {
            MOrder::Finite(1) => 1.0,
            MOrder::Finite(m) => -(std::f64::consts::PI / m as f64).cos(),
            MOrder::Infinite => -1.0,
        })
    }

    /// Canonical serialisation of the bond structure, used to match a
    /// component against the tables.
    fn bond_signature(&self) -> Vec<u32> {
        let n = self.n;
        let code = |m: MOrder| match m {
            MOrder::Finite(m) if m >= 3 => m,
            MOrder::Infinite => 1,
            _ => 0,
        };
        let matrix: Vec<u32> = (0..n * n)
            .map(|i| if i / n == i % n { 0 } else { code(self.get(i / n, i % n)) })
            .collect();
        let order = canonical_order(n, &vec![0; n], &matrix);
        let mut sig = vec![n as u32];
        for i in 0..n {
            for j in i + 1..n {
                sig.push(matrix[order[i] * n + order[j]]);
            }
        }
        sig
    }
}

pub fn coxeter_matrix(g: &LabeledGraph) -> Result<CoxeterMatrix, GroupError> {
    if !detect_flavor(g).coxeter {
        return Err(GroupError::NotCoxeter);
    }
    let n = g.vertex_count();
    let entries = (0..n * n)
        .map(|idx| {
            let (i, j) = (idx / n, idx % n);
            if i == j {
                MOrder::Finite(1)
            } else {
                g.label(i, j).map_or(MOrder::Infinite, MOrder::Finite)
            }
        })
        .collect();
    Ok(CoxeterMatrix { n, entries })
}

/// Irreducible Coxeter types. Affine types are indexed by rank, so `Ã_n`
/// has `n + 1` generators; `AffineA(1)` is the infinite dihedral group.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "family", content = "n")]
pub enum IrreducibleType {
    A(usize),
    B(usize),
    D(usize),
    E6,
    E7,
    E8,
    F4,
    H3,
    H4,
    I2(u32),
    AffineA(usize),
    AffineB(usize),
    AffineC(usize),
    AffineD(usize),
    AffineE6,
    AffineE7,
    AffineE8,
    AffineF4,
    AffineG2,
    Indefinite,
}

impl IrreducibleType {
    pub fn is_finite(self) -> bool {
        use IrreducibleType::*;
        matches!(self, A(_) | B(_) | D(_) | E6 | E7 | E8 | F4 | H3 | H4 | I2(_))
    }

    pub fn is_affine(self) -> bool {
        use IrreducibleType::*;
        matches!(
            self,
            AffineA(_)
                | AffineB(_)
                | AffineC(_)
                | AffineD(_)
                | AffineE6
                | AffineE7
                | AffineE8
                | AffineF4
                | AffineG2
        )
    }

    /// Group order for finite types.
    pub fn order(self) -> Option<BigUint> {
        use IrreducibleType::*;
        let fact = |n: usize| (1..=n as u64).fold(BigUint::from(1u32), |acc, k| acc * k);
        let pow2 = |n: usize| BigUint::from(1u32) << n;
        Some(match self {
            A(n) => fact(n + 1),
            B(n) => pow2(n) * fact(n),
            D(n) => pow2(n - 1) * fact(n),
            E6 => BigUint::from(51_840u64),
            E7 => BigUint::from(2_903_040u64),
            E8 => BigUint::from(696_729_600u64),
            F4 => BigUint::from(1_152u64),
            H3 => BigUint::from(120u64),
            H4 => BigUint::from(14_400u64),
            I2(m) => BigUint::from(2 * m as u64),
            _ => return None,
        })
    }

    /// Number of generators of the diagram.
    pub fn vertex_count(self) -> Option<usize> {
        use IrreducibleType::*;
        Some(match self {
            A(n) | B(n) | D(n) => n,
            E6 => 6,
            E7 => 7,
            E8 => 8,
            F4 | H4 => 4,
            H3 => 3,
            I2(_) => 2,
            AffineA(n) | AffineB(n) | AffineC(n) | AffineD(n) => n + 1,
            AffineE6 => 7,
            AffineE7 => 8,
            AffineE8 => 9,
            AffineF4 => 5,
            AffineG2 => 3,
            Indefinite => return None,
        })
    }

    /// The diagram of this type as a list of bonds (classical convention:
    /// unlisted pairs commute). `None` for parameters outside the family.
    pub fn diagram(self) -> Option<CoxeterMatrix> {
        use IrreducibleType::*;
        use MOrder::{Finite, Infinite};
        let path = |k: usize| -> Vec<(usize, usize, MOrder)> {
            (1..k).map(|i| (i - 1, i, Finite(3))).collect()
        };
        let (n, bonds) = match self {
            A(n) if n >= 1 => (n, path(n)),
            B(n) if n >= 2 => {
                let mut b = path(n);
                b[n - 2].2 = Finite(4);
                (n, b)
            }
            D(n) if n >= 4 => {
                let mut b = path(n - 1);
                b.push((n - 3, n - 1, Finite(3)));
                (n, b)
            }
            E6 | E7 | E8 => {
                let n = self.vertex_count().unwrap();
                let mut b = path(n - 1);
                b.push((2, n - 1, Finite(3)));
                (n, b)
            }
            F4 => (4, vec![(0, 1, Finite(3)), (1, 2, Finite(4)), (2, 3, Finite(3))]),
            H3 => (3, vec![(0, 1, Finite(5)), (1, 2, Finite(3))]),
            H4 => (
                4,
                vec![(0, 1, Finite(5)), (1, 2, Finite(3)), (2, 3, Finite(3))],
            ),
            I2(m) if m >= 5 => (2, vec![(0, 1, Finite(m))]),
            AffineA(1) => (2, vec![(0, 1, Infinite)]),
            AffineA(n) if n >= 2 => {
                let mut b = path(n + 1);
                b.push((n, 0, Finite(3)));
                (n + 1, b)
            }
            AffineB(n) if n >= 3 => {
                let mut b = path(n);
                b[n - 2].2 = Finite(4);
                b.push((1, n, Finite(3)));
                (n + 1, b)
            }
            AffineC(n) if n >= 2 => {
                let mut b = path(n + 1);
                b[0].2 = Finite(4);
                b[n - 1].2 = Finite(4);
                (n + 1, b)
            }
            AffineD(n) if n >= 4 => {
                let mut b = path(n - 1);
                b.push((1, n - 1, Finite(3)));
                b.push((n - 3, n, Finite(3)));
                (n + 1, b)
            }
            AffineE6 => {
                let mut b = path(5);
                b.push((2, 5, Finite(3)));
                b.push((5, 6, Finite(3)));
                (7, b)
            }
            AffineE7 => {
                let mut b = path(7);
                b.push((3, 7, Finite(3)));
                (8, b)
            }
            AffineE8 => {
                let mut b = path(8);
                b.push((2, 8, Finite(3)));
                (9, b)
            }
            AffineF4 => {
                let mut b = path(5);
                b[2].2 = Finite(4);
                (5, b)
            }
            AffineG2 => (3, vec![(0, 1, Finite(3)), (1, 2, Finite(6))]),
            _ => return None,
        };
        Some(CoxeterMatrix::from_bonds(n, &bonds))
    }

    /// Every table entry with `k` generators. `I2(m)` needs the bond value
    /// of the component, passed as `dihedral`.
    fn candidates(k: usize, dihedral: Option<u32>) -> Vec<IrreducibleType> {
        use IrreducibleType::*;
        let mut out = vec![A(k), B(k), D(k)];
        out.extend(match k {
            3 => vec![H3, AffineG2],
            4 => vec![F4, H4],
            5 => vec![AffineF4],
            6 => vec![E6],
            7 => vec![E7, AffineE6],
            8 => vec![E8, AffineE7],
            9 => vec![AffineE8],
            _ => vec![],
        });
        if k == 2 {
            if let Some(m) = dihedral {
                out.push(I2(m));
            }
        }
        if k >= 2 {
            out.extend([AffineA(k - 1), AffineB(k - 1), AffineC(k - 1), AffineD(k - 1)]);
        }
        out.into_iter().filter(|t| t.diagram().is_some()).collect()
    }
}

impl fmt::Display for IrreducibleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use IrreducibleType::*;
        match self {
            A(n) => write!(f, "A{n}"),
            B(n) => write!(f, "B{n}"),
            D(n) => write!(f, "D{n}"),
            E6 => f.write_str("E6"),
            E7 => f.write_str("E7"),
            E8 => f.write_str("E8"),
            F4 => f.write_str("F4"),
            H3 => f.write_str("H3"),
            H4 => f.write_str("H4"),
            I2(m) => write!(f, "I2({m})"),
            AffineA(n) => write!(f, "Ã{n}"),
            AffineB(n) => write!(f, "B̃{n}"),
            AffineC(n) => write!(f, "C̃{n}"),
            AffineD(n) => write!(f, "D̃{n}"),
            AffineE6 => f.write_str("Ẽ6"),
            AffineE7 => f.write_str("Ẽ7"),
            AffineE8 => f.write_str("Ẽ8"),
            AffineF4 => f.write_str("F̃4"),
            AffineG2 => f.write_str("G̃2"),
            Indefinite => f.write_str("indefinite"),
        }
    }
}

/// Matches a connected diagram against the tables.
fn classify_irreducible(m: &CoxeterMatrix) -> IrreducibleType {
    let k = m.size();
    let dihedral = if k == 2 {
        match m.get(0, 1) {
            MOrder::Finite(x) if x >= 5 => Some(x),
            _ => None,
        }
    } else {
        None
    };
    let sig = m.bond_signature();
    IrreducibleType::candidates(k, dihedral)
        .into_iter()
        .find(|t| t.diagram().expect("candidates have diagrams").bond_signature() == sig)
        .unwrap_or(IrreducibleType::Indefinite)
}

/// Splits the standard diagram into components and names each one.
pub fn classify_components(m: &CoxeterMatrix) -> Vec<(Vec<usize>, IrreducibleType)> {
    m.diagram_components()
        .into_iter()
        .map(|comp| {
            let t = classify_irreducible(&m.restrict(&comp));
            (comp, t)
        })
        .collect()
}

/// Sign pattern of the cosine matrix spectrum.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Definiteness {
    PositiveDefinite,
    /// Positive semidefinite with the given kernel dimension.
    Semidefinite(usize),
    Indefinite,
}

/// Numeric cross-check of the table classification: eigenvalues of the
/// cosine matrix with tolerance `tol`.
pub fn cosine_definiteness(m: &CoxeterMatrix, tol: f64) -> Definiteness {
    if m.size() == 0 {
        return Definiteness::PositiveDefinite;
    }
    let eig = m.cosine_matrix().symmetric_eigen();
    let min = eig.eigenvalues.iter().cloned().fold(f64::INFINITY, f64::min);
    if min > tol {
        Definiteness::PositiveDefinite
    } else if min >= -tol {
        Definiteness::Semidefinite(eig.eigenvalues.iter().filter(|l| l.abs() <= tol).count())
    } else {
        Definiteness::Indefinite
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Finiteness {
    pub finite: bool,
    /// Group order when finite.
    pub order: Option<BigUint>,
    /// Diagram components with their types (Coxeter graphs only).
    pub components: Vec<(Vec<usize>, IrreducibleType)>,
}

/// Finiteness of a Coxeter group: finite iff every component has finite
/// type, and then the order is the product of the component orders.
pub fn is_finite(g: &LabeledGraph) -> Result<Finiteness, GroupError> {
    let m = coxeter_matrix(g)?;
    let components = classify_components(&m);
    let order = components
        .iter()
        .try_fold(BigUint::from(1u32), |acc, (_, t)| t.order().map(|o| acc * o));
    Ok(Finiteness {
        finite: order.is_some(),
        order,
        components,
    })
}

/// A graph product is finite iff the graph is complete with finite vertex
/// groups; it is then the direct product of the vertex groups.
pub fn graph_product_finiteness(g: &LabeledGraph) -> Result<Finiteness, GroupError> {
    if !g.all_labels_two() {
        return Err(GroupError::UnsupportedFlavor);
    }
    let order = if g.is_complete() {
        g.vertices()
            .iter()
            .try_fold(BigUint::from(1u32), |acc, v| v.group.order().map(|o| acc * o))
    } else {
        None
    };
    Ok(Finiteness {
        finite: order.is_some(),
        order,
        components: Vec::new(),
    })
}

/// Finiteness for any flavor that carries a group.
pub fn finiteness(g: &LabeledGraph) -> Result<Finiteness, GroupError> {
    let flavor = detect_flavor(g);
    if flavor.coxeter {
        is_finite(g)
    } else if flavor.graph_product {
        graph_product_finiteness(g)
    } else if flavor.artin {
        Ok(Finiteness {
            finite: false,
            order: None,
            components: Vec::new(),
        })
    } else {
        Err(GroupError::UnsupportedFlavor)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use IrreducibleType::*;

    fn sym5() -> LabeledGraph {
        LabeledGraph::coxeter(
            4,
            &[(0, 1, 3), (1, 2, 3), (2, 3, 3), (0, 3, 2), (0, 2, 2), (1, 3, 2)],
        )
        .unwrap()
    }

    #[test]
    fn non_edge_is_infinite() {
        let m = coxeter_matrix(&LabeledGraph::racg(2, &[]).unwrap()).unwrap();
        assert_eq!(m.get(0, 1), MOrder::Infinite);
        assert_eq!(m.get(0, 0), MOrder::Finite(1));
        let m = coxeter_matrix(&LabeledGraph::racg(2, &[(0, 1)]).unwrap()).unwrap();
        assert_eq!(m.get(0, 1), MOrder::Finite(2));
    }

    #[test]
    fn sym5_matrix_and_type() {
        let m = coxeter_matrix(&sym5()).unwrap();
        let mut values: Vec<MOrder> = (0..4)
            .flat_map(|i| (i + 1..4).map(move |j| (i, j)))
            .map(|(i, j)| m.get(i, j))
            .collect();
        values.sort_by_key(|v| format!("{v}"));
        assert_eq!(
            values,
            [2, 2, 2, 3, 3, 3].map(MOrder::Finite).to_vec()
        );
        assert_eq!(classify_components(&m), vec![(vec![0, 1, 2, 3], A(4))]);
        let f = is_finite(&sym5()).unwrap();
        assert!(f.finite);
        assert_eq!(f.order, Some(BigUint::from(120u32)));
    }

    #[test]
    fn non_coxeter_rejected() {
        assert_eq!(
            coxeter_matrix(&LabeledGraph::artin(2, &[]).unwrap()),
            Err(GroupError::NotCoxeter)
        );
    }

    #[test]
    fn infinite_dihedral_is_affine_a1() {
        let g = LabeledGraph::racg(2, &[]).unwrap();
        let m = coxeter_matrix(&g).unwrap();
        assert_eq!(classify_components(&m), vec![(vec![0, 1], AffineA(1))]);
        let f = is_finite(&g).unwrap();
        assert!(!f.finite);
        assert_eq!(f.order, None);
    }

    #[test]
    fn triangle_of_threes_is_affine_a2() {
        let g = LabeledGraph::coxeter(3, &[(0, 1, 3), (1, 2, 3), (0, 2, 3)]).unwrap();
        let m = coxeter_matrix(&g).unwrap();
        assert_eq!(classify_components(&m), vec![(vec![0, 1, 2], AffineA(2))]);
        assert_eq!(cosine_definiteness(&m, 1e-9), Definiteness::Semidefinite(1));
    }

    #[test]
    fn right_angled_triangle_has_order_eight() {
        let g = LabeledGraph::racg(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        let f = is_finite(&g).unwrap();
        assert_eq!(f.order, Some(BigUint::from(8u32)));
    }

    #[test]
    fn hyperbolic_triangle_is_indefinite() {
        let g = LabeledGraph::coxeter(3, &[(0, 1, 2), (1, 2, 3), (0, 2, 7)]).unwrap();
        let m = coxeter_matrix(&g).unwrap();
        assert_eq!(classify_components(&m)[0].1, Indefinite);
        assert_eq!(cosine_definiteness(&m, 1e-9), Definiteness::Indefinite);
    }

    #[test]
    fn graph_product_finiteness_paths() {
        use crate::graph::AbelianGroupLabel;
        let g = LabeledGraph::uniform(2, AbelianGroupLabel::cyclic(3), &[(0, 1, 2)]).unwrap();
        assert_eq!(finiteness(&g).unwrap().order, Some(BigUint::from(9u32)));
        let g = LabeledGraph::uniform(2, AbelianGroupLabel::cyclic(3), &[]).unwrap();
        assert!(!finiteness(&g).unwrap().finite);
        assert!(!finiteness(&LabeledGraph::artin(1, &[]).unwrap()).unwrap().finite);
    }

    #[test]
    fn diagrams_have_expected_sizes() {
        for t in [A(5), B(3), D(5), E6, E7, E8, F4, H3, H4, I2(7), AffineA(4), AffineB(5), AffineC(3), AffineD(6), AffineE6, AffineE7, AffineE8, AffineF4, AffineG2] {
            assert_eq!(t.diagram().unwrap().size(), t.vertex_count().unwrap(), "{t}");
        }
        assert!(B(1).diagram().is_none());
        assert!(D(3).diagram().is_none());
        assert!(I2(4).diagram().is_none());
    }
}
