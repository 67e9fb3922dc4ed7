use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::GraphError;

/// A non-trivial finitely generated abelian group `Z^rank × Z/d₁ × … × Z/dₖ`
/// stored in invariant-factor form (`d₁ | d₂ | … | dₖ`, every `dᵢ ≥ 2`).
///
/// Invariant factors make structural equality coincide with isomorphism, so
/// `Z/2 × Z/3` and `Z/6` compare equal after normalisation.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawGroup", into = "RawGroup")]
pub struct AbelianGroupLabel {
    rank: u32,
    torsion: Vec<u64>,
}

#[derive(Serialize, Deserialize)]
struct RawGroup {
    #[serde(default)]
    rank: u32,
    #[serde(default)]
    torsion: Vec<u64>,
}

impl TryFrom<RawGroup> for AbelianGroupLabel {
    type Error = GraphError;

    fn try_from(raw: RawGroup) -> Result<Self, Self::Error> {
        AbelianGroupLabel::new(raw.rank, &raw.torsion)
    }
}

impl From<AbelianGroupLabel> for RawGroup {
    fn from(g: AbelianGroupLabel) -> Self {
        RawGroup {
            rank: g.rank,
            torsion: g.torsion,
        }
    }
}

impl AbelianGroupLabel {
    /// Builds the group `Z^rank × ∏ Z/cᵢ` from arbitrary cyclic orders `cᵢ ≥ 2`,
    /// normalising them into invariant factors.
    pub fn new(rank: u32, cyclic_orders: &[u64]) -> Result<Self, GraphError> {
        if let Some(&bad) = cyclic_orders.iter().find(|&&d| d < 2) {
            return Err(GraphError::InvalidTorsion(bad));
        }
        let torsion = invariant_factors(cyclic_orders);
        if rank == 0 && torsion.is_empty() {
            return Err(GraphError::TrivialVertexGroup);
        }
        Ok(AbelianGroupLabel { rank, torsion })
    }

    /// The infinite cyclic group.
    pub fn z() -> Self {
        AbelianGroupLabel {
            rank: 1,
            torsion: Vec::new(),
        }
    }

    /// The cyclic group of order `n ≥ 2`.
    pub fn cyclic(n: u64) -> Self {
        assert!(n >= 2, "cyclic group order must be at least 2");
        AbelianGroupLabel {
            rank: 0,
            torsion: vec![n],
        }
    }

    pub fn z2() -> Self {
        Self::cyclic(2)
    }

    pub fn rank(&self) -> u32 {
        self.rank
    }

    pub fn torsion(&self) -> &[u64] {
        &self.torsion
    }

    pub fn is_z(&self) -> bool {
        self.rank == 1 && self.torsion.is_empty()
    }

    pub fn is_z2(&self) -> bool {
        self.rank == 0 && self.torsion == [2]
    }

    /// Group order, `None` when infinite. Saturates at `u64::MAX`.
    pub fn order(&self) -> Option<u64> {
        if self.rank > 0 {
            return None;
        }
        Some(
            self.torsion
                .iter()
                .fold(1u64, |acc, &d| acc.saturating_mul(d)),
        )
    }

    /// Number of cyclic factors, i.e. generators in a minimal presentation.
    pub fn generator_count(&self) -> usize {
        self.rank as usize + self.torsion.len()
    }

    /// Orders of the cyclic factors in presentation order: infinite factors
    /// first (`None`), then the invariant factors.
    pub fn cyclic_factors(&self) -> impl Iterator<Item = Option<u64>> + '_ {
        std::iter::repeat_n(None, self.rank as usize).chain(self.torsion.iter().map(|&d| Some(d)))
    }
}

/// `(|A| - 1)(|B| - 1) ≥ 2`, with infinite orders allowed.
///
/// This holds exactly when the kernel of `A * B → A × B` is free of rank at
/// least two.
pub fn free_product_contains_f2(a: &AbelianGroupLabel, b: &AbelianGroupLabel) -> bool {
    match (a.order(), b.order()) {
        (Some(x), Some(y)) => (x - 1).saturating_mul(y - 1) >= 2,
        _ => true,
    }
}

fn prime_powers(mut n: u64) -> Vec<(u64, u64)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p.saturating_mul(p) <= n {
        if n.is_multiple_of(p) {
            let mut q = 1u64;
            while n.is_multiple_of(p) {
                n /= p;
                q *= p;
            }
            out.push((p, q));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, n));
    }
    out
}

fn invariant_factors(orders: &[u64]) -> Vec<u64> {
    use std::collections::BTreeMap;
    let mut by_prime: BTreeMap<u64, Vec<u64>> = BTreeMap::new();
    for &d in orders {
        for (p, q) in prime_powers(d) {
            by_prime.entry(p).or_default().push(q);
        }
    }
    let len = by_prime.values().map(Vec::len).max().unwrap_or(0);
    let mut factors = vec![1u64; len];
    for powers in by_prime.values_mut() {
        powers.sort_unstable();
        // largest powers go to the last factors
        let offset = len - powers.len();
        for (i, q) in powers.iter().enumerate() {
            factors[offset + i] *= q;
        }
    }
    factors
}

impl fmt::Display for AbelianGroupLabel {
    /// Compact form used in canonical keys and DOT files: `Z`, `Z^3`, `Z2`,
    /// `Z2xZ6`, `ZxZ4`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|d| format!("Z{d}")));
        f.write_str(&parts.join("x"))
    }
}

impl FromStr for AbelianGroupLabel {
    type Err = GraphError;

    /// Parses the compact form; `Z_d` is accepted as an alias of `Zd`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || GraphError::InvalidGroupSyntax(s.to_string());
        let mut rank = 0u32;
        let mut torsion = Vec::new();
        for part in s.trim().split(['x', '×']) {
            let part = part.trim();
            let rest = part.strip_prefix('Z').ok_or_else(bad)?;
            if rest.is_empty() {
                rank += 1;
            } else if let Some(r) = rest.strip_prefix('^') {
                rank += r.parse::<u32>().map_err(|_| bad())?;
            } else {
                let d = rest.strip_prefix('_').unwrap_or(rest);
                torsion.push(d.parse::<u64>().map_err(|_| bad())?);
            }
        }
        AbelianGroupLabel::new(rank, &torsion)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalises_to_invariant_factors() {
        let g = AbelianGroupLabel::new(0, &[2, 3]).unwrap();
        assert_eq!(g.torsion(), &[6]);
        let g = AbelianGroupLabel::new(0, &[4, 2, 3, 9]).unwrap();
        assert_eq!(g.torsion(), &[6, 36]);
        let g = AbelianGroupLabel::new(2, &[12, 8]).unwrap();
        assert_eq!(g.torsion(), &[4, 24]);
        assert_eq!(g.rank(), 2);
    }

    #[test]
    fn rejects_trivial_and_bad_entries() {
        assert_eq!(
            AbelianGroupLabel::new(0, &[]),
            Err(GraphError::TrivialVertexGroup)
        );
        assert_eq!(
            AbelianGroupLabel::new(1, &[1]),
            Err(GraphError::InvalidTorsion(1))
        );
    }

    #[test]
    fn orders() {
        assert_eq!(AbelianGroupLabel::z2().order(), Some(2));
        assert_eq!(AbelianGroupLabel::z().order(), None);
        assert_eq!("Z2xZ6".parse::<AbelianGroupLabel>().unwrap().order(), Some(12));
    }

    #[test]
    fn display_round_trip() {
        for s in ["Z", "Z2", "Z^3", "Z2xZ6", "ZxZ4", "Z^2xZ3"] {
            let g: AbelianGroupLabel = s.parse().unwrap();
            assert_eq!(g.to_string(), s);
        }
        assert_eq!("Z_5".parse::<AbelianGroupLabel>().unwrap().to_string(), "Z5");
        assert!("Q".parse::<AbelianGroupLabel>().is_err());
    }

    #[test]
    fn f2_in_free_products() {
        let z2 = AbelianGroupLabel::z2();
        let z3 = AbelianGroupLabel::cyclic(3);
        assert!(!free_product_contains_f2(&z2, &z2));
        assert!(free_product_contains_f2(&z2, &z3));
        assert!(free_product_contains_f2(&z3, &z3));
        assert!(free_product_contains_f2(&z2, &AbelianGroupLabel::z()));
    }
}
