use std::collections::HashMap;

/// Renames vertex ids, typically from a representative graph back to the
/// graph it stands for. Sets are re-sorted by the target vertex order.
#[derive(Debug, Clone, Default)]
pub struct IdMap {
    map: HashMap<String, (usize, String)>,
}

impl IdMap {
    /// `pairs` lists `(old id, new id)` in target vertex order.
    pub fn new<I, A, B>(pairs: I) -> Self
    where
        I: IntoIterator<Item = (A, B)>,
        A: Into<String>,
        B: Into<String>,
    {
        let map = pairs
            .into_iter()
            .enumerate()
            .map(|(i, (a, b))| (a.into(), (i, b.into())))
            .collect();
        IdMap { map }
    }

    /// Unmapped ids pass through unchanged.
    pub fn id(&self, s: &str) -> String {
        self.map.get(s).map_or_else(|| s.to_string(), |(_, t)| t.clone())
    }

    /// Renames in place, keeping the sequence order.
    pub fn seq(&self, v: &mut [String]) {
        for s in v.iter_mut() {
            *s = self.id(s);
        }
    }

    /// Renames in place and sorts by target position.
    pub fn set(&self, v: &mut [String]) {
        let mut keyed: Vec<(usize, String)> = v
            .iter()
            .map(|s| match self.map.get(s.as_str()) {
                Some((i, t)) => (*i, t.clone()),
                None => (usize::MAX, s.clone()),
            })
            .collect();
        keyed.sort();
        for (slot, (_, s)) in v.iter_mut().zip(keyed) {
            *slot = s;
        }
    }

    /// Position of an old id in the target order.
    pub fn position(&self, s: &str) -> Option<usize> {
        self.map.get(s).map(|(i, _)| *i)
    }
}
