use super::{detect_flavor, GroupError};
use crate::graph::LabeledGraph;

fn superscript(n: u64) -> String {
    const DIGITS: [char; 10] = ['⁰', '¹', '²', '³', '⁴', '⁵', '⁶', '⁷', '⁸', '⁹'];
    n.to_string()
        .bytes()
        .map(|b| DIGITS[(b - b'0') as usize])
        .collect()
}

/// Plain-text presentation. One generator per cyclic factor of each vertex
/// group, named by the vertex id (suffixed `_1`, `_2`, … when a vertex needs
/// several), in input vertex order.
///
/// Coxeter graphs get `s²` and `(st)ᵐ`; Artin graphs get commutators for
/// label 2 and braid relations otherwise; graph products get vertex-group
/// relations and commutators across every edge.
pub fn emit_presentation(g: &LabeledGraph) -> Result<String, GroupError> {
    let flavor = detect_flavor(g);
    if !flavor.has_group() {
        return Err(GroupError::UnsupportedFlavor);
    }
    let n = g.vertex_count();
    let mut gens: Vec<Vec<(String, Option<u64>)>> = Vec::with_capacity(n);
    for v in 0..n {
        let group = g.group(v);
        let id = g.id(v);
        let factors: Vec<Option<u64>> = group.cyclic_factors().collect();
        gens.push(if factors.len() == 1 {
            vec![(id.to_string(), factors[0])]
        } else {
            factors
                .into_iter()
                .enumerate()
                .map(|(i, o)| (format!("{id}_{}", i + 1), o))
                .collect()
        });
    }
    let long_names = gens.iter().flatten().any(|(s, _)| s.chars().count() > 1);
    let word = |letters: &[&str]| letters.join(if long_names { "·" } else { "" });
    let commutator = |a: &str, b: &str| format!("[{a}, {b}]");

    let mut relations = Vec::new();
    for vg in &gens {
        for (s, order) in vg {
            if let Some(d) = order {
                relations.push(format!("{s}{}", superscript(*d)));
            }
        }
        for i in 0..vg.len() {
            for j in i + 1..vg.len() {
                relations.push(commutator(&vg[i].0, &vg[j].0));
            }
        }
    }
    for (u, v, label) in g.edges() {
        if flavor.coxeter {
            let (a, b) = (&gens[u][0].0, &gens[v][0].0);
            relations.push(format!("({}){}", word(&[a, b]), superscript(label as u64)));
        } else if flavor.artin && label > 2 {
            let (a, b) = (gens[u][0].0.as_str(), gens[v][0].0.as_str());
            let alt = |first: &str, second: &str| -> String {
                let letters: Vec<&str> = (0..label)
                    .map(|i| if i % 2 == 0 { first } else { second })
                    .collect();
                word(&letters)
            };
            relations.push(format!("{} = {}", alt(a, b), alt(b, a)));
        } else {
            for (a, _) in &gens[u] {
                for (b, _) in &gens[v] {
                    relations.push(commutator(a, b));
                }
            }
        }
    }
    let generators: Vec<&str> = gens.iter().flatten().map(|(s, _)| s.as_str()).collect();
    let mut out = format!("⟨ {} ∣", generators.join(", "));
    if !relations.is_empty() {
        out.push(' ');
        out.push_str(&relations.join(", "));
    }
    out.push_str(" ⟩");
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{AbelianGroupLabel, EdgeSpec, Vertex};

    fn named(groups: &[&str], edges: &[(&str, &str, i64)]) -> LabeledGraph {
        let names = ["a", "b", "c", "d", "e"];
        let vertices = groups
            .iter()
            .enumerate()
            .map(|(i, g)| Vertex {
                id: names[i].into(),
                group: g.parse().unwrap(),
            })
            .collect();
        let edges: Vec<EdgeSpec> = edges.iter().map(|&(u, v, l)| EdgeSpec::new(u, v, l)).collect();
        LabeledGraph::new(vertices, &edges).unwrap()
    }

    #[test]
    fn single_involution() {
        assert_eq!(emit_presentation(&named(&["Z2"], &[])).unwrap(), "⟨ a ∣ a² ⟩");
    }

    #[test]
    fn braid_relation() {
        let g = named(&["Z", "Z"], &[("a", "b", 3)]);
        assert_eq!(emit_presentation(&g).unwrap(), "⟨ a, b ∣ aba = bab ⟩");
    }

    #[test]
    fn right_angled_coxeter_pair() {
        let g = named(&["Z2", "Z2"], &[("a", "b", 2)]);
        assert_eq!(emit_presentation(&g).unwrap(), "⟨ a, b ∣ a², b², (ab)² ⟩");
    }

    #[test]
    fn graph_product_with_multi_generator_vertex() {
        let g = named(&["Z2xZ6", "Z"], &[("a", "b", 2)]);
        assert_eq!(
            emit_presentation(&g).unwrap(),
            "⟨ a_1, a_2, b ∣ a_1², a_2⁶, [a_1, a_2], [a_1, b], [a_2, b] ⟩"
        );
    }

    #[test]
    fn free_group_has_no_relations() {
        assert_eq!(emit_presentation(&named(&["Z", "Z"], &[])).unwrap(), "⟨ a, b ∣ ⟩");
    }

    #[test]
    fn unsupported_flavor() {
        let g = LabeledGraph::uniform(2, AbelianGroupLabel::cyclic(3), &[(0, 1, 3)]).unwrap();
        assert_eq!(emit_presentation(&g), Err(GroupError::UnsupportedFlavor));
    }
}
