//! Text rendering of verdicts, certificates and census tables.

use coherence::census::{CensusError, CensusReport};
use coherence::engine::{note_name, witness_name, NoteCode, ProofNode, RuleData, SplitSource, Verdict, Witness};
use coherence::graph::LabeledGraph;
use coherence::group::{
    F2Certificate, FactorKind, Finiteness, Flavor, IrreducibleType, NotSlenderReason, SlenderCertificate,
};
use serde_json::json;

pub fn set<S: AsRef<str>>(ids: &[S]) -> String {
    let parts: Vec<&str> = ids.iter().map(|s| s.as_ref()).collect();
    format!("{{{}}}", parts.join(","))
}

pub fn flavor_name(f: &Flavor) -> &'static str {
    match (f.graph_product, f.artin, f.coxeter) {
        (true, _, true) => "right-angled Coxeter",
        (true, true, _) => "right-angled Artin",
        (_, _, true) => "Coxeter",
        (_, true, _) => "Artin",
        (true, _, _) => "graph product",
        _ => "mixed (labels above 2 with non-uniform vertex groups)",
    }
}

pub fn headline(v: &Verdict, slender: &SlenderCertificate, fin: Option<&Finiteness>) -> String {
    match v {
        Verdict::Coherent(t) => match &t.data {
            RuleData::Slender { .. } => match fin.and_then(|f| f.order.as_ref()) {
                Some(order) => format!("COHERENT (slender: finite, order {order})"),
                None => format!("COHERENT (slender: {})", factors(slender)),
            },
            _ => format!("COHERENT ({})", t.rule().name()),
        },
        Verdict::Incoherent(w) => format!("INCOHERENT ({})", witness_name(w.core())),
        Verdict::Unknown(notes) => match notes.first() {
            Some(n) if n.code == NoteCode::OpenHyperbolicCycle => {
                format!("UNKNOWN (open: {})", note_name(n.code))
            }
            Some(n) => format!("UNKNOWN ({})", note_name(n.code)),
            None => "UNKNOWN".to_string(),
        },
    }
}

pub fn verdict_body(v: &Verdict) -> String {
    let mut out = String::new();
    match v {
        Verdict::Coherent(t) => {
            out.push_str("proof:\n");
            proof(t, 1, &mut out);
        }
        Verdict::Incoherent(w) => witness(w, 0, &mut out),
        Verdict::Unknown(notes) => {
            for n in notes {
                out += &format!("note: {} on {}\n", note_name(n.code), set(&n.vertices));
            }
        }
    }
    out
}

fn proof(t: &ProofNode, depth: usize, out: &mut String) {
    let pad = "  ".repeat(depth);
    let detail = match &t.data {
        RuleData::Droms { peo } | RuleData::WiseGordon { peo } => {
            format!("elimination order {}", peo.join(" "))
        }
        RuleData::Abelian => "free abelian".to_string(),
        RuleData::Slender { certificate } => factors(certificate),
        RuleData::McCammondWise => "every label at least the vertex count".to_string(),
        RuleData::FreeProduct { components } => format!("{} components", components.len()),
        RuleData::Amalgam {
            split,
            separator_certificate,
            source,
        } => format!(
            "along {} ({}), separator {}",
            set(&split.separator),
            match source {
                SplitSource::Dirac => "clique separator",
                SplitSource::Search => "search",
            },
            factors(separator_certificate)
        ),
    };
    out.push_str(&format!("{pad}{} {}: {detail}\n", t.rule().name(), set(&t.vertices)));
    for c in &t.children {
        proof(c, depth + 1, out);
    }
}

fn witness(w: &Witness, depth: usize, out: &mut String) {
    let pad = "  ".repeat(depth);
    let line = match w {
        Witness::JoinEmbedding { side_a, side_b, .. } => {
            format!("join {}×{}", set(side_a), set(side_b))
        }
        Witness::DromsCycle { cycle } => format!("induced cycle {}", cycle.join("-")),
        Witness::WiseGordonViolation { violation, vertices } => {
            let kind = serde_json::to_value(violation).expect("enum serialises");
            format!("wise_gordon {} on {}", kind.as_str().unwrap_or("?"), set(vertices))
        }
        Witness::IncoherentFactor { vertices, .. } => {
            format!("incoherent parabolic subgroup on {}", set(vertices))
        }
    };
    out.push_str(&format!("{pad}witness: {line}\n"));
    if let Witness::IncoherentFactor { inner, .. } = w {
        witness(inner, depth + 1, out);
    }
}

pub fn factors(c: &SlenderCertificate) -> String {
    match c {
        SlenderCertificate::Slender { factors } => {
            let parts: Vec<String> = factors
                .iter()
                .map(|f| {
                    let kind = match f.kind {
                        FactorKind::Finite(t) | FactorKind::Affine(t) => t.to_string(),
                        FactorKind::Abelian => "abelian".to_string(),
                        FactorKind::InfiniteDihedral => "D∞".to_string(),
                    };
                    format!("{kind} {}", set(&f.vertices))
                })
                .collect();
            parts.join(" × ")
        }
        _ => slenderness(c),
    }
}

fn certificate(c: &F2Certificate) -> String {
    set(&c.vertices())
}

pub fn slenderness(c: &SlenderCertificate) -> String {
    match c {
        SlenderCertificate::Slender { .. } => format!("slender: {}", factors(c)),
        SlenderCertificate::NotSlender { reason } => match reason {
            NotSlenderReason::F2 { certificate: cert } => {
                format!("not slender (free subgroup from {})", certificate(cert))
            }
            NotSlenderReason::LargeFreeFactor { left, right } => {
                format!("not slender (free product of {} and {})", set(left), set(right))
            }
            NotSlenderReason::IndefiniteComponent { vertices } => {
                format!("not slender (indefinite component {})", set(vertices))
            }
        },
        SlenderCertificate::Unknown { reason } => format!("unknown ({reason})"),
    }
}

fn component_kind(t: &IrreducibleType) -> String {
    if t.is_finite() {
        format!("finite {t}")
    } else if t.is_affine() {
        format!("affine {t}")
    } else {
        "indefinite".to_string()
    }
}

pub fn finiteness(f: &Finiteness) -> String {
    let comps: Vec<String> = f.components.iter().map(|(_, t)| component_kind(t)).collect();
    let mut s = match &f.order {
        Some(order) => format!("finite, order {order}"),
        None => "infinite".to_string(),
    };
    if !comps.is_empty() {
        s += ", ";
        s += &comps.join(" × ");
    }
    s
}

pub fn finiteness_json(g: &LabeledGraph, f: &Finiteness) -> serde_json::Value {
    json!({
        "finite": f.finite,
        "order": f.order.as_ref().map(|o| o.to_string()),
        "components": f.components.iter().map(|(vs, t)| json!({
            "vertices": g.ids(vs),
            "type": t.to_string(),
            "class": if t.is_finite() { "finite" } else if t.is_affine() { "affine" } else { "indefinite" },
        })).collect::<Vec<_>>(),
    })
}

pub fn census_table(r: &CensusReport, smallest: &Result<Option<(usize, usize)>, CensusError>) -> String {
    let mut out = format!(
        "census {} n={}..={}{}\n",
        r.flavor,
        r.min_vertices,
        r.max_vertices,
        if r.dedup { " (isomorphism classes)" } else { " (labelled graphs)" }
    );
    out += &format!("{:>3} {:>3} {:>10} {:>10} {:>8} {:>10}\n", "n", "e", "coherent", "incoherent", "unknown", "total");
    for c in &r.cells {
        out += &format!(
            "{:>3} {:>3} {:>10} {:>10} {:>8} {:>10}\n",
            c.n,
            c.e,
            c.coherent,
            c.incoherent,
            c.unknown,
            c.total()
        );
    }
    let (c, i, u) = r.totals();
    out += &format!("total: {c} coherent, {i} incoherent, {u} unknown\n");
    for cell in &r.cells {
        for entry in &cell.unknown_keys {
            out += &format!("unknown {}: {}\n", entry.key, entry.reasons.join(", "));
        }
    }
    out += &match smallest {
        Ok(Some((n, e))) => format!("smallest incoherent: ({n}, {e})\n"),
        Ok(None) => "smallest incoherent: none in range\n".to_string(),
        Err(e) => format!("smallest incoherent: undetermined ({e})\n"),
    };
    out += &format!("classified {} classes, resumed {}\n", r.classified, r.resumed);
    out
}
