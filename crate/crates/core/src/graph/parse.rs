//! JSON and DOT ingestion.

use serde::{Deserialize, Serialize};

use super::{AbelianGroupLabel, EdgeSpec, GraphError, LabeledGraph, Vertex};

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphDocument {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub flavor: Option<String>,
    pub vertices: Vec<VertexDocument>,
    #[serde(default)]
    pub edges: Vec<EdgeDocument>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VertexDocument {
    pub id: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub group: Option<GroupDocument>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupDocument {
    #[serde(default)]
    pub rank: u32,
    #[serde(default)]
    pub torsion: Vec<u64>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeDocument {
    pub u: String,
    pub v: String,
    #[serde(default = "default_label")]
    pub label: i64,
}

fn default_label() -> i64 {
    2
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum FlavorHint {
    GraphProduct,
    Artin,
    Coxeter,
}

impl FlavorHint {
    fn parse(s: &str) -> Result<Self, GraphError> {
        match s {
            "graph_product" => Ok(FlavorHint::GraphProduct),
            "artin" => Ok(FlavorHint::Artin),
            "coxeter" => Ok(FlavorHint::Coxeter),
            other => Err(GraphError::Json(format!("unknown flavor `{other}`"))),
        }
    }

    fn name(self) -> &'static str {
        match self {
            FlavorHint::GraphProduct => "graph_product",
            FlavorHint::Artin => "artin",
            FlavorHint::Coxeter => "coxeter",
        }
    }

    fn fixed_group(self) -> Option<AbelianGroupLabel> {
        match self {
            FlavorHint::GraphProduct => None,
            FlavorHint::Artin => Some(AbelianGroupLabel::z()),
            FlavorHint::Coxeter => Some(AbelianGroupLabel::z2()),
        }
    }
}

fn resolve_group(
    id: &str,
    given: Option<AbelianGroupLabel>,
    flavor: Option<FlavorHint>,
) -> Result<AbelianGroupLabel, GraphError> {
    let fixed = flavor.and_then(FlavorHint::fixed_group);
    match (given, fixed) {
        (Some(g), Some(f)) if g != f => Err(GraphError::FlavorConflict {
            id: id.to_string(),
            group: g.to_string(),
            flavor: flavor.unwrap().name().to_string(),
        }),
        (Some(g), _) => Ok(g),
        (None, Some(f)) => Ok(f),
        (None, None) => Err(GraphError::MissingGroup(id.to_string())),
    }
}

fn build(
    flavor: Option<FlavorHint>,
    vertices: Vec<(String, Option<AbelianGroupLabel>)>,
    edges: Vec<EdgeSpec>,
) -> Result<LabeledGraph, GraphError> {
    if flavor == Some(FlavorHint::GraphProduct) {
        if let Some(e) = edges.iter().find(|e| e.label != 2) {
            if e.label >= 2 {
                return Err(GraphError::GraphProductLabel(e.u.clone(), e.v.clone()));
            }
        }
    }
    let vertices = vertices
        .into_iter()
        .map(|(id, g)| {
            let group = resolve_group(&id, g, flavor)?;
            Ok(Vertex { id, group })
        })
        .collect::<Result<Vec<_>, GraphError>>()?;
    LabeledGraph::new(vertices, &edges)
}

fn reject_bom(text: &str) -> Result<(), GraphError> {
    if text.starts_with('\u{feff}') {
        Err(GraphError::ByteOrderMark)
    } else {
        Ok(())
    }
}

/// Parses either format, deciding by the first non-blank character.
pub fn parse_graph(text: &str) -> Result<LabeledGraph, GraphError> {
    reject_bom(text)?;
    if text.trim_start().starts_with('{') {
        parse_json(text)
    } else {
        parse_dot(text)
    }
}

pub fn parse_json(text: &str) -> Result<LabeledGraph, GraphError> {
    reject_bom(text)?;
    let doc: GraphDocument =
        serde_json::from_str(text).map_err(|e| GraphError::Json(e.to_string()))?;
    let flavor = doc.flavor.as_deref().map(FlavorHint::parse).transpose()?;
    let vertices = doc
        .vertices
        .into_iter()
        .map(|v| {
            let group = v
                .group
                .map(|g| AbelianGroupLabel::new(g.rank, &g.torsion))
                .transpose()?;
            Ok((v.id, group))
        })
        .collect::<Result<Vec<_>, GraphError>>()?;
    let edges = doc
        .edges
        .into_iter()
        .map(|e| EdgeSpec::new(e.u, e.v, e.label))
        .collect();
    build(flavor, vertices, edges)
}

/// Serialises a graph in the JSON format with explicit vertex groups.
pub fn to_json(g: &LabeledGraph) -> String {
    let doc = GraphDocument {
        flavor: None,
        vertices: g
            .vertices()
            .iter()
            .map(|v| VertexDocument {
                id: v.id.clone(),
                group: Some(GroupDocument {
                    rank: v.group.rank(),
                    torsion: v.group.torsion().to_vec(),
                }),
            })
            .collect(),
        edges: g
            .edges()
            .map(|(u, v, label)| EdgeDocument {
                u: g.id(u).to_string(),
                v: g.id(v).to_string(),
                label: label as i64,
            })
            .collect(),
    };
    serde_json::to_string_pretty(&doc).expect("graph documents serialise")
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Id(String),
    LBrace,
    RBrace,
    LBracket,
    RBracket,
    Eq,
    Sep,
    EdgeOp,
    Arrow,
}

fn tokenize(text: &str) -> Result<Vec<(Tok, usize)>, GraphError> {
    let err = |line, message: &str| GraphError::Dot {
        line,
        message: message.to_string(),
    };
    let chars: Vec<char> = text.chars().collect();
    let mut toks = Vec::new();
    let mut line = 1;
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            '\n' => {
                line += 1;
                i += 1;
            }
            c if c.is_whitespace() => i += 1,
            '#' => {
                while i < chars.len() && chars[i] != '\n' {
                    i += 1;
                }
            }
            '/' if chars.get(i + 1) == Some(&'/') => {
                while i < chars.len() && chars[i] != '\n' {
                    i += 1;
                }
            }
            '/' if chars.get(i + 1) == Some(&'*') => {
                i += 2;
                while i < chars.len() && !(chars[i] == '*' && chars.get(i + 1) == Some(&'/')) {
                    if chars[i] == '\n' {
                        line += 1;
                    }
                    i += 1;
                }
                if i >= chars.len() {
                    return Err(err(line, "unterminated comment"));
                }
                i += 2;
            }
            '{' => {
                toks.push((Tok::LBrace, line));
                i += 1;
            }
            '}' => {
                toks.push((Tok::RBrace, line));
                i += 1;
            }
            '[' => {
                toks.push((Tok::LBracket, line));
                i += 1;
            }
            ']' => {
                toks.push((Tok::RBracket, line));
                i += 1;
            }
            '=' => {
                toks.push((Tok::Eq, line));
                i += 1;
            }
            ';' | ',' => {
                toks.push((Tok::Sep, line));
                i += 1;
            }
            '-' if chars.get(i + 1) == Some(&'-') => {
                toks.push((Tok::EdgeOp, line));
                i += 2;
            }
            '-' if chars.get(i + 1) == Some(&'>') => {
                toks.push((Tok::Arrow, line));
                i += 2;
            }
            '"' => {
                let start_line = line;
                let mut s = String::new();
                i += 1;
                loop {
                    match chars.get(i) {
                        None => return Err(err(start_line, "unterminated string")),
                        Some('"') => break,
                        Some('\\') if chars.get(i + 1) == Some(&'"') => {
                            s.push('"');
                            i += 2;
                        }
                        Some(&ch) => {
                            if ch == '\n' {
                                line += 1;
                            }
                            s.push(ch);
                            i += 1;
                        }
                    }
                }
                i += 1;
                toks.push((Tok::Id(s), start_line));
            }
            c if c.is_alphanumeric() || c == '_' || c == '.' || c == '^' || c == '-' => {
                let mut s = String::new();
                while i < chars.len()
                    && (chars[i].is_alphanumeric() || matches!(chars[i], '_' | '.' | '^'))
                {
                    s.push(chars[i]);
                    i += 1;
                }
                if s.is_empty() {
                    // a lone '-' that is not an edge operator
                    s.push(c);
                    i += 1;
                    while i < chars.len() && chars[i].is_ascii_digit() {
                        s.push(chars[i]);
                        i += 1;
                    }
                }
                toks.push((Tok::Id(s), line));
            }
            other => return Err(err(line, &format!("unexpected character `{other}`"))),
        }
    }
    Ok(toks)
}

struct DotParser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
}

impl DotParser {
    fn line(&self) -> usize {
        self.toks
            .get(self.pos)
            .or(self.toks.last())
            .map_or(1, |t| t.1)
    }

    fn err(&self, message: impl Into<String>) -> GraphError {
        GraphError::Dot {
            line: self.line(),
            message: message.into(),
        }
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.0)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|t| t.0.clone());
        self.pos += 1;
        t
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<(), GraphError> {
        if self.peek() == Some(&tok) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(format!("expected {what}")))
        }
    }

    fn ident(&mut self) -> Result<String, GraphError> {
        match self.next() {
            Some(Tok::Id(s)) => Ok(s),
            _ => {
                self.pos -= 1;
                Err(self.err("expected identifier"))
            }
        }
    }

    fn attrs(&mut self) -> Result<Vec<(String, String, usize)>, GraphError> {
        let mut out = Vec::new();
        while self.peek() == Some(&Tok::LBracket) {
            self.pos += 1;
            loop {
                match self.peek() {
                    Some(Tok::RBracket) => {
                        self.pos += 1;
                        break;
                    }
                    Some(Tok::Sep) => self.pos += 1,
                    _ => {
                        let line = self.line();
                        let k = self.ident()?;
                        self.expect(Tok::Eq, "`=`")?;
                        let v = self.ident()?;
                        out.push((k, v, line));
                    }
                }
            }
        }
        Ok(out)
    }
}

/// Parses the supported DOT subset: one undirected `graph`, node attribute
/// `group`, edge attribute `label`, optional graph attribute `flavor`.
pub fn parse_dot(text: &str) -> Result<LabeledGraph, GraphError> {
    reject_bom(text)?;
    let mut p = DotParser {
        toks: tokenize(text)?,
        pos: 0,
    };
    let mut kw = p.ident()?;
    if kw.eq_ignore_ascii_case("strict") {
        kw = p.ident()?;
    }
    if kw.eq_ignore_ascii_case("digraph") {
        return Err(p.err("directed graphs are not supported"));
    }
    if !kw.eq_ignore_ascii_case("graph") {
        return Err(p.err("expected `graph`"));
    }
    if matches!(p.peek(), Some(Tok::Id(_))) {
        p.pos += 1;
    }
    p.expect(Tok::LBrace, "`{`")?;

    let mut flavor: Option<FlavorHint> = None;
    let mut default_group: Option<AbelianGroupLabel> = None;
    let mut default_label: i64 = 2;
    let mut order: Vec<String> = Vec::new();
    let mut groups: std::collections::HashMap<String, Option<AbelianGroupLabel>> =
        std::collections::HashMap::new();
    let mut edges: Vec<EdgeSpec> = Vec::new();

    let parse_group = |v: &str, line: usize| -> Result<AbelianGroupLabel, GraphError> {
        v.parse::<AbelianGroupLabel>().map_err(|e| match e {
            GraphError::InvalidGroupSyntax(_) => GraphError::Dot {
                line,
                message: format!("cannot parse group `{v}`"),
            },
            other => other,
        })
    };

    loop {
        match p.peek() {
            None => return Err(p.err("missing `}`")),
            Some(Tok::RBrace) => {
                p.pos += 1;
                break;
            }
            Some(Tok::Sep) => {
                p.pos += 1;
                continue;
            }
            _ => {}
        }
        let first = p.ident()?;
        match (first.as_str(), p.peek()) {
            ("graph" | "node" | "edge", Some(Tok::LBracket)) => {
                for (k, v, line) in p.attrs()? {
                    match (first.as_str(), k.as_str()) {
                        ("graph", "flavor") => flavor = Some(FlavorHint::parse(&v)?),
                        ("node", "group") => default_group = Some(parse_group(&v, line)?),
                        ("edge", "label") => {
                            default_label = v.parse().map_err(|_| GraphError::Dot {
                                line,
                                message: format!("edge label `{v}` is not an integer"),
                            })?
                        }
                        _ => {}
                    }
                }
            }
            (_, Some(Tok::Eq)) => {
                p.pos += 1;
                let v = p.ident()?;
                if first == "flavor" {
                    flavor = Some(FlavorHint::parse(&v)?);
                }
            }
            (_, Some(Tok::EdgeOp)) => {
                let mut chain = vec![first];
                while p.peek() == Some(&Tok::EdgeOp) {
                    p.pos += 1;
                    chain.push(p.ident()?);
                }
                if p.peek() == Some(&Tok::Arrow) {
                    return Err(p.err("directed edges are not supported"));
                }
                let mut label = default_label;
                for (k, v, line) in p.attrs()? {
                    if k == "label" {
                        label = v.parse().map_err(|_| GraphError::Dot {
                            line,
                            message: format!("edge label `{v}` is not an integer"),
                        })?;
                    }
                }
                for id in &chain {
                    if !groups.contains_key(id) {
                        groups.insert(id.clone(), None);
                        order.push(id.clone());
                    }
                }
                for w in chain.windows(2) {
                    edges.push(EdgeSpec::new(w[0].clone(), w[1].clone(), label));
                }
            }
            (_, Some(Tok::Arrow)) => return Err(p.err("directed edges are not supported")),
            _ => {
                let mut group = None;
                for (k, v, line) in p.attrs()? {
                    if k == "group" {
                        group = Some(parse_group(&v, line)?);
                    }
                }
                match groups.get_mut(&first) {
                    Some(slot) => {
                        if group.is_some() {
                            *slot = group;
                        }
                    }
                    None => {
                        groups.insert(first.clone(), group);
                        order.push(first);
                    }
                }
            }
        }
    }
    if p.peek().is_some() {
        return Err(p.err("trailing input after graph"));
    }
    let vertices = order
        .into_iter()
        .map(|id| {
            let g = groups[&id].clone().or_else(|| default_group.clone());
            (id, g)
        })
        .collect();
    build(flavor, vertices, edges)
}
