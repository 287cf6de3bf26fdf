//! Serialization of inequality systems, point sets and crystal graphs.
//!
//! JSON is canonical: fixed key order, forms in set order, integers only, so
//! parsing and re-emitting reproduces the same bytes.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write;

use polycrystal::forms::{FormSet, LinearForm};
use polycrystal::zcrystal::{Pos, ZVector};
use polycrystal::{Error, Result};
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Coeff {
    pub j: usize,
    pub i: usize,
    pub c: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormJson {
    pub constant_abs: i64,
    pub constant_lambda: Vec<i64>,
    pub coeffs: Vec<Coeff>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SystemJson {
    #[serde(rename = "type")]
    pub type_label: String,
    pub rank: usize,
    pub object: String,
    pub lambda: Option<Vec<i64>>,
    pub source: String,
    pub forms: Vec<FormJson>,
}

/// Describes which system a form set belongs to.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Header {
    pub type_label: String,
    pub rank: usize,
    pub object: String,
    pub lambda: Option<Vec<i64>>,
    pub source: String,
}

impl Header {
    /// `B3` or `F4`; exceptional labels already carry their rank.
    pub fn name(&self) -> String {
        if self.type_label.ends_with(|c: char| c.is_ascii_digit()) {
            self.type_label.clone()
        } else {
            format!("{}{}", self.type_label, self.rank)
        }
    }
}

fn form_to_json(f: &LinearForm) -> FormJson {
    FormJson {
        constant_abs: f.absolute(),
        constant_lambda: f.lambda_part().to_vec(),
        coeffs: f
            .coeffs()
            .iter()
            .map(|&(p, c)| Coeff {
                j: p.row,
                i: p.col,
                c,
            })
            .collect(),
    }
}

fn form_from_json(f: &FormJson, rank: usize) -> Result<LinearForm> {
    if f.constant_lambda.len() != rank {
        return Err(Error::WeightLength {
            expected: rank,
            got: f.constant_lambda.len(),
        });
    }
    let mut terms = Vec::with_capacity(f.coeffs.len());
    for c in &f.coeffs {
        if c.j == 0 || c.i == 0 || c.i > rank {
            return Err(Error::Invalid(format!(
                "position ({};{}) out of range",
                c.j, c.i
            )));
        }
        terms.push((Pos::new(c.j, c.i), c.c));
    }
    Ok(
        LinearForm::from_terms(rank, terms)
            .with_constant(f.constant_lambda.clone(), f.constant_abs),
    )
}

pub fn system_to_json(header: &Header, forms: &FormSet) -> String {
    let doc = SystemJson {
        type_label: header.type_label.clone(),
        rank: header.rank,
        object: header.object.clone(),
        lambda: header.lambda.clone(),
        source: header.source.clone(),
        forms: forms.iter().map(form_to_json).collect(),
    };
    let mut s = serde_json::to_string_pretty(&doc).expect("plain data serializes");
    s.push('\n');
    s
}

pub fn system_from_json(text: &str) -> Result<(Header, FormSet)> {
    let doc: SystemJson = serde_json::from_str(text).map_err(|e| Error::Parse {
        input: "JSON system".into(),
        reason: e.to_string(),
    })?;
    let forms = doc
        .forms
        .iter()
        .map(|f| form_from_json(f, doc.rank))
        .collect::<Result<FormSet>>()?;
    let header = Header {
        type_label: doc.type_label,
        rank: doc.rank,
        object: doc.object,
        lambda: doc.lambda,
        source: doc.source,
    };
    Ok((header, forms))
}

/// Whether `f` reads `x_a − x_b` or `x_a` with no constant, i.e. is one link
/// of a chain `x_a ≥ x_b ≥ … ≥ 0`.
fn chain_link(f: &LinearForm) -> Option<(Pos, Option<Pos>)> {
    if f.has_constant() {
        return None;
    }
    match f.coeffs() {
        [(p, 1)] => Some((*p, None)),
        [(p, 1), (q, -1)] => Some((*p, Some(*q))),
        [(q, -1), (p, 1)] => Some((*p, Some(*q))),
        _ => None,
    }
}

fn coord(p: Pos) -> String {
    format!("x_{{{};{}}}", p.row, p.col)
}

/// Human-readable listing: links `x_a − x_b`, `x_a` are joined into chains
/// `x_a ≥ x_b ≥ … ≥ 0`; every other form gets its own line `φ ≥ 0`. Each form
/// appears exactly once.
pub fn system_to_text(header: &Header, forms: &FormSet) -> String {
    let mut out = String::new();
    let lambda = header
        .lambda
        .as_ref()
        .map(|l| format!(" λ = ({})", join(l)))
        .unwrap_or_default();
    let _ = writeln!(
        out,
        "# {} {}{} [{}]",
        header.name(),
        header.object,
        lambda,
        header.source
    );

    let mut next: BTreeMap<Pos, BTreeSet<Option<Pos>>> = BTreeMap::new();
    let mut has_incoming: BTreeMap<Pos, usize> = BTreeMap::new();
    let mut others = Vec::new();
    for f in forms {
        match chain_link(f) {
            Some((a, b)) => {
                next.entry(a).or_default().insert(b);
                if let Some(b) = b {
                    *has_incoming.entry(b).or_default() += 1;
                }
            }
            None => others.push(f),
        }
    }
    loop {
        // Prefer starting where nothing points in, so chains come out whole.
        let start = next
            .iter()
            .find(|(a, s)| !s.is_empty() && has_incoming.get(a).copied().unwrap_or(0) == 0)
            .or_else(|| next.iter().find(|(_, s)| !s.is_empty()))
            .map(|(a, _)| *a);
        let Some(mut cur) = start else { break };
        let mut line = coord(cur);
        loop {
            let Some(set) = next.get_mut(&cur) else { break };
            let Some(&step) = set.iter().next() else {
                break;
            };
            set.remove(&step);
            match step {
                Some(b) => {
                    *has_incoming.get_mut(&b).expect("counted") -= 1;
                    line.push_str(" ≥ ");
                    line.push_str(&coord(b));
                    cur = b;
                }
                None => {
                    line.push_str(" ≥ 0");
                    break;
                }
            }
        }
        let _ = writeln!(out, "{line}");
    }
    for f in others {
        let _ = writeln!(out, "{f} ≥ 0");
    }
    let _ = writeln!(out, "# forms: {}", forms.len());
    out
}

fn join(v: &[i64]) -> String {
    v.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

fn padded_key(v: &ZVector, len: usize) -> Vec<i64> {
    let mut k = v.as_flat().to_vec();
    k.resize(len, 0);
    k
}

/// Sorts vectors lexicographically on their flattened, zero-padded entries.
pub fn sorted_vectors<'a>(vs: impl IntoIterator<Item = &'a ZVector>) -> Vec<&'a ZVector> {
    let mut vs: Vec<&ZVector> = vs.into_iter().collect();
    let len = vs.iter().map(|v| v.len()).max().unwrap_or(0);
    vs.sort_by_cached_key(|v| padded_key(v, len));
    vs
}

#[derive(Serialize)]
struct PointsJson<'a> {
    #[serde(rename = "type")]
    type_label: &'a str,
    rank: usize,
    object: &'a str,
    lambda: Option<&'a [i64]>,
    source: &'a str,
    depth: Option<usize>,
    count: usize,
    points: Vec<Vec<Coeff>>,
}

fn vector_coeffs(v: &ZVector) -> Vec<Coeff> {
    v.nonzero()
        .map(|(p, c)| Coeff {
            j: p.row,
            i: p.col,
            c,
        })
        .collect()
}

pub fn points_to_json(header: &Header, depth: Option<usize>, points: &BTreeSet<ZVector>) -> String {
    let doc = PointsJson {
        type_label: &header.type_label,
        rank: header.rank,
        object: &header.object,
        lambda: header.lambda.as_deref(),
        source: &header.source,
        depth,
        count: points.len(),
        points: sorted_vectors(points)
            .into_iter()
            .map(vector_coeffs)
            .collect(),
    };
    let mut s = serde_json::to_string_pretty(&doc).expect("plain data serializes");
    s.push('\n');
    s
}

pub fn points_to_text(points: &BTreeSet<ZVector>) -> String {
    let mut out = String::new();
    for v in sorted_vectors(points) {
        let _ = writeln!(out, "{v}");
    }
    let _ = writeln!(out, "# points: {}", points.len());
    out
}

/// A crystal graph with nodes in canonical order and edges
/// `(source, i, target)` by node index.
pub struct Graph {
    pub nodes: Vec<ZVector>,
    pub edges: Vec<(usize, usize, usize)>,
}

impl Graph {
    /// Reorders nodes canonically and remaps the edges.
    pub fn new(nodes: Vec<ZVector>, edges: Vec<(usize, usize, usize)>) -> Self {
        let order: Vec<ZVector> = sorted_vectors(&nodes).into_iter().cloned().collect();
        let index: BTreeMap<&ZVector, usize> =
            order.iter().enumerate().map(|(k, v)| (v, k)).collect();
        let mut edges: Vec<_> = edges
            .into_iter()
            .map(|(s, i, t)| (index[&nodes[s]], i, index[&nodes[t]]))
            .collect();
        edges.sort_unstable();
        Graph {
            nodes: order,
            edges,
        }
    }
}

fn dot_escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

pub fn graph_to_dot(name: &str, g: &Graph) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "digraph \"{}\" {{", dot_escape(name));
    for (k, v) in g.nodes.iter().enumerate() {
        let _ = writeln!(out, "    n{k} [label=\"{}\"];", dot_escape(&v.to_string()));
    }
    for &(s, i, t) in &g.edges {
        let _ = writeln!(out, "    n{s} -> n{t} [label=\"{i}\"];");
    }
    out.push_str("}\n");
    out
}

pub fn graph_to_text(g: &Graph) -> String {
    let mut out = String::new();
    for &(s, i, t) in &g.edges {
        let _ = writeln!(out, "{} -{i}-> {}", g.nodes[s], g.nodes[t]);
    }
    let _ = writeln!(out, "# nodes: {}, edges: {}", g.nodes.len(), g.edges.len());
    out
}

#[derive(Serialize)]
struct GraphJson {
    nodes: Vec<Vec<Coeff>>,
    edges: Vec<[usize; 3]>,
}

pub fn graph_to_json(g: &Graph) -> String {
    let doc = GraphJson {
        nodes: g.nodes.iter().map(vector_coeffs).collect(),
        edges: g.edges.iter().map(|&(s, i, t)| [s, i, t]).collect(),
    };
    let mut s = serde_json::to_string_pretty(&doc).expect("plain data serializes");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn header() -> Header {
        Header {
            type_label: "B".into(),
            rank: 2,
            object: "binf".into(),
            lambda: None,
            source: "table".into(),
        }
    }

    fn forms(src: &[&str]) -> FormSet {
        src.iter()
            .map(|s| LinearForm::parse(s, 2, None).unwrap())
            .collect()
    }

    #[test]
    fn json_round_trip_is_byte_identical() {
        let fs = forms(&[
            "x_{1;1}",
            "x_{1;2} - x_{2;1}",
            "λ_2 - x_{1;2} + 2x_{1;1}",
            "-x_{3;1}",
        ]);
        let text = system_to_json(&header(), &fs);
        let (h, back) = system_from_json(&text).unwrap();
        assert_eq!(h, header());
        assert_eq!(back, fs);
        assert_eq!(system_to_json(&h, &back), text);
    }

    #[test]
    fn json_has_fixed_key_order() {
        let text = system_to_json(&header(), &forms(&["x_{1;1}"]));
        let keys = [
            "\"type\"",
            "\"rank\"",
            "\"object\"",
            "\"lambda\"",
            "\"source\"",
            "\"forms\"",
        ];
        let at: Vec<usize> = keys.iter().map(|k| text.find(k).unwrap()).collect();
        assert!(at.windows(2).all(|w| w[0] < w[1]));
        let inner = [
            "\"constant_abs\"",
            "\"constant_lambda\"",
            "\"coeffs\"",
            "\"j\"",
            "\"i\"",
            "\"c\"",
        ];
        let at: Vec<usize> = inner.iter().map(|k| text.find(k).unwrap()).collect();
        assert!(at.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn malformed_json_is_rejected() {
        assert!(system_from_json("{").is_err());
        let bad = system_to_json(&header(), &forms(&["x_{1;1}"])).replace("\"i\": 1", "\"i\": 7");
        assert!(system_from_json(&bad).is_err());
    }

    #[test]
    fn text_joins_chains() {
        let fs = forms(&[
            "x_{1;1}",
            "x_{1;2} - x_{2;1}",
            "x_{2;1} - x_{2;2}",
            "x_{2;2}",
            "-x_{3;1}",
        ]);
        let text = system_to_text(&header(), &fs);
        assert!(text.contains("x_{1;1} ≥ 0\n"), "{text}");
        assert!(text.contains("x_{1;2} ≥ x_{2;1} ≥ x_{2;2} ≥ 0\n"), "{text}");
        assert!(text.contains("-x_{3;1} ≥ 0\n"), "{text}");
        assert!(text.ends_with("# forms: 5\n"));
    }

    #[test]
    fn dot_output_is_sorted_and_labelled() {
        let z = ZVector::zero(1);
        let a = ZVector::from_flat(1, &[1]);
        let b = ZVector::from_flat(1, &[2]);
        let g = Graph::new(vec![b.clone(), z, a], vec![(1, 1, 2), (2, 1, 0)]);
        let dot = graph_to_dot("A1", &g);
        assert!(
            dot.starts_with("digraph \"A1\" {\n    n0 [label=\"{}\"];"),
            "{dot}"
        );
        assert!(dot.contains("n0 -> n1 [label=\"1\"];"));
        assert!(dot.contains("n1 -> n2 [label=\"1\"];"));
    }
}
