//! String data: decorated walks and their compilation to complexes.
//!
//! A string is a finite type-A walk whose nodes carry a projective label and
//! an absolute homological position, and whose edges carry an orientation
//! and a decorating nonzero path. Interior nodes are always `P_*`; adjacent
//! decorations compose to zero when the edges point the same way and lie in
//! different letter families where the orientation turns. Taking a direct
//! sum over each position column compiles the walk into a complex of
//! projectives.

use crate::field::Scalar;
use crate::komplex::{ComboMat, ProjComplex};
use crate::pathalg::{
    compose_paths, parse_word, print_word, PathCombo, PathError, PathWord, Sign, Vertex,
};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::collections::BTreeMap;
use thiserror::Error;

pub const STRING_SCHEMA: &str = "deltand/stringspec/v1";

/// Edge orientation along the walk. `Fwd` maps the left node onto the right
/// one (left node one position higher); `Bwd` the opposite.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum Dir {
    #[serde(rename = "->")]
    Fwd,
    #[serde(rename = "<-")]
    Bwd,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct StringNode {
    pub vertex: Vertex,
    pub pos: i64,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct StringEdge {
    pub dir: Dir,
    pub decoration: PathWord,
}

/// A decorated walk. Invariants are checked by [`StringSpec::validate`].
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct StringSpec {
    nodes: Vec<StringNode>,
    edges: Vec<StringEdge>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StringError {
    #[error("walk is empty")]
    Empty,
    #[error("walk with {nodes} nodes needs {} edges, found {edges}", nodes - 1)]
    EdgeCount { nodes: usize, edges: usize },
    #[error("edge {edge}: positions must step by one against the orientation (found {upper} over {lower})")]
    BadPosition { edge: usize, upper: i64, lower: i64 },
    #[error("node {node} is interior but carries {vertex}, interior nodes must be star")]
    InteriorNotStar { node: usize, vertex: Vertex },
    #[error("edge {edge}: decoration is a lazy path; decorations must be non-trivial")]
    ZeroDecoration { edge: usize },
    #[error("edge {edge}: decoration runs from {src} to {tgt}, but the edge joins source {need_tgt} to sink {need_src}")]
    BadEndpoints {
        edge: usize,
        src: Vertex,
        tgt: Vertex,
        need_tgt: Vertex,
        need_src: Vertex,
    },
    #[error("edges {first} and {second} point the same way but their decorations compose to {got}, not zero")]
    ZeroCompositionViolated {
        first: usize,
        second: usize,
        got: String,
    },
    #[error("edges {first} and {second} meet at an orientation change with decorations from the same letter family")]
    BadAlternation { first: usize, second: usize },
    #[error(transparent)]
    Path(#[from] PathError),
    #[error("cannot parse string: {0}")]
    Parse(String),
}

impl StringSpec {
    pub fn new(nodes: Vec<StringNode>, edges: Vec<StringEdge>) -> Self {
        StringSpec { nodes, edges }
    }

    /// Single-node walk: a stalk.
    pub fn stalk(vertex: Vertex, pos: i64) -> Self {
        StringSpec {
            nodes: vec![StringNode { vertex, pos }],
            edges: Vec::new(),
        }
    }

    pub fn nodes(&self) -> &[StringNode] {
        &self.nodes
    }

    pub fn edges(&self) -> &[StringEdge] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Index of the edge's source node (the higher-position end).
    fn edge_source(&self, e: usize) -> usize {
        match self.edges[e].dir {
            Dir::Fwd => e,
            Dir::Bwd => e + 1,
        }
    }

    fn edge_sink(&self, e: usize) -> usize {
        match self.edges[e].dir {
            Dir::Fwd => e + 1,
            Dir::Bwd => e,
        }
    }

    pub fn validate(&self) -> Result<(), StringError> {
        if self.nodes.is_empty() {
            return Err(StringError::Empty);
        }
        if self.edges.len() + 1 != self.nodes.len() {
            return Err(StringError::EdgeCount {
                nodes: self.nodes.len(),
                edges: self.edges.len(),
            });
        }
        for (k, node) in self.nodes.iter().enumerate() {
            let interior = k > 0 && k + 1 < self.nodes.len();
            if interior && node.vertex != Vertex::Star {
                return Err(StringError::InteriorNotStar {
                    node: k,
                    vertex: node.vertex,
                });
            }
        }
        for (e, edge) in self.edges.iter().enumerate() {
            let src = self.edge_source(e);
            let sink = self.edge_sink(e);
            if self.nodes[src].pos != self.nodes[sink].pos + 1 {
                return Err(StringError::BadPosition {
                    edge: e,
                    upper: self.nodes[src].pos,
                    lower: self.nodes[sink].pos,
                });
            }
            if edge.decoration.is_empty() {
                return Err(StringError::ZeroDecoration { edge: e });
            }
            // Right multiplication by the decoration maps the projective at
            // the word's target onto the one at its source.
            let need_tgt = self.nodes[src].vertex;
            let need_src = self.nodes[sink].vertex;
            if edge.decoration.target() != need_tgt || edge.decoration.source() != need_src {
                return Err(StringError::BadEndpoints {
                    edge: e,
                    src: edge.decoration.source(),
                    tgt: edge.decoration.target(),
                    need_tgt,
                    need_src,
                });
            }
        }
        for k in 1..self.edges.len() {
            let first = &self.edges[k - 1];
            let second = &self.edges[k];
            match (first.dir, second.dir) {
                (Dir::Fwd, Dir::Fwd) => {
                    let composed = compose_paths(&first.decoration, &second.decoration)?;
                    if let Some(w) = composed {
                        return Err(StringError::ZeroCompositionViolated {
                            first: k - 1,
                            second: k,
                            got: print_word(&w),
                        });
                    }
                }
                (Dir::Bwd, Dir::Bwd) => {
                    let composed = compose_paths(&second.decoration, &first.decoration)?;
                    if let Some(w) = composed {
                        return Err(StringError::ZeroCompositionViolated {
                            first: k - 1,
                            second: k,
                            got: print_word(&w),
                        });
                    }
                }
                _ => {
                    if first.decoration.family() == second.decoration.family() {
                        return Err(StringError::BadAlternation {
                            first: k - 1,
                            second: k,
                        });
                    }
                }
            }
        }
        Ok(())
    }

    /// Sub-walk on a node range, used by normalization when a reduction
    /// splits the string.
    pub fn slice(&self, from_node: usize, to_node: usize) -> StringSpec {
        let nodes = self.nodes[from_node..=to_node].to_vec();
        let edges = if from_node == to_node {
            Vec::new()
        } else {
            self.edges[from_node..to_node].to_vec()
        };
        StringSpec { nodes, edges }
    }

    /// Collect walk nodes per position column and place each decoration in
    /// the differential matrix by orientation. Valid input compiles to a
    /// valid complex.
    pub fn compile<S: Scalar>(&self) -> ProjComplex<S> {
        let mut terms: BTreeMap<i64, Vec<Vertex>> = BTreeMap::new();
        let mut slot: Vec<usize> = Vec::with_capacity(self.nodes.len());
        for node in &self.nodes {
            let list = terms.entry(node.pos).or_default();
            slot.push(list.len());
            list.push(node.vertex);
        }
        let mut diffs: BTreeMap<i64, ComboMat<S>> = BTreeMap::new();
        for (e, edge) in self.edges.iter().enumerate() {
            let src = self.edge_source(e);
            let sink = self.edge_sink(e);
            let p = self.nodes[src].pos;
            let rows = terms.get(&(p - 1)).map_or(0, |v| v.len());
            let cols = terms[&p].len();
            let mat = diffs
                .entry(p)
                .or_insert_with(|| crate::komplex::zero_mat(rows, cols));
            mat[slot[sink]][slot[src]] = PathCombo::from_path(edge.decoration.clone());
        }
        ProjComplex::from_parts(terms, diffs)
    }

    pub fn shift(&self, n: i64) -> StringSpec {
        StringSpec {
            nodes: self
                .nodes
                .iter()
                .map(|nd| StringNode {
                    vertex: nd.vertex,
                    pos: nd.pos + n,
                })
                .collect(),
            edges: self.edges.clone(),
        }
    }
}

/// Every term of the complex is `P_*`; such objects die in the quotient.
pub fn is_in_star_subcategory<S: Scalar>(x: &ProjComplex<S>) -> bool {
    x.all_star()
}

// ---------------------------------------------------------------------------
// Minimal strings
// ---------------------------------------------------------------------------

/// Discrete datum of a minimal string: `l + 2` terms, single minimal-path
/// differentials, bottom term `P_tau` at position `shift`.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct MinStringSpec {
    pub tau: Sign,
    pub l: u32,
    pub shift: i64,
}

impl MinStringSpec {
    pub fn new(tau: Sign, l: u32, shift: i64) -> Result<Self, StringError> {
        if l == 0 {
            // No nonzero path of the required shape exists between the outer
            // projectives, so the two-term candidate is not a string.
            return Err(StringError::Parse(
                "minimal strings need l >= 1".to_string(),
            ));
        }
        Ok(MinStringSpec { tau, l, shift })
    }

    /// The top endpoint label: equal to `tau` exactly when `l` is even.
    pub fn sigma(&self) -> Sign {
        if self.l % 2 == 0 {
            self.tau
        } else {
            self.tau.flip()
        }
    }

    /// Expand into the underlying linear walk, top endpoint first.
    pub fn to_string_spec(&self) -> StringSpec {
        let l = self.l as usize;
        let top = self.shift + l as i64 + 1;
        let mut nodes = Vec::with_capacity(l + 2);
        nodes.push(StringNode {
            vertex: self.sigma().vertex(),
            pos: top,
        });
        for k in 1..=l {
            nodes.push(StringNode {
                vertex: Vertex::Star,
                pos: top - k as i64,
            });
        }
        nodes.push(StringNode {
            vertex: self.tau.vertex(),
            pos: self.shift,
        });
        let mut edges = Vec::with_capacity(l + 1);
        for i in 0..=l {
            let expr = if i == 0 {
                match self.sigma() {
                    Sign::Plus => "d",
                    Sign::Minus => "b",
                }
            } else if i == l {
                match self.tau {
                    Sign::Plus => "g",
                    Sign::Minus => "a",
                }
            } else {
                // Interior star-to-star decorations alternate families,
                // counted from the bottom edge upward.
                let from_bottom = l + 1 - i;
                let ab_family = match self.tau {
                    Sign::Plus => from_bottom % 2 == 0,
                    Sign::Minus => from_bottom % 2 == 1,
                };
                if ab_family {
                    "ab"
                } else {
                    "gd"
                }
            };
            edges.push(StringEdge {
                dir: Dir::Fwd,
                decoration: parse_word(expr).expect("fixed minimal decorations parse"),
            });
        }
        StringSpec { nodes, edges }
    }

    pub fn compile<S: Scalar>(&self) -> ProjComplex<S> {
        self.to_string_spec().compile()
    }
}

// ---------------------------------------------------------------------------
// Text DSL
// ---------------------------------------------------------------------------

/// Parse the walk DSL: node tokens `P-`, `P*`, `P+` (optionally `@pos`)
/// alternating with edge tokens `|path>` / `<path|`, e.g.
///
/// ```text
/// P-@1 |b(ab)^2> P* <gd| P* |gd> P*
/// ```
///
/// Positions omitted from all but one node (or from all nodes, anchoring the
/// first at 0) are derived from the orientations.
pub fn parse_dsl(input: &str) -> Result<StringSpec, StringError> {
    let tokens: Vec<&str> = input.split_whitespace().collect();
    if tokens.is_empty() {
        return Err(StringError::Empty);
    }
    let mut vertices: Vec<(Vertex, Option<i64>)> = Vec::new();
    let mut edges: Vec<StringEdge> = Vec::new();
    for (k, tok) in tokens.iter().enumerate() {
        if k % 2 == 0 {
            let (vtx_part, pos_part) = match tok.split_once('@') {
                Some((v, p)) => (v, Some(p)),
                None => (*tok, None),
            };
            let vertex = match vtx_part {
                "P-" => Vertex::Minus,
                "P*" => Vertex::Star,
                "P+" => Vertex::Plus,
                other => {
                    return Err(StringError::Parse(format!(
                        "expected a node token P-, P* or P+, found {other:?}"
                    )))
                }
            };
            let pos = match pos_part {
                Some(p) => Some(p.parse::<i64>().map_err(|_| {
                    StringError::Parse(format!("bad position in token {tok:?}"))
                })?),
                None => None,
            };
            vertices.push((vertex, pos));
        } else {
            let edge = if let Some(rest) = tok.strip_prefix('|') {
                let expr = rest.strip_suffix('>').ok_or_else(|| {
                    StringError::Parse(format!("edge token {tok:?} must end with '>'"))
                })?;
                StringEdge {
                    dir: Dir::Fwd,
                    decoration: parse_word(expr)?,
                }
            } else if let Some(rest) = tok.strip_prefix('<') {
                let expr = rest.strip_suffix('|').ok_or_else(|| {
                    StringError::Parse(format!("edge token {tok:?} must end with '|'"))
                })?;
                StringEdge {
                    dir: Dir::Bwd,
                    decoration: parse_word(expr)?,
                }
            } else {
                return Err(StringError::Parse(format!(
                    "expected an edge token |path> or <path|, found {tok:?}"
                )));
            };
            edges.push(edge);
        }
    }
    if vertices.len() != edges.len() + 1 {
        return Err(StringError::Parse(
            "walk must alternate node and edge tokens, ending on a node".to_string(),
        ));
    }
    // Derive positions from the orientations, anchored by the explicit ones.
    let mut offset: Vec<i64> = vec![0];
    for edge in &edges {
        let last = *offset.last().unwrap();
        offset.push(match edge.dir {
            Dir::Fwd => last - 1,
            Dir::Bwd => last + 1,
        });
    }
    let mut anchor: Option<i64> = None;
    for (k, (_, pos)) in vertices.iter().enumerate() {
        if let Some(p) = pos {
            let base = p - offset[k];
            match anchor {
                None => anchor = Some(base),
                Some(b) if b != base => {
                    return Err(StringError::Parse(format!(
                        "explicit position on node {k} conflicts with the orientations"
                    )))
                }
                Some(_) => {}
            }
        }
    }
    let base = anchor.unwrap_or(0);
    let nodes = vertices
        .into_iter()
        .enumerate()
        .map(|(k, (vertex, _))| StringNode {
            vertex,
            pos: base + offset[k],
        })
        .collect();
    Ok(StringSpec::new(nodes, edges))
}

/// Canonical DSL form; the first node carries the anchoring position.
pub fn print_dsl(s: &StringSpec) -> String {
    let mut out = String::new();
    for (k, node) in s.nodes().iter().enumerate() {
        if k > 0 {
            let edge = &s.edges()[k - 1];
            let expr = print_word(&edge.decoration);
            match edge.dir {
                Dir::Fwd => out.push_str(&format!(" |{expr}> ")),
                Dir::Bwd => out.push_str(&format!(" <{expr}| ")),
            }
        }
        out.push('P');
        out.push_str(node.vertex.symbol());
        if k == 0 {
            out.push_str(&format!("@{}", node.pos));
        }
    }
    out
}

// ---------------------------------------------------------------------------
// JSON form
// ---------------------------------------------------------------------------

#[derive(Serialize, Deserialize)]
struct NodeJson {
    vertex: Vertex,
    pos: i64,
}

#[derive(Serialize, Deserialize)]
struct EdgeJson {
    dir: Dir,
    decoration: String,
}

#[derive(Serialize, Deserialize)]
struct StringJson {
    #[serde(skip_serializing_if = "Option::is_none", default)]
    schema: Option<String>,
    nodes: Vec<NodeJson>,
    edges: Vec<EdgeJson>,
}

impl Serialize for StringSpec {
    fn serialize<Ser: Serializer>(&self, serializer: Ser) -> Result<Ser::Ok, Ser::Error> {
        StringJson {
            schema: Some(STRING_SCHEMA.to_string()),
            nodes: self
                .nodes
                .iter()
                .map(|n| NodeJson {
                    vertex: n.vertex,
                    pos: n.pos,
                })
                .collect(),
            edges: self
                .edges
                .iter()
                .map(|e| EdgeJson {
                    dir: e.dir,
                    decoration: print_word(&e.decoration),
                })
                .collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for StringSpec {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let json = StringJson::deserialize(deserializer)?;
        if let Some(schema) = &json.schema {
            if schema != STRING_SCHEMA {
                return Err(D::Error::custom(format!(
                    "unsupported schema {schema:?}, expected {STRING_SCHEMA:?}"
                )));
            }
        }
        let nodes = json
            .nodes
            .into_iter()
            .map(|n| StringNode {
                vertex: n.vertex,
                pos: n.pos,
            })
            .collect();
        let edges: Result<Vec<StringEdge>, D::Error> = json
            .edges
            .into_iter()
            .map(|e| {
                Ok(StringEdge {
                    dir: e.dir,
                    decoration: parse_word(&e.decoration)
                        .map_err(|err| D::Error::custom(format!("decoration: {err}")))?,
                })
            })
            .collect();
        Ok(StringSpec::new(nodes, edges?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::F32003;

    /// The zigzag walk with decorations `b(ab)^n, (gd)^m, (ab)^l, (gd)^k`.
    pub(crate) fn grid_walk(n: u32, m: u32, l: u32, k: u32) -> StringSpec {
        let dsl = format!(
            "P-@1 |{}> P* <{}| P* <{}| P* |{}> P*",
            power_expr('b', 'a', 'b', n),
            loop_expr('g', 'd', m),
            loop_expr('a', 'b', l),
            loop_expr('g', 'd', k),
        );
        parse_dsl(&dsl).unwrap()
    }

    fn loop_expr(x: char, y: char, reps: u32) -> String {
        format!("({x}{y})^{reps}")
    }

    fn power_expr(head: char, x: char, y: char, reps: u32) -> String {
        format!("{head}({x}{y})^{reps}")
    }

    #[test]
    fn grid_walk_validates_and_compiles() {
        let s = grid_walk(1, 2, 1, 3);
        assert_eq!(s.validate(), Ok(()));
        let c: ProjComplex<F32003> = s.compile();
        assert_eq!(c.validate(), Ok(()));
        // Columns: one star at 2, (minus, star, star) at 1, one star at 0.
        assert_eq!(c.terms_at(2), &[Vertex::Star]);
        assert_eq!(
            c.terms_at(1),
            &[Vertex::Minus, Vertex::Star, Vertex::Star]
        );
        assert_eq!(c.terms_at(0), &[Vertex::Star]);
        // d1 column under the star at 2 holds (ab)^l and (gd)^k.
        let d2 = c.diff_at(2).unwrap();
        assert_eq!(d2[0][0].to_expr(), "0");
        assert_eq!(d2[1][0].to_expr(), "ab");
        assert_eq!(d2[2][0].to_expr(), "(gd)^3");
        let d1 = c.diff_at(1).unwrap();
        assert_eq!(d1[0][0].to_expr(), "b(ab)^1");
        assert_eq!(d1[0][1].to_expr(), "(gd)^2");
        assert_eq!(d1[0][2].to_expr(), "0");
    }

    #[test]
    fn same_direction_nonzero_composite_rejected() {
        // (ab)^i then (gd)^j pointing the same way composes to zero, which is
        // fine; (ab)^i then (ab)^j composes to a nonzero loop and is not.
        let ok = parse_dsl("P* |(ab)^2> P* |(gd)^1> P*").unwrap();
        assert_eq!(ok.validate(), Ok(()));
        let bad = parse_dsl("P* |(ab)^2> P* |(ab)^1> P*").unwrap();
        assert!(matches!(
            bad.validate(),
            Err(StringError::ZeroCompositionViolated { .. })
        ));
    }

    #[test]
    fn alternation_enforced_at_turns() {
        let bad = parse_dsl("P* |(ab)^1> P* <(ab)^2| P*").unwrap();
        assert!(matches!(
            bad.validate(),
            Err(StringError::BadAlternation { .. })
        ));
        let ok = parse_dsl("P* |(ab)^1> P* <(gd)^2| P*").unwrap();
        assert_eq!(ok.validate(), Ok(()));
    }

    #[test]
    fn single_vertex_walk_is_fine() {
        let s = StringSpec::stalk(Vertex::Plus, 0);
        assert_eq!(s.validate(), Ok(()));
        let c: ProjComplex<F32003> = s.compile();
        assert_eq!(c.terms_at(0), &[Vertex::Plus]);
    }

    #[test]
    fn interior_must_be_star() {
        let s = parse_dsl("P* |gd> P+ |g> P*");
        // P+ <- P* needs decoration endpoints, but even before that the
        // interior label is wrong.
        let s = s.unwrap();
        assert!(matches!(
            s.validate(),
            Err(StringError::InteriorNotStar { node: 1, .. })
        ));
    }

    #[test]
    fn min_string_examples_match_displayed_resolutions() {
        let s1 = MinStringSpec::new(Sign::Plus, 1, 0).unwrap();
        assert_eq!(s1.sigma(), Sign::Minus);
        let c: ProjComplex<F32003> = s1.compile();
        assert_eq!(c.validate(), Ok(()));
        assert_eq!(c.terms_at(2), &[Vertex::Minus]);
        assert_eq!(c.terms_at(1), &[Vertex::Star]);
        assert_eq!(c.terms_at(0), &[Vertex::Plus]);
        assert_eq!(c.diff_at(2).unwrap()[0][0].to_expr(), "b");
        assert_eq!(c.diff_at(1).unwrap()[0][0].to_expr(), "g");

        let s2 = MinStringSpec::new(Sign::Plus, 2, 0).unwrap();
        assert_eq!(s2.sigma(), Sign::Plus);
        let c: ProjComplex<F32003> = s2.compile();
        assert_eq!(c.validate(), Ok(()));
        assert_eq!(c.diff_at(3).unwrap()[0][0].to_expr(), "d");
        assert_eq!(c.diff_at(2).unwrap()[0][0].to_expr(), "ab");
        assert_eq!(c.diff_at(1).unwrap()[0][0].to_expr(), "g");

        let sm = MinStringSpec::new(Sign::Minus, 2, 0).unwrap();
        let c: ProjComplex<F32003> = sm.compile();
        assert_eq!(c.validate(), Ok(()));
        assert_eq!(c.diff_at(3).unwrap()[0][0].to_expr(), "b");
        assert_eq!(c.diff_at(2).unwrap()[0][0].to_expr(), "gd");
        assert_eq!(c.diff_at(1).unwrap()[0][0].to_expr(), "a");
    }

    #[test]
    fn min_strings_validate_for_all_small_parameters() {
        for tau in [Sign::Plus, Sign::Minus] {
            for l in 1..=9u32 {
                for shift in [-3i64, 0, 2] {
                    let ms = MinStringSpec::new(tau, l, shift).unwrap();
                    let walk = ms.to_string_spec();
                    assert_eq!(walk.validate(), Ok(()), "tau={tau:?} l={l}");
                    let c: ProjComplex<F32003> = walk.compile();
                    assert_eq!(c.validate(), Ok(()), "tau={tau:?} l={l}");
                    assert_eq!(c.terms_at(shift), &[ms.tau.vertex()]);
                    assert_eq!(c.term_count() as u32, l + 2);
                }
            }
        }
        assert!(MinStringSpec::new(Sign::Plus, 0, 0).is_err());
    }

    #[test]
    fn dsl_roundtrip() {
        let s = grid_walk(0, 1, 2, 1);
        let text = print_dsl(&s);
        let back = parse_dsl(&text).unwrap();
        assert_eq!(back, s);
        let json = serde_json::to_string(&s).unwrap();
        let back2: StringSpec = serde_json::from_str(&json).unwrap();
        assert_eq!(back2, s);
    }

    #[test]
    fn star_subcategory_membership() {
        let band_like = parse_dsl("P* |ab> P*").unwrap();
        assert!(is_in_star_subcategory::<F32003>(&band_like.compile()));
        let s1: ProjComplex<F32003> = MinStringSpec::new(Sign::Plus, 1, 0).unwrap().compile();
        assert!(!is_in_star_subcategory(&s1));
        assert!(is_in_star_subcategory::<F32003>(&ProjComplex::empty()));
    }

    #[test]
    fn dsl_position_anchoring() {
        let a = parse_dsl("P- |b> P* |g> P+").unwrap();
        assert_eq!(a.nodes()[0].pos, 0);
        assert_eq!(a.nodes()[2].pos, -2);
        let b = parse_dsl("P- |b> P* |g> P+@0").unwrap();
        assert_eq!(b.nodes()[0].pos, 2);
        let conflict = parse_dsl("P-@0 |b> P*@0 |g> P+");
        assert!(conflict.is_err());
    }
}
