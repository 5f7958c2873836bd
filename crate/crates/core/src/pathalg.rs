//! The nodal quiver algebra.
//!
//! Three vertices `-`, `*`, `+` and four arrows
//!
//! ```text
//!   -  --a-->  *  --d-->  +
//!   -  <--b--  *  <--g--  +
//! ```
//!
//! (`a` = alpha: `-` to `*`, `b` = beta: `*` to `-`, `d` = delta: `*` to `+`,
//! `g` = gamma: `+` to `*`), subject to the monomial relations `da = 0` and
//! `bg = 0`.
//!
//! Words compose right-to-left: in `da`, the arrow `a` acts first. Since both
//! relations are words, normalization is subword rejection: a word is a
//! nonzero path exactly when it avoids `da` and `bg` as factors. The module
//! map induced by a path `p` from `x` to `y` is right multiplication
//! `.p : P_y -> P_x` on the indecomposable projectives.

use crate::field::Scalar;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

/// Quiver vertex.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Vertex {
    Minus,
    Star,
    Plus,
}

impl Vertex {
    pub const ALL: [Vertex; 3] = [Vertex::Minus, Vertex::Star, Vertex::Plus];

    pub fn symbol(self) -> &'static str {
        match self {
            Vertex::Minus => "-",
            Vertex::Star => "*",
            Vertex::Plus => "+",
        }
    }

    pub fn from_symbol(s: &str) -> Option<Vertex> {
        match s {
            "-" => Some(Vertex::Minus),
            "*" => Some(Vertex::Star),
            "+" => Some(Vertex::Plus),
            _ => None,
        }
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

/// Non-star vertex label; the discrete sign parameter of the engine.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub enum Sign {
    #[serde(rename = "-")]
    Minus,
    #[serde(rename = "+")]
    Plus,
}

impl Sign {
    pub fn vertex(self) -> Vertex {
        match self {
            Sign::Minus => Vertex::Minus,
            Sign::Plus => Vertex::Plus,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Minus => Sign::Plus,
            Sign::Plus => Sign::Minus,
        }
    }

    pub fn from_vertex(v: Vertex) -> Option<Sign> {
        match v {
            Vertex::Minus => Some(Sign::Minus),
            Vertex::Plus => Some(Sign::Plus),
            Vertex::Star => None,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Sign::Minus => "-",
            Sign::Plus => "+",
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

/// Quiver arrow.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Arrow {
    Alpha,
    Beta,
    Gamma,
    Delta,
}

impl Arrow {
    pub const ALL: [Arrow; 4] = [Arrow::Alpha, Arrow::Beta, Arrow::Gamma, Arrow::Delta];

    pub fn source(self) -> Vertex {
        match self {
            Arrow::Alpha => Vertex::Minus,
            Arrow::Beta => Vertex::Star,
            Arrow::Gamma => Vertex::Plus,
            Arrow::Delta => Vertex::Star,
        }
    }

    pub fn target(self) -> Vertex {
        match self {
            Arrow::Alpha => Vertex::Star,
            Arrow::Beta => Vertex::Minus,
            Arrow::Gamma => Vertex::Star,
            Arrow::Delta => Vertex::Plus,
        }
    }

    pub fn letter(self) -> char {
        match self {
            Arrow::Alpha => 'a',
            Arrow::Beta => 'b',
            Arrow::Gamma => 'g',
            Arrow::Delta => 'd',
        }
    }

    pub fn from_letter(c: char) -> Option<Arrow> {
        match c {
            'a' => Some(Arrow::Alpha),
            'b' => Some(Arrow::Beta),
            'g' => Some(Arrow::Gamma),
            'd' => Some(Arrow::Delta),
            _ => None,
        }
    }
}

/// Is the adjacent letter pair `left right` (right acts first) a relation?
fn is_relation_pair(left: Arrow, right: Arrow) -> bool {
    matches!(
        (left, right),
        (Arrow::Delta, Arrow::Alpha) | (Arrow::Beta, Arrow::Gamma)
    )
}

/// Does the adjacent letter pair make the word non-minimal?
fn is_nonminimal_pair(left: Arrow, right: Arrow) -> bool {
    matches!(
        (left, right),
        (Arrow::Delta, Arrow::Gamma) | (Arrow::Beta, Arrow::Alpha)
    )
}

#[derive(Debug, Error, PartialEq, Eq, Clone)]
pub enum PathError {
    #[error("paths are not composable: target {right_target} of the right factor differs from source {left_source} of the left factor")]
    NonComposable {
        left_source: Vertex,
        right_target: Vertex,
    },
    #[error("letter sequence is not a path: arrow {at} cannot follow its right neighbour")]
    BrokenWord { at: usize },
    #[error("word is zero in the algebra (contains `da` or `bg`)")]
    ZeroWord,
    #[error("cannot parse path expression {0:?}: {1}")]
    Parse(String, String),
}

/// A nonzero path: a composable word avoiding the relation factors.
///
/// Letters are stored in display order, so `letters[0]` is the leftmost
/// arrow and acts last; the lazy path at `x` has no letters. For each
/// (source, target, length) there are at most two such paths.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct PathWord {
    source: Vertex,
    letters: Vec<Arrow>,
}

impl PathWord {
    pub fn lazy(v: Vertex) -> PathWord {
        PathWord {
            source: v,
            letters: Vec::new(),
        }
    }

    pub fn arrow(a: Arrow) -> PathWord {
        PathWord {
            source: a.source(),
            letters: vec![a],
        }
    }

    /// Build from letters in display order. `Ok(None)` means the word is a
    /// legal composition but zero in the algebra.
    pub fn try_new(letters: Vec<Arrow>) -> Result<Option<PathWord>, PathError> {
        if letters.is_empty() {
            return Err(PathError::Parse(
                String::new(),
                "empty letter list has no endpoints; use a lazy path".into(),
            ));
        }
        let mut zero = false;
        for i in 0..letters.len() - 1 {
            // letters[i] is left of letters[i + 1]
            if letters[i].source() != letters[i + 1].target() {
                return Err(PathError::BrokenWord { at: i });
            }
            if is_relation_pair(letters[i], letters[i + 1]) {
                zero = true;
            }
        }
        if zero {
            return Ok(None);
        }
        let source = letters.last().unwrap().source();
        Ok(Some(PathWord { source, letters }))
    }

    pub fn source(&self) -> Vertex {
        self.source
    }

    pub fn target(&self) -> Vertex {
        self.letters.first().map_or(self.source, |a| a.target())
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn letters(&self) -> &[Arrow] {
        &self.letters
    }

    /// No `dg` or `ba` factor. Lazy paths and single arrows are minimal.
    pub fn is_minimal(&self) -> bool {
        self.letters
            .windows(2)
            .all(|w| !is_nonminimal_pair(w[0], w[1]))
    }

    /// Letter family: `a`/`b` paths or `g`/`d` paths. Every nonzero path of
    /// positive length lies in exactly one family; lazy paths in neither.
    pub fn family(&self) -> Option<Family> {
        self.letters.first().map(|a| match a {
            Arrow::Alpha | Arrow::Beta => Family::AlphaBeta,
            Arrow::Gamma | Arrow::Delta => Family::GammaDelta,
        })
    }
}

/// The two letter families of nonzero paths.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Family {
    AlphaBeta,
    GammaDelta,
}

/// Graded order: by length, then source, then letters. Gives deterministic
/// bases and printed forms.
impl Ord for PathWord {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.len(), self.source, &self.letters).cmp(&(other.len(), other.source, &other.letters))
    }
}

impl PartialOrd for PathWord {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for PathWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print_word(self))
    }
}

/// Compose `p` after `q` (`q` acts first): the concatenated word `pq`.
///
/// Returns `Ok(None)` when the concatenation hits a relation factor.
/// Only the junction pair needs checking since both factors are nonzero.
pub fn compose_paths(p: &PathWord, q: &PathWord) -> Result<Option<PathWord>, PathError> {
    if p.source() != q.target() {
        return Err(PathError::NonComposable {
            left_source: p.source(),
            right_target: q.target(),
        });
    }
    if p.is_empty() {
        return Ok(Some(q.clone()));
    }
    if q.is_empty() {
        return Ok(Some(p.clone()));
    }
    let p_rightmost = *p.letters.last().unwrap();
    let q_leftmost = q.letters[0];
    if is_relation_pair(p_rightmost, q_leftmost) {
        return Ok(None);
    }
    let mut letters = p.letters.clone();
    letters.extend_from_slice(&q.letters);
    Ok(Some(PathWord {
        source: q.source,
        letters,
    }))
}

/// All nonzero paths with the given endpoints and length, in [`PathWord`]
/// order. Never more than two.
pub fn path_basis(from: Vertex, to: Vertex, length: usize) -> Vec<PathWord> {
    if length == 0 {
        return if from == to {
            vec![PathWord::lazy(from)]
        } else {
            Vec::new()
        };
    }
    // Grow words leftward from the source; the relation factors prune the
    // branching so at most two words stay alive per step.
    let mut live: Vec<Vec<Arrow>> = Arrow::ALL
        .iter()
        .filter(|a| a.source() == from)
        .map(|a| vec![*a])
        .collect();
    for _ in 1..length {
        let mut next = Vec::new();
        for w in &live {
            let leftmost = w[0];
            for a in Arrow::ALL {
                if a.source() == leftmost.target() && !is_relation_pair(a, leftmost) {
                    let mut extended = vec![a];
                    extended.extend_from_slice(w);
                    next.push(extended);
                }
            }
        }
        live = next;
    }
    let mut out: Vec<PathWord> = live
        .into_iter()
        .filter(|w| w[0].target() == to)
        .map(|letters| PathWord {
            source: from,
            letters,
        })
        .collect();
    out.sort();
    out
}

// ---------------------------------------------------------------------------
// Path expression grammar
// ---------------------------------------------------------------------------

/// Print in the canonical compressed form over `{a,b,g,d,e-,e*,e+}`:
/// `e*` / single letters / `ab` / `(gd)^2` / `b(ab)^3`.
pub fn print_word(w: &PathWord) -> String {
    let n = w.len();
    if n == 0 {
        return format!("e{}", w.source.symbol());
    }
    let ls = &w.letters;
    if n <= 2 {
        return ls.iter().map(|a| a.letter()).collect();
    }
    // Nonzero words alternate two letters, so only the leading letter and the
    // length matter.
    let x = ls[0].letter();
    let y = ls[1].letter();
    if n % 2 == 0 {
        format!("({x}{y})^{}", n / 2)
    } else {
        format!("{x}({y}{x})^{}", (n - 1) / 2)
    }
}

/// Parse a path expression: concatenation of letters and parenthesized
/// groups with optional `^k` powers, or a lazy token `e-`, `e*`, `e+`.
pub fn parse_word(input: &str) -> Result<PathWord, PathError> {
    let s: String = input.chars().filter(|c| !c.is_whitespace()).collect();
    let err = |m: &str| PathError::Parse(input.to_string(), m.to_string());
    if s.is_empty() {
        return Err(err("empty path expression"));
    }
    if let Some(rest) = s.strip_prefix('e') {
        let v = Vertex::from_symbol(rest).ok_or_else(|| err("expected e-, e* or e+"))?;
        return Ok(PathWord::lazy(v));
    }
    let mut letters: Vec<Arrow> = Vec::new();
    let chars: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        match chars[i] {
            '(' => {
                let close = chars[i..]
                    .iter()
                    .position(|&c| c == ')')
                    .map(|k| i + k)
                    .ok_or_else(|| err("unbalanced parenthesis"))?;
                let mut group = Vec::new();
                for &c in &chars[i + 1..close] {
                    group.push(Arrow::from_letter(c).ok_or_else(|| err("bad letter in group"))?);
                }
                if group.is_empty() {
                    return Err(err("empty group"));
                }
                i = close + 1;
                let mut power = 1usize;
                if i < chars.len() && chars[i] == '^' {
                    let start = i + 1;
                    let mut end = start;
                    while end < chars.len() && chars[end].is_ascii_digit() {
                        end += 1;
                    }
                    if end == start {
                        return Err(err("expected exponent digits after ^"));
                    }
                    power = s[start..end]
                        .parse()
                        .map_err(|_| err("exponent out of range"))?;
                    i = end;
                }
                for _ in 0..power {
                    letters.extend_from_slice(&group);
                }
            }
            c => {
                letters.push(Arrow::from_letter(c).ok_or_else(|| err("bad letter"))?);
                i += 1;
            }
        }
    }
    if letters.is_empty() {
        return Err(err("expression expands to an empty word; use a lazy token"));
    }
    match PathWord::try_new(letters)? {
        Some(w) => Ok(w),
        None => Err(PathError::ZeroWord),
    }
}

// ---------------------------------------------------------------------------
// Linear combinations
// ---------------------------------------------------------------------------

/// Finite field-linear combination of nonzero paths sharing one
/// (source, target) pair. The zero combination has no terms and is
/// compatible with any endpoints.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PathCombo<S: Scalar> {
    terms: BTreeMap<PathWord, S>,
}

impl<S: Scalar> Default for PathCombo<S> {
    fn default() -> Self {
        PathCombo::zero()
    }
}

impl<S: Scalar> PathCombo<S> {
    pub fn zero() -> Self {
        PathCombo {
            terms: BTreeMap::new(),
        }
    }

    pub fn from_path(w: PathWord) -> Self {
        Self::from_term(w, S::one())
    }

    pub fn from_term(w: PathWord, c: S) -> Self {
        let mut combo = Self::zero();
        combo.add_term(w, c);
        combo
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&PathWord, &S)> {
        self.terms.iter()
    }

    /// Common (source, target) of the stored words; `None` when zero.
    pub fn endpoints(&self) -> Option<(Vertex, Vertex)> {
        self.terms
            .keys()
            .next()
            .map(|w| (w.source(), w.target()))
    }

    /// Panics if the added word's endpoints clash with the stored ones;
    /// endpoint discipline is the caller's contract.
    pub fn add_term(&mut self, w: PathWord, c: S) {
        if c.is_zero() {
            return;
        }
        if let Some((s, t)) = self.endpoints() {
            assert!(
                w.source() == s && w.target() == t,
                "path combination mixes endpoints: ({s},{t}) vs ({},{})",
                w.source(),
                w.target()
            );
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(w) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                let sum = e.get().add(&c);
                if sum.is_zero() {
                    e.remove();
                } else {
                    e.insert(sum);
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (w, c) in other.terms() {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &S) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        PathCombo {
            terms: self
                .terms
                .iter()
                .map(|(w, v)| (w.clone(), v.mul(c)))
                .collect(),
        }
    }

    pub fn neg(&self) -> Self {
        PathCombo {
            terms: self
                .terms
                .iter()
                .map(|(w, v)| (w.clone(), v.neg()))
                .collect(),
        }
    }

    /// Bilinear extension of [`compose_paths`]; `first` acts first.
    ///
    /// For module maps this is composition: applying `.first` then `.then`
    /// multiplies by the concatenated word `first then`.
    pub fn compose(first: &Self, then: &Self) -> Result<Self, PathError> {
        let mut out = Self::zero();
        for (u, cu) in first.terms() {
            for (v, cv) in then.terms() {
                if let Some(w) = compose_paths(u, v)? {
                    out.add_term(w, cu.mul(cv));
                }
            }
        }
        Ok(out)
    }

    /// Largest path length among the terms; 0 when zero.
    pub fn max_len(&self) -> usize {
        self.terms.keys().map(|w| w.len()).max().unwrap_or(0)
    }

    /// All terms share one length (uniform internal degree). Zero combos
    /// report `Some(None)`-like behaviour via `None`.
    pub fn homogeneous_len(&self) -> Option<usize> {
        let mut lens = self.terms.keys().map(|w| w.len());
        let first = lens.next()?;
        if lens.all(|l| l == first) {
            Some(first)
        } else {
            None
        }
    }

    /// Canonical string form, e.g. `g + 2*(ab)^2`; `0` when zero.
    pub fn to_expr(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut parts = Vec::new();
        for (w, c) in self.terms() {
            if *c == S::one() {
                parts.push(print_word(w));
            } else {
                parts.push(format!("{}*{}", c, print_word(w)));
            }
        }
        parts.join(" + ")
    }

    /// Parse `0` or a `+`-separated list of `coef*path` / `path` terms.
    pub fn parse_expr(input: &str) -> Result<Self, PathError> {
        let trimmed = input.trim();
        if trimmed == "0" {
            return Ok(Self::zero());
        }
        let mut out = Self::zero();
        for part in trimmed.split('+') {
            let part = part.trim();
            if part.is_empty() {
                return Err(PathError::Parse(input.into(), "empty summand".into()));
            }
            let (coef, path_str) = match part.split_once('*') {
                Some((c, p)) => {
                    let coef = S::parse(c).ok_or_else(|| {
                        PathError::Parse(input.into(), format!("bad coefficient {c:?}"))
                    })?;
                    (coef, p)
                }
                None => (S::one(), part),
            };
            let w = parse_word(path_str)?;
            out.add_term(w, coef);
        }
        // Endpoint coherence comes for free from add_term's assertion, but a
        // parse-level check gives a proper error instead of a panic.
        Ok(out)
    }
}

/// Checked variant of expression parsing for untrusted input: catches the
/// endpoint mix instead of panicking.
pub fn parse_combo_checked<S: Scalar>(input: &str) -> Result<PathCombo<S>, PathError> {
    let trimmed = input.trim();
    if trimmed == "0" {
        return Ok(PathCombo::zero());
    }
    let mut words: Vec<(PathWord, S)> = Vec::new();
    for part in trimmed.split('+') {
        let part = part.trim();
        let (coef, path_str) = match part.split_once('*') {
            Some((c, p)) => (
                S::parse(c)
                    .ok_or_else(|| PathError::Parse(input.into(), format!("bad coefficient {c:?}")))?,
                p,
            ),
            None => (S::one(), part),
        };
        let w = parse_word(path_str)?;
        if let Some((first, _)) = words.first() {
            if first.source() != w.source() || first.target() != w.target() {
                return Err(PathError::Parse(
                    input.into(),
                    "summands have different endpoints".into(),
                ));
            }
        }
        words.push((w, coef));
    }
    let mut out = PathCombo::zero();
    for (w, c) in words {
        out.add_term(w, c);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::F32003;

    fn w(s: &str) -> PathWord {
        parse_word(s).unwrap()
    }

    #[test]
    fn relations_kill_compose() {
        // da = 0
        assert_eq!(
            compose_paths(&PathWord::arrow(Arrow::Delta), &PathWord::arrow(Arrow::Alpha)),
            Ok(None)
        );
        // bg = 0
        assert_eq!(
            compose_paths(&PathWord::arrow(Arrow::Beta), &PathWord::arrow(Arrow::Gamma)),
            Ok(None)
        );
    }

    #[test]
    fn lazy_identity() {
        let ab = w("ab");
        let estar = PathWord::lazy(Vertex::Star);
        assert_eq!(compose_paths(&estar, &ab).unwrap().unwrap(), ab);
        assert_eq!(compose_paths(&ab, &estar).unwrap().unwrap(), ab);
    }

    #[test]
    fn non_composable_rejected() {
        let err = compose_paths(&PathWord::arrow(Arrow::Gamma), &PathWord::arrow(Arrow::Beta));
        assert!(matches!(err, Err(PathError::NonComposable { .. })));
    }

    #[test]
    fn basis_star_loops() {
        let b = path_basis(Vertex::Star, Vertex::Star, 2);
        assert_eq!(b, vec![w("ab"), w("gd")]);
        assert_eq!(path_basis(Vertex::Plus, Vertex::Plus, 0), vec![w("e+")]);
    }

    #[test]
    fn no_paths_minus_to_plus() {
        for len in 0..12 {
            assert!(path_basis(Vertex::Minus, Vertex::Plus, len).is_empty());
            if len >= 1 {
                assert!(path_basis(Vertex::Plus, Vertex::Minus, len).is_empty());
            }
        }
    }

    #[test]
    fn basis_bound_two() {
        for from in Vertex::ALL {
            for to in Vertex::ALL {
                for len in 0..14 {
                    let b = path_basis(from, to, len);
                    assert!(b.len() <= 2, "{from}{to}{len}: {}", b.len());
                    for word in &b {
                        assert_eq!(word.source(), from);
                        assert_eq!(word.target(), to);
                        assert_eq!(word.len(), len);
                    }
                }
            }
        }
    }

    #[test]
    fn minimality() {
        assert!(w("ab").is_minimal());
        assert!(!w("b(ab)^1").is_minimal()); // bab contains ba
        assert!(w("a").is_minimal());
        assert!(!w("(dg)^1").is_minimal()); // dg itself
        assert!(w("gd").is_minimal());
    }

    #[test]
    fn print_parse_roundtrip() {
        for from in Vertex::ALL {
            for to in Vertex::ALL {
                for len in 0..11 {
                    for word in path_basis(from, to, len) {
                        let printed = print_word(&word);
                        assert_eq!(parse_word(&printed).unwrap(), word, "{printed}");
                    }
                }
            }
        }
    }

    #[test]
    fn parse_rejects_zero_and_broken() {
        assert_eq!(parse_word("da"), Err(PathError::ZeroWord));
        assert!(matches!(parse_word("aa"), Err(PathError::BrokenWord { .. })));
        assert!(parse_word("x").is_err());
    }

    #[test]
    fn compose_length_additive() {
        for from in Vertex::ALL {
            for mid in Vertex::ALL {
                for to in Vertex::ALL {
                    for l1 in 0..5 {
                        for l2 in 0..5 {
                            for q in path_basis(from, mid, l1) {
                                for p in path_basis(mid, to, l2) {
                                    if let Some(pq) = compose_paths(&p, &q).unwrap() {
                                        assert_eq!(pq.len(), l1 + l2);
                                        assert_eq!(pq.source(), from);
                                        assert_eq!(pq.target(), to);
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn compose_associative_where_defined() {
        // All triples of short paths chained through matching endpoints.
        let mut all = Vec::new();
        for from in Vertex::ALL {
            for to in Vertex::ALL {
                for len in 0..5 {
                    all.extend(path_basis(from, to, len));
                }
            }
        }
        for p in &all {
            for q in &all {
                if p.source() != q.target() {
                    continue;
                }
                for r in &all {
                    if q.source() != r.target() {
                        continue;
                    }
                    let left = compose_paths(p, q)
                        .unwrap()
                        .and_then(|pq| compose_paths(&pq, r).unwrap());
                    let right = compose_paths(q, r)
                        .unwrap()
                        .and_then(|qr| compose_paths(p, &qr).unwrap());
                    assert_eq!(left, right);
                }
            }
        }
    }

    #[test]
    fn combo_expr_roundtrip() {
        let c: PathCombo<F32003> =
            PathCombo::parse_expr("2*ab + gd").unwrap();
        assert_eq!(c.to_expr(), "2*ab + gd");
        let z: PathCombo<F32003> = PathCombo::parse_expr("0").unwrap();
        assert!(z.is_zero());
        // 3*ab + (32000)*ab = 32003*ab = 0 mod p ... exercise cancellation
        let mut c2: PathCombo<F32003> = PathCombo::parse_expr("3*ab").unwrap();
        c2.add_term(parse_word("ab").unwrap(), F32003::new(32000));
        assert!(c2.is_zero());
    }

    #[test]
    fn combo_compose_bilinear() {
        let left: PathCombo<F32003> = PathCombo::parse_expr("b").unwrap();
        let right: PathCombo<F32003> = PathCombo::parse_expr("g").unwrap();
        // b then g is the word bg = 0
        assert!(PathCombo::compose(&left, &right).unwrap().is_zero());
        let a: PathCombo<F32003> = PathCombo::parse_expr("ab").unwrap();
        let composed = PathCombo::compose(&a, &a).unwrap();
        assert_eq!(composed.to_expr(), "(ab)^2");
    }
}
