//! Bounded complexes of indecomposable projectives with cones, shifts,
//! chain maps, and the homotopy-category Hom oracle.
//!
//! Conventions, fixed once for the whole crate:
//!
//! * homological indexing: the differential at position `p` maps the term
//!   at `p` to the term at `p - 1`;
//! * shift moves terms up: `X[n]_p = X_{p-n}`, with `d_{X[n]} = (-1)^n d_X`,
//!   so a stalk at position 0 shifted by `[n]` sits at position `n`;
//! * `cone(f : X -> Y) = Y (+) X[1]` with differential `[[d_Y, f], [0, -d_X]]`.
//!
//! Matrix entry `(i, j)` of the differential at `p` is a path combination
//! whose words have target the `j`-th vertex at `p` and source the `i`-th
//! vertex at `p - 1`; right multiplication maps the projective at the word's
//! target to the projective at its source.

pub mod oracle;

use crate::field::Scalar;
use crate::pathalg::{PathCombo, PathError, Vertex};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::collections::BTreeMap;
use thiserror::Error;

/// Human-readable statement of the sign/shift conventions, emitted in every
/// output document that exposes differentials.
pub const CONVENTION: &str =
    "homological; d: p -> p-1; X[n]_p = X_{p-n} with d_{X[n]} = (-1)^n d_X; cone(f) = Y (+) X[1], d = [[d_Y, f], [0, -d_X]]";

pub const COMPLEX_SCHEMA: &str = "deltand/projcomplex/v1";

pub type ComboMat<S> = Vec<Vec<PathCombo<S>>>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum KomplexError {
    #[error("not a complex at position {position}: {detail}")]
    NotAComplex { position: i64, detail: String },
    #[error("shape mismatch at position {position}: {detail}")]
    ShapeMismatch { position: i64, detail: String },
    #[error("bad differential entry at position {position}, row {row}, col {col}: {detail}")]
    BadEntry {
        position: i64,
        row: usize,
        col: usize,
        detail: String,
    },
    #[error("invalid chain map: {detail}")]
    InvalidChainMap { detail: String },
    #[error("path arithmetic: {0}")]
    Path(#[from] PathError),
}

/// Bounded complex of projectives `P_v`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ProjComplex<S: Scalar> {
    /// Nonempty vertex lists per occupied position.
    terms: BTreeMap<i64, Vec<Vertex>>,
    /// Differential at `p` maps position `p` to `p - 1`;
    /// rows index terms at `p - 1`, columns index terms at `p`.
    diffs: BTreeMap<i64, ComboMat<S>>,
}

impl<S: Scalar> Default for ProjComplex<S> {
    fn default() -> Self {
        Self::empty()
    }
}

impl<S: Scalar> ProjComplex<S> {
    pub fn empty() -> Self {
        ProjComplex {
            terms: BTreeMap::new(),
            diffs: BTreeMap::new(),
        }
    }

    /// One projective `P_v` concentrated at `pos`.
    pub fn stalk(v: Vertex, pos: i64) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(pos, vec![v]);
        ProjComplex {
            terms,
            diffs: BTreeMap::new(),
        }
    }

    /// Raw constructor; run [`ProjComplex::validate`] on untrusted data.
    /// Empty term lists and zero matrices are stripped.
    pub fn from_parts(terms: BTreeMap<i64, Vec<Vertex>>, diffs: BTreeMap<i64, ComboMat<S>>) -> Self {
        let terms: BTreeMap<i64, Vec<Vertex>> =
            terms.into_iter().filter(|(_, vs)| !vs.is_empty()).collect();
        let diffs = diffs
            .into_iter()
            .filter(|(_, m)| m.iter().any(|row| row.iter().any(|c| !c.is_zero())))
            .collect();
        ProjComplex { terms, diffs }
    }

    pub fn terms(&self) -> &BTreeMap<i64, Vec<Vertex>> {
        &self.terms
    }

    pub fn diffs(&self) -> &BTreeMap<i64, ComboMat<S>> {
        &self.diffs
    }

    pub fn terms_at(&self, p: i64) -> &[Vertex] {
        self.terms.get(&p).map_or(&[], |v| v.as_slice())
    }

    pub fn diff_at(&self, p: i64) -> Option<&ComboMat<S>> {
        self.diffs.get(&p)
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Occupied position range (lowest, highest).
    pub fn support(&self) -> Option<(i64, i64)> {
        let lo = *self.terms.keys().next()?;
        let hi = *self.terms.keys().next_back()?;
        Some((lo, hi))
    }

    /// Every term is `P_*`. True for the empty complex.
    pub fn all_star(&self) -> bool {
        self.terms
            .values()
            .all(|vs| vs.iter().all(|v| *v == Vertex::Star))
    }

    /// Largest path length among differential entries.
    pub fn max_diff_len(&self) -> usize {
        self.diffs
            .values()
            .flat_map(|m| m.iter().flat_map(|row| row.iter().map(|c| c.max_len())))
            .max()
            .unwrap_or(0)
    }

    /// Total number of projective summands.
    pub fn term_count(&self) -> usize {
        self.terms.values().map(|v| v.len()).sum()
    }

    /// Shape coherence, endpoint typing of every entry, and `d . d = 0`.
    pub fn validate(&self) -> Result<(), KomplexError> {
        for (&p, mat) in &self.diffs {
            let cols = self.terms_at(p).len();
            let rows = self.terms_at(p - 1).len();
            if mat.len() != rows || mat.iter().any(|r| r.len() != cols) {
                return Err(KomplexError::ShapeMismatch {
                    position: p,
                    detail: format!(
                        "expected {rows}x{cols} matrix, found {}x{}",
                        mat.len(),
                        mat.first().map_or(0, |r| r.len())
                    ),
                });
            }
            for (i, row) in mat.iter().enumerate() {
                for (j, combo) in row.iter().enumerate() {
                    if let Some((src, tgt)) = combo.endpoints() {
                        let expect_tgt = self.terms_at(p)[j];
                        let expect_src = self.terms_at(p - 1)[i];
                        if tgt != expect_tgt || src != expect_src {
                            return Err(KomplexError::BadEntry {
                                position: p,
                                row: i,
                                col: j,
                                detail: format!(
                                    "entry is a path from {src} to {tgt}, need target {expect_tgt} and source {expect_src}"
                                ),
                            });
                        }
                    }
                }
            }
        }
        for (&p, d_p) in &self.diffs {
            if let Some(d_prev) = self.diffs.get(&(p - 1)) {
                let sq = mat_compose(d_p, d_prev, self.terms_at(p).len())?;
                if let Some((i, j)) = first_nonzero(&sq) {
                    return Err(KomplexError::NotAComplex {
                        position: p,
                        detail: format!(
                            "d.d != 0: entry ({i},{j}) of the composite into position {} is {}",
                            p - 2,
                            sq[i][j].to_expr()
                        ),
                    });
                }
            }
        }
        Ok(())
    }

    /// `X[n]`: terms move up by `n`, differentials pick up `(-1)^n`.
    pub fn shift(&self, n: i64) -> Self {
        if n == 0 {
            return self.clone();
        }
        let terms = self.terms.iter().map(|(&p, v)| (p + n, v.clone())).collect();
        let negate = n.rem_euclid(2) == 1;
        let diffs = self
            .diffs
            .iter()
            .map(|(&p, m)| {
                let m2 = if negate {
                    m.iter()
                        .map(|row| row.iter().map(|c| c.neg()).collect())
                        .collect()
                } else {
                    m.clone()
                };
                (p + n, m2)
            })
            .collect();
        ProjComplex { terms, diffs }
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        let mut terms: BTreeMap<i64, Vec<Vertex>> = BTreeMap::new();
        let positions: std::collections::BTreeSet<i64> = self
            .terms
            .keys()
            .chain(other.terms.keys())
            .copied()
            .collect();
        for &p in &positions {
            let mut vs = self.terms_at(p).to_vec();
            vs.extend_from_slice(other.terms_at(p));
            if !vs.is_empty() {
                terms.insert(p, vs);
            }
        }
        let mut diffs = BTreeMap::new();
        let diff_positions: std::collections::BTreeSet<i64> = self
            .diffs
            .keys()
            .chain(other.diffs.keys())
            .copied()
            .collect();
        for &p in &diff_positions {
            let rows_a = self.terms_at(p - 1).len();
            let cols_a = self.terms_at(p).len();
            let rows_b = other.terms_at(p - 1).len();
            let cols_b = other.terms_at(p).len();
            let mut m = zero_mat(rows_a + rows_b, cols_a + cols_b);
            if let Some(da) = self.diff_at(p) {
                for i in 0..rows_a {
                    for j in 0..cols_a {
                        m[i][j] = da[i][j].clone();
                    }
                }
            }
            if let Some(db) = other.diff_at(p) {
                for i in 0..rows_b {
                    for j in 0..cols_b {
                        m[rows_a + i][cols_a + j] = db[i][j].clone();
                    }
                }
            }
            diffs.insert(p, m);
        }
        ProjComplex::from_parts(terms, diffs)
    }

    /// Alternating sum of term counts: `([P_-], [P_*], [P_+])`.
    pub fn k0_raw(&self) -> [i64; 3] {
        let mut out = [0i64; 3];
        for (&p, vs) in &self.terms {
            let sign = if p.rem_euclid(2) == 0 { 1 } else { -1 };
            for v in vs {
                let idx = match v {
                    Vertex::Minus => 0,
                    Vertex::Star => 1,
                    Vertex::Plus => 2,
                };
                out[idx] += sign;
            }
        }
        out
    }
}

pub(crate) fn zero_mat<S: Scalar>(rows: usize, cols: usize) -> ComboMat<S> {
    vec![vec![PathCombo::zero(); cols]; rows]
}

fn first_nonzero<S: Scalar>(m: &ComboMat<S>) -> Option<(usize, usize)> {
    for (i, row) in m.iter().enumerate() {
        for (j, c) in row.iter().enumerate() {
            if !c.is_zero() {
                return Some((i, j));
            }
        }
    }
    None
}

/// Matrix of the composite "apply `first`, then `then`".
///
/// `first` maps A to B (rows indexed by B), `then` maps B to C; the result
/// maps A to C with entry `(i, k) = sum_j compose(first[j][k], then[i][j])`.
/// The column count of A is passed explicitly since a zero-row matrix
/// cannot carry it.
pub fn mat_compose<S: Scalar>(
    first: &ComboMat<S>,
    then: &ComboMat<S>,
    domain_cols: usize,
) -> Result<ComboMat<S>, PathError> {
    let b = first.len();
    let a = domain_cols;
    let c = then.len();
    if let Some(row) = first.first() {
        assert_eq!(row.len(), a, "domain dimension disagrees");
    }
    if let Some(row) = then.first() {
        assert_eq!(row.len(), b, "inner dimensions disagree");
    }
    let mut out = zero_mat(c, a);
    for i in 0..c {
        for k in 0..a {
            let mut acc = PathCombo::zero();
            for j in 0..b {
                let piece = PathCombo::compose(&first[j][k], &then[i][j])?;
                acc = acc.add(&piece);
            }
            out[i][k] = acc;
        }
    }
    Ok(out)
}

fn mat_neg<S: Scalar>(m: &ComboMat<S>) -> ComboMat<S> {
    m.iter()
        .map(|row| row.iter().map(|c| c.neg()).collect())
        .collect()
}

fn mat_eq<S: Scalar>(a: &ComboMat<S>, b: &ComboMat<S>) -> bool {
    a == b
}

/// Degree-`shift` chain map: components at `p` map the source term at `p`
/// to the target term at `p - shift`, commuting with the differentials
/// after the target is shifted (signs included).
#[derive(Clone, Debug)]
pub struct ChainMap<S: Scalar> {
    pub source: ProjComplex<S>,
    pub target: ProjComplex<S>,
    pub shift: i64,
    /// Component matrix at `p`: rows index `target.terms_at(p - shift)`,
    /// columns index `source.terms_at(p)`. Missing positions are zero.
    pub components: BTreeMap<i64, ComboMat<S>>,
}

impl<S: Scalar> ChainMap<S> {
    pub fn zero(source: ProjComplex<S>, target: ProjComplex<S>, shift: i64) -> Self {
        ChainMap {
            source,
            target,
            shift,
            components: BTreeMap::new(),
        }
    }

    pub fn identity(x: &ProjComplex<S>) -> Self {
        let mut components = BTreeMap::new();
        for (&p, vs) in x.terms() {
            let mut m = zero_mat(vs.len(), vs.len());
            for (i, v) in vs.iter().enumerate() {
                m[i][i] = PathCombo::from_path(crate::pathalg::PathWord::lazy(*v));
            }
            components.insert(p, m);
        }
        ChainMap {
            source: x.clone(),
            target: x.clone(),
            shift: 0,
            components,
        }
    }

    pub fn component_at(&self, p: i64) -> Option<&ComboMat<S>> {
        self.components.get(&p)
    }

    fn component_or_zero(&self, p: i64) -> ComboMat<S> {
        match self.components.get(&p) {
            Some(m) => m.clone(),
            None => zero_mat(
                self.target.terms_at(p - self.shift).len(),
                self.source.terms_at(p).len(),
            ),
        }
    }

    /// Shapes, endpoint typing, and commutation with the differentials.
    pub fn validate(&self) -> Result<(), KomplexError> {
        self.source.validate()?;
        self.target.validate()?;
        let shifted_target = self.target.shift(self.shift);
        for (&p, mat) in &self.components {
            let rows = shifted_target.terms_at(p).len();
            let cols = self.source.terms_at(p).len();
            if mat.len() != rows || mat.iter().any(|r| r.len() != cols) {
                return Err(KomplexError::InvalidChainMap {
                    detail: format!(
                        "component at {p} must be {rows}x{cols}, found {}x{}",
                        mat.len(),
                        mat.first().map_or(0, |r| r.len())
                    ),
                });
            }
            for (i, row) in mat.iter().enumerate() {
                for (j, combo) in row.iter().enumerate() {
                    if let Some((src, tgt)) = combo.endpoints() {
                        if tgt != self.source.terms_at(p)[j] || src != shifted_target.terms_at(p)[i]
                        {
                            return Err(KomplexError::InvalidChainMap {
                                detail: format!(
                                    "component entry ({i},{j}) at {p} has endpoints ({src},{tgt})"
                                ),
                            });
                        }
                    }
                }
            }
        }
        // f_{p-1} d^X_p = d^Z_p f_p for every p touching either side.
        let positions: std::collections::BTreeSet<i64> = self
            .source
            .terms
            .keys()
            .chain(self.components.keys())
            .copied()
            .collect();
        for &p in &positions {
            let dx = match self.source.diff_at(p) {
                Some(m) => m.clone(),
                None => zero_mat(
                    self.source.terms_at(p - 1).len(),
                    self.source.terms_at(p).len(),
                ),
            };
            let dz = match shifted_target.diff_at(p) {
                Some(m) => m.clone(),
                None => zero_mat(
                    shifted_target.terms_at(p - 1).len(),
                    shifted_target.terms_at(p).len(),
                ),
            };
            let cols = self.source.terms_at(p).len();
            let lhs = mat_compose(&dx, &self.component_or_zero(p - 1), cols)?;
            let rhs = mat_compose(&self.component_or_zero(p), &dz, cols)?;
            if !mat_eq(&lhs, &rhs) {
                return Err(KomplexError::InvalidChainMap {
                    detail: format!("does not commute with differentials at position {p}"),
                });
            }
        }
        Ok(())
    }
}

/// Mapping cone. For `f : X -> Y` of degree `shift`, this is
/// `Y[shift] (+) X[1]` with the block differential from the module docs;
/// the result always validates when `f` does.
pub fn cone<S: Scalar>(f: &ChainMap<S>) -> Result<ProjComplex<S>, KomplexError> {
    f.validate()?;
    let z = f.target.shift(f.shift);
    let x = &f.source;
    let mut terms: BTreeMap<i64, Vec<Vertex>> = BTreeMap::new();
    let positions: std::collections::BTreeSet<i64> = z
        .terms()
        .keys()
        .copied()
        .chain(x.terms().keys().map(|&p| p + 1))
        .collect();
    for &p in &positions {
        let mut vs = z.terms_at(p).to_vec();
        vs.extend_from_slice(x.terms_at(p - 1));
        if !vs.is_empty() {
            terms.insert(p, vs);
        }
    }
    let mut diffs: BTreeMap<i64, ComboMat<S>> = BTreeMap::new();
    for &p in &positions {
        let z_rows = z.terms_at(p - 1).len();
        let x_rows = x.terms_at(p - 2).len();
        let z_cols = z.terms_at(p).len();
        let x_cols = x.terms_at(p - 1).len();
        if (z_rows + x_rows) == 0 || (z_cols + x_cols) == 0 {
            continue;
        }
        let mut m = zero_mat(z_rows + x_rows, z_cols + x_cols);
        if let Some(dz) = z.diff_at(p) {
            for i in 0..z_rows {
                for j in 0..z_cols {
                    m[i][j] = dz[i][j].clone();
                }
            }
        }
        let fc = f.component_or_zero(p - 1);
        for i in 0..z_rows {
            for j in 0..x_cols {
                m[i][z_cols + j] = fc[i][j].clone();
            }
        }
        if let Some(dx) = x.diff_at(p - 1) {
            let ndx = mat_neg(dx);
            for i in 0..x_rows {
                for j in 0..x_cols {
                    m[z_rows + i][z_cols + j] = ndx[i][j].clone();
                }
            }
        }
        diffs.insert(p, m);
    }
    let out = ProjComplex::from_parts(terms, diffs);
    debug_assert_eq!(out.validate(), Ok(()));
    Ok(out)
}

// ---------------------------------------------------------------------------
// JSON form
// ---------------------------------------------------------------------------

#[derive(Serialize, Deserialize)]
struct ComplexJson {
    #[serde(skip_serializing_if = "Option::is_none", default)]
    schema: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    convention: Option<String>,
    terms: BTreeMap<String, Vec<Vertex>>,
    #[serde(default)]
    diffs: BTreeMap<String, Vec<Vec<String>>>,
}

impl<S: Scalar> Serialize for ProjComplex<S> {
    fn serialize<Ser: Serializer>(&self, serializer: Ser) -> Result<Ser::Ok, Ser::Error> {
        let json = ComplexJson {
            schema: Some(COMPLEX_SCHEMA.to_string()),
            convention: Some(CONVENTION.to_string()),
            terms: self
                .terms
                .iter()
                .map(|(p, v)| (p.to_string(), v.clone()))
                .collect(),
            diffs: self
                .diffs
                .iter()
                .map(|(p, m)| {
                    (
                        p.to_string(),
                        m.iter()
                            .map(|row| row.iter().map(|c| c.to_expr()).collect())
                            .collect(),
                    )
                })
                .collect(),
        };
        json.serialize(serializer)
    }
}

impl<'de, S: Scalar> Deserialize<'de> for ProjComplex<S> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let json = ComplexJson::deserialize(deserializer)?;
        if let Some(schema) = &json.schema {
            if schema != COMPLEX_SCHEMA {
                return Err(D::Error::custom(format!(
                    "unsupported schema {schema:?}, expected {COMPLEX_SCHEMA:?}"
                )));
            }
        }
        let mut terms = BTreeMap::new();
        for (k, v) in json.terms {
            let p: i64 = k
                .parse()
                .map_err(|_| D::Error::custom(format!("bad position key {k:?}")))?;
            terms.insert(p, v);
        }
        let mut diffs = BTreeMap::new();
        for (k, m) in json.diffs {
            let p: i64 = k
                .parse()
                .map_err(|_| D::Error::custom(format!("bad position key {k:?}")))?;
            let mat: Result<ComboMat<S>, D::Error> = m
                .iter()
                .map(|row| {
                    row.iter()
                        .map(|s| {
                            crate::pathalg::parse_combo_checked::<S>(s)
                                .map_err(|e| D::Error::custom(format!("entry {s:?}: {e}")))
                        })
                        .collect()
                })
                .collect();
            diffs.insert(p, mat?);
        }
        Ok(ProjComplex::from_parts(terms, diffs))
    }
}
