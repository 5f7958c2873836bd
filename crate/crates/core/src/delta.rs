//! The quotient-category engine.
//!
//! Objects of the quotient of the homotopy category by the subcategory
//! generated by `P_*` decompose into two families of indecomposables:
//! projective stalks `P(sign)[shift]` (sign never star) and minimal strings
//! `S(tau, l)[shift]`. [`normalize`] reduces any valid string to a multiset
//! of these atoms by walk surgery; Hom dimensions between atoms come either
//! from the closed projective-pair formula or, when a minimal string is
//! involved, from the homotopy-category oracle — minimal strings lie in both
//! perpendiculars of the quotiented subcategory, so the localization map is
//! a bijection there and the oracle computes quotient Homs on the nose.

use crate::field::Scalar;
use crate::komplex::oracle::{hom_kb, GradedHomReport, OraclePolicy};
use crate::komplex::{cone, ChainMap, ComboMat, KomplexError, ProjComplex};
use crate::pathalg::{PathCombo, PathWord, Sign, Vertex};
use crate::strings::{MinStringSpec, StringError, StringSpec};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Mutex;
use thiserror::Error;

pub const NORMALFORM_SCHEMA: &str = "deltand/normalform/v1";

/// Canonical indecomposable of the quotient category.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Indec {
    Proj { sign: Sign, shift: i64 },
    MinString { tau: Sign, l: u32, shift: i64 },
}

impl Indec {
    pub fn proj(sign: Sign, shift: i64) -> Indec {
        Indec::Proj { sign, shift }
    }

    pub fn min_string(tau: Sign, l: u32, shift: i64) -> Indec {
        debug_assert!(l >= 1);
        Indec::MinString { tau, l, shift }
    }

    pub fn shift_by(&self, n: i64) -> Indec {
        match *self {
            Indec::Proj { sign, shift } => Indec::Proj {
                sign,
                shift: shift + n,
            },
            Indec::MinString { tau, l, shift } => Indec::MinString {
                tau,
                l,
                shift: shift + n,
            },
        }
    }

    pub fn shift(&self) -> i64 {
        match *self {
            Indec::Proj { shift, .. } | Indec::MinString { shift, .. } => shift,
        }
    }

    pub fn is_min_string(&self) -> bool {
        matches!(self, Indec::MinString { .. })
    }

    /// Walk presentation of the atom.
    pub fn to_walk(&self) -> StringSpec {
        match *self {
            Indec::Proj { sign, shift } => StringSpec::stalk(sign.vertex(), shift),
            Indec::MinString { tau, l, shift } => MinStringSpec { tau, l, shift }.to_string_spec(),
        }
    }

    pub fn compile<S: Scalar>(&self) -> ProjComplex<S> {
        self.to_walk().compile()
    }

    /// Stable identifier, e.g. `P(+)[0]` or `S(-,2)[1]`.
    pub fn id(&self) -> String {
        match *self {
            Indec::Proj { sign, shift } => format!("P({sign})[{shift}]"),
            Indec::MinString { tau, l, shift } => format!("S({tau},{l})[{shift}]"),
        }
    }

    /// Parse the identifier syntax; `[shift]` may be omitted for 0.
    pub fn parse(input: &str) -> Result<Indec, DeltaError> {
        let s: String = input.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = || DeltaError::BadParameter(format!("cannot parse atom {input:?}"));
        let (body, shift) = match s.find('[') {
            Some(k) => {
                let close = s.rfind(']').ok_or_else(bad)?;
                let shift: i64 = s[k + 1..close].parse().map_err(|_| bad())?;
                (&s[..k], shift)
            }
            None => (s.as_str(), 0),
        };
        if let Some(rest) = body.strip_prefix("P(") {
            let sign_str = rest.strip_suffix(')').ok_or_else(bad)?;
            let sign = parse_sign(sign_str).ok_or_else(bad)?;
            Ok(Indec::Proj { sign, shift })
        } else if let Some(rest) = body.strip_prefix("S(") {
            let inner = rest.strip_suffix(')').ok_or_else(bad)?;
            let (sign_str, l_str) = inner.split_once(',').ok_or_else(bad)?;
            let tau = parse_sign(sign_str).ok_or_else(bad)?;
            let l: u32 = l_str.parse().map_err(|_| bad())?;
            if l == 0 {
                return Err(DeltaError::BadParameter(
                    "minimal strings need l >= 1".to_string(),
                ));
            }
            Ok(Indec::MinString { tau, l, shift })
        } else {
            Err(bad())
        }
    }
}

fn parse_sign(s: &str) -> Option<Sign> {
    match s {
        "+" => Some(Sign::Plus),
        "-" => Some(Sign::Minus),
        _ => None,
    }
}

impl fmt::Display for Indec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.id())
    }
}

/// Canonical ordering: projectives before minimal strings, then by sign,
/// shift, and length.
impl Ord for Indec {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        fn key(a: &Indec) -> (u8, Sign, i64, u32) {
            match *a {
                Indec::Proj { sign, shift } => (0, sign, shift, 0),
                Indec::MinString { tau, l, shift } => (1, tau, shift, l),
            }
        }
        key(self).cmp(&key(other))
    }
}

impl PartialOrd for Indec {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Finite multiset of atoms tagged by node index; the empty multiset is the
/// zero object.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct NormalForm {
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub schema: Option<String>,
    pub node: u32,
    pub atoms: Vec<Indec>,
}

impl NormalForm {
    pub fn new(node: u32, mut atoms: Vec<Indec>) -> NormalForm {
        atoms.sort();
        NormalForm {
            schema: Some(NORMALFORM_SCHEMA.to_string()),
            node,
            atoms,
        }
    }

    pub fn zero(node: u32) -> NormalForm {
        NormalForm::new(node, Vec::new())
    }

    pub fn is_zero(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn validate(&self) -> Result<(), DeltaError> {
        if let Some(schema) = &self.schema {
            if schema != NORMALFORM_SCHEMA {
                return Err(DeltaError::BadParameter(format!(
                    "unsupported schema {schema:?}"
                )));
            }
        }
        for a in &self.atoms {
            if let Indec::MinString { l: 0, .. } = a {
                return Err(DeltaError::BadParameter(
                    "minimal strings need l >= 1".to_string(),
                ));
            }
        }
        Ok(())
    }

    /// Sorted-multiset equality per node; zero objects are isomorphic
    /// regardless of node tag.
    pub fn is_iso(&self, other: &NormalForm) -> bool {
        let mut a = self.atoms.clone();
        let mut b = other.atoms.clone();
        a.sort();
        b.sort();
        if a.is_empty() && b.is_empty() {
            return true;
        }
        self.node == other.node && a == b
    }

    pub fn shift_by(&self, n: i64) -> NormalForm {
        NormalForm::new(self.node, self.atoms.iter().map(|a| a.shift_by(n)).collect())
    }

    pub fn union(&self, other: &NormalForm) -> NormalForm {
        debug_assert_eq!(self.node, other.node);
        let mut atoms = self.atoms.clone();
        atoms.extend(other.atoms.iter().copied());
        NormalForm::new(self.node, atoms)
    }
}

/// Per-node class in the free group on `[P_-]`, `[P_+]`; `[P_*]` is zero.
#[derive(Clone, PartialEq, Eq, Debug, Default, Serialize, Deserialize)]
pub struct K0Class(pub BTreeMap<u32, (i64, i64)>);

impl K0Class {
    pub fn of_node(&self, node: u32) -> (i64, i64) {
        self.0.get(&node).copied().unwrap_or((0, 0))
    }

    pub fn add(&self, other: &K0Class) -> K0Class {
        let mut out = self.0.clone();
        for (&node, &(m, p)) in &other.0 {
            let e = out.entry(node).or_insert((0, 0));
            e.0 += m;
            e.1 += p;
        }
        K0Class(out)
    }
}

/// Image in the stable category of maximal Cohen-Macaulay modules over the
/// node: a multiset over the two branches.
#[derive(Clone, PartialEq, Eq, Debug, Default, Serialize, Deserialize)]
pub struct McmClass {
    pub branch_u: usize,
    pub branch_v: usize,
}

/// Branch pairing convention used by [`stabilize`], flipping with the shift
/// parity (the syzygy of one branch is the other).
pub const STABILIZE_CONVENTION: &str = "P(+)[even] -> branch_u";

#[derive(Debug, Error)]
pub enum DeltaError {
    #[error("oracle cutoff did not stabilize (total so far {})", .report.total)]
    CutoffNotStabilized { report: GradedHomReport },
    #[error("no nonzero map from {from} to {to}")]
    NoNonzeroMap { from: Indec, to: Indec },
    #[error("cone over the identity is zero; shift 0 gives no minimal string")]
    IdentityCone,
    #[error("{0}")]
    BadParameter(String),
    #[error(transparent)]
    Komplex(#[from] KomplexError),
    #[error(transparent)]
    String(#[from] StringError),
}

// ---------------------------------------------------------------------------
// Normalization (walk surgery)
// ---------------------------------------------------------------------------

/// Reduce a sum of validated strings to its canonical atom multiset.
///
/// Three reductions run to a fixpoint on each walk: a star endpoint absorbs
/// the whole star tail leaving the opposite stalk; an interior orientation
/// change splits the walk at that (star) node; a non-minimal decoration
/// splits the walk at that edge. All-star pieces vanish, and what survives
/// is a projective stalk or a linearly oriented minimal string read off
/// directly. Positions are absolute throughout, so no shift bookkeeping is
/// needed beyond the walk data itself.
pub fn normalize(node: u32, specs: &[StringSpec]) -> Result<NormalForm, DeltaError> {
    let mut atoms = Vec::new();
    let mut stack: Vec<StringSpec> = Vec::new();
    for s in specs {
        s.validate()?;
        stack.push(s.clone());
    }
    while let Some(walk) = stack.pop() {
        reduce_walk(&walk, &mut atoms, &mut stack);
    }
    Ok(NormalForm::new(node, atoms))
}

fn reduce_walk(walk: &StringSpec, atoms: &mut Vec<Indec>, stack: &mut Vec<StringSpec>) {
    let nodes = walk.nodes();
    let n = nodes.len();
    if nodes.iter().all(|nd| nd.vertex == Vertex::Star) {
        return;
    }
    if n == 1 {
        let sign = Sign::from_vertex(nodes[0].vertex).expect("non-star checked above");
        atoms.push(Indec::proj(sign, nodes[0].pos));
        return;
    }
    let first_star = nodes[0].vertex == Vertex::Star;
    let last_star = nodes[n - 1].vertex == Vertex::Star;
    if first_star || last_star {
        // Exactly one endpoint is star (both star would be all-star). The
        // complement of the surviving endpoint is entirely star, so the walk
        // collapses onto that stalk in the quotient.
        let keep = if first_star { &nodes[n - 1] } else { &nodes[0] };
        let sign = Sign::from_vertex(keep.vertex).expect("other endpoint is the star one");
        atoms.push(Indec::proj(sign, keep.pos));
        return;
    }
    // Both endpoints are signs. Split at the first orientation change.
    let edges = walk.edges();
    for k in 1..edges.len() {
        if edges[k - 1].dir != edges[k].dir {
            stack.push(walk.slice(0, k - 1));
            stack.push(walk.slice(k + 1, n - 1));
            return;
        }
    }
    // Linearly oriented: split at the first non-minimal decoration.
    for (k, edge) in edges.iter().enumerate() {
        if !edge.decoration.is_minimal() {
            stack.push(walk.slice(0, k));
            stack.push(walk.slice(k + 1, n - 1));
            return;
        }
    }
    // Minimal linear string with sign endpoints.
    debug_assert!(n >= 3, "two sign endpoints need a nonminimal decoration");
    let sink = match edges[0].dir {
        crate::strings::Dir::Fwd => &nodes[n - 1],
        crate::strings::Dir::Bwd => &nodes[0],
    };
    let source = match edges[0].dir {
        crate::strings::Dir::Fwd => &nodes[0],
        crate::strings::Dir::Bwd => &nodes[n - 1],
    };
    let tau = Sign::from_vertex(sink.vertex).expect("sign endpoint");
    let l = (n - 2) as u32;
    let atom = Indec::min_string(tau, l, sink.pos);
    if let Indec::MinString { tau, l, .. } = atom {
        let expected_sigma = MinStringSpec {
            tau,
            l,
            shift: sink.pos,
        }
        .sigma();
        debug_assert_eq!(
            Some(expected_sigma.vertex()),
            Some(source.vertex),
            "validated strings force the endpoint parity"
        );
    }
    atoms.push(atom);
}

// ---------------------------------------------------------------------------
// Discrete invariants
// ---------------------------------------------------------------------------

fn k0_pair_of_atom(a: &Indec) -> (i64, i64) {
    let parity = |n: i64| if n.rem_euclid(2) == 0 { 1 } else { -1 };
    match *a {
        Indec::Proj { sign, shift } => {
            let s = parity(shift);
            match sign {
                Sign::Minus => (s, 0),
                Sign::Plus => (0, s),
            }
        }
        Indec::MinString { l, shift, .. } => {
            if l % 2 == 1 {
                let s = parity(shift);
                (s, s)
            } else {
                (0, 0)
            }
        }
    }
}

/// Class in the free group on `[P_-]`, `[P_+]` at the form's node.
pub fn k0(x: &NormalForm) -> K0Class {
    let mut pair = (0i64, 0i64);
    for a in &x.atoms {
        let (m, p) = k0_pair_of_atom(a);
        pair.0 += m;
        pair.1 += p;
    }
    let mut map = BTreeMap::new();
    map.insert(x.node, pair);
    K0Class(map)
}

/// Class of a raw complex: alternating counts with `[P_*]` sent to zero.
pub fn k0_of_complex<S: Scalar>(x: &ProjComplex<S>) -> (i64, i64) {
    let [m, _star, p] = x.k0_raw();
    (m, p)
}

/// Quotient onto the stable Cohen-Macaulay category of the node: minimal
/// strings die, projective stalks land on a branch module, flipping branch
/// with the shift parity. Pairing per [`STABILIZE_CONVENTION`].
pub fn stabilize(x: &NormalForm) -> McmClass {
    let mut out = McmClass::default();
    for a in &x.atoms {
        if let Indec::Proj { sign, shift } = a {
            let even = shift.rem_euclid(2) == 0;
            let to_u = match sign {
                Sign::Plus => even,
                Sign::Minus => !even,
            };
            if to_u {
                out.branch_u += 1;
            } else {
                out.branch_v += 1;
            }
        }
    }
    out
}

// ---------------------------------------------------------------------------
// The engine: Hom dimensions and cones
// ---------------------------------------------------------------------------

/// Closed formula for Hom between projective stalks: nonzero exactly for
/// non-positive even shift gaps with equal signs, or odd gaps `<= -1` with
/// opposite signs.
pub fn hom_dim_proj(sign_a: Sign, shift_a: i64, sign_b: Sign, shift_b: i64) -> usize {
    let n = shift_b - shift_a;
    let even = n.rem_euclid(2) == 0;
    let same = sign_a == sign_b;
    if (n <= 0 && even && same) || (n <= -1 && !even && !same) {
        1
    } else {
        0
    }
}

/// Oracle-backed engine over a fixed coefficient field. Hom values computed
/// through the homotopy category are cached per shift-normalized atom pair.
pub struct DeltaEngine<S: Scalar> {
    pub policy: OraclePolicy,
    cache: Mutex<BTreeMap<(Indec, Indec), usize>>,
    _marker: std::marker::PhantomData<S>,
}

impl<S: Scalar> Default for DeltaEngine<S> {
    fn default() -> Self {
        DeltaEngine::new(OraclePolicy::default())
    }
}

impl<S: Scalar> DeltaEngine<S> {
    pub fn new(policy: OraclePolicy) -> Self {
        DeltaEngine {
            policy,
            cache: Mutex::new(BTreeMap::new()),
            _marker: std::marker::PhantomData,
        }
    }

    /// Hom dimension between two atoms of one node: 0 or 1.
    ///
    /// Projective pairs use the closed formula. Any pair involving a minimal
    /// string delegates to the homotopy-category oracle on compiled
    /// representatives: minimal strings lie in both perpendiculars, so the
    /// localization map is bijective and the oracle value is the quotient
    /// value.
    pub fn hom_dim(&self, a: &Indec, b: &Indec) -> Result<usize, DeltaError> {
        if let (
            Indec::Proj {
                sign: sa,
                shift: na,
            },
            Indec::Proj {
                sign: sb,
                shift: nb,
            },
        ) = (a, b)
        {
            return Ok(hom_dim_proj(*sa, *na, *sb, *nb));
        }
        // Hom is shift-compatible, so normalize the pair for caching.
        let d = a.shift();
        let key = (a.shift_by(-d), b.shift_by(-d));
        if let Some(&v) = self.cache.lock().unwrap().get(&key) {
            return Ok(v);
        }
        let x: ProjComplex<S> = key.0.compile();
        let y: ProjComplex<S> = key.1.compile();
        let report = hom_kb(&x, &y, 0, None, self.policy)?;
        if !report.stable {
            return Err(DeltaError::CutoffNotStabilized { report });
        }
        let v = report.total;
        self.cache.lock().unwrap().insert(key, v);
        Ok(v)
    }

    /// Bilinear extension of [`DeltaEngine::hom_dim`]; cross-node blocks are
    /// zero.
    pub fn hom_matrix(
        &self,
        x: &NormalForm,
        y: &NormalForm,
    ) -> Result<Vec<Vec<usize>>, DeltaError> {
        let mut out = vec![vec![0usize; y.atoms.len()]; x.atoms.len()];
        if x.node != y.node {
            return Ok(out);
        }
        for (i, a) in x.atoms.iter().enumerate() {
            for (j, b) in y.atoms.iter().enumerate() {
                out[i][j] = self.hom_dim(a, b)?;
            }
        }
        Ok(out)
    }

    /// Raw homotopy-category Hom between arbitrary complexes.
    pub fn oracle_hom(
        &self,
        x: &ProjComplex<S>,
        y: &ProjComplex<S>,
        n: i64,
        cutoff: Option<usize>,
    ) -> Result<GradedHomReport, DeltaError> {
        Ok(hom_kb(x, y, n, cutoff, self.policy)?)
    }

    /// Identification vector: class in the free group on the projective
    /// generators plus oracle Hom dimensions into a panel of minimal
    /// strings. Complete on normal forms when the panel covers the support.
    pub fn fingerprint(
        &self,
        x: &ProjComplex<S>,
        panel: &FingerprintPanel,
    ) -> Result<Fingerprint, DeltaError> {
        let mut homs = Vec::with_capacity(panel.atoms().len());
        for (tau, l, m) in panel.atoms() {
            let target: ProjComplex<S> = Indec::min_string(tau, l, m).compile();
            let report = hom_kb(x, &target, 0, None, self.policy)?;
            if !report.stable {
                return Err(DeltaError::CutoffNotStabilized { report });
            }
            homs.push(report.total);
        }
        Ok(Fingerprint {
            k0: k0_of_complex(x),
            panel: panel.clone(),
            homs,
        })
    }

    /// Fingerprint of a normal form through the cached atom Homs instead of
    /// the chain-level oracle; additivity makes the two routes agree.
    pub fn fingerprint_form(
        &self,
        nf: &NormalForm,
        panel: &FingerprintPanel,
    ) -> Result<Fingerprint, DeltaError> {
        let probes = panel.atoms();
        let mut homs = vec![0usize; probes.len()];
        for atom in &nf.atoms {
            for (idx, &(tau, l, m)) in probes.iter().enumerate() {
                homs[idx] += self.hom_dim(atom, &Indec::min_string(tau, l, m))?;
            }
        }
        Ok(Fingerprint {
            k0: k0(nf).of_node(nf.node),
            panel: panel.clone(),
            homs,
        })
    }
}

/// Panel of minimal-string probes `S(tau, l)[m]` for fingerprinting.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FingerprintPanel {
    pub l_max: u32,
    pub m_lo: i64,
    pub m_hi: i64,
}

impl FingerprintPanel {
    /// Cover every atom that could appear in normal forms of complexes
    /// supported inside `[lo, hi]` with at most `size` summands.
    pub fn covering(support: Option<(i64, i64)>, size: usize) -> FingerprintPanel {
        let (lo, hi) = support.unwrap_or((0, 0));
        let l_max = (size.max(6)) as u32;
        FingerprintPanel {
            l_max,
            m_lo: lo - l_max as i64 - 1,
            m_hi: hi + 1,
        }
    }

    pub fn atoms(&self) -> Vec<(Sign, u32, i64)> {
        let mut out = Vec::new();
        for tau in [Sign::Minus, Sign::Plus] {
            for l in 1..=self.l_max {
                for m in self.m_lo..=self.m_hi {
                    out.push((tau, l, m));
                }
            }
        }
        out
    }
}

/// Deterministic identification vector; equal normal forms have equal
/// fingerprints, and the vector is additive under direct sums.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Fingerprint {
    pub k0: (i64, i64),
    pub panel: FingerprintPanel,
    pub homs: Vec<usize>,
}

// ---------------------------------------------------------------------------
// Cone calculus
// ---------------------------------------------------------------------------

/// Class of the cone over the canonical degree-minimal map from `S(tau,l)`
/// into `S(sigma,1)[l+1]`: the next minimal string, shifted by one.
pub fn cone_minimal(tau: Sign, l: u32) -> Result<Indec, DeltaError> {
    if l == 0 {
        return Err(DeltaError::BadParameter(
            "minimal strings need l >= 1".to_string(),
        ));
    }
    Ok(Indec::min_string(tau, l + 1, 1))
}

/// Chain-level witness for [`cone_minimal`]: the canonical map itself.
/// Its cone is literally computed and fingerprint-checked in the tests.
pub fn cone_minimal_chain<S: Scalar>(tau: Sign, l: u32) -> Result<ChainMap<S>, DeltaError> {
    if l == 0 {
        return Err(DeltaError::BadParameter(
            "minimal strings need l >= 1".to_string(),
        ));
    }
    let source_spec = MinStringSpec { tau, l, shift: 0 };
    let sigma = source_spec.sigma();
    let x: ProjComplex<S> = source_spec.compile();
    let target: ProjComplex<S> = MinStringSpec {
        tau: sigma,
        l: 1,
        shift: l as i64 + 1,
    }
    .compile();
    // Identity on the shared P_sigma at position l + 1.
    let top = l as i64 + 1;
    let mut components = BTreeMap::new();
    let mat: ComboMat<S> = vec![vec![PathCombo::from_path(PathWord::lazy(sigma.vertex()))]];
    components.insert(top, mat);
    let f = ChainMap {
        source: x,
        target,
        shift: 0,
        components,
    };
    f.validate().map_err(DeltaError::from)?;
    Ok(f)
}

/// Class of the cone over the unique-up-to-scalar nonzero map
/// `P(sigma) -> P(tau)[n]`, which exists for `n < 0` of the right parity:
/// the minimal string `S(tau, -n)[n]`.
pub fn cone_proj_map(sigma: Sign, tau: Sign, n: i64) -> Result<Indec, DeltaError> {
    if n == 0 {
        return Err(DeltaError::IdentityCone);
    }
    if n > 0 || hom_dim_proj(sigma, 0, tau, n) == 0 {
        return Err(DeltaError::NoNonzeroMap {
            from: Indec::proj(sigma, 0),
            to: Indec::proj(tau, n),
        });
    }
    Ok(Indec::min_string(tau, (-n) as u32, n))
}

/// Chain-level witness for [`cone_proj_map`]: the roof numerator `Q` (the
/// minimal string with its bottom term removed, shifted down once) mapping
/// onto the stalk `P(tau)[n]` by the bottom minimal path. Its cone
/// reassembles `S(tau,-n)[n]`.
pub fn cone_proj_map_chain<S: Scalar>(
    sigma: Sign,
    tau: Sign,
    n: i64,
) -> Result<(ChainMap<S>, ProjComplex<S>), DeltaError> {
    let atom = cone_proj_map(sigma, tau, n)?;
    let Indec::MinString { l, .. } = atom else {
        unreachable!()
    };
    let s: ProjComplex<S> = atom.compile();
    // Q = (S without the bottom P_tau)[-1].
    let mut terms = BTreeMap::new();
    for (&p, vs) in s.terms() {
        if p > n {
            terms.insert(p - 1, vs.clone());
        }
    }
    let mut diffs = BTreeMap::new();
    for (&p, m) in s.diffs() {
        if p > n + 1 {
            let negated: ComboMat<S> = m
                .iter()
                .map(|row| row.iter().map(|c| c.neg()).collect())
                .collect();
            diffs.insert(p - 1, negated);
        }
    }
    let q = ProjComplex::from_parts(terms, diffs);
    debug_assert_eq!(q.term_count() as u32, l + 1);
    let bottom = s
        .diff_at(n + 1)
        .expect("minimal string has a bottom differential")[0][0]
        .clone();
    let stalk = ProjComplex::stalk(tau.vertex(), n);
    let mut components = BTreeMap::new();
    components.insert(n, vec![vec![bottom]]);
    let g = ChainMap {
        source: q,
        target: stalk,
        shift: 0,
        components,
    };
    g.validate().map_err(DeltaError::from)?;
    let c = cone(&g)?;
    Ok((g, c))
}
