//! Auslander-Reiten structure of the quotient category.
//!
//! The translate acts on minimal strings by a sign flip and a shift by one;
//! projective stalks carry no translate. Irreducible morphisms organize the
//! minimal strings into two translation components of type Z A-infinity and
//! the projectives into two A-infinity chains. Windows of these infinite
//! components are generated on demand and exported as DOT or JSON.

use crate::delta::{DeltaError, Indec, K0Class, NormalForm};
use crate::pathalg::Sign;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ArError {
    #[error("{atom} admits no translate: the projective components carry none")]
    NoArTranslate { atom: Indec },
    #[error("{0}")]
    BadParameter(String),
}

/// Auslander-Reiten translate on minimal strings: flip the sign, shift once.
pub fn tau(a: &Indec) -> Result<Indec, ArError> {
    match *a {
        Indec::MinString { tau, l, shift } => Ok(Indec::min_string(tau.flip(), l, shift + 1)),
        Indec::Proj { .. } => Err(ArError::NoArTranslate { atom: *a }),
    }
}

/// Inverse translate.
pub fn tau_inv(a: &Indec) -> Result<Indec, ArError> {
    match *a {
        Indec::MinString { tau, l, shift } => Ok(Indec::min_string(tau.flip(), l, shift - 1)),
        Indec::Proj { .. } => Err(ArError::NoArTranslate { atom: *a }),
    }
}

/// Targets of irreducible maps out of an atom.
pub fn irreducible_successors(a: &Indec) -> Vec<Indec> {
    match *a {
        Indec::Proj { sign, shift } => vec![Indec::proj(sign.flip(), shift - 1)],
        Indec::MinString { tau, l, shift } => {
            let mut out = Vec::new();
            if l >= 2 {
                out.push(Indec::min_string(tau, l - 1, shift));
            }
            out.push(Indec::min_string(tau.flip(), l + 1, shift - 1));
            out
        }
    }
}

/// Sources of irreducible maps into an atom.
pub fn irreducible_predecessors(a: &Indec) -> Vec<Indec> {
    match *a {
        Indec::Proj { sign, shift } => vec![Indec::proj(sign.flip(), shift + 1)],
        Indec::MinString { tau, l, shift } => {
            let mut out = Vec::new();
            out.push(Indec::min_string(tau, l + 1, shift));
            if l >= 2 {
                out.push(Indec::min_string(tau.flip(), l - 1, shift + 1));
            }
            out
        }
    }
}

/// One mesh of the translation quiver: `start = tau(end)`, the middle row,
/// and `end`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct ArMesh {
    pub start: Indec,
    pub middle: Vec<Indec>,
    pub end: Indec,
}

/// Mesh ending at a minimal string: middle `{S(tau,l-1)?, S(-tau,l+1)[1]}`
/// read off the component grid; boundary meshes at `l = 1` have a single
/// middle term.
pub fn ar_mesh(end: &Indec) -> Result<ArMesh, ArError> {
    let Indec::MinString { tau: t, l, shift } = *end else {
        return Err(ArError::NoArTranslate { atom: *end });
    };
    let start = tau(end)?;
    let middle = if l == 1 {
        vec![Indec::min_string(t, 2, shift)]
    } else {
        vec![
            Indec::min_string(t.flip(), l - 1, shift + 1),
            Indec::min_string(t, l + 1, shift),
        ]
    };
    Ok(ArMesh {
        start,
        middle,
        end: *end,
    })
}

/// Which of the four components an atom lives in.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum ComponentTag {
    #[serde(rename = "ZA-inf-plus")]
    ZAInfPlus,
    #[serde(rename = "ZA-inf-minus")]
    ZAInfMinus,
    #[serde(rename = "A-inf-proj-1")]
    AInfProj1,
    #[serde(rename = "A-inf-proj-2")]
    AInfProj2,
}

/// The component is fixed by the sign twisted by the shift parity: the
/// translate and the irreducible maps both preserve it.
pub fn component_of(a: &Indec) -> ComponentTag {
    let twisted_plus = |sign: Sign, shift: i64| {
        let even = shift.rem_euclid(2) == 0;
        (sign == Sign::Plus) == even
    };
    match *a {
        Indec::MinString { tau, shift, .. } => {
            if twisted_plus(tau, shift) {
                ComponentTag::ZAInfPlus
            } else {
                ComponentTag::ZAInfMinus
            }
        }
        Indec::Proj { sign, shift } => {
            if twisted_plus(sign, shift) {
                ComponentTag::AInfProj1
            } else {
                ComponentTag::AInfProj2
            }
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct WindowNode {
    pub id: String,
    #[serde(skip)]
    pub atom: Indec,
    /// Grid coordinates mirroring the component pictures: x decreases along
    /// the translate, y grows with the string length.
    pub x: i64,
    pub y: i64,
}

/// Finite window of one translation component. Solid arrows are irreducible
/// maps, dashed arrows point from each node to its translate.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct QuiverWindow {
    pub component: ComponentTag,
    pub nodes: Vec<WindowNode>,
    /// Index pairs into `nodes`.
    pub solid: Vec<(usize, usize)>,
    pub dashed: Vec<(usize, usize)>,
}

/// Breadth-limited window around `seed`.
///
/// For minimal-string components, `rows` bounds the string length and
/// `cols` the half-width in diagonal units around the seed; for projective
/// chains, `cols` bounds the shift distance and `rows` is ignored.
pub fn component_window(seed: &Indec, rows: u32, cols: u32) -> Result<QuiverWindow, ArError> {
    if rows == 0 {
        return Err(ArError::BadParameter("rows must be positive".into()));
    }
    let tag = component_of(seed);
    let mut atoms: Vec<Indec> = Vec::new();
    match *seed {
        Indec::MinString {
            tau: seed_tau,
            l: seed_l,
            shift: seed_shift,
        } => {
            // Diagonal coordinate 2*shift + l is constant along the arrows
            // l -> l-1 and decreases by 2 along l -> l+1 with a shift drop.
            let d0 = 2 * seed_shift + seed_l as i64;
            for l in 1..=rows {
                for d in (d0 - cols as i64)..=(d0 + cols as i64) {
                    if (d - l as i64).rem_euclid(2) != 0 {
                        continue;
                    }
                    let shift = (d - l as i64) / 2;
                    // Pick the sign that lands in the seed's component.
                    let tau = if component_of(&Indec::min_string(seed_tau, l, shift)) == tag {
                        seed_tau
                    } else {
                        seed_tau.flip()
                    };
                    atoms.push(Indec::min_string(tau, l, shift));
                }
            }
        }
        Indec::Proj { sign, shift } => {
            for n in (shift - cols as i64)..=(shift + cols as i64) {
                let s = if component_of(&Indec::proj(sign, n)) == tag {
                    sign
                } else {
                    sign.flip()
                };
                atoms.push(Indec::proj(s, n));
            }
        }
    }
    atoms.sort();
    atoms.dedup();
    let index: BTreeMap<Indec, usize> = atoms.iter().enumerate().map(|(i, a)| (*a, i)).collect();
    let nodes: Vec<WindowNode> = atoms
        .iter()
        .map(|a| {
            let (x, y) = match *a {
                Indec::MinString { l, shift, .. } => (-(2 * shift + l as i64), l as i64),
                Indec::Proj { shift, .. } => (-shift, 0),
            };
            WindowNode {
                id: a.id(),
                atom: *a,
                x,
                y,
            }
        })
        .collect();
    let mut solid = Vec::new();
    let mut dashed = Vec::new();
    for (i, a) in atoms.iter().enumerate() {
        for succ in irreducible_successors(a) {
            if let Some(&j) = index.get(&succ) {
                solid.push((i, j));
            }
        }
        if let Ok(t) = tau(a) {
            if let Some(&j) = index.get(&t) {
                dashed.push((i, j));
            }
        }
    }
    Ok(QuiverWindow {
        component: tag,
        nodes,
        solid,
        dashed,
    })
}

/// DOT rendering: solid arrows for irreducible maps, dashed for the
/// translate, nodes pinned on the component grid.
pub fn window_to_dot(w: &QuiverWindow) -> String {
    let mut out = String::new();
    out.push_str("digraph ar_window {\n");
    out.push_str(&format!("  // component: {:?}\n", w.component));
    out.push_str("  node [shape=plaintext];\n");
    for node in &w.nodes {
        out.push_str(&format!(
            "  \"{}\" [pos=\"{},{}!\"];\n",
            node.id,
            node.x * 60,
            node.y * 50
        ));
    }
    for &(i, j) in &w.solid {
        out.push_str(&format!(
            "  \"{}\" -> \"{}\";\n",
            w.nodes[i].id, w.nodes[j].id
        ));
    }
    for &(i, j) in &w.dashed {
        out.push_str(&format!(
            "  \"{}\" -> \"{}\" [style=dashed, constraint=false];\n",
            w.nodes[i].id, w.nodes[j].id
        ));
    }
    out.push_str("}\n");
    out
}

// ---------------------------------------------------------------------------
// Multi-node block assembly
// ---------------------------------------------------------------------------

/// Disjoint union of per-node normal forms: the category of a curve with
/// `p` nodes splits into `p` independent blocks.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct BlockEnv {
    pub p: u32,
    pub forms: BTreeMap<u32, NormalForm>,
}

impl BlockEnv {
    pub fn assemble(p: u32, inputs: Vec<NormalForm>) -> Result<BlockEnv, DeltaError> {
        if p == 0 {
            return Err(DeltaError::BadParameter("need at least one node".into()));
        }
        let mut forms = BTreeMap::new();
        for nf in inputs {
            if nf.node == 0 || nf.node > p {
                return Err(DeltaError::BadParameter(format!(
                    "node index {} outside 1..={p}",
                    nf.node
                )));
            }
            if forms.insert(nf.node, nf).is_some() {
                return Err(DeltaError::BadParameter(
                    "duplicate node index in block assembly".into(),
                ));
            }
        }
        Ok(BlockEnv { p, forms })
    }

    /// Free rank of the block Grothendieck group: two per node.
    pub fn k0_rank(&self) -> u32 {
        2 * self.p
    }

    /// Componentwise class, zero pairs for untouched nodes.
    pub fn k0(&self) -> K0Class {
        let mut out = BTreeMap::new();
        for node in 1..=self.p {
            let pair = self
                .forms
                .get(&node)
                .map(|f| crate::delta::k0(f).of_node(node))
                .unwrap_or((0, 0));
            out.insert(node, pair);
        }
        K0Class(out)
    }

    /// Generator classes of every block, as rows over the `2p` basis slots;
    /// their exact rank realizes the free rank computationally.
    pub fn generator_matrix(&self) -> Vec<Vec<i64>> {
        let mut rows = Vec::new();
        for node in 1..=self.p {
            for sign in [Sign::Minus, Sign::Plus] {
                let mut row = vec![0i64; 2 * self.p as usize];
                let base = 2 * (node - 1) as usize;
                let (m, pl) = crate::delta::k0(&NormalForm::new(
                    node,
                    vec![Indec::proj(sign, 0)],
                ))
                .of_node(node);
                row[base] = m;
                row[base + 1] = pl;
                rows.push(row);
            }
        }
        rows
    }
}

/// Exact integer matrix rank via rational elimination.
pub fn int_rank(rows: &[Vec<i64>]) -> usize {
    use crate::field::{Rat, Scalar};
    use crate::linalg::DMatrix;
    let r = rows.len();
    let c = rows.first().map_or(0, |x| x.len());
    let mut m = DMatrix::<Rat>::zeros(r, c);
    for (i, row) in rows.iter().enumerate() {
        for (j, &v) in row.iter().enumerate() {
            m.set(i, j, Rat::from_i64(v));
        }
    }
    m.rank()
}
