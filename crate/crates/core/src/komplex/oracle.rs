//! Graded linear-algebra oracle for Hom spaces in the homotopy category.
//!
//! `hom_kb(X, Y, n)` computes, degree by degree, the dimension of
//! `Hom(X, Y[n])` in the bounded homotopy category of projectives: chain maps
//! modulo null-homotopic ones. Path length grades everything in sight, and
//! for complexes whose differential entries are homogeneous the Hom complex
//! splits into finite-dimensional graded pieces which are each computed
//! exactly by dense elimination. Complexes that admit no consistent internal
//! grading fall back to a filtered computation at a padded cutoff; such
//! reports carry `exact: false`.
//!
//! The reported degree labels are anchored at the first term of each
//! connected component, so only their differences are meaningful; totals and
//! the stability flag are anchor-free.

use super::{ChainMap, KomplexError, ProjComplex};
use crate::field::Scalar;
use crate::linalg::{filtered_dims, DMatrix};
use crate::pathalg::{compose_paths, path_basis, PathWord};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, HashMap};

/// Cutoff and stabilization policy for the oracle.
#[derive(Clone, Copy, Debug)]
pub struct OraclePolicy {
    /// Added to the largest differential path length to get the default cutoff.
    pub cutoff_extra: usize,
    /// Number of trailing zero degrees required to call a report stable.
    pub window: usize,
}

impl Default for OraclePolicy {
    fn default() -> Self {
        // The window must catch the period-2 grading of the loops (ab)^k and
        // (gd)^k, so it stays at 4; the extra headroom of 8 keeps small
        // examples comfortably inside the certified range.
        OraclePolicy {
            cutoff_extra: 8,
            window: 4,
        }
    }
}

/// Per-degree dimensions of a Hom space, plus bookkeeping.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradedHomReport {
    /// Homological shift `n` of `Hom(X, Y[n])`.
    pub shift: i64,
    /// Dimension of each computed internal degree.
    pub degrees: BTreeMap<i64, usize>,
    /// Highest internal degree examined.
    pub cutoff: usize,
    /// True when the trailing window of degrees is all zero.
    pub stable: bool,
    /// True when every reported degree was computed exactly (graded route).
    pub exact: bool,
    /// Sum over the computed range; the honest total dimension when `stable`.
    pub total: usize,
}

impl GradedHomReport {
    fn trivial(shift: i64, cutoff: usize) -> Self {
        GradedHomReport {
            shift,
            degrees: BTreeMap::new(),
            cutoff,
            stable: true,
            exact: true,
            total: 0,
        }
    }
}

/// Internal-degree shifts per term that make all differential entries
/// homogeneous of degree zero, or `None` if no such grading exists.
fn internal_grading<S: Scalar>(x: &ProjComplex<S>) -> Option<BTreeMap<(i64, usize), i64>> {
    let mut shifts: BTreeMap<(i64, usize), i64> = BTreeMap::new();
    // Adjacency built from differential entries: s(p, j) = s(p-1, i) + len.
    let mut adj: HashMap<(i64, usize), Vec<((i64, usize), i64)>> = HashMap::new();
    let mut nodes: Vec<(i64, usize)> = Vec::new();
    for (&p, vs) in x.terms() {
        for i in 0..vs.len() {
            nodes.push((p, i));
        }
    }
    for (&p, mat) in x.diffs() {
        for (i, row) in mat.iter().enumerate() {
            for (j, combo) in row.iter().enumerate() {
                if combo.is_zero() {
                    continue;
                }
                let len = combo.homogeneous_len()? as i64;
                let upper = (p, j);
                let lower = (p - 1, i);
                adj.entry(upper).or_default().push((lower, len));
                adj.entry(lower).or_default().push((upper, -len));
            }
        }
    }
    for &start in &nodes {
        if shifts.contains_key(&start) {
            continue;
        }
        shifts.insert(start, 0);
        let mut queue = std::collections::VecDeque::new();
        queue.push_back(start);
        while let Some(node) = queue.pop_front() {
            let s = shifts[&node];
            if let Some(nbrs) = adj.get(&node) {
                for &(next, delta) in nbrs {
                    let expected = s - delta;
                    match shifts.get(&next) {
                        None => {
                            shifts.insert(next, expected);
                            queue.push_back(next);
                        }
                        Some(&have) if have != expected => return None,
                        Some(_) => {}
                    }
                }
            }
        }
    }
    Some(shifts)
}

/// Basis of the space of relative-degree-`r` maps (components `X_p -> Z_{p+r}`)
/// in one internal degree.
struct MapBasis {
    /// (position p, target index i at p+r, source index j at p, word)
    elems: Vec<(i64, usize, usize, PathWord)>,
    index: HashMap<(i64, usize, usize, PathWord), usize>,
}

impl MapBasis {
    fn build<S: Scalar>(
        x: &ProjComplex<S>,
        z: &ProjComplex<S>,
        r: i64,
        len_for: impl Fn(i64, usize, usize) -> Option<i64>,
    ) -> MapBasis {
        let mut elems = Vec::new();
        for (&p, xs) in x.terms() {
            let zs = z.terms_at(p + r);
            for (i, zv) in zs.iter().enumerate() {
                for (j, xv) in xs.iter().enumerate() {
                    let Some(len) = len_for(p, i, j) else { continue };
                    if len < 0 {
                        continue;
                    }
                    // A map out of P_{xv} into P_{zv} multiplies by a path
                    // from zv to xv.
                    for w in path_basis(*zv, *xv, len as usize) {
                        elems.push((p, i, j, w));
                    }
                }
            }
        }
        let index = elems
            .iter()
            .enumerate()
            .map(|(k, e)| (e.clone(), k))
            .collect();
        MapBasis { elems, index }
    }

    fn len(&self) -> usize {
        self.elems.len()
    }
}

/// Shared skeleton for the chain-map condition and homotopy boundary
/// matrices. `emit(row_key, col, coeff)` accumulates into a dense matrix.
struct HomProblem<'a, S: Scalar> {
    x: &'a ProjComplex<S>,
    z: &'a ProjComplex<S>,
}

impl<'a, S: Scalar> HomProblem<'a, S> {
    /// Matrix of `D(f) = f d^X - d^Z f` from `maps` (r = 0) to `outs` (r = -1).
    fn chain_condition(&self, maps: &MapBasis, outs: &MapBasis) -> DMatrix<S> {
        let mut m = DMatrix::zeros(outs.len(), maps.len());
        for (col, (p, i, j, w)) in maps.elems.iter().enumerate() {
            // f_p then the incoming differential of X: output at p + 1.
            if let Some(dx) = self.x.diff_at(p + 1) {
                // dx rows index terms at p, cols index terms at p + 1.
                for k in 0..self.x.terms_at(p + 1).len() {
                    for (u, cu) in dx[*j][k].terms() {
                        if let Some(word) = compose_paths(u, w).expect("validated complex") {
                            if let Some(&row) = outs.index.get(&(p + 1, *i, k, word)) {
                                m.add_at(row, col, cu);
                            }
                        }
                    }
                }
            }
            // The outgoing differential of Z after f_p: output at p, negated.
            if let Some(dz) = self.z.diff_at(*p) {
                for i2 in 0..self.z.terms_at(p - 1).len() {
                    for (v, cv) in dz[i2][*i].terms() {
                        if let Some(word) = compose_paths(w, v).expect("validated complex") {
                            if let Some(&row) = outs.index.get(&(*p, i2, *j, word)) {
                                m.add_at(row, col, &cv.neg());
                            }
                        }
                    }
                }
            }
        }
        m
    }

    /// Matrix of the homotopy boundary `h -> d^Z h + h d^X` from `homs`
    /// (r = +1) to `maps` (r = 0).
    fn homotopy_boundary(&self, homs: &MapBasis, maps: &MapBasis) -> DMatrix<S> {
        let mut m = DMatrix::zeros(maps.len(), homs.len());
        for (col, (p, i, j, w)) in homs.elems.iter().enumerate() {
            // d^Z_{p+1} after h_p: output at p.
            if let Some(dz) = self.z.diff_at(p + 1) {
                for i2 in 0..self.z.terms_at(*p).len() {
                    for (v, cv) in dz[i2][*i].terms() {
                        if let Some(word) = compose_paths(w, v).expect("validated complex") {
                            if let Some(&row) = maps.index.get(&(*p, i2, *j, word)) {
                                m.add_at(row, col, cv);
                            }
                        }
                    }
                }
            }
            // h_p after the incoming differential of X: output at p + 1.
            if let Some(dx) = self.x.diff_at(p + 1) {
                for k in 0..self.x.terms_at(p + 1).len() {
                    for (u, cu) in dx[*j][k].terms() {
                        if let Some(word) = compose_paths(u, w).expect("validated complex") {
                            if let Some(&row) = maps.index.get(&(p + 1, *i, k, word)) {
                                m.add_at(row, col, cu);
                            }
                        }
                    }
                }
            }
        }
        m
    }
}

/// Hom in the homotopy category, graded by internal degree.
///
/// `cutoff` of `None` uses the policy default: largest differential path
/// length in `X`, `Y` plus `policy.cutoff_extra`.
pub fn hom_kb<S: Scalar>(
    x: &ProjComplex<S>,
    y: &ProjComplex<S>,
    n: i64,
    cutoff: Option<usize>,
    policy: OraclePolicy,
) -> Result<GradedHomReport, KomplexError> {
    x.validate()?;
    y.validate()?;
    let z = y.shift(n);
    let maxdeg = x.max_diff_len().max(z.max_diff_len());
    let cutoff = cutoff.unwrap_or(maxdeg + policy.cutoff_extra);
    match (internal_grading(x), internal_grading(&z)) {
        (Some(sx), Some(sz)) => Ok(hom_graded(x, &z, n, cutoff, policy, &sx, &sz)),
        _ => Ok(hom_filtered(x, &z, n, cutoff, maxdeg, policy)),
    }
}

fn hom_graded<S: Scalar>(
    x: &ProjComplex<S>,
    z: &ProjComplex<S>,
    n: i64,
    cutoff: usize,
    policy: OraclePolicy,
    sx: &BTreeMap<(i64, usize), i64>,
    sz: &BTreeMap<(i64, usize), i64>,
) -> GradedHomReport {
    // Degree floors of the aligned blocks: a block admits words of length
    // g - floor, so the populated degrees live in [min_floor, max_floor + cutoff].
    let mut floors: Vec<i64> = Vec::new();
    for (&p, xs) in x.terms() {
        let zs = z.terms_at(p);
        for i in 0..zs.len() {
            for j in 0..xs.len() {
                floors.push(sz[&(p, i)] - sx[&(p, j)]);
            }
        }
    }
    let (Some(&lo), Some(&hi)) = (floors.iter().min(), floors.iter().max()) else {
        return GradedHomReport::trivial(n, cutoff);
    };
    let problem = HomProblem { x, z };
    let mut degrees = BTreeMap::new();
    for g in lo..=(hi + cutoff as i64) {
        let maps = MapBasis::build(x, z, 0, |p, i, j| Some(g - sz[&(p, i)] + sx[&(p, j)]));
        if maps.len() == 0 {
            degrees.insert(g, 0);
            continue;
        }
        let outs = MapBasis::build(x, z, -1, |p, i, j| {
            sz.get(&(p - 1, i)).map(|szv| g - szv + sx[&(p, j)])
        });
        let homs = MapBasis::build(x, z, 1, |p, i, j| {
            sz.get(&(p + 1, i)).map(|szv| g - szv + sx[&(p, j)])
        });
        let d = problem.chain_condition(&maps, &outs);
        let boundary = problem.homotopy_boundary(&homs, &maps);
        debug_assert!(d.mul(&boundary).is_zero());
        let kernel = d.nullspace().len();
        let image = boundary.rank();
        degrees.insert(g, kernel - image);
    }
    finish_report(n, cutoff, policy, degrees, true)
}

/// Filtered fallback for complexes without a consistent internal grading.
/// Works at a padded cutoff and reports associated-graded dimensions of the
/// path-length filtration; the trailing degrees may include artifacts of the
/// truncation, which the stability window is sized to expose.
fn hom_filtered<S: Scalar>(
    x: &ProjComplex<S>,
    z: &ProjComplex<S>,
    n: i64,
    cutoff: usize,
    maxdeg: usize,
    policy: OraclePolicy,
) -> GradedHomReport {
    let work = cutoff + maxdeg + policy.window;
    let build = |r: i64| {
        let mut elems = Vec::new();
        for (&p, xs) in x.terms() {
            let zs = z.terms_at(p + r);
            for len in 0..=work {
                for (i, zv) in zs.iter().enumerate() {
                    for (j, xv) in xs.iter().enumerate() {
                        for w in path_basis(*zv, *xv, len) {
                            elems.push((p, i, j, w));
                        }
                    }
                }
            }
        }
        // Coordinates must be sorted by filtration degree first.
        elems.sort_by_key(|(p, i, j, w)| (w.len(), *p, *i, *j, w.clone()));
        let index: HashMap<_, _> = elems
            .iter()
            .enumerate()
            .map(|(k, e)| (e.clone(), k))
            .collect();
        MapBasis { elems, index }
    };
    let maps = build(0);
    if maps.len() == 0 {
        return GradedHomReport::trivial(n, cutoff);
    }
    let outs = build(-1);
    let homs = build(1);
    let problem = HomProblem { x, z };
    let d = problem.chain_condition(&maps, &outs);
    let boundary = problem.homotopy_boundary(&homs, &maps);
    let kernel = d.nullspace();
    let image: Vec<Vec<S>> = {
        let mut cols = Vec::new();
        for c in 0..boundary.cols {
            let col: Vec<S> = (0..boundary.rows).map(|r| boundary.at(r, c).clone()).collect();
            cols.push(col);
        }
        cols
    };
    // Boundary index of each degree in the sorted coordinate list.
    let rows = maps.len();
    let boundary_idx = |deg: usize| -> usize {
        maps.elems
            .iter()
            .position(|(_, _, _, w)| w.len() >= deg)
            .unwrap_or(rows)
    };
    let kdims = filtered_dims(&kernel, rows);
    let idims = filtered_dims(&image, rows);
    let level = |deg: usize| -> usize {
        let b = boundary_idx(deg);
        kdims[b] - idims[b]
    };
    let mut degrees = BTreeMap::new();
    for dgr in 0..=cutoff {
        degrees.insert(dgr as i64, level(dgr) - level(dgr + 1));
    }
    finish_report(n, cutoff, policy, degrees, false)
}

fn finish_report(
    n: i64,
    cutoff: usize,
    policy: OraclePolicy,
    degrees: BTreeMap<i64, usize>,
    exact: bool,
) -> GradedHomReport {
    let total = degrees.values().sum();
    let tail: Vec<usize> = degrees
        .values()
        .rev()
        .take(policy.window)
        .copied()
        .collect();
    let stable = tail.len() == policy.window.min(degrees.len()) && tail.iter().all(|&v| v == 0);
    GradedHomReport {
        shift: n,
        degrees,
        cutoff,
        stable,
        exact,
        total,
    }
}

/// Does a homotopy `h` with `f = d h + h d` exist?
///
/// Exact for gradable source/target. Otherwise the search is bounded in path
/// length (largest component length plus differential length plus window);
/// a `true` answer is still verified exact, a `false` answer means no
/// homotopy within the bound.
pub fn is_null_homotopic<S: Scalar>(f: &ChainMap<S>) -> Result<bool, KomplexError> {
    f.validate()?;
    let x = &f.source;
    let z = f.target.shift(f.shift);
    if f.components.iter().all(|(_, m)| {
        m.iter().all(|row| row.iter().all(|c| c.is_zero()))
    }) {
        return Ok(true);
    }
    let problem = HomProblem { x, z: &z };
    match (internal_grading(x), internal_grading(&z)) {
        (Some(sx), Some(sz)) => {
            // Split f by graded degree and solve each piece independently.
            let mut by_degree: BTreeMap<i64, Vec<((i64, usize, usize, PathWord), S)>> =
                BTreeMap::new();
            for (&p, mat) in &f.components {
                for (i, row) in mat.iter().enumerate() {
                    for (j, combo) in row.iter().enumerate() {
                        for (w, c) in combo.terms() {
                            let g = w.len() as i64 + sz[&(p, i)] - sx[&(p, j)];
                            by_degree
                                .entry(g)
                                .or_default()
                                .push(((p, i, j, w.clone()), c.clone()));
                        }
                    }
                }
            }
            for (g, entries) in by_degree {
                let maps = MapBasis::build(x, &z, 0, |p, i, j| {
                    Some(g - sz[&(p, i)] + sx[&(p, j)])
                });
                let homs = MapBasis::build(x, &z, 1, |p, i, j| {
                    sz.get(&(p + 1, i)).map(|szv| g - szv + sx[&(p, j)])
                });
                let boundary = problem.homotopy_boundary(&homs, &maps);
                let mut rhs = vec![S::zero(); maps.len()];
                for (key, c) in entries {
                    let idx = *maps.index.get(&key).expect("component word is a basis path");
                    rhs[idx] = rhs[idx].add(&c);
                }
                if !boundary.solvable(&rhs) {
                    return Ok(false);
                }
            }
            Ok(true)
        }
        _ => {
            let maxf = f
                .components
                .values()
                .flat_map(|m| m.iter().flat_map(|r| r.iter().map(|c| c.max_len())))
                .max()
                .unwrap_or(0);
            let maxd = x.max_diff_len().max(z.max_diff_len());
            let h_bound = maxf + maxd + 4;
            let out_bound = h_bound + maxd;
            let build = |r: i64, bound: usize| {
                let mut elems = Vec::new();
                for (&p, xs) in x.terms() {
                    let zs = z.terms_at(p + r);
                    for len in 0..=bound {
                        for (i, zv) in zs.iter().enumerate() {
                            for (j, xv) in xs.iter().enumerate() {
                                for w in path_basis(*zv, *xv, len) {
                                    elems.push((p, i, j, w));
                                }
                            }
                        }
                    }
                }
                let index: HashMap<_, _> = elems
                    .iter()
                    .enumerate()
                    .map(|(k, e)| (e.clone(), k))
                    .collect();
                MapBasis { elems, index }
            };
            let maps = build(0, out_bound);
            let homs = build(1, h_bound);
            let boundary = problem.homotopy_boundary(&homs, &maps);
            let mut rhs = vec![S::zero(); maps.len()];
            for (&p, mat) in &f.components {
                for (i, row) in mat.iter().enumerate() {
                    for (j, combo) in row.iter().enumerate() {
                        for (w, c) in combo.terms() {
                            let idx = *maps
                                .index
                                .get(&(p, i, j, w.clone()))
                                .expect("component word within bound");
                            rhs[idx] = rhs[idx].add(c);
                        }
                    }
                }
            }
            Ok(boundary.solvable(&rhs))
        }
    }
}
