//! Shared test support: independent oracles and randomized walk generation.

#![allow(dead_code)]

use deltand::pathalg::{Arrow, PathWord, Vertex};
use deltand::strings::{Dir, StringEdge, StringNode, StringSpec};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

/// Independent path-basis oracle: brute-force enumeration of all arrow
/// sequences, keeping the composable ones that avoid the relation factors.
/// Shares nothing with the library's basis walker beyond the quiver data.
pub fn naive_path_basis(from: Vertex, to: Vertex, len: usize) -> Vec<Vec<Arrow>> {
    if len == 0 {
        return if from == to { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    let total = 4usize.pow(len as u32);
    for code in 0..total {
        let mut letters = Vec::with_capacity(len);
        let mut c = code;
        for _ in 0..len {
            letters.push(Arrow::ALL[c % 4]);
            c /= 4;
        }
        // letters in display order; rightmost acts first.
        let composable = letters
            .windows(2)
            .all(|w| w[0].source() == w[1].target());
        if !composable {
            continue;
        }
        if letters.last().unwrap().source() != from || letters[0].target() != to {
            continue;
        }
        let zero = letters.windows(2).any(|w| {
            matches!(
                (w[0], w[1]),
                (Arrow::Delta, Arrow::Alpha) | (Arrow::Beta, Arrow::Gamma)
            )
        });
        if zero {
            continue;
        }
        out.push(letters);
    }
    out
}

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

fn pick<'a, T>(rng: &mut StdRng, xs: &'a [T]) -> &'a T {
    &xs[rng.gen_range(0..xs.len())]
}

/// Endpoint labels available to an edge of the given letter family.
fn family_labels(ab_family: bool) -> [Vertex; 2] {
    if ab_family {
        [Vertex::Minus, Vertex::Star]
    } else {
        [Vertex::Plus, Vertex::Star]
    }
}

fn family_matches(w: &PathWord, ab_family: bool) -> bool {
    use deltand::pathalg::Family;
    match w.family() {
        Some(Family::AlphaBeta) => ab_family,
        Some(Family::GammaDelta) => !ab_family,
        None => false,
    }
}

/// Random valid walk with up to `max_nodes` nodes. Families alternate along
/// the walk (forced by the zero-composition and alternation rules), endpoint
/// labels are drawn from the adjacent edge's family, decorations are random
/// basis paths of length at most six.
pub fn random_walk(rng: &mut StdRng, max_nodes: usize) -> StringSpec {
    random_walk_with(rng, max_nodes, false)
}

/// Random walk whose nodes are all star.
pub fn random_star_walk(rng: &mut StdRng, max_nodes: usize) -> StringSpec {
    random_walk_with(rng, max_nodes, true)
}

fn random_walk_with(rng: &mut StdRng, max_nodes: usize, all_star: bool) -> StringSpec {
    let n = rng.gen_range(1..=max_nodes);
    let anchor: i64 = rng.gen_range(-3..=3);
    if n == 1 {
        let vertex = if all_star {
            Vertex::Star
        } else {
            *pick(rng, &Vertex::ALL)
        };
        return StringSpec::stalk(vertex, anchor);
    }
    let dirs: Vec<Dir> = (0..n - 1)
        .map(|_| if rng.gen_bool(0.5) { Dir::Fwd } else { Dir::Bwd })
        .collect();
    let first_ab = rng.gen_bool(0.5);
    let fams: Vec<bool> = (0..n - 1).map(|i| first_ab ^ (i % 2 == 1)).collect();
    let mut vertices = vec![Vertex::Star; n];
    if !all_star {
        vertices[0] = *pick(rng, &family_labels(fams[0]));
        vertices[n - 1] = *pick(rng, &family_labels(fams[n - 2]));
    }
    let mut pos = vec![anchor; n];
    for i in 0..n - 1 {
        pos[i + 1] = pos[i]
            + match dirs[i] {
                Dir::Fwd => -1,
                Dir::Bwd => 1,
            };
    }
    let mut edges = Vec::with_capacity(n - 1);
    for i in 0..n - 1 {
        let (src_node, sink_node) = match dirs[i] {
            Dir::Fwd => (i, i + 1),
            Dir::Bwd => (i + 1, i),
        };
        let candidates: Vec<PathWord> = (1..=6usize)
            .flat_map(|len| {
                deltand::pathalg::path_basis(vertices[sink_node], vertices[src_node], len)
            })
            .filter(|w| family_matches(w, fams[i]))
            .collect();
        assert!(
            !candidates.is_empty(),
            "family label bookkeeping guarantees a candidate"
        );
        edges.push(StringEdge {
            dir: dirs[i],
            decoration: pick(rng, &candidates).clone(),
        });
    }
    let nodes = (0..n)
        .map(|i| StringNode {
            vertex: vertices[i],
            pos: pos[i],
        })
        .collect();
    let s = StringSpec::new(nodes, edges);
    assert_eq!(s.validate(), Ok(()), "generator produces valid walks");
    s
}
