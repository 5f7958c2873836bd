//! Acceptance suite: one test per criterion, exact assertions throughout.
//!
//! Every expected value is either pinned from the closed formulas, derived
//! by an independent oracle inside the test, or checked as an internal
//! consistency relation between two algebraically independent routes.

mod common;

use deltand::arquiver::{self, ar_mesh, component_window, int_rank, tau, BlockEnv};
use deltand::delta::{
    cone_minimal, cone_minimal_chain, cone_proj_map, cone_proj_map_chain, k0, k0_of_complex,
    normalize, stabilize, DeltaEngine, FingerprintPanel, Indec, McmClass, NormalForm,
};
use deltand::field::F32003;
use deltand::komplex::oracle::{hom_kb, OraclePolicy};
use deltand::komplex::{cone, ProjComplex};
use deltand::pathalg::{Sign, Vertex};
use deltand::strings::MinStringSpec;

type C = ProjComplex<F32003>;
type Engine = DeltaEngine<F32003>;

fn ms(tau: Sign, l: u32, shift: i64) -> Indec {
    Indec::min_string(tau, l, shift)
}

fn pj(sign: Sign, shift: i64) -> Indec {
    Indec::proj(sign, shift)
}

fn compile_atoms(atoms: &[Indec]) -> C {
    let mut acc = C::empty();
    for a in atoms {
        acc = acc.direct_sum(&a.compile());
    }
    acc
}

fn panel_for(complexes: &[&C], l_max: usize) -> FingerprintPanel {
    let mut lo = i64::MAX;
    let mut hi = i64::MIN;
    for c in complexes {
        if let Some((a, b)) = c.support() {
            lo = lo.min(a);
            hi = hi.max(b);
        }
    }
    if lo > hi {
        lo = 0;
        hi = 0;
    }
    FingerprintPanel::covering(Some((lo, hi)), l_max)
}

/// Criterion 1: the 48-entry Hom table between projective stalks over the
/// shift window [-8, 3] matches the closed formula exactly.
#[test]
fn acceptance_1_proj_hom_table() {
    let engine = Engine::default();
    let mut checked = 0;
    for (sa, sb) in [
        (Sign::Plus, Sign::Plus),
        (Sign::Plus, Sign::Minus),
        (Sign::Minus, Sign::Plus),
        (Sign::Minus, Sign::Minus),
    ] {
        for n in -8..=3i64 {
            let expected = if sa == sb {
                usize::from(n <= 0 && n % 2 == 0)
            } else {
                usize::from(n <= -1 && n.rem_euclid(2) == 1)
            };
            let got = engine.hom_dim(&pj(sa, 0), &pj(sb, n)).unwrap();
            assert_eq!(got, expected, "Hom(P({sa}), P({sb})[{n}])");
            checked += 1;
        }
    }
    assert_eq!(checked, 48);
    println!("ACCEPTANCE 1: PASS - projective Hom table, 48 exact values");
}

/// Criterion 2: minimal strings are rigid (one-dimensional endomorphisms in
/// the homotopy category) and invisible to shifted star stalks.
#[test]
fn acceptance_2_minimal_string_rigidity() {
    let policy = OraclePolicy::default();
    for tau_sign in [Sign::Plus, Sign::Minus] {
        for l in 1..=6u32 {
            let s: C = MinStringSpec {
                tau: tau_sign,
                l,
                shift: 0,
            }
            .compile();
            let end = hom_kb(&s, &s, 0, None, policy).unwrap();
            assert!(end.stable && end.exact, "End S({tau_sign},{l}): {end:?}");
            assert_eq!(end.total, 1, "End S({tau_sign},{l})");
            for m in -5..=5i64 {
                let stalk = C::stalk(Vertex::Star, m);
                let into = hom_kb(&stalk, &s, 0, None, policy).unwrap();
                assert!(into.stable && into.total == 0, "Hom(P*[{m}], S({tau_sign},{l}))");
                let from = hom_kb(&s, &stalk, 0, None, policy).unwrap();
                assert!(from.stable && from.total == 0, "Hom(S({tau_sign},{l}), P*[{m}])");
            }
        }
    }
    println!("ACCEPTANCE 2: PASS - rigidity and star-stalk vanishing, exact");
}

/// Criterion 3: over the full two-parameter panel every Hom dimension is
/// zero or one.
#[test]
fn acceptance_3_hom_finiteness_bound() {
    let engine = Engine::default();
    let mut atoms = Vec::new();
    for sign in [Sign::Minus, Sign::Plus] {
        for n in -6..=6i64 {
            atoms.push(pj(sign, n));
        }
        for l in 1..=6u32 {
            for m in -6..=6i64 {
                atoms.push(ms(sign, l, m));
            }
        }
    }
    assert_eq!(atoms.len(), 2 * 13 + 2 * 6 * 13);
    let mut ones = 0usize;
    for a in &atoms {
        for b in &atoms {
            let d = engine.hom_dim(a, b).unwrap();
            assert!(d <= 1, "Hom({a}, {b}) = {d}");
            ones += d;
        }
    }
    assert!(ones > 0, "panel is not degenerate");
    println!(
        "ACCEPTANCE 3: PASS - {} Hom values over the panel, all in {{0,1}}",
        atoms.len() * atoms.len()
    );
}

/// Criterion 4: Grothendieck-group behaviour: star complexes vanish, minimal
/// strings alternate with parity, classes add over cone triangles, and three
/// blocks give free rank six.
#[test]
fn acceptance_4_k0() {
    // (a) 50 randomized all-star strings have vanishing class and normalize
    // to the zero object.
    let mut rng = common::rng(0xD0_0F);
    for case in 0..50 {
        let walk = common::random_star_walk(&mut rng, 8);
        let c: C = walk.compile();
        assert_eq!(k0_of_complex(&c), (0, 0), "case {case}");
        let nf = normalize(1, std::slice::from_ref(&walk)).unwrap();
        assert!(nf.is_zero(), "case {case}: {nf:?}");
        assert_eq!(k0(&nf).of_node(1), (0, 0));
    }
    // (b) minimal strings: odd length gives +-(1,1), even length vanishes;
    // the atom-level class agrees with the alternating count of the
    // compiled complex.
    for tau_sign in [Sign::Plus, Sign::Minus] {
        for l in 1..=6u32 {
            for m in -3..=3i64 {
                let atom = ms(tau_sign, l, m);
                let pair = k0(&NormalForm::new(1, vec![atom])).of_node(1);
                let sign = if m.rem_euclid(2) == 0 { 1 } else { -1 };
                let expected = if l % 2 == 1 { (sign, sign) } else { (0, 0) };
                assert_eq!(pair, expected, "{atom}");
                assert_eq!(k0_of_complex::<F32003>(&atom.compile()), expected, "{atom}");
            }
        }
    }
    // (c) additivity over the cone triangles, both atom-level and
    // chain-level.
    for tau_sign in [Sign::Plus, Sign::Minus] {
        for l in 1..=6u32 {
            let x = MinStringSpec {
                tau: tau_sign,
                l,
                shift: 0,
            };
            let y = MinStringSpec {
                tau: x.sigma(),
                l: 1,
                shift: l as i64 + 1,
            };
            let f = cone_minimal_chain::<F32003>(tau_sign, l).unwrap();
            let c = cone(&f).unwrap();
            let xc: C = x.compile();
            let yc: C = y.compile();
            let xk = k0_of_complex(&xc);
            let yk = k0_of_complex(&yc);
            assert_eq!(k0_of_complex(&c), (yk.0 - xk.0, yk.1 - xk.1));
            // The raw alternating counts also fit the triangle.
            let raw = c.k0_raw();
            let want: Vec<i64> = (0..3).map(|i| yc.k0_raw()[i] - xc.k0_raw()[i]).collect();
            assert_eq!(raw.to_vec(), want);
            let atom = cone_minimal(tau_sign, l).unwrap();
            assert_eq!(
                k0(&NormalForm::new(1, vec![atom])).of_node(1),
                k0_of_complex(&c)
            );
        }
    }
    for n in -6..=-1i64 {
        for sigma in [Sign::Plus, Sign::Minus] {
            for tau_sign in [Sign::Plus, Sign::Minus] {
                let Ok(atom) = cone_proj_map(sigma, tau_sign, n) else {
                    continue;
                };
                let from = k0(&NormalForm::new(1, vec![pj(sigma, 0)])).of_node(1);
                let to = k0(&NormalForm::new(1, vec![pj(tau_sign, n)])).of_node(1);
                let got = k0(&NormalForm::new(1, vec![atom])).of_node(1);
                assert_eq!(got, (to.0 - from.0, to.1 - from.1), "{sigma} {tau_sign} {n}");
                let (_map, c) = cone_proj_map_chain::<F32003>(sigma, tau_sign, n).unwrap();
                assert_eq!(k0_of_complex(&c), got);
            }
        }
    }
    // (d) three blocks: free rank six, realized by the generator classes.
    let env = BlockEnv::assemble(
        3,
        vec![
            NormalForm::new(1, vec![pj(Sign::Plus, 0)]),
            NormalForm::new(2, vec![ms(Sign::Minus, 1, 0)]),
            NormalForm::new(3, vec![]),
        ],
    )
    .unwrap();
    assert_eq!(env.k0_rank(), 6);
    assert_eq!(int_rank(&env.generator_matrix()), 6);
    // A single block reduces to the single-node behaviour.
    let single = BlockEnv::assemble(1, vec![NormalForm::new(1, vec![ms(Sign::Plus, 1, 0)])]).unwrap();
    assert_eq!(single.k0_rank(), 2);
    assert_eq!(single.k0().of_node(1), (1, 1));
    println!("ACCEPTANCE 4: PASS - K0 relations, cone additivity, block rank 6");
}

/// Criterion 5: normalization is sound on a 200-case randomized corpus:
/// the fingerprint of the compiled string equals the fingerprint of its
/// normal form, and normalization is idempotent and commutes with shift and
/// direct sum.
#[test]
fn acceptance_5_normalization_soundness() {
    let engine = Engine::default();
    let mut rng = common::rng(0x5EED);
    let mut previous: Option<deltand::strings::StringSpec> = None;
    for case in 0..200 {
        let walk = common::random_walk(&mut rng, 10);
        let compiled: C = walk.compile();
        assert_eq!(compiled.validate(), Ok(()));
        let nf = normalize(1, std::slice::from_ref(&walk)).unwrap();

        let atom_complex = compile_atoms(&nf.atoms);
        let panel = panel_for(&[&compiled, &atom_complex], walk.len());
        let fp_complex = engine.fingerprint(&compiled, &panel).unwrap();
        let fp_form = engine.fingerprint_form(&nf, &panel).unwrap();
        assert_eq!(fp_complex, fp_form, "case {case}: {walk:?} -> {nf:?}");

        // Idempotence: atoms re-expanded as walks normalize to themselves.
        let atom_walks: Vec<_> = nf.atoms.iter().map(|a| a.to_walk()).collect();
        let again = normalize(1, &atom_walks).unwrap();
        assert!(again.is_iso(&nf), "case {case} idempotence");

        // Shift equivariance.
        for k in [1i64, -2] {
            let shifted = normalize(1, &[walk.shift(k)]).unwrap();
            assert!(shifted.is_iso(&nf.shift_by(k)), "case {case} shift {k}");
        }

        // Direct sums normalize summand-wise.
        if let Some(prev) = previous.take() {
            let pair = normalize(1, &[walk.clone(), prev.clone()]).unwrap();
            let separate = nf.union(&normalize(1, std::slice::from_ref(&prev)).unwrap());
            assert!(pair.is_iso(&separate), "case {case} direct sum");
        }
        previous = Some(walk);
    }
    println!("ACCEPTANCE 5: PASS - 200 randomized normalizations fingerprint-verified");
}

/// Criterion 6: iterating the cone construction from the length-one strings
/// generates every minimal string up to length 8, chain-verified.
#[test]
fn acceptance_6_cone_calculus() {
    let engine = Engine::default();
    for tau_sign in [Sign::Plus, Sign::Minus] {
        for l in 1..=7u32 {
            let atom = cone_minimal(tau_sign, l).unwrap();
            assert_eq!(atom, ms(tau_sign, l + 1, 1));
            // Endpoint parity per the length: equal signs exactly for even
            // lengths.
            let spec = MinStringSpec {
                tau: tau_sign,
                l: l + 1,
                shift: 1,
            };
            assert_eq!(spec.sigma() == tau_sign, (l + 1) % 2 == 0);
            // Explicit cone against the compiled atom, fingerprint-equal.
            let f = cone_minimal_chain::<F32003>(tau_sign, l).unwrap();
            let c = cone(&f).unwrap();
            assert_eq!(c.validate(), Ok(()));
            let target: C = atom.compile();
            let panel = panel_for(&[&c, &target], (l + 4) as usize);
            let fp_cone = engine.fingerprint(&c, &panel).unwrap();
            let fp_atom = engine.fingerprint(&target, &panel).unwrap();
            assert_eq!(fp_cone, fp_atom, "cone S({tau_sign},{l})");
        }
    }
    // The same for cones of projective maps.
    for n in -4..=-1i64 {
        for sigma in [Sign::Plus, Sign::Minus] {
            for tau_sign in [Sign::Plus, Sign::Minus] {
                let Ok(atom) = cone_proj_map(sigma, tau_sign, n) else {
                    continue;
                };
                assert_eq!(atom, ms(tau_sign, (-n) as u32, n));
                let (_g, c) = cone_proj_map_chain::<F32003>(sigma, tau_sign, n).unwrap();
                assert_eq!(c.validate(), Ok(()));
                let target: C = atom.compile();
                let panel = panel_for(&[&c, &target], (-n + 3) as usize);
                let fp_cone = engine.fingerprint(&c, &panel).unwrap();
                let fp_atom = engine.fingerprint(&target, &panel).unwrap();
                assert_eq!(fp_cone, fp_atom, "cone P({sigma}) -> P({tau_sign})[{n}]");
            }
        }
    }
    println!("ACCEPTANCE 6: PASS - cone calculus generates S(t,l) for l <= 8");
}

/// Criterion 7: translation structure. The translate squares to the double
/// shift, the golden component picture is reproduced mesh by mesh and as a
/// window, and Hom dimensions are translate-invariant and Serre-dual.
#[test]
fn acceptance_7_ar_structure() {
    // tau^2 = [2] with the sign flipped twice, over 40 atoms.
    let mut count = 0;
    for sign in [Sign::Plus, Sign::Minus] {
        for l in 1..=5u32 {
            for m in -2..=1i64 {
                let a = ms(sign, l, m);
                assert_eq!(tau(&tau(&a).unwrap()).unwrap(), a.shift_by(2));
                count += 1;
            }
        }
    }
    assert_eq!(count, 40);

    // Golden meshes: the fully visible ones in a rows=3, cols=4 window of
    // the component through S(+,1)[0].
    let golden_meshes = [
        ("S(-,1)[1]", "S(+,1)[2]", vec!["S(-,2)[1]"]),
        ("S(+,2)[0]", "S(-,2)[1]", vec!["S(-,1)[1]", "S(+,3)[0]"]),
        ("S(+,1)[0]", "S(-,1)[1]", vec!["S(+,2)[0]"]),
        ("S(-,2)[-1]", "S(+,2)[0]", vec!["S(+,1)[0]", "S(-,3)[-1]"]),
        ("S(-,1)[-1]", "S(+,1)[0]", vec!["S(-,2)[-1]"]),
        ("S(+,2)[-2]", "S(-,2)[-1]", vec!["S(-,1)[-1]", "S(+,3)[-2]"]),
        ("S(+,1)[-2]", "S(-,1)[-1]", vec!["S(+,2)[-2]"]),
    ];
    for (end, start, middle) in golden_meshes {
        let mesh = ar_mesh(&Indec::parse(end).unwrap()).unwrap();
        assert_eq!(mesh.start.id(), start, "mesh at {end}");
        let mut got: Vec<String> = mesh.middle.iter().map(|a| a.id()).collect();
        got.sort();
        let mut want: Vec<String> = middle.iter().map(|s| s.to_string()).collect();
        want.sort();
        assert_eq!(got, want, "mesh at {end}");
    }

    // The same window shows exactly the expected node set and arrows.
    let w = component_window(&ms(Sign::Plus, 1, 0), 3, 4).unwrap();
    let mut ids: Vec<&str> = w.nodes.iter().map(|n| n.id.as_str()).collect();
    ids.sort();
    let mut expected = vec![
        "S(+,1)[2]", "S(-,3)[1]", "S(-,2)[1]", "S(-,1)[1]", "S(+,3)[0]", "S(+,2)[0]",
        "S(+,1)[0]", "S(-,3)[-1]", "S(-,2)[-1]", "S(-,1)[-1]", "S(+,3)[-2]", "S(+,2)[-2]",
        "S(+,1)[-2]", "S(-,3)[-3]",
    ];
    expected.sort();
    assert_eq!(ids, expected);
    let arrow_set = |pairs: &[(usize, usize)]| -> Vec<(String, String)> {
        let mut v: Vec<(String, String)> = pairs
            .iter()
            .map(|&(i, j)| (w.nodes[i].id.clone(), w.nodes[j].id.clone()))
            .collect();
        v.sort();
        v
    };
    let solid_expected = [
        ("S(+,1)[2]", "S(-,2)[1]"),
        ("S(-,3)[1]", "S(-,2)[1]"),
        ("S(-,2)[1]", "S(-,1)[1]"),
        ("S(-,2)[1]", "S(+,3)[0]"),
        ("S(-,1)[1]", "S(+,2)[0]"),
        ("S(+,3)[0]", "S(+,2)[0]"),
        ("S(+,2)[0]", "S(+,1)[0]"),
        ("S(+,2)[0]", "S(-,3)[-1]"),
        ("S(+,1)[0]", "S(-,2)[-1]"),
        ("S(-,3)[-1]", "S(-,2)[-1]"),
        ("S(-,2)[-1]", "S(-,1)[-1]"),
        ("S(-,2)[-1]", "S(+,3)[-2]"),
        ("S(-,1)[-1]", "S(+,2)[-2]"),
        ("S(+,3)[-2]", "S(+,2)[-2]"),
        ("S(+,2)[-2]", "S(+,1)[-2]"),
        ("S(+,2)[-2]", "S(-,3)[-3]"),
    ];
    let mut solid_want: Vec<(String, String)> = solid_expected
        .iter()
        .map(|&(a, b)| (a.to_string(), b.to_string()))
        .collect();
    solid_want.sort();
    assert_eq!(arrow_set(&w.solid), solid_want);
    let dashed_expected = [
        ("S(-,1)[1]", "S(+,1)[2]"),
        ("S(+,3)[0]", "S(-,3)[1]"),
        ("S(+,2)[0]", "S(-,2)[1]"),
        ("S(+,1)[0]", "S(-,1)[1]"),
        ("S(-,3)[-1]", "S(+,3)[0]"),
        ("S(-,2)[-1]", "S(+,2)[0]"),
        ("S(-,1)[-1]", "S(+,1)[0]"),
        ("S(+,3)[-2]", "S(-,3)[-1]"),
        ("S(+,2)[-2]", "S(-,2)[-1]"),
        ("S(+,1)[-2]", "S(-,1)[-1]"),
        ("S(-,3)[-3]", "S(+,3)[-2]"),
    ];
    let mut dashed_want: Vec<(String, String)> = dashed_expected
        .iter()
        .map(|&(a, b)| (a.to_string(), b.to_string()))
        .collect();
    dashed_want.sort();
    assert_eq!(arrow_set(&w.dashed), dashed_want);

    // Translate invariance and Serre duality of Hom over the l <= 5 panel.
    let engine = Engine::default();
    let mut panel = Vec::new();
    for sign in [Sign::Plus, Sign::Minus] {
        for l in 1..=5u32 {
            for m in -2..=2i64 {
                panel.push(ms(sign, l, m));
            }
        }
    }
    for a in &panel {
        for b in &panel {
            let d = engine.hom_dim(a, b).unwrap();
            let dt = engine
                .hom_dim(&tau(a).unwrap(), &tau(b).unwrap())
                .unwrap();
            assert_eq!(d, dt, "tau invariance at ({a}, {b})");
            let serre = engine
                .hom_dim(b, &tau(a).unwrap().shift_by(1))
                .unwrap();
            assert_eq!(d, serre, "Serre duality at ({a}, {b})");
        }
    }
    println!("ACCEPTANCE 7: PASS - translate, meshes, window, Serre duality");
}

/// Criterion 8: stabilization kills exactly the minimal strings and is
/// two-periodic in the shift on projectives.
#[test]
fn acceptance_8_stabilization() {
    // Minimal strings die.
    let mut all_strings = Vec::new();
    for sign in [Sign::Plus, Sign::Minus] {
        for l in 1..=6u32 {
            for m in -3..=3i64 {
                all_strings.push(ms(sign, l, m));
            }
        }
    }
    assert_eq!(
        stabilize(&NormalForm::new(1, all_strings.clone())),
        McmClass::default()
    );
    // Projectives survive: nothing else dies.
    for sign in [Sign::Plus, Sign::Minus] {
        for n in -5..=5i64 {
            let alone = stabilize(&NormalForm::new(1, vec![pj(sign, n)]));
            assert_eq!(alone.branch_u + alone.branch_v, 1);
            // Two-periodicity.
            let moved = stabilize(&NormalForm::new(1, vec![pj(sign, n + 2)]));
            assert_eq!(alone, moved, "P({sign})[{n}]");
            // One shift swaps the branches.
            let swapped = stabilize(&NormalForm::new(1, vec![pj(sign, n + 1)]));
            assert_eq!(alone.branch_u, swapped.branch_v);
        }
    }
    // Convention anchor and a mixed multiset.
    assert_eq!(
        stabilize(&NormalForm::new(1, vec![pj(Sign::Plus, 0)])),
        McmClass {
            branch_u: 1,
            branch_v: 0
        }
    );
    let mixed = NormalForm::new(
        1,
        vec![
            pj(Sign::Plus, 0),
            pj(Sign::Plus, 3),
            pj(Sign::Minus, 2),
            ms(Sign::Plus, 4, 1),
        ],
    );
    assert_eq!(
        stabilize(&mixed),
        McmClass {
            branch_u: 1,
            branch_v: 2
        }
    );
    println!("ACCEPTANCE 8: PASS - stabilization kernel and two-periodicity");
}

/// Aggregate invariant from the module contracts: the engine's Hom is
/// shift-compatible and the translate preserves components.
#[test]
fn acceptance_supplement_component_partition() {
    // Every atom lies in exactly one of the four components, and the
    // irreducible maps stay inside it.
    let mut atoms = Vec::new();
    for sign in [Sign::Plus, Sign::Minus] {
        for n in -3..=3i64 {
            atoms.push(pj(sign, n));
        }
        for l in 1..=4u32 {
            for m in -3..=3i64 {
                atoms.push(ms(sign, l, m));
            }
        }
    }
    for a in &atoms {
        let tag = arquiver::component_of(a);
        for b in arquiver::irreducible_successors(a) {
            assert_eq!(arquiver::component_of(&b), tag, "{a} -> {b}");
        }
        if let Ok(t) = tau(a) {
            assert_eq!(arquiver::component_of(&t), tag);
        }
    }
    println!("ACCEPTANCE supplement: PASS - component partition respected");
}
