//! Acceptance suite: one line per criterion with its time bound. Runs
//! without the libtest harness so the lines always show.
//!
//! Randomized criteria draw from ChaCha8 seeded by `FIBRATO_SEED` (default 0).

#![allow(clippy::needless_range_loop)]

use std::collections::{BTreeSet, HashSet};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::{Path, PathBuf};
use std::process::Command;
use std::sync::Arc;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use fibrato::algebra::{
    action_to_rep, category_to_internal, check_action, check_internal_groupoid, check_rep, close_generators,
    group_as_category, orbits_stabilizers, rep_to_action, wreath_product, GroupAction, Perm, PermGroup,
};
use fibrato::catalog;
use fibrato::category::{codiscrete_groupoid, FinCat, FinFunctor, SetValuedAction};
use fibrato::geometry::{check_klein, KleinPair};
use fibrato::grothendieck::{
    check_split_fibration, check_transformation_equals_completion, grothendieck_complete, Action, Variant,
};
use fibrato::hierarchy::{build_hierarchy, check_composite_fibration, compare_models};
use fibrato::io::{parse, to_json, Format};
use fibrato::twogroup::{aut_2group, check_two_group, embed_square_at_node, naturality_square};
use fibrato::Budget;

fn seed() -> u64 {
    std::env::var("FIBRATO_SEED").ok().and_then(|s| s.parse().ok()).unwrap_or(0)
}

fn perm(line: &[usize]) -> Perm {
    Perm::from_one_line(line).unwrap()
}

fn random_perm(rng: &mut ChaCha8Rng, degree: usize) -> Perm {
    let mut line: Vec<usize> = (1..=degree).collect();
    line.shuffle(rng);
    perm(&line)
}

/// A subgroup of `S_degree` on one or two random generators, redrawn until
/// its order is at most `max_order`.
fn random_group(rng: &mut ChaCha8Rng, degree: usize, max_order: usize) -> Arc<PermGroup> {
    loop {
        let k = rng.gen_range(1..=2);
        let gens = (0..k).map(|i| (format!("g{i}"), random_perm(rng, degree))).collect();
        if let Ok(g) = close_generators(degree, gens, max_order + 1) {
            if g.order() <= max_order {
                return Arc::new(g);
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Criterion 1

fn criterion_1() {
    for g in [catalog::cyclic(3), catalog::dihedral(3)] {
        let a = GroupAction::natural(g);
        let r = check_transformation_equals_completion(&a).unwrap();
        assert!(r.isomorphic);
        let w = r.witness.expect("witness");
        assert!(w.is_mutually_inverse());
    }
}

// ---------------------------------------------------------------------------
// Criterion 2

/// A random poset on `n ≤ 4` points as a thin category, acted on by
/// inclusions of `{(y, u) : y ≤ x}` followed by a fixed idempotent per `y`
/// along strict inequalities.
fn random_poset_action(rng: &mut ChaCha8Rng) -> SetValuedAction {
    let n = rng.gen_range(1..=4);
    let mut le = vec![vec![false; n]; n];
    for i in 0..n {
        le[i][i] = true;
        for j in i + 1..n {
            le[i][j] = rng.gen_bool(0.5);
        }
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if le[i][k] && le[k][j] {
                    le[i][j] = true;
                }
            }
        }
    }
    let name = |i: usize, j: usize| format!("{i}<{j}");
    let mut b = FinCat::builder();
    b.objects((0..n).map(|i| i.to_string()));
    for i in 0..n {
        for j in 0..n {
            if le[i][j] {
                b.morphism(name(i, j), i.to_string(), j.to_string());
            }
        }
        b.identity(i.to_string(), name(i, i));
    }
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                if le[i][j] && le[j][k] {
                    b.compose(name(j, k), name(i, j), name(i, k));
                }
            }
        }
    }
    let base = Arc::new(b.build().unwrap());
    let sizes: Vec<usize> = (0..n).map(|_| rng.gen_range(0..=3)).collect();
    let collapse: Vec<Vec<usize>> = sizes
        .iter()
        .map(|&s| {
            let keep = if s == 0 { 0 } else { rng.gen_range(0..s) };
            (0..s).map(|u| if rng.gen_bool(0.5) { keep } else { u }).collect::<Vec<_>>()
        })
        .map(|c| c.iter().map(|&u| c[u]).collect())
        .collect();
    let elems: Vec<Vec<(usize, usize)>> = (0..n)
        .map(|x| (0..n).filter(|&y| le[y][x]).flat_map(|y| (0..sizes[y]).map(move |u| (y, u))).collect())
        .collect();
    let fibers = elems
        .iter()
        .map(|es| es.iter().map(|(y, u)| format!("{y}.{u}")).collect())
        .collect();
    let act = base
        .morphisms()
        .iter()
        .map(|m| {
            elems[m.src]
                .iter()
                .map(|&(y, u)| {
                    let image = if m.src == m.tgt { (y, u) } else { (y, collapse[y][u]) };
                    elems[m.tgt].iter().position(|&e| e == image).unwrap()
                })
                .collect()
        })
        .collect();
    SetValuedAction { base, fibers, act }
}

/// A small permutation group on its points plus up to two fixed points.
fn random_group_action(rng: &mut ChaCha8Rng) -> SetValuedAction {
    let degree = rng.gen_range(2..=4);
    let g = random_group(rng, degree, 12);
    let extra = rng.gen_range(0..=2);
    let a = GroupAction::natural(g.clone());
    let n = degree + extra;
    let mut carrier = a.carrier.clone();
    carrier.extend((0..extra).map(|i| format!("f{i}")));
    let table = (0..g.order())
        .flat_map(|e| (0..n).map(move |x| (e, x)))
        .map(|(e, x)| if x < degree { a.act(e, x) } else { x })
        .collect();
    GroupAction { group: g, carrier, table }.to_set_valued()
}

/// One object with an idempotent `e`, acting by a random idempotent map.
fn random_idempotent_action(rng: &mut ChaCha8Rng) -> SetValuedAction {
    let mut b = FinCat::builder();
    b.object("*")
        .morphism("1", "*", "*")
        .morphism("e", "*", "*")
        .identity("*", "1")
        .compose("e", "e", "e")
        .infer_unit_entries();
    let base = Arc::new(b.build().unwrap());
    let s = rng.gen_range(1..=3);
    let raw: Vec<usize> = (0..s).map(|_| rng.gen_range(0..s)).collect();
    // f^6 is idempotent on at most three points: 6 ≥ 3 and every cycle
    // length divides 6.
    let mut e: Vec<usize> = (0..s).collect();
    for _ in 0..6 {
        e = e.iter().map(|&u| raw[u]).collect();
    }
    SetValuedAction {
        base,
        fibers: vec![(0..s).map(|u| u.to_string()).collect()],
        act: vec![(0..s).collect(), e],
    }
}

fn criterion_2() {
    let mut rng = ChaCha8Rng::seed_from_u64(seed());
    let mut mutants = 0;
    let mut largest = 0;
    for i in 0..20 {
        let a = match i % 3 {
            0 => random_poset_action(&mut rng),
            1 => random_group_action(&mut rng),
            _ => random_idempotent_action(&mut rng),
        };
        let b = &*a.base;
        assert!(b.object_count() <= 4 && b.morphism_count() <= 12);
        assert!(a.check().ok, "generated action {i} is not functorial");
        let objects: usize = a.fibers.iter().map(Vec::len).sum();
        for variant in Variant::ALL {
            let fc = grothendieck_complete(&Action::Set(a.clone()), variant).unwrap();
            // Left: Σ over f of |F(src f)| in the base. Right: the total lives
            // over the opposite base, and the sum runs over targets there.
            let fb = &*fc.base;
            let morphisms: usize = (0..fb.morphism_count())
                .map(|f| {
                    let anchor = if variant.is_left() { fb.src(f) } else { fb.tgt(f) };
                    a.fibers[anchor].len()
                })
                .sum();
            assert_eq!(fc.total.object_count(), objects, "{i} {variant}");
            assert_eq!(fc.total.morphism_count(), morphisms, "{i} {variant}");
            assert!(check_split_fibration(&fc).ok, "{i} {variant}");
            largest = largest.max(fc.total.morphism_count());
            mutants += mutations_are_detected(&fc, i);
        }
    }
    assert!(mutants >= 500 && largest >= 12, "only {mutants} mutants, largest total {largest}");
}

/// Returns the number of mutants tried.
fn mutations_are_detected(fc: &fibrato::grothendieck::FibredCategory, case: usize) -> usize {
    let e = &*fc.total;
    let m = e.morphism_count();
    let mut tried = 0;
    for f in 0..fc.cleavage.len() {
        for i in 0..fc.cleavage[f].len() {
            let mut bad = fc.clone();
            bad.cleavage[f][i] = (fc.cleavage[f][i] + 1) % m;
            if m > 1 {
                assert!(!check_split_fibration(&bad).ok, "{case}: cleavage ({f}, {i})");
                tried += 1;
            }
        }
    }
    for (g, f, h) in e.compose_entries().collect::<Vec<_>>() {
        let value = if m > 1 { Some((h + 1) % m) } else { None };
        let mut bad = fc.clone();
        bad.total = Arc::new(e.with_entry(g, f, value));
        bad.projection = FinFunctor::new(
            bad.total.clone(),
            fc.base.clone(),
            fc.projection.obj.clone(),
            fc.projection.mor.clone(),
        );
        assert!(!check_split_fibration(&bad).ok, "{case}: compose ({g}, {f})");
        tried += 1;
    }
    tried
}

// ---------------------------------------------------------------------------
// Criterion 3

fn criterion_3() {
    for (spec, expected) in [(catalog::group_hierarchy(), (1, 18)), (catalog::groupoid_hierarchy(), (6, 36))] {
        let h = build_hierarchy(&spec).unwrap();
        let e = h.total();
        assert_eq!((e.object_count(), e.morphism_count()), expected);
        let report = check_composite_fibration(&h.p, h.q());
        assert!(report.ok, "{report}");
    }
}

// ---------------------------------------------------------------------------
// Criterion 4

fn criterion_4() {
    let (d3, z2, c3) = (catalog::dihedral(3), catalog::cyclic(2), catalog::cyclic(3));
    let w = wreath_product(&d3, &z2).unwrap();
    assert_eq!(w.group.order(), 72);
    let blocks: [BTreeSet<usize>; 2] = [(0..3).collect(), (3..6).collect()];
    for p in w.group.elements() {
        for b in &blocks {
            let image: BTreeSet<usize> = b.iter().map(|&x| p.apply(x)).collect();
            assert!(blocks.contains(&image), "{p:?} breaks the blocks");
        }
    }
    let names: Vec<Vec<String>> = vec![
        ["1", "2", "3"].map(String::from).to_vec(),
        ["4", "5", "6"].map(String::from).to_vec(),
    ];
    let r = compare_models(&names, &d3, &z2).unwrap();
    assert_eq!((r.group_model.morphisms, r.group_model.objects), (72, 1));
    assert_eq!((r.groupoid_model.morphisms, r.groupoid_model.objects), (72, 6));
    assert!(r.morphisms_coincide);
    let r = compare_models(&names, &c3, &z2).unwrap();
    assert_eq!((r.group_model.morphisms, r.groupoid_model.morphisms), (18, 36));
}

// ---------------------------------------------------------------------------
// Criterion 5

fn criterion_5() {
    let c = Arc::new(codiscrete_groupoid(3));
    let t = aut_2group(&c, Budget::aut_default()).unwrap();
    assert_eq!((t.one_cells.len(), t.two_cells.len()), (6, 36));
    let mut squares = 0;
    for chi in &t.two_cells {
        let (g, h) = (&t.one_cells[chi.from], &t.one_cells[chi.to]);
        for f in 0..c.morphism_count() {
            let (x, y) = (c.src(f), c.tgt(f));
            let lhs = c.compose(h.mor[f], chi.components[x]);
            let rhs = c.compose(chi.components[y], g.mor[f]);
            assert!(lhs.is_some() && lhs == rhs);
            assert!(naturality_square(&t, chi, f).commutes);
            squares += 1;
        }
    }
    assert_eq!(squares, 36 * 9);
    assert!(check_two_group(&t).ok);

    // Interchange over every pair of vertically composable pairs.
    let n = t.two_cells.len();
    let cells = &t.two_cells;
    let cells_from = |a: usize| (0..n).filter(move |&i| cells[i].from == a);
    let k = t.one_cells.len();
    for a in 0..k {
        for alpha in cells_from(a) {
            for beta in cells_from(t.two_cells[alpha].to) {
                let ba = t.vertical[&(beta, alpha)];
                for a2 in 0..k {
                    for gamma in cells_from(a2) {
                        for delta in cells_from(t.two_cells[gamma].to) {
                            let dg = t.vertical[&(delta, gamma)];
                            let lhs = t.horizontal[ba * n + dg];
                            let bd = t.horizontal[beta * n + delta];
                            let ag = t.horizontal[alpha * n + gamma];
                            assert_eq!(lhs, t.vertical[&(bd, ag)]);
                        }
                    }
                }
            }
        }
    }

    let h = build_hierarchy(&catalog::groupoid_hierarchy()).unwrap();
    for node in 0..h.outer.base.object_count() {
        let fiber = h.inner[node].total.clone();
        let t = aut_2group(&fiber, Budget::aut_default()).unwrap();
        for chi in &t.two_cells {
            for f in 0..fiber.morphism_count() {
                let sq = naturality_square(&t, chi, f);
                let up = embed_square_at_node(&sq, &h.outer, node).unwrap();
                assert_eq!(up.commutes, sq.commutes);
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Criterion 6

fn criterion_6() {
    let r = check_klein(&catalog::s3_transposition()).unwrap();
    assert_eq!(r.cosets, 3);
    assert!(r.transitive);
    assert_eq!(r.vertex_group_order_at_basepoint, 2);
    assert!(r.vertex_group_is_h);
    assert_eq!(r.x_mod_g.1, 18);
    assert_eq!((r.completion.1, r.completion_components), (6, 2));
    assert!(!r.isomorphic);
    assert!(r.obstruction.is_some());

    for g in [catalog::symmetric(3), catalog::cyclic(4), catalog::dihedral(4)] {
        let order = g.order();
        let whole = check_klein(&KleinPair {
            group: g.clone(),
            subgroup: g.clone(),
        })
        .unwrap();
        assert_eq!(whole.cosets, 1);
        assert_eq!(whole.vertex_group_order_at_basepoint, order);
        assert_eq!(whole.x_mod_g, (1, order));
        assert!(whole.isomorphic);

        let trivial = Arc::new(close_generators(g.degree(), vec![], 10).unwrap());
        let points = check_klein(&KleinPair {
            group: g.clone(),
            subgroup: trivial,
        })
        .unwrap();
        assert_eq!(points.cosets, order);
        assert!(points.transitive);
        assert_eq!(points.vertex_group_order_at_basepoint, 1);
        assert_eq!(points.x_mod_g, (order, order * order));
        assert_eq!(points.completion, (order, order));
        assert_eq!(points.completion_components, order);
    }
}

// ---------------------------------------------------------------------------
// Criterion 7

fn criterion_7() {
    let mut rng = ChaCha8Rng::seed_from_u64(seed().wrapping_add(7));
    for _ in 0..100 {
        let degree = rng.gen_range(1..=6);
        let g = random_group(&mut rng, degree, 24);
        let a = GroupAction::natural(g.clone());
        assert!(check_action(&a).unwrap().ok);
        let rep = action_to_rep(&a);
        assert!(check_rep(&rep).ok);
        assert_eq!(rep_to_action(&rep), a);
        assert_eq!(action_to_rep(&rep_to_action(&rep)), rep);

        let orbits = orbits_stabilizers(&a);
        let mut covered = HashSet::new();
        for o in &orbits {
            let x = o.representative;
            // Closure of {x} under the generators.
            let mut orbit = BTreeSet::from([x]);
            let mut frontier = vec![x];
            while let Some(y) = frontier.pop() {
                for (_, s) in g.generators() {
                    if orbit.insert(s.apply(y)) {
                        frontier.push(s.apply(y));
                    }
                }
            }
            let fixing = g.elements().iter().filter(|p| p.apply(x) == x).count();
            assert_eq!(o.points, orbit.iter().copied().collect::<Vec<_>>());
            assert_eq!(o.stabilizer.order(), fixing);
            assert_eq!(orbit.len() * fixing, g.order());
            covered.extend(orbit);
        }
        assert_eq!(covered.len(), degree);
    }
}

// ---------------------------------------------------------------------------
// Criterion 8

fn criterion_8() {
    let t = category_to_internal(&codiscrete_groupoid(3)).unwrap();
    assert!(check_internal_groupoid(&t).unwrap().ok);

    let g = catalog::dihedral(3);
    let one = category_to_internal(&group_as_category(&g)).unwrap();
    assert!(check_internal_groupoid(&one).unwrap().ok);
    let form = one.group_form().expect("one object");
    assert_eq!(one.composable_pairs(), one.g1.len() * one.g1.len());
    assert_eq!(form.mult.len(), g.order() * g.order());
    assert_eq!(form.elements.len(), g.order());

    let mut rng = ChaCha8Rng::seed_from_u64(seed().wrapping_add(8));
    let k = t.g1.len();
    for _ in 0..20 {
        let mut bad = t.clone();
        match rng.gen_range(0..3) {
            0 => {
                let defined: Vec<usize> = (0..k * k).filter(|&i| t.m[i].is_some()).collect();
                let i = *defined.choose(&mut rng).unwrap();
                let old = t.m[i].unwrap();
                bad.m[i] = Some((old + rng.gen_range(1..k)) % k);
            }
            1 => {
                let x = rng.gen_range(0..t.g0.len());
                bad.e[x] = (t.e[x] + rng.gen_range(1..k)) % k;
            }
            _ => {
                let f = rng.gen_range(0..k);
                bad.i[f] = (t.i[f] + rng.gen_range(1..k)) % k;
            }
        }
        let caught = match check_internal_groupoid(&bad) {
            Ok(r) => !r.ok,
            Err(_) => true,
        };
        assert!(caught, "mutation not caught");
    }
}

// ---------------------------------------------------------------------------
// Criterion 9

fn fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

fn fibrato(args: &[&str]) -> (i32, Vec<u8>) {
    let out = Command::new(env!("CARGO_BIN_EXE_fibrato"))
        .args(args)
        .current_dir(fixtures())
        .output()
        .unwrap();
    (out.status.code().unwrap_or(-1), out.stdout)
}

fn criterion_9() {
    let mut roundtrips = 0;
    let mut entries: Vec<PathBuf> = std::fs::read_dir(fixtures())
        .unwrap()
        .map(|e| e.unwrap().path())
        .collect();
    entries.sort();
    for path in entries {
        let text = std::fs::read_to_string(&path).unwrap();
        let Ok(doc) = parse(&text, Format::sniff(&text)) else {
            continue;
        };
        let json = to_json(&doc);
        let back = parse(&json, Format::Json).unwrap();
        assert_eq!(back, doc, "{}", path.display());
        assert_eq!(to_json(&back), json, "{}", path.display());
        roundtrips += 1;
    }
    assert!(roundtrips >= 10, "only {roundtrips} fixtures parsed");

    for args in [&["dot", "codiscrete-3.json"][..], &["square", "c3.json", "--cell", "0", "--mor", "r", "--dot"]] {
        let first = fibrato(args);
        let second = fibrato(args);
        assert_eq!(first.0, 0);
        assert!(!first.1.is_empty());
        assert_eq!(first.1, second.1);
    }

    assert_eq!(fibrato(&["check", "c3.json"]).0, 0);
    let (code, out) = fibrato(&["check", "mutated-assoc.json"]);
    assert_eq!(code, 1);
    assert!(String::from_utf8(out).unwrap().contains("associativity at (r2, r, r)"));
    assert_eq!(fibrato(&["check", "bad-syntax.json"]).0, 2);
}

fn main() {
    let criteria: [(&str, fn(), u64); 9] = [
        ("transformation groupoid is a completion", criterion_1, 1),
        ("completion counting laws and mutations", criterion_2, 5),
        ("composite fibration on both hierarchies", criterion_3, 2),
        ("wreath model against groupoid model", criterion_4, 1),
        ("automorphism 2-group and squares", criterion_5, 5),
        ("klein pairs", criterion_6, 1),
        ("action and representation roundtrip, orbit-stabilizer", criterion_7, 2),
        ("internal groupoid verifier", criterion_8, 2),
        ("command line end to end", criterion_9, 2),
    ];
    let quiet_hook = std::panic::take_hook();
    std::panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, (name, run, bound)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(run));
        let took = start.elapsed();
        let within = took <= Duration::from_secs(*bound);
        let verdict = match (&result, within) {
            (Ok(()), true) => "PASS".to_string(),
            (Ok(()), false) => format!("FAIL (over the {bound} s bound)"),
            (Err(e), _) => {
                let msg = e
                    .downcast_ref::<String>()
                    .cloned()
                    .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                    .unwrap_or_default();
                format!("FAIL ({msg})")
            }
        };
        if !verdict.starts_with("PASS") {
            failed += 1;
        }
        println!("criterion {}: {verdict} [{name}, {:.3} s < {bound} s]", i + 1, took.as_secs_f64());
    }
    std::panic::set_hook(quiet_hook);
    if failed > 0 {
        println!("{failed} criterion(s) failed");
        std::process::exit(1);
    }
}
