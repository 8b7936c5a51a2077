//! Acceptance suite: one line per criterion, non-zero exit on any failure.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use robustci::ci::{
    build_from_structure, classify_structure, image_bound, is_robust, membership_in_pb,
    robustness_report, StructureParams,
};
use robustci::decomp::{verify_primary_decomposition, verify_union_decomposition, LegOutcome};
use robustci::gibbs::{
    alpha_coefficient, check_robust_at, gibbs_modalities, is_rk_robust_at, k_interaction_decompose,
    moebius_potentials, potential_robustness_criterion, FunctionalModalities,
};
use robustci::graph::{
    check_product_form, classify_cube_complement, components_of, enumerate_maximal_structures,
    is_connected_in, is_maximal, maximality_by_edges, search_maximal_structures, uniform_graph,
    CubeComplement, InputGraph, RobustnessStructure,
};
use robustci::ideal::{verify_groebner_set, AntitoneRange};
use robustci::model::{make_uniform_spec, ratio, InputConfig, StateSpace, Subset};
use robustci::poly::Caps;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn run(id: &str, name: &str, limit: Option<Duration>, f: impl FnOnce() -> Outcome) -> bool {
    let start = Instant::now();
    let mut out = f();
    let elapsed = start.elapsed();
    if let Some(limit) = limit {
        if elapsed > limit {
            out.pass = false;
            out.detail.push_str(&format!("; over the {limit:?} limit"));
        }
    }
    let tag = if out.pass { "PASS" } else { "FAIL" };
    println!("[{tag}] {id} {name}: {} ({elapsed:.2?})", out.detail);
    out.pass
}

fn all_labeled_graphs(n: usize) -> Vec<InputGraph> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    (0u32..1 << pairs.len())
        .map(|mask| {
            let edges: Vec<_> = (0..pairs.len()).filter(|&k| mask >> k & 1 == 1).map(|k| pairs[k]).collect();
            InputGraph::from_edges(n, &edges).unwrap()
        })
        .collect()
}

fn is_connected(g: &InputGraph) -> bool {
    let all: Vec<usize> = (0..g.num_vertices()).collect();
    is_connected_in(g, &all)
}

/// Components of `members` under "agree in at least k coordinates",
/// computed from coordinates directly.
fn oracle_components(configs: &[Vec<u32>], k: usize, members: u32) -> usize {
    let adjacent = |u: usize, v: usize| {
        configs[u].iter().zip(&configs[v]).filter(|(a, b)| a == b).count() >= k
    };
    let n = configs.len();
    let mut label = vec![usize::MAX; n];
    let mut count = 0;
    for s in 0..n {
        if members >> s & 1 == 0 || label[s] != usize::MAX {
            continue;
        }
        let mut stack = vec![s];
        label[s] = count;
        while let Some(u) = stack.pop() {
            for (v, lv) in label.iter_mut().enumerate() {
                if v != u && members >> v & 1 == 1 && *lv == usize::MAX && adjacent(u, v) {
                    *lv = count;
                    stack.push(v);
                }
            }
        }
        count += 1;
    }
    count
}

fn c1() -> Outcome {
    let space = StateSpace::binary(3);
    let g = uniform_graph(&space, 2);
    let structures = enumerate_maximal_structures(&g, 20).unwrap();
    let mut tally: BTreeMap<&str, usize> = BTreeMap::new();
    for st in &structures {
        *tally.entry(classify_cube_complement(st, &g).label()).or_default() += 1;
    }
    let unclassified = structures
        .iter()
        .filter(|st| classify_cube_complement(st, &g) == CubeComplement::Unclassified)
        .count();
    let configs: Vec<Vec<u32>> = space.configs().map(|c| c.coords().to_vec()).collect();
    let oracle = (0u32..256)
        .filter(|&y| {
            let base = oracle_components(&configs, 2, y);
            (0..8).filter(|&x| y >> x & 1 == 0).all(|x| oracle_components(&configs, 2, y | 1 << x) < base)
        })
        .count();
    outcome(
        unclassified == 0 && oracle == structures.len(),
        format!("{} structures, oracle {oracle}, unclassified {unclassified}, {tally:?}", structures.len()),
    )
}

fn c2() -> Outcome {
    let space = StateSpace::binary(4);
    let g2 = uniform_graph(&space, 2);
    let g3 = uniform_graph(&space, 3);
    let idx = |c: [u32; 4]| space.index_of(&InputConfig::new(c.to_vec()));
    let st = RobustnessStructure::from_blocks(vec![
        vec![idx([1, 1, 1, 1]), idx([2, 2, 1, 1])],
        vec![idx([1, 2, 2, 2]), idx([2, 1, 2, 2])],
    ])
    .unwrap();
    let maximal = is_maximal(&st, &g2).unwrap() && maximality_by_edges(&st, &g2).unwrap();
    let connected = st.blocks().iter().all(|b| is_connected_in(&g2, b));
    let split = st.blocks().iter().all(|b| components_of(&g3, b).num_blocks() == b.len());
    outcome(
        maximal && connected && split,
        format!("maximal {maximal}, connected in G_2 {connected}, split in G_3 {split}"),
    )
}

fn c3() -> Outcome {
    let mut checked = 0;
    let mut failures = Vec::new();
    let mut literal_failures = 0;
    let mut literal_checked = 0;
    for n in 1..=4 {
        for g in all_labeled_graphs(n) {
            if n == 4 && !is_connected(&g) {
                continue;
            }
            for d0 in 2..=3 {
                let c = verify_groebner_set(&g, d0, AntitoneRange::EndpointInclusive, Caps::default()).unwrap();
                checked += 1;
                if !c.all_pass() {
                    failures.push(format!("n={n} d0={d0} edges={:?}", g.edges().collect::<Vec<_>>()));
                }
                let lit = verify_groebner_set(&g, d0, AntitoneRange::Literal, Caps::default()).unwrap();
                literal_checked += 1;
                if !lit.reduced {
                    literal_failures += 1;
                }
            }
        }
    }
    println!(
        "       literal antitone range: {}/{literal_checked} instances reduced",
        literal_checked - literal_failures
    );
    outcome(
        failures.is_empty(),
        format!("{}/{checked} instances pass all five checks {}", checked - failures.len(), failures.join("; ")),
    )
}

fn c4() -> Outcome {
    let spaces: Vec<Vec<u32>> = vec![
        vec![2],
        vec![3],
        vec![2, 2],
        vec![2, 3],
        vec![3, 2],
        vec![3, 3],
        vec![2, 2, 2],
    ];
    let mut subsets = 0u64;
    let mut disagreements = 0;
    for d in spaces {
        let space = StateSpace::new(2, d).unwrap();
        let n = space.num_configs();
        for k in 0..=space.num_inputs() as i64 {
            let g = uniform_graph(&space, k);
            for mask in 0u32..1 << n {
                let y: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
                let st = components_of(&g, &y);
                subsets += 1;
                if is_maximal(&st, &g).unwrap() != maximality_by_edges(&st, &g).unwrap() {
                    disagreements += 1;
                }
            }
        }
    }
    outcome(disagreements == 0, format!("{subsets} subsets, {disagreements} disagreements"))
}

fn c5() -> Outcome {
    let caps = Caps::default();
    let mut tiny = 0;
    let mut tiny_fail = Vec::new();
    for n in 1..=3 {
        for g in all_labeled_graphs(n) {
            let r = verify_primary_decomposition(&g, 2, caps).unwrap();
            tiny += 1;
            if r.legs.intersection_equality != LegOutcome::Done(true) || !r.passed() {
                tiny_fail.push(format!("{:?}", g.edges().collect::<Vec<_>>()));
            }
        }
    }
    let mut sampled: Vec<(String, InputGraph, u32)> = vec![
        ("single edge".into(), InputGraph::from_edges(2, &[(0, 1)]).unwrap(), 2),
        ("3-vertex example".into(), InputGraph::from_edges(3, &[(0, 2), (1, 2)]).unwrap(), 2),
    ];
    for (d, k, d0) in [(vec![2, 2, 2], 2, 2), (vec![2, 2, 2], 1, 3), (vec![3, 3], 1, 2), (vec![2, 2, 3], 2, 2), (vec![2, 2, 3], 1, 3)] {
        let space = StateSpace::new(2, d.clone()).unwrap();
        sampled.push((format!("d={d:?} k={k}"), uniform_graph(&space, k), d0));
    }
    let mut counter = 0;
    let mut in_vg = 0;
    for (i, (_, g, d0)) in sampled.iter().enumerate() {
        let r = verify_union_decomposition(g, *d0, 500, 1000 + i as u64).unwrap();
        counter += r.counterexamples.len();
        in_vg += r.points_in_vg;
    }
    outcome(
        tiny_fail.is_empty() && counter == 0,
        format!(
            "intersection equality on {}/{tiny} graphs; {} graphs x 500 trials, {in_vg} points in V_G, {counter} counterexamples",
            tiny - tiny_fail.len(),
            sampled.len()
        ),
    )
}

fn c6() -> Outcome {
    // (d0, d, k) with d0 * |X| <= 64
    let settings: Vec<(u32, Vec<u32>, usize)> = vec![
        (2, vec![2, 2], 1),
        (3, vec![2, 3], 1),
        (2, vec![2, 2, 2], 1),
        (2, vec![2, 2, 2], 2),
        (3, vec![2, 2, 2], 2),
        (2, vec![2, 2, 2, 2], 2),
        (2, vec![2, 2, 2, 2], 3),
        (2, vec![2, 2, 2, 2, 2], 2),
        (2, vec![2, 2, 2, 2, 2], 3),
    ];
    let catalog: Vec<_> = settings
        .into_iter()
        .map(|(d0, d, k)| {
            let space = StateSpace::new(d0, d).unwrap();
            let spec = make_uniform_spec(k, &space).unwrap();
            let g = uniform_graph(&space, k as i64);
            let structures = search_maximal_structures(&g).unwrap();
            (space, spec, g, structures)
        })
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let (mut round_trip, mut broken, mut reported) = (0, 0, 0);
    for _ in 0..100 {
        let (space, spec, g, structures) = &catalog[rng.gen_range(0..catalog.len())];
        let st = &structures[rng.gen_range(0..structures.len())];
        let params = StructureParams::sample(st, space.d0(), &mut rng, 12);
        let dist = build_from_structure(space, st, &params).unwrap();
        if is_robust(&dist, spec) && classify_structure(&dist, g) == *st && membership_in_pb(&dist, st) {
            round_trip += 1;
        }
        let support = st.support();
        let candidates: Vec<usize> = (0..space.num_configs())
            .filter(|&v| g.neighbors(v).iter().any(|u| support.contains(u)))
            .collect();
        let v = candidates[rng.gen_range(0..candidates.len())];
        let x0 = rng.gen_range(1..=space.d0());
        let mut perturbed = dist.clone();
        let bump = ratio(1, rng.gen_range(2..=10));
        perturbed.set(x0, v, perturbed.get(x0, v) + bump);
        let perturbed = perturbed.normalized().unwrap();
        let report = robustness_report(&perturbed, spec);
        if !report.robust {
            broken += 1;
            if report.failing_statement.is_some() {
                reported += 1;
            }
        }
    }
    outcome(
        round_trip == 100 && broken >= 95 && reported == broken,
        format!("round trip {round_trip}/100, perturbations broken {broken}/100, minors reported {reported}"),
    )
}

fn random_space(rng: &mut ChaCha8Rng) -> StateSpace {
    let n = rng.gen_range(1..=4);
    let d: Vec<u32> = (0..n).map(|_| rng.gen_range(2..=3)).collect();
    StateSpace::new(rng.gen_range(2..=3), d).unwrap()
}

fn c7() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut worst: f64 = 0.0;
    let (mut pairs, mut disagreements, mut robust) = (0, 0, 0);
    for _ in 0..200 {
        let space = random_space(&mut rng);
        let mut mods = FunctionalModalities::random(&space, &mut rng);
        let n = space.num_inputs();
        for _ in 0..rng.gen_range(0..=3) {
            let x = space.config(rng.gen_range(0..space.num_configs()));
            let r = Subset::from_bits(rng.gen_range(0..1u32 << n));
            mods.plant_robustness(&x, r);
        }
        let pots = moebius_potentials(&mods).unwrap();
        worst = worst.max(mods.sup_distance(&gibbs_modalities(&pots).unwrap()));
        for x in space.configs() {
            for s in space.all_nodes().subsets() {
                let direct = check_robust_at(&mods, &x, s);
                pairs += 1;
                robust += direct as usize;
                if direct != potential_robustness_criterion(&pots, &x, s) {
                    disagreements += 1;
                }
            }
        }
    }
    outcome(
        worst <= 1e-9 && disagreements == 0,
        format!("round-trip sup error {worst:.2e}; {pairs} (x,S) pairs, {robust} robust, {disagreements} disagreements"),
    )
}

fn c8() -> Outcome {
    let mut exact = true;
    for k in 0..=8usize {
        exact &= alpha_coefficient(k, k, k).unwrap() == ratio(1, 1);
        exact &= alpha_coefficient(k + 1, k, k).unwrap() == BigRational::new((-(k as i64)).into(), (k as i64 + 1).into());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut worst: f64 = 0.0;
    let mut families = 0;
    let mut all_robust = true;
    for _ in 0..25 {
        let space = random_space(&mut rng);
        for k in 0..=space.num_inputs() {
            let mods = FunctionalModalities::random_rk_robust(&space, k, &mut rng);
            all_robust &= space.configs().all(|x| is_rk_robust_at(&mods, &x, k));
            let pots = moebius_potentials(&mods).unwrap();
            let dec = k_interaction_decompose(&mods, k).unwrap();
            families += 1;
            for a in space.all_nodes().subsets() {
                let phi = pots.potential(a);
                for x in space.configs() {
                    let want = phi.row(phi.row_of(&x));
                    for (p, q) in want.iter().zip(dec.reconstruct(a, &x)) {
                        worst = worst.max((p - q).abs());
                    }
                }
            }
        }
    }
    outcome(
        exact && all_robust && worst <= 1e-8,
        format!("alpha identities exact: {exact}; {families} R_k-robust families, reconstruction error {worst:.2e}"),
    )
}

fn c9() -> Outcome {
    let mut matrix: Vec<(Vec<u32>, usize)> = Vec::new();
    for k in 0..=2 {
        matrix.push((vec![2, 3], k));
    }
    for n in 1..=5usize {
        for k in 0..=n {
            matrix.push((vec![2; n], k));
        }
    }
    let mut bound_checked = 0;
    let mut bound_violations = Vec::new();
    let mut connectivity_checked = 0;
    let mut connectivity_violations = Vec::new();
    let mut capped_violations = 0;
    for (d, k) in &matrix {
        let space = StateSpace::new(2, d.clone()).unwrap();
        let spec = make_uniform_spec(*k, &space).unwrap();
        let g = uniform_graph(&space, *k as i64);
        let structures = if space.num_configs() <= 16 {
            enumerate_maximal_structures(&g, 20).unwrap()
        } else {
            search_maximal_structures(&g).unwrap()
        };
        if let Ok(bound) = image_bound(&spec, &space) {
            for st in &structures {
                bound_checked += 1;
                if st.num_blocks() as u64 > bound {
                    bound_violations.push(format!("d={d:?} k={k}: {} blocks > {bound}", st.num_blocks()));
                }
            }
        }
        if d.iter().all(|&di| di == 2) {
            let n = d.len() as i64;
            for s in 1..=n - 2 * *k as i64 {
                let gs = uniform_graph(&space, s);
                for st in &structures {
                    connectivity_checked += 1;
                    if !st.blocks().iter().all(|b| is_connected_in(&gs, b)) {
                        connectivity_violations.push(format!("n={n} k={k} s={s}"));
                        if s < n {
                            capped_violations += 1;
                        }
                    }
                }
            }
        }
    }
    let mut product_checked = 0;
    let mut product_disagreements = 0;
    for d in [vec![2, 2], vec![2, 3], vec![2, 2, 2]] {
        let space = StateSpace::new(2, d).unwrap();
        let g = uniform_graph(&space, 1);
        let n = space.num_configs();
        for mask in 0u32..1 << n {
            let y: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
            let st = components_of(&g, &y);
            product_checked += 1;
            if check_product_form(&st, &space) != is_maximal(&st, &g).unwrap() {
                product_disagreements += 1;
            }
        }
    }
    println!("       connectivity restricted to s <= n-1: {capped_violations} violations");
    let pass = bound_violations.is_empty() && product_disagreements == 0 && connectivity_violations.is_empty();
    outcome(
        pass,
        format!(
            "image bound {bound_checked} structures, {} violations; product form {product_checked} subsets, {product_disagreements} disagreements; connectivity {connectivity_checked} (structure, s) pairs, {} violations [{}]",
            bound_violations.len(),
            connectivity_violations.len(),
            connectivity_violations.join(", ")
        ),
    )
}

fn main() {
    let secs = Duration::from_secs;
    let results = [
        run("C1", "cube taxonomy", Some(secs(5)), c1),
        run("C2", "four-input example", Some(secs(1)), c2),
        run("C3", "Groebner basis theorem", Some(secs(600)), c3),
        run("C4", "maximality definitions agree", None, c4),
        run("C5", "primary decomposition", Some(secs(300)), c5),
        run("C6", "construction round trip", None, c6),
        run("C7", "Moebius and Gibbs", None, c7),
        run("C8", "k-interaction coefficients", None, c8),
        run("C9", "bound, product form, connectivity", None, c9),
    ];
    let passed = results.iter().filter(|&&p| p).count();
    println!("acceptance: {passed}/{} criteria passed", results.len());
    if passed != results.len() {
        std::process::exit(1);
    }
}
