//! Builds a distribution from a maximal structure, checks that it is robust,
//! then breaks it with a single-cell perturbation.
use num_rational::BigRational;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use robustci::ci::{build_from_structure, classify_structure, membership_in_pb, robustness_report, StructureParams};
use robustci::graph::{build_graph, enumerate_maximal_structures};
use robustci::model::{format_rational, make_uniform_spec, StateSpace};

fn main() -> robustci::Result<()> {
    let space = StateSpace::new(3, vec![2, 3])?;
    let spec = make_uniform_spec(1, &space)?;
    let graph = build_graph(&spec, &space);
    let structures = enumerate_maximal_structures(&graph, 16)?;
    let structure = &structures[structures.len() / 2];
    println!("structure: {}", structure.describe(&space));

    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let params = StructureParams::sample(structure, space.d0(), &mut rng, 5);
    let dist = build_from_structure(&space, structure, &params)?;
    println!("total mass {}", format_rational(&dist.total()));
    println!("in P_B: {}", membership_in_pb(&dist, structure));
    println!("recovered structure: {}", classify_structure(&dist, &graph).describe(&space));
    let report = robustness_report(&dist, &spec);
    println!("robust: {}", report.robust);

    // Shift mass at one supported vertex so its column is no longer
    // proportional to its neighbours.
    let v = structure.blocks().iter().find(|b| b.len() > 1).map(|b| b[0]).unwrap();
    let mut bumped = dist.clone();
    let cell = bumped.get(1, v) + BigRational::new(1.into(), 10.into());
    bumped.set(1, v, cell);
    let bumped = bumped.normalized()?;
    let report = robustness_report(&bumped, &spec);
    println!("after perturbing vertex {v}: robust = {}", report.robust);
    if let Some(f) = report.failing_statement {
        println!("  first failing statement: R={:?} y={:?}", f.r, f.y);
        println!("  witness minor: {}", serde_json::to_string(&f.witness_minor).unwrap());
    }
    Ok(())
}
