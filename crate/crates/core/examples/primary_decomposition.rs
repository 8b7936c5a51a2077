//! Component ideals, their containments, and sampled checks of the union
//! decomposition of the variety.
use robustci::decomp::{admissible_sets, component_ideal, decompose, separating_point};
use robustci::graph::InputGraph;
use robustci::poly::Caps;

fn main() -> robustci::Result<()> {
    // Path 0 - 1 - 2.
    let graph = InputGraph::from_edges(3, &[(0, 1), (1, 2)])?;
    let d0 = 2;
    let sets = admissible_sets(&graph)?;
    println!("admissible sets: {sets:?}");
    for y in &sets {
        let ideal = component_ideal(&graph, y)?;
        println!(
            "  Y={y:?}: {} monomial and {} binomial generators",
            ideal.monomial_generators(&graph, d0).len(),
            ideal.binomial_generators(&graph, d0).len()
        );
    }
    for y in &sets {
        for z in &sets {
            if y != z {
                if let Some(p) = separating_point(&graph, y, z, d0) {
                    println!("  point in V(Y={y:?}) outside V(Y={z:?}): {:?}", p.to_strings());
                    break;
                }
            }
        }
    }

    let report = decompose(&graph, d0, 200, 1, Caps::default())?;
    println!("{}", report.to_json());
    println!("passed: {}", report.passed());
    Ok(())
}
