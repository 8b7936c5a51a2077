//! Robust functions are constant on connected pieces of their domain, and
//! their number of distinct values is bounded by the spec.
use robustci::ci::{image_bound, is_robust_function, RobustFunction};
use robustci::graph::build_graph;
use robustci::model::{make_uniform_spec, StateSpace};

fn main() -> robustci::Result<()> {
    let space = StateSpace::new(2, vec![3, 3])?;
    for k in 0..=2 {
        let spec = make_uniform_spec(k, &space)?;
        let graph = build_graph(&spec, &space);
        println!("k={k}: image bound {}", image_bound(&spec, &space)?);

        // Label each configuration by its first coordinate.
        let first = RobustFunction::new(
            space.configs().enumerate().map(|(v, x)| (v, x.get(1).to_string())),
        );
        println!(
            "  first coordinate: robust={} image size {}",
            is_robust_function(&first, &graph),
            first.image_size()
        );

        // Diagonal-only domain.
        let diag = RobustFunction::new(
            space.configs().enumerate().filter(|(_, x)| x.get(1) == x.get(2)).map(|(v, x)| (v, x.get(1).to_string())),
        );
        println!(
            "  diagonal labels: robust={} image size {}",
            is_robust_function(&diag, &graph),
            diag.image_size()
        );
    }
    Ok(())
}
