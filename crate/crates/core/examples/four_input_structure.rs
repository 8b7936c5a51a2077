//! Backtracking search for maximal structures where exhaustive subset
//! enumeration is out of reach, cross-checked where both are feasible.
use robustci::graph::{enumerate_maximal_structures, is_maximal, search_maximal_structures, uniform_graph};
use robustci::model::StateSpace;

fn main() -> robustci::Result<()> {
    let small = StateSpace::new(2, vec![2, 2, 2, 2])?;
    for k in 1..=3 {
        let graph = uniform_graph(&small, k);
        let searched = search_maximal_structures(&graph)?;
        let enumerated = enumerate_maximal_structures(&graph, 16)?;
        println!(
            "d=(2,2,2,2) k={k}: {} edges, {} maximal structures (enumeration agrees: {})",
            graph.num_edges(),
            searched.len(),
            searched == enumerated
        );
    }

    // 27 vertices: too many for subset enumeration, fine for the search.
    let big = StateSpace::new(2, vec![3, 3, 3])?;
    let graph = uniform_graph(&big, 2);
    let found = search_maximal_structures(&graph)?;
    let all_maximal = found.iter().all(|s| is_maximal(s, &graph).unwrap_or(false));
    println!("d=(3,3,3) k=2: {} maximal structures, all verified: {all_maximal}", found.len());
    if let Some(s) = found.iter().max_by_key(|s| s.num_blocks()) {
        println!("one with the most blocks: {}", s.describe(&big));
    }
    Ok(())
}
