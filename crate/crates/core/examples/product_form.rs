//! Product form of maximal 1-robustness structures on small grids.
use robustci::graph::{check_product_form, completion_cover, enumerate_maximal_structures, uniform_graph};
use robustci::model::StateSpace;

fn main() -> robustci::Result<()> {
    for d in [vec![2, 2], vec![2, 3], vec![3, 3], vec![2, 2, 2]] {
        let space = StateSpace::new(2, d.clone())?;
        let graph = uniform_graph(&space, 1);
        let structures = enumerate_maximal_structures(&graph, 16)?;
        let product = structures.iter().filter(|s| check_product_form(s, &space)).count();
        let cover = structures.iter().filter(|s| completion_cover(s, &space)).count();
        println!(
            "d={d:?}: {} maximal, {product} in product form, {cover} satisfy the completion cover",
            structures.len()
        );
    }
    Ok(())
}
