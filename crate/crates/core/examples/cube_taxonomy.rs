//! Maximal 2-robustness structures of three binary inputs, grouped by the
//! shape of what they leave out.
use std::collections::BTreeMap;

use robustci::graph::{classify_cube_complement, enumerate_maximal_structures, uniform_graph};
use robustci::model::StateSpace;

fn main() -> robustci::Result<()> {
    let space = StateSpace::binary(3);
    let graph = uniform_graph(&space, 2);
    let structures = enumerate_maximal_structures(&graph, 16)?;
    println!("{} maximal structures on the cube", structures.len());

    let mut groups: BTreeMap<_, Vec<String>> = BTreeMap::new();
    for s in &structures {
        groups
            .entry(classify_cube_complement(s, &graph))
            .or_default()
            .push(s.describe(&space));
    }
    for (class, members) in groups {
        println!("\n{} ({}):", class.label(), members.len());
        for m in members {
            println!("  {m}");
        }
    }
    Ok(())
}
