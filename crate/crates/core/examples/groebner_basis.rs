//! Path-based Groebner basis of the binomial edge ideal of a small graph,
//! verified against Buchberger's algorithm.
use robustci::graph::InputGraph;
use robustci::ideal::{groebner_set, layout, variable_name, verify_groebner_set, AntitoneRange, DEFAULT_VERTEX_CAP};
use robustci::poly::Caps;

fn main() -> robustci::Result<()> {
    // A 4-cycle with one pendant vertex.
    let graph = InputGraph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 0), (3, 4)])?;
    let d0 = 2;
    let lay = layout(&graph, d0);
    let set = groebner_set(&graph, d0, AntitoneRange::default(), DEFAULT_VERTEX_CAP)?;
    println!("{} elements", set.len());
    for e in &set {
        println!(
            "  path {:?} labels {:?}: {}",
            e.path,
            e.kappa,
            e.polynomial.render(|v| variable_name(graph.space(), &lay, v))
        );
    }
    let check = verify_groebner_set(&graph, d0, AntitoneRange::default(), Caps::default())?;
    println!("{check:#?}");
    println!("all checks pass: {}", check.all_pass());
    Ok(())
}
