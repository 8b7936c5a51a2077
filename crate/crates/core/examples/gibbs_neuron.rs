//! Knockout kernels of a two-input logistic neuron, their Gibbs potentials,
//! and where the neuron is robust.
use robustci::gibbs::{
    check_robust_at, gibbs_modalities, moebius_potentials, potential_robustness_criterion, FunctionalModalities,
};
use robustci::model::Subset;

fn main() -> robustci::Result<()> {
    let mods = FunctionalModalities::neuron(&[1.5, -1.5])?;
    let pots = moebius_potentials(&mods)?;
    let back = gibbs_modalities(&pots)?;
    println!("round trip error {:.2e}", mods.sup_distance(&back));

    let space = mods.space().clone();
    for x in space.configs() {
        for s in space.all_nodes().subsets().filter(|s| !s.is_empty()) {
            let robust = check_robust_at(&mods, &x, s);
            let criterion = potential_robustness_criterion(&pots, &x, s);
            println!(
                "x={:?} S={:?}: robust={robust} potentials say {criterion}",
                x.coords(),
                s.nodes().collect::<Vec<_>>()
            );
        }
    }
    let k = mods.kernel(Subset::full(2));
    println!("full kernel rows: {:?}", k.values());
    Ok(())
}
