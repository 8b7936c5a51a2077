//! Order-k interaction decomposition of randomly drawn k-robust kernels.
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use robustci::gibbs::{
    alpha_coefficient, is_rk_robust_at, k_interaction_decompose, moebius_potentials, tilde_report, FunctionalModalities,
};
use robustci::model::{format_rational, StateSpace};

fn main() -> robustci::Result<()> {
    println!("alpha(a, c, k) for k = 1:");
    for a in 1..=4 {
        let row: Vec<String> = (0..=1.min(a))
            .map(|c| alpha_coefficient(a, c, 1).map(|v| format_rational(&v)))
            .collect::<robustci::Result<_>>()?;
        println!("  a={a}: {}", row.join("  "));
    }

    let space = StateSpace::new(2, vec![2, 3, 2])?;
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for k in 1..=2 {
        let mods = FunctionalModalities::random_rk_robust(&space, k, &mut rng);
        let everywhere = space.configs().all(|x| is_rk_robust_at(&mods, &x, k));
        let dec = k_interaction_decompose(&mods, k)?;
        let pots = moebius_potentials(&mods)?;
        let mut err: f64 = 0.0;
        for a in space.all_nodes().subsets() {
            let phi = pots.potential(a);
            for x in space.configs() {
                let got = dec.reconstruct(a, &x);
                for (p, q) in phi.row(phi.row_of(&x)).iter().zip(&got) {
                    err = err.max((p - q).abs());
                }
            }
        }
        println!("k={k}: robust everywhere {everywhere}, potential reconstruction error {err:.2e}");
        println!("  constraints: {:?}", tilde_report(&dec));
    }
    Ok(())
}
