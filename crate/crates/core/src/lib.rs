//! Knockout robustness of a random output to its inputs.
//!
//! A distribution `p(x0, x1, ..., xn)` is robust for a set of pairs `(R, y)`
//! when the output is independent of the inputs outside `R` once those in `R`
//! are fixed to `y`. This crate turns such specifications into a graph on
//! input configurations, enumerates the maximal structures of that graph,
//! checks independence statements exactly over the rationals, and studies the
//! associated binomial edge ideals: path-based Groebner bases and their
//! primary decomposition.
//!
//! Modules:
//!
//! - [`model`]: state spaces, partial configurations, specs, distributions.
//! - [`graph`]: the robustness graph and maximal structures.
//! - [`ci`]: independence checks, distributions built from structures.
//! - [`gibbs`]: knockout kernels, Gibbs potentials, k-interaction models.
//! - [`poly`]: sparse polynomials over `BigRational`, Buchberger.
//! - [`ideal`]: generators and the path-based Groebner set.
//! - [`decomp`]: component ideals and decomposition checks.
//! - [`cli`]: the `robustci` command line.
//!
//! Runnable examples (`cargo run --release --example <name>`):
//! `cube_taxonomy`, `four_input_structure`, `robust_distribution`,
//! `robust_functions`, `product_form`, `gibbs_neuron`, `k_interaction`,
//! `groebner_basis`, `primary_decomposition`.

pub mod ci;
pub mod cli;
pub mod decomp;
pub mod error;
pub mod gibbs;
pub mod graph;
pub mod ideal;
pub mod model;
pub mod poly;

pub use error::{Error, Result};
