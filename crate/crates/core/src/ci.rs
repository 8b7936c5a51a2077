//! Conditional-independence checks on exact tables, the robustness structure
//! of a distribution, the product construction of robust distributions and
//! robust functions.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{input, Result};
use crate::graph::{components_of, InputGraph, RobustnessStructure};
use crate::model::{
    format_rational, InputConfig, JointDistribution, PairRecord, PartialConfig, RobustnessSpec,
    StateSpace,
};

/// Denominator used when sampling structure parameters.
pub const DEFAULT_SAMPLE_DENOMINATOR: u32 = 97;

/// A non-vanishing 2×2 minor `p(x0,x)p(x0',x') - p(x0,x')p(x0',x)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinorWitness {
    pub x0: u32,
    pub x0_prime: u32,
    pub x: InputConfig,
    pub x_prime: InputConfig,
    pub value: BigRational,
}

impl MinorWitness {
    pub fn to_record(&self) -> MinorRecord {
        MinorRecord {
            x0: self.x0,
            x0_prime: self.x0_prime,
            x: self.x.coords().to_vec(),
            x_prime: self.x_prime.coords().to_vec(),
            value: format_rational(&self.value),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MinorRecord {
    pub x0: u32,
    pub x0_prime: u32,
    pub x: Vec<u32>,
    pub x_prime: Vec<u32>,
    pub value: String,
}

/// First `(x0, x0')` with `a[x0] b[x0'] != a[x0'] b[x0]`, as 1-based letters.
pub fn first_nonproportional(a: &[BigRational], b: &[BigRational]) -> Option<(u32, u32)> {
    for i in 0..a.len() {
        for j in i + 1..a.len() {
            if &a[i] * &b[j] != &a[j] * &b[i] {
                return Some((i as u32 + 1, j as u32 + 1));
            }
        }
    }
    None
}

/// `v = λw` or `w = λv`; zero vectors are proportional to everything.
pub fn proportional(a: &[BigRational], b: &[BigRational]) -> bool {
    first_nonproportional(a, b).is_none()
}

fn minor(dist: &JointDistribution, x0: u32, x0p: u32, u: usize, v: usize) -> BigRational {
    dist.get(x0, u) * dist.get(x0p, v) - dist.get(x0, v) * dist.get(x0p, u)
}

/// A vanishing-minor violation of `X0 ⊥ X_S | X_R = y`, if any.
pub fn ci_statement_witness(dist: &JointDistribution, pair: &PartialConfig) -> Option<MinorWitness> {
    let space = dist.space();
    let matching: Vec<usize> = (0..space.num_configs())
        .filter(|&v| space.config(v).agrees_with(pair))
        .collect();
    for (a, &u) in matching.iter().enumerate() {
        for &v in &matching[a + 1..] {
            if let Some((x0, x0p)) = first_nonproportional(dist.column(u), dist.column(v)) {
                return Some(MinorWitness {
                    x0,
                    x0_prime: x0p,
                    x: space.config(u),
                    x_prime: space.config(v),
                    value: minor(dist, x0, x0p, u, v),
                });
            }
        }
    }
    None
}

/// All 2×2 minors of the statement `(R, y)` vanish.
pub fn check_ci_statement(dist: &JointDistribution, pair: &PartialConfig) -> bool {
    ci_statement_witness(dist, pair).is_none()
}

/// The first spec pair (in canonical order) whose statement fails.
pub fn first_failing_statement(
    dist: &JointDistribution,
    spec: &RobustnessSpec,
) -> Option<(PartialConfig, MinorWitness)> {
    let pairs: Vec<&PartialConfig> = spec.pairs().collect();
    pairs
        .par_iter()
        .find_map_first(|pair| ci_statement_witness(dist, pair).map(|w| ((*pair).clone(), w)))
}

/// Every statement of the spec holds.
pub fn is_robust(dist: &JointDistribution, spec: &RobustnessSpec) -> bool {
    first_failing_statement(dist, spec).is_none()
}

/// Columns are proportional across every edge of `graph`.
pub fn is_robust_by_edges(dist: &JointDistribution, graph: &InputGraph) -> bool {
    graph
        .edges()
        .all(|(u, v)| proportional(dist.column(u), dist.column(v)))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FailingStatement {
    #[serde(rename = "R")]
    pub r: Vec<usize>,
    pub y: Vec<u32>,
    pub witness_minor: MinorRecord,
}

/// Robustness verdict with the first failing statement.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RobustnessReport {
    pub robust: bool,
    pub failing_statement: Option<FailingStatement>,
}

pub fn robustness_report(dist: &JointDistribution, spec: &RobustnessSpec) -> RobustnessReport {
    match first_failing_statement(dist, spec) {
        None => RobustnessReport {
            robust: true,
            failing_statement: None,
        },
        Some((pair, witness)) => {
            let record = PairRecord::from_pair(&pair);
            RobustnessReport {
                robust: false,
                failing_statement: Some(FailingStatement {
                    r: record.r,
                    y: record.y,
                    witness_minor: witness.to_record(),
                }),
            }
        }
    }
}

/// Components of the graph restricted to `supp p~`.
pub fn classify_structure(dist: &JointDistribution, graph: &InputGraph) -> RobustnessStructure {
    components_of(graph, &dist.support())
}

/// Columns are pairwise proportional inside every block.
pub fn proportional_within_blocks(dist: &JointDistribution, structure: &RobustnessStructure) -> bool {
    structure.blocks().iter().all(|block| {
        block.iter().enumerate().all(|(a, &u)| {
            block[a + 1..]
                .iter()
                .all(|&v| proportional(dist.column(u), dist.column(v)))
        })
    })
}

/// `p ∈ P_B`: support exactly `∪B` and proportional columns inside blocks.
pub fn membership_in_pb(dist: &JointDistribution, structure: &RobustnessStructure) -> bool {
    dist.support() == structure.support() && proportional_within_blocks(dist, structure)
}

/// Parameters `μ`, `λ_Z`, `p_Z` of the product construction, block by block.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureParams {
    pub mu: Vec<BigRational>,
    pub lambda: Vec<Vec<BigRational>>,
    pub p_z: Vec<Vec<BigRational>>,
}

fn normalize(values: Vec<BigRational>) -> Vec<BigRational> {
    let total = values.iter().fold(BigRational::zero(), |a, v| a + v);
    values.into_iter().map(|v| v / &total).collect()
}

fn sample_simplex<R: Rng>(rng: &mut R, len: usize, m: u32) -> Vec<BigRational> {
    normalize(
        (0..len)
            .map(|_| BigRational::new(BigInt::from(rng.gen_range(1..=m)), BigInt::from(m)))
            .collect(),
    )
}

impl StructureParams {
    /// Uniform `μ`, uniform `λ_Z`, uniform `p_Z`.
    pub fn uniform(structure: &RobustnessStructure, d0: u32) -> StructureParams {
        let ones = |len: usize| normalize(vec![BigRational::from_integer(1.into()); len]);
        StructureParams {
            mu: ones(structure.num_blocks()),
            lambda: structure.blocks().iter().map(|b| ones(b.len())).collect(),
            p_z: structure.blocks().iter().map(|_| ones(d0 as usize)).collect(),
        }
    }

    /// Entries `k/m` with `k` uniform in `1..=m`, each vector normalized.
    pub fn sample<R: Rng>(
        structure: &RobustnessStructure,
        d0: u32,
        rng: &mut R,
        m: u32,
    ) -> StructureParams {
        let mu = sample_simplex(rng, structure.num_blocks(), m);
        let lambda = structure.blocks().iter().map(|b| sample_simplex(rng, b.len(), m)).collect();
        let p_z = structure.blocks().iter().map(|_| sample_simplex(rng, d0 as usize, m)).collect();
        StructureParams { mu, lambda, p_z }
    }
}

fn check_simplex(name: &str, values: &[BigRational], strict: bool) -> Result<()> {
    let bad = values
        .iter()
        .position(|v| if strict { !v.is_positive() } else { v.is_negative() });
    if let Some(i) = bad {
        let need = if strict { "positive" } else { "non-negative" };
        return input(format!("{name}[{i}] = {} must be {need}", format_rational(&values[i])));
    }
    let total = values.iter().fold(BigRational::zero(), |a, v| a + v);
    if total != BigRational::from_integer(1.into()) {
        return input(format!("{name} sums to {}, not 1", format_rational(&total)));
    }
    Ok(())
}

/// `p(x0, x) = μ(Z) λ_Z(x) p_Z(x0)` for `x ∈ Z`, zero off `∪B`.
pub fn build_from_structure(
    space: &StateSpace,
    structure: &RobustnessStructure,
    params: &StructureParams,
) -> Result<JointDistribution> {
    let blocks = structure.blocks();
    if params.mu.len() != blocks.len()
        || params.lambda.len() != blocks.len()
        || params.p_z.len() != blocks.len()
    {
        return input("parameters do not match the number of blocks");
    }
    if structure.support().last().is_some_and(|&v| v >= space.num_configs()) {
        return input("structure references a vertex outside the space");
    }
    check_simplex("mu", &params.mu, true)?;
    for (z, block) in blocks.iter().enumerate() {
        if params.lambda[z].len() != block.len() {
            return input(format!("lambda[{z}] has the wrong length"));
        }
        if params.p_z[z].len() != space.d0() as usize {
            return input(format!("p_z[{z}] has the wrong length"));
        }
        check_simplex(&format!("lambda[{z}]"), &params.lambda[z], true)?;
        check_simplex(&format!("p_z[{z}]"), &params.p_z[z], false)?;
    }
    let mut weight: BTreeMap<usize, (usize, BigRational)> = BTreeMap::new();
    for (z, block) in blocks.iter().enumerate() {
        for (pos, &v) in block.iter().enumerate() {
            weight.insert(v, (z, &params.mu[z] * &params.lambda[z][pos]));
        }
    }
    Ok(JointDistribution::from_fn(space, |x0, v| match weight.get(&v) {
        Some((z, w)) => w * &params.p_z[*z][x0 as usize - 1],
        None => BigRational::zero(),
    }))
}

/// A labeled function on a set of configurations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RobustFunction {
    values: BTreeMap<usize, String>,
}

impl RobustFunction {
    pub fn new<I: IntoIterator<Item = (usize, String)>>(values: I) -> RobustFunction {
        RobustFunction {
            values: values.into_iter().collect(),
        }
    }

    pub fn domain(&self) -> Vec<usize> {
        self.values.keys().copied().collect()
    }

    pub fn value(&self, v: usize) -> Option<&str> {
        self.values.get(&v).map(String::as_str)
    }

    /// Number of distinct labels.
    pub fn image_size(&self) -> usize {
        self.values.values().collect::<std::collections::BTreeSet<_>>().len()
    }
}

/// `f` is constant on each component of the graph restricted to its domain.
pub fn is_robust_function(f: &RobustFunction, graph: &InputGraph) -> bool {
    if f.values.keys().any(|&v| v >= graph.num_vertices()) {
        return false;
    }
    let structure = components_of(graph, &f.domain());
    structure
        .blocks()
        .iter()
        .all(|block| block.iter().all(|&v| f.value(v) == f.value(block[0])))
}

/// `min ∏_{i∈R} d_i` over sets `R` covered by the spec for every `y`.
pub fn image_bound(spec: &RobustnessSpec, space: &StateSpace) -> Result<u64> {
    spec.covered_subsets(space)
        .into_iter()
        .map(|r| space.partial_count(r))
        .min()
        .ok_or_else(|| crate::Error::Domain("bound undefined for this spec".into()))
}
