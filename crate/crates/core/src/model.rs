//! State spaces, input configurations, robustness specifications and
//! exact-rational joint distributions.
//!
//! Letters are 1-based everywhere. Input configurations are totally ordered
//! lexicographically with coordinate 1 most significant; the position of a
//! configuration in that order is its *vertex index*, which every graph and
//! ideal in this crate uses.

use std::collections::BTreeSet;
use std::fmt;
use std::path::Path;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::error::{input, Error, Result};

/// Largest number of input nodes supported; subsets are `u32` bit masks.
pub const MAX_INPUTS: usize = 32;

/// A subset of the input nodes `{1, ..., n}`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Subset(u32);

impl Subset {
    pub const EMPTY: Subset = Subset(0);

    pub fn full(n: usize) -> Subset {
        assert!(n <= MAX_INPUTS, "at most {MAX_INPUTS} inputs");
        if n == MAX_INPUTS {
            Subset(u32::MAX)
        } else {
            Subset((1u32 << n) - 1)
        }
    }

    pub fn from_bits(bits: u32) -> Subset {
        Subset(bits)
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    /// Builds a subset from 1-based node numbers.
    pub fn from_nodes<I: IntoIterator<Item = usize>>(nodes: I) -> Result<Subset> {
        let mut bits = 0u32;
        for node in nodes {
            if node == 0 || node > MAX_INPUTS {
                return input(format!("node {node} is not a valid 1-based input index"));
            }
            bits |= 1 << (node - 1);
        }
        Ok(Subset(bits))
    }

    pub fn contains(self, node: usize) -> bool {
        (1..=MAX_INPUTS).contains(&node) && self.0 & (1 << (node - 1)) != 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset_of(self, other: Subset) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn union(self, other: Subset) -> Subset {
        Subset(self.0 | other.0)
    }

    pub fn intersection(self, other: Subset) -> Subset {
        Subset(self.0 & other.0)
    }

    pub fn difference(self, other: Subset) -> Subset {
        Subset(self.0 & !other.0)
    }

    pub fn complement_in(self, n: usize) -> Subset {
        Subset::full(n).difference(self)
    }

    /// Node numbers in increasing order.
    pub fn nodes(self) -> impl Iterator<Item = usize> {
        (0..MAX_INPUTS).filter(move |i| self.0 & (1 << i) != 0).map(|i| i + 1)
    }

    /// All subsets of `self`, in increasing order of their bit masks.
    pub fn subsets(self) -> SubsetIter {
        SubsetIter {
            mask: self.0,
            next: Some(0),
        }
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, node) in self.nodes().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{node}")?;
        }
        write!(f, "}}")
    }
}

/// Iterator over the submasks of a mask.
pub struct SubsetIter {
    mask: u32,
    next: Option<u32>,
}

impl Iterator for SubsetIter {
    type Item = Subset;

    fn next(&mut self) -> Option<Subset> {
        let current = self.next?;
        self.next = if current == self.mask {
            None
        } else {
            Some((current | !self.mask).wrapping_add(1) & self.mask)
        };
        Some(Subset(current))
    }
}

/// Alphabet sizes of the output node and of the `n` input nodes.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct StateSpace {
    d0: u32,
    d: Vec<u32>,
    strides: Vec<usize>,
    size: usize,
}

impl StateSpace {
    pub fn new(d0: u32, d: Vec<u32>) -> Result<StateSpace> {
        if d0 < 2 {
            return input(format!("output alphabet size must be at least 2, got {d0}"));
        }
        if d.is_empty() {
            return input("at least one input node is required");
        }
        if d.len() > MAX_INPUTS {
            return input(format!("at most {MAX_INPUTS} input nodes are supported"));
        }
        if let Some(pos) = d.iter().position(|&di| di == 0) {
            return input(format!("input {} has an empty alphabet", pos + 1));
        }
        let mut strides = vec![1usize; d.len()];
        let mut size = 1usize;
        for i in (0..d.len()).rev() {
            strides[i] = size;
            size = size
                .checked_mul(d[i] as usize)
                .ok_or_else(|| Error::Input("configuration space too large".into()))?;
        }
        Ok(StateSpace { d0, d, strides, size })
    }

    /// `n` binary inputs and a binary output.
    pub fn binary(n: usize) -> StateSpace {
        StateSpace::new(2, vec![2; n]).expect("valid binary space")
    }

    pub fn d0(&self) -> u32 {
        self.d0
    }

    pub fn alphabet_sizes(&self) -> &[u32] {
        &self.d
    }

    /// Alphabet size of input `node` (1-based).
    pub fn alphabet(&self, node: usize) -> u32 {
        self.d[node - 1]
    }

    pub fn num_inputs(&self) -> usize {
        self.d.len()
    }

    /// `|X|`, the number of input configurations.
    pub fn num_configs(&self) -> usize {
        self.size
    }

    pub fn all_nodes(&self) -> Subset {
        Subset::full(self.d.len())
    }

    pub fn check_config(&self, coords: &[u32]) -> Result<()> {
        if coords.len() != self.d.len() {
            return input(format!(
                "configuration {coords:?} has {} coordinates, expected {}",
                coords.len(),
                self.d.len()
            ));
        }
        for (i, (&c, &di)) in coords.iter().zip(&self.d).enumerate() {
            if c == 0 || c > di {
                return input(format!(
                    "coordinate {} of {coords:?} is outside 1..={di}",
                    i + 1
                ));
            }
        }
        Ok(())
    }

    /// Validates and wraps a coordinate tuple.
    pub fn make_config(&self, coords: Vec<u32>) -> Result<InputConfig> {
        self.check_config(&coords)?;
        Ok(InputConfig(coords))
    }

    /// Vertex index of `x` in the canonical order.
    pub fn index_of(&self, x: &InputConfig) -> usize {
        x.0.iter()
            .zip(&self.strides)
            .map(|(&c, &s)| (c as usize - 1) * s)
            .sum()
    }

    pub fn config(&self, index: usize) -> InputConfig {
        assert!(index < self.size, "vertex index {index} out of range");
        let coords = self
            .d
            .iter()
            .zip(&self.strides)
            .map(|(&di, &s)| ((index / s) % di as usize) as u32 + 1)
            .collect();
        InputConfig(coords)
    }

    /// All configurations in canonical order.
    pub fn configs(&self) -> impl Iterator<Item = InputConfig> + '_ {
        (0..self.size).map(move |i| self.config(i))
    }

    /// `prod_{i in R} d_i`.
    pub fn partial_count(&self, r: Subset) -> u64 {
        r.nodes().map(|i| self.d[i - 1] as u64).product()
    }

    /// All configurations on `r`, lexicographically ordered.
    pub fn partial_configs(&self, r: Subset) -> Vec<PartialConfig> {
        let nodes: Vec<usize> = r.nodes().filter(|&i| i <= self.d.len()).collect();
        let mut out = Vec::new();
        let mut values = vec![1u32; nodes.len()];
        loop {
            out.push(PartialConfig {
                nodes: r,
                values: values.clone(),
            });
            let mut pos = nodes.len();
            loop {
                if pos == 0 {
                    return out;
                }
                pos -= 1;
                if values[pos] < self.d[nodes[pos] - 1] {
                    values[pos] += 1;
                    break;
                }
                values[pos] = 1;
            }
        }
    }
}

/// A full input configuration `(x_1, ..., x_n)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct InputConfig(Vec<u32>);

impl InputConfig {
    /// Wraps coordinates without range checks; see [`StateSpace::make_config`].
    pub fn new(coords: Vec<u32>) -> InputConfig {
        InputConfig(coords)
    }

    pub fn coords(&self) -> &[u32] {
        &self.0
    }

    /// Letter at input `node` (1-based).
    pub fn get(&self, node: usize) -> u32 {
        self.0[node - 1]
    }

    pub fn restrict(&self, r: Subset) -> PartialConfig {
        restrict(self, r)
    }

    /// `x|_R = y`.
    pub fn agrees_with(&self, y: &PartialConfig) -> bool {
        y.nodes
            .nodes()
            .zip(&y.values)
            .all(|(i, &v)| self.0.get(i - 1) == Some(&v))
    }

    /// Number of coordinates on which `self` and `other` agree.
    pub fn agreement(&self, other: &InputConfig) -> usize {
        self.0.iter().zip(&other.0).filter(|(a, b)| a == b).count()
    }
}

impl fmt::Display for InputConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, c) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// A configuration `y` on a subset `R` of the inputs; also the pair `(R, y)`
/// of a robustness specification.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PartialConfig {
    nodes: Subset,
    values: Vec<u32>,
}

impl PartialConfig {
    pub fn new(nodes: Subset, values: Vec<u32>) -> Result<PartialConfig> {
        if nodes.len() != values.len() {
            return input(format!(
                "subset {nodes} has {} nodes but {} values were given",
                nodes.len(),
                values.len()
            ));
        }
        Ok(PartialConfig { nodes, values })
    }

    pub fn empty() -> PartialConfig {
        PartialConfig {
            nodes: Subset::EMPTY,
            values: Vec::new(),
        }
    }

    pub fn nodes(&self) -> Subset {
        self.nodes
    }

    /// Values in increasing node order.
    pub fn values(&self) -> &[u32] {
        &self.values
    }

    fn check(&self, space: &StateSpace) -> Result<()> {
        if !self.nodes.is_subset_of(space.all_nodes()) {
            return input(format!("subset {} is not within 1..={}", self.nodes, space.num_inputs()));
        }
        for (i, &v) in self.nodes.nodes().zip(&self.values) {
            if v == 0 || v > space.alphabet(i) {
                return input(format!(
                    "value {v} for input {i} is outside 1..={}",
                    space.alphabet(i)
                ));
            }
        }
        Ok(())
    }
}

impl fmt::Display for PartialConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "R={} y=(", self.nodes)?;
        for (k, v) in self.values.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, ")")
    }
}

/// `x|_R`; restriction to the empty set is the empty tuple.
pub fn restrict(x: &InputConfig, r: Subset) -> PartialConfig {
    PartialConfig {
        nodes: r,
        values: r.nodes().map(|i| x.0[i - 1]).collect(),
    }
}

/// A finite set of pairs `(R, y)`; each pair demands `X0 ⊥ X_{[n]∖R} | X_R = y`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RobustnessSpec {
    pairs: BTreeSet<PartialConfig>,
}

impl RobustnessSpec {
    /// Validates every pair against `space`; duplicates are merged.
    pub fn new<I: IntoIterator<Item = PartialConfig>>(
        space: &StateSpace,
        pairs: I,
    ) -> Result<RobustnessSpec> {
        let mut set = BTreeSet::new();
        for pair in pairs {
            pair.check(space)?;
            set.insert(pair);
        }
        Ok(RobustnessSpec { pairs: set })
    }

    pub fn pairs(&self) -> impl Iterator<Item = &PartialConfig> {
        self.pairs.iter()
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn contains(&self, pair: &PartialConfig) -> bool {
        self.pairs.contains(pair)
    }

    pub fn is_subset_of(&self, other: &RobustnessSpec) -> bool {
        self.pairs.is_subset(&other.pairs)
    }

    /// The sets `R` with `(R, y)` in the spec for every `y` in `X_R`.
    pub fn covered_subsets(&self, space: &StateSpace) -> Vec<Subset> {
        let mut counts: std::collections::BTreeMap<Subset, u64> = Default::default();
        for pair in &self.pairs {
            *counts.entry(pair.nodes).or_default() += 1;
        }
        counts
            .into_iter()
            .filter(|&(r, c)| c == space.partial_count(r))
            .map(|(r, _)| r)
            .collect()
    }
}

/// The uniform specification `R_k`: every `(R, y)` with `|R| >= k`.
pub fn make_uniform_spec(k: usize, space: &StateSpace) -> Result<RobustnessSpec> {
    let n = space.num_inputs();
    if k > n {
        return input(format!("uniform k = {k} exceeds the number of inputs {n}"));
    }
    let mut pairs = BTreeSet::new();
    for r in space.all_nodes().subsets() {
        if r.len() >= k {
            pairs.extend(space.partial_configs(r));
        }
    }
    Ok(RobustnessSpec { pairs })
}

/// Exact-rational joint distribution of `(X0, X_1..X_n)`.
///
/// Cells are stored column by column: the column `p~_x` of vertex `x` is a
/// contiguous slice of length `d0`. Construction only checks the shape; use
/// [`validate_distribution`] for the probability invariants.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JointDistribution {
    space: StateSpace,
    table: Vec<BigRational>,
}

impl JointDistribution {
    pub fn new(space: &StateSpace, table: Vec<BigRational>) -> Result<JointDistribution> {
        let expected = space.num_configs() * space.d0() as usize;
        if table.len() != expected {
            return input(format!("table has {} cells, expected {expected}", table.len()));
        }
        Ok(JointDistribution {
            space: space.clone(),
            table,
        })
    }

    /// `f(x0, vertex)` with 1-based `x0`.
    pub fn from_fn<F: FnMut(u32, usize) -> BigRational>(space: &StateSpace, mut f: F) -> Self {
        let d0 = space.d0();
        let table = (0..space.num_configs())
            .flat_map(|x| (1..=d0).map(move |x0| (x0, x)))
            .map(|(x0, x)| f(x0, x))
            .collect();
        JointDistribution {
            space: space.clone(),
            table,
        }
    }

    pub fn uniform(space: &StateSpace) -> Self {
        let cells = space.num_configs() as i64 * space.d0() as i64;
        let p = BigRational::new(BigInt::one(), BigInt::from(cells));
        Self::from_fn(space, |_, _| p.clone())
    }

    pub fn space(&self) -> &StateSpace {
        &self.space
    }

    pub fn table(&self) -> &[BigRational] {
        &self.table
    }

    pub fn get(&self, x0: u32, vertex: usize) -> &BigRational {
        &self.table[vertex * self.space.d0() as usize + x0 as usize - 1]
    }

    pub fn set(&mut self, x0: u32, vertex: usize, value: BigRational) {
        let d0 = self.space.d0() as usize;
        self.table[vertex * d0 + x0 as usize - 1] = value;
    }

    /// The column `p~_x = (p(x0, x))_{x0}`.
    pub fn column(&self, vertex: usize) -> &[BigRational] {
        let d0 = self.space.d0() as usize;
        &self.table[vertex * d0..(vertex + 1) * d0]
    }

    /// `supp p~`: vertices with a non-zero column.
    pub fn support(&self) -> Vec<usize> {
        (0..self.space.num_configs())
            .filter(|&x| self.column(x).iter().any(|v| !v.is_zero()))
            .collect()
    }

    pub fn total(&self) -> BigRational {
        self.table.iter().fold(BigRational::zero(), |acc, v| acc + v)
    }

    /// Rescales so that the cells sum to one.
    pub fn normalized(&self) -> Result<JointDistribution> {
        let total = self.total();
        if total.is_zero() {
            return Err(Error::Domain("cannot normalize an all-zero table".into()));
        }
        Ok(JointDistribution {
            space: self.space.clone(),
            table: self.table.iter().map(|v| v / &total).collect(),
        })
    }

    /// Reads the distribution file format; missing cells are zero.
    pub fn from_json(space: &StateSpace, text: &str) -> Result<JointDistribution> {
        let file: DistributionFile = serde_json::from_str(text)?;
        let d0 = space.d0();
        let mut table = vec![BigRational::zero(); space.num_configs() * d0 as usize];
        let mut seen = vec![false; table.len()];
        for (k, entry) in file.entries.iter().enumerate() {
            if entry.x0 == 0 || entry.x0 > d0 {
                return Err(Error::Input(
                    DistributionViolation::OutOfRange(format!(
                        "entry {k}: x0 = {} outside 1..={d0}",
                        entry.x0
                    ))
                    .to_string(),
                ));
            }
            if let Err(err) = space.check_config(&entry.x) {
                return Err(Error::Input(
                    DistributionViolation::OutOfRange(format!("entry {k}: {err}")).to_string(),
                ));
            }
            let value = parse_rational(&entry.p)
                .map_err(|e| Error::Parse(format!("entry {k}: {e}")))?;
            let vertex = space.index_of(&InputConfig(entry.x.clone()));
            let cell = vertex * d0 as usize + entry.x0 as usize - 1;
            if seen[cell] {
                return input(format!("entry {k}: duplicate cell (x0 = {}, x = {:?})", entry.x0, entry.x));
            }
            seen[cell] = true;
            table[cell] = value;
        }
        Ok(JointDistribution {
            space: space.clone(),
            table,
        })
    }

    pub fn from_file(space: &StateSpace, path: &Path) -> Result<JointDistribution> {
        Self::from_json(space, &std::fs::read_to_string(path)?)
    }

    /// Canonical serialization: every cell, vertices in canonical order and
    /// `x0` ascending within a vertex.
    pub fn to_json(&self) -> String {
        let d0 = self.space.d0();
        let entries = (0..self.space.num_configs())
            .flat_map(|x| (1..=d0).map(move |x0| (x0, x)))
            .map(|(x0, x)| EntryRecord {
                x0,
                x: self.space.config(x).0,
                p: format_rational(self.get(x0, x)),
            })
            .collect();
        serde_json::to_string_pretty(&DistributionFile { entries }).expect("serializable")
    }
}

/// First violated invariant of a joint distribution.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum DistributionViolation {
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("negative entry {value} at x0 = {x0}, x = {x}")]
    NegativeEntry {
        x0: u32,
        x: InputConfig,
        value: String,
    },
    #[error("sum ≠ 1: entries sum to {0}")]
    SumNotOne(String),
    #[error("out-of-range index: {0}")]
    OutOfRange(String),
}

/// Checks non-negativity and exact normalization.
pub fn validate_distribution(
    dist: &JointDistribution,
    space: &StateSpace,
) -> Result<(), DistributionViolation> {
    if dist.space != *space {
        return Err(DistributionViolation::Shape(format!(
            "distribution is over d0 = {}, d = {:?}; expected d0 = {}, d = {:?}",
            dist.space.d0, dist.space.d, space.d0, space.d
        )));
    }
    let d0 = space.d0() as usize;
    for (cell, value) in dist.table.iter().enumerate() {
        if value.is_negative() {
            return Err(DistributionViolation::NegativeEntry {
                x0: (cell % d0) as u32 + 1,
                x: space.config(cell / d0),
                value: format_rational(value),
            });
        }
    }
    let total = dist.total();
    if !total.is_one() {
        return Err(DistributionViolation::SumNotOne(format_rational(&total)));
    }
    Ok(())
}

/// Formats a rational as `"num/den"` (always with a denominator).
pub fn format_rational(value: &BigRational) -> String {
    format!("{}/{}", value.numer(), value.denom())
}

/// Parses `"num/den"` or a bare integer.
pub fn parse_rational(text: &str) -> Result<BigRational> {
    let text = text.trim();
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let num: BigInt = num
        .parse()
        .map_err(|_| Error::Parse(format!("bad numerator in rational {text:?}")))?;
    let den: BigInt = den
        .parse()
        .map_err(|_| Error::Parse(format!("bad denominator in rational {text:?}")))?;
    if den.is_zero() {
        return Err(Error::Parse(format!("zero denominator in rational {text:?}")));
    }
    Ok(BigRational::new(num, den))
}

/// Shorthand for small rationals.
pub fn ratio(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DistributionFile {
    entries: Vec<EntryRecord>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct EntryRecord {
    x0: u32,
    x: Vec<u32>,
    p: String,
}

/// One `(R, y)` pair as stored in model files; `R` is 1-based.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairRecord {
    #[serde(rename = "R")]
    pub r: Vec<usize>,
    pub y: Vec<u32>,
}

impl PairRecord {
    pub fn from_pair(pair: &PartialConfig) -> PairRecord {
        PairRecord {
            r: pair.nodes.nodes().collect(),
            y: pair.values.clone(),
        }
    }

    /// Values in `y` follow the order of `R` as written; they are re-sorted
    /// by node.
    pub fn to_pair(&self) -> Result<PartialConfig> {
        if self.r.len() != self.y.len() {
            return input(format!("pair R = {:?} has {} values", self.r, self.y.len()));
        }
        let mut zipped: Vec<(usize, u32)> = self.r.iter().copied().zip(self.y.iter().copied()).collect();
        zipped.sort_unstable();
        if zipped.windows(2).any(|w| w[0].0 == w[1].0) {
            return input(format!("pair R = {:?} repeats a node", self.r));
        }
        let nodes = Subset::from_nodes(zipped.iter().map(|&(i, _)| i))?;
        PartialConfig::new(nodes, zipped.into_iter().map(|(_, v)| v).collect())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum SpecSource {
    UniformK(usize),
    Pairs(Vec<PairRecord>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelFile {
    pub d0: u32,
    pub d: Vec<u32>,
    pub spec: SpecSource,
}

/// A state space together with a robustness specification.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Model {
    pub space: StateSpace,
    pub spec: RobustnessSpec,
}

impl Model {
    pub fn uniform(space: StateSpace, k: usize) -> Result<Model> {
        let spec = make_uniform_spec(k, &space)?;
        Ok(Model { space, spec })
    }

    pub fn from_json(text: &str) -> Result<Model> {
        let file: ModelFile = serde_json::from_str(text)?;
        file.into_model()
    }

    pub fn from_file(path: &Path) -> Result<Model> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    /// Serializes with the spec expanded into explicit pairs.
    pub fn to_json(&self) -> String {
        let file = ModelFile {
            d0: self.space.d0(),
            d: self.space.alphabet_sizes().to_vec(),
            spec: SpecSource::Pairs(self.spec.pairs().map(PairRecord::from_pair).collect()),
        };
        serde_json::to_string_pretty(&file).expect("serializable")
    }
}

impl ModelFile {
    pub fn into_model(self) -> Result<Model> {
        let space = StateSpace::new(self.d0, self.d)?;
        let spec = match self.spec {
            SpecSource::UniformK(k) => make_uniform_spec(k, &space)?,
            SpecSource::Pairs(pairs) => {
                let pairs = pairs.iter().map(PairRecord::to_pair).collect::<Result<Vec<_>>>()?;
                RobustnessSpec::new(&space, pairs)?
            }
        };
        Ok(Model { space, spec })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pc(nodes: &[usize], values: &[u32]) -> PartialConfig {
        PartialConfig::new(Subset::from_nodes(nodes.iter().copied()).unwrap(), values.to_vec()).unwrap()
    }

    #[test]
    fn uniform_spec_k0_single_binary_input() {
        let space = StateSpace::binary(1);
        let spec = make_uniform_spec(0, &space).unwrap();
        let expected = RobustnessSpec::new(&space, [pc(&[], &[]), pc(&[1], &[1]), pc(&[1], &[2])]).unwrap();
        assert_eq!(spec, expected);
    }

    #[test]
    fn uniform_spec_k_equals_n_is_full_configs() {
        let space = StateSpace::new(2, vec![2, 3]).unwrap();
        let spec = make_uniform_spec(2, &space).unwrap();
        assert_eq!(spec.len(), 6);
        assert!(spec.pairs().all(|p| p.nodes() == space.all_nodes()));
    }

    #[test]
    fn uniform_spec_pair_count_matches_expansion() {
        // Brute force: every R with |R| >= 2 contributes 2^|R| pairs.
        let space = StateSpace::binary(3);
        let mut oracle = 0;
        for bits in 0u32..8 {
            let size = bits.count_ones();
            if size >= 2 {
                oracle += 1 << size;
            }
        }
        assert_eq!(oracle, 20);
        assert_eq!(make_uniform_spec(2, &space).unwrap().len(), oracle);
    }

    #[test]
    fn uniform_spec_rejects_k_above_n() {
        assert!(matches!(make_uniform_spec(3, &StateSpace::binary(2)), Err(Error::Input(_))));
    }

    #[test]
    fn uniform_specs_are_nested() {
        let space = StateSpace::new(2, vec![2, 3, 2]).unwrap();
        for k in 1..=3 {
            let finer = make_uniform_spec(k, &space).unwrap();
            let coarser = make_uniform_spec(k - 1, &space).unwrap();
            assert!(finer.is_subset_of(&coarser));
        }
    }

    #[test]
    fn restrict_examples() {
        let x = InputConfig::new(vec![1, 2, 2]);
        assert_eq!(restrict(&x, Subset::from_nodes([1, 3]).unwrap()).values(), &[1, 2]);
        assert_eq!(restrict(&x, Subset::EMPTY).values(), &[] as &[u32]);
        let x = InputConfig::new(vec![2, 1]);
        assert_eq!(restrict(&x, Subset::full(2)).values(), &[2, 1]);
    }

    #[test]
    fn canonical_index_round_trips_and_is_lexicographic() {
        let space = StateSpace::new(2, vec![2, 3, 2]).unwrap();
        let configs: Vec<InputConfig> = space.configs().collect();
        for (i, x) in configs.iter().enumerate() {
            assert_eq!(space.index_of(x), i);
        }
        let mut sorted = configs.clone();
        sorted.sort();
        assert_eq!(sorted, configs);
        assert_eq!(configs[1].coords(), &[1, 1, 2]);
    }

    #[test]
    fn subset_iteration_covers_all_submasks() {
        let s = Subset::from_nodes([1, 3, 4]).unwrap();
        let subs: Vec<u32> = s.subsets().map(|t| t.bits()).collect();
        assert_eq!(subs.len(), 8);
        assert!(subs.windows(2).all(|w| w[0] < w[1]));
        assert!(subs.iter().all(|&b| b & !s.bits() == 0));
    }

    #[test]
    fn validation_reports() {
        let space = StateSpace::binary(2);
        let uniform = JointDistribution::uniform(&space);
        assert_eq!(validate_distribution(&uniform, &space), Ok(()));

        let mut negative = uniform.clone();
        negative.set(1, 0, ratio(-1, 2));
        assert!(matches!(
            validate_distribution(&negative, &space),
            Err(DistributionViolation::NegativeEntry { x0: 1, .. })
        ));

        let mut short = uniform.clone();
        short.set(1, 0, BigRational::zero());
        short.set(2, 0, BigRational::zero());
        match validate_distribution(&short, &space) {
            Err(DistributionViolation::SumNotOne(sum)) => assert_eq!(sum, "3/4"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn out_of_range_entries_are_rejected() {
        let space = StateSpace::binary(2);
        let text = r#"{"entries":[{"x0":3,"x":[1,1],"p":"1/1"}]}"#;
        let err = JointDistribution::from_json(&space, text).unwrap_err();
        assert!(err.to_string().contains("out-of-range"), "{err}");
        let text = r#"{"entries":[{"x0":1,"x":[1,3],"p":"1/1"}]}"#;
        assert!(JointDistribution::from_json(&space, text).is_err());
    }

    #[test]
    fn rational_parsing() {
        assert_eq!(parse_rational("3/6").unwrap(), ratio(1, 2));
        assert_eq!(parse_rational("-4").unwrap(), ratio(-4, 1));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
        assert_eq!(format_rational(&ratio(2, 1)), "2/1");
    }

    #[test]
    fn model_file_dedups_pairs() {
        let text = r#"{"d0":2,"d":[2,2],"spec":{"pairs":[{"R":[2,1],"y":[2,1]},{"R":[1,2],"y":[1,2]}]}}"#;
        let model = Model::from_json(text).unwrap();
        assert_eq!(model.spec.len(), 1);
        assert!(model.spec.contains(&pc(&[1, 2], &[1, 2])));
        let reread = Model::from_json(&model.to_json()).unwrap();
        assert_eq!(reread, model);
    }

    #[test]
    fn model_file_uniform() {
        let model = Model::from_json(r#"{"d0":2,"d":[2,2,2],"spec":{"uniform_k":2}}"#).unwrap();
        assert_eq!(model.spec, make_uniform_spec(2, &StateSpace::binary(3)).unwrap());
        assert!(Model::from_json(r#"{"d0":1,"d":[2],"spec":{"uniform_k":0}}"#).is_err());
        assert!(Model::from_json(r#"{"d0":2,"d":[2],"spec":{"pairs":[{"R":[2],"y":[1]}]}}"#).is_err());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn table_strategy(cells: usize) -> impl Strategy<Value = Vec<(i64, i64)>> {
            proptest::collection::vec((-50i64..50, 1i64..40), cells)
        }

        proptest! {
            #[test]
            fn distribution_json_round_trip_is_bit_exact(cells in table_strategy(12)) {
                let space = StateSpace::new(2, vec![2, 3]).unwrap();
                let table = cells.iter().map(|&(n, d)| ratio(n, d)).collect();
                let dist = JointDistribution::new(&space, table).unwrap();
                let text = dist.to_json();
                let back = JointDistribution::from_json(&space, &text).unwrap();
                prop_assert_eq!(&back, &dist);
                prop_assert_eq!(back.to_json(), text);
            }

            #[test]
            fn restriction_composes(coords in proptest::collection::vec(1u32..4, 4), outer in 0u32..16, inner in 0u32..16) {
                let x = InputConfig::new(coords);
                let outer = Subset::from_bits(outer);
                let inner = Subset::from_bits(inner & outer.bits());
                // restricting to `outer` first and then to `inner` equals restricting to `inner`
                let y = restrict(&x, outer);
                let via: Vec<u32> = y.nodes().nodes().zip(y.values())
                    .filter(|(i, _)| inner.contains(*i)).map(|(_, &v)| v).collect();
                prop_assert_eq!(via, restrict(&x, inner).values().to_vec());
                let full = restrict(&x, Subset::full(4));
                prop_assert_eq!(full.values(), x.coords());
            }
        }
    }
}
