//! Functional modalities `(κ_A)`, their Gibbs potentials and the
//! k-interaction decomposition.
//!
//! Kernels and potentials are double precision; robustness comparisons use
//! an absolute tolerance of [`ROBUSTNESS_TOL`].

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::binomial;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{input, Error, Result};
use crate::model::{InputConfig, StateSpace, Subset};

/// Kernel rows must sum to one within this tolerance.
pub const ROW_SUM_TOL: f64 = 1e-12;
/// Absolute tolerance on kernel entries for robustness comparisons.
pub const ROBUSTNESS_TOL: f64 = 1e-9;

/// A real table on `X_A × X_0`, one row per configuration of `A`.
#[derive(Clone, Debug, PartialEq)]
pub struct SubsetTable {
    nodes: Subset,
    radices: Vec<u32>,
    d0: u32,
    values: Vec<f64>,
}

impl SubsetTable {
    pub fn filled(space: &StateSpace, nodes: Subset, value: f64) -> SubsetTable {
        let radices: Vec<u32> = nodes.nodes().map(|i| space.alphabet(i)).collect();
        let rows: usize = radices.iter().map(|&r| r as usize).product();
        SubsetTable {
            nodes,
            radices,
            d0: space.d0(),
            values: vec![value; rows * space.d0() as usize],
        }
    }

    pub fn nodes(&self) -> Subset {
        self.nodes
    }

    pub fn num_rows(&self) -> usize {
        self.values.len() / self.d0 as usize
    }

    /// Row of the configuration `x_A` given by its letters in node order.
    pub fn row_index(&self, letters: &[u32]) -> usize {
        letters
            .iter()
            .zip(&self.radices)
            .fold(0, |acc, (&l, &r)| acc * r as usize + (l as usize - 1))
    }

    /// Row of `x|_A`.
    pub fn row_of(&self, x: &InputConfig) -> usize {
        self.nodes
            .nodes()
            .zip(&self.radices)
            .fold(0, |acc, (i, &r)| acc * r as usize + (x.get(i) as usize - 1))
    }

    /// Letters of row `row`, in node order.
    pub fn row_letters(&self, mut row: usize) -> Vec<u32> {
        let mut letters = vec![0; self.radices.len()];
        for (slot, &r) in letters.iter_mut().zip(&self.radices).rev() {
            *slot = (row % r as usize) as u32 + 1;
            row /= r as usize;
        }
        letters
    }

    pub fn row(&self, row: usize) -> &[f64] {
        let d0 = self.d0 as usize;
        &self.values[row * d0..(row + 1) * d0]
    }

    pub fn row_mut(&mut self, row: usize) -> &mut [f64] {
        let d0 = self.d0 as usize;
        &mut self.values[row * d0..(row + 1) * d0]
    }

    /// Value at `(x|_A, x0)`, `x0` 1-based.
    pub fn at(&self, x: &InputConfig, x0: u32) -> f64 {
        self.row(self.row_of(x))[x0 as usize - 1]
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    fn sup_distance(&self, other: &SubsetTable) -> f64 {
        self.values
            .iter()
            .zip(&other.values)
            .fold(0.0, |m, (a, b)| m.max((a - b).abs()))
    }
}

/// The family `(κ_A)_{A ⊆ [n]}` of post-knockout kernels.
#[derive(Clone, Debug, PartialEq)]
pub struct FunctionalModalities {
    space: StateSpace,
    kernels: BTreeMap<Subset, SubsetTable>,
}

impl FunctionalModalities {
    /// Builds every `κ_A` from `row(A, x_A)`, which returns the output
    /// distribution for the letters `x_A` (node order).
    pub fn from_fn<F>(space: &StateSpace, mut row: F) -> Result<FunctionalModalities>
    where
        F: FnMut(Subset, &[u32]) -> Vec<f64>,
    {
        let mut kernels = BTreeMap::new();
        for a in space.all_nodes().subsets() {
            let mut table = SubsetTable::filled(space, a, 0.0);
            for r in 0..table.num_rows() {
                let values = row(a, &table.row_letters(r));
                if values.len() != space.d0() as usize {
                    return input(format!("kernel row for {a} has {} entries", values.len()));
                }
                table.row_mut(r).copy_from_slice(&values);
            }
            kernels.insert(a, table);
        }
        FunctionalModalities::new(space, kernels)
    }

    /// Validates presence of every subset, shapes, and row sums.
    pub fn new(
        space: &StateSpace,
        kernels: BTreeMap<Subset, SubsetTable>,
    ) -> Result<FunctionalModalities> {
        for a in space.all_nodes().subsets() {
            let table = kernels
                .get(&a)
                .ok_or_else(|| Error::Input(format!("kernel for subset {a} is missing")))?;
            let expected = SubsetTable::filled(space, a, 0.0);
            if table.values.len() != expected.values.len() || table.radices != expected.radices {
                return input(format!("kernel for subset {a} has the wrong shape"));
            }
            for r in 0..table.num_rows() {
                let row = table.row(r);
                if row.iter().any(|v| !v.is_finite() || *v < 0.0) {
                    return input(format!("kernel {a}, row {:?}: entries must be finite and non-negative", table.row_letters(r)));
                }
                let sum: f64 = row.iter().sum();
                if (sum - 1.0).abs() > ROW_SUM_TOL {
                    return input(format!("kernel {a}, row {:?} sums to {sum}", table.row_letters(r)));
                }
            }
        }
        if kernels.len() != 1 << space.num_inputs() {
            return input("kernels given for subsets outside the input set");
        }
        Ok(FunctionalModalities {
            space: space.clone(),
            kernels,
        })
    }

    /// Every kernel uniform `1/d0`.
    pub fn uniform(space: &StateSpace) -> FunctionalModalities {
        let p = 1.0 / space.d0() as f64;
        FunctionalModalities::from_fn(space, |_, _| vec![p; space.d0() as usize]).expect("uniform rows")
    }

    /// Logistic neuron: binary inputs coded letter 1 ↦ −1, letter 2 ↦ +1,
    /// output letter 2 ↦ +1, and `κ_A(x_A; +1) = σ(Σ_{i∈A} w_i x_i)`.
    pub fn neuron(weights: &[f64]) -> Result<FunctionalModalities> {
        if weights.iter().any(|w| !w.is_finite()) {
            return input("neuron weights must be finite");
        }
        let space = StateSpace::binary(weights.len());
        FunctionalModalities::from_fn(&space, |a, letters| {
            let field: f64 = a
                .nodes()
                .zip(letters)
                .map(|(i, &l)| weights[i - 1] * if l == 2 { 1.0 } else { -1.0 })
                .sum();
            let plus = 1.0 / (1.0 + (-field).exp());
            vec![1.0 - plus, plus]
        })
    }

    /// Two binary inputs, robust against every single knockout exactly on
    /// the diagonal `x_1 = x_2`.
    pub fn diagonal_example() -> FunctionalModalities {
        let space = StateSpace::binary(2);
        let single = |l: u32| if l == 1 { vec![0.7, 0.3] } else { vec![0.2, 0.8] };
        FunctionalModalities::from_fn(&space, |a, letters| match a.len() {
            0 => vec![0.5, 0.5],
            1 => single(letters[0]),
            _ if letters[0] == letters[1] => single(letters[0]),
            _ => vec![0.45, 0.55],
        })
        .expect("valid example")
    }

    /// Strictly positive random kernels, entries drawn from `[0.05, 1)` and
    /// normalized.
    pub fn random<R: Rng>(space: &StateSpace, rng: &mut R) -> FunctionalModalities {
        let d0 = space.d0() as usize;
        FunctionalModalities::from_fn(space, |_, _| random_row(rng, d0)).expect("valid rows")
    }

    /// Random kernels that are `R_k`-robust at every configuration: every
    /// `κ_A` with `|A| >= k` is one shared input-independent row (or free
    /// when `k = n`), lower-order kernels are random.
    pub fn random_rk_robust<R: Rng>(space: &StateSpace, k: usize, rng: &mut R) -> FunctionalModalities {
        let d0 = space.d0() as usize;
        let n = space.num_inputs();
        let shared = random_row(rng, d0);
        FunctionalModalities::from_fn(space, |a, _| {
            if a.len() >= k && k < n {
                shared.clone()
            } else {
                random_row(rng, d0)
            }
        })
        .expect("valid rows")
    }

    /// Overwrites `κ_R(x|_R)` with `κ_{[n]}(x)`, making the family robust in
    /// `x` against knockout of the complement of `r`.
    pub fn plant_robustness(&mut self, x: &InputConfig, r: Subset) {
        let full = self.kernel(self.space.all_nodes()).row(self.kernel(self.space.all_nodes()).row_of(x)).to_vec();
        let table = self.kernels.get_mut(&r).expect("subset present");
        let row = table.row_of(x);
        table.row_mut(row).copy_from_slice(&full);
    }

    pub fn space(&self) -> &StateSpace {
        &self.space
    }

    pub fn kernel(&self, a: Subset) -> &SubsetTable {
        &self.kernels[&a]
    }

    pub fn kernels(&self) -> &BTreeMap<Subset, SubsetTable> {
        &self.kernels
    }

    pub fn is_strictly_positive(&self) -> bool {
        self.kernels.values().all(|t| t.values.iter().all(|&v| v > 0.0))
    }

    /// Largest entrywise difference to `other` over all kernels.
    pub fn sup_distance(&self, other: &FunctionalModalities) -> f64 {
        self.kernels
            .iter()
            .map(|(a, t)| t.sup_distance(&other.kernels[a]))
            .fold(0.0, f64::max)
    }

    /// Modalities file: `{"n", "d0", "d", "kernels": {"[1,2]": {"[2,1]": [..]}}}`
    /// with probabilities as decimal strings.
    pub fn to_json(&self) -> String {
        let kernels = self
            .kernels
            .iter()
            .map(|(a, table)| {
                let rows = (0..table.num_rows())
                    .map(|r| {
                        (
                            list_key(&table.row_letters(r)),
                            table.row(r).iter().map(|v| v.to_string()).collect(),
                        )
                    })
                    .collect();
                (list_key(&a.nodes().collect::<Vec<_>>()), rows)
            })
            .collect();
        let file = ModalitiesFile {
            n: self.space.num_inputs(),
            d0: self.space.d0(),
            d: self.space.alphabet_sizes().to_vec(),
            kernels,
        };
        serde_json::to_string_pretty(&file).expect("serializable")
    }

    pub fn from_json(text: &str) -> Result<FunctionalModalities> {
        let file: ModalitiesFile = serde_json::from_str(text)?;
        if file.n != file.d.len() {
            return input(format!("n = {} but d has {} entries", file.n, file.d.len()));
        }
        let space = StateSpace::new(file.d0, file.d)?;
        let mut kernels = BTreeMap::new();
        for (key, rows) in &file.kernels {
            let nodes: Vec<usize> = parse_list_key(key)?;
            let a = Subset::from_nodes(nodes.iter().copied())?;
            if !a.is_subset_of(space.all_nodes()) {
                return input(format!("kernel subset {key} is outside 1..={}", space.num_inputs()));
            }
            let mut table = SubsetTable::filled(&space, a, f64::NAN);
            for (row_key, probs) in rows {
                let letters: Vec<u32> = parse_list_key(row_key)?;
                if letters.len() != a.len()
                    || a.nodes().zip(&letters).any(|(i, &l)| l == 0 || l > space.alphabet(i))
                {
                    return input(format!("kernel {key}: row {row_key} is not a configuration of the subset"));
                }
                if probs.len() != space.d0() as usize {
                    return input(format!("kernel {key}, row {row_key}: expected {} probabilities", space.d0()));
                }
                let parsed = probs
                    .iter()
                    .map(|p| p.trim().parse::<f64>().map_err(|_| Error::Parse(format!("bad probability {p:?}"))))
                    .collect::<Result<Vec<_>>>()?;
                let r = table.row_index(&letters);
                table.row_mut(r).copy_from_slice(&parsed);
            }
            if table.values.iter().any(|v| v.is_nan()) {
                return input(format!("kernel {key} is missing rows"));
            }
            kernels.insert(a, table);
        }
        FunctionalModalities::new(&space, kernels)
    }
}

fn random_row<R: Rng>(rng: &mut R, d0: usize) -> Vec<f64> {
    let raw: Vec<f64> = (0..d0).map(|_| rng.gen_range(0.05..1.0)).collect();
    let total: f64 = raw.iter().sum();
    raw.into_iter().map(|v| v / total).collect()
}

fn list_key<T: ToString>(items: &[T]) -> String {
    format!("[{}]", items.iter().map(T::to_string).collect::<Vec<_>>().join(","))
}

fn parse_list_key<T: std::str::FromStr>(key: &str) -> Result<Vec<T>> {
    let inner = key
        .trim()
        .strip_prefix('[')
        .and_then(|s| s.strip_suffix(']'))
        .ok_or_else(|| Error::Parse(format!("expected a bracketed list, got {key:?}")))?;
    if inner.trim().is_empty() {
        return Ok(Vec::new());
    }
    inner
        .split(',')
        .map(|s| s.trim().parse().map_err(|_| Error::Parse(format!("bad list entry in {key:?}"))))
        .collect()
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ModalitiesFile {
    n: usize,
    d0: u32,
    d: Vec<u32>,
    kernels: BTreeMap<String, BTreeMap<String, Vec<String>>>,
}

/// Potentials `(φ_A)`; kernels follow by the Gibbs formula.
#[derive(Clone, Debug, PartialEq)]
pub struct GibbsPotentials {
    space: StateSpace,
    phi: BTreeMap<Subset, SubsetTable>,
}

impl GibbsPotentials {
    /// Builds `φ_A(x_A; x0)` from a closure over letters and 1-based `x0`.
    pub fn from_fn<F>(space: &StateSpace, mut f: F) -> Result<GibbsPotentials>
    where
        F: FnMut(Subset, &[u32], u32) -> f64,
    {
        let mut phi = BTreeMap::new();
        for a in space.all_nodes().subsets() {
            let mut table = SubsetTable::filled(space, a, 0.0);
            for r in 0..table.num_rows() {
                let letters = table.row_letters(r);
                for x0 in 1..=space.d0() {
                    let v = f(a, &letters, x0);
                    if !v.is_finite() {
                        return input(format!("potential for {a} is not finite"));
                    }
                    table.row_mut(r)[x0 as usize - 1] = v;
                }
            }
            phi.insert(a, table);
        }
        Ok(GibbsPotentials { space: space.clone(), phi })
    }

    pub fn space(&self) -> &StateSpace {
        &self.space
    }

    pub fn potential(&self, a: Subset) -> &SubsetTable {
        &self.phi[&a]
    }

    pub fn potential_mut(&mut self, a: Subset) -> &mut SubsetTable {
        self.phi.get_mut(&a).expect("subset present")
    }

    /// `Σ_{B ⊆ A} φ_B(x|_B; x0)` for every `x0`, summed in subset order.
    pub fn energy(&self, a: Subset, x: &InputConfig) -> Vec<f64> {
        let d0 = self.space.d0() as usize;
        let mut out = vec![0.0; d0];
        for b in a.subsets() {
            let table = &self.phi[&b];
            for (o, v) in out.iter_mut().zip(table.row(table.row_of(x))) {
                *o += v;
            }
        }
        out
    }
}

/// `φ_A = Σ_{C⊆A} (-1)^{|A∖C|} ln κ_C`.
pub fn moebius_potentials(mods: &FunctionalModalities) -> Result<GibbsPotentials> {
    if !mods.is_strictly_positive() {
        return Err(Error::Domain("positivity required".into()));
    }
    let space = mods.space();
    let mut phi = BTreeMap::new();
    for a in space.all_nodes().subsets() {
        let mut table = SubsetTable::filled(space, a, 0.0);
        for r in 0..table.num_rows() {
            let letters = table.row_letters(r);
            // a configuration carrying these letters on A; other inputs are irrelevant
            let mut coords = vec![1u32; space.num_inputs()];
            for (i, &l) in a.nodes().zip(&letters) {
                coords[i - 1] = l;
            }
            let x = InputConfig::new(coords);
            for c in a.subsets() {
                let sign = if (a.len() - c.len()) % 2 == 0 { 1.0 } else { -1.0 };
                let kernel = mods.kernel(c);
                let row = kernel.row(kernel.row_of(&x));
                for (o, v) in table.row_mut(r).iter_mut().zip(row) {
                    *o += sign * v.ln();
                }
            }
        }
        phi.insert(a, table);
    }
    Ok(GibbsPotentials {
        space: space.clone(),
        phi,
    })
}

/// Normalized exponential of the energies, with the maximum subtracted first.
fn softmax(energy: &[f64]) -> Result<Vec<f64>> {
    if energy.iter().any(|e| e.is_nan()) {
        return Err(Error::Domain("potential evaluates to NaN".into()));
    }
    let max = energy.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let exps: Vec<f64> = energy.iter().map(|e| (e - max).exp()).collect();
    let total: f64 = exps.iter().sum();
    Ok(exps.into_iter().map(|e| e / total).collect())
}

/// The kernel `κ_A` of the Gibbs model.
pub fn gibbs_kernel(pots: &GibbsPotentials, a: Subset) -> Result<SubsetTable> {
    let space = pots.space();
    let mut table = SubsetTable::filled(space, a, 0.0);
    for r in 0..table.num_rows() {
        let mut coords = vec![1u32; space.num_inputs()];
        for (i, &l) in a.nodes().zip(&table.row_letters(r)) {
            coords[i - 1] = l;
        }
        let probs = softmax(&pots.energy(a, &InputConfig::new(coords)))?;
        table.row_mut(r).copy_from_slice(&probs);
    }
    Ok(table)
}

/// All kernels of the Gibbs model.
pub fn gibbs_modalities(pots: &GibbsPotentials) -> Result<FunctionalModalities> {
    let mut kernels = BTreeMap::new();
    for a in pots.space().all_nodes().subsets() {
        kernels.insert(a, gibbs_kernel(pots, a)?);
    }
    FunctionalModalities::new(pots.space(), kernels)
}

/// `κ_{[n]}(x; ·) = κ_R(x|_R; ·)` within [`ROBUSTNESS_TOL`], `R = [n] ∖ S`.
pub fn check_robust_at(mods: &FunctionalModalities, x: &InputConfig, s: Subset) -> bool {
    let space = mods.space();
    let r = space.all_nodes().difference(s);
    let full = mods.kernel(space.all_nodes());
    let knocked = mods.kernel(r);
    full.row(full.row_of(x))
        .iter()
        .zip(knocked.row(knocked.row_of(x)))
        .all(|(a, b)| (a - b).abs() <= ROBUSTNESS_TOL)
}

/// Robust in `x` against every knockout `S` with `|S| <= n - k`.
pub fn is_rk_robust_at(mods: &FunctionalModalities, x: &InputConfig, k: usize) -> bool {
    let n = mods.space().num_inputs();
    mods.space()
        .all_nodes()
        .subsets()
        .filter(|s| s.len() + k <= n)
        .all(|s| check_robust_at(mods, x, s))
}

/// `Σ_{B ⊄ R} φ_B(x|_B; x0)` is constant in `x0` (within tolerance of its
/// mean), `R = [n] ∖ S`.
pub fn potential_robustness_criterion(pots: &GibbsPotentials, x: &InputConfig, s: Subset) -> bool {
    let space = pots.space();
    let r = space.all_nodes().difference(s);
    let mut sums = vec![0.0; space.d0() as usize];
    for b in space.all_nodes().subsets() {
        if b.is_subset_of(r) {
            continue;
        }
        let table = pots.potential(b);
        for (o, v) in sums.iter_mut().zip(table.row(table.row_of(x))) {
            *o += v;
        }
    }
    let mean = sums.iter().sum::<f64>() / sums.len() as f64;
    sums.iter().all(|v| (v - mean).abs() <= ROBUSTNESS_TOL)
}

/// The coefficient `α_{A,C}` as a function of `a = |A|`, `c = |C|`.
pub fn alpha_coefficient(a: usize, c: usize, k: usize) -> Result<BigRational> {
    if c > k {
        return input(format!("alpha requires |C| <= k, got |C| = {c}, k = {k}"));
    }
    if c > a {
        return input(format!("alpha requires |C| <= |A|, got |C| = {c}, |A| = {a}"));
    }
    let sign = |e: usize| -> BigRational {
        if e.is_multiple_of(2) {
            BigRational::one()
        } else {
            -BigRational::one()
        }
    };
    if c < k {
        return Ok(sign(a - c));
    }
    let mut total = BigRational::zero();
    for r in 0..=a - k {
        let choose = binomial(BigInt::from(a - k), BigInt::from(r));
        let denom = binomial(BigInt::from(r + k), BigInt::from(k));
        total += sign(a - r - k) * BigRational::new(choose, denom);
    }
    Ok(total)
}

/// `Ψ_{C,A}` for all `C ⊆ A`, `|C| <= k`.
#[derive(Clone, Debug, PartialEq)]
pub struct KInteractionDecomposition {
    k: usize,
    space: StateSpace,
    psi: BTreeMap<(Subset, Subset), SubsetTable>,
}

impl KInteractionDecomposition {
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn space(&self) -> &StateSpace {
        &self.space
    }

    /// `Ψ_{C,A}`, keyed by `(C, A)`.
    pub fn psi(&self, c: Subset, a: Subset) -> Option<&SubsetTable> {
        self.psi.get(&(c, a))
    }

    pub fn psi_mut(&mut self, c: Subset, a: Subset) -> Option<&mut SubsetTable> {
        self.psi.get_mut(&(c, a))
    }

    pub fn pairs(&self) -> impl Iterator<Item = (Subset, Subset)> + '_ {
        self.psi.keys().copied()
    }

    /// `Σ_{C⊆A, |C|<=k} Ψ_{C,A}(x|_C; x0)` for every `x0`.
    pub fn reconstruct(&self, a: Subset, x: &InputConfig) -> Vec<f64> {
        let mut out = vec![0.0; self.space.d0() as usize];
        for c in a.subsets().filter(|c| c.len() <= self.k) {
            let table = &self.psi[&(c, a)];
            for (o, v) in out.iter_mut().zip(table.row(table.row_of(x))) {
                *o += v;
            }
        }
        out
    }
}

/// `Ψ_{C,A} = α(|A|, |C|, k) ln κ_C`.
pub fn k_interaction_decompose(
    mods: &FunctionalModalities,
    k: usize,
) -> Result<KInteractionDecomposition> {
    if !mods.is_strictly_positive() {
        return Err(Error::Domain("positivity required".into()));
    }
    let space = mods.space();
    let mut psi = BTreeMap::new();
    for a in space.all_nodes().subsets() {
        for c in a.subsets().filter(|c| c.len() <= k) {
            let alpha = alpha_coefficient(a.len(), c.len(), k)?
                .to_f64()
                .expect("finite coefficient");
            let kernel = mods.kernel(c);
            let mut table = kernel.clone();
            for v in &mut table.values {
                *v = alpha * v.ln();
            }
            psi.insert((c, a), table);
        }
    }
    Ok(KInteractionDecomposition {
        k,
        space: space.clone(),
        psi,
    })
}

/// `κ^ε_A = (1 - ε) κ_A + ε / d0`.
pub fn positive_mixture(mods: &FunctionalModalities, eps: f64) -> Result<FunctionalModalities> {
    if !(eps > 0.0 && eps <= 1.0) {
        return input(format!("mixture weight must lie in (0, 1], got {eps}"));
    }
    let uniform = 1.0 / mods.space().d0() as f64;
    let kernels = mods
        .kernels
        .iter()
        .map(|(&a, t)| {
            let mut t = t.clone();
            for v in &mut t.values {
                *v = (1.0 - eps) * *v + eps * uniform;
            }
            (a, t)
        })
        .collect();
    Ok(FunctionalModalities {
        space: mods.space.clone(),
        kernels,
    })
}

/// Outcome of the two constraint families defining `K~_k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct TildeReport {
    /// `(-1)^{|A|} Ψ_{B,A} = (-1)^{|A'|} Ψ_{B,A'}` for `|B| < k`.
    pub lower_order: bool,
    /// The `|B| = k` identity with the weights exactly as displayed.
    pub top_order_literal: bool,
    /// The `|B| = k` identity with `α` as weights:
    /// `α(|A'|) Ψ_{B,A} = α(|A|) Ψ_{B,A'}`.
    pub top_order_alpha_weighted: bool,
}

/// `Σ_{l=0}^{a-k} (-1)^{a-l} / C(l+k, k)`.
fn literal_weight(a: usize, k: usize) -> f64 {
    (0..=a - k)
        .map(|l| {
            let sign = if (a - l).is_multiple_of(2) { 1.0 } else { -1.0 };
            let denom = binomial(BigInt::from(l + k), BigInt::from(k))
                .to_f64()
                .expect("finite");
            sign / denom
        })
        .sum()
}

fn tables_match<F: Fn(f64, f64) -> bool>(a: &SubsetTable, b: &SubsetTable, pred: F) -> bool {
    a.values.iter().zip(&b.values).all(|(&x, &y)| pred(x, y))
}

/// Evaluates both constraint families over all pairs `A, A' ⊇ B`.
pub fn tilde_report(dec: &KInteractionDecomposition) -> TildeReport {
    let k = dec.k;
    let close = |x: f64, y: f64| (x - y).abs() <= ROBUSTNESS_TOL;
    let mut report = TildeReport {
        lower_order: true,
        top_order_literal: true,
        top_order_alpha_weighted: true,
    };
    let keys: Vec<(Subset, Subset)> = dec.psi.keys().copied().collect();
    for &(b, a) in &keys {
        for &(b2, a2) in &keys {
            if b2 != b || a2 <= a {
                continue;
            }
            let (pa, pa2) = (&dec.psi[&(b, a)], &dec.psi[&(b, a2)]);
            if b.len() < k {
                let sa = if a.len() % 2 == 0 { 1.0 } else { -1.0 };
                let sa2 = if a2.len() % 2 == 0 { 1.0 } else { -1.0 };
                if !tables_match(pa, pa2, |x, y| close(sa * x, sa2 * y)) {
                    report.lower_order = false;
                }
            } else {
                let (wa, wa2) = (literal_weight(a.len(), k), literal_weight(a2.len(), k));
                if !tables_match(pa, pa2, |x, y| close(wa2 * x, wa * y)) {
                    report.top_order_literal = false;
                }
                let alpha = |s: usize| alpha_coefficient(s, k, k).unwrap().to_f64().unwrap();
                let (aa, aa2) = (alpha(a.len()), alpha(a2.len()));
                if !tables_match(pa, pa2, |x, y| close(aa2 * x, aa * y)) {
                    report.top_order_alpha_weighted = false;
                }
            }
        }
    }
    report
}

/// Both families hold, the `|B| = k` family read literally.
pub fn check_tilde_constraints(dec: &KInteractionDecomposition) -> bool {
    let report = tilde_report(dec);
    report.lower_order && report.top_order_literal
}
