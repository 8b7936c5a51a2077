//! Component ideals `I_{G,Y}`, admissible index sets and checks of the
//! decomposition of the binomial edge variety `V_G`.

use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::ci::proportional;
use crate::error::{Error, Result};
use crate::graph::{components_of, InputGraph};
use crate::ideal::{edge_generator_polynomials, layout, EdgeBinomial};
use crate::model::{format_rational, JointDistribution};
use crate::poly::{buchberger, intersect_ideals, reduce, Caps, Monomial, Polynomial};

/// Vertex cap for the combinatorial checks.
pub const MAX_DECOMP_VERTICES: usize = 12;
/// Vertex cap for the ideal intersection leg (which also needs `d0 = 2`).
pub const MAX_INTERSECTION_VERTICES: usize = 3;

/// `I_{G,Y}`: the columns off `Y` vanish and the columns inside each
/// component of `G_Y` are proportional.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentIdeal {
    pub y: Vec<usize>,
    /// Vertices whose unknowns are generators.
    pub vanishing: Vec<usize>,
    /// Components of the induced subgraph on `Y`.
    pub components: Vec<Vec<usize>>,
}

impl ComponentIdeal {
    pub fn monomial_generators(&self, graph: &InputGraph, d0: u32) -> Vec<Polynomial> {
        let l = layout(graph, d0);
        self.vanishing
            .iter()
            .flat_map(|&x| (1..=d0).map(move |i| Polynomial::term(Monomial::var(l.var(i, x)), BigRational::one())))
            .collect()
    }

    pub fn binomial_generators(&self, graph: &InputGraph, d0: u32) -> Vec<Polynomial> {
        let l = layout(graph, d0);
        let mut out = Vec::new();
        for comp in &self.components {
            for (a, &x) in comp.iter().enumerate() {
                for &y in &comp[a + 1..] {
                    for i in 1..=d0 {
                        for j in i + 1..=d0 {
                            out.push(EdgeBinomial { i, j, x, y }.polynomial(&l));
                        }
                    }
                }
            }
        }
        out
    }

    pub fn generators(&self, graph: &InputGraph, d0: u32) -> Vec<Polynomial> {
        let mut gens = self.monomial_generators(graph, d0);
        gens.extend(self.binomial_generators(graph, d0));
        gens
    }
}

fn normalize_set(n: usize, y: &[usize]) -> Result<Vec<usize>> {
    let mut y = y.to_vec();
    y.sort_unstable();
    y.dedup();
    if y.last().is_some_and(|&v| v >= n) {
        return Err(Error::Input(format!("vertex index out of range for {n} vertices")));
    }
    Ok(y)
}

pub fn component_ideal(graph: &InputGraph, y: &[usize]) -> Result<ComponentIdeal> {
    let n = graph.num_vertices();
    let y = normalize_set(n, y)?;
    let vanishing = (0..n).filter(|v| y.binary_search(v).is_err()).collect();
    let components = components_of(graph, &y).blocks().to_vec();
    Ok(ComponentIdeal { y, vanishing, components })
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> UnionFind {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, v: usize) -> usize {
        let mut root = v;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut cur = v;
        while self.parent[cur] != root {
            let next = self.parent[cur];
            self.parent[cur] = root;
            cur = next;
        }
        root
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        self.parent[ra] = rb;
        ra != rb
    }
}

fn count_components_uf(graph: &InputGraph, members: &[bool]) -> usize {
    let mut uf = UnionFind::new(graph.num_vertices());
    let mut count = members.iter().filter(|&&m| m).count();
    for (u, v) in graph.edges() {
        if members[u] && members[v] && uf.union(u, v) {
            count -= 1;
        }
    }
    count
}

/// Every vertex outside `Y` strictly lowers the number of components of
/// `G_Y` when added.
pub fn is_admissible_y(graph: &InputGraph, y: &[usize]) -> bool {
    let n = graph.num_vertices();
    let mut members = vec![false; n];
    for &v in y {
        if v < n {
            members[v] = true;
        }
    }
    let base = count_components_uf(graph, &members);
    let outside: Vec<usize> = (0..n).filter(|&x| !members[x]).collect();
    outside.into_iter().all(|x| {
        members[x] = true;
        let with = count_components_uf(graph, &members);
        members[x] = false;
        with < base
    })
}

/// All admissible `Y`, by increasing bitmask.
pub fn admissible_sets(graph: &InputGraph) -> Result<Vec<Vec<usize>>> {
    let n = graph.num_vertices();
    if n > MAX_DECOMP_VERTICES {
        return Err(Error::Resource(format!(
            "graph has {n} vertices, above the cap of {MAX_DECOMP_VERTICES}"
        )));
    }
    Ok((0u32..1 << n)
        .into_par_iter()
        .map(|mask| (0..n).filter(|&v| mask >> v & 1 == 1).collect::<Vec<_>>())
        .filter(|y| is_admissible_y(graph, y))
        .collect())
}

/// `V_{G,Y} ⊇ V_{G,Z}`: `Z ⊆ Y`, and vertices of `Z` connected in `G_Y`
/// stay connected in `G_Z`.
pub fn containment(graph: &InputGraph, y: &[usize], z: &[usize]) -> bool {
    if !z.iter().all(|v| y.contains(v)) {
        return false;
    }
    let in_y = components_of(graph, y);
    let in_z = components_of(graph, z);
    z.iter().all(|&a| {
        z.iter()
            .all(|&b| in_y.block_of(a) != in_y.block_of(b) || in_z.block_of(a) == in_z.block_of(b))
    })
}

/// A `d0 × |vertices|` matrix of rationals, stored by column.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixPoint {
    d0: u32,
    columns: Vec<Vec<BigRational>>,
}

impl MatrixPoint {
    pub fn zeros(d0: u32, num_cols: usize) -> MatrixPoint {
        MatrixPoint {
            d0,
            columns: vec![vec![BigRational::zero(); d0 as usize]; num_cols],
        }
    }

    pub fn from_columns(d0: u32, columns: Vec<Vec<BigRational>>) -> Result<MatrixPoint> {
        if columns.iter().any(|c| c.len() != d0 as usize) {
            return Err(Error::Input(format!("every column needs {d0} entries")));
        }
        Ok(MatrixPoint { d0, columns })
    }

    /// Columns `P(X0 = ·, X = x)` of a joint table.
    pub fn from_distribution(dist: &JointDistribution) -> MatrixPoint {
        let n = dist.space().num_configs();
        MatrixPoint {
            d0: dist.space().d0(),
            columns: (0..n).map(|v| dist.column(v).to_vec()).collect(),
        }
    }

    pub fn d0(&self) -> u32 {
        self.d0
    }

    pub fn num_cols(&self) -> usize {
        self.columns.len()
    }

    pub fn column(&self, x: usize) -> &[BigRational] {
        &self.columns[x]
    }

    pub fn set_column(&mut self, x: usize, column: Vec<BigRational>) {
        assert_eq!(column.len(), self.d0 as usize);
        self.columns[x] = column;
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.columns.len())
            .filter(|&x| self.columns[x].iter().any(|v| !v.is_zero()))
            .collect()
    }

    pub fn to_strings(&self) -> Vec<Vec<String>> {
        self.columns.iter().map(|c| c.iter().map(format_rational).collect()).collect()
    }
}

/// Columns vanish off `Y`; columns in one component of `G_Y` are pairwise
/// proportional.
pub fn point_in_vgy(p: &MatrixPoint, graph: &InputGraph, y: &[usize]) -> bool {
    let zero_off = (0..p.num_cols())
        .filter(|x| !y.contains(x))
        .all(|x| p.column(x).iter().all(Zero::is_zero));
    zero_off
        && components_of(graph, y).blocks().iter().all(|block| {
            block.iter().enumerate().all(|(a, &u)| {
                block[a + 1..].iter().all(|&v| proportional(p.column(u), p.column(v)))
            })
        })
}

/// Columns are proportional across every edge.
pub fn point_in_vg(p: &MatrixPoint, graph: &InputGraph) -> bool {
    graph.edges().all(|(u, v)| proportional(p.column(u), p.column(v)))
}

fn nonzero_rational<R: Rng>(rng: &mut R) -> BigRational {
    let num: i64 = rng.gen_range(1..=9) * if rng.gen_bool(0.5) { 1 } else { -1 };
    BigRational::new(num.into(), rng.gen_range(1i64..=9).into())
}

fn nonzero_vector<R: Rng>(rng: &mut R, d0: u32) -> Vec<BigRational> {
    loop {
        let v: Vec<BigRational> = (0..d0)
            .map(|_| BigRational::from_integer(rng.gen_range(-3i64..=3).into()))
            .collect();
        if v.iter().any(|c| !c.is_zero()) {
            return v;
        }
    }
}

/// A random point of `V_{G,Y}` with support exactly `Y`: one random
/// direction per component, a random nonzero scale per column.
pub fn sample_point_in_vgy<R: Rng>(graph: &InputGraph, y: &[usize], d0: u32, rng: &mut R) -> MatrixPoint {
    let mut p = MatrixPoint::zeros(d0, graph.num_vertices());
    for block in components_of(graph, y).blocks() {
        let dir = nonzero_vector(rng, d0);
        for &x in block {
            let s = nonzero_rational(rng);
            p.set_column(x, dir.iter().map(|c| c * &s).collect());
        }
    }
    p
}

/// Columns `v` on the component of `x` in `G_Y`, `w` on the rest of `Y`,
/// zero elsewhere; `v = (1,…,1)` and `w = (1,2,…,d0)`.
pub fn vw_point(graph: &InputGraph, y: &[usize], x: usize, d0: u32) -> MatrixPoint {
    let v: Vec<BigRational> = vec![BigRational::one(); d0 as usize];
    let w: Vec<BigRational> = (1..=d0 as i64).map(|k| BigRational::from_integer(k.into())).collect();
    let comps = components_of(graph, y);
    let home = comps.block_of(x);
    let mut p = MatrixPoint::zeros(d0, graph.num_vertices());
    for &u in y {
        p.set_column(u, if comps.block_of(u) == home { v.clone() } else { w.clone() });
    }
    p
}

/// The 0/1 indicator point of `Y`.
pub fn indicator_point(graph: &InputGraph, y: &[usize], d0: u32) -> MatrixPoint {
    let mut p = MatrixPoint::zeros(d0, graph.num_vertices());
    for &u in y {
        p.set_column(u, vec![BigRational::one(); d0 as usize]);
    }
    p
}

/// A point of `V_{G,Y}` outside `V_{G,Z}` among the indicator and `v/w`
/// points of `Y`; exists iff `V_{G,Z}` does not contain `V_{G,Y}`.
pub fn separating_point(graph: &InputGraph, y: &[usize], z: &[usize], d0: u32) -> Option<MatrixPoint> {
    std::iter::once(indicator_point(graph, y, d0))
        .chain(y.iter().map(|&x| vw_point(graph, y, x, d0)))
        .find(|p| !point_in_vgy(p, graph, z))
}

/// A failed check from one of the decomposition legs or sampled trials.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub kind: String,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UnionReport {
    pub trials: usize,
    pub points_in_vg: usize,
    pub counterexamples: Vec<Counterexample>,
}

fn trial_seed(seed: u64, trial: u64) -> u64 {
    seed ^ trial.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15)
}

/// Samples points per random support pattern and checks
/// `p ∈ V_G ⟺ p ∈ V_{G,Y}` for some admissible `Y`, and
/// `p ∈ V_G ⟹ p ∈ V_{G,supp p}`.
///
/// Each trial draws one structured point of `V_{G,Y}` and one unconstrained
/// point on the same support.
pub fn verify_union_decomposition(graph: &InputGraph, d0: u32, trials: usize, seed: u64) -> Result<UnionReport> {
    if d0 < 2 {
        return Err(Error::Input(format!("d0 must be at least 2, got {d0}")));
    }
    let n = graph.num_vertices();
    let admissible = admissible_sets(graph)?;
    let per_trial: Vec<(usize, Vec<Counterexample>)> = (0..trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = ChaCha8Rng::seed_from_u64(trial_seed(seed, t as u64));
            let y: Vec<usize> = (0..n).filter(|_| rng.gen_bool(0.7)).collect();
            let structured = sample_point_in_vgy(graph, &y, d0, &mut rng);
            let mut loose = MatrixPoint::zeros(d0, n);
            for &x in &y {
                loose.set_column(x, nonzero_vector(&mut rng, d0));
            }
            let mut found = Vec::new();
            let mut in_vg = 0;
            for (kind, p) in [("structured", &structured), ("unconstrained", &loose)] {
                let a = point_in_vg(p, graph);
                let b = admissible.iter().any(|z| point_in_vgy(p, graph, z));
                let describe = || format!("trial {t}, {kind} point {:?}", p.to_strings());
                if a != b {
                    found.push(Counterexample {
                        kind: "union".into(),
                        detail: format!("{}: in V_G = {a}, in an admissible component = {b}", describe()),
                    });
                }
                if a {
                    in_vg += 1;
                    if !point_in_vgy(p, graph, &p.support()) {
                        found.push(Counterexample {
                            kind: "own_support".into(),
                            detail: describe(),
                        });
                    }
                }
            }
            if !point_in_vg(&structured, graph) {
                found.push(Counterexample {
                    kind: "sampler".into(),
                    detail: format!("trial {t}: structured point outside V_G"),
                });
            }
            (in_vg, found)
        })
        .collect();
    Ok(UnionReport {
        trials,
        points_in_vg: per_trial.iter().map(|(k, _)| k).sum(),
        counterexamples: per_trial.into_iter().flat_map(|(_, c)| c).collect(),
    })
}

/// Result of a check that may be skipped on large instances.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LegOutcome {
    Done(bool),
    Skipped,
}

impl Serialize for LegOutcome {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            LegOutcome::Done(b) => s.serialize_bool(*b),
            LegOutcome::Skipped => s.serialize_str("skipped"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Legs {
    pub non_containment: bool,
    pub membership: bool,
    pub intersection_equality: LegOutcome,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DecompositionReport {
    #[serde(rename = "admissible_Y")]
    pub admissible_y: Vec<Vec<Vec<u32>>>,
    pub legs: Legs,
    pub counterexamples: Vec<Counterexample>,
}

impl DecompositionReport {
    pub fn passed(&self) -> bool {
        self.legs.non_containment
            && self.legs.membership
            && self.legs.intersection_equality != LegOutcome::Done(false)
            && self.counterexamples.is_empty()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Runs the three legs: pairwise non-containment of the admissible
/// components, `I_G ⊆ I_{G,Y}` for each of them, and (on tiny instances)
/// equality of `I_G` with the intersection.
pub fn verify_primary_decomposition(graph: &InputGraph, d0: u32, caps: Caps) -> Result<DecompositionReport> {
    if d0 < 2 {
        return Err(Error::Input(format!("d0 must be at least 2, got {d0}")));
    }
    let admissible = admissible_sets(graph)?;
    let mut counterexamples = Vec::new();
    let space = graph.space();
    let name = |y: &[usize]| {
        let coords: Vec<String> = y.iter().map(|&v| space.config(v).to_string()).collect();
        format!("{{{}}}", coords.join(","))
    };

    let mut non_containment = true;
    for (a, y) in admissible.iter().enumerate() {
        for (b, z) in admissible.iter().enumerate() {
            if a != b && containment(graph, y, z) {
                non_containment = false;
                counterexamples.push(Counterexample {
                    kind: "containment".into(),
                    detail: format!("V_G,{} contains V_G,{}", name(y), name(z)),
                });
            }
        }
    }

    let edge_gens = edge_generator_polynomials(graph, d0)?;
    let component_bases: Vec<Vec<Polynomial>> = admissible
        .iter()
        .map(|y| buchberger(&component_ideal(graph, y)?.generators(graph, d0), caps))
        .collect::<Result<_>>()?;
    let mut membership = true;
    for (y, gb) in admissible.iter().zip(&component_bases) {
        if let Some(f) = edge_gens.iter().find(|f| !reduce(f, gb).is_zero()) {
            membership = false;
            let l = layout(graph, d0);
            counterexamples.push(Counterexample {
                kind: "membership".into(),
                detail: format!(
                    "{} not in I_G,{}",
                    f.render(|v| crate::ideal::variable_name(space, &l, v)),
                    name(y)
                ),
            });
        }
    }

    let intersection_equality =
        if graph.num_vertices() <= MAX_INTERSECTION_VERTICES && d0 == 2 {
            let t = layout(graph, d0).num_vars();
            let mut acc: Option<Vec<Polynomial>> = None;
            for gb in &component_bases {
                acc = Some(match acc {
                    None => gb.clone(),
                    Some(prev) => intersect_ideals(&prev, gb, t, caps)?,
                });
            }
            let mut left = buchberger(&acc.unwrap_or_default(), caps)?;
            let mut right = buchberger(&edge_gens, caps)?;
            left.sort();
            right.sort();
            if left != right {
                counterexamples.push(Counterexample {
                    kind: "intersection".into(),
                    detail: format!("intersection basis has {} elements, I_G basis {}", left.len(), right.len()),
                });
            }
            LegOutcome::Done(left == right)
        } else {
            LegOutcome::Skipped
        };

    Ok(DecompositionReport {
        admissible_y: admissible
            .iter()
            .map(|y| y.iter().map(|&v| space.config(v).coords().to_vec()).collect())
            .collect(),
        legs: Legs {
            non_containment,
            membership,
            intersection_equality,
        },
        counterexamples,
    })
}

/// [`verify_primary_decomposition`] plus sampled union trials, with all
/// counterexamples merged into one report.
pub fn decompose(graph: &InputGraph, d0: u32, trials: usize, seed: u64, caps: Caps) -> Result<DecompositionReport> {
    let mut report = verify_primary_decomposition(graph, d0, caps)?;
    report
        .counterexamples
        .extend(verify_union_decomposition(graph, d0, trials, seed)?.counterexamples);
    Ok(report)
}
