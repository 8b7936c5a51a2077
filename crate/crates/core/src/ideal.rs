//! Generalized binomial edge ideals: edge generators, admissible paths,
//! antitone labelings and the combinatorial Gröbner basis.
//!
//! Unknowns `p_{ix}` are indexed by an output letter `i` and a graph vertex
//! `x`; vertices are ordered by index (the canonical configuration order).

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::One;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::InputGraph;
use crate::model::{format_rational, StateSpace};
use crate::poly::{
    self, buchberger, buchberger_criterion, is_bihomogeneous, Caps, Monomial, Polynomial,
    VarLayout,
};

/// Default vertex cap for [`groebner_set`].
pub const DEFAULT_VERTEX_CAP: usize = 16;

/// `f^{ij}_{xy} = p_{ix} p_{jy} - p_{iy} p_{jx}` with `i < j` and `x < y`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeBinomial {
    pub i: u32,
    pub j: u32,
    pub x: usize,
    pub y: usize,
}

impl EdgeBinomial {
    /// Canonical form of `f^{ij}_{xy}` and the sign relating them; `None`
    /// when the binomial vanishes (`i = j` or `x = y`).
    pub fn canonical(i: u32, j: u32, x: usize, y: usize) -> Option<(EdgeBinomial, i32)> {
        if i == j || x == y {
            return None;
        }
        let sign = if (i > j) != (x > y) { -1 } else { 1 };
        Some((
            EdgeBinomial {
                i: i.min(j),
                j: i.max(j),
                x: x.min(y),
                y: x.max(y),
            },
            sign,
        ))
    }

    pub fn polynomial(&self, layout: &VarLayout) -> Polynomial {
        let p = |i, x| Monomial::var(layout.var(i, x));
        Polynomial::binomial(
            p(self.i, self.x).mul(&p(self.j, self.y)),
            p(self.i, self.y).mul(&p(self.j, self.x)),
        )
    }
}

/// Variable layout of the `d0 × |vertices|` matrix of unknowns.
pub fn layout(graph: &InputGraph, d0: u32) -> VarLayout {
    VarLayout {
        d0,
        num_cols: graph.num_vertices(),
    }
}

fn check_d0(d0: u32) -> Result<()> {
    if d0 < 2 {
        return Err(Error::Input(format!("d0 must be at least 2, got {d0}")));
    }
    Ok(())
}

/// One binomial per edge and per pair `i < j`.
pub fn edge_generators(graph: &InputGraph, d0: u32) -> Result<Vec<EdgeBinomial>> {
    check_d0(d0)?;
    let mut out = Vec::new();
    for (x, y) in graph.edges() {
        for i in 1..=d0 {
            for j in i + 1..=d0 {
                out.push(EdgeBinomial { i, j, x, y });
            }
        }
    }
    Ok(out)
}

pub fn edge_generator_polynomials(graph: &InputGraph, d0: u32) -> Result<Vec<Polynomial>> {
    let l = layout(graph, d0);
    Ok(edge_generators(graph, d0)?.iter().map(|f| f.polynomial(&l)).collect())
}

/// All admissible paths from `x` to `y`, in lexicographic order.
///
/// Condition (iii) is equivalent to the path being chordless: a chord
/// between positions `a < b - 1` is exactly a shortcut subsequence.
pub fn enumerate_admissible_paths(graph: &InputGraph, x: usize, y: usize) -> Result<Vec<Vec<usize>>> {
    let n = graph.num_vertices();
    if x >= y || y >= n {
        return Err(Error::Input(format!("need x < y < {n}, got x={x}, y={y}")));
    }
    let mut out = Vec::new();
    let mut path = vec![x];
    extend_paths(graph, y, &mut path, &mut out);
    out.sort();
    Ok(out)
}

fn extend_paths(graph: &InputGraph, y: usize, path: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    let x = path[0];
    let last = *path.last().unwrap();
    for &v in graph.neighbors(last) {
        if path.contains(&v) {
            continue;
        }
        // v may touch only its predecessor among the vertices so far
        let chord = path[..path.len() - 1].iter().any(|&u| graph.has_edge(u, v));
        if chord {
            continue;
        }
        if v == y {
            path.push(v);
            out.push(path.clone());
            path.pop();
        } else if v < x || v > y {
            path.push(v);
            extend_paths(graph, y, path, out);
            path.pop();
        }
    }
}

/// Which index pairs the antitone condition ranges over.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum AntitoneRange {
    /// `0 <= s, t <= r`.
    #[default]
    EndpointInclusive,
    /// `1 <= s, t <= r`, as the definition is written.
    Literal,
}

impl AntitoneRange {
    fn first(self) -> usize {
        match self {
            AntitoneRange::EndpointInclusive => 0,
            AntitoneRange::Literal => 1,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            AntitoneRange::EndpointInclusive => "endpoint-inclusive",
            AntitoneRange::Literal => "literal",
        }
    }
}

/// `x_s < x_t` implies `kappa(s) >= kappa(t)` over the index range.
pub fn is_antitone(path: &[usize], kappa: &[u32], range: AntitoneRange) -> bool {
    let lo = range.first();
    (lo..path.len()).all(|s| {
        (lo..path.len()).all(|t| !(path[s] < path[t] && kappa[s] < kappa[t]))
    })
}

pub fn is_strictly_antitone(path: &[usize], kappa: &[u32], range: AntitoneRange) -> bool {
    kappa.len() == path.len()
        && path.len() >= 2
        && kappa[0] > kappa[kappa.len() - 1]
        && is_antitone(path, kappa, range)
}

/// Strictly antitone labelings `{0..r} -> {1..d0}` in lexicographic order.
pub fn enumerate_strict_antitone(path: &[usize], d0: u32, range: AntitoneRange) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    if path.len() < 2 {
        return out;
    }
    let mut kappa = Vec::with_capacity(path.len());
    label_positions(path, d0, range, &mut kappa, &mut out);
    out
}

fn label_positions(
    path: &[usize],
    d0: u32,
    range: AntitoneRange,
    kappa: &mut Vec<u32>,
    out: &mut Vec<Vec<u32>>,
) {
    let t = kappa.len();
    if t == path.len() {
        if kappa[0] > kappa[t - 1] {
            out.push(kappa.clone());
        }
        return;
    }
    let lo = range.first();
    for label in 1..=d0 {
        let ok = t < lo
            || (lo..t).all(|s| {
                !(path[s] < path[t] && kappa[s] < label) && !(path[t] < path[s] && label < kappa[s])
            });
        if ok {
            kappa.push(label);
            label_positions(path, d0, range, kappa, out);
            kappa.pop();
        }
    }
}

/// `u_π^κ = ∏_{0 < k < r} p_{κ(k) x_k}`.
pub fn path_monomial(path: &[usize], kappa: &[u32], layout: &VarLayout) -> Monomial {
    let r = path.len() - 1;
    Monomial::from_powers((1..r).map(|k| (layout.var(kappa[k], path[k]), 1)))
}

/// `∏_{0 <= k <= r} p_{κ(k) x_k}`, the monomial including both endpoints.
pub fn full_path_monomial(path: &[usize], kappa: &[u32], layout: &VarLayout) -> Monomial {
    Monomial::from_powers(path.iter().zip(kappa).map(|(&x, &i)| (layout.var(i, x), 1)))
}

/// `u_π^κ · f^{κ(r) κ(0)}_{x_0 x_r}` with its path and labeling.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroebnerElement {
    pub path: Vec<usize>,
    pub kappa: Vec<u32>,
    pub polynomial: Polynomial,
}

impl GroebnerElement {
    /// Requires `path[0] < path[r]` and `kappa[0] > kappa[r]`.
    pub fn new(path: Vec<usize>, kappa: Vec<u32>, layout: &VarLayout) -> GroebnerElement {
        let r = path.len() - 1;
        let f = EdgeBinomial {
            i: kappa[r],
            j: kappa[0],
            x: path[0],
            y: path[r],
        };
        let u = path_monomial(&path, &kappa, layout);
        let polynomial = f.polynomial(layout).mul_term(&u, &BigRational::one());
        GroebnerElement { path, kappa, polynomial }
    }

    pub fn x(&self) -> usize {
        self.path[0]
    }

    pub fn y(&self) -> usize {
        *self.path.last().unwrap()
    }

    pub fn initial_monomial(&self) -> &Monomial {
        self.polynomial.leading_monomial().expect("nonzero element")
    }

    fn sort_key(&self) -> (usize, usize, usize, &[usize], &[u32]) {
        (self.x(), self.y(), self.path.len(), &self.path, &self.kappa)
    }
}

/// The combinatorial basis, deduplicated and in canonical order.
pub fn groebner_set(
    graph: &InputGraph,
    d0: u32,
    range: AntitoneRange,
    max_vertices: usize,
) -> Result<Vec<GroebnerElement>> {
    check_d0(d0)?;
    let n = graph.num_vertices();
    if n > max_vertices {
        return Err(Error::Resource(format!(
            "graph has {n} vertices, above the cap of {max_vertices}"
        )));
    }
    let l = layout(graph, d0);
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|x| (x + 1..n).map(move |y| (x, y))).collect();
    let per_pair: Vec<Vec<GroebnerElement>> = pairs
        .par_iter()
        .map(|&(x, y)| {
            let mut out = Vec::new();
            for path in enumerate_admissible_paths(graph, x, y).expect("x < y") {
                for kappa in enumerate_strict_antitone(&path, d0, range) {
                    out.push(GroebnerElement::new(path.clone(), kappa, &l));
                }
            }
            out
        })
        .collect();
    let mut all: Vec<GroebnerElement> = per_pair.into_iter().flatten().collect();
    all.sort_by(|a, b| a.sort_key().cmp(&b.sort_key()));
    let mut seen = std::collections::HashSet::new();
    all.retain(|g| seen.insert(g.polynomial.clone()));
    Ok(all)
}

pub fn polynomials(elements: &[GroebnerElement]) -> Vec<Polynomial> {
    elements.iter().map(|g| g.polynomial.clone()).collect()
}

/// No initial term divides a term of another element, and all elements
/// are monic.
pub fn is_reduced(basis: &[Polynomial]) -> bool {
    if basis.iter().any(|g| g.leading_coefficient() != Some(&BigRational::one())) {
        return false;
    }
    basis.iter().enumerate().all(|(a, g)| {
        let lm = g.leading_monomial().unwrap();
        basis
            .iter()
            .enumerate()
            .filter(|&(b, _)| b != a)
            .all(|(_, h)| h.terms().all(|(m, _)| !lm.divides(m)))
    })
}

pub fn initial_terms_squarefree(basis: &[Polynomial]) -> bool {
    basis.iter().all(|g| g.leading_monomial().is_some_and(Monomial::is_squarefree))
}

/// An element of [`groebner_set`] whose initial term divides the labeled
/// walk monomial `∏_{0 <= k <= r} p_{κ(k) x_k}`, or `None` when `kappa` is
/// antitone along the walk (endpoint-inclusive).
///
/// Follows the minimal non-antitone subwalk, shortcut to a chordless path.
pub fn find_reduction_witness(
    graph: &InputGraph,
    walk: &[usize],
    kappa: &[u32],
    d0: u32,
) -> Result<Option<GroebnerElement>> {
    check_d0(d0)?;
    if walk.is_empty() || walk.len() != kappa.len() {
        return Err(Error::Input("walk and labeling must be nonempty and of equal length".into()));
    }
    if walk.windows(2).any(|w| !graph.has_edge(w[0], w[1])) {
        return Err(Error::Input("consecutive walk vertices must be adjacent".into()));
    }
    if kappa.iter().any(|&i| i == 0 || i > d0) {
        return Err(Error::Input(format!("labels must lie in 1..={d0}")));
    }
    let range = AntitoneRange::EndpointInclusive;
    if is_antitone(walk, kappa, range) {
        return Ok(None);
    }
    let l = layout(graph, d0);
    let target = full_path_monomial(walk, kappa, &l);
    let (mut tau, mut lab) = minimal_violating_subwalk(walk, kappa);
    if tau[0] > *tau.last().unwrap() {
        tau.reverse();
        lab.reverse();
    }
    let keep = shortest_forward_path(graph, &tau);
    let path: Vec<usize> = keep.iter().map(|&k| tau[k]).collect();
    let mut swapped: Vec<u32> = keep.iter().map(|&k| lab[k]).collect();
    let r = swapped.len() - 1;
    swapped.swap(0, r);
    let admissible = enumerate_admissible_paths(graph, path[0], path[r])
        .map(|ps| ps.contains(&path))
        .unwrap_or(false);
    if admissible && is_strictly_antitone(&path, &swapped, range) {
        let g = GroebnerElement::new(path, swapped, &l);
        if g.initial_monomial().divides(&target) {
            return Ok(Some(g));
        }
    }
    // the construction should always succeed; fall back to a scan
    let basis = groebner_set(graph, d0, range, graph.num_vertices())?;
    match basis.into_iter().find(|g| g.initial_monomial().divides(&target)) {
        Some(g) => Ok(Some(g)),
        None => Err(Error::Contract("non-antitone labeling without a reducing element".into())),
    }
}

fn minimal_violating_subwalk(walk: &[usize], kappa: &[u32]) -> (Vec<usize>, Vec<u32>) {
    for len in 1..walk.len() {
        for a in 0..walk.len() - len {
            let b = a + len;
            let (u, v) = (walk[a], walk[b]);
            if (u < v && kappa[a] < kappa[b]) || (v < u && kappa[b] < kappa[a]) {
                return (walk[a..=b].to_vec(), kappa[a..=b].to_vec());
            }
        }
    }
    unreachable!("labeling is not antitone")
}

/// Positions of a shortest order-preserving subsequence of `tau` from the
/// first to the last entry whose consecutive vertices are adjacent.
fn shortest_forward_path(graph: &InputGraph, tau: &[usize]) -> Vec<usize> {
    let m = tau.len();
    let mut dist = vec![usize::MAX; m];
    let mut prev = vec![usize::MAX; m];
    dist[0] = 0;
    for b in 1..m {
        for a in 0..b {
            if dist[a] != usize::MAX && graph.has_edge(tau[a], tau[b]) && dist[a] + 1 < dist[b] {
                dist[b] = dist[a] + 1;
                prev[b] = a;
            }
        }
    }
    let mut keep = vec![m - 1];
    while *keep.last().unwrap() != 0 {
        keep.push(prev[*keep.last().unwrap()]);
    }
    keep.reverse();
    keep
}

/// Outcome of the checks run on [`groebner_set`] output.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GroebnerCheck {
    pub elements: usize,
    pub buchberger_criterion: bool,
    pub reduced: bool,
    pub squarefree_initial_terms: bool,
    pub bihomogeneous: bool,
    /// Every element lies in the ideal of the edge generators.
    pub elements_in_ideal: bool,
    /// Equal as sets to the reduced basis computed by Buchberger.
    pub oracle_equal: bool,
}

impl GroebnerCheck {
    pub fn all_pass(&self) -> bool {
        self.buchberger_criterion
            && self.reduced
            && self.squarefree_initial_terms
            && self.bihomogeneous
            && self.elements_in_ideal
            && self.oracle_equal
    }
}

pub fn verify_groebner_set(
    graph: &InputGraph,
    d0: u32,
    range: AntitoneRange,
    caps: Caps,
) -> Result<GroebnerCheck> {
    let elements = groebner_set(graph, d0, range, DEFAULT_VERTEX_CAP)?;
    let basis = polynomials(&elements);
    let l = layout(graph, d0);
    let oracle = buchberger(&edge_generator_polynomials(graph, d0)?, caps)?;
    let mut sorted = basis.clone();
    sorted.sort();
    let mut oracle_sorted = oracle.clone();
    oracle_sorted.sort();
    Ok(GroebnerCheck {
        elements: basis.len(),
        buchberger_criterion: buchberger_criterion(&basis),
        reduced: is_reduced(&basis),
        squarefree_initial_terms: initial_terms_squarefree(&basis),
        bihomogeneous: basis.iter().all(|g| is_bihomogeneous(g, &l)),
        elements_in_ideal: basis.iter().all(|g| poly::reduce(g, &oracle).is_zero()),
        oracle_equal: sorted == oracle_sorted,
    })
}

/// `p[i;x1,...,xn]` for the unknown of row `i` and the vertex's configuration.
pub fn variable_name(space: &StateSpace, layout: &VarLayout, v: poly::Var) -> String {
    let (i, x) = layout.decode(v);
    let coords: Vec<String> = space.config(x).coords().iter().map(u32::to_string).collect();
    format!("p[{i};{}]", coords.join(","))
}

/// One polynomial per line, terms in decreasing order.
pub fn basis_to_text(basis: &[Polynomial], graph: &InputGraph, d0: u32) -> String {
    let l = layout(graph, d0);
    let mut out = String::new();
    for g in basis {
        out.push_str(&g.render(|v| variable_name(graph.space(), &l, v)));
        out.push('\n');
    }
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct TermRecord {
    pub coefficient: String,
    pub exponents: BTreeMap<String, u32>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ElementRecord {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub path: Option<Vec<Vec<u32>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kappa: Option<Vec<u32>>,
    pub terms: Vec<TermRecord>,
}

pub fn polynomial_record(g: &Polynomial, graph: &InputGraph, d0: u32) -> Vec<TermRecord> {
    let l = layout(graph, d0);
    g.terms()
        .map(|(m, c)| TermRecord {
            coefficient: format_rational(c),
            exponents: m
                .powers()
                .iter()
                .map(|&(v, e)| (variable_name(graph.space(), &l, v), e))
                .collect(),
        })
        .collect()
}

pub fn element_records(elements: &[GroebnerElement], graph: &InputGraph, d0: u32) -> Vec<ElementRecord> {
    elements
        .iter()
        .map(|g| ElementRecord {
            path: Some(g.path.iter().map(|&x| graph.space().config(x).coords().to_vec()).collect()),
            kappa: Some(g.kappa.clone()),
            terms: polynomial_record(&g.polynomial, graph, d0),
        })
        .collect()
}
