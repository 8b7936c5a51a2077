//! The graph `G_R` on input configurations and robustness structures.
//!
//! Vertices are the vertex indices of [`StateSpace`]. Structures store blocks
//! as sorted vertex lists; blocks are ordered by their minimal vertex.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{input, Error, Result};
use crate::model::{
    make_uniform_spec, InputConfig, PairRecord, PartialConfig, RobustnessSpec, StateSpace,
};

/// Default vertex cap for exhaustive subset enumeration.
pub const DEFAULT_ENUMERATION_CAP: usize = 20;
/// Absolute ceiling for exhaustive enumeration, whatever the caller asks for.
pub const MAX_ENUMERATION_CAP: usize = 26;
/// Bit-mask algorithms work on graphs up to this many vertices.
pub const MAX_MASK_VERTICES: usize = 64;

/// Undirected simple graph on the configurations of a state space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InputGraph {
    space: StateSpace,
    adj: Vec<Vec<usize>>,
    witnesses: BTreeMap<(usize, usize), Option<PartialConfig>>,
}

impl InputGraph {
    /// Graph with explicit edges on `num_vertices` abstract vertices.
    ///
    /// The vertices are the configurations of a one-input space with alphabet
    /// `{1..num_vertices}`, so vertex `v` is the configuration `(v + 1)`.
    pub fn from_edges(num_vertices: usize, edges: &[(usize, usize)]) -> Result<InputGraph> {
        let space = StateSpace::new(2, vec![num_vertices as u32])?;
        let mut graph = InputGraph {
            adj: vec![Vec::new(); num_vertices],
            space,
            witnesses: BTreeMap::new(),
        };
        for &(u, v) in edges {
            if u >= num_vertices || v >= num_vertices {
                return input(format!("edge ({u}, {v}) references a missing vertex"));
            }
            if u == v {
                return input(format!("self-loop at vertex {u}"));
            }
            graph.insert_edge(u, v, None);
        }
        graph.finish();
        Ok(graph)
    }

    fn insert_edge(&mut self, u: usize, v: usize, witness: Option<PartialConfig>) {
        let key = (u.min(v), u.max(v));
        if let std::collections::btree_map::Entry::Vacant(slot) = self.witnesses.entry(key) {
            slot.insert(witness);
            self.adj[u].push(v);
            self.adj[v].push(u);
        }
    }

    fn finish(&mut self) {
        for list in &mut self.adj {
            list.sort_unstable();
        }
    }

    pub fn space(&self) -> &StateSpace {
        &self.space
    }

    pub fn num_vertices(&self) -> usize {
        self.adj.len()
    }

    pub fn num_edges(&self) -> usize {
        self.witnesses.len()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.witnesses.contains_key(&(u.min(v), u.max(v)))
    }

    /// Edges `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.witnesses.keys().copied()
    }

    /// The spec pair that produced edge `(u, v)`, if the graph came from a spec.
    pub fn witness(&self, u: usize, v: usize) -> Option<&PartialConfig> {
        self.witnesses.get(&(u.min(v), u.max(v)))?.as_ref()
    }

    /// Checks every stored witness: both endpoints restrict to its `y`.
    pub fn verify_witnesses(&self) -> bool {
        self.witnesses.iter().all(|(&(u, v), w)| match w {
            None => true,
            Some(pair) => {
                self.space.config(u).agrees_with(pair) && self.space.config(v).agrees_with(pair)
            }
        })
    }

    /// Every edge of `self` is an edge of `other`.
    pub fn is_subgraph_of(&self, other: &InputGraph) -> bool {
        self.num_vertices() == other.num_vertices()
            && self.edges().all(|(u, v)| other.has_edge(u, v))
    }

    /// Adjacency as bit masks; requires at most 64 vertices.
    pub fn adjacency_masks(&self) -> Result<Vec<u64>> {
        if self.num_vertices() > MAX_MASK_VERTICES {
            return Err(Error::Resource(format!(
                "bit-mask algorithms support at most {MAX_MASK_VERTICES} vertices, graph has {}",
                self.num_vertices()
            )));
        }
        Ok(self
            .adj
            .iter()
            .map(|list| list.iter().fold(0u64, |m, &v| m | 1 << v))
            .collect())
    }

    pub fn to_json(&self) -> String {
        let file = GraphFile {
            d: self.space.alphabet_sizes().to_vec(),
            vertices: self.space.configs().map(|x| x.coords().to_vec()).collect(),
            edges: self
                .witnesses
                .iter()
                .map(|(&(u, v), w)| EdgeRecord {
                    u: self.space.config(u).coords().to_vec(),
                    v: self.space.config(v).coords().to_vec(),
                    witness: w.as_ref().map(PairRecord::from_pair),
                })
                .collect(),
        };
        serde_json::to_string_pretty(&file).expect("serializable")
    }

    /// Reads the graph export format. Witnesses are re-validated.
    pub fn from_json(text: &str) -> Result<InputGraph> {
        let file: GraphFile = serde_json::from_str(text)?;
        let space = StateSpace::new(2, file.d)?;
        let mut graph = InputGraph {
            adj: vec![Vec::new(); space.num_configs()],
            space,
            witnesses: BTreeMap::new(),
        };
        for edge in &file.edges {
            let u = graph.space.make_config(edge.u.clone())?;
            let v = graph.space.make_config(edge.v.clone())?;
            let (u, v) = (graph.space.index_of(&u), graph.space.index_of(&v));
            if u == v {
                return input(format!("self-loop at {:?}", edge.u));
            }
            let witness = edge.witness.as_ref().map(PairRecord::to_pair).transpose()?;
            graph.insert_edge(u, v, witness);
        }
        graph.finish();
        if !graph.verify_witnesses() {
            return input("an edge witness does not match its endpoints");
        }
        Ok(graph)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GraphFile {
    d: Vec<u32>,
    #[serde(default)]
    vertices: Vec<Vec<u32>>,
    edges: Vec<EdgeRecord>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct EdgeRecord {
    u: Vec<u32>,
    v: Vec<u32>,
    witness: Option<PairRecord>,
}

/// `G_R`: `x ~ x'` iff some `(R, y)` in the spec has `x|_R = x'|_R = y`.
///
/// The stored witness of an edge is the smallest such pair.
pub fn build_graph(spec: &RobustnessSpec, space: &StateSpace) -> InputGraph {
    let mut graph = InputGraph {
        space: space.clone(),
        adj: vec![Vec::new(); space.num_configs()],
        witnesses: BTreeMap::new(),
    };
    let configs: Vec<InputConfig> = space.configs().collect();
    for pair in spec.pairs() {
        let matching: Vec<usize> = (0..configs.len())
            .filter(|&i| configs[i].agrees_with(pair))
            .collect();
        for (a, &u) in matching.iter().enumerate() {
            for &v in &matching[a + 1..] {
                graph.insert_edge(u, v, Some(pair.clone()));
            }
        }
    }
    graph.finish();
    graph
}

/// `G_k := G_{R_k}`; for `k <= 0` the complete graph.
pub fn uniform_graph(space: &StateSpace, k: i64) -> InputGraph {
    let k = k.clamp(0, space.num_inputs() as i64) as usize;
    build_graph(&make_uniform_spec(k, space).expect("k within range"), space)
}

/// Blocks of a robustness structure, in canonical order.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RobustnessStructure {
    blocks: Vec<Vec<usize>>,
}

impl RobustnessStructure {
    /// Canonicalizes: each block sorted, blocks ordered by minimal element.
    /// Blocks must be non-empty and disjoint.
    pub fn from_blocks(mut blocks: Vec<Vec<usize>>) -> Result<RobustnessStructure> {
        let mut seen = BTreeSet::new();
        for block in &mut blocks {
            if block.is_empty() {
                return input("structure contains an empty block");
            }
            block.sort_unstable();
            for &v in block.iter() {
                if !seen.insert(v) {
                    return input(format!("vertex {v} appears in two blocks"));
                }
            }
        }
        blocks.sort_unstable();
        Ok(RobustnessStructure { blocks })
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    /// `∪B`, sorted.
    pub fn support(&self) -> Vec<usize> {
        let mut all: Vec<usize> = self.blocks.iter().flatten().copied().collect();
        all.sort_unstable();
        all
    }

    pub fn block_of(&self, v: usize) -> Option<usize> {
        self.blocks.iter().position(|b| b.binary_search(&v).is_ok())
    }

    /// Sorted vertices outside the support.
    pub fn complement(&self, num_vertices: usize) -> Vec<usize> {
        let support: BTreeSet<usize> = self.blocks.iter().flatten().copied().collect();
        (0..num_vertices).filter(|v| !support.contains(v)).collect()
    }

    /// Every block of `self` lies inside exactly one block of `coarser`.
    pub fn refines(&self, coarser: &RobustnessStructure) -> bool {
        self.blocks.iter().all(|block| {
            coarser
                .blocks
                .iter()
                .filter(|c| block.iter().all(|v| c.binary_search(v).is_ok()))
                .count()
                == 1
        })
    }

    /// Human-readable form, e.g. `{(1,1)} {(1,2),(2,2)}`.
    pub fn describe(&self, space: &StateSpace) -> String {
        self.blocks
            .iter()
            .map(|b| {
                let items: Vec<String> = b.iter().map(|&v| space.config(v).to_string()).collect();
                format!("{{{}}}", items.join(","))
            })
            .collect::<Vec<_>>()
            .join(" ")
    }

    pub fn to_json(&self, space: &StateSpace) -> String {
        serde_json::to_string_pretty(&self.to_record(space)).expect("serializable")
    }

    pub fn to_record(&self, space: &StateSpace) -> StructureFile {
        StructureFile {
            blocks: self
                .blocks
                .iter()
                .map(|b| b.iter().map(|&v| space.config(v).coords().to_vec()).collect())
                .collect(),
        }
    }

    pub fn from_json(space: &StateSpace, text: &str) -> Result<RobustnessStructure> {
        let file: StructureFile = serde_json::from_str(text)?;
        let blocks = file
            .blocks
            .into_iter()
            .map(|b| {
                b.into_iter()
                    .map(|c| space.make_config(c).map(|x| space.index_of(&x)))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        RobustnessStructure::from_blocks(blocks)
    }
}

/// Structure file: blocks of configurations as coordinate arrays.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StructureFile {
    pub blocks: Vec<Vec<Vec<u32>>>,
}

/// Connected components of the subgraph induced by `y`.
pub fn components_of(graph: &InputGraph, y: &[usize]) -> RobustnessStructure {
    let n = graph.num_vertices();
    let mut member = vec![false; n];
    for &v in y {
        member[v] = true;
    }
    let mut seen = vec![false; n];
    let mut blocks = Vec::new();
    let mut queue = VecDeque::new();
    let mut starts: Vec<usize> = y.to_vec();
    starts.sort_unstable();
    for start in starts {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        queue.push_back(start);
        let mut block = Vec::new();
        while let Some(u) = queue.pop_front() {
            block.push(u);
            for &w in graph.neighbors(u) {
                if member[w] && !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        block.sort_unstable();
        blocks.push(block);
    }
    blocks.sort_unstable();
    RobustnessStructure { blocks }
}

/// `y` induces a connected subgraph (the empty set counts as connected).
pub fn is_connected_in(graph: &InputGraph, y: &[usize]) -> bool {
    components_of(graph, y).num_blocks() <= 1
}

fn check_consistent(structure: &RobustnessStructure, graph: &InputGraph) -> Result<Vec<usize>> {
    let support = structure.support();
    if support.last().is_some_and(|&v| v >= graph.num_vertices()) {
        return input("structure references a vertex outside the graph");
    }
    if components_of(graph, &support) != *structure {
        return input("structure blocks are not the connected components of the induced subgraph");
    }
    Ok(support)
}

/// Maximality by component counting: every outside vertex, when added,
/// strictly lowers the number of components.
pub fn is_maximal(structure: &RobustnessStructure, graph: &InputGraph) -> Result<bool> {
    let support = check_consistent(structure, graph)?;
    let before = structure.num_blocks();
    let mut extended = support.clone();
    for x in structure.complement(graph.num_vertices()) {
        extended.clear();
        extended.extend_from_slice(&support);
        extended.push(x);
        if components_of(graph, &extended).num_blocks() >= before {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Maximality by edges: every outside vertex has neighbours in two
/// different blocks.
pub fn maximality_by_edges(structure: &RobustnessStructure, graph: &InputGraph) -> Result<bool> {
    check_consistent(structure, graph)?;
    Ok(structure
        .complement(graph.num_vertices())
        .into_iter()
        .all(|x| {
            let mut first = None;
            graph.neighbors(x).iter().filter_map(|&w| structure.block_of(w)).any(|b| {
                match first {
                    None => {
                        first = Some(b);
                        false
                    }
                    Some(a) => a != b,
                }
            })
        }))
}

/// Number of connected components of the subgraph induced by `set`.
pub(crate) fn count_components(adj: &[u64], set: u64) -> usize {
    let mut rest = set;
    let mut count = 0;
    while rest != 0 {
        let mut comp = rest & rest.wrapping_neg();
        let mut frontier = comp;
        while frontier != 0 {
            let mut next = 0u64;
            let mut f = frontier;
            while f != 0 {
                let v = f.trailing_zeros() as usize;
                f &= f - 1;
                next |= adj[v];
            }
            next &= set & !comp;
            comp |= next;
            frontier = next;
        }
        rest &= !comp;
        count += 1;
    }
    count
}

fn mask_is_maximal(adj: &[u64], full: u64, y: u64) -> bool {
    let before = count_components(adj, y);
    let mut outside = full & !y;
    while outside != 0 {
        let x = outside.trailing_zeros();
        outside &= outside - 1;
        if count_components(adj, y | 1 << x) >= before {
            return false;
        }
    }
    true
}

fn structure_from_mask(graph: &InputGraph, mask: u64) -> RobustnessStructure {
    let y: Vec<usize> = (0..graph.num_vertices()).filter(|&v| mask >> v & 1 == 1).collect();
    components_of(graph, &y)
}

/// All maximal structures, by testing every subset of the vertex set.
///
/// `cap` bounds the number of vertices (at most [`MAX_ENUMERATION_CAP`]).
pub fn enumerate_maximal_structures(
    graph: &InputGraph,
    cap: usize,
) -> Result<Vec<RobustnessStructure>> {
    let n = graph.num_vertices();
    let cap = cap.min(MAX_ENUMERATION_CAP);
    if n > cap {
        return Err(Error::Resource(format!(
            "exhaustive enumeration is capped at {cap} vertices, graph has {n}"
        )));
    }
    let adj = graph.adjacency_masks()?;
    let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let masks: Vec<u64> = (0..=full)
        .into_par_iter()
        .filter(|&y| mask_is_maximal(&adj, full, y))
        .collect();
    let mut out: Vec<RobustnessStructure> =
        masks.into_iter().map(|m| structure_from_mask(graph, m)).collect();
    out.sort_unstable();
    Ok(out)
}

/// All maximal structures of graphs with up to 64 vertices, by a
/// backtracking search over block labelings.
///
/// Every vertex is either left out or given a block label; labels are
/// introduced in vertex order, so each structure is produced once. Partial
/// labelings are pruned when a left-out vertex can no longer see two blocks,
/// when some block can no longer become connected, or when a still-free
/// vertex can be neither labeled nor left out.
pub fn search_maximal_structures(graph: &InputGraph) -> Result<Vec<RobustnessStructure>> {
    let adj = graph.adjacency_masks()?;
    let n = adj.len();
    let order = bfs_order(graph);
    let mut state = Search {
        adj: &adj,
        label: vec![FREE; n],
        classes: Vec::new(),
        free: if n == 64 { u64::MAX } else { (1u64 << n) - 1 },
        out: Vec::new(),
    };
    state.descend(&order, 0);
    let full = state.free;
    let mut out: Vec<RobustnessStructure> = state
        .out
        .into_iter()
        .map(|m| {
            debug_assert!(mask_is_maximal(&adj, full, m));
            structure_from_mask(graph, m)
        })
        .collect();
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

const FREE: i32 = -2;
const OUT: i32 = -1;

struct Search<'a> {
    adj: &'a [u64],
    label: Vec<i32>,
    classes: Vec<u64>,
    free: u64,
    out: Vec<u64>,
}

impl Search<'_> {
    fn labels_around(&self, v: usize) -> (u64, u32) {
        let mut seen = 0u64;
        let mut nb = self.adj[v] & !self.free;
        while nb != 0 {
            let w = nb.trailing_zeros() as usize;
            nb &= nb - 1;
            if self.label[w] >= 0 {
                seen |= 1 << self.label[w];
            }
        }
        (seen, seen.count_ones())
    }

    /// Upper bound on the number of blocks `v` can end up adjacent to is at
    /// least two. A free neighbour next to a labeled vertex can only join that
    /// label; one with no labeled neighbour may still open a new block.
    fn can_leave_out(&self, v: usize) -> bool {
        let (mut seen, _) = self.labels_around(v);
        let mut open = 0;
        let mut nb = self.adj[v] & self.free;
        while nb != 0 {
            let u = nb.trailing_zeros() as usize;
            nb &= nb - 1;
            let (around, count) = self.labels_around(u);
            match count {
                0 => open += 1,
                1 => seen |= around,
                _ => {}
            }
            if seen.count_ones() + open >= 2 {
                return true;
            }
        }
        seen.count_ones() + open >= 2
    }

    fn class_can_connect(&self, class: u64) -> bool {
        let allowed = class | self.free;
        let mut comp = class & class.wrapping_neg();
        let mut frontier = comp;
        while frontier != 0 {
            let mut next = 0u64;
            let mut f = frontier;
            while f != 0 {
                let v = f.trailing_zeros() as usize;
                f &= f - 1;
                next |= self.adj[v];
            }
            next &= allowed & !comp;
            comp |= next;
            frontier = next;
        }
        class & !comp == 0
    }

    fn consistent_after(&self, v: usize) -> bool {
        if self.label[v] == OUT && !self.can_leave_out(v) {
            return false;
        }
        let mut nb = self.adj[v];
        while nb != 0 {
            let w = nb.trailing_zeros() as usize;
            nb &= nb - 1;
            if self.label[w] == OUT && !self.can_leave_out(w) {
                return false;
            }
            if self.label[w] == FREE {
                let (_, labels) = self.labels_around(w);
                if labels > 1 && !self.can_leave_out(w) {
                    return false;
                }
            }
        }
        self.classes.iter().all(|&c| self.class_can_connect(c))
    }

    fn descend(&mut self, order: &[usize], pos: usize) {
        if pos == order.len() {
            let support = self.classes.iter().fold(0u64, |m, c| m | c);
            self.out.push(support);
            return;
        }
        let v = order[pos];
        let bit = 1u64 << v;
        self.free &= !bit;

        self.label[v] = OUT;
        if self.consistent_after(v) {
            self.descend(order, pos + 1);
        }

        let (seen, labels) = self.labels_around(v);
        let choices: Vec<usize> = match labels {
            0 => (0..=self.classes.len()).collect(),
            1 => vec![seen.trailing_zeros() as usize],
            _ => Vec::new(),
        };
        for c in choices {
            if c == self.classes.len() {
                self.classes.push(0);
            }
            self.classes[c] |= bit;
            self.label[v] = c as i32;
            if self.consistent_after(v) {
                self.descend(order, pos + 1);
            }
            self.classes[c] &= !bit;
            if self.classes[c] == 0 {
                self.classes.pop();
            }
        }
        self.label[v] = FREE;
        self.free |= bit;
    }
}

fn bfs_order(graph: &InputGraph) -> Vec<usize> {
    let n = graph.num_vertices();
    let mut seen = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for start in 0..n {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut queue = VecDeque::from([start]);
        while let Some(u) = queue.pop_front() {
            order.push(u);
            for &w in graph.neighbors(u) {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
    }
    order
}

/// Recomputes blocks of the same support in another graph.
///
/// When `finer_graph` has at least the edges the structure was built from,
/// every old block lies in exactly one new block; see
/// [`RobustnessStructure::refines`].
pub fn coarsen_structure(
    structure: &RobustnessStructure,
    finer_graph: &InputGraph,
) -> RobustnessStructure {
    components_of(finer_graph, &structure.support())
}

/// Product-form test for 1-robustness structures.
///
/// True iff every block is the full product `S_1 × ... × S_n` of its
/// coordinate projections and, for every input `i`, the projections of the
/// blocks onto `i` together cover the alphabet of `i`.
pub fn check_product_form(structure: &RobustnessStructure, space: &StateSpace) -> bool {
    let n = space.num_inputs();
    let mut covered: Vec<BTreeSet<u32>> = vec![BTreeSet::new(); n];
    for block in structure.blocks() {
        let configs: Vec<InputConfig> = block.iter().map(|&v| space.config(v)).collect();
        let projections: Vec<BTreeSet<u32>> = (0..n)
            .map(|i| configs.iter().map(|x| x.coords()[i]).collect())
            .collect();
        let product_size: usize = projections.iter().map(BTreeSet::len).product();
        // the block is inside its projection product, so equal sizes means equality
        if product_size != block.len() {
            return false;
        }
        for (cov, proj) in covered.iter_mut().zip(&projections) {
            cov.extend(proj);
        }
    }
    covered
        .iter()
        .zip(space.alphabet_sizes())
        .all(|(cov, &di)| cov.len() == di as usize)
}

/// The completion property read literally: for every input `j` and every
/// assignment of the other inputs some value of input `j` completes it to a
/// configuration in the support.
///
/// This is strictly stronger than the projection cover used by
/// [`check_product_form`]; for three binary inputs the maximal
/// 1-robustness structure `{(1,1,1)}, {(2,2,2)}` fails it.
pub fn completion_cover(structure: &RobustnessStructure, space: &StateSpace) -> bool {
    let support: BTreeSet<usize> = structure.support().into_iter().collect();
    let n = space.num_inputs();
    (1..=n).all(|j| {
        let others = space.all_nodes().difference(crate::model::Subset::from_nodes([j]).unwrap());
        space.partial_configs(others).into_iter().all(|rest| {
            space
                .configs()
                .filter(|x| x.agrees_with(&rest))
                .any(|x| support.contains(&space.index_of(&x)))
        })
    })
}

/// Categories of the complement of a maximal structure in the 3-cube graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CubeComplement {
    Empty,
    /// Four vertices whose removal leaves two components of size 2.
    PlaneSplit,
    /// Four vertices of equal coordinate-sum parity.
    ParityClass,
    /// The three neighbours of a kept vertex.
    VertexCut,
    Unclassified,
}

impl CubeComplement {
    pub fn label(self) -> &'static str {
        match self {
            CubeComplement::Empty => "empty",
            CubeComplement::PlaneSplit => "plane leaving two components of size 2",
            CubeComplement::ParityClass => "parity class",
            CubeComplement::VertexCut => "three vertices cutting off a vertex",
            CubeComplement::Unclassified => "unclassified",
        }
    }
}

/// Tags the complement `X ∖ ∪B` of a structure by the cube taxonomy.
pub fn classify_cube_complement(
    structure: &RobustnessStructure,
    graph: &InputGraph,
) -> CubeComplement {
    let space = graph.space();
    let complement = structure.complement(graph.num_vertices());
    let support = structure.support();
    match complement.len() {
        0 => CubeComplement::Empty,
        4 => {
            let rest = components_of(graph, &support);
            let parity = |v: usize| -> u32 {
                space.config(v).coords().iter().map(|c| c - 1).sum::<u32>() % 2
            };
            if rest.num_blocks() == 2 && rest.blocks().iter().all(|b| b.len() == 2) {
                CubeComplement::PlaneSplit
            } else if complement.len() * 2 == graph.num_vertices()
                && complement.iter().all(|&v| parity(v) == parity(complement[0]))
            {
                CubeComplement::ParityClass
            } else {
                CubeComplement::Unclassified
            }
        }
        3 => {
            let cuts = support
                .iter()
                .any(|&v| graph.neighbors(v) == complement.as_slice());
            if cuts {
                CubeComplement::VertexCut
            } else {
                CubeComplement::Unclassified
            }
        }
        _ => CubeComplement::Unclassified,
    }
}
