//! The `robustci` command line.
//!
//! Exit codes: 0 ok, 1 not robust, 2 input or parse error, 3 cap exceeded,
//! 4 verification failure.

use std::ffi::OsString;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::ci::{classify_structure, robustness_report};
use crate::decomp::{decompose, DecompositionReport};
use crate::error::{Error, Result};
use crate::gibbs::{
    alpha_coefficient, check_robust_at, gibbs_modalities, is_rk_robust_at, k_interaction_decompose,
    moebius_potentials, potential_robustness_criterion, tilde_report, FunctionalModalities,
};
use crate::graph::{
    build_graph, check_product_form, classify_cube_complement, components_of, enumerate_maximal_structures,
    is_maximal, search_maximal_structures, InputGraph, RobustnessStructure, MAX_ENUMERATION_CAP,
    MAX_MASK_VERTICES,
};
use crate::ideal::{
    basis_to_text, element_records, groebner_set, polynomials, verify_groebner_set, AntitoneRange,
    GroebnerCheck,
};
use crate::model::{format_rational, validate_distribution, JointDistribution, Model, StateSpace};
use crate::poly::Caps;

pub const EXIT_OK: i32 = 0;
pub const EXIT_NOT_ROBUST: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_CAP: i32 = 3;
pub const EXIT_VERIFY: i32 = 4;

/// Absolute ceiling for `--cap-spairs`.
pub const MAX_SPAIR_CAP: usize = 1_000_000;
/// Largest vertex count accepted by `groebner --all-graphs`.
pub const MAX_BATCH_VERTICES: usize = 5;

#[derive(Debug, Parser)]
#[command(name = "robustci", version, about = "Robustness structures, CI checks and binomial edge ideals")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write the result here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Largest graph handled by enumeration.
    #[arg(long, global = true, default_value_t = 20)]
    pub cap_vertices: usize,
    /// Largest number of S-pairs reduced by Buchberger's algorithm.
    #[arg(long, global = true, default_value_t = 50_000)]
    pub cap_spairs: usize,
    /// Replace the model's spec by the uniform spec of this order; for
    /// `gibbs`, the interaction order to test.
    #[arg(long, global = true)]
    pub k: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Antitone {
    EndpointInclusive,
    Literal,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build the graph of a model.
    Graph {
        #[arg(long)]
        model: PathBuf,
    },
    /// List robustness structures of a model.
    Structures {
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        maximal_only: bool,
        /// Tag complements by the cube taxonomy.
        #[arg(long)]
        classify_complements: bool,
    },
    /// Check a distribution against a model's spec.
    Check {
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        dist: PathBuf,
    },
    /// Compute the combinatorial Gröbner basis of the binomial edge ideal.
    Groebner {
        #[arg(long, conflicts_with = "graph")]
        model: Option<PathBuf>,
        #[arg(long)]
        graph: Option<PathBuf>,
        #[arg(long, default_value_t = 2)]
        d0: u32,
        /// Run reducedness, Buchberger and oracle checks.
        #[arg(long)]
        verify: bool,
        /// Verify every labeled graph on this many vertices.
        #[arg(long, conflicts_with_all = ["model", "graph"])]
        all_graphs: Option<usize>,
        #[arg(long, value_enum, default_value_t = Antitone::EndpointInclusive)]
        antitone: Antitone,
    },
    /// Check the decomposition of the binomial edge variety.
    Decompose {
        #[arg(long, conflicts_with = "graph")]
        model: Option<PathBuf>,
        #[arg(long)]
        graph: Option<PathBuf>,
        #[arg(long, default_value_t = 2)]
        d0: u32,
        #[arg(long, default_value_t = 100)]
        trials: usize,
    },
    /// Möbius round trip, robustness table and interaction checks for
    /// functional modalities.
    Gibbs {
        #[arg(long, conflicts_with = "neuron")]
        modalities: Option<PathBuf>,
        /// Comma-separated weights of a logistic neuron.
        #[arg(long, allow_hyphen_values = true)]
        neuron: Option<String>,
        /// Coefficient triples `a,c,k` to tabulate.
        #[arg(long)]
        alpha: Vec<String>,
    },
}

/// Output of a subcommand before it is written.
struct Outcome {
    body: String,
    code: i32,
}

/// Runs the command line and returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(err) => {
            let _ = err.print();
            return if err.use_stderr() { EXIT_INPUT } else { EXIT_OK };
        }
    };
    if let Some(n) = std::env::var("ROBUSTCI_THREADS").ok().and_then(|v| v.parse::<usize>().ok()) {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
    match execute(&cli) {
        Ok(outcome) => match emit(cli.out.as_deref(), &outcome.body) {
            Ok(()) => outcome.code,
            Err(err) => {
                eprintln!("error: {err}");
                EXIT_INPUT
            }
        },
        Err(err) => {
            eprintln!("error: {err}");
            exit_code(&err)
        }
    }
}

pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Resource(_) => EXIT_CAP,
        Error::Contract(_) => EXIT_VERIFY,
        Error::Input(_) | Error::Parse(_) | Error::Domain(_) | Error::Io(_) => EXIT_INPUT,
    }
}

/// Writes to a temporary file next to `out` and renames it into place.
fn emit(out: Option<&Path>, body: &str) -> Result<()> {
    match out {
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(body.as_bytes())?;
            stdout.flush()?;
        }
        Some(path) => {
            let dir = match path.parent() {
                Some(p) if !p.as_os_str().is_empty() => p,
                _ => Path::new("."),
            };
            let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
            tmp.write_all(body.as_bytes())?;
            tmp.persist(path).map_err(|e| Error::Io(e.error))?;
        }
    }
    Ok(())
}

fn execute(cli: &Cli) -> Result<Outcome> {
    let caps = Caps {
        max_pairs: cli.cap_spairs.min(MAX_SPAIR_CAP),
        max_terms: Caps::default().max_terms,
    };
    match &cli.command {
        Command::Graph { model } => cmd_graph(cli, &load_model(model, cli.k)?),
        Command::Structures {
            model,
            maximal_only,
            classify_complements,
        } => cmd_structures(cli, &load_model(model, cli.k)?, *maximal_only, *classify_complements),
        Command::Check { model, dist } => cmd_check(cli, &load_model(model, cli.k)?, dist),
        Command::Groebner {
            model,
            graph,
            d0,
            verify,
            all_graphs,
            antitone,
        } => {
            let range = match antitone {
                Antitone::EndpointInclusive => AntitoneRange::EndpointInclusive,
                Antitone::Literal => AntitoneRange::Literal,
            };
            match all_graphs {
                Some(n) => cmd_groebner_batch(cli, *n, *d0, range, caps),
                None => {
                    let g = load_graph(model.as_deref(), graph.as_deref(), cli.k)?;
                    cmd_groebner(cli, &g, *d0, *verify, range, caps)
                }
            }
        }
        Command::Decompose { model, graph, d0, trials } => {
            let g = load_graph(model.as_deref(), graph.as_deref(), cli.k)?;
            cmd_decompose(cli, &g, *d0, *trials, caps)
        }
        Command::Gibbs {
            modalities,
            neuron,
            alpha,
        } => cmd_gibbs(cli, modalities.as_deref(), neuron.as_deref(), alpha),
    }
}

fn load_model(path: &Path, k: Option<usize>) -> Result<Model> {
    let model = Model::from_file(path)?;
    match k {
        Some(k) => Model::uniform(model.space, k),
        None => Ok(model),
    }
}

fn load_graph(model: Option<&Path>, graph: Option<&Path>, k: Option<usize>) -> Result<InputGraph> {
    match (model, graph) {
        (Some(m), None) => {
            let model = load_model(m, k)?;
            Ok(build_graph(&model.spec, &model.space))
        }
        (None, Some(g)) => InputGraph::from_json(&std::fs::read_to_string(g)?),
        _ => Err(Error::Input("pass exactly one of --model and --graph".into())),
    }
}

fn render(cli: &Cli, value: &Value, text: impl FnOnce() -> String) -> String {
    match cli.format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(value).expect("json value");
            s.push('\n');
            s
        }
        Format::Text => text(),
    }
}

fn ok(body: String) -> Result<Outcome> {
    Ok(Outcome { body, code: EXIT_OK })
}

fn cmd_graph(cli: &Cli, model: &Model) -> Result<Outcome> {
    let graph = build_graph(&model.spec, &model.space);
    let value: Value = serde_json::from_str(&graph.to_json())?;
    ok(render(cli, &value, || {
        let space = graph.space();
        let mut out = format!("{} vertices, {} edges\n", graph.num_vertices(), graph.num_edges());
        for (u, v) in graph.edges() {
            let w = graph.witness(u, v).map(|w| w.to_string()).unwrap_or_default();
            out.push_str(&format!("{} -- {}  {}\n", space.config(u), space.config(v), w));
        }
        out
    }))
}

fn cmd_structures(cli: &Cli, model: &Model, maximal_only: bool, classify: bool) -> Result<Outcome> {
    let graph = build_graph(&model.spec, &model.space);
    let n = graph.num_vertices();
    let cap = cli.cap_vertices.min(MAX_MASK_VERTICES);
    if n > cap {
        return Err(Error::Resource(format!("{n} vertices exceed the vertex cap of {cap}")));
    }
    let structures: Vec<RobustnessStructure> = if maximal_only {
        if n <= MAX_ENUMERATION_CAP {
            enumerate_maximal_structures(&graph, cap)?
        } else {
            search_maximal_structures(&graph)?
        }
    } else {
        if n > MAX_ENUMERATION_CAP {
            return Err(Error::Resource(format!(
                "listing all structures needs at most {MAX_ENUMERATION_CAP} vertices"
            )));
        }
        let mut all: Vec<RobustnessStructure> = (0u64..1 << n)
            .map(|mask| {
                let y: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
                components_of(&graph, &y)
            })
            .collect();
        all.sort();
        all
    };
    let space = &model.space;
    let rows: Vec<Value> = structures
        .iter()
        .map(|st| {
            let mut row = json!({
                "blocks": st.to_record(space).blocks,
                "maximal": is_maximal(st, &graph).unwrap_or(false),
                "product_form": check_product_form(st, space),
            });
            if classify {
                row["complement_class"] = json!(classify_cube_complement(st, &graph).label());
            }
            row
        })
        .collect();
    let value = json!({ "count": structures.len(), "structures": rows });
    ok(render(cli, &value, || {
        let mut out = format!("{} structures\n", structures.len());
        for st in &structures {
            out.push_str(&st.describe(space));
            if classify {
                out.push_str(&format!("  [{}]", classify_cube_complement(st, &graph).label()));
            }
            out.push('\n');
        }
        out
    }))
}

fn cmd_check(cli: &Cli, model: &Model, dist_path: &Path) -> Result<Outcome> {
    let space = &model.space;
    let dist = JointDistribution::from_file(space, dist_path)?;
    if let Err(violation) = validate_distribution(&dist, space) {
        return Err(Error::Input(format!("invalid distribution: {violation}")));
    }
    let report = robustness_report(&dist, &model.spec);
    let graph = build_graph(&model.spec, space);
    let structure = classify_structure(&dist, &graph);
    let value = json!({
        "robust": report.robust,
        "structure": structure.to_record(space).blocks,
        "failing_statement": report.failing_statement,
    });
    let body = render(cli, &value, || {
        let mut out = format!("robust: {}\nstructure: {}\n", report.robust, structure.describe(space));
        if let Some(f) = &report.failing_statement {
            out.push_str(&format!("failing: {}\n", serde_json::to_string(f).expect("record")));
        }
        out
    });
    Ok(Outcome {
        body,
        code: if report.robust { EXIT_OK } else { EXIT_NOT_ROBUST },
    })
}

fn check_value(c: &GroebnerCheck) -> Value {
    let mut v = serde_json::to_value(c).expect("check serializes");
    v["all_pass"] = json!(c.all_pass());
    v
}

fn check_text(c: &GroebnerCheck) -> String {
    let mark = |b: bool| if b { "pass" } else { "FAIL" };
    format!(
        "# buchberger_criterion: {}\n# reduced: {}\n# squarefree_initial_terms: {}\n# bihomogeneous: {}\n# elements_in_ideal: {}\n# oracle_equal: {}\n",
        mark(c.buchberger_criterion),
        mark(c.reduced),
        mark(c.squarefree_initial_terms),
        mark(c.bihomogeneous),
        mark(c.elements_in_ideal),
        mark(c.oracle_equal)
    )
}

fn cmd_groebner(
    cli: &Cli,
    graph: &InputGraph,
    d0: u32,
    verify: bool,
    range: AntitoneRange,
    caps: Caps,
) -> Result<Outcome> {
    let elements = groebner_set(graph, d0, range, cli.cap_vertices)?;
    let check = if verify {
        Some(verify_groebner_set(graph, d0, range, caps)?)
    } else {
        None
    };
    let mut value = json!({
        "d0": d0,
        "antitone": range.label(),
        "elements": element_records(&elements, graph, d0),
    });
    if let Some(c) = &check {
        value["verification"] = check_value(c);
    }
    let body = render(cli, &value, || {
        let mut out = basis_to_text(&polynomials(&elements), graph, d0);
        if let Some(c) = &check {
            out.push_str(&check_text(c));
        }
        out
    });
    let failed = check.as_ref().is_some_and(|c| !c.all_pass());
    Ok(Outcome {
        body,
        code: if failed { EXIT_VERIFY } else { EXIT_OK },
    })
}

/// All labeled graphs on `n` vertices, by edge bitmask.
pub fn all_labeled_graphs(n: usize) -> Result<Vec<InputGraph>> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    (0u64..1 << pairs.len())
        .map(|mask| {
            let edges: Vec<_> = (0..pairs.len()).filter(|&k| mask >> k & 1 == 1).map(|k| pairs[k]).collect();
            InputGraph::from_edges(n, &edges)
        })
        .collect()
}

fn cmd_groebner_batch(cli: &Cli, n: usize, d0: u32, range: AntitoneRange, caps: Caps) -> Result<Outcome> {
    if n == 0 || n > MAX_BATCH_VERTICES {
        return Err(Error::Resource(format!("--all-graphs accepts 1..={MAX_BATCH_VERTICES} vertices")));
    }
    let graphs = all_labeled_graphs(n)?;
    let mut failures = Vec::new();
    for g in &graphs {
        let c = verify_groebner_set(g, d0, range, caps)?;
        if !c.all_pass() {
            failures.push(json!({ "edges": g.edges().collect::<Vec<_>>(), "verification": check_value(&c) }));
        }
    }
    let passed = graphs.len() - failures.len();
    let value = json!({
        "vertices": n,
        "d0": d0,
        "antitone": range.label(),
        "graphs": graphs.len(),
        "passed": passed,
        "failures": failures,
    });
    let body = render(cli, &value, || {
        format!("{passed}/{} graphs on {n} vertices pass (d0={d0}, {})\n", graphs.len(), range.label())
    });
    Ok(Outcome {
        body,
        code: if failures.is_empty() { EXIT_OK } else { EXIT_VERIFY },
    })
}

fn decomposition_text(report: &DecompositionReport) -> String {
    let mut out = format!("{} admissible sets\n", report.admissible_y.len());
    for y in &report.admissible_y {
        let cols: Vec<String> = y
            .iter()
            .map(|c| format!("({})", c.iter().map(u32::to_string).collect::<Vec<_>>().join(",")))
            .collect();
        out.push_str(&format!("  {{{}}}\n", cols.join(",")));
    }
    let legs = serde_json::to_value(&report.legs).expect("legs");
    for key in ["non_containment", "membership", "intersection_equality"] {
        out.push_str(&format!("{key}: {}\n", legs[key]));
    }
    out.push_str(&format!("counterexamples: {}\n", report.counterexamples.len()));
    out
}

fn cmd_decompose(cli: &Cli, graph: &InputGraph, d0: u32, trials: usize, caps: Caps) -> Result<Outcome> {
    let report = decompose(graph, d0, trials, cli.seed, caps)?;
    let value = serde_json::to_value(&report).expect("report serializes");
    let body = render(cli, &value, || decomposition_text(&report));
    Ok(Outcome {
        body,
        code: if report.passed() { EXIT_OK } else { EXIT_VERIFY },
    })
}

fn parse_list<T: std::str::FromStr>(text: &str, what: &str) -> Result<Vec<T>> {
    text.split(',')
        .map(|s| s.trim().parse::<T>().map_err(|_| Error::Parse(format!("bad {what} entry {s:?}"))))
        .collect()
}

fn cmd_gibbs(cli: &Cli, modalities: Option<&Path>, neuron: Option<&str>, alpha: &[String]) -> Result<Outcome> {
    let mods = match (modalities, neuron) {
        (Some(p), None) => FunctionalModalities::from_json(&std::fs::read_to_string(p)?)?,
        (None, Some(w)) => FunctionalModalities::neuron(&parse_list::<f64>(w, "weight")?)?,
        _ => return Err(Error::Input("pass exactly one of --modalities and --neuron".into())),
    };
    let space: &StateSpace = mods.space();
    let pots = moebius_potentials(&mods)?;
    let round_trip = mods.sup_distance(&gibbs_modalities(&pots)?);

    let mut table = Vec::new();
    for x in space.configs() {
        for s in space.all_nodes().subsets() {
            table.push(json!({
                "x": x.coords(),
                "S": s.nodes().collect::<Vec<_>>(),
                "robust": check_robust_at(&mods, &x, s),
                "potential_criterion": potential_robustness_criterion(&pots, &x, s),
            }));
        }
    }

    let mut alphas = Vec::new();
    for triple in alpha {
        let v = parse_list::<usize>(triple, "alpha")?;
        let [a, c, k] = v[..] else {
            return Err(Error::Parse(format!("alpha needs a,c,k, got {triple:?}")));
        };
        alphas.push(json!({ "a": a, "c": c, "k": k, "alpha": format_rational(&alpha_coefficient(a, c, k)?) }));
    }

    let interaction = match cli.k {
        None => Value::Null,
        Some(k) => {
            let dec = k_interaction_decompose(&mods, k)?;
            let robust_everywhere = space.configs().all(|x| is_rk_robust_at(&mods, &x, k));
            let reconstruction = if robust_everywhere {
                let mut worst: f64 = 0.0;
                for a in space.all_nodes().subsets() {
                    for x in space.configs() {
                        let phi = pots.potential(a);
                        let want = phi.row(phi.row_of(&x));
                        let got = dec.reconstruct(a, &x);
                        for (p, q) in want.iter().zip(&got) {
                            worst = worst.max((p - q).abs());
                        }
                    }
                }
                json!(worst)
            } else {
                Value::Null
            };
            json!({
                "k": k,
                "rk_robust_everywhere": robust_everywhere,
                "reconstruction_error": reconstruction,
                "constraints": tilde_report(&dec),
            })
        }
    };

    let value = json!({
        "n": space.num_inputs(),
        "round_trip_error": round_trip,
        "robustness": table,
        "alpha": alphas,
        "k_interaction": interaction,
    });
    ok(render(cli, &value, || {
        let mut out = format!("round-trip sup error: {round_trip:e}\n");
        for row in &table {
            out.push_str(&format!(
                "x={} S={} robust={}\n",
                row["x"], row["S"], row["robust"]
            ));
        }
        for a in &alphas {
            out.push_str(&format!("alpha({},{},{}) = {}\n", a["a"], a["c"], a["k"], a["alpha"].as_str().unwrap_or("")));
        }
        if !interaction.is_null() {
            out.push_str(&format!("k-interaction: {interaction}\n"));
        }
        out
    }))
}
