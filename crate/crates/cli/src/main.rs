//! tourlab CLI: instance generation, solving, bounding, Hamiltonicity
//! decisions, search simulation, and batch solver comparisons.
//!
//! Exit codes: 0 success, 1 usage or input error, 2 search budget exhausted.

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use tourlab::bounds::build_swa;
use tourlab::cutset::{
    cutset_tsp_with_budget, decide_hamiltonian, HamiltonOutcome, SimpleGraph, SpanningTree,
};
use tourlab::exact::{brute_force, owal_exact, DEFAULT_CANDIDATE_BUDGET};
use tourlab::heuristics::{
    angular_sweep, contraction_tour, modified_nn, nearest_neighbor, transposition_approx_v1,
    transposition_approx_v2, MnnPolicy,
};
use tourlab::search::{
    classical_bag_search, qsearch_bitwise, qsearch_nonunitary, qsearch_one_step, SearchOracle,
};
use tourlab::{gen_random_instance, Error, Instance, InstanceKind, Tour, WalkMode};

#[derive(Parser)]
#[command(
    name = "tourlab",
    version,
    about = "workbench for shortest Hamiltonian paths and circuits"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run one construction or exact solver on an instance file.
    Solve {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum)]
        algo: Algo,
        #[arg(long, value_enum, default_value = "circuit")]
        mode: Mode,
        /// Start vertex for the nearest-neighbor family.
        #[arg(long, default_value_t = 1)]
        start: usize,
        /// Criterion order for --algo mnn.
        #[arg(long, value_enum, default_value = "include-first")]
        policy: Policy,
        /// Spanning tree file for --algo cutset (default: star at vertex 1).
        #[arg(long)]
        tree: Option<PathBuf>,
        /// Candidate/node budget for the searching solvers.
        #[arg(long)]
        budget: Option<u64>,
        #[arg(long)]
        json: bool,
    },
    /// Report the row-minima lower bound, and grade a tour if one is given.
    Bound {
        #[arg(long)]
        input: PathBuf,
        /// Tour as comma-separated vertices, e.g. 1,6,5,2,3,4.
        #[arg(long)]
        tour: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// Decide whether a graph file has a Hamiltonian circuit.
    Hamiltonian {
        #[arg(long)]
        input: PathBuf,
        /// Spanning tree file (default: first-fit tree over the edge list).
        #[arg(long)]
        tree: Option<PathBuf>,
        #[arg(long)]
        budget: Option<u64>,
        #[arg(long)]
        json: bool,
    },
    /// Simulate one of the unstructured-search procedures.
    Search {
        #[arg(long, value_enum)]
        mode: SearchMode,
        /// Bag contents for classical mode, e.g. 2,11,7,5,3,6,9,4.
        #[arg(long)]
        bag: Option<String>,
        /// Qubit count for the state-vector modes.
        #[arg(long)]
        n: Option<u32>,
        #[arg(long)]
        target: u64,
        #[arg(long)]
        json: bool,
    },
    /// Write a seeded random instance file.
    Gen {
        #[arg(long)]
        seed: u64,
        /// Vertex count.
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum)]
        kind: Kind,
        #[arg(long, default_value_t = 100.0)]
        range: f64,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Run a seeded batch of solvers and emit a CSV of weights and gaps.
    Compare {
        #[arg(long, default_value_t = 4)]
        p_min: usize,
        #[arg(long, default_value_t = 8)]
        p_max: usize,
        /// Seeds per (p, kind) cell.
        #[arg(long, default_value_t = 5)]
        seeds: u64,
        #[arg(long, value_enum, default_value = "both")]
        kind: BatchKind,
        /// Node budget for the cutset search per cell.
        #[arg(long, default_value_t = 100_000)]
        budget: u64,
        /// CSV destination (stdout when omitted).
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Algo {
    Nn,
    Mnn,
    Contract,
    Sweep,
    Cutset,
    Tpv1,
    Tpv2,
    #[value(name = "owal-exact")]
    OwalExact,
    Brute,
}

impl Algo {
    fn name(self) -> &'static str {
        match self {
            Algo::Nn => "nn",
            Algo::Mnn => "mnn",
            Algo::Contract => "contract",
            Algo::Sweep => "sweep",
            Algo::Cutset => "cutset",
            Algo::Tpv1 => "tpv1",
            Algo::Tpv2 => "tpv2",
            Algo::OwalExact => "owal-exact",
            Algo::Brute => "brute",
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Path,
    Circuit,
}

impl From<Mode> for WalkMode {
    fn from(m: Mode) -> WalkMode {
        match m {
            Mode::Path => WalkMode::Path,
            Mode::Circuit => WalkMode::Circuit,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Policy {
    IncludeFirst,
    ExcludeFirst,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SearchMode {
    Classical,
    Q1,
    Q2,
    Q3,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Kind {
    Uniform,
    Euclidean,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum BatchKind {
    Uniform,
    Euclidean,
    Both,
}

struct Failure {
    code: u8,
    msg: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        let code = match e {
            Error::BudgetExhausted { .. } | Error::GreedyStuck { .. } => 2,
            _ => 1,
        };
        Failure { code, msg: e.to_string() }
    }
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure { code: 1, msg: msg.into() }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.msg);
            ExitCode::from(f.code)
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.cmd {
        Cmd::Solve { input, algo, mode, start, policy, tree, budget, json } => {
            cmd_solve(input, algo, mode, start, policy, tree, budget, json)
        }
        Cmd::Bound { input, tour, json } => cmd_bound(input, tour, json),
        Cmd::Hamiltonian { input, tree, budget, json } => {
            cmd_hamiltonian(input, tree, budget, json)
        }
        Cmd::Search { mode, bag, n, target, json } => cmd_search(mode, bag, n, target, json),
        Cmd::Gen { seed, n, kind, range, out, json } => cmd_gen(seed, n, kind, range, out, json),
        Cmd::Compare { p_min, p_max, seeds, kind, budget, out } => {
            cmd_compare(p_min, p_max, seeds, kind, budget, out)
        }
    }
}

fn parse_csv_list<T: std::str::FromStr>(s: &str, what: &str) -> Result<Vec<T>, Failure> {
    s.split(',')
        .map(|t| {
            t.trim().parse::<T>().map_err(|_| usage(format!("cannot parse {what} entry `{t}`")))
        })
        .collect()
}

fn order_string(order: &[usize]) -> String {
    order.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")
}

#[allow(clippy::too_many_arguments)]
fn cmd_solve(
    input: PathBuf,
    algo: Algo,
    mode: Mode,
    start: usize,
    policy: Policy,
    tree: Option<PathBuf>,
    budget: Option<u64>,
    json: bool,
) -> Result<(), Failure> {
    let inst = Instance::load(&input)?;
    let walk: WalkMode = mode.into();
    let t0 = Instant::now();

    // (order, weight, candidates, relabeled)
    let circuit_only = |m: Mode, name: &str| -> Result<(), Failure> {
        if m != Mode::Circuit {
            return Err(usage(format!("--algo {name} only builds circuits; use --mode circuit")));
        }
        Ok(())
    };
    let (order, weight, candidates, relabeled): (Vec<usize>, f64, Option<u64>, bool) = match algo {
        Algo::Nn => {
            circuit_only(mode, "nn")?;
            let t = nearest_neighbor(&inst, start)?;
            (t.order().to_vec(), t.weight(), None, false)
        }
        Algo::Mnn => {
            circuit_only(mode, "mnn")?;
            let p = match policy {
                Policy::IncludeFirst => MnnPolicy::IncludeFirst,
                Policy::ExcludeFirst => MnnPolicy::ExcludeFirst,
            };
            let t = modified_nn(&inst, p, start)?;
            (t.order().to_vec(), t.weight(), None, false)
        }
        Algo::Contract => {
            circuit_only(mode, "contract")?;
            let t = contraction_tour(&inst)?;
            (t.order().to_vec(), t.weight(), None, false)
        }
        Algo::Sweep => {
            circuit_only(mode, "sweep")?;
            let t = angular_sweep(&inst)?;
            (t.order().to_vec(), t.weight(), None, false)
        }
        Algo::Cutset => {
            circuit_only(mode, "cutset")?;
            let pairs = match &tree {
                Some(path) => {
                    let g = SimpleGraph::complete_from(&inst);
                    let t = SpanningTree::load(&g, path)?;
                    t.branch_ids()
                        .iter()
                        .map(|&ix| (g.edge(ix).u, g.edge(ix).v))
                        .collect::<Vec<_>>()
                }
                None => (2..=inst.p()).map(|v| (1, v)).collect(),
            };
            let t = cutset_tsp_with_budget(
                &inst,
                &pairs,
                budget.unwrap_or(tourlab::cutset::DEFAULT_NODE_BUDGET),
            )?;
            (t.order().to_vec(), t.weight(), None, false)
        }
        Algo::Tpv1 | Algo::Tpv2 => {
            if mode != Mode::Path {
                return Err(usage(format!(
                    "--algo {} relabels the instance and reports its diagonal path; use --mode path",
                    algo.name()
                )));
            }
            let (_, path) = if algo == Algo::Tpv1 {
                transposition_approx_v1(&inst)?
            } else {
                transposition_approx_v2(&inst)?
            };
            (path.order().to_vec(), path.weight(), None, true)
        }
        Algo::OwalExact => {
            let r = owal_exact(&inst, walk, budget.unwrap_or(DEFAULT_CANDIDATE_BUDGET))?;
            (r.solution.order().to_vec(), r.weight, Some(r.candidates_checked), false)
        }
        Algo::Brute => {
            let r = brute_force(&inst, walk)?;
            (r.solution.order().to_vec(), r.weight, Some(r.candidates_checked), false)
        }
    };
    let elapsed_ms = t0.elapsed().as_secs_f64() * 1e3;

    if json {
        let mut obj = json!({
            "schema": 1,
            "command": "solve",
            "instance": inst.name(),
            "p": inst.p(),
            "algo": algo.name(),
            "mode": match mode { Mode::Path => "path", Mode::Circuit => "circuit" },
            "order": order,
            "weight": weight,
            "elapsed_ms": elapsed_ms,
        });
        if let Some(c) = candidates {
            obj["candidates"] = json!(c);
        }
        if relabeled {
            obj["relabeled"] = json!(true);
        }
        println!("{obj}");
    } else {
        println!("instance: {} (p = {})", inst.name(), inst.p());
        println!(
            "algorithm: {}, mode: {}",
            algo.name(),
            if mode == Mode::Path { "path" } else { "circuit" }
        );
        if relabeled {
            println!("order (relabeled vertices): {}", order_string(&order));
        } else {
            println!("order: {}", order_string(&order));
        }
        println!("weight: {weight}");
        if let Some(c) = candidates {
            println!("candidates: {c}");
        }
        println!("elapsed_ms: {elapsed_ms:.3}");
    }
    Ok(())
}

fn cmd_bound(input: PathBuf, tour: Option<String>, json: bool) -> Result<(), Failure> {
    let inst = Instance::load(&input)?;
    let swa = build_swa(&inst);
    let lb = swa.first_array_lower_bound();
    let first_array_ham = swa.first_array_is_hamiltonian();
    let graded = match tour {
        Some(s) => {
            let order: Vec<usize> = parse_csv_list(&s, "tour")?;
            let t = Tour::new(&inst, order)?;
            let gap = swa.gap_bound(&t)?;
            Some((t, gap))
        }
        None => None,
    };
    if json {
        let mut obj = json!({
            "schema": 1,
            "command": "bound",
            "instance": inst.name(),
            "p": inst.p(),
            "lower_bound": lb,
            "first_array_hamiltonian": first_array_ham,
        });
        if let Some((t, gap)) = &graded {
            obj["tour"] = json!(t.order());
            obj["tour_weight"] = json!(t.weight());
            obj["gap_bound"] = json!(gap);
        }
        println!("{obj}");
    } else {
        println!("instance: {} (p = {})", inst.name(), inst.p());
        println!("lower_bound: {lb}");
        println!("first_array_hamiltonian: {first_array_ham}");
        if let Some((t, gap)) = graded {
            println!("tour_weight: {}", t.weight());
            println!("gap_bound: {gap}");
        }
    }
    Ok(())
}

fn cmd_hamiltonian(
    input: PathBuf,
    tree: Option<PathBuf>,
    budget: Option<u64>,
    json: bool,
) -> Result<(), Failure> {
    let g = SimpleGraph::load(&input)?;
    if !g.is_connected() {
        return Err(usage("graph is not connected"));
    }
    let t = match tree {
        Some(path) => SpanningTree::load(&g, path)?,
        None => {
            // first-fit spanning tree over the edge list
            let mut parent: Vec<usize> = (0..g.p()).collect();
            fn root(parent: &mut [usize], mut v: usize) -> usize {
                while parent[v] != v {
                    parent[v] = parent[parent[v]];
                    v = parent[v];
                }
                v
            }
            let mut ids = Vec::new();
            for (ix, e) in g.edges().iter().enumerate() {
                let (ru, rv) = (root(&mut parent, e.u - 1), root(&mut parent, e.v - 1));
                if ru != rv {
                    parent[ru] = rv;
                    ids.push(ix);
                }
            }
            SpanningTree::new(&g, ids)?
        }
    };
    let budget = budget.unwrap_or(tourlab::cutset::DEFAULT_NODE_BUDGET);
    let outcome = decide_hamiltonian(&g, &t, budget)?;
    match outcome {
        HamiltonOutcome::Found { selection, circuit, nodes } => {
            let chords: Vec<String> = selection.chords.iter().map(|&ix| g.edge_name(ix)).collect();
            let branches: Vec<String> =
                selection.branches.iter().map(|&ix| g.edge_name(ix)).collect();
            if json {
                println!(
                    "{}",
                    json!({
                        "schema": 1,
                        "command": "hamiltonian",
                        "answer": "YES",
                        "circuit": circuit,
                        "chords": chords,
                        "branches": branches,
                        "nodes": nodes,
                    })
                );
            } else {
                println!("YES");
                println!("circuit: {}", order_string(&circuit));
                println!("chords: {}", chords.join(" "));
                println!("branches: {}", branches.join(" "));
                println!("nodes: {nodes}");
            }
            Ok(())
        }
        HamiltonOutcome::NotHamiltonian { nodes } => {
            if json {
                println!(
                    "{}",
                    json!({
                        "schema": 1,
                        "command": "hamiltonian",
                        "answer": "NO",
                        "nodes": nodes,
                    })
                );
            } else {
                println!("NO");
                println!("nodes: {nodes}");
            }
            Ok(())
        }
        HamiltonOutcome::BudgetExhausted { nodes } => {
            if json {
                println!(
                    "{}",
                    json!({
                        "schema": 1,
                        "command": "hamiltonian",
                        "answer": "BUDGET",
                        "nodes": nodes,
                    })
                );
            } else {
                println!("BUDGET");
                println!("nodes: {nodes}");
            }
            Err(Failure { code: 2, msg: format!("budget exhausted after {nodes} nodes") })
        }
    }
}

fn cmd_search(
    mode: SearchMode,
    bag: Option<String>,
    n: Option<u32>,
    target: u64,
    json: bool,
) -> Result<(), Failure> {
    match mode {
        SearchMode::Classical => {
            let bag_str = bag.ok_or_else(|| usage("--mode classical needs --bag"))?;
            let items: Vec<u64> = parse_csv_list(&bag_str, "bag")?;
            let (found, splits) = classical_bag_search(&items, target)?;
            if json {
                let trace: Vec<_> = splits
                    .iter()
                    .enumerate()
                    .map(|(k, s)| json!({"k": k + 1, "tested": s.tested, "inner_product": s.inner_product}))
                    .collect();
                println!(
                    "{}",
                    json!({
                        "schema": 1,
                        "command": "search",
                        "mode": "classical",
                        "target": target,
                        "found": found,
                        "splits": trace,
                    })
                );
            } else {
                for (k, s) in splits.iter().enumerate() {
                    println!(
                        "{} {{{}}} {}",
                        k + 1,
                        s.tested.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","),
                        s.inner_product
                    );
                }
                println!("found: {found} in {} splits", splits.len());
            }
            Ok(())
        }
        SearchMode::Q1 => {
            let n = n.ok_or_else(|| usage("--mode q1 needs --n"))?;
            let oracle = SearchOracle::new(n, target)?;
            let (found, trace) = qsearch_bitwise(n, &oracle)?;
            if json {
                let steps: Vec<_> = trace
                    .iter()
                    .map(
                        |s| json!({"k": s.k, "prefix": s.prefix, "inner_product": s.inner_product}),
                    )
                    .collect();
                println!(
                    "{}",
                    json!({
                        "schema": 1,
                        "command": "search",
                        "mode": "q1",
                        "n": n,
                        "target": target,
                        "found": found,
                        "trace": steps,
                    })
                );
            } else {
                for s in &trace {
                    println!("{} {} {}", s.k, s.prefix, s.inner_product);
                }
                println!("found: {found}");
            }
            Ok(())
        }
        SearchMode::Q2 | SearchMode::Q3 => {
            let n = n.ok_or_else(|| usage("--mode q2/q3 needs --n"))?;
            let oracle = SearchOracle::new(n, target)?;
            let state = if mode == SearchMode::Q2 {
                qsearch_one_step(n, &oracle)?
            } else {
                qsearch_nonunitary(n, &oracle)?
            };
            let amp = state.amplitude(target);
            let found = state.argmax();
            let bits = format!("{:0width$b}", found, width = n as usize);
            if json {
                println!(
                    "{}",
                    json!({
                        "schema": 1,
                        "command": "search",
                        "mode": if mode == SearchMode::Q2 { "q2" } else { "q3" },
                        "n": n,
                        "target": target,
                        "found": found,
                        "amplitude": amp,
                        "found_bits": bits,
                    })
                );
            } else {
                println!("amplitude {amp} at {bits}");
                println!("found: {found}");
            }
            Ok(())
        }
    }
}

fn cmd_gen(
    seed: u64,
    n: usize,
    kind: Kind,
    range: f64,
    out: PathBuf,
    json: bool,
) -> Result<(), Failure> {
    let kind = match kind {
        Kind::Uniform => InstanceKind::Uniform,
        Kind::Euclidean => InstanceKind::Euclidean,
    };
    let inst = gen_random_instance(seed, n, kind, range)?;
    inst.save(&out)?;
    if json {
        println!(
            "{}",
            json!({
                "schema": 1,
                "command": "gen",
                "seed": seed,
                "p": n,
                "kind": kind.to_string(),
                "out": out.display().to_string(),
            })
        );
    } else {
        println!("wrote {} (p = {n}, kind = {kind}, seed = {seed})", out.display());
    }
    Ok(())
}

fn cmd_compare(
    p_min: usize,
    p_max: usize,
    seeds: u64,
    kind: BatchKind,
    budget: u64,
    out: Option<PathBuf>,
) -> Result<(), Failure> {
    if p_min < 3 || p_max < p_min {
        return Err(usage("need 3 <= p_min <= p_max"));
    }
    if p_max > tourlab::exact::BRUTE_FORCE_LIMIT {
        return Err(usage(format!(
            "p_max {} exceeds the oracle limit {}",
            p_max,
            tourlab::exact::BRUTE_FORCE_LIMIT
        )));
    }
    let kinds: &[InstanceKind] = match kind {
        BatchKind::Uniform => &[InstanceKind::Uniform],
        BatchKind::Euclidean => &[InstanceKind::Euclidean],
        BatchKind::Both => &[InstanceKind::Uniform, InstanceKind::Euclidean],
    };
    let mut csv = String::from(
        "seed,p,kind,lower_bound,brute,owal_exact,owal_candidates,nn,mnn_include,mnn_exclude,\
         contraction,cutset,sweep,tpv1_path,tpv2_path,brute_path,gap_nn,violation\n",
    );
    let mut rows = 0usize;
    let mut violations = 0usize;
    for p in p_min..=p_max {
        for seed in 0..seeds {
            for &k in kinds {
                let inst = gen_random_instance(seed, p, k, 100.0)?;
                let swa = build_swa(&inst);
                let lb = swa.first_array_lower_bound();
                let oracle = brute_force(&inst, WalkMode::Circuit)?;
                let exact = owal_exact(&inst, WalkMode::Circuit, DEFAULT_CANDIDATE_BUDGET)?;
                let nn = nearest_neighbor(&inst, 1)?;
                let mnn_i = modified_nn(&inst, MnnPolicy::IncludeFirst, 1)?;
                let mnn_e = modified_nn(&inst, MnnPolicy::ExcludeFirst, 1)?;
                let contract = contraction_tour(&inst)?;
                let star: Vec<(usize, usize)> = (2..=p).map(|v| (1, v)).collect();
                let cutset = cutset_tsp_with_budget(&inst, &star, budget)?;
                let sweep =
                    if k == InstanceKind::Euclidean { Some(angular_sweep(&inst)?) } else { None };
                let (_, tp1) = transposition_approx_v1(&inst)?;
                let (_, tp2) = transposition_approx_v2(&inst)?;
                let brute_path = brute_force(&inst, WalkMode::Path)?;
                let gap_nn = swa.gap_bound(&nn)?;

                let mut heuristic_tours = vec![&nn, &mnn_i, &mnn_e, &contract, &cutset];
                if let Some(s) = &sweep {
                    heuristic_tours.push(s);
                }
                let violated = heuristic_tours.iter().any(|t| {
                    let gap = swa.gap_bound(t).expect("same instance");
                    t.weight() - oracle.weight > gap + 1e-9
                });
                violations += violated as usize;
                rows += 1;

                csv.push_str(&format!(
                    "{seed},{p},{k},{lb},{},{},{},{},{},{},{},{},{},{},{},{},{gap_nn},{}\n",
                    oracle.weight,
                    exact.weight,
                    exact.candidates_checked,
                    nn.weight(),
                    mnn_i.weight(),
                    mnn_e.weight(),
                    contract.weight(),
                    cutset.weight(),
                    sweep.as_ref().map(|s| s.weight().to_string()).unwrap_or_default(),
                    tp1.weight(),
                    tp2.weight(),
                    brute_path.weight,
                    violated as u8
                ));
            }
        }
    }
    let rate = violations as f64 / rows.max(1) as f64;
    match out {
        Some(path) => {
            std::fs::write(&path, &csv).map_err(|e| Failure { code: 1, msg: e.to_string() })?;
            println!("wrote {} ({rows} rows, gap violation rate {rate:.4})", path.display());
        }
        None => {
            print!("{csv}");
            eprintln!("rows: {rows}, gap violation rate: {rate:.4}");
        }
    }
    Ok(())
}
