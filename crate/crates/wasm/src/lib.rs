//! Browser bindings for the demo page. Each export takes plain numbers and
//! returns a JSON string; errors come back as `{"error": "..."}` so the page
//! never traps.

use serde_json::json;
use wasm_bindgen::prelude::*;

use tourlab::bounds::build_swa;
use tourlab::cutset::cutset_tsp_with_budget;
use tourlab::exact::{owal_exact, DEFAULT_CANDIDATE_BUDGET};
use tourlab::heuristics::{
    angular_sweep, contraction_tour, modified_nn, nearest_neighbor, sweep_frame, turning_sum,
    MnnPolicy,
};
use tourlab::search::{
    classical_bag_search, qsearch_bitwise, qsearch_nonunitary, qsearch_one_step, SearchOracle,
};
use tourlab::{gen_random_instance, Instance, InstanceKind, Tour, WalkMode};

fn err(msg: impl std::fmt::Display) -> String {
    json!({ "error": msg.to_string() }).to_string()
}

fn euclidean(seed: u32, p: u32) -> Result<Instance, String> {
    let p = p.clamp(4, 9) as usize;
    gen_random_instance(seed as u64, p, InstanceKind::Euclidean, 100.0).map_err(err)
}

fn run_heuristic(inst: &Instance, algo: &str) -> Result<Tour, String> {
    let star: Vec<(usize, usize)> = (2..=inst.p()).map(|v| (1, v)).collect();
    let tour = match algo {
        "nn" => nearest_neighbor(inst, 1),
        "mnn-include" => modified_nn(inst, MnnPolicy::IncludeFirst, 1),
        "mnn-exclude" => modified_nn(inst, MnnPolicy::ExcludeFirst, 1),
        "contract" => contraction_tour(inst),
        "sweep" => angular_sweep(inst),
        "cutset" => cutset_tsp_with_budget(inst, &star, 200_000),
        other => return Err(err(format!("unknown algorithm `{other}`"))),
    };
    tour.map_err(err)
}

/// Seeded planar instance, one chosen construction, the exact optimum, and
/// the row-minima bounds — everything the tour panel draws.
#[wasm_bindgen]
pub fn explore_tours(seed: u32, p: u32, algo: &str) -> String {
    let inst = match euclidean(seed, p) {
        Ok(i) => i,
        Err(e) => return e,
    };
    let tour = match run_heuristic(&inst, algo) {
        Ok(t) => t,
        Err(e) => return e,
    };
    let exact = match owal_exact(&inst, WalkMode::Circuit, DEFAULT_CANDIDATE_BUDGET) {
        Ok(r) => r,
        Err(e) => return err(e),
    };
    let swa = build_swa(&inst);
    let gap = match swa.gap_bound(&tour) {
        Ok(g) => g,
        Err(e) => return err(e),
    };
    json!({
        "seed": seed,
        "p": inst.p(),
        "algo": algo,
        "points": inst.coords().unwrap(),
        "tour": tour.order(),
        "tour_weight": tour.weight(),
        "optimal": exact.solution.order(),
        "optimal_weight": exact.weight,
        "candidates": exact.candidates_checked,
        "lower_bound": swa.first_array_lower_bound(),
        "gap_bound": gap,
    })
    .to_string()
}

/// Angular-sweep data: circumscribing frame, sweep tour and the optimum,
/// with both tours' total turning angles.
#[wasm_bindgen]
pub fn sweep_demo(seed: u32, p: u32) -> String {
    let inst = match euclidean(seed, p) {
        Ok(i) => i,
        Err(e) => return e,
    };
    let frame = match sweep_frame(&inst) {
        Ok(f) => f,
        Err(e) => return err(e),
    };
    let sweep = match angular_sweep(&inst) {
        Ok(t) => t,
        Err(e) => return err(e),
    };
    let exact = match owal_exact(&inst, WalkMode::Circuit, DEFAULT_CANDIDATE_BUDGET) {
        Ok(r) => r,
        Err(e) => return err(e),
    };
    let sweep_turn = turning_sum(&inst, sweep.order(), WalkMode::Circuit).unwrap_or(f64::NAN);
    let opt_turn =
        turning_sum(&inst, exact.solution.order(), WalkMode::Circuit).unwrap_or(f64::NAN);
    json!({
        "seed": seed,
        "p": inst.p(),
        "points": inst.coords().unwrap(),
        "center": frame.center,
        "radius": frame.radius,
        "sweep": sweep.order(),
        "sweep_weight": sweep.weight(),
        "sweep_turning": sweep_turn,
        "optimal": exact.solution.order(),
        "optimal_weight": exact.weight,
        "optimal_turning": opt_turn,
    })
    .to_string()
}

/// All four search procedures on the same target: the bitwise prefix trace,
/// the classical bag splits, and both one-step amplitude vectors.
#[wasm_bindgen]
pub fn search_demo(n: u32, target: u32) -> String {
    let n = n.clamp(1, 8);
    let size = 1u64 << n;
    let target = (target as u64).min(size - 1);
    let oracle = match SearchOracle::new(n, target) {
        Ok(o) => o,
        Err(e) => return err(e),
    };
    let (found, trace) = match qsearch_bitwise(n, &oracle) {
        Ok(r) => r,
        Err(e) => return err(e),
    };
    let steps: Vec<_> = trace
        .iter()
        .map(|s| json!({ "k": s.k, "prefix": s.prefix, "inner_product": s.inner_product }))
        .collect();

    // a deterministic scramble of 0..2^n for the classical bag
    let mut bag: Vec<u64> = (0..size).collect();
    let mut state = (seed_mix(n, target)).max(1);
    for i in (1..bag.len()).rev() {
        state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        bag.swap(i, (state >> 33) as usize % (i + 1));
    }
    let (classical_found, splits) = match classical_bag_search(&bag, target) {
        Ok(r) => r,
        Err(e) => return err(e),
    };
    let split_json: Vec<_> = splits
        .iter()
        .map(|s| json!({ "tested": s.tested, "inner_product": s.inner_product }))
        .collect();

    let one_step = match qsearch_one_step(n, &oracle) {
        Ok(s) => s,
        Err(e) => return err(e),
    };
    let nonunitary = match qsearch_nonunitary(n, &oracle) {
        Ok(s) => s,
        Err(e) => return err(e),
    };
    let amps_one: Vec<f64> = (0..size).map(|ix| one_step.amplitude(ix)).collect();
    let amps_nu: Vec<f64> = (0..size).map(|ix| nonunitary.amplitude(ix)).collect();

    json!({
        "n": n,
        "target": target,
        "bitwise": { "found": found, "trace": steps },
        "classical": { "found": classical_found, "bag": bag, "splits": split_json },
        "one_step_amplitudes": amps_one,
        "nonunitary_amplitudes": amps_nu,
    })
    .to_string()
}

fn seed_mix(n: u32, target: u64) -> u64 {
    (n as u64) << 32 ^ target.wrapping_mul(0x9e3779b97f4a7c15)
}
