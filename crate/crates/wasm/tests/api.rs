//! The exported functions are plain functions off-wasm; exercise them the
//! way the page does and check the JSON they hand back.

use serde_json::Value;
use tourlab_wasm::{explore_tours, search_demo, sweep_demo};

#[test]
fn explore_tours_returns_consistent_json() {
    let v: Value = serde_json::from_str(&explore_tours(42, 7, "nn")).unwrap();
    assert!(v.get("error").is_none(), "{v}");
    assert_eq!(v["p"], 7);
    assert_eq!(v["points"].as_array().unwrap().len(), 7);
    assert_eq!(v["tour"].as_array().unwrap().len(), 7);
    let tour_w = v["tour_weight"].as_f64().unwrap();
    let opt_w = v["optimal_weight"].as_f64().unwrap();
    let lb = v["lower_bound"].as_f64().unwrap();
    assert!(opt_w <= tour_w + 1e-9);
    assert!(lb <= opt_w + 1e-9);
    assert!(v["gap_bound"].as_f64().unwrap() >= 0.0);
}

#[test]
fn explore_tours_is_deterministic() {
    assert_eq!(explore_tours(3, 6, "contract"), explore_tours(3, 6, "contract"));
}

#[test]
fn explore_tours_rejects_unknown_algorithms() {
    let v: Value = serde_json::from_str(&explore_tours(1, 6, "magic")).unwrap();
    assert!(v["error"].as_str().unwrap().contains("magic"));
}

#[test]
fn all_algorithms_run() {
    for algo in ["nn", "mnn-include", "mnn-exclude", "contract", "sweep", "cutset"] {
        let v: Value = serde_json::from_str(&explore_tours(9, 6, algo)).unwrap();
        assert!(v.get("error").is_none(), "algo {algo}: {v}");
        let tour_w = v["tour_weight"].as_f64().unwrap();
        let opt_w = v["optimal_weight"].as_f64().unwrap();
        assert!(opt_w <= tour_w + 1e-9, "algo {algo}");
    }
}

#[test]
fn sweep_demo_frames_all_points() {
    let v: Value = serde_json::from_str(&sweep_demo(5, 8)).unwrap();
    assert!(v.get("error").is_none(), "{v}");
    let (cx, cy) = (v["center"][0].as_f64().unwrap(), v["center"][1].as_f64().unwrap());
    let r = v["radius"].as_f64().unwrap();
    for pt in v["points"].as_array().unwrap() {
        let (x, y) = (pt[0].as_f64().unwrap(), pt[1].as_f64().unwrap());
        let d = ((x - cx).powi(2) + (y - cy).powi(2)).sqrt();
        assert!(d <= r + 1e-9);
    }
    assert!(v["sweep_weight"].as_f64().unwrap() >= v["optimal_weight"].as_f64().unwrap() - 1e-9);
}

#[test]
fn search_demo_agrees_across_procedures() {
    let v: Value = serde_json::from_str(&search_demo(4, 11)).unwrap();
    assert_eq!(v["bitwise"]["found"], 11);
    assert_eq!(v["classical"]["found"], 11);
    let amps = v["one_step_amplitudes"].as_array().unwrap();
    assert_eq!(amps.len(), 16);
    assert!((amps[11].as_f64().unwrap() - 3.5).abs() < 1e-9);
    let nu = v["nonunitary_amplitudes"].as_array().unwrap();
    assert!((nu[11].as_f64().unwrap() - 1.0).abs() < 1e-9);
    assert_eq!(v["bitwise"]["trace"].as_array().unwrap().len(), 4);
}

#[test]
fn search_demo_clamps_out_of_range_targets() {
    let v: Value = serde_json::from_str(&search_demo(3, 250)).unwrap();
    assert_eq!(v["target"], 7);
    assert_eq!(v["bitwise"]["found"], 7);
}
