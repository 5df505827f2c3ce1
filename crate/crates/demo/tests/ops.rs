use std::path::PathBuf;

use mckay_core::config::ProjectConfig;
use mckay_demo::{default_config, fan_view, pair_verdict, shift_explorer};
use serde_json::Value;

fn json(s: String) -> Value {
    serde_json::from_str(&s).unwrap()
}

#[test]
fn default_config_matches_the_fixtures() {
    let fixtures = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures");
    let y = ProjectConfig::from_path(&fixtures.join("y.toml")).unwrap();
    let demo = ProjectConfig::parse(&default_config(), "demo", None).unwrap();
    assert_eq!(demo.group, y.group);
    assert_eq!(demo.resolve_fan().unwrap(), y.resolve_fan().unwrap());
    assert_eq!(demo.reference, y.reference);
}

#[test]
fn fan_view_of_configured_fan() {
    let v = json(fan_view(&default_config(), "", "").unwrap());
    assert_eq!(v["rays"].as_array().unwrap().len(), 10);
    assert_eq!(v["fans"][0]["cones"].as_array().unwrap().len(), 12);
    assert_eq!(v["fans"][0]["projective"], false);
    assert_eq!(v["reference"]["projective"], true);
    let e5 = &v["rays"][4];
    assert!((e5["x"].as_f64().unwrap() - 0.5).abs() < 1e-12);
}

#[test]
fn fan_view_search() {
    let v = json(fan_view(&default_config(), "1,7; 2,4; 3,9", "2,3,1").unwrap());
    assert_eq!(v["fans"].as_array().unwrap().len(), 1);
    let v = json(fan_view(&default_config(), "", "2,3,1").unwrap());
    assert_eq!(v["fans"].as_array().unwrap().len(), 5);
    assert!(fan_view(&default_config(), "1", "").is_err());
    assert!(fan_view(&default_config(), "", "0,1,2").is_err());
}

#[test]
fn sample_pair() {
    let v = json(pair_verdict(&default_config(), "S8", "S1,7").unwrap());
    assert_eq!(v["verdict"]["outcome"], "orthogonal");
    assert_eq!(v["verdict"]["components"].as_array().unwrap().len(), 4);
    let arrows = v["quiver"]["arrows"].as_array().unwrap();
    assert_eq!(arrows.len(), 36);
    assert!(arrows.iter().any(|a| a["witness"] == true));
    assert_eq!(v["orbits"]["surfaces"].as_array().unwrap().len(), 7);
    assert!(pair_verdict(&default_config(), "S99", "S1").is_err());
}

#[test]
fn shift_moves() {
    let v = json(shift_explorer(&default_config(), "").unwrap());
    assert_eq!(v["before"], v["after"]);
    assert_eq!(v["before"]["valid"], true);
    assert_eq!(v["before"]["weight"], "35");

    // Adding E4 to every nontrivial divisor raises the theta_+ weight by 11.
    let all: Vec<String> = v["characters"].as_array().unwrap()[1..]
        .iter()
        .map(|c| c.as_str().unwrap().to_string())
        .collect();
    let moved = json(shift_explorer(&default_config(), &format!("E4: {}", all.join(" "))).unwrap());
    assert_eq!(moved["after"]["weight"], "46");

    let one = json(shift_explorer(&default_config(), "E4: chi_1_0").unwrap());
    assert_eq!(one["after"]["valid"], false);
    assert!(!one["after"]["violations"].as_array().unwrap().is_empty());

    assert!(shift_explorer(&default_config(), "E4: chi_0_0").is_err());
    assert!(shift_explorer(&default_config(), "E42: chi_1_0").is_err());
    assert!(shift_explorer(&default_config(), "E4 chi_1_0").is_err());
}
