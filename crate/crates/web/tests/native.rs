use cyclocode_web::{
    character_sums_json, weight_distribution_json, weight_hierarchy_json, MAX_ORDER,
};
use serde_json::Value;

fn parse(s: String) -> Value {
    serde_json::from_str(&s).unwrap()
}

#[test]
fn flagship_weights() {
    let v = parse(weight_distribution_json(2, 1, 6, 3, "0").unwrap());
    assert_eq!(v["n"], 21);
    assert_eq!(v["rank"], 6);
    assert_eq!(v["distribution"]["8"], 21);
    assert_eq!(v["distribution"]["12"], 42);
    assert_eq!(v["table_match"], true);
}

#[test]
fn flagship_hierarchy() {
    let v = parse(weight_hierarchy_json(2, 1, 6, 3, "0").unwrap());
    let levels = v["levels"].as_array().unwrap();
    let d: Vec<u64> = levels
        .iter()
        .map(|l| l["direct"].as_u64().unwrap())
        .collect();
    assert_eq!(d, [8, 12, 14, 18, 20, 21]);
    for l in levels {
        for k in ["thm1", "gauss", "period", "closed_form"] {
            assert_eq!(l[k], l["direct"], "{k}");
        }
    }
}

#[test]
fn sums_at_64() {
    let v = parse(character_sums_json(2, 1, 6, 3).unwrap());
    let eta: Vec<f64> = v["eta"]
        .as_array()
        .unwrap()
        .iter()
        .map(|z| z[0].as_f64().unwrap())
        .collect();
    for (a, b) in eta.iter().zip([5.0, -3.0, -3.0]) {
        assert!((a - b).abs() < 1e-9);
    }
    assert_eq!(v["eta_closed_form"][0], 5.0);
}

#[test]
fn errors_are_messages() {
    let e = weight_distribution_json(2, 1, 4, 5, "0").unwrap_err();
    assert!(e.contains("HOutOfRange"), "{e}");
    assert!(weight_distribution_json(2, 1, 6, 3, "x")
        .unwrap_err()
        .contains("bad t"));
    let too_big = weight_distribution_json(2, 1, 14, 3, "0").unwrap_err();
    assert!(too_big.contains(&MAX_ORDER.to_string()), "{too_big}");
}
