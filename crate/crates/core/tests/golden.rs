mod common;

use common::*;
use stame_core::algebra::{FactorConfig, Ring};
use stame_core::length3::extract_l3;
use stame_core::stabilize::{stabilize_data, Certificate};

#[test]
fn nagata_renders_canonically() {
    let n = map(NAGATA, Ring::QT);
    assert_eq!(n.to_string(), NAGATA_CANONICAL);
    assert_eq!(map(NAGATA_CANONICAL, Ring::QT), n);
    assert!(agrees_numerically(&n, &map(NAGATA_CANONICAL, Ring::QT)));
}

#[test]
fn wright_composite() {
    let k = Ring::QT.fraction_field();
    let [f2, g1, f1] = WRIGHT_FACTORS.map(|s| map(s, k));
    let f = f2.compose(&g1.compose(&f1).unwrap()).unwrap().to_ring(Ring::QT).unwrap();
    assert_eq!(f.to_string(), WRIGHT_CANONICAL);
    assert_eq!(f, map(WRIGHT_FACTORED, Ring::QT));
    assert_ne!(f, map(WRIGHT_HALVED, Ring::QT));
    assert_eq!(map(WRIGHT_HALVED, Ring::QT).jacobian_det().unwrap().to_string(), "-3*t^2*X^2 + 1");
}

#[test]
fn wright_data_round_trip() {
    let f = map(WRIGHT_CANONICAL, Ring::QT);
    let data = extract_l3(&f).unwrap();
    assert_eq!(data.b.to_string(), "t^2");
    assert_eq!(data.reconstruct().unwrap(), f);
    assert_eq!(wright_data().reconstruct().unwrap(), f);
}

#[test]
fn every_family_stabilizes() {
    let cfg = FactorConfig::default();
    for (name, data) in families() {
        let f = data.reconstruct().unwrap();
        let cert = stabilize_data(&data, &cfg).unwrap_or_else(|e| panic!("{name}: {e}"));
        assert!(cert.verified, "{name}");
        assert_eq!(cert.word.eval_nested(&cert.segments).unwrap(), f.extend(cert.added_vars), "{name}");
        let back = Certificate::from_json(&cert.to_json()).unwrap();
        assert!(back.verified, "{name}: JSON round trip");
        // linear parts in A1, A2 or D add factors over K; otherwise the
        // map extracts back to data with the same reconstruction
        let linear = [(&data.a1, 0), (&data.a2, 0), (&data.d, 1)].iter().any(|(p, v)| p.terms().any(|(m, _)| m.degree() == 1 && m.exps()[*v] == 1));
        match extract_l3(&f) {
            Ok(again) => assert_eq!(again.reconstruct().unwrap(), f, "{name}"),
            Err(e) => assert!(linear, "{name}: {e}"),
        }
    }
}
