//! Shared fixtures: extra charts used by the tests and cached pipelines.

#![allow(dead_code)]

use std::collections::BTreeMap;
use std::sync::OnceLock;

use sqe::chart::{load_spec, ChartSpec};
use sqe::classify::Geometry;
use sqe::expr::{parse, Expr, ZeroCfg};

/// Flat 3-space with the unit parallel one-form dx1.
pub const FLAT3_DX1: &str = r#"{
  "name": "flat3-dx1",
  "coordinates": ["x1", "x2", "x3"],
  "parameters": {},
  "metric": [
    ["1", "0", "0"],
    ["0", "1", "0"],
    ["0", "0", "1"]
  ],
  "one_form": ["1", "0", "0"],
  "sample_ranges": {
    "x1": [-1.0, 1.0],
    "x2": [-1.0, 1.0],
    "x3": [-1.0, 1.0]
  }
}
"#;

/// Flat 3-space with a vanishing one-form (the semi-symmetric connection
/// degenerates to Levi-Civita).
pub const FLAT3_PI0: &str = r#"{
  "name": "flat3-pi0",
  "coordinates": ["x1", "x2", "x3"],
  "parameters": {},
  "metric": [
    ["1", "0", "0"],
    ["0", "1", "0"],
    ["0", "0", "1"]
  ],
  "one_form": ["0", "0", "0"],
  "sample_ranges": {
    "x1": [-1.0, 1.0],
    "x2": [-1.0, 1.0],
    "x3": [-1.0, 1.0]
  }
}
"#;

/// Product of the unit round 2-sphere with a line, generator dz: carries
/// S = (n-2)(g - pi x pi) exactly and a vanishing semi-symmetric Ricci.
pub const SPHERE_LINE: &str = r#"{
  "name": "sphere-line",
  "coordinates": ["theta", "phi", "z"],
  "parameters": {},
  "metric": [
    ["1", "0", "0"],
    ["0", "sin(theta)^2", "0"],
    ["0", "0", "1"]
  ],
  "one_form": ["0", "0", "1"],
  "sample_ranges": {
    "theta": [0.3, 2.8],
    "phi": [0.1, 6.2],
    "z": [-1.0, 1.0]
  }
}
"#;

/// Unit round 2-sphere, no one-form.
pub const SPHERE2: &str = r#"{
  "name": "sphere2",
  "coordinates": ["theta", "phi"],
  "parameters": {},
  "metric": [
    ["1", "0"],
    ["0", "sin(theta)^2"]
  ],
  "sample_ranges": {
    "theta": [0.3, 2.8],
    "phi": [0.1, 6.2]
  }
}
"#;

pub fn cfg() -> ZeroCfg {
    ZeroCfg::default()
}

pub fn chart(doc: &str) -> ChartSpec {
    load_spec(doc.as_bytes()).expect("fixture chart must load")
}

pub fn p(chart: &ChartSpec, text: &str) -> Expr {
    parse(text, &chart.symbols).expect("fixture expression must parse")
}

fn geometry_cache() -> &'static std::sync::Mutex<BTreeMap<String, &'static Geometry>> {
    static CACHE: OnceLock<std::sync::Mutex<BTreeMap<String, &'static Geometry>>> =
        OnceLock::new();
    CACHE.get_or_init(|| std::sync::Mutex::new(BTreeMap::new()))
}

/// Geometry pipeline for a chart document, computed once per test binary.
pub fn geometry(doc: &'static str) -> &'static Geometry {
    let mut cache = geometry_cache().lock().unwrap();
    let key = doc.to_string();
    if let Some(g) = cache.get(&key) {
        return g;
    }
    let geom = Box::leak(Box::new(
        Geometry::new(chart(doc), &cfg()).expect("fixture geometry must build"),
    ));
    cache.insert(key, geom);
    geom
}

pub fn schwarzschild() -> &'static Geometry {
    geometry(sqe::corpus::SCHWARZSCHILD)
}

pub fn kottler() -> &'static Geometry {
    geometry(sqe::corpus::KOTTLER)
}

pub fn example3() -> &'static Geometry {
    geometry(sqe::corpus::EXAMPLE3)
}

/// Assert that an expression is symbolically or numerically zero on the
/// chart's sample ranges.
pub fn assert_zero_on(geom: &Geometry, e: &Expr, what: &str) {
    let v = sqe::expr::is_zero(e, &geom.chart.sample_ranges, &cfg())
        .unwrap_or_else(|err| panic!("{what}: zero test errored: {err}"));
    assert!(v.passed(), "{what}: expected zero, got {v:?}");
}

/// Assert componentwise equality of a tensor against expected expression
/// strings (everything not listed must be zero).
pub fn assert_tensor_components(
    geom: &Geometry,
    tensor: &sqe::tensor::TensorField,
    expected: &[(&[usize], &str)],
) {
    for idx in tensor.indices() {
        let got = tensor.get(&idx);
        let want = expected
            .iter()
            .find(|(i, _)| *i == idx.as_slice())
            .map(|(_, s)| *s);
        match want {
            Some(text) => {
                let w = p(&geom.chart, text);
                let d = Expr::sub(got.clone(), w);
                assert_zero_on(geom, &d, &format!("component {idx:?}"));
            }
            None => {
                assert_zero_on(geom, got, &format!("component {idx:?} should be zero"));
            }
        }
    }
}
