//! Built-in chart documents.

pub const SCHWARZSCHILD: &str = r#"{
  "name": "schwarzschild",
  "coordinates": ["t", "r", "theta", "phi"],
  "parameters": {
    "m": {"positive": true}
  },
  "metric": [
    ["2*m/r - 1", "0", "0", "0"],
    ["0", "-1/(2*m/r - 1)", "0", "0"],
    ["0", "0", "r^2", "0"],
    ["0", "0", "0", "r^2*sin(theta)^2"]
  ],
  "one_form": ["(2*m - r)/r", "0", "0", "0"],
  "sample_ranges": {
    "t": [0.0, 1.0],
    "r": [3.0, 10.0],
    "theta": [0.3, 2.8],
    "phi": [0.1, 6.2],
    "m": [0.5, 1.0]
  }
}
"#;

pub const KOTTLER: &str = r#"{
  "name": "kottler",
  "coordinates": ["t", "r", "theta", "phi"],
  "parameters": {
    "m": {"positive": true},
    "Lambda": {"positive": true}
  },
  "metric": [
    ["Lambda*r^2/3 + 2*m/r - 1", "0", "0", "0"],
    ["0", "-3/(Lambda*r^2 + 6*m/r - 3)", "0", "0"],
    ["0", "0", "r^2", "0"],
    ["0", "0", "0", "r^2*sin(theta)^2"]
  ],
  "one_form": ["(Lambda*r^3 + 6*m - 3*r)/(3*r)", "0", "0", "0"],
  "sample_ranges": {
    "t": [0.0, 1.0],
    "r": [3.0, 10.0],
    "theta": [0.3, 2.8],
    "phi": [0.1, 6.2],
    "m": [0.5, 1.0],
    "Lambda": [0.1, 0.5]
  }
}
"#;

pub const EXAMPLE3: &str = r#"{
  "name": "example3",
  "coordinates": ["x1", "x2", "x3"],
  "parameters": {},
  "metric": [
    ["exp(x1)", "0", "0"],
    ["0", "-exp(x1)", "0"],
    ["0", "0", "1"]
  ],
  "one_form": ["exp(x1/2 - x2/2)", "-exp(x1/2 - x2/2)", "1"],
  "sample_ranges": {
    "x1": [-1.0, 1.0],
    "x2": [-1.0, 1.0],
    "x3": [-1.0, 1.0]
  }
}
"#;

pub const NAMES: [&str; 3] = ["schwarzschild", "kottler", "example3"];

/// The exact document for a builtin chart name.
pub fn builtin(name: &str) -> Option<&'static str> {
    match name {
        "schwarzschild" => Some(SCHWARZSCHILD),
        "kottler" => Some(KOTTLER),
        "example3" => Some(EXAMPLE3),
        _ => None,
    }
}
