use std::collections::BTreeMap;

use super::*;

fn table() -> SymbolTable {
    SymbolTable::new(
        vec!["t".into(), "r".into(), "theta".into(), "phi".into()],
        vec![(
            "m".into(),
            ParamAssumptions {
                positive: true,
                nonzero: true,
            },
        )],
    )
    .unwrap()
}

fn p(text: &str) -> Expr {
    parse(text, &table()).unwrap()
}

fn ranges() -> BTreeMap<String, (f64, f64)> {
    let mut r = BTreeMap::new();
    r.insert("m".to_string(), (0.5, 1.0));
    r.insert("r".to_string(), (3.0, 10.0));
    r.insert("theta".to_string(), (0.3, 2.8));
    r.insert("t".to_string(), (0.0, 1.0));
    r.insert("phi".to_string(), (0.1, 6.2));
    r
}

fn assert_proved_zero(e: &Expr) {
    assert!(
        e.normalize().unwrap().is_zero_const(),
        "expected {} to normalize to zero, got {}",
        e,
        e.normalize().unwrap()
    );
}

#[test]
fn parse_schwarzschild_gtt() {
    let e = p("2*m/r - 1");
    // sum(-1, 2 m r^-1), checked structurally via the canonical rendering
    let back = parse(&format!("{e}"), &table()).unwrap();
    assert_eq!(e, back);
    let diff = Expr::sub(e, p("(2*m - r)/r"));
    assert_proved_zero(&diff);
}

#[test]
fn parse_sin_squared() {
    let e = p("sin(theta)^2");
    assert_eq!(
        e,
        Expr::Power(
            Box::new(Expr::func(FuncKind::Sin, Expr::sym("theta"))),
            Rat::from_integer(2.into())
        )
    );
}

#[test]
fn parse_unknown_identifier() {
    match parse("q", &table()) {
        Err(ExprError::UnknownIdentifier(name)) => assert_eq!(name, "q"),
        other => panic!("expected unknown identifier, got {other:?}"),
    }
}

#[test]
fn parse_syntax_error_offset() {
    match parse("2*m +* r", &table()) {
        Err(ExprError::Syntax { offset, .. }) => assert_eq!(offset, 5),
        other => panic!("expected syntax error, got {other:?}"),
    }
}

#[test]
fn differentiate_power_rule() {
    let e = p("2*m/r - 1");
    let d = e.differentiate("r").unwrap();
    assert_proved_zero(&Expr::sub(d, p("-2*m/r^2")));
}

#[test]
fn differentiate_chain_rule() {
    let e = p("r^2*sin(theta)^2");
    let d = e.differentiate("theta").unwrap();
    assert_proved_zero(&Expr::sub(d, p("2*r^2*sin(theta)*cos(theta)")));
}

#[test]
fn differentiate_parameter_is_constant() {
    let d = p("m").differentiate("r").unwrap();
    assert!(d.is_zero_const());
}

#[test]
fn normalize_pythagorean() {
    let e = p("sin(theta)^2 + cos(theta)^2");
    assert_eq!(e, Expr::one());
}

#[test]
fn normalize_common_denominator() {
    let e = p("m/(2*m*r - r^2) + m/(r^2 - 2*m*r)");
    assert!(e.is_zero_const());
}

#[test]
fn normalize_expansion() {
    let e = p("(r - 2*m)/r * r^2");
    assert_proved_zero(&Expr::sub(e.clone(), p("r^2 - 2*m*r")));
    // and the canonical form is the expanded polynomial
    assert_eq!(e, p("r^2 - 2*m*r"));
}

#[test]
fn normalize_idempotent_on_samples() {
    for text in [
        "2*m/r - 1",
        "-1/(2*m/r - 1)",
        "r^2*sin(theta)^2",
        "cos(theta)/sin(theta)",
        "m/(2*m*r - r^2) + 1/r",
        "(2*m - r)*sin(theta)^2",
        "sqrt(r)*sqrt(r)",
        "exp(t)^2*exp(-t)",
        "(r - 2*m)^3/r^3",
    ] {
        let e = p(text);
        let n = e.normalize().unwrap();
        assert_eq!(e, n, "normalize not idempotent on {text}");
    }
}

#[test]
fn eval_simple() {
    let mut b = BTreeMap::new();
    b.insert("m".to_string(), 1.0);
    b.insert("r".to_string(), 4.0);
    let v = eval_numeric(&p("2*m/r - 1"), &b).unwrap();
    assert!((v + 0.5).abs() < 1e-15);
}

#[test]
fn eval_sin_squared() {
    let mut b = BTreeMap::new();
    b.insert("theta".to_string(), std::f64::consts::FRAC_PI_2);
    let v = eval_numeric(&p("sin(theta)^2"), &b).unwrap();
    assert!((v - 1.0).abs() < 1e-15);
}

#[test]
fn eval_division_by_zero_at_horizon() {
    let mut b = BTreeMap::new();
    b.insert("m".to_string(), 1.0);
    b.insert("r".to_string(), 2.0);
    match eval_numeric(&p("1/(2*m*r - r^2)"), &b) {
        Err(ExprError::Domain { msg, .. }) => assert!(msg.contains("division by zero")),
        other => panic!("expected division-by-zero domain error, got {other:?}"),
    }
}

#[test]
fn is_zero_proved() {
    let v = is_zero(
        &p("sin(theta)^2 + cos(theta)^2 - 1"),
        &ranges(),
        &ZeroCfg::default(),
    )
    .unwrap();
    assert_eq!(v, ZeroVerdict::ProvedZero);
}

#[test]
fn is_zero_nonzero_witness() {
    match is_zero(&p("2*m/r - 1"), &ranges(), &ZeroCfg::default()).unwrap() {
        ZeroVerdict::Nonzero(w) => {
            assert!(w.value.abs() > 1e-9);
            assert!(w.bindings.contains_key("m") && w.bindings.contains_key("r"));
        }
        other => panic!("expected nonzero, got {other:?}"),
    }
}

#[test]
fn is_zero_numeric_only() {
    // identities the normalizer does not prove: both verdict classes occur.
    let t = SymbolTable::new(vec!["x".into()], vec![]).unwrap();
    let mut r = BTreeMap::new();
    r.insert("x".to_string(), (0.2, 1.2));
    for text in [
        "tan(x) - sin(x)/cos(x)",
        "sin(2*x) - 2*sin(x)*cos(x)",
        "log(exp(x)) - x",
    ] {
        let e = parse(text, &t).unwrap();
        let v = is_zero(&e, &r, &ZeroCfg::default()).unwrap();
        assert_eq!(v, ZeroVerdict::NumericallyZero, "on {text}");
    }
}

#[test]
fn is_zero_rejects_domain_errors_and_still_passes() {
    let t = SymbolTable::new(vec!["x".into()], vec![]).unwrap();
    let mut r = BTreeMap::new();
    r.insert("x".to_string(), (-1.0, 1.0));
    // true for x > 0, domain error for x <= 0: draws get rejected
    let e = parse("log(x^2) - 2*log(x)", &t).unwrap();
    let v = is_zero(&e, &r, &ZeroCfg::default()).unwrap();
    assert_eq!(v, ZeroVerdict::NumericallyZero);
}

#[test]
fn is_zero_sampling_exhausted() {
    let t = SymbolTable::new(vec!["x".into()], vec![]).unwrap();
    let mut r = BTreeMap::new();
    r.insert("x".to_string(), (-5.0, -1.0));
    let e = parse("log(x)", &t).unwrap();
    match is_zero(&e, &r, &ZeroCfg::default()) {
        Err(ExprError::SamplingExhausted(_)) => {}
        other => panic!("expected sampling exhaustion, got {other:?}"),
    }
}

#[test]
fn is_zero_unbound_symbol() {
    let e = p("2*m/r");
    let mut r = ranges();
    r.remove("m");
    match is_zero(&e, &r, &ZeroCfg::default()) {
        Err(ExprError::Unbound(s)) => assert_eq!(s, "m"),
        other => panic!("expected unbound error, got {other:?}"),
    }
}

#[test]
fn is_zero_deterministic() {
    let e = p("2*m/r - 1");
    let a = is_zero(&e, &ranges(), &ZeroCfg::default()).unwrap();
    let b = is_zero(&e, &ranges(), &ZeroCfg::default()).unwrap();
    assert_eq!(a, b);
}

#[test]
fn print_roundtrip_canonical_forms() {
    for text in [
        "2*m/r - 1",
        "-m/(2*m*r - r^2)",
        "cos(theta)/sin(theta)",
        "-cos(theta)*sin(theta)",
        "(2*m - r)*sin(theta)^2",
        "r/(2*m - r)",
        "1/r",
        "m/r^2",
        "sqrt(r) + 1/sqrt(r)",
        "2/3",
        "-2/3*r",
        "exp(-(t + r)/2)",
        "tan(r)^3 - log(m)/7",
    ] {
        let e = p(text);
        let printed = format!("{e}");
        let back = parse(&printed, &table()).unwrap();
        assert_eq!(e, back, "round trip failed: {text} -> {printed}");
    }
}

#[test]
fn exp_merge_proves_equalities() {
    let t = SymbolTable::new(vec!["x1".into(), "x2".into()], vec![]).unwrap();
    let a = parse("exp(-x1)*exp(x1/2 - x2/2)", &t).unwrap();
    let b = parse("exp(-(x1 + x2)/2)", &t).unwrap();
    assert_proved_zero(&Expr::sub(a, b));
}

#[test]
fn sqrt_square_collapses() {
    let e = p("sqrt(r)^2");
    assert_eq!(e, Expr::sym("r"));
    let f = p("sqrt(r)*sqrt(r)");
    assert_eq!(f, Expr::sym("r"));
}

#[test]
fn constant_root_folds() {
    assert_eq!(p("sqrt(4)"), Expr::int(2));
    assert_eq!(p("sqrt(9/4)"), Expr::rat(3, 2));
    // sqrt(2) stays symbolic
    let e = p("sqrt(2)");
    assert_eq!(format!("{e}"), "sqrt(2)");
}

#[test]
fn division_by_symbolic_zero_is_reported() {
    match parse("1/(r - r)", &table()) {
        Err(ExprError::DivisionByZero(_)) => {}
        other => panic!("expected division by zero, got {other:?}"),
    }
}

#[test]
fn latex_rendering() {
    assert_eq!(to_latex(&p("m/r^2")), r"\frac{m}{r^{2}}");
    assert_eq!(
        to_latex(&p("cos(theta)/sin(theta)")),
        r"\frac{\cos\left(\theta\right)}{\sin\left(\theta\right)}"
    );
    assert_eq!(to_latex(&p("2*m - r")), r"2 \, m - r");
}
