use std::time::Instant;

use sqe::chart::load_spec;
use sqe::connection::{levi_civita, semi_symmetric};
use sqe::curvature::ricci;
use sqe::expr::{parse, ZeroCfg};

#[test]
fn schwarzschild_pipeline_smoke() {
    let cfg = ZeroCfg::default();
    let t0 = Instant::now();
    let chart = load_spec(sqe::corpus::SCHWARZSCHILD.as_bytes()).unwrap();
    println!("load: {:?}", t0.elapsed());
    let t1 = Instant::now();
    let lc = levi_civita(&chart, &cfg).unwrap();
    println!("lc: {:?}", t1.elapsed());
    let t2 = Instant::now();
    let ss = semi_symmetric(&chart, &cfg).unwrap();
    println!("ss: {:?}", t2.elapsed());

    // Γ^t_{tr} = -m/(2mr - r^2)
    let want = parse("-m/(2*m*r - r^2)", &chart.symbols).unwrap();
    assert_eq!(lc.gamma.get(&[0, 0, 1]), &want, "got {}", lc.gamma.get(&[0, 0, 1]));

    // Γ̄^t_{rr} = r/(2m - r)
    let want = parse("r/(2*m - r)", &chart.symbols).unwrap();
    assert_eq!(ss.gamma.get(&[0, 1, 1]), &want, "got {}", ss.gamma.get(&[0, 1, 1]));

    let t3 = Instant::now();
    let lcb = ricci(&lc, &chart, &cfg).unwrap();
    println!("lc ricci: {:?}", t3.elapsed());
    assert!(lcb.ricci_raw.is_structurally_zero(), "LC Ricci should vanish");

    let t4 = Instant::now();
    let ssb = ricci(&ss, &chart, &cfg).unwrap();
    println!("ss ricci: {:?}", t4.elapsed());
    // raw trace = twice the reference matrix
    for (idx, text) in [
        (vec![0usize, 0], "0"),
        (vec![0, 1], "-2*m/r^2"),
        (vec![1, 0], "2*m/r^2"),
        (vec![1, 1], "2"),
        (vec![2, 2], "2*(r^2 - 2*m*r)"),
        (vec![3, 3], "-2*(2*m*r - r^2)*sin(theta)^2"),
    ] {
        let want = parse(text, &chart.symbols).unwrap();
        assert_eq!(ssb.ricci_raw.get(&idx), &want, "at {:?}: got {}", idx, ssb.ricci_raw.get(&idx));
    }
    println!("total: {:?}", t0.elapsed());
}

#[test]
fn example3_classification_smoke() {
    let cfg = ZeroCfg::default();
    let t0 = Instant::now();
    let chart = load_spec(sqe::corpus::EXAMPLE3.as_bytes()).unwrap();
    let geom = sqe::classify::Geometry::new(chart, &cfg).unwrap();
    let report =
        sqe::classify::classification_report(&geom, sqe::curvature::RicciSign::Paper, &cfg)
            .unwrap();
    println!("classify example3: {:?}", t0.elapsed());
    println!("{}", serde_json::to_string_pretty(&report).unwrap());
    assert!(report.flags.killing.passed());
    assert!(report.flags.parallel.passed());
    assert!(report.flags.unit_norm.passed());
    assert!(report.flags.closed.passed());
    assert!(report.flags.sqe.passed());
    assert_eq!(report.witnesses.sqe_a.as_deref(), Some("-1"));
    assert_eq!(report.witnesses.sqe_b.as_deref(), Some("1"));
}
