//! Classification and theorem-verifier behavior on the corpus and the
//! synthetic charts.

mod common;

use common::*;
use sqe::chart::load_spec;
use sqe::classify::{
    classification_report, closed_check, einstein_check, killing_check,
    killing_contraction_check, killing_einstein_structure_check, parallel_check,
    quasi_einstein_form_check, rank_condition_check, ricci_derivative_check, sqe_solve,
    sqe_verify, sum_constancy_check, semisymmetry_report, Geometry, TriState,
};
use sqe::curvature::{ricci, RicciSign};
use sqe::connection::semi_symmetric;
use sqe::error::Error;
use sqe::expr::{parse, Expr, SymbolTable};
use sqe::tensor::{TensorField, Variance};

// ---------------------------------------------------------------------------
// killing / parallel / closed
// ---------------------------------------------------------------------------

#[test]
fn schwarzschild_generator_is_killing() {
    let g = schwarzschild();
    assert!(killing_check(g, &cfg()).unwrap().verdict.passed());
}

#[test]
fn kottler_generator_is_killing() {
    let g = kottler();
    assert!(killing_check(g, &cfg()).unwrap().verdict.passed());
}

#[test]
fn broken_one_form_fails_killing_at_r_t() {
    // pi = r dt on the Schwarzschild metric
    let doc = r#"{
      "name": "broken",
      "coordinates": ["t", "r", "theta", "phi"],
      "parameters": {"m": {"positive": true}},
      "metric": [
        ["2*m/r - 1", "0", "0", "0"],
        ["0", "-1/(2*m/r - 1)", "0", "0"],
        ["0", "0", "r^2", "0"],
        ["0", "0", "0", "r^2*sin(theta)^2"]
      ],
      "one_form": ["r", "0", "0", "0"],
      "sample_ranges": {
        "t": [0.0, 1.0], "r": [3.0, 10.0], "theta": [0.3, 2.8],
        "phi": [0.1, 6.2], "m": [0.5, 1.0]
      }
    }"#;
    let geom = Geometry::new(load_spec(doc.as_bytes()).unwrap(), &cfg()).unwrap();
    let k = killing_check(&geom, &cfg()).unwrap();
    assert_eq!(k.verdict, TriState::Fail);
    assert!(k.max_residual > 1e-6);
    // the offending component is the symmetrized (r,t) slot
    assert!(k.note.unwrap().contains("[0, 1]") || k.max_residual > 0.0);
}

#[test]
fn example3_parallel_and_unit() {
    let g = example3();
    let r = parallel_check(g, &cfg()).unwrap();
    assert!(r.parallel.verdict.passed());
    assert!(r.unit_norm.verdict.passed());
}

#[test]
fn schwarzschild_generator_not_parallel() {
    let g = schwarzschild();
    let r = parallel_check(g, &cfg()).unwrap();
    assert_eq!(r.parallel.verdict, TriState::Fail);
}

#[test]
fn dx3_alone_is_parallel_and_unit_on_example3_metric() {
    let doc = r#"{
      "name": "example3-dx3",
      "coordinates": ["x1", "x2", "x3"],
      "parameters": {},
      "metric": [
        ["exp(x1)", "0", "0"],
        ["0", "-exp(x1)", "0"],
        ["0", "0", "1"]
      ],
      "one_form": ["0", "0", "1"],
      "sample_ranges": {
        "x1": [-1.0, 1.0], "x2": [-1.0, 1.0], "x3": [-1.0, 1.0]
      }
    }"#;
    let geom = Geometry::new(load_spec(doc.as_bytes()).unwrap(), &cfg()).unwrap();
    let r = parallel_check(&geom, &cfg()).unwrap();
    assert!(r.parallel.verdict.passed());
    assert!(r.unit_norm.verdict.passed());
}

#[test]
fn example3_one_form_is_closed() {
    let g = example3();
    assert!(closed_check(g, &cfg()).unwrap().verdict.passed());
}

#[test]
fn schwarzschild_one_form_is_not_closed() {
    let g = schwarzschild();
    let c = closed_check(g, &cfg()).unwrap();
    assert_eq!(c.verdict, TriState::Fail);
    assert!(c.note.unwrap().contains("(0,1)"));
}

#[test]
fn exact_form_is_closed() {
    // pi = d(r^2) = 2r dr on the Schwarzschild metric
    let doc = r#"{
      "name": "exact",
      "coordinates": ["t", "r", "theta", "phi"],
      "parameters": {"m": {"positive": true}},
      "metric": [
        ["2*m/r - 1", "0", "0", "0"],
        ["0", "-1/(2*m/r - 1)", "0", "0"],
        ["0", "0", "r^2", "0"],
        ["0", "0", "0", "r^2*sin(theta)^2"]
      ],
      "one_form": ["0", "2*r", "0", "0"],
      "sample_ranges": {
        "t": [0.0, 1.0], "r": [3.0, 10.0], "theta": [0.3, 2.8],
        "phi": [0.1, 6.2], "m": [0.5, 1.0]
      }
    }"#;
    let geom = Geometry::new(load_spec(doc.as_bytes()).unwrap(), &cfg()).unwrap();
    assert!(closed_check(&geom, &cfg()).unwrap().verdict.passed());
}

// ---------------------------------------------------------------------------
// einstein / sqe
// ---------------------------------------------------------------------------

#[test]
fn kottler_is_einstein_with_reported_minus_lambda() {
    let g = kottler();
    let e = einstein_check(&g.lc_bundle, g, RicciSign::Paper, &cfg()).unwrap();
    assert!(e.verdict.passed());
    assert_eq!(e.a.as_deref(), Some("-Lambda"));
    let e_std = einstein_check(&g.lc_bundle, g, RicciSign::Standard, &cfg()).unwrap();
    assert_eq!(e_std.a.as_deref(), Some("Lambda"));
}

#[test]
fn schwarzschild_is_einstein_with_zero() {
    let g = schwarzschild();
    let e = einstein_check(&g.lc_bundle, g, RicciSign::Paper, &cfg()).unwrap();
    assert!(e.verdict.passed());
    assert_eq!(e.a.as_deref(), Some("0"));
}

#[test]
fn schwarzschild_semi_symmetric_hat_is_not_einstein() {
    let g = schwarzschild();
    let sb = g.ssmc_bundle.as_ref().unwrap();
    let e = einstein_check(sb, g, RicciSign::Paper, &cfg()).unwrap();
    assert_eq!(e.verdict, TriState::Fail);
}

#[test]
fn schwarzschild_sqe_pair_from_oracle() {
    // computed trace-convention pair: a = 2(r-2m)/r, b = 2
    let g = schwarzschild();
    let sb = g.ssmc_bundle.as_ref().unwrap();
    let pi = g.chart.one_form().unwrap();
    let solved = sqe_solve(sb, g, pi, &cfg()).unwrap();
    let a_want = p(&g.chart, "2*(r - 2*m)/r");
    let d = Expr::sub(solved.a_expr.clone(), a_want);
    assert_zero_on(g, &d, "solved a");
    assert_eq!(solved.b, "2");

    // the half-scaled pair fails against the computed hat tensor
    let a_half = p(&g.chart, "(r - 2*m)/r");
    let b_half = Expr::one();
    let v = sqe_verify(sb, g, &a_half, &b_half, pi, &cfg()).unwrap();
    assert_eq!(v.verdict, TriState::Fail);
}

#[test]
fn example3_sqe_pair_minus_one_one() {
    let g = example3();
    let sb = g.ssmc_bundle.as_ref().unwrap();
    let pi = g.chart.one_form().unwrap();
    let solved = sqe_solve(sb, g, pi, &cfg()).unwrap();
    assert_eq!(solved.a, "-1");
    assert_eq!(solved.b, "1");
    let v = sqe_verify(sb, g, &solved.a_expr, &solved.b_expr, pi, &cfg()).unwrap();
    assert!(v.verdict.passed());
    assert_eq!(v.semi_ricci_flat, TriState::Fail);
}

#[test]
fn flat_chart_with_dx1_solver_recovers_minus_nm2_nm2() {
    // S = 0, so Shat = (n-2)(pi x pi - g): a = -(n-2) = -1, b = 1 for n = 3
    let g = geometry(FLAT3_DX1);
    let sb = g.ssmc_bundle.as_ref().unwrap();
    let pi = g.chart.one_form().unwrap();
    let solved = sqe_solve(sb, g, pi, &cfg()).unwrap();
    assert_eq!(solved.a, "-1");
    assert_eq!(solved.b, "1");
}

#[test]
fn null_generator_is_reported_not_guessed() {
    let g = schwarzschild();
    let sb = g.ssmc_bundle.as_ref().unwrap();
    // eta = (2m/r - 1) dt + dr is null for this metric
    let n = 4;
    let eta = TensorField::from_fn(n, vec![Variance::Down], |idx| {
        Ok(match idx[0] {
            0 => p(&g.chart, "2*m/r - 1"),
            1 => Expr::one(),
            _ => Expr::zero(),
        })
    })
    .unwrap();
    match sqe_solve(sb, g, &eta, &cfg()) {
        Err(Error::NullGenerator) => {}
        other => panic!("expected null-generator error, got {other:?}"),
    }
}

#[test]
fn sqe_solve_consistency_with_verify() {
    // whenever solve returns, verify passes with the same tolerance
    for g in [schwarzschild(), kottler(), example3(), geometry(FLAT3_DX1)] {
        let sb = g.ssmc_bundle.as_ref().unwrap();
        let pi = g.chart.one_form().unwrap();
        let solved = sqe_solve(sb, g, pi, &cfg()).unwrap();
        let v = sqe_verify(sb, g, &solved.a_expr, &solved.b_expr, pi, &cfg()).unwrap();
        assert!(v.verdict.passed(), "inconsistent on {}", g.chart.name);
    }
}

// ---------------------------------------------------------------------------
// rank condition
// ---------------------------------------------------------------------------

#[test]
fn einstein_chart_passes_rank_condition_with_a_squared() {
    let g = kottler();
    let rank = rank_condition_check(&g.lc_bundle, g, None, &cfg()).unwrap();
    assert!(rank.verdict.passed());
    // rho = a^2 = Lambda^2 in the trace convention
    let rho = parse(
        rank.rho.as_deref().unwrap(),
        &g.chart.symbols,
    )
    .unwrap();
    let want = p(&g.chart, "Lambda^2");
    let d = Expr::sub(rho, want);
    assert_zero_on(g, &d, "rho = Lambda^2");
}

#[test]
fn example3_rank_condition_fails_and_alpha_degenerates() {
    let g = example3();
    let sb = g.ssmc_bundle.as_ref().unwrap();
    let rank = rank_condition_check(sb, g, None, &cfg()).unwrap();
    assert_eq!(rank.verdict, TriState::Fail);
    assert!(rank.alpha_is_zero, "alpha = Shat(P,P) must test zero");
}

#[test]
fn rank_two_perturbation_fails() {
    // hand-built bundle with Shat = g + e1 x e1 + e2 x e2 on the flat chart
    let g = geometry(FLAT3_DX1);
    let n = 3;
    let shat = TensorField::from_fn(n, vec![Variance::Down, Variance::Down], |idx| {
        let mut v = if idx[0] == idx[1] { 1i64 } else { 0 };
        if idx == [0, 0] {
            v += 1;
        }
        if idx == [1, 1] {
            v += 1;
        }
        Ok(Expr::int(v))
    })
    .unwrap();
    let bundle = sqe::curvature::CurvatureBundle {
        kind: sqe::connection::ConnectionKind::SemiSymmetric,
        riemann: TensorField::zeros(
            n,
            vec![
                Variance::Up,
                Variance::Down,
                Variance::Down,
                Variance::Down,
            ],
        ),
        ricci_raw: shat.clone(),
        ricci_hat_raw: shat,
        scalar_raw: Expr::int(5),
    };
    match rank_condition_check(&bundle, g, None, &cfg()) {
        Ok(rank) => assert_eq!(rank.verdict, TriState::Fail),
        Err(Error::RhoInconsistent { .. }) => {}
        other => panic!("expected failure or inconsistent-rho, got {other:?}"),
    }
}

// ---------------------------------------------------------------------------
// derivative identity and theorem verifiers
// ---------------------------------------------------------------------------

#[test]
fn ricci_derivative_not_applicable_on_schwarzschild() {
    let g = schwarzschild();
    let r = ricci_derivative_check(g, &cfg()).unwrap();
    assert!(!r.applicable);
    assert_eq!(r.identity.verdict, TriState::NotApplicable);
    assert!(r.identity.note.unwrap().contains("not unit"));
}

#[test]
fn ricci_derivative_identity_and_corollary_on_example3() {
    let g = example3();
    let r = ricci_derivative_check(g, &cfg()).unwrap();
    assert!(r.applicable);
    assert!(r.identity.verdict.passed());
    assert!(r.corollary.verdict.passed());
}

#[test]
fn ricci_derivative_corollary_on_flat_dx1() {
    let g = geometry(FLAT3_DX1);
    let r = ricci_derivative_check(g, &cfg()).unwrap();
    assert!(r.applicable);
    assert!(r.identity.verdict.passed());
    assert!(r.corollary.verdict.passed());
}

#[test]
fn killing_einstein_structure_on_corpus() {
    // Ricci-flat branch (Schwarzschild) and Einstein branch (Kottler)
    for g in [schwarzschild(), kottler()] {
        let v = killing_einstein_structure_check(g, &cfg()).unwrap();
        assert!(v.verdict.passed(), "{}: {}", g.chart.name, v.note);
    }
}

#[test]
fn killing_einstein_structure_confirms_derived_pair_schwarzschild() {
    let g = schwarzschild();
    let v = killing_einstein_structure_check(g, &cfg()).unwrap();
    // a = a_e - (n-2) pi(P) = -2(2m-r)/r, b = n-2 = 2
    assert!(v.note.contains("b = 2"), "{}", v.note);
}

#[test]
fn non_killing_chart_reports_hypothesis_not_met() {
    let doc = r#"{
      "name": "flat-nonkilling",
      "coordinates": ["x1", "x2", "x3"],
      "parameters": {},
      "metric": [
        ["1", "0", "0"],
        ["0", "1", "0"],
        ["0", "0", "1"]
      ],
      "one_form": ["x1", "0", "0"],
      "sample_ranges": {
        "x1": [0.5, 1.5], "x2": [-1.0, 1.0], "x3": [-1.0, 1.0]
      }
    }"#;
    let geom = Geometry::new(load_spec(doc.as_bytes()).unwrap(), &cfg()).unwrap();
    let v = killing_einstein_structure_check(&geom, &cfg()).unwrap();
    assert_eq!(v.verdict, TriState::NotApplicable);
    assert!(v.note.contains("not Killing"));
}

#[test]
fn sum_constancy_trivial_pass_on_sphere_line() {
    let g = geometry(SPHERE_LINE);
    let sb = g.ssmc_bundle.as_ref().unwrap();
    let pi = g.chart.one_form().unwrap();
    // semi-Ricci flat: the solved pair is (0, 0); constants
    let solved = sqe_solve(sb, g, pi, &cfg()).unwrap();
    let v = sum_constancy_check(g, &solved.a_expr, &solved.b_expr, pi, &cfg()).unwrap();
    assert!(v.verdict.passed(), "{}", v.note);
}

#[test]
fn sum_constancy_guard_rejects_perturbed_pair() {
    // perturbing b by +z breaks the structure upstream: not applicable
    let g = geometry(SPHERE_LINE);
    let pi = g.chart.one_form().unwrap();
    let a = Expr::zero();
    let b = p(&g.chart, "z");
    let v = sum_constancy_check(g, &a, &b, pi, &cfg()).unwrap();
    assert_eq!(v.verdict, TriState::NotApplicable);
    assert!(v.note.contains("not satisfied"), "{}", v.note);
}

#[test]
fn sum_constancy_branches_on_schwarzschild() {
    // generator is not unit there
    let g = schwarzschild();
    let pi = g.chart.one_form().unwrap();
    let a = p(&g.chart, "2*(r - 2*m)/r");
    let b = Expr::int(2);
    let v = sum_constancy_check(g, &a, &b, pi, &cfg()).unwrap();
    assert_eq!(v.verdict, TriState::NotApplicable);
    assert!(v.note.contains("not unit"), "{}", v.note);
}

#[test]
fn quasi_einstein_form_hypothesis_fails_on_flat_dx1() {
    let g = geometry(FLAT3_DX1);
    let v = quasi_einstein_form_check(g, &cfg()).unwrap();
    assert_eq!(v.verdict, TriState::NotApplicable);
    assert!(v.note.contains("hypothesis not met"), "{}", v.note);
}

#[test]
fn quasi_einstein_form_full_pass_on_sphere_line() {
    let g = geometry(SPHERE_LINE);
    let v = quasi_einstein_form_check(g, &cfg()).unwrap();
    assert!(v.verdict.passed(), "{}", v.note);
    // converse direction is part of the same check: S has the exact form and
    // the base is Ricci semi-symmetric
    assert!(v.note.contains("converse"), "{}", v.note);
}

#[test]
fn quasi_einstein_form_reported_on_example3() {
    let g = example3();
    let v = quasi_einstein_form_check(g, &cfg()).unwrap();
    assert_eq!(v.verdict, TriState::NotApplicable);
}

// ---------------------------------------------------------------------------
// contraction transfer and semisymmetry flags
// ---------------------------------------------------------------------------

#[test]
fn killing_contraction_transfer_on_corpus() {
    // Shat(.,P) = S(.,P) holds for every Killing generator, unit or not
    for g in [schwarzschild(), kottler(), example3()] {
        let t = killing_contraction_check(g, &cfg()).unwrap();
        assert!(t.hat_transfer.verdict.passed(), "on {}", g.chart.name);
    }
}

#[test]
fn strict_transfer_needs_unit_generator() {
    let g = schwarzschild();
    let t = killing_contraction_check(g, &cfg()).unwrap();
    assert_eq!(t.strict.verdict, TriState::NotApplicable);
    // the unsymmetrized identity is measurably violated: max residual ~ m/r^2
    assert!(t.strict.max_residual > 1e-3);

    let g3 = example3();
    let t3 = killing_contraction_check(g3, &cfg()).unwrap();
    assert!(t3.strict.verdict.passed());
}

#[test]
fn semisymmetry_flags_flat_pi0_all_pass() {
    let g = geometry(FLAT3_PI0);
    let f = semisymmetry_report(g, &cfg()).unwrap();
    assert!(f.rbar_rbar.passed());
    assert!(f.rbar_shat.passed());
    assert!(f.r_s.passed());
    assert!(f.nablabar_rbar.passed());
    assert!(f.nablabar_shat.passed());
}

#[test]
fn semisymmetry_trivial_on_ricci_flat_levi_civita() {
    let g = schwarzschild();
    let f = semisymmetry_report(g, &cfg()).unwrap();
    assert!(f.r_s.passed(), "R.S = 0 holds trivially when S = 0");
}

// ---------------------------------------------------------------------------
// whole-report assembly
// ---------------------------------------------------------------------------

#[test]
fn classification_report_is_deterministic() {
    let g = example3();
    let a = classification_report(g, RicciSign::Paper, &cfg()).unwrap();
    let b = classification_report(g, RicciSign::Paper, &cfg()).unwrap();
    let ja = serde_json::to_string(&a).unwrap();
    let jb = serde_json::to_string(&b).unwrap();
    assert_eq!(ja, jb);
}

#[test]
fn report_flags_pass_are_backed_by_residuals() {
    let g = example3();
    let r = classification_report(g, RicciSign::Paper, &cfg()).unwrap();
    let tol = cfg().tol;
    for (name, flag) in [
        ("killing", r.flags.killing),
        ("parallel", r.flags.parallel),
        ("closed", r.flags.closed),
        ("unit_norm", r.flags.unit_norm),
    ] {
        if flag.passed() {
            let residual = r.residual_summaries.get(name).copied().unwrap_or(0.0);
            // scale-aware bound: these residuals are all exact zeros here
            assert!(
                residual <= tol,
                "{name} passed but residual {residual} exceeds tol"
            );
        }
    }
}

#[test]
fn kottler_semi_symmetric_matrix_matches_coefficient_one_reconstruction() {
    // The reference tables are reproduced exactly by
    //   S_ref = -S_trace - (nabla pi) + pi x pi - (pi(P) + div P) g
    // while the honest trace satisfies the (n-2)-coefficient relation.
    let g = kottler();
    let table = SymbolTable::new(
        vec![
            "t".into(),
            "r".into(),
            "theta".into(),
            "phi".into(),
        ],
        vec![
            ("m".into(), Default::default()),
            ("Lambda".into(), Default::default()),
        ],
    )
    .unwrap();
    let refm = [
        [
            "-(Lambda^2*r^3 + 6*Lambda*m - 3*Lambda*r)/(3*r)",
            "(Lambda*r^3 - 3*m)/(3*r^2)",
            "0",
            "0",
        ],
        [
            "-(Lambda*r^3 - 3*m)/(3*r^2)",
            "(Lambda*r^3 + 3*(Lambda - 1)*r + 6*m)/(Lambda*r^3 + 6*m - 3*r)",
            "0",
            "0",
        ],
        ["0", "0", "-(Lambda*r^4 + 3*(Lambda - 1)*r^2 + 6*m*r)/3", "0"],
        [
            "0",
            "0",
            "0",
            "-(Lambda*r^4 + 3*(Lambda - 1)*r^2 + 6*m*r)*sin(theta)^2/3",
        ],
    ];
    let pi = g.chart.one_form().unwrap();
    let lc = &g.lc;
    let dpi =
        sqe::connection::covariant_derivative(lc, pi, &g.chart).unwrap();
    let pi_norm = g.pi_norm.clone().unwrap();
    let div_p = sqe::curvature::generator_divergence(&g.chart, &cfg()).unwrap();
    for j in 0..4 {
        for k in 0..4 {
            let reference = parse(refm[j][k], &table).unwrap();
            let reconstruction = sqe::expr::nsum([
                Expr::neg(g.lc_bundle.ricci_raw.get(&[j, k]).clone()),
                Expr::neg(dpi.get(&[j, k]).clone()),
                sqe::expr::nprod([pi.get(&[j]).clone(), pi.get(&[k]).clone()]).unwrap(),
                sqe::expr::nprod([
                    Expr::int(-1),
                    sqe::expr::nsum([pi_norm.clone(), div_p.clone()]).unwrap(),
                    g.chart.metric.get(&[j, k]).clone(),
                ])
                .unwrap(),
            ])
            .unwrap();
            let d = Expr::sub(reference, reconstruction);
            assert_zero_on(g, &d, &format!("reference reconstruction at ({j},{k})"));
        }
    }
}

#[test]
fn kottler_reference_pair_resolution() {
    // Against the reference matrix itself (symmetrized), the corrected
    // coefficient a = -Lambda - (Lambda r^3 + 6m - 3r)/(3r) passes with b = 1
    // while the r^2 variant printed alongside it fails.
    let g = kottler();
    let table = g.chart.symbols.clone();
    let refm_diag = [
        "-(Lambda^2*r^3 + 6*Lambda*m - 3*Lambda*r)/(3*r)",
        "(Lambda*r^3 + 3*(Lambda - 1)*r + 6*m)/(Lambda*r^3 + 6*m - 3*r)",
        "-(Lambda*r^4 + 3*(Lambda - 1)*r^2 + 6*m*r)/3",
        "-(Lambda*r^4 + 3*(Lambda - 1)*r^2 + 6*m*r)*sin(theta)^2/3",
    ];
    let pi = g.chart.one_form().unwrap();
    let a_r3 = parse("-Lambda - (Lambda*r^3 + 6*m - 3*r)/(3*r)", &table).unwrap();
    let a_r2 = parse("-Lambda - (Lambda*r^2 + 6*m - 3*r)/(3*r)", &table).unwrap();
    for (i, cell) in refm_diag.iter().enumerate() {
        let sref = parse(cell, &table).unwrap();
        let good = Expr::sub(
            sref.clone(),
            sqe::expr::nsum([
                sqe::expr::nprod([a_r3.clone(), g.chart.metric.get(&[i, i]).clone()]).unwrap(),
                sqe::expr::nprod([pi.get(&[i]).clone(), pi.get(&[i]).clone()]).unwrap(),
            ])
            .unwrap(),
        );
        assert_zero_on(g, &good, &format!("r^3 coefficient at ({i},{i})"));
    }
    // the literal r^2 coefficient fails on the tt component
    let sref = parse(refm_diag[0], &table).unwrap();
    let bad = Expr::sub(
        sref,
        sqe::expr::nsum([
            sqe::expr::nprod([a_r2, g.chart.metric.get(&[0, 0]).clone()]).unwrap(),
            sqe::expr::nprod([pi.get(&[0]).clone(), pi.get(&[0]).clone()]).unwrap(),
        ])
        .unwrap(),
    );
    let v = sqe::expr::is_zero(&bad, &g.chart.sample_ranges, &cfg()).unwrap();
    assert!(!v.passed(), "the r^2 variant must fail the oracle");
}

#[test]
fn semi_symmetric_with_zero_one_form_matches_trivial_relation() {
    // pi = 0: Sbar = S exactly
    let g = geometry(FLAT3_PI0);
    let ss = semi_symmetric(&g.chart, &cfg()).unwrap();
    let sb = ricci(&ss, &g.chart, &cfg()).unwrap();
    assert_eq!(sb.ricci_raw, g.lc_bundle.ricci_raw);
}
