//! Structural checks on the generator and Ricci data: Killing / parallel /
//! closed flags, Einstein and quasi-Einstein structure detection, the rank
//! condition, and instance verifiers for the structure theorems.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::chart::{inverse_metric, raise_index, lower_index, ChartSpec};
use crate::connection::{covariant_derivative, levi_civita, semi_symmetric, Connection};
use crate::curvature::{
    generator_norm, q_theta_h, r_dot_h, ricci, tensor_zero_check, CurvatureBundle, RicciSign,
};
use crate::error::{Error, Result};
use crate::expr::{is_zero, is_zero_detailed, nprod, nsum, Expr, ZeroCfg, ZeroVerdict};
use crate::tensor::{TensorField, Variance};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TriState {
    Pass,
    Fail,
    NotApplicable,
}

impl TriState {
    pub fn passed(self) -> bool {
        self == TriState::Pass
    }

    fn from_bool(b: bool) -> TriState {
        if b {
            TriState::Pass
        } else {
            TriState::Fail
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckResult {
    pub verdict: TriState,
    pub max_residual: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl CheckResult {
    fn not_applicable(note: impl Into<String>) -> CheckResult {
        CheckResult {
            verdict: TriState::NotApplicable,
            max_residual: 0.0,
            note: Some(note.into()),
        }
    }
}

/// Shared per-chart pipeline: both connections and curvature bundles,
/// computed once.
pub struct Geometry {
    pub chart: ChartSpec,
    pub inverse: TensorField,
    pub lc: Connection,
    pub lc_bundle: CurvatureBundle,
    pub ssmc: Option<Connection>,
    pub ssmc_bundle: Option<CurvatureBundle>,
    pub p_up: Option<TensorField>,
    pub pi_norm: Option<Expr>,
}

impl Geometry {
    pub fn new(chart: ChartSpec, cfg: &ZeroCfg) -> Result<Geometry> {
        let inverse = inverse_metric(&chart, cfg)?;
        let lc = levi_civita(&chart, cfg)?;
        let lc_bundle = ricci(&lc, &chart, cfg)?;
        let (ssmc, ssmc_bundle, p_up, pi_norm) = match &chart.one_form {
            Some(pi) => {
                let conn = semi_symmetric(&chart, cfg)?;
                let bundle = ricci(&conn, &chart, cfg)?;
                let p_up = raise_index(pi, 0, &inverse)?;
                let norm = generator_norm(&chart, cfg)?;
                (Some(conn), Some(bundle), Some(p_up), Some(norm))
            }
            None => (None, None, None, None),
        };
        Ok(Geometry {
            chart,
            inverse,
            lc,
            lc_bundle,
            ssmc,
            ssmc_bundle,
            p_up,
            pi_norm,
        })
    }

    fn ranges(&self) -> &BTreeMap<String, (f64, f64)> {
        &self.chart.sample_ranges
    }

    fn ssmc_bundle(&self) -> Result<&CurvatureBundle> {
        self.ssmc_bundle.as_ref().ok_or(Error::MissingOneForm)
    }

    /// Contraction T(·, P) of the last slot of a (0,2) tensor with the
    /// raised generator.
    fn contract_with_p(&self, t: &TensorField, slot: usize) -> Result<TensorField> {
        let p = self.p_up.as_ref().ok_or(Error::MissingOneForm)?;
        let n = self.chart.dimension();
        TensorField::from_fn(n, vec![Variance::Down], |idx| {
            let mut terms = Vec::new();
            for m in 0..n {
                let mut src = [idx[0], idx[0]];
                src[slot] = m;
                let tv = t.get(&src);
                let pv = p.get(&[m]);
                if tv.is_zero_const() || pv.is_zero_const() {
                    continue;
                }
                terms.push(nprod([tv.clone(), pv.clone()])?);
            }
            nsum(terms)
        })
        .map_err(Into::into)
    }
}

fn check_tensor(geom: &Geometry, t: &TensorField, cfg: &ZeroCfg) -> Result<CheckResult> {
    let rc = tensor_zero_check(t, geom.ranges(), cfg)?;
    Ok(CheckResult {
        verdict: TriState::from_bool(rc.passed),
        max_residual: rc.max_residual,
        note: rc.first_failure.map(|idx| format!("first nonzero component at {idx:?}")),
    })
}

fn check_scalar(geom: &Geometry, e: &Expr, cfg: &ZeroCfg) -> Result<CheckResult> {
    let (verdict, sampled) = is_zero_detailed(e, geom.ranges(), cfg)?;
    Ok(CheckResult {
        verdict: TriState::from_bool(verdict.passed()),
        max_residual: sampled,
        note: None,
    })
}

/// Killing residual K_{jk} = (∇_j π)_k + (∇_k π)_j under the Levi-Civita
/// connection.
pub fn killing_check(geom: &Geometry, cfg: &ZeroCfg) -> Result<CheckResult> {
    let pi = geom.chart.one_form()?.clone();
    let dpi = covariant_derivative(&geom.lc, &pi, &geom.chart)?;
    let n = geom.chart.dimension();
    let residual = TensorField::from_fn(n, vec![Variance::Down, Variance::Down], |idx| {
        nsum([
            dpi.get(&[idx[0], idx[1]]).clone(),
            dpi.get(&[idx[1], idx[0]]).clone(),
        ])
    })?;
    check_tensor(geom, &residual, cfg)
}

#[derive(Debug, Clone, Serialize)]
pub struct ParallelResult {
    pub parallel: CheckResult,
    pub unit_norm: CheckResult,
}

/// ∇π componentwise, plus the unit-norm check π(P) = 1.
pub fn parallel_check(geom: &Geometry, cfg: &ZeroCfg) -> Result<ParallelResult> {
    let pi = geom.chart.one_form()?.clone();
    let dpi = covariant_derivative(&geom.lc, &pi, &geom.chart)?;
    let parallel = check_tensor(geom, &dpi, cfg)?;
    let norm = geom.pi_norm.clone().ok_or(Error::MissingOneForm)?;
    let unit_residual = nsum([norm, Expr::int(-1)])?;
    let unit_norm = check_scalar(geom, &unit_residual, cfg)?;
    Ok(ParallelResult {
        parallel,
        unit_norm,
    })
}

/// Closedness: (dπ)_{jk} = ∂_j π_k − ∂_k π_j tests zero for all j < k.
pub fn closed_check(geom: &Geometry, cfg: &ZeroCfg) -> Result<CheckResult> {
    let pi = geom.chart.one_form()?;
    let coords = geom.chart.coordinates().to_vec();
    let n = geom.chart.dimension();
    let mut max_residual: f64 = 0.0;
    let mut verdict = TriState::Pass;
    let mut note = None;
    for j in 0..n {
        for k in (j + 1)..n {
            let d = nsum([
                pi.get(&[k]).differentiate(&coords[j])?,
                Expr::neg(pi.get(&[j]).differentiate(&coords[k])?),
            ])?;
            let (v, sampled) = is_zero_detailed(&d, geom.ranges(), cfg)?;
            max_residual = max_residual.max(sampled);
            if let ZeroVerdict::Nonzero(_) = v {
                verdict = TriState::Fail;
                if note.is_none() {
                    note = Some(format!("d(pi) nonzero at ({j},{k})"));
                }
            }
        }
    }
    Ok(CheckResult {
        verdict,
        max_residual,
        note,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct EinsteinResult {
    pub verdict: TriState,
    pub max_residual: f64,
    /// Proportionality scalar in the reporting sign convention.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub a: Option<String>,
}

/// Einstein test on a bundle: a = scalar/n and Ŝ − a g must vanish.
pub fn einstein_check(
    bundle: &CurvatureBundle,
    geom: &Geometry,
    sign: RicciSign,
    cfg: &ZeroCfg,
) -> Result<EinsteinResult> {
    let n = geom.chart.dimension();
    let a_raw = nprod([Expr::rat(1, n as i64), bundle.scalar_raw.clone()])?;
    let residual = TensorField::from_fn(n, vec![Variance::Down, Variance::Down], |idx| {
        nsum([
            bundle.ricci_hat_raw.get(idx).clone(),
            nprod([
                Expr::int(-1),
                a_raw.clone(),
                geom.chart.metric.get(idx).clone(),
            ])?,
        ])
    })?;
    let rc = tensor_zero_check(&residual, geom.ranges(), cfg)?;
    let a_reported = bundle.ricci_hat_reported(sign)?; // just for the factor
    let _ = a_reported;
    let factor = match bundle.kind {
        crate::connection::ConnectionKind::LeviCivita => match sign {
            RicciSign::Paper => -1,
            RicciSign::Standard => 1,
        },
        crate::connection::ConnectionKind::SemiSymmetric => 1,
    };
    let a = if rc.passed {
        Some(format!("{}", nprod([Expr::int(factor), a_raw])?))
    } else {
        None
    };
    Ok(EinsteinResult {
        verdict: TriState::from_bool(rc.passed),
        max_residual: rc.max_residual,
        a,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct SqeVerify {
    pub verdict: TriState,
    pub max_residual: f64,
    pub semi_ricci_flat: TriState,
}

/// Residual Ŝ − a g − b η⊗η (trace-convention Ŝ).
pub fn sqe_verify(
    bundle: &CurvatureBundle,
    geom: &Geometry,
    a: &Expr,
    b: &Expr,
    eta: &TensorField,
    cfg: &ZeroCfg,
) -> Result<SqeVerify> {
    let n = geom.chart.dimension();
    let residual = TensorField::from_fn(n, vec![Variance::Down, Variance::Down], |idx| {
        nsum([
            bundle.ricci_hat_raw.get(idx).clone(),
            nprod([
                Expr::int(-1),
                a.clone(),
                geom.chart.metric.get(idx).clone(),
            ])?,
            nprod([
                Expr::int(-1),
                b.clone(),
                eta.get(&[idx[0]]).clone(),
                eta.get(&[idx[1]]).clone(),
            ])?,
        ])
    })?;
    let rc = tensor_zero_check(&residual, geom.ranges(), cfg)?;
    let flat = tensor_zero_check(&bundle.ricci_hat_raw, geom.ranges(), cfg)?;
    Ok(SqeVerify {
        verdict: TriState::from_bool(rc.passed),
        max_residual: rc.max_residual,
        semi_ricci_flat: TriState::from_bool(flat.passed),
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct SqeSolved {
    pub a: String,
    pub b: String,
    pub verify: SqeVerify,
    #[serde(skip)]
    pub a_expr: Expr,
    #[serde(skip)]
    pub b_expr: Expr,
}

/// Solve the two-unknown trace system for (a, b) given the direction η, then
/// verify before returning.
pub fn sqe_solve(
    bundle: &CurvatureBundle,
    geom: &Geometry,
    eta: &TensorField,
    cfg: &ZeroCfg,
) -> Result<SqeSolved> {
    let n = geom.chart.dimension();
    let eta_up = raise_index(eta, 0, &geom.inverse)?;
    let mut norm_terms = Vec::new();
    for i in 0..n {
        let a = eta.get(&[i]);
        let b = eta_up.get(&[i]);
        if a.is_zero_const() || b.is_zero_const() {
            continue;
        }
        norm_terms.push(nprod([a.clone(), b.clone()])?);
    }
    let eta_norm = nsum(norm_terms)?;
    if is_zero(&eta_norm, geom.ranges(), cfg)?.passed() {
        return Err(Error::NullGenerator);
    }
    // trace pair: g^{jk} Ŝ_jk = n a + b ηn ; Ŝ(η#,η#) = a ηn + b ηn²
    let mut s_eta_terms = Vec::new();
    for j in 0..n {
        for k in 0..n {
            let s = bundle.ricci_hat_raw.get(&[j, k]);
            let u = eta_up.get(&[j]);
            let v = eta_up.get(&[k]);
            if s.is_zero_const() || u.is_zero_const() || v.is_zero_const() {
                continue;
            }
            s_eta_terms.push(nprod([s.clone(), u.clone(), v.clone()])?);
        }
    }
    let s_eta_eta = nsum(s_eta_terms)?;
    let trace = bundle.scalar_raw.clone();
    // a = (trace·ηn − Ŝηη) / ((n−1)·ηn) ; b = (n·Ŝηη − ηn·trace) / ((n−1)·ηn²)
    let nm1 = Expr::int(n as i64 - 1);
    let a = nprod([
        nsum([
            nprod([trace.clone(), eta_norm.clone()])?,
            Expr::neg(s_eta_eta.clone()),
        ])?,
        Expr::powi(nprod([nm1.clone(), eta_norm.clone()])?, -1),
    ])?;
    let b = nprod([
        nsum([
            nprod([Expr::int(n as i64), s_eta_eta.clone()])?,
            Expr::neg(nprod([eta_norm.clone(), trace])?),
        ])?,
        Expr::powi(
            nprod([nm1, Expr::powi(eta_norm.clone(), 2)])?,
            -1,
        ),
    ])?;
    let verify = sqe_verify(bundle, geom, &a, &b, eta, cfg)?;
    if !verify.verdict.passed() {
        return Err(Error::SqeVerificationFailed {
            residual: verify.max_residual,
        });
    }
    Ok(SqeSolved {
        a: format!("{a}"),
        b: format!("{b}"),
        verify,
        a_expr: a,
        b_expr: b,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct RankCondition {
    pub verdict: TriState,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rho: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pair: Option<(String, String)>,
    pub alpha_is_zero: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

/// Rank condition: Ŝ∧Ŝ proportional to g∧g, with the recovered scalar and,
/// when the generator contraction α = Ŝ(P,P) is nonzero, the derived (a,b).
pub fn rank_condition_check(
    bundle: &CurvatureBundle,
    geom: &Geometry,
    rho: Option<Expr>,
    cfg: &ZeroCfg,
) -> Result<RankCondition> {
    let n = geom.chart.dimension();
    let s = &bundle.ricci_hat_raw;
    let g = &geom.chart.metric;
    let wedge_s = |x: usize, y: usize, z: usize, w: usize| -> Result<Expr> {
        Ok(nsum([
            nprod([s.get(&[y, z]).clone(), s.get(&[x, w]).clone()])?,
            nprod([
                Expr::int(-1),
                s.get(&[x, z]).clone(),
                s.get(&[y, w]).clone(),
            ])?,
        ])?)
    };
    let wedge_g = |x: usize, y: usize, z: usize, w: usize| -> Result<Expr> {
        Ok(nsum([
            nprod([g.get(&[y, z]).clone(), g.get(&[x, w]).clone()])?,
            nprod([
                Expr::int(-1),
                g.get(&[x, z]).clone(),
                g.get(&[y, w]).clone(),
            ])?,
        ])?)
    };

    // detect rho from the first nondegenerate tuple when not supplied
    let mut rho_val: Option<(Expr, (usize, usize, usize, usize))> = rho.map(|r| (r, (0, 0, 0, 0)));
    if rho_val.is_none() {
        'outer: for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    for w in 0..n {
                        let d = wedge_g(x, y, z, w)?;
                        if d.is_zero_const() {
                            continue;
                        }
                        if let ZeroVerdict::Nonzero(_) = is_zero(&d, geom.ranges(), cfg)? {
                            let nmr = wedge_s(x, y, z, w)?;
                            let candidate = nprod([nmr, Expr::powi(d, -1)])?;
                            rho_val = Some((candidate, (x, y, z, w)));
                            break 'outer;
                        }
                    }
                }
            }
        }
    }
    let (rho, rho_tuple) = match rho_val {
        Some(v) => v,
        None => return Err(Error::RhoDegenerate),
    };

    // alpha = Ŝ(P,P), computed up front: the recovery divides by it, and its
    // vanishing is reported even when the proportionality itself fails.
    let alpha = match &geom.p_up {
        Some(p) => {
            let mut terms = Vec::new();
            for j in 0..n {
                for k in 0..n {
                    let sv = s.get(&[j, k]);
                    let pj = p.get(&[j]);
                    let pk = p.get(&[k]);
                    if sv.is_zero_const() || pj.is_zero_const() || pk.is_zero_const() {
                        continue;
                    }
                    terms.push(nprod([sv.clone(), pj.clone(), pk.clone()])?);
                }
            }
            Some(nsum(terms)?)
        }
        None => None,
    };
    let alpha_is_zero = match &alpha {
        Some(a) => is_zero(a, geom.ranges(), cfg)?.passed(),
        None => false,
    };

    let mut max_residual: f64 = 0.0;
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                for w in 0..n {
                    let d = wedge_g(x, y, z, w)?;
                    let residual = nsum([
                        wedge_s(x, y, z, w)?,
                        Expr::neg(nprod([rho.clone(), d.clone()])?),
                    ])?;
                    let (v, sampled) = is_zero_detailed(&residual, geom.ranges(), cfg)?;
                    max_residual = max_residual.max(sampled);
                    if let ZeroVerdict::Nonzero(_) = v {
                        // distinguish inconsistent-rho from a plain failure
                        if !d.is_zero_const() {
                            if let ZeroVerdict::Nonzero(_) = is_zero(&d, geom.ranges(), cfg)? {
                                return Err(Error::RhoInconsistent {
                                    first: format!("{rho_tuple:?}"),
                                    second: format!("({x},{y},{z},{w})"),
                                });
                            }
                        }
                        let mut note = format!(
                            "residual nonzero at ({x},{y},{z},{w}), max |residual| {max_residual:e}"
                        );
                        if alpha_is_zero {
                            note.push_str("; alpha = Shat(P,P) tests zero as well");
                        }
                        return Ok(RankCondition {
                            verdict: TriState::Fail,
                            rho: Some(format!("{rho}")),
                            pair: None,
                            alpha_is_zero,
                            note: Some(note),
                        });
                    }
                }
            }
        }
    }

    let (pair, note) = match &alpha {
        Some(alpha) if alpha_is_zero => (
            None,
            Some("alpha = Shat(P,P) tests zero: (a,b) recovery degenerate".to_string()),
        ),
        Some(alpha) => {
            let a = nprod([rho.clone(), Expr::powi(alpha.clone(), -1)])?;
            let b = nsum([alpha.clone(), Expr::neg(a.clone())])?;
            (Some((format!("{a}"), format!("{b}"))), None)
        }
        None => (None, Some("no generator available".to_string())),
    };

    Ok(RankCondition {
        verdict: TriState::Pass,
        rho: Some(format!("{rho}")),
        pair,
        alpha_is_zero,
        note,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct KillingContraction {
    /// Ŝ(·,P) = S(·,P): holds for every Killing generator.
    pub hat_transfer: CheckResult,
    /// The strict version with S̄ in place of Ŝ: requires a unit generator.
    pub strict: CheckResult,
}

/// Contraction-transfer identities between the two Ricci tensors along the
/// generator, for a Killing one-form.
pub fn killing_contraction_check(geom: &Geometry, cfg: &ZeroCfg) -> Result<KillingContraction> {
    let killing = killing_check(geom, cfg)?;
    if !killing.verdict.passed() {
        return Ok(KillingContraction {
            hat_transfer: CheckResult::not_applicable("generator is not Killing"),
            strict: CheckResult::not_applicable("generator is not Killing"),
        });
    }
    let sb = geom.ssmc_bundle()?;
    let shat_p = geom.contract_with_p(&sb.ricci_hat_raw, 1)?;
    let s_p = geom.contract_with_p(&geom.lc_bundle.ricci_raw, 1)?;
    let hat_residual = shat_p.sub(&s_p)?;
    let hat_transfer = check_tensor(geom, &hat_residual, cfg)?;

    let unit_residual = nsum([
        geom.pi_norm.clone().ok_or(Error::MissingOneForm)?,
        Expr::int(-1),
    ])?;
    let unit = check_scalar(geom, &unit_residual, cfg)?;
    let strict = if unit.verdict.passed() {
        let sbar_p = geom.contract_with_p(&sb.ricci_raw, 1)?;
        let sbar_p_rev = geom.contract_with_p(&sb.ricci_raw, 0)?;
        let r1 = sbar_p.sub(&s_p)?;
        let r2 = sbar_p_rev.sub(&s_p)?;
        let c1 = tensor_zero_check(&r1, geom.ranges(), cfg)?;
        let c2 = tensor_zero_check(&r2, geom.ranges(), cfg)?;
        CheckResult {
            verdict: TriState::from_bool(c1.passed && c2.passed),
            max_residual: c1.max_residual.max(c2.max_residual),
            note: None,
        }
    } else {
        // measure how far off the strict identity is, for the report
        let sbar_p = geom.contract_with_p(&sb.ricci_raw, 1)?;
        let r1 = sbar_p.sub(&s_p)?;
        let c1 = tensor_zero_check(&r1, geom.ranges(), cfg)?;
        CheckResult {
            verdict: TriState::NotApplicable,
            max_residual: c1.max_residual,
            note: Some("generator not unit; strict transfer needs a unit Killing field".into()),
        }
    };
    Ok(KillingContraction {
        hat_transfer,
        strict,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct RicciDerivative {
    pub applicable: bool,
    /// Identity for unit Killing generators relating ∇̄Ŝ, ∇S and S̄(·,P).
    pub identity: CheckResult,
    /// Unit-parallel corollary: ∇̄Ŝ = −π⊗S̄ symmetrized, iff ∇S = 0.
    pub corollary: CheckResult,
    #[serde(skip)]
    pub nabla_bar_shat: Option<TensorField>,
}

/// ∇̄Ŝ and the derivative-transfer identity for unit Killing generators.
pub fn ricci_derivative_check(geom: &Geometry, cfg: &ZeroCfg) -> Result<RicciDerivative> {
    let killing = killing_check(geom, cfg)?;
    let unit_residual = nsum([
        geom.pi_norm.clone().ok_or(Error::MissingOneForm)?,
        Expr::int(-1),
    ])?;
    let unit = check_scalar(geom, &unit_residual, cfg)?;
    if !killing.verdict.passed() || !unit.verdict.passed() {
        let reason = if killing.verdict.passed() {
            "not applicable: generator not unit"
        } else {
            "not applicable: generator not Killing"
        };
        return Ok(RicciDerivative {
            applicable: false,
            identity: CheckResult::not_applicable(reason),
            corollary: CheckResult::not_applicable(reason),
            nabla_bar_shat: None,
        });
    }
    let ss = geom.ssmc.as_ref().ok_or(Error::MissingOneForm)?;
    let sb = geom.ssmc_bundle()?;
    let pi = geom.chart.one_form()?.clone();
    let n = geom.chart.dimension();
    let nb_shat = covariant_derivative(ss, &sb.ricci_hat_raw, &geom.chart)?;
    let d_s = covariant_derivative(&geom.lc, &geom.lc_bundle.ricci_raw, &geom.chart)?;
    let sbar_p = geom.contract_with_p(&sb.ricci_raw, 1)?;

    // identity: (∇̄_i Ŝ)_{jk} = (∇_i S)_{jk} + g_{ik} S̄(e_j,P) − π_j S̄_{ik}
    //                                        + g_{ij} S̄(e_k,P) − π_k S̄_{ij}
    let residual = TensorField::from_fn(
        n,
        vec![Variance::Down, Variance::Down, Variance::Down],
        |idx| {
            let (i, j, k) = (idx[0], idx[1], idx[2]);
            nsum([
                nb_shat.get(&[i, j, k]).clone(),
                Expr::neg(d_s.get(&[i, j, k]).clone()),
                nprod([
                    Expr::int(-1),
                    geom.chart.metric.get(&[i, k]).clone(),
                    sbar_p.get(&[j]).clone(),
                ])?,
                nprod([
                    pi.get(&[j]).clone(),
                    sb.ricci_raw.get(&[i, k]).clone(),
                ])?,
                nprod([
                    Expr::int(-1),
                    geom.chart.metric.get(&[i, j]).clone(),
                    sbar_p.get(&[k]).clone(),
                ])?,
                nprod([
                    pi.get(&[k]).clone(),
                    sb.ricci_raw.get(&[i, j]).clone(),
                ])?,
            ])
        },
    )?;
    let identity = check_tensor(geom, &residual, cfg)?;

    // corollary (unit parallel): ∇S = 0 ⟺ (∇̄Ŝ)_{ijk} = −π_j S̄_{ik} − π_k S̄_{ij}
    let parallel = parallel_check(geom, cfg)?;
    let corollary = if parallel.parallel.verdict.passed() {
        let lhs_zero = tensor_zero_check(&d_s, geom.ranges(), cfg)?.passed;
        let cor_residual = TensorField::from_fn(
            n,
            vec![Variance::Down, Variance::Down, Variance::Down],
            |idx| {
                let (i, j, k) = (idx[0], idx[1], idx[2]);
                nsum([
                    nb_shat.get(&[i, j, k]).clone(),
                    nprod([pi.get(&[j]).clone(), sb.ricci_raw.get(&[i, k]).clone()])?,
                    nprod([pi.get(&[k]).clone(), sb.ricci_raw.get(&[i, j]).clone()])?,
                ])
            },
        )?;
        let rc = tensor_zero_check(&cor_residual, geom.ranges(), cfg)?;
        CheckResult {
            verdict: TriState::from_bool(lhs_zero == rc.passed),
            max_residual: rc.max_residual,
            note: Some(format!(
                "ricci-symmetric: {lhs_zero}; transfer form holds: {}",
                rc.passed
            )),
        }
    } else {
        CheckResult::not_applicable("generator not parallel")
    };

    Ok(RicciDerivative {
        applicable: true,
        identity,
        corollary,
        nabla_bar_shat: Some(nb_shat),
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct TheoremVerdict {
    pub verdict: TriState,
    pub note: String,
}

/// Killing generator + Einstein base metric force the quasi-Einstein form of
/// Ŝ: verifies the reduction identity and the derived coefficient pair.
pub fn killing_einstein_structure_check(geom: &Geometry, cfg: &ZeroCfg) -> Result<TheoremVerdict> {
    let killing = killing_check(geom, cfg)?;
    if !killing.verdict.passed() {
        return Ok(TheoremVerdict {
            verdict: TriState::NotApplicable,
            note: "hypothesis not met: generator is not Killing".into(),
        });
    }
    let sb = geom.ssmc_bundle()?;
    let pi = geom.chart.one_form()?.clone();
    let pi_norm = geom.pi_norm.clone().ok_or(Error::MissingOneForm)?;
    let n = geom.chart.dimension();
    let nm2 = Expr::int(n as i64 - 2);
    // reduction: Ŝ = S + (n−2) π⊗π − (n−2) π(P) g
    let residual = TensorField::from_fn(n, vec![Variance::Down, Variance::Down], |idx| {
        let (j, k) = (idx[0], idx[1]);
        nsum([
            sb.ricci_hat_raw.get(&[j, k]).clone(),
            Expr::neg(geom.lc_bundle.ricci_raw.get(&[j, k]).clone()),
            nprod([
                Expr::int(-1),
                nm2.clone(),
                pi.get(&[j]).clone(),
                pi.get(&[k]).clone(),
            ])?,
            nprod([
                nm2.clone(),
                pi_norm.clone(),
                geom.chart.metric.get(&[j, k]).clone(),
            ])?,
        ])
    })?;
    let reduction = check_tensor(geom, &residual, cfg)?;
    if !reduction.verdict.passed() {
        return Ok(TheoremVerdict {
            verdict: TriState::Fail,
            note: format!(
                "reduction identity failed, max |residual| {:e}",
                reduction.max_residual
            ),
        });
    }
    let einstein = einstein_check(&geom.lc_bundle, geom, RicciSign::Standard, cfg)?;
    if !einstein.verdict.passed() {
        return Ok(TheoremVerdict {
            verdict: TriState::Pass,
            note: "reduction identity verified; base metric not Einstein, structure conclusion vacuous".into(),
        });
    }
    // derived pair: a = a_einstein − (n−2) π(P), b = n−2 (trace convention)
    let a_raw = nprod([
        Expr::rat(1, n as i64),
        geom.lc_bundle.scalar_raw.clone(),
    ])?;
    let a = nsum([a_raw, nprod([Expr::int(-1), nm2.clone(), pi_norm])?])?;
    let verify = sqe_verify(sb, geom, &a, &nm2, &pi, cfg)?;
    if verify.verdict.passed() {
        Ok(TheoremVerdict {
            verdict: TriState::Pass,
            note: format!("structure confirmed with a = {a}, b = {nm2}"),
        })
    } else {
        Ok(TheoremVerdict {
            verdict: TriState::Fail,
            note: format!(
                "derived pair failed verification, max |residual| {:e}",
                verify.max_residual
            ),
        })
    }
}

/// For a ∇̄-Ricci-symmetric quasi-Einstein structure with unit generator,
/// a + b must be constant. Guards run in order: the structure must verify
/// with the supplied pair and a unit η before the conclusion is asserted.
pub fn sum_constancy_check(
    geom: &Geometry,
    a: &Expr,
    b: &Expr,
    eta: &TensorField,
    cfg: &ZeroCfg,
) -> Result<TheoremVerdict> {
    let sb = geom.ssmc_bundle()?;
    let eta_up = raise_index(eta, 0, &geom.inverse)?;
    let n = geom.chart.dimension();
    let mut norm_terms = Vec::new();
    for i in 0..n {
        let u = eta.get(&[i]);
        let v = eta_up.get(&[i]);
        if u.is_zero_const() || v.is_zero_const() {
            continue;
        }
        norm_terms.push(nprod([u.clone(), v.clone()])?);
    }
    let unit_residual = nsum([nsum(norm_terms)?, Expr::int(-1)])?;
    if !check_scalar(geom, &unit_residual, cfg)?.verdict.passed() {
        return Ok(TheoremVerdict {
            verdict: TriState::NotApplicable,
            note: "not applicable: eta is not unit".into(),
        });
    }
    let verify = sqe_verify(sb, geom, a, b, eta, cfg)?;
    if !verify.verdict.passed() {
        return Ok(TheoremVerdict {
            verdict: TriState::NotApplicable,
            note: format!(
                "not applicable: quasi-Einstein structure not satisfied (residual {:e})",
                verify.max_residual
            ),
        });
    }
    let ss = geom.ssmc.as_ref().ok_or(Error::MissingOneForm)?;
    let nb_shat = covariant_derivative(ss, &sb.ricci_hat_raw, &geom.chart)?;
    if !tensor_zero_check(&nb_shat, geom.ranges(), cfg)?.passed {
        return Ok(TheoremVerdict {
            verdict: TriState::NotApplicable,
            note: "hypothesis not met: not Ricci symmetric for the semi-symmetric connection".into(),
        });
    }
    let sum = nsum([a.clone(), b.clone()])?;
    let mut max_residual: f64 = 0.0;
    let mut pass = true;
    for c in geom.chart.coordinates().to_vec() {
        let d = sum.differentiate(&c)?;
        let (v, sampled) = is_zero_detailed(&d, geom.ranges(), cfg)?;
        max_residual = max_residual.max(sampled);
        if !v.passed() {
            pass = false;
        }
    }
    Ok(TheoremVerdict {
        verdict: TriState::from_bool(pass),
        note: format!("a + b = {sum}; max |d(a+b)| over coordinates {max_residual:e}"),
    })
}

/// Unit-parallel generator with R̄·S̄ = −Q(g,S̄): Ricci semi-symmetry of the
/// base forces S = (n−2)(g − π⊗π); the converse direction is checked when S
/// already has that exact form.
pub fn quasi_einstein_form_check(geom: &Geometry, cfg: &ZeroCfg) -> Result<TheoremVerdict> {
    let parallel = parallel_check(geom, cfg)?;
    if !parallel.parallel.verdict.passed() || !parallel.unit_norm.verdict.passed() {
        return Ok(TheoremVerdict {
            verdict: TriState::NotApplicable,
            note: "hypothesis not met: generator is not unit parallel".into(),
        });
    }
    let sb = geom.ssmc_bundle()?;
    let pi = geom.chart.one_form()?.clone();
    let n = geom.chart.dimension();
    let nm2 = Expr::int(n as i64 - 2);

    let rbar_dot_sbar = r_dot_h(&sb.riemann, &sb.ricci_raw)?;
    let q_g_sbar = q_theta_h(&geom.chart.metric, &sb.ricci_raw, geom.ranges(), cfg)?;
    let hyp_residual = rbar_dot_sbar.add(&q_g_sbar)?;
    let hyp1 = tensor_zero_check(&hyp_residual, geom.ranges(), cfg)?;

    let r_dot_s = r_dot_h(&geom.lc_bundle.riemann, &geom.lc_bundle.ricci_raw)?;
    let hyp2 = tensor_zero_check(&r_dot_s, geom.ranges(), cfg)?;

    // conclusion form: S − (n−2) g + (n−2) π⊗π
    let form_residual = TensorField::from_fn(n, vec![Variance::Down, Variance::Down], |idx| {
        let (j, k) = (idx[0], idx[1]);
        nsum([
            geom.lc_bundle.ricci_raw.get(&[j, k]).clone(),
            nprod([
                Expr::int(-1),
                nm2.clone(),
                geom.chart.metric.get(&[j, k]).clone(),
            ])?,
            nprod([
                nm2.clone(),
                pi.get(&[j]).clone(),
                pi.get(&[k]).clone(),
            ])?,
        ])
    })?;
    let form = tensor_zero_check(&form_residual, geom.ranges(), cfg)?;

    if hyp1.passed && hyp2.passed {
        if form.passed {
            Ok(TheoremVerdict {
                verdict: TriState::Pass,
                note: "hypotheses hold and S has the quasi-Einstein form; converse (Ricci semi-symmetry) also verified".into(),
            })
        } else {
            Ok(TheoremVerdict {
                verdict: TriState::Fail,
                note: format!(
                    "hypotheses hold but S misses the form, max |residual| {:e}",
                    form.max_residual
                ),
            })
        }
    } else if form.passed {
        // converse direction: the form implies Ricci semi-symmetry
        if hyp2.passed {
            Ok(TheoremVerdict {
                verdict: TriState::Pass,
                note: "converse verified: S has the form and R·S = 0".into(),
            })
        } else {
            Ok(TheoremVerdict {
                verdict: TriState::Fail,
                note: "S has the form but R·S does not vanish".into(),
            })
        }
    } else {
        Ok(TheoremVerdict {
            verdict: TriState::NotApplicable,
            note: format!(
                "hypothesis not met: Rbar.Sbar + Q(g,Sbar) max |residual| {:e}, R.S max |residual| {:e}",
                hyp1.max_residual, hyp2.max_residual
            ),
        })
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SemisymmetryFlags {
    pub rbar_rbar: TriState,
    pub rbar_shat: TriState,
    pub r_s: TriState,
    pub nablabar_rbar: TriState,
    pub nablabar_shat: TriState,
}

/// Semi-symmetry diagnostics for both connections.
pub fn semisymmetry_report(geom: &Geometry, cfg: &ZeroCfg) -> Result<SemisymmetryFlags> {
    let r_s = r_dot_h(&geom.lc_bundle.riemann, &geom.lc_bundle.ricci_raw)?;
    let r_s_flag = TriState::from_bool(tensor_zero_check(&r_s, geom.ranges(), cfg)?.passed);
    match (&geom.ssmc, &geom.ssmc_bundle) {
        (Some(ss), Some(sb)) => {
            let rbar_low = lower_index(&sb.riemann, 0, &geom.chart.metric)?;
            let rr = r_dot_h(&sb.riemann, &rbar_low)?;
            let rbar_rbar = TriState::from_bool(tensor_zero_check(&rr, geom.ranges(), cfg)?.passed);
            let rs = r_dot_h(&sb.riemann, &sb.ricci_hat_raw)?;
            let rbar_shat = TriState::from_bool(tensor_zero_check(&rs, geom.ranges(), cfg)?.passed);
            let dr = covariant_derivative(ss, &sb.riemann, &geom.chart)?;
            let nablabar_rbar =
                TriState::from_bool(tensor_zero_check(&dr, geom.ranges(), cfg)?.passed);
            let dsh = covariant_derivative(ss, &sb.ricci_hat_raw, &geom.chart)?;
            let nablabar_shat =
                TriState::from_bool(tensor_zero_check(&dsh, geom.ranges(), cfg)?.passed);
            Ok(SemisymmetryFlags {
                rbar_rbar,
                rbar_shat,
                r_s: r_s_flag,
                nablabar_rbar,
                nablabar_shat,
            })
        }
        _ => Ok(SemisymmetryFlags {
            rbar_rbar: TriState::NotApplicable,
            rbar_shat: TriState::NotApplicable,
            r_s: r_s_flag,
            nablabar_rbar: TriState::NotApplicable,
            nablabar_shat: TriState::NotApplicable,
        }),
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Flags {
    pub killing: TriState,
    pub parallel: TriState,
    pub closed: TriState,
    pub unit_norm: TriState,
    pub einstein: TriState,
    pub sqe: TriState,
    pub semi_ricci_flat: TriState,
}

#[derive(Debug, Clone, Serialize)]
pub struct Witnesses {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub einstein_a: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sqe_a: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sqe_b: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sqe_eta: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rank_rho: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct TheoremEntry {
    pub verdict: TriState,
    pub note: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct ClassificationReport {
    pub chart: String,
    pub flags: Flags,
    pub witnesses: Witnesses,
    pub semisymmetry: SemisymmetryFlags,
    pub residual_summaries: BTreeMap<String, f64>,
    pub theorems: BTreeMap<String, TheoremEntry>,
}

/// Run every check and assemble the report.
pub fn classification_report(
    geom: &Geometry,
    sign: RicciSign,
    cfg: &ZeroCfg,
) -> Result<ClassificationReport> {
    let mut residuals = BTreeMap::new();
    let mut theorems = BTreeMap::new();

    let has_pi = geom.chart.one_form.is_some();

    let (killing, parallel, closed, unit_norm) = if has_pi {
        let k = killing_check(geom, cfg)?;
        let p = parallel_check(geom, cfg)?;
        let c = closed_check(geom, cfg)?;
        residuals.insert("killing".into(), k.max_residual);
        residuals.insert("parallel".into(), p.parallel.max_residual);
        residuals.insert("unit_norm".into(), p.unit_norm.max_residual);
        residuals.insert("closed".into(), c.max_residual);
        (
            k.verdict,
            p.parallel.verdict,
            c.verdict,
            p.unit_norm.verdict,
        )
    } else {
        (
            TriState::NotApplicable,
            TriState::NotApplicable,
            TriState::NotApplicable,
            TriState::NotApplicable,
        )
    };

    let einstein = einstein_check(&geom.lc_bundle, geom, sign, cfg)?;
    residuals.insert("einstein".into(), einstein.max_residual);

    let mut witnesses = Witnesses {
        einstein_a: einstein.a.clone(),
        sqe_a: None,
        sqe_b: None,
        sqe_eta: None,
        rank_rho: None,
    };

    let (sqe, semi_ricci_flat) = if has_pi {
        let sb = geom.ssmc_bundle()?;
        let pi = geom.chart.one_form()?.clone();
        match sqe_solve(sb, geom, &pi, cfg) {
            Ok(solved) => {
                residuals.insert("sqe".into(), solved.verify.max_residual);
                witnesses.sqe_a = Some(solved.a.clone());
                witnesses.sqe_b = Some(solved.b.clone());
                witnesses.sqe_eta =
                    Some((0..geom.chart.dimension()).map(|i| format!("{}", pi.get(&[i]))).collect());
                (TriState::Pass, solved.verify.semi_ricci_flat)
            }
            Err(Error::NullGenerator) => (TriState::NotApplicable, {
                let flat = tensor_zero_check(&sb.ricci_hat_raw, geom.ranges(), cfg)?;
                TriState::from_bool(flat.passed)
            }),
            Err(Error::SqeVerificationFailed { residual }) => {
                residuals.insert("sqe".into(), residual);
                let flat = tensor_zero_check(&sb.ricci_hat_raw, geom.ranges(), cfg)?;
                (TriState::Fail, TriState::from_bool(flat.passed))
            }
            Err(e) => return Err(e),
        }
    } else {
        (TriState::NotApplicable, TriState::NotApplicable)
    };

    if has_pi {
        let sb = geom.ssmc_bundle()?;
        match rank_condition_check(sb, geom, None, cfg) {
            Ok(rank) => {
                witnesses.rank_rho = rank.rho.clone();
                theorems.insert(
                    "rank_condition".into(),
                    TheoremEntry {
                        verdict: rank.verdict,
                        note: rank
                            .note
                            .unwrap_or_else(|| "proportionality verified".into()),
                    },
                );
            }
            Err(Error::RhoDegenerate) => {
                theorems.insert(
                    "rank_condition".into(),
                    TheoremEntry {
                        verdict: TriState::NotApplicable,
                        note: "all wedge components degenerate".into(),
                    },
                );
            }
            Err(Error::RhoInconsistent { first, second }) => {
                theorems.insert(
                    "rank_condition".into(),
                    TheoremEntry {
                        verdict: TriState::Fail,
                        note: format!("inconsistent scalar between tuples {first} and {second}"),
                    },
                );
            }
            Err(e) => return Err(e),
        }

        let structure = killing_einstein_structure_check(geom, cfg)?;
        theorems.insert(
            "killing_einstein_structure".into(),
            TheoremEntry {
                verdict: structure.verdict,
                note: structure.note,
            },
        );
        let deriv = ricci_derivative_check(geom, cfg)?;
        theorems.insert(
            "ricci_derivative_identity".into(),
            TheoremEntry {
                verdict: deriv.identity.verdict,
                note: deriv
                    .identity
                    .note
                    .clone()
                    .unwrap_or_else(|| "derivative transfer identity".into()),
            },
        );
        theorems.insert(
            "ricci_derivative_corollary".into(),
            TheoremEntry {
                verdict: deriv.corollary.verdict,
                note: deriv
                    .corollary
                    .note
                    .clone()
                    .unwrap_or_else(|| "unit-parallel corollary".into()),
            },
        );
        let pi = geom.chart.one_form()?.clone();
        let sum = match sqe_solve(geom.ssmc_bundle()?, geom, &pi, cfg) {
            Ok(solved) => {
                sum_constancy_check(geom, &solved.a_expr, &solved.b_expr, &pi, cfg)?
            }
            Err(Error::NullGenerator) | Err(Error::SqeVerificationFailed { .. }) => {
                TheoremVerdict {
                    verdict: TriState::NotApplicable,
                    note: "not applicable: no verified quasi-Einstein pair for the generator"
                        .into(),
                }
            }
            Err(e) => return Err(e),
        };
        theorems.insert(
            "sum_constancy".into(),
            TheoremEntry {
                verdict: sum.verdict,
                note: sum.note,
            },
        );
        let qef = quasi_einstein_form_check(geom, cfg)?;
        theorems.insert(
            "quasi_einstein_form".into(),
            TheoremEntry {
                verdict: qef.verdict,
                note: qef.note,
            },
        );
        let transfer = killing_contraction_check(geom, cfg)?;
        theorems.insert(
            "killing_contraction".into(),
            TheoremEntry {
                verdict: transfer.hat_transfer.verdict,
                note: "symmetrized Ricci contraction transfer along the generator".into(),
            },
        );
        theorems.insert(
            "killing_contraction_strict".into(),
            TheoremEntry {
                verdict: transfer.strict.verdict,
                note: transfer
                    .strict
                    .note
                    .unwrap_or_else(|| "unsymmetrized transfer (unit generators)".into()),
            },
        );
    }

    let semisymmetry = semisymmetry_report(geom, cfg)?;

    Ok(ClassificationReport {
        chart: geom.chart.name.clone(),
        flags: Flags {
            killing,
            parallel,
            closed,
            unit_norm,
            einstein: einstein.verdict,
            sqe,
            semi_ricci_flat,
        },
        witnesses,
        semisymmetry,
        residual_summaries: residuals,
        theorems,
    })
}
