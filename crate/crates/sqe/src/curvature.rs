//! Riemann, Ricci and scalar curvature for either connection, the
//! deformation tensor of the one-form, and the curvature-action operators.

use std::collections::BTreeMap;

use crate::chart::{inverse_metric, raise_index, ChartSpec};
use crate::connection::{covariant_derivative, levi_civita, semi_symmetric, Connection, ConnectionKind};
use crate::error::{Error, Result};
use crate::expr::{is_zero, is_zero_detailed, nprod, nsum, Expr, ZeroCfg, ZeroVerdict};
use crate::tensor::{TensorField, Variance};

/// Sign convention for the reported Levi-Civita Ricci tensor.
///
/// `Paper` negates the plain first-slot trace: fixed by running the Kottler
/// chart both ways once — the trace itself gives S = +Λ g there, while the
/// reference tables this tool reproduces use S = −Λ g. `Standard` keeps the
/// trace (the common convention in which the round sphere has positive
/// Ricci). The semi-symmetric Ricci is always reported as the plain trace:
/// the reference tables for it (3-D example, and the ∓m/r² off-diagonal
/// orientation on the Schwarzschild chart) are in that orientation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum RicciSign {
    #[default]
    Paper,
    Standard,
}

impl RicciSign {
    pub fn label(self) -> &'static str {
        match self {
            RicciSign::Paper => "paper",
            RicciSign::Standard => "standard",
        }
    }

    fn lc_factor(self) -> i64 {
        match self {
            RicciSign::Paper => -1,
            RicciSign::Standard => 1,
        }
    }
}

#[derive(Debug, Clone)]
pub struct CurvatureBundle {
    pub kind: ConnectionKind,
    /// R^l_{ijk} with slots (l; i, j, k): R(∂_i, ∂_j)∂_k = R^l_{ijk} ∂_l.
    pub riemann: TensorField,
    /// Plain first-slot trace S_{jk} = R^i_{ijk}, before any sign convention.
    pub ricci_raw: TensorField,
    /// Symmetrization Ŝ = ½(S + Sᵀ) of the raw trace.
    pub ricci_hat_raw: TensorField,
    /// g^{jk} Ŝ_{jk} of the raw trace.
    pub scalar_raw: Expr,
}

impl CurvatureBundle {
    fn report_factor(&self, sign: RicciSign) -> i64 {
        match self.kind {
            ConnectionKind::LeviCivita => sign.lc_factor(),
            ConnectionKind::SemiSymmetric => 1,
        }
    }

    /// Ricci tensor in the chosen reporting convention.
    pub fn ricci_reported(&self, sign: RicciSign) -> Result<TensorField> {
        scale_tensor(&self.ricci_raw, self.report_factor(sign))
    }

    pub fn ricci_hat_reported(&self, sign: RicciSign) -> Result<TensorField> {
        scale_tensor(&self.ricci_hat_raw, self.report_factor(sign))
    }

    pub fn scalar_reported(&self, sign: RicciSign) -> Result<Expr> {
        nprod([Expr::int(self.report_factor(sign)), self.scalar_raw.clone()]).map_err(Into::into)
    }
}

fn scale_tensor(t: &TensorField, factor: i64) -> Result<TensorField> {
    if factor == 1 {
        return Ok(t.clone());
    }
    t.map(|e| nprod([Expr::int(factor), e.clone()])).map_err(Into::into)
}

/// R^l_{ijk} = ∂_i Γ^l_{jk} − ∂_j Γ^l_{ik} + Γ^l_{im} Γ^m_{jk} − Γ^l_{jm} Γ^m_{ik}.
pub fn riemann(conn: &Connection, chart: &ChartSpec) -> Result<TensorField> {
    let n = chart.dimension();
    let coords = chart.coordinates().to_vec();
    let g = &conn.gamma;
    TensorField::from_fn(
        n,
        vec![Variance::Up, Variance::Down, Variance::Down, Variance::Down],
        |idx| {
            let (l, i, j, k) = (idx[0], idx[1], idx[2], idx[3]);
            let mut terms = vec![
                g.get(&[l, j, k]).differentiate(&coords[i])?,
                Expr::neg(g.get(&[l, i, k]).differentiate(&coords[j])?),
            ];
            for m in 0..n {
                let a1 = g.get(&[l, i, m]);
                let b1 = g.get(&[m, j, k]);
                if !a1.is_zero_const() && !b1.is_zero_const() {
                    terms.push(nprod([a1.clone(), b1.clone()])?);
                }
                let a2 = g.get(&[l, j, m]);
                let b2 = g.get(&[m, i, k]);
                if !a2.is_zero_const() && !b2.is_zero_const() {
                    terms.push(nprod([Expr::int(-1), a2.clone(), b2.clone()])?);
                }
            }
            nsum(terms)
        },
    )
    .map_err(Into::into)
}

/// Full curvature data of a connection.
pub fn ricci(conn: &Connection, chart: &ChartSpec, cfg: &ZeroCfg) -> Result<CurvatureBundle> {
    let n = chart.dimension();
    let riem = riemann(conn, chart)?;
    let ricci_raw = TensorField::from_fn(n, vec![Variance::Down, Variance::Down], |idx| {
        let (j, k) = (idx[0], idx[1]);
        nsum((0..n).map(|i| riem.get(&[i, i, j, k]).clone()))
    })?;
    let ricci_hat_raw = TensorField::from_fn(n, vec![Variance::Down, Variance::Down], |idx| {
        let (j, k) = (idx[0], idx[1]);
        nprod([
            Expr::rat(1, 2),
            nsum([
                ricci_raw.get(&[j, k]).clone(),
                ricci_raw.get(&[k, j]).clone(),
            ])?,
        ])
    })?;
    let inv = inverse_metric(chart, cfg)?;
    let mut scalar_terms = Vec::new();
    for j in 0..n {
        for k in 0..n {
            let a = inv.get(&[j, k]);
            let b = ricci_hat_raw.get(&[j, k]);
            if a.is_zero_const() || b.is_zero_const() {
                continue;
            }
            scalar_terms.push(nprod([a.clone(), b.clone()])?);
        }
    }
    let scalar_raw = nsum(scalar_terms)?;
    Ok(CurvatureBundle {
        kind: conn.kind,
        riemann: riem,
        ricci_raw,
        ricci_hat_raw,
        scalar_raw,
    })
}

/// A_{jk} = (∇_j π)_k − π_j π_k + ½ π(P) g_{jk}, with ∇ the Levi-Civita
/// connection.
pub fn deformation_tensor(chart: &ChartSpec, cfg: &ZeroCfg) -> Result<TensorField> {
    let pi = chart.one_form()?.clone();
    let lc = levi_civita(chart, cfg)?;
    let dpi = covariant_derivative(&lc, &pi, chart)?;
    let pi_p = generator_norm(chart, cfg)?;
    let n = chart.dimension();
    TensorField::from_fn(n, vec![Variance::Down, Variance::Down], |idx| {
        let (j, k) = (idx[0], idx[1]);
        nsum([
            dpi.get(&[j, k]).clone(),
            nprod([Expr::int(-1), pi.get(&[j]).clone(), pi.get(&[k]).clone()])?,
            nprod([
                Expr::rat(1, 2),
                pi_p.clone(),
                chart.metric.get(&[j, k]).clone(),
            ])?,
        ])
    })
    .map_err(Into::into)
}

/// π(P) = g^{ij} π_i π_j.
pub fn generator_norm(chart: &ChartSpec, cfg: &ZeroCfg) -> Result<Expr> {
    let pi = chart.one_form()?;
    let inv = inverse_metric(chart, cfg)?;
    let n = chart.dimension();
    let mut terms = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let a = inv.get(&[i, j]);
            let b = pi.get(&[i]);
            let c = pi.get(&[j]);
            if a.is_zero_const() || b.is_zero_const() || c.is_zero_const() {
                continue;
            }
            terms.push(nprod([a.clone(), b.clone(), c.clone()])?);
        }
    }
    nsum(terms).map_err(Into::into)
}

/// div P = g^{ij} (∇_i π)_j under the Levi-Civita connection.
pub fn generator_divergence(chart: &ChartSpec, cfg: &ZeroCfg) -> Result<Expr> {
    let pi = chart.one_form()?.clone();
    let lc = levi_civita(chart, cfg)?;
    let dpi = covariant_derivative(&lc, &pi, chart)?;
    let inv = inverse_metric(chart, cfg)?;
    let n = chart.dimension();
    let mut terms = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let a = inv.get(&[i, j]);
            let b = dpi.get(&[i, j]);
            if a.is_zero_const() || b.is_zero_const() {
                continue;
            }
            terms.push(nprod([a.clone(), b.clone()])?);
        }
    }
    nsum(terms).map_err(Into::into)
}

#[derive(Debug, Clone, PartialEq)]
pub struct RelationCheck {
    pub residual: TensorField,
    pub passed: bool,
    pub max_residual: f64,
    pub first_failure: Option<Vec<usize>>,
}

/// Verdict over all components of a residual tensor.
pub fn tensor_zero_check(
    t: &TensorField,
    ranges: &BTreeMap<String, (f64, f64)>,
    cfg: &ZeroCfg,
) -> Result<RelationCheck> {
    let mut max_residual: f64 = 0.0;
    let mut passed = true;
    let mut first_failure = None;
    for idx in t.indices() {
        let c = t.get(&idx);
        if c.is_zero_const() {
            continue;
        }
        let (verdict, sampled) = is_zero_detailed(c, ranges, cfg)?;
        max_residual = max_residual.max(sampled);
        if let ZeroVerdict::Nonzero(_) = verdict {
            passed = false;
            if first_failure.is_none() {
                first_failure = Some(idx);
            }
        }
    }
    Ok(RelationCheck {
        residual: t.clone(),
        passed,
        max_residual,
        first_failure,
    })
}

/// Residual of the curvature relation between the two connections:
/// R̄^l_{ijk} − R^l_{ijk} − [A_{ik} δ^l_j − A_{jk} δ^l_i + g_{ik} A_j{}^l − g_{jk} A_i{}^l].
pub fn verify_curvature_relation(chart: &ChartSpec, cfg: &ZeroCfg) -> Result<RelationCheck> {
    let lc = levi_civita(chart, cfg)?;
    let ss = semi_symmetric(chart, cfg)?;
    let r = riemann(&lc, chart)?;
    let rb = riemann(&ss, chart)?;
    let a = deformation_tensor(chart, cfg)?;
    let inv = inverse_metric(chart, cfg)?;
    let a_mixed = raise_index(&a, 1, &inv)?; // A_j{}^l on slots (j, l)
    let n = chart.dimension();
    let residual = TensorField::from_fn(
        n,
        vec![Variance::Up, Variance::Down, Variance::Down, Variance::Down],
        |idx| {
            let (l, i, j, k) = (idx[0], idx[1], idx[2], idx[3]);
            let mut terms = vec![
                rb.get(&[l, i, j, k]).clone(),
                Expr::neg(r.get(&[l, i, j, k]).clone()),
            ];
            if l == j {
                terms.push(Expr::neg(a.get(&[i, k]).clone()));
            }
            if l == i {
                terms.push(a.get(&[j, k]).clone());
            }
            terms.push(nprod([
                Expr::int(-1),
                chart.metric.get(&[i, k]).clone(),
                a_mixed.get(&[j, l]).clone(),
            ])?);
            terms.push(nprod([
                chart.metric.get(&[j, k]).clone(),
                a_mixed.get(&[i, l]).clone(),
            ])?);
            nsum(terms)
        },
    )?;
    tensor_zero_check(&residual, &chart.sample_ranges, cfg)
}

/// Residual of the Ricci relation between the two connections:
/// S̄_{jk} − [S_{jk} − (n−2)(∇_j π)_k + (n−2) π_j π_k − ((n−2) π(P) + div P) g_{jk}].
pub fn verify_ricci_relation(chart: &ChartSpec, cfg: &ZeroCfg) -> Result<RelationCheck> {
    let lc = levi_civita(chart, cfg)?;
    let ss = semi_symmetric(chart, cfg)?;
    let s = ricci(&lc, chart, cfg)?.ricci_raw;
    let sb = ricci(&ss, chart, cfg)?.ricci_raw;
    let pi = chart.one_form()?.clone();
    let dpi = covariant_derivative(&lc, &pi, chart)?;
    let pi_p = generator_norm(chart, cfg)?;
    let div_p = generator_divergence(chart, cfg)?;
    let n = chart.dimension();
    let nm2 = Expr::int(n as i64 - 2);
    let trace_term = nsum([nprod([nm2.clone(), pi_p])?, div_p])?;
    let residual = TensorField::from_fn(n, vec![Variance::Down, Variance::Down], |idx| {
        let (j, k) = (idx[0], idx[1]);
        nsum([
            sb.get(&[j, k]).clone(),
            Expr::neg(s.get(&[j, k]).clone()),
            nprod([nm2.clone(), dpi.get(&[j, k]).clone()])?,
            nprod([
                Expr::int(-1),
                nm2.clone(),
                pi.get(&[j]).clone(),
                pi.get(&[k]).clone(),
            ])?,
            nprod([trace_term.clone(), chart.metric.get(&[j, k]).clone()])?,
        ])
    })?;
    tensor_zero_check(&residual, &chart.sample_ranges, cfg)
}

/// (R(X,Y)·H)(W_1..W_k) = −Σ_s H(..., R(X,Y)W_s, ...); output slots are
/// ordered (W_1..W_k; X, Y).
pub fn r_dot_h(riemann: &TensorField, h: &TensorField) -> Result<TensorField> {
    if h.variance().iter().any(|v| *v != Variance::Down) {
        return Err(Error::NotDownTensor);
    }
    let n = h.dim();
    let k = h.rank();
    let mut variance = vec![Variance::Down; k + 2];
    variance[k] = Variance::Down;
    variance[k + 1] = Variance::Down;
    TensorField::from_fn(n, variance, |idx| {
        let ws = &idx[..k];
        let (x, y) = (idx[k], idx[k + 1]);
        let mut terms = Vec::new();
        for s in 0..k {
            for m in 0..n {
                let r = riemann.get(&[m, x, y, ws[s]]);
                if r.is_zero_const() {
                    continue;
                }
                let mut hidx = ws.to_vec();
                hidx[s] = m;
                let hv = h.get(&hidx);
                if hv.is_zero_const() {
                    continue;
                }
                terms.push(nprod([Expr::int(-1), r.clone(), hv.clone()])?);
            }
        }
        nsum(terms)
    })
    .map_err(Into::into)
}

/// Q(θ,H)(W_1..W_k; X, Y) = −Σ_s H(..., (X∧_θY)W_s, ...) with
/// (X∧_θY)Z = θ(Y,Z)X − θ(X,Z)Y.
pub fn q_theta_h(
    theta: &TensorField,
    h: &TensorField,
    ranges: &BTreeMap<String, (f64, f64)>,
    cfg: &ZeroCfg,
) -> Result<TensorField> {
    if h.variance().iter().any(|v| *v != Variance::Down) {
        return Err(Error::NotDownTensor);
    }
    let n = theta.dim();
    for i in 0..n {
        for j in (i + 1)..n {
            let d = Expr::sub(theta.get(&[i, j]).clone(), theta.get(&[j, i]).clone());
            if !is_zero(&d, ranges, cfg)?.passed() {
                return Err(Error::AsymmetricTheta { i, j });
            }
        }
    }
    let k = h.rank();
    let variance = vec![Variance::Down; k + 2];
    TensorField::from_fn(n, variance, |idx| {
        let ws = &idx[..k];
        let (x, y) = (idx[k], idx[k + 1]);
        let mut terms = Vec::new();
        for s in 0..k {
            // ((X ∧_θ Y) W_s)^m = θ(Y, W_s) δ^m_x − θ(X, W_s) δ^m_y
            let tyw = theta.get(&[y, ws[s]]);
            if !tyw.is_zero_const() {
                let mut hidx = ws.to_vec();
                hidx[s] = x;
                let hv = h.get(&hidx);
                if !hv.is_zero_const() {
                    terms.push(nprod([Expr::int(-1), tyw.clone(), hv.clone()])?);
                }
            }
            let txw = theta.get(&[x, ws[s]]);
            if !txw.is_zero_const() {
                let mut hidx = ws.to_vec();
                hidx[s] = y;
                let hv = h.get(&hidx);
                if !hv.is_zero_const() {
                    terms.push(nprod([txw.clone(), hv.clone()])?);
                }
            }
        }
        nsum(terms)
    })
    .map_err(Into::into)
}
