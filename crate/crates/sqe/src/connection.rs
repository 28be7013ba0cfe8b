//! Levi-Civita and semi-symmetric metric connection coefficients.
//!
//! Index convention: `gamma[(k, i, j)]` is the coefficient of the derivative
//! in direction i acting on argument j, so the lower slots are ordered
//! (direction, argument).

use crate::chart::{inverse_metric, raise_index, ChartSpec};
use crate::error::{Error, Result};
use crate::expr::{is_zero, nprod, nsum, Expr, ZeroCfg};
use crate::tensor::{TensorField, Variance};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConnectionKind {
    LeviCivita,
    SemiSymmetric,
}

impl ConnectionKind {
    pub fn label(self) -> &'static str {
        match self {
            ConnectionKind::LeviCivita => "levi-civita",
            ConnectionKind::SemiSymmetric => "semi-symmetric",
        }
    }
}

#[derive(Debug, Clone)]
pub struct Connection {
    pub kind: ConnectionKind,
    /// Γ^k_{ij} stored with slots (k; i, j).
    pub gamma: TensorField,
    /// The associated one-form, for the semi-symmetric connection.
    pub one_form: Option<TensorField>,
}

fn metric_partials(chart: &ChartSpec) -> Result<Vec<TensorField>> {
    let n = chart.dimension();
    let coords = chart.coordinates().to_vec();
    let mut out = Vec::with_capacity(n);
    for k in 0..n {
        out.push(chart.metric.map(|e| e.differentiate(&coords[k]))?);
    }
    Ok(out)
}

/// Christoffel symbols of the metric; metric compatibility is checked
/// eagerly after construction.
pub fn levi_civita(chart: &ChartSpec, cfg: &ZeroCfg) -> Result<Connection> {
    let n = chart.dimension();
    let inv = inverse_metric(chart, cfg)?;
    let dg = metric_partials(chart)?;
    let gamma = TensorField::from_fn(
        n,
        vec![Variance::Up, Variance::Down, Variance::Down],
        |idx| {
            let (k, i, j) = (idx[0], idx[1], idx[2]);
            let mut terms = Vec::with_capacity(n);
            for l in 0..n {
                let gkl = inv.get(&[k, l]);
                if gkl.is_zero_const() {
                    continue;
                }
                let inner = nsum([
                    dg[i].get(&[j, l]).clone(),
                    dg[j].get(&[i, l]).clone(),
                    Expr::neg(dg[l].get(&[i, j]).clone()),
                ])?;
                terms.push(nprod([Expr::rat(1, 2), gkl.clone(), inner])?);
            }
            nsum(terms)
        },
    )?;
    let conn = Connection {
        kind: ConnectionKind::LeviCivita,
        gamma,
        one_form: None,
    };
    check_metric_compatibility(&conn, chart, cfg)?;
    Ok(conn)
}

/// The semi-symmetric metric connection of the chart's one-form:
/// Γ̄^k_{ij} = Γ^k_{ij} + π_j δ^k_i − g_{ij} π^k.
pub fn semi_symmetric(chart: &ChartSpec, cfg: &ZeroCfg) -> Result<Connection> {
    let pi = chart.one_form()?.clone();
    let n = chart.dimension();
    let lc = levi_civita(chart, cfg)?;
    let inv = inverse_metric(chart, cfg)?;
    let p_up = raise_index(&pi, 0, &inv)?;
    let gamma = TensorField::from_fn(
        n,
        vec![Variance::Up, Variance::Down, Variance::Down],
        |idx| {
            let (k, i, j) = (idx[0], idx[1], idx[2]);
            let mut terms = vec![lc.gamma.get(&[k, i, j]).clone()];
            if k == i {
                terms.push(pi.get(&[j]).clone());
            }
            terms.push(nprod([
                Expr::int(-1),
                chart.metric.get(&[i, j]).clone(),
                p_up.get(&[k]).clone(),
            ])?);
            nsum(terms)
        },
    )?;
    let conn = Connection {
        kind: ConnectionKind::SemiSymmetric,
        gamma,
        one_form: Some(pi),
    };
    check_metric_compatibility(&conn, chart, cfg)?;
    Ok(conn)
}

fn check_metric_compatibility(conn: &Connection, chart: &ChartSpec, cfg: &ZeroCfg) -> Result<()> {
    let nabla_g = covariant_derivative(conn, &chart.metric, chart)?;
    for idx in nabla_g.indices() {
        let c = nabla_g.get(&idx);
        if c.is_zero_const() {
            continue;
        }
        if !is_zero(c, &chart.sample_ranges, cfg)?.passed() {
            return Err(Error::MetricCompatibility {
                kind: conn.kind.label().to_string(),
                component: format!("{idx:?}"),
            });
        }
    }
    Ok(())
}

/// Torsion T^k_{ij} = Γ^k_{ij} − Γ^k_{ji}.
pub fn torsion(conn: &Connection) -> Result<TensorField> {
    let n = conn.gamma.dim();
    TensorField::from_fn(
        n,
        vec![Variance::Up, Variance::Down, Variance::Down],
        |idx| {
            let (k, i, j) = (idx[0], idx[1], idx[2]);
            nsum([
                conn.gamma.get(&[k, i, j]).clone(),
                Expr::neg(conn.gamma.get(&[k, j, i]).clone()),
            ])
        },
    )
    .map_err(Into::into)
}

/// Coordinate covariant derivative; the derivative direction becomes the
/// first (covariant) slot of the result.
pub fn covariant_derivative(
    conn: &Connection,
    t: &TensorField,
    chart: &ChartSpec,
) -> Result<TensorField> {
    let n = chart.dimension();
    let coords = chart.coordinates().to_vec();
    let mut variance = Vec::with_capacity(t.rank() + 1);
    variance.push(Variance::Down);
    variance.extend_from_slice(t.variance());
    TensorField::from_fn(n, variance, |idx| {
        let dir = idx[0];
        let rest = &idx[1..];
        let mut terms = vec![t.get(rest).differentiate(&coords[dir])?];
        for (slot, var) in t.variance().iter().enumerate() {
            for m in 0..n {
                let mut src = rest.to_vec();
                src[slot] = m;
                let tv = t.get(&src);
                if tv.is_zero_const() {
                    continue;
                }
                let term = match var {
                    Variance::Up => nprod([
                        conn.gamma.get(&[rest[slot], dir, m]).clone(),
                        tv.clone(),
                    ])?,
                    Variance::Down => nprod([
                        Expr::int(-1),
                        conn.gamma.get(&[m, dir, rest[slot]]).clone(),
                        tv.clone(),
                    ])?,
                };
                terms.push(term);
            }
        }
        nsum(terms)
    })
    .map_err(Into::into)
}
