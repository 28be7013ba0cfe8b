//! Coordinate charts: a named metric with optional one-form, parameters with
//! assumptions, and mandatory sampling ranges for the numeric zero tests.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

use crate::error::{Error, Result};
use crate::expr::{
    eval_numeric, is_zero, nprod, nsum, parse, Expr, ParamAssumptions, SymbolTable, ZeroCfg,
};
use crate::tensor::{TensorField, Variance};

#[derive(Debug, Clone)]
pub struct ChartSpec {
    pub name: String,
    pub symbols: SymbolTable,
    pub metric: TensorField,
    pub one_form: Option<TensorField>,
    pub sample_ranges: BTreeMap<String, (f64, f64)>,
}

impl ChartSpec {
    pub fn dimension(&self) -> usize {
        self.symbols.coordinates().len()
    }

    pub fn coordinates(&self) -> &[String] {
        self.symbols.coordinates()
    }

    pub fn one_form(&self) -> Result<&TensorField> {
        self.one_form.as_ref().ok_or(Error::MissingOneForm)
    }
}

fn fmt_err(path: &str, msg: impl Into<String>) -> Error {
    Error::Format {
        path: path.to_string(),
        msg: msg.into(),
    }
}

fn as_str<'a>(v: &'a Value, path: &str) -> Result<&'a str> {
    v.as_str().ok_or_else(|| fmt_err(path, "expected a string"))
}

fn as_f64(v: &Value, path: &str) -> Result<f64> {
    v.as_f64().ok_or_else(|| fmt_err(path, "expected a number"))
}

/// Parse and validate a chart document (UTF-8 JSON) with default zero-test
/// settings.
pub fn load_spec(document: &[u8]) -> Result<ChartSpec> {
    load_spec_with(document, &ZeroCfg::default())
}

pub fn load_spec_with(document: &[u8], cfg: &ZeroCfg) -> Result<ChartSpec> {
    let root: Value = serde_json::from_slice(document)
        .map_err(|e| fmt_err("$", format!("invalid JSON: {e}")))?;
    let obj = root
        .as_object()
        .ok_or_else(|| fmt_err("$", "expected a JSON object"))?;

    const KNOWN: [&str; 6] = [
        "name",
        "coordinates",
        "parameters",
        "metric",
        "one_form",
        "sample_ranges",
    ];
    for key in obj.keys() {
        if !KNOWN.contains(&key.as_str()) {
            return Err(fmt_err(key, "unknown key"));
        }
    }

    let name = as_str(
        obj.get("name").ok_or_else(|| fmt_err("name", "missing"))?,
        "name",
    )?
    .to_string();

    let coords_v = obj
        .get("coordinates")
        .ok_or_else(|| fmt_err("coordinates", "missing"))?
        .as_array()
        .ok_or_else(|| fmt_err("coordinates", "expected an array"))?;
    let mut coordinates = Vec::with_capacity(coords_v.len());
    for (i, c) in coords_v.iter().enumerate() {
        coordinates.push(as_str(c, &format!("coordinates[{i}]"))?.to_string());
    }
    let n = coordinates.len();
    if n < 2 {
        return Err(fmt_err("coordinates", "dimension must be at least 2"));
    }

    let mut parameters = Vec::new();
    if let Some(pv) = obj.get("parameters") {
        let pobj = pv
            .as_object()
            .ok_or_else(|| fmt_err("parameters", "expected an object"))?;
        for (pname, flags) in pobj {
            let path = format!("parameters.{pname}");
            let fobj = flags
                .as_object()
                .ok_or_else(|| fmt_err(&path, "expected an object"))?;
            for key in fobj.keys() {
                if key != "positive" {
                    return Err(fmt_err(&format!("{path}.{key}"), "unknown key"));
                }
            }
            let positive = fobj
                .get("positive")
                .map(|b| b.as_bool().ok_or_else(|| fmt_err(&path, "expected a bool")))
                .transpose()?
                .unwrap_or(false);
            parameters.push((
                pname.clone(),
                ParamAssumptions {
                    positive,
                    nonzero: positive,
                },
            ));
        }
    }

    let symbols = SymbolTable::new(coordinates, parameters).map_err(Error::Expr)?;

    let metric_v = obj
        .get("metric")
        .ok_or_else(|| fmt_err("metric", "missing"))?
        .as_array()
        .ok_or_else(|| fmt_err("metric", "expected an array of rows"))?;
    if metric_v.len() != n {
        return Err(fmt_err("metric", format!("expected {n} rows")));
    }
    let mut entries: Vec<Vec<Expr>> = Vec::with_capacity(n);
    for (i, row) in metric_v.iter().enumerate() {
        let row = row
            .as_array()
            .ok_or_else(|| fmt_err(&format!("metric[{i}]"), "expected an array"))?;
        if row.len() != n {
            return Err(fmt_err(
                &format!("metric[{i}]"),
                format!("expected {n} entries"),
            ));
        }
        let mut out_row = Vec::with_capacity(n);
        for (j, cell) in row.iter().enumerate() {
            let path = format!("metric[{i}][{j}]");
            let text = as_str(cell, &path)?;
            let e = parse(text, &symbols).map_err(|err| fmt_err(&path, err.to_string()))?;
            out_row.push(e);
        }
        entries.push(out_row);
    }
    let metric = TensorField::from_fn(n, vec![Variance::Down, Variance::Down], |idx| {
        Ok(entries[idx[0]][idx[1]].clone())
    })?;

    let one_form = match obj.get("one_form") {
        None => None,
        Some(v) => {
            let arr = v
                .as_array()
                .ok_or_else(|| fmt_err("one_form", "expected an array"))?;
            if arr.len() != n {
                return Err(fmt_err("one_form", format!("expected {n} entries")));
            }
            let mut comps = Vec::with_capacity(n);
            for (i, cell) in arr.iter().enumerate() {
                let path = format!("one_form[{i}]");
                let text = as_str(cell, &path)?;
                comps.push(parse(text, &symbols).map_err(|err| fmt_err(&path, err.to_string()))?);
            }
            Some(TensorField::from_fn(n, vec![Variance::Down], |idx| {
                Ok(comps[idx[0]].clone())
            })?)
        }
    };

    let ranges_v = obj
        .get("sample_ranges")
        .ok_or_else(|| fmt_err("sample_ranges", "missing"))?
        .as_object()
        .ok_or_else(|| fmt_err("sample_ranges", "expected an object"))?;
    let mut sample_ranges = BTreeMap::new();
    for (sname, pair) in ranges_v {
        let path = format!("sample_ranges.{sname}");
        let arr = pair
            .as_array()
            .ok_or_else(|| fmt_err(&path, "expected [lo, hi]"))?;
        if arr.len() != 2 {
            return Err(fmt_err(&path, "expected [lo, hi]"));
        }
        let lo = as_f64(&arr[0], &path)?;
        let hi = as_f64(&arr[1], &path)?;
        if !(lo < hi) {
            return Err(fmt_err(&path, "range must satisfy lo < hi"));
        }
        if !symbols.contains(sname) {
            return Err(fmt_err(&path, "range given for an undeclared symbol"));
        }
        sample_ranges.insert(sname.clone(), (lo, hi));
    }
    for sym in symbols.names() {
        if !sample_ranges.contains_key(sym) {
            return Err(Error::MissingRange(sym.clone()));
        }
    }

    let chart = ChartSpec {
        name,
        symbols,
        metric,
        one_form,
        sample_ranges,
    };
    validate(&chart, cfg)?;
    Ok(chart)
}

fn validate(chart: &ChartSpec, cfg: &ZeroCfg) -> Result<()> {
    let n = chart.dimension();
    // componentwise symmetry
    for i in 0..n {
        for j in (i + 1)..n {
            let d = Expr::sub(
                chart.metric.get(&[i, j]).clone(),
                chart.metric.get(&[j, i]).clone(),
            );
            if !is_zero(&d, &chart.sample_ranges, cfg)?.passed() {
                return Err(Error::MetricAsymmetry { i, j });
            }
        }
    }
    // nondegeneracy: symbolic determinant, then numeric samples
    let det = determinant(&chart.metric)?;
    if det.is_zero_const() {
        return Err(Error::Degenerate {
            detail: "det(g) normalizes to zero".into(),
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let syms: Vec<String> = det.symbols().into_iter().collect();
    let mut accepted = 0usize;
    let mut rejected = 0usize;
    let budget = 100 * cfg.points.max(1);
    while accepted < cfg.points.max(1) {
        let mut bindings = BTreeMap::new();
        for s in &syms {
            let (lo, hi) = *chart
                .sample_ranges
                .get(s)
                .ok_or_else(|| Error::MissingRange(s.clone()))?;
            let u: f64 = rng.gen();
            bindings.insert(s.clone(), lo + u * (hi - lo));
        }
        match eval_numeric(&det, &bindings) {
            Ok(v) => {
                if v.abs() <= cfg.tol {
                    return Err(Error::Degenerate {
                        detail: format!("|det(g)| = {v:e} at {bindings:?}"),
                    });
                }
                accepted += 1;
            }
            Err(crate::expr::ExprError::Domain { .. }) => {
                rejected += 1;
                if rejected >= budget {
                    return Err(Error::Degenerate {
                        detail: "determinant could not be sampled on the declared ranges".into(),
                    });
                }
            }
            Err(e) => return Err(e.into()),
        }
    }
    Ok(())
}

/// Exact determinant by Laplace expansion along the first row.
pub fn determinant(g: &TensorField) -> Result<Expr> {
    assert_eq!(g.rank(), 2);
    let n = g.dim();
    let rows: Vec<Vec<Expr>> = (0..n)
        .map(|i| (0..n).map(|j| g.get(&[i, j]).clone()).collect())
        .collect();
    det_rec(&rows)
}

fn det_rec(rows: &[Vec<Expr>]) -> Result<Expr> {
    let n = rows.len();
    if n == 1 {
        return Ok(rows[0][0].clone());
    }
    let mut terms = Vec::with_capacity(n);
    for j in 0..n {
        if rows[0][j].is_zero_const() {
            continue;
        }
        let minor: Vec<Vec<Expr>> = rows[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(k, _)| *k != j)
                    .map(|(_, e)| e.clone())
                    .collect()
            })
            .collect();
        let sign = if j % 2 == 0 { 1 } else { -1 };
        terms.push(nprod([Expr::int(sign), rows[0][j].clone(), det_rec(&minor)?])?);
    }
    Ok(nsum(terms)?)
}

/// Inverse metric by exact cofactor expansion, verified against the
/// Kronecker delta.
pub fn inverse_metric(chart: &ChartSpec, cfg: &ZeroCfg) -> Result<TensorField> {
    let n = chart.dimension();
    let det = determinant(&chart.metric)?;
    if det.is_zero_const() {
        return Err(Error::Degenerate {
            detail: "det(g) normalizes to zero".into(),
        });
    }
    let rows: Vec<Vec<Expr>> = (0..n)
        .map(|i| (0..n).map(|j| chart.metric.get(&[i, j]).clone()).collect())
        .collect();
    let inv = TensorField::from_fn(n, vec![Variance::Up, Variance::Up], |idx| {
        let (i, j) = (idx[0], idx[1]);
        // adjugate: (-1)^{i+j} * minor(j, i) / det
        let minor: Vec<Vec<Expr>> = rows
            .iter()
            .enumerate()
            .filter(|(r, _)| *r != j)
            .map(|(_, row)| {
                row.iter()
                    .enumerate()
                    .filter(|(c, _)| *c != i)
                    .map(|(_, e)| e.clone())
                    .collect()
            })
            .collect();
        let sign = if (i + j) % 2 == 0 { 1 } else { -1 };
        let cof = if n == 1 {
            Expr::one()
        } else {
            det_rec(&minor).map_err(|e| match e {
                crate::error::Error::Expr(xe) => xe,
                _ => unreachable!(),
            })?
        };
        nprod([Expr::int(sign), cof, Expr::powi(det.clone(), -1)])
    })?;
    // delta check
    for i in 0..n {
        for j in 0..n {
            let mut terms = Vec::with_capacity(n + 1);
            for k in 0..n {
                terms.push(nprod([
                    inv.get(&[i, k]).clone(),
                    chart.metric.get(&[k, j]).clone(),
                ])?);
            }
            if i == j {
                terms.push(Expr::int(-1));
            }
            let s = nsum(terms)?;
            if !is_zero(&s, &chart.sample_ranges, cfg)?.passed() {
                return Err(Error::InverseCheck { i, j });
            }
        }
    }
    Ok(inv)
}

/// Contract `slot` of `t` with a rank-2 tensor (the metric or its inverse),
/// flipping the slot's variance.
fn contract_slot(
    t: &TensorField,
    slot: usize,
    with: &TensorField,
    new_variance: Variance,
) -> Result<TensorField> {
    if slot >= t.rank() {
        return Err(Error::SlotInvalid {
            slot,
            reason: format!("tensor has rank {}", t.rank()),
        });
    }
    let n = t.dim();
    let mut variance = t.variance().to_vec();
    variance[slot] = new_variance;
    TensorField::from_fn(n, variance, |idx| {
        let mut terms = Vec::with_capacity(n);
        for m in 0..n {
            let mut src = idx.to_vec();
            src[slot] = m;
            let tv = t.get(&src);
            if tv.is_zero_const() {
                continue;
            }
            terms.push(nprod([with.get(&[idx[slot], m]).clone(), tv.clone()])?);
        }
        nsum(terms)
    })
    .map_err(Into::into)
}

/// Raise a Down slot with the inverse metric.
pub fn raise_index(t: &TensorField, slot: usize, inverse: &TensorField) -> Result<TensorField> {
    if t.variance().get(slot) != Some(&Variance::Down) {
        return Err(Error::SlotInvalid {
            slot,
            reason: "slot is not covariant".into(),
        });
    }
    contract_slot(t, slot, inverse, Variance::Up)
}

/// Lower an Up slot with the metric.
pub fn lower_index(t: &TensorField, slot: usize, metric: &TensorField) -> Result<TensorField> {
    if t.variance().get(slot) != Some(&Variance::Up) {
        return Err(Error::SlotInvalid {
            slot,
            reason: "slot is not contravariant".into(),
        });
    }
    contract_slot(t, slot, metric, Variance::Down)
}
