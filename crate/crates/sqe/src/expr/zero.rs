//! Two-tier zero test: exact normalization first, then a seeded randomized
//! numeric check over declared sampling ranges.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::eval::eval_with_scale;
use super::{Expr, ExprError};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZeroCfg {
    pub points: usize,
    pub seed: u64,
    pub tol: f64,
}

impl Default for ZeroCfg {
    fn default() -> Self {
        ZeroCfg {
            points: 16,
            seed: 42,
            tol: 1e-9,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Witness {
    pub bindings: BTreeMap<String, f64>,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub enum ZeroVerdict {
    ProvedZero,
    NumericallyZero,
    Nonzero(Witness),
}

impl ZeroVerdict {
    pub fn passed(&self) -> bool {
        !matches!(self, ZeroVerdict::Nonzero(_))
    }
}

pub fn is_zero(
    e: &Expr,
    ranges: &BTreeMap<String, (f64, f64)>,
    cfg: &ZeroCfg,
) -> Result<ZeroVerdict, ExprError> {
    Ok(is_zero_detailed(e, ranges, cfg)?.0)
}

/// Verdict plus the largest |value| seen over the sample points (0 when the
/// zero is proved symbolically).
pub fn is_zero_detailed(
    e: &Expr,
    ranges: &BTreeMap<String, (f64, f64)>,
    cfg: &ZeroCfg,
) -> Result<(ZeroVerdict, f64), ExprError> {
    let n = e.normalize()?;
    if n.is_zero_const() {
        return Ok((ZeroVerdict::ProvedZero, 0.0));
    }
    let syms: Vec<String> = n.symbols().into_iter().collect();
    for s in &syms {
        if !ranges.contains_key(s) {
            return Err(ExprError::Unbound(s.clone()));
        }
    }
    let points = cfg.points.max(1);
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut samples: Vec<(BTreeMap<String, f64>, f64, f64)> = Vec::with_capacity(points);
    let mut consecutive_failures = 0usize;
    let budget = 100 * points;
    while samples.len() < points {
        let mut bindings = BTreeMap::new();
        for s in &syms {
            let (lo, hi) = ranges[s];
            let u: f64 = rng.gen();
            bindings.insert(s.clone(), lo + u * (hi - lo));
        }
        match eval_with_scale(&n, &bindings) {
            Ok((v, scale)) => {
                consecutive_failures = 0;
                samples.push((bindings, v, scale));
            }
            Err(ExprError::Domain { .. }) => {
                consecutive_failures += 1;
                if consecutive_failures >= budget {
                    return Err(ExprError::SamplingExhausted(consecutive_failures));
                }
            }
            Err(other) => return Err(other),
        }
    }
    let scale = 1.0 + samples.iter().map(|(_, _, s)| *s).fold(0.0, f64::max);
    let threshold = cfg.tol * scale;
    let max_abs = samples.iter().map(|(_, v, _)| v.abs()).fold(0.0, f64::max);
    for (bindings, v, _) in &samples {
        if v.abs() > threshold {
            return Ok((
                ZeroVerdict::Nonzero(Witness {
                    bindings: bindings.clone(),
                    value: *v,
                }),
                max_abs,
            ));
        }
    }
    Ok((ZeroVerdict::NumericallyZero, max_abs))
}
