use std::collections::BTreeMap;

use num_traits::{Signed, ToPrimitive};

use super::{Expr, ExprError};

/// IEEE double evaluation with every symbol bound.
pub fn eval_numeric(e: &Expr, bindings: &BTreeMap<String, f64>) -> Result<f64, ExprError> {
    Ok(eval_with_scale(e, bindings)?.0)
}

/// Evaluation that also reports the largest magnitude reached by any
/// subexpression (the scale used by the randomized zero test).
pub fn eval_with_scale(e: &Expr, bindings: &BTreeMap<String, f64>) -> Result<(f64, f64), ExprError> {
    let (v, s) = ev(e, bindings)?;
    Ok((v, s))
}

fn domain(e: &Expr, msg: &str) -> ExprError {
    ExprError::Domain {
        expr: format!("{e}"),
        msg: msg.to_string(),
    }
}

fn finite(e: &Expr, v: f64) -> Result<f64, ExprError> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(domain(e, "non-finite result"))
    }
}

fn ev(e: &Expr, b: &BTreeMap<String, f64>) -> Result<(f64, f64), ExprError> {
    match e {
        Expr::Const(c) => {
            let v = c.to_f64().ok_or_else(|| domain(e, "constant overflows f64"))?;
            Ok((v, v.abs()))
        }
        Expr::Symbol(s) => {
            let v = *b.get(s).ok_or_else(|| ExprError::Unbound(s.clone()))?;
            Ok((v, v.abs()))
        }
        Expr::Sum(ts) => {
            let mut acc = 0.0;
            let mut scale: f64 = 0.0;
            for t in ts {
                let (v, s) = ev(t, b)?;
                acc += v;
                scale = scale.max(s);
            }
            let acc = finite(e, acc)?;
            Ok((acc, scale.max(acc.abs())))
        }
        Expr::Product(fs) => {
            let mut acc = 1.0;
            let mut scale: f64 = 0.0;
            for f in fs {
                let (v, s) = ev(f, b)?;
                acc *= v;
                scale = scale.max(s);
            }
            let acc = finite(e, acc)?;
            Ok((acc, scale.max(acc.abs())))
        }
        Expr::Power(base, exp) => {
            let (vb, sb) = ev(base, b)?;
            let v = if exp.is_integer() {
                let k = exp
                    .to_integer()
                    .to_i32()
                    .ok_or_else(|| ExprError::ExponentOverflow(exp.to_string()))?;
                if vb == 0.0 && k < 0 {
                    return Err(domain(e, "division by zero"));
                }
                vb.powi(k)
            } else {
                let xf = exp.to_f64().ok_or_else(|| domain(e, "exponent overflows f64"))?;
                if vb < 0.0 {
                    return Err(domain(e, "fractional power of a negative value"));
                }
                if vb == 0.0 && exp.is_negative() {
                    return Err(domain(e, "division by zero"));
                }
                vb.powf(xf)
            };
            let v = finite(e, v)?;
            Ok((v, sb.max(v.abs())))
        }
        Expr::Func(kind, a) => {
            let (va, sa) = ev(a, b)?;
            let v = match kind {
                super::FuncKind::Sin => va.sin(),
                super::FuncKind::Cos => va.cos(),
                super::FuncKind::Tan => va.tan(),
                super::FuncKind::Exp => va.exp(),
                super::FuncKind::Log => {
                    if va <= 0.0 {
                        return Err(domain(e, "log of a non-positive value"));
                    }
                    va.ln()
                }
            };
            let v = finite(e, v)?;
            Ok((v, sa.max(v.abs())))
        }
    }
}
