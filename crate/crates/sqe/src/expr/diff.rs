use num_traits::One;

use super::{Expr, ExprError, FuncKind, Rat};

pub(super) fn differentiate(e: &Expr, wrt: &str) -> Result<Expr, ExprError> {
    d(e, wrt).normalize()
}

fn d(e: &Expr, wrt: &str) -> Expr {
    match e {
        Expr::Const(_) => Expr::zero(),
        Expr::Symbol(s) => {
            if s == wrt {
                Expr::one()
            } else {
                Expr::zero()
            }
        }
        Expr::Sum(ts) => Expr::Sum(ts.iter().map(|t| d(t, wrt)).collect()),
        Expr::Product(fs) => {
            let mut terms = Vec::with_capacity(fs.len());
            for i in 0..fs.len() {
                let mut factors: Vec<Expr> = Vec::with_capacity(fs.len());
                for (j, f) in fs.iter().enumerate() {
                    if i == j {
                        factors.push(d(f, wrt));
                    } else {
                        factors.push(f.clone());
                    }
                }
                terms.push(Expr::Product(factors));
            }
            Expr::Sum(terms)
        }
        Expr::Power(b, exp) => {
            // d(b^e) = e * b^(e-1) * db
            Expr::Product(vec![
                Expr::Const(exp.clone()),
                Expr::Power(b.clone(), exp.clone() - Rat::one()),
                d(b, wrt),
            ])
        }
        Expr::Func(kind, a) => {
            let du = d(a, wrt);
            let outer = match kind {
                FuncKind::Sin => Expr::func(FuncKind::Cos, a.as_ref().clone()),
                FuncKind::Cos => Expr::neg(Expr::func(FuncKind::Sin, a.as_ref().clone())),
                FuncKind::Tan => Expr::add(
                    Expr::one(),
                    Expr::powi(Expr::func(FuncKind::Tan, a.as_ref().clone()), 2),
                ),
                FuncKind::Exp => Expr::func(FuncKind::Exp, a.as_ref().clone()),
                FuncKind::Log => Expr::powi(a.as_ref().clone(), -1),
            };
            Expr::mul(outer, du)
        }
    }
}
