//! Rendering: the Display form round-trips through the parser; the LaTeX
//! form is for report output.

use std::fmt;

use num_traits::{One, Signed};

use super::{Expr, FuncKind, Rat};

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render(self))
    }
}

fn is_half(r: &Rat) -> bool {
    *r.numer() == 1.into() && *r.denom() == 2.into()
}

/// Multiplicative split of an expression into numerator factors, denominator
/// factors (with positive exponents) and a rational coefficient.
struct Split {
    coeff: Rat,
    num: Vec<(Expr, Rat)>,
    den: Vec<(Expr, Rat)>,
}

fn split_factors(e: &Expr) -> Split {
    let mut s = Split {
        coeff: Rat::one(),
        num: Vec::new(),
        den: Vec::new(),
    };
    collect_factors(e, &mut s);
    s
}

fn collect_factors(e: &Expr, s: &mut Split) {
    match e {
        Expr::Product(fs) => {
            for f in fs {
                collect_factors(f, s);
            }
        }
        Expr::Const(c) => {
            s.coeff *= c.clone();
        }
        Expr::Power(b, e) if e.is_negative() => {
            s.den.push((b.as_ref().clone(), -e.clone()));
        }
        Expr::Power(b, e) => {
            s.num.push((b.as_ref().clone(), e.clone()));
        }
        other => s.num.push((other.clone(), Rat::one())),
    }
}

fn render_pow(base: &Expr, exp: &Rat) -> String {
    if exp.is_one() {
        return render_tight(base);
    }
    if is_half(exp) {
        return format!("sqrt({})", render(base));
    }
    let b = render_tight(base);
    if exp.is_integer() {
        format!("{b}^{}", exp.numer())
    } else {
        format!("{b}^({}/{})", exp.numer(), exp.denom())
    }
}

/// Render with parentheses unless the node binds at least as tight as a
/// power base must.
fn render_tight(e: &Expr) -> String {
    match e {
        Expr::Symbol(s) => s.clone(),
        Expr::Func(k, a) => format!("{}({})", k.name(), render(a)),
        Expr::Const(c) if !c.is_negative() && c.is_integer() => format!("{}", c.numer()),
        other => format!("({})", render(other)),
    }
}

fn render_group(parts: &[String]) -> String {
    parts.join("*")
}

/// Render a product-like expression, handling the fraction layout.
fn render_mul(e: &Expr) -> String {
    let s = split_factors(e);
    let mut num_parts: Vec<String> = Vec::new();
    let num_coeff = s.coeff.numer();
    if !num_coeff.magnitude().is_one() || s.num.is_empty() {
        num_parts.push(format!("{}", num_coeff));
    } else if num_coeff.is_negative() {
        // coefficient -1: emit only the sign below
    }
    for (b, ex) in &s.num {
        let rendered = match b {
            Expr::Sum(_) if !ex.is_one() => render_pow(b, ex),
            Expr::Sum(_) => format!("({})", render(b)),
            Expr::Product(_) => format!("({})", render_pow(b, ex)),
            _ => render_pow(b, ex),
        };
        num_parts.push(rendered);
    }
    let mut out = render_group(&num_parts);
    if num_coeff.magnitude().is_one() && num_coeff.is_negative() && !s.num.is_empty() {
        out = format!("-{out}");
    }

    let mut den_parts: Vec<String> = Vec::new();
    if !s.coeff.denom().is_one() {
        den_parts.push(format!("{}", s.coeff.denom()));
    }
    for (b, ex) in &s.den {
        let rendered = match b {
            Expr::Sum(_) | Expr::Product(_) => format!("({})", render_pow(b, ex)),
            _ => render_pow(b, ex),
        };
        den_parts.push(rendered);
    }
    if den_parts.is_empty() {
        return out;
    }
    let den = if den_parts.len() == 1 && !den_parts[0].starts_with('(') && is_tight_den(&den_parts[0])
    {
        den_parts.into_iter().next().unwrap()
    } else {
        format!("({})", render_group(&den_parts))
    };
    format!("{out}/{den}")
}

/// A denominator can stand bare after `/` when it is a single token or a
/// power/function call (everything `/` binds looser than).
fn is_tight_den(s: &str) -> bool {
    !s.contains('*') && !s.contains(' ') && !s.contains('+') && !s.contains('-')
}

fn render(e: &Expr) -> String {
    match e {
        Expr::Const(c) => {
            if c.is_integer() {
                format!("{}", c.numer())
            } else {
                format!("{}/{}", c.numer(), c.denom())
            }
        }
        Expr::Symbol(s) => s.clone(),
        Expr::Func(k, a) => format!("{}({})", k.name(), render(a)),
        Expr::Sum(ts) => {
            let mut out = String::new();
            for (i, t) in ts.iter().enumerate() {
                let rt = render(t);
                if i == 0 {
                    out.push_str(&rt);
                } else if let Some(stripped) = rt.strip_prefix('-') {
                    out.push_str(" - ");
                    out.push_str(stripped);
                } else {
                    out.push_str(" + ");
                    out.push_str(&rt);
                }
            }
            out
        }
        Expr::Product(_) | Expr::Power(_, _) => render_mul(e),
    }
}

// ---------------------------------------------------------------------------
// LaTeX
// ---------------------------------------------------------------------------

fn latex_symbol(s: &str) -> String {
    match s {
        "theta" => r"\theta".into(),
        "phi" => r"\phi".into(),
        "Lambda" => r"\Lambda".into(),
        other => other.into(),
    }
}

fn latex_func(k: FuncKind) -> &'static str {
    match k {
        FuncKind::Sin => r"\sin",
        FuncKind::Cos => r"\cos",
        FuncKind::Tan => r"\tan",
        FuncKind::Exp => r"\exp",
        FuncKind::Log => r"\log",
    }
}

fn latex_pow(base: &Expr, exp: &Rat) -> String {
    if exp.is_one() {
        return latex_tight(base);
    }
    if is_half(exp) {
        return format!(r"\sqrt{{{}}}", latex(base));
    }
    let b = latex_tight(base);
    if exp.is_integer() {
        format!("{b}^{{{}}}", exp.numer())
    } else {
        format!("{b}^{{{}/{}}}", exp.numer(), exp.denom())
    }
}

fn latex_tight(e: &Expr) -> String {
    match e {
        Expr::Symbol(s) => latex_symbol(s),
        Expr::Func(k, a) => format!(r"{}\left({}\right)", latex_func(*k), latex(a)),
        Expr::Const(c) if !c.is_negative() && c.is_integer() => format!("{}", c.numer()),
        other => format!(r"\left({}\right)", latex(other)),
    }
}

fn latex_mul(e: &Expr) -> String {
    let s = split_factors(e);
    let num_single = s.num.len() == 1 && s.coeff.numer().magnitude().is_one();
    let mut num_parts: Vec<String> = Vec::new();
    let num_coeff = s.coeff.numer();
    if !num_coeff.magnitude().is_one() || s.num.is_empty() {
        num_parts.push(format!("{}", num_coeff));
    }
    for (b, ex) in &s.num {
        let rendered = match b {
            Expr::Sum(_) if ex.is_one() && !num_single => {
                format!(r"\left({}\right)", latex(b))
            }
            Expr::Sum(_) if ex.is_one() => latex(b).to_string(),
            _ => latex_pow(b, ex),
        };
        num_parts.push(rendered);
    }
    let mut num = num_parts.join(r" \, ");
    if num_coeff.magnitude().is_one() && num_coeff.is_negative() && !s.num.is_empty() {
        num = if num_single && matches!(s.num[0].0, Expr::Sum(_)) {
            format!(r"-\left({num}\right)")
        } else {
            format!("-{num}")
        };
    }
    let den_single = s.den.len() == 1 && s.coeff.denom().is_one();
    let mut den_parts: Vec<String> = Vec::new();
    if !s.coeff.denom().is_one() {
        den_parts.push(format!("{}", s.coeff.denom()));
    }
    for (b, ex) in &s.den {
        den_parts.push(match b {
            Expr::Sum(_) if ex.is_one() && !den_single => {
                format!(r"\left({}\right)", latex(b))
            }
            Expr::Sum(_) if ex.is_one() => latex(b).to_string(),
            _ => latex_pow(b, ex),
        });
    }
    if den_parts.is_empty() {
        num
    } else {
        // pull a leading sign out of the fraction (single-term numerators only)
        let single_term = !num.contains(" + ") && !num.contains(" - ");
        match num.strip_prefix('-') {
            Some(stripped) if single_term => {
                format!(r"-\frac{{{}}}{{{}}}", stripped, den_parts.join(r" \, "))
            }
            _ => format!(r"\frac{{{}}}{{{}}}", num, den_parts.join(r" \, ")),
        }
    }
}

fn latex(e: &Expr) -> String {
    match e {
        Expr::Const(c) => {
            if c.is_integer() {
                format!("{}", c.numer())
            } else if c.is_negative() {
                format!(r"-\frac{{{}}}{{{}}}", c.numer().magnitude(), c.denom())
            } else {
                format!(r"\frac{{{}}}{{{}}}", c.numer(), c.denom())
            }
        }
        Expr::Symbol(s) => latex_symbol(s),
        Expr::Func(k, a) => format!(r"{}\left({}\right)", latex_func(*k), latex(a)),
        Expr::Sum(ts) => {
            let mut out = String::new();
            for (i, t) in ts.iter().enumerate() {
                let rt = latex(t);
                if i == 0 {
                    out.push_str(&rt);
                } else if let Some(stripped) = rt.strip_prefix('-') {
                    out.push_str(" - ");
                    out.push_str(stripped);
                } else {
                    out.push_str(" + ");
                    out.push_str(&rt);
                }
            }
            out
        }
        Expr::Product(_) | Expr::Power(_, _) => latex_mul(e),
    }
}

/// LaTeX rendering of an expression.
pub fn to_latex(e: &Expr) -> String {
    latex(e)
}

/// LaTeX form of a bare symbol name.
pub fn symbol_to_latex(name: &str) -> String {
    latex_symbol(name)
}
