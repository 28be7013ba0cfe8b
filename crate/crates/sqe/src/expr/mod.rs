//! Self-contained symbolic expression engine.
//!
//! Expressions are immutable trees over exact rational constants, named
//! symbols, sums, products, rational powers and the elementary functions
//! sin/cos/tan/exp/log. `normalize` puts an expression into a canonical
//! rational-function form (common denominator, GCD-reduced, deterministic
//! term order, cos² eliminated via the Pythagorean identity), and `is_zero`
//! layers a seeded randomized numeric test on top of the symbolic one.

mod diff;
mod error;
mod eval;
mod normalize;
mod parse;
mod poly;
mod print;
mod zero;

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{One, Zero};

pub use error::ExprError;
pub use eval::{eval_numeric, eval_with_scale};
pub use parse::parse;
pub use print::{symbol_to_latex, to_latex};
pub use zero::{is_zero, is_zero_detailed, Witness, ZeroCfg, ZeroVerdict};

pub type Rat = num_rational::BigRational;

/// Elementary function heads. `sqrt` is not here: the parser rewrites
/// `sqrt(u)` to `u^(1/2)` and the printer undoes it.
///
/// Order matters: the canonical form keeps cos-powers below 2 by rewriting
/// through sin, and the term order must rank a cos factor above the sin
/// factors it rewrites into.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FuncKind {
    Cos,
    Sin,
    Tan,
    Exp,
    Log,
}

impl FuncKind {
    pub fn name(self) -> &'static str {
        match self {
            FuncKind::Sin => "sin",
            FuncKind::Cos => "cos",
            FuncKind::Tan => "tan",
            FuncKind::Exp => "exp",
            FuncKind::Log => "log",
        }
    }

    pub fn from_name(name: &str) -> Option<FuncKind> {
        Some(match name {
            "sin" => FuncKind::Sin,
            "cos" => FuncKind::Cos,
            "tan" => FuncKind::Tan,
            "exp" => FuncKind::Exp,
            "log" => FuncKind::Log,
            _ => return None,
        })
    }
}

/// Immutable symbolic expression tree.
///
/// Canonical (normalized) trees satisfy: rational constants in lowest terms
/// with positive denominator, sums and products flattened and emitted in the
/// deterministic term order, numeric factors folded, and `x - x` collapsed
/// to the zero constant.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Expr {
    Const(Rat),
    Symbol(String),
    Sum(Vec<Expr>),
    Product(Vec<Expr>),
    Power(Box<Expr>, Rat),
    Func(FuncKind, Box<Expr>),
}

impl Expr {
    pub fn int(v: i64) -> Expr {
        Expr::Const(Rat::from_integer(BigInt::from(v)))
    }

    pub fn rat(p: i64, q: i64) -> Expr {
        Expr::Const(Rat::new(BigInt::from(p), BigInt::from(q)))
    }

    pub fn sym(name: &str) -> Expr {
        Expr::Symbol(name.to_string())
    }

    pub fn zero() -> Expr {
        Expr::int(0)
    }

    pub fn one() -> Expr {
        Expr::int(1)
    }

    pub fn add(a: Expr, b: Expr) -> Expr {
        Expr::Sum(vec![a, b])
    }

    pub fn sub(a: Expr, b: Expr) -> Expr {
        Expr::Sum(vec![a, Expr::neg(b)])
    }

    pub fn neg(a: Expr) -> Expr {
        Expr::Product(vec![Expr::int(-1), a])
    }

    pub fn mul(a: Expr, b: Expr) -> Expr {
        Expr::Product(vec![a, b])
    }

    pub fn div(a: Expr, b: Expr) -> Expr {
        Expr::Product(vec![a, Expr::powi(b, -1)])
    }

    pub fn powi(base: Expr, exp: i64) -> Expr {
        Expr::Power(Box::new(base), Rat::from_integer(BigInt::from(exp)))
    }

    pub fn pow_rat(base: Expr, p: i64, q: i64) -> Expr {
        Expr::Power(Box::new(base), Rat::new(BigInt::from(p), BigInt::from(q)))
    }

    pub fn func(kind: FuncKind, arg: Expr) -> Expr {
        Expr::Func(kind, Box::new(arg))
    }

    pub fn sqrt(arg: Expr) -> Expr {
        Expr::pow_rat(arg, 1, 2)
    }

    pub fn is_zero_const(&self) -> bool {
        matches!(self, Expr::Const(c) if c.is_zero())
    }

    pub fn is_one_const(&self) -> bool {
        matches!(self, Expr::Const(c) if c.is_one())
    }

    /// Exact rational value, when the expression is a constant.
    pub fn as_const(&self) -> Option<&Rat> {
        match self {
            Expr::Const(c) => Some(c),
            _ => None,
        }
    }

    /// Names of all symbols occurring in the tree.
    pub fn symbols(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_symbols(&mut out);
        out
    }

    fn collect_symbols(&self, out: &mut BTreeSet<String>) {
        match self {
            Expr::Const(_) => {}
            Expr::Symbol(s) => {
                out.insert(s.clone());
            }
            Expr::Sum(ts) | Expr::Product(ts) => {
                for t in ts {
                    t.collect_symbols(out);
                }
            }
            Expr::Power(b, _) => b.collect_symbols(out),
            Expr::Func(_, a) => a.collect_symbols(out),
        }
    }

    /// Canonical form: rational-function normalization plus the single trig
    /// rewrite sin² + cos² = 1 (applied to completion). Idempotent.
    pub fn normalize(&self) -> Result<Expr, ExprError> {
        Ok(normalize::unratize(&normalize::ratize(self)?))
    }

    /// Exact partial derivative, normalized. Symbols other than `wrt` are
    /// treated as constants.
    pub fn differentiate(&self, wrt: &str) -> Result<Expr, ExprError> {
        diff::differentiate(self, wrt)
    }
}

/// Normalized sum of the given terms (single canonicalization pass).
pub fn nsum<I: IntoIterator<Item = Expr>>(terms: I) -> Result<Expr, ExprError> {
    let mut acc = normalize::Fraction::zero();
    for t in terms {
        if t.is_zero_const() {
            continue;
        }
        acc = acc.add(&normalize::ratize(&t)?)?;
    }
    Ok(normalize::unratize(&acc))
}

/// Normalized product of the given factors (single canonicalization pass).
pub fn nprod<I: IntoIterator<Item = Expr>>(factors: I) -> Result<Expr, ExprError> {
    let mut acc = normalize::Fraction::one();
    for f in factors {
        if f.is_zero_const() {
            return Ok(Expr::zero());
        }
        if f.is_one_const() {
            continue;
        }
        acc = acc.mul(&normalize::ratize(&f)?)?;
    }
    Ok(normalize::unratize(&acc))
}

/// Parameter assumption flags carried by a symbol table entry.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ParamAssumptions {
    pub positive: bool,
    pub nonzero: bool,
}

/// Declared symbols: ordered coordinates plus parameters with assumptions.
#[derive(Debug, Clone, Default)]
pub struct SymbolTable {
    coordinates: Vec<String>,
    parameters: Vec<(String, ParamAssumptions)>,
}

fn valid_identifier(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl SymbolTable {
    pub fn new(
        coordinates: Vec<String>,
        parameters: Vec<(String, ParamAssumptions)>,
    ) -> Result<SymbolTable, ExprError> {
        let mut seen = BTreeSet::new();
        for name in coordinates.iter().chain(parameters.iter().map(|(n, _)| n)) {
            if !valid_identifier(name) {
                return Err(ExprError::InvalidSymbolName(name.clone()));
            }
            if !seen.insert(name.clone()) {
                return Err(ExprError::DuplicateSymbol(name.clone()));
            }
        }
        Ok(SymbolTable {
            coordinates,
            parameters,
        })
    }

    pub fn coordinates(&self) -> &[String] {
        &self.coordinates
    }

    pub fn parameters(&self) -> &[(String, ParamAssumptions)] {
        &self.parameters
    }

    pub fn contains(&self, name: &str) -> bool {
        self.is_coordinate(name) || self.parameters.iter().any(|(n, _)| n == name)
    }

    pub fn is_coordinate(&self, name: &str) -> bool {
        self.coordinates.iter().any(|c| c == name)
    }

    pub fn names(&self) -> impl Iterator<Item = &String> {
        self.coordinates
            .iter()
            .chain(self.parameters.iter().map(|(n, _)| n))
    }
}

#[cfg(test)]
mod tests;
