//! Canonical rational-function form: every expression becomes a reduced
//! fraction of polynomials over atoms, then is emitted back as a
//! deterministic tree.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::poly::{
    exp_atom_fraction, joint_scale, leading_sign_negative, mono_mul_general, poly_div_exact,
    poly_gcd, poly_mul_pure, raw_to_fraction, Atom, Monomial, Poly,
};
use super::{Expr, ExprError, FuncKind, Rat};

const MAX_DEPTH: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Fraction {
    pub(crate) num: Poly,
    pub(crate) den: Poly,
}

impl Fraction {
    pub(crate) fn zero() -> Fraction {
        Fraction {
            num: Poly::zero(),
            den: Poly::one(),
        }
    }

    pub(crate) fn one() -> Fraction {
        Fraction {
            num: Poly::one(),
            den: Poly::one(),
        }
    }

    pub(crate) fn constant(c: Rat) -> Fraction {
        let (num, den) = joint_scale(Poly::constant(c), Poly::one());
        Fraction { num, den }
    }

    pub(crate) fn from_poly(p: Poly) -> Fraction {
        let (num, den) = joint_scale(p, Poly::one());
        Fraction { num, den }
    }

    pub(crate) fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub(crate) fn as_constant(&self) -> Option<Rat> {
        let n = self.num.as_constant()?;
        let d = self.den.as_constant()?;
        Some(n / d)
    }

    pub(crate) fn neg(&self) -> Fraction {
        Fraction {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub(crate) fn scale_const(&self, c: &Rat) -> Fraction {
        if c.is_zero() {
            return Fraction::zero();
        }
        let (num, den) = joint_scale(self.num.scale(c), self.den.clone());
        Fraction { num, den }
    }

    pub(crate) fn add(&self, other: &Fraction) -> Result<Fraction, ExprError> {
        self.add_d(other, 0)
    }

    pub(crate) fn mul(&self, other: &Fraction) -> Result<Fraction, ExprError> {
        self.mul_d(other, 0)
    }

    pub(crate) fn sub(&self, other: &Fraction) -> Result<Fraction, ExprError> {
        self.add(&other.neg())
    }

    pub(crate) fn pow_int(&self, k: i64) -> Result<Fraction, ExprError> {
        if k == 0 {
            return Ok(Fraction::one());
        }
        if self.is_zero() {
            if k < 0 {
                return Err(ExprError::DivisionByZero("0".into()));
            }
            return Ok(Fraction::zero());
        }
        let base = if k < 0 { self.invert()? } else { self.clone() };
        let mut acc = base.clone();
        for _ in 1..k.unsigned_abs() {
            acc = acc.mul(&base)?;
        }
        Ok(acc)
    }

    pub(crate) fn invert(&self) -> Result<Fraction, ExprError> {
        if self.num.is_zero() {
            return Err(ExprError::DivisionByZero("0".into()));
        }
        let (num, den) = joint_scale(self.den.clone(), self.num.clone());
        Ok(Fraction { num, den })
    }

    fn add_d(&self, other: &Fraction, depth: usize) -> Result<Fraction, ExprError> {
        if depth > MAX_DEPTH {
            return Err(ExprError::TooDeep);
        }
        if self.num.is_zero() {
            return Ok(other.clone());
        }
        if other.num.is_zero() {
            return Ok(self.clone());
        }
        match (
            poly_mul_pure(&self.num, &other.den),
            poly_mul_pure(&other.num, &self.den),
            poly_mul_pure(&self.den, &other.den),
        ) {
            (Some(a), Some(b), Some(d)) => canonical(a.add(&b), d),
            _ => {
                let a = poly_mul_fr(&self.num, &other.den, depth + 1)?;
                let b = poly_mul_fr(&other.num, &self.den, depth + 1)?;
                let d = poly_mul_fr(&self.den, &other.den, depth + 1)?;
                let n = a.add_d(&b, depth + 1)?;
                n.mul_d(&d.invert()?, depth + 1)
            }
        }
    }

    fn mul_d(&self, other: &Fraction, depth: usize) -> Result<Fraction, ExprError> {
        if depth > MAX_DEPTH {
            return Err(ExprError::TooDeep);
        }
        if self.num.is_zero() || other.num.is_zero() {
            return Ok(Fraction::zero());
        }
        match (
            poly_mul_pure(&self.num, &other.num),
            poly_mul_pure(&self.den, &other.den),
        ) {
            (Some(n), Some(d)) => canonical(n, d),
            _ => {
                let n = poly_mul_fr(&self.num, &other.num, depth + 1)?;
                let d = poly_mul_fr(&self.den, &other.den, depth + 1)?;
                n.mul_d(&d.invert()?, depth + 1)
            }
        }
    }
}

/// Product of two polynomials as a fraction, tolerating carries that leave
/// the polynomial ring (fractional-power bases and denominator-side exps).
fn poly_mul_fr(a: &Poly, b: &Poly, depth: usize) -> Result<Fraction, ExprError> {
    if depth > MAX_DEPTH {
        return Err(ExprError::TooDeep);
    }
    if let Some(p) = poly_mul_pure(a, b) {
        return Ok(Fraction::from_poly(p));
    }
    let mut acc = Fraction::zero();
    for (ma, ca) in &a.0 {
        for (mb, cb) in &b.0 {
            let f = mono_mul_general(ma, mb, ca.clone() * cb.clone())?;
            acc = acc.add_d(&f, depth + 1)?;
        }
    }
    Ok(acc)
}

/// Reduce and rescale a num/den pair into the canonical fraction.
pub(crate) fn canonical(mut num: Poly, mut den: Poly) -> Result<Fraction, ExprError> {
    if den.is_zero() {
        return Err(ExprError::DivisionByZero("expression".into()));
    }
    if num.is_zero() {
        return Ok(Fraction::zero());
    }
    loop {
        loop {
            let g = poly_gcd(&num, &den);
            if g.is_one() {
                break;
            }
            match (poly_div_exact(&num, &g), poly_div_exact(&den, &g)) {
                (Some(n), Some(d)) => {
                    num = n;
                    den = d;
                }
                _ => break,
            }
        }
        if !reduce_common_exp(&mut num, &mut den)? {
            break;
        }
    }
    let (num, den) = joint_scale(num, den);
    Ok(Fraction { num, den })
}

/// When every numerator monomial carries one identical exp factor and so
/// does every denominator monomial, cancel them against each other.
/// Returns true when a rewrite happened (caller reruns the gcd pass).
fn reduce_common_exp(num: &mut Poly, den: &mut Poly) -> Result<bool, ExprError> {
    let na = match common_exp_arg(num) {
        Some(a) => a,
        None => return Ok(false),
    };
    let da = match common_exp_arg(den) {
        Some(a) => a,
        None => return Ok(false),
    };
    let diff = ratize(&na)?.sub(&ratize(&da)?)?;
    let num_stripped = strip_exp(num);
    let den_stripped = strip_exp(den);
    let f = exp_atom_fraction(&diff);
    let new_num = poly_mul_pure(&num_stripped, &f.num).ok_or(ExprError::TooDeep)?;
    let new_den = poly_mul_pure(&den_stripped, &f.den).ok_or(ExprError::TooDeep)?;
    *num = new_num;
    *den = new_den;
    Ok(true)
}

fn common_exp_arg(p: &Poly) -> Option<Expr> {
    let mut arg: Option<&Expr> = None;
    for m in p.0.keys() {
        let mut found = None;
        for (a, e) in &m.0 {
            if let Atom::Fn(FuncKind::Exp, u) = a {
                if *e != 1 {
                    return None;
                }
                found = Some(u);
            }
        }
        let u = found?;
        match arg {
            None => arg = Some(u),
            Some(prev) if prev == u => {}
            _ => return None,
        }
    }
    arg.cloned()
}

fn strip_exp(p: &Poly) -> Poly {
    let mut out = Poly::zero();
    for (m, c) in &p.0 {
        let kept: Vec<(Atom, u32)> = m
            .0
            .iter()
            .filter(|(a, _)| !matches!(a, Atom::Fn(FuncKind::Exp, _)))
            .cloned()
            .collect();
        out.add_term(Monomial(kept), c.clone());
    }
    out
}

fn exponent_as_i64(e: &Rat) -> Result<i64, ExprError> {
    e.to_integer()
        .to_i64()
        .ok_or_else(|| ExprError::ExponentOverflow(e.to_string()))
}

/// Exact rational q-th root when one exists.
fn rational_root(c: &Rat, q: u32) -> Option<Rat> {
    if c.is_zero() {
        return Some(Rat::zero());
    }
    let negative = c.is_negative();
    if negative && q % 2 == 0 {
        return None;
    }
    let numer = c.numer().abs();
    let denom = c.denom().clone();
    let rn = numer.nth_root(q);
    let rd = denom.nth_root(q);
    if num_traits::pow::pow(rn.clone(), q as usize) != numer
        || num_traits::pow::pow(rd.clone(), q as usize) != denom
    {
        return None;
    }
    let root = Rat::new(rn, rd);
    Some(if negative { -root } else { root })
}

pub(crate) fn ratize(e: &Expr) -> Result<Fraction, ExprError> {
    match e {
        Expr::Const(c) => Ok(Fraction::constant(c.clone())),
        Expr::Symbol(s) => Ok(Fraction::from_poly(Poly::from_term(
            Monomial::atom(Atom::Sym(s.clone())),
            Rat::one(),
        ))),
        Expr::Sum(ts) => {
            let mut acc = Fraction::zero();
            for t in ts {
                acc = acc.add(&ratize(t)?)?;
            }
            Ok(acc)
        }
        Expr::Product(fs) => {
            let mut acc = Fraction::one();
            for f in fs {
                acc = acc.mul(&ratize(f)?)?;
            }
            Ok(acc)
        }
        Expr::Power(base, exp) => ratize_power(base, exp),
        Expr::Func(kind, arg) => ratize_func(*kind, arg),
    }
}

fn ratize_power(base: &Expr, exp: &Rat) -> Result<Fraction, ExprError> {
    if exp.is_zero() {
        return Ok(Fraction::one());
    }
    let bf = ratize(base)?;
    if exp.is_integer() {
        let k = exponent_as_i64(exp)?;
        return bf.pow_int(k).map_err(|e| match e {
            ExprError::DivisionByZero(_) => ExprError::DivisionByZero(format!("{}", base)),
            other => other,
        });
    }
    let p = exp
        .numer()
        .to_i64()
        .ok_or_else(|| ExprError::ExponentOverflow(exp.to_string()))?;
    let q = exp
        .denom()
        .to_i64()
        .filter(|q| *q >= 2 && *q <= u32::MAX as i64)
        .ok_or_else(|| ExprError::ExponentOverflow(exp.to_string()))? as u32;

    let nb = unratize(&bf);
    if let Expr::Const(c) = &nb {
        if let Some(root) = rational_root(c, q) {
            let powered = rat_pow(&root, p)?;
            return Ok(Fraction::constant(powered));
        }
    }
    if let Expr::Power(b2, e2) = &nb {
        // (b^a)^(p/q) = b^(a p/q) is sound unless a is an even integer
        // (the collapse would silently drop an absolute value).
        let collapses = !e2.is_integer() || e2.numer().is_odd();
        if collapses {
            let new_exp = e2.clone() * exp.clone();
            return ratize_power(b2, &new_exp);
        }
    }
    if nb.is_zero_const() {
        if p < 0 {
            return Err(ExprError::DivisionByZero(format!("{}", base)));
        }
        return Ok(Fraction::zero());
    }
    let atom = Atom::Root(nb, q);
    let f = raw_to_fraction(vec![(atom, p.unsigned_abs() as u32)], Rat::one())?;
    if p < 0 {
        f.invert()
            .map_err(|_| ExprError::DivisionByZero(format!("{}", base)))
    } else {
        Ok(f)
    }
}

fn rat_pow(c: &Rat, k: i64) -> Result<Rat, ExprError> {
    if k == 0 {
        return Ok(Rat::one());
    }
    if c.is_zero() && k < 0 {
        return Err(ExprError::DivisionByZero("0".into()));
    }
    let mut acc = Rat::one();
    let base = if k < 0 { c.recip() } else { c.clone() };
    for _ in 0..k.unsigned_abs() {
        acc *= base.clone();
    }
    Ok(acc)
}

fn ratize_func(kind: FuncKind, arg: &Expr) -> Result<Fraction, ExprError> {
    let af = ratize(arg)?;
    if let Some(c) = af.as_constant() {
        match kind {
            FuncKind::Sin | FuncKind::Tan if c.is_zero() => return Ok(Fraction::zero()),
            FuncKind::Cos if c.is_zero() => return Ok(Fraction::one()),
            FuncKind::Exp if c.is_zero() => return Ok(Fraction::one()),
            FuncKind::Log if c.is_one() => return Ok(Fraction::zero()),
            _ => {}
        }
    }
    match kind {
        FuncKind::Exp => Ok(exp_atom_fraction(&af)),
        FuncKind::Sin | FuncKind::Tan => {
            if leading_sign_negative(&af) {
                let atom = Atom::Fn(kind, unratize(&af.neg()));
                Ok(Fraction::from_poly(Poly::from_term(
                    Monomial::atom(atom),
                    -Rat::one(),
                )))
            } else {
                let atom = Atom::Fn(kind, unratize(&af));
                Ok(Fraction::from_poly(Poly::from_term(
                    Monomial::atom(atom),
                    Rat::one(),
                )))
            }
        }
        FuncKind::Cos => {
            let canon = if leading_sign_negative(&af) { af.neg() } else { af };
            let atom = Atom::Fn(FuncKind::Cos, unratize(&canon));
            Ok(Fraction::from_poly(Poly::from_term(
                Monomial::atom(atom),
                Rat::one(),
            )))
        }
        FuncKind::Log => {
            let atom = Atom::Fn(FuncKind::Log, unratize(&af));
            Ok(Fraction::from_poly(Poly::from_term(
                Monomial::atom(atom),
                Rat::one(),
            )))
        }
    }
}

// ---------------------------------------------------------------------------
// Emission back to expression trees
// ---------------------------------------------------------------------------

fn atom_pow_expr(a: &Atom, e: u32) -> Expr {
    match a {
        Atom::Root(b, q) => Expr::pow_rat(b.clone(), e as i64, *q as i64),
        _ if e == 1 => a.to_expr(),
        _ => Expr::Power(Box::new(a.to_expr()), Rat::from_integer(BigInt::from(e))),
    }
}

fn atom_pow_expr_neg(a: &Atom, e: u32) -> Expr {
    match a {
        Atom::Root(b, q) => Expr::pow_rat(b.clone(), -(e as i64), *q as i64),
        _ => Expr::Power(Box::new(a.to_expr()), Rat::from_integer(-BigInt::from(e))),
    }
}

fn term_to_expr(m: &Monomial, c: &Rat) -> Expr {
    if m.is_one() {
        return Expr::Const(c.clone());
    }
    let pows: Vec<Expr> = m.0.iter().map(|(a, e)| atom_pow_expr(a, *e)).collect();
    if c.is_one() {
        if pows.len() == 1 {
            return pows.into_iter().next().unwrap();
        }
        return Expr::Product(pows);
    }
    let mut factors = Vec::with_capacity(pows.len() + 1);
    factors.push(Expr::Const(c.clone()));
    factors.extend(pows);
    Expr::Product(factors)
}

fn poly_to_expr(p: &Poly) -> Expr {
    if p.is_zero() {
        return Expr::zero();
    }
    let terms: Vec<Expr> = p
        .0
        .iter()
        .rev()
        .map(|(m, c)| term_to_expr(m, c))
        .collect();
    if terms.len() == 1 {
        terms.into_iter().next().unwrap()
    } else {
        Expr::Sum(terms)
    }
}

pub(crate) fn unratize(f: &Fraction) -> Expr {
    if f.num.is_zero() {
        return Expr::zero();
    }
    if f.den.is_one() {
        return poly_to_expr(&f.num);
    }
    if let (Some(n), Some(d)) = (f.num.as_constant(), f.den.as_constant()) {
        return Expr::Const(n / d);
    }
    // Denominator that is one monomial: emit negative powers directly.
    if f.den.0.len() == 1 {
        let (dm, dc) = f.den.0.iter().next().unwrap();
        let mut factors: Vec<Expr> = Vec::new();
        let mut coeff = dc.recip();
        let num_single = f.num.0.len() == 1;
        if num_single {
            let (nm, nc) = f.num.0.iter().next().unwrap();
            coeff *= nc.clone();
            if !coeff.is_one() {
                factors.push(Expr::Const(coeff));
            }
            factors.extend(nm.0.iter().map(|(a, e)| atom_pow_expr(a, *e)));
        } else {
            if !coeff.is_one() {
                factors.push(Expr::Const(coeff));
            }
            factors.push(poly_to_expr(&f.num));
        }
        factors.extend(dm.0.iter().map(|(a, e)| atom_pow_expr_neg(a, *e)));
        if factors.len() == 1 {
            return factors.into_iter().next().unwrap();
        }
        return Expr::Product(factors);
    }
    // General fraction: num * den^(-1).
    let num_expr = poly_to_expr(&f.num);
    let den_inv = Expr::Power(Box::new(poly_to_expr(&f.den)), -Rat::one());
    let mut factors = match num_expr {
        Expr::Product(fs) => fs,
        Expr::Const(c) if c.is_one() => Vec::new(),
        other => vec![other],
    };
    factors.push(den_inv);
    if factors.len() == 1 {
        return factors.into_iter().next().unwrap();
    }
    Expr::Product(factors)
}
