//! Sparse multivariate polynomial layer underneath expression normalization.
//!
//! Polynomials are taken over "atoms": symbols, irreducible function
//! applications, and fractional powers. Two rewrites keep monomials in a
//! reduced language:
//!   * cos(u)^k with k >= 2 is eliminated through cos² = 1 − sin²,
//!   * exp factors within a monomial merge by adding arguments.
//! Fractional-power atoms carry base^(1/q); integer carries fall out of the
//! monomial back into ordinary factors.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::normalize::{ratize, unratize, Fraction};
use super::{Expr, ExprError, FuncKind, Rat};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub(crate) enum Atom {
    Sym(String),
    Fn(FuncKind, Expr),
    /// base^(1/q) with q >= 2; the monomial exponent supplies the numerator.
    Root(Expr, u32),
}

impl Atom {
    pub(crate) fn to_expr(&self) -> Expr {
        match self {
            Atom::Sym(s) => Expr::Symbol(s.clone()),
            Atom::Fn(k, a) => Expr::Func(*k, Box::new(a.clone())),
            Atom::Root(b, q) => Expr::pow_rat(b.clone(), 1, *q as i64),
        }
    }
}

/// Product of atom powers, sorted by atom, all exponents >= 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Monomial(pub(crate) Vec<(Atom, u32)>);

impl Monomial {
    pub(crate) fn one() -> Monomial {
        Monomial(Vec::new())
    }

    pub(crate) fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub(crate) fn atom(a: Atom) -> Monomial {
        Monomial(vec![(a, 1)])
    }

    pub(crate) fn total_degree(&self) -> u64 {
        self.0.iter().map(|(_, e)| *e as u64).sum()
    }

    fn merge(&self, other: &Monomial) -> Vec<(Atom, u32)> {
        let mut out: Vec<(Atom, u32)> = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            match self.0[i].0.cmp(&other.0[j].0) {
                Ordering::Less => {
                    out.push(self.0[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(other.0[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((self.0[i].0.clone(), self.0[i].1 + other.0[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.0[i..]);
        out.extend_from_slice(&other.0[j..]);
        out
    }

    /// Exponent-wise division; None unless every divisor atom is present
    /// with at least the required exponent.
    fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = Vec::with_capacity(self.0.len());
        let mut i = 0;
        for (a, e) in &other.0 {
            loop {
                let (sa, se) = self.0.get(i)?;
                match sa.cmp(a) {
                    Ordering::Less => {
                        out.push((sa.clone(), *se));
                        i += 1;
                    }
                    Ordering::Equal => {
                        if se < e {
                            return None;
                        }
                        if se > e {
                            out.push((sa.clone(), se - e));
                        }
                        i += 1;
                        break;
                    }
                    Ordering::Greater => return None,
                }
            }
        }
        out.extend_from_slice(&self.0[i..]);
        Some(Monomial(out))
    }

    fn exp_of(&self, v: &Atom) -> u32 {
        self.0
            .iter()
            .find(|(a, _)| a == v)
            .map(|(_, e)| *e)
            .unwrap_or(0)
    }

    fn without(&self, v: &Atom) -> Monomial {
        Monomial(self.0.iter().filter(|(a, _)| a != v).cloned().collect())
    }
}

/// Degree-lexicographic order: higher total degree ranks higher; ties break
/// lexicographically with atoms earlier in the atom order taking priority
/// (a positive exponent on an earlier atom outranks any later atom).
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.total_degree().cmp(&other.total_degree()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        let (mut i, mut j) = (0, 0);
        loop {
            match (self.0.get(i), other.0.get(j)) {
                (None, None) => return Ordering::Equal,
                (Some(_), None) => return Ordering::Greater,
                (None, Some(_)) => return Ordering::Less,
                (Some((aa, ea)), Some((ab, eb))) => match aa.cmp(ab) {
                    Ordering::Less => return Ordering::Greater,
                    Ordering::Greater => return Ordering::Less,
                    Ordering::Equal => match ea.cmp(eb) {
                        Ordering::Equal => {
                            i += 1;
                            j += 1;
                        }
                        ord => return ord,
                    },
                },
            }
        }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Poly(pub(crate) BTreeMap<Monomial, Rat>);

impl Poly {
    pub(crate) fn zero() -> Poly {
        Poly(BTreeMap::new())
    }

    pub(crate) fn one() -> Poly {
        Poly::constant(Rat::one())
    }

    pub(crate) fn constant(c: Rat) -> Poly {
        let mut m = BTreeMap::new();
        if !c.is_zero() {
            m.insert(Monomial::one(), c);
        }
        Poly(m)
    }

    pub(crate) fn from_term(m: Monomial, c: Rat) -> Poly {
        let mut map = BTreeMap::new();
        if !c.is_zero() {
            map.insert(m, c);
        }
        Poly(map)
    }

    pub(crate) fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub(crate) fn is_one(&self) -> bool {
        self.as_constant().map(|c| c.is_one()).unwrap_or(false)
    }

    pub(crate) fn is_constant(&self) -> bool {
        self.0.is_empty() || (self.0.len() == 1 && self.0.keys().next().unwrap().is_one())
    }

    pub(crate) fn as_constant(&self) -> Option<Rat> {
        if self.0.is_empty() {
            return Some(Rat::zero());
        }
        if self.0.len() == 1 {
            let (m, c) = self.0.iter().next().unwrap();
            if m.is_one() {
                return Some(c.clone());
            }
        }
        None
    }

    pub(crate) fn leading(&self) -> Option<(&Monomial, &Rat)> {
        self.0.iter().next_back()
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: Rat) {
        if c.is_zero() {
            return;
        }
        match self.0.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get().clone() + c;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub(crate) fn add(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &other.0 {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub(crate) fn neg(&self) -> Poly {
        Poly(self.0.iter().map(|(m, c)| (m.clone(), -c.clone())).collect())
    }

    pub(crate) fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub(crate) fn scale(&self, c: &Rat) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly(self
            .0
            .iter()
            .map(|(m, k)| (m.clone(), k.clone() * c.clone()))
            .collect())
    }

    pub(crate) fn contains_root(&self) -> bool {
        self.0
            .keys()
            .any(|m| m.0.iter().any(|(a, _)| matches!(a, Atom::Root(_, _))))
    }

    fn atoms(&self) -> Vec<Atom> {
        let mut out: Vec<Atom> = Vec::new();
        for m in self.0.keys() {
            for (a, _) in &m.0 {
                if !out.contains(a) {
                    out.push(a.clone());
                }
            }
        }
        out.sort();
        out
    }

    fn deg_in(&self, v: &Atom) -> u32 {
        self.0.keys().map(|m| m.exp_of(v)).max().unwrap_or(0)
    }

    fn coeff_of(&self, v: &Atom, k: u32) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.0 {
            if m.exp_of(v) == k {
                out.add_term(m.without(v), c.clone());
            }
        }
        out
    }
}

/// True when the raw exponent list is already in the reduced monomial
/// language (no cos power >= 2, at most one exp factor with exponent one,
/// fractional powers below their root order and coprime to it).
fn raw_is_canonical(raw: &[(Atom, u32)]) -> bool {
    let mut exp_count = 0;
    for (a, e) in raw {
        match a {
            Atom::Fn(FuncKind::Cos, _) if *e >= 2 => return false,
            Atom::Fn(FuncKind::Exp, _) => {
                exp_count += 1;
                if *e != 1 || exp_count > 1 {
                    return false;
                }
            }
            Atom::Root(_, q) => {
                if *e >= *q || e.gcd(q) != 1 {
                    return false;
                }
            }
            _ => {}
        }
    }
    true
}

/// Leading-coefficient sign of the canonical expression `e` (sign of the
/// numerator's leading term once normalized).
pub(crate) fn leading_sign_negative(f: &Fraction) -> bool {
    f.num
        .leading()
        .map(|(_, c)| c.is_negative())
        .unwrap_or(false)
}

/// Expand a raw (merged) monomial into the reduced language, purely at the
/// polynomial level. Returns None when the rewrite leaves the polynomial
/// ring (a fractional-power carry whose base is not itself a polynomial, or
/// an exp merge that flips to the denominator side).
fn expand_raw_pure(acc: &mut Poly, raw: Vec<(Atom, u32)>, coeff: Rat) -> Option<()> {
    if coeff.is_zero() {
        return Some(());
    }
    if raw_is_canonical(&raw) {
        acc.add_term(Monomial(raw), coeff);
        return Some(());
    }

    // Root carries first: pull whole powers of the base back out.
    if let Some(pos) = raw.iter().position(|(a, e)| {
        matches!(a, Atom::Root(_, q) if *e >= *q || e.gcd(q) != 1)
    }) {
        let (atom, e) = raw[pos].clone();
        let (base, q) = match atom {
            Atom::Root(b, q) => (b, q),
            _ => unreachable!(),
        };
        let mut rest = raw;
        rest.remove(pos);
        let whole = e / q;
        let mut rem = e % q;
        let mut qq = q;
        if rem > 0 {
            let g = rem.gcd(&qq);
            rem /= g;
            qq /= g;
        }
        let base_fr = ratize(&base).ok()?;
        if !base_fr.den.is_one() {
            return None;
        }
        let mut mult = Poly::one();
        for _ in 0..whole {
            mult = poly_mul_pure(&mult, &base_fr.num)?;
        }
        if rem > 0 {
            mult = poly_mul_pure(&mult, &Poly::from_term(Monomial::atom(Atom::Root(base, qq)), Rat::one()))?;
        }
        for (m2, c2) in &mult.0 {
            let merged = Monomial(rest.clone()).merge(m2);
            expand_raw_pure(acc, merged, coeff.clone() * c2.clone())?;
        }
        return Some(());
    }

    // Merge exp factors: exp(a)^i * exp(b)^j -> exp(i*a + j*b).
    let exp_positions: Vec<usize> = raw
        .iter()
        .enumerate()
        .filter(|(_, (a, _))| matches!(a, Atom::Fn(FuncKind::Exp, _)))
        .map(|(i, _)| i)
        .collect();
    if exp_positions.len() > 1 || exp_positions.iter().any(|&i| raw[i].1 != 1) {
        let mut combined = Fraction::zero();
        let mut rest: Vec<(Atom, u32)> = Vec::new();
        for (i, (a, e)) in raw.into_iter().enumerate() {
            if exp_positions.contains(&i) {
                let arg = match a {
                    Atom::Fn(FuncKind::Exp, arg) => arg,
                    _ => unreachable!(),
                };
                let arg_fr = ratize(&arg).ok()?;
                combined = combined
                    .add(&arg_fr.scale_const(&Rat::from_integer(BigInt::from(e))))
                    .ok()?;
            } else {
                rest.push((a, e));
            }
        }
        if !combined.num.is_zero() {
            if leading_sign_negative(&combined) {
                return None;
            }
            let arg_expr = unratize(&combined);
            rest.push((Atom::Fn(FuncKind::Exp, arg_expr), 1));
            rest.sort_by(|(a, _), (b, _)| a.cmp(b));
        }
        return expand_raw_pure(acc, rest, coeff);
    }

    // Eliminate cos powers: cos(u)^e -> (1 - sin(u)^2)^(e/2) * cos(u)^(e%2).
    if let Some(pos) = raw
        .iter()
        .position(|(a, e)| matches!(a, Atom::Fn(FuncKind::Cos, _)) && *e >= 2)
    {
        let (atom, e) = raw[pos].clone();
        let u = match &atom {
            Atom::Fn(FuncKind::Cos, u) => u.clone(),
            _ => unreachable!(),
        };
        let mut rest = raw;
        rest.remove(pos);
        if e % 2 == 1 {
            rest.push((atom, 1));
            rest.sort_by(|(a, _), (b, _)| a.cmp(b));
        }
        let half = e / 2;
        // (1 - s^2)^half expanded directly: sum_k C(half,k) (-1)^k s^(2k)
        let sin_atom = Atom::Fn(FuncKind::Sin, u);
        let mut binom = Rat::one();
        for k in 0..=half {
            let mono = if k == 0 {
                Monomial::one()
            } else {
                Monomial(vec![(sin_atom.clone(), 2 * k)])
            };
            let sign = if k % 2 == 0 { Rat::one() } else { -Rat::one() };
            let merged = Monomial(rest.clone()).merge(&mono);
            expand_raw_pure(acc, merged, coeff.clone() * binom.clone() * sign)?;
            // next binomial coefficient C(half, k+1)
            binom = binom * Rat::new(BigInt::from(half - k), BigInt::from(k + 1));
        }
        return Some(());
    }

    acc.add_term(Monomial(raw), coeff);
    Some(())
}

/// Polynomial product staying inside the reduced monomial language.
/// None when a rewrite would leave it (callers fall back to fractions).
pub(crate) fn poly_mul_pure(a: &Poly, b: &Poly) -> Option<Poly> {
    let mut acc = Poly::zero();
    for (ma, ca) in &a.0 {
        for (mb, cb) in &b.0 {
            let raw = ma.merge(mb);
            expand_raw_pure(&mut acc, raw, ca.clone() * cb.clone())?;
        }
    }
    Some(acc)
}

/// General product of two raw monomials as a fraction (handles carries that
/// leave the polynomial ring).
pub(crate) fn mono_mul_general(
    ma: &Monomial,
    mb: &Monomial,
    coeff: Rat,
) -> Result<Fraction, ExprError> {
    let raw = ma.merge(mb);
    raw_to_fraction(raw, coeff)
}

pub(crate) fn raw_to_fraction(raw: Vec<(Atom, u32)>, coeff: Rat) -> Result<Fraction, ExprError> {
    let mut acc = Poly::zero();
    if expand_raw_pure(&mut acc, raw.clone(), coeff.clone()).is_some() {
        return Ok(Fraction::from_poly(acc));
    }
    // Slow path: peel one impure factor off and recurse through fractions.
    // Root carry with a non-polynomial base:
    if let Some(pos) = raw.iter().position(|(a, e)| {
        matches!(a, Atom::Root(_, q) if *e >= *q || e.gcd(q) != 1)
    }) {
        let (atom, e) = raw[pos].clone();
        let (base, q) = match atom {
            Atom::Root(b, q) => (b, q),
            _ => unreachable!(),
        };
        let mut rest = raw;
        rest.remove(pos);
        let whole = e / q;
        let mut rem = e % q;
        let mut qq = q;
        if rem > 0 {
            let g = rem.gcd(&qq);
            rem /= g;
            qq /= g;
        }
        let mut f = ratize(&base)?.pow_int(whole as i64)?;
        if rem > 0 {
            f = f.mul(&Fraction::from_poly(Poly::from_term(
                Monomial(vec![(Atom::Root(base, qq), rem)]),
                Rat::one(),
            )))?;
        }
        let rest_fr = raw_to_fraction(rest, coeff)?;
        return f.mul(&rest_fr);
    }
    // Exp merge that flipped to the denominator:
    let exp_positions: Vec<usize> = raw
        .iter()
        .enumerate()
        .filter(|(_, (a, _))| matches!(a, Atom::Fn(FuncKind::Exp, _)))
        .map(|(i, _)| i)
        .collect();
    let mut combined = Fraction::zero();
    let mut rest: Vec<(Atom, u32)> = Vec::new();
    for (i, (a, e)) in raw.into_iter().enumerate() {
        if exp_positions.contains(&i) {
            let arg = match a {
                Atom::Fn(FuncKind::Exp, arg) => arg,
                _ => unreachable!(),
            };
            let arg_fr = ratize(&arg)?;
            combined = combined.add(&arg_fr.scale_const(&Rat::from_integer(BigInt::from(e))))?;
        } else {
            rest.push((a, e));
        }
    }
    let rest_fr = raw_to_fraction(rest, coeff)?;
    if combined.num.is_zero() {
        return Ok(rest_fr);
    }
    let exp_fr = exp_atom_fraction(&combined);
    rest_fr.mul(&exp_fr)
}

/// exp of a canonical fraction argument, with the sign-canonical rule:
/// negative-leading arguments live in the denominator.
pub(crate) fn exp_atom_fraction(arg: &Fraction) -> Fraction {
    if arg.num.is_zero() {
        return Fraction::one();
    }
    if leading_sign_negative(arg) {
        let flipped = unratize(&arg.neg());
        Fraction {
            num: Poly::one(),
            den: Poly::from_term(Monomial::atom(Atom::Fn(FuncKind::Exp, flipped)), Rat::one()),
        }
    } else {
        Fraction {
            num: Poly::from_term(Monomial::atom(Atom::Fn(FuncKind::Exp, unratize(arg))), Rat::one()),
            den: Poly::one(),
        }
    }
}

// ---------------------------------------------------------------------------
// Exact division and GCD
// ---------------------------------------------------------------------------

pub(crate) fn poly_div_exact(p: &Poly, d: &Poly) -> Option<Poly> {
    if d.is_zero() {
        return None;
    }
    if d.is_one() {
        return Some(p.clone());
    }
    let (dm, dc) = d.leading()?;
    let dm = dm.clone();
    let dc = dc.clone();
    let mut rem = p.clone();
    let mut quot = Poly::zero();
    while !rem.is_zero() {
        let (rm, rc) = rem.leading().map(|(m, c)| (m.clone(), c.clone()))?;
        let qm = rm.div(&dm)?;
        let qc = rc / dc.clone();
        let t = Poly::from_term(qm.clone(), qc.clone());
        let td = poly_mul_pure(&t, d)?;
        let next = rem.sub(&td);
        if let Some((nm, _)) = next.leading() {
            if *nm >= rm {
                return None;
            }
        }
        quot.add_term(qm, qc);
        rem = next;
    }
    Some(quot)
}

fn gcd_candidate_vars(a: &Poly, b: &Poly) -> Vec<Atom> {
    let mut vars = a.atoms();
    for v in b.atoms() {
        if !vars.contains(&v) {
            vars.push(v);
        }
    }
    vars.sort();
    vars.retain(|v| !matches!(v, Atom::Fn(FuncKind::Exp, _)));
    vars
}

const GCD_MAX_DEPTH: usize = 24;

fn gcd_inner(a: &Poly, b: &Poly, depth: usize) -> Option<Poly> {
    if depth > GCD_MAX_DEPTH {
        return None;
    }
    if a.is_zero() {
        return Some(b.clone());
    }
    if b.is_zero() {
        return Some(a.clone());
    }
    if a.is_constant() || b.is_constant() {
        return Some(Poly::one());
    }
    if a.contains_root() || b.contains_root() {
        return Some(Poly::one());
    }
    let vars = gcd_candidate_vars(a, b);
    let v = match vars.last() {
        Some(v) => v.clone(),
        None => return Some(Poly::one()),
    };

    let ca = content_in(a, &v, depth + 1)?;
    let cb = content_in(b, &v, depth + 1)?;
    let pa = poly_div_exact(a, &ca)?;
    let pb = poly_div_exact(b, &cb)?;
    let cont_gcd = gcd_inner(&ca, &cb, depth + 1)?;

    let (mut f, mut g) = if pa.deg_in(&v) >= pb.deg_in(&v) {
        (pa, pb)
    } else {
        (pb, pa)
    };
    while !g.is_zero() {
        let r = prem(&f, &g, &v)?;
        f = g;
        g = primitive_in(&r, &v, depth + 1)?;
    }
    let f = primitive_in(&f, &v, depth + 1)?;
    poly_mul_pure(&cont_gcd, &f)
}

fn content_in(p: &Poly, v: &Atom, depth: usize) -> Option<Poly> {
    let d = p.deg_in(v);
    let mut acc: Option<Poly> = None;
    for k in 0..=d {
        let c = p.coeff_of(v, k);
        if c.is_zero() {
            continue;
        }
        acc = Some(match acc {
            None => c,
            Some(prev) => gcd_inner(&prev, &c, depth)?,
        });
        if let Some(g) = &acc {
            if g.is_constant() {
                return Some(Poly::one());
            }
        }
    }
    acc.or_else(|| Some(Poly::one()))
}

fn primitive_in(p: &Poly, v: &Atom, depth: usize) -> Option<Poly> {
    if p.is_zero() {
        return Some(Poly::zero());
    }
    let c = content_in(p, v, depth)?;
    if c.is_one() {
        return Some(p.clone());
    }
    poly_div_exact(p, &c)
}

/// Pseudo-remainder of f by g viewed as univariate in v.
fn prem(f: &Poly, g: &Poly, v: &Atom) -> Option<Poly> {
    let dg = g.deg_in(v);
    let lcg = g.coeff_of(v, dg);
    let mut r = f.clone();
    let mut guard = 0usize;
    while !r.is_zero() {
        let dr = r.deg_in(v);
        if dr < dg {
            break;
        }
        let lcr = r.coeff_of(v, dr);
        let shift = Poly::from_term(Monomial(vec![(v.clone(), dr - dg)]).canonical_or_one(), Rat::one());
        let t1 = poly_mul_pure(&lcg, &r)?;
        let t2 = poly_mul_pure(&poly_mul_pure(&lcr, &shift)?, g)?;
        let next = t1.sub(&t2);
        if !next.is_zero() && next.deg_in(v) >= dr {
            return None;
        }
        r = next;
        guard += 1;
        if guard > 4096 {
            return None;
        }
    }
    Some(r)
}

impl Monomial {
    fn canonical_or_one(self) -> Monomial {
        Monomial(self.0.into_iter().filter(|(_, e)| *e > 0).collect())
    }
}

/// Best-effort GCD: the result always divides both inputs exactly (verified);
/// on any structural obstruction it degrades to 1, which only skips a
/// reduction and never produces a wrong fraction.
pub(crate) fn poly_gcd(a: &Poly, b: &Poly) -> Poly {
    match gcd_inner(a, b, 0) {
        Some(g) => {
            if g.is_constant() {
                return Poly::one();
            }
            if poly_div_exact(a, &g).is_some() && poly_div_exact(b, &g).is_some() {
                g
            } else {
                Poly::one()
            }
        }
        None => Poly::one(),
    }
}

/// Joint rescale: all coefficients of num and den become integers with
/// overall gcd 1, and den's leading coefficient is positive.
pub(crate) fn joint_scale(num: Poly, den: Poly) -> (Poly, Poly) {
    let mut denom_lcm = BigInt::one();
    for c in num.0.values().chain(den.0.values()) {
        denom_lcm = denom_lcm.lcm(c.denom());
    }
    // Scale by the lcm first so everything is integral, then strip the gcd
    // of the resulting numerators.
    let lcm_rat = Rat::from_integer(denom_lcm);
    let num1 = num.scale(&lcm_rat);
    let den1 = den.scale(&lcm_rat);
    let mut g = BigInt::zero();
    for c in num1.0.values().chain(den1.0.values()) {
        g = g.gcd(c.numer());
    }
    if g.is_zero() || g.is_one() {
        return flip_den_sign(num1, den1);
    }
    let inv = Rat::new(BigInt::one(), g);
    flip_den_sign(num1.scale(&inv), den1.scale(&inv))
}

fn flip_den_sign(num: Poly, den: Poly) -> (Poly, Poly) {
    let negative = den
        .leading()
        .map(|(_, c)| c.is_negative())
        .unwrap_or(false);
    if negative {
        (num.neg(), den.neg())
    } else {
        (num, den)
    }
}
