//! Exact scalars: rationals and rational functions in named parameters.
//!
//! A [`Scalar`] is either a plain rational or a rational function over a
//! shared [`ParameterContext`]. Rational functions keep their denominator as
//! a product of primitive factors, so sums over a common set of factors stay
//! small without a multivariate GCD. Zero testing is structural: a normalized
//! rational function is zero exactly when its numerator is.

mod poly;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

pub use poly::{Exponents, Polynomial};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands belong to different parameter contexts")]
    ContextMismatch,
    #[error("denominator vanishes at the given point")]
    PoleAtPoint,
    #[error("no value supplied for parameter `{0}`")]
    MissingParameter(String),
    #[error("invalid parameter name `{0}`")]
    InvalidParameterName(String),
    #[error("parameter `{0}` declared twice")]
    DuplicateParameter(String),
    #[error("unknown parameter `{0}`")]
    UnknownParameter(String),
    #[error("cannot parse scalar at column {col}: {message}")]
    Parse { col: usize, message: String },
}

/// Ordered list of parameter names shared by a family of scalars.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ParameterContext {
    names: Vec<String>,
}

pub fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() => chars.all(|c| c.is_ascii_alphanumeric() || c == '_'),
        _ => false,
    }
}

impl ParameterContext {
    pub fn new<S: AsRef<str>>(names: &[S]) -> Result<Arc<Self>, ScalarError> {
        let mut out: Vec<String> = Vec::with_capacity(names.len());
        for n in names {
            let n = n.as_ref();
            if !is_identifier(n) {
                return Err(ScalarError::InvalidParameterName(n.to_string()));
            }
            if out.iter().any(|m| m == n) {
                return Err(ScalarError::DuplicateParameter(n.to_string()));
            }
            out.push(n.to_string());
        }
        Ok(Arc::new(ParameterContext { names: out }))
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// A new context listing these names followed by `extra`.
    pub fn extend<S: AsRef<str>>(&self, extra: &[S]) -> Result<Arc<Self>, ScalarError> {
        let mut all: Vec<&str> = self.names.iter().map(|s| s.as_str()).collect();
        all.extend(extra.iter().map(|s| s.as_ref()));
        Self::new(&all)
    }

    /// True if `self` lists a prefix of `other`'s names.
    pub fn is_prefix_of(&self, other: &ParameterContext) -> bool {
        self.names.len() <= other.names.len() && self.names.iter().zip(&other.names).all(|(a, b)| a == b)
    }

    /// Returns `name` or, if taken, the first of `name_`, `name__`, ... that is free.
    pub fn fresh_name(&self, name: &str) -> String {
        let mut candidate = name.to_string();
        while self.index_of(&candidate).is_some() {
            candidate.push('_');
        }
        candidate
    }
}

fn same_context(a: &Arc<ParameterContext>, b: &Arc<ParameterContext>) -> bool {
    Arc::ptr_eq(a, b) || a.names == b.names
}

type Factors = Vec<(Arc<Polynomial>, u32)>;

/// Rational function `coeff * prod(num atoms) / prod(den atoms)`.
///
/// Atoms are non-constant primitive integer polynomials with positive
/// leading coefficient; single parameters appear as their own atoms.
#[derive(Debug, Clone)]
pub struct RatFunc {
    ctx: Arc<ParameterContext>,
    coeff: BigRational,
    num: Factors,
    den: Factors,
}

#[derive(Debug, Clone)]
pub enum Scalar {
    Rat(BigRational),
    Func(Arc<RatFunc>),
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

impl From<BigRational> for Scalar {
    fn from(q: BigRational) -> Self {
        Scalar::Rat(q)
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::Rat(BigRational::from_integer(n.into()))
    }
}

impl From<BigInt> for Scalar {
    fn from(n: BigInt) -> Self {
        Scalar::Rat(BigRational::from_integer(n))
    }
}

/// Merges two sorted factor lists, combining exponents and dropping zeros.
fn merge_factors(
    a: &[(Arc<Polynomial>, u32)],
    b: &[(Arc<Polynomial>, u32)],
    combine: impl Fn(u32, u32) -> u32,
) -> Factors {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let mut push = |p: &Arc<Polynomial>, e: u32| {
        if e > 0 {
            out.push((p.clone(), e));
        }
    };
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].0.cmp(&b[j].0) {
            std::cmp::Ordering::Less => {
                push(&a[i].0, combine(a[i].1, 0));
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                push(&b[j].0, combine(0, b[j].1));
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                push(&a[i].0, combine(a[i].1, b[j].1));
                i += 1;
                j += 1;
            }
        }
    }
    for (p, e) in &a[i..] {
        push(p, combine(*e, 0));
    }
    for (p, e) in &b[j..] {
        push(p, combine(0, *e));
    }
    out
}

fn expand(nvars: usize, factors: &[(Arc<Polynomial>, u32)]) -> Polynomial {
    let mut out = Polynomial::one(nvars);
    for (atom, e) in factors {
        out = out.mul(&atom.pow(*e));
    }
    out
}

/// Splits `p = c * monomial * rest` into a rational constant and atoms.
fn factor_into_atoms(p: &Polynomial) -> (BigRational, Factors) {
    let nvars = p.nvars();
    let mono = p.monomial_gcd();
    let rest = p.div_monomial(&mono);
    let (c, prim) = rest.content_and_primitive();
    let mut atoms: Factors = Vec::new();
    for (i, &k) in mono.iter().enumerate() {
        if k > 0 {
            atoms.push((Arc::new(Polynomial::var(nvars, i)), k));
        }
    }
    if !prim.is_constant() {
        atoms.push((Arc::new(prim), 1));
    }
    atoms.sort_by(|x, y| x.0.cmp(&y.0));
    (c, atoms)
}

/// Looks for one atom of `a` that is an exact multiple of an atom of `b`.
fn find_division(a: &Factors, b: &Factors) -> Option<(usize, usize, Polynomial)> {
    for (i, (pa, _)) in a.iter().enumerate() {
        for (j, (pb, _)) in b.iter().enumerate() {
            if pa.total_degree() < pb.total_degree() || pa.len() < pb.len() {
                continue;
            }
            if let Some(q) = pa.div_exact(pb) {
                return Some((i, j, q));
            }
        }
    }
    None
}

fn remove_one(f: &mut Factors, idx: usize) {
    f[idx].1 -= 1;
    if f[idx].1 == 0 {
        f.remove(idx);
    }
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::Rat(BigRational::zero())
    }

    pub fn one() -> Self {
        Scalar::Rat(BigRational::one())
    }

    pub fn int(n: i64) -> Self {
        Scalar::from(n)
    }

    pub fn ratio(n: i64, d: i64) -> Self {
        Scalar::Rat(BigRational::new(n.into(), d.into()))
    }

    /// The parameter `name` of `ctx` as a scalar.
    pub fn param(ctx: &Arc<ParameterContext>, name: &str) -> Result<Self, ScalarError> {
        let i = ctx
            .index_of(name)
            .ok_or_else(|| ScalarError::UnknownParameter(name.to_string()))?;
        Ok(Self::from_polynomial(ctx, &Polynomial::var(ctx.len(), i)))
    }

    /// The polynomial `p` over `ctx` as a scalar.
    pub fn from_polynomial(ctx: &Arc<ParameterContext>, p: &Polynomial) -> Self {
        assert_eq!(p.nvars(), ctx.len(), "polynomial does not match the context");
        if p.is_zero() {
            return Scalar::zero();
        }
        let (c, atoms) = factor_into_atoms(p);
        Self::build(ctx.clone(), c, atoms, Vec::new())
    }

    /// Builds `num / den` over `ctx`.
    pub fn from_polynomials(
        ctx: &Arc<ParameterContext>,
        num: &Polynomial,
        den: &Polynomial,
    ) -> Result<Self, ScalarError> {
        if den.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Self::from_polynomial(ctx, num).checked_div(&Self::from_polynomial(ctx, den))
    }

    /// Cancels shared atoms and exact atom divisions, then canonicalizes.
    fn build(ctx: Arc<ParameterContext>, mut coeff: BigRational, num: Factors, den: Factors) -> Scalar {
        if coeff.is_zero() {
            return Scalar::zero();
        }
        let common = merge_factors(&num, &den, |x, y| x.min(y));
        let mut num = merge_factors(&num, &common, |x, y| x - y);
        let mut den = merge_factors(&den, &common, |x, y| x - y);
        loop {
            if let Some((i, j, q)) = find_division(&num, &den) {
                remove_one(&mut num, i);
                remove_one(&mut den, j);
                let (c, atoms) = factor_into_atoms(&q);
                coeff *= c;
                num = merge_factors(&num, &atoms, |x, y| x + y);
            } else if let Some((j, i, q)) = find_division(&den, &num) {
                remove_one(&mut den, j);
                remove_one(&mut num, i);
                let (c, atoms) = factor_into_atoms(&q);
                coeff /= c;
                den = merge_factors(&den, &atoms, |x, y| x + y);
            } else {
                break;
            }
            let common = merge_factors(&num, &den, |x, y| x.min(y));
            if !common.is_empty() {
                num = merge_factors(&num, &common, |x, y| x - y);
                den = merge_factors(&den, &common, |x, y| x - y);
            }
        }
        if num.is_empty() && den.is_empty() {
            return Scalar::Rat(coeff);
        }
        Scalar::Func(Arc::new(RatFunc { ctx, coeff, num, den }))
    }

    fn promote(q: &BigRational, ctx: &Arc<ParameterContext>) -> RatFunc {
        RatFunc {
            ctx: ctx.clone(),
            coeff: q.clone(),
            num: Vec::new(),
            den: Vec::new(),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rat(q) => q.is_zero(),
            Scalar::Func(_) => false,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rat(q) => q.is_one(),
            Scalar::Func(_) => false,
        }
    }

    /// The rational value, if this scalar does not depend on parameters.
    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rat(q) => Some(q),
            Scalar::Func(_) => None,
        }
    }

    pub fn context(&self) -> Option<&Arc<ParameterContext>> {
        match self {
            Scalar::Rat(_) => None,
            Scalar::Func(f) => Some(&f.ctx),
        }
    }

    /// Expanded numerator polynomial; plain rationals give a constant in no
    /// variables. Integer content stays in the numerator.
    pub fn numerator(&self) -> Polynomial {
        match self {
            Scalar::Rat(q) => Polynomial::constant(0, q.clone()),
            Scalar::Func(f) => expand(f.ctx.len(), &f.num).scale(&f.coeff),
        }
    }

    /// Expanded denominator polynomial: primitive, positive leading coefficient.
    pub fn denominator(&self) -> Polynomial {
        match self {
            Scalar::Rat(_) => Polynomial::one(0),
            Scalar::Func(f) => expand(f.ctx.len(), &f.den),
        }
    }

    /// Cost metric used for pivot selection: (term count, total degree).
    pub fn complexity(&self) -> (usize, u32) {
        match self {
            Scalar::Rat(q) => (1, if q.is_integer() { 0 } else { 1 }),
            Scalar::Func(f) => {
                let terms: usize = f.num.iter().chain(&f.den).map(|(p, _)| p.len()).sum();
                let deg: u32 = f.num.iter().chain(&f.den).map(|(p, e)| p.total_degree() * e).sum();
                (terms + 1, deg + 1)
            }
        }
    }

    fn binary(
        &self,
        other: &Scalar,
        rat: impl FnOnce(&BigRational, &BigRational) -> Scalar,
        func: impl FnOnce(&RatFunc, &RatFunc) -> Scalar,
    ) -> Result<Scalar, ScalarError> {
        match (self, other) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Ok(rat(a, b)),
            (Scalar::Func(a), Scalar::Func(b)) => {
                if !same_context(&a.ctx, &b.ctx) {
                    return Err(ScalarError::ContextMismatch);
                }
                Ok(func(a, b))
            }
            (Scalar::Rat(a), Scalar::Func(b)) => Ok(func(&Self::promote(a, &b.ctx), b)),
            (Scalar::Func(a), Scalar::Rat(b)) => Ok(func(a, &Self::promote(b, &a.ctx))),
        }
    }

    fn add_func(a: &RatFunc, b: &RatFunc, negate: bool) -> Scalar {
        let nvars = a.ctx.len();
        let common = merge_factors(&a.num, &b.num, |x, y| x.min(y));
        let lcm = merge_factors(&a.den, &b.den, |x, y| x.max(y));
        let term = |f: &RatFunc| {
            let rest = merge_factors(&f.num, &common, |x, y| x - y);
            let cof = merge_factors(&lcm, &f.den, |x, y| x - y);
            expand(nvars, &rest).mul(&expand(nvars, &cof)).scale(&f.coeff)
        };
        let (ta, tb) = (term(a), term(b));
        let sum = if negate { ta.sub(&tb) } else { ta.add(&tb) };
        if sum.is_zero() {
            return Scalar::zero();
        }
        let (c, atoms) = factor_into_atoms(&sum);
        let num = merge_factors(&common, &atoms, |x, y| x + y);
        Self::build(a.ctx.clone(), c, num, lcm)
    }

    fn mul_func(a: &RatFunc, b: &RatFunc) -> Scalar {
        let num = merge_factors(&a.num, &b.num, |x, y| x + y);
        let den = merge_factors(&a.den, &b.den, |x, y| x + y);
        Self::build(a.ctx.clone(), &a.coeff * &b.coeff, num, den)
    }

    pub fn checked_add(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        if other.is_zero() {
            return Ok(self.clone());
        }
        if self.is_zero() {
            return Ok(other.clone());
        }
        self.binary(other, |a, b| Scalar::Rat(a + b), |a, b| Self::add_func(a, b, false))
    }

    pub fn checked_sub(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        if other.is_zero() {
            return Ok(self.clone());
        }
        self.binary(other, |a, b| Scalar::Rat(a - b), |a, b| Self::add_func(a, b, true))
    }

    pub fn checked_mul(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        if let (Some(a), Some(b)) = (self.context(), other.context()) {
            if !same_context(a, b) {
                return Err(ScalarError::ContextMismatch);
            }
        }
        if self.is_zero() || other.is_zero() {
            return Ok(Scalar::zero());
        }
        if self.is_one() {
            return Ok(other.clone());
        }
        if other.is_one() {
            return Ok(self.clone());
        }
        self.binary(other, |a, b| Scalar::Rat(a * b), Self::mul_func)
    }

    pub fn checked_inv(&self) -> Result<Scalar, ScalarError> {
        match self {
            Scalar::Rat(q) if q.is_zero() => Err(ScalarError::DivisionByZero),
            Scalar::Rat(q) => Ok(Scalar::Rat(q.recip())),
            Scalar::Func(f) => Ok(Scalar::Func(Arc::new(RatFunc {
                ctx: f.ctx.clone(),
                coeff: f.coeff.recip(),
                num: f.den.clone(),
                den: f.num.clone(),
            }))),
        }
    }

    pub fn checked_div(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        if other.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        self.checked_mul(&other.checked_inv()?)
    }

    /// Field equality decided by an exact zero test of the difference.
    pub fn checked_eq(&self, other: &Scalar) -> Result<bool, ScalarError> {
        match (self, other) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Ok(a == b),
            _ => Ok(self.checked_sub(other)?.is_zero()),
        }
    }

    pub fn inv(&self) -> Scalar {
        self.checked_inv().expect("inverse of zero")
    }

    pub fn pow(&self, k: i32) -> Result<Scalar, ScalarError> {
        let base = if k < 0 { self.checked_inv()? } else { self.clone() };
        let mut out = Scalar::one();
        for _ in 0..k.unsigned_abs() {
            out = out.checked_mul(&base)?;
        }
        Ok(out)
    }

    /// Exact value at a point assigning every parameter of the context.
    pub fn eval(&self, point: &BTreeMap<String, BigRational>) -> Result<BigRational, ScalarError> {
        match self {
            Scalar::Rat(q) => Ok(q.clone()),
            Scalar::Func(f) => {
                let values = f
                    .ctx
                    .names()
                    .iter()
                    .map(|n| {
                        point
                            .get(n)
                            .cloned()
                            .ok_or_else(|| ScalarError::MissingParameter(n.clone()))
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                let den = expand(f.ctx.len(), &f.den).eval(&values);
                if den.is_zero() {
                    return Err(ScalarError::PoleAtPoint);
                }
                Ok(expand(f.ctx.len(), &f.num).eval(&values) * &f.coeff / den)
            }
        }
    }

    /// Re-expresses this scalar over a context that extends its own.
    pub fn lift(&self, ctx: &Arc<ParameterContext>) -> Result<Scalar, ScalarError> {
        match self {
            Scalar::Rat(_) => Ok(self.clone()),
            Scalar::Func(f) => {
                if same_context(&f.ctx, ctx) {
                    return Ok(self.clone());
                }
                if !f.ctx.is_prefix_of(ctx) {
                    return Err(ScalarError::ContextMismatch);
                }
                let n = ctx.len();
                let lift = |fs: &Factors| fs.iter().map(|(p, e)| (Arc::new(p.lift(n)), *e)).collect();
                Ok(Scalar::Func(Arc::new(RatFunc {
                    ctx: ctx.clone(),
                    coeff: f.coeff.clone(),
                    num: lift(&f.num),
                    den: lift(&f.den),
                })))
            }
        }
    }

    /// Parses a scalar literal such as `-a^2*(b-2)/(b-1)^2` or `2a`.
    pub fn parse(text: &str, ctx: Option<&Arc<ParameterContext>>) -> Result<Scalar, ScalarError> {
        let tokens = crate::expr::lex(text).map_err(|e| ScalarError::Parse {
            col: e.col,
            message: e.message,
        })?;
        let mut p = crate::expr::ExprParser::new(&tokens);
        let expr = p
            .parse_expr(&mut |_, _| Ok(()))
            .and_then(|e| p.expect_end().map(|_| e))
            .map_err(|e| ScalarError::Parse {
                col: e.col,
                message: e.message,
            })?;
        expr.eval_scalar(ctx)
    }
}

// ---- operators ----

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                self.$checked(rhs)
                    .unwrap_or_else(|e| panic!("scalar {}: {}", stringify!($method), e))
            }
        }
        impl $trait<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                (&self).$method(rhs)
            }
        }
        impl $trait<Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);
forward_binop!(Div, div, checked_div);

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rat(q) => Scalar::Rat(-q),
            Scalar::Func(f) => Scalar::Func(Arc::new(RatFunc {
                ctx: f.ctx.clone(),
                coeff: -&f.coeff,
                num: f.num.clone(),
                den: f.den.clone(),
            })),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl PartialEq for Scalar {
    /// Panics if the operands live in different parameter contexts.
    fn eq(&self, other: &Scalar) -> bool {
        self.checked_eq(other).expect("scalar comparison across contexts")
    }
}

fn write_factors(f: &mut fmt::Formatter<'_>, factors: &Factors, names: &[String], first: bool) -> fmt::Result {
    let mut ordered: Vec<_> = factors.iter().collect();
    ordered.sort_by(|(x, _), (y, _)| x.len().cmp(&y.len()).then(y.cmp(x)));
    for (i, (atom, e)) in ordered.into_iter().enumerate() {
        if i > 0 || !first {
            write!(f, "*")?;
        }
        let body = atom.display(names).to_string();
        let wrapped = if atom.len() > 1 { format!("({})", body) } else { body };
        if *e == 1 {
            write!(f, "{}", wrapped)?;
        } else {
            write!(f, "{}^{}", wrapped, e)?;
        }
    }
    Ok(())
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rat(q) => write!(f, "{}", q),
            Scalar::Func(r) => {
                let names = r.ctx.names();
                if r.den.is_empty() && r.num.len() == 1 && r.num[0].1 == 1 {
                    return write!(f, "{}", r.num[0].0.scale(&r.coeff).display(names));
                }
                if r.coeff.is_negative() {
                    write!(f, "-")?;
                }
                let numer = r.coeff.numer().abs();
                let denom = r.coeff.denom();
                let lead = !numer.is_one() || r.num.is_empty();
                if lead {
                    write!(f, "{}", numer)?;
                }
                write_factors(f, &r.num, names, !lead)?;
                let parts = r.den.len() + usize::from(!denom.is_one());
                if parts == 0 {
                    return Ok(());
                }
                write!(f, "/")?;
                if parts > 1 {
                    write!(f, "(")?;
                }
                let lead = !denom.is_one();
                if lead {
                    write!(f, "{}", denom)?;
                }
                write_factors(f, &r.den, names, !lead)?;
                if parts > 1 {
                    write!(f, ")")?;
                }
                Ok(())
            }
        }
    }
}

pub fn rational_to_string(q: &BigRational) -> String {
    if q.is_negative() {
        format!("-{}", q.abs())
    } else {
        q.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> Arc<ParameterContext> {
        ParameterContext::new(&["a", "b"]).unwrap()
    }

    fn s(text: &str) -> Scalar {
        Scalar::parse(text, Some(&ctx())).unwrap()
    }

    fn point(a: i64, b: i64) -> BTreeMap<String, BigRational> {
        let mut p = BTreeMap::new();
        p.insert("a".into(), BigRational::from_integer(a.into()));
        p.insert("b".into(), BigRational::from_integer(b.into()));
        p
    }

    #[test]
    fn halves_sum_to_one() {
        assert_eq!(Scalar::ratio(1, 2) + Scalar::ratio(1, 2), Scalar::one());
        assert!((Scalar::ratio(1, 2) + Scalar::ratio(1, 2)).is_one());
    }

    #[test]
    fn parameter_divided_by_itself_is_one() {
        let a = s("a");
        assert!((&a / &a).is_one());
    }

    #[test]
    fn product_cancels_to_parameter() {
        let x = s("2a/(b-1)");
        let y = s("(b-1)/2");
        let p = &x * &y;
        assert_eq!(p, s("a"));
        assert_eq!(p.to_string(), "a");
    }

    #[test]
    fn equality_by_cross_multiplication() {
        assert_eq!(s("a/b"), s("(2a)/(2b)"));
        assert_ne!(s("a"), s("b"));
        assert_eq!(s("(b^2-1)/(b-1)"), s("b+1"));
    }

    #[test]
    fn evaluation_at_points() {
        let v = s("2a/(b-1)").eval(&point(2, 3)).unwrap();
        assert_eq!(v, BigRational::from_integer(2.into()));
        assert!(s("a-a").eval(&point(5, 7)).unwrap().is_zero());
        let mut p = BTreeMap::new();
        p.insert("b".to_string(), BigRational::one());
        p.insert("a".to_string(), BigRational::one());
        assert_eq!(s("1/(b-1)").eval(&p), Err(ScalarError::PoleAtPoint));
    }

    #[test]
    fn division_by_zero_is_an_error() {
        assert_eq!(s("a").checked_div(&Scalar::zero()), Err(ScalarError::DivisionByZero));
        assert_eq!(Scalar::zero().checked_inv(), Err(ScalarError::DivisionByZero));
        assert_eq!(s("a-a").checked_inv(), Err(ScalarError::DivisionByZero));
    }

    #[test]
    fn mixed_contexts_are_rejected() {
        let other = ParameterContext::new(&["t"]).unwrap();
        let t = Scalar::param(&other, "t").unwrap();
        assert_eq!(s("a").checked_add(&t), Err(ScalarError::ContextMismatch));
        assert_eq!(s("a").checked_eq(&t), Err(ScalarError::ContextMismatch));
    }

    #[test]
    fn contexts_validate_names() {
        assert!(ParameterContext::new(&["a", "a"]).is_err());
        assert!(ParameterContext::new(&["1a"]).is_err());
        assert!(ParameterContext::new(&["x_1", "B2"]).is_ok());
    }

    #[test]
    fn numerator_and_denominator_expand() {
        let x = s("-a^2*(b-2)/(b-1)^2");
        let names = ctx().names().to_vec();
        assert_eq!(x.numerator().display(&names).to_string(), "-a^2*b + 2*a^2");
        assert_eq!(x.denominator().display(&names).to_string(), "b^2 - 2*b + 1");
    }

    #[test]
    fn lift_preserves_value() {
        let big = ctx().extend(&["x1"]).unwrap();
        let x = s("a/(b-1)").lift(&big).unwrap();
        let y = Scalar::param(&big, "x1").unwrap();
        let sum = &x + &y;
        let back = &sum - &y;
        assert_eq!(back, x);
    }

    #[test]
    fn display_is_readable() {
        assert_eq!(s("2a/(b-1)").to_string(), "2*a/(b - 1)");
        assert_eq!(s("-a^2*(b-2)/(b-1)^2").to_string(), "-a^2*(b - 2)/(b - 1)^2");
        assert_eq!(Scalar::ratio(-3, 6).to_string(), "-1/2");
        assert_eq!(s("-(a+b)").to_string(), "-a - b");
        assert_eq!(s("-4a*b^2/(b-1)").to_string(), "-4*a*b^2/(b - 1)");
    }
}
